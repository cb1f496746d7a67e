//! Command-line front end: argument handling, dispatch and output.
//!
//! Exit codes: 0 on success, 2 on input errors, 3 when the answer is
//! `UNKNOWN`, `UNSUPPORTED` or a partial factorization.

use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::division::{divmod, Direction, Side};
use crate::error::{Error, Result};
use crate::factor::{
    factor_homogeneous, factor_qf, factor_univariate, is_irreducible, is_reducible_qf, quantum_discriminant,
    Factorization, HomogeneousFactorization, Irreducibility, QuadraticForm, UnivariateFactorization, DEFAULT_CAP,
};
use crate::parse::{infer_field, parse_poly, parse_scalar, OutputMode, SessionConfig};
use crate::poly::QPoly;
use crate::primality::{classify_prime, verify_nonprime_witness, PrimeVerdict};
use crate::scalars::Field;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;

const GRAMMAR: &str = "\
expression grammar (lowest to highest precedence):
  a + b, a - b
  a * b, a / c, juxtaposition (2x, x y)   c must be a constant
  -a
  a^n                                     n a nonnegative integer, right-associative
  integers, x, y, sqrt(n), (expr)
products keep their written order: y*x is q*x*y";

#[derive(Parser, Debug)]
#[command(name = "qplane", version, about = "Exact computation in the quantum plane yx = qxy", after_help = GRAMMAR)]
struct Cli {
    /// The parameter q, a nonzero scalar such as 2, -1, 3/2 or sqrt(2)
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    q: String,
    /// Coefficient field: Q or Q(sqrt s); inferred from the inputs when absent
    #[arg(long, global = true)]
    field: Option<String>,
    /// Emit JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normal form of an expression
    Eval {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Product f*g
    Mul {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Quotient and remainder of f by g
    Divmod {
        #[arg(long, value_enum, default_value = "right")]
        side: SideArg,
        #[arg(long, value_enum, default_value = "x")]
        dir: DirArg,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// Quantum discriminant of a quadratic form
    Disc {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Factorization into irreducibles
    Factor {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Whether f lies in the center
    Central {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Irreducibility verdict
    Irreducible {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Primality verdict with certificate
    Prime {
        #[arg(allow_hyphen_values = true)]
        p: String,
    },
    /// Checks that p divides f*g but neither f nor g
    Witness {
        #[arg(allow_hyphen_values = true)]
        p: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SideArg {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DirArg {
    X,
    Y,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Eval { .. } => "eval",
            Command::Mul { .. } => "mul",
            Command::Divmod { .. } => "divmod",
            Command::Disc { .. } => "disc",
            Command::Factor { .. } => "factor",
            Command::Central { .. } => "central",
            Command::Irreducible { .. } => "irreducible",
            Command::Prime { .. } => "prime",
            Command::Witness { .. } => "witness",
        }
    }

    fn inputs(&self) -> Vec<&str> {
        match self {
            Command::Eval { f }
            | Command::Disc { f }
            | Command::Factor { f }
            | Command::Central { f }
            | Command::Irreducible { f } => vec![f],
            Command::Prime { p } => vec![p],
            Command::Mul { f, g } | Command::Divmod { f, g, .. } => vec![f, g],
            Command::Witness { p, f, g } => vec![p, f, g],
        }
    }
}

/// What a command produced: text lines, the JSON `result`, and the exit code.
struct Outcome {
    text: Vec<String>,
    json: Value,
    code: i32,
}

impl Outcome {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Outcome {
            text: vec![text.into()],
            json,
            code: EXIT_OK,
        }
    }
}

fn config_for(cli: &Cli) -> Result<SessionConfig> {
    let mut texts = vec![cli.q.as_str()];
    texts.extend(cli.command.inputs());
    let field = match &cli.field {
        Some(desc) => desc.parse::<Field>()?,
        None => infer_field(&texts)?,
    };
    let q = parse_scalar(&cli.q, field)?;
    let output = if cli.json { OutputMode::Json } else { OutputMode::Text };
    SessionConfig::new(q, field, output)
}

fn factorization_json(verdict: &str, f: &Factorization) -> Value {
    json!({
        "verdict": verdict,
        "unit": f.unit.to_string(),
        "factors": f.factors.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    })
}

fn irreducible_outcome() -> Outcome {
    Outcome::ok("IRREDUCIBLE", json!({ "verdict": "IRREDUCIBLE", "factors": [] }))
}

fn unsupported_outcome(why: &str) -> Outcome {
    Outcome {
        text: vec!["UNSUPPORTED".into()],
        json: json!({ "verdict": "UNSUPPORTED", "explanation": why }),
        code: EXIT_UNDECIDED,
    }
}

fn factor_command(f: &QPoly) -> Result<Outcome> {
    if let Ok(qf) = QuadraticForm::from_poly(f) {
        let all = factor_qf(&qf, f.plane());
        let Some(first) = all.first() else {
            return Ok(irreducible_outcome());
        };
        let mut json = factorization_json("FACTORED", first);
        json["factorizations"] = all.iter().map(|w| factorization_json("FACTORED", w)).collect();
        return Ok(Outcome {
            text: all.iter().map(|w| w.to_string()).collect(),
            json,
            code: EXIT_OK,
        });
    }
    if f.is_homogeneous() {
        return Ok(match factor_homogeneous(f, DEFAULT_CAP)? {
            HomogeneousFactorization::Irreducible => irreducible_outcome(),
            HomogeneousFactorization::Factored(w) => Outcome::ok(w.to_string(), factorization_json("FACTORED", &w)),
            HomogeneousFactorization::Partial { factorization, core } => {
                let mut json = factorization_json("PARTIAL", &factorization);
                json["undecided"] = json!(core.to_string());
                Outcome {
                    text: vec![factorization.to_string()],
                    json,
                    code: EXIT_UNDECIDED,
                }
            }
        });
    }
    if f.is_univariate_in_x() || f.is_univariate_in_y() {
        return match factor_univariate(f, DEFAULT_CAP) {
            Ok(UnivariateFactorization::Irreducible) => Ok(irreducible_outcome()),
            Ok(UnivariateFactorization::Factored(w)) => Ok(Outcome::ok(w.to_string(), factorization_json("FACTORED", &w))),
            Err(e @ Error::DegreeCapExceeded { .. }) => Ok(unsupported_outcome(&e.to_string())),
            Err(e) => Err(e),
        };
    }
    irreducible_command(f)
}

fn irreducible_command(f: &QPoly) -> Result<Outcome> {
    Ok(match is_irreducible(f)? {
        Irreducibility::Irreducible => irreducible_outcome(),
        Irreducibility::Reducible { witness } => Outcome::ok(
            format!("REDUCIBLE {witness}"),
            factorization_json("REDUCIBLE", &witness),
        ),
        Irreducibility::Unsupported => {
            unsupported_outcome("neither univariate nor homogeneous of degree at most 4")
        }
    })
}

fn execute(command: &Command, config: &SessionConfig) -> Result<Outcome> {
    let poly = |text: &str| parse_poly(text, config);
    Ok(match command {
        Command::Eval { f } => {
            let f = poly(f)?;
            Outcome::ok(f.to_string(), json!(f.to_string()))
        }
        Command::Mul { f, g } => {
            let h = poly(f)?.checked_mul(&poly(g)?)?;
            Outcome::ok(h.to_string(), json!(h.to_string()))
        }
        Command::Divmod { side, dir, f, g } => {
            let side = match side {
                SideArg::Right => Side::Right,
                SideArg::Left => Side::Left,
            };
            let dir = match dir {
                DirArg::X => Direction::X,
                DirArg::Y => Direction::Y,
            };
            let r = divmod(&poly(f)?, &poly(g)?, side, dir)?;
            Outcome {
                text: vec![
                    format!("quotient: {}", r.quotient),
                    format!("remainder: {}", r.remainder),
                ],
                json: json!({
                    "quotient": r.quotient.to_string(),
                    "remainder": r.remainder.to_string(),
                }),
                code: EXIT_OK,
            }
        }
        Command::Disc { f } => {
            let qf = QuadraticForm::from_poly(&poly(f)?)?;
            let disc = quantum_discriminant(&qf);
            let (reducible, root) = is_reducible_qf(&qf);
            Outcome::ok(
                disc.to_string(),
                json!({
                    "discriminant": disc.to_string(),
                    "square": reducible,
                    "root": root.map(|d| d.to_string()),
                }),
            )
        }
        Command::Factor { f } => factor_command(&poly(f)?)?,
        Command::Central { f } => {
            let central = poly(f)?.is_central();
            Outcome::ok(central.to_string(), json!(central))
        }
        Command::Irreducible { f } => irreducible_command(&poly(f)?)?,
        Command::Prime { p } => {
            let verdict = classify_prime(&poly(p)?)?;
            let code = match verdict {
                PrimeVerdict::Unknown { .. } => EXIT_UNDECIDED,
                _ => EXIT_OK,
            };
            Outcome {
                text: vec![verdict.to_string()],
                json: verdict.to_json(),
                code,
            }
        }
        Command::Witness { p, f, g } => {
            let (p, f, g) = (poly(p)?, poly(f)?, poly(g)?);
            let verified = verify_nonprime_witness(&p, &f, &g)?;
            let product = f.checked_mul(&g)?;
            Outcome::ok(
                verified.to_string(),
                json!({ "verified": verified, "product": product.to_string() }),
            )
        }
    })
}

/// Runs the CLI on `argv` (program name first), writing to the given streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let stream: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(stream, "{}", e.render());
            if e.use_stderr() {
                let _ = writeln!(stream, "\n{GRAMMAR}");
            }
            return code;
        }
    };
    let result = config_for(&cli).and_then(|config| Ok((execute(&cli.command, &config)?, config)));
    let (outcome, config) = match result {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let written = match config.output {
        OutputMode::Text => outcome.text.iter().try_for_each(|line| writeln!(out, "{line}")),
        OutputMode::Json => {
            let doc = json!({
                "command": cli.command.name(),
                "q": config.q.to_string(),
                "field": config.field.to_string(),
                "result": outcome.json,
            });
            writeln!(out, "{doc}")
        }
    };
    if written.is_err() {
        return EXIT_INPUT;
    }
    outcome.code
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("qplane").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_and_mul() {
        assert_eq!(call(&["eval", "--q", "2", "y*x"]), (0, "2*x*y\n".into(), String::new()));
        assert_eq!(call(&["--q", "-1", "mul", "y", "x"]).1, "-x*y\n");
        assert_eq!(call(&["eval", "--q", "3/2", "y*x"]).1, "3/2*x*y\n");
        assert_eq!(call(&["eval", "-x + 1"]).1, "-x + 1\n");
    }

    #[test]
    fn verdicts() {
        assert_eq!(call(&["prime", "--q", "-1", "x^2-y^2"]).1, "PRIME (QFMinusOne)\n");
        assert_eq!(call(&["factor", "--q", "-1", "x^4+y^4"]), (0, "IRREDUCIBLE\n".into(), String::new()));
        let (code, out, _) = call(&["prime", "--q", "-1", "x^4+y^4"]);
        assert_eq!((code, out.as_str()), (3, "UNKNOWN\n"));
        assert_eq!(call(&["central", "--q", "-1", "x^2+y^4"]).1, "true\n");
        assert_eq!(call(&["irreducible", "--q", "2", "x^3 + y"]).0, 3);
    }

    #[test]
    fn quadratic_form_lists_both_factorizations() {
        let (code, out, _) = call(&["factor", "--q", "2", "--field", "Q(sqrt 2)", "x^2 - y^2"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 2);
        let (_, inferred, _) = call(&["factor", "--q", "2", "x^2 - y^2 + 0*sqrt(2)"]);
        assert_eq!(inferred, out);
    }

    #[test]
    fn divmod_output() {
        let (code, out, _) = call(&["divmod", "--q", "2", "--side", "left", "--dir", "x", "x^2*y + x", "x"]);
        assert_eq!(code, 0);
        assert_eq!(out, "quotient: x*y + 1\nremainder: 0\n");
        let (_, out, _) = call(&["divmod", "--q", "2", "x^2*y + x + 3", "x"]);
        assert_eq!(out, "quotient: 1/2*x*y + 1\nremainder: 3\n");
    }

    #[test]
    fn json_is_sorted_and_stable() {
        let args = ["--json", "prime", "--q", "-1", "x^4+2"];
        let (_, first, _) = call(&args);
        let (_, second, _) = call(&args);
        assert_eq!(first, second);
        assert_eq!(
            first,
            "{\"command\":\"prime\",\"field\":\"Q\",\"q\":\"-1\",\"result\":{\"certificate\":\"CentralUnivariateIrreducible\",\"verdict\":\"PRIME\"}}\n"
        );
    }

    #[test]
    fn input_errors() {
        let (code, _, err) = call(&["eval", "x +"]);
        assert_eq!(code, 2);
        assert!(err.contains("syntax error at 3"));
        assert_eq!(call(&["eval", "--q", "0", "x"]).0, 2);
        assert_eq!(call(&["eval", "--field", "Q", "sqrt(2)*x"]).0, 2);
        assert_eq!(call(&["eval", "sqrt(2)*x + sqrt(3)"]).0, 2);
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.contains("juxtaposition"));
        assert_eq!(call(&["--help"]).0, 0);
    }
}
