use std::process::Command;

fn qplane(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_qplane")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn stdout_of(args: &[&str]) -> String {
    let (code, out, err) = qplane(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn eval_golden() {
    assert_eq!(stdout_of(&["eval", "--q", "2", "y*x"]), "2*x*y\n");
    assert_eq!(stdout_of(&["eval", "--q", "-1", "(x+y)^2"]), "x^2 + y^2\n");
    assert_eq!(stdout_of(&["eval", "3/2*x*y^2"]), "3/2*x*y^2\n");
    assert_eq!(stdout_of(&["eval", "--q", "-1", "y^2*x^3"]), "x^3*y^2\n");
    assert_eq!(stdout_of(&["--q", "sqrt(2)", "eval", "y*x"]), "sqrt(2)*x*y\n");
}

#[test]
fn verdict_golden() {
    assert_eq!(stdout_of(&["prime", "--q", "-1", "x^2-y^2"]), "PRIME (QFMinusOne)\n");
    assert_eq!(stdout_of(&["prime", "--q", "-1", "x^4+2"]), "PRIME (CentralUnivariateIrreducible)\n");
    assert_eq!(stdout_of(&["prime", "--q", "2", "x"]), "PRIME (VariableGenerator)\n");
    assert_eq!(stdout_of(&["prime", "--q", "-1", "x^2+x*y+y^2"]), "NOT PRIME (NotCentral)\n");
    assert_eq!(stdout_of(&["factor", "--q", "-1", "x^4+y^4"]), "IRREDUCIBLE\n");
    assert_eq!(stdout_of(&["irreducible", "--q", "-1", "x^4+y^4"]), "IRREDUCIBLE\n");
    assert_eq!(stdout_of(&["disc", "--q", "2", "x^2+x*y+y^2"]), "-7\n");
    assert_eq!(stdout_of(&["central", "--q", "2", "x*y"]), "false\n");
}

#[test]
fn factor_golden() {
    assert_eq!(
        stdout_of(&["factor", "--q", "2", "--field", "Q(sqrt 2)", "x^2-y^2"]),
        "(x + sqrt(2)/2*y)*(x - sqrt(2)*y)\n(x - sqrt(2)/2*y)*(x + sqrt(2)*y)\n"
    );
    assert_eq!(stdout_of(&["factor", "x^3 - x"]), "(x + 1)*x*(x - 1)\n");
}

#[test]
fn undecided_exit_code() {
    let (code, out, _) = qplane(&["prime", "--q", "-1", "x^4+y^4"]);
    assert_eq!((code, out.as_str()), (3, "UNKNOWN\n"));
}

#[test]
fn witness_command() {
    assert_eq!(
        stdout_of(&["witness", "--q", "-1", "x^4+y^4", "x^3-x^2*y+x*y^2-y^3", "x*(1-x)-(1+x)*y"]),
        "false\n"
    );
    let (code, out, _) = qplane(&["--json", "witness", "--q", "-1", "x^4+y^4", "x^3-x^2*y+x*y^2-y^3", "x*(1-x)-(1+x)*y"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"product\":\"-x^5 - 2*x^3*y^2 - x*y^4 + x^4 + 2*x^2*y^2 + y^4\""), "{out}");
}

#[test]
fn json_is_byte_identical() {
    let args = ["--json", "factor", "--q", "-1", "x^2+y^2"];
    let first = stdout_of(&args);
    assert_eq!(first, stdout_of(&args));
    assert_eq!(
        first,
        concat!(
            r#"{"command":"factor","field":"Q","q":"-1","result":{"factorizations":["#,
            r#"{"factors":["x - y","x - y"],"unit":"1","verdict":"FACTORED"},"#,
            r#"{"factors":["x + y","x + y"],"unit":"1","verdict":"FACTORED"}],"#,
            r#""factors":["x - y","x - y"],"unit":"1","verdict":"FACTORED"}}"#,
            "\n"
        )
    );
}

#[test]
fn input_errors_exit_two() {
    let (code, _, err) = qplane(&["eval", "x ^ ^"]);
    assert_eq!(code, 2);
    assert!(err.starts_with("error: syntax error"), "{err}");
    let (code, _, err) = qplane(&["eval", "z"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown symbol 'z'"), "{err}");
    assert_eq!(qplane(&["eval", "--q", "0", "x"]).0, 2);
    assert_eq!(qplane(&["divmod", "x", "x*y + y"]).0, 2);
    assert_eq!(qplane(&[]).0, 2);
}
