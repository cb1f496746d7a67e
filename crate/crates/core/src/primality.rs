//! Primality classification with checkable certificates.
//!
//! A nonconstant `p` is classified by the first rule that applies:
//!
//! 1. `p = lambda*x` or `lambda*y`: prime.
//! 2. `q` not a root of unity: only those are prime; monomials of degree at
//!    least two are reducible, anything else is not prime.
//! 3. `q = 1`: the commutative ring is a UFD, so prime means irreducible.
//! 4. `q` of order `n >= 2`: a prime must be central and irreducible. Central
//!    univariate irreducibles are prime, and so are quadratic forms
//!    `a x^2 + c y^2` at `q = -1` over a real field with negative
//!    discriminant. Other central irreducibles are left undecided unless the
//!    built-in witness table settles them.

use std::fmt;

use serde_json::{json, Value};

use crate::division::divides;
use crate::error::{Error, Result};
use crate::factor::{is_irreducible, is_reducible_qf, quantum_discriminant, Factorization, Irreducibility, QuadraticForm};
use crate::poly::{ExponentPair, QPoly};
use crate::scalars::FieldElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    VariableGenerator,
    CommutativeUFD,
    CentralUnivariateIrreducible,
    QFMinusOne,
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            CertificateKind::VariableGenerator => "VariableGenerator",
            CertificateKind::CommutativeUFD => "CommutativeUFD",
            CertificateKind::CentralUnivariateIrreducible => "CentralUnivariateIrreducible",
            CertificateKind::QFMinusOne => "QFMinusOne",
        };
        write!(f, "{name}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReasonKind {
    /// A support term whose exponents are not both multiples of `ord(q)`.
    NotCentral(ExponentPair),
    Reducible(Factorization),
    NotMonomialNonRootOfUnity,
    /// `p | f*g` while `p` divides neither `f` nor `g`.
    ExplicitWitness { f: QPoly, g: QPoly },
}

impl ReasonKind {
    pub fn name(&self) -> &'static str {
        match self {
            ReasonKind::NotCentral(_) => "NotCentral",
            ReasonKind::Reducible(_) => "Reducible",
            ReasonKind::NotMonomialNonRootOfUnity => "NotMonomialNonRootOfUnity",
            ReasonKind::ExplicitWitness { .. } => "ExplicitWitness",
        }
    }
}

#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeVerdict {
    Prime { certificate: CertificateKind },
    NotPrime { reason: ReasonKind },
    Unknown { explanation: String },
}

impl PrimeVerdict {
    pub fn is_prime(&self) -> bool {
        matches!(self, PrimeVerdict::Prime { .. })
    }

    pub fn is_not_prime(&self) -> bool {
        matches!(self, PrimeVerdict::NotPrime { .. })
    }

    pub fn to_json(&self) -> Value {
        match self {
            PrimeVerdict::Prime { certificate } => json!({
                "verdict": "PRIME",
                "certificate": certificate.to_string(),
            }),
            PrimeVerdict::NotPrime { reason } => {
                let mut out = json!({ "verdict": "NOT PRIME", "reason": reason.name() });
                match reason {
                    ReasonKind::NotCentral(e) => out["term"] = json!({ "i": e.x, "j": e.y }),
                    ReasonKind::Reducible(w) => out["factorization"] = w.to_json(),
                    ReasonKind::ExplicitWitness { f, g } => {
                        out["f"] = json!(f.to_string());
                        out["g"] = json!(g.to_string());
                    }
                    ReasonKind::NotMonomialNonRootOfUnity => {}
                }
                out
            }
            PrimeVerdict::Unknown { explanation } => json!({
                "verdict": "UNKNOWN",
                "explanation": explanation,
            }),
        }
    }
}

impl fmt::Display for PrimeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeVerdict::Prime { certificate } => write!(f, "PRIME ({certificate})"),
            PrimeVerdict::NotPrime { reason } => write!(f, "NOT PRIME ({})", reason.name()),
            PrimeVerdict::Unknown { .. } => write!(f, "UNKNOWN"),
        }
    }
}

/// Whether `q^i p(x/q, y) = p = q^j p(x, y/q)` can hold: all x-exponents
/// agree modulo `ord(q)`, and so do all y-exponents (exact equality when `q`
/// is not a root of unity).
pub fn scale_test(p: &QPoly) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let modulus = p.q().root_of_unity_order()?;
    let reduce = |e: u32| modulus.map_or(e, |n| e % n);
    let first = p.terms().next().unwrap().0;
    Ok(p
        .terms()
        .all(|(e, _)| reduce(e.x) == reduce(first.x) && reduce(e.y) == reduce(first.y)))
}

pub fn verify_nonprime_witness(p: &QPoly, f: &QPoly, g: &QPoly) -> Result<bool> {
    let fg = f.checked_mul(g)?;
    Ok(divides(p, &fg)? && !divides(p, f)? && !divides(p, g)?)
}

/// Known `(q, p, f, g)` with `p | f*g`, `p` dividing neither factor, given as
/// integer terms `(i, j, c)`.
type Terms = &'static [(u32, u32, i64)];
const WITNESS_TABLE: &[(i64, Terms, Terms, Terms)] = &[(
    -1,
    &[(4, 0, 1), (0, 4, 1)],
    &[(3, 0, 1), (2, 1, -1), (1, 2, 1), (0, 3, -1)],
    &[(1, 0, 1), (2, 0, -1), (0, 1, -1), (1, 1, -1)],
)];

/// A witness pair from the table for `p` (matched up to a nonzero scalar),
/// re-verified before it is returned.
pub fn lookup_witness(p: &QPoly) -> Result<Option<(QPoly, QPoly)>> {
    let plane = p.plane();
    let target = p.monic().1;
    for &(q, tp, tf, tg) in WITNESS_TABLE {
        if *p.q() != FieldElem::from_int(q, p.field()) {
            continue;
        }
        if plane.from_int_terms(tp).monic().1 != target {
            continue;
        }
        let (f, g) = (plane.from_int_terms(tf), plane.from_int_terms(tg));
        if verify_nonprime_witness(p, &f, &g)? {
            return Ok(Some((f, g)));
        }
    }
    Ok(None)
}

fn monomial_factorization(p: &QPoly) -> Factorization {
    let plane = p.plane();
    let (e, c) = p.leading_term().unwrap();
    let mut factors = vec![plane.x(); e.x as usize];
    factors.extend(std::iter::repeat_n(plane.y(), e.y as usize));
    Factorization {
        unit: c.clone(),
        factors,
    }
}

fn is_real_field(p: &QPoly) -> bool {
    p.field().is_real()
}

pub fn classify_prime(p: &QPoly) -> Result<PrimeVerdict> {
    if p.is_zero() || p.is_constant() {
        return Err(Error::ConstantInput);
    }
    let prime = |certificate| Ok(PrimeVerdict::Prime { certificate });
    let not_prime = |reason| Ok(PrimeVerdict::NotPrime { reason });

    if p.is_monomial() {
        let (e, _) = p.leading_term().unwrap();
        if e.total() == 1 {
            return prime(CertificateKind::VariableGenerator);
        }
    }
    let order = p.q().root_of_unity_order()?;
    let Some(n) = order else {
        return if p.is_monomial() {
            not_prime(ReasonKind::Reducible(monomial_factorization(p)))
        } else {
            not_prime(ReasonKind::NotMonomialNonRootOfUnity)
        };
    };
    if n == 1 {
        return match is_irreducible(p)? {
            Irreducibility::Irreducible => prime(CertificateKind::CommutativeUFD),
            Irreducibility::Reducible { witness } => not_prime(ReasonKind::Reducible(witness)),
            Irreducibility::Unsupported => Ok(PrimeVerdict::Unknown {
                explanation: "irreducibility is undecided for this shape".into(),
            }),
        };
    }
    if let Some((e, _)) = p.terms().find(|(e, _)| e.x % n != 0 || e.y % n != 0) {
        return not_prime(ReasonKind::NotCentral(e));
    }
    let irreducibility = is_irreducible(p)?;
    if let Irreducibility::Reducible { witness } = irreducibility {
        return not_prime(ReasonKind::Reducible(witness));
    }
    let irreducible = irreducibility == Irreducibility::Irreducible;
    let univariate = p.is_univariate_in_x() || p.is_univariate_in_y();
    if irreducible && univariate {
        return prime(CertificateKind::CentralUnivariateIrreducible);
    }
    if n == 2 && irreducible {
        if let Ok(qf) = QuadraticForm::from_poly(p) {
            let negative = quantum_discriminant(&qf).real_sign() == Some(std::cmp::Ordering::Less);
            if qf.b.is_zero() && is_real_field(p) && negative {
                debug_assert!(!is_reducible_qf(&qf).0);
                return prime(CertificateKind::QFMinusOne);
            }
        }
    }
    if let Some((f, g)) = lookup_witness(p)? {
        return not_prime(ReasonKind::ExplicitWitness { f, g });
    }
    Ok(PrimeVerdict::Unknown {
        explanation: if irreducible {
            "central and irreducible, but no primality criterion applies".into()
        } else {
            "irreducibility is undecided for this shape".into()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::QPlane;
    use crate::scalars::Field;

    const Q: Field = Field::Rational;

    fn plane(q: i64) -> QPlane {
        QPlane::rational(q, 1, Q).unwrap()
    }

    #[test]
    fn scale_test_examples() {
        let pl = plane(-1);
        assert!(scale_test(&pl.from_int_terms(&[(4, 0, 1), (0, 4, 1)])).unwrap());
        assert!(!scale_test(&pl.from_int_terms(&[(2, 0, 1), (1, 1, 1)])).unwrap());
        assert!(scale_test(&pl.from_int_terms(&[(1, 0, 7)])).unwrap());
        assert!(!scale_test(&plane(2).from_int_terms(&[(2, 0, 1), (0, 2, 1)])).unwrap());
        assert_eq!(scale_test(&pl.zero()), Err(Error::ZeroInput));
    }

    #[test]
    fn generators_are_prime() {
        let pl = plane(2);
        for p in [pl.x(), pl.y(), pl.from_int_terms(&[(1, 0, -3)])] {
            assert_eq!(
                classify_prime(&p).unwrap(),
                PrimeVerdict::Prime { certificate: CertificateKind::VariableGenerator }
            );
        }
    }

    #[test]
    fn non_root_of_unity() {
        let pl = plane(2);
        let diff = pl.from_int_terms(&[(2, 0, 1), (0, 2, -1)]);
        assert_eq!(
            classify_prime(&diff).unwrap(),
            PrimeVerdict::NotPrime { reason: ReasonKind::NotMonomialNonRootOfUnity }
        );
        let mono = pl.from_int_terms(&[(1, 1, 2)]);
        let PrimeVerdict::NotPrime { reason: ReasonKind::Reducible(w) } = classify_prime(&mono).unwrap() else {
            panic!("monomials of degree two are reducible");
        };
        assert_eq!(w.product(&pl), mono);
    }

    #[test]
    fn minus_one_examples() {
        let pl = plane(-1);
        let x4_plus_2 = pl.from_int_terms(&[(4, 0, 1), (0, 0, 2)]);
        assert_eq!(
            classify_prime(&x4_plus_2).unwrap().to_string(),
            "PRIME (CentralUnivariateIrreducible)"
        );
        let diff = pl.from_int_terms(&[(2, 0, 1), (0, 2, -1)]);
        assert_eq!(classify_prime(&diff).unwrap().to_string(), "PRIME (QFMinusOne)");
        let with_cross = pl.from_int_terms(&[(2, 0, 1), (1, 1, 1), (0, 2, 1)]);
        assert_eq!(
            classify_prime(&with_cross).unwrap(),
            PrimeVerdict::NotPrime { reason: ReasonKind::NotCentral(ExponentPair::new(1, 1)) }
        );
        // sum of squares splits as (x - y)^2
        let sum = pl.from_int_terms(&[(2, 0, 1), (0, 2, 1)]);
        assert!(matches!(
            classify_prime(&sum).unwrap(),
            PrimeVerdict::NotPrime { reason: ReasonKind::Reducible(_) }
        ));
    }

    #[test]
    fn positive_nonsquare_discriminant_is_unknown() {
        // 4ac = 8 is positive and not a square
        let pl = plane(-1);
        let p = pl.from_int_terms(&[(2, 0, 1), (0, 2, 2)]);
        assert!(matches!(classify_prime(&p).unwrap(), PrimeVerdict::Unknown { .. }));
        // over Q(sqrt -1) the real-field hypothesis fails
        let pl = QPlane::rational(-1, 1, Field::Quadratic(-1)).unwrap();
        let p = pl.from_int_terms(&[(2, 0, 1), (0, 2, -3)]);
        assert!(matches!(classify_prime(&p).unwrap(), PrimeVerdict::Unknown { .. }));
    }

    #[test]
    fn quartic_table_entry_does_not_verify() {
        let pl = plane(-1);
        let p = pl.from_int_terms(&[(4, 0, 1), (0, 4, 1)]);
        let f = pl.from_int_terms(&[(3, 0, 1), (2, 1, -1), (1, 2, 1), (0, 3, -1)]);
        let g = pl.from_int_terms(&[(1, 0, 1), (2, 0, -1), (0, 1, -1), (1, 1, -1)]);
        // expanded by hand: f*g = (1 - x)(x^2 + y^2)^2, which p does not divide
        let expected = pl.from_int_terms(&[(4, 0, 1), (2, 2, 2), (0, 4, 1), (5, 0, -1), (3, 2, -2), (1, 4, -1)]);
        assert_eq!(&f * &g, expected);
        assert!(!divides(&p, &(&f * &g)).unwrap());
        assert!(!verify_nonprime_witness(&p, &f, &g).unwrap());
        assert_eq!(lookup_witness(&p).unwrap(), None);
        assert!(matches!(classify_prime(&p).unwrap(), PrimeVerdict::Unknown { .. }));
    }

    #[test]
    fn witness_predicate_on_commutative_split() {
        // x^2 - 4 = (x - 2)(x + 2)
        let pl = plane(1);
        let p = pl.from_int_terms(&[(2, 0, 1), (0, 0, -4)]);
        let f = pl.from_int_terms(&[(1, 0, 1), (0, 0, -2)]);
        let g = pl.from_int_terms(&[(1, 0, 1), (0, 0, 2)]);
        assert!(verify_nonprime_witness(&p, &f, &g).unwrap());
    }

    #[test]
    fn witness_examples() {
        let pl = plane(-1);
        assert!(!verify_nonprime_witness(&pl.x(), &pl.x(), &pl.y()).unwrap());
        let diff = pl.from_int_terms(&[(2, 0, 1), (0, 2, -1)]);
        assert!(!verify_nonprime_witness(&diff, &pl.x(), &pl.y()).unwrap());
    }

    #[test]
    fn commutative_case() {
        let pl = plane(1);
        let sum = pl.from_int_terms(&[(2, 0, 1), (0, 2, 1)]);
        assert_eq!(classify_prime(&sum).unwrap().to_string(), "PRIME (CommutativeUFD)");
        let mixed = pl.from_int_terms(&[(3, 2, 1), (1, 0, 1), (0, 0, 1)]);
        assert!(matches!(classify_prime(&mixed).unwrap(), PrimeVerdict::Unknown { .. }));
    }

    #[test]
    fn constants_are_rejected() {
        assert_eq!(classify_prime(&plane(2).one()), Err(Error::ConstantInput));
    }
}
