//! Factorization: quadratic forms through the quantum discriminant,
//! homogeneous polynomials through the bilinear coefficient system, and
//! univariate polynomials through root finding.
//!
//! For homogeneous factors `A = sum_i a_i x^(k-i) y^i` and
//! `B = sum_j b_j x^(l-j) y^j` the product has coefficients
//! `c_m = sum_{i+j=m} q^(i*(l-j)) a_i b_j`. With `a_0 = 1` the `b_j` follow
//! triangularly from `c_0..c_l`, and the equations for `m = l+1..n` constrain
//! the free unknowns `a_1..a_k`.

use std::fmt;

use crate::elim::{solve_system, BiPoly};
use crate::error::{Error, Result};
use crate::poly::{ExponentPair, QPlane, QPoly};
use crate::roots::roots_in_field;
use crate::scalars::FieldElem;
use crate::upoly::UPoly;

pub const DEFAULT_CAP: u32 = 4;

/// `unit * factors[0] * factors[1] * ...`, multiplied in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElem,
    pub factors: Vec<QPoly>,
}

impl Factorization {
    /// Makes every factor monic (leading coefficient 1 in the canonical
    /// order) and moves the scalars into the unit.
    pub fn normalized(unit: FieldElem, factors: Vec<QPoly>) -> Self {
        let mut unit = unit;
        let factors = factors
            .into_iter()
            .map(|f| {
                let (c, m) = f.monic();
                unit = &unit * &c;
                m
            })
            .collect();
        Factorization { unit, factors }
    }

    pub fn product(&self, plane: &QPlane) -> QPoly {
        self.factors
            .iter()
            .fold(plane.one(), |acc, f| &acc * f)
            .scalar_mul(&self.unit)
            .expect("unit lies in the field")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "unit": self.unit.to_string(),
            "factors": self.factors.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut runs: Vec<(&QPoly, usize)> = Vec::new();
        for p in &self.factors {
            match runs.last_mut() {
                Some((last, n)) if *last == p => *n += 1,
                _ => runs.push((p, 1)),
            }
        }
        let body: Vec<String> = runs
            .into_iter()
            .map(|(p, n)| {
                let base = if p.num_terms() > 1 { format!("({p})") } else { p.to_string() };
                if n > 1 && p.num_terms() == 1 && p.strict_degree() != Ok(1) {
                    format!("({base})^{n}")
                } else if n > 1 {
                    format!("{base}^{n}")
                } else {
                    base
                }
            })
            .collect();
        let body = body.join("*");
        if self.unit.is_one() {
            write!(f, "{body}")
        } else if (-&self.unit).is_one() {
            write!(f, "-{body}")
        } else if self.unit.is_compound() {
            write!(f, "({})*{body}", self.unit)
        } else {
            write!(f, "{}*{body}", self.unit)
        }
    }
}

// ---------------------------------------------------------------------------
// quadratic forms

/// `a x^2 + b xy + c y^2` in the quantum plane with parameter `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub q: FieldElem,
}

impl QuadraticForm {
    pub fn from_poly(f: &QPoly) -> Result<Self> {
        let is_form = !f.is_zero() && f.terms().all(|(e, _)| e.total() == 2);
        if !is_form {
            return Err(Error::NotQuadraticForm);
        }
        Ok(QuadraticForm {
            a: f.coeff(2, 0),
            b: f.coeff(1, 1),
            c: f.coeff(0, 2),
            q: f.q().clone(),
        })
    }

    pub fn to_poly(&self, plane: &QPlane) -> Result<QPoly> {
        plane.from_terms([
            (ExponentPair::new(2, 0), self.a.clone()),
            (ExponentPair::new(1, 1), self.b.clone()),
            (ExponentPair::new(0, 2), self.c.clone()),
        ])
    }
}

/// `b^2 - 4acq`.
pub fn quantum_discriminant(qf: &QuadraticForm) -> FieldElem {
    let four = FieldElem::from_int(4, qf.b.field());
    &qf.b * &qf.b - four * &qf.a * &qf.c * &qf.q
}

/// Reducible exactly when the discriminant is a square; the root is returned
/// as a witness.
pub fn is_reducible_qf(qf: &QuadraticForm) -> (bool, Option<FieldElem>) {
    let d = quantum_discriminant(qf).sqrt();
    (d.is_some(), d)
}

/// All factorizations of the form into two linear factors, as ordered
/// products of monic factors; empty when the discriminant is not a square.
pub fn factor_qf(qf: &QuadraticForm, plane: &QPlane) -> Vec<Factorization> {
    let field = plane.field();
    let (_, Some(d)) = is_reducible_qf(qf) else {
        return Vec::new();
    };
    let linear = |u: &FieldElem, v: &FieldElem| {
        plane
            .from_terms([(ExponentPair::new(1, 0), u.clone()), (ExponentPair::new(0, 1), v.clone())])
            .expect("same field")
    };
    let one = FieldElem::one(field);
    let y = plane.y();
    let mut out: Vec<Factorization> = Vec::new();
    if qf.a.is_zero() {
        // (b x + c y) y
        let first = linear(&qf.b, &qf.c);
        out.push(Factorization::normalized(one, vec![first, y]));
    } else {
        let two = FieldElem::from_int(2, field);
        for d in [d.clone(), -&d] {
            let lambda = (&qf.b + &d) / (&two * &qf.a * &qf.q);
            let mu = (&qf.b - &d) / (&two * &qf.a);
            let fact = Factorization::normalized(
                qf.a.clone(),
                vec![linear(&one, &lambda), linear(&one, &mu)],
            );
            if !out.contains(&fact) {
                out.push(fact);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// homogeneous polynomials

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomogeneousFactorization {
    Factored(Factorization),
    Irreducible,
    /// Degree above the cap: `x`, `y` and linear factors are split off and
    /// `core` (the last factor) is left as is.
    Partial {
        factorization: Factorization,
        core: QPoly,
    },
}

fn q_pow(q: &FieldElem, e: u32) -> FieldElem {
    q.pow(i64::from(e)).expect("q is nonzero")
}

/// The consistency equations of the `(k, n-k)` split of a homogeneous `core`
/// with nonzero `x^n` and `y^n` coefficients, in unknowns `a_1` (first
/// variable) and `a_2` (second variable). Also returns the `b_j` in terms of
/// the unknowns.
pub fn split_equations(core: &QPoly, k: u32) -> (Vec<BiPoly>, Vec<BiPoly>) {
    assert!((1..=2).contains(&k), "only splits with k = 1 or k = 2 are solved");
    let field = core.field();
    let q = core.q();
    let n = core.strict_degree().expect("nonzero");
    let l = n - k;
    let c = |m: u32| BiPoly::constant(core.coeff(n - m, m), field);
    let a: Vec<BiPoly> = [
        BiPoly::constant(FieldElem::one(field), field),
        BiPoly::var_a(field),
        BiPoly::var_b(field),
    ][..=k as usize]
        .to_vec();
    let mut b: Vec<BiPoly> = vec![c(0)];
    for m in 1..=l {
        let mut bm = c(m);
        for i in 1..=m.min(k) {
            let tw = q_pow(q, i * (i + l - m));
            bm = &bm - &(&a[i as usize] * &b[(m - i) as usize]).scale(&tw);
        }
        b.push(bm);
    }
    let mut eqs = Vec::new();
    for m in l + 1..=n {
        let mut e = -&c(m);
        for i in (m - l)..=m.min(k) {
            let tw = q_pow(q, i * (i + l - m));
            e = &e + &(&a[i as usize] * &b[(m - i) as usize]).scale(&tw);
        }
        eqs.push(e);
    }
    (b, eqs)
}

fn homogeneous_from_coeffs(plane: &QPlane, coeffs: &[FieldElem]) -> QPoly {
    let deg = coeffs.len() as u32 - 1;
    plane
        .from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (ExponentPair::new(deg - i as u32, i as u32), c.clone())),
        )
        .expect("same field")
}

/// Every factorization `core = A*B` with `deg A = k`, `A` monic in `x`.
/// `core` must be homogeneous with nonzero `x^n` and `y^n` coefficients and
/// `k` must be 1 or 2 with `k < deg core`.
pub fn homogeneous_splits(core: &QPoly, k: u32) -> Result<Vec<(QPoly, QPoly)>> {
    let plane = core.plane();
    let field = core.field();
    let (b, eqs) = split_equations(core, k);
    let zero = FieldElem::zero(field);
    let solutions: Vec<(FieldElem, FieldElem)> = if k == 1 {
        roots_in_field(&eqs[0].eval_a_as_upoly())
            .into_iter()
            .map(|a1| (a1, zero.clone()))
            .collect()
    } else {
        solve_system(&eqs[0], &eqs[1])?
    };
    let mut out = Vec::new();
    for (a1, a2) in solutions {
        let a_coeffs: Vec<FieldElem> = [FieldElem::one(field), a1.clone(), a2.clone()]
            [..=k as usize]
            .to_vec();
        let b_coeffs: Vec<FieldElem> = b.iter().map(|bj| bj.eval(&a1, &a2)).collect();
        let left = homogeneous_from_coeffs(plane, &a_coeffs);
        let right = homogeneous_from_coeffs(plane, &b_coeffs);
        if &(&left * &right) == core {
            out.push((left, right));
        }
    }
    Ok(out)
}

/// Irreducible factors of a homogeneous `core` without monomial content, in
/// product order. Gives up (returns the core whole, flagged) above `cap`.
fn factor_core(core: &QPoly, cap: u32) -> Result<(Vec<QPoly>, Option<QPoly>)> {
    let n = core.strict_degree()?;
    // splits with k <= 2 are complete up to degree 5
    let cap = cap.min(5);
    if n <= 1 {
        return Ok((vec![core.clone()], None));
    }
    if n > cap {
        // peel left linear factors only
        return Ok(match homogeneous_splits(core, 1)?.into_iter().next() {
            Some((left, right)) => {
                let (mut rest, flagged) = factor_core(&right, cap)?;
                rest.insert(0, left);
                (rest, flagged)
            }
            None => (vec![core.clone()], Some(core.clone())),
        });
    }
    for k in 1..=(n / 2).min(2) {
        if let Some((left, right)) = homogeneous_splits(core, k)?.into_iter().next() {
            let (mut out, _) = factor_core(&left, cap)?;
            out.extend(factor_core(&right, cap)?.0);
            return Ok((out, None));
        }
    }
    Ok((vec![core.clone()], None))
}

pub fn factor_homogeneous(f: &QPoly, cap: u32) -> Result<HomogeneousFactorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let plane = f.plane();
    let (a, b, core) = f.split_monomial_content();
    let mut factors: Vec<QPoly> = vec![plane.x(); a as usize];
    let flagged = if core.is_constant() {
        None
    } else {
        let (core_factors, flagged) = factor_core(&core, cap)?;
        factors.extend(core_factors);
        flagged
    };
    factors.extend(std::iter::repeat_n(plane.y(), b as usize));
    let mut fact = Factorization::normalized(FieldElem::one(f.field()), factors);
    fact.unit = FieldElem::one(f.field());
    let lead = |p: &QPoly| p.leading_term().map(|(_, c)| c.clone()).unwrap();
    fact.unit = lead(f) / lead(&fact.product(plane));
    debug_assert_eq!(&fact.product(plane), f);
    Ok(match flagged {
        Some(core) => HomogeneousFactorization::Partial {
            core: core.monic().1,
            factorization: fact,
        },
        None if fact.factors.len() == 1 => HomogeneousFactorization::Irreducible,
        None => HomogeneousFactorization::Factored(fact),
    })
}

// ---------------------------------------------------------------------------
// univariate polynomials

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnivariateFactorization {
    Factored(Factorization),
    Irreducible,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Var {
    X,
    Y,
}

fn to_upoly(f: &QPoly, var: Var) -> UPoly {
    let deg = match var {
        Var::X => f.deg_x(),
        Var::Y => f.deg_y(),
    }
    .unwrap_or(0);
    let coeffs = (0..=deg)
        .map(|i| match var {
            Var::X => f.coeff(i, 0),
            Var::Y => f.coeff(0, i),
        })
        .collect();
    UPoly::new(coeffs, f.field())
}

fn from_upoly(p: &UPoly, var: Var, plane: &QPlane) -> QPoly {
    plane
        .from_terms(p.coeffs().iter().enumerate().map(|(i, c)| {
            let e = match var {
                Var::X => ExponentPair::new(i as u32, 0),
                Var::Y => ExponentPair::new(0, i as u32),
            };
            (e, c.clone())
        }))
        .expect("same field")
}

/// Factors of a monic univariate polynomial over its field, degree at most 4:
/// linear factors from roots, then a split of a rootless quartic into two
/// quadratics.
fn factor_upoly(p: &UPoly) -> Result<Vec<UPoly>> {
    let field = p.field();
    let mut rest = p.monic();
    let mut out = Vec::new();
    for r in roots_in_field(&rest) {
        let lin = UPoly::linear_from_root(&r, field);
        loop {
            let (quo, rem) = rest.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            out.push(lin.clone());
            rest = quo;
        }
    }
    match rest.degree() {
        Some(4) => {
            // rest = (z^2 + a z + b)(z^2 + c z + e)
            let p0 = BiPoly::constant(rest.coeff(0), field);
            let p1 = BiPoly::constant(rest.coeff(1), field);
            let p2 = BiPoly::constant(rest.coeff(2), field);
            let p3 = BiPoly::constant(rest.coeff(3), field);
            let a = BiPoly::var_a(field);
            let b = BiPoly::var_b(field);
            let c = &p3 - &a;
            let e = &(&p2 - &b) - &(&a * &c);
            let e1 = &(&(&a * &e) + &(&b * &c)) - &p1;
            let e2 = &(&b * &e) - &p0;
            match solve_system(&e1, &e2)?.into_iter().next() {
                Some((av, bv)) => {
                    let first = UPoly::new(vec![bv, av, FieldElem::one(field)], field);
                    let second = rest.div_rem(&first).0;
                    out.push(first);
                    out.push(second);
                }
                None => out.push(rest),
            }
        }
        Some(d) if d > 0 => out.push(rest),
        _ => {}
    }
    Ok(out)
}

pub fn factor_univariate(f: &QPoly, cap: u32) -> Result<UnivariateFactorization> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let var = if f.is_univariate_in_x() {
        Var::X
    } else if f.is_univariate_in_y() {
        Var::Y
    } else {
        return Err(Error::NotUnivariate);
    };
    let degree = f.strict_degree()?;
    if degree > cap {
        return Err(Error::DegreeCapExceeded { degree, cap });
    }
    if degree > 4 {
        // the quadratic split only covers quartics
        return Err(Error::DegreeCapExceeded { degree, cap: 4 });
    }
    let p = to_upoly(f, var);
    let parts = factor_upoly(&p)?;
    if parts.len() == 1 {
        return Ok(UnivariateFactorization::Irreducible);
    }
    let plane = f.plane();
    let factors = parts.iter().map(|u| from_upoly(u, var, plane)).collect();
    let lc = p.leading_coeff().unwrap().clone();
    Ok(UnivariateFactorization::Factored(Factorization::normalized(lc, factors)))
}

// ---------------------------------------------------------------------------
// dispatch

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    Irreducible,
    Reducible { witness: Factorization },
    Unsupported,
}

pub fn is_irreducible(f: &QPoly) -> Result<Irreducibility> {
    if f.is_zero() || f.is_constant() {
        return Err(Error::ConstantInput);
    }
    let degree = f.strict_degree()?;
    if degree == 1 {
        return Ok(Irreducibility::Irreducible);
    }
    if (f.is_univariate_in_x() || f.is_univariate_in_y()) && degree <= DEFAULT_CAP {
        return Ok(match factor_univariate(f, DEFAULT_CAP)? {
            UnivariateFactorization::Irreducible => Irreducibility::Irreducible,
            UnivariateFactorization::Factored(w) => Irreducibility::Reducible { witness: w },
        });
    }
    if !f.is_homogeneous() || degree > DEFAULT_CAP {
        return Ok(Irreducibility::Unsupported);
    }
    let by_system = factor_homogeneous(f, DEFAULT_CAP)?;
    if degree == 2 {
        let qf = QuadraticForm::from_poly(f)?;
        let (reducible, _) = is_reducible_qf(&qf);
        assert_eq!(
            reducible,
            !matches!(by_system, HomogeneousFactorization::Irreducible),
            "discriminant test and coefficient system disagree on {f}"
        );
        return Ok(match factor_qf(&qf, f.plane()).into_iter().next() {
            Some(witness) => Irreducibility::Reducible { witness },
            None => Irreducibility::Irreducible,
        });
    }
    Ok(match by_system {
        HomogeneousFactorization::Irreducible => Irreducibility::Irreducible,
        HomogeneousFactorization::Factored(w) => Irreducibility::Reducible { witness: w },
        HomogeneousFactorization::Partial { .. } => Irreducibility::Unsupported,
    })
}
