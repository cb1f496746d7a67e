//! Skew Euclidean division by divisors whose leading coefficient in one
//! variable is a nonzero scalar, and the two-sided divisibility predicate.
//!
//! In the X direction a polynomial is read as `sum_k x^k c_k(y)`. The divisor
//! `g` is admissible when its top coefficient `c_m(y)` is a constant `lambda`,
//! i.e. the only term of `g` with x-exponent `m = deg_x(g)` is `lambda*x^m`.
//! Each step removes the term of the running remainder with the largest
//! x-exponent by subtracting a scaled term times `g`; the scalar absorbs the
//! twist picked up when the term is moved past `x^m`.

use crate::error::{Error, Result};
use crate::poly::{monomial_mul, ExponentPair, QPoly};
use crate::scalars::FieldElem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// `f = quotient * g + remainder`
    Right,
    /// `f = g * quotient + remainder`
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    X,
    Y,
}

impl Direction {
    fn exp(self, e: ExponentPair) -> u32 {
        match self {
            Direction::X => e.x,
            Direction::Y => e.y,
        }
    }

    fn other(self, e: ExponentPair) -> u32 {
        match self {
            Direction::X => e.y,
            Direction::Y => e.x,
        }
    }

    fn pure_power(self, m: u32) -> ExponentPair {
        match self {
            Direction::X => ExponentPair::new(m, 0),
            Direction::Y => ExponentPair::new(0, m),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionResult {
    pub quotient: QPoly,
    pub remainder: QPoly,
    pub side: Side,
    pub direction: Direction,
}

/// Degree of `f` in the given variable, `None` for zero.
pub fn degree_in(f: &QPoly, dir: Direction) -> Option<u32> {
    f.terms().map(|(e, _)| dir.exp(e)).max()
}

/// The scalar `lambda` with `g = lambda * v^m + (lower in v)`, if `g` has one.
fn unit_lead(g: &QPoly, dir: Direction) -> Result<(u32, FieldElem)> {
    let m = degree_in(g, dir).ok_or(Error::ZeroDivisor)?;
    let mut top = g.terms().filter(|(e, _)| dir.exp(*e) == m);
    match (top.next(), top.next()) {
        (Some((e, c)), None) if dir.other(e) == 0 => Ok((m, c.clone())),
        _ => Err(Error::NonUnitLeadingCoefficient),
    }
}

pub fn is_admissible(g: &QPoly, dir: Direction) -> bool {
    unit_lead(g, dir).is_ok()
}

pub fn divmod(f: &QPoly, g: &QPoly, side: Side, dir: Direction) -> Result<DivisionResult> {
    if f.plane() != g.plane() {
        return Err(Error::ParameterMismatch);
    }
    let (m, lambda) = unit_lead(g, dir)?;
    let plane = f.plane();
    let q = f.q();
    let lead = dir.pure_power(m);
    let mut quotient = plane.zero();
    let mut remainder = f.clone();
    loop {
        // term of largest degree in `dir`, ties broken by the other exponent
        let top = remainder
            .terms()
            .filter(|(e, _)| dir.exp(*e) >= m)
            .max_by_key(|(e, _)| (dir.exp(*e), dir.other(*e)))
            .map(|(e, c)| (e, c.clone()));
        let Some((e, c)) = top else { break };
        let mono = ExponentPair::new(e.x - lead.x, e.y - lead.y);
        let (twist, _) = match side {
            Side::Right => monomial_mul(mono, lead, q),
            Side::Left => monomial_mul(lead, mono, q),
        };
        let alpha = c.checked_div(&(&lambda * &twist))?;
        let step = plane.monomial(alpha, mono.x, mono.y)?;
        let product = match side {
            Side::Right => step.checked_mul(g)?,
            Side::Left => g.checked_mul(&step)?,
        };
        remainder = remainder.checked_sub(&product)?;
        quotient = quotient.checked_add(&step)?;
    }
    Ok(DivisionResult {
        quotient,
        remainder,
        side,
        direction: dir,
    })
}

/// Whether `f = p*t` or `f = t*p` for some `t`, trying both sides in every
/// direction where `p` is admissible.
pub fn divides(p: &QPoly, f: &QPoly) -> Result<bool> {
    let dirs: Vec<Direction> = [Direction::X, Direction::Y]
        .into_iter()
        .filter(|&d| is_admissible(p, d))
        .collect();
    if dirs.is_empty() {
        return Err(Error::UnsupportedDivisor);
    }
    for dir in dirs {
        for side in [Side::Right, Side::Left] {
            if divmod(f, p, side, dir)?.remainder.is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
