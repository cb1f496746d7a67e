//! Exact scalars: the rationals and quadratic fields Q(sqrt s).
//!
//! A [`FieldElem`] is stored as `rat + irr*sqrt(s)` with both parts in
//! canonical [`BigRational`] form. Elements of Q embed into every quadratic
//! field, so mixing a rational with an element of Q(sqrt s) is allowed; mixing
//! two different quadratic fields is a [`Error::FieldMismatch`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The only orders a root of unity can have inside Q or a quadratic field.
const ROOT_OF_UNITY_ORDERS: [u32; 5] = [1, 2, 3, 4, 6];

/// Which field a scalar lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    /// Q(sqrt s) for a squarefree `s` outside {0, 1}.
    Quadratic(i64),
}

impl Field {
    /// Validates the radicand and builds Q(sqrt s).
    pub fn quadratic(s: i64) -> Result<Field> {
        if is_squarefree_radicand(s) {
            Ok(Field::Quadratic(s))
        } else {
            Err(Error::InvalidRadicand(s))
        }
    }

    pub fn radicand(self) -> Option<i64> {
        match self {
            Field::Rational => None,
            Field::Quadratic(s) => Some(s),
        }
    }

    /// True when the field embeds in the reals (Q, or Q(sqrt s) with s > 0).
    pub fn is_real(self) -> bool {
        match self {
            Field::Rational => true,
            Field::Quadratic(s) => s > 0,
        }
    }

    /// Smallest field containing both; Q is contained in every Q(sqrt s).
    pub fn join(self, other: Field) -> Result<Field> {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Ok(f),
            (Field::Quadratic(a), Field::Quadratic(b)) if a == b => Ok(self),
            _ => Err(Error::FieldMismatch(self.to_string(), other.to_string())),
        }
    }

    /// True when every element of `self` is an element of `other`.
    pub fn is_subfield_of(self, other: Field) -> bool {
        self == Field::Rational || self == other
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Quadratic(s) => write!(f, "Q(sqrt {s})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `Q(sqrt s)` and the variant `Q(sqrt(s))`.
    fn from_str(text: &str) -> Result<Field> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact == "Q" {
            return Ok(Field::Rational);
        }
        let bad = || Error::InvalidFieldDescriptor(text.to_string());
        let inner = compact
            .strip_prefix("Q(sqrt")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(bad)?;
        let inner = inner
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(inner);
        let s: i64 = inner.parse().map_err(|_| bad())?;
        Field::quadratic(s)
    }
}

/// Trial-division squarefree test; also rejects 0 and 1.
pub fn is_squarefree_radicand(s: i64) -> bool {
    if s == 0 || s == 1 {
        return false;
    }
    let mut n = s.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// Writes a nonzero rational as `m^2 * s` with `s` squarefree (possibly 1).
///
/// Returns `None` when the numerator or denominator is too large to factor by
/// trial division.
pub fn squarefree_decomposition(r: &BigRational) -> Option<(i64, BigRational)> {
    if r.is_zero() {
        return None;
    }
    // r = n/d = (n*d)/d^2
    let prod = r.numer() * r.denom();
    let sign: i64 = if prod.is_negative() { -1 } else { 1 };
    let mut rest = prod.abs().to_u64()?;
    if rest > 1_000_000_000_000 {
        return None;
    }
    let mut square = 1u64;
    let mut free = 1u64;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            free *= p;
        }
        p += 1;
    }
    free *= rest;
    let s = sign * i64::try_from(free).ok()?;
    let m = BigRational::new(BigInt::from(square), r.denom().clone());
    Some((s, m))
}

/// Nonnegative rational square root, if it exists.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// An exact scalar `rat + irr*sqrt(s)` in a [`Field`].
#[derive(Clone, Debug)]
pub struct FieldElem {
    field: Field,
    rat: BigRational,
    irr: BigRational,
}

impl FieldElem {
    pub fn zero(field: Field) -> Self {
        FieldElem {
            field,
            rat: BigRational::zero(),
            irr: BigRational::zero(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::from_rational(BigRational::one(), field)
    }

    pub fn from_int(n: i64, field: Field) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()), field)
    }

    pub fn from_ratio(numer: i64, denom: i64, field: Field) -> Result<Self> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_rational(
            BigRational::new(numer.into(), denom.into()),
            field,
        ))
    }

    pub fn from_rational(rat: BigRational, field: Field) -> Self {
        FieldElem {
            field,
            rat,
            irr: BigRational::zero(),
        }
    }

    /// Builds `rat + irr*sqrt(s)`; a nonzero `irr` requires a quadratic field.
    pub fn new(rat: BigRational, irr: BigRational, field: Field) -> Result<Self> {
        if field == Field::Rational && !irr.is_zero() {
            return Err(Error::FieldMismatch(
                "Q".into(),
                "an element with an irrational part".into(),
            ));
        }
        Ok(FieldElem { field, rat, irr })
    }

    /// `sqrt(s)` as an element of Q(sqrt s).
    pub fn sqrt_radicand(field: Field) -> Option<Self> {
        field.radicand().map(|_| FieldElem {
            field,
            rat: BigRational::zero(),
            irr: BigRational::one(),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rat_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn irr_part(&self) -> &BigRational {
        &self.irr
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.rat.is_one() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    /// The rational value, if the irrational part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.rat)
    }

    /// Re-homes the element in a field containing its value.
    pub fn embed(&self, field: Field) -> Result<Self> {
        if self.is_rational() || self.field == field {
            Ok(FieldElem {
                field,
                rat: self.rat.clone(),
                irr: self.irr.clone(),
            })
        } else {
            Err(Error::FieldMismatch(
                self.field.to_string(),
                field.to_string(),
            ))
        }
    }

    fn join(&self, other: &Self) -> Result<Field> {
        match self.field.join(other.field) {
            Ok(f) => Ok(f),
            // a rational-valued element may still be mixed in freely
            Err(e) => {
                if self.is_rational() {
                    Ok(other.field)
                } else if other.is_rational() {
                    Ok(self.field)
                } else {
                    Err(e)
                }
            }
        }
    }

    fn radicand_big(field: Field) -> BigRational {
        BigRational::from_integer(field.radicand().unwrap_or(0).into())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let field = self.join(other)?;
        Ok(FieldElem {
            field,
            rat: &self.rat + &other.rat,
            irr: &self.irr + &other.irr,
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let field = self.join(other)?;
        Ok(FieldElem {
            field,
            rat: &self.rat - &other.rat,
            irr: &self.irr - &other.irr,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let field = self.join(other)?;
        match (self.irr.is_zero(), other.irr.is_zero()) {
            (true, true) => {
                let irr = BigRational::zero();
                return Ok(FieldElem { field, rat: &self.rat * &other.rat, irr });
            }
            (true, false) => {
                let (rat, irr) = (&self.rat * &other.rat, &self.rat * &other.irr);
                return Ok(FieldElem { field, rat, irr });
            }
            (false, true) => {
                let (rat, irr) = (&self.rat * &other.rat, &self.irr * &other.rat);
                return Ok(FieldElem { field, rat, irr });
            }
            (false, false) => {}
        }
        let s = Self::radicand_big(field);
        let rat = &self.rat * &other.rat + &self.irr * &other.irr * s;
        let irr = &self.rat * &other.irr + &self.irr * &other.rat;
        Ok(FieldElem { field, rat, irr })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.join(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Galois conjugate `rat - irr*sqrt(s)`.
    pub fn conj(&self) -> Self {
        FieldElem {
            field: self.field,
            rat: self.rat.clone(),
            irr: -&self.irr,
        }
    }

    /// Field norm `rat^2 - s*irr^2`, a rational.
    pub fn norm(&self) -> BigRational {
        let s = Self::radicand_big(self.field);
        &self.rat * &self.rat - &self.irr * &self.irr * s
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // the norm is nonzero because s is not a rational square
        let n = self.norm();
        Ok(FieldElem {
            field: self.field,
            rat: &self.rat / &n,
            irr: -&self.irr / &n,
        })
    }

    /// Exact power by repeated squaring; negative exponents need a nonzero base.
    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = FieldElem::one(self.field);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// A square root in the same field, normalized so the leading nonzero
    /// component (rational part first) is positive.
    pub fn sqrt(&self) -> Option<Self> {
        let field = self.field;
        if self.is_zero() {
            return Some(self.clone());
        }
        let s = Self::radicand_big(field);
        let root = if self.irr.is_zero() {
            if let Some(u) = rational_sqrt(&self.rat) {
                FieldElem::from_rational(u, field)
            } else if field.radicand().is_some() {
                // rat = s * v^2
                let v = rational_sqrt(&(&self.rat / &s))?;
                FieldElem::new(BigRational::zero(), v, field).ok()?
            } else {
                return None;
            }
        } else {
            // (u + v sqrt s)^2 = u^2 + s v^2 + 2uv sqrt s with u, v both nonzero
            let r = rational_sqrt(&self.norm())?;
            let two = BigRational::from_integer(2.into());
            let mut found = None;
            for cand in [(&self.rat + &r) / &two, (&self.rat - &r) / &two] {
                if !cand.is_positive() {
                    continue;
                }
                if let Some(u) = rational_sqrt(&cand) {
                    let v = &self.irr / (&two * &u);
                    found = Some(FieldElem { field, rat: u, irr: v });
                    break;
                }
            }
            found?
        };
        debug_assert!(&root * &root == *self);
        Some(root.normalize_sign())
    }

    fn normalize_sign(self) -> Self {
        if self.leading_is_negative() {
            -self
        } else {
            self
        }
    }

    /// True when the first nonzero component (rational part, then irrational
    /// part) is negative. Used for sign extraction when printing.
    pub fn leading_is_negative(&self) -> bool {
        if !self.rat.is_zero() {
            self.rat.is_negative()
        } else {
            self.irr.is_negative()
        }
    }

    /// Exact sign as a real number; `None` in an imaginary quadratic field
    /// unless the element is rational.
    pub fn real_sign(&self) -> Option<Ordering> {
        if self.irr.is_zero() {
            return Some(self.rat.cmp(&BigRational::zero()));
        }
        let s = self.field.radicand()?;
        if s < 0 {
            return None;
        }
        let ra = self.rat.signum();
        let ia = self.irr.signum();
        if ra.is_zero() || ra == ia {
            return Some(ia.cmp(&BigRational::zero()));
        }
        // opposite signs: compare rat^2 with s*irr^2
        let lhs = &self.rat * &self.rat;
        let rhs = &self.irr * &self.irr * BigRational::from_integer(s.into());
        let bigger_rat = lhs > rhs;
        let sign_rat = self.rat.is_positive();
        Some(if lhs == rhs {
            Ordering::Equal
        } else if bigger_rat == sign_rat {
            Ordering::Greater
        } else {
            Ordering::Less
        })
    }

    /// Least `n` with `self^n = 1`, searched over the orders that occur in
    /// quadratic fields.
    pub fn root_of_unity_order(&self) -> Result<Option<u32>> {
        if self.is_zero() {
            return Err(Error::ZeroParameter);
        }
        for n in ROOT_OF_UNITY_ORDERS {
            if self.pow(n as i64)?.is_one() {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// Total order on values: rational part first, then irrational part.
    /// Only used to make enumeration output deterministic.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.rat
            .cmp(&other.rat)
            .then_with(|| self.irr.cmp(&other.irr))
    }

    /// True if printing the element next to a variable needs parentheses.
    pub(crate) fn is_compound(&self) -> bool {
        !self.rat.is_zero() && !self.irr.is_zero() && self.common_denominator().is_one()
    }

    fn common_denominator(&self) -> BigInt {
        self.rat.denom().lcm(self.irr.denom())
    }
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.rat == other.rat
            && self.irr == other.irr
            && (self.irr.is_zero() || self.field == other.field)
    }
}

impl Eq for FieldElem {}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return write_rational(f, &self.rat);
        }
        let s = self.field.radicand().unwrap_or(0);
        let d = self.common_denominator();
        let a = (&self.rat * BigRational::from_integer(d.clone())).to_integer();
        let b = (&self.irr * BigRational::from_integer(d.clone())).to_integer();
        let radical = |coef: &BigInt| -> String {
            if coef.is_one() {
                format!("sqrt({s})")
            } else if *coef == -BigInt::one() {
                format!("-sqrt({s})")
            } else {
                format!("{coef}*sqrt({s})")
            }
        };
        let numer = if a.is_zero() {
            radical(&b)
        } else if b.is_negative() {
            format!("{a}-{}", radical(&-&b))
        } else {
            format!("{a}+{}", radical(&b))
        };
        if d.is_one() {
            write!(f, "{numer}")
        } else if a.is_zero() {
            write!(f, "{numer}/{d}")
        } else {
            write!(f, "({numer})/{d}")
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            field: self.field,
            rat: -self.rat,
            irr: -self.irr,
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -self.clone()
    }
}

// Operator forms panic on mixed quadratic fields or division by zero; use the
// `checked_*` methods where inputs are not already known to be compatible.
macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("scalar arithmetic failed: {e}"))
            }
        }
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                (&self).$method(rhs)
            }
        }
        impl $tr<FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);
