//! Dense univariate polynomials over a [`Field`], used by the root finders
//! and the elimination machinery. Not part of the quantum plane proper: the
//! variable here commutes with everything.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalars::{Field, FieldElem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    field: Field,
    // coeffs[i] multiplies z^i; no trailing zeros
    coeffs: Vec<FieldElem>,
}

impl UPoly {
    pub fn new(coeffs: Vec<FieldElem>, field: Field) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.embed(field).expect("coefficient outside field"))
            .collect();
        let mut p = UPoly { field, coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64], field: Field) -> Self {
        Self::new(
            coeffs.iter().map(|&c| FieldElem::from_int(c, field)).collect(),
            field,
        )
    }

    pub fn zero(field: Field) -> Self {
        UPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldElem, field: Field) -> Self {
        Self::new(vec![c], field)
    }

    /// `z - root`.
    pub fn linear_from_root(root: &FieldElem, field: Field) -> Self {
        Self::new(vec![-root, FieldElem::one(field)], field)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(FieldElem::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElem::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.coeffs.last()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().all(FieldElem::is_rational)
    }

    pub fn eval(&self, z: &FieldElem) -> FieldElem {
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElem::zero(self.field), |acc, c| acc * z + c)
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.field)
    }

    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.inverse().unwrap()),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * FieldElem::from_int(i as i64, self.field))
                .collect(),
            self.field,
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let inv_lc = divisor.leading_coeff().unwrap().inverse().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (Self::zero(self.field), self.clone());
        };
        let mut quot = vec![FieldElem::zero(self.field); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &inv_lc;
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&c * dc);
            }
            quot[k] = c;
        }
        (Self::new(quot, self.field), Self::new(rem, self.field))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Product of `(z - r)` over the given roots.
    pub fn from_roots(roots: &[FieldElem], field: Field) -> Self {
        roots.iter().fold(Self::constant(FieldElem::one(field), field), |acc, r| {
            &acc * &Self::linear_from_root(r, field)
        })
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("({c})"),
                1 => format!("({c})*z"),
                _ => format!("({c})*z^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Add<&UPoly> for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect(), self.field)
    }
}

impl Sub<&UPoly> for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect(), self.field)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|c| -c).collect(), self.field)
    }
}

impl Mul<&UPoly> for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero(self.field);
        }
        let mut out = vec![FieldElem::zero(self.field); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        UPoly::new(out, self.field)
    }
}
