//! Sparse polynomials of the quantum plane, kept in the normal form where
//! every term is written `x^i * y^j` (x to the left of y).
//!
//! Reordering uses `y^j x^i = q^(i*j) x^i y^j`, so the product of two terms is
//! a single term scaled by a power of `q` (see [`monomial_mul`]).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalars::{Field, FieldElem};

/// Exponents of a term `x^x * y^y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExponentPair {
    pub x: u32,
    pub y: u32,
}

impl ExponentPair {
    pub const ONE: ExponentPair = ExponentPair { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        ExponentPair { x, y }
    }

    pub fn total(self) -> u32 {
        self.x + self.y
    }
}

/// Graded order: total degree first, then x-exponent.
impl Ord for ExponentPair {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for ExponentPair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree of a polynomial; the zero polynomial sits below every integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Product of two terms: `(x^a y^b)(x^c y^d) = q^(b*c) x^(a+c) y^(b+d)`.
pub fn monomial_mul(
    left: ExponentPair,
    right: ExponentPair,
    q: &FieldElem,
) -> (FieldElem, ExponentPair) {
    let twist = q
        .pow(i64::from(left.y) * i64::from(right.x))
        .expect("q is nonzero");
    (twist, ExponentPair::new(left.x + right.x, left.y + right.y))
}

/// The ambient algebra: the parameter `q` and the coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPlane {
    q: FieldElem,
    field: Field,
}

impl QPlane {
    pub fn new(q: FieldElem, field: Field) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroParameter);
        }
        let q = q.embed(field)?;
        Ok(QPlane { q, field })
    }

    /// Shorthand for `q = n/d` over `field`.
    pub fn rational(n: i64, d: i64, field: Field) -> Result<Self> {
        Self::new(FieldElem::from_ratio(n, d, field)?, field)
    }

    pub fn q(&self) -> &FieldElem {
        &self.q
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn scalar(&self, n: i64) -> FieldElem {
        FieldElem::from_int(n, self.field)
    }

    pub fn zero(&self) -> QPoly {
        QPoly {
            plane: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> QPoly {
        self.constant(FieldElem::one(self.field))
            .expect("one lies in every field")
    }

    pub fn constant(&self, c: FieldElem) -> Result<QPoly> {
        self.monomial(c, 0, 0)
    }

    pub fn x(&self) -> QPoly {
        self.monomial(FieldElem::one(self.field), 1, 0).unwrap()
    }

    pub fn y(&self) -> QPoly {
        self.monomial(FieldElem::one(self.field), 0, 1).unwrap()
    }

    /// `c * x^i * y^j`.
    pub fn monomial(&self, c: FieldElem, i: u32, j: u32) -> Result<QPoly> {
        self.from_terms([(ExponentPair::new(i, j), c)])
    }

    /// Sums the given terms (repeated exponents accumulate).
    pub fn from_terms<I>(&self, terms: I) -> Result<QPoly>
    where
        I: IntoIterator<Item = (ExponentPair, FieldElem)>,
    {
        let mut out = self.zero();
        for (e, c) in terms {
            let c = c.embed(self.field)?;
            out.add_term(e, &c);
        }
        Ok(out)
    }

    /// Builds from integer coefficients `(i, j, c)`; handy in tests.
    pub fn from_int_terms(&self, terms: &[(u32, u32, i64)]) -> QPoly {
        self.from_terms(
            terms
                .iter()
                .map(|&(i, j, c)| (ExponentPair::new(i, j), self.scalar(c))),
        )
        .expect("integers lie in every field")
    }
}

/// A polynomial in the quantum plane with coefficients in a [`Field`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoly {
    plane: QPlane,
    // no zero coefficients are ever stored
    terms: BTreeMap<ExponentPair, FieldElem>,
}

impl QPoly {
    pub fn plane(&self) -> &QPlane {
        &self.plane
    }

    pub fn q(&self) -> &FieldElem {
        &self.plane.q
    }

    pub fn field(&self) -> Field {
        self.plane.field
    }

    /// Terms in canonical order: total degree descending, then x-exponent
    /// descending.
    pub fn terms(&self) -> impl Iterator<Item = (ExponentPair, &FieldElem)> + '_ {
        self.terms.iter().rev().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldElem {
        self.terms
            .get(&ExponentPair::new(i, j))
            .cloned()
            .unwrap_or_else(|| FieldElem::zero(self.field()))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| *e == ExponentPair::ONE)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<FieldElem> {
        self.is_constant().then(|| self.coeff(0, 0))
    }

    /// First term in canonical order.
    pub fn leading_term(&self) -> Option<(ExponentPair, &FieldElem)> {
        self.terms().next()
    }

    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::NegInfinity, |e| Degree::Finite(e.total()))
    }

    pub fn strict_degree(&self) -> Result<u32> {
        match self.degree() {
            Degree::Finite(d) => Ok(d),
            Degree::NegInfinity => Err(Error::DegreeOfZero),
        }
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.x).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.y).max()
    }

    pub fn support(&self) -> BTreeSet<ExponentPair> {
        self.terms.keys().copied().collect()
    }

    /// Zero and constants count as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        let mut totals = self.terms.keys().map(|e| e.total());
        match totals.next() {
            None => true,
            Some(d) => totals.all(|t| t == d),
        }
    }

    /// True if only `x` (or only `y`) occurs; constants qualify for both.
    pub fn is_univariate_in_x(&self) -> bool {
        self.terms.keys().all(|e| e.y == 0)
    }

    pub fn is_univariate_in_y(&self) -> bool {
        self.terms.keys().all(|e| e.x == 0)
    }

    fn add_term(&mut self, e: ExponentPair, c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let sum = &*old + c;
                if sum.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = sum;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    fn check_same(&self, other: &QPoly) -> Result<()> {
        if self.plane == other.plane {
            Ok(())
        } else {
            Err(Error::ParameterMismatch)
        }
    }

    pub fn checked_add(&self, other: &QPoly) -> Result<QPoly> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &QPoly) -> Result<QPoly> {
        self.checked_add(&-other)
    }

    /// Bilinear extension of [`monomial_mul`].
    pub fn checked_mul(&self, other: &QPoly) -> Result<QPoly> {
        self.check_same(other)?;
        let q = self.q();
        let max_y = self.terms.keys().map(|e| e.y).max().unwrap_or(0);
        let max_x = other.terms.keys().map(|e| e.x).max().unwrap_or(0);
        let mut twists = vec![FieldElem::one(self.field())];
        for k in 1..=(max_y * max_x) as usize {
            let next = &twists[k - 1] * q;
            twists.push(next);
        }
        let mut out = self.plane.zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = ExponentPair::new(e1.x + e2.x, e1.y + e2.y);
                let twist = &twists[(e1.y * e2.x) as usize];
                let c = c1 * c2;
                if twist.is_one() {
                    out.add_term(e, &c);
                } else {
                    out.add_term(e, &(&c * twist));
                }
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &FieldElem) -> Result<QPoly> {
        let c = c.embed(self.field())?;
        if c.is_zero() {
            return Ok(self.plane.zero());
        }
        Ok(QPoly {
            plane: self.plane.clone(),
            terms: self.terms.iter().map(|(e, v)| (*e, v * &c)).collect(),
        })
    }

    pub fn pow(&self, n: u32) -> QPoly {
        let mut acc = self.plane.one();
        let mut sq = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Substitutes `x -> lambda*x`, `y -> mu*y`.
    pub fn scale_vars(&self, lambda: &FieldElem, mu: &FieldElem) -> Result<QPoly> {
        let lambda = lambda.embed(self.field())?;
        let mu = mu.embed(self.field())?;
        let mut out = self.plane.zero();
        for (e, c) in &self.terms {
            let factor = lambda.pow(e.x.into())? * mu.pow(e.y.into())?;
            out.add_term(*e, &(c * factor));
        }
        Ok(out)
    }

    /// Membership in the center. At a primitive n-th root of unity that means
    /// every exponent is a multiple of n; otherwise only constants are central.
    pub fn is_central(&self) -> bool {
        match self.q().root_of_unity_order().expect("q is nonzero") {
            Some(n) => self.terms.keys().all(|e| e.x % n == 0 && e.y % n == 0),
            None => self.is_constant(),
        }
    }

    /// Splits off the leading coefficient: returns `(c, p)` with `self = c*p`
    /// and `p` having leading coefficient 1.
    pub fn monic(&self) -> (FieldElem, QPoly) {
        match self.leading_term() {
            None => (FieldElem::one(self.field()), self.clone()),
            Some((_, c)) => {
                let c = c.clone();
                let inv = c.inverse().expect("stored coefficients are nonzero");
                (c, self.scalar_mul(&inv).unwrap())
            }
        }
    }

    /// `x^a * y^b` with `a`, `b` the smallest exponents occurring in the
    /// support, together with the cofactor `g` such that `self = x^a * g * y^b`.
    pub fn split_monomial_content(&self) -> (u32, u32, QPoly) {
        let a = self.terms.keys().map(|e| e.x).min().unwrap_or(0);
        let b = self.terms.keys().map(|e| e.y).min().unwrap_or(0);
        let core = QPoly {
            plane: self.plane.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (ExponentPair::new(e.x - a, e.y - b), c.clone()))
                .collect(),
        };
        (a, b, core)
    }

    /// `{"q": .., "field": .., "terms": [{"i":..,"j":..,"c":".."}, ..]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(e, c)| json!({"i": e.x, "j": e.y, "c": c.to_string()}))
            .collect();
        json!({
            "q": self.q().to_string(),
            "field": self.field().to_string(),
            "terms": terms,
        })
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, e: ExponentPair) -> fmt::Result {
    let mut first = true;
    for (name, exp) in [("x", e.x), ("y", e.y)] {
        if exp == 0 {
            continue;
        }
        if !first {
            write!(f, "*")?;
        }
        first = false;
        if exp == 1 {
            write!(f, "{name}")?;
        } else {
            write!(f, "{name}^{exp}")?;
        }
    }
    Ok(())
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms().enumerate() {
            let negative = c.leading_is_negative();
            let mag = if negative { -c } else { c.clone() };
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if e == ExponentPair::ONE {
                if mag.is_compound() {
                    write!(f, "({mag})")?;
                } else {
                    write!(f, "{mag}")?;
                }
            } else {
                if !mag.is_one() {
                    if mag.is_compound() {
                        write!(f, "({mag})*")?;
                    } else {
                        write!(f, "{mag}*")?;
                    }
                }
                write_monomial(f, e)?;
            }
        }
        Ok(())
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            plane: self.plane.clone(),
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

// Operator forms panic on a parameter mismatch; the `checked_*` methods report it.
macro_rules! forward_poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&QPoly> for &QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &QPoly) -> QPoly {
                self.$checked(rhs)
                    .unwrap_or_else(|e| panic!("polynomial arithmetic failed: {e}"))
            }
        }
        impl $tr<QPoly> for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QPoly> for QPoly {
            type Output = QPoly;
            fn $method(self, rhs: &QPoly) -> QPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<QPoly> for &QPoly {
            type Output = QPoly;
            fn $method(self, rhs: QPoly) -> QPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_poly_binop!(Add, add, checked_add);
forward_poly_binop!(Sub, sub, checked_sub);
forward_poly_binop!(Mul, mul, checked_mul);
