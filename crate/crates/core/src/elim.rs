//! Commutative bivariate polynomials and exact elimination.
//!
//! [`solve_system`] finds every solution in the coefficient field of a pair of
//! equations `e1(a, b) = e2(a, b) = 0` with finitely many solutions: the
//! resultant in `b` is built by evaluating Sylvester determinants at integer
//! points and interpolating, its roots are found with [`crate::roots`], and
//! each root is back-substituted through a univariate gcd.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::roots::roots_in_field;
use crate::scalars::{Field, FieldElem};
use crate::upoly::UPoly;

/// Sparse polynomial in two commuting unknowns `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    // (deg_a, deg_b) -> nonzero coefficient
    terms: BTreeMap<(u32, u32), FieldElem>,
}

impl BiPoly {
    pub fn zero(field: Field) -> Self {
        BiPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElem, field: Field) -> Self {
        Self::term(c, 0, 0, field)
    }

    pub fn term(c: FieldElem, da: u32, db: u32, field: Field) -> Self {
        let mut p = Self::zero(field);
        p.add_term((da, db), c.embed(field).expect("coefficient outside field"));
        p
    }

    pub fn var_a(field: Field) -> Self {
        Self::term(FieldElem::one(field), 1, 0, field)
    }

    pub fn var_b(field: Field) -> Self {
        Self::term(FieldElem::one(field), 0, 1, field)
    }

    fn add_term(&mut self, key: (u32, u32), c: FieldElem) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&key) {
            Some(old) => old + &c,
            None => c,
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &FieldElem)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn deg_a(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn deg_b(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0 + k.1).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        let mut out = Self::zero(self.field);
        for (k, v) in &self.terms {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::constant(FieldElem::one(self.field), self.field), |acc, _| {
            &acc * self
        })
    }

    /// Substitutes `a = a0`, leaving a polynomial in `b`.
    pub fn eval_a(&self, a0: &FieldElem) -> UPoly {
        let field = self.field.join(a0.field()).unwrap_or(self.field);
        let mut coeffs = vec![FieldElem::zero(field); self.deg_b() as usize + 1];
        for ((da, db), c) in &self.terms {
            let v = c * a0.pow(i64::from(*da)).unwrap();
            coeffs[*db as usize] = &coeffs[*db as usize] + &v;
        }
        UPoly::new(coeffs, field)
    }

    pub fn eval(&self, a0: &FieldElem, b0: &FieldElem) -> FieldElem {
        self.eval_a(a0).eval(b0)
    }

    /// Interprets a polynomial in `a` alone.
    pub fn from_upoly_a(p: &UPoly) -> Self {
        let mut out = Self::zero(p.field());
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term((i as u32, 0), c.clone());
        }
        out
    }

    /// Splits coefficients `r + t*sqrt(s)` into the rational polynomials
    /// `(sum r, sum t)` over Q.
    pub fn split_components(&self) -> (BiPoly, BiPoly) {
        let mut re = Self::zero(Field::Rational);
        let mut im = Self::zero(Field::Rational);
        for (k, c) in &self.terms {
            re.add_term(*k, FieldElem::from_rational(c.rat_part().clone(), Field::Rational));
            im.add_term(*k, FieldElem::from_rational(c.irr_part().clone(), Field::Rational));
        }
        (re, im)
    }
}

impl Add<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-FieldElem::one(self.field))
    }
}

impl Sub<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        self + &(-rhs)
    }
}

impl Mul<&BiPoly> for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero(self.field);
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                out.add_term((a1 + a2, b1 + b2), c1 * c2);
            }
        }
        out
    }
}

/// Determinant by Gaussian elimination over the field.
pub fn determinant(mut m: Vec<Vec<FieldElem>>, field: Field) -> FieldElem {
    let n = m.len();
    let mut det = FieldElem::one(field);
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return FieldElem::zero(field);
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det = &det * &p;
        let inv = p.inverse().unwrap();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            let (top, bottom) = m.split_at_mut(r);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst = &*dst - &(&factor * src);
            }
        }
    }
    det
}

/// Sylvester resultant of `f` and `g` taken with the formal degrees
/// `df >= deg f` and `dg >= deg g`.
pub fn sylvester_resultant(f: &UPoly, df: usize, g: &UPoly, dg: usize) -> FieldElem {
    let field = f.field().join(g.field()).unwrap_or(f.field());
    let n = df + dg;
    let mut m = vec![vec![FieldElem::zero(field); n]; n];
    for r in 0..dg {
        for k in 0..=df {
            m[r][r + k] = f.coeff(df - k);
        }
    }
    for r in 0..df {
        for k in 0..=dg {
            m[dg + r][r + k] = g.coeff(dg - k);
        }
    }
    determinant(m, field)
}

/// Newton interpolation through `(k, values[k])` for `k = 0..n`.
pub fn interpolate_at_naturals(values: &[FieldElem], field: Field) -> UPoly {
    let n = values.len();
    let mut dd: Vec<FieldElem> = values.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            let denom = FieldElem::from_int(level as i64, field);
            dd[i] = (&dd[i] - &dd[i - 1]) / &denom;
        }
    }
    // Horner on the Newton basis (z - 0)(z - 1)...
    let mut acc = UPoly::zero(field);
    for i in (0..n).rev() {
        let shift = UPoly::linear_from_root(&FieldElem::from_int(i as i64, field), field);
        acc = &(&acc * &shift) + &UPoly::constant(dd[i].clone(), field);
    }
    acc
}

/// `Res_b(e1, e2)` as a polynomial in `a`.
pub fn resultant_in_b(e1: &BiPoly, e2: &BiPoly) -> UPoly {
    let field = e1.field();
    let (m1, m2) = (e1.deg_b() as usize, e2.deg_b() as usize);
    let by_degrees = m2 as u32 * e1.deg_a() + m1 as u32 * e2.deg_a();
    let bezout = e1.total_degree() * e2.total_degree();
    let bound = by_degrees.min(bezout) as i64;
    let values: Vec<FieldElem> = (0..=bound)
        .map(|k| {
            let a0 = FieldElem::from_int(k, field);
            sylvester_resultant(&e1.eval_a(&a0), m1, &e2.eval_a(&a0), m2)
        })
        .collect();
    interpolate_at_naturals(&values, field)
}

/// All solutions `(a, b)` in the coefficient field of `e1 = e2 = 0`, sorted.
///
/// Fails with [`Error::DegenerateSystem`] when the solution set is not finite.
pub fn solve_system(e1: &BiPoly, e2: &BiPoly) -> Result<Vec<(FieldElem, FieldElem)>> {
    if e1.is_zero() || e2.is_zero() {
        return Err(Error::DegenerateSystem);
    }
    if e1.deg_b() == 0 && e2.deg_b() == 0 {
        let g = e1.eval_a_as_upoly().gcd(&e2.eval_a_as_upoly());
        return if g.degree() == Some(0) {
            Ok(Vec::new())
        } else {
            Err(Error::DegenerateSystem)
        };
    }
    let res = resultant_in_b(e1, e2);
    if res.is_zero() {
        return Err(Error::DegenerateSystem);
    }
    let mut out = Vec::new();
    for a in roots_in_field(&res) {
        let u1 = e1.eval_a(&a);
        let u2 = e2.eval_a(&a);
        let g = match (u1.is_zero(), u2.is_zero()) {
            (true, true) => return Err(Error::DegenerateSystem),
            (true, false) => u2,
            (false, true) => u1,
            (false, false) => u1.gcd(&u2),
        };
        if g.degree() == Some(0) {
            continue;
        }
        for b in roots_in_field(&g) {
            if e1.eval(&a, &b).is_zero() && e2.eval(&a, &b).is_zero() {
                out.push((a.clone(), b));
            }
        }
    }
    out.sort_by(|x, y| x.0.canonical_cmp(&y.0).then_with(|| x.1.canonical_cmp(&y.1)));
    out.dedup();
    Ok(out)
}

impl BiPoly {
    /// For polynomials free of `b`: the polynomial in `a`.
    pub(crate) fn eval_a_as_upoly(&self) -> UPoly {
        let mut coeffs = vec![FieldElem::zero(self.field); self.deg_a() as usize + 1];
        for ((da, _), c) in &self.terms {
            coeffs[*da as usize] = &coeffs[*da as usize] + c;
        }
        UPoly::new(coeffs, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn int(n: i64) -> FieldElem {
        FieldElem::from_int(n, Q)
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = UPoly::from_ints(&[3, -1, 0, 2], Q);
        let values: Vec<FieldElem> = (0..6).map(|k| p.eval(&int(k))).collect();
        assert_eq!(interpolate_at_naturals(&values, Q), p);
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(z - 2, z - 5) = 2 - 5
        let f = UPoly::from_ints(&[-2, 1], Q);
        let g = UPoly::from_ints(&[-5, 1], Q);
        assert_eq!(sylvester_resultant(&f, 1, &g, 1), int(-3));
        // common root gives zero
        let h = UPoly::from_ints(&[10, -7, 1], Q);
        assert!(sylvester_resultant(&f, 1, &h, 2).is_zero());
    }

    #[test]
    fn circle_and_line() {
        // a^2 + b^2 = 25, a - b = 1  ->  (4, 3), (-3, -4)
        let a = BiPoly::var_a(Q);
        let b = BiPoly::var_b(Q);
        let e1 = &(&(&a * &a) + &(&b * &b)) - &BiPoly::constant(int(25), Q);
        let e2 = &(&a - &b) - &BiPoly::constant(int(1), Q);
        let sols = solve_system(&e1, &e2).unwrap();
        assert_eq!(sols, vec![(int(-3), int(-4)), (int(4), int(3))]);
    }

    #[test]
    fn no_rational_solutions() {
        // a^2 = 2, b = 1
        let a = BiPoly::var_a(Q);
        let b = BiPoly::var_b(Q);
        let e1 = &(&a * &a) - &BiPoly::constant(int(2), Q);
        let e2 = &b - &BiPoly::constant(int(1), Q);
        assert!(solve_system(&e1, &e2).unwrap().is_empty());
    }

    #[test]
    fn degenerate_system_detected() {
        let a = BiPoly::var_a(Q);
        let b = BiPoly::var_b(Q);
        let e = &a - &b;
        assert_eq!(solve_system(&e, &e.scale(&int(2))), Err(Error::DegenerateSystem));
    }
}
