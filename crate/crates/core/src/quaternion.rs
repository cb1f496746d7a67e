//! Quaternions over `Q` or `Q(sqrt s)`, polynomials over them in a central
//! variable `t`, and the map `x -> i*t`, `y -> lambda^-1 * j*t` that sends the
//! quantum plane at `q = -1` onto a subring of `H[t]` modulo `a x^2 + c y^2`.

use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::poly::{ExponentPair, QPlane, QPoly};
use crate::scalars::{squarefree_decomposition, Field, FieldElem};

/// `w + xi*i + yj*j + zk*k` with `i^2 = j^2 = k^2 = ijk = -1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quaternion {
    pub w: FieldElem,
    pub xi: FieldElem,
    pub yj: FieldElem,
    pub zk: FieldElem,
}

impl Quaternion {
    pub fn new(w: FieldElem, xi: FieldElem, yj: FieldElem, zk: FieldElem) -> Self {
        Quaternion { w, xi, yj, zk }
    }

    pub fn zero(field: Field) -> Self {
        let z = FieldElem::zero(field);
        Self::new(z.clone(), z.clone(), z.clone(), z)
    }

    pub fn scalar(c: FieldElem) -> Self {
        let z = FieldElem::zero(c.field());
        Self::new(c, z.clone(), z.clone(), z)
    }

    pub fn one(field: Field) -> Self {
        Self::scalar(FieldElem::one(field))
    }

    fn unit(field: Field, slot: usize) -> Self {
        let mut parts = [0, 1, 2, 3].map(|_| FieldElem::zero(field));
        parts[slot] = FieldElem::one(field);
        let [w, xi, yj, zk] = parts;
        Self::new(w, xi, yj, zk)
    }

    pub fn i(field: Field) -> Self {
        Self::unit(field, 1)
    }

    pub fn j(field: Field) -> Self {
        Self::unit(field, 2)
    }

    pub fn k(field: Field) -> Self {
        Self::unit(field, 3)
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.xi.is_zero() && self.yj.is_zero() && self.zk.is_zero()
    }

    pub fn scale(&self, c: &FieldElem) -> Self {
        Self::new(&self.w * c, &self.xi * c, &self.yj * c, &self.zk * c)
    }
}

impl Add<&Quaternion> for &Quaternion {
    type Output = Quaternion;
    fn add(self, r: &Quaternion) -> Quaternion {
        Quaternion::new(&self.w + &r.w, &self.xi + &r.xi, &self.yj + &r.yj, &self.zk + &r.zk)
    }
}

impl Sub<&Quaternion> for &Quaternion {
    type Output = Quaternion;
    fn sub(self, r: &Quaternion) -> Quaternion {
        Quaternion::new(&self.w - &r.w, &self.xi - &r.xi, &self.yj - &r.yj, &self.zk - &r.zk)
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.w, -&self.xi, -&self.yj, -&self.zk)
    }
}

impl Mul<&Quaternion> for &Quaternion {
    type Output = Quaternion;
    fn mul(self, r: &Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (&self.w, &self.xi, &self.yj, &self.zk);
        let (a2, b2, c2, d2) = (&r.w, &r.xi, &r.yj, &r.zk);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

/// Polynomial in a central variable `t`; `coeffs[n]` multiplies `t^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionPoly {
    field: Field,
    coeffs: Vec<Quaternion>,
}

impl QuaternionPoly {
    pub fn new(coeffs: Vec<Quaternion>, field: Field) -> Self {
        let mut p = QuaternionPoly { field, coeffs };
        while p.coeffs.last().is_some_and(Quaternion::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    pub fn zero(field: Field) -> Self {
        Self::new(Vec::new(), field)
    }

    /// `c * t^n`.
    pub fn term(c: Quaternion, n: usize, field: Field) -> Self {
        let mut coeffs = vec![Quaternion::zero(field); n];
        coeffs.push(c);
        Self::new(coeffs, field)
    }

    pub fn coeffs(&self) -> &[Quaternion] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl Add<&QuaternionPoly> for &QuaternionPoly {
    type Output = QuaternionPoly;
    fn add(self, r: &QuaternionPoly) -> QuaternionPoly {
        let n = self.coeffs.len().max(r.coeffs.len());
        let zero = Quaternion::zero(self.field);
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + r.coeffs.get(i).unwrap_or(&zero))
            .collect();
        QuaternionPoly::new(coeffs, self.field)
    }
}

impl Mul<&QuaternionPoly> for &QuaternionPoly {
    type Output = QuaternionPoly;
    fn mul(self, r: &QuaternionPoly) -> QuaternionPoly {
        if self.is_zero() || r.is_zero() {
            return QuaternionPoly::zero(self.field);
        }
        let mut out = vec![Quaternion::zero(self.field); self.coeffs.len() + r.coeffs.len() - 1];
        for (a, ca) in self.coeffs.iter().enumerate() {
            for (b, cb) in r.coeffs.iter().enumerate() {
                out[a + b] = &out[a + b] + &(ca * cb);
            }
        }
        QuaternionPoly::new(out, self.field)
    }
}

/// The map `x -> i*t`, `y -> lambda^-1 * j*t` on the quantum plane at
/// `q = -1`, extended linearly over monomials.
#[derive(Clone, Debug)]
pub struct QuaternionMap {
    field: Field,
    image_x: Quaternion,
    image_y: Quaternion,
}

impl QuaternionMap {
    pub fn new(lambda: &FieldElem) -> Result<Self> {
        let field = lambda.field();
        let inv = lambda.inverse()?;
        Ok(QuaternionMap {
            field,
            image_x: Quaternion::i(field),
            image_y: Quaternion::j(field).scale(&inv),
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn apply(&self, f: &QPoly) -> Result<QuaternionPoly> {
        let mut out = QuaternionPoly::zero(self.field);
        for (e, c) in f.terms() {
            let c = c.embed(self.field)?;
            let mut q = Quaternion::scalar(c);
            for _ in 0..e.x {
                q = &q * &self.image_x;
            }
            for _ in 0..e.y {
                q = &q * &self.image_y;
            }
            out = &out + &QuaternionPoly::term(q, e.total() as usize, self.field);
        }
        Ok(out)
    }
}

/// `lambda` with `lambda^2 = -c/a`, in the field of `a` and `c` when possible,
/// else in `Q(sqrt s)` for the squarefree part `s` of `-c/a`.
pub fn quaternion_lambda(a: &FieldElem, c: &FieldElem) -> Result<FieldElem> {
    let ratio = -(c.checked_div(a)?);
    if ratio.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if let Some(root) = ratio.sqrt() {
        return Ok(root);
    }
    let r = match (ratio.field(), ratio.as_rational()) {
        (Field::Rational, Some(r)) => r,
        _ => return Err(Error::RootNotRepresentable),
    };
    let (s, m) = squarefree_decomposition(r).ok_or(Error::RootNotRepresentable)?;
    let field = Field::quadratic(s)?;
    let root_s = FieldElem::sqrt_radicand(field).expect("quadratic field");
    Ok(FieldElem::from_rational(m, field) * root_s)
}

pub const ORACLE_SEED: u64 = 0x5eed_0001;
pub const ORACLE_PAIRS: usize = 50;

fn random_poly(plane: &QPlane, rng: &mut ChaCha8Rng) -> QPoly {
    let n = rng.gen_range(1..=5);
    let terms: Vec<(u32, u32, i64)> = (0..n)
        .map(|_| (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(-4..=4)))
        .collect();
    plane.from_int_terms(&terms)
}

/// Multiplicativity of the map on seeded random pairs at `q = -1`, and
/// vanishing on `a x^2 + c y^2`.
pub fn quaternion_oracle_seeded(a: &FieldElem, c: &FieldElem, seed: u64, pairs: usize) -> Result<bool> {
    let lambda = quaternion_lambda(a, c)?;
    let field = lambda.field();
    let map = QuaternionMap::new(&lambda)?;
    let plane = QPlane::new(FieldElem::from_int(-1, field), field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let f = random_poly(&plane, &mut rng);
        let g = random_poly(&plane, &mut rng);
        if map.apply(&(&f * &g))? != &map.apply(&f)? * &map.apply(&g)? {
            return Ok(false);
        }
    }
    let form = plane.from_terms([
        (ExponentPair::new(2, 0), a.embed(field)?),
        (ExponentPair::new(0, 2), c.embed(field)?),
    ])?;
    Ok(map.apply(&form)?.is_zero())
}

pub fn quaternion_oracle(a: &FieldElem, c: &FieldElem) -> Result<bool> {
    quaternion_oracle_seeded(a, c, ORACLE_SEED, ORACLE_PAIRS)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    #[test]
    fn basis_relations() {
        let (one, i, j, k) = (Quaternion::one(Q), Quaternion::i(Q), Quaternion::j(Q), Quaternion::k(Q));
        let minus_one = -&one;
        for u in [&i, &j, &k] {
            assert_eq!(u * u, minus_one);
        }
        assert_eq!(&i * &j, k);
        for (u, v) in [(&i, &j), (&j, &k), (&i, &k)] {
            assert_eq!(u * v, -&(v * u));
        }
    }

    #[test]
    fn generators_anticommute() {
        let map = QuaternionMap::new(&FieldElem::from_int(3, Q)).unwrap();
        let pl = QPlane::rational(-1, 1, Q).unwrap();
        let (x, y) = (map.apply(&pl.x()).unwrap(), map.apply(&pl.y()).unwrap());
        let yx = &y * &x;
        let xy = &x * &y;
        assert_eq!(&yx + &xy, QuaternionPoly::zero(Q));
    }

    #[test]
    fn oracle_examples() {
        let int = |n| FieldElem::from_int(n, Q);
        assert!(quaternion_oracle(&int(1), &int(-1)).unwrap());
        assert!(quaternion_oracle(&int(1), &int(-4)).unwrap());
        // lambda = sqrt(2) needs the extension
        assert_eq!(quaternion_lambda(&int(1), &int(-2)).unwrap().field(), Field::Quadratic(2));
        assert!(quaternion_oracle(&int(1), &int(-2)).unwrap());
        // -c/a = -1 also works, over Q(sqrt -1)
        assert!(quaternion_oracle(&int(1), &int(1)).unwrap());
    }

    #[test]
    fn root_outside_supported_fields() {
        let f = Field::Quadratic(2);
        let a = FieldElem::one(f);
        let c = FieldElem::from_int(-3, f);
        assert_eq!(quaternion_lambda(&a, &c), Err(Error::RootNotRepresentable));
    }
}
