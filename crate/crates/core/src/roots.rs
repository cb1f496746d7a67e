//! Exact root finding for univariate polynomials over Q and Q(sqrt s).
//!
//! Rational roots come from p-adic lifting: after passing to a primitive
//! squarefree integer polynomial `S` with leading coefficient `l`, each simple
//! root modulo a good prime `p` is Newton-lifted until `p^k > 2*|l|*B` (with
//! `B` a Cauchy bound), and `l*r mod p^k` in the symmetric range is the only
//! possible numerator of a rational root over `l`. Every candidate is checked
//! by exact evaluation, so the result does not depend on the choice of prime.
//!
//! Roots in a quadratic field use the same lifting through both embeddings of
//! `Q(sqrt s)` into the `p`-adic numbers at a prime where `s` splits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalars::{Field, FieldElem};
use crate::upoly::UPoly;

/// Primitive integer polynomial proportional to `p` (rational coefficients).
fn primitive_integer(p: &UPoly) -> Vec<BigInt> {
    let denom_lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.rat_part().denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c.rat_part() * BigRational::from_integer(denom_lcm.clone())).to_integer())
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.into_iter().map(|c| sign.clone() * c / &content).collect()
}

fn eval_mod(coeffs: &[BigInt], r: &BigInt, m: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| (acc * r + c).mod_floor(m))
}

fn derivative_int(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

// -- arithmetic over F_p with small p --

fn reduce_mod_p(coeffs: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut out: Vec<u64> = coeffs
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn inv_mod_p(a: u64, p: u64) -> u64 {
    // Fermat; p is prime
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn rem_mod_p(mut a: Vec<u64>, b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let inv = inv_mod_p(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top] * inv % p;
        let shift = top - db;
        for (i, bc) in b.iter().enumerate() {
            a[shift + i] = (a[shift + i] + p - c * bc % p) % p;
        }
        while a.last() == Some(&0) {
            a.pop();
        }
    }
    a
}

fn is_squarefree_mod_p(coeffs: &[u64], p: u64) -> bool {
    let deriv: Vec<u64> = {
        let mut d: Vec<u64> = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| (i as u64 % p) * c % p)
            .collect();
        while d.last() == Some(&0) {
            d.pop();
        }
        d
    };
    if deriv.is_empty() {
        return false;
    }
    let (mut a, mut b) = (coeffs.to_vec(), deriv);
    while !b.is_empty() {
        let r = rem_mod_p(a, &b, p);
        a = b;
        b = r;
    }
    a.len() == 1
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Distinct rational roots of a nonzero polynomial with rational
/// coefficients, in increasing order.
pub fn rational_roots(p: &UPoly) -> Vec<BigRational> {
    assert!(p.is_rational(), "rational_roots needs rational coefficients");
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    // strip the factor z^m
    let low = p.coeffs().iter().position(|c| !c.is_zero()).unwrap();
    if low > 0 {
        roots.push(BigRational::zero());
    }
    let shifted = UPoly::new(p.coeffs()[low..].to_vec(), p.field());
    if shifted.degree().unwrap_or(0) > 0 {
        let squarefree = shifted.div_rem(&shifted.gcd(&shifted.derivative())).0;
        roots.extend(rational_roots_squarefree(&primitive_integer(&squarefree)));
    }
    roots.sort();
    roots.dedup();
    roots
}

fn rational_roots_squarefree(s: &[BigInt]) -> Vec<BigRational> {
    let d = s.len() - 1;
    let lc = s[d].clone();
    if d == 1 {
        return vec![BigRational::new(-s[0].clone(), lc)];
    }
    // Cauchy bound: every root has |z| <= 1 + max |s_i / lc|
    let max_ratio = s[..d]
        .iter()
        .map(|c| BigRational::new(c.abs(), lc.abs()))
        .max()
        .unwrap();
    let bound = max_ratio.ceil().to_integer() + 1;
    let target = BigInt::from(2) * lc.abs() * bound + 1;

    let prime = (3u64..)
        .filter(|&p| is_prime(p))
        .find(|&p| {
            let pb = BigInt::from(p);
            !(&lc % &pb).is_zero() && is_squarefree_mod_p(&reduce_mod_p(s, p), p)
        })
        .expect("a squarefree polynomial is squarefree modulo all but finitely many primes");

    let reduced = reduce_mod_p(s, prime);
    let deriv = derivative_int(s);
    let mut out = Vec::new();
    for r0 in 0..prime {
        let val = reduced
            .iter()
            .rev()
            .fold(0u64, |acc, c| (acc * r0 + c) % prime);
        if val != 0 {
            continue;
        }
        // Newton lifting, doubling the precision each step
        let mut modulus = BigInt::from(prime);
        let mut r = BigInt::from(r0);
        while modulus < target {
            modulus = &modulus * &modulus;
            let fv = eval_mod(s, &r, &modulus);
            let dv = eval_mod(&deriv, &r, &modulus);
            let inv = mod_inverse(&dv, &modulus).expect("simple root stays invertible");
            r = (r - fv * inv).mod_floor(&modulus);
        }
        let mut numer = (&lc * &r).mod_floor(&modulus);
        if &numer * 2 > modulus {
            numer -= &modulus;
        }
        let cand = BigRational::new(numer, lc.clone());
        let value = s.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * &cand + BigRational::from_integer(c.clone())
        });
        if value.is_zero() {
            out.push(cand);
        }
    }
    out
}

/// Distinct roots of `p` lying in its coefficient field, sorted by
/// [`FieldElem::canonical_cmp`].
pub fn roots_in_field(p: &UPoly) -> Vec<FieldElem> {
    let field = p.field();
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    let mut roots = match field {
        Field::Rational => rational_roots(p)
            .into_iter()
            .map(|r| FieldElem::from_rational(r, field))
            .collect(),
        Field::Quadratic(_) if deg <= 2 => roots_up_to_quadratic(p),
        Field::Quadratic(_) => {
            let squarefree = p.div_rem(&p.gcd(&p.derivative())).0;
            if squarefree.degree() <= Some(2) {
                roots_up_to_quadratic(&squarefree)
            } else {
                quadratic_field_roots_padic(&squarefree)
            }
        }
    };
    roots.sort_by(|a, b| a.canonical_cmp(b));
    roots.dedup();
    roots
}

fn roots_up_to_quadratic(p: &UPoly) -> Vec<FieldElem> {
    let field = p.field();
    match p.degree() {
        Some(1) => vec![-(p.coeff(0) / p.coeff(1))],
        Some(2) => {
            let (a, b, c) = (p.coeff(2), p.coeff(1), p.coeff(0));
            let disc = &b * &b - FieldElem::from_int(4, field) * &a * &c;
            match disc.sqrt() {
                None => Vec::new(),
                Some(d) => {
                    let two_a = FieldElem::from_int(2, field) * &a;
                    vec![(-&b + &d) / &two_a, (-&b - &d) / &two_a]
                }
            }
        }
        _ => Vec::new(),
    }
}

/// Integer components `(a_i, b_i)` of a polynomial over `Q(sqrt s)` scaled
/// so that every coefficient is `a_i + b_i*sqrt(s)` with `a_i, b_i` integers.
fn integral_components(p: &UPoly) -> Vec<(BigInt, BigInt)> {
    let denom_lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| {
        acc.lcm(c.rat_part().denom()).lcm(c.irr_part().denom())
    });
    let scale = BigRational::from_integer(denom_lcm);
    p.coeffs()
        .iter()
        .map(|c| {
            (
                (c.rat_part() * &scale).to_integer(),
                (c.irr_part() * &scale).to_integer(),
            )
        })
        .collect()
}

fn modular_sqrt_small(s: &BigInt, p: u64) -> Option<u64> {
    let target = s.mod_floor(&BigInt::from(p)).to_u64().unwrap();
    (1..p).find(|t| t * t % p == target)
}

/// Roots of degree >= 3 polynomials over `Q(sqrt s)`.
///
/// A prime `p` in which `s` is a nonzero square gives two embeddings
/// `sqrt(s) -> +-t` into the `p`-adic integers. Roots of both images are
/// lifted, and each pair `(r1, r2)` yields `u = (r1 + r2)/2` and
/// `v = (r1 - r2)/(2t)`. Because `2*N(lc)*alpha` lies in `Z[sqrt s]` for every
/// root `alpha`, the numerators of `u` and `v` over `2*|N(lc)|` are recovered
/// from symmetric residues once the modulus exceeds twice their bound.
fn quadratic_field_roots_padic(p: &UPoly) -> Vec<FieldElem> {
    let field = p.field();
    let s = BigInt::from(field.radicand().expect("quadratic field"));
    let comps = integral_components(p);
    let d = comps.len() - 1;
    let (la, lb) = comps[d].clone();
    let norm = &la * &la - &s * &lb * &lb;
    assert!(!norm.is_zero(), "nonzero leading coefficient has nonzero norm");

    let r = s.abs().sqrt() + 1;
    let size = |a: &BigInt, b: &BigInt| a.abs() + b.abs() * &r;
    let lead_size = size(&la, &lb);
    let max_size = comps[..d].iter().map(|(a, b)| size(a, b)).max().unwrap();
    let bound = BigRational::new(max_size * lead_size, norm.abs()).ceil().to_integer() + 1;
    let denom = BigInt::from(2) * norm.abs();
    let target = BigInt::from(2) * &denom * bound + 1;

    let image = |t: &BigInt, m: &BigInt| -> Vec<BigInt> {
        comps.iter().map(|(a, b)| (a + b * t).mod_floor(m)).collect()
    };

    let (prime, t0) = (3u64..)
        .filter(|&q| is_prime(q))
        .filter(|&q| !(&denom * &s % q).is_zero())
        .find_map(|q| {
            let t = modular_sqrt_small(&s, q)?;
            let qb = BigInt::from(q);
            let ok = [BigInt::from(t), BigInt::from(q - t)].iter().all(|tt| {
                let img = reduce_mod_p(&image(tt, &qb), q);
                img.len() == d + 1 && is_squarefree_mod_p(&img, q)
            });
            ok.then_some((q, t))
        })
        .expect("a squarefree polynomial stays squarefree at almost every split prime");

    // moduli p, p^2, p^4, ... up to the target
    let mut moduli = vec![BigInt::from(prime)];
    while moduli.last().unwrap() < &target {
        let m = moduli.last().unwrap();
        moduli.push(m * m);
    }
    let modulus = moduli.last().unwrap().clone();

    let mut t = BigInt::from(t0);
    for m in &moduli[1..] {
        let inv = mod_inverse(&(&t * 2), m).expect("p is odd and coprime to s");
        t = (&t - (&t * &t - &s) * inv).mod_floor(m);
    }

    let lift_roots = |coeffs: &[BigInt]| -> Vec<BigInt> {
        let deriv = derivative_int(coeffs);
        let small = reduce_mod_p(coeffs, prime);
        (0..prime)
            .filter(|&r0| small.iter().rev().fold(0u64, |acc, c| (acc * r0 + c) % prime) == 0)
            .map(|r0| {
                let mut r = BigInt::from(r0);
                for m in &moduli[1..] {
                    let fv = eval_mod(coeffs, &r, m);
                    let dv = eval_mod(&deriv, &r, m);
                    let inv = mod_inverse(&dv, m).expect("simple root stays invertible");
                    r = (r - fv * inv).mod_floor(m);
                }
                r
            })
            .collect()
    };
    let first = lift_roots(&image(&t, &modulus));
    let second = lift_roots(&image(&-&t, &modulus));

    let symmetric = |v: BigInt| {
        let v = v.mod_floor(&modulus);
        if &v * 2 > modulus {
            v - &modulus
        } else {
            v
        }
    };
    let inv_two = mod_inverse(&BigInt::from(2), &modulus).unwrap();
    let inv_two_t = mod_inverse(&(&t * 2), &modulus).unwrap();
    let root_s = FieldElem::sqrt_radicand(field).unwrap();
    let mut out = Vec::new();
    for r1 in &first {
        for r2 in &second {
            let u = symmetric(&denom * (r1 + r2) * &inv_two);
            let v = symmetric(&denom * (r1 - r2) * &inv_two_t);
            let cand = FieldElem::from_rational(BigRational::new(u, denom.clone()), field)
                + &root_s * FieldElem::from_rational(BigRational::new(v, denom.clone()), field);
            if p.eval(&cand).is_zero() {
                out.push(cand);
            }
        }
    }
    out
}
