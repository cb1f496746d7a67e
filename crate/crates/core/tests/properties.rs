use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use qplane::division::{degree_in, divides, divmod, Direction, Side};
use qplane::factor::{factor_homogeneous, is_irreducible, HomogeneousFactorization, Irreducibility};
use qplane::parse::{parse_poly, OutputMode, SessionConfig};
use qplane::primality::{classify_prime, scale_test, verify_nonprime_witness, PrimeVerdict, ReasonKind};
use qplane::{ExponentPair, Field, FieldElem, QPlane, QPoly};

const QS: [(i64, i64); 5] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (3, 2)];

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn elem(a: i64, b: i64, d: i64, field: Field) -> FieldElem {
    let irr = if field == Field::Rational { rat(0, 1) } else { rat(b, d) };
    FieldElem::new(rat(a, d), irr, field).unwrap()
}

fn fields() -> impl Strategy<Value = Field> {
    prop::sample::select(vec![Field::Rational, Field::Quadratic(2), Field::Quadratic(-3)])
}

fn scalar_in(field: Field) -> impl Strategy<Value = FieldElem> {
    (-9i64..=9, -9i64..=9, 1i64..=6).prop_map(move |(a, b, d)| elem(a, b, d, field))
}

fn plane() -> impl Strategy<Value = QPlane> {
    (prop::sample::select(QS.to_vec()), prop::sample::select(vec![Field::Rational, Field::Quadratic(2)]))
        .prop_map(|((n, d), field)| QPlane::rational(n, d, field).unwrap())
}

fn poly_in(pl: QPlane, max_terms: usize, max_exp: u32) -> impl Strategy<Value = QPoly> {
    prop::collection::vec((0..=max_exp, 0..=max_exp, -5i64..=5, -2i64..=2), 0..=max_terms).prop_map(move |terms| {
        let field = pl.field();
        pl.from_terms(
            terms
                .into_iter()
                .map(|(i, j, a, b)| (ExponentPair::new(i, j), elem(a, b, 1, field))),
        )
        .unwrap()
    })
}

fn plane_and_polys(n: usize) -> impl Strategy<Value = (QPlane, Vec<QPoly>)> {
    plane().prop_flat_map(move |pl| {
        let polys = prop::collection::vec(poly_in(pl.clone(), 8, 6), n);
        (Just(pl), polys)
    })
}

fn homogeneous_in(pl: QPlane, degree: u32) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-4i64..=4, (degree + 1) as usize).prop_map(move |cs| {
        let terms: Vec<(u32, u32, i64)> = cs.iter().enumerate().map(|(j, &c)| (degree - j as u32, j as u32, c)).collect();
        pl.from_int_terms(&terms)
    })
}

/// `lambda * t^m + (terms of lower degree in t)` for the variable `t` of `dir`.
fn admissible_in(pl: QPlane, dir: Direction) -> impl Strategy<Value = QPoly> {
    (1u32..=3, 1i64..=5, prop::collection::vec((0u32..3, 0u32..=4, -4i64..=4), 0..4)).prop_map(
        move |(m, lambda, rest)| {
            let mut terms: Vec<(u32, u32, i64)> = rest.into_iter().map(|(a, b, c)| (a.min(m - 1), b, c)).collect();
            terms.push((m, 0, lambda));
            if dir == Direction::Y {
                terms = terms.into_iter().map(|(a, b, c)| (b, a, c)).collect();
            }
            pl.from_int_terms(&terms)
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn field_axioms(
        (a, b, c) in fields().prop_flat_map(|f| (scalar_in(f), scalar_in(f), scalar_in(f)))
    ) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn rational_square_roots_are_exhaustive(n in -300i64..=300, d in 1i64..=300) {
        let e = FieldElem::from_ratio(n, d, Field::Rational).unwrap();
        match e.sqrt() {
            Some(r) => prop_assert_eq!(&r * &r, e),
            None => {
                for a in 0..=300i64 {
                    for b in 1..=300i64 {
                        prop_assert_ne!(a * a * d, n * b * b);
                    }
                }
            }
        }
    }

    #[test]
    fn quadratic_square_roots_square_back(field in fields(), a in -9i64..=9, b in -9i64..=9, d in 1i64..=5) {
        let e = elem(a, b, d, field);
        let sq = &e * &e;
        let r = sq.sqrt().expect("a square has a root");
        prop_assert_eq!(&r * &r, sq);
    }

    #[test]
    fn root_of_unity_order_is_minimal(field in fields(), a in -3i64..=3, b in -3i64..=3, d in 1i64..=2) {
        let q = elem(a, b, d, field);
        prop_assume!(!q.is_zero());
        if let Some(n) = q.root_of_unity_order().unwrap() {
            prop_assert!(q.pow(i64::from(n)).unwrap().is_one());
            for m in 1..n {
                prop_assert!(!q.pow(i64::from(m)).unwrap().is_one());
            }
        }
    }

    #[test]
    fn commutation_relation(pl in plane()) {
        prop_assert_eq!(&pl.y() * &pl.x(), (&pl.x() * &pl.y()).scalar_mul(pl.q()).unwrap());
    }

    #[test]
    fn ring_axioms((_pl, ps) in plane_and_polys(3)) {
        let (f, g, h) = (&ps[0], &ps[1], &ps[2]);
        prop_assert_eq!(&(f * g) * h, f * &(g * h));
        prop_assert_eq!(f * &(g + h), &(f * g) + &(f * h));
        prop_assert_eq!(&(f + g) * h, &(f * h) + &(g * h));
    }

    #[test]
    fn degree_is_additive((_pl, ps) in plane_and_polys(2)) {
        let (f, g) = (&ps[0], &ps[1]);
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!((f * g).strict_degree().unwrap(), f.strict_degree().unwrap() + g.strict_degree().unwrap());
    }

    #[test]
    fn homogeneous_products_stay_homogeneous(
        (f, g) in plane().prop_flat_map(|pl| (homogeneous_in(pl.clone(), 2), homogeneous_in(pl, 3)))
    ) {
        prop_assert!((&f * &g).is_homogeneous());
    }

    #[test]
    fn inhomogeneous_factor_gives_inhomogeneous_product((_pl, ps) in plane_and_polys(2)) {
        let (f, g) = (&ps[0], &ps[1]);
        prop_assume!(!f.is_zero() && !g.is_zero());
        if (f * g).is_homogeneous() {
            prop_assert!(f.is_homogeneous() && g.is_homogeneous());
        }
    }

    #[test]
    fn central_elements_commute((pl, ps) in plane_and_polys(1), pick in prop::collection::vec((0u32..=4, 0u32..=4, -3i64..=3), 1..4)) {
        let g = &ps[0];
        let order = pl.q().root_of_unity_order().unwrap().unwrap_or(0);
        let step = order.max(1);
        let f = pl.from_int_terms(
            &pick.iter().map(|&(i, j, c)| if order == 0 { (0, 0, c) } else { (i * step, j * step, c) }).collect::<Vec<_>>(),
        );
        prop_assert!(f.is_central());
        prop_assert_eq!(&f * g, g * &f);
    }

    #[test]
    fn divmod_reconstructs(
        (f, g, dir) in (plane(), prop::sample::select(vec![Direction::X, Direction::Y]))
            .prop_flat_map(|(pl, dir)| (poly_in(pl.clone(), 8, 6), admissible_in(pl, dir), Just(dir)))
    ) {
        for side in [Side::Right, Side::Left] {
            let r = divmod(&f, &g, side, dir).unwrap();
            let back = match side {
                Side::Right => &(&r.quotient * &g) + &r.remainder,
                Side::Left => &(&g * &r.quotient) + &r.remainder,
            };
            prop_assert_eq!(&back, &f);
            if let Some(d) = degree_in(&r.remainder, dir) {
                prop_assert!(d < degree_in(&g, dir).unwrap());
            }
        }
    }

    #[test]
    fn multiply_then_divide(
        (s, g) in plane().prop_flat_map(|pl| (poly_in(pl.clone(), 6, 4), admissible_in(pl, Direction::X)))
    ) {
        let r = divmod(&(&s * &g), &g, Side::Right, Direction::X).unwrap();
        prop_assert!(r.remainder.is_zero());
        prop_assert_eq!(r.quotient, s);
    }

    #[test]
    fn divisibility_ignores_scalars(
        (f, g, c, k) in plane().prop_flat_map(|pl| {
            let field = pl.field();
            (poly_in(pl.clone(), 6, 4), admissible_in(pl, Direction::X), scalar_in(field), scalar_in(field))
        })
    ) {
        prop_assume!(!c.is_zero() && !k.is_zero());
        let base = divides(&g, &f).unwrap();
        prop_assert_eq!(divides(&g.scalar_mul(&c).unwrap(), &f.scalar_mul(&k).unwrap()).unwrap(), base);
        prop_assert!(divides(&g, &(&f * &g)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn homogeneous_factors_are_sound_and_irreducible(
        f in plane().prop_flat_map(|pl| (2u32..=4).prop_flat_map(move |n| homogeneous_in(pl.clone(), n)))
    ) {
        prop_assume!(!f.is_zero());
        match factor_homogeneous(&f, 4).unwrap() {
            HomogeneousFactorization::Factored(w) => {
                prop_assert_eq!(&w.product(f.plane()), &f);
                for p in &w.factors {
                    prop_assert_eq!(is_irreducible(p).unwrap(), Irreducibility::Irreducible);
                }
            }
            HomogeneousFactorization::Irreducible => {}
            HomogeneousFactorization::Partial { .. } => prop_assert!(false, "degree within cap"),
        }
    }

    #[test]
    fn prime_verdicts_are_sound(
        p in (prop::sample::select(QS.to_vec()), prop::collection::vec((0u32..=4, 0u32..=4, -3i64..=3), 1..4))
            .prop_map(|((n, d), terms)| QPlane::rational(n, d, Field::Rational).unwrap().from_int_terms(&terms))
    ) {
        prop_assume!(!p.is_constant());
        match classify_prime(&p).unwrap() {
            PrimeVerdict::Prime { .. } => {
                prop_assert!(scale_test(&p).unwrap());
                let reducible = matches!(is_irreducible(&p).unwrap(), Irreducibility::Reducible { .. });
                prop_assert!(!reducible);
            }
            PrimeVerdict::NotPrime { reason: ReasonKind::ExplicitWitness { f, g } } => {
                prop_assert!(verify_nonprime_witness(&p, &f, &g).unwrap());
            }
            PrimeVerdict::NotPrime { reason: ReasonKind::Reducible(w) } => {
                prop_assert_eq!(w.product(p.plane()), p);
            }
            _ => {}
        }
    }

    #[test]
    fn non_central_is_never_prime_at_minus_one(terms in prop::collection::vec((0u32..=4, 0u32..=4, -3i64..=3), 1..5)) {
        let pl = QPlane::rational(-1, 1, Field::Rational).unwrap();
        let p = pl.from_int_terms(&terms);
        prop_assume!(!p.is_constant() && !p.is_central());
        // x and y generate completely prime ideals for every q
        prop_assume!(!(p.is_monomial() && p.strict_degree().unwrap() == 1));
        prop_assert!(!classify_prime(&p).unwrap().is_prime());
    }
}

#[test]
fn juxtaposition_matches_explicit_product() {
    let config = SessionConfig::new(FieldElem::from_int(3, Field::Quadratic(2)), Field::Quadratic(2), OutputMode::Text).unwrap();
    let pairs = [
        ("2x", "2*x"),
        ("x y", "x*y"),
        ("y x", "y*x"),
        ("2x y", "2*x*y"),
        ("3(x+y)(x-y)", "3*(x+y)*(x-y)"),
        ("x^2 y^3 x", "x^2*y^3*x"),
        ("sqrt(2)x y", "sqrt(2)*x*y"),
        ("(x+1)(y+1) - y x", "(x+1)*(y+1) - y*x"),
        ("-2y x^2", "-2*y*x^2"),
    ];
    for (short, long) in pairs {
        assert_eq!(parse_poly(short, &config).unwrap(), parse_poly(long, &config).unwrap(), "{short}");
    }
}
