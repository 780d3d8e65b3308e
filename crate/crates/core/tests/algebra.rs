use logsym::algebra::{divides, gcd_mv, solve_linear, Divides, Monomial};
use logsym::testing;
use logsym::{Poly, RatFn, Scalar};
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(r: &mut ChaCha8Rng) -> Poly {
    testing::rational_poly(r, 3, 4, 2)
}

fn point(r: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..3).map(|_| Scalar::ratio(r.gen_range(-9..=9), r.gen_range(1..=5))).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(1000) })]

    #[test]
    fn ring_axioms(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = 3;
        let (a, b, c) = (small(&mut r), small(&mut r), testing::poly(&mut r, &testing::charts()[2], 3, 1));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(n), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(200) })]

    #[test]
    fn divides_matches_construction(seed in any::<u64>(), exact in any::<bool>()) {
        let mut r = rng(seed);
        let h = testing::rational_poly(&mut r, 3, 3, 2);
        prop_assume!(h.total_degree() > 0);
        let q = testing::rational_poly(&mut r, 3, 3, 2);
        let mut f = &h * &q;
        if !exact {
            // a nonzero remainder of lower degree keeps f outside (h)
            let d = (h.total_degree() - 1).max(0) as i32;
            let m = Monomial::new(vec![d.min(1), 0, 0]);
            let rem = Poly::monomial(3, m, Scalar::int(r.gen_range(1..=5)));
            prop_assume!(rem.total_degree() < h.total_degree());
            f = &f + &rem;
        }
        match divides(&h, &f) {
            Divides::Yes(quot) => {
                prop_assert!(exact);
                for _ in 0..50 {
                    let p = point(&mut r);
                    let (fv, hv, qv) = (f.eval(&p).unwrap(), h.eval(&p).unwrap(), quot.eval(&p).unwrap());
                    prop_assert_eq!(fv, hv * qv);
                }
            }
            Divides::No => prop_assert!(!exact),
        }
    }

    #[test]
    fn gcd_properties(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (p, q) = (testing::rational_poly(&mut r, 3, 3, 2), testing::rational_poly(&mut r, 3, 3, 2));
        let s = testing::rational_poly(&mut r, 3, 2, 1);
        prop_assume!(!s.is_zero());
        let g = gcd_mv(&p, &q);
        prop_assert!(p.exact_div(&g).is_some());
        prop_assert!(q.exact_div(&g).is_some());
        let lhs = gcd_mv(&(&p * &s), &(&q * &s));
        let ratio = lhs.exact_div(&(&s * &g)).expect("r·gcd divides gcd(p·r, q·r)");
        prop_assert!(ratio.is_constant() && !ratio.is_zero());
    }

    #[test]
    fn scalar_laws(seed in any::<u64>(), a in -5i32..5, b in -5i32..5) {
        let mut r = rng(seed);
        prop_assert_eq!(Scalar::t_pow(a) * Scalar::t_pow(b), Scalar::t_pow(a + b));
        let z = Scalar::gauss(num_complex::Complex::new(
            num_rational::BigRational::new(r.gen_range(-9..=9).into(), r.gen_range(1..=4).into()),
            num_rational::BigRational::new(r.gen_range(-9..=9).into(), r.gen_range(1..=4).into()),
        ));
        let norm = z.clone() * z.conj();
        prop_assert!(norm.terms().all(|(k, c)| k == 0 && c.im.is_zero()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(60) })]

    #[test]
    fn linear_solve_residual(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let a: Vec<Vec<RatFn>> = (0..n)
            .map(|_| (0..n).map(|_| RatFn::from_poly(testing::rational_poly(&mut r, 2, 2, 1))).collect())
            .collect();
        let b: Vec<RatFn> = (0..n).map(|_| RatFn::from_poly(testing::rational_poly(&mut r, 2, 2, 1))).collect();
        if let Ok(x) = solve_linear(&a, &b) {
            for (row, bi) in a.iter().zip(&b) {
                let mut acc = RatFn::zero(2);
                for (aij, xj) in row.iter().zip(&x) {
                    acc = &acc + &(aij * xj);
                }
                prop_assert!((&acc - bi).is_zero());
            }
        }
    }
}

#[test]
fn scalar_unit_behaviour() {
    let t = Scalar::t_pow(1);
    assert!(t.try_inverse().is_ok());
    assert!((Scalar::one() + t).try_inverse().is_err());
    assert_eq!(Scalar::t_pow(2).to_string(), "T^2");
}
