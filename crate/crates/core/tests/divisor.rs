use logsym::algebra::Monomial;
use logsym::divisor::{is_logarithmic, saito_check, weighted_homogeneous, Divisor, Saito};
use logsym::logcalc::Arena;
use logsym::testing;
use logsym::{Chart, Poly, Scalar, VectorField};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn xyz() -> (Poly, Poly, Poly) {
    (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2))
}

fn saito_h() -> Poly {
    let (x, y, z) = xyz();
    let zm2 = &z - &Poly::constant(3, Scalar::int(2));
    &(&(&x * &y) * &(&x + &y)) * &(&(&zm2 * &x) + &y)
}

fn saito_fields() -> Vec<VectorField> {
    let (x, y, z) = xyz();
    let zero = Poly::zero(3);
    let zm2 = &z - &Poly::constant(3, Scalar::int(2));
    vec![
        VectorField::new(vec![x.clone(), y.clone(), zero.clone()]),
        VectorField::new(vec![zero.clone(), zero, &(&zm2 * &x) + &y]),
        VectorField::new(vec![&x * &x, -&(&y * &y), -&(&zm2 * &(&x + &y))]),
    ]
}

#[test]
fn saito_example() {
    let d = Divisor::general(saito_h()).unwrap();
    for f in saito_fields() {
        assert!(is_logarithmic(&f, &d).is_yes());
    }
    match saito_check(saito_fields(), &d).unwrap() {
        Saito::Free(basis) => {
            assert!(basis.verify(d.h()));
            assert_eq!(basis.certificate(), &Scalar::int(1));
        }
        other => panic!("expected a free divisor, got {other:?}"),
    }
    assert_eq!(weighted_homogeneous(d.h()), None);
}

fn log_combination(r: &mut ChaCha8Rng) -> VectorField {
    let chart = Chart::with_names(&["x", "y", "z"], &[], Arena::Polynomial).unwrap();
    let mut acc = VectorField::zero(3);
    for f in saito_fields() {
        acc = &acc + &f.scale(&testing::poly(r, &chart, 2, 1));
    }
    acc
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(60) })]

    #[test]
    fn logarithmic_fields_form_a_lie_module(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let d = Divisor::general(saito_h()).unwrap();
        let (a, b) = (log_combination(&mut r), log_combination(&mut r));
        let chart = Chart::with_names(&["x", "y", "z"], &[], Arena::Polynomial).unwrap();
        let f = testing::poly(&mut r, &chart, 3, 2);
        prop_assert!(is_logarithmic(&a.scale(&f), &d).is_yes());
        prop_assert!(is_logarithmic(&a.lie_bracket(&b), &d).is_yes());
    }

    #[test]
    fn weights_make_terms_homogeneous(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let n = 3;
        let w: Vec<i32> = (0..n).map(|_| r.gen_range(1..=4)).collect();
        let deg = r.gen_range(4..=12);
        let mut h = Poly::zero(n);
        for _ in 0..6 {
            let a = r.gen_range(0..=deg / w[0]);
            let rest = deg - a * w[0];
            if rest % w[1] != 0 && rest % w[2] != 0 {
                continue;
            }
            let b = if rest % w[2] == 0 { r.gen_range(0..=rest / w[1]) } else { rest / w[1] };
            let rem = rest - b * w[1];
            if rem % w[2] == 0 {
                h.add_term(Monomial::new(vec![a, b, rem / w[2]]), testing::rational_scalar(&mut r));
            }
        }
        prop_assume!(!h.is_zero());
        let found = weighted_homogeneous(&h).expect("h was built weighted homogeneous");
        let fw: Vec<i32> = found.weights.iter().map(|v| i32::try_from(v).unwrap()).collect();
        let fd = i32::try_from(&found.degree).unwrap();
        prop_assert!(fw.iter().all(|&v| v > 0));
        // z_i ↦ t^{w_i} z_i with a fresh variable t
        let big = h.extend_vars(1);
        let mut sub = big.clone();
        for (i, &wi) in fw.iter().enumerate() {
            let t_pow = Poly::monomial(n + 1, Monomial::var(n + 1, n, wi), Scalar::int(1));
            sub = sub.substitute(i, &(&t_pow * &Poly::var(n + 1, i))).unwrap();
        }
        prop_assert_eq!(sub, big.mul_monomial(&Monomial::var(n + 1, n, fd)));
    }
}
