use eulersum::exact::int;
use eulersum::oracle::{compute_ln2, compute_pi, tail_bracket};
use eulersum::{
    engine_weights, Case, CoefficientCache, Engine, FnTerm, Order, PowerTerm, Rational,
    TailSumRequest, TailSumResult, TermFamily,
};
use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;

fn tail(term: &PowerTerm, x: u64, case: Case, k: usize) -> TailSumResult<Rational> {
    Engine::new()
        .tail_sum(&TailSumRequest::new(term, x, case, Order::Fixed(k)))
        .unwrap()
}

#[test]
fn alternating_weights_equal_scaled_same_sign_weights() {
    let weights = engine_weights(8);
    for n in 1..5u32 {
        let term = PowerTerm::new(n).unwrap();
        for x in 1..12u64 {
            let xr = int(x as i64);
            for k in 1..=8usize {
                let res = tail(&term, x, Case::Alternating, k);
                let mut via_coth: Rational = term.value(&xr).unwrap() / int(2);
                for j in 1..=k {
                    let scale = Rational::from_integer((BigInt::one() << (2 * j)) - 1);
                    let d: Rational = term.derivative((2 * j - 1) as u32, &xr).unwrap();
                    via_coth += scale * weights.case1(j).unwrap() * d;
                }
                assert_eq!(res.value, via_coth, "n={n} x={x} k={k}");
            }
        }
    }
}

#[test]
fn moving_the_split_changes_little() {
    for n in 2..5u32 {
        let term = PowerTerm::new(n).unwrap();
        let mut previous: Option<Rational> = None;
        for x in 3..14u64 {
            let a = Engine::new()
                .sum_series::<Rational>(&term, x, Case::SameSign, Order::Fixed(4))
                .unwrap();
            let b = Engine::new()
                .sum_series::<Rational>(&term, x + 1, Case::SameSign, Order::Fixed(4))
                .unwrap();
            let gap = (&a.value - &b.value).abs();
            let bound = std::cmp::max(a.tail.error_estimate.clone(), b.tail.error_estimate.clone());
            assert!(gap <= bound, "n={n} x={x}");
            if let Some(p) = previous {
                assert!(
                    gap < p,
                    "discrepancy should shrink as x grows (n={n} x={x})"
                );
            }
            previous = Some(gap);
        }
    }
}

#[test]
fn error_estimate_tracks_actual_error() {
    let pi = compute_pi(40);
    let (pi2, _) = pi.powi(2);
    let (pi4, _) = pi.powi(4);
    let zeta3 = tail_bracket(&PowerTerm::new(3).unwrap(), 1, 100_000, 40).unwrap();
    let ln2 = compute_ln2(40);
    for k in 3..=5usize {
        let order = Order::Fixed(k);
        let z2 = eulersum::zeta_approx(2, 10, order).unwrap();
        assert!((&z2.value - &pi2 / int(6)).abs() <= int(10) * &z2.tail.error_estimate);
        let z4 = eulersum::zeta_approx(4, 10, order).unwrap();
        assert!((&z4.value - &pi4 / int(90)).abs() <= int(10) * &z4.tail.error_estimate);
        let z3 = eulersum::zeta_approx(3, 10, order).unwrap();
        assert!(zeta3.max_distance(&z3.value) <= int(10) * &z3.tail.error_estimate);
        let e1 = eulersum::eta_approx(1, 10, order).unwrap();
        assert!((&e1.value - &ln2.value).abs() <= int(10) * &e1.tail.error_estimate);
    }
}

#[test]
fn closure_term_exponential_decay() {
    let term = FnTerm::new(|m, x: &f64| {
        let v = (-x).exp();
        Ok(if m % 2 == 0 { v } else { -v })
    })
    .with_tail_integral(|x: &f64| Ok((-x).exp()));
    let q = (-1.0f64).exp();
    for x in [1u64, 3, 7] {
        let same = Engine::new()
            .tail_sum(&TailSumRequest::new(&term, x, Case::SameSign, Order::Auto))
            .unwrap();
        let want = (-(x as f64)).exp() / (1.0 - q);
        assert!(((same.value - want) / want).abs() < 1e-13, "x={x}");

        let alt = Engine::new()
            .tail_sum(&TailSumRequest::new(
                &term,
                x,
                Case::Alternating,
                Order::Auto,
            ))
            .unwrap();
        let want = (-(x as f64)).exp() / (1.0 + q);
        assert!(((alt.value - want) / want).abs() < 1e-13, "x={x}");
    }
}

#[test]
fn closure_term_without_integral_rejects_same_sign() {
    let term = FnTerm::new(|_, x: &f64| Ok(1.0 / x));
    let res = Engine::new().tail_sum(&TailSumRequest::new(&term, 2, Case::SameSign, Order::Auto));
    assert_eq!(res, Err(eulersum::Error::MissingTailIntegral));
}

#[test]
fn concurrent_sums_on_a_fresh_cache_agree() {
    let cache = CoefficientCache::new();
    let engine = Engine::with_cache(&cache);
    let expected: Vec<Rational> = (2..8u32)
        .map(|n| Engine::new().zeta(n, 10, Order::Fixed(12)).unwrap().value)
        .collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = (2..8u32)
            .map(|n| s.spawn(move || engine.zeta(n, 10, Order::Fixed(12)).unwrap().value))
            .collect();
        for (h, want) in handles.into_iter().zip(&expected) {
            assert_eq!(&h.join().unwrap(), want);
        }
    });
}

#[test]
fn f32_engine_runs() {
    let term = PowerTerm::new(2).unwrap();
    let s = Engine::new()
        .sum_series::<f32>(&term, 10, Case::SameSign, Order::Fixed(3))
        .unwrap();
    assert!((s.value - std::f32::consts::PI.powi(2) / 6.0).abs() < 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn one_more_order_adds_exactly_the_next_term(
        n in 1u32..6,
        x in 1u64..40,
        k in 1usize..10,
        alternating in any::<bool>(),
    ) {
        let case = if alternating || n == 1 { Case::Alternating } else { Case::SameSign };
        let term = PowerTerm::new(n).unwrap();
        let lo = tail(&term, x, case, k);
        let hi = tail(&term, x, case, k + 1);
        let added = &hi.contributions.last().unwrap().value;
        prop_assert_eq!(&hi.value - &lo.value, added.clone());
        prop_assert_eq!(&lo.error_estimate, &added.abs());
        let total = lo.contributions.iter().fold(int(0), |a, c| a + &c.value);
        prop_assert_eq!(total, lo.value);
    }
}
