use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, ToPrimitive, Zero};
use proptest::prelude::*;
use rosenthal::exact::{bell, h_exact, k_exact, l_exact, stirling2};
use rosenthal::series::{self, TruncationPolicy};
use rosenthal::special::{bessel_bounds, bessel_i_int, skellam_pmf};
use rosenthal::{DoubleDouble, LogReal, LogSum};

fn pol() -> TruncationPolicy {
    TruncationPolicy::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn stirling_recurrence(n in 1usize..40, r in 1usize..40) {
        prop_assume!(r <= n);
        let lhs = stirling2(n, r).unwrap();
        let upper = if r < n { stirling2(n - 1, r).unwrap() } else { BigInt::zero() };
        let rhs = BigInt::from(r) * upper + stirling2(n - 1, r - 1).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn stirling_row_sums_to_bell(n in 0usize..60) {
        let s: BigInt = (0..=n).map(|r| stirling2(n, r).unwrap()).sum();
        prop_assert_eq!(s, bell(n));
    }

    #[test]
    fn log_sum_matches_plain_sum(xs in prop::collection::vec(-1e3f64..1e3, 1..50)) {
        let mut acc = LogSum::new();
        for &x in &xs {
            acc.push(LogReal::from_value(x));
        }
        let direct: f64 = xs.iter().sum();
        let scale: f64 = xs.iter().map(|x| x.abs()).sum();
        prop_assert!((acc.total().value() - direct).abs() <= 1e-12 * scale.max(1.0));
    }

    #[test]
    fn double_double_round_trip(a in -1e6f64..1e6, b in 1e-3f64..1e6) {
        let (x, y) = (DoubleDouble::from(a), DoubleDouble::from(b));
        let back = (x / y) * y - x;
        prop_assert!(back.abs().to_f64().unwrap() <= 1e-28 * a.abs().max(1.0));
    }

    #[test]
    fn bessel_envelope(n in 1u32..60, li in 0usize..5) {
        let lambda = [0.25, 0.5, 1.0, 2.0, 5.0][li];
        let (lo, hi) = bessel_bounds(n, lambda).unwrap();
        let v = bessel_i_int(i64::from(n), 2.0 * f64::sqrt(lambda)).unwrap();
        prop_assert!(lo.ln_abs() <= v.ln_abs() + 1e-12 && v.ln_abs() <= hi.ln_abs() + 1e-12);
    }

    #[test]
    fn skellam_pmf_symmetry(n in -20i64..20, l in 0.1f64..4.0, m in 0.1f64..4.0) {
        let a = skellam_pmf(n, l, m).unwrap();
        let b = skellam_pmf(-n, m, l).unwrap();
        prop_assert!((a - b).abs() <= 1e-13 * a.max(1e-300));
    }

    #[test]
    fn h_is_symmetric_in_rates(m in 1u32..5, a in 1i64..5, b in 1i64..5) {
        let (x, y) = (BigRational::new(a.into(), 4.into()), BigRational::new(b.into(), 4.into()));
        prop_assert_eq!(h_exact(2 * m, &x, &y).unwrap(), h_exact(2 * m, &y, &x).unwrap());
    }

    #[test]
    fn f3_theta_reciprocity(p in 2.0f64..30.0, theta in 0.2f64..5.0, beta in 0.1f64..3.0) {
        // I_{-n} = I_n, so F₃(p; θ, β) = F₃(p; 1/θ, β)
        let a = series::eval_f3(p, theta, beta, &pol()).unwrap().get();
        let b = series::eval_f3(p, theta.recip(), beta, &pol()).unwrap().get();
        prop_assert!((a / b - 1.0).abs() < 1e-12);
    }

    #[test]
    fn k_and_l_nondecreasing(p in 2.0f64..60.0, dp in 0.0f64..3.0) {
        let k = |x| series::k_series(x, &pol()).unwrap().get();
        let l = |x| series::l_series(x, &pol()).unwrap().get();
        prop_assert!(k(p + dp) >= k(p) * (1.0 - 1e-13));
        prop_assert!(l(p + dp) >= l(p) * (1.0 - 1e-13));
    }
}

#[test]
fn lyapunov_monotonicity() {
    let grid: Vec<f64> = (0..=48).map(|i| 4.0 + 2.0 * i as f64).collect();
    for f in [series::g_of_p::<f64>, series::s_of_p::<f64>] {
        let v: Vec<f64> = grid.iter().map(|&p| f(p, &pol()).unwrap()).collect();
        assert!(v.windows(2).all(|w| w[1] >= w[0]));
    }
}

#[test]
fn exact_constants_integral_and_increasing() {
    let mut prev = (BigInt::zero(), BigInt::zero());
    for m in 2..=10u32 {
        let (k, l) = (k_exact(2 * m).unwrap(), l_exact(2 * m).unwrap());
        assert!(k > prev.0 && l > prev.1);
        let series_k = series::k_series(DoubleDouble::from(2.0 * f64::from(m)), &pol()).unwrap().get();
        assert!((series_k / DoubleDouble::from(k.to_f64().unwrap()) - DoubleDouble::from(1.0)).abs().to_f64().unwrap() < 1e-12);
        prev = (k, l);
    }
}
