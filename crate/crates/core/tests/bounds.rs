mod common;

use proptest::prelude::*;

use biasedbv::bounds::*;
use common::entropy_bits;

fn value(kind: BoundKind, q: &BoundQuery) -> Option<f64> {
    let r = kind.evaluate(q).unwrap();
    r.regime_ok.then_some(r.value)
}

const UPPER: [BoundKind; 4] =
    [BoundKind::OrAggregate, BoundKind::Majority, BoundKind::NoisyMajority, BoundKind::FaultyGateMajority];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn upper_bounds_are_monotone(
        n in 1usize..200, c1 in 0.01f64..1.0, c2 in 0.01f64..1.0,
        d1 in 0.001f64..0.9, d2 in 0.001f64..0.9,
        r1 in 0.0f64..0.01, r2 in 0.0f64..0.01,
        e1 in 0.0f64..0.2, e2 in 0.0f64..0.2,
    ) {
        let (c_lo, c_hi) = (c1.min(c2), c1.max(c2));
        let (d_lo, d_hi) = (d1.min(d2), d1.max(d2));
        let (r_lo, r_hi) = (r1.min(r2), r1.max(r2));
        let (e_lo, e_hi) = (e1.min(e2), e1.max(e2));
        let base = |n, c, d, r, e| BoundQuery::new(n, c, d).with_rho(r).with_epsilon(e);
        for kind in UPPER {
            let reference = value(kind, &base(n, c_lo, d_lo, r_lo, e_lo));
            // larger c, larger delta, smaller n, rho or eps never need more copies
            for other in [
                base(n, c_hi, d_lo, r_lo, e_lo),
                base(n, c_lo, d_hi, r_lo, e_lo),
            ] {
                if let (Some(a), Some(b)) = (reference, value(kind, &other)) {
                    prop_assert!(b <= a, "{kind}: {b} > {a}");
                }
                if reference.is_some() {
                    prop_assert!(value(kind, &other).is_some(), "{kind}: regime lost");
                }
            }
            let worse = [
                base(n + 1, c_lo, d_lo, r_lo, e_lo),
                base(n, c_lo, d_lo, r_hi, e_lo),
                base(n, c_lo, d_lo, r_lo, e_hi),
            ];
            for other in worse {
                if let (Some(a), Some(b)) = (reference, value(kind, &other)) {
                    prop_assert!(b >= a, "{kind}: {b} < {a}");
                }
            }
        }
    }

    #[test]
    fn quantum_delta_lower_below_or_aggregate(c in 0.001f64..=1.0, delta in 0.0001f64..0.5, n in 1usize..500) {
        let q = BoundQuery::new(n, c, delta);
        let lower = m_lower_quantum_delta(&q).unwrap();
        let upper = m_upper_or_aggregate(&q).unwrap();
        prop_assert!(lower.regime_ok && upper.regime_ok);
        prop_assert!(lower.value <= upper.value);
    }

    #[test]
    fn classical_lower_below_n(n in 1usize..10_000, delta in 0.0001f64..0.9999) {
        let v = m_lower_classical(&BoundQuery::new(n, 1.0, delta)).unwrap().value;
        prop_assert!(v < n as f64);
        prop_assert!((v - ((1.0 - delta) * n as f64 - entropy_bits(delta))).abs() < 1e-9);
    }
}

#[test]
fn regime_boundaries_are_strict() {
    let q = BoundQuery::new(8, 0.75, 0.05);
    assert!(!m_upper_majority(&q).unwrap().regime_ok);
    assert!(!m_upper_majority_noisy(&BoundQuery::new(4, 0.75, 0.05)).unwrap().regime_ok);
    assert!(!m_upper_majority_noisy(&BoundQuery::new(4, 1.0, 0.05).with_rho(0.05)).unwrap().regime_ok);
    assert!(m_upper_majority_noisy(&BoundQuery::new(4, 1.0, 0.05).with_rho(0.0499)).unwrap().regime_ok);
    // 1 - 2(n(1-c)^2 + eps) = 0 at n = 2, c = 0.5, eps = 0
    assert!(!m_upper_majority_faulty_gates(&BoundQuery::new(2, 0.5, 0.05).with_epsilon(0.0)).unwrap().regime_ok);
    let ok = m_upper_majority_faulty_gates(&BoundQuery::new(8, 0.97, 0.05).with_epsilon(0.1)).unwrap();
    assert!(ok.regime_ok && ok.value.is_finite());
    assert!(1.0 - (0.8f64 / 16.0).sqrt() < 0.97);
}

#[test]
fn values_are_finite_exactly_when_regime_holds() {
    for n in [1usize, 2, 3, 8, 100] {
        for c in [0.0, 0.3, 0.75, 0.95, 1.0] {
            for delta in [0.01, 0.3, 0.6] {
                for kind in BoundKind::ALL {
                    let r = kind.evaluate(&BoundQuery::new(n, c, delta).with_rho(0.01).with_epsilon(0.1)).unwrap();
                    assert_eq!(r.value.is_finite(), r.regime_ok, "{kind} n={n} c={c} delta={delta}");
                }
            }
        }
    }
}

#[test]
fn regimes_of_upper_and_lower_curves_are_disjoint_from_n_4() {
    for n in 4..=10_000usize {
        // the majority regime admits biases below 1/sqrt(2n); the lower bound needs at least the floor
        assert!(min_bias_for_lower_bound(n) > max_bias_for_majority(n), "n = {n}");
    }
    // at n = 3 the floor is negative, so the two regimes overlap
    assert!(min_bias_for_lower_bound(3) < 0.0);
}

#[test]
fn or_aggregate_rate_expansion() {
    for k in 1..100 {
        let c = k as f64 * 0.001;
        let exact = 1.0 / or_aggregate_rate(c);
        let approx = 1.0 / c + c / 6.0;
        assert!(((approx - exact) / exact).abs() < 0.01, "c = {c}");
    }
}

#[test]
fn spot_values() {
    let q = BoundQuery::new(8, 1.0, 0.05);
    assert_eq!(m_upper_or_aggregate(&q).unwrap().value, 9.0);
    assert_eq!(m_upper_majority(&q).unwrap().value, (4.0 * 40f64.ln()).ceil());
    let noisy = m_upper_majority_noisy(&BoundQuery::new(6, 0.95, 0.05).with_rho(0.02)).unwrap();
    assert_eq!(noisy.value, 685.0);
    let lower_n = m_lower_quantum_n(&BoundQuery::new(100, 1.0, 0.05)).unwrap().value;
    let num = 0.95 * 100.0 - entropy_bits(0.05);
    let den = entropy_bits(1.0 / 100f64.ln()) + 101.0 / 100f64.ln();
    assert!((lower_n - num / den).abs() < 1e-12 && (lower_n - 4.17).abs() < 0.01);
    // half the numerator at delta = 1/2, still positive
    assert!(m_lower_quantum_n(&BoundQuery::new(3, 1.0, 0.5)).unwrap().value > 0.0);
}
