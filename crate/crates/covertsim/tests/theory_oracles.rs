//! Closed-form exponent evaluators: plug-in values, boundary continuity,
//! and achievability/converse orderings.

use covertsim::theory::{
    achievable_exponent_dense, achievable_exponent_sparse, converse_exponents,
    warden_power_exponent, Law, MinBranch, RegimeParams,
};

const TOL: f64 = 1e-12;

fn rp(alpha: f64, s: f64, lambda: f64, eps: f64) -> RegimeParams {
    RegimeParams::new(alpha, s, lambda, eps).unwrap()
}

#[test]
fn sparse_achievability_plugin_values() {
    // alpha=4, s=0.5, lambda=1: inner exponent 0 -> saturated, e = 1.
    let r = achievable_exponent_sparse(&rp(4.0, 0.5, 1.0, 0.0)).unwrap();
    assert!((r.throughput_exponent - 1.0).abs() < TOL);
    assert_eq!(r.min_branch, MinBranch::Saturated);
    assert_eq!(r.regime, Law::AchievableSparse);

    // alpha=3, s=0.5, lambda=2: inner (0.25 - 1)·(2/3) = -0.5 -> e = 0.5.
    let r = achievable_exponent_sparse(&rp(3.0, 0.5, 2.0, 0.0)).unwrap();
    assert!((r.throughput_exponent - 0.5).abs() < TOL);
    assert_eq!(r.min_branch, MinBranch::PowerLimited);

    // lambda=0, s -> 0, alpha=4: inner positive -> saturated, e = 1.
    let r = achievable_exponent_sparse(&rp(4.0, 1e-9, 0.0, 0.0)).unwrap();
    assert!((r.throughput_exponent - 1.0).abs() < TOL);
    assert_eq!(r.min_branch, MinBranch::Saturated);
}

#[test]
fn dense_achievability_plugin_values() {
    // s=1, lambda=0: e = 1 for any alpha (boundary with the sparse law).
    for alpha in [2.5, 3.0, 4.0, 6.0] {
        let r = achievable_exponent_dense(&rp(alpha, 1.0, 0.0, 0.0)).unwrap();
        assert!((r.throughput_exponent - 1.0).abs() < TOL);
    }
    // s=2, alpha=4, lambda=0: e = 1 + (1/2)(-2) = 0.
    let r = achievable_exponent_dense(&rp(4.0, 2.0, 0.0, 0.0)).unwrap();
    assert!(r.throughput_exponent.abs() < TOL);
    // s=2, alpha=4, lambda=2: e = 1 + (1/2)(-2 - 1) = -0.5.
    let r = achievable_exponent_dense(&rp(4.0, 2.0, 2.0, 0.0)).unwrap();
    assert!((r.throughput_exponent + 0.5).abs() < TOL);
}

#[test]
fn upper_bound_plugin_values() {
    // Trivial bound is 1 + eps everywhere.
    for p in [rp(4.0, 0.5, 1.0, 0.0), rp(3.0, 2.0, 2.0, 0.25)] {
        let ub = converse_exponents(&p).unwrap();
        assert!((ub.trivial.throughput_exponent - (1.0 + p.eps)).abs() < TOL);
        assert_eq!(ub.trivial.regime, Law::TrivialConverse);
    }

    // For 0 < s < 1 the equal-power bound matches the achievable
    // exponent at eps = 0:
    // achievability is tight.
    let p = rp(4.0, 0.5, 1.0, 0.0);
    let ub = converse_exponents(&p).unwrap();
    let ach = achievable_exponent_sparse(&p).unwrap();
    assert_eq!(ub.assumed_equal_power.regime, Law::EqualPowerSparse);
    assert!((ub.assumed_equal_power.throughput_exponent - 1.0).abs() < TOL);
    assert!((ub.assumed_equal_power.throughput_exponent - ach.throughput_exponent).abs() < TOL);

    // s=2, alpha=4, lambda=2: equal-power converse = 1 - lambda/alpha = 0.5,
    // strictly above the achievable -0.5 (the known gap for s >= 1).
    let p = rp(4.0, 2.0, 2.0, 0.0);
    let ub = converse_exponents(&p).unwrap();
    assert_eq!(ub.assumed_equal_power.regime, Law::EqualPowerDense);
    assert!((ub.assumed_equal_power.throughput_exponent - 0.5).abs() < TOL);
    let ach = achievable_exponent_dense(&p).unwrap();
    assert!(ub.assumed_equal_power.throughput_exponent > ach.throughput_exponent);
}

#[test]
fn warden_power_plugin_values() {
    // s=0.5, alpha=4, eps_p=0, constant power: slope = 1 + (s/2)(α−2) = 1.5.
    let law = warden_power_exponent(&rp(4.0, 0.5, 0.0, 0.0), 0.0, 0.0);
    assert!((law.slope - 1.5).abs() < TOL);
    assert_eq!(law.log_factor_exponent, 0);

    // s -> 0 limit: pure n growth (r_p constant).
    let p = RegimeParams {
        alpha: 4.0,
        s: 0.0,
        lambda: 0.0,
        eps: 0.0,
    };
    let law = warden_power_exponent(&p, 0.0, 0.0);
    assert!((law.slope - 1.0).abs() < TOL);

    // s=1.5, alpha=4: polynomial slope α·s/2 = 3 with a (log n)² correction.
    let law = warden_power_exponent(&rp(4.0, 1.5, 0.0, 0.0), 0.0, 0.0);
    assert!((law.slope - 3.0).abs() < TOL);
    assert_eq!(law.log_factor_exponent, 2);
}

#[test]
fn continuity_at_s_equals_one() {
    // The sparse law evaluated at the boundary s = 1 must agree exactly
    // with the dense law.
    for alpha in [2.5, 3.0, 4.0, 5.5] {
        for lambda in [0.0, 0.5, 1.0, 2.0, 4.0] {
            for eps in [0.0, 0.1] {
                let p = rp(alpha, 1.0, lambda, eps);
                let a = achievable_exponent_sparse(&p).unwrap().throughput_exponent;
                let b = achievable_exponent_dense(&p).unwrap().throughput_exponent;
                assert!(
                    (a - b).abs() < TOL,
                    "discontinuity at s=1: alpha={alpha} lambda={lambda} eps={eps}: {a} vs {b}"
                );
            }
        }
    }
}

#[test]
fn achievability_never_exceeds_converse() {
    for alpha in [2.1, 2.5, 3.0, 4.0, 6.0] {
        for lambda in [0.0, 0.5, 1.0, 2.0, 3.0] {
            for eps in [0.0, 0.05] {
                for s in [0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
                    let p = rp(alpha, s, lambda, eps);
                    let ach = achievable_exponent_sparse(&p).unwrap().throughput_exponent;
                    let ub = converse_exponents(&p).unwrap();
                    assert!(ach <= ub.trivial.throughput_exponent + TOL);
                    assert!(ach <= ub.assumed_equal_power.throughput_exponent + TOL);
                }
                for s in [1.0, 1.2, 1.5, 2.0, 3.0] {
                    let p = rp(alpha, s, lambda, eps);
                    let ach = achievable_exponent_dense(&p).unwrap().throughput_exponent;
                    let ub = converse_exponents(&p).unwrap();
                    assert!(ach <= ub.trivial.throughput_exponent + TOL);
                    assert!(ach <= ub.assumed_equal_power.throughput_exponent + TOL);
                }
            }
        }
    }
}

#[test]
fn exponents_monotone_in_s_and_lambda() {
    let alphas = [2.5, 3.0, 4.0];
    let grid: Vec<f64> = (1..=30).map(|i| i as f64 / 10.0).collect();
    for &alpha in &alphas {
        for &lambda in &[0.0, 1.0, 2.0] {
            let mut prev = f64::INFINITY;
            for &s in &grid {
                let p = rp(alpha, s, lambda, 0.0);
                let e = if s < 1.0 {
                    achievable_exponent_sparse(&p).unwrap().throughput_exponent
                } else {
                    achievable_exponent_dense(&p).unwrap().throughput_exponent
                };
                assert!(e <= prev + TOL, "not monotone in s at alpha={alpha}, s={s}");
                prev = e;
            }
        }
        for &s in &[0.3, 0.7, 1.0, 1.5] {
            let mut prev = f64::INFINITY;
            for &lambda in &grid {
                let p = rp(alpha, s, lambda, 0.0);
                let e = if s < 1.0 {
                    achievable_exponent_sparse(&p).unwrap().throughput_exponent
                } else {
                    achievable_exponent_dense(&p).unwrap().throughput_exponent
                };
                assert!(e <= prev + TOL, "not monotone in lambda at alpha={alpha}");
                prev = e;
            }
        }
    }
}

#[test]
fn sparse_achievability_matches_equal_power_converse_at_zero_eps() {
    for alpha in [2.5, 3.0, 4.0, 5.0] {
        for lambda in [0.0, 0.5, 1.0, 2.0] {
            for s in [0.05, 0.25, 0.5, 0.75, 0.95] {
                let p = rp(alpha, s, lambda, 0.0);
                let a = achievable_exponent_sparse(&p).unwrap().throughput_exponent;
                let b = converse_exponents(&p)
                    .unwrap()
                    .assumed_equal_power
                    .throughput_exponent;
                assert!((a - b).abs() < TOL);
            }
        }
    }
}
