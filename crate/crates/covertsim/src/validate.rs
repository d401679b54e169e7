//! Invariant suites behind the `validate` subcommand: distance laws,
//! covertness inequalities, and the warden-power ring sandwich.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::channel::{kl_gaussian, kl_window_upper, pinsker_gap};
use crate::config::{NetworkConfig, PowerRule};
use crate::error::Result;
use crate::geometry::{nearest_distances, node_node_cdf, pair_distance_cdf, receiver_sender_cdf};
use crate::rng::{self, Domain};
use crate::scheme::SlotState;
use crate::stats::{ks_statistic, median};
use crate::sweep::{run_sweep, Metric, SweepSpec};

/// Outcome of one named check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, passed: bool, detail: String) -> CheckOutcome {
        CheckOutcome {
            name: name.to_string(),
            passed,
            detail,
        }
    }
}

/// Pooled nearest-neighbor samples for one `(n, slots)` data set.
pub struct DistanceSamples {
    pub pair: Vec<f64>,
    pub rcv_nearest_sender: Vec<f64>,
    pub node_nearest_node: Vec<f64>,
}

/// Pool the three distance families over `slots` slots.
pub fn collect_distance_samples(cfg: &NetworkConfig, slots: u64) -> Result<DistanceSamples> {
    let per_slot: Vec<_> = (1..=slots)
        .into_par_iter()
        .map(|slot| -> Result<_> {
            let state = SlotState::generate(cfg, slot)?;
            Ok(nearest_distances(&state.placement, &state.assignment))
        })
        .collect::<Result<_>>()?;
    let mut samples = DistanceSamples {
        pair: Vec::new(),
        rcv_nearest_sender: Vec::new(),
        node_nearest_node: Vec::new(),
    };
    for d in per_slot {
        samples.pair.extend(d.pair_dist);
        samples.rcv_nearest_sender.extend(d.rcv_nearest_sender);
        samples.node_nearest_node.extend(d.node_nearest_node);
    }
    Ok(samples)
}

/// KS distances of the three empirical CDFs against their closed forms.
pub fn distance_law_ks(cfg: &NetworkConfig, slots: u64) -> Result<(f64, f64, f64)> {
    let samples = collect_distance_samples(cfg, slots)?;
    Ok((
        ks_statistic(&samples.pair, pair_distance_cdf(cfg.n, cfg.theta)),
        ks_statistic(
            &samples.rcv_nearest_sender,
            receiver_sender_cdf(cfg.n, cfg.theta),
        ),
        ks_statistic(&samples.node_nearest_node, node_node_cdf(cfg.n)),
    ))
}

fn check_distance_laws(base: &NetworkConfig, quick: bool) -> Result<Vec<CheckOutcome>> {
    let (ns, slots, threshold) = if quick {
        (vec![500usize, 1000], 100u64, 0.05)
    } else {
        (vec![1000, 4000], 200, 0.05)
    };
    let mut outcomes = Vec::new();
    for n in ns {
        let cfg = base.at_grid_point(n, rng::derive(base.seed, Domain::Sweep, n as u64, 0xd15));
        let (ks_pair, ks_rcv, ks_node) = distance_law_ks(&cfg, slots)?;
        let passed = ks_pair < threshold && ks_rcv < threshold && ks_node < threshold;
        outcomes.push(CheckOutcome::new(
            &format!("distance-laws(n={n})"),
            passed,
            format!(
                "ks_pair={ks_pair:.4} ks_rcv_nearest_sender={ks_rcv:.4} \
                 ks_node_nearest_node={ks_node:.4} threshold={threshold}"
            ),
        ));
    }
    Ok(outcomes)
}

fn check_log_sandwich() -> CheckOutcome {
    // x²/2 − x³/3 ≤ x − ln(1+x) ≤ x²/2 on a 10^4-point grid over (0, 10].
    let points = 10_000;
    let mut worst = f64::NEG_INFINITY;
    let mut passed = true;
    for i in 1..=points {
        let x = 10.0 * i as f64 / points as f64;
        let mid = x - x.ln_1p();
        let upper = x * x / 2.0;
        let lower = x * x / 2.0 - x * x * x / 3.0;
        if !(lower <= mid && mid <= upper) {
            passed = false;
            worst = x;
        }
    }
    CheckOutcome::new(
        "log-sandwich",
        passed,
        if passed {
            format!("holds on {points} grid points over (0, 10]")
        } else {
            format!("violated near x = {worst}")
        },
    )
}

fn check_pinsker() -> Result<CheckOutcome> {
    // tv ≤ √kl on a log grid of ρ/N0 ∈ [1e-6, 10].
    let points = 200;
    let (lo, hi) = (1e-6_f64, 10.0_f64);
    let mut max_ratio: f64 = 0.0;
    for i in 0..=points {
        let rho = lo * (hi / lo).powf(i as f64 / points as f64);
        let gap = pinsker_gap(rho, 1.0)?;
        if gap.tv > gap.sqrt_kl {
            return Ok(CheckOutcome::new(
                "pinsker",
                false,
                format!("tv {} > sqrt_kl {} at rho = {rho}", gap.tv, gap.sqrt_kl),
            ));
        }
        max_ratio = max_ratio.max(gap.tv / gap.sqrt_kl);
    }
    Ok(CheckOutcome::new(
        "pinsker",
        true,
        format!("tv <= sqrt(kl) on [{lo:e}, {hi}] log grid; max ratio {max_ratio:.4}"),
    ))
}

fn check_kl_chain(seed: u64) -> Result<CheckOutcome> {
    // exact_sum ≤ quadratic bound on random windows; Jensen on the mean.
    let mut rng = rng::stream(seed, Domain::Sweep, 0xc4a1);
    for _ in 0..1000 {
        let l = rng.random_range(1..=64usize);
        let window: Vec<f64> = (0..l).map(|_| rng.random::<f64>() * 10.0).collect();
        let (exact, bound) = kl_window_upper(&window, 1.0)?;
        if exact > bound {
            return Ok(CheckOutcome::new(
                "kl-chain",
                false,
                format!("exact {exact} > bound {bound} for window of length {l}"),
            ));
        }
        let mean = window.iter().sum::<f64>() / l as f64;
        let jensen = l as f64 * kl_gaussian(mean, 1.0)?;
        if jensen > exact + 1e-12 {
            return Ok(CheckOutcome::new(
                "kl-chain",
                false,
                format!("convexity violated: l*kl(mean) {jensen} > exact {exact}"),
            ));
        }
    }
    Ok(CheckOutcome::new(
        "kl-chain",
        true,
        "exact sum <= quadratic bound and Jensen ordering on 1000 random windows".into(),
    ))
}

fn check_ring_sandwich(base: &NetworkConfig, quick: bool) -> Result<CheckOutcome> {
    // Measured max warden power / (P_tx · n · r_p^{2-α}) must stay within
    // ±50% of its median across the grid (0 < s < 1 ring form).
    let (n_grid, trials, slots) = if quick {
        (vec![256usize, 512, 1024, 2048], 10u64, 4u64)
    } else {
        (vec![256, 512, 1024, 2048, 4096, 8192], 30, 8)
    };
    let mut cfg = base.clone();
    cfg.power_rule = PowerRule::Constant;
    cfg.c_tx = 1.0;
    let spec = SweepSpec {
        n_grid: n_grid.clone(),
        slots_per_n: slots,
        trials_per_n: trials,
        metrics: [Metric::WardenPower].into_iter().collect(),
    };
    let result = run_sweep(&spec, &cfg)?;
    let mut ratios = Vec::new();
    for &n in &n_grid {
        let values: Vec<f64> = result
            .points
            .iter()
            .filter(|p| p.n == n)
            .map(|p| p.value)
            .collect();
        let at = cfg.at_grid_point(n, 0);
        let ring_form = n as f64 * at.preservation_radius().powf(2.0 - cfg.alpha);
        ratios.push(median(&values) / ring_form);
    }
    let mid = median(&ratios);
    let k_lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let k_hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let passed = k_lo >= 0.5 * mid && k_hi <= 1.5 * mid && k_lo <= k_hi;
    Ok(CheckOutcome::new(
        "ring-sandwich",
        passed,
        format!(
            "K_lo={k_lo:.4e} K_hi={k_hi:.4e} median={mid:.4e}; \
             all grid ratios within +/-50% of median: {passed}"
        ),
    ))
}

/// Run the full validation suite. `quick` shrinks sizes to a few seconds.
pub fn run_validation(base: &NetworkConfig, quick: bool) -> Result<Vec<CheckOutcome>> {
    base.validate()?;
    let mut outcomes = Vec::new();
    outcomes.extend(check_distance_laws(base, quick)?);
    outcomes.push(check_log_sandwich());
    outcomes.push(check_pinsker()?);
    outcomes.push(check_kl_chain(base.seed)?);
    outcomes.push(check_ring_sandwich(base, quick)?);
    Ok(outcomes)
}
