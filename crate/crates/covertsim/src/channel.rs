//! Path-loss channel model and covertness mathematics.
//!
//! The model is power-only: the channel phase is uniform and independent
//! everywhere, so it never enters a received power, an SINR, or a KL
//! divergence between the zero-mean circular Gaussians involved. Powers are
//! in the same arbitrary unit as the noise power `N0`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distances below this threshold abort the slot instead of being clamped;
/// a clamp would silently corrupt scaling fits, and at simulated scales the
/// event has probability ~0.
pub const MIN_SEPARATION: f64 = 1e-12;

/// Path-loss channel parameters.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ChannelParams {
    /// Path-loss exponent, > 2.
    pub alpha: f64,
    /// Antenna/wavelength gain constant (Friis); shifts intercepts only.
    pub gain: f64,
    /// Noise power.
    pub n0: f64,
}

impl ChannelParams {
    /// `d^{-alpha}` from a squared distance. Integer exponents take the fast
    /// path; results agree with `powf` to within a few ulps.
    pub fn inv_pow(&self, dist_sq: f64) -> f64 {
        if self.alpha == 4.0 {
            1.0 / (dist_sq * dist_sq)
        } else if self.alpha == 3.0 {
            1.0 / (dist_sq * dist_sq.sqrt())
        } else if self.alpha == 2.0 {
            1.0 / dist_sq
        } else {
            dist_sq.powf(-self.alpha / 2.0)
        }
    }
}

/// Covertness budget and the two received-power thresholds it induces.
///
/// Both thresholds equal `√2 · N0 · √(δ/l)`: the sufficient condition caps
/// the per-use maximum, the necessary condition caps the per-use mean (its
/// `o(l^{-1/2})` slack is dropped). The exact-KL verdict is authoritative;
/// the thresholds are diagnostics.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct CovertnessBudget {
    pub delta: f64,
    /// Testing window length in channel uses.
    pub l: u64,
    pub n0: f64,
    pub rho_max_sufficient: f64,
    pub rho_bar_necessary: f64,
}

impl CovertnessBudget {
    pub fn new(delta: f64, l: u64, n0: f64) -> CovertnessBudget {
        let threshold = std::f64::consts::SQRT_2 * n0 * (delta / l as f64).sqrt();
        CovertnessBudget {
            delta,
            l,
            n0,
            rho_max_sufficient: threshold,
            rho_bar_necessary: threshold,
        }
    }
}

/// Covertness verdicts for one warden (or the all-warden conjunction).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CovertVerdict {
    /// Max per-use received power within the sufficient threshold.
    pub sufficient_ok: bool,
    /// Mean per-use received power within the necessary threshold.
    pub necessary_ok: bool,
    /// Exact KL divergence over the window within `delta`.
    pub exact_kl_ok: bool,
}

impl CovertVerdict {
    fn all_ok() -> CovertVerdict {
        CovertVerdict {
            sufficient_ok: true,
            necessary_ok: true,
            exact_kl_ok: true,
        }
    }

    fn and(self, other: CovertVerdict) -> CovertVerdict {
        CovertVerdict {
            sufficient_ok: self.sufficient_ok && other.sufficient_ok,
            necessary_ok: self.necessary_ok && other.necessary_ok,
            exact_kl_ok: self.exact_kl_ok && other.exact_kl_ok,
        }
    }
}

/// Per-warden verdicts plus their conjunction.
#[derive(Debug, Clone)]
pub struct CovertnessReport {
    pub per_warden: Vec<CovertVerdict>,
    pub all: CovertVerdict,
}

/// Total received power `Σ_i P_i · G / d_i^α`.
///
/// Suppressed senders must carry `tx_power = 0`; zero-power entries are
/// skipped, so a silent sender may stand arbitrarily close to the observer.
/// A transmitting sender below [`MIN_SEPARATION`] is a singularity error.
pub fn received_power(tx_powers: &[f64], distances: &[f64], params: &ChannelParams) -> Result<f64> {
    debug_assert_eq!(tx_powers.len(), distances.len());
    let mut total = 0.0;
    for (&p, &d) in tx_powers.iter().zip(distances) {
        if p == 0.0 {
            continue;
        }
        if d < MIN_SEPARATION {
            return Err(Error::Singularity {
                distance: d,
                context: "received_power",
            });
        }
        total += p * params.gain * params.inv_pow(d * d);
    }
    Ok(total)
}

/// KL divergence (nats) between the warden's per-use received distribution
/// `CN(0, N0+ρ)` and pure noise `CN(0, N0)`:
///
/// `D = ρ/N0 − ln(1 + ρ/N0)`.
///
/// Strictly increasing in ρ with `D(0) = 0`.
pub fn kl_gaussian(rho: f64, n0: f64) -> Result<f64> {
    if rho < 0.0 {
        return Err(Error::Domain(format!("rho must be >= 0, got {rho}")));
    }
    if n0 <= 0.0 {
        return Err(Error::Domain(format!("n0 must be > 0, got {n0}")));
    }
    let x = rho / n0;
    Ok(x - x.ln_1p())
}

/// Exact window KL and its quadratic upper bound.
///
/// Returns `(Σ_u D(ρ_u), l·ρ_max²/(2N0²))`. The chain
/// `exact ≤ l·D(ρ_max) ≤ bound` always holds.
pub fn kl_window_upper(rho_per_use: &[f64], n0: f64) -> Result<(f64, f64)> {
    if rho_per_use.is_empty() {
        return Err(Error::Domain("empty testing window".into()));
    }
    let mut exact = 0.0;
    let mut rho_max: f64 = 0.0;
    for &rho in rho_per_use {
        exact += kl_gaussian(rho, n0)?;
        rho_max = rho_max.max(rho);
    }
    let bound = rho_per_use.len() as f64 * rho_max * rho_max / (2.0 * n0 * n0);
    Ok((exact, bound))
}

/// Check the covertness constraint for every warden given per-use received
/// powers over the testing window.
pub fn covertness_check<W: AsRef<[f64]>>(
    windows: &[W],
    budget: &CovertnessBudget,
) -> Result<CovertnessReport> {
    let mut per_warden = Vec::with_capacity(windows.len());
    let mut all = CovertVerdict::all_ok();
    for w in windows {
        let uses = w.as_ref();
        if uses.len() != budget.l as usize {
            return Err(Error::Domain(format!(
                "window length {} does not match budget l = {}",
                uses.len(),
                budget.l
            )));
        }
        let max = uses.iter().copied().fold(0.0_f64, f64::max);
        let mean = uses.iter().sum::<f64>() / uses.len() as f64;
        let (exact, _) = kl_window_upper(uses, budget.n0)?;
        let verdict = CovertVerdict {
            sufficient_ok: max <= budget.rho_max_sufficient,
            necessary_ok: mean <= budget.rho_bar_necessary,
            exact_kl_ok: exact <= budget.delta,
        };
        per_warden.push(verdict);
        all = all.and(verdict);
    }
    Ok(CovertnessReport { per_warden, all })
}

/// Fast path for the simulator: one slot spans `l` channel uses of constant
/// per-use received power, so max = mean = ρ and the window KL collapses to
/// `l · D(ρ)`. Verdicts coincide with [`covertness_check`] on the expanded
/// constant window.
pub fn covertness_check_slot(
    warden_powers: &[f64],
    budget: &CovertnessBudget,
) -> Result<CovertnessReport> {
    let mut per_warden = Vec::with_capacity(warden_powers.len());
    let mut all = CovertVerdict::all_ok();
    for &rho in warden_powers {
        let exact = budget.l as f64 * kl_gaussian(rho, budget.n0)?;
        let verdict = CovertVerdict {
            sufficient_ok: rho <= budget.rho_max_sufficient,
            necessary_ok: rho <= budget.rho_bar_necessary,
            exact_kl_ok: exact <= budget.delta,
        };
        per_warden.push(verdict);
        all = all.and(verdict);
    }
    Ok(CovertnessReport { per_warden, all })
}

/// Total variational distance vs `√KL` for one per-use received power.
#[derive(Debug, Clone, Copy)]
pub struct PinskerGap {
    pub tv: f64,
    pub sqrt_kl: f64,
}

/// Pinsker comparison between `CN(0, N0+ρ)` and `CN(0, N0)`.
///
/// Both densities depend on the observation only through `|z|²`, which is
/// exponential with mean `N0+ρ` resp. `N0`, so the TV distance reduces to
/// the exponential one. With `r = 1 + ρ/N0` the densities cross at
/// `x* = N0 · r·ln r/(r−1)` and
///
/// `tv = r^{−1/(r−1)} − r^{−r/(r−1)}`.
///
/// Contract: `tv ≤ sqrt_kl` (Pinsker).
pub fn pinsker_gap(rho: f64, n0: f64) -> Result<PinskerGap> {
    let kl = kl_gaussian(rho, n0)?;
    if rho == 0.0 {
        return Ok(PinskerGap {
            tv: 0.0,
            sqrt_kl: 0.0,
        });
    }
    let r = 1.0 + rho / n0;
    let log_r = r.ln();
    let tv = (-log_r / (r - 1.0)).exp() - (-r * log_r / (r - 1.0)).exp();
    Ok(PinskerGap {
        tv,
        sqrt_kl: kl.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const PARAMS: ChannelParams = ChannelParams {
        alpha: 4.0,
        gain: 1.0,
        n0: 1.0,
    };

    #[test]
    fn received_power_single_sender() {
        let p = received_power(&[1.0], &[1.0], &PARAMS).unwrap();
        assert!((p - 1.0).abs() < 1e-15);
    }

    #[test]
    fn received_power_two_senders() {
        // 1/1^4 + 1/2^4 = 1.0625
        let p = received_power(&[1.0, 1.0], &[1.0, 2.0], &PARAMS).unwrap();
        assert!((p - 1.0625).abs() < 1e-15);
    }

    #[test]
    fn received_power_all_suppressed() {
        let p = received_power(&[0.0, 0.0], &[0.5, 0.0], &PARAMS).unwrap();
        assert_eq!(p, 0.0);
    }

    #[test]
    fn received_power_singularity() {
        let err = received_power(&[1.0], &[0.0], &PARAMS).unwrap_err();
        assert!(matches!(err, Error::Singularity { .. }));
    }

    #[test]
    fn kl_zero_is_zero() {
        assert_eq!(kl_gaussian(0.0, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn kl_rejects_negative() {
        assert!(kl_gaussian(-0.1, 1.0).is_err());
    }

    #[test]
    fn window_rejects_empty() {
        assert!(kl_window_upper(&[], 1.0).is_err());
    }

    #[test]
    fn window_zero_powers() {
        let (exact, bound) = kl_window_upper(&[0.0, 0.0, 0.0], 1.0).unwrap();
        assert_eq!(exact, 0.0);
        assert_eq!(bound, 0.0);
    }

    #[test]
    fn slot_check_matches_expanded_window() {
        let budget = CovertnessBudget::new(0.05, 4, 1.0);
        let powers = [0.01, 0.2];
        let slot = covertness_check_slot(&powers, &budget).unwrap();
        let windows: Vec<Vec<f64>> = powers.iter().map(|&p| vec![p; 4]).collect();
        let full = covertness_check(&windows, &budget).unwrap();
        assert_eq!(slot.per_warden, full.per_warden);
        assert_eq!(slot.all, full.all);
    }

    #[test]
    fn zero_powers_pass_everything() {
        let budget = CovertnessBudget::new(0.01, 8, 1.0);
        let report = covertness_check(&[vec![0.0; 8], vec![0.0; 8]], &budget).unwrap();
        assert_eq!(report.all, CovertVerdict::all_ok());
    }

    #[test]
    fn pinsker_zero() {
        let gap = pinsker_gap(0.0, 1.0).unwrap();
        assert_eq!(gap.tv, 0.0);
        assert_eq!(gap.sqrt_kl, 0.0);
    }
}
