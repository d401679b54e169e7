//! Experiment configuration: every model parameter in one place.

use serde::{Deserialize, Serialize};

use crate::channel::{ChannelParams, CovertnessBudget};
use crate::error::{Error, Result};

/// How sender-receiver pairs are formed each slot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Pairing {
    /// Each sender picks its nearest receiver.
    SenderCentric,
    /// Each receiver picks its nearest sender.
    ReceiverCentric,
}

/// Transmit-power selection rule for the two-hop scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PowerRule {
    /// `c_tx · l^{-1/2} · n^{-(s/2·(α-2)+1)-ε}`; valid for 0 < s < 1.
    SparseFormula,
    /// `c_tx · l^{-1/2} · n^{-sα/2-ε}`; valid for s ≥ 1.
    DenseFormula,
    /// Largest power on a geometric grid whose pilot-batch maximum warden
    /// power stays within 90% of the sufficient covertness threshold.
    Calibrated,
    /// Fixed power `c_tx`, independent of n. Used by warden-power sweeps
    /// where the received-power law is measured at constant transmit power.
    Constant,
}

/// Throughput accounting mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum LedgerMode {
    /// Credit Shannon rates directly, assuming relays always hold data for
    /// their paired receiver (steady state).
    Fluid,
    /// Store-and-forward buffers; a flow is credited only when data has
    /// physically traversed source→relay→destination (or gone direct).
    PacketBuffer,
}

/// Scheme-level knobs of the two-hop protocol.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeConfig {
    /// Fraction of nodes acting as senders each slot (0 < θ < 1).
    pub theta: f64,
    pub centric: Pairing,
    pub power_rule: PowerRule,
    /// Power coefficient `c_tx` (the constant itself for `Constant`).
    pub c_tx: f64,
    /// Exponent margin ε in the closed-form power rules.
    pub eps_tx: f64,
}

/// All model parameters for one network instance.
///
/// Field names follow the model symbols: `s` scales the warden count
/// `n_w = max(1, round(c_w·n^s))`, `l` is the warden's testing window in
/// channel uses (alternatively given as `lambda` with `l = n^lambda`),
/// `delta` is the KL budget, and `c_p`/`eps_p` fix the preservation radius
/// `r_p = c_p · n^{-(s/2+eps_p)}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkConfig {
    pub n: usize,
    pub s: f64,
    pub alpha: f64,
    pub theta: f64,
    pub delta: f64,
    /// Testing window length in channel uses. Mutually exclusive with
    /// `lambda`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    /// Testing window exponent: `l = n^lambda`, resolved per grid point.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    pub n0: f64,
    pub gain: f64,
    pub c_w: f64,
    pub c_p: f64,
    pub eps_p: f64,
    pub eps_tx: f64,
    pub warden_mobile: bool,
    pub centric: Pairing,
    pub power_rule: PowerRule,
    pub c_tx: f64,
    pub mode: LedgerMode,
    pub seed: u64,
}

impl Default for NetworkConfig {
    fn default() -> Self {
        NetworkConfig {
            n: 1024,
            s: 0.5,
            alpha: 4.0,
            theta: 0.5,
            delta: 0.1,
            l: None,
            lambda: Some(1.0),
            n0: 1.0,
            gain: 1.0,
            c_w: 1.0,
            c_p: 0.45,
            eps_p: 0.02,
            eps_tx: 0.02,
            warden_mobile: false,
            centric: Pairing::SenderCentric,
            power_rule: PowerRule::Calibrated,
            c_tx: 1.0,
            mode: LedgerMode::Fluid,
            seed: 42,
        }
    }
}

impl NetworkConfig {
    /// Check every validity invariant. Called once at the entry of any run;
    /// downstream code may assume a valid configuration.
    // `!(x > 0.0)` rather than `x <= 0.0`: NaN must fail validation too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidConfig(msg));
        if self.n < 2 {
            return fail(format!("n must be >= 2, got {}", self.n));
        }
        if !(self.theta > 0.0 && self.theta < 1.0) {
            return fail(format!("theta must be in (0,1), got {}", self.theta));
        }
        let senders = self.sender_count();
        if senders == 0 || senders >= self.n {
            return fail(format!(
                "degenerate sender/receiver split: round(theta*n) = {senders} of n = {}",
                self.n
            ));
        }
        if !(self.delta > 0.0) {
            return fail(format!("delta must be > 0, got {}", self.delta));
        }
        if !(self.alpha > 2.0) {
            return fail(format!("alpha must be > 2, got {}", self.alpha));
        }
        if !(self.s > 0.0) {
            return fail(format!("s must be > 0, got {}", self.s));
        }
        if !(self.n0 > 0.0) {
            return fail(format!("n0 must be > 0, got {}", self.n0));
        }
        if !(self.gain > 0.0) {
            return fail(format!("gain must be > 0, got {}", self.gain));
        }
        if !(self.c_w > 0.0) || !(self.c_p > 0.0) {
            return fail("c_w and c_p must be > 0".into());
        }
        if !(self.eps_p > 0.0) {
            return fail(format!("eps_p must be > 0, got {}", self.eps_p));
        }
        if self.eps_tx < 0.0 {
            return fail(format!("eps_tx must be >= 0, got {}", self.eps_tx));
        }
        if !(self.c_tx > 0.0) {
            return fail(format!("c_tx must be > 0, got {}", self.c_tx));
        }
        match (self.l, self.lambda) {
            (Some(l), None) => {
                if l < 1 {
                    return fail(format!("l must be >= 1, got {l}"));
                }
            }
            (None, Some(lambda)) => {
                if lambda < 0.0 {
                    return fail(format!("lambda must be >= 0, got {lambda}"));
                }
            }
            (Some(_), Some(_)) => return fail("set either l or lambda, not both".into()),
            (None, None) => return fail("one of l or lambda is required".into()),
        }
        match self.power_rule {
            PowerRule::SparseFormula if self.s >= 1.0 => {
                return fail(format!(
                    "power rule sparse-formula requires 0 < s < 1, got s = {}",
                    self.s
                ));
            }
            PowerRule::DenseFormula if self.s < 1.0 => {
                return fail(format!(
                    "power rule dense-formula requires s >= 1, got s = {}",
                    self.s
                ));
            }
            _ => {}
        }
        Ok(())
    }

    /// Number of senders per slot: `round(θ·n)`.
    pub fn sender_count(&self) -> usize {
        (self.theta * self.n as f64).round() as usize
    }

    /// Warden count `n_w = max(1, round(c_w · n^s))`.
    pub fn warden_count(&self) -> usize {
        let raw = self.c_w * (self.n as f64).powf(self.s);
        (raw.round() as usize).max(1)
    }

    /// Preservation radius `r_p = c_p · n^{-(s/2 + eps_p)}`.
    pub fn preservation_radius(&self) -> f64 {
        self.c_p * (self.n as f64).powf(-(self.s / 2.0 + self.eps_p))
    }

    /// Testing window length, resolving `lambda` against this config's `n`.
    pub fn window_len(&self) -> u64 {
        match (self.l, self.lambda) {
            (Some(l), _) => l,
            (None, Some(lambda)) => ((self.n as f64).powf(lambda).round() as u64).max(1),
            (None, None) => 1,
        }
    }

    pub fn channel(&self) -> ChannelParams {
        ChannelParams {
            alpha: self.alpha,
            gain: self.gain,
            n0: self.n0,
        }
    }

    pub fn budget(&self) -> CovertnessBudget {
        CovertnessBudget::new(self.delta, self.window_len(), self.n0)
    }

    pub fn scheme(&self) -> SchemeConfig {
        SchemeConfig {
            theta: self.theta,
            centric: self.centric,
            power_rule: self.power_rule,
            c_tx: self.c_tx,
            eps_tx: self.eps_tx,
        }
    }

    /// Copy of this config rebased onto another grid point, with a derived
    /// per-(n, trial) seed.
    pub fn at_grid_point(&self, n: usize, seed: u64) -> NetworkConfig {
        NetworkConfig {
            n,
            seed,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_config_is_valid() {
        NetworkConfig::default().validate().unwrap();
    }

    #[test]
    fn degenerate_split_rejected() {
        let cfg = NetworkConfig {
            n: 2,
            theta: 0.2, // round(0.4) = 0 senders
            ..NetworkConfig::default()
        };
        assert!(matches!(cfg.validate(), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn window_resolution() {
        let mut cfg = NetworkConfig {
            n: 1024,
            l: None,
            lambda: Some(1.0),
            ..NetworkConfig::default()
        };
        assert_eq!(cfg.window_len(), 1024);
        cfg.lambda = Some(2.0);
        assert_eq!(cfg.window_len(), 1024 * 1024);
        cfg.lambda = None;
        cfg.l = Some(17);
        assert_eq!(cfg.window_len(), 17);
    }

    #[test]
    fn regime_mismatch_rejected() {
        let cfg = NetworkConfig {
            s: 1.5,
            power_rule: PowerRule::SparseFormula,
            ..NetworkConfig::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = NetworkConfig {
            s: 0.5,
            power_rule: PowerRule::DenseFormula,
            ..NetworkConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn warden_count_floor() {
        let cfg = NetworkConfig {
            n: 4,
            s: 0.5,
            c_w: 0.1,
            ..NetworkConfig::default()
        };
        assert_eq!(cfg.warden_count(), 1);
    }
}
