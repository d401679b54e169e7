//! Monte Carlo simulator and analysis toolkit for covert communication over
//! a mobile wireless ad hoc network.
//!
//! `n` mobile nodes are re-placed uniformly at random in a unit-area disk at
//! every time slot and communicate via a two-hop relay scheme while staying
//! undetected by `Θ(n^s)` non-colluding wardens. Senders inside a
//! *preservation region* (a disk of radius `r_p` around each warden) stay
//! silent, which lets the remaining senders transmit with higher power while
//! the Kullback-Leibler divergence seen by every warden stays below a budget
//! `δ`.
//!
//! The crate is organized around five building blocks:
//!
//! - [`geometry`]: node/warden placement, sender-receiver pairing, nearest
//!   neighbor distance laws, preservation-region membership.
//! - [`channel`]: path-loss power accumulation, Gaussian KL divergence,
//!   sufficient/necessary covertness thresholds, Pinsker gap.
//! - [`scheme`]: the two-hop protocol: transmit-power rules, per-slot SINR
//!   rates, throughput ledgers (fluid and packet-buffer), simulation driver.
//! - [`theory`]: closed-form throughput and warden-power scaling exponents
//!   used as regression oracles.
//! - [`sweep`] / [`validate`] / [`emit`]: seeded n-grid experiments, log-log
//!   regression against the oracles, invariant suites, CSV/JSON output.
//!
//! All randomness flows through counter-derived [`rng`] streams, so any run
//! is reproducible bit-for-bit regardless of thread count.

pub mod channel;
pub mod cli;
pub mod config;
pub mod emit;
pub mod error;
pub mod geometry;
pub mod rng;
pub mod scheme;
pub mod stats;
pub mod sweep;
pub mod theory;
pub mod validate;

pub use config::NetworkConfig;
pub use error::{Error, Result};
