//! Node and warden geometry in the unit-area disk.
//!
//! Positions are re-sampled i.i.d. uniformly at every slot (the simplest
//! stationary ergodic mobility process). Sampling uses the inverse-CDF
//! transform on the radius (`r = R·√u`), which is exactly uniform over the
//! disk and free of rejection loops, so parallel slot streams never diverge.

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{NetworkConfig, Pairing};
use crate::error::{Error, Result};
use crate::rng::{self, Domain};

/// Node index within a placement.
pub type NodeId = usize;

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn dist_sq(&self, other: &Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn dist(&self, other: &Point) -> f64 {
        self.dist_sq(other).sqrt()
    }

    fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }
}

/// The network area: a disk of unit area (radius `1/√π`).
#[derive(Debug, Clone, Copy)]
pub struct Disk {
    pub radius: f64,
}

impl Disk {
    pub fn unit_area() -> Disk {
        Disk {
            radius: 1.0 / std::f64::consts::PI.sqrt(),
        }
    }

    pub fn area(&self) -> f64 {
        std::f64::consts::PI * self.radius * self.radius
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.norm() <= self.radius
    }

    /// One exactly-uniform point drawn from the disk.
    pub fn sample(&self, rng: &mut impl Rng) -> Point {
        let u: f64 = rng.random();
        let v: f64 = rng.random();
        let r = self.radius * u.sqrt();
        let angle = 2.0 * std::f64::consts::PI * v;
        Point {
            x: r * angle.cos(),
            y: r * angle.sin(),
        }
    }
}

/// Positions of all nodes and wardens for one slot.
#[derive(Debug, Clone)]
pub struct Placement {
    pub nodes: Vec<Point>,
    pub wardens: Vec<Point>,
    pub slot: u64,
}

impl Placement {
    /// Build a placement from explicit coordinates, checking containment.
    pub fn from_points(nodes: Vec<Point>, wardens: Vec<Point>, slot: u64) -> Result<Placement> {
        let disk = Disk::unit_area();
        for p in nodes.iter().chain(wardens.iter()) {
            if !disk.contains(p) {
                return Err(Error::InvalidConfig(format!(
                    "point ({}, {}) lies outside the unit-area disk",
                    p.x, p.y
                )));
            }
        }
        Ok(Placement {
            nodes,
            wardens,
            slot,
        })
    }
}

/// Preservation-region parameters realized for one `n`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct PreservationSpec {
    pub c_p: f64,
    pub eps_p: f64,
    /// `r_p = c_p · n^{-(s/2 + eps_p)}`.
    pub r_p: f64,
}

impl PreservationSpec {
    pub fn for_config(cfg: &NetworkConfig) -> PreservationSpec {
        PreservationSpec {
            c_p: cfg.c_p,
            eps_p: cfg.eps_p,
            r_p: cfg.preservation_radius(),
        }
    }

    /// Nominal total preservation area `n_w · π · r_p²` (ignoring overlap).
    pub fn total_area(&self, n_w: usize) -> f64 {
        n_w as f64 * std::f64::consts::PI * self.r_p * self.r_p
    }
}

/// Sender/receiver roles, pairs, and suppression flags for one slot.
///
/// `pairs` is a relation rather than a map: under sender-centric pairing a
/// receiver may serve several senders, and under receiver-centric pairing a
/// sender may serve several receivers.
#[derive(Debug, Clone)]
pub struct PairAssignment {
    /// Sender ids, ascending.
    pub senders: Vec<NodeId>,
    /// Receiver ids, ascending.
    pub receivers: Vec<NodeId>,
    /// `(sender, receiver)` pairs. Sender-centric: one entry per sender.
    /// Receiver-centric: one entry per receiver.
    pub pairs: Vec<(NodeId, NodeId)>,
    /// Senders standing within `r_p` of some warden; they stay silent.
    pub suppressed: Vec<NodeId>,
    pub centric: Pairing,
}

impl PairAssignment {
    pub fn is_suppressed(&self, sender: NodeId) -> bool {
        self.suppressed.binary_search(&sender).is_ok()
    }
}

/// Nearest-neighbor distances behind the three closed-form distance laws.
#[derive(Debug, Clone)]
pub struct NearestDistances {
    /// Per pair: distance between the paired sender and receiver.
    pub pair_dist: Vec<f64>,
    /// Per receiver: distance to the nearest sender.
    pub rcv_nearest_sender: Vec<f64>,
    /// Per node: distance to the nearest other node.
    pub node_nearest_node: Vec<f64>,
}

/// Sample node and warden positions for one slot.
///
/// Nodes are re-drawn every slot. Wardens are re-drawn only when
/// `warden_mobile` is set; otherwise every slot reuses the slot-0 warden
/// stream, so their positions are identical across time.
pub fn sample_placement(cfg: &NetworkConfig, slot: u64) -> Placement {
    let disk = Disk::unit_area();
    let mut node_rng = rng::stream(cfg.seed, Domain::Nodes, slot);
    let nodes = (0..cfg.n).map(|_| disk.sample(&mut node_rng)).collect();
    let warden_slot = if cfg.warden_mobile { slot } else { 0 };
    let mut warden_rng = rng::stream(cfg.seed, Domain::Wardens, warden_slot);
    let wardens = (0..cfg.warden_count())
        .map(|_| disk.sample(&mut warden_rng))
        .collect();
    Placement {
        nodes,
        wardens,
        slot,
    }
}

/// Draw roles uniformly at random and pair senders with receivers.
///
/// Ties in the nearest-neighbor search break toward the lowest node id,
/// which keeps replays deterministic under a fixed seed. Suppression is
/// computed against all wardens with a strict `< r_p` test.
pub fn assign_pairs(
    placement: &Placement,
    theta: f64,
    centric: Pairing,
    r_p: f64,
    rng: &mut impl Rng,
) -> Result<PairAssignment> {
    let n = placement.nodes.len();
    let sender_count = (theta * n as f64).round() as usize;
    if sender_count == 0 || sender_count >= n {
        return Err(Error::InvalidConfig(format!(
            "degenerate sender/receiver split: {sender_count} senders of {n} nodes"
        )));
    }

    let mut ids: Vec<NodeId> = (0..n).collect();
    ids.shuffle(rng);
    let mut senders: Vec<NodeId> = ids[..sender_count].to_vec();
    let mut receivers: Vec<NodeId> = ids[sender_count..].to_vec();
    senders.sort_unstable();
    receivers.sort_unstable();

    let pairs = match centric {
        Pairing::SenderCentric => senders
            .par_iter()
            .map(|&s| (s, nearest(placement, s, &receivers)))
            .collect(),
        Pairing::ReceiverCentric => receivers
            .par_iter()
            .map(|&r| (nearest(placement, r, &senders), r))
            .collect(),
    };

    let r_p_sq = r_p * r_p;
    let suppressed: Vec<NodeId> = senders
        .iter()
        .copied()
        .filter(|&s| {
            let p = placement.nodes[s];
            placement.wardens.iter().any(|w| p.dist_sq(w) < r_p_sq)
        })
        .collect();

    Ok(PairAssignment {
        senders,
        receivers,
        pairs,
        suppressed,
        centric,
    })
}

/// Index (among `candidates`, ascending ids) of the point nearest to `from`.
fn nearest(placement: &Placement, from: NodeId, candidates: &[NodeId]) -> NodeId {
    let origin = placement.nodes[from];
    let mut best = candidates[0];
    let mut best_d = origin.dist_sq(&placement.nodes[best]);
    for &c in &candidates[1..] {
        let d = origin.dist_sq(&placement.nodes[c]);
        if d < best_d || (d == best_d && c < best) {
            best_d = d;
            best = c;
        }
    }
    best
}

/// Exact Euclidean nearest-neighbor distances for the three distance laws.
pub fn nearest_distances(placement: &Placement, assignment: &PairAssignment) -> NearestDistances {
    let pair_dist = assignment
        .pairs
        .iter()
        .map(|&(s, r)| placement.nodes[s].dist(&placement.nodes[r]))
        .collect();

    let rcv_nearest_sender = assignment
        .receivers
        .par_iter()
        .map(|&r| {
            let p = placement.nodes[r];
            assignment
                .senders
                .iter()
                .map(|&s| p.dist_sq(&placement.nodes[s]))
                .fold(f64::INFINITY, f64::min)
                .sqrt()
        })
        .collect();

    let node_nearest_node = (0..placement.nodes.len())
        .into_par_iter()
        .map(|i| {
            let p = placement.nodes[i];
            placement
                .nodes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, q)| p.dist_sq(q))
                .fold(f64::INFINITY, f64::min)
                .sqrt()
        })
        .collect();

    NearestDistances {
        pair_dist,
        rcv_nearest_sender,
        node_nearest_node,
    }
}

/// Closed-form CDF of the sender→nearest-receiver distance:
/// `F(z) = 1 − exp(−π z² n(1−θ))`.
pub fn pair_distance_cdf(n: usize, theta: f64) -> impl Fn(f64) -> f64 {
    let rate = std::f64::consts::PI * n as f64 * (1.0 - theta);
    move |z: f64| 1.0 - (-rate * z * z).exp()
}

/// Closed-form CDF of the receiver→nearest-sender distance:
/// `F_r(z) = 1 − exp(−π z² nθ)`.
pub fn receiver_sender_cdf(n: usize, theta: f64) -> impl Fn(f64) -> f64 {
    let rate = std::f64::consts::PI * n as f64 * theta;
    move |z: f64| 1.0 - (-rate * z * z).exp()
}

/// Closed-form CDF of the node→nearest-node distance:
/// `F_s(z) = 1 − exp(−π z² n)`.
pub fn node_node_cdf(n: usize) -> impl Fn(f64) -> f64 {
    let rate = std::f64::consts::PI * n as f64;
    move |z: f64| 1.0 - (-rate * z * z).exp()
}
