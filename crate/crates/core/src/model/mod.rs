//! Network model: links, the conflict graph, arrival processes and the
//! slot-unit queue recursion `Q[t] = max(Q[t-1] - s[t-1], 0) + A[t] / (r c)`.

mod arrivals;
mod geometric;
mod graph;
mod queues;

pub use arrivals::{sample_arrivals, ArrivalMode, ArrivalSample};
pub use geometric::{build_geometric_network, GeometricLayout, GeometricParams};
pub use graph::ConflictGraph;
pub use queues::{step_queues, QueueState, Schedule};

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};

/// Static parameters of one link.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkSpec {
    /// 1-based link index.
    pub id: usize,
    /// Expected packet arrivals per slot.
    pub lambda: f64,
    /// Packets delivered by one successful slot.
    pub rate: f64,
    /// Probability that a scheduled slot succeeds.
    pub channel: f64,
    /// Service frequency constraint: at least one service per frame of
    /// `delta` slots.
    pub delta: u64,
}

impl LinkSpec {
    pub fn new(id: usize, lambda: f64, rate: f64, channel: f64, delta: u64) -> Result<Self> {
        let link = Self {
            id,
            lambda,
            rate,
            channel,
            delta,
        };
        link.validate()?;
        Ok(link)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| {
            Err(Error::Config(format!(
                "link {}: {what} (lambda={}, r={}, c={}, delta={})",
                self.id, self.lambda, self.rate, self.channel, self.delta
            )))
        };
        if !(self.lambda.is_finite() && self.lambda >= 0.0) {
            return bad("arrival rate must be finite and non-negative");
        }
        if !(self.rate.is_finite() && self.rate > 0.0) {
            return bad("transmission rate must be positive");
        }
        if !(self.channel > 0.0 && self.channel <= 1.0) {
            return bad("channel success probability must lie in (0, 1]");
        }
        if self.delta == 0 {
            return bad("frame length must be at least one slot");
        }
        Ok(())
    }

    /// Expected slots of work per packet, `1 / (r c)`.
    pub fn work_per_packet(&self) -> f64 {
        1.0 / (self.rate * self.channel)
    }

    /// Offered load in slot units, `lambda / (r c)`.
    pub fn work_rate(&self) -> f64 {
        self.lambda * self.work_per_packet()
    }

    /// Fraction of slots reserved by the frequency constraint, `1 / delta`.
    pub fn frequency_share(&self) -> f64 {
        1.0 / self.delta as f64
    }
}

/// Link set plus its conflict graph.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    pub links: Vec<LinkSpec>,
    pub graph: ConflictGraph,
}

impl Network {
    pub fn new(links: Vec<LinkSpec>, graph: ConflictGraph) -> Result<Self> {
        check_len("conflict graph", graph.len(), links.len())?;
        if links.is_empty() {
            return Err(Error::Config("network has no links".into()));
        }
        for (idx, link) in links.iter().enumerate() {
            link.validate()?;
            if link.id != idx + 1 {
                return Err(Error::Config(format!(
                    "link at position {} has id {}, ids must run 1..N in order",
                    idx + 1,
                    link.id
                )));
            }
        }
        Ok(Self { links, graph })
    }

    /// Every pair of links conflicts.
    pub fn collocated(links: Vec<LinkSpec>) -> Result<Self> {
        let n = links.len();
        Self::new(links, ConflictGraph::complete(n))
    }

    pub fn len(&self) -> usize {
        self.links.len()
    }

    pub fn is_empty(&self) -> bool {
        self.links.is_empty()
    }
}

/// Builds links `1..=N` sharing `rate`, `channel` and `delta`, one per entry
/// of `lambdas`.
pub fn uniform_links(
    lambdas: &[f64],
    rate: f64,
    channel: f64,
    delta: u64,
) -> Result<Vec<LinkSpec>> {
    lambdas
        .iter()
        .enumerate()
        .map(|(i, &lambda)| LinkSpec::new(i + 1, lambda, rate, channel, delta))
        .collect()
}
