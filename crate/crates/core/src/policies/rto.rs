use super::{RtoParams, StageState};
use crate::error::{check_len, Error, Result};
use crate::model::{ConflictGraph, LinkSpec, QueueState, Schedule};

/// Resolved RTO weight factors: `w_i = alpha_i * Q_i + beta_i * T_i`.
/// Defaults are `alpha_i = 1 / (r_i c_i)` and `beta_i = 1 / delta_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct RtoWeights {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

impl RtoWeights {
    pub fn defaults(links: &[LinkSpec]) -> Self {
        Self {
            alpha: links.iter().map(LinkSpec::work_per_packet).collect(),
            beta: links.iter().map(LinkSpec::frequency_share).collect(),
        }
    }

    pub fn resolve(params: &RtoParams, links: &[LinkSpec]) -> Result<Self> {
        let mut w = Self::defaults(links);
        if let Some(alpha) = &params.alpha {
            check_len("rto alpha", alpha.len(), links.len())?;
            w.alpha = alpha.clone();
        }
        if let Some(beta) = &params.beta {
            check_len("rto beta", beta.len(), links.len())?;
            w.beta = beta.clone();
        }
        if w.alpha.iter().chain(&w.beta).any(|x| !x.is_finite()) {
            return Err(Error::Config("rto weight factors must be finite".into()));
        }
        Ok(w)
    }

    pub(crate) fn argmax(&self, work: &[f64], since_service: &[u64]) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for i in 0..work.len() {
            let w = self.alpha[i] * work[i] + self.beta[i] * since_service[i] as f64;
            // strict > keeps the smallest id on ties
            if best.is_none_or(|(_, bw)| w > bw) {
                best = Some((i, w));
            }
        }
        best.map(|(i, _)| i)
    }
}

/// Regulated throughput-optimal comparison policy for collocated networks:
/// the single link with the largest `alpha_i * Q_i + beta_i * T_i`.
pub fn rto_schedule(
    queues: &QueueState,
    stages: &StageState,
    links: &[LinkSpec],
    graph: &ConflictGraph,
    weights: Option<&RtoWeights>,
) -> Result<Schedule> {
    let n = links.len();
    check_len("queue state", queues.work.len(), n)?;
    check_len("stage state", stages.len(), n)?;
    check_len("conflict graph", graph.len(), n)?;
    if !graph.is_collocated() {
        return Err(Error::UnsupportedPolicy {
            policy: "rto",
            reason: "RTO only applies to collocated networks".into(),
        });
    }
    let defaults;
    let weights = match weights {
        Some(w) => w,
        None => {
            defaults = RtoWeights::defaults(links);
            &defaults
        }
    };
    let mut schedule = Schedule::empty(stages.slot, n);
    if let Some(i) = weights.argmax(&queues.work, &stages.since_service) {
        schedule.chosen[i] = true;
    }
    Ok(schedule)
}
