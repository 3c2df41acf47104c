//! Scheduling policies. Every policy maps the slot state to a maximal
//! conflict-free set of links; ties in any argmax go to the smallest link id.

mod greedy;
mod msmw;
mod rto;
mod stages;

pub use greedy::mw_greedy_schedule;
pub use msmw::{msmw_schedule, two_msmw_schedule, DualQueues, DualSchedule};
pub use rto::{rto_schedule, RtoWeights};
pub use stages::{update_stages, GroupPartition, StageState};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_len, Error, Result};
use crate::model::{ConflictGraph, Network, QueueState, Schedule};

/// Policy selector. RTO carries optional per-link weight overrides.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PolicyKind {
    Msmw,
    Rto(RtoParams),
    MaxWeightGreedy,
    TwoMsmw,
}

/// Optional per-link overrides of RTO's `alpha_i` (backlog factor) and
/// `beta_i` (time-since-service factor).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RtoParams {
    pub alpha: Option<Vec<f64>>,
    pub beta: Option<Vec<f64>>,
}

impl PolicyKind {
    pub fn rto() -> Self {
        PolicyKind::Rto(RtoParams::default())
    }

    pub fn name(&self) -> &'static str {
        match self {
            PolicyKind::Msmw => "msmw",
            PolicyKind::Rto(_) => "rto",
            PolicyKind::MaxWeightGreedy => "mw-greedy",
            PolicyKind::TwoMsmw => "2-msmw",
        }
    }

    pub fn check_network(&self, network: &Network) -> Result<()> {
        if let PolicyKind::Rto(params) = self {
            if !network.graph.is_collocated() {
                return Err(Error::UnsupportedPolicy {
                    policy: "rto",
                    reason: "RTO only applies to collocated networks".into(),
                });
            }
            RtoWeights::resolve(params, &network.links)?;
        }
        Ok(())
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "msmw" => Ok(PolicyKind::Msmw),
            "rto" => Ok(PolicyKind::rto()),
            "mw-greedy" | "mw_greedy" | "max-weight" | "maxweight" => {
                Ok(PolicyKind::MaxWeightGreedy)
            }
            "2-msmw" | "2msmw" | "two-msmw" | "two_msmw" => Ok(PolicyKind::TwoMsmw),
            other => Err(Error::Config(format!(
                "unknown policy `{other}` (expected msmw, rto, mw-greedy or 2-msmw)"
            ))),
        }
    }
}

/// Scratch buffers for the "sort by priority, then take greedily" selection
/// shared by the multi-pick policies.
///
/// Taking the first unblocked link in priority order, blocking its
/// neighbors, and repeating is the same as repeatedly taking the argmax of
/// the highest-priority non-empty group, because removals never reorder the
/// survivors.
#[derive(Debug, Clone, Default)]
pub(crate) struct Selector {
    order: Vec<usize>,
    blocked: Vec<bool>,
}

impl Selector {
    pub(crate) fn select<F>(&mut self, graph: &ConflictGraph, chosen: &mut [bool], mut priority: F)
    where
        F: FnMut(usize, usize) -> Ordering,
    {
        let n = graph.len();
        self.order.clear();
        self.order.extend(0..n);
        // the comparator ends in an id tie-break, so the order is total
        self.order
            .sort_unstable_by(|&a, &b| priority(a, b).then(a.cmp(&b)));
        self.blocked.clear();
        self.blocked.resize(n, false);
        chosen.iter_mut().for_each(|c| *c = false);
        for &i in &self.order {
            if self.blocked[i] {
                continue;
            }
            chosen[i] = true;
            self.blocked[i] = true;
            for &j in graph.neighbors(i) {
                self.blocked[j] = true;
            }
        }
    }
}

/// Stage rank used for scanning: unserved links by ascending stage, then
/// the stage-0 group last.
#[inline]
pub(crate) fn stage_rank(stage: u64) -> u64 {
    if stage == 0 {
        u64::MAX
    } else {
        stage
    }
}

/// Descending order on weights.
#[inline]
pub(crate) fn heavier_first(a: f64, b: f64) -> Ordering {
    b.total_cmp(&a)
}

/// One slot's decision. `from_round_robin[i]` is set when link i was picked
/// from a nonzero-stage group (always false for stage-agnostic policies).
#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub schedule: Schedule,
    pub from_round_robin: Vec<bool>,
}

/// Reusable per-run scheduler for a fixed policy and network.
#[derive(Debug, Clone)]
pub struct Scheduler {
    kind: PolicyKind,
    rto: Option<RtoWeights>,
    selector: Selector,
}

impl Scheduler {
    pub fn new(kind: &PolicyKind, network: &Network) -> Result<Self> {
        kind.check_network(network)?;
        let rto = match kind {
            PolicyKind::Rto(params) => Some(RtoWeights::resolve(params, &network.links)?),
            _ => None,
        };
        Ok(Self {
            kind: kind.clone(),
            rto,
            selector: Selector::default(),
        })
    }

    pub fn kind(&self) -> &PolicyKind {
        &self.kind
    }

    /// Writes the decision for slot `stages.slot` into `out`. `dual` must be
    /// provided for 2-MSMW and is ignored otherwise.
    pub fn decide(
        &mut self,
        stages: &StageState,
        queues: &QueueState,
        dual: Option<&DualQueues>,
        graph: &ConflictGraph,
        out: &mut Decision,
    ) -> Result<()> {
        let n = graph.len();
        check_len("queue state", queues.work.len(), n)?;
        check_len("stage state", stages.len(), n)?;
        out.schedule.slot = stages.slot;
        out.schedule.chosen.resize(n, false);
        out.from_round_robin.clear();
        out.from_round_robin.resize(n, false);
        let chosen = &mut out.schedule.chosen;
        match &self.kind {
            PolicyKind::Msmw => {
                msmw::select(
                    &mut self.selector,
                    &stages.stage,
                    &queues.work,
                    graph,
                    chosen,
                );
                mark_round_robin(&stages.stage, chosen, &mut out.from_round_robin);
            }
            PolicyKind::TwoMsmw => {
                let dual = dual.ok_or_else(|| Error::Config("2-MSMW needs dual queues".into()))?;
                check_len("dual queues", dual.round_robin.len(), n)?;
                msmw::select_dual(&mut self.selector, &stages.stage, dual, graph, chosen);
                mark_round_robin(&stages.stage, chosen, &mut out.from_round_robin);
            }
            PolicyKind::MaxWeightGreedy => {
                greedy::select(&mut self.selector, &queues.work, graph, chosen);
            }
            PolicyKind::Rto(_) => {
                let weights = self.rto.as_ref().expect("resolved in new()");
                let pick = weights.argmax(&queues.work, &stages.since_service);
                chosen.iter_mut().for_each(|c| *c = false);
                if let Some(i) = pick {
                    chosen[i] = true;
                }
            }
        }
        Ok(())
    }
}

fn mark_round_robin(stage: &[u64], chosen: &[bool], out: &mut [bool]) {
    for i in 0..stage.len() {
        out[i] = chosen[i] && stage[i] != 0;
    }
}

impl Decision {
    pub fn empty(n: usize) -> Self {
        Self {
            schedule: Schedule::empty(0, n),
            from_round_robin: vec![false; n],
        }
    }
}
