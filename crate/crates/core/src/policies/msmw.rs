use super::{heavier_first, stage_rank, Selector, StageState};
use crate::model::{ArrivalSample, ConflictGraph, LinkSpec, QueueState, Schedule};

pub(crate) fn select(
    selector: &mut Selector,
    stage: &[u64],
    weight: &[f64],
    graph: &ConflictGraph,
    chosen: &mut [bool],
) {
    selector.select(graph, chosen, |a, b| {
        stage_rank(stage[a])
            .cmp(&stage_rank(stage[b]))
            .then_with(|| heavier_first(weight[a], weight[b]))
    });
}

/// Multi-stage maximum weight: scan `gp_1, ..., gp_M, gp_0`, take the
/// heaviest link (`w_i = Q_i`) of the first non-empty group, drop it and its
/// conflicting links from every group, and repeat until nothing is left.
pub fn msmw_schedule(stages: &StageState, queues: &QueueState, graph: &ConflictGraph) -> Schedule {
    let mut schedule = Schedule::empty(stages.slot, graph.len());
    select(
        &mut Selector::default(),
        &stages.stage,
        &queues.work,
        graph,
        &mut schedule.chosen,
    );
    schedule
}

/// Split backlog kept by 2-MSMW: a round-robin part served from nonzero
/// stages and a max-weight part served from `gp_0`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct DualQueues {
    pub round_robin: Vec<f64>,
    pub max_weight: Vec<f64>,
}

/// A 2-MSMW decision together with the queue each pick drains.
#[derive(Debug, Clone, PartialEq)]
pub struct DualSchedule {
    pub schedule: Schedule,
    /// True when the link was selected from a nonzero-stage group and so
    /// drains its round-robin queue.
    pub from_round_robin: Vec<bool>,
}

impl DualQueues {
    pub fn zeros(n: usize) -> Self {
        Self {
            round_robin: vec![0.0; n],
            max_weight: vec![0.0; n],
        }
    }

    pub fn total(&self, i: usize) -> f64 {
        self.round_robin[i] + self.max_weight[i]
    }

    pub fn grand_total(&self) -> f64 {
        self.round_robin.iter().sum::<f64>() + self.max_weight.iter().sum::<f64>()
    }

    /// Drains one slot of work from the queue that selected each scheduled
    /// link, then splits the new arrivals: up to `1 / delta_i` work units go
    /// to the round-robin queue and the remainder to the max-weight queue.
    pub fn advance(
        &mut self,
        prev_chosen: &[bool],
        prev_from_round_robin: &[bool],
        arrivals: &ArrivalSample,
        links: &[LinkSpec],
    ) {
        for (i, link) in links.iter().enumerate() {
            if prev_chosen[i] {
                let q = if prev_from_round_robin[i] {
                    &mut self.round_robin[i]
                } else {
                    &mut self.max_weight[i]
                };
                *q = (*q - 1.0).max(0.0);
            }
            let work = arrivals.packets[i] * link.work_per_packet();
            let head = work.min(link.frequency_share());
            self.round_robin[i] += head;
            self.max_weight[i] += work - head;
        }
    }
}

pub(crate) fn select_dual(
    selector: &mut Selector,
    stage: &[u64],
    dual: &DualQueues,
    graph: &ConflictGraph,
    chosen: &mut [bool],
) {
    let weight = |i: usize| {
        if stage[i] == 0 {
            dual.max_weight[i]
        } else {
            dual.round_robin[i]
        }
    };
    selector.select(graph, chosen, |a, b| {
        stage_rank(stage[a])
            .cmp(&stage_rank(stage[b]))
            .then_with(|| heavier_first(weight(a), weight(b)))
    });
}

/// 2-MSMW: MSMW's group scan, weighting nonzero-stage links by their
/// round-robin queue and `gp_0` links by their max-weight queue.
pub fn two_msmw_schedule(
    dual: &DualQueues,
    stages: &StageState,
    graph: &ConflictGraph,
) -> DualSchedule {
    let n = graph.len();
    let mut schedule = Schedule::empty(stages.slot, n);
    select_dual(
        &mut Selector::default(),
        &stages.stage,
        dual,
        graph,
        &mut schedule.chosen,
    );
    let from_round_robin = (0..n)
        .map(|i| schedule.chosen[i] && stages.stage[i] != 0)
        .collect();
    DualSchedule {
        schedule,
        from_round_robin,
    }
}
