use super::{heavier_first, Selector};
use crate::model::{ConflictGraph, QueueState, Schedule};

pub(crate) fn select(
    selector: &mut Selector,
    weight: &[f64],
    graph: &ConflictGraph,
    chosen: &mut [bool],
) {
    selector.select(graph, chosen, |a, b| {
        heavier_first(weight[a], weight[b]).then_with(|| graph.degree(a).cmp(&graph.degree(b)))
    });
}

/// Greedy maximal-weight baseline: repeatedly take the largest backlog,
/// preferring low conflict degree and then small id on ties, and discard
/// its neighbors.
pub fn mw_greedy_schedule(queues: &QueueState, graph: &ConflictGraph) -> Schedule {
    let mut schedule = Schedule::empty(0, graph.len());
    select(
        &mut Selector::default(),
        &queues.work,
        graph,
        &mut schedule.chosen,
    );
    schedule
}
