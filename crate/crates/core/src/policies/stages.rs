use crate::error::{check_len, Result};
use crate::model::{LinkSpec, Schedule};

/// Per-link frame bookkeeping at the start of slot `slot`.
///
/// Frames are aligned to slot 1: the k-th frame of link i spans slots
/// `(k-1) * delta_i + 1 ..= k * delta_i`. The stage of a link is 0 once it
/// has been served in its current frame and otherwise the number of slots
/// left in the frame, counting the current one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageState {
    pub slot: u64,
    pub stage: Vec<u64>,
    pub served_in_frame: Vec<bool>,
    pub last_service: Vec<Option<u64>>,
    /// Time since last service, `t - last_service` (or `t` if never served).
    pub since_service: Vec<u64>,
}

impl StageState {
    /// State before slot 1; call [`advance`](Self::advance) with `t = 1`.
    pub fn new(n: usize) -> Self {
        Self {
            slot: 0,
            stage: vec![0; n],
            served_in_frame: vec![false; n],
            last_service: vec![None; n],
            since_service: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.stage.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stage.is_empty()
    }

    /// Moves to slot `t`, crediting `prev` (the decision of slot `t - 1`)
    /// to the frame it belongs to.
    pub fn advance(&mut self, t: u64, links: &[LinkSpec], prev: &[bool]) {
        debug_assert!(t >= 1);
        self.slot = t;
        for (i, link) in links.iter().enumerate() {
            if prev[i] {
                self.served_in_frame[i] = true;
                self.last_service[i] = Some(t - 1);
            }
            let offset = (t - 1) % link.delta;
            if offset == 0 {
                self.served_in_frame[i] = false;
            }
            self.stage[i] = if self.served_in_frame[i] {
                0
            } else {
                link.delta - offset
            };
            self.since_service[i] = t - self.last_service[i].unwrap_or(0);
        }
    }
}

/// Stage update for slot `t` given the slot `t - 1` decision (empty at `t = 1`).
pub fn update_stages(
    stages: &StageState,
    t: u64,
    links: &[LinkSpec],
    prev: &Schedule,
) -> Result<StageState> {
    check_len("stage state", stages.len(), links.len())?;
    check_len("schedule", prev.chosen.len(), links.len())?;
    let mut next = stages.clone();
    next.advance(t, links, &prev.chosen);
    Ok(next)
}

/// Links grouped by stage: `groups[0]` holds the stage-0 links, `groups[1..]`
/// the unserved links by strictly increasing stage. Ids are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPartition {
    pub groups: Vec<Vec<usize>>,
    /// Stage value shared by each group (0 for `groups[0]`).
    pub stages: Vec<u64>,
}

impl GroupPartition {
    pub fn from_stages(stage: &[u64]) -> Self {
        let mut distinct: Vec<u64> = stage.iter().copied().filter(|&s| s > 0).collect();
        distinct.sort_unstable();
        distinct.dedup();
        let mut stages = vec![0];
        stages.extend(distinct);
        let mut groups = vec![Vec::new(); stages.len()];
        for (i, &s) in stage.iter().enumerate() {
            let g = stages.binary_search(&s).expect("every stage has a group");
            groups[g].push(i);
        }
        Self { groups, stages }
    }

    /// Number of nonzero-stage groups, `M`.
    pub fn nonzero_groups(&self) -> usize {
        self.groups.len() - 1
    }

    /// Scan order used by the scheduler: `gp_1, ..., gp_M, gp_0`.
    pub fn scan_order(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.groups[1..]
            .iter()
            .chain(std::iter::once(&self.groups[0]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::uniform_links;

    fn links(deltas: &[u64]) -> Vec<LinkSpec> {
        deltas
            .iter()
            .enumerate()
            .map(|(i, &d)| LinkSpec::new(i + 1, 0.0, 1.0, 1.0, d).unwrap())
            .collect()
    }

    #[test]
    fn worked_example_stages() {
        let l = links(&[2, 4]);
        let mut st = StageState::new(2);
        st.advance(1, &l, &[false, false]);
        assert_eq!(st.stage, vec![2, 4]);
        st.advance(2, &l, &[true, false]);
        assert_eq!(st.stage, vec![0, 3]);
        st.advance(3, &l, &[false, true]);
        assert_eq!(st.stage, vec![2, 0]);
        st.advance(4, &l, &[true, false]);
        assert_eq!(st.stage, vec![0, 0]);
    }

    #[test]
    fn unit_frames_reset_every_slot() {
        let l = links(&[1]);
        let mut st = StageState::new(1);
        for t in 1..10 {
            st.advance(t, &l, &[t % 2 == 0]);
            assert_eq!(st.stage[0], 1);
            assert!(!st.served_in_frame[0]);
        }
    }

    #[test]
    fn time_since_service() {
        let l = links(&[5]);
        let mut st = StageState::new(1);
        st.advance(1, &l, &[false]);
        assert_eq!(st.since_service[0], 1);
        st.advance(2, &l, &[true]);
        assert_eq!(st.since_service[0], 1);
        assert_eq!(st.last_service[0], Some(1));
        st.advance(3, &l, &[false]);
        assert_eq!(st.since_service[0], 2);
    }

    #[test]
    fn update_checks_dimensions() {
        let l = uniform_links(&[0.0, 0.0], 1.0, 1.0, 3).unwrap();
        let st = StageState::new(2);
        assert!(update_stages(&st, 1, &l, &Schedule::empty(0, 3)).is_err());
        let next = update_stages(&st, 1, &l, &Schedule::empty(0, 2)).unwrap();
        assert_eq!(next.stage, vec![3, 3]);
    }

    #[test]
    fn partition_orders_groups() {
        let p = GroupPartition::from_stages(&[3, 0, 1, 3, 0]);
        assert_eq!(p.groups, vec![vec![1, 4], vec![2], vec![0, 3]]);
        assert_eq!(p.stages, vec![0, 1, 3]);
        assert_eq!(p.nonzero_groups(), 2);
        let order: Vec<_> = p.scan_order().cloned().collect();
        assert_eq!(order, vec![vec![2], vec![0, 3], vec![1, 4]]);
        let all_served = GroupPartition::from_stages(&[0, 0]);
        assert_eq!(all_served.nonzero_groups(), 0);
    }
}
