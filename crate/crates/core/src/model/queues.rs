use super::{ArrivalSample, LinkSpec};
use crate::error::{check_len, Result};

/// The set of links transmitting in one slot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub slot: u64,
    pub chosen: Vec<bool>,
}

impl Schedule {
    pub fn empty(slot: u64, n: usize) -> Self {
        Self {
            slot,
            chosen: vec![false; n],
        }
    }

    /// Schedule from 1-based link ids.
    pub fn from_ids(slot: u64, n: usize, ids: &[usize]) -> Self {
        let mut s = Self::empty(slot, n);
        for &id in ids {
            s.chosen[id - 1] = true;
        }
        s
    }

    /// 1-based ids of the scheduled links, ascending.
    pub fn ids(&self) -> Vec<usize> {
        self.chosen
            .iter()
            .enumerate()
            .filter_map(|(i, &c)| c.then_some(i + 1))
            .collect()
    }

    pub fn count(&self) -> usize {
        self.chosen.iter().filter(|&&c| c).count()
    }

    pub fn is_scheduled(&self, idx: usize) -> bool {
        self.chosen[idx]
    }
}

/// Per-link work backlog `Q_i` in slot units.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct QueueState {
    pub work: Vec<f64>,
}

impl QueueState {
    pub fn zeros(n: usize) -> Self {
        Self { work: vec![0.0; n] }
    }

    pub fn from_work(work: Vec<f64>) -> Self {
        Self { work }
    }

    pub fn total(&self) -> f64 {
        self.work.iter().sum()
    }

    /// Undelivered packets per link, `Q_i * r_i * c_i`.
    pub fn packet_backlog(&self, links: &[LinkSpec]) -> Vec<f64> {
        self.work
            .iter()
            .zip(links)
            .map(|(q, l)| q * l.rate * l.channel)
            .collect()
    }

    /// Advances one slot in place and returns the total work drained by
    /// `prev` (each scheduled link drains `min(Q_i, 1)`).
    pub fn advance(&mut self, prev: &[bool], arrivals: &ArrivalSample, links: &[LinkSpec]) -> f64 {
        let mut drained = 0.0;
        for (i, q) in self.work.iter_mut().enumerate() {
            if prev[i] {
                let d = q.min(1.0);
                drained += d;
                *q = (*q - 1.0).max(0.0);
            }
            *q += arrivals.packets[i] * links[i].work_per_packet();
        }
        drained
    }
}

/// One step of the queue recursion. `prev` is the schedule of slot `t - 1`
/// and `arrivals` the packets of slot `t`.
pub fn step_queues(
    state: &QueueState,
    prev: &Schedule,
    arrivals: &ArrivalSample,
    links: &[LinkSpec],
) -> Result<QueueState> {
    let n = links.len();
    check_len("queue state", state.work.len(), n)?;
    check_len("schedule", prev.chosen.len(), n)?;
    check_len("arrival sample", arrivals.packets.len(), n)?;
    let mut next = state.clone();
    next.advance(&prev.chosen, arrivals, links);
    Ok(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::uniform_links;

    const TOL: f64 = 1e-12;

    fn unit_links(n: usize) -> Vec<LinkSpec> {
        uniform_links(&vec![0.0; n], 1.0, 1.0, 4).unwrap()
    }

    fn work(w: &[f64]) -> ArrivalSample {
        ArrivalSample {
            packets: w.to_vec(),
        }
    }

    #[test]
    fn worked_example_slot() {
        let links = unit_links(2);
        let q = QueueState::from_work(vec![0.5, 0.25]);
        let next = step_queues(
            &q,
            &Schedule::from_ids(1, 2, &[1]),
            &work(&[0.5, 0.125]),
            &links,
        )
        .unwrap();
        assert!((next.work[0] - 0.5).abs() < TOL);
        assert!((next.work[1] - 0.375).abs() < TOL);
    }

    #[test]
    fn empty_system_is_fixed_point() {
        let links = unit_links(2);
        let q = QueueState::zeros(2);
        let next = step_queues(&q, &Schedule::empty(1, 2), &work(&[0.0, 0.0]), &links).unwrap();
        assert_eq!(next.work, vec![0.0, 0.0]);
    }

    #[test]
    fn drain_clamps_at_zero() {
        let links = unit_links(1);
        let mut q = QueueState::from_work(vec![0.3]);
        let drained = q.advance(&[true], &work(&[0.7]), &links);
        assert!((q.work[0] - 0.7).abs() < TOL);
        assert!((drained - 0.3).abs() < TOL);
    }

    #[test]
    fn arrivals_scaled_by_rate_and_channel() {
        let links = uniform_links(&[0.0], 2.0, 0.25, 4).unwrap();
        let mut q = QueueState::zeros(1);
        q.advance(&[false], &work(&[1.0]), &links);
        assert_eq!(q.work[0], 2.0);
        assert_eq!(q.packet_backlog(&links), vec![1.0]);
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let links = unit_links(2);
        let q = QueueState::zeros(3);
        assert!(step_queues(&q, &Schedule::empty(1, 2), &work(&[0.0, 0.0]), &links).is_err());
    }

    #[test]
    fn schedule_ids_round_trip() {
        let s = Schedule::from_ids(7, 5, &[2, 5]);
        assert_eq!(s.ids(), vec![2, 5]);
        assert_eq!(s.count(), 2);
    }
}
