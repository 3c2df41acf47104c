use crate::model::LinkSpec;

/// Per-link compliance with the service frequency constraint: every
/// complete frame `[(k-1) delta + 1, k delta]` inside `1..=horizon` must hold
/// at least one service slot. The trailing partial frame is not checked.
pub fn check_frequency_compliance(
    service_log: &[Vec<u64>],
    links: &[LinkSpec],
    horizon: u64,
) -> Vec<bool> {
    service_log
        .iter()
        .zip(links)
        .map(|(slots, link)| link_compliant(slots, link.delta, horizon))
        .collect()
}

fn link_compliant(slots: &[u64], delta: u64, horizon: u64) -> bool {
    let complete_frames = horizon / delta;
    // next frame index (0-based) still waiting for a service
    let mut next = 0;
    for &s in slots {
        if s == 0 || s > horizon {
            continue;
        }
        let frame = (s - 1) / delta;
        if frame > next {
            return false;
        }
        if frame == next {
            next += 1;
        }
        if next >= complete_frames {
            return true;
        }
    }
    next >= complete_frames
}

/// Gaps between consecutive service slots.
pub fn inter_service_gaps(slots: &[u64]) -> impl Iterator<Item = u64> + '_ {
    slots.windows(2).map(|w| w[1] - w[0])
}

/// Population standard deviation of the inter-service gaps; 0 when there
/// are fewer than two gaps.
pub fn inter_service_std(slots: &[u64]) -> f64 {
    let n = slots.len().saturating_sub(1);
    if n < 2 {
        return 0.0;
    }
    let mean = inter_service_gaps(slots).sum::<u64>() as f64 / n as f64;
    let var = inter_service_gaps(slots)
        .map(|g| (g as f64 - mean).powi(2))
        .sum::<f64>()
        / n as f64;
    var.sqrt()
}
