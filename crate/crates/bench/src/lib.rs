//! Fixtures shared by the criterion benches.

use msmw::model::{uniform_links, QueueState};
use msmw::policies::StageState;
use msmw::scenarios::{asymptotic_rates, general_network};
use msmw::{Network, Result};

/// Collocated network with `lambda_i = 1/(n i)` and `delta = n + 1`.
pub fn collocated(n: usize) -> Result<Network> {
    Network::collocated(uniform_links(
        &asymptotic_rates(n, 0),
        2.0,
        0.5,
        n as u64 + 1,
    )?)
}

/// Random geometric network with `links` links and `delta = 10`.
pub fn geometric(links: usize) -> Result<Network> {
    general_network(links, 10, 7)
}

/// A mid-frame state: stages spread over `1..=delta`, a third of the links
/// already served, and uneven backlogs.
pub fn mid_frame_state(net: &Network) -> (StageState, QueueState) {
    let n = net.len();
    let mut stages = StageState::new(n);
    stages.slot = 5;
    for (i, link) in net.links.iter().enumerate() {
        stages.stage[i] = if i % 3 == 0 {
            0
        } else {
            1 + (i as u64 * 7) % link.delta
        };
        stages.since_service[i] = 1 + (i as u64 * 5) % 40;
    }
    let work = (0..n).map(|i| ((i * 37) % 11) as f64 * 0.5).collect();
    (stages, QueueState::from_work(work))
}
