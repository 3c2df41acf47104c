//! Slot engine: arrivals, queue update, stage update, policy decision, and
//! the run metrics built on top of them.

mod compliance;
pub mod trace;

pub use compliance::{check_frequency_compliance, inter_service_gaps, inter_service_std};
pub use trace::{Trace, TraceRecord};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::{ArrivalMode, ArrivalSample, Network, QueueState};
use crate::policies::{Decision, DualQueues, PolicyKind, Scheduler, StageState};

pub const DEFAULT_HORIZON: u64 = 10_000;
pub const DEFAULT_RUNS: u32 = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct SimConfig {
    pub horizon_slots: u64,
    pub num_runs: u32,
    /// Run k (0-based) is seeded with `base_seed + k`.
    pub base_seed: u64,
    pub policy: PolicyKind,
    pub network: Network,
    pub arrivals: ArrivalMode,
    pub trace_enabled: bool,
}

impl SimConfig {
    pub fn new(network: Network, policy: PolicyKind) -> Self {
        Self {
            horizon_slots: DEFAULT_HORIZON,
            num_runs: DEFAULT_RUNS,
            base_seed: 0,
            policy,
            network,
            arrivals: ArrivalMode::Bernoulli,
            trace_enabled: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.horizon_slots == 0 {
            return Err(Error::Config("horizon must be at least one slot".into()));
        }
        if self.num_runs == 0 {
            return Err(Error::Config("at least one run is required".into()));
        }
        self.arrivals.check(&self.network.links)?;
        self.policy.check_network(&self.network)
    }

    pub fn run_seed(&self, run: u32) -> u64 {
        self.base_seed.wrapping_add(u64::from(run))
    }
}

/// Outcome of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunMetrics {
    pub seed: u64,
    pub frequency_satisfied: Vec<bool>,
    pub satisfaction_ratio: f64,
    /// Mean over slots of the total backlog.
    pub time_avg_total_queue: f64,
    /// `time_avg_total_queue / N`.
    pub time_avg_mean_queue: f64,
    pub max_queue_observed: f64,
    pub inter_service_std: Vec<f64>,
    pub mean_inter_service_std: f64,
    pub max_inter_service_std: f64,
    /// Work removed from the queues by applied schedules.
    pub work_drained: f64,
    /// Link-slots granted by applied schedules (the final decision is never
    /// applied within the horizon and is excluded).
    pub services_applied: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub metrics: RunMetrics,
    pub service_log: Vec<Vec<u64>>,
    pub trace: Option<Trace>,
}

impl RunMetrics {
    /// Builds the service-based metrics from a service log; queue statistics
    /// are filled in by the caller.
    fn from_services(seed: u64, service_log: &[Vec<u64>], network: &Network, horizon: u64) -> Self {
        let frequency_satisfied = check_frequency_compliance(service_log, &network.links, horizon);
        let satisfaction_ratio = ratio(&frequency_satisfied);
        let inter_service_std: Vec<f64> =
            service_log.iter().map(|s| inter_service_std(s)).collect();
        let mean_inter_service_std =
            inter_service_std.iter().sum::<f64>() / inter_service_std.len() as f64;
        let max_inter_service_std = inter_service_std.iter().copied().fold(0.0, f64::max);
        Self {
            seed,
            frequency_satisfied,
            satisfaction_ratio,
            time_avg_total_queue: 0.0,
            time_avg_mean_queue: 0.0,
            max_queue_observed: 0.0,
            inter_service_std,
            mean_inter_service_std,
            max_inter_service_std,
            work_drained: 0.0,
            services_applied: 0,
        }
    }
}

/// Fraction of `true` entries.
pub fn ratio(flags: &[bool]) -> f64 {
    if flags.is_empty() {
        return 1.0;
    }
    flags.iter().filter(|&&f| f).count() as f64 / flags.len() as f64
}

/// Satisfaction ratio recomputed from a stored trace.
pub fn replay_satisfaction(trace: &Trace, network: &Network, horizon: u64) -> Result<f64> {
    let log = trace.service_log()?;
    Ok(ratio(&check_frequency_compliance(
        &log,
        &network.links,
        horizon,
    )))
}

/// Simulates slots `1..=horizon`. Each slot draws arrivals, applies the
/// previous decision and the arrivals to the queues, refreshes the stages,
/// samples the queue statistics, and asks the policy for a new decision.
pub fn run_simulation<R: Rng + ?Sized>(
    config: &SimConfig,
    seed: u64,
    rng: &mut R,
) -> Result<RunOutput> {
    config.validate()?;
    let network = &config.network;
    let links = &network.links;
    let graph = &network.graph;
    let n = links.len();
    let mut scheduler = Scheduler::new(&config.policy, network)?;
    let mut dual = matches!(config.policy, PolicyKind::TwoMsmw).then(|| DualQueues::zeros(n));

    let mut queues = QueueState::zeros(n);
    let mut stages = StageState::new(n);
    let mut decision = Decision::empty(n);
    let mut arrivals = ArrivalSample::zeros(n);
    let mut service_log = vec![Vec::new(); n];
    let mut trace = config.trace_enabled.then(|| Trace {
        num_links: n,
        records: Vec::with_capacity(config.horizon_slots as usize),
    });

    let mut queue_sum = 0.0;
    let mut queue_max: f64 = 0.0;
    let mut drained = 0.0;
    let mut applied = 0u64;

    for t in 1..=config.horizon_slots {
        arrivals.draw(links, config.arrivals, rng);
        applied += decision.schedule.count() as u64;
        match dual.as_mut() {
            Some(d) => {
                let before = d.grand_total();
                d.advance(
                    &decision.schedule.chosen,
                    &decision.from_round_robin,
                    &arrivals,
                    links,
                );
                let added: f64 = arrivals
                    .packets
                    .iter()
                    .zip(links)
                    .map(|(a, l)| a * l.work_per_packet())
                    .sum();
                drained += before + added - d.grand_total();
                for (i, q) in queues.work.iter_mut().enumerate() {
                    *q = d.total(i);
                }
            }
            None => drained += queues.advance(&decision.schedule.chosen, &arrivals, links),
        }
        stages.advance(t, links, &decision.schedule.chosen);

        let mut total = 0.0;
        for (i, &q) in queues.work.iter().enumerate() {
            if !q.is_finite() {
                return Err(Error::NonFinite {
                    link: i + 1,
                    slot: t,
                });
            }
            total += q;
            queue_max = queue_max.max(q);
        }
        queue_sum += total;

        scheduler.decide(&stages, &queues, dual.as_ref(), graph, &mut decision)?;
        debug_assert!(graph.is_maximal_independent(&decision.schedule.chosen));

        for (i, &c) in decision.schedule.chosen.iter().enumerate() {
            if c {
                service_log[i].push(t);
            }
        }
        if let Some(tr) = trace.as_mut() {
            tr.records.push(TraceRecord {
                slot: t,
                scheduled: decision.schedule.ids(),
                queues: queues.work.clone(),
                stages: stages.stage.clone(),
            });
        }
    }

    let mut metrics = RunMetrics::from_services(seed, &service_log, network, config.horizon_slots);
    metrics.time_avg_total_queue = queue_sum / config.horizon_slots as f64;
    metrics.time_avg_mean_queue = metrics.time_avg_total_queue / n as f64;
    metrics.max_queue_observed = queue_max;
    metrics.work_drained = drained;
    metrics.services_applied = applied;
    Ok(RunOutput {
        metrics,
        service_log,
        trace,
    })
}

/// Runs `0..num_runs` with their derived seeds, in parallel, returning the
/// outputs in run order.
pub fn run_all(config: &SimConfig) -> Result<Vec<RunOutput>> {
    config.validate()?;
    (0..config.num_runs)
        .into_par_iter()
        .map(|k| {
            let seed = config.run_seed(k);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            run_simulation(config, seed, &mut rng)
        })
        .collect()
}

/// Mean and sample standard deviation of one metric across runs.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Stat {
    pub mean: f64,
    pub std: f64,
}

impl Stat {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let v: Vec<f64> = values.into_iter().collect();
        if v.is_empty() {
            return Self::default();
        }
        let mean = v.iter().sum::<f64>() / v.len() as f64;
        let std = if v.len() < 2 {
            0.0
        } else {
            (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (v.len() - 1) as f64).sqrt()
        };
        Self { mean, std }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateMetrics {
    pub runs: usize,
    pub satisfaction_ratio: Stat,
    pub time_avg_total_queue: Stat,
    pub time_avg_mean_queue: Stat,
    pub max_queue_observed: Stat,
    pub mean_inter_service_std: Stat,
    pub max_inter_service_std: Stat,
}

pub fn aggregate_runs(runs: &[RunMetrics]) -> Result<AggregateMetrics> {
    if runs.is_empty() {
        return Err(Error::EmptyInput);
    }
    let stat = |f: fn(&RunMetrics) -> f64| Stat::of(runs.iter().map(f));
    Ok(AggregateMetrics {
        runs: runs.len(),
        satisfaction_ratio: stat(|r| r.satisfaction_ratio),
        time_avg_total_queue: stat(|r| r.time_avg_total_queue),
        time_avg_mean_queue: stat(|r| r.time_avg_mean_queue),
        max_queue_observed: stat(|r| r.max_queue_observed),
        mean_inter_service_std: stat(|r| r.mean_inter_service_std),
        max_inter_service_std: stat(|r| r.max_inter_service_std),
    })
}
