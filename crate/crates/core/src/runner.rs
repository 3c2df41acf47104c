//! Batch execution of expanded scenarios.

use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::report::{format_number, write_csv, ResultRow, RowKind};
use crate::scenarios::ExperimentConfig;
use crate::sim::{aggregate_runs, run_all, AggregateMetrics, RunMetrics, Trace};

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub scenario: String,
    pub policy: String,
    pub sweep: u64,
    pub runs: Vec<RunMetrics>,
    pub aggregate: AggregateMetrics,
    /// One entry per run when tracing is enabled.
    pub traces: Vec<Trace>,
}

impl ExperimentResult {
    fn label(&self) -> String {
        format!("{}/{}/sweep={}", self.scenario, self.policy, self.sweep)
    }

    fn check_finite(&self) -> Result<()> {
        for run in &self.runs {
            let metrics = [
                ("satisfaction_ratio", run.satisfaction_ratio),
                ("time_avg_mean_queue", run.time_avg_mean_queue),
                ("max_queue_observed", run.max_queue_observed),
                ("mean_inter_service_std", run.mean_inter_service_std),
                ("max_inter_service_std", run.max_inter_service_std),
            ];
            if let Some((metric, _)) = metrics.iter().find(|(_, v)| !v.is_finite()) {
                return Err(Error::NonFiniteMetric {
                    metric,
                    config: format!("{} seed={}", self.label(), run.seed),
                });
            }
        }
        Ok(())
    }
}

/// Runs every configuration (and every run within it) on the current rayon
/// pool. Results come back in configuration order.
pub fn run_experiments(configs: &[ExperimentConfig]) -> Result<Vec<ExperimentResult>> {
    configs
        .par_iter()
        .map(|cfg| {
            let outputs = run_all(&cfg.sim)?;
            let runs: Vec<RunMetrics> = outputs.iter().map(|o| o.metrics.clone()).collect();
            let traces = outputs.into_iter().filter_map(|o| o.trace).collect();
            let result = ExperimentResult {
                scenario: cfg.scenario.clone(),
                policy: cfg.sim.policy.name().to_string(),
                sweep: cfg.sweep,
                aggregate: aggregate_runs(&runs)?,
                runs,
                traces,
            };
            result.check_finite()?;
            Ok(result)
        })
        .collect()
}

/// One `run` row per run followed by one `mean` row, per configuration.
pub fn result_rows(results: &[ExperimentResult]) -> Vec<ResultRow> {
    let mut rows = Vec::new();
    for r in results {
        for run in &r.runs {
            rows.push(ResultRow {
                scenario: r.scenario.clone(),
                policy: r.policy.clone(),
                sweep: r.sweep,
                seed: Some(run.seed),
                kind: RowKind::Run,
                satisfaction_ratio: run.satisfaction_ratio,
                time_avg_mean_queue: run.time_avg_mean_queue,
                max_queue_observed: run.max_queue_observed,
                mean_inter_service_std: run.mean_inter_service_std,
                max_inter_service_std: run.max_inter_service_std,
            });
        }
        let a = &r.aggregate;
        rows.push(ResultRow {
            scenario: r.scenario.clone(),
            policy: r.policy.clone(),
            sweep: r.sweep,
            seed: None,
            kind: RowKind::Mean,
            satisfaction_ratio: a.satisfaction_ratio.mean,
            time_avg_mean_queue: a.time_avg_mean_queue.mean,
            max_queue_observed: a.max_queue_observed.mean,
            mean_inter_service_std: a.mean_inter_service_std.mean,
            max_inter_service_std: a.max_inter_service_std.mean,
        });
    }
    rows
}

/// Runs the configurations and writes the full CSV to `out`.
pub fn run_and_emit<W: Write>(
    configs: &[ExperimentConfig],
    out: W,
) -> Result<Vec<ExperimentResult>> {
    let results = run_experiments(configs)?;
    write_csv(&result_rows(&results), out)?;
    Ok(results)
}

/// Fixed-width table of the per-configuration means (± sample std).
pub fn summary_table(results: &[ExperimentResult]) -> String {
    let mut s = String::new();
    writeln!(
        s,
        "{:<32} {:<10} {:>6} {:>22} {:>22} {:>22}",
        "scenario", "policy", "sweep", "satisfaction", "mean queue", "mean inter-svc std"
    )
    .unwrap();
    let cell = |st: crate::sim::Stat| {
        format!(
            "{} ± {}",
            format_number(round4(st.mean)),
            format_number(round4(st.std))
        )
    };
    for r in results {
        let a = &r.aggregate;
        writeln!(
            s,
            "{:<32} {:<10} {:>6} {:>22} {:>22} {:>22}",
            r.scenario,
            r.policy,
            r.sweep,
            cell(a.satisfaction_ratio),
            cell(a.time_avg_mean_queue),
            cell(a.mean_inter_service_std),
        )
        .unwrap();
    }
    s
}

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenarios::{expand_scenario, ScenarioKind, ScenarioSpec};

    #[test]
    fn one_mean_row_per_configuration() {
        let mut spec = ScenarioSpec::preset(ScenarioKind::Fig2LinkCount);
        spec.sweep = Some(vec![4, 8]);
        spec.horizon_slots = 200;
        spec.num_runs = 3;
        let configs = expand_scenario(&spec).unwrap();
        let results = run_experiments(&configs).unwrap();
        let rows = result_rows(&results);
        assert_eq!(rows.len(), 4 * 3 + 4);
        assert_eq!(rows.iter().filter(|r| r.kind == RowKind::Mean).count(), 4);
        let table = summary_table(&results);
        assert_eq!(table.lines().count(), 5);
    }
}
