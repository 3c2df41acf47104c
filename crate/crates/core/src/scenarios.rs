//! Built-in experiment presets and the structured config file format.
//!
//! Every preset expands deterministically into a list of
//! [`ExperimentConfig`]s, ordered by rate family, then sweep value, then
//! policy.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::model::{
    build_geometric_network, uniform_links, ArrivalMode, ConflictGraph, GeometricParams, LinkSpec,
    Network,
};
use crate::policies::{PolicyKind, RtoParams};
use crate::sim::{SimConfig, DEFAULT_HORIZON, DEFAULT_RUNS};

/// Named experiment families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    /// Two-link collocated walkthrough with deterministic arrivals.
    Fig1Example,
    Fig2LinkCount,
    Fig3DeltaSweep,
    Fig4TwoTails,
    Fig5Regularity,
    Fig6Robustness,
    Fig7GeneralLinks,
    Fig8GeneralDelta,
    Custom,
}

impl ScenarioKind {
    pub const PRESETS: [ScenarioKind; 8] = [
        ScenarioKind::Fig1Example,
        ScenarioKind::Fig2LinkCount,
        ScenarioKind::Fig3DeltaSweep,
        ScenarioKind::Fig4TwoTails,
        ScenarioKind::Fig5Regularity,
        ScenarioKind::Fig6Robustness,
        ScenarioKind::Fig7GeneralLinks,
        ScenarioKind::Fig8GeneralDelta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::Fig1Example => "fig1_example",
            ScenarioKind::Fig2LinkCount => "fig2_link_count",
            ScenarioKind::Fig3DeltaSweep => "fig3_delta_sweep",
            ScenarioKind::Fig4TwoTails => "fig4_two_tails",
            ScenarioKind::Fig5Regularity => "fig5_regularity",
            ScenarioKind::Fig6Robustness => "fig6_robustness",
            ScenarioKind::Fig7GeneralLinks => "fig7_general_links",
            ScenarioKind::Fig8GeneralDelta => "fig8_general_delta",
            ScenarioKind::Custom => "custom",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            ScenarioKind::Fig1Example => {
                "2 collocated links, load (1/2, 1/8), delta (2, 4), deterministic arrivals"
            }
            ScenarioKind::Fig2LinkCount => {
                "collocated, N in {4..64}, delta = N+1, lambda_i = 1/(N i); MSMW vs RTO"
            }
            ScenarioKind::Fig3DeltaSweep => {
                "collocated, N = 32, delta = N+k for k in 1..5; MSMW vs RTO"
            }
            ScenarioKind::Fig4TwoTails => {
                "collocated, N = 16, delta = 21, two-tails rates for k in 1..20; MSMW vs RTO"
            }
            ScenarioKind::Fig5Regularity => {
                "collocated, N = 16, delta = 21, lambda_i = 1/(N (i+k)) for k in 1..20; MSMW vs RTO"
            }
            ScenarioKind::Fig6Robustness => "fig5 and fig4 rate families side by side; MSMW vs RTO",
            ScenarioKind::Fig7GeneralLinks => {
                "geometric network, 40 nodes, delta = 10, 20..200 links; MSMW vs mw-greedy"
            }
            ScenarioKind::Fig8GeneralDelta => {
                "geometric network, 160 links, delta in 5..15; MSMW vs mw-greedy"
            }
            ScenarioKind::Custom => "network read from a config file",
        }
    }

    fn default_sweep(self) -> Vec<u64> {
        match self {
            ScenarioKind::Fig1Example | ScenarioKind::Custom => vec![0],
            ScenarioKind::Fig2LinkCount => vec![4, 8, 16, 32, 64],
            ScenarioKind::Fig3DeltaSweep => (1..=5).collect(),
            ScenarioKind::Fig4TwoTails
            | ScenarioKind::Fig5Regularity
            | ScenarioKind::Fig6Robustness => (1..=20).collect(),
            ScenarioKind::Fig7GeneralLinks => (1..=10).map(|k| 20 * k).collect(),
            ScenarioKind::Fig8GeneralDelta => (5..=15).collect(),
        }
    }

    fn default_policies(self) -> Vec<PolicyKind> {
        match self {
            ScenarioKind::Fig1Example | ScenarioKind::Custom => vec![PolicyKind::Msmw],
            ScenarioKind::Fig7GeneralLinks | ScenarioKind::Fig8GeneralDelta => {
                vec![PolicyKind::Msmw, PolicyKind::MaxWeightGreedy]
            }
            _ => vec![PolicyKind::Msmw, PolicyKind::rto()],
        }
    }
}

impl fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScenarioKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScenarioKind::PRESETS
            .into_iter()
            .chain([ScenarioKind::Custom])
            .find(|k| k.name() == s || k.name().split('_').next() == Some(s))
            .ok_or_else(|| Error::UnknownScenario(s.to_string()))
    }
}

/// Geometric deployment used by the general-network presets.
pub const GENERAL_NETWORK: GeometricParams = GeometricParams {
    num_nodes: 40,
    area_side: 100.0,
    radius: 20.0,
    num_links: 0,
};
/// Upper end of the uniform arrival-rate draw for general networks (mean 1/8).
pub const GENERAL_MAX_RATE: f64 = 0.25;
/// Transmission rate and channel success probability used by every preset.
pub const PRESET_RATE: f64 = 2.0;
pub const PRESET_CHANNEL: f64 = 0.5;
/// Presets feed each link exactly `lambda` packets per slot. This fluid
/// process reproduces the published collocated results (e.g. RTO keeping
/// 4/4 links at N = 4 and 7/64 at N = 64); Bernoulli arrivals are one
/// `--arrivals` flag away.
pub const PRESET_ARRIVALS: ArrivalMode = ArrivalMode::Deterministic;

/// What to run.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSpec {
    pub kind: ScenarioKind,
    /// Sweep values (N, k, link count or delta depending on the kind);
    /// `None` uses the preset's values.
    pub sweep: Option<Vec<u64>>,
    pub policies: Vec<PolicyKind>,
    pub base_seed: u64,
    pub horizon_slots: u64,
    pub num_runs: u32,
    pub trace_enabled: bool,
    /// Replaces the arrival process of every configuration.
    pub arrivals: Option<ArrivalMode>,
    /// Network and overrides for [`ScenarioKind::Custom`].
    pub custom: Option<CustomConfig>,
}

impl ScenarioSpec {
    pub fn preset(kind: ScenarioKind) -> Self {
        Self {
            kind,
            sweep: None,
            policies: kind.default_policies(),
            base_seed: 1,
            horizon_slots: DEFAULT_HORIZON,
            num_runs: DEFAULT_RUNS,
            trace_enabled: false,
            arrivals: None,
            custom: None,
        }
    }

    pub fn from_custom(custom: CustomConfig) -> Self {
        let sim = &custom.simulation;
        Self {
            kind: ScenarioKind::Custom,
            sweep: None,
            policies: sim.policies.clone(),
            base_seed: sim.base_seed,
            horizon_slots: sim.horizon_slots,
            num_runs: sim.num_runs,
            trace_enabled: sim.trace,
            arrivals: None,
            custom: Some(custom),
        }
    }
}

/// One simulation configuration tagged with its place in the sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub scenario: String,
    pub sweep: u64,
    pub sim: SimConfig,
}

/// `lambda_i = 1 / (n (i + shift))` for `i = 1..=n`.
pub fn asymptotic_rates(n: usize, shift: u64) -> Vec<f64> {
    (1..=n)
        .map(|i| 1.0 / (n as f64 * (i as u64 + shift) as f64))
        .collect()
}

/// First half `1 / (n i)`, second half `1 / (n (i + k))`, with the global
/// index `i` in both halves.
pub fn two_tails_rates(n: usize, k: u64) -> Vec<f64> {
    let head = n / 2;
    (1..=n)
        .map(|i| {
            let shift = if i <= head { 0 } else { k };
            1.0 / (n as f64 * (i as u64 + shift) as f64)
        })
        .collect()
}

fn collocated(lambdas: &[f64], delta: u64) -> Result<Network> {
    Network::collocated(uniform_links(lambdas, PRESET_RATE, PRESET_CHANNEL, delta)?)
}

/// Random geometric network with `num_links` links and rates uniform on
/// `[0, GENERAL_MAX_RATE]`, all derived from `seed`.
pub fn general_network(num_links: usize, delta: u64, seed: u64) -> Result<Network> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let layout = build_geometric_network(
        GeometricParams {
            num_links,
            ..GENERAL_NETWORK
        },
        &mut rng,
    )?;
    let lambdas: Vec<f64> = (0..num_links)
        .map(|_| rng.gen_range(0.0..=GENERAL_MAX_RATE))
        .collect();
    Network::new(
        uniform_links(&lambdas, PRESET_RATE, PRESET_CHANNEL, delta)?,
        layout.graph,
    )
}

fn network_seed(base_seed: u64, num_links: u64) -> u64 {
    base_seed
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(num_links)
}

pub fn expand_scenario(spec: &ScenarioSpec) -> Result<Vec<ExperimentConfig>> {
    if spec.policies.is_empty() {
        return Err(Error::Config("no policies selected".into()));
    }
    let sweep = spec
        .sweep
        .clone()
        .unwrap_or_else(|| spec.kind.default_sweep());
    let name = spec.kind.name();
    // (scenario id, sweep value, network, arrival mode)
    let mut points: Vec<(String, u64, Network, ArrivalMode)> = Vec::new();
    match spec.kind {
        ScenarioKind::Fig1Example => {
            let links = vec![
                LinkSpec::new(1, 0.5, PRESET_RATE, PRESET_CHANNEL, 2)?,
                LinkSpec::new(2, 0.125, PRESET_RATE, PRESET_CHANNEL, 4)?,
            ];
            points.push((
                name.into(),
                0,
                Network::collocated(links)?,
                ArrivalMode::Deterministic,
            ));
        }
        ScenarioKind::Fig2LinkCount => {
            for &n in &sweep {
                let n_links = n as usize;
                points.push((
                    name.into(),
                    n,
                    collocated(&asymptotic_rates(n_links, 0), n + 1)?,
                    PRESET_ARRIVALS,
                ));
            }
        }
        ScenarioKind::Fig3DeltaSweep => {
            for &k in &sweep {
                points.push((
                    name.into(),
                    k,
                    collocated(&asymptotic_rates(32, 0), 32 + k)?,
                    PRESET_ARRIVALS,
                ));
            }
        }
        ScenarioKind::Fig4TwoTails => {
            for &k in &sweep {
                points.push((
                    name.into(),
                    k,
                    collocated(&two_tails_rates(16, k), 21)?,
                    PRESET_ARRIVALS,
                ));
            }
        }
        ScenarioKind::Fig5Regularity => {
            for &k in &sweep {
                points.push((
                    name.into(),
                    k,
                    collocated(&asymptotic_rates(16, k), 21)?,
                    PRESET_ARRIVALS,
                ));
            }
        }
        ScenarioKind::Fig6Robustness => {
            for &k in &sweep {
                let id = format!("{name}:asymptotic");
                points.push((
                    id,
                    k,
                    collocated(&asymptotic_rates(16, k), 21)?,
                    PRESET_ARRIVALS,
                ));
            }
            for &k in &sweep {
                let id = format!("{name}:two_tails");
                points.push((
                    id,
                    k,
                    collocated(&two_tails_rates(16, k), 21)?,
                    PRESET_ARRIVALS,
                ));
            }
        }
        ScenarioKind::Fig7GeneralLinks => {
            for &links in &sweep {
                let net = general_network(links as usize, 10, network_seed(spec.base_seed, links))?;
                points.push((name.into(), links, net, PRESET_ARRIVALS));
            }
        }
        ScenarioKind::Fig8GeneralDelta => {
            let base = general_network(160, 10, network_seed(spec.base_seed, 160))?;
            for &delta in &sweep {
                let links = base
                    .links
                    .iter()
                    .map(|l| LinkSpec::new(l.id, l.lambda, l.rate, l.channel, delta))
                    .collect::<Result<Vec<_>>>()?;
                points.push((
                    name.into(),
                    delta,
                    Network::new(links, base.graph.clone())?,
                    PRESET_ARRIVALS,
                ));
            }
        }
        ScenarioKind::Custom => {
            let custom = spec
                .custom
                .as_ref()
                .ok_or_else(|| Error::Config("custom scenario needs a config file".into()))?;
            let net = custom.network(spec.base_seed)?;
            points.push((
                custom.simulation.name.clone(),
                0,
                net,
                custom.simulation.arrivals,
            ));
        }
    }

    let rto_overrides = spec
        .custom
        .as_ref()
        .map(CustomConfig::rto_params)
        .transpose()?;
    let mut out = Vec::with_capacity(points.len() * spec.policies.len());
    for (scenario, sweep, network, arrivals) in points {
        let arrivals = spec.arrivals.unwrap_or(arrivals);
        for policy in &spec.policies {
            let policy = match (policy, &rto_overrides) {
                (PolicyKind::Rto(_), Some(p)) => PolicyKind::Rto(p.clone()),
                (p, _) => p.clone(),
            };
            let sim = SimConfig {
                horizon_slots: spec.horizon_slots,
                num_runs: spec.num_runs,
                base_seed: spec.base_seed,
                policy,
                network: network.clone(),
                arrivals,
                trace_enabled: spec.trace_enabled,
            };
            sim.validate()?;
            out.push(ExperimentConfig {
                scenario: scenario.clone(),
                sweep,
                sim,
            });
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Config file
// ---------------------------------------------------------------------------

/// Structured text (TOML) experiment description.
///
/// ```toml
/// [simulation]
/// name = "two-links"
/// horizon_slots = 10000
/// num_runs = 10
/// base_seed = 1
/// policies = ["msmw", "rto"]
/// arrivals = "bernoulli"      # or "deterministic"
///
/// [network]
/// kind = "collocated"         # or "edges" / "geometric"
/// # edges = [[1, 2], [2, 3]]  # 1-based link ids, kind = "edges"
///
/// [[links]]
/// lambda = 0.5
/// rate = 2.0
/// channel = 0.5
/// delta = 2
/// # rto_alpha = 1.0
/// # rto_beta = 0.5
/// ```
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomConfig {
    #[serde(default)]
    pub simulation: SimulationSection,
    #[serde(default)]
    pub network: NetworkSection,
    pub links: Vec<LinkEntry>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SimulationSection {
    pub name: String,
    pub horizon_slots: u64,
    pub num_runs: u32,
    pub base_seed: u64,
    #[serde(deserialize_with = "de_policies")]
    pub policies: Vec<PolicyKind>,
    pub arrivals: ArrivalMode,
    pub trace: bool,
}

impl Default for SimulationSection {
    fn default() -> Self {
        Self {
            name: "custom".into(),
            horizon_slots: DEFAULT_HORIZON,
            num_runs: DEFAULT_RUNS,
            base_seed: 1,
            policies: vec![PolicyKind::Msmw],
            arrivals: ArrivalMode::Bernoulli,
            trace: false,
        }
    }
}

fn de_policies<'de, D: serde::Deserializer<'de>>(
    d: D,
) -> std::result::Result<Vec<PolicyKind>, D::Error> {
    let names = Vec::<String>::deserialize(d)?;
    names
        .iter()
        .map(|n| n.parse().map_err(serde::de::Error::custom))
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum NetworkSection {
    #[default]
    Collocated,
    Edges {
        edges: Vec<[usize; 2]>,
    },
    Geometric {
        num_nodes: usize,
        area_side: f64,
        radius: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkEntry {
    pub lambda: f64,
    #[serde(default = "one")]
    pub rate: f64,
    #[serde(default = "one")]
    pub channel: f64,
    pub delta: u64,
    pub rto_alpha: Option<f64>,
    pub rto_beta: Option<f64>,
}

fn one() -> f64 {
    1.0
}

impl CustomConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn link_specs(&self) -> Result<Vec<LinkSpec>> {
        self.links
            .iter()
            .enumerate()
            .map(|(i, l)| LinkSpec::new(i + 1, l.lambda, l.rate, l.channel, l.delta))
            .collect()
    }

    pub fn network(&self, seed: u64) -> Result<Network> {
        let links = self.link_specs()?;
        let n = links.len();
        let graph = match &self.network {
            NetworkSection::Collocated => ConflictGraph::complete(n),
            NetworkSection::Edges { edges } => {
                if let Some(e) = edges.iter().find(|e| e[0] == 0 || e[1] == 0) {
                    return Err(Error::Config(format!("edge {e:?}: link ids are 1-based")));
                }
                ConflictGraph::from_edges(n, edges.iter().map(|e| (e[0] - 1, e[1] - 1)))?
            }
            NetworkSection::Geometric {
                num_nodes,
                area_side,
                radius,
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(network_seed(seed, n as u64));
                build_geometric_network(
                    GeometricParams {
                        num_nodes: *num_nodes,
                        area_side: *area_side,
                        radius: *radius,
                        num_links: n,
                    },
                    &mut rng,
                )?
                .graph
            }
        };
        Network::new(links, graph)
    }

    fn rto_params(&self) -> Result<RtoParams> {
        let links = self.link_specs()?;
        let alpha = self.links.iter().any(|l| l.rto_alpha.is_some()).then(|| {
            self.links
                .iter()
                .zip(&links)
                .map(|(e, l)| e.rto_alpha.unwrap_or_else(|| l.work_per_packet()))
                .collect()
        });
        let beta = self.links.iter().any(|l| l.rto_beta.is_some()).then(|| {
            self.links
                .iter()
                .zip(&links)
                .map(|(e, l)| e.rto_beta.unwrap_or_else(|| l.frequency_share()))
                .collect()
        });
        Ok(RtoParams { alpha, beta })
    }
}

/// Resolves a CLI argument: a preset name (or its `figN` prefix) or a path
/// to a config file.
pub fn resolve(arg: &str) -> Result<ScenarioSpec> {
    match arg.parse::<ScenarioKind>() {
        Ok(ScenarioKind::Custom) | Err(_) => {
            let path = Path::new(arg);
            if path.exists() {
                Ok(ScenarioSpec::from_custom(CustomConfig::load(path)?))
            } else {
                Err(Error::UnknownScenario(arg.to_string()))
            }
        }
        Ok(kind) => Ok(ScenarioSpec::preset(kind)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-15
    }

    #[test]
    fn fig2_expansion() {
        let cfgs = expand_scenario(&ScenarioSpec::preset(ScenarioKind::Fig2LinkCount)).unwrap();
        assert_eq!(cfgs.len(), 10);
        let n16 = cfgs.iter().find(|c| c.sweep == 16).unwrap();
        let lambdas: Vec<f64> = n16.sim.network.links.iter().map(|l| l.lambda).collect();
        assert!(close(lambdas[0], 1.0 / 16.0));
        assert!(close(lambdas[1], 1.0 / 32.0));
        assert!(close(lambdas[15], 1.0 / 256.0));
        assert!(n16
            .sim
            .network
            .links
            .iter()
            .all(|l| l.delta == 17 && l.rate == 2.0 && l.channel == 0.5));
        assert!(n16.sim.network.graph.is_collocated());
        assert_eq!(cfgs[0].sim.policy, PolicyKind::Msmw);
        assert_eq!(cfgs[1].sim.policy.name(), "rto");
    }

    #[test]
    fn fig4_two_tails_use_global_index() {
        let rates = two_tails_rates(16, 3);
        for i in 1..=8 {
            assert!(close(rates[i - 1], 1.0 / (16.0 * i as f64)));
        }
        for i in 9..=16 {
            assert!(close(rates[i - 1], 1.0 / (16.0 * (i + 3) as f64)));
        }
        let cfgs = expand_scenario(&ScenarioSpec::preset(ScenarioKind::Fig4TwoTails)).unwrap();
        assert_eq!(cfgs.len(), 40);
        assert!(cfgs
            .iter()
            .all(|c| c.sim.network.links.iter().all(|l| l.delta == 21)));
    }

    #[test]
    fn fig3_and_fig5_parameters() {
        let cfgs = expand_scenario(&ScenarioSpec::preset(ScenarioKind::Fig3DeltaSweep)).unwrap();
        let deltas: Vec<u64> = cfgs
            .iter()
            .step_by(2)
            .map(|c| c.sim.network.links[0].delta)
            .collect();
        assert_eq!(deltas, vec![33, 34, 35, 36, 37]);
        let cfgs = expand_scenario(&ScenarioSpec::preset(ScenarioKind::Fig5Regularity)).unwrap();
        let k20 = cfgs.iter().find(|c| c.sweep == 20).unwrap();
        assert!(close(k20.sim.network.links[0].lambda, 1.0 / (16.0 * 21.0)));
        let cfgs = expand_scenario(&ScenarioSpec::preset(ScenarioKind::Fig6Robustness)).unwrap();
        assert_eq!(cfgs.len(), 80);
    }

    #[test]
    fn general_presets() {
        let mut spec = ScenarioSpec::preset(ScenarioKind::Fig7GeneralLinks);
        spec.sweep = Some(vec![60]);
        let cfgs = expand_scenario(&spec).unwrap();
        assert_eq!(cfgs.len(), 2);
        let net = &cfgs[0].sim.network;
        assert_eq!(net.len(), 60);
        assert!(net
            .links
            .iter()
            .all(|l| l.delta == 10 && l.rate == 2.0 && l.channel == 0.5));
        assert!(net.links.iter().all(|l| (0.0..=0.25).contains(&l.lambda)));
        assert_eq!(cfgs[1].sim.policy, PolicyKind::MaxWeightGreedy);
        assert_eq!(cfgs[0].sim.network, cfgs[1].sim.network);

        let mut spec = ScenarioSpec::preset(ScenarioKind::Fig8GeneralDelta);
        spec.sweep = Some(vec![5, 15]);
        let cfgs = expand_scenario(&spec).unwrap();
        assert_eq!(cfgs[0].sim.network.graph, cfgs[2].sim.network.graph);
        assert_eq!(cfgs[2].sim.network.links[0].delta, 15);
    }

    #[test]
    fn expansion_is_pure() {
        for kind in ScenarioKind::PRESETS {
            let mut spec = ScenarioSpec::preset(kind);
            if matches!(kind, ScenarioKind::Fig7GeneralLinks) {
                spec.sweep = Some(vec![20, 40]);
            }
            assert_eq!(
                expand_scenario(&spec).unwrap(),
                expand_scenario(&spec).unwrap()
            );
        }
    }

    #[test]
    fn names_parse() {
        for kind in ScenarioKind::PRESETS {
            assert_eq!(kind.name().parse::<ScenarioKind>().unwrap(), kind);
        }
        assert_eq!(
            "fig2".parse::<ScenarioKind>().unwrap(),
            ScenarioKind::Fig2LinkCount
        );
        assert!("fig9".parse::<ScenarioKind>().is_err());
        assert!(resolve("no-such-preset-or-file").is_err());
    }

    #[test]
    fn custom_config_round_trip() {
        let cfg = CustomConfig::parse(
            r#"
            [simulation]
            name = "path"
            horizon_slots = 100
            num_runs = 2
            policies = ["msmw", "mw-greedy"]

            [network]
            kind = "edges"
            edges = [[1, 2], [2, 3]]

            [[links]]
            lambda = 0.1
            delta = 3
            [[links]]
            lambda = 0.2
            delta = 3
            [[links]]
            lambda = 0.3
            delta = 3
            "#,
        )
        .unwrap();
        let spec = ScenarioSpec::from_custom(cfg);
        let cfgs = expand_scenario(&spec).unwrap();
        assert_eq!(cfgs.len(), 2);
        assert_eq!(cfgs[0].scenario, "path");
        let g = &cfgs[0].sim.network.graph;
        assert!(g.conflicts(0, 1) && g.conflicts(1, 2) && !g.conflicts(0, 2));
        assert_eq!(cfgs[0].sim.horizon_slots, 100);
    }

    #[test]
    fn custom_rto_overrides() {
        let cfg = CustomConfig::parse(
            r#"
            [simulation]
            policies = ["rto"]
            [[links]]
            lambda = 0.1
            delta = 2
            rto_beta = 3.0
            [[links]]
            lambda = 0.1
            delta = 4
            "#,
        )
        .unwrap();
        let cfgs = expand_scenario(&ScenarioSpec::from_custom(cfg)).unwrap();
        match &cfgs[0].sim.policy {
            PolicyKind::Rto(p) => {
                assert_eq!(p.beta, Some(vec![3.0, 0.25]));
                assert_eq!(p.alpha, None);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_configs_are_rejected() {
        assert!(CustomConfig::parse("[[links]]\nlambda = 0.1\n").is_err());
        assert!(CustomConfig::parse(
            "[simulation]\npolicies = [\"edf\"]\n[[links]]\nlambda = 0.1\ndelta = 2\n"
        )
        .is_err());
        let rto_general = CustomConfig::parse(
            "[simulation]\npolicies = [\"rto\"]\n[network]\nkind = \"edges\"\nedges = []\n\
             [[links]]\nlambda = 0.1\ndelta = 2\n[[links]]\nlambda = 0.1\ndelta = 2\n",
        )
        .unwrap();
        assert!(expand_scenario(&ScenarioSpec::from_custom(rto_general)).is_err());
    }
}
