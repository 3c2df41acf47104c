use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use msmw::bounds::bound_b3;
use msmw::model::{build_geometric_network, GeometricParams};
use msmw::runner::run_and_emit;
use msmw::scenarios::{
    expand_scenario, general_network, ScenarioKind, ScenarioSpec, GENERAL_NETWORK,
};
use msmw::sim::{replay_satisfaction, run_all, Trace};
use msmw::{run_simulation, ArrivalMode, ConflictGraph, LinkSpec, Network, PolicyKind, SimConfig};

fn link(id: usize, lambda: f64, delta: u64) -> LinkSpec {
    LinkSpec::new(id, lambda, 2.0, 0.5, delta).unwrap()
}

fn fig1() -> Network {
    Network::collocated(vec![link(1, 0.5, 2), link(2, 0.125, 4)]).unwrap()
}

fn run_once(cfg: &SimConfig, seed: u64) -> msmw::sim::RunOutput {
    run_simulation(cfg, seed, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap()
}

#[test]
fn worked_example_stays_under_backlog_bound() {
    let net = fig1();
    let bound = bound_b3(&net.links, &[0.0, 0.0]).unwrap();
    let mut cfg = SimConfig::new(net, PolicyKind::Msmw);
    cfg.arrivals = ArrivalMode::Deterministic;
    let q = run_once(&cfg, 0).metrics.time_avg_total_queue;
    assert_eq!(bound, 1.5);
    assert!(q <= bound, "{q}");
}

#[test]
fn rto_on_worked_example_snapshot() {
    let mut cfg = SimConfig::new(fig1(), PolicyKind::Rto(Default::default()));
    cfg.base_seed = 7;
    let out = run_once(&cfg, 7);
    assert_eq!(out.metrics.frequency_satisfied, vec![false, false]);
}

#[test]
fn both_policies_keep_every_link_at_four_links() {
    let mut spec = ScenarioSpec::preset(ScenarioKind::Fig2LinkCount);
    spec.sweep = Some(vec![4]);
    for cfg in expand_scenario(&spec).unwrap() {
        for out in run_all(&cfg.sim).unwrap() {
            assert_eq!(out.metrics.satisfaction_ratio, 1.0, "{}", cfg.sim.policy);
        }
    }
}

#[test]
fn split_queues_never_beat_combined_queue() {
    let mut spec = ScenarioSpec::preset(ScenarioKind::Fig2LinkCount);
    spec.sweep = Some(vec![8]);
    spec.policies = vec![PolicyKind::Msmw, PolicyKind::TwoMsmw];
    spec.num_runs = 3;
    for arrivals in [ArrivalMode::Deterministic, ArrivalMode::Bernoulli] {
        spec.arrivals = Some(arrivals);
        let configs = expand_scenario(&spec).unwrap();
        let single = run_all(&configs[0].sim).unwrap();
        let dual = run_all(&configs[1].sim).unwrap();
        for (s, d) in single.iter().zip(&dual) {
            assert_eq!(s.metrics.seed, d.metrics.seed);
            assert!(
                d.metrics.time_avg_total_queue >= s.metrics.time_avg_total_queue,
                "{arrivals:?}: {} < {}",
                d.metrics.time_avg_total_queue,
                s.metrics.time_avg_total_queue
            );
        }
    }
}

#[test]
fn csv_has_one_row_per_run_plus_means() {
    let configs = expand_scenario(&ScenarioSpec::preset(ScenarioKind::Fig2LinkCount)).unwrap();
    let mut buf = Vec::new();
    run_and_emit(&configs, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 5 * 2 * 10 + 10);
    assert_eq!(lines.iter().filter(|l| l.contains(",mean,")).count(), 10);
}

#[test]
fn trace_replay_reproduces_ratio() {
    let mut spec = ScenarioSpec::preset(ScenarioKind::Fig4TwoTails);
    spec.sweep = Some(vec![20]);
    spec.num_runs = 2;
    spec.trace_enabled = true;
    spec.arrivals = Some(ArrivalMode::Bernoulli);
    for cfg in expand_scenario(&spec).unwrap() {
        for out in run_all(&cfg.sim).unwrap() {
            let mut buf = Vec::new();
            out.trace.as_ref().unwrap().write_to(&mut buf).unwrap();
            let trace = Trace::read_from(buf.as_slice()).unwrap();
            let replayed =
                replay_satisfaction(&trace, &cfg.sim.network, cfg.sim.horizon_slots).unwrap();
            assert_eq!(replayed.to_bits(), out.metrics.satisfaction_ratio.to_bits());
        }
    }
}

#[test]
fn geometric_network_is_reproducible() {
    let degrees = |seed| {
        let net = general_network(160, 10, seed).unwrap();
        (0..net.len())
            .map(|i| net.graph.degree(i))
            .collect::<Vec<_>>()
    };
    let a = degrees(42);
    assert_eq!(a, degrees(42));
    assert_eq!(a.len(), 160);

    let params = GeometricParams {
        num_links: 160,
        ..GENERAL_NETWORK
    };
    let x = build_geometric_network(params, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    let y = build_geometric_network(params, &mut ChaCha8Rng::seed_from_u64(3)).unwrap();
    assert_eq!(x.nodes, y.nodes);
    assert_eq!(x.links, y.links);
    assert_eq!(x.graph, y.graph);
}

#[test]
fn general_network_runs_are_bit_identical() {
    let net = general_network(60, 10, 5).unwrap();
    for policy in [
        PolicyKind::Msmw,
        PolicyKind::MaxWeightGreedy,
        PolicyKind::TwoMsmw,
    ] {
        let mut cfg = SimConfig::new(net.clone(), policy);
        cfg.horizon_slots = 2000;
        cfg.num_runs = 2;
        let a = run_all(&cfg).unwrap();
        let b = run_all(&cfg).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.service_log, y.service_log);
            assert_eq!(
                x.metrics.time_avg_total_queue.to_bits(),
                y.metrics.time_avg_total_queue.to_bits()
            );
        }
    }
}

/// Collocated link sets with `sum 1/delta <= 1`.
fn feasible_collocated() -> impl Strategy<Value = Vec<LinkSpec>> {
    (1usize..=12)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(n as u64..=4 * n as u64, n),
                prop::collection::vec(0.0f64..=1.0, n),
            )
        })
        .prop_map(|(deltas, lambdas)| {
            deltas
                .iter()
                .zip(&lambdas)
                .enumerate()
                .map(|(i, (&d, &l))| link(i + 1, l, d))
                .collect()
        })
}

fn arb_graph() -> impl Strategy<Value = (Vec<LinkSpec>, ConflictGraph)> {
    (2usize..=10).prop_flat_map(|n| {
        (
            prop::collection::vec((1u64..=8, 0.0f64..=1.0), n),
            prop::collection::vec((0..n, 0..n), 0..=2 * n),
        )
            .prop_map(move |(params, edges)| {
                let links = params
                    .iter()
                    .enumerate()
                    .map(|(i, &(d, l))| link(i + 1, l, d))
                    .collect();
                let edges = edges.into_iter().filter(|(a, b)| a != b);
                (links, ConflictGraph::from_edges(n, edges).unwrap())
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn every_complete_frame_gets_a_service(
        links in feasible_collocated(),
        horizon in 1u64..=3000,
        seed in any::<u64>(),
    ) {
        let mut cfg = SimConfig::new(Network::collocated(links).unwrap(), PolicyKind::Msmw);
        cfg.horizon_slots = horizon;
        let out = run_once(&cfg, seed);
        prop_assert_eq!(out.metrics.satisfaction_ratio, 1.0);
    }

    #[test]
    fn schedules_are_maximal_independent_sets((links, graph) in arb_graph(), seed in any::<u64>()) {
        let net = Network::new(links, graph.clone()).unwrap();
        for policy in [PolicyKind::Msmw, PolicyKind::MaxWeightGreedy, PolicyKind::TwoMsmw] {
            let mut cfg = SimConfig::new(net.clone(), policy);
            cfg.horizon_slots = 300;
            cfg.trace_enabled = true;
            let out = run_once(&cfg, seed);
            for rec in &out.trace.unwrap().records {
                let mut chosen = vec![false; net.len()];
                for &id in &rec.scheduled {
                    chosen[id - 1] = true;
                }
                prop_assert!(graph.is_maximal_independent(&chosen), "slot {}: {:?}", rec.slot, rec.scheduled);
            }
        }
    }

    #[test]
    fn satisfaction_matches_service_log(links in feasible_collocated(), seed in any::<u64>()) {
        let mut cfg = SimConfig::new(Network::collocated(links).unwrap(), PolicyKind::Rto(Default::default()));
        cfg.horizon_slots = 500;
        let out = run_once(&cfg, seed);
        let flags = msmw::sim::check_frequency_compliance(&out.service_log, &cfg.network.links, 500);
        prop_assert_eq!(&flags, &out.metrics.frequency_satisfied);
        let ratio = flags.iter().filter(|&&f| f).count() as f64 / flags.len() as f64;
        prop_assert_eq!(ratio, out.metrics.satisfaction_ratio);
    }
}
