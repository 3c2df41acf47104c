use rand::seq::index;
use rand::Rng;

use super::ConflictGraph;
use crate::error::{Error, Result};

/// Placement parameters for a random geometric network under the protocol
/// interference model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeometricParams {
    pub num_nodes: usize,
    /// Side of the square deployment area, meters.
    pub area_side: f64,
    /// Shared transmission and interference radius, meters.
    pub radius: f64,
    pub num_links: usize,
}

/// Node positions, link endpoints (0-based node indices, transmitter first)
/// and the induced conflict graph.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometricLayout {
    pub nodes: Vec<(f64, f64)>,
    pub links: Vec<(usize, usize)>,
    pub graph: ConflictGraph,
    /// Node placements drawn before one offered enough feasible pairs.
    pub attempts: usize,
}

/// Node placements tried before giving up on finding `num_links` pairs.
pub const PLACEMENT_BUDGET: usize = 1000;

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

/// Places nodes uniformly in the square, picks `num_links` distinct ordered
/// node pairs within `radius`, and marks two links as conflicting when they
/// share a node or any endpoint of one lies within `radius` of any endpoint
/// of the other.
///
/// If a placement offers fewer than `num_links` feasible pairs the nodes are
/// placed again, up to [`PLACEMENT_BUDGET`] times.
pub fn build_geometric_network<R: Rng + ?Sized>(
    params: GeometricParams,
    rng: &mut R,
) -> Result<GeometricLayout> {
    let GeometricParams {
        num_nodes,
        area_side,
        radius,
        num_links,
    } = params;
    if num_nodes < 2 {
        return Err(Error::Config(
            "geometric network needs at least 2 nodes".into(),
        ));
    }
    if !(radius > 0.0 && area_side > 0.0) {
        return Err(Error::Config(
            "radius and area side must be positive".into(),
        ));
    }
    if num_links == 0 {
        return Err(Error::Config(
            "geometric network needs at least 1 link".into(),
        ));
    }

    let mut best = 0;
    for attempt in 1..=PLACEMENT_BUDGET {
        let nodes: Vec<(f64, f64)> = (0..num_nodes)
            .map(|_| (rng.gen_range(0.0..area_side), rng.gen_range(0.0..area_side)))
            .collect();
        let feasible: Vec<(usize, usize)> = (0..num_nodes)
            .flat_map(|a| (0..num_nodes).map(move |b| (a, b)))
            .filter(|&(a, b)| a != b && dist(nodes[a], nodes[b]) <= radius)
            .collect();
        best = best.max(feasible.len());
        if feasible.len() < num_links {
            continue;
        }
        let mut picked: Vec<usize> = index::sample(rng, feasible.len(), num_links).into_vec();
        picked.sort_unstable();
        let links: Vec<(usize, usize)> = picked.into_iter().map(|k| feasible[k]).collect();
        let graph = protocol_conflicts(&nodes, &links, radius);
        return Ok(GeometricLayout {
            nodes,
            links,
            graph,
            attempts: attempt,
        });
    }
    Err(Error::Generation(format!(
        "no placement of {num_nodes} nodes in a {area_side}m square with radius {radius}m \
         offered {num_links} distinct links within {PLACEMENT_BUDGET} attempts \
         (best placement had {best})"
    )))
}

/// Protocol-model conflict graph for links given by node endpoints.
pub(crate) fn protocol_conflicts(
    nodes: &[(f64, f64)],
    links: &[(usize, usize)],
    radius: f64,
) -> ConflictGraph {
    let n = links.len();
    let mut edges = Vec::new();
    for i in 0..n {
        let (a, b) = links[i];
        for j in (i + 1)..n {
            let (c, d) = links[j];
            let close = [a, b].iter().any(|&u| {
                [c, d]
                    .iter()
                    .any(|&v| u == v || dist(nodes[u], nodes[v]) <= radius)
            });
            if close {
                edges.push((i, j));
            }
        }
    }
    ConflictGraph::from_edges(n, edges).expect("edges are in range and loop-free")
}
