//! Static node deployment, base-station cells, the adjacency graph feeding
//! the estimator, and the peripheral/interior split used for initial trust.
//!
//! Positions are immutable after construction; adjacency is a pure function
//! of the deployment, so both can be shared freely.

use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use crate::math;
use crate::rng::DetRng;
use crate::{NodeId, StationId};

/// Axis-aligned deployment rectangle, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub min: [f64; 2],
    pub max: [f64; 2],
}

impl Rect {
    pub fn width(&self) -> f64 {
        self.max[0] - self.min[0]
    }

    pub fn height(&self) -> f64 {
        self.max[1] - self.min[1]
    }

    pub fn contains(&self, p: [f64; 2]) -> bool {
        p[0] >= self.min[0] && p[0] <= self.max[0] && p[1] >= self.min[1] && p[1] <= self.max[1]
    }

    /// Distance from `p` to the nearest edge of the rectangle.
    pub fn edge_distance(&self, p: [f64; 2]) -> f64 {
        let dx = (p[0] - self.min[0]).min(self.max[0] - p[0]);
        let dy = (p[1] - self.min[1]).min(self.max[1] - p[1]);
        dx.min(dy)
    }
}

/// A base station and the cell it covers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationSite {
    pub id: StationId,
    pub position: [f64; 2],
    pub radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Placement {
    UniformRandom,
    Grid,
}

/// Everything needed to lay the network out.
#[derive(Debug, Clone, PartialEq)]
pub struct DeploymentSpec {
    pub count: u32,
    pub area: Rect,
    pub placement: Placement,
    pub stations: Vec<StationSite>,
    pub adjacency_radius: f64,
    pub max_neighbors: usize,
    pub peripheral_margin: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum DeployError {
    /// Nodes outside every station cell, with the offenders listed.
    Coverage { uncovered: Vec<NodeId> },
    InvalidSpec(&'static str),
}

impl fmt::Display for DeployError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeployError::Coverage { uncovered } => {
                write!(f, "{} node(s) outside every station cell:", uncovered.len())?;
                for id in uncovered {
                    write!(f, " {id}")?;
                }
                Ok(())
            }
            DeployError::InvalidSpec(msg) => write!(f, "invalid deployment spec: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DeployError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnknownNode(pub NodeId);

impl fmt::Display for UnknownNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown node {}", self.0)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for UnknownNode {}

/// A laid-out network: node positions plus the cell geometry.
#[derive(Debug, Clone, PartialEq)]
pub struct Deployment {
    pub area: Rect,
    positions: Vec<[f64; 2]>,
    pub stations: Vec<StationSite>,
    pub adjacency_radius: f64,
    pub max_neighbors: usize,
    pub peripheral_margin: f64,
}

impl Deployment {
    pub fn node_count(&self) -> usize {
        self.positions.len()
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.positions.len() as u32).map(NodeId)
    }

    pub fn position(&self, id: NodeId) -> Result<[f64; 2], UnknownNode> {
        self.positions.get(id.0 as usize).copied().ok_or(UnknownNode(id))
    }

    /// Peripheral nodes sit within the margin of the area's edge (nodes
    /// exactly on the boundary are always peripheral).
    pub fn is_peripheral(&self, id: NodeId) -> Result<bool, UnknownNode> {
        let p = self.position(id)?;
        let edge = self.area.edge_distance(p);
        Ok(edge < self.peripheral_margin || edge == 0.0)
    }

    /// Home cell: the nearest station whose radius covers the node.
    pub fn home_station(&self, id: NodeId) -> Result<StationId, UnknownNode> {
        let p = self.position(id)?;
        let mut best: Option<(f64, StationId)> = None;
        for s in &self.stations {
            let d = math::dist(p, s.position);
            if d <= s.radius && best.map_or(true, |(bd, _)| d < bd) {
                best = Some((d, s.id));
            }
        }
        // coverage was checked at deploy time
        Ok(best.expect("deployment invariant: every node covered").1)
    }
}

/// Lay out the network. Uniform placement draws i.i.d. positions over the
/// area; grid placement fills the most-square grid covering the area,
/// row-major by node id, nodes at cell centers.
pub fn deploy(spec: &DeploymentSpec, rng: &mut DetRng) -> Result<Deployment, DeployError> {
    if spec.count == 0 {
        return Err(DeployError::InvalidSpec("node count must be at least 1"));
    }
    if !(spec.area.width() > 0.0) || !(spec.area.height() > 0.0) {
        return Err(DeployError::InvalidSpec("area must be non-degenerate"));
    }
    if spec.stations.is_empty() {
        return Err(DeployError::InvalidSpec("at least one base station required"));
    }

    let n = spec.count as usize;
    let mut positions = Vec::with_capacity(n);
    match spec.placement {
        Placement::UniformRandom => {
            for _ in 0..n {
                let x = rng.gen_range(spec.area.min[0]..spec.area.max[0]);
                let y = rng.gen_range(spec.area.min[1]..spec.area.max[1]);
                positions.push([x, y]);
            }
        }
        Placement::Grid => {
            let cols = {
                let mut c = 1usize;
                while c * c < n {
                    c += 1;
                }
                c
            };
            let rows = n.div_ceil(cols);
            let cell_w = spec.area.width() / cols as f64;
            let cell_h = spec.area.height() / rows as f64;
            for k in 0..n {
                let col = k % cols;
                let row = k / cols;
                positions.push([
                    spec.area.min[0] + (col as f64 + 0.5) * cell_w,
                    spec.area.min[1] + (row as f64 + 0.5) * cell_h,
                ]);
            }
        }
    }

    let uncovered: Vec<NodeId> = positions
        .iter()
        .enumerate()
        .filter(|(_, p)| !spec.stations.iter().any(|s| math::dist(**p, s.position) <= s.radius))
        .map(|(i, _)| NodeId(i as u32))
        .collect();
    if !uncovered.is_empty() {
        return Err(DeployError::Coverage { uncovered });
    }

    Ok(Deployment {
        area: spec.area,
        positions,
        stations: spec.stations.clone(),
        adjacency_radius: spec.adjacency_radius,
        max_neighbors: spec.max_neighbors,
        peripheral_margin: spec.peripheral_margin,
    })
}

/// Per node: up to `max_neighbors` nearest nodes within the adjacency
/// radius, ascending by distance, ties broken by ascending id. Membership
/// is not symmetric because of the cutoff.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencyMap {
    lists: Vec<Vec<NodeId>>,
}

impl AdjacencyMap {
    pub fn of(&self, id: NodeId) -> &[NodeId] {
        &self.lists[id.0 as usize]
    }

    pub fn node_count(&self) -> usize {
        self.lists.len()
    }

    /// Drop every neighbor for which `keep` is false, preserving order.
    pub fn retain<F: Fn(NodeId) -> bool>(&self, keep: F) -> AdjacencyMap {
        AdjacencyMap {
            lists: self
                .lists
                .iter()
                .map(|l| l.iter().copied().filter(|&j| keep(j)).collect())
                .collect(),
        }
    }
}

/// Build the adjacency map for a deployment.
pub fn neighbors(d: &Deployment) -> AdjacencyMap {
    let n = d.node_count();
    let mut lists = Vec::with_capacity(n);
    for a in 0..n {
        let pa = d.positions[a];
        let mut within: Vec<(f64, u32)> = (0..n)
            .filter(|&b| b != a)
            .map(|b| (math::dist(pa, d.positions[b]), b as u32))
            .filter(|&(dist, _)| dist <= d.adjacency_radius)
            .collect();
        within.sort_by(|x, y| x.partial_cmp(y).expect("finite distances"));
        within.truncate(d.max_neighbors);
        lists.push(within.into_iter().map(|(_, b)| NodeId(b)).collect());
    }
    AdjacencyMap { lists }
}

/// Hand-build a deployment from explicit positions (test and tooling aid;
/// the same invariants are checked as in `deploy`).
pub fn deployment_from_positions(
    area: Rect,
    positions: Vec<[f64; 2]>,
    stations: Vec<StationSite>,
    adjacency_radius: f64,
    max_neighbors: usize,
    peripheral_margin: f64,
) -> Result<Deployment, DeployError> {
    if positions.is_empty() {
        return Err(DeployError::InvalidSpec("node count must be at least 1"));
    }
    if positions.iter().any(|p| !area.contains(*p)) {
        return Err(DeployError::InvalidSpec("node outside area"));
    }
    let uncovered: Vec<NodeId> = positions
        .iter()
        .enumerate()
        .filter(|(_, p)| !stations.iter().any(|s| math::dist(**p, s.position) <= s.radius))
        .map(|(i, _)| NodeId(i as u32))
        .collect();
    if !uncovered.is_empty() {
        return Err(DeployError::Coverage { uncovered });
    }
    Ok(Deployment { area, positions, stations, adjacency_radius, max_neighbors, peripheral_margin })
}
