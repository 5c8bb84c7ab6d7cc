//! Skyway network: rooftop stations joined by straight flight corridors.
//!
//! The network is an undirected graph whose edge weights are the horizontal
//! Euclidean distance between the two rooftops. It is validated once at
//! construction (unique ids, known endpoints, no self loops, no parallel
//! segments, connected) and is immutable afterwards.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::approx_eq;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NetworkError {
    #[error("network has no nodes")]
    Empty,
    #[error("invalid node {id:?}: {reason}")]
    InvalidNode { id: String, reason: String },
    #[error("duplicate node id {0:?}")]
    DuplicateNodeId(String),
    #[error("segment {index} references unknown node {id:?}")]
    UnknownEndpoint { index: usize, id: String },
    #[error("segment {index} connects node {id:?} to itself")]
    SelfLoopSegment { index: usize, id: String },
    #[error("duplicate segment between {a:?} and {b:?}")]
    DuplicateSegment { a: String, b: String },
    #[error("segment between {a:?} and {b:?} has zero length")]
    ZeroLengthSegment { a: String, b: String },
    #[error("network is disconnected; unreachable nodes: {}", .0.join(", "))]
    DisconnectedNetwork(Vec<String>),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
}

/// A take-off/landing station on a building rooftop.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub id: String,
    pub x: f64,
    pub y: f64,
    pub rooftop_height: f64,
}

impl Node {
    pub fn new(id: impl Into<String>, x: f64, y: f64, rooftop_height: f64) -> Self {
        Self {
            id: id.into(),
            x,
            y,
            rooftop_height,
        }
    }

    pub fn ground_distance(&self, other: &Node) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub endpoint_a: String,
    pub endpoint_b: String,
    pub length: f64,
}

/// A route through the network.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Path {
    pub node_sequence: Vec<String>,
    pub total_length: f64,
}

impl Path {
    pub fn stationary(node: impl Into<String>) -> Self {
        Self {
            node_sequence: vec![node.into()],
            total_length: 0.0,
        }
    }

    pub fn start(&self) -> &str {
        &self.node_sequence[0]
    }

    pub fn end(&self) -> &str {
        self.node_sequence.last().expect("path is never empty")
    }

    pub fn hop_count(&self) -> usize {
        self.node_sequence.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkywayNetwork {
    nodes: Vec<Node>,
    segments: Vec<Segment>,
    index: HashMap<String, usize>,
    // neighbours sorted by id so every traversal is deterministic
    adjacency: Vec<Vec<(usize, f64)>>,
}

#[derive(Clone, Copy, PartialEq)]
struct Frontier {
    dist: f64,
    node: usize,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Builds and validates a skyway network.
///
/// Segment lengths are derived from the ground coordinates of their
/// endpoints; rooftop heights do not contribute.
pub fn build_network<S: AsRef<str>>(
    nodes: Vec<Node>,
    segments: &[(S, S)],
) -> Result<SkywayNetwork, NetworkError> {
    if nodes.is_empty() {
        return Err(NetworkError::Empty);
    }
    let mut index = HashMap::with_capacity(nodes.len());
    for (i, node) in nodes.iter().enumerate() {
        if node.id.is_empty() {
            return Err(NetworkError::InvalidNode {
                id: node.id.clone(),
                reason: "id is empty".into(),
            });
        }
        if !(node.x.is_finite() && node.y.is_finite()) {
            return Err(NetworkError::InvalidNode {
                id: node.id.clone(),
                reason: "coordinates must be finite".into(),
            });
        }
        if !(node.rooftop_height.is_finite() && node.rooftop_height >= 0.0) {
            return Err(NetworkError::InvalidNode {
                id: node.id.clone(),
                reason: format!("rooftop height {} must be >= 0", node.rooftop_height),
            });
        }
        if index.insert(node.id.clone(), i).is_some() {
            return Err(NetworkError::DuplicateNodeId(node.id.clone()));
        }
    }

    let mut seen = HashSet::new();
    let mut built = Vec::with_capacity(segments.len());
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for (i, (a, b)) in segments.iter().enumerate() {
        let (a, b) = (a.as_ref(), b.as_ref());
        let ia = *index.get(a).ok_or_else(|| NetworkError::UnknownEndpoint {
            index: i,
            id: a.to_string(),
        })?;
        let ib = *index.get(b).ok_or_else(|| NetworkError::UnknownEndpoint {
            index: i,
            id: b.to_string(),
        })?;
        if ia == ib {
            return Err(NetworkError::SelfLoopSegment {
                index: i,
                id: a.to_string(),
            });
        }
        if !seen.insert((ia.min(ib), ia.max(ib))) {
            return Err(NetworkError::DuplicateSegment {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        let length = nodes[ia].ground_distance(&nodes[ib]);
        if length <= 0.0 {
            return Err(NetworkError::ZeroLengthSegment {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        adjacency[ia].push((ib, length));
        adjacency[ib].push((ia, length));
        built.push(Segment {
            endpoint_a: a.to_string(),
            endpoint_b: b.to_string(),
            length,
        });
    }
    for list in &mut adjacency {
        list.sort_by(|l, r| nodes[l.0].id.cmp(&nodes[r.0].id));
    }

    let network = SkywayNetwork {
        nodes,
        segments: built,
        index,
        adjacency,
    };
    let unreachable = network.unreachable_from(0);
    if !unreachable.is_empty() {
        return Err(NetworkError::DisconnectedNetwork(unreachable));
    }
    Ok(network)
}

impl SkywayNetwork {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn node(&self, id: &str) -> Option<&Node> {
        self.index.get(id).map(|&i| &self.nodes[i])
    }

    fn require(&self, id: &str) -> Result<usize, NetworkError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| NetworkError::UnknownNode(id.to_string()))
    }

    /// Neighbours of `id` with segment lengths, ordered by neighbour id.
    pub fn neighbors(&self, id: &str) -> Result<Vec<(&str, f64)>, NetworkError> {
        let i = self.require(id)?;
        Ok(self.adjacency[i]
            .iter()
            .map(|&(j, w)| (self.nodes[j].id.as_str(), w))
            .collect())
    }

    /// Length of the direct segment between two nodes, if one exists.
    pub fn segment_length(&self, a: &str, b: &str) -> Option<f64> {
        let ia = *self.index.get(a)?;
        let ib = *self.index.get(b)?;
        self.adjacency[ia]
            .iter()
            .find(|&&(j, _)| j == ib)
            .map(|&(_, w)| w)
    }

    fn unreachable_from(&self, start: usize) -> Vec<String> {
        let mut visited = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([start]);
        visited[start] = true;
        while let Some(u) = queue.pop_front() {
            for &(v, _) in &self.adjacency[u] {
                if !visited[v] {
                    visited[v] = true;
                    queue.push_back(v);
                }
            }
        }
        let mut missing: Vec<String> = visited
            .iter()
            .enumerate()
            .filter(|(_, &seen)| !seen)
            .map(|(i, _)| self.nodes[i].id.clone())
            .collect();
        missing.sort();
        missing
    }

    fn dijkstra(&self, source: usize) -> Vec<f64> {
        let mut dist = vec![f64::INFINITY; self.nodes.len()];
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(Frontier {
            dist: 0.0,
            node: source,
        });
        while let Some(Frontier { dist: d, node: u }) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, w) in &self.adjacency[u] {
                let candidate = d + w;
                if candidate < dist[v] {
                    dist[v] = candidate;
                    heap.push(Frontier {
                        dist: candidate,
                        node: v,
                    });
                }
            }
        }
        dist
    }

    /// Shortest-path distances from `from` to every node, keyed by node id.
    pub fn distances_from(&self, from: &str) -> Result<HashMap<&str, f64>, NetworkError> {
        let s = self.require(from)?;
        Ok(self
            .dijkstra(s)
            .into_iter()
            .enumerate()
            .map(|(i, d)| (self.nodes[i].id.as_str(), d))
            .collect())
    }

    /// Minimum-length route between two nodes.
    ///
    /// Among routes of equal length the one with the fewest hops wins, then
    /// the lexicographically smallest node sequence.
    pub fn shortest_path(&self, from: &str, to: &str) -> Result<Path, NetworkError> {
        let s = self.require(from)?;
        let t = self.require(to)?;
        if s == t {
            return Ok(Path::stationary(from));
        }

        let dist_to = self.dijkstra(t);
        let tight = |u: usize, v: usize, w: f64| {
            dist_to[v] < dist_to[u] && approx_eq(dist_to[u], w + dist_to[v])
        };

        // Hops to the target along edges that lie on some shortest path.
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by(|&a, &b| dist_to[a].total_cmp(&dist_to[b]));
        let mut hops = vec![usize::MAX; self.nodes.len()];
        hops[t] = 0;
        for &u in &order {
            if u == t {
                continue;
            }
            for &(v, w) in &self.adjacency[u] {
                if tight(u, v, w) && hops[v] != usize::MAX {
                    hops[u] = hops[u].min(hops[v] + 1);
                }
            }
        }

        let mut sequence = vec![self.nodes[s].id.clone()];
        let mut total = 0.0;
        let mut current = s;
        while current != t {
            let &(next, w) = self.adjacency[current]
                .iter()
                .find(|&&(v, w)| {
                    tight(current, v, w) && hops[v] != usize::MAX && hops[v] + 1 == hops[current]
                })
                .expect("connected network always has a shortest-path successor");
            sequence.push(self.nodes[next].id.clone());
            total += w;
            current = next;
        }
        Ok(Path {
            node_sequence: sequence,
            total_length: total,
        })
    }

    /// Checks that consecutive nodes of `path` are joined by segments and
    /// that its stated length matches the traversed segments.
    pub fn validate_path(&self, path: &Path) -> Result<(), NetworkError> {
        if path.node_sequence.is_empty() {
            return Err(NetworkError::InvalidPath("empty node sequence".into()));
        }
        let mut total = 0.0;
        for pair in path.node_sequence.windows(2) {
            self.require(&pair[0])?;
            self.require(&pair[1])?;
            total += self.segment_length(&pair[0], &pair[1]).ok_or_else(|| {
                NetworkError::InvalidPath(format!("no segment {} -> {}", pair[0], pair[1]))
            })?;
        }
        self.require(path.end())?;
        if !approx_eq(total, path.total_length) {
            return Err(NetworkError::InvalidPath(format!(
                "path length {} does not match segments ({total})",
                path.total_length
            )));
        }
        Ok(())
    }
}
