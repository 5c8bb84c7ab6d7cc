//! Brute-force references for tests. Nothing here calls the routing or
//! planning code: lengths come straight from node coordinates and every
//! simple path / release order is enumerated.

#![allow(dead_code)]

use std::collections::HashMap;

use skyway_core::{Package, SkywayNetwork};

pub const TOL: f64 = 1e-9;

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Adjacency rebuilt from the raw segment list, edge length recomputed
/// from coordinates.
pub struct Graph {
    pub ids: Vec<String>,
    adj: Vec<Vec<(usize, f64)>>,
    index: HashMap<String, usize>,
}

impl Graph {
    pub fn from_network(net: &SkywayNetwork) -> Self {
        let ids: Vec<String> = net.nodes().iter().map(|n| n.id.clone()).collect();
        let index: HashMap<String, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.clone(), i))
            .collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for s in net.segments() {
            let a = index[&s.endpoint_a];
            let b = index[&s.endpoint_b];
            let (na, nb) = (&net.nodes()[a], &net.nodes()[b]);
            let len = ((na.x - nb.x).powi(2) + (na.y - nb.y).powi(2)).sqrt();
            adj[a].push((b, len));
            adj[b].push((a, len));
        }
        Self { ids, adj, index }
    }

    pub fn idx(&self, id: &str) -> usize {
        self.index[id]
    }

    /// Every simple path from `from`, as (node sequence, length).
    pub fn simple_paths_from(&self, from: usize) -> Vec<(Vec<usize>, f64)> {
        let mut out = Vec::new();
        let mut on_path = vec![false; self.ids.len()];
        let mut stack = vec![from];
        on_path[from] = true;
        self.extend(&mut stack, &mut on_path, 0.0, &mut out);
        out
    }

    fn extend(
        &self,
        stack: &mut Vec<usize>,
        on_path: &mut [bool],
        len: f64,
        out: &mut Vec<(Vec<usize>, f64)>,
    ) {
        out.push((stack.clone(), len));
        let last = *stack.last().unwrap();
        for &(v, w) in &self.adj[last] {
            if !on_path[v] {
                on_path[v] = true;
                stack.push(v);
                self.extend(stack, on_path, len + w, out);
                stack.pop();
                on_path[v] = false;
            }
        }
    }

    /// Minimum simple-path length from `from` to every node.
    pub fn all_distances_from(&self, from: usize) -> Vec<f64> {
        let mut best = vec![f64::INFINITY; self.ids.len()];
        for (path, len) in self.simple_paths_from(from) {
            let end = *path.last().unwrap();
            if len < best[end] {
                best[end] = len;
            }
        }
        best
    }

    pub fn distance(&self, a: &str, b: &str) -> f64 {
        self.all_distances_from(self.idx(a))[self.idx(b)]
    }

    /// Among minimum-length paths, the one with fewest hops, then the
    /// lexicographically smallest id sequence.
    pub fn preferred_path(&self, a: &str, b: &str) -> (Vec<String>, f64) {
        let (ia, ib) = (self.idx(a), self.idx(b));
        let candidates: Vec<(Vec<String>, f64)> = self
            .simple_paths_from(ia)
            .into_iter()
            .filter(|(p, _)| *p.last().unwrap() == ib)
            .map(|(p, len)| (p.iter().map(|&i| self.ids[i].clone()).collect(), len))
            .collect();
        let min = candidates.iter().map(|c| c.1).fold(f64::INFINITY, f64::min);
        candidates
            .into_iter()
            .filter(|c| close(c.1, min, TOL))
            .min_by(|x, y| x.0.len().cmp(&y.0.len()).then_with(|| x.0.cmp(&y.0)))
            .unwrap()
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Tour length (source, destinations in order, back to source) using
/// brute-force distances.
pub fn order_length(graph: &Graph, source: &str, order: &[&Package]) -> f64 {
    let mut total = 0.0;
    let mut at = source;
    for p in order {
        total += graph.distance(at, &p.destination);
        at = &p.destination;
    }
    total + graph.distance(at, source)
}

/// Best release order by total distance; ties go to the smallest id
/// sequence.
pub fn best_order(net: &SkywayNetwork, source: &str, packages: &[Package]) -> (Vec<String>, f64) {
    let graph = Graph::from_network(net);
    let stops: Vec<&str> = std::iter::once(source)
        .chain(packages.iter().map(|p| p.destination.as_str()))
        .collect();
    let mut dist = HashMap::new();
    for a in &stops {
        let row = graph.all_distances_from(graph.idx(a));
        for b in &stops {
            dist.insert((a.to_string(), b.to_string()), row[graph.idx(b)]);
        }
    }
    let idx: Vec<usize> = (0..packages.len()).collect();
    let mut best: Option<(Vec<String>, f64)> = None;
    for perm in permutations(&idx) {
        let mut total = 0.0;
        let mut at = source.to_string();
        for &k in &perm {
            total += dist[&(at.clone(), packages[k].destination.clone())];
            at = packages[k].destination.clone();
        }
        total += dist[&(at, source.to_string())];
        let ids: Vec<String> = perm.iter().map(|&k| packages[k].id.clone()).collect();
        best = match best {
            None => Some((ids, total)),
            Some((bids, btotal)) => {
                if total < btotal && !close(total, btotal, TOL) {
                    Some((ids, total))
                } else if close(total, btotal, TOL) && ids < bids {
                    Some((ids, total.min(btotal)))
                } else {
                    Some((bids, btotal))
                }
            }
        };
    }
    best.unwrap()
}
