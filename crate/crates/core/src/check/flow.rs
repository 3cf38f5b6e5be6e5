//! Integral max-flow on small directed networks.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Capacity used for edges that should never bind.
pub const UNBOUNDED: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub capacity: u64,
}

/// Directed graph with integral capacities and a designated source and sink.
///
/// Nodes are `0..node_count()`, numbered in creation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    nodes: usize,
    source: usize,
    sink: usize,
    edges: Vec<Edge>,
}

/// Result of [`FlowNetwork::max_flow`]: the value and the flow per edge, in
/// edge insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxFlow {
    pub value: u64,
    pub flows: Vec<u64>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: usize, sink: usize) -> Result<Self> {
        if source == sink {
            return Err(Error::InvalidNetwork("source and sink coincide"));
        }
        if source >= nodes || sink >= nodes {
            return Err(Error::InvalidNetwork("source or sink is not a node"));
        }
        Ok(FlowNetwork {
            nodes,
            source,
            sink,
            edges: Vec::new(),
        })
    }

    pub fn add_node(&mut self) -> usize {
        self.nodes += 1;
        self.nodes - 1
    }

    pub fn add_edge(&mut self, from: usize, to: usize, capacity: u64) -> Result<usize> {
        if from >= self.nodes || to >= self.nodes {
            return Err(Error::InvalidNetwork("edge endpoint is not a node"));
        }
        if to == self.source {
            return Err(Error::InvalidNetwork("edge into the source"));
        }
        if from == self.sink {
            return Err(Error::InvalidNetwork("edge out of the sink"));
        }
        if from == to {
            return Err(Error::InvalidNetwork("self loop"));
        }
        self.edges.push(Edge { from, to, capacity });
        Ok(self.edges.len() - 1)
    }

    pub fn node_count(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, node: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.from == node)
    }

    /// Edmonds-Karp: shortest augmenting paths found by breadth-first search.
    /// Neighbours are visited in node creation order, so results are
    /// deterministic.
    pub fn max_flow(&self) -> MaxFlow {
        // residual arcs: 2k forward, 2k+1 backward
        let mut cap: Vec<u64> = Vec::with_capacity(self.edges.len() * 2);
        let mut head: Vec<usize> = Vec::with_capacity(self.edges.len() * 2);
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); self.nodes];
        for e in &self.edges {
            let k = cap.len();
            cap.push(e.capacity);
            head.push(e.to);
            cap.push(0);
            head.push(e.from);
            adj[e.from].push(k);
            adj[e.to].push(k + 1);
        }
        for arcs in adj.iter_mut() {
            arcs.sort_by_key(|&a| (head[a], a));
        }

        let mut value: u64 = 0;
        let mut pred: Vec<Option<usize>> = vec![None; self.nodes];
        loop {
            pred.iter_mut().for_each(|p| *p = None);
            let mut seen = vec![false; self.nodes];
            seen[self.source] = true;
            let mut queue = VecDeque::from([self.source]);
            while let Some(u) = queue.pop_front() {
                if u == self.sink {
                    break;
                }
                for &a in &adj[u] {
                    let v = head[a];
                    if !seen[v] && cap[a] > 0 {
                        seen[v] = true;
                        pred[v] = Some(a);
                        queue.push_back(v);
                    }
                }
            }
            if !seen[self.sink] {
                break;
            }
            let mut bottleneck = UNBOUNDED;
            let mut v = self.sink;
            while let Some(a) = pred[v] {
                bottleneck = bottleneck.min(cap[a]);
                v = head[a ^ 1];
            }
            if bottleneck == UNBOUNDED {
                // an unbounded source-to-sink path; report saturation
                value = UNBOUNDED;
                break;
            }
            let mut v = self.sink;
            while let Some(a) = pred[v] {
                cap[a] -= bottleneck;
                cap[a ^ 1] = cap[a ^ 1].saturating_add(bottleneck);
                v = head[a ^ 1];
            }
            value = value.saturating_add(bottleneck);
        }

        let flows = self
            .edges
            .iter()
            .enumerate()
            .map(|(k, e)| e.capacity - cap[2 * k].min(e.capacity))
            .collect();
        MaxFlow { value, flows }
    }
}

/// True when the copies on both sides can be paired one-to-one so that every
/// pair satisfies `compatible`. Multiplicities give the number of copies.
pub fn b_matching_saturates<L, R, F>(left: &[(L, u64)], right: &[(R, u64)], compatible: F) -> bool
where
    F: Fn(&L, &R) -> bool,
{
    b_matching(left, right, compatible).is_some()
}

/// Like [`b_matching_saturates`], returning for every left entry the list of
/// `(right index, copies)` it is paired with.
pub fn b_matching<L, R, F>(left: &[(L, u64)], right: &[(R, u64)], compatible: F) -> Option<Vec<Vec<(usize, u64)>>>
where
    F: Fn(&L, &R) -> bool,
{
    let total_l: u64 = left.iter().map(|(_, m)| m).sum();
    let total_r: u64 = right.iter().map(|(_, m)| m).sum();
    if total_l != total_r {
        return None;
    }
    let source = 0;
    let sink = 1 + left.len() + right.len();
    let mut net = FlowNetwork::new(sink + 1, source, sink).expect("distinct endpoints");
    for (i, (_, m)) in left.iter().enumerate() {
        net.add_edge(source, 1 + i, *m).expect("valid edge");
    }
    let mut middle = Vec::new();
    for (i, (l, m)) in left.iter().enumerate() {
        for (j, (r, _)) in right.iter().enumerate() {
            if compatible(l, r) {
                let e = net.add_edge(1 + i, 1 + left.len() + j, *m).expect("valid edge");
                middle.push((i, j, e));
            }
        }
    }
    for (j, (_, m)) in right.iter().enumerate() {
        net.add_edge(1 + left.len() + j, sink, *m).expect("valid edge");
    }
    let flow = net.max_flow();
    if flow.value != total_l {
        return None;
    }
    let mut out = vec![Vec::new(); left.len()];
    for (i, j, e) in middle {
        if flow.flows[e] > 0 {
            out[i].push((j, flow.flows[e]));
        }
    }
    Some(out)
}
