//! Colored crystal graphs shared by generation, Stembridge checking and
//! character comparison.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{BzError, Result};
use crate::roots::CartanSpec;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub id: usize,
    /// Coefficients over the coroots h_i, in the order of `CartanSpec::indices`.
    pub weight: Vec<i64>,
    pub eps: Vec<i64>,
    pub phi: Vec<i64>,
    pub depth: usize,
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub key: Option<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub color: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrystalGraph {
    pub cartan: CartanSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<i64>>,
    /// Generation depth bound; `None` when generation ran to exhaustion.
    #[serde(default)]
    pub max_depth: Option<usize>,
    pub root: usize,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
}

/// Adjacency lookups, one outgoing and one incoming edge per color.
#[derive(Clone, Debug, Default)]
pub struct GraphIndex {
    out: HashMap<(usize, i64), usize>,
    inn: HashMap<(usize, i64), usize>,
}

impl GraphIndex {
    pub fn f(&self, x: usize, p: i64) -> Option<usize> {
        self.out.get(&(x, p)).copied()
    }

    pub fn e(&self, x: usize, p: i64) -> Option<usize> {
        self.inn.get(&(x, p)).copied()
    }
}

impl CrystalGraph {
    pub fn colors(&self) -> Vec<i64> {
        self.cartan.indices()
    }

    pub fn color_pos(&self, p: i64) -> Option<usize> {
        self.colors().iter().position(|&c| c == p)
    }

    /// Builds the adjacency index; fails on a repeated color at a node.
    pub fn index(&self) -> Result<GraphIndex> {
        let mut idx = GraphIndex::default();
        let n = self.nodes.len();
        for e in &self.edges {
            if e.from >= n || e.to >= n {
                return Err(BzError::Parse(format!("edge {e:?} out of range")));
            }
            if idx.out.insert((e.from, e.color), e.to).is_some() {
                return Err(BzError::Integrity(format!(
                    "node {} has two outgoing {}-edges",
                    e.from, e.color
                )));
            }
            if idx.inn.insert((e.to, e.color), e.from).is_some() {
                return Err(BzError::Integrity(format!(
                    "node {} has two incoming {}-edges",
                    e.to, e.color
                )));
            }
        }
        Ok(idx)
    }

    /// Edge-local invariants: weight drops by h_p and ε_p rises by one.
    pub fn edge_consistency(&self) -> Vec<GraphEdge> {
        let mut bad = Vec::new();
        for e in &self.edges {
            let Some(k) = self.color_pos(e.color) else {
                bad.push(*e);
                continue;
            };
            let (x, y) = (&self.nodes[e.from], &self.nodes[e.to]);
            let ok_w = x
                .weight
                .iter()
                .zip(&y.weight)
                .enumerate()
                .all(|(j, (a, b))| if j == k { *b == a - 1 } else { a == b });
            if !ok_w || y.eps[k] != x.eps[k] + 1 {
                bad.push(*e);
            }
        }
        bad
    }

    /// Relabels nodes in increasing order of `keys` and sorts edges.
    pub fn canonicalize<K: Ord + Clone>(&mut self, keys: &[K]) {
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
        let mut new_id = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            new_id[old] = new;
        }
        let mut nodes: Vec<GraphNode> = order.iter().map(|&o| self.nodes[o].clone()).collect();
        for (k, n) in nodes.iter_mut().enumerate() {
            n.id = k;
        }
        self.nodes = nodes;
        for e in &mut self.edges {
            e.from = new_id[e.from];
            e.to = new_id[e.to];
        }
        self.edges.sort();
        self.root = new_id[self.root];
    }

    /// Number of nodes with depth at most `d`.
    pub fn count_to_depth(&self, d: usize) -> usize {
        self.nodes.iter().filter(|n| n.depth <= d).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let g: CrystalGraph = serde_json::from_str(s).map_err(|e| BzError::Parse(e.to_string()))?;
        let rank = g.cartan.rank();
        for n in &g.nodes {
            if n.weight.len() != rank || n.eps.len() != rank || n.phi.len() != rank {
                return Err(BzError::Parse(format!(
                    "node {} has wrong vector length",
                    n.id
                )));
            }
        }
        if g.nodes.iter().enumerate().any(|(k, n)| n.id != k) || g.root >= g.nodes.len().max(1) {
            return Err(BzError::Parse("node ids must be 0..n in order".into()));
        }
        g.index()?;
        Ok(g)
    }

    pub fn to_dot(&self) -> String {
        const PALETTE: [&str; 8] = [
            "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf",
        ];
        let colors = self.colors();
        let mut s = String::from("digraph crystal {\n  node [shape=box, fontsize=10];\n");
        for n in &self.nodes {
            let style = if n.complete { "" } else { ", style=dashed" };
            let _ = writeln!(s, "  n{} [label=\"{:?}\"{}];", n.id, n.weight, style);
        }
        for e in &self.edges {
            let k = colors.iter().position(|&c| c == e.color).unwrap_or(0);
            let _ = writeln!(
                s,
                "  n{} -> n{} [label=\"{}\", color=\"{}\"];",
                e.from,
                e.to,
                e.color,
                PALETTE[k % PALETTE.len()]
            );
        }
        s.push_str("}\n");
        s
    }
}
