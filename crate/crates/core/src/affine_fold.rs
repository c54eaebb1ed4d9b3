//! σ-invariant data of affine type A_ℓ^(1).
//!
//! Elements are words of folded lowering operators applied to O and are
//! evaluated lazily through [`WordEval`]. Node identity comes from raising
//! normal forms: every node other than O is keyed by the least residue r
//! with ε̂_r > 0 together with the node ê_r of it. Raising along a color that
//! was not the one used to create a node is worked out from the local
//! structure of the crystal (Stembridge's relations between two colors), and
//! in the one case where two answers are locally possible the candidates are
//! told apart by comparing components.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bz_finite::{validate, FiniteBZDatum};
use crate::crystal_finite::{DominantWeight, GenError};
use crate::error::{BzError, Result};
use crate::graph::{CrystalGraph, GraphEdge, GraphNode};
use crate::lazy::{EvalLimits, Family, TrieId, WordEval, ROOT};
use crate::roots::{affine_a, CartanSpec, ChamberWeight, Interval, WeylElem};

pub const DEFAULT_AFFINE_BUDGET: usize = 100_000;

fn check_ell(ell: i64) -> Result<()> {
    if ell < 2 {
        return Err(BzError::Domain(format!(
            "ell must be at least 2, got {ell}"
        )));
    }
    Ok(())
}

/// A word p̄_1, …, p̄_N of residues; the element is f̂_{p̄_N}⋯f̂_{p̄_1}O.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LazyBZElement {
    ell: i64,
    word: Vec<i64>,
}

impl LazyBZElement {
    pub fn origin(ell: i64) -> Result<Self> {
        check_ell(ell)?;
        Ok(LazyBZElement {
            ell,
            word: Vec::new(),
        })
    }

    pub fn from_word(ell: i64, word: &[i64]) -> Result<Self> {
        check_ell(ell)?;
        Ok(LazyBZElement {
            ell,
            word: word.iter().map(|p| p.rem_euclid(ell + 1)).collect(),
        })
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    /// Letters in the order they were applied.
    pub fn word(&self) -> &[i64] {
        &self.word
    }

    pub fn depth(&self) -> usize {
        self.word.len()
    }

    pub fn fold_f(&self, p: i64) -> Self {
        let mut word = self.word.clone();
        word.push(p.rem_euclid(self.ell + 1));
        LazyBZElement {
            ell: self.ell,
            word,
        }
    }

    /// wt(M) = Σ Θ_{Λ_i} ĥ_i, indexed by residue.
    pub fn fold_wt(&self) -> Vec<i64> {
        let mut wt = vec![0; (self.ell + 1) as usize];
        for &p in &self.word {
            wt[p as usize] -= 1;
        }
        wt
    }
}

/// L(γ,p): the points q ≡ p mod ℓ+1 with ⟨h_q, γ⟩ > 0.
pub fn lset(gamma: &ChamberWeight, p: i64, ell: i64) -> Vec<i64> {
    let n = ell + 1;
    gamma
        .positive_pairings()
        .filter(|q| (q - p).rem_euclid(n) == 0)
        .collect()
}

/// S = ℤ_{≤i−1} ∪ {i+1}, the chamber weight read by the λ̂-inequality at i.
pub fn neg_s_fund(i: i64) -> ChamberWeight {
    ChamberWeight::from_parts(i - 1, &[i + 1]).expect("well formed")
}

pub type NodeId = usize;

#[derive(Clone, Debug)]
struct Node {
    trie: TrieId,
    depth: usize,
    from: Option<(NodeId, i64)>,
    eps: Vec<i64>,
    key: Option<(i64, NodeId)>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldStats {
    pub nodes: usize,
    pub raise_calls: u64,
    /// Raises where both local candidates were consistent with ε̂.
    pub ambiguous: u64,
    pub probe_resolved: u64,
    pub component_calls: u64,
}

/// Evaluation memo plus the crystal structure discovered so far.
#[derive(Debug)]
pub struct FoldContext {
    ell: i64,
    lambda: Option<Vec<i64>>,
    eval: WordEval,
    nodes: Vec<Node>,
    index: HashMap<(i64, NodeId), NodeId>,
    children: HashMap<(NodeId, i64), Option<NodeId>>,
    raised: HashMap<(NodeId, i64), Option<NodeId>>,
    probes: Vec<ChamberWeight>,
    budget: usize,
    stats: FoldStats,
}

struct View<'a> {
    trie: TrieId,
    from: (NodeId, i64),
    eps: &'a [i64],
}

impl FoldContext {
    /// Context for B̂(∞).
    pub fn new(ell: i64) -> Result<Self> {
        check_ell(ell)?;
        let n = (ell + 1) as usize;
        let w = (2 * ell + 3) as usize;
        let probes = (1..(1u64 << w) - 1)
            .map(|m| ChamberWeight::from_mask(0, w, m))
            .collect();
        Ok(FoldContext {
            ell,
            lambda: None,
            eval: WordEval::new(Family::Affine { ell }),
            nodes: vec![Node {
                trie: ROOT,
                depth: 0,
                from: None,
                eps: vec![0; n],
                key: None,
            }],
            index: HashMap::new(),
            children: HashMap::new(),
            raised: HashMap::new(),
            probes,
            budget: DEFAULT_AFFINE_BUDGET,
            stats: FoldStats {
                nodes: 1,
                ..Default::default()
            },
        })
    }

    /// Context for B̂(λ̂); lowering is gated by the λ̂-inequalities.
    pub fn with_lambda(ell: i64, lambda: &DominantWeight) -> Result<Self> {
        if lambda.rank() != (ell + 1) as usize {
            return Err(BzError::Domain(format!(
                "lambda needs {} coefficients, got {}",
                ell + 1,
                lambda.rank()
            )));
        }
        let mut ctx = Self::new(ell)?;
        ctx.lambda = Some(lambda.coeffs().to_vec());
        Ok(ctx)
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn with_limits(mut self, limits: EvalLimits) -> Self {
        self.eval = WordEval::new(Family::Affine { ell: self.ell }).with_limits(limits);
        self
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    pub fn lambda(&self) -> Option<&[i64]> {
        self.lambda.as_deref()
    }

    pub fn stats(&self) -> FoldStats {
        FoldStats {
            nodes: self.nodes.len(),
            component_calls: self.eval.calls(),
            ..self.stats
        }
    }

    fn n(&self) -> i64 {
        self.ell + 1
    }

    fn check(&self, m: &LazyBZElement) -> Result<()> {
        if m.ell != self.ell {
            return Err(BzError::Domain(format!(
                "element of level ell={} in a context for ell={}",
                m.ell, self.ell
            )));
        }
        Ok(())
    }

    fn trie_of(&mut self, m: &LazyBZElement) -> Result<TrieId> {
        self.check(m)?;
        Ok(self.eval.intern_word(&m.word))
    }

    pub fn component(&mut self, m: &LazyBZElement, gamma: &ChamberWeight) -> Result<i64> {
        let t = self.trie_of(m)?;
        self.eval.component(t, gamma)
    }

    /// Stabilized component at wϖ_i^J, windows grown by ℓ+1 per side.
    pub fn fold_theta(&mut self, m: &LazyBZElement, w: &WeylElem, i: i64) -> Result<i64> {
        let t = self.trie_of(m)?;
        Ok(self.eval.stabilized(t, w, i, self.ell + 1)?.0)
    }

    pub fn fold_epsilon(&mut self, m: &LazyBZElement, p: i64) -> Result<i64> {
        let t = self.trie_of(m)?;
        self.eval.epsilon(t, p)
    }

    /// ⟨wt(M), α̂_p⟩ + ε̂_p(M).
    pub fn fold_phi(&mut self, m: &LazyBZElement, p: i64) -> Result<i64> {
        let wt = m.fold_wt();
        let pairing: i64 = (0..self.n())
            .map(|q| wt[q as usize] * affine_a(self.ell, q, p))
            .sum();
        Ok(pairing + self.fold_epsilon(m, p)?)
    }

    pub fn affine_lambda_membership(
        &mut self,
        m: &LazyBZElement,
        lambda: &DominantWeight,
    ) -> Result<bool> {
        let t = self.trie_of(m)?;
        for i in 0..self.n() {
            if self.eval.component(t, &neg_s_fund(i))? < -lambda.coeffs()[i as usize] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// F̂_p: f̂_p when the result stays in bz^σ(O; λ̂). Only the residue-p
    /// inequality can fail, so only that component is read.
    pub fn cap_f_affine(
        &mut self,
        m: &LazyBZElement,
        lambda: &DominantWeight,
        p: i64,
    ) -> Result<Option<LazyBZElement>> {
        let y = m.fold_f(p);
        let t = self.trie_of(&y)?;
        let p = p.rem_euclid(self.n());
        let ok = self.eval.component(t, &neg_s_fund(p))? >= -lambda.coeffs()[p as usize];
        Ok(ok.then_some(y))
    }

    /// Φ̂_p = Θ_{Λ_p} − Θ_{s_pΛ_p} + ⟨λ̂, α̂_p⟩.
    pub fn phi_affine(
        &mut self,
        m: &LazyBZElement,
        lambda: &DominantWeight,
        p: i64,
    ) -> Result<i64> {
        let t = self.trie_of(m)?;
        let p = p.rem_euclid(self.n());
        Ok(self.eval.theta_lambda(t, p) - self.eval.theta_s(t, p)? + lambda.coeffs()[p as usize])
    }

    fn gate(&mut self, t: TrieId, p: i64) -> Result<bool> {
        match &self.lambda {
            None => Ok(true),
            Some(l) => {
                let bound = -l[p as usize];
                Ok(self.eval.component(t, &neg_s_fund(p))? >= bound)
            }
        }
    }

    /// The node f̂_p x, created on first use; `None` when gated out.
    pub fn child(&mut self, x: NodeId, p: i64) -> Result<Option<NodeId>> {
        let p = p.rem_euclid(self.n());
        if let Some(&c) = self.children.get(&(x, p)) {
            return Ok(c);
        }
        let t = self.eval.intern(self.nodes[x].trie, p);
        if !self.gate(t, p)? {
            self.children.insert((x, p), None);
            return Ok(None);
        }
        let eps = (0..self.n())
            .map(|r| self.eval.epsilon(t, r))
            .collect::<Result<Vec<_>>>()?;
        if eps.iter().any(|&e| e < 0) || eps[p as usize] != self.nodes[x].eps[p as usize] + 1 {
            return Err(BzError::Integrity(format!(
                "ε̂ of f̂_{p} applied to node {x} is {eps:?}"
            )));
        }
        let r0 = eps.iter().position(|&e| e > 0).unwrap() as i64;
        let view = View {
            trie: t,
            from: (x, p),
            eps: &eps,
        };
        let parent = self
            .raise_view(&view, r0)?
            .ok_or_else(|| BzError::Integrity(format!("ê_{r0} undefined although ε̂_{r0} > 0")))?;
        let id = match self.index.get(&(r0, parent)) {
            Some(&id) => {
                if self.nodes[id].eps != eps {
                    return Err(BzError::Integrity(format!(
                        "node {id} reached twice with different ε̂"
                    )));
                }
                id
            }
            None => {
                if self.nodes.len() >= self.budget {
                    return Err(BzError::Capacity {
                        what: "affine crystal nodes".into(),
                        limit: self.budget,
                    });
                }
                let id = self.nodes.len();
                self.nodes.push(Node {
                    trie: t,
                    depth: self.nodes[x].depth + 1,
                    from: Some((x, p)),
                    eps,
                    key: Some((r0, parent)),
                });
                self.index.insert((r0, parent), id);
                self.raised.insert((id, r0), Some(parent));
                id
            }
        };
        self.children.insert((x, p), Some(id));
        self.raised.insert((id, p), Some(x));
        Ok(Some(id))
    }

    /// ê_r y.
    pub fn raise(&mut self, y: NodeId, r: i64) -> Result<Option<NodeId>> {
        let r = r.rem_euclid(self.n());
        if let Some(&v) = self.raised.get(&(y, r)) {
            return Ok(v);
        }
        let v = match self.nodes[y].from {
            None => None,
            Some(from) => {
                let eps = self.nodes[y].eps.clone();
                let view = View {
                    trie: self.nodes[y].trie,
                    from,
                    eps: &eps,
                };
                self.raise_view(&view, r)?
            }
        };
        self.raised.insert((y, r), v);
        Ok(v)
    }

    fn eps_of(&self, x: NodeId, r: i64) -> i64 {
        self.nodes[x].eps[r as usize]
    }

    fn raise_view(&mut self, y: &View, r: i64) -> Result<Option<NodeId>> {
        self.stats.raise_calls += 1;
        let (x, p) = y.from;
        if r == p {
            return Ok(Some(x));
        }
        let ey = y.eps[r as usize];
        if ey == 0 {
            return Ok(None);
        }
        let ex = self.eps_of(x, r);
        let w = self
            .raise(x, r)?
            .ok_or_else(|| BzError::Integrity(format!("ê_{r} of node {x} undefined")))?;
        let adjacent = affine_a(self.ell, r, p) == -1;
        match ex - ey {
            0 => self
                .child(w, p)?
                .map(Some)
                .ok_or_else(|| BzError::Integrity(format!("f̂_{p}ê_{r} of node {x} missing"))),
            1 if adjacent => {
                let ep = y.eps[p as usize];
                let a = match self.child(w, p)? {
                    Some(a) if self.eps_of(a, p) == ep && self.eps_of(a, r) == ey - 1 => Some(a),
                    _ => None,
                };
                let b = self
                    .candidate_b(w, r, p)?
                    .filter(|&b| self.eps_of(b, p) == ep + 1 && self.eps_of(b, r) == ey - 1);
                match (a, b) {
                    (Some(a), None) => Ok(Some(a)),
                    (None, Some(b)) => Ok(Some(b)),
                    (Some(a), Some(b)) if a == b => Ok(Some(a)),
                    (Some(a), Some(b)) => {
                        self.stats.ambiguous += 1;
                        let ma = self.lowers_to(a, r, y.trie)?;
                        let mb = self.lowers_to(b, r, y.trie)?;
                        match (ma, mb) {
                            (true, false) => {
                                self.stats.probe_resolved += 1;
                                Ok(Some(a))
                            }
                            (false, true) => {
                                self.stats.probe_resolved += 1;
                                Ok(Some(b))
                            }
                            _ => Err(BzError::Integrity(format!(
                                "cannot decide ê_{r} between nodes {a} and {b}"
                            ))),
                        }
                    }
                    (None, None) => Err(BzError::Integrity(format!(
                        "no local candidate for ê_{r} below node {x}"
                    ))),
                }
            }
            d => Err(BzError::Integrity(format!(
                "ε̂_{r} drops by {d} along f̂_{p} at node {x}"
            ))),
        }
    }

    /// f̂_p f̂_p f̂_r ê_p ê_r w, where w = ê_r x.
    fn candidate_b(&mut self, w: NodeId, r: i64, p: i64) -> Result<Option<NodeId>> {
        let Some(v) = self.raise(w, r)? else {
            return Ok(None);
        };
        let Some(v) = self.raise(v, p)? else {
            return Ok(None);
        };
        let mut z = v;
        for q in [r, p, p] {
            match self.child(z, q)? {
                Some(n) => z = n,
                None => return Ok(None),
            }
        }
        Ok(Some(z))
    }

    /// Whether f̂_r z agrees with the element at trie node `t` on the probes.
    fn lowers_to(&mut self, z: NodeId, r: i64, t: TrieId) -> Result<bool> {
        let tz = self.eval.intern(self.nodes[z].trie, r);
        for k in 0..self.probes.len() {
            let g = self.probes[k].clone();
            if self.eval.component(tz, &g)? != self.eval.component(t, &g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The node of a word, following (possibly gated) lowering steps.
    pub fn node_of(&mut self, m: &LazyBZElement) -> Result<Option<NodeId>> {
        self.check(m)?;
        let mut x = 0;
        for &p in &m.word {
            match self.child(x, p)? {
                Some(y) => x = y,
                None => return Ok(None),
            }
        }
        Ok(Some(x))
    }

    fn require_node(&mut self, m: &LazyBZElement) -> Result<NodeId> {
        self.node_of(m)?
            .ok_or_else(|| BzError::Domain(format!("word {:?} leaves the crystal", m.word)))
    }

    /// A word for the node, the one it was first reached by.
    pub fn element(&self, x: NodeId) -> LazyBZElement {
        LazyBZElement {
            ell: self.ell,
            word: self.eval.word(self.nodes[x].trie),
        }
    }

    pub fn depth(&self, x: NodeId) -> usize {
        self.nodes[x].depth
    }

    pub fn node_epsilon(&self, x: NodeId) -> &[i64] {
        &self.nodes[x].eps
    }

    pub fn fold_e(&mut self, m: &LazyBZElement, p: i64) -> Result<Option<LazyBZElement>> {
        let x = self.require_node(m)?;
        Ok(self.raise(x, p)?.map(|y| self.element(y)))
    }

    /// Residues extracted by repeatedly raising at the least residue with
    /// ε̂ > 0, down to O.
    pub fn normal_form_of(&self, mut x: NodeId) -> Vec<i64> {
        let mut out = Vec::new();
        while let Some((r, y)) = self.nodes[x].key {
            out.push(r);
            x = y;
        }
        out
    }

    pub fn normal_form(&mut self, m: &LazyBZElement) -> Result<Vec<i64>> {
        let x = self.require_node(m)?;
        Ok(self.normal_form_of(x))
    }

    /// Independent check of ê_p at a node: f̂_p of the answer must match the
    /// node on a window of components, and the answer restricted to that
    /// window must satisfy the finite edge and Plücker relations.
    pub fn cross_check_raise(&mut self, x: NodeId, p: i64, window: &Interval) -> Result<bool> {
        let Some(z) = self.raise(x, p)? else {
            return Ok(self.eps_of(x, p.rem_euclid(self.n())) == 0);
        };
        let tx = self.nodes[x].trie;
        let tz = self.nodes[z].trie;
        let tf = self.eval.intern(tz, p);
        let n = window.window_len();
        let mut dense = FiniteBZDatum::zero(*window)?;
        for mask in 1..(1u64 << n) - 1 {
            let g = ChamberWeight::from_mask(window.lo, n, mask);
            if self.eval.component(tf, &g)? != self.eval.component(tx, &g)? {
                return Ok(false);
            }
            dense.set(mask, self.eval.component(tz, &g)?);
        }
        Ok(validate(&dense).passed())
    }

    fn annotate(&mut self, x: NodeId) -> Result<(Vec<i64>, Vec<i64>, Vec<i64>)> {
        let t = self.nodes[x].trie;
        let n = self.n();
        let weight: Vec<i64> = (0..n).map(|i| self.eval.theta_lambda(t, i)).collect();
        let eps = self.nodes[x].eps.clone();
        let mut phi = Vec::with_capacity(n as usize);
        for p in 0..n {
            let pairing: i64 = (0..n)
                .map(|q| weight[q as usize] * affine_a(self.ell, q, p))
                .sum();
            let lp = self.lambda.as_ref().map_or(0, |l| l[p as usize]);
            let v = pairing + lp + eps[p as usize];
            if let Some(l) = &self.lambda {
                let big = self.eval.theta_lambda(t, p) - self.eval.theta_s(t, p)? + l[p as usize];
                if big != v {
                    return Err(BzError::Integrity(format!(
                        "Φ̂_{p} = {big} but ε̂ + ⟨Wt, α̂⟩ = {v} at node {x}"
                    )));
                }
            }
            phi.push(v);
        }
        Ok((weight, eps, phi))
    }
}

/// A generated affine crystal together with evaluation statistics.
#[derive(Clone, Debug)]
pub struct AffineCrystal {
    pub graph: CrystalGraph,
    pub words: Vec<Vec<i64>>,
    pub stats: FoldStats,
}

pub fn generate_affine_binf(
    ell: i64,
    depth: usize,
    budget: usize,
) -> std::result::Result<AffineCrystal, GenError<AffineCrystal>> {
    let ctx = FoldContext::new(ell)?.with_budget(budget);
    generate(ctx, depth)
}

pub fn generate_affine_blambda(
    ell: i64,
    lambda: &DominantWeight,
    depth: usize,
    budget: usize,
) -> std::result::Result<AffineCrystal, GenError<AffineCrystal>> {
    let ctx = FoldContext::with_lambda(ell, lambda)?.with_budget(budget);
    generate(ctx, depth)
}

fn generate(
    mut ctx: FoldContext,
    depth: usize,
) -> std::result::Result<AffineCrystal, GenError<AffineCrystal>> {
    let n = ctx.n();
    let mut order = vec![0usize];
    let mut level = vec![0usize];
    let mut seen = std::collections::HashSet::from([0usize]);
    let mut edges = Vec::new();
    let mut overflow = None;
    'bfs: for _ in 0..depth {
        let mut next = Vec::new();
        for &x in &level {
            for p in 0..n {
                let y = match ctx.child(x, p) {
                    Ok(Some(y)) => y,
                    Ok(None) => continue,
                    Err(e @ BzError::Capacity { .. }) => {
                        overflow = Some(e);
                        break 'bfs;
                    }
                    Err(e) => return Err(e.into()),
                };
                if seen.insert(y) {
                    next.push(y);
                    order.push(y);
                }
                edges.push((x, y, p));
            }
        }
        level = next;
    }
    let complete_below = if overflow.is_some() { 0 } else { depth };
    let crystal = assemble(&mut ctx, &order, &edges, depth, complete_below)?;
    match overflow {
        None => Ok(crystal),
        Some(error) => Err(GenError {
            error,
            partial: Some(Box::new(crystal)),
        }),
    }
}

fn assemble(
    ctx: &mut FoldContext,
    order: &[NodeId],
    edges: &[(NodeId, NodeId, i64)],
    depth: usize,
    complete_below: usize,
) -> Result<AffineCrystal> {
    let mut pos = HashMap::new();
    let mut nodes = Vec::with_capacity(order.len());
    let mut keys = Vec::with_capacity(order.len());
    let mut words = Vec::with_capacity(order.len());
    for (k, &x) in order.iter().enumerate() {
        pos.insert(x, k);
        let (weight, eps, phi) = ctx.annotate(x)?;
        let nf = ctx.normal_form_of(x);
        let d = ctx.depth(x);
        keys.push((d, nf.clone()));
        words.push(ctx.element(x).word);
        nodes.push(GraphNode {
            id: k,
            weight,
            eps,
            phi,
            depth: d,
            complete: d < complete_below,
            key: Some(nf),
        });
    }
    let edges = edges
        .iter()
        .map(|&(x, y, p)| GraphEdge {
            from: pos[&x],
            to: pos[&y],
            color: p,
        })
        .collect();
    let mut graph = CrystalGraph {
        cartan: CartanSpec::Affine { ell: ctx.ell },
        lambda: ctx.lambda.clone(),
        max_depth: Some(depth),
        root: 0,
        nodes,
        edges,
    };
    let mut perm: Vec<usize> = (0..keys.len()).collect();
    perm.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    let mut sorted_words = vec![Vec::new(); words.len()];
    for (new, &old) in perm.iter().enumerate() {
        sorted_words[new] = std::mem::take(&mut words[old]);
    }
    graph.canonicalize(&keys);
    Ok(AffineCrystal {
        graph,
        words: sorted_words,
        stats: ctx.stats(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(a: i64, ex: &[i64]) -> ChamberWeight {
        ChamberWeight::from_parts(a, ex).unwrap()
    }

    #[test]
    fn lset_examples() {
        assert_eq!(lset(&cw(0, &[2, 3]), 1, 2), vec![1]);
        assert!(lset(&cw(0, &[2, 3]), 0, 2).is_empty());
        assert_eq!(lset(&cw(0, &[2]), 1, 2), vec![1]);
        assert_eq!(lset(&cw(0, &[2, 5]), 1, 2), vec![1, 4]);
    }

    #[test]
    fn single_step_values() {
        let mut ctx = FoldContext::new(2).unwrap();
        let m = LazyBZElement::origin(2).unwrap().fold_f(1);
        assert_eq!(m.fold_wt(), vec![0, -1, 0]);
        assert_eq!(ctx.fold_theta(&m, &WeylElem::simple(0), 0).unwrap(), -1);
        assert_eq!(ctx.fold_epsilon(&m, 1).unwrap(), 1);
        assert_eq!(ctx.fold_epsilon(&m, 0).unwrap(), 0);
        assert_eq!(ctx.fold_epsilon(&m, 4).unwrap(), 1);
    }

    #[test]
    fn raise_and_residues() {
        let mut ctx = FoldContext::new(2).unwrap();
        let o = LazyBZElement::origin(2).unwrap();
        assert_eq!(ctx.fold_e(&o, 0).unwrap(), None);
        assert_eq!(ctx.fold_e(&o.fold_f(1), 1).unwrap(), Some(o.clone()));
        let a = o.fold_f(1).fold_f(4);
        let b = o.fold_f(1).fold_f(1);
        assert_eq!(ctx.normal_form(&a).unwrap(), ctx.normal_form(&b).unwrap());
        assert_eq!(ctx.normal_form(&o.fold_f(1)).unwrap(), vec![1]);
        assert!(ctx.normal_form(&o).unwrap().is_empty());
    }

    #[test]
    fn basic_representation_start() {
        let l = DominantWeight::new(vec![1, 0, 0]).unwrap();
        let mut ctx = FoldContext::new(2).unwrap();
        let o = LazyBZElement::origin(2).unwrap();
        assert!(ctx.affine_lambda_membership(&o, &l).unwrap());
        assert_eq!(ctx.cap_f_affine(&o, &l, 1).unwrap(), None);
        assert!(ctx.cap_f_affine(&o, &l, 0).unwrap().is_some());
        assert_eq!(ctx.phi_affine(&o, &l, 0).unwrap(), 1);
        assert_eq!(ctx.phi_affine(&o, &l, 2).unwrap(), 0);
    }
}
