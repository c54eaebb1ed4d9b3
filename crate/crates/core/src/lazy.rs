//! Lazy, memoized evaluation of components of elements written as words of
//! lowering operators applied to O, for type A_∞ (single f_t steps) and for
//! the σ-folded operators f̂_p of affine type.
//!
//! A step f_L with L a set of pairwise distant points, applied to M with
//! ⟨h_q, γ⟩ > 0 for every q ∈ L, unfolds to
//!     (f_L M)_γ = min_{T ⊆ L} (M_{s_T γ} + |T|·c)
//! where c is the common value of c_q(M); the constant does not move while
//! the factors of f_L are applied because each factor only changes Θ near
//! its own point.

use std::collections::HashMap;

use crate::error::{add, mul, BzError, Result};
use crate::roots::{ChamberWeight, Interval, WeylElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    AInfinity,
    Affine { ell: i64 },
}

impl Family {
    fn modulus(&self) -> Option<i64> {
        match self {
            Family::AInfinity => None,
            Family::Affine { ell } => Some(ell + 1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalLimits {
    /// Largest |L(γ,p)| expanded by one folded step.
    pub max_lset: usize,
    /// Total component evaluations before giving up.
    pub max_calls: u64,
    /// Widest window tried when stabilizing a Θ value.
    pub max_window: usize,
}

impl Default for EvalLimits {
    fn default() -> Self {
        EvalLimits {
            max_lset: 16,
            max_calls: 200_000_000,
            max_window: 96,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct TrieNode {
    parent: u32,
    step: i64,
    depth: u32,
}

pub type TrieId = u32;
pub const ROOT: TrieId = 0;

/// Word trie plus memo tables. Trie node 0 is O.
#[derive(Debug)]
pub struct WordEval {
    family: Family,
    nodes: Vec<TrieNode>,
    children: HashMap<(TrieId, i64), TrieId>,
    memo: HashMap<(TrieId, ChamberWeight), i64>,
    c_memo: HashMap<(TrieId, i64), i64>,
    limits: EvalLimits,
    calls: u64,
}

impl WordEval {
    pub fn new(family: Family) -> Self {
        WordEval {
            family,
            nodes: vec![TrieNode {
                parent: ROOT,
                step: 0,
                depth: 0,
            }],
            children: HashMap::new(),
            memo: HashMap::new(),
            c_memo: HashMap::new(),
            limits: EvalLimits::default(),
            calls: 0,
        }
    }

    pub fn with_limits(mut self, limits: EvalLimits) -> Self {
        self.limits = limits;
        self
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn limits(&self) -> EvalLimits {
        self.limits
    }

    pub fn calls(&self) -> u64 {
        self.calls
    }

    pub fn memo_size(&self) -> usize {
        self.memo.len()
    }

    fn norm_step(&self, step: i64) -> i64 {
        match self.family.modulus() {
            Some(n) => step.rem_euclid(n),
            None => step,
        }
    }

    pub fn intern(&mut self, parent: TrieId, step: i64) -> TrieId {
        let step = self.norm_step(step);
        if let Some(&t) = self.children.get(&(parent, step)) {
            return t;
        }
        let id = self.nodes.len() as TrieId;
        let depth = self.nodes[parent as usize].depth + 1;
        self.nodes.push(TrieNode {
            parent,
            step,
            depth,
        });
        self.children.insert((parent, step), id);
        id
    }

    pub fn intern_word(&mut self, word: &[i64]) -> TrieId {
        word.iter().fold(ROOT, |t, &s| self.intern(t, s))
    }

    pub fn depth(&self, t: TrieId) -> usize {
        self.nodes[t as usize].depth as usize
    }

    pub fn parent(&self, t: TrieId) -> Option<(TrieId, i64)> {
        (t != ROOT).then(|| {
            let n = self.nodes[t as usize];
            (n.parent, n.step)
        })
    }

    pub fn word(&self, mut t: TrieId) -> Vec<i64> {
        let mut w = Vec::new();
        while let Some((p, s)) = self.parent(t) {
            w.push(s);
            t = p;
        }
        w.reverse();
        w
    }

    /// Θ_{Λ_i}: minus the number of letters equal to i (or congruent to i).
    pub fn theta_lambda(&self, mut t: TrieId, i: i64) -> i64 {
        let i = self.norm_step(i);
        let mut n = 0;
        while let Some((p, s)) = self.parent(t) {
            if s == i {
                n -= 1;
            }
            t = p;
        }
        n
    }

    /// A window radius past which every component query made while
    /// evaluating a word of this length around a point stays put.
    pub fn safe_radius(&self, t: TrieId) -> i64 {
        let slack = match self.family {
            Family::AInfinity => 3,
            Family::Affine { ell } => ell + 3,
        };
        self.depth(t) as i64 + slack
    }

    /// s_pϖ_p^J for J = [p−r, p+r].
    pub fn s_fund(p: i64, r: i64) -> ChamberWeight {
        let mut xs = vec![p];
        xs.extend(p + 2..=p + r + 1);
        ChamberWeight::from_parts(p - r - 1, &xs).expect("well formed")
    }

    /// Θ_{s_pΛ_p}, read on a window wide enough for the word length.
    pub fn theta_s(&mut self, t: TrieId, p: i64) -> Result<i64> {
        let r = self.safe_radius(t);
        self.component(t, &Self::s_fund(p, r))
    }

    /// c_p = Θ_{Λ_p} − Θ_{s_pΛ_p} − 1.
    pub fn c(&mut self, t: TrieId, p: i64) -> Result<i64> {
        let p = self.norm_step(p);
        if let Some(&v) = self.c_memo.get(&(t, p)) {
            return Ok(v);
        }
        let v = self.theta_lambda(t, p) - self.theta_s(t, p)? - 1;
        self.c_memo.insert((t, p), v);
        Ok(v)
    }

    /// ε_p = −(Θ_{Λ_p} + Θ_{s_pΛ_p} − Θ_{Λ_{p−1}} − Θ_{Λ_{p+1}}).
    pub fn epsilon(&mut self, t: TrieId, p: i64) -> Result<i64> {
        let v = self.theta_lambda(t, p) + self.theta_s(t, p)?
            - self.theta_lambda(t, p - 1)
            - self.theta_lambda(t, p + 1);
        Ok(-v)
    }

    fn normalize(&self, g: &ChamberWeight) -> ChamberWeight {
        match self.family.modulus() {
            Some(n) => {
                let t0 = g.toggles()[0];
                g.shift(-t0.div_euclid(n) * n)
            }
            None => g.clone(),
        }
    }

    /// The points of L for the step at `t` that pair positively with γ.
    fn lset(&self, step: i64, g: &ChamberWeight) -> Vec<i64> {
        match self.family.modulus() {
            None => {
                if g.pairing(step) > 0 {
                    vec![step]
                } else {
                    Vec::new()
                }
            }
            Some(n) => g
                .positive_pairings()
                .filter(|q| q.rem_euclid(n) == step)
                .collect(),
        }
    }

    pub fn component(&mut self, t: TrieId, g: &ChamberWeight) -> Result<i64> {
        if t == ROOT {
            return Ok(0);
        }
        let key = self.normalize(g);
        if let Some(&v) = self.memo.get(&(t, key.clone())) {
            return Ok(v);
        }
        self.calls += 1;
        if self.calls > self.limits.max_calls {
            return Err(BzError::Evaluation(format!(
                "component budget at depth {} for {g:?}",
                self.depth(t)
            )));
        }
        let (parent, step) = self.parent(t).unwrap();
        let l = self.lset(step, &key);
        let v = if l.is_empty() {
            self.component(parent, &key)?
        } else {
            if l.len() > self.limits.max_lset {
                return Err(BzError::Evaluation(format!(
                    "L-set of size {} at depth {} for {g:?}",
                    l.len(),
                    self.depth(t)
                )));
            }
            let c = self.c(parent, step)?;
            let mut best = i64::MAX;
            for sub in 0u64..(1 << l.len()) {
                let mut h = key.clone();
                for (k, &q) in l.iter().enumerate() {
                    if sub >> k & 1 == 1 {
                        h.reflect_in_place(q);
                    }
                }
                let v = add(
                    self.component(parent, &h)?,
                    mul(sub.count_ones() as i64, c)?,
                )?;
                best = best.min(v);
            }
            best
        };
        self.memo.insert((t, key), v);
        Ok(v)
    }

    /// The stabilized value at wϖ_i^J as J grows by `margin` on both sides,
    /// accepted once three consecutive windows agree. Returns the value and
    /// the first window of the agreeing run.
    pub fn stabilized(
        &mut self,
        t: TrieId,
        w: &WeylElem,
        i: i64,
        margin: i64,
    ) -> Result<(i64, Interval)> {
        let (mut lo, mut hi) = (i, i);
        if let Some((a, b)) = w.support() {
            lo = lo.min(a);
            hi = hi.max(b - 1);
        }
        let start = Interval { lo, hi }.widen(margin.max(1));
        let max_window = self.limits.max_window;
        stabilize(
            |j| {
                let g = w.act(&crate::roots::fundamental(j, i)?);
                self.component(t, &g)
            },
            start,
            margin.max(1),
            max_window,
            format!("w={:?}, i={i}", w.word()),
        )
    }
}

/// Drives a window-indexed evaluation until three consecutive windows agree.
pub(crate) fn stabilize<F>(
    mut eval: F,
    start: Interval,
    margin: i64,
    max_window: usize,
    query: String,
) -> Result<(i64, Interval)>
where
    F: FnMut(&Interval) -> Result<i64>,
{
    let mut windows = vec![start];
    let mut values = vec![eval(&start)?];
    loop {
        let n = values.len();
        if n >= 3 && values[n - 1] == values[n - 2] && values[n - 2] == values[n - 3] {
            return Ok((values[n - 3], windows[n - 3]));
        }
        let next = windows[n - 1].widen(margin);
        if next.rank() > max_window {
            return Err(BzError::Stabilization {
                query,
                max_window,
                last: values.iter().rev().take(2).copied().collect(),
            });
        }
        values.push(eval(&next)?);
        windows.push(next);
    }
}
