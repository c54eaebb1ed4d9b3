//! Independent checks for generated crystal graphs: Stembridge's local
//! conditions, and weight multiplicities from Kostant's partition function,
//! the Weyl dimension formula and Freudenthal's recursion.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::crystal_finite::DominantWeight;
use crate::error::{BzError, Result};
use crate::graph::{CrystalGraph, GraphIndex};
use crate::roots::{CartanSpec, Interval};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Condition {
    /// Weight, ε and φ move correctly along every edge; φ − ε = ⟨wt, α⟩.
    Local,
    /// ε (and, with λ, φ) equal the string lengths.
    Semiregular,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub const CONDITIONS: [Condition; 8] = [
    Condition::Local,
    Condition::Semiregular,
    Condition::C1,
    Condition::C2,
    Condition::C3,
    Condition::C4,
    Condition::C5,
    Condition::C6,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Witness {
    pub condition: Condition,
    pub node: usize,
    pub p: i64,
    pub q: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Skip,
    /// The hypotheses of the condition do not hold.
    Vacuous,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionTally {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StembridgeReport {
    pub conditions: BTreeMap<Condition, ConditionTally>,
    pub connected: bool,
}

impl StembridgeReport {
    pub fn passed(&self) -> bool {
        self.connected && self.conditions.values().all(|t| t.failed == 0)
    }

    pub fn failures(&self) -> usize {
        self.conditions.values().map(|t| t.failed).sum()
    }

    pub fn skipped(&self) -> usize {
        self.conditions.values().map(|t| t.skipped).sum()
    }

    pub fn tally(&self, c: Condition) -> &ConditionTally {
        static EMPTY: ConditionTally = ConditionTally {
            passed: 0,
            failed: 0,
            skipped: 0,
            witnesses: Vec::new(),
        };
        self.conditions.get(&c).unwrap_or(&EMPTY)
    }
}

const MAX_WITNESSES: usize = 16;

struct Checker<'a> {
    g: &'a CrystalGraph,
    idx: GraphIndex,
    colors: Vec<i64>,
    lambda: Option<Vec<i64>>,
}

/// A lowering or raising step that may leave the known part of the graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Node(usize),
    Zero,
    Unknown,
}

impl<'a> Checker<'a> {
    fn new(g: &'a CrystalGraph, lambda: Option<&DominantWeight>) -> Result<Self> {
        let idx = g.index()?;
        let colors = g.colors();
        let lambda = lambda
            .map(|l| l.coeffs().to_vec())
            .or_else(|| g.lambda.clone());
        if let Some(l) = &lambda {
            if l.len() != colors.len() {
                return Err(BzError::Domain(format!(
                    "lambda has {} coefficients for {} colors",
                    l.len(),
                    colors.len()
                )));
            }
        }
        Ok(Checker {
            g,
            idx,
            colors,
            lambda,
        })
    }

    fn k(&self, p: i64) -> usize {
        self.colors
            .iter()
            .position(|&c| c == p)
            .expect("known color")
    }

    fn eps(&self, x: usize, p: i64) -> i64 {
        self.g.nodes[x].eps[self.k(p)]
    }

    fn phi(&self, x: usize, p: i64) -> i64 {
        self.g.nodes[x].phi[self.k(p)]
    }

    /// ⟨Wt(x), α_p⟩, with λ added when the graph carries one.
    fn pairing(&self, x: usize, p: i64) -> i64 {
        let w = &self.g.nodes[x].weight;
        let mut s: i64 = self
            .colors
            .iter()
            .zip(w)
            .map(|(&q, &c)| c * self.g.cartan.a(q, p))
            .sum();
        if let Some(l) = &self.g.lambda {
            s += l[self.k(p)];
        }
        s
    }

    fn e(&self, x: Step, p: i64) -> Step {
        match x {
            Step::Node(x) => self.idx.e(x, p).map_or(Step::Zero, Step::Node),
            s => s,
        }
    }

    fn f(&self, x: Step, p: i64) -> Step {
        match x {
            Step::Node(x) => match self.idx.f(x, p) {
                Some(y) => Step::Node(y),
                None if self.g.nodes[x].complete => Step::Zero,
                None => Step::Unknown,
            },
            s => s,
        }
    }

    fn es(&self, x: usize, word: &[i64]) -> Step {
        word.iter().fold(Step::Node(x), |s, &p| self.e(s, p))
    }

    fn fs(&self, x: usize, word: &[i64]) -> Step {
        word.iter().fold(Step::Node(x), |s, &p| self.f(s, p))
    }

    fn verdict(ok: bool) -> Outcome {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    fn instance(&self, c: Condition, x: usize, p: i64, q: i64) -> Outcome {
        use Condition::*;
        use Step::*;
        match c {
            Local => {
                let mut ok = self.phi(x, p) - self.eps(x, p) == self.pairing(x, p);
                if let Some(y) = self.idx.f(x, p) {
                    let (a, b) = (&self.g.nodes[x].weight, &self.g.nodes[y].weight);
                    let k = self.k(p);
                    ok &=
                        a.iter()
                            .zip(b)
                            .enumerate()
                            .all(|(j, (u, v))| if j == k { *v == u - 1 } else { u == v });
                    ok &= self.eps(y, p) == self.eps(x, p) + 1
                        && self.phi(y, p) == self.phi(x, p) - 1;
                }
                Self::verdict(ok)
            }
            Semiregular => {
                let mut n = 0;
                let mut s = Node(x);
                while let Node(y) = self.e(s, p) {
                    n += 1;
                    s = Node(y);
                }
                let mut ok = n == self.eps(x, p);
                if self.lambda.is_some() {
                    let mut m = 0;
                    let mut s = Node(x);
                    loop {
                        match self.f(s, p) {
                            Node(y) => {
                                m += 1;
                                s = Node(y);
                            }
                            Zero => break,
                            Unknown => return if ok { Outcome::Skip } else { Outcome::Fail },
                        }
                    }
                    ok &= m == self.phi(x, p);
                }
                Self::verdict(ok)
            }
            C1 => {
                let Node(y) = self.e(Node(x), p) else {
                    return Outcome::Vacuous;
                };
                Self::verdict(self.eps(x, q) <= self.eps(y, q) && self.phi(y, q) <= self.phi(x, q))
            }
            C2 => {
                let (Node(xp), Node(_)) = (self.e(Node(x), p), self.e(Node(x), q)) else {
                    return Outcome::Vacuous;
                };
                if self.eps(xp, q) != self.eps(x, q) {
                    return Outcome::Vacuous;
                }
                let (a, b) = (self.es(x, &[q, p]), self.es(x, &[p, q]));
                Self::verdict(matches!(a, Node(_)) && a == b)
            }
            C3 => {
                let (Node(xp), Node(xq)) = (self.e(Node(x), p), self.e(Node(x), q)) else {
                    return Outcome::Vacuous;
                };
                if self.eps(xp, q) != self.eps(x, q) + 1 || self.eps(xq, p) != self.eps(x, p) + 1 {
                    return Outcome::Vacuous;
                }
                let (a, b) = (self.es(x, &[p, q, q, p]), self.es(x, &[q, p, p, q]));
                let mut ok = matches!(a, Node(_)) && a == b;
                if ok {
                    let (Node(u), Node(v)) = (self.es(x, &[q, p, p]), self.es(x, &[p, q, q]))
                    else {
                        return Outcome::Fail;
                    };
                    ok = self.phi(xp, q) == self.phi(u, q) && self.phi(xq, p) == self.phi(v, p);
                }
                Self::verdict(ok)
            }
            C4 | C5 => {
                let (yp, yq) = (self.f(Node(x), p), self.f(Node(x), q));
                let (yp, yq) = match (yp, yq) {
                    (Node(a), Node(b)) => (a, b),
                    (Unknown, _) | (_, Unknown) => return Outcome::Skip,
                    _ => return Outcome::Vacuous,
                };
                if c == C4 {
                    if self.phi(yp, q) != self.phi(x, q) {
                        return Outcome::Vacuous;
                    }
                    let (a, b) = (self.fs(x, &[q, p]), self.fs(x, &[p, q]));
                    if a == Unknown || b == Unknown {
                        return Outcome::Skip;
                    }
                    Self::verdict(matches!(a, Node(_)) && a == b)
                } else {
                    if self.phi(yp, q) != self.phi(x, q) + 1
                        || self.phi(yq, p) != self.phi(x, p) + 1
                    {
                        return Outcome::Vacuous;
                    }
                    let (a, b) = (self.fs(x, &[p, q, q, p]), self.fs(x, &[q, p, p, q]));
                    if a == Unknown || b == Unknown {
                        return Outcome::Skip;
                    }
                    if !(matches!(a, Node(_)) && a == b) {
                        return Outcome::Fail;
                    }
                    let (Node(u), Node(v)) = (self.fs(x, &[q, p, p]), self.fs(x, &[p, q, q]))
                    else {
                        return Outcome::Fail;
                    };
                    Self::verdict(
                        self.eps(yp, q) == self.eps(u, q) && self.eps(yq, p) == self.eps(v, p),
                    )
                }
            }
            C6 => {
                let Some(l) = &self.lambda else {
                    return Outcome::Vacuous;
                };
                let n = &self.g.nodes[x];
                if n.weight.iter().any(|&w| w != 0) {
                    return Outcome::Vacuous;
                }
                let ok = self
                    .colors
                    .iter()
                    .enumerate()
                    .all(|(k, &p)| self.idx.e(x, p).is_none() && n.phi[k] == l[k]);
                Self::verdict(ok)
            }
        }
    }

    fn connected(&self) -> bool {
        let n = self.g.nodes.len();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for e in &self.g.edges {
            adj[e.from].push(e.to);
            adj[e.to].push(e.from);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![self.g.root];
        seen[self.g.root] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

fn record(t: &mut ConditionTally, o: Outcome, w: Witness) {
    match o {
        Outcome::Pass => t.passed += 1,
        Outcome::Skip => t.skipped += 1,
        Outcome::Vacuous => {}
        Outcome::Fail => {
            t.failed += 1;
            if t.witnesses.len() < MAX_WITNESSES {
                t.witnesses.push(w);
            }
        }
    }
}

/// Evaluates (C1)–(C6) and the per-edge axioms on every node. Instances
/// that need an unexpanded node are skipped. With `lambda` (or a graph that
/// records one) φ is checked against f-string lengths and (C6) is required
/// to have a witness.
pub fn check_stembridge(
    g: &CrystalGraph,
    lambda: Option<&DominantWeight>,
) -> Result<StembridgeReport> {
    let ck = Checker::new(g, lambda)?;
    let mut report = StembridgeReport {
        connected: ck.connected(),
        ..Default::default()
    };
    for c in CONDITIONS {
        report.conditions.insert(c, ConditionTally::default());
    }
    for x in 0..g.nodes.len() {
        for &p in &ck.colors {
            for c in [Condition::Local, Condition::Semiregular] {
                let o = ck.instance(c, x, p, p);
                record(
                    report.conditions.get_mut(&c).unwrap(),
                    o,
                    Witness {
                        condition: c,
                        node: x,
                        p,
                        q: p,
                    },
                );
            }
            for &q in &ck.colors {
                if p == q {
                    continue;
                }
                for c in [
                    Condition::C1,
                    Condition::C2,
                    Condition::C3,
                    Condition::C4,
                    Condition::C5,
                ] {
                    let o = ck.instance(c, x, p, q);
                    record(
                        report.conditions.get_mut(&c).unwrap(),
                        o,
                        Witness {
                            condition: c,
                            node: x,
                            p,
                            q,
                        },
                    );
                }
            }
        }
    }
    if ck.lambda.is_some() {
        let t = report.conditions.get_mut(&Condition::C6).unwrap();
        let found =
            (0..g.nodes.len()).any(|x| ck.instance(Condition::C6, x, 0, 0) == Outcome::Pass);
        if found {
            t.passed += 1;
        } else {
            t.failed += 1;
            t.witnesses.push(Witness {
                condition: Condition::C6,
                node: g.root,
                p: 0,
                q: 0,
            });
        }
    }
    Ok(report)
}

/// Re-evaluates a single instance.
pub fn replay_witness(
    g: &CrystalGraph,
    lambda: Option<&DominantWeight>,
    w: &Witness,
) -> Result<Outcome> {
    let ck = Checker::new(g, lambda)?;
    if w.node >= g.nodes.len() {
        return Err(BzError::Domain(format!("node {} out of range", w.node)));
    }
    if w.condition == Condition::C6 {
        let found =
            (0..g.nodes.len()).any(|x| ck.instance(Condition::C6, x, 0, 0) == Outcome::Pass);
        return Ok(Checker::verdict(found));
    }
    Ok(ck.instance(w.condition, w.node, w.p, w.q))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum RootKind {
    /// A_m with simple roots indexed 0..m.
    Finite { rank: usize },
    /// A_ℓ^(1) with simple roots indexed 0..=ℓ; δ = Σ α_i.
    Affine { ell: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootSystemSpec {
    pub kind: RootKind,
    pub height_bound: usize,
}

/// A positive root in simple-root coordinates with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    pub coeffs: Vec<i64>,
    pub mult: u64,
}

impl RootSystemSpec {
    pub fn finite(rank: usize, height_bound: usize) -> Self {
        RootSystemSpec {
            kind: RootKind::Finite { rank },
            height_bound,
        }
    }

    pub fn affine(ell: usize, height_bound: usize) -> Self {
        RootSystemSpec {
            kind: RootKind::Affine { ell },
            height_bound,
        }
    }

    /// The root system matching a graph's Cartan data.
    pub fn for_cartan(c: &CartanSpec, height_bound: usize) -> Result<Self> {
        match c {
            CartanSpec::Finite { interval } => Ok(Self::finite(interval.rank(), height_bound)),
            CartanSpec::Affine { ell } => Ok(Self::affine(*ell as usize, height_bound)),
            CartanSpec::AInfinity => Err(BzError::Domain("no root system oracle for A_∞".into())),
        }
    }

    pub fn rank(&self) -> usize {
        match self.kind {
            RootKind::Finite { rank } => rank,
            RootKind::Affine { ell } => ell + 1,
        }
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        match self.kind {
            RootKind::Finite { .. } => crate::roots::cartan_a(i as i64, j as i64),
            RootKind::Affine { ell } => crate::roots::affine_a(ell as i64, i as i64, j as i64),
        }
    }

    /// (β, β') for the symmetric form with (α_i, α_j) = a_ij.
    pub fn form(&self, b: &[i64], c: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for (i, &bi) in b.iter().enumerate().take(n) {
            if bi == 0 {
                continue;
            }
            for (j, &cj) in c.iter().enumerate().take(n) {
                s += bi * cj * self.a(i, j);
            }
        }
        s
    }

    /// Positive roots of height at most `height_bound`.
    pub fn positive_roots(&self) -> Vec<PositiveRoot> {
        let h = self.height_bound as i64;
        let mut out = Vec::new();
        match self.kind {
            RootKind::Finite { rank } => {
                for i in 0..rank {
                    for j in i..rank {
                        if (j - i + 1) as i64 <= h {
                            let mut v = vec![0; rank];
                            v[i..=j].iter_mut().for_each(|x| *x = 1);
                            out.push(PositiveRoot { coeffs: v, mult: 1 });
                        }
                    }
                }
            }
            RootKind::Affine { ell } => {
                let n = ell + 1;
                for k in 0..=(h / n as i64 + 1) {
                    for i in 1..=ell {
                        for j in i..=ell {
                            let mut up = vec![k; n];
                            let mut down = vec![k; n];
                            for t in i..=j {
                                up[t] += 1;
                                down[t] -= 1;
                            }
                            for v in [up, down] {
                                let ht: i64 = v.iter().sum();
                                if v.iter().all(|&x| x >= 0) && ht > 0 && ht <= h {
                                    out.push(PositiveRoot { coeffs: v, mult: 1 });
                                }
                            }
                        }
                    }
                    if k > 0 && k * n as i64 <= h {
                        out.push(PositiveRoot {
                            coeffs: vec![k; n],
                            mult: ell as u64,
                        });
                    }
                }
            }
        }
        out.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
        out
    }

    fn check_height(&self, beta: &[i64]) -> Result<()> {
        if beta.len() != self.rank() || beta.iter().any(|&b| b < 0) {
            return Err(BzError::Domain(format!(
                "{beta:?} is not a nonnegative root-lattice vector"
            )));
        }
        let ht: i64 = beta.iter().sum();
        if ht as usize > self.height_bound {
            return Err(BzError::Capacity {
                what: format!("height of {beta:?}"),
                limit: self.height_bound,
            });
        }
        Ok(())
    }
}

/// Number of ways to write β as a sum of positive roots, a root of
/// multiplicity m coming in m colors.
pub fn kostant_count(r: &RootSystemSpec, beta: &[i64]) -> Result<u64> {
    r.check_height(beta)?;
    let n = beta.len();
    let dims: Vec<usize> = beta.iter().map(|&b| b as usize + 1).collect();
    let size: usize = dims.iter().product();
    let mut stride = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * dims[i + 1];
    }
    let mut dp = vec![0u64; size];
    dp[0] = 1;
    let decode = |mut k: usize| -> Vec<usize> {
        let mut v = vec![0; n];
        for i in 0..n {
            v[i] = k / stride[i];
            k %= stride[i];
        }
        v
    };
    for root in r.positive_roots() {
        if root.coeffs.iter().zip(beta).any(|(a, b)| a > b) {
            continue;
        }
        let off: usize = root
            .coeffs
            .iter()
            .zip(&stride)
            .map(|(&a, &s)| a as usize * s)
            .sum();
        for _ in 0..root.mult {
            for k in 0..size {
                let v = decode(k);
                if v.iter().zip(&root.coeffs).all(|(&x, &a)| x as i64 >= a) {
                    dp[k] = dp[k].checked_add(dp[k - off]).ok_or(BzError::Overflow)?;
                }
            }
        }
    }
    Ok(dp[size - 1])
}

/// dim V(λ) for A_m over the interval I.
pub fn weyl_dim(interval: &Interval, lambda: &DominantWeight) -> Result<u64> {
    let m = interval.rank();
    if lambda.rank() != m {
        return Err(BzError::Domain(format!("lambda needs {m} coefficients")));
    }
    let l = lambda.coeffs();
    let mut d = Ratio::from_integer(1i128);
    for i in 0..m {
        for j in i..m {
            let num: i128 = (i..=j).map(|k| l[k] as i128 + 1).sum();
            d *= Ratio::new(num, (j - i + 1) as i128);
        }
    }
    if !d.is_integer() {
        return Err(BzError::Integrity(format!(
            "Weyl dimension {d} is not an integer"
        )));
    }
    u64::try_from(d.to_integer()).map_err(|_| BzError::Overflow)
}

/// Freudenthal's recursion for mult(λ − β), memoized over β.
pub struct Freudenthal {
    r: RootSystemSpec,
    lambda: Vec<i64>,
    roots: Vec<PositiveRoot>,
    memo: HashMap<Vec<i64>, u64>,
}

impl Freudenthal {
    pub fn new(r: RootSystemSpec, lambda: &DominantWeight) -> Result<Self> {
        if lambda.rank() != r.rank() {
            return Err(BzError::Domain(format!(
                "lambda needs {} coefficients, got {}",
                r.rank(),
                lambda.rank()
            )));
        }
        let roots = r.positive_roots();
        Ok(Freudenthal {
            r,
            lambda: lambda.coeffs().to_vec(),
            roots,
            memo: HashMap::new(),
        })
    }

    /// Multiplicity of the weight λ − β, β ≥ 0 in simple-root coordinates.
    pub fn mult(&mut self, beta: &[i64]) -> Result<u64> {
        self.r.check_height(beta)?;
        self.mult_rec(beta)
    }

    fn mult_rec(&mut self, beta: &[i64]) -> Result<u64> {
        if beta.iter().all(|&b| b == 0) {
            return Ok(1);
        }
        if let Some(&v) = self.memo.get(beta) {
            return Ok(v);
        }
        // (λ+ρ, β) with (λ, α_i) = λ_i and (ρ, α_i) = 1.
        let lr: i64 = beta
            .iter()
            .zip(&self.lambda)
            .map(|(b, l)| b * (l + 1))
            .sum();
        let denom = 2 * lr - self.r.form(beta, beta);
        let mut acc = Ratio::from_integer(0i128);
        for ri in 0..self.roots.len() {
            let (alpha, mult) = (self.roots[ri].coeffs.clone(), self.roots[ri].mult);
            let lam_alpha: i64 = alpha.iter().zip(&self.lambda).map(|(a, l)| a * l).sum();
            let beta_alpha = self.r.form(beta, &alpha);
            let alpha_alpha = self.r.form(&alpha, &alpha);
            let mut k = 1;
            loop {
                let shifted: Vec<i64> = beta.iter().zip(&alpha).map(|(b, a)| b - k * a).collect();
                if shifted.iter().any(|&x| x < 0) {
                    break;
                }
                let m = self.mult_rec(&shifted)?;
                if m != 0 {
                    // (μ + kα, α) with μ = λ − β.
                    let ip = lam_alpha - beta_alpha + k * alpha_alpha;
                    acc += Ratio::from_integer(2 * mult as i128 * ip as i128 * m as i128);
                }
                k += 1;
            }
        }
        let v = if denom == 0 {
            if acc != Ratio::from_integer(0) {
                return Err(BzError::Integrity(format!(
                    "Freudenthal denominator vanishes at {beta:?} with nonzero sum"
                )));
            }
            0
        } else {
            let q = acc / Ratio::from_integer(denom as i128);
            if !q.is_integer() || q < Ratio::from_integer(0) {
                return Err(BzError::Integrity(format!("multiplicity {q} at {beta:?}")));
            }
            q.to_integer() as u64
        };
        self.memo.insert(beta.to_vec(), v);
        Ok(v)
    }
}

/// One-shot wrapper around [`Freudenthal`].
pub fn freudenthal_mult(r: &RootSystemSpec, lambda: &DominantWeight, beta: &[i64]) -> Result<u64> {
    Freudenthal::new(r.clone(), lambda)?.mult(beta)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    /// β with node weight −β.
    pub beta: Vec<i64>,
    pub expected: u64,
    pub found: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterReport {
    pub depth: usize,
    pub weights_checked: usize,
    pub nodes_checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl CharacterReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

fn lattice_points(n: usize, h: i64, out: &mut Vec<Vec<i64>>, cur: &mut Vec<i64>) {
    if cur.len() == n {
        out.push(cur.clone());
        return;
    }
    for v in 0..=h {
        cur.push(v);
        lattice_points(n, h - v, out, cur);
        cur.pop();
    }
}

/// Compares node counts per weight with the oracle on every weight of
/// height at most the graph depth (one past the last layer for an
/// exhaustive graph). Node weights are read as −β in simple-root
/// coordinates.
pub fn compare_character(
    g: &CrystalGraph,
    lambda: Option<&DominantWeight>,
) -> Result<CharacterReport> {
    let exhaustive = g.max_depth.is_none() || g.nodes.iter().all(|n| n.complete);
    let deepest = g.nodes.iter().map(|n| n.depth).max().unwrap_or(0);
    let depth = match g.max_depth {
        Some(d) if !exhaustive => d,
        _ => deepest + 1,
    };
    let r = RootSystemSpec::for_cartan(&g.cartan, depth)?;
    let lambda = match (lambda, &g.lambda) {
        (Some(l), _) => Some(l.clone()),
        (None, Some(l)) => Some(DominantWeight::new(l.clone())?),
        (None, None) => None,
    };
    let mut counts: HashMap<Vec<i64>, u64> = HashMap::new();
    let mut nodes_checked = 0;
    for n in &g.nodes {
        if n.depth <= depth {
            *counts
                .entry(n.weight.iter().map(|w| -w).collect())
                .or_default() += 1;
            nodes_checked += 1;
        }
    }
    let mut betas = Vec::new();
    lattice_points(r.rank(), depth as i64, &mut betas, &mut Vec::new());
    betas.sort_by_key(|b| (b.iter().sum::<i64>(), b.clone()));
    let mut fr = match &lambda {
        Some(l) => Some(Freudenthal::new(r.clone(), l)?),
        None => None,
    };
    let mut report = CharacterReport {
        depth,
        nodes_checked,
        ..Default::default()
    };
    for b in &betas {
        let expected = match fr.as_mut() {
            Some(f) => f.mult(b)?,
            None => kostant_count(&r, b)?,
        };
        let found = counts.remove(b).unwrap_or(0);
        report.weights_checked += 1;
        if expected != found {
            report.mismatches.push(Mismatch {
                beta: b.clone(),
                expected,
                found,
            });
        }
    }
    for (b, found) in counts {
        report.mismatches.push(Mismatch {
            beta: b,
            expected: 0,
            found,
        });
    }
    report.mismatches.sort_by(|a, b| a.beta.cmp(&b.beta));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kostant_small() {
        let r = RootSystemSpec::finite(2, 20);
        assert_eq!(kostant_count(&r, &[1, 1]).unwrap(), 2);
        assert_eq!(kostant_count(&r, &[2, 1]).unwrap(), 2);
        assert_eq!(kostant_count(&r, &[0, 0]).unwrap(), 1);
        for a in 0..=6 {
            for b in 0..=6 {
                assert_eq!(kostant_count(&r, &[a, b]).unwrap(), a.min(b) as u64 + 1);
            }
        }
    }

    #[test]
    fn weyl_dims() {
        let iv = Interval::new(1, 2).unwrap();
        let d = |c: Vec<i64>| weyl_dim(&iv, &DominantWeight::new(c).unwrap()).unwrap();
        assert_eq!(d(vec![1, 0]), 3);
        assert_eq!(d(vec![1, 1]), 8);
        assert_eq!(d(vec![2, 0]), 6);
    }

    #[test]
    fn adjoint_zero_weight() {
        let r = RootSystemSpec::finite(2, 10);
        let l = DominantWeight::new(vec![1, 1]).unwrap();
        assert_eq!(freudenthal_mult(&r, &l, &[1, 1]).unwrap(), 2);
        assert_eq!(freudenthal_mult(&r, &l, &[0, 0]).unwrap(), 1);
    }

    #[test]
    fn basic_representation_string() {
        let r = RootSystemSpec::affine(2, 18);
        let mut f = Freudenthal::new(r, &DominantWeight::new(vec![1, 0, 0]).unwrap()).unwrap();
        let got: Vec<u64> = (0..6).map(|n| f.mult(&[n, n, n]).unwrap()).collect();
        assert_eq!(got, vec![1, 2, 5, 10, 20, 36]);
    }

    #[test]
    fn affine_roots() {
        let r = RootSystemSpec::affine(2, 3);
        let roots = r.positive_roots();
        assert_eq!(
            roots
                .iter()
                .filter(|x| x.coeffs.iter().sum::<i64>() == 1)
                .count(),
            3
        );
        assert!(roots.contains(&PositiveRoot {
            coeffs: vec![1, 1, 1],
            mult: 2
        }));
    }
}
