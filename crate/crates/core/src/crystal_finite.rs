//! Kashiwara operators on bz_I and on the truncation bz_I(λ), and
//! generation of the crystal graphs B_I(∞) (to a depth) and B_I(λ).

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::bz_finite::{check_edge, check_tpr, FiniteBZDatum};
use crate::error::{BzError, Result};
use crate::graph::{CrystalGraph, GraphEdge, GraphNode};
use crate::roots::{cartan_a, CartanSpec, Interval};

/// Default node budget for generation.
pub const DEFAULT_NODE_BUDGET: usize = 200_000;

static RAISE_CALLS: AtomicU64 = AtomicU64::new(0);
static RAISE_FALLBACKS: AtomicU64 = AtomicU64::new(0);

/// (raise_e calls, calls where the greedy candidate failed and the search ran).
pub fn raise_statistics() -> (u64, u64) {
    (
        RAISE_CALLS.load(Ordering::Relaxed),
        RAISE_FALLBACKS.load(Ordering::Relaxed),
    )
}

/// Coefficients ⟨λ, α_i⟩, all nonnegative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DominantWeight {
    coeffs: Vec<i64>,
}

impl DominantWeight {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|&&c| c < 0) {
            return Err(BzError::Domain(format!("negative coefficient {c}")));
        }
        Ok(DominantWeight { coeffs })
    }

    pub fn zero(rank: usize) -> Self {
        DominantWeight {
            coeffs: vec![0; rank],
        }
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }
}

fn check_color(m: &FiniteBZDatum, p: i64) -> Result<()> {
    if !m.interval().contains(p) {
        return Err(BzError::Domain(format!(
            "color {p} not in {}",
            m.interval()
        )));
    }
    Ok(())
}

/// c_p(M) = M_{ϖ_p} − M_{s_pϖ_p} − 1.
pub fn c_p(m: &FiniteBZDatum, p: i64) -> i64 {
    let fp = m.fund_mask(p);
    m.at(fp) - m.at(m.reflect_mask(fp, p)) - 1
}

/// ε_p(M) = −(M_{ϖ_p} + M_{s_pϖ_p} − M_{ϖ_{p−1}} − M_{ϖ_{p+1}}).
pub fn epsilon(m: &FiniteBZDatum, p: i64) -> Result<i64> {
    check_color(m, p)?;
    let fp = m.fund_mask(p);
    Ok(-(m.at(fp) + m.at(m.reflect_mask(fp, p)) - m.fund(p - 1) - m.fund(p + 1)))
}

/// ⟨wt(M), α_p⟩ with wt(M) = Σ_q M_{ϖ_q} h_q.
pub fn weight_pairing(m: &FiniteBZDatum, p: i64) -> i64 {
    m.interval()
        .indices()
        .map(|q| m.fund(q) * cartan_a(q, p))
        .sum()
}

/// φ_p(M) = ⟨wt(M), α_p⟩ + ε_p(M); may be negative on bz_I.
pub fn phi(m: &FiniteBZDatum, p: i64) -> Result<i64> {
    Ok(weight_pairing(m, p) + epsilon(m, p)?)
}

/// (f_pM)_γ = min(M_γ, M_{s_pγ} + c_p(M)) where ⟨h_p, γ⟩ > 0.
pub fn lower_f(m: &FiniteBZDatum, p: i64) -> Result<FiniteBZDatum> {
    check_color(m, p)?;
    let c = c_p(m, p);
    let (bp, bq) = (m.bit(p), m.bit(p + 1));
    let mut out = m.clone();
    for mask in 1..m.full_mask() {
        if mask & bp == 0 && mask & bq != 0 {
            let other = mask ^ bp ^ bq;
            let v = m
                .at(mask)
                .min(m.at(other).checked_add(c).ok_or(BzError::Overflow)?);
            out.set(mask, v);
        }
    }
    Ok(out)
}

fn is_bz(m: &FiniteBZDatum) -> bool {
    check_edge(m).passed() && check_tpr(m).passed()
}

/// e_pM, or `None` when ε_p(M) = 0.
///
/// Components with ⟨h_p, γ⟩ ≤ 0 are kept, M_{ϖ_p} goes up by one, and a
/// component with ⟨h_p, γ⟩ > 0 is kept unless M_γ = M_{s_pγ} + c_p(M) + 1,
/// in which case it is M_γ or M_γ + 1. The first guess raises all of the
/// ambiguous ones; if that fails, a backtracking search over the ambiguous
/// set runs. Every answer is checked against the edge inequalities, the
/// Plücker relations and f_p N = M.
pub fn raise_e(m: &FiniteBZDatum, p: i64) -> Result<Option<FiniteBZDatum>> {
    if epsilon(m, p)? == 0 {
        return Ok(None);
    }
    RAISE_CALLS.fetch_add(1, Ordering::Relaxed);
    let c = c_p(m, p);
    let (bp, bq) = (m.bit(p), m.bit(p + 1));
    let fp = m.fund_mask(p);
    let mut base = m.clone();
    base.set(fp, m.at(fp) + 1);
    let mut ambiguous = Vec::new();
    for mask in 1..m.full_mask() {
        if mask == fp || mask & bp != 0 || mask & bq == 0 {
            continue;
        }
        let bound = m.at(mask ^ bp ^ bq) + c + 1;
        match m.at(mask).cmp(&bound) {
            std::cmp::Ordering::Less => {}
            std::cmp::Ordering::Equal => ambiguous.push(mask),
            std::cmp::Ordering::Greater => {
                return Err(BzError::Integrity(format!(
                    "component at mask {mask:#b} exceeds the f_{p} bound"
                )))
            }
        }
    }
    let accept = |n: &FiniteBZDatum| -> Result<bool> { Ok(is_bz(n) && lower_f(n, p)? == *m) };

    let mut greedy = base.clone();
    for &a in &ambiguous {
        greedy.set(a, m.at(a) + 1);
    }
    if accept(&greedy)? {
        return Ok(Some(greedy));
    }
    RAISE_FALLBACKS.fetch_add(1, Ordering::Relaxed);
    if let Some(n) = search(&base, &ambiguous)? {
        if accept(&n)? {
            return Ok(Some(n));
        }
    }
    Err(BzError::Integrity(format!(
        "no valid e_{p} preimage among {} ambiguous components",
        ambiguous.len()
    )))
}

/// Constraint instances touching a mask: edge quadruples and Plücker sextuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Instance {
    Edge([u64; 4]),
    Tpr([u64; 6]),
}

fn instances_touching(x: u64, n: usize, out: &mut HashSet<Instance>) {
    let bits: Vec<u64> = (0..n).map(|b| 1u64 << b).collect();
    // every (A, points) whose family of sets contains x
    for i in 0..n {
        for j in i + 1..n {
            let (bi, bj) = (bits[i], bits[j]);
            let both = bi | bj;
            let a = x & !both;
            out.insert(Instance::Edge([a | bi, a | bj, a, a | both]));
            for &bk in &bits[j + 1..] {
                let all = both | bk;
                let a = x & !all;
                let sets = [
                    a | bj,
                    a | bi | bk,
                    a | bi | bj,
                    a | bk,
                    a | bj | bk,
                    a | bi,
                ];
                if sets.contains(&x) {
                    out.insert(Instance::Tpr(sets));
                }
            }
        }
    }
}

fn holds(v: &[i64], inst: &Instance) -> bool {
    match inst {
        Instance::Edge([x, y, a, xy]) => {
            v[*x as usize] + v[*y as usize] <= v[*a as usize] + v[*xy as usize]
        }
        Instance::Tpr([b, ac, ab, c, bc, a]) => {
            v[*b as usize] + v[*ac as usize]
                == (v[*ab as usize] + v[*c as usize]).min(v[*bc as usize] + v[*a as usize])
        }
    }
}

fn search(base: &FiniteBZDatum, vars: &[u64]) -> Result<Option<FiniteBZDatum>> {
    let n = base.window_len();
    let full = base.full_mask();
    let pos: HashMap<u64, usize> = vars.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let last_var = |inst: &Instance| -> Option<usize> {
        let sets: &[u64] = match inst {
            Instance::Edge(s) => s,
            Instance::Tpr(s) => s,
        };
        sets.iter()
            .filter(|&&s| s != 0 && s != full)
            .filter_map(|s| pos.get(s).copied())
            .max()
    };
    let mut per_var: Vec<Vec<Instance>> = vec![Vec::new(); vars.len()];
    let mut all = HashSet::new();
    for &x in vars {
        instances_touching(x, n, &mut all);
    }
    for inst in all {
        if let Some(k) = last_var(&inst) {
            per_var[k].push(inst);
        }
    }
    let mut vals: Vec<i64> = base.values().to_vec();
    let lowv: Vec<i64> = vars.iter().map(|&m| base.at(m)).collect();
    if !descend(0, vars, &lowv, &per_var, &mut vals) {
        return Ok(None);
    }
    let mut out = base.clone();
    for &m in vars {
        out.set(m, vals[m as usize]);
    }
    Ok(Some(out))
}

fn descend(
    k: usize,
    vars: &[u64],
    low: &[i64],
    per_var: &[Vec<Instance>],
    vals: &mut [i64],
) -> bool {
    if k == vars.len() {
        return true;
    }
    let slot = vars[k] as usize;
    for v in [low[k] + 1, low[k]] {
        vals[slot] = v;
        if per_var[k].iter().all(|i| holds(vals, i)) && descend(k + 1, vars, low, per_var, vals) {
            return true;
        }
    }
    vals[slot] = low[k];
    false
}

/// Mask of −s_iϖ_i = ℤ_{≤i−1} ∪ {i+1}.
fn neg_s_fund_mask(m: &FiniteBZDatum, i: i64) -> u64 {
    let lo = m.interval().lo;
    ((1u64 << (i - lo)) - 1) | m.bit(i + 1)
}

/// Whether M_{−s_iϖ_i} ≥ −⟨λ, α_i⟩ for all i ∈ I.
pub fn truncate_membership(m: &FiniteBZDatum, lambda: &DominantWeight) -> Result<bool> {
    check_lambda(m.interval(), lambda)?;
    let iv = m.interval();
    Ok(iv
        .indices()
        .zip(lambda.coeffs())
        .all(|(i, &l)| m.at(neg_s_fund_mask(m, i)) >= -l))
}

fn check_lambda(iv: Interval, lambda: &DominantWeight) -> Result<()> {
    if lambda.rank() != iv.rank() {
        return Err(BzError::Domain(format!(
            "lambda has {} coefficients, rank is {}",
            lambda.rank(),
            iv.rank()
        )));
    }
    Ok(())
}

/// F_p: f_p when the result stays in bz_I(λ).
pub fn cap_f(m: &FiniteBZDatum, lambda: &DominantWeight, p: i64) -> Result<Option<FiniteBZDatum>> {
    let n = lower_f(m, p)?;
    Ok(truncate_membership(&n, lambda)?.then_some(n))
}

/// Φ_p(M) = M_{ϖ_p} − M_{s_pϖ_p} + ⟨λ, α_p⟩.
pub fn big_phi(m: &FiniteBZDatum, lambda: &DominantWeight, p: i64) -> Result<i64> {
    check_color(m, p)?;
    check_lambda(m.interval(), lambda)?;
    Ok(c_p(m, p) + 1 + lambda.coeffs()[(p - m.interval().lo) as usize])
}

/// ⟨λ + wt(M), α_p⟩ for p ∈ I.
pub fn big_weight(m: &FiniteBZDatum, lambda: &DominantWeight) -> Result<Vec<i64>> {
    check_lambda(m.interval(), lambda)?;
    Ok(m.interval()
        .indices()
        .zip(lambda.coeffs())
        .map(|(p, l)| l + weight_pairing(m, p))
        .collect())
}

/// A generated crystal with the datum of each node, indexed by node id.
#[derive(Clone, Debug)]
pub struct FiniteCrystal {
    pub graph: CrystalGraph,
    pub data: Vec<FiniteBZDatum>,
}

/// Generation failure; on budget exhaustion the partial graph is kept.
#[derive(Debug)]
pub struct GenError<T> {
    pub error: BzError,
    pub partial: Option<Box<T>>,
}

impl<T> From<BzError> for GenError<T> {
    fn from(error: BzError) -> Self {
        GenError {
            error,
            partial: None,
        }
    }
}

impl<T> std::fmt::Display for GenError<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.error.fmt(f)
    }
}

pub fn generate_binf(
    interval: Interval,
    depth: usize,
    budget: usize,
) -> std::result::Result<FiniteCrystal, GenError<FiniteCrystal>> {
    generate(interval, None, Some(depth), budget)
}

pub fn generate_blambda(
    interval: Interval,
    lambda: &DominantWeight,
    budget: usize,
) -> std::result::Result<FiniteCrystal, GenError<FiniteCrystal>> {
    check_lambda(interval, lambda)?;
    generate(interval, Some(lambda), None, budget)
}

fn annotate(
    m: &FiniteBZDatum,
    lambda: Option<&DominantWeight>,
) -> Result<(Vec<i64>, Vec<i64>, Vec<i64>)> {
    let iv = m.interval();
    let weight = crate::bz_finite::weight(m);
    let mut eps = Vec::new();
    let mut phis = Vec::new();
    for p in iv.indices() {
        eps.push(epsilon(m, p)?);
        phis.push(match lambda {
            Some(l) => big_phi(m, l, p)?,
            None => phi(m, p)?,
        });
    }
    Ok((weight, eps, phis))
}

fn generate(
    interval: Interval,
    lambda: Option<&DominantWeight>,
    depth: Option<usize>,
    budget: usize,
) -> std::result::Result<FiniteCrystal, GenError<FiniteCrystal>> {
    let root = FiniteBZDatum::zero(interval)?;
    let mut data = vec![root.clone()];
    let mut depths = vec![0usize];
    let mut seen: HashMap<FiniteBZDatum, usize> = HashMap::from([(root, 0)]);
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    let mut overflow = false;
    while let Some(x) = queue.pop_front() {
        if depth.is_some_and(|d| depths[x] >= d) {
            continue;
        }
        for p in interval.indices() {
            let child = match lambda {
                Some(l) => cap_f(&data[x], l, p)?,
                None => Some(lower_f(&data[x], p)?),
            };
            let Some(child) = child else { continue };
            let y = match seen.get(&child) {
                Some(&y) => y,
                None => {
                    if data.len() >= budget {
                        overflow = true;
                        break;
                    }
                    let y = data.len();
                    seen.insert(child.clone(), y);
                    data.push(child);
                    depths.push(depths[x] + 1);
                    queue.push_back(y);
                    y
                }
            };
            edges.push(GraphEdge {
                from: x,
                to: y,
                color: p,
            });
        }
        if overflow {
            break;
        }
    }
    let expanded = |k: usize| !overflow && depth.is_none_or(|d| depths[k] < d);
    let mut nodes = Vec::with_capacity(data.len());
    for (k, m) in data.iter().enumerate() {
        let (weight, eps, phi) = annotate(m, lambda)?;
        nodes.push(GraphNode {
            id: k,
            weight,
            eps,
            phi,
            depth: depths[k],
            complete: expanded(k),
            key: None,
        });
    }
    let mut graph = CrystalGraph {
        cartan: CartanSpec::Finite { interval },
        lambda: lambda.map(|l| l.coeffs().to_vec()),
        max_depth: depth,
        root: 0,
        nodes,
        edges,
    };
    let keys: Vec<(usize, Vec<i64>)> = data
        .iter()
        .zip(&depths)
        .map(|(m, &d)| (d, m.values().iter().map(|v| -v).collect()))
        .collect();
    let mut order: Vec<usize> = (0..data.len()).collect();
    order.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    graph.canonicalize(&keys);
    let data = order.into_iter().map(|k| data[k].clone()).collect();
    let out = FiniteCrystal { graph, data };
    if overflow {
        return Err(GenError {
            error: BzError::Capacity {
                what: "crystal nodes".into(),
                limit: budget,
            },
            partial: Some(Box::new(out)),
        });
    }
    Ok(out)
}
