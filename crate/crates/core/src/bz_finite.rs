//! BZ data of finite type A_m over an interval I: validation, membership in
//! bz_I, MV polytope vertices, weights and the two restriction maps.
//!
//! A datum is stored densely. Γ_I is indexed by bitmasks `T` of the window
//! `lo..=hi+1` (bit b stands for the point lo+b), with S = ℤ_{≤lo-1} ∪ T.
//! The empty and full masks are not chamber weights; they read as 0, which
//! is exactly the convention that drops out-of-range terms from the edge
//! inequalities and Plücker relations below.

use serde::{Deserialize, Serialize};

use crate::error::{BzError, Result};
use crate::roots::{
    enumerate_gamma, fundamental, weyl_group, ChamberWeight, Interval, WeylElem,
    DEFAULT_GAMMA_CAPACITY,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteBZDatum {
    interval: Interval,
    values: Vec<i64>,
}

impl FiniteBZDatum {
    /// The datum O with every component 0.
    pub fn zero(interval: Interval) -> Result<Self> {
        let m = interval.rank();
        if m > DEFAULT_GAMMA_CAPACITY {
            return Err(BzError::Capacity {
                what: format!("dense datum over {interval}"),
                limit: DEFAULT_GAMMA_CAPACITY,
            });
        }
        Ok(FiniteBZDatum {
            interval,
            values: vec![0; 1 << (m + 1)],
        })
    }

    pub fn from_components(
        interval: Interval,
        comps: impl IntoIterator<Item = (ChamberWeight, i64)>,
    ) -> Result<Self> {
        let mut out = Self::zero(interval)?;
        let n = out.window_len();
        let mut seen = vec![false; out.values.len()];
        for (g, v) in comps {
            let mask = g
                .to_mask(interval.lo, n)
                .filter(|&m| m != 0 && m != out.full_mask())
                .ok_or_else(|| BzError::Parse(format!("{g:?} not in Gamma of {interval}")))?;
            if seen[mask as usize] {
                return Err(BzError::Parse(format!("duplicate component {g:?}")));
            }
            seen[mask as usize] = true;
            out.values[mask as usize] = v;
        }
        let missing = (1..out.full_mask()).filter(|&m| !seen[m as usize]).count();
        if missing > 0 {
            return Err(BzError::Parse(format!("{missing} components missing")));
        }
        Ok(out)
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn window_len(&self) -> usize {
        self.interval.window_len()
    }

    pub(crate) fn full_mask(&self) -> u64 {
        (1u64 << self.window_len()) - 1
    }

    pub fn mask_of(&self, gamma: &ChamberWeight) -> Option<u64> {
        let m = gamma.to_mask(self.interval.lo, self.window_len())?;
        (m != 0 && m != self.full_mask()).then_some(m)
    }

    pub fn get(&self, gamma: &ChamberWeight) -> Option<i64> {
        self.mask_of(gamma).map(|m| self.values[m as usize])
    }

    pub fn at(&self, mask: u64) -> i64 {
        self.values[mask as usize]
    }

    pub(crate) fn set(&mut self, mask: u64, v: i64) {
        debug_assert!(mask != 0 && mask != self.full_mask());
        self.values[mask as usize] = v;
    }

    /// Overwrite one component; intended for building test data.
    pub fn with_component(&self, gamma: &ChamberWeight, v: i64) -> Result<Self> {
        let mask = self
            .mask_of(gamma)
            .ok_or_else(|| BzError::Domain(format!("{gamma:?} not in Gamma")))?;
        let mut out = self.clone();
        out.set(mask, v);
        Ok(out)
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// (γ, M_γ) over Γ_I in mask order.
    pub fn components(&self) -> impl Iterator<Item = (ChamberWeight, i64)> + '_ {
        let n = self.window_len();
        (1..self.full_mask())
            .map(move |m| (ChamberWeight::from_mask(self.interval.lo, n, m), self.at(m)))
    }

    pub(crate) fn bit(&self, point: i64) -> u64 {
        1u64 << (point - self.interval.lo)
    }

    /// Mask of ϖ_i^I.
    pub(crate) fn fund_mask(&self, i: i64) -> u64 {
        let lo = self.interval.lo;
        let hi1 = self.interval.hi + 1;
        ((1u64 << (hi1 - lo + 1)) - 1) & !((1u64 << (i + 1 - lo)) - 1)
    }

    /// M_{ϖ_i}, or 0 outside I.
    pub(crate) fn fund(&self, i: i64) -> i64 {
        if self.interval.contains(i) {
            self.at(self.fund_mask(i))
        } else {
            0
        }
    }

    /// s_q acting on a mask (q and q+1 inside the window).
    pub(crate) fn reflect_mask(&self, mask: u64, q: i64) -> u64 {
        let a = self.bit(q);
        let b = self.bit(q + 1);
        let (ia, ib) = (mask & a != 0, mask & b != 0);
        if ia == ib {
            mask
        } else {
            mask ^ a ^ b
        }
    }

    /// Sum of all components; a coarse depth statistic.
    pub fn total(&self) -> i64 {
        self.values.iter().sum()
    }
}

#[derive(Serialize, Deserialize)]
struct DatumJson {
    interval: [i64; 2],
    components: Vec<ComponentJson>,
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    weight: ChamberWeight,
    value: i64,
}

impl Serialize for FiniteBZDatum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DatumJson {
            interval: [self.interval.lo, self.interval.hi],
            components: self
                .components()
                .map(|(weight, value)| ComponentJson { weight, value })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteBZDatum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = DatumJson::deserialize(d)?;
        let interval =
            Interval::new(raw.interval[0], raw.interval[1]).map_err(serde::de::Error::custom)?;
        FiniteBZDatum::from_components(
            interval,
            raw.components.into_iter().map(|c| (c.weight, c.value)),
        )
        .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    Edge,
    Tpr,
}

/// One failed instance. `w` is in one-line notation on the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub relation: Relation,
    pub w: Vec<i64>,
    pub i: i64,
    pub j: Option<i64>,
    pub lhs: i64,
    pub rhs: i64,
}

impl Violation {
    pub fn slack(&self) -> i64 {
        self.lhs - self.rhs
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn merge(mut self, other: ValidationReport) -> Self {
        self.checked += other.checked;
        self.violations.extend(other.violations);
        self
    }
}

fn popcount(x: u64) -> i64 {
    x.count_ones() as i64
}

/// A permutation of the window sending the listed positions (starting at
/// `start`) to `head`, the tail `hi+1-|tail|+1..=hi+1` onto `tail`, and the
/// remaining low positions onto the remaining points in increasing order.
fn witness(interval: &Interval, start: i64, head: &[i64], tail_mask: u64) -> Vec<i64> {
    let lo = interval.lo;
    let n = interval.window_len();
    let tail: Vec<i64> = (0..n)
        .filter(|b| tail_mask >> b & 1 == 1)
        .map(|b| lo + b as i64)
        .collect();
    let used: Vec<i64> = head.iter().chain(&tail).copied().collect();
    let mut rest = (lo..=interval.hi + 1).filter(|x| !used.contains(x));
    let mut out = Vec::with_capacity(n);
    for pos in lo..=interval.hi + 1 {
        if pos < start {
            out.push(rest.next().unwrap());
        } else if pos < start + head.len() as i64 {
            out.push(head[(pos - start) as usize]);
        } else {
            out.push(tail[(pos - start) as usize - head.len()]);
        }
    }
    out
}

fn points(mask: u64, lo: i64, n: usize) -> impl Iterator<Item = (i64, u64)> {
    (0..n)
        .filter(move |b| mask >> b & 1 == 0)
        .map(move |b| (lo + b as i64, 1u64 << b))
}

/// Edge inequalities, evaluated in subset form: for every A and x ≠ y
/// outside A, M_{A+x} + M_{A+y} − M_A − M_{A+x+y} ≤ 0.
pub fn check_edge(m: &FiniteBZDatum) -> ValidationReport {
    let n = m.window_len();
    let lo = m.interval.lo;
    let full = m.full_mask();
    let mut rep = ValidationReport::default();
    for a in 0..full {
        if popcount(a) as usize + 2 > n {
            continue;
        }
        let free: Vec<(i64, u64)> = points(a, lo, n).collect();
        for (k, &(x, bx)) in free.iter().enumerate() {
            for &(y, by) in &free[k + 1..] {
                rep.checked += 1;
                let lhs = m.at(a | bx) + m.at(a | by) - m.at(a) - m.at(a | bx | by);
                if lhs > 0 {
                    let i = m.interval.hi - popcount(a);
                    rep.violations.push(Violation {
                        relation: Relation::Edge,
                        w: witness(&m.interval, i, &[x, y], a),
                        i,
                        j: None,
                        lhs,
                        rhs: 0,
                    });
                }
            }
        }
    }
    rep
}

/// Tropical Plücker relations in subset form: for every A and a < b < c
/// outside A, M_{A+b} + M_{A+a+c} = min(M_{A+a+b} + M_{A+c}, M_{A+b+c} + M_{A+a}).
pub fn check_tpr(m: &FiniteBZDatum) -> ValidationReport {
    let n = m.window_len();
    let lo = m.interval.lo;
    let full = m.full_mask();
    let mut rep = ValidationReport::default();
    for a in 0..full {
        if popcount(a) as usize + 3 > n {
            continue;
        }
        let free: Vec<(i64, u64)> = points(a, lo, n).collect();
        for (k1, &(pa, ba)) in free.iter().enumerate() {
            for (k2, &(pb, bb)) in free.iter().enumerate().skip(k1 + 1) {
                for &(pc, bc) in &free[k2 + 1..] {
                    rep.checked += 1;
                    let lhs = m.at(a | bb) + m.at(a | ba | bc);
                    let rhs =
                        (m.at(a | ba | bb) + m.at(a | bc)).min(m.at(a | bb | bc) + m.at(a | ba));
                    if lhs != rhs {
                        let i = m.interval.hi - 1 - popcount(a);
                        rep.violations.push(Violation {
                            relation: Relation::Tpr,
                            w: witness(&m.interval, i, &[pa, pb, pc], a),
                            i,
                            j: Some(i + 1),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
    }
    rep
}

/// Both families at once.
pub fn validate(m: &FiniteBZDatum) -> ValidationReport {
    check_edge(m).merge(check_tpr(m))
}

/// Edge inequalities straight from the definition, quantifying over W_I.
/// Exponential in the rank; intended as a cross-check.
pub fn check_edge_by_weyl(m: &FiniteBZDatum) -> Result<ValidationReport> {
    let iv = m.interval;
    guard_weyl(&iv)?;
    let mut rep = ValidationReport::default();
    let funds: Vec<ChamberWeight> = iv.indices().map(|i| fundamental(&iv, i).unwrap()).collect();
    let val = |w: &WeylElem, g: &ChamberWeight| m.get(&w.act(g)).unwrap();
    for w in weyl_group(&iv) {
        for i in iv.indices() {
            rep.checked += 1;
            let k = (i - iv.lo) as usize;
            let ws = w.mul_simple(i);
            let mut lhs = val(&w, &funds[k]) + val(&ws, &funds[k]);
            for j in iv.indices().filter(|&j| j != i) {
                lhs += crate::roots::cartan_a(j, i) * val(&w, &funds[(j - iv.lo) as usize]);
            }
            if lhs > 0 {
                rep.violations.push(Violation {
                    relation: Relation::Edge,
                    w: w.one_line(iv.lo, iv.hi + 1),
                    i,
                    j: None,
                    lhs,
                    rhs: 0,
                });
            }
        }
    }
    Ok(rep)
}

/// Plücker relations straight from the definition, over W_I and adjacent
/// pairs i, j with ws_i > w and ws_j > w.
pub fn check_tpr_by_weyl(m: &FiniteBZDatum) -> Result<ValidationReport> {
    let iv = m.interval;
    guard_weyl(&iv)?;
    let mut rep = ValidationReport::default();
    let fund = |i: i64| fundamental(&iv, i).unwrap();
    let val = |w: &WeylElem, g: &ChamberWeight| m.get(&w.act(g)).unwrap();
    for w in weyl_group(&iv) {
        for i in iv.indices() {
            for j in [i - 1, i + 1] {
                if !iv.contains(j) || !w.right_ascent(i) || !w.right_ascent(j) {
                    continue;
                }
                rep.checked += 1;
                let (vi, vj) = (fund(i), fund(j));
                let wsi = w.mul_simple(i);
                let wsj = w.mul_simple(j);
                let lhs = val(&wsi, &vi) + val(&wsj, &vj);
                let rhs = (val(&w, &vi) + val(&wsi.mul_simple(j), &vj))
                    .min(val(&w, &vj) + val(&wsj.mul_simple(i), &vi));
                if lhs != rhs {
                    rep.violations.push(Violation {
                        relation: Relation::Tpr,
                        w: w.one_line(iv.lo, iv.hi + 1),
                        i,
                        j: Some(j),
                        lhs,
                        rhs,
                    });
                }
            }
        }
    }
    Ok(rep)
}

fn guard_weyl(iv: &Interval) -> Result<()> {
    if iv.rank() > 7 {
        return Err(BzError::Capacity {
            what: format!("Weyl group of {iv}"),
            limit: 7,
        });
    }
    Ok(())
}

/// Whether M_{−ϖ_i} = 0 for all i ∈ I. Assumes M is a BZ datum.
pub fn in_bz_i(m: &FiniteBZDatum) -> bool {
    let lo = m.interval.lo;
    m.interval.indices().all(|i| {
        let mask = (1u64 << (i - lo + 1)) - 1;
        m.at(mask) == 0
    })
}

/// wt(M) = Σ_i M_{ϖ_i} h_i, as coefficients over h_lo..h_hi.
pub fn weight(m: &FiniteBZDatum) -> Vec<i64> {
    m.interval.indices().map(|i| m.fund(i)).collect()
}

/// e_a − e_b expressed in the basis h_lo..h_hi.
fn coroot_diff(iv: &Interval, a: i64, b: i64) -> Vec<i64> {
    let mut v = vec![0; iv.rank()];
    let (s, lo, hi) = if a < b { (1, a, b) } else { (-1, b, a) };
    for k in lo..hi {
        v[(k - iv.lo) as usize] += s;
    }
    v
}

pub type MvVertexSet = Vec<(WeylElem, Vec<i64>)>;

/// μ_w(M) = Σ_i M_{wϖ_i} w h_i for every w ∈ W_I.
pub fn mv_vertices(m: &FiniteBZDatum) -> Result<MvVertexSet> {
    let iv = m.interval;
    guard_weyl(&iv)?;
    let mut out = Vec::new();
    for w in weyl_group(&iv) {
        let mut mu = vec![0; iv.rank()];
        for i in iv.indices() {
            let c = m.get(&w.act(&fundamental(&iv, i)?)).unwrap();
            let h = coroot_diff(&iv, w.apply(i), w.apply(i + 1));
            for (x, y) in mu.iter_mut().zip(h) {
                *x += c * y;
            }
        }
        out.push((w, mu));
    }
    Ok(out)
}

/// μ_w(M) for a single w.
pub fn mv_vertex(m: &FiniteBZDatum, w: &WeylElem) -> Vec<i64> {
    let iv = m.interval;
    let mut mu = vec![0; iv.rank()];
    for i in iv.indices() {
        let c = m.get(&w.act(&fundamental(&iv, i).unwrap())).unwrap_or(0);
        let h = coroot_diff(&iv, w.apply(i), w.apply(i + 1));
        for (x, y) in mu.iter_mut().zip(h) {
            *x += c * y;
        }
    }
    mu
}

fn check_sub(m: &FiniteBZDatum, k: &Interval) -> Result<()> {
    if !m.interval.contains_interval(k) {
        return Err(BzError::Domain(format!("{k} not inside {}", m.interval)));
    }
    Ok(())
}

/// M_K: the components of M on Γ_K ⊂ Γ_I.
pub fn restrict_down(m: &FiniteBZDatum, k: &Interval) -> Result<FiniteBZDatum> {
    check_sub(m, k)?;
    let mut out = FiniteBZDatum::zero(*k)?;
    let pad = (1u64 << (k.lo - m.interval.lo)) - 1;
    let shift = k.lo - m.interval.lo;
    for t in 1..out.full_mask() {
        out.set(t, m.at(pad | t << shift));
    }
    Ok(out)
}

/// M^K: the components of M on {wϖ_i^I : w ∈ W_K, i ∈ K}, reindexed by Γ_K.
pub fn restrict_up(m: &FiniteBZDatum, k: &Interval) -> Result<FiniteBZDatum> {
    check_sub(m, k)?;
    let mut out = FiniteBZDatum::zero(*k)?;
    let shift = k.lo - m.interval.lo;
    let top: u64 = (k.hi + 2..=m.interval.hi + 1)
        .map(|x| 1u64 << (x - m.interval.lo))
        .sum();
    for t in 1..out.full_mask() {
        out.set(t, m.at(t << shift | top));
    }
    Ok(out)
}

/// Γ_I as chamber weights, in the storage order of `components`.
pub fn gamma(interval: &Interval) -> Result<Vec<ChamberWeight>> {
    enumerate_gamma(interval)
}
