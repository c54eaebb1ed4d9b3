//! Index combinatorics: intervals, Cartan pairings, Weyl group elements of
//! type A (finitely supported permutations of the integers) and chamber
//! weights stored as semi-infinite subsets of the integers.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{BzError, Result};

/// Largest interval for which `enumerate_gamma` materializes Γ_I.
pub const DEFAULT_GAMMA_CAPACITY: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(BzError::Domain(format!("empty interval [{lo},{hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    /// Number of simple roots, `m`.
    pub fn rank(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn contains_interval(&self, k: &Interval) -> bool {
        self.lo <= k.lo && k.hi <= self.hi
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    /// Points permuted by W_I: `lo..=hi+1`.
    pub fn window_len(&self) -> usize {
        self.rank() + 1
    }

    pub fn widen(&self, by: i64) -> Interval {
        Interval {
            lo: self.lo - by,
            hi: self.hi + by,
        }
    }

    pub fn shift(&self, by: i64) -> Interval {
        Interval {
            lo: self.lo + by,
            hi: self.hi + by,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CartanSpec {
    Finite { interval: Interval },
    AInfinity,
    Affine { ell: i64 },
}

impl CartanSpec {
    /// a_ij. For the affine matrix the indices are read modulo ℓ+1.
    pub fn a(&self, i: i64, j: i64) -> i64 {
        match self {
            CartanSpec::Finite { .. } | CartanSpec::AInfinity => cartan_a(i, j),
            CartanSpec::Affine { ell } => affine_a(*ell, i, j),
        }
    }

    /// Node labels in order; empty for A_∞.
    pub fn indices(&self) -> Vec<i64> {
        match self {
            CartanSpec::Finite { interval } => interval.indices().collect(),
            CartanSpec::AInfinity => Vec::new(),
            CartanSpec::Affine { ell } => (0..=*ell).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.indices().len()
    }
}

pub fn cartan_a(i: i64, j: i64) -> i64 {
    match (i - j).abs() {
        0 => 2,
        1 => -1,
        _ => 0,
    }
}

pub fn affine_a(ell: i64, i: i64, j: i64) -> i64 {
    let n = ell + 1;
    let (i, j) = (i.rem_euclid(n), j.rem_euclid(n));
    let d = (i - j).abs();
    if d == 0 {
        2
    } else if d == 1 || d == ell {
        -1
    } else {
        0
    }
}

/// A chamber weight γ = −wΛ_i, stored as the set S = w(ℤ_{≤i}).
///
/// Internally S is kept as the sorted list of points `t` where membership
/// changes between `t-1` and `t`; the first toggle leaves S, the next one
/// re-enters it, and so on. The list always has odd length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChamberWeight {
    toggles: SmallVec<[i64; 7]>,
}

impl ChamberWeight {
    /// −Λ_i, i.e. S = ℤ_{≤i}.
    pub fn neg_lambda(i: i64) -> Self {
        ChamberWeight {
            toggles: SmallVec::from_slice(&[i + 1]),
        }
    }

    /// S = ℤ_{≤anchor} ∪ extras. Extras at or below the anchor are rejected.
    pub fn from_parts(anchor: i64, extras: &[i64]) -> Result<Self> {
        let mut xs: Vec<i64> = extras.to_vec();
        xs.sort_unstable();
        xs.dedup();
        if let Some(&x) = xs.first() {
            if x <= anchor {
                return Err(BzError::Domain(format!(
                    "extra {x} not above anchor {anchor}"
                )));
            }
        }
        Ok(Self::from_sorted(anchor, &xs))
    }

    fn from_sorted(anchor: i64, xs: &[i64]) -> Self {
        let mut a = anchor;
        let mut k = 0;
        while k < xs.len() && xs[k] == a + 1 {
            a += 1;
            k += 1;
        }
        let mut toggles: SmallVec<[i64; 7]> = SmallVec::new();
        toggles.push(a + 1);
        while k < xs.len() {
            let start = xs[k];
            let mut end = start;
            k += 1;
            while k < xs.len() && xs[k] == end + 1 {
                end += 1;
                k += 1;
            }
            toggles.push(start);
            toggles.push(end + 1);
        }
        ChamberWeight { toggles }
    }

    /// Set with ℤ_{≤lo-1} plus the points `lo + b` for bits `b` of `mask`.
    pub fn from_mask(lo: i64, n: usize, mask: u64) -> Self {
        let xs: Vec<i64> = (0..n)
            .filter(|b| mask >> b & 1 == 1)
            .map(|b| lo + b as i64)
            .collect();
        Self::from_sorted(lo - 1, &xs)
    }

    /// Inverse of `from_mask`, if S = ℤ_{≤lo-1} ∪ T with T inside the window.
    pub fn to_mask(&self, lo: i64, n: usize) -> Option<u64> {
        let first = self.toggles[0];
        let last = *self.toggles.last().unwrap();
        if first < lo || last > lo + n as i64 {
            return None;
        }
        let mut mask = 0u64;
        for b in 0..n {
            if self.contains(lo + b as i64) {
                mask |= 1 << b;
            }
        }
        Some(mask)
    }

    pub fn anchor(&self) -> i64 {
        self.toggles[0] - 1
    }

    pub fn extras(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for run in self.toggles[1..].chunks(2) {
            out.extend(run[0]..run[1]);
        }
        out
    }

    pub fn toggles(&self) -> &[i64] {
        &self.toggles
    }

    pub fn contains(&self, x: i64) -> bool {
        self.toggles.partition_point(|&t| t <= x) % 2 == 0
    }

    /// Index i with γ = −wΛ_i.
    pub fn charge(&self) -> i64 {
        let mut c = self.anchor();
        for run in self.toggles[1..].chunks(2) {
            c += run[1] - run[0];
        }
        c
    }

    /// ⟨h_p, γ⟩ = [p+1 ∈ S] − [p ∈ S].
    pub fn pairing(&self, p: i64) -> i64 {
        self.contains(p + 1) as i64 - self.contains(p) as i64
    }

    /// All p with ⟨h_p, γ⟩ = +1, ascending.
    pub fn positive_pairings(&self) -> impl Iterator<Item = i64> + '_ {
        self.toggles.iter().skip(1).step_by(2).map(|t| t - 1)
    }

    /// All p with ⟨h_p, γ⟩ = −1, ascending.
    pub fn negative_pairings(&self) -> impl Iterator<Item = i64> + '_ {
        self.toggles.iter().step_by(2).map(|t| t - 1)
    }

    fn flip_toggle(&mut self, x: i64) {
        match self.toggles.binary_search(&x) {
            Ok(k) => {
                self.toggles.remove(k);
            }
            Err(k) => self.toggles.insert(k, x),
        }
    }

    /// s_q γ: exchange the membership of q and q+1.
    pub fn reflect(&self, q: i64) -> Self {
        let mut out = self.clone();
        out.reflect_in_place(q);
        out
    }

    pub fn reflect_in_place(&mut self, q: i64) {
        if self.contains(q) != self.contains(q + 1) {
            self.flip_toggle(q);
            self.flip_toggle(q + 2);
        }
    }

    pub fn shift(&self, by: i64) -> Self {
        ChamberWeight {
            toggles: self.toggles.iter().map(|t| t + by).collect(),
        }
    }

    /// Complement of S inside the window of I, with ℤ_{≤lo-1} kept.
    /// On Γ_I this realizes γ ↦ −γ.
    pub fn window_negate(&self, interval: &Interval) -> Option<Self> {
        let n = interval.window_len();
        let mask = self.to_mask(interval.lo, n)?;
        Some(Self::from_mask(interval.lo, n, !mask & ((1u64 << n) - 1)))
    }

    /// Smallest and largest toggles; S agrees with ℤ_{≤a} outside this range.
    pub fn span(&self) -> (i64, i64) {
        (self.toggles[0], *self.toggles.last().unwrap())
    }
}

impl fmt::Debug for ChamberWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z<={}", self.anchor())?;
        let ex = self.extras();
        if !ex.is_empty() {
            write!(f, "+{ex:?}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ChamberWeightJson {
    anchor: i64,
    extras: Vec<i64>,
}

impl Serialize for ChamberWeight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ChamberWeightJson {
            anchor: self.anchor(),
            extras: self.extras(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ChamberWeight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ChamberWeightJson::deserialize(d)?;
        ChamberWeight::from_parts(raw.anchor, &raw.extras).map_err(serde::de::Error::custom)
    }
}

/// A finitely supported permutation of ℤ.
#[derive(Clone, Debug, Default)]
pub struct WeylElem {
    perm: BTreeMap<i64, i64>,
    word: Option<Vec<i64>>,
}

impl PartialEq for WeylElem {
    fn eq(&self, other: &Self) -> bool {
        self.perm == other.perm
    }
}

impl Eq for WeylElem {}

impl std::hash::Hash for WeylElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.perm.hash(state)
    }
}

impl WeylElem {
    pub fn identity() -> Self {
        WeylElem {
            perm: BTreeMap::new(),
            word: Some(Vec::new()),
        }
    }

    pub fn simple(i: i64) -> Self {
        let mut perm = BTreeMap::new();
        perm.insert(i, i + 1);
        perm.insert(i + 1, i);
        WeylElem {
            perm,
            word: Some(vec![i]),
        }
    }

    /// s_{i1} s_{i2} ⋯ s_{ik}, acting on the left.
    pub fn from_word(word: &[i64]) -> Self {
        let mut w = WeylElem::identity();
        for &i in word {
            w = w.mul_simple(i);
        }
        w.word = Some(word.to_vec());
        w
    }

    /// Build from images of a finite set of points; points must be permuted among themselves.
    pub fn from_images(points: &[i64], images: &[i64]) -> Result<Self> {
        let mut a: Vec<i64> = points.to_vec();
        let mut b: Vec<i64> = images.to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a.dedup();
        if a != b || a.len() != points.len() {
            return Err(BzError::Domain("images are not a permutation".into()));
        }
        let perm = points
            .iter()
            .zip(images)
            .filter(|(x, y)| x != y)
            .map(|(&x, &y)| (x, y))
            .collect();
        Ok(WeylElem { perm, word: None })
    }

    pub fn apply(&self, x: i64) -> i64 {
        *self.perm.get(&x).unwrap_or(&x)
    }

    pub fn word(&self) -> Option<&[i64]> {
        self.word.as_deref()
    }

    pub fn support(&self) -> Option<(i64, i64)> {
        let lo = *self.perm.keys().next()?;
        let hi = *self.perm.keys().next_back()?;
        Some((lo, hi))
    }

    pub fn is_identity(&self) -> bool {
        self.perm.is_empty()
    }

    /// w·s_i.
    pub fn mul_simple(&self, i: i64) -> Self {
        let (a, b) = (self.apply(i), self.apply(i + 1));
        let mut perm = self.perm.clone();
        for (x, y) in [(i, b), (i + 1, a)] {
            if x == y {
                perm.remove(&x);
            } else {
                perm.insert(x, y);
            }
        }
        let word = self.word.as_ref().map(|w| {
            let mut w = w.clone();
            w.push(i);
            w
        });
        WeylElem { perm, word }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &WeylElem) -> Self {
        let mut pts: Vec<i64> = self.perm.keys().chain(other.perm.keys()).copied().collect();
        pts.sort_unstable();
        pts.dedup();
        let perm = pts
            .into_iter()
            .map(|x| (x, self.apply(other.apply(x))))
            .filter(|(x, y)| x != y)
            .collect();
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some(a.iter().chain(b).copied().collect()),
            _ => None,
        };
        WeylElem { perm, word }
    }

    pub fn inverse(&self) -> Self {
        WeylElem {
            perm: self.perm.iter().map(|(&x, &y)| (y, x)).collect(),
            word: self
                .word
                .as_ref()
                .map(|w| w.iter().rev().copied().collect()),
        }
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let Some((lo, hi)) = self.support() else {
            return 0;
        };
        let img: Vec<i64> = (lo..=hi).map(|x| self.apply(x)).collect();
        let mut n = 0;
        for a in 0..img.len() {
            for b in a + 1..img.len() {
                if img[a] > img[b] {
                    n += 1;
                }
            }
        }
        n
    }

    /// Whether w·s_i covers w, i.e. ℓ(ws_i) = ℓ(w) + 1.
    pub fn right_ascent(&self, i: i64) -> bool {
        self.apply(i) < self.apply(i + 1)
    }

    /// A reduced word, built by bubble sort.
    pub fn reduced_word(&self) -> Vec<i64> {
        let Some((lo, hi)) = self.support() else {
            return Vec::new();
        };
        // peel right descents: w = (w s_i) s_i
        let mut w = self.clone();
        let mut rev = Vec::new();
        'outer: loop {
            for i in lo..hi {
                if !w.right_ascent(i) {
                    rev.push(i);
                    w = w.mul_simple(i);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        rev
    }

    /// w(S) for a chamber weight S.
    pub fn act(&self, gamma: &ChamberWeight) -> ChamberWeight {
        let Some((wlo, whi)) = self.support() else {
            return gamma.clone();
        };
        let (glo, ghi) = gamma.span();
        let lo = wlo.min(glo) - 1;
        let hi = whi.max(ghi) + 1;
        let mut xs: Vec<i64> = (lo..=hi)
            .filter(|&x| gamma.contains(x))
            .map(|x| self.apply(x))
            .collect();
        xs.sort_unstable();
        ChamberWeight::from_sorted(lo - 1, &xs)
    }

    /// One-line notation on `lo..=hi`.
    pub fn one_line(&self, lo: i64, hi: i64) -> Vec<i64> {
        (lo..=hi).map(|x| self.apply(x)).collect()
    }
}

/// ω_I(i) = lo + hi − i.
pub fn omega_flip(interval: &Interval, i: i64) -> Result<i64> {
    if !interval.contains(i) {
        return Err(BzError::Domain(format!("{i} not in {interval}")));
    }
    Ok(interval.lo + interval.hi - i)
}

/// w_0^I, reversing `lo..=hi+1`.
pub fn longest_element(interval: &Interval) -> WeylElem {
    let mut word = Vec::new();
    for top in interval.lo..=interval.hi {
        for i in (interval.lo..=top).rev() {
            word.push(i);
        }
    }
    WeylElem::from_word(&word)
}

/// All of W_I as permutations of the window, in lexicographic order of one-line notation.
pub fn weyl_group(interval: &Interval) -> Vec<WeylElem> {
    let pts: Vec<i64> = (interval.lo..=interval.hi + 1).collect();
    let mut out = Vec::new();
    let mut cur = pts.clone();
    loop {
        out.push(WeylElem::from_images(&pts, &cur).expect("permutation"));
        if !next_permutation(&mut cur) {
            break;
        }
    }
    out
}

pub(crate) fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// ϖ_i^I: S = ℤ_{≤lo-1} ∪ [i+1, hi+1].
pub fn fundamental(interval: &Interval, i: i64) -> Result<ChamberWeight> {
    if !interval.contains(i) {
        return Err(BzError::Domain(format!("{i} not in {interval}")));
    }
    let xs: Vec<i64> = (i + 1..=interval.hi + 1).collect();
    Ok(ChamberWeight::from_sorted(interval.lo - 1, &xs))
}

/// Γ_I, one weight per nonempty proper subset of the window, ordered by mask.
pub fn enumerate_gamma(interval: &Interval) -> Result<Vec<ChamberWeight>> {
    enumerate_gamma_with_capacity(interval, DEFAULT_GAMMA_CAPACITY)
}

pub fn enumerate_gamma_with_capacity(
    interval: &Interval,
    capacity: usize,
) -> Result<Vec<ChamberWeight>> {
    let m = interval.rank();
    if m > capacity || m > 62 {
        return Err(BzError::Capacity {
            what: format!("Gamma of {interval}"),
            limit: capacity,
        });
    }
    let n = m + 1;
    Ok((1..(1u64 << n) - 1)
        .map(|mask| ChamberWeight::from_mask(interval.lo, n, mask))
        .collect())
}

/// Translation by k(ℓ+1), the k-th power of σ.
pub trait SigmaShift: Sized {
    fn sigma_shift(&self, ell: i64, k: i64) -> Self;
}

impl SigmaShift for i64 {
    fn sigma_shift(&self, ell: i64, k: i64) -> Self {
        self + k * (ell + 1)
    }
}

impl SigmaShift for ChamberWeight {
    fn sigma_shift(&self, ell: i64, k: i64) -> Self {
        self.shift(k * (ell + 1))
    }
}

impl SigmaShift for WeylElem {
    fn sigma_shift(&self, ell: i64, k: i64) -> Self {
        let d = k * (ell + 1);
        WeylElem {
            perm: self.perm.iter().map(|(&x, &y)| (x + d, y + d)).collect(),
            word: self
                .word
                .as_ref()
                .map(|w| w.iter().map(|i| i + d).collect()),
        }
    }
}

impl SigmaShift for Interval {
    fn sigma_shift(&self, ell: i64, k: i64) -> Self {
        self.shift(k * (ell + 1))
    }
}

pub fn sigma_shift<T: SigmaShift>(x: &T, ell: i64, k: i64) -> Result<T> {
    if ell < 2 {
        return Err(BzError::Domain(format!("level {ell} < 2")));
    }
    Ok(x.sigma_shift(ell, k))
}

pub fn pairing(p: i64, gamma: &ChamberWeight) -> i64 {
    gamma.pairing(p)
}

pub fn reflect(q: i64, gamma: &ChamberWeight) -> ChamberWeight {
    gamma.reflect(q)
}

#[derive(Serialize, Deserialize)]
struct WeylJson {
    word: Vec<i64>,
}

impl Serialize for WeylElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let word = match &self.word {
            Some(w) => w.clone(),
            None => self.reduced_word(),
        };
        WeylJson { word }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeylElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = WeylJson::deserialize(d)?;
        Ok(WeylElem::from_word(&raw.word))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cw(a: i64, ex: &[i64]) -> ChamberWeight {
        ChamberWeight::from_parts(a, ex).unwrap()
    }

    #[test]
    fn pairing_examples() {
        let i12 = Interval::new(1, 2).unwrap();
        let v1 = fundamental(&i12, 1).unwrap();
        assert_eq!(v1, cw(0, &[2, 3]));
        assert_eq!(pairing(1, &v1), 1);
        assert_eq!(pairing(0, &v1), -1);
        assert_eq!(pairing(1, &cw(0, &[2])), 1);
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(reflect(1, &ChamberWeight::neg_lambda(1)), cw(0, &[2]));
        let g = cw(0, &[2, 5]);
        assert_eq!(reflect(3, &g), g);
        assert_eq!(reflect(1, &reflect(1, &g)), g);
    }

    #[test]
    fn normalization_absorbs_anchor() {
        let g = cw(0, &[1, 2, 4]);
        assert_eq!(g.anchor(), 2);
        assert_eq!(g.extras(), vec![4]);
        assert_eq!(g.charge(), 3);
    }

    #[test]
    fn fundamentals_of_a2() {
        let i12 = Interval::new(1, 2).unwrap();
        assert_eq!(fundamental(&i12, 2).unwrap(), cw(0, &[3]));
        assert!(fundamental(&i12, 3).is_err());
    }

    #[test]
    fn gamma_sizes() {
        for (m, size) in [(1, 2), (2, 6), (3, 14)] {
            let g = enumerate_gamma(&Interval::new(1, m).unwrap()).unwrap();
            assert_eq!(g.len(), size);
        }
        assert!(enumerate_gamma(&Interval::new(1, 15).unwrap()).is_err());
    }

    #[test]
    fn longest_element_of_a2() {
        let i12 = Interval::new(1, 2).unwrap();
        let w0 = longest_element(&i12);
        assert_eq!(w0.length(), 3);
        assert_eq!(w0.one_line(1, 3), vec![3, 2, 1]);
        assert_eq!(omega_flip(&i12, 1).unwrap(), 2);
    }

    #[test]
    fn sigma_examples() {
        let g = sigma_shift(&ChamberWeight::neg_lambda(0), 2, 1).unwrap();
        assert_eq!(g, ChamberWeight::neg_lambda(3));
        let i12 = Interval::new(1, 2).unwrap();
        let v = sigma_shift(&fundamental(&i12, 1).unwrap(), 2, 1).unwrap();
        assert_eq!(v, fundamental(&Interval::new(4, 5).unwrap(), 4).unwrap());
        assert!(sigma_shift(&3i64, 1, 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = cw(0, &[2, 5]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"anchor":0,"extras":[2,5]}"#);
        let back: ChamberWeight = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        let w = WeylElem::from_word(&[1, 2]);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, r#"{"word":[1,2]}"#);
    }

    #[test]
    fn reduced_word_reproduces() {
        let w = WeylElem::from_word(&[2, 1, 2, 3, 1]);
        let r = w.reduced_word();
        assert_eq!(r.len(), w.length());
        assert_eq!(WeylElem::from_word(&r), w);
    }

    #[test]
    fn affine_matrix() {
        assert_eq!(affine_a(2, 0, 2), -1);
        assert_eq!(affine_a(3, 0, 2), 0);
        assert_eq!(affine_a(3, 1, 1), 2);
    }
}
