//! Type A_∞ data through finite windows.
//!
//! A `WindowedBZ` remembers the operator word that produced it from O and
//! holds the restriction of the element to one window. Θ-components are read
//! by replaying the word on growing windows until the value settles.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::bz_finite::FiniteBZDatum;
use crate::crystal_finite::{lower_f, raise_e};
use crate::error::{BzError, Result};
use crate::roots::{fundamental, weyl_group, ChamberWeight, Interval, WeylElem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowPolicy {
    /// Growth on each side per enlargement.
    pub margin: i64,
    /// Largest window rank materialized.
    pub max_len: usize,
}

impl Default for WindowPolicy {
    fn default() -> Self {
        WindowPolicy {
            margin: 2,
            max_len: 14,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", content = "color", rename_all = "lowercase")]
pub enum Op {
    F(i64),
    E(i64),
}

impl Op {
    pub fn color(&self) -> i64 {
        match *self {
            Op::F(p) | Op::E(p) => p,
        }
    }
}

type ReplayCache = Arc<Mutex<HashMap<Interval, Option<Arc<FiniteBZDatum>>>>>;

#[derive(Clone, Debug)]
pub struct WindowedBZ {
    ops: Vec<Op>,
    window: Interval,
    datum: FiniteBZDatum,
    policy: WindowPolicy,
    cache: ReplayCache,
}

impl PartialEq for WindowedBZ {
    fn eq(&self, other: &Self) -> bool {
        self.window == other.window && self.datum == other.datum
    }
}

impl WindowedBZ {
    /// O restricted to `window`.
    pub fn origin(window: Interval, policy: WindowPolicy) -> Result<Self> {
        Self::check_len(&window, &policy)?;
        Ok(WindowedBZ {
            ops: Vec::new(),
            window,
            datum: FiniteBZDatum::zero(window)?,
            policy,
            cache: Default::default(),
        })
    }

    /// Replays `ops` from O on `window`.
    pub fn from_ops(window: Interval, ops: &[Op], policy: WindowPolicy) -> Result<Self> {
        Self::check_len(&window, &policy)?;
        let datum = replay(ops, &window)?.ok_or_else(|| {
            BzError::Domain(format!("word {ops:?} does not act on window {window}"))
        })?;
        Ok(WindowedBZ {
            ops: ops.to_vec(),
            window,
            datum,
            policy,
            cache: Default::default(),
        })
    }

    fn check_len(window: &Interval, policy: &WindowPolicy) -> Result<()> {
        if window.rank() > policy.max_len {
            return Err(BzError::Capacity {
                what: format!("window {window}"),
                limit: policy.max_len,
            });
        }
        Ok(())
    }

    pub fn window(&self) -> Interval {
        self.window
    }

    pub fn datum(&self) -> &FiniteBZDatum {
        &self.datum
    }

    pub fn ops(&self) -> &[Op] {
        &self.ops
    }

    pub fn policy(&self) -> WindowPolicy {
        self.policy
    }

    /// The same element on another window.
    pub fn rewindow(&self, window: Interval) -> Result<Self> {
        Self::from_ops(window, &self.ops, self.policy)
    }

    fn replay_cached(&self, k: &Interval) -> Result<Option<Arc<FiniteBZDatum>>> {
        if let Some(v) = self.cache.lock().unwrap().get(k) {
            return Ok(v.clone());
        }
        let v = replay(&self.ops, k)?.map(Arc::new);
        self.cache.lock().unwrap().insert(*k, v.clone());
        Ok(v)
    }

    fn start_window(&self, w: &WeylElem, i: i64) -> Interval {
        let (mut lo, mut hi) = (i, i);
        if let Some((a, b)) = w.support() {
            lo = lo.min(a);
            hi = hi.max(b - 1);
        }
        for op in &self.ops {
            lo = lo.min(op.color());
            hi = hi.max(op.color());
        }
        Interval { lo, hi }.widen(1)
    }

    /// Value at wϖ_i^J on the replayed window J, if the word acts there.
    fn value_on(&self, j: &Interval, w: &WeylElem, i: i64) -> Result<Option<i64>> {
        let Some(d) = self.replay_cached(j)? else {
            return Ok(None);
        };
        let g = w.act(&fundamental(j, i)?);
        d.get(&g)
            .map(Some)
            .ok_or_else(|| BzError::Domain(format!("{g:?} outside {j}")))
    }

    fn stabilize(&self, w: &WeylElem, i: i64) -> Result<(i64, Interval)> {
        let start = self.start_window(w, i);
        let margin = self.policy.margin.max(1);
        let mut run: Vec<(Interval, Option<i64>)> = Vec::new();
        let mut j = start;
        loop {
            if j.rank() > self.policy.max_len {
                return Err(BzError::Stabilization {
                    query: format!("w={:?}, i={i}", w.word().unwrap_or(&[])),
                    max_window: self.policy.max_len,
                    last: run.iter().rev().take(2).filter_map(|r| r.1).collect(),
                });
            }
            run.push((j, self.value_on(&j, w, i)?));
            let n = run.len();
            if n >= 3 {
                let (a, b, c) = (run[n - 3].1, run[n - 2].1, run[n - 1].1);
                if let Some(v) = a {
                    if a == b && b == c {
                        return Ok((v, run[n - 3].0));
                    }
                }
            }
            j = j.widen(margin);
        }
    }

    /// Θ(M)_{wΛ_i}.
    pub fn theta(&self, w: &WeylElem, i: i64) -> Result<i64> {
        Ok(self.stabilize(w, i)?.0)
    }

    /// First window of the agreeing run found by `theta`.
    pub fn stabilization_interval(&self, w: &WeylElem, i: i64) -> Result<Interval> {
        Ok(self.stabilize(w, i)?.1)
    }

    pub fn theta_lambda(&self, i: i64) -> Result<i64> {
        self.theta(&WeylElem::identity(), i)
    }

    pub fn theta_s(&self, p: i64) -> Result<i64> {
        self.theta(&WeylElem::simple(p), p)
    }

    /// c_p(M) = Θ_{Λ_p} − Θ_{s_pΛ_p} − 1.
    pub fn inf_c(&self, p: i64) -> Result<i64> {
        Ok(self.theta_lambda(p)? - self.theta_s(p)? - 1)
    }

    pub fn inf_epsilon(&self, p: i64) -> Result<i64> {
        Ok(-(self.theta_lambda(p)? + self.theta_s(p)?
            - self.theta_lambda(p - 1)?
            - self.theta_lambda(p + 1)?))
    }

    fn check_interior(&self, p: i64) -> Result<()> {
        if !self.window.contains(p) {
            return Err(BzError::Domain(format!(
                "color {p} outside window {}",
                self.window
            )));
        }
        Ok(())
    }

    fn successor(&self, op: Op, datum: FiniteBZDatum) -> Self {
        let mut ops = self.ops.clone();
        ops.push(op);
        WindowedBZ {
            ops,
            window: self.window,
            datum,
            policy: self.policy,
            cache: Default::default(),
        }
    }

    /// f_pM with the Θ-value of c_p(M), applied on the window.
    pub fn inf_f(&self, p: i64) -> Result<Self> {
        self.check_interior(p)?;
        let c = self.inf_c(p)?;
        let mut out = self.datum.clone();
        let lo = self.window.lo;
        let n = self.window.window_len();
        for (g, v) in self.datum.components() {
            if g.pairing(p) > 0 {
                let other = self
                    .datum
                    .get(&g.reflect(p))
                    .expect("window closed under s_p");
                let mask = g.to_mask(lo, n).expect("in window");
                out.set(mask, v.min(other + c));
            }
        }
        Ok(self.successor(Op::F(p), out))
    }

    /// e_pM, read off replays on growing windows and checked by lowering back.
    pub fn inf_e(&self, p: i64) -> Result<Option<Self>> {
        self.check_interior(p)?;
        if self.inf_epsilon(p)? == 0 {
            return Ok(None);
        }
        let mut ops = self.ops.clone();
        ops.push(Op::E(p));
        let margin = self.policy.margin.max(1);
        let mut k = self.start_window(&WeylElem::simple(p), p);
        if !k.contains_interval(&self.window) {
            k = Interval {
                lo: k.lo.min(self.window.lo),
                hi: k.hi.max(self.window.hi),
            };
        }
        let mut run: Vec<Option<FiniteBZDatum>> = Vec::new();
        while k.rank() <= self.policy.max_len {
            let restricted = match replay(&ops, &k)? {
                Some(d) => Some(restrict_to(&d, &self.window)?),
                None => None,
            };
            run.push(restricted);
            let n = run.len();
            if n >= 3
                && run[n - 3].is_some()
                && run[n - 3] == run[n - 2]
                && run[n - 2] == run[n - 1]
            {
                let datum = run.swap_remove(n - 3).unwrap();
                let out = self.successor(Op::E(p), datum);
                if out.inf_f(p)?.datum != self.datum {
                    return Err(BzError::Integrity(format!(
                        "f_{p} does not undo e_{p} on {}",
                        self.window
                    )));
                }
                return Ok(Some(out));
            }
            k = k.widen(margin);
        }
        Err(BzError::Stabilization {
            query: format!("e_{p}"),
            max_window: self.policy.max_len,
            last: Vec::new(),
        })
    }

    /// Whether I ∈ Int(M; v, k) for every v ∈ W_K and k ∈ K, judged against
    /// the stabilized values.
    pub fn stability_class(&self, i: &Interval, k: &Interval) -> Result<bool> {
        if !i.contains_interval(k) {
            return Err(BzError::Domain(format!("{k} not inside {i}")));
        }
        let margin = self.policy.margin.max(1);
        for v in weyl_group(k) {
            for kk in k.indices() {
                let (val, stable) = self.stabilize(&v, kk)?;
                let mut j = *i;
                loop {
                    if self.value_on(&j, &v, kk)? != Some(val) {
                        return Ok(false);
                    }
                    if j.contains_interval(&stable) || j.rank() > self.policy.max_len {
                        break;
                    }
                    j = j.widen(margin);
                }
            }
        }
        Ok(true)
    }
}

/// The word applied from O on window `k`; `None` when a color leaves the
/// window or a raising step is undefined there.
pub fn replay(ops: &[Op], k: &Interval) -> Result<Option<FiniteBZDatum>> {
    let mut d = FiniteBZDatum::zero(*k)?;
    for op in ops {
        if !k.contains(op.color()) {
            return Ok(None);
        }
        d = match *op {
            Op::F(p) => lower_f(&d, p)?,
            Op::E(p) => match raise_e(&d, p)? {
                Some(n) => n,
                None => return Ok(None),
            },
        };
    }
    Ok(Some(d))
}

/// Components of `d` at the chamber weights of the smaller window `i`.
pub fn restrict_to(d: &FiniteBZDatum, i: &Interval) -> Result<FiniteBZDatum> {
    let mut out = FiniteBZDatum::zero(*i)?;
    let n = i.window_len();
    for mask in 1..(1u64 << n) - 1 {
        let g = ChamberWeight::from_mask(i.lo, n, mask);
        let v = d
            .get(&g)
            .ok_or_else(|| BzError::Domain(format!("{i} not inside {}", d.interval())))?;
        out.set(mask, v);
    }
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct WindowedRepr {
    window: [i64; 2],
    margin: i64,
    max_len: usize,
    ops: Vec<Op>,
    datum: FiniteBZDatum,
}

impl Serialize for WindowedBZ {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WindowedRepr {
            window: [self.window.lo, self.window.hi],
            margin: self.policy.margin,
            max_len: self.policy.max_len,
            ops: self.ops.clone(),
            datum: self.datum.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WindowedBZ {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let r = WindowedRepr::deserialize(d)?;
        let window = Interval::new(r.window[0], r.window[1]).map_err(D::Error::custom)?;
        let policy = WindowPolicy {
            margin: r.margin,
            max_len: r.max_len,
        };
        let out = WindowedBZ::from_ops(window, &r.ops, policy).map_err(D::Error::custom)?;
        if out.datum != r.datum {
            return Err(D::Error::custom("datum does not match its word"));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn o() -> WindowedBZ {
        WindowedBZ::origin(Interval::new(-2, 3).unwrap(), WindowPolicy::default()).unwrap()
    }

    #[test]
    fn theta_of_f1() {
        let m = o().inf_f(1).unwrap();
        assert_eq!(m.theta_lambda(1).unwrap(), -1);
        assert_eq!(m.theta_lambda(2).unwrap(), 0);
        assert_eq!(m.theta_s(1).unwrap(), 0);
        assert_eq!(m.inf_epsilon(1).unwrap(), 1);
    }

    #[test]
    fn f_of_origin() {
        let m = o().inf_f(0).unwrap();
        for (g, v) in m.datum().components() {
            assert_eq!(v, if g.pairing(0) > 0 { -1 } else { 0 }, "{g:?}");
        }
        assert_eq!(m.inf_e(0).unwrap().unwrap().datum(), o().datum());
        assert_eq!(o().inf_e(0).unwrap(), None);
    }

    #[test]
    fn origin_stabilizes_at_start() {
        let j = o()
            .stabilization_interval(&WeylElem::identity(), 0)
            .unwrap();
        assert_eq!(j, Interval::new(-1, 1).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let m = o().inf_f(1).unwrap().inf_f(0).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        let back: WindowedBZ = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
