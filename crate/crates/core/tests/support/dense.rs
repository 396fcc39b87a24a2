//! Dense reference calculus: forms stored as full antisymmetric arrays over
//! every ordered index tuple, with signs from inversion counts. Shares only
//! scalar arithmetic with the engine.
#![allow(dead_code)]

use std::collections::HashMap;

use msk_core::calculus::index::increasing_tuples;
use msk_core::calculus::{Chart, DiffForm};
use msk_core::scalar::RationalFunction;

pub fn ordered_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut u = t.clone();
                    u.push(i);
                    u
                })
            })
            .collect();
    }
    out
}

/// `Some(±1)` for distinct entries, by counting inversions.
pub fn perm_sign(t: &[usize]) -> Option<i32> {
    let mut inv = 0;
    for a in 0..t.len() {
        for b in a + 1..t.len() {
            if t[a] == t[b] {
                return None;
            }
            if t[a] > t[b] {
                inv += 1;
            }
        }
    }
    Some(if inv % 2 == 0 { 1 } else { -1 })
}

#[derive(Clone, Debug)]
pub struct Dense {
    pub chart: Chart,
    pub k: usize,
    entries: HashMap<Vec<usize>, RationalFunction>,
}

impl Dense {
    pub fn from_form(a: &DiffForm) -> Self {
        let chart = a.chart().clone();
        let mut entries = HashMap::new();
        for t in ordered_tuples(chart.dim(), a.degree()) {
            let Some(sign) = perm_sign(&t) else { continue };
            let mut sorted = t.clone();
            sorted.sort_unstable();
            if let Some(c) = a.terms().get(&sorted) {
                entries.insert(t, if sign > 0 { c.clone() } else { -c });
            }
        }
        Dense { chart, k: a.degree(), entries }
    }

    pub fn get(&self, t: &[usize]) -> RationalFunction {
        self.entries.get(t).cloned().unwrap_or_else(|| self.chart.zero())
    }

    fn build(chart: &Chart, k: usize, f: impl Fn(&[usize]) -> RationalFunction) -> Self {
        let mut entries = HashMap::new();
        for t in ordered_tuples(chart.dim(), k) {
            let v = f(&t);
            if !v.is_zero() {
                entries.insert(t, v);
            }
        }
        Dense { chart: chart.clone(), k, entries }
    }

    /// `(dα)_{i0…ik} = Σ_j (−1)^j ∂_{i_j} α_{i0…î_j…ik}`.
    pub fn d(&self) -> Self {
        Dense::build(&self.chart, self.k + 1, |t| {
            let mut acc = self.chart.zero();
            for j in 0..t.len() {
                let mut rest = t.to_vec();
                let i = rest.remove(j);
                let term = self.get(&rest).derive_index(i);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        })
    }

    /// `(i_X α)_{i1…} = Σ_j X^j α_{j i1…}`.
    pub fn contract(&self, x: &[RationalFunction]) -> Self {
        assert!(self.k > 0);
        Dense::build(&self.chart, self.k - 1, |t| {
            let mut acc = self.chart.zero();
            for (j, xj) in x.iter().enumerate() {
                if xj.is_zero() {
                    continue;
                }
                let mut full = vec![j];
                full.extend_from_slice(t);
                acc = &acc + &(xj * &self.get(&full));
            }
            acc
        })
    }

    pub fn add(&self, o: &Dense) -> Self {
        Dense::build(&self.chart, self.k, |t| &self.get(t) + &o.get(t))
    }

    pub fn neg(&self) -> Self {
        Dense::build(&self.chart, self.k, |t| -&self.get(t))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(RationalFunction::is_zero)
    }

    pub fn same(&self, o: &Dense) -> bool {
        self.k == o.k && ordered_tuples(self.chart.dim(), self.k).iter().all(|t| (&self.get(t) - &o.get(t)).is_zero())
    }

    pub fn to_form(&self) -> DiffForm {
        let comps: Vec<RationalFunction> =
            increasing_tuples(self.chart.dim(), self.k).iter().map(|t| self.get(t)).collect();
        DiffForm::from_components(&self.chart, self.k, &comps)
    }

    /// `s` with `self = s · other`, when `s ∈ {1, −1}` fits every entry.
    pub fn sign_against(&self, other: &Dense) -> Option<i32> {
        let tuples = ordered_tuples(self.chart.dim(), self.k);
        [1, -1].into_iter().find(|&s| {
            tuples.iter().all(|t| {
                let o = other.get(t);
                let o = if s > 0 { o } else { -&o };
                (&self.get(t) - &o).is_zero()
            })
        })
    }
}
