//! Closed-form coefficients `β_{i,s,j}` and `ε_i^j` of `α_{m,n,h}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use super::coefficient::{binom, factorial};
use super::{cg_coefficient, CgIndex};
use crate::scalar::{parity_sign, ExactScalar, Rational};
use crate::space::{LinOp, SpaceLabel};

/// `β_{i,s,j}^{m,n,h}`; zero when any binomial vanishes.
pub fn beta(ix: CgIndex, i: u32, s: u32, j: u32) -> ExactScalar {
    let (m, n, h, r) = (ix.m() as i64, ix.n() as i64, ix.h() as i64, ix.r() as i64);
    let (i, s, j) = (i as i64, s as i64, j as i64);
    let l = i - j + h;
    let numer = binom(h, s) * binom(n - h, j - s) * binom(m - h, i - j + s);
    let under = binom(r, i) * binom(m, l) * binom(n, j);
    if numer == BigInt::from(0) || under == BigInt::from(0) {
        return ExactScalar::zero();
    }
    let c = cg_coefficient(ix.m(), ix.n(), ix.h()).expect("valid index");
    let radicand = c * Rational::from_integer(factorial(r as u32) * factorial(m as u32) * factorial(n as u32))
        / Rational::from_integer(under);
    let root = ExactScalar::sqrt_rational(&radicand).expect("positive");
    let factor = Rational::new(numer, factorial((m - h) as u32));
    (&parity_sign(s) * &root).scale(&factor)
}

fn compute_epsilon(ix: CgIndex, i: u32, j: u32) -> ExactScalar {
    let (m, n, h) = (ix.m() as i64, ix.n() as i64, ix.h() as i64);
    let (i, j) = (i as i64, j as i64);
    let lo = 0.max(j - i).max(j + h - n);
    let hi = h.min(j).min(j + m - i - h);
    (lo..=hi).map(|s| beta(ix, i as u32, s as u32, j as u32)).sum()
}

/// The coefficients `ε_i^j` for `0 ≤ i ≤ r`, `j ∈ B(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonTable {
    index: CgIndex,
    values: BTreeMap<(u32, u32), ExactScalar>,
}

impl EpsilonTable {
    /// Builds a table from arbitrary values; entries outside `B(i)` are dropped.
    pub fn from_values(index: CgIndex, values: BTreeMap<(u32, u32), ExactScalar>) -> Self {
        let values = values
            .into_iter()
            .filter(|&((i, j), _)| i <= index.r() && index.b_range(i).contains(&j))
            .collect();
        Self { index, values }
    }

    pub fn index(&self) -> CgIndex {
        self.index
    }

    /// `ε_i^j`, zero outside `B(i)`.
    pub fn get(&self, i: u32, j: u32) -> ExactScalar {
        self.values.get(&(i, j)).cloned().unwrap_or_else(ExactScalar::zero)
    }

    /// Entries in `(i, j)` order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, &ExactScalar)> {
        self.values.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Replaces one entry; used to build corrupted fixtures.
    pub fn with_entry(mut self, i: u32, j: u32, value: ExactScalar) -> Self {
        self.values.insert((i, j), value);
        self
    }
}

fn table_cache() -> &'static Mutex<HashMap<CgIndex, Arc<EpsilonTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<CgIndex, Arc<EpsilonTable>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `ε_i^j` summed over `max{0, j−i, j+h−n} ≤ s ≤ min{h, j, j+m−i−h}`. Memoized.
pub fn epsilon_table(ix: CgIndex) -> Arc<EpsilonTable> {
    if let Some(t) = table_cache().lock().expect("poisoned").get(&ix) {
        return Arc::clone(t);
    }
    let mut values = BTreeMap::new();
    for i in 0..=ix.r() {
        for j in ix.b_range(i) {
            values.insert((i, j), compute_epsilon(ix, i, j));
        }
    }
    let table = Arc::new(EpsilonTable { index: ix, values });
    let mut cache = table_cache().lock().expect("poisoned");
    Arc::clone(cache.entry(ix).or_insert(table))
}

/// `α(f_i^r) = Σ_{j∈B(i)} ε_i^j f_{l_ij}^m ⊗ f_j^n`.
pub fn alpha_from_table(table: &EpsilonTable) -> LinOp {
    let ix = table.index();
    let (m, n, r) = (ix.m(), ix.n(), ix.r());
    let mut out = LinOp::zeros(SpaceLabel::p(r as i32), SpaceLabel::pp(m as i32, n as i32));
    for (i, j, v) in table.iter() {
        let row = (ix.l(i, j) * (n + 1) + j) as usize;
        out.set(row, i as usize, v.clone());
    }
    out
}

pub fn alpha_closed(ix: CgIndex) -> LinOp {
    alpha_from_table(&epsilon_table(ix))
}
