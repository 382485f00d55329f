//! Clebsch-Gordan data for `P_m ⊗ P_n ≅ ⊕_h P_{m+n-2h}`.
//!
//! The isometries `α_{m,n,h}` are built twice: from the differential
//! operators ([`alpha_via_operators`]) and from the closed-form coefficient
//! table ([`alpha_closed`]). The two constructions share no code beyond the
//! coefficient `c_{m,n,h}`.

mod coefficient;
mod epsilon;
mod eta;
mod operators;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use coefficient::{cg_coefficient, cg_coefficient_closed, cg_coefficient_recursive};
pub use epsilon::{alpha_closed, alpha_from_table, beta, epsilon_table, EpsilonTable};
pub use eta::{
    eta, eta_flip_identity_check, eta_from_alpha, flip_alpha_identity_check, projection_q,
};
pub use operators::{alpha_via_operators, cg_expand, delta_xy, delta_yx, gamma_xy, omega_xy};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClebschError {
    #[error("invalid index (m, n, h) = ({m}, {n}, {h}): need 0 <= h <= min(m, n)")]
    InvalidIndex { m: u32, n: u32, h: u32 },
    #[error("invalid projection index (m, r, l) = ({m}, {r}, {l}): need 0 <= l <= min(m, r)")]
    InvalidProjection { m: u32, r: u32, l: u32 },
}

/// A valid triple `(m, n, h)` with `0 ≤ h ≤ min(m, n)`; `r = m + n − 2h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawIndex", into = "RawIndex")]
pub struct CgIndex {
    m: u32,
    n: u32,
    h: u32,
}

#[derive(Serialize, Deserialize)]
struct RawIndex {
    m: u32,
    n: u32,
    h: u32,
}

impl TryFrom<RawIndex> for CgIndex {
    type Error = ClebschError;

    fn try_from(raw: RawIndex) -> Result<Self, Self::Error> {
        CgIndex::new(raw.m, raw.n, raw.h)
    }
}

impl From<CgIndex> for RawIndex {
    fn from(ix: CgIndex) -> Self {
        RawIndex { m: ix.m, n: ix.n, h: ix.h }
    }
}

impl CgIndex {
    pub fn new(m: u32, n: u32, h: u32) -> Result<Self, ClebschError> {
        if h > m.min(n) {
            return Err(ClebschError::InvalidIndex { m, n, h });
        }
        Ok(Self { m, n, h })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn r(&self) -> u32 {
        self.m + self.n - 2 * self.h
    }

    /// The index with `m` and `n` exchanged.
    pub fn swapped(&self) -> Self {
        Self { m: self.n, n: self.m, h: self.h }
    }

    /// `k₁(i) = max{0, i + h − m}`
    pub fn k1(&self, i: u32) -> u32 {
        (i + self.h).saturating_sub(self.m)
    }

    /// `k₂(i) = min{i, n − h}`
    pub fn k2(&self, i: u32) -> u32 {
        i.min(self.n - self.h)
    }

    /// `B(i) = [k₁(i), k₂(i) + h]`, the `j` with possibly nonzero `ε_i^j`.
    pub fn b_range(&self, i: u32) -> std::ops::RangeInclusive<u32> {
        self.k1(i)..=self.k2(i) + self.h
    }

    /// `l_{ij} = i − j + h`
    pub fn l(&self, i: u32, j: u32) -> u32 {
        i + self.h - j
    }

    /// Every valid index with `m, n ≤ max`.
    pub fn all_up_to(max: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for m in 0..=max {
            for n in 0..=max {
                for h in 0..=m.min(n) {
                    out.push(Self { m, n, h });
                }
            }
        }
        out
    }
}

impl fmt::Display for CgIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.m, self.n, self.h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_validation_and_ranges() {
        assert!(CgIndex::new(1, 2, 2).is_err());
        let ix = CgIndex::new(3, 2, 1).unwrap();
        assert_eq!(ix.r(), 3);
        // B(i) stays inside [0, n] and l_ij inside [0, m].
        for i in 0..=ix.r() {
            for j in ix.b_range(i) {
                assert!(j <= ix.n());
                assert!(ix.l(i, j) <= ix.m());
            }
        }
        let json = serde_json::to_string(&ix).unwrap();
        assert_eq!(serde_json::from_str::<CgIndex>(&json).unwrap(), ix);
        assert!(serde_json::from_str::<CgIndex>(r#"{"m":0,"n":1,"h":1}"#).is_err());
    }

    #[test]
    fn two_constructions_agree_small() {
        for ix in CgIndex::all_up_to(3) {
            let a = alpha_closed(ix);
            assert_eq!(a, alpha_via_operators(ix), "{ix}");
            assert!((&a.adjoint() * &a).is_identity(), "{ix}");
        }
    }

    #[test]
    fn expansion_reassembles() {
        use crate::space::{PolyVec, SpaceLabel};
        let f = PolyVec::new(
            SpaceLabel::pp(2, 2),
            (0..9).map(|k| crate::scalar::ExactScalar::from_ratio(k * k - 3, k + 1)).collect(),
        )
        .unwrap();
        let parts = cg_expand(&f);
        let mut total = PolyVec::zeros(f.space.clone());
        for (h, part) in &parts {
            let a = alpha_closed(CgIndex::new(2, 2, *h).unwrap());
            assert_eq!(*part, a.apply(&a.adjoint().apply(&f)));
            total = &total + part;
        }
        assert_eq!(total, f);
    }
}
