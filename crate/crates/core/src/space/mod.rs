//! The spaces `P_m`, their conjugates and tensor products, together with the
//! structural maps between them: `Θ_m`, `J_m`, flips, `Vec` and partial traces.
//!
//! A vector of `P̄_m` is stored as the same coordinate list it has in `P_m`
//! under `Θ_m`; only the label changes. Consequently `Θ_m` is the identity
//! matrix, the conjugate representation is the entrywise conjugate matrix, and
//! `Vec` is row-major flattening.

mod group;
mod label;
mod linop;

pub use group::{exact_pool, rho_matrix, rho_matrix_f64, sample_su2, GroupElement};
pub use label::{Atom, Kind, SpaceLabel};
pub use linop::{LinOp, PolyVec};

use crate::scalar::{parity_sign, ExactScalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("shape mismatch in {context}: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize, context: &'static str },
    #[error("space mismatch: {left} vs {right}")]
    LabelMismatch { left: SpaceLabel, right: SpaceLabel },
    #[error("not an element of SU(2): |a|^2 + |b|^2 = {0}")]
    NotInSu2(String),
}

/// `Θ_m : P_m → P̄_m`, coefficient-wise.
pub fn theta_map(m: u32) -> LinOp {
    LinOp::identity(SpaceLabel::p(m as i32))
        .relabel(SpaceLabel::p(m as i32), SpaceLabel::pbar(m as i32))
        .expect("same dimension")
}

/// `J_m = Θ_m ρ_m(g₀)`: `f_l ↦ (-1)^l f_{m-l}` into `P̄_m`.
pub fn j_map(m: u32) -> LinOp {
    let mi = m as i32;
    LinOp::from_fn(SpaceLabel::p(mi), SpaceLabel::pbar(mi), |i, l| {
        if i + l == m as usize {
            parity_sign(l as i64)
        } else {
            ExactScalar::zero()
        }
    })
}

/// `J_m^* : P̄_m → P_m`: `f_l ↦ (-1)^{m-l} f_{m-l}`.
pub fn j_map_adjoint(m: u32) -> LinOp {
    let mi = m as i32;
    LinOp::from_fn(SpaceLabel::pbar(mi), SpaceLabel::p(mi), |i, l| {
        if i + l == m as usize {
            parity_sign(m as i64 - l as i64)
        } else {
            ExactScalar::zero()
        }
    })
}

/// `flip : H ⊗ K → K ⊗ H`, `h ⊗ k ↦ k ⊗ h`. `H` and `K` may themselves be
/// tensor products; they are treated as blocks.
pub fn flip(h: &SpaceLabel, k: &SpaceLabel) -> LinOp {
    let (dh, dk) = (h.dim(), k.dim());
    let mut out = LinOp::zeros(h.tensor(k), k.tensor(h));
    for a in 0..dh {
        for b in 0..dk {
            out.set(b * dh + a, a * dk + b, ExactScalar::one());
        }
    }
    out
}

/// `Vec : End(H, K) → K ⊗ H̄`, the unique linear map with `Vec(xy*) = x ⊗ ȳ`.
pub fn vec(t: &LinOp) -> PolyVec {
    let space = t.codomain().tensor(&t.domain().conj());
    PolyVec::new(space, t.entries().to_vec()).expect("dimensions agree")
}

/// Inverse of [`vec`]; `v` must live in `K ⊗ H̄` where `K` is the first `split` factors.
pub fn unvec(v: &PolyVec, split: usize) -> LinOp {
    let (k, hbar) = v.space.split_at(split);
    LinOp::from_rows(hbar.conj(), k, v.coeffs.clone()).expect("dimensions agree")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceSide {
    /// Trace out the left factor: `Tr_H` on `H ⊗ K`.
    Left,
    /// Trace out the right factor: `Tr_K` on `H ⊗ K`.
    Right,
}

/// Partial trace of an operator on a two-block space `H ⊗ K`, where `H` is the
/// first `split` factors of the label.
pub fn partial_trace_at(a: &LinOp, split: usize, side: TraceSide) -> Result<LinOp, SpaceError> {
    if a.domain() != a.codomain() {
        return Err(SpaceError::LabelMismatch { left: a.domain().clone(), right: a.codomain().clone() });
    }
    if split > a.domain().factors.len() {
        return Err(SpaceError::ShapeMismatch {
            expected: a.domain().factors.len(),
            found: split,
            context: "partial trace split",
        });
    }
    let (h, k) = a.domain().split_at(split);
    let (dh, dk) = (h.dim(), k.dim());
    Ok(match side {
        TraceSide::Right => LinOp::from_fn(h.clone(), h, |i, j| (0..dk).map(|b| a.get(i * dk + b, j * dk + b)).sum()),
        TraceSide::Left => LinOp::from_fn(k.clone(), k, |i, j| (0..dh).map(|c| a.get(c * dk + i, c * dk + j)).sum()),
    })
}

/// Partial trace on a two-factor label `H ⊗ K`.
pub fn partial_trace(a: &LinOp, side: TraceSide) -> Result<LinOp, SpaceError> {
    if a.domain().factors.len() != 2 {
        return Err(SpaceError::ShapeMismatch {
            expected: 2,
            found: a.domain().factors.len(),
            context: "partial trace needs two tensor factors",
        });
    }
    partial_trace_at(a, 1, side)
}

/// `E_{lk} = f_{l-1} f_{k-1}^*` on `P_m`, with the 1-based indices used in
/// the literature on these channels.
pub fn matrix_unit_1based(m: u32, l: usize, k: usize) -> LinOp {
    assert!(l >= 1 && k >= 1, "matrix units are 1-based");
    matrix_unit(&SpaceLabel::p(m as i32), l - 1, k - 1)
}

/// `f_i f_j^*` on an arbitrary label, 0-based.
pub fn matrix_unit(space: &SpaceLabel, i: usize, j: usize) -> LinOp {
    let mut out = LinOp::zeros(space.clone(), space.clone());
    out.set(i, j, ExactScalar::one());
    out
}

/// Matrix of the conjugate representation `ρ̄_m(g)` on `P̄_m`; for unitary
/// `ρ_m` this is also the contragredient `ρ̌_m(g)`.
pub fn rho_bar_matrix(m: u32, g: &GroupElement) -> LinOp {
    rho_matrix(m, g).conj()
}
