//! `η_{m,n,h} = (I ⊗ J_n) α_{m,n,h}` and the projections `q_{m,r,l} = ηη*`.

use super::{alpha_closed, ClebschError, CgIndex};
use crate::scalar::parity_sign;
use crate::space::{flip, j_map, j_map_adjoint, LinOp, SpaceLabel};

/// `(I_{P_m} ⊗ J_n) α`, for any `α : P_r → P_m ⊗ P_n`.
pub fn eta_from_alpha(ix: CgIndex, alpha: &LinOp) -> LinOp {
    let id = LinOp::identity(SpaceLabel::p(ix.m() as i32));
    &id.tensor(&j_map(ix.n())) * alpha
}

/// `η_{m,n,h} : P_r → P_m ⊗ P̄_n`
pub fn eta(ix: CgIndex) -> LinOp {
    eta_from_alpha(ix, &alpha_closed(ix))
}

/// `q_{m,r,l} = η_{m,r,l} η_{m,r,l}*` on `P_m ⊗ P̄_r`.
pub fn projection_q(m: u32, r: u32, l: u32) -> Result<LinOp, ClebschError> {
    let ix = CgIndex::new(m, r, l).map_err(|_| ClebschError::InvalidProjection { m, r, l })?;
    let e = eta(ix);
    Ok(&e * &e.adjoint())
}

/// `flip ∘ α_{m,n,h} = (−1)^h α_{n,m,h}`
pub fn flip_alpha_identity_check(ix: CgIndex) -> bool {
    let (pm, pn) = (SpaceLabel::p(ix.m() as i32), SpaceLabel::p(ix.n() as i32));
    let lhs = &flip(&pm, &pn) * &alpha_closed(ix);
    lhs == alpha_closed(ix.swapped()).scale(&parity_sign(ix.h() as i64))
}

/// `flip ∘ (J_m ⊗ J_n*) ∘ η_{m,n,h} = (−1)^h η_{n,m,h}`
pub fn eta_flip_identity_check(ix: CgIndex) -> bool {
    let lhs = &(&flip(&SpaceLabel::pbar(ix.m() as i32), &SpaceLabel::p(ix.n() as i32))
        * &j_map(ix.m()).tensor(&j_map_adjoint(ix.n())))
        * &eta(ix);
    lhs == eta(ix.swapped()).scale(&parity_sign(ix.h() as i64))
}
