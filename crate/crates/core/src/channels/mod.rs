//! The extreme covariant channels `Φ_{m,n,h} : End(P_r) → End(P_m)`.

mod superop;
mod symmetry;

use std::fmt;
use std::sync::OnceLock;

use crate::clebsch::{alpha_closed, epsilon_table, projection_q, ClebschError, CgIndex};
use crate::scalar::{rational, ExactScalar, Rational};
use crate::space::{partial_trace, vec, LinOp, PolyVec, SpaceError, SpaceLabel, TraceSide};

pub use superop::{verify_channel, ChannelReport, Superoperator, PSD_TOLERANCE};
pub use symmetry::{
    commutes_with_group, float_covariance_defect, kraus_symmetry_check, kraus_symmetry_report,
    KrausSymmetryReport,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChannelError {
    #[error(transparent)]
    Index(#[from] ClebschError),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("expected an operator on {expected}, got one from {found_domain} to {found_codomain}")]
    ShapeMismatch { expected: SpaceLabel, found_domain: SpaceLabel, found_codomain: SpaceLabel },
}

/// Kraus operators `T_j : P_r → P_m`, `j = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KrausSet {
    pub operators: Vec<LinOp>,
}

impl KrausSet {
    /// `Σ T_j* T_j = I`
    pub fn is_complete(&self) -> bool {
        let Some(first) = self.operators.first() else { return false };
        let mut sum = LinOp::zeros(first.domain().clone(), first.domain().clone());
        for t in &self.operators {
            sum = &sum + &(&t.adjoint() * t);
        }
        sum.is_identity()
    }

    /// `Σ T_j A T_j*`
    pub fn apply(&self, a: &LinOp) -> LinOp {
        let mut terms = self.operators.iter().map(|t| &(t * a) * &t.adjoint());
        let first = terms.next().expect("at least one Kraus operator");
        terms.fold(first, |acc, x| &acc + &x)
    }

    /// `Σ T_j* B T_j`, the dual map.
    pub fn apply_adjoint(&self, b: &LinOp) -> LinOp {
        let mut terms = self.operators.iter().map(|t| &(&t.adjoint() * b) * t);
        let first = terms.next().expect("at least one Kraus operator");
        terms.fold(first, |acc, x| &acc + &x)
    }

    /// `Σ Vec(T_j) Vec(T_j)*`
    pub fn choi(&self) -> LinOp {
        let mut terms = self.operators.iter().map(|t| {
            let v = vec(t);
            v.outer(&v)
        });
        let first = terms.next().expect("at least one Kraus operator");
        terms.fold(first, |acc, x| &acc + &x)
    }
}

/// `Φ_{m,n,h}(A) = Tr_{P_n}(α A α*)`. Kraus operators and the Choi matrix are
/// computed on first use and then kept.
pub struct EposicChannel {
    index: CgIndex,
    kraus: OnceLock<KrausSet>,
    choi: OnceLock<LinOp>,
}

impl EposicChannel {
    pub fn new(m: u32, n: u32, h: u32) -> Result<Self, ChannelError> {
        Ok(Self::from_index(CgIndex::new(m, n, h)?))
    }

    pub fn from_index(index: CgIndex) -> Self {
        Self { index, kraus: OnceLock::new(), choi: OnceLock::new() }
    }

    pub fn index(&self) -> CgIndex {
        self.index
    }

    /// Input degree `r`.
    pub fn input_degree(&self) -> u32 {
        self.index.r()
    }

    /// Output degree `m`.
    pub fn output_degree(&self) -> u32 {
        self.index.m()
    }

    pub fn alpha(&self) -> LinOp {
        alpha_closed(self.index)
    }

    pub fn kraus(&self) -> &KrausSet {
        self.kraus.get_or_init(|| kraus_ops(self.index))
    }

    /// `C(Φ) = Σ Vec(T_j) Vec(T_j)*` on `P_m ⊗ P̄_r`.
    pub fn choi(&self) -> &LinOp {
        self.choi.get_or_init(|| self.kraus().choi())
    }

    pub fn superoperator(&self) -> Superoperator {
        Superoperator::new(self.input_degree(), self.output_degree(), self.choi().clone()).expect("shape")
    }

    fn check_input(&self, a: &LinOp) -> Result<(), ChannelError> {
        let expected = SpaceLabel::p(self.input_degree() as i32);
        if a.domain() != &expected || a.codomain() != &expected {
            return Err(ChannelError::ShapeMismatch {
                expected,
                found_domain: a.domain().clone(),
                found_codomain: a.codomain().clone(),
            });
        }
        Ok(())
    }

    /// `Σ T_j A T_j*`; in debug builds also checked against the Stinespring route.
    pub fn apply(&self, a: &LinOp) -> Result<LinOp, ChannelError> {
        self.check_input(a)?;
        let out = self.kraus().apply(a);
        debug_assert_eq!(out, self.apply_stinespring(a)?);
        Ok(out)
    }

    /// `Tr_{P_n}(α A α*)`
    pub fn apply_stinespring(&self, a: &LinOp) -> Result<LinOp, ChannelError> {
        self.check_input(a)?;
        let alpha = self.alpha();
        Ok(partial_trace(&(&(&alpha * a) * &alpha.adjoint()), TraceSide::Right)?)
    }

    /// `Tr_{P_m}(α A α*)`, the environment's output.
    pub fn apply_environment(&self, a: &LinOp) -> Result<LinOp, ChannelError> {
        self.check_input(a)?;
        let alpha = self.alpha();
        Ok(partial_trace(&(&(&alpha * a) * &alpha.adjoint()), TraceSide::Left)?)
    }

    /// `Σ T_j* B T_j` for `B ∈ End(P_m)`.
    pub fn apply_dual(&self, b: &LinOp) -> Result<LinOp, ChannelError> {
        let expected = SpaceLabel::p(self.output_degree() as i32);
        if b.domain() != &expected || b.codomain() != &expected {
            return Err(ChannelError::ShapeMismatch {
                expected,
                found_domain: b.domain().clone(),
                found_codomain: b.codomain().clone(),
            });
        }
        Ok(self.kraus().apply_adjoint(b))
    }

    /// `Σ_ij Φ(E_ij) ⊗ E_ij`
    pub fn choi_via_units(&self) -> LinOp {
        let r = self.input_degree() as i32;
        Superoperator::from_map(r as u32, self.output_degree(), |a| self.kraus().apply(a)).choi
    }

    /// `((r+1)/(n+1)) q_{m,r,m−h}`
    pub fn choi_via_projection(&self) -> LinOp {
        let ix = self.index;
        let q = projection_q(ix.m(), ix.r(), ix.m() - ix.h()).expect("valid projection index");
        q.scale_rational(&rational((ix.r() + 1) as i64, (ix.n() + 1) as i64))
    }
}

impl Clone for EposicChannel {
    fn clone(&self) -> Self {
        Self { index: self.index, kraus: self.kraus.clone(), choi: self.choi.clone() }
    }
}

impl PartialEq for EposicChannel {
    fn eq(&self, other: &Self) -> bool {
        self.index == other.index
    }
}

impl Eq for EposicChannel {}

impl fmt::Debug for EposicChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EposicChannel{}", self.index)
    }
}

impl fmt::Display for EposicChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Phi{}", self.index)
    }
}

/// `T_j(f_i^r) = ε_i^j f_{l_ij}^m` for `j ∈ B(i)`.
pub fn kraus_ops(ix: CgIndex) -> KrausSet {
    let table = epsilon_table(ix);
    let (m, r) = (ix.m() as i32, ix.r() as i32);
    let mut ops = vec![LinOp::zeros(SpaceLabel::p(r), SpaceLabel::p(m)); ix.n() as usize + 1];
    for (i, j, v) in table.iter() {
        ops[j as usize].set(ix.l(i, j) as usize, i as usize, v.clone());
    }
    KrausSet { operators: ops }
}

/// `T_j = (I ⊗ f_j*) α`, built from `α` by contracting the second factor.
pub fn kraus_from_alpha(ix: CgIndex, alpha: &LinOp) -> KrausSet {
    let (m, n) = (ix.m() as i32, ix.n() as i32);
    let id = LinOp::identity(SpaceLabel::p(m));
    let operators = (0..=n as usize)
        .map(|j| {
            let fj = PolyVec::basis(SpaceLabel::p(n), j);
            let bra = PolyVec::basis(SpaceLabel::new(vec![]), 0).outer(&fj);
            let contract = id.tensor(&bra).relabel(SpaceLabel::pp(m, n), SpaceLabel::p(m)).expect("P_m ⊗ C = P_m");
            &contract * alpha
        })
        .collect();
    KrausSet { operators }
}

/// `EC(r, m) = {Φ_{m, r+m−2l, m−l} : 0 ≤ l ≤ min(r, m)}`
pub fn enumerate_ec(r: u32, m: u32) -> Vec<EposicChannel> {
    (0..=r.min(m))
        .map(|l| EposicChannel::new(m, r + m - 2 * l, m - l).expect("valid by construction"))
        .collect()
}

/// The complementary channel `Φ_{n,m,h}`.
pub fn complementary(ch: &EposicChannel) -> EposicChannel {
    EposicChannel::from_index(ch.index().swapped())
}

/// `Φ_{m,n,h}* = ((r+1)/(m+1)) Φ_{r,n,n−h}`
pub fn dual(ch: &EposicChannel) -> (Rational, EposicChannel) {
    let ix = ch.index();
    let scale = rational((ix.r() + 1) as i64, (ix.m() + 1) as i64);
    let target = EposicChannel::new(ix.r(), ix.n(), ix.n() - ix.h()).expect("valid by construction");
    (scale, target)
}

/// `Φ(I) = ((r+1)/(m+1)) I`
pub fn is_unital_scaled(ch: &EposicChannel) -> bool {
    let ix = ch.index();
    let out = ch.apply(&LinOp::identity(SpaceLabel::p(ix.r() as i32))).expect("shape");
    out == LinOp::identity(SpaceLabel::p(ix.m() as i32))
        .scale(&ExactScalar::from_ratio((ix.r() + 1) as i64, (ix.m() + 1) as i64))
}
