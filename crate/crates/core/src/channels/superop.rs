use serde::Serialize;

use super::ChannelError;
use crate::covariant::decompose;
use crate::scalar::{ExactScalar, Sign};
use crate::space::{matrix_unit, partial_trace, LinOp, SpaceLabel, TraceSide};

/// Eigenvalues above `-PSD_TOLERANCE` count as nonnegative in float checks.
pub const PSD_TOLERANCE: f64 = 1e-9;

/// A linear map `End(P_r) → End(P_m)`, stored as its Choi matrix on `P_m ⊗ P̄_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superoperator {
    pub domain_degree: u32,
    pub codomain_degree: u32,
    pub choi: LinOp,
}

impl Superoperator {
    pub fn new(domain_degree: u32, codomain_degree: u32, choi: LinOp) -> Result<Self, ChannelError> {
        let expected = SpaceLabel::p_pbar(codomain_degree as i32, domain_degree as i32);
        if choi.domain() != &expected || choi.codomain() != &expected {
            return Err(ChannelError::ShapeMismatch {
                expected,
                found_domain: choi.domain().clone(),
                found_codomain: choi.codomain().clone(),
            });
        }
        Ok(Self { domain_degree, codomain_degree, choi })
    }

    /// Choi matrix `Σ_ij Φ(E_ij) ⊗ E_ij` of an arbitrary linear map.
    pub fn from_map<F>(domain_degree: u32, codomain_degree: u32, map: F) -> Self
    where
        F: Fn(&LinOp) -> LinOp,
    {
        let (r, m) = (domain_degree as i32, codomain_degree as i32);
        let (pr, prbar) = (SpaceLabel::p(r), SpaceLabel::pbar(r));
        let space = SpaceLabel::p_pbar(m, r);
        let mut choi = LinOp::zeros(space.clone(), space);
        for i in 0..pr.dim() {
            for j in 0..pr.dim() {
                let image = map(&matrix_unit(&pr, i, j));
                choi = &choi + &image.tensor(&matrix_unit(&prbar, i, j));
            }
        }
        Self { domain_degree, codomain_degree, choi }
    }

    /// `Φ(A)[k,l] = Σ_ij C[(k,i),(l,j)] A[i,j]`
    pub fn apply(&self, a: &LinOp) -> Result<LinOp, ChannelError> {
        let pr = SpaceLabel::p(self.domain_degree as i32);
        if a.domain() != &pr || a.codomain() != &pr {
            return Err(ChannelError::ShapeMismatch {
                expected: pr,
                found_domain: a.domain().clone(),
                found_codomain: a.codomain().clone(),
            });
        }
        let dr = pr.dim();
        let pm = SpaceLabel::p(self.codomain_degree as i32);
        Ok(LinOp::from_fn(pm.clone(), pm, |k, l| {
            let mut acc = ExactScalar::zero();
            for i in 0..dr {
                for j in 0..dr {
                    let a_ij = a.get(i, j);
                    if a_ij.is_zero() {
                        continue;
                    }
                    let c = self.choi.get(k * dr + i, l * dr + j);
                    if !c.is_zero() {
                        acc += &(c * a_ij);
                    }
                }
            }
            acc
        }))
    }

    pub fn scale(&self, k: &ExactScalar) -> Self {
        Self { choi: self.choi.scale(k), ..self.clone() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, ChannelError> {
        Ok(Self { choi: self.choi.try_add(&other.choi)?, ..self.clone() })
    }
}

/// Outcome of [`verify_channel`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelReport {
    /// `Tr_{P_m}(C) = I` exactly.
    pub partial_trace_ok: bool,
    pub hermitian: bool,
    pub min_eigenvalue: f64,
    /// `min_eigenvalue ≥ -1e-9`.
    pub psd_float: bool,
    /// Exact verdict, available when `C` lies in the span of the `q` projections.
    pub psd_exact: Option<bool>,
    pub psd: bool,
    pub is_channel: bool,
}

/// Checks the Choi characterization of channels: `C ≥ 0` and `Tr_{P_m} C = I`.
pub fn verify_channel(s: &Superoperator) -> ChannelReport {
    let trace = partial_trace(&s.choi, TraceSide::Left).expect("two-factor Choi label");
    let partial_trace_ok = trace.is_identity();
    let hermitian = s.choi.is_hermitian();

    let min_eigenvalue = if s.choi.rows() == 0 {
        0.0
    } else {
        let m = s.choi.to_complex_matrix();
        let herm = (&m + m.adjoint()) * nalgebra::Complex::new(0.5, 0.0);
        herm.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min)
    };
    let psd_float = hermitian && min_eigenvalue >= -PSD_TOLERANCE;

    let psd_exact = decompose(s).ok().filter(|d| d.residual_norm_sq.is_zero()).map(|d| {
        d.lambdas.iter().all(|l| l.is_real() && matches!(l.real_sign(), Ok(Sign::Positive | Sign::Zero)))
    });
    let psd = psd_exact.unwrap_or(psd_float);
    ChannelReport {
        partial_trace_ok,
        hermitian,
        min_eigenvalue,
        psd_float,
        psd_exact,
        psd,
        is_channel: partial_trace_ok && psd,
    }
}
