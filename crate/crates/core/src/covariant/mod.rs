//! Covariant maps `End(P_r) → End(P_m)` in the basis of extreme channels, and
//! the positive-but-not-CP family `Φ_{m,m+1,m} − α Φ_{m,m−1,m−1}`.

mod positivity;

use serde::Serialize;

use crate::channels::{ChannelError, Superoperator};
use crate::clebsch::{projection_q, CgIndex};
use crate::scalar::{rational, ExactScalar, Sign};

pub use positivity::{
    analyze_family, family_superoperator, group_orbit_unit, phi_e11_diagonal, positivity_threshold,
    positivity_threshold_argmin, sampled_positivity, witness_vector, Branch, PositivityVerdict,
    SampledPositivity,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CovariantError {
    #[error(transparent)]
    Channel(#[from] ChannelError),
    #[error("degree m = {0} is not allowed here (need m >= 1)")]
    InvalidDegree(u32),
    #[error("vector is not a unit vector of P_1: <h|h> = {0}")]
    NotUnit(String),
}

/// `C = Σ_l ((r+1)/(m+r−2l+1)) λ_l q_{m,r,l} + residual`, where `λ_l` is the
/// weight of `Φ_{m,m+r−2l,m−l}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CovariantDecomposition {
    pub r: u32,
    pub m: u32,
    pub lambdas: Vec<ExactScalar>,
    pub residual_norm_sq: ExactScalar,
}

impl CovariantDecomposition {
    pub fn is_covariant(&self) -> bool {
        self.residual_norm_sq.is_zero()
    }

    /// The channel carrying `lambdas[l]`.
    pub fn channel_index(&self, l: u32) -> CgIndex {
        CgIndex::new(self.m, self.m + self.r - 2 * l, self.m - l).expect("valid by construction")
    }
}

/// `λ_l = tr(q_{m,r,l} C) / (r+1)`; the residual is what the `q` span misses.
pub fn decompose(s: &Superoperator) -> Result<CovariantDecomposition, CovariantError> {
    let (r, m) = (s.domain_degree, s.codomain_degree);
    // Revalidates the label in case the fields were edited after construction.
    Superoperator::new(r, m, s.choi.clone())?;
    let mut residual = s.choi.clone();
    let mut lambdas = Vec::new();
    for l in 0..=r.min(m) {
        let q = projection_q(m, r, l).expect("valid projection index");
        let lambda = (&q * &s.choi).trace().scale(&rational(1, (r + 1) as i64));
        let weight = rational((r + 1) as i64, (m + r - 2 * l + 1) as i64);
        residual = &residual - &q.scale(&lambda.scale(&weight));
        lambdas.push(lambda);
    }
    Ok(CovariantDecomposition { r, m, lambdas, residual_norm_sq: residual.hs_norm_sqr() })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CovariantClass {
    CovariantChannel,
    CovariantCpMultiple,
    CovariantNotCp,
    NotCovariant,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub class: CovariantClass,
    /// Exactly one `λ_l` is nonzero and it equals 1.
    pub extreme: bool,
    pub decomposition: CovariantDecomposition,
}

fn is_nonnegative(x: &ExactScalar) -> bool {
    x.is_real() && matches!(x.real_sign(), Ok(Sign::Positive | Sign::Zero))
}

pub fn classify(s: &Superoperator) -> Result<Classification, CovariantError> {
    let d = decompose(s)?;
    let nonzero: Vec<_> = d.lambdas.iter().filter(|l| !l.is_zero()).collect();
    let extreme = d.is_covariant() && nonzero.len() == 1 && nonzero[0].is_one();
    let class = if !d.is_covariant() {
        CovariantClass::NotCovariant
    } else if !d.lambdas.iter().all(is_nonnegative) {
        CovariantClass::CovariantNotCp
    } else if d.lambdas.iter().sum::<ExactScalar>().is_one() {
        CovariantClass::CovariantChannel
    } else {
        CovariantClass::CovariantCpMultiple
    };
    Ok(Classification { class, extreme, decomposition: d })
}
