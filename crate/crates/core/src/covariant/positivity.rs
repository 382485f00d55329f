//! Positivity of `Φ_α = Φ_{m,m+1,m} − α Φ_{m,m−1,m−1} : End(P_1) → End(P_m)`.
//!
//! By covariance, `Φ(hh*)` and `Φ(E_11)` are unitarily equivalent for every
//! unit `h ∈ P_1`, so positivity of `Φ_α` reduces to the diagonal matrix
//! `Φ_α(E_11)`. Here `E_11 = f_0 f_0*` (indices of `E` are 1-based).

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::{decompose, CovariantError};
use crate::channels::{EposicChannel, Superoperator};
use crate::scalar::{rational, ExactScalar, Rational, Sign};
use crate::space::{matrix_unit_1based, GroupElement, PolyVec, SpaceLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// `Φ_{m,m+1,m}`
    Plus,
    /// `Φ_{m,m−1,m−1}`
    Minus,
}

impl Branch {
    pub fn channel(self, m: u32) -> Result<EposicChannel, CovariantError> {
        match self {
            Branch::Plus => Ok(EposicChannel::new(m, m + 1, m)?),
            Branch::Minus if m >= 1 => Ok(EposicChannel::new(m, m - 1, m - 1)?),
            Branch::Minus => Err(CovariantError::InvalidDegree(m)),
        }
    }
}

/// Diagonal of `Φ(E_11)` indexed by `f_p^m`, `p = 0..=m`:
/// `2(p+1)/((m+1)(m+2))` for the plus branch, `2(m−p)/(m(m+1))` for the minus
/// branch. Checked against the channel applied to `E_11`.
pub fn phi_e11_diagonal(m: u32, branch: Branch) -> Result<Vec<ExactScalar>, CovariantError> {
    let ch = branch.channel(m)?;
    let mi = m as i64;
    let diag: Vec<ExactScalar> = (0..=mi)
        .map(|p| match branch {
            Branch::Plus => ExactScalar::from_ratio(2 * (p + 1), (mi + 1) * (mi + 2)),
            Branch::Minus => ExactScalar::from_ratio(2 * (mi - p), mi * (mi + 1)),
        })
        .collect();
    let applied = ch.apply(&matrix_unit_1based(1, 1, 1))?;
    assert!(applied.is_diagonal(), "Φ(E_11) must be diagonal");
    assert_eq!(applied.diagonal(), diag, "closed-form diagonal disagrees with the channel");
    Ok(diag)
}

fn diagonals(m: u32) -> Result<(Vec<ExactScalar>, Vec<ExactScalar>), CovariantError> {
    Ok((phi_e11_diagonal(m, Branch::Plus)?, phi_e11_diagonal(m, Branch::Minus)?))
}

fn as_rational(x: &ExactScalar) -> Rational {
    x.as_rational().expect("diagonal entries are rational")
}

/// `(threshold, p)`: the smallest ratio `plus_p / minus_p` over `p` with
/// `minus_p > 0`, and the `f`-index where it is attained.
pub fn positivity_threshold_argmin(m: u32) -> Result<(Rational, u32), CovariantError> {
    if m == 0 {
        return Err(CovariantError::InvalidDegree(m));
    }
    let (plus, minus) = diagonals(m)?;
    let mut best: Option<(Rational, u32)> = None;
    for (p, (a, b)) in plus.iter().zip(&minus).enumerate() {
        let b = as_rational(b);
        if b == rational(0, 1) {
            continue;
        }
        let ratio = as_rational(a) / b;
        if best.as_ref().is_none_or(|(q, _)| ratio < *q) {
            best = Some((ratio, p as u32));
        }
    }
    Ok(best.expect("minus branch has a positive entry"))
}

/// `Φ_α` is positive iff `α ≤` this value.
pub fn positivity_threshold(m: u32) -> Result<Rational, CovariantError> {
    Ok(positivity_threshold_argmin(m)?.0)
}

/// `Φ_{m,m+1,m} − α Φ_{m,m−1,m−1}` as a superoperator.
pub fn family_superoperator(m: u32, alpha: &Rational) -> Result<Superoperator, CovariantError> {
    if m == 0 {
        return Err(CovariantError::InvalidDegree(m));
    }
    let plus = Branch::Plus.channel(m)?.superoperator();
    let minus = Branch::Minus.channel(m)?.superoperator();
    Ok(plus.try_add(&minus.scale(&ExactScalar::from_rational(-alpha.clone())))?)
}

/// `v = √m (f_0^m ⊗ f_0^1) + f_1^m ⊗ f_1^1` in `P_m ⊗ P̄_1`.
pub fn witness_vector(m: u32) -> PolyVec {
    let space = SpaceLabel::p_pbar(m as i32, 1);
    let mut coeffs = vec![ExactScalar::zero(); space.dim()];
    coeffs[0] = ExactScalar::sqrt_int(m as u64);
    coeffs[3] = ExactScalar::one();
    PolyVec::new(space, coeffs).expect("dimension")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityVerdict {
    pub m: u32,
    pub alpha: Rational,
    pub threshold: Rational,
    pub is_positive: bool,
    pub is_cp: bool,
    /// Not CP on `End(P_1) = M_2` means not 2-positive, hence not `n`-positive for any `n > 1`.
    pub not_n_positive_for_n_gt_1: bool,
    pub diagonal: Vec<ExactScalar>,
    pub witness: Option<(ExactScalar, PolyVec)>,
}

pub fn analyze_family(m: u32, alpha: &Rational) -> Result<PositivityVerdict, CovariantError> {
    let threshold = positivity_threshold(m)?;
    let (plus, minus) = diagonals(m)?;
    let neg_alpha = ExactScalar::from_rational(-alpha.clone());
    let diagonal: Vec<ExactScalar> = plus.iter().zip(&minus).map(|(a, b)| a + &(b * &neg_alpha)).collect();
    let is_positive = diagonal.iter().all(|d| matches!(d.real_sign(), Ok(Sign::Positive | Sign::Zero)));

    let s = family_superoperator(m, alpha)?;
    let d = decompose(&s)?;
    debug_assert!(d.is_covariant());
    let is_cp = d.lambdas.iter().all(|l| l.is_real() && matches!(l.real_sign(), Ok(Sign::Positive | Sign::Zero)));

    let witness = if is_cp {
        None
    } else {
        let v = witness_vector(m);
        let eigenvalue = ExactScalar::from_rational(-rational(2, m as i64) * alpha);
        assert_eq!(s.choi.apply(&v), v.scale(&eigenvalue), "witness is not an eigenvector");
        Some((eigenvalue, v))
    };
    Ok(PositivityVerdict {
        m,
        alpha: alpha.clone(),
        threshold,
        is_positive,
        is_cp,
        not_n_positive_for_n_gt_1: !is_cp,
        diagonal,
        witness,
    })
}

/// `g_h = [[ū₀, u₁], [−ū₁, u₀]]`, which sends `f_0^1` to `h = u₀ f_0^1 + u₁ f_1^1`.
pub fn group_orbit_unit(h: &PolyVec) -> Result<GroupElement, CovariantError> {
    if h.space != SpaceLabel::p(1) {
        return Err(CovariantError::NotUnit(format!("vector lives in {}", h.space)));
    }
    let norm = h.norm_sqr();
    if !norm.is_one() {
        return Err(CovariantError::NotUnit(norm.to_string()));
    }
    let (u0, u1) = (&h.coeffs[0], &h.coeffs[1]);
    Ok(GroupElement::new(u0.conj(), u1.clone()).expect("unit norm checked"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampledPositivity {
    pub samples: usize,
    /// Smallest eigenvalue of `Φ(xx*)` seen over the sampled unit vectors `x`.
    pub min_eigenvalue: f64,
    /// A sample went below `-tolerance`, so the map is certainly not positive.
    pub violated: bool,
}

/// Searches for `x` with `Φ(xx*)` not PSD. Finding none proves nothing.
pub fn sampled_positivity<R: Rng>(s: &Superoperator, samples: usize, tolerance: f64, rng: &mut R) -> SampledPositivity {
    let dr = (s.domain_degree + 1) as usize;
    let dm = (s.codomain_degree + 1) as usize;
    let c = s.choi.to_complex_matrix();
    let mut min_eigenvalue = f64::INFINITY;
    for _ in 0..samples {
        let x: Vec<Complex64> = loop {
            let x: Vec<Complex64> = (0..dr).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-3 && norm <= 1.0 {
                break x.into_iter().map(|z| z / norm).collect();
            }
        };
        // Φ(xx*)[k,l] = Σ_ij C[(k,i),(l,j)] x_i conj(x_j)
        let out = DMatrix::from_fn(dm, dm, |k, l| {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in 0..dr {
                for j in 0..dr {
                    acc += c[(k * dr + i, l * dr + j)] * x[i] * x[j].conj();
                }
            }
            acc
        });
        let herm = (&out + out.adjoint()) * Complex64::new(0.5, 0.0);
        let low = herm.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min);
        min_eigenvalue = min_eigenvalue.min(low);
    }
    SampledPositivity { samples, min_eigenvalue, violated: min_eigenvalue < -tolerance }
}
