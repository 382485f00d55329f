//! Symmetries of the Kraus operators under `g₀` and `J`, and covariance checks.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::EposicChannel;
use crate::scalar::parity_sign;
use crate::space::{flip, j_map, j_map_adjoint, rho_matrix, rho_matrix_f64, vec, GroupElement, LinOp, SpaceLabel};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KrausSymmetryReport {
    /// `ρ_m(g₀) T_j ρ_r(g₀)* = (−1)^j T_{n−j}`
    pub conjugation: bool,
    /// `Vec(T_{n−j}) = (−1)^j (ρ_m(g₀) ⊗ ρ̌_r(g₀)) Vec(T_j)`
    pub vectorized: bool,
    /// `flip (J_m ⊗ J_r*) Vec(T_{n−j}) = (−1)^{m+j} Vec(T_j*)`
    pub flip_j: bool,
}

impl KrausSymmetryReport {
    pub fn all(&self) -> bool {
        self.conjugation && self.vectorized && self.flip_j
    }
}

pub fn kraus_symmetry_report(ch: &EposicChannel) -> KrausSymmetryReport {
    let ix = ch.index();
    let (m, n, r) = (ix.m(), ix.n() as usize, ix.r());
    let t = &ch.kraus().operators;
    let g0 = GroupElement::g0();
    let (rho_m, rho_r) = (rho_matrix(m, &g0), rho_matrix(r, &g0));
    let rho_r_adj = rho_r.adjoint();
    let rho_pair = rho_m.tensor(&rho_r.conj());
    let tj = &flip(&SpaceLabel::pbar(m as i32), &SpaceLabel::p(r as i32)) * &j_map(m).tensor(&j_map_adjoint(r));

    let mut report = KrausSymmetryReport { conjugation: true, vectorized: true, flip_j: true };
    for j in 0..=n {
        let sign = parity_sign(j as i64);
        report.conjugation &= &(&rho_m * &t[j]) * &rho_r_adj == t[n - j].scale(&sign);
        report.vectorized &= vec(&t[n - j]) == rho_pair.apply(&vec(&t[j])).scale(&sign);
        let lhs = tj.apply(&vec(&t[n - j]));
        report.flip_j &= lhs == vec(&t[j].adjoint()).scale(&parity_sign((m as usize + j) as i64));
    }
    report
}

pub fn kraus_symmetry_check(ch: &EposicChannel) -> bool {
    kraus_symmetry_report(ch).all()
}

/// `C (ρ_m(g) ⊗ ρ̌_r(g)) = (ρ_m(g) ⊗ ρ̌_r(g)) C`, exactly.
pub fn commutes_with_group(choi: &LinOp, m: u32, r: u32, g: &GroupElement) -> bool {
    let u = rho_matrix(m, g).tensor(&rho_matrix(r, g).conj());
    choi * &u == &u * choi
}

/// Largest Frobenius norm of `[C, ρ_m(g) ⊗ ρ̌_r(g)]` over the sampled `(a, b)` pairs.
pub fn float_covariance_defect(choi: &LinOp, m: u32, r: u32, samples: &[(Complex64, Complex64)]) -> f64 {
    let c = choi.to_complex_matrix();
    samples
        .iter()
        .map(|&(a, b)| {
            let rm = rho_matrix_f64(m, a, b);
            let rr: DMatrix<Complex64> = rho_matrix_f64(r, a, b).map(|z| z.conj());
            let u = rm.kronecker(&rr);
            (&c * &u - &u * &c).norm()
        })
        .fold(0.0, f64::max)
}
