use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::{SpaceError, SpaceLabel};
use crate::scalar::{ExactScalar, Rational};

/// A vector in a (tensor product of) polynomial space(s), given by its
/// coordinates in the canonical product basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVec {
    pub space: SpaceLabel,
    pub coeffs: Vec<ExactScalar>,
}

impl PolyVec {
    pub fn new(space: SpaceLabel, coeffs: Vec<ExactScalar>) -> Result<Self, SpaceError> {
        if coeffs.len() != space.dim() {
            return Err(SpaceError::ShapeMismatch {
                expected: space.dim(),
                found: coeffs.len(),
                context: "vector length",
            });
        }
        Ok(Self { space, coeffs })
    }

    pub fn zeros(space: SpaceLabel) -> Self {
        let coeffs = vec![ExactScalar::zero(); space.dim()];
        Self { space, coeffs }
    }

    /// The canonical basis vector with flat index `idx`.
    pub fn basis(space: SpaceLabel, idx: usize) -> Self {
        let mut v = Self::zeros(space);
        v.coeffs[idx] = ExactScalar::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<ExactScalar, SpaceError> {
        if self.space != other.space {
            return Err(SpaceError::LabelMismatch {
                left: self.space.clone(),
                right: other.space.clone(),
            });
        }
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| &a.conj() * b).sum())
    }

    pub fn norm_sqr(&self) -> ExactScalar {
        self.coeffs.iter().map(ExactScalar::norm_sqr).sum()
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .flat_map(|a| other.coeffs.iter().map(move |b| a * b))
            .collect();
        Self { space: self.space.tensor(&other.space), coeffs }
    }

    pub fn scale(&self, k: &ExactScalar) -> Self {
        Self { space: self.space.clone(), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// `x y*` as an operator from `y`'s space into `x`'s space.
    pub fn outer(&self, y: &Self) -> LinOp {
        let mut out = LinOp::zeros(y.space.clone(), self.space.clone());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out.set(i, j, a * &b.conj());
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ExactScalar::is_zero)
    }
}

impl Add for &PolyVec {
    type Output = PolyVec;
    fn add(self, rhs: Self) -> PolyVec {
        assert_eq!(self.space, rhs.space, "vector spaces differ");
        PolyVec {
            space: self.space.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &PolyVec {
    type Output = PolyVec;
    fn sub(self, rhs: Self) -> PolyVec {
        assert_eq!(self.space, rhs.space, "vector spaces differ");
        PolyVec {
            space: self.space.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

/// Dense exact matrix of a linear map `domain → codomain`. Rows index the
/// codomain basis, columns the domain basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinOp {
    domain: SpaceLabel,
    codomain: SpaceLabel,
    rows: usize,
    cols: usize,
    entries: Vec<ExactScalar>,
}

impl LinOp {
    pub fn zeros(domain: SpaceLabel, codomain: SpaceLabel) -> Self {
        let (rows, cols) = (codomain.dim(), domain.dim());
        Self { domain, codomain, rows, cols, entries: vec![ExactScalar::zero(); rows * cols] }
    }

    pub fn identity(space: SpaceLabel) -> Self {
        let mut out = Self::zeros(space.clone(), space);
        for i in 0..out.rows {
            out.set(i, i, ExactScalar::one());
        }
        out
    }

    pub fn from_fn<F>(domain: SpaceLabel, codomain: SpaceLabel, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> ExactScalar,
    {
        let (rows, cols) = (codomain.dim(), domain.dim());
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self { domain, codomain, rows, cols, entries }
    }

    /// Builds an operator from row-major entries.
    pub fn from_rows(
        domain: SpaceLabel,
        codomain: SpaceLabel,
        entries: Vec<ExactScalar>,
    ) -> Result<Self, SpaceError> {
        let (rows, cols) = (codomain.dim(), domain.dim());
        if entries.len() != rows * cols {
            return Err(SpaceError::ShapeMismatch {
                expected: rows * cols,
                found: entries.len(),
                context: "matrix entry count",
            });
        }
        Ok(Self { domain, codomain, rows, cols, entries })
    }

    pub fn domain(&self) -> &SpaceLabel {
        &self.domain
    }

    pub fn codomain(&self) -> &SpaceLabel {
        &self.codomain
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactScalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: ExactScalar) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn add_at(&mut self, i: usize, j: usize, value: &ExactScalar) {
        let slot = &mut self.entries[i * self.cols + j];
        *slot = &*slot + value;
    }

    pub fn column(&self, j: usize) -> PolyVec {
        PolyVec {
            space: self.codomain.clone(),
            coeffs: (0..self.rows).map(|i| self.get(i, j).clone()).collect(),
        }
    }

    /// Replaces the space labels, keeping the matrix. Used for identifications
    /// such as `P_m ⊗ P_0 ≅ P_m`.
    pub fn relabel(&self, domain: SpaceLabel, codomain: SpaceLabel) -> Result<Self, SpaceError> {
        if domain.dim() != self.cols || codomain.dim() != self.rows {
            return Err(SpaceError::ShapeMismatch {
                expected: self.rows * self.cols,
                found: domain.dim() * codomain.dim(),
                context: "relabel",
            });
        }
        Ok(Self { domain, codomain, ..self.clone() })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ExactScalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    /// Same matrix, ignoring labels.
    pub fn same_entries(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }

    pub fn try_compose(&self, rhs: &Self) -> Result<Self, SpaceError> {
        if self.domain != rhs.codomain {
            return Err(SpaceError::LabelMismatch {
                left: self.domain.clone(),
                right: rhs.codomain.clone(),
            });
        }
        let mut out = Self::zeros(rhs.domain.clone(), self.codomain.clone());
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &(a * b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn try_apply(&self, v: &PolyVec) -> Result<PolyVec, SpaceError> {
        if self.domain != v.space {
            return Err(SpaceError::LabelMismatch { left: self.domain.clone(), right: v.space.clone() });
        }
        let mut coeffs = vec![ExactScalar::zero(); self.rows];
        for (j, x) in v.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, slot) in coeffs.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *slot += &(a * x);
                }
            }
        }
        Ok(PolyVec { space: self.codomain.clone(), coeffs })
    }

    /// Applies the operator; panics on a label mismatch.
    pub fn apply(&self, v: &PolyVec) -> PolyVec {
        self.try_apply(v).expect("operator and vector live in different spaces")
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.codomain.clone(), self.domain.clone());
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = self.get(i, j);
                if !e.is_zero() {
                    out.set(j, i, e.conj());
                }
            }
        }
        out
    }

    /// Entrywise complex conjugate; the labels are conjugated as well.
    pub fn conj(&self) -> Self {
        Self {
            domain: self.domain.conj(),
            codomain: self.codomain.conj(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(ExactScalar::conj).collect(),
        }
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn tensor(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.domain.tensor(&rhs.domain), self.codomain.tensor(&rhs.codomain));
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..rhs.rows {
                    for j2 in 0..rhs.cols {
                        let b = rhs.get(i2, j2);
                        if !b.is_zero() {
                            out.set(i1 * rhs.rows + i2, j1 * rhs.cols + j2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, k: &ExactScalar) -> Self {
        Self { entries: self.entries.iter().map(|e| e * k).collect(), ..self.clone() }
    }

    pub fn scale_rational(&self, k: &Rational) -> Self {
        Self { entries: self.entries.iter().map(|e| e.scale(k)).collect(), ..self.clone() }
    }

    pub fn trace(&self) -> ExactScalar {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Hilbert-Schmidt inner product `tr(self* · other)`, computed entrywise.
    pub fn hs_inner(&self, other: &Self) -> Result<ExactScalar, SpaceError> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(SpaceError::LabelMismatch { left: self.codomain.clone(), right: other.codomain.clone() });
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| &a.conj() * b)
            .sum())
    }

    pub fn hs_norm_sqr(&self) -> ExactScalar {
        self.entries.iter().map(ExactScalar::norm_sqr).sum()
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (i..self.cols).all(|j| *self.get(i, j) == self.get(j, i).conj()))
    }

    /// Float copy for spectral computations.
    pub fn to_complex_matrix(&self) -> nalgebra::DMatrix<Complex64> {
        nalgebra::DMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).to_complex())
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<ExactScalar> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    fn zip_with<F>(&self, rhs: &Self, f: F) -> Self
    where
        F: Fn(&ExactScalar, &ExactScalar) -> ExactScalar,
    {
        assert!(
            self.domain == rhs.domain && self.codomain == rhs.codomain,
            "operator spaces differ: {} -> {} vs {} -> {}",
            self.domain,
            self.codomain,
            rhs.domain,
            rhs.codomain
        );
        Self { entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect(), ..self.clone() }
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, SpaceError> {
        if self.domain != rhs.domain || self.codomain != rhs.codomain {
            return Err(SpaceError::LabelMismatch { left: self.codomain.clone(), right: rhs.codomain.clone() });
        }
        Ok(self.zip_with(rhs, |a, b| a + b))
    }
}

impl Add for &LinOp {
    type Output = LinOp;
    fn add(self, rhs: Self) -> LinOp {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &LinOp {
    type Output = LinOp;
    fn sub(self, rhs: Self) -> LinOp {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &LinOp {
    type Output = LinOp;
    fn neg(self) -> LinOp {
        LinOp { entries: self.entries.iter().map(|e| -e).collect(), ..self.clone() }
    }
}

/// Composition; panics when the inner spaces disagree.
impl Mul for &LinOp {
    type Output = LinOp;
    fn mul(self, rhs: Self) -> LinOp {
        self.try_compose(rhs).unwrap_or_else(|e| panic!("cannot compose: {e}"))
    }
}
