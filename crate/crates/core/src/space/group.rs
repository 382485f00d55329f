//! SU(2) elements and the irreducible representations `ρ_m` on `P_m`.

use num_complex::Complex64;
use num_integer::binomial;
use num_traits::Zero;

use super::{LinOp, SpaceError, SpaceLabel};
use crate::scalar::{rational, ExactScalar, Rational};

/// `[[a, b], [-b̄, ā]]` with `|a|² + |b|² = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    a: ExactScalar,
    b: ExactScalar,
}

impl GroupElement {
    /// Checks `|a|² + |b|² = 1` exactly.
    pub fn new(a: ExactScalar, b: ExactScalar) -> Result<Self, SpaceError> {
        let norm = &a.norm_sqr() + &b.norm_sqr();
        if !norm.is_one() {
            return Err(SpaceError::NotInSu2(norm.to_string()));
        }
        Ok(Self { a, b })
    }

    pub fn identity() -> Self {
        Self { a: ExactScalar::one(), b: ExactScalar::zero() }
    }

    /// `g₀ = [[0, 1], [-1, 0]]`.
    pub fn g0() -> Self {
        Self { a: ExactScalar::zero(), b: ExactScalar::one() }
    }

    pub fn a(&self) -> &ExactScalar {
        &self.a
    }

    pub fn b(&self) -> &ExactScalar {
        &self.b
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            a: &(&self.a * &other.a) - &(&self.b * &other.b.conj()),
            b: &(&self.a * &other.b) + &(&self.b * &other.a.conj()),
        }
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.a.conj(), b: -&self.b }
    }

    /// Entrywise conjugate `ḡ`.
    pub fn conj(&self) -> Self {
        Self { a: self.a.conj(), b: self.b.conj() }
    }

    pub fn to_complex(&self) -> (Complex64, Complex64) {
        (self.a.to_complex(), self.b.to_complex())
    }
}

/// Fixed exact test elements with Gaussian-rational entries.
pub fn exact_pool() -> Vec<GroupElement> {
    let q = |n, d| ExactScalar::from_rational(rational(n, d));
    let qi = |n, d| ExactScalar::complex(Rational::zero(), rational(n, d));
    let qc = |re, im, d| ExactScalar::complex(rational(re, d), rational(im, d));
    vec![
        GroupElement::identity(),
        GroupElement::g0(),
        GroupElement::new(q(3, 5), q(4, 5)).expect("unit"),
        GroupElement::new(qc(3, 4, 5), ExactScalar::zero()).expect("unit"),
        GroupElement::new(q(5, 13), qi(12, 13)).expect("unit"),
    ]
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        0
    } else {
        binomial(n, k)
    }
}

fn factorial(n: i64) -> Rational {
    (1..=n).fold(rational(1, 1), |acc, k| acc * rational(k, 1))
}

/// `a_m^l / a_m^k = √(k!(m-k)! / (l!(m-l)!))`
fn basis_ratio(m: i64, l: i64, k: i64) -> ExactScalar {
    let q = factorial(k) * factorial(m - k) / (factorial(l) * factorial(m - l));
    ExactScalar::sqrt_rational(&q).expect("positive")
}

/// Matrix of `ρ_m(g)` in the canonical basis of `P_m`.
///
/// Column `l` expands `a_m^l (a x₁ - b̄ x₂)^l (b x₁ + ā x₂)^{m-l}` binomially
/// and rescales each monomial `x₁^k x₂^{m-k}` to `f_k^m`.
pub fn rho_matrix(m: u32, g: &GroupElement) -> LinOp {
    let m = m as i64;
    let space = SpaceLabel::p(m as i32);
    let (a, b) = (&g.a, &g.b);
    let (abar, neg_bbar) = (a.conj(), -&b.conj());
    LinOp::from_fn(space.clone(), space, |k, l| {
        let (k, l) = (k as i64, l as i64);
        let mut sum = ExactScalar::zero();
        for p in 0..=l {
            let q = k - p;
            if q < 0 || q > m - l {
                continue;
            }
            let c = binom(l, p) * binom(m - l, q);
            let term = a.pow(p as u32) * neg_bbar.pow((l - p) as u32) * b.pow(q as u32) * abar.pow((m - l - q) as u32);
            sum += &term.scale(&rational(c, 1));
        }
        if sum.is_zero() {
            sum
        } else {
            &sum * &basis_ratio(m, l, k)
        }
    })
}

/// Haar-distributed `(a, b)`: a uniform point on the unit 3-sphere, by rejection from the cube.
pub fn sample_su2<R: rand::Rng>(rng: &mut R) -> (Complex64, Complex64) {
    loop {
        let v: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-3 && norm <= 1.0 {
            return (Complex64::new(v[0], v[1]) / norm, Complex64::new(v[2], v[3]) / norm);
        }
    }
}

/// Float version of [`rho_matrix`] for arbitrary (sampled) group elements.
pub fn rho_matrix_f64(m: u32, a: Complex64, b: Complex64) -> nalgebra::DMatrix<Complex64> {
    let m = m as i64;
    let d = (m + 1) as usize;
    let fact = |n: i64| (1..=n).fold(1.0f64, |acc, k| acc * k as f64);
    let (abar, neg_bbar) = (a.conj(), -b.conj());
    nalgebra::DMatrix::from_fn(d, d, |k, l| {
        let (k, l) = (k as i64, l as i64);
        let mut sum = Complex64::zero();
        for p in 0..=l {
            let q = k - p;
            if q < 0 || q > m - l {
                continue;
            }
            let c = (binom(l, p) * binom(m - l, q)) as f64;
            sum += a.powi(p as i32) * neg_bbar.powi((l - p) as i32) * b.powi(q as i32) * abar.powi((m - l - q) as i32) * c;
        }
        let ratio = (fact(k) * fact(m - k) / (fact(l) * fact(m - l))).sqrt();
        sum * ratio
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::PolyVec;

    #[test]
    fn identity_acts_trivially() {
        for m in 0..5 {
            assert!(rho_matrix(m, &GroupElement::identity()).is_identity());
        }
    }

    #[test]
    fn g0_reverses_the_basis_with_signs() {
        for m in 0..6u32 {
            let r = rho_matrix(m, &GroupElement::g0());
            for l in 0..=m as usize {
                let expected = crate::scalar::parity_sign(l as i64);
                let image = r.apply(&PolyVec::basis(SpaceLabel::p(m as i32), l));
                let want = PolyVec::basis(SpaceLabel::p(m as i32), m as usize - l).scale(&expected);
                assert_eq!(image, want);
            }
        }
    }

    #[test]
    fn degree_one_matches_direct_expansion() {
        for g in exact_pool() {
            let r = rho_matrix(1, &g);
            // f_0 = x₂ ↦ b x₁ + ā x₂ ; f_1 = x₁ ↦ a x₁ - b̄ x₂
            assert_eq!(*r.get(0, 0), g.a().conj());
            assert_eq!(*r.get(1, 0), *g.b());
            assert_eq!(*r.get(0, 1), -&g.b().conj());
            assert_eq!(*r.get(1, 1), *g.a());
        }
    }

    #[test]
    fn rejects_non_unit_entries() {
        let err = GroupElement::new(ExactScalar::from_ratio(1, 2), ExactScalar::from_ratio(1, 2));
        assert!(matches!(err, Err(SpaceError::NotInSu2(_))));
    }

    #[test]
    fn sampled_rho_is_unitary() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let (a, b) = sample_su2(&mut rng);
            assert!((a.norm_sqr() + b.norm_sqr() - 1.0).abs() < 1e-12);
            let r = rho_matrix_f64(3, a, b);
            let id = nalgebra::DMatrix::<Complex64>::identity(4, 4);
            assert!((r.adjoint() * &r - id).norm() < 1e-12);
        }
    }

    #[test]
    fn float_matches_exact() {
        let g = &exact_pool()[4];
        let (a, b) = g.to_complex();
        for m in 0..5 {
            let exact = rho_matrix(m, g).to_complex_matrix();
            let float = rho_matrix_f64(m, a, b);
            assert!((exact - float).norm() < 1e-12);
        }
    }
}
