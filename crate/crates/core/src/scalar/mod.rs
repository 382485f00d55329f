//! Exact scalars: finite sums `Σ q_d·√d` with Gaussian-rational `q_d` and
//! square-free positive radicands `d`.
//!
//! Square roots of distinct square-free integers are linearly independent over
//! the rationals, so a normalized term list is a canonical form: two scalars are
//! equal iff their term lists are identical, and zero is the empty list.

pub mod factor;
mod text;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use num_complex::Complex64;

pub use text::ParseScalarError;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("square root of negative rational {0}")]
    NegativeRadicand(Rational),
    #[error("scalar has a non-zero imaginary part")]
    NotReal,
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `re + im·i` with rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn real(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn zero() -> Self {
        Self::real(Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    fn scale(&self, k: &Rational) -> Self {
        Self { re: &self.re * k, im: &self.im * k }
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: Self) -> GaussianRational {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: Self) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

/// Sign of a real exact scalar.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

/// Element of the ring `Q(i)[√2, √3, √5, ...]`.
///
/// Terms are kept sorted by radicand; every radicand is square-free and every
/// stored coefficient is non-zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    terms: Vec<(BigUint, GaussianRational)>,
}

impl ExactScalar {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn i() -> Self {
        Self::from_gaussian(GaussianRational::new(Rational::zero(), Rational::one()))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rational_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(rational(num, den))
    }

    pub fn from_rational(q: Rational) -> Self {
        Self::from_gaussian(GaussianRational::real(q))
    }

    pub fn from_gaussian(q: GaussianRational) -> Self {
        if q.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(BigUint::one(), q)] }
        }
    }

    /// `re + im·i` from two rationals.
    pub fn complex(re: Rational, im: Rational) -> Self {
        Self::from_gaussian(GaussianRational::new(re, im))
    }

    /// Builds a scalar from arbitrary `(radicand, coefficient)` pairs, reducing
    /// each radicand to square-free form. Zero radicands contribute nothing.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BigUint, GaussianRational)>,
    {
        let mut out = Vec::new();
        for (d, q) in terms {
            if d.is_zero() || q.is_zero() {
                continue;
            }
            let (s, free) = factor::square_free_split(&d);
            let s = Rational::from_integer(BigInt::from_biguint(BigSign::Plus, s));
            out.push((free, q.scale(&s)));
        }
        Self::normalized(out)
    }

    /// Sorts, merges equal radicands and drops zero coefficients. Radicands
    /// are assumed square-free already.
    fn normalized(mut terms: Vec<(BigUint, GaussianRational)>) -> Self {
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(BigUint, GaussianRational)> = Vec::with_capacity(terms.len());
        for (d, q) in terms {
            match out.last_mut() {
                Some((last, acc)) if *last == d => {
                    *acc = &*acc + &q;
                }
                _ => out.push((d, q)),
            }
        }
        out.retain(|(_, q)| !q.is_zero());
        Self { terms: out }
    }

    /// Re-runs normalization on the stored terms; a no-op on any value built
    /// through the public API.
    pub fn normalize(&self) -> Self {
        Self::from_terms(self.terms.iter().cloned())
    }

    pub fn terms(&self) -> &[(BigUint, GaussianRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(_, q)| q.is_real())
    }

    /// The value as a Gaussian rational, if it has no irrational part.
    pub fn as_gaussian(&self) -> Option<GaussianRational> {
        match self.terms.as_slice() {
            [] => Some(GaussianRational::zero()),
            [(d, q)] if d.is_one() => Some(q.clone()),
            _ => None,
        }
    }

    /// The value as a rational, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        self.as_gaussian().filter(|q| q.is_real()).map(|q| q.re)
    }

    /// Exact `√q` for `q ≥ 0`, written as `(p/s)·√d` with `d` square-free.
    pub fn sqrt_rational(q: &Rational) -> Result<Self, ScalarError> {
        if q.is_negative() {
            return Err(ScalarError::NegativeRadicand(q.clone()));
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        // √(a/b) = √(a·b) / b
        let a = q.numer().magnitude();
        let b = q.denom().magnitude();
        let (s, d) = factor::square_free_split(&(a * b));
        let coeff = Rational::new(
            BigInt::from_biguint(BigSign::Plus, s),
            BigInt::from_biguint(BigSign::Plus, b.clone()),
        );
        Ok(Self::normalized(vec![(d, GaussianRational::real(coeff))]))
    }

    /// `√n` for a non-negative integer.
    pub fn sqrt_int(n: u64) -> Self {
        Self::sqrt_rational(&Rational::from_integer(BigInt::from(n))).expect("non-negative")
    }

    pub fn conj(&self) -> Self {
        Self { terms: self.terms.iter().map(|(d, q)| (d.clone(), q.conj())).collect() }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(d, q)| (d.clone(), q.scale(k))).collect() }
    }

    pub fn scale_gaussian(&self, k: &GaussianRational) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(d, q)| (d.clone(), q * k)).collect() }
    }

    /// Divides by a non-zero rational.
    pub fn div_rational(&self, k: &Rational) -> Self {
        assert!(!k.is_zero(), "division by zero");
        self.scale(&k.recip())
    }

    /// `|x|²` computed exactly as `x·conj(x)`.
    pub fn norm_sqr(&self) -> Self {
        self * &self.conj()
    }

    /// Real part, as a scalar with rational coefficients only.
    pub fn re(&self) -> Self {
        Self::normalized(
            self.terms.iter().map(|(d, q)| (d.clone(), GaussianRational::real(q.re.clone()))).collect(),
        )
    }

    /// Imaginary part, as a scalar with rational coefficients only.
    pub fn im(&self) -> Self {
        Self::normalized(
            self.terms.iter().map(|(d, q)| (d.clone(), GaussianRational::real(q.im.clone()))).collect(),
        )
    }

    pub fn to_complex(&self) -> Complex64 {
        let mut re = 0.0;
        let mut im = 0.0;
        for (d, q) in &self.terms {
            let root = if d.is_one() { 1.0 } else { d.to_f64().unwrap_or(f64::INFINITY).sqrt() };
            re += q.re.to_f64().unwrap_or(f64::NAN) * root;
            im += q.im.to_f64().unwrap_or(f64::NAN) * root;
        }
        Complex64::new(re, im)
    }

    /// Real part as `f64`; convenience for reporting.
    pub fn to_f64(&self) -> f64 {
        self.to_complex().re
    }

    /// Exact sign of a real scalar.
    ///
    /// Each `√d` is enclosed in `[⌊√(d·4^k)⌋, ⌊√(d·4^k)⌋+1] / 2^k` and the
    /// enclosures are summed with rational interval arithmetic; `k` doubles
    /// until the interval excludes zero. Non-zero scalars always terminate
    /// because the enclosure width shrinks to zero.
    pub fn real_sign(&self) -> Result<Sign, ScalarError> {
        if !self.is_real() {
            return Err(ScalarError::NotReal);
        }
        if self.is_zero() {
            return Ok(Sign::Zero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(if q.is_positive() { Sign::Positive } else { Sign::Negative });
        }
        let mut bits: u64 = 32;
        loop {
            let (lo, hi) = self.enclose(bits);
            if lo.is_positive() {
                return Ok(Sign::Positive);
            }
            if hi.is_negative() {
                return Ok(Sign::Negative);
            }
            bits *= 2;
        }
    }

    /// Rational interval `[lo, hi]` containing the (real) value, using
    /// `bits` fractional bits for every square root.
    fn enclose(&self, bits: u64) -> (Rational, Rational) {
        let scale = BigUint::one() << (bits as usize);
        let scale_q = Rational::from_integer(BigInt::from_biguint(BigSign::Plus, scale.clone()));
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (d, q) in &self.terms {
            let c = &q.re;
            if d.is_one() {
                lo += c;
                hi += c;
                continue;
            }
            let floor = (d * &scale * &scale).sqrt();
            let root_lo = Rational::from_integer(BigInt::from_biguint(BigSign::Plus, floor.clone())) / &scale_q;
            let root_hi = Rational::from_integer(BigInt::from_biguint(BigSign::Plus, floor + 1u32)) / &scale_q;
            if c.is_positive() {
                lo += c * &root_lo;
                hi += c * &root_hi;
            } else {
                lo += c * &root_hi;
                hi += c * &root_lo;
            }
        }
        (lo, hi)
    }

    /// Total order on real scalars.
    pub fn cmp_real(&self, other: &Self) -> Result<Ordering, ScalarError> {
        Ok(match (self - other).real_sign()? {
            Sign::Negative => Ordering::Less,
            Sign::Zero => Ordering::Equal,
            Sign::Positive => Ordering::Greater,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

/// `(-1)^k` as a scalar.
pub fn parity_sign(k: i64) -> ExactScalar {
    if k.rem_euclid(2) == 0 {
        ExactScalar::one()
    } else {
        ExactScalar::from_int(-1)
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactScalar({})", self)
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for ExactScalar {
    fn from(q: Rational) -> Self {
        Self::from_rational(q)
    }
}

impl Add for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: Self) -> ExactScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), rhs.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((da, qa)), Some((db, qb))) => match da.cmp(db) {
                    Ordering::Less => {
                        out.push((da.clone(), qa.clone()));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((db.clone(), qb.clone()));
                        b.next();
                    }
                    Ordering::Equal => {
                        let q = qa + qb;
                        if !q.is_zero() {
                            out.push((da.clone(), q));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(t), None) => {
                    out.push((*t).clone());
                    a.next();
                }
                (None, Some(t)) => {
                    out.push((*t).clone());
                    b.next();
                }
                (None, None) => break,
            }
        }
        ExactScalar { terms: out }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar { terms: self.terms.iter().map(|(d, q)| (d.clone(), -q)).collect() }
    }
}

impl Sub for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: Self) -> ExactScalar {
        self + &(-rhs)
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: Self) -> ExactScalar {
        if self.is_zero() || rhs.is_zero() {
            return ExactScalar::zero();
        }
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (da, qa) in &self.terms {
            for (db, qb) in &rhs.terms {
                let q = qa * qb;
                if da.is_one() {
                    out.push((db.clone(), q));
                } else if db.is_one() {
                    out.push((da.clone(), q));
                } else {
                    // √a·√b = g·√((a/g)(b/g)); the cofactor is square-free
                    // because a and b are, and a/g, b/g are coprime.
                    let g = da.gcd(db);
                    let d = (da / &g) * (db / &g);
                    let gq = Rational::from_integer(BigInt::from_biguint(BigSign::Plus, g));
                    out.push((d, q.scale(&gq)));
                }
            }
        }
        ExactScalar::normalized(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<ExactScalar> for &ExactScalar {
            type Output = ExactScalar;
            fn $m(self, rhs: ExactScalar) -> ExactScalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self + rhs;
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        *self = &*self + &rhs;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> std::iter::Sum<&'a ExactScalar> for ExactScalar {
    fn sum<I: Iterator<Item = &'a ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt(n: u64) -> ExactScalar {
        ExactScalar::sqrt_int(n)
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn like_radicands_merge() {
        let half_root3 = sqrt(3).scale(&rational(1, 2));
        assert_eq!(&half_root3 + &half_root3, sqrt(3));
    }

    #[test]
    fn cancellation_gives_empty_map() {
        let x = &sqrt(2) + &(-&sqrt(2));
        assert!(x.is_zero());
        assert!(x.terms().is_empty());
    }

    #[test]
    fn distinct_radicands_stay_distinct() {
        let x = &sqrt(2) + &sqrt(3);
        let radicands: Vec<_> = x.terms().iter().map(|(d, _)| d.clone()).collect();
        assert_eq!(radicands, vec![big(2), big(3)]);
        assert!(x.terms().iter().all(|(_, q)| q.re.is_one() && q.im.is_zero()));
    }

    #[test]
    fn radicand_collapse() {
        assert_eq!(&sqrt(2) * &sqrt(2), ExactScalar::from_int(2));
        // 60 = 2^2 * 15
        assert_eq!(&sqrt(6) * &sqrt(10), sqrt(15).scale(&rational_int(2)));
        let x = &sqrt(7) + &ExactScalar::from_ratio(1, 3);
        assert_eq!(&ExactScalar::one() * &x, x);
    }

    #[test]
    fn sqrt_of_rationals() {
        assert_eq!(ExactScalar::sqrt_rational(&rational_int(8)).unwrap(), sqrt(2).scale(&rational_int(2)));
        assert_eq!(ExactScalar::sqrt_rational(&rational(1, 2)).unwrap(), sqrt(2).scale(&rational(1, 2)));
        assert!(ExactScalar::sqrt_rational(&rational_int(0)).unwrap().is_zero());
        assert_eq!(
            ExactScalar::sqrt_rational(&rational(-1, 4)),
            Err(ScalarError::NegativeRadicand(rational(-1, 4)))
        );
    }

    #[test]
    fn conjugation() {
        let i_root2 = &ExactScalar::i() * &sqrt(2);
        assert_eq!(i_root2.conj(), -&i_root2);
        assert_eq!(sqrt(3).conj(), sqrt(3));
        let one_plus_i = ExactScalar::complex(rational_int(1), rational_int(1));
        assert_eq!(one_plus_i.conj(), ExactScalar::complex(rational_int(1), rational_int(-1)));
    }

    #[test]
    fn equality_decisions() {
        assert!((&sqrt(2) - &sqrt(2)).is_zero());
        assert!(!(&sqrt(2) - &sqrt(3)).is_zero());
        assert_eq!(sqrt(2).scale(&rational_int(2)), sqrt(8));
    }

    #[test]
    fn float_evaluation() {
        assert!((sqrt(2).to_f64() - std::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(ExactScalar::zero().to_f64(), 0.0);
        // (1/3)√5 = 0.74535599249992989880...
        let x = sqrt(5).scale(&rational(1, 3));
        assert!((x.to_f64() - 0.745_355_992_499_929_9).abs() < 1e-15);
    }

    #[test]
    fn exact_signs() {
        assert_eq!((&sqrt(2) - &ExactScalar::one()).real_sign(), Ok(Sign::Positive));
        assert_eq!((&sqrt(2) - &sqrt(2)).real_sign(), Ok(Sign::Zero));
        // 4 < 5
        assert_eq!((&ExactScalar::from_int(2) - &sqrt(5)).real_sign(), Ok(Sign::Negative));
        assert_eq!(ExactScalar::i().real_sign(), Err(ScalarError::NotReal));
    }

    #[test]
    fn sign_of_nearly_cancelling_sum() {
        // √2 + √3 - √(5 + 2√6) = 0 in reals but √(5+2√6) is not in the ring;
        // use a close rational approximation instead: 3.146264369941972 ...
        let x = &(&sqrt(2) + &sqrt(3)) - &ExactScalar::from_rational(rational(3_146_264_369, 1_000_000_000));
        assert_eq!(x.real_sign(), Ok(Sign::Positive));
        let y = &(&sqrt(2) + &sqrt(3)) - &ExactScalar::from_rational(rational(3_146_264_370, 1_000_000_000));
        assert_eq!(y.real_sign(), Ok(Sign::Negative));
    }

    #[test]
    fn from_terms_reduces_radicands() {
        let x = ExactScalar::from_terms([(big(12), GaussianRational::real(rational_int(1)))]);
        assert_eq!(x, sqrt(3).scale(&rational_int(2)));
    }
}
