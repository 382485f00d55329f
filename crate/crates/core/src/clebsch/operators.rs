//! The operators `Δ_xy`, `Δ_yx`, `Γ_xy`, `Ω_xy` on polynomials of bi-degree
//! `(m, n)`, as matrices between canonical bases of `P_m ⊗ P_n`.

use num_bigint::BigInt;

use super::coefficient::factorial;
use super::{cg_coefficient, CgIndex};
use crate::scalar::{ExactScalar, Rational};
use crate::space::{LinOp, PolyVec, SpaceLabel};

/// A monomial `x₁^s x₂^{m−s} y₁^t y₂^{n−t}` is `(s, t)` at bi-degree `(m, n)`.
type Image = Vec<(i64, i64, i64)>;

/// `√(s'!(m'−s')! t'!(n'−t')! / (s!(m−s)! t!(n−t)!))`: converts a monomial
/// coefficient into a canonical-basis coefficient.
fn rescale(from: (i64, i64, i64, i64), to: (i64, i64, i64, i64)) -> ExactScalar {
    let f = |k: i64| factorial(k as u32);
    let weight = |(m, n, s, t): (i64, i64, i64, i64)| f(s) * f(m - s) * f(t) * f(n - t);
    ExactScalar::sqrt_rational(&Rational::new(weight(to), weight(from))).expect("positive")
}

/// Builds the canonical-basis matrix of a monomial-to-polynomial rule from
/// bi-degree `(m, n)` to `(m2, n2)`. Degrees of `-1` give zero spaces.
fn bidegree_op<F>(m: i64, n: i64, m2: i64, n2: i64, rule: F) -> LinOp
where
    F: Fn(i64, i64) -> Image,
{
    let domain = SpaceLabel::pp(m as i32, n as i32);
    let codomain = SpaceLabel::pp(m2 as i32, n2 as i32);
    let mut out = LinOp::zeros(domain, codomain);
    if m2 < 0 || n2 < 0 || m < 0 || n < 0 {
        return out;
    }
    for s in 0..=m {
        for t in 0..=n {
            let col = (s * (n + 1) + t) as usize;
            for (s2, t2, c) in rule(s, t) {
                if c == 0 {
                    continue;
                }
                debug_assert!((0..=m2).contains(&s2) && (0..=n2).contains(&t2));
                let row = (s2 * (n2 + 1) + t2) as usize;
                let value = rescale((m, n, s, t), (m2, n2, s2, t2)).scale(&Rational::from_integer(BigInt::from(c)));
                out.add_at(row, col, &value);
            }
        }
    }
    out
}

/// `Δ_xy = x₁∂/∂y₁ + x₂∂/∂y₂ : P_m⊗P_n → P_{m+1}⊗P_{n−1}`
pub fn delta_xy(m: u32, n: u32) -> LinOp {
    let (m, n) = (m as i64, n as i64);
    bidegree_op(m, n, m + 1, n - 1, |s, t| vec![(s + 1, t - 1, t), (s, t, n - t)])
}

/// `Δ_yx = y₁∂/∂x₁ + y₂∂/∂x₂ : P_m⊗P_n → P_{m−1}⊗P_{n+1}`
pub fn delta_yx(m: u32, n: u32) -> LinOp {
    let (m, n) = (m as i64, n as i64);
    bidegree_op(m, n, m - 1, n + 1, |s, t| vec![(s - 1, t + 1, s), (s, t, m - s)])
}

/// `Γ_xy f = (x₁y₂ − y₁x₂) f : P_m⊗P_n → P_{m+1}⊗P_{n+1}`
pub fn gamma_xy(m: u32, n: u32) -> LinOp {
    let (m, n) = (m as i64, n as i64);
    bidegree_op(m, n, m + 1, n + 1, |s, t| vec![(s + 1, t, 1), (s, t + 1, -1)])
}

/// `Ω_xy = ∂²/∂x₁∂y₂ − ∂²/∂x₂∂y₁ : P_m⊗P_n → P_{m−1}⊗P_{n−1}`
pub fn omega_xy(m: u32, n: u32) -> LinOp {
    let (m, n) = (m as i64, n as i64);
    bidegree_op(m, n, m - 1, n - 1, |s, t| vec![(s - 1, t, s * (n - t)), (s, t - 1, -(m - s) * t)])
}

/// `α_{m,n,h} = √c_{m,n,h} Γ^h Δ_yx^{n−h}`, with `P_r` read as polynomials in `x` alone.
pub fn alpha_via_operators(ix: CgIndex) -> LinOp {
    let (m, n, h, r) = (ix.m(), ix.n(), ix.h(), ix.r());
    let mut acc = LinOp::identity(SpaceLabel::pp(r as i32, 0));
    for k in 0..n - h {
        acc = &delta_yx(r - k, k) * &acc;
    }
    for k in 0..h {
        acc = &gamma_xy(m - h + k, n - h + k) * &acc;
    }
    let c = cg_coefficient(m, n, h).expect("valid index");
    let root = ExactScalar::sqrt_rational(&c).expect("positive");
    acc.scale(&root)
        .relabel(SpaceLabel::p(r as i32), SpaceLabel::pp(m as i32, n as i32))
        .expect("P_r ⊗ P_0 has the dimension of P_r")
}

/// Splits `f ∈ P_m⊗P_n` into its components in each `W_{m+n−2h}`:
/// `c_{m,n,h} Γ^h Δ_yx^{n−h} Δ_xy^{n−h} Ω^h f` for `h = 0..=min(m, n)`.
pub fn cg_expand(f: &PolyVec) -> Vec<(u32, PolyVec)> {
    let dims = &f.space.factors;
    assert!(
        dims.len() == 2 && dims.iter().all(|a| a.kind == crate::space::Kind::Plain),
        "cg_expand needs a vector of P_m ⊗ P_n"
    );
    let (m, n) = (dims[0].degree as u32, dims[1].degree as u32);
    (0..=m.min(n))
        .map(|h| {
            let mut v = f.clone();
            for k in 0..h {
                v = omega_xy(m - k, n - k).apply(&v);
            }
            for k in 0..n - h {
                v = delta_xy(m - h + k, n - h - k).apply(&v);
            }
            for k in 0..n - h {
                v = delta_yx(m + n - 2 * h - k, k).apply(&v);
            }
            for k in 0..h {
                v = gamma_xy(m - h + k, n - h + k).apply(&v);
            }
            let c = cg_coefficient(m, n, h).expect("valid index");
            (h, v.scale(&ExactScalar::from_rational(c)))
        })
        .collect()
}
