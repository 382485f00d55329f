use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ClebschError, CgIndex};
use crate::scalar::Rational;

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Binomial coefficient, zero outside `0 ≤ k ≤ n`.
pub(crate) fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * (n - t) / (t + 1);
    }
    acc
}

fn recursion_cache() -> &'static Mutex<HashMap<(u32, u32, u32), Rational>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32, u32), Rational>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `c_{m,n,h}` by induction on `n` from `c_{m,0,0} = 1`.
pub fn cg_coefficient_recursive(m: u32, n: u32, h: u32) -> Result<Rational, ClebschError> {
    CgIndex::new(m, n, h)?;
    Ok(recurse(m, n, h))
}

fn recurse(m: u32, n: u32, h: u32) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    if let Some(v) = recursion_cache().lock().expect("poisoned").get(&(m, n, h)) {
        return v.clone();
    }
    let lower = || recurse(m - 1, n - 1, h - 1);
    let upper = || recurse(m + 1, n - 1, h);
    let sum = if h == 0 {
        upper()
    } else if h == n {
        lower()
    } else {
        lower() + upper()
    };
    let value = sum / Rational::from_integer(BigInt::from((m + 1) as u64 * n as u64));
    recursion_cache().lock().expect("poisoned").insert((m, n, h), value.clone());
    value
}

/// The closed form obtained from the isometry condition on `α_{m,n,h}`.
pub fn cg_coefficient_closed(m: u32, n: u32, h: u32) -> Result<Rational, ClebschError> {
    let ix = CgIndex::new(m, n, h)?;
    let sum: Rational = (0..=h as i64)
        .map(|k| {
            let b = binom(h as i64, k);
            Rational::new(&b * &b, binom(m as i64, h as i64 - k) * binom(n as i64, k))
        })
        .fold(Rational::zero(), |acc, t| acc + t);
    let top = factorial(m - h).pow(2u32);
    let bottom = factorial(ix.r()) * factorial(m) * factorial(n);
    Ok(Rational::from_integer(top) / (Rational::from_integer(bottom) * sum))
}

/// `c_{m,n,h}`: the closed form, checked against the recursion.
pub fn cg_coefficient(m: u32, n: u32, h: u32) -> Result<Rational, ClebschError> {
    let closed = cg_coefficient_closed(m, n, h)?;
    let recursive = cg_coefficient_recursive(m, n, h)?;
    assert_eq!(closed, recursive, "closed form and recursion disagree at ({m}, {n}, {h})");
    Ok(closed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn small_values() {
        for m in 0..=8 {
            assert_eq!(cg_coefficient(m, 0, 0).unwrap(), rational(1, 1));
        }
        assert_eq!(cg_coefficient(1, 1, 0).unwrap(), rational(1, 2));
        assert_eq!(cg_coefficient(1, 1, 1).unwrap(), rational(1, 2));
        assert_eq!(cg_coefficient(1, 2, 1).unwrap(), rational(1, 3));
    }

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), BigInt::from(10));
        assert_eq!(binom(5, 6), BigInt::zero());
        assert_eq!(binom(5, -1), BigInt::zero());
        assert_eq!(binom(0, 0), BigInt::one());
    }

    #[test]
    fn rejects_invalid() {
        assert!(cg_coefficient(0, 1, 1).is_err());
        assert!(cg_coefficient_recursive(2, 1, 2).is_err());
    }
}
