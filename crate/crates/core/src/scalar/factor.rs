//! Square-free decomposition of non-negative integers.
//!
//! Trial division handles every prime below `TRIAL_LIMIT`; whatever is left
//! is split with Miller-Rabin and Brent's variant of Pollard rho.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_LIMIT: u64 = 1_000_000;

/// Fixed witnesses; deterministic below 3.3e24 and overwhelmingly reliable above.
const MR_BASES: [u64; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Writes `n = s^2 * d` with `d` square-free. `n = 0` yields `(0, 1)`.
pub fn square_free_split(n: &BigUint) -> (BigUint, BigUint) {
    if n.is_zero() {
        return (BigUint::zero(), BigUint::one());
    }
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    for (p, e) in factorize(n) {
        if e / 2 > 0 {
            square *= num_traits::pow(p.clone(), (e / 2) as usize);
        }
        if e % 2 == 1 {
            free *= p;
        }
    }
    (square, free)
}

/// True iff no prime square divides `n` (and `n > 0`).
pub fn is_square_free(n: &BigUint) -> bool {
    !n.is_zero() && factorize(n).iter().all(|(_, e)| *e == 1)
}

/// Prime factorization as sorted `(prime, exponent)` pairs.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let mut rest = n.clone();
    if rest <= BigUint::one() {
        return out;
    }

    let push = |p: BigUint, out: &mut Vec<(BigUint, u32)>| match out.iter_mut().find(|(q, _)| *q == p) {
        Some(entry) => entry.1 += 1,
        None => out.push((p, 1)),
    };

    // Small inputs stay in machine words.
    if let Some(mut small) = rest.to_u64() {
        let mut p = 2u64;
        while p <= TRIAL_LIMIT && p.saturating_mul(p) <= small {
            while small % p == 0 {
                push(BigUint::from(p), &mut out);
                small /= p;
            }
            p += if p == 2 { 1 } else { 2 };
        }
        rest = BigUint::from(small);
    } else {
        let mut p = 2u64;
        while p <= TRIAL_LIMIT {
            let bp = BigUint::from(p);
            if &bp * &bp > rest {
                break;
            }
            while (&rest % &bp).is_zero() {
                push(bp.clone(), &mut out);
                rest /= &bp;
            }
            p += if p == 2 { 1 } else { 2 };
        }
    }

    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_probable_prime(&m) {
            push(m, &mut out);
            continue;
        }
        let root = m.sqrt();
        if &root * &root == m {
            stack.push(root.clone());
            stack.push(root);
            continue;
        }
        let d = pollard_brent(&m);
        let q = &m / &d;
        stack.push(d);
        stack.push(q);
    }
    out.sort();
    out
}

pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &b in &MR_BASES {
        let bb = BigUint::from(b);
        if *n == bb {
            return true;
        }
        if (n % &bb).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &b in &MR_BASES {
        let mut x = BigUint::from(b).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Returns a non-trivial divisor of the composite, non-square `n`.
fn pollard_brent(n: &BigUint) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        const BLOCK: u64 = 64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..BLOCK.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += BLOCK;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1u32;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn splits_small_numbers() {
        assert_eq!(square_free_split(&big(8)), (big(2), big(2)));
        assert_eq!(square_free_split(&big(60)), (big(2), big(15)));
        assert_eq!(square_free_split(&big(1)), (big(1), big(1)));
        assert_eq!(square_free_split(&big(49)), (big(7), big(1)));
    }

    #[test]
    fn factors_beyond_trial_division() {
        // Both primes exceed the trial-division bound.
        let p = 1_000_003u64;
        let q = 1_000_033u64;
        let n = big(p) * big(q) * big(q);
        assert_eq!(factorize(&n), vec![(big(p), 1), (big(q), 2)]);
        assert_eq!(square_free_split(&n), (big(q), big(p)));
    }

    #[test]
    fn large_semiprime() {
        let p = BigUint::from(2_147_483_647u64); // Mersenne prime 2^31 - 1
        let q = BigUint::from(4_294_967_291u64);
        assert!(is_probable_prime(&p));
        assert!(is_probable_prime(&q));
        let f = factorize(&(&p * &q));
        assert_eq!(f, vec![(p, 1), (q, 1)]);
    }

    #[test]
    fn square_free_predicate() {
        assert!(is_square_free(&big(30)));
        assert!(!is_square_free(&big(12)));
        assert!(!is_square_free(&big(0)));
    }
}
