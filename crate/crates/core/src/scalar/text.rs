//! Canonical text form.
//!
//! ```text
//! scalar := "0" | term (" + " term)*
//! term   := [sign] coeff ["*sqrt(" d ")"]
//! coeff  := "(" a "/" b ")" | "(" a "/" b "+" c "/" e " i)"
//! ```
//!
//! Rendering never emits the optional leading sign: signs live inside the
//! coefficient, so `-1/2` renders as `(-1/2)` and `1 - i` as `(1/1+-1/1 i)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::{ExactScalar, GaussianRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed exact scalar {input:?}: {reason}")]
pub struct ParseScalarError {
    pub input: String,
    pub reason: &'static str,
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &Rational) -> fmt::Result {
    write!(f, "{}/{}", q.numer(), q.denom())
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (d, q)) in self.terms().iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            f.write_str("(")?;
            write_rational(f, &q.re)?;
            if !q.im.is_zero() {
                f.write_str("+")?;
                write_rational(f, &q.im)?;
                f.write_str(" i")?;
            }
            f.write_str(")")?;
            if !d.is_one() {
                write!(f, "*sqrt({})", d)?;
            }
        }
        Ok(())
    }
}

impl FromStr for ExactScalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseScalarError { input: s.to_string(), reason };
        if s == "0" {
            return Ok(ExactScalar::zero());
        }
        if s.is_empty() {
            return Err(err("empty input"));
        }
        let mut terms = Vec::new();
        for term in s.split(" + ") {
            terms.push(parse_term(term).map_err(err)?);
        }
        Ok(ExactScalar::from_terms(terms))
    }
}

fn parse_term(term: &str) -> Result<(BigUint, GaussianRational), &'static str> {
    let (negate, rest) = match term.as_bytes().first() {
        Some(b'-') => (true, &term[1..]),
        Some(b'+') => (false, &term[1..]),
        _ => (false, term),
    };
    let rest = rest.strip_prefix('(').ok_or("coefficient must start with '('")?;
    let close = rest.find(')').ok_or("unterminated coefficient")?;
    let (body, tail) = (&rest[..close], &rest[close + 1..]);

    let mut q = match body.strip_suffix(" i") {
        Some(complex) => {
            // `a/b+c/e`: the separating '+' is the first one after the real part's slash.
            let slash = complex.find('/').ok_or("missing '/' in real part")?;
            let plus = complex[slash..].find('+').map(|p| p + slash).ok_or("missing '+' before imaginary part")?;
            GaussianRational::new(parse_rational(&complex[..plus])?, parse_rational(&complex[plus + 1..])?)
        }
        None => GaussianRational::real(parse_rational(body)?),
    };
    if negate {
        q = -&q;
    }

    let radicand = if tail.is_empty() {
        BigUint::one()
    } else {
        let inner = tail
            .strip_prefix("*sqrt(")
            .and_then(|t| t.strip_suffix(')'))
            .ok_or("radical must be written *sqrt(d)")?;
        if inner.is_empty() || !inner.bytes().all(|b| b.is_ascii_digit()) {
            return Err("radicand must be a positive integer");
        }
        let d: BigUint = inner.parse().map_err(|_| "radicand must be a positive integer")?;
        if d.is_zero() {
            return Err("radicand must be a positive integer");
        }
        d
    };
    Ok((radicand, q))
}

fn parse_rational(text: &str) -> Result<Rational, &'static str> {
    let (num, den) = text.split_once('/').ok_or("rational must be written a/b")?;
    let valid_int = |t: &str| {
        let digits = t.strip_prefix('-').unwrap_or(t);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num) || den.is_empty() || !den.bytes().all(|b| b.is_ascii_digit()) {
        return Err("rational parts must be integers");
    }
    let num: BigInt = num.parse().map_err(|_| "bad numerator")?;
    let den: BigInt = den.parse().map_err(|_| "bad denominator")?;
    if den.is_zero() {
        return Err("zero denominator");
    }
    Ok(Rational::new(num, den))
}
