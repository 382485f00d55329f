use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Plain,
    Conjugate,
}

/// One tensor factor: `P_m` or its conjugate space. Degree `-1` is the zero
/// space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub kind: Kind,
    pub degree: i32,
}

impl Atom {
    pub fn plain(degree: i32) -> Self {
        Self { kind: Kind::Plain, degree }
    }

    pub fn conjugate(degree: i32) -> Self {
        Self { kind: Kind::Conjugate, degree }
    }

    pub fn dim(&self) -> usize {
        (self.degree + 1).max(0) as usize
    }

    pub fn conj(self) -> Self {
        let kind = match self.kind {
            Kind::Plain => Kind::Conjugate,
            Kind::Conjugate => Kind::Plain,
        };
        Self { kind, ..self }
    }
}

/// An ordered tensor product of atoms. Basis order is row-major with the
/// leftmost factor varying slowest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SpaceLabel {
    pub factors: Vec<Atom>,
}

impl SpaceLabel {
    pub fn new(factors: Vec<Atom>) -> Self {
        Self { factors }
    }

    /// `P_m`
    pub fn p(m: i32) -> Self {
        Self::new(vec![Atom::plain(m)])
    }

    /// `P̄_m`
    pub fn pbar(m: i32) -> Self {
        Self::new(vec![Atom::conjugate(m)])
    }

    /// `P_m ⊗ P_n`
    pub fn pp(m: i32, n: i32) -> Self {
        Self::new(vec![Atom::plain(m), Atom::plain(n)])
    }

    /// `P_m ⊗ P̄_n`
    pub fn p_pbar(m: i32, n: i32) -> Self {
        Self::new(vec![Atom::plain(m), Atom::conjugate(n)])
    }

    pub fn dim(&self) -> usize {
        self.factors.iter().map(Atom::dim).product()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(Atom::dim).collect()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.factors.iter().map(|a| a.conj()).collect())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Self::new(factors)
    }

    /// Splits a two-block label at factor `at`.
    pub fn split_at(&self, at: usize) -> (Self, Self) {
        let (l, r) = self.factors.split_at(at);
        (Self::new(l.to_vec()), Self::new(r.to_vec()))
    }

    pub fn is_atomic(&self) -> bool {
        self.factors.len() == 1
    }
}

impl fmt::Display for SpaceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("C");
        }
        for (k, a) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("⊗")?;
            }
            match a.kind {
                Kind::Plain => write!(f, "P{}", a.degree)?,
                Kind::Conjugate => write!(f, "conj(P{})", a.degree)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        assert_eq!(SpaceLabel::pp(2, 3).dim(), 12);
        assert_eq!(SpaceLabel::pp(1, -1).dim(), 0);
        assert_eq!(SpaceLabel::p(0).dim(), 1);
    }

    #[test]
    fn double_conjugate_is_plain() {
        let l = SpaceLabel::p_pbar(2, 1);
        assert_eq!(l.conj().conj(), l);
        assert_eq!(l.conj(), SpaceLabel::new(vec![Atom::conjugate(2), Atom::plain(1)]));
    }
}
