//! Circular in/out sign sequences around digraph vertices.

use std::fmt;

use super::{Embedding, EmbeddingError};
use crate::graph::{DiGraph, End, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    /// Incoming arc-end.
    Minus,
    /// Outgoing arc-end.
    Plus,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignPattern(pub Vec<Sign>);

impl SignPattern {
    /// Parses strings such as `"--++-+"`.
    pub fn parse(s: &str) -> Option<SignPattern> {
        s.chars()
            .map(|c| match c {
                '-' => Some(Sign::Minus),
                '+' => Some(Sign::Plus),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(SignPattern)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rotated(&self, k: usize) -> SignPattern {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        SignPattern(v)
    }

    /// Number of positions `i` where entry `i` differs from entry `i + 1` (cyclically).
    pub fn sign_changes(&self) -> usize {
        let n = self.0.len();
        (0..n).filter(|&i| self.0[i] != self.0[(i + 1) % n]).count()
    }

    /// Smallest `k` such that rotating left by `k` yields `target`.
    pub fn offset_of(&self, target: &SignPattern) -> Option<usize> {
        if self.len() != target.len() {
            return None;
        }
        (0..self.len().max(1)).find(|&k| self.rotated(k) == *target)
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Sign::Minus => "-",
                Sign::Plus => "+",
            })?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternClass {
    /// All incoming ends are consecutive.
    Bipolar,
    /// A rotation of `--++-+` or `++--+-`.
    Irregular,
    /// Strict alternation with at least two of each sign.
    Alternating,
    Other,
}

pub(crate) fn irregular_minus_first() -> SignPattern {
    SignPattern::parse("--++-+").unwrap()
}

pub(crate) fn irregular_plus_first() -> SignPattern {
    SignPattern::parse("++--+-").unwrap()
}

/// Signs of the arc-ends at `v` in rotation order.
pub fn sign_pattern(
    d: &DiGraph,
    emb: &Embedding,
    v: Vertex,
) -> Result<SignPattern, EmbeddingError> {
    if !d.is_alive(v) || v >= emb.rotation.len() {
        return Err(EmbeddingError::BadVertex(v));
    }
    Ok(SignPattern(
        emb.at(v)
            .iter()
            .map(|d| match d.end {
                End::A => Sign::Plus,
                End::B => Sign::Minus,
            })
            .collect(),
    ))
}

/// Classification up to cyclic rotation; reflections are not identified.
pub fn classify_pattern(p: &SignPattern) -> PatternClass {
    let changes = p.sign_changes();
    if changes <= 2 {
        return PatternClass::Bipolar;
    }
    if p.offset_of(&irregular_minus_first()).is_some()
        || p.offset_of(&irregular_plus_first()).is_some()
    {
        return PatternClass::Irregular;
    }
    if changes == p.len() {
        return PatternClass::Alternating;
    }
    PatternClass::Other
}

/// True when every vertex pattern is bipolar.
pub fn is_bipolar_embedding(d: &DiGraph, emb: &Embedding) -> bool {
    d.vertices().all(|v| {
        sign_pattern(d, emb, v)
            .map(|p| classify_pattern(&p) == PatternClass::Bipolar)
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(s: &str) -> PatternClass {
        classify_pattern(&SignPattern::parse(s).unwrap())
    }

    #[test]
    fn listed_patterns() {
        assert_eq!(cls("---+++"), PatternClass::Bipolar);
        assert_eq!(cls("-+-+-+"), PatternClass::Alternating);
        assert_eq!(cls("++--+-"), PatternClass::Irregular);
        assert_eq!(cls("--++-+"), PatternClass::Irregular);
        assert_eq!(cls("---"), PatternClass::Bipolar);
        assert_eq!(cls(""), PatternClass::Bipolar);
        assert_eq!(cls("-+-+"), PatternClass::Alternating);
        assert_eq!(cls("--+-++-+"), PatternClass::Other);
    }

    #[test]
    fn rotation_invariant() {
        for s in ["---+++", "-+-+-+", "++--+-", "--++-+", "-+--++", "--+-+"] {
            let p = SignPattern::parse(s).unwrap();
            for k in 0..p.len() {
                assert_eq!(
                    classify_pattern(&p.rotated(k)),
                    classify_pattern(&p),
                    "{s} rotated by {k}"
                );
            }
        }
    }
}
