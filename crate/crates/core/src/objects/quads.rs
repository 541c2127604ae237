use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seqcore::{npaf_all, BinarySeq, NpafProfile, Sequence, TernarySeq};

/// Two binary sequences of a common length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GolayPair {
    pub a: BinarySeq,
    pub b: BinarySeq,
}

impl GolayPair {
    pub fn new(a: BinarySeq, b: BinarySeq) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch { expected: a.len(), found: b.len() });
        }
        Ok(GolayPair { a, b })
    }

    /// The trivial pair `((+),(+))`.
    pub fn unit() -> Self {
        GolayPair { a: BinarySeq::ones(1), b: BinarySeq::ones(1) }
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadKind {
    #[default]
    Plain,
    Normal,
    NearNormal,
}

impl fmt::Display for QuadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuadKind::Plain => "base",
            QuadKind::Normal => "normal",
            QuadKind::NearNormal => "near-normal",
        })
    }
}

/// `(A;B;C;D)` with `|A| = |B| = r` and `|C| = |D| = s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BaseQuad {
    pub a: BinarySeq,
    pub b: BinarySeq,
    pub c: BinarySeq,
    pub d: BinarySeq,
    pub kind: QuadKind,
}

impl BaseQuad {
    pub fn new(a: BinarySeq, b: BinarySeq, c: BinarySeq, d: BinarySeq) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch { expected: a.len(), found: b.len() });
        }
        if c.len() != d.len() {
            return Err(Error::LengthMismatch { expected: c.len(), found: d.len() });
        }
        Ok(BaseQuad { a, b, c, d, kind: QuadKind::Plain })
    }

    pub fn with_kind(mut self, kind: QuadKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn r(&self) -> usize {
        self.a.len()
    }

    pub fn s(&self) -> usize {
        self.c.len()
    }

    pub fn parts(&self) -> [&BinarySeq; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Entries of A, B, C, D laid end to end.
    pub fn flatten(&self) -> Vec<i8> {
        self.parts().iter().flat_map(|p| p.entries().iter().copied()).collect()
    }

    /// Inverse of [`BaseQuad::flatten`].
    pub fn from_flat(flat: &[i8], r: usize, s: usize, kind: QuadKind) -> Self {
        let part = |lo: usize, len: usize| BinarySeq::new(flat[lo..lo + len].to_vec()).expect("binary entries");
        BaseQuad { a: part(0, r), b: part(r, r), c: part(2 * r, s), d: part(2 * r + s, s), kind }
    }

    pub fn npaf_sum(&self) -> NpafProfile {
        let profiles: Vec<_> = self.parts().iter().map(|p| npaf_all(*p)).collect();
        NpafProfile::sum(&profiles)
    }
}

impl fmt::Display for BaseQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{};{}", self.a, self.b, self.c, self.d)
    }
}

/// Four ternary sequences of a common length `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TQuad {
    pub t: [TernarySeq; 4],
}

impl TQuad {
    pub fn new(t: [TernarySeq; 4]) -> Result<Self> {
        let n = t[0].len();
        if let Some(bad) = t.iter().find(|x| x.len() != n) {
            return Err(Error::LengthMismatch { expected: n, found: bad.len() });
        }
        Ok(TQuad { t })
    }

    pub fn len(&self) -> usize {
        self.t[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.t[0].is_empty()
    }

    /// Index of the sequence that is nonzero at `pos`, with its sign.
    pub fn owner(&self, pos: usize) -> Option<(usize, i8)> {
        self.t.iter().enumerate().find_map(|(k, x)| match x.entries()[pos] {
            0 => None,
            v => Some((k, v)),
        })
    }
}

impl fmt::Display for TQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{};{};{}", self.t[0], self.t[1], self.t[2], self.t[3])
    }
}

fn zero_npaf_sum(profiles: &[NpafProfile]) -> bool {
    NpafProfile::sum(profiles).is_delta()
}

pub fn verify_golay(gp: &GolayPair) -> bool {
    gp.a.len() == gp.b.len() && zero_npaf_sum(&[npaf_all(&gp.a), npaf_all(&gp.b)])
}

pub fn verify_base(q: &BaseQuad) -> bool {
    q.a.len() == q.b.len() && q.c.len() == q.d.len() && q.npaf_sum().is_delta()
}

/// Why a quadruple failed a normal or near-normal check.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Rejection {
    #[error("autocorrelation sums are not all zero")]
    NotBase,
    #[error("lengths ({r},{s}) are not of the form (l+1,l)")]
    Lengths { r: usize, s: usize },
    #[error("length l = {0} is odd")]
    OddLength(usize),
    #[error("linking condition fails at position {0}")]
    Link(usize),
}

fn check_shape(q: &BaseQuad) -> std::result::Result<usize, Rejection> {
    let (r, s) = (q.a.len(), q.c.len());
    if q.b.len() != r || q.d.len() != s || r != s + 1 {
        return Err(Rejection::Lengths { r, s });
    }
    Ok(s)
}

fn check_link(q: &BaseQuad, sign: impl Fn(usize) -> i8) -> std::result::Result<(), Rejection> {
    let (a, b) = (q.a.entries(), q.b.entries());
    match (0..q.s()).find(|&i| b[i] != sign(i) * a[i]) {
        Some(i) => Err(Rejection::Link(i + 1)),
        None if verify_base(q) => Ok(()),
        None => Err(Rejection::NotBase),
    }
}

/// Base sequences in BS(l+1,l) with `b_i = a_i` for `i <= l`.
pub fn verify_normal(q: &BaseQuad) -> std::result::Result<(), Rejection> {
    check_shape(q)?;
    check_link(q, |_| 1)
}

/// Base sequences in BS(l+1,l), `l` even, with `b_i = (-1)^(i-1) a_i` for `i <= l`.
pub fn verify_near_normal(q: &BaseQuad) -> std::result::Result<(), Rejection> {
    let s = check_shape(q)?;
    if s % 2 == 1 {
        return Err(Rejection::OddLength(s));
    }
    check_link(q, |i| if i % 2 == 0 { 1 } else { -1 })
}

/// Dispatches on `q.kind`.
pub fn verify_quad(q: &BaseQuad) -> bool {
    match q.kind {
        QuadKind::Plain => verify_base(q),
        QuadKind::Normal => verify_normal(q).is_ok(),
        QuadKind::NearNormal => verify_near_normal(q).is_ok(),
    }
}

pub fn verify_t(q: &TQuad) -> bool {
    let n = q.len();
    if q.t.iter().any(|x| x.len() != n) {
        return false;
    }
    let exactly_one = (0..n).all(|i| q.t.iter().filter(|x| x.entries()[i] != 0).count() == 1);
    exactly_one && zero_npaf_sum(&q.t.iter().map(npaf_all).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BinarySeq {
        s.parse().unwrap()
    }

    fn tq(parts: [&str; 4]) -> TQuad {
        TQuad::new(parts.map(|p| p.parse().unwrap())).unwrap()
    }

    fn quad(a: &str, bb: &str, c: &str, d: &str) -> BaseQuad {
        BaseQuad::new(b(a), b(bb), b(c), b(d)).unwrap()
    }

    #[test]
    fn golay_examples() {
        assert!(verify_golay(&GolayPair::new(b("++"), b("+-")).unwrap()));
        assert!(!verify_golay(&GolayPair::new(b("++"), b("++")).unwrap()));
        assert!(verify_golay(&GolayPair::new(b("+"), b("-")).unwrap()));
        assert!(GolayPair::new(b("+"), b("--")).is_err());
    }

    #[test]
    fn base_examples() {
        assert!(verify_base(&quad("++", "+-", "+", "+")));
        assert!(!verify_base(&quad("++", "++", "+", "+")));
        assert!(verify_base(&quad("++", "+-", "++-+", "+++-")));
        assert!(BaseQuad::new(b("+"), b("++"), b("+"), b("+")).is_err());
    }

    #[test]
    fn normal_and_near_normal_examples() {
        let q = quad("++", "+-", "+", "+");
        assert_eq!(verify_normal(&q), Ok(()));
        assert_eq!(verify_near_normal(&q), Err(Rejection::OddLength(1)));
        assert_eq!(verify_normal(&quad("++", "--", "+", "+")), Err(Rejection::Link(1)));
        assert_eq!(verify_normal(&quad("++", "++", "+", "+")), Err(Rejection::NotBase));
        assert!(matches!(verify_normal(&quad("++", "+-", "++", "+-")), Err(Rejection::Lengths { .. })));
    }

    #[test]
    fn t_examples() {
        assert!(verify_t(&tq(["+00", "0+0", "00+", "000"])));
        assert!(!verify_t(&tq(["+0", "+0", "0+", "00"])));
        assert!(verify_t(&tq(["+", "0", "0", "0"])));
        assert!(!verify_t(&tq(["++", "00", "00", "00"])));
    }

    #[test]
    fn flatten_round_trip() {
        let q = quad("++-", "+-+", "+-", "--");
        assert_eq!(BaseQuad::from_flat(&q.flatten(), 3, 2, QuadKind::Plain), q);
    }
}
