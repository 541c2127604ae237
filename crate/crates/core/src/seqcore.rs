//! Sequences over {+1,-1} and {+1,0,-1} and their nonperiodic
//! autocorrelation.
//!
//! Entries are stored as `i8`. Positions are 0-based in code; the
//! alternation map `x_i -> (-1)^i x_i` therefore leaves the first entry
//! fixed, which is the same as `(-1)^(i-1)` with 1-based indices.
//!
//! The text form of a sequence is a string over `+`, `-` and `0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::objects::BaseQuad;

/// Read access shared by binary and ternary sequences.
pub trait Sequence {
    fn entries(&self) -> &[i8];

    fn len(&self) -> usize {
        self.entries().len()
    }

    fn is_empty(&self) -> bool {
        self.entries().is_empty()
    }
}

fn sign_char(v: i8) -> char {
    match v {
        1 => '+',
        -1 => '-',
        _ => '0',
    }
}

fn parse_entries(s: &str, allow_zero: bool) -> Result<Vec<i8>> {
    s.chars()
        .enumerate()
        .map(|(position, c)| match c {
            '+' => Ok(1),
            '-' => Ok(-1),
            '0' if allow_zero => Ok(0),
            value => Err(Error::InvalidEntry { position, value }),
        })
        .collect()
}

fn write_entries(f: &mut fmt::Formatter<'_>, entries: &[i8]) -> fmt::Result {
    for &v in entries {
        write!(f, "{}", sign_char(v))?;
    }
    Ok(())
}

/// A sequence with every entry equal to +1 or -1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinarySeq(Vec<i8>);

/// A sequence with entries in {+1, 0, -1}.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TernarySeq(Vec<i8>);

impl Sequence for BinarySeq {
    fn entries(&self) -> &[i8] {
        &self.0
    }
}

impl Sequence for TernarySeq {
    fn entries(&self) -> &[i8] {
        &self.0
    }
}

impl BinarySeq {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if let Some(position) = entries.iter().position(|&v| v != 1 && v != -1) {
            return Err(Error::InvalidEntry { position, value: sign_char(entries[position]) });
        }
        Ok(BinarySeq(entries))
    }

    /// All-(+1) sequence of length `n`.
    pub fn ones(n: usize) -> Self {
        BinarySeq(vec![1; n])
    }

    /// Builds a sequence from the low `n` bits of `bits`; a set bit is -1.
    pub fn from_bits(bits: u64, n: usize) -> Self {
        BinarySeq((0..n).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect())
    }

    pub fn into_inner(self) -> Vec<i8> {
        self.0
    }

    pub fn negate(&self) -> Self {
        BinarySeq(self.0.iter().map(|v| -v).collect())
    }

    pub fn reverse(&self) -> Self {
        BinarySeq(self.0.iter().rev().copied().collect())
    }

    pub fn alternate(&self) -> Self {
        BinarySeq(alternate_entries(&self.0))
    }

    pub fn concat(&self, other: &BinarySeq) -> Self {
        BinarySeq([self.0.as_slice(), other.0.as_slice()].concat())
    }

    pub fn to_ternary(&self) -> TernarySeq {
        TernarySeq(self.0.clone())
    }
}

impl TernarySeq {
    pub fn new(entries: Vec<i8>) -> Result<Self> {
        if let Some(position) = entries.iter().position(|&v| !(-1..=1).contains(&v)) {
            return Err(Error::InvalidInput(format!("ternary entry {} at position {position}", entries[position])));
        }
        Ok(TernarySeq(entries))
    }

    pub fn zeros(d: usize) -> Self {
        TernarySeq(vec![0; d])
    }

    pub fn into_inner(self) -> Vec<i8> {
        self.0
    }

    pub fn negate(&self) -> Self {
        TernarySeq(self.0.iter().map(|v| -v).collect())
    }

    pub fn reverse(&self) -> Self {
        TernarySeq(self.0.iter().rev().copied().collect())
    }

    pub fn alternate(&self) -> Self {
        TernarySeq(alternate_entries(&self.0))
    }

    pub fn concat(&self, other: &TernarySeq) -> Self {
        TernarySeq([self.0.as_slice(), other.0.as_slice()].concat())
    }

    /// Indices of the nonzero entries.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, _)| i)
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&v| v != 0).count()
    }
}

impl From<BinarySeq> for TernarySeq {
    fn from(x: BinarySeq) -> Self {
        TernarySeq(x.0)
    }
}

fn alternate_entries(x: &[i8]) -> Vec<i8> {
    x.iter().enumerate().map(|(i, &v)| if i % 2 == 0 { v } else { -v }).collect()
}

impl FromStr for BinarySeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_entries(s, false).map(BinarySeq)
    }
}

impl FromStr for TernarySeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_entries(s, true).map(TernarySeq)
    }
}

impl fmt::Display for BinarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, &self.0)
    }
}

impl fmt::Display for TernarySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_entries(f, &self.0)
    }
}

macro_rules! serde_as_text {
    ($ty:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
                serializer.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
                let s = String::deserialize(deserializer)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

serde_as_text!(BinarySeq);
serde_as_text!(TernarySeq);

/// Nonperiodic autocorrelation values `N(0..n)`; shifts past the end read as 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NpafProfile(Vec<i64>);

impl NpafProfile {
    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn get(&self, j: usize) -> i64 {
        self.0.get(j).copied().unwrap_or(0)
    }

    /// Sum of several profiles, padded to the longest.
    pub fn sum<'a>(profiles: impl IntoIterator<Item = &'a NpafProfile>) -> NpafProfile {
        let mut out: Vec<i64> = Vec::new();
        for p in profiles {
            if p.0.len() > out.len() {
                out.resize(p.0.len(), 0);
            }
            for (o, v) in out.iter_mut().zip(&p.0) {
                *o += v;
            }
        }
        NpafProfile(out)
    }

    /// True when every shift `j >= 1` is zero.
    pub fn is_delta(&self) -> bool {
        self.0.iter().skip(1).all(|&v| v == 0)
    }
}

/// Reference O(n^2) autocorrelation of a raw entry slice.
pub fn npaf_slice(x: &[i8]) -> Vec<i64> {
    let n = x.len();
    (0..n).map(|j| x[..n - j].iter().zip(&x[j..]).map(|(&a, &b)| i64::from(a) * i64::from(b)).sum()).collect()
}

/// `N_X(j) = sum_i x_i x_{i+j}` for `j = 0..n`.
pub fn npaf_all<S: Sequence + ?Sized>(x: &S) -> NpafProfile {
    NpafProfile(npaf_slice(x.entries()))
}

/// Bit-packed autocorrelation of a binary sequence; agrees with [`npaf_all`].
///
/// A set bit encodes -1, so `x_i x_{i+j} = 1 - 2 (b_i xor b_{i+j})`.
pub fn npaf_packed(x: &BinarySeq) -> NpafProfile {
    let n = x.len();
    let words = pack_bits(x.entries());
    let values = (0..n)
        .map(|j| {
            let span = n - j;
            let mismatches = xor_shift_popcount(&words, j, span);
            span as i64 - 2 * mismatches as i64
        })
        .collect();
    NpafProfile(values)
}

pub(crate) fn pack_bits(x: &[i8]) -> Vec<u64> {
    let mut words = vec![0u64; x.len().div_ceil(64)];
    for (i, &v) in x.iter().enumerate() {
        if v < 0 {
            words[i / 64] |= 1 << (i % 64);
        }
    }
    words
}

/// popcount of `(bits[0..span] xor bits[j..j+span])`.
fn xor_shift_popcount(words: &[u64], j: usize, span: usize) -> u32 {
    let q = j / 64;
    let r = j % 64;
    let full = span / 64;
    let tail = span % 64;
    let shifted = |k: usize| -> u64 {
        let lo = words.get(k + q).copied().unwrap_or(0);
        if r == 0 {
            lo
        } else {
            let hi = words.get(k + q + 1).copied().unwrap_or(0);
            (lo >> r) | (hi << (64 - r))
        }
    };
    let mut count: u32 = words[..full].iter().enumerate().map(|(k, &w)| (w ^ shifted(k)).count_ones()).sum();
    if tail > 0 {
        let mask = (1u64 << tail) - 1;
        count += ((words[full] ^ shifted(full)) & mask).count_ones();
    }
    count
}

/// Entrywise `(x_i + y_i) / 2`.
pub fn half_sum(x: &BinarySeq, y: &BinarySeq) -> Result<TernarySeq> {
    combine_halves(x, y, 1)
}

/// Entrywise `(x_i - y_i) / 2`.
pub fn half_diff(x: &BinarySeq, y: &BinarySeq) -> Result<TernarySeq> {
    combine_halves(x, y, -1)
}

fn combine_halves(x: &BinarySeq, y: &BinarySeq, sign: i8) -> Result<TernarySeq> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch { expected: x.len(), found: y.len() });
    }
    Ok(TernarySeq(x.0.iter().zip(&y.0).map(|(&a, &b)| (a + sign * b) / 2).collect()))
}

/// A sequence of `d` zeros.
pub fn zeros(d: usize) -> TernarySeq {
    TernarySeq::zeros(d)
}

/// One of the four members of a quadruple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Slot {
    A,
    B,
    C,
    D,
}

impl Slot {
    pub const ALL: [Slot; 4] = [Slot::A, Slot::B, Slot::C, Slot::D];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Generators of the equivalence group acting on base quadruples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SymmetryCode {
    SwapAB,
    SwapCD,
    Negate(Slot),
    Reverse(Slot),
    AlternateAll,
}

impl SymmetryCode {
    /// The eleven generators of the full group.
    pub fn generators() -> Vec<SymmetryCode> {
        let mut out = vec![SymmetryCode::SwapAB, SymmetryCode::SwapCD];
        out.extend(Slot::ALL.iter().map(|&s| SymmetryCode::Negate(s)));
        out.extend(Slot::ALL.iter().map(|&s| SymmetryCode::Reverse(s)));
        out.push(SymmetryCode::AlternateAll);
        out
    }
}

/// Applies one generator. The kind tag is kept only when the generator
/// maps the kind's linking condition onto itself.
pub fn apply_symmetry(op: SymmetryCode, q: &BaseQuad) -> BaseQuad {
    let mut parts = [q.a.clone(), q.b.clone(), q.c.clone(), q.d.clone()];
    let keeps_link = match op {
        SymmetryCode::SwapAB => {
            parts.swap(0, 1);
            true
        }
        SymmetryCode::SwapCD => {
            parts.swap(2, 3);
            true
        }
        SymmetryCode::Negate(s) => {
            parts[s.index()] = parts[s.index()].negate();
            matches!(s, Slot::C | Slot::D)
        }
        SymmetryCode::Reverse(s) => {
            parts[s.index()] = parts[s.index()].reverse();
            matches!(s, Slot::C | Slot::D)
        }
        SymmetryCode::AlternateAll => {
            for p in parts.iter_mut() {
                *p = p.alternate();
            }
            true
        }
    };
    let [a, b, c, d] = parts;
    let kind = if keeps_link { q.kind } else { crate::objects::QuadKind::Plain };
    BaseQuad { a, b, c, d, kind }
}
