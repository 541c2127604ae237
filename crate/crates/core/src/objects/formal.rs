//! Arrays whose entries are signed formal variables.
//!
//! An entry is written `+x1`, `-x3'`, `+x4'R` or `0`. The apostrophe marks
//! a transposed block and `R` a right factor of the back-diagonal identity;
//! both marks only make sense in arrays whose entries are later replaced by
//! circulant blocks.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub sign: i8,
    /// 1..=4
    pub var: u8,
    pub transposed: bool,
    pub backflip: bool,
}

impl Monomial {
    pub fn plain(sign: i8, var: u8) -> Self {
        Monomial { sign, var, transposed: false, backflip: false }
    }

    pub fn is_plain(&self) -> bool {
        !self.transposed && !self.backflip
    }

    pub fn negated(self) -> Self {
        Monomial { sign: -self.sign, ..self }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", if self.sign < 0 { '-' } else { '+' }, self.var)?;
        if self.transposed {
            f.write_str("'")?;
        }
        if self.backflip {
            f.write_str("R")?;
        }
        Ok(())
    }
}

impl FromStr for Monomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedEntry(s.to_string());
        let mut chars = s.chars();
        let sign = match chars.next() {
            Some('+') => 1,
            Some('-') => -1,
            _ => return Err(bad()),
        };
        if chars.next() != Some('x') {
            return Err(bad());
        }
        let var = match chars.next().and_then(|c| c.to_digit(10)) {
            Some(v @ 1..=4) => v as u8,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        let (transposed, rest) = match rest.strip_prefix('\'') {
            Some(r) => (true, r),
            None => (false, rest),
        };
        let backflip = match rest {
            "" => false,
            "R" => true,
            _ => return Err(bad()),
        };
        Ok(Monomial { sign, var, transposed, backflip })
    }
}

/// Square array of optional monomials, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalArray {
    order: usize,
    entries: Vec<Option<Monomial>>,
}

fn entry_text(e: &Option<Monomial>) -> String {
    e.map_or_else(|| "0".to_string(), |m| m.to_string())
}

fn parse_entry(s: &str) -> Result<Option<Monomial>> {
    if s == "0" {
        Ok(None)
    } else {
        s.parse().map(Some)
    }
}

impl FormalArray {
    pub fn new(order: usize, entries: Vec<Option<Monomial>>) -> Result<Self> {
        if entries.len() != order * order {
            return Err(Error::NotSquare { rows: order, row: 0, len: entries.len() / order.max(1) });
        }
        Ok(FormalArray { order, entries })
    }

    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> Option<Monomial> + Sync) -> Self {
        let entries = (0..order * order).into_par_iter().map(|k| f(k / order, k % order)).collect();
        FormalArray { order, entries }
    }

    pub fn from_rows<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != order {
                return Err(Error::NotSquare { rows: order, row, len: r.len() });
            }
            for s in r {
                entries.push(parse_entry(s.as_ref().trim())?);
            }
        }
        Ok(FormalArray { order, entries })
    }

    pub fn to_rows(&self) -> Vec<Vec<String>> {
        self.entries.chunks(self.order.max(1)).map(|r| r.iter().map(entry_text).collect()).collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> Option<Monomial> {
        self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: Option<Monomial>) {
        self.entries[i * self.order + j] = e;
    }

    pub fn row(&self, i: usize) -> &[Option<Monomial>] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn entries(&self) -> &[Option<Monomial>] {
        &self.entries
    }

    pub fn has_marks(&self) -> bool {
        self.entries.iter().flatten().any(|m| !m.is_plain())
    }
}

impl Serialize for FormalArray {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FormalArray {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(deserializer)?;
        FormalArray::from_rows(&rows).map_err(serde::de::Error::custom)
    }
}

/// Per-row bit masks: where each variable sits, and where the sign is negative.
struct RowMasks {
    var: [Vec<u64>; 4],
    neg: Vec<u64>,
}

impl RowMasks {
    fn build(row: &[Option<Monomial>]) -> Self {
        let words = row.len().div_ceil(64);
        let mut var: [Vec<u64>; 4] = std::array::from_fn(|_| vec![0; words]);
        let mut neg = vec![0; words];
        for (i, m) in row.iter().enumerate() {
            if let Some(m) = m {
                var[usize::from(m.var - 1)][i / 64] |= 1 << (i % 64);
                if m.sign < 0 {
                    neg[i / 64] |= 1 << (i % 64);
                }
            }
        }
        RowMasks { var, neg }
    }

    fn count(&self, k: usize) -> i64 {
        self.var[k].iter().map(|w| i64::from(w.count_ones())).sum()
    }

    /// Coefficient of `x_k x_l` contributed by positions with `x_k` in self and `x_l` in other.
    fn cross(&self, other: &RowMasks, k: usize, l: usize) -> i64 {
        let mut total = 0i64;
        for w in 0..self.neg.len() {
            let both = self.var[k][w] & other.var[l][w];
            let flips = both & (self.neg[w] ^ other.neg[w]);
            total += i64::from(both.count_ones()) - 2 * i64::from(flips.count_ones());
        }
        total
    }
}

/// Checks that `M M^T = weight (x1^2 + x2^2 + x3^2 + x4^2) I` with
/// commuting variables, by comparing all ten quadratic coefficients for
/// every pair of rows. Rows must each contain every variable `weight` times.
pub fn verify_od(m: &FormalArray, weight: usize) -> Result<bool> {
    if let Some(bad) = m.entries.iter().flatten().find(|e| !e.is_plain()) {
        return Err(Error::MalformedEntry(format!("marked entry {bad} in a substituted design")));
    }
    let n = m.order;
    if n == 0 || !n.is_multiple_of(4) {
        return Ok(false);
    }
    let weight = weight as i64;
    let masks: Vec<RowMasks> = (0..n).into_par_iter().map(|i| RowMasks::build(m.row(i))).collect();
    if masks.iter().any(|r| (0..4).any(|k| r.count(k) != weight)) {
        return Ok(false);
    }
    let ok = (0..n).into_par_iter().all(|u| {
        ((u + 1)..n).all(|v| {
            (0..4).all(|k| {
                masks[u].cross(&masks[v], k, k) == 0
                    && ((k + 1)..4).all(|l| masks[u].cross(&masks[v], k, l) + masks[u].cross(&masks[v], l, k) == 0)
            })
        })
    });
    Ok(ok)
}

/// Normal form of `(X^a R^p)(Y^b R^q)^T` for circulants X, Y: an unordered
/// pair of (variable, transposed) factors and whether a single R remains.
fn product_key(x: &Monomial, y: &Monomial) -> usize {
    let tx = x.transposed as usize;
    let ty = y.transposed as usize;
    let rflag = x.backflip != y.backflip;
    // Even R count: X^a Y^(1-b). Odd: X^a R Y^(1-b) = X^a Y^b R.
    let ty = if rflag { ty } else { 1 - ty };
    let f1 = usize::from(x.var - 1) * 2 + tx;
    let f2 = usize::from(y.var - 1) * 2 + ty;
    let (lo, hi) = if f1 <= f2 { (f1, f2) } else { (f2, f1) };
    (lo * 8 + hi) * 2 + rflag as usize
}

fn square_key(k: usize) -> usize {
    let f = k * 2;
    (f * 8 + f + 1) * 2
}

/// Checks an array of order `4h` into which circulant blocks are to be
/// substituted: every variable appears `h` times in each row and column,
/// and row products reduce to `h (sum_k X_k X_k^T) I` using that circulants
/// commute and `X R = R X^T`.
pub fn verify_bhw(m: &FormalArray, h: usize) -> Result<bool> {
    let n = m.order;
    if n != 4 * h {
        return Err(Error::OrderMismatch { expected: 4 * h, found: n });
    }
    let mut row_counts = vec![[0usize; 4]; n];
    let mut col_counts = vec![[0usize; 4]; n];
    for (i, row) in row_counts.iter_mut().enumerate() {
        for (j, col) in col_counts.iter_mut().enumerate() {
            if let Some(e) = m.get(i, j) {
                row[usize::from(e.var - 1)] += 1;
                col[usize::from(e.var - 1)] += 1;
            }
        }
    }
    if row_counts.iter().chain(&col_counts).any(|c| c.iter().any(|&x| x != h)) {
        return Ok(false);
    }
    for u in 0..n {
        for v in u..n {
            let mut coeff = [0i64; 128];
            for j in 0..n {
                if let (Some(x), Some(y)) = (m.get(u, j), m.get(v, j)) {
                    coeff[product_key(&x, &y)] += i64::from(x.sign * y.sign);
                }
            }
            if u == v {
                for k in 0..4 {
                    coeff[square_key(k)] -= h as i64;
                }
            }
            if coeff.iter().any(|&c| c != 0) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
