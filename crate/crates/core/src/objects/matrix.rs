use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Dense square matrix with entries in {-1, 0, 1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    order: usize,
    data: Vec<i8>,
}

impl SignMatrix {
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> i8) -> Self {
        let mut data = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                data.push(f(i, j));
            }
        }
        SignMatrix { order, data }
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| i8::from(i == j))
    }

    /// Parses rows over `+`, `-` (and `0` when `allow_zero`).
    pub fn from_rows<S: AsRef<str>>(rows: &[S], allow_zero: bool) -> Result<Self> {
        let order = rows.len();
        let mut data = Vec::with_capacity(order * order);
        for (row, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.chars().count() != order {
                return Err(Error::NotSquare { rows: order, row, len: r.chars().count() });
            }
            for (position, c) in r.chars().enumerate() {
                data.push(match c {
                    '+' => 1,
                    '-' => -1,
                    '0' if allow_zero => 0,
                    value => return Err(Error::InvalidEntry { position, value }),
                });
            }
        }
        Ok(SignMatrix { order, data })
    }

    pub fn to_rows(&self) -> Vec<String> {
        (0..self.order)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|&v| match v {
                        1 => '+',
                        -1 => '-',
                        _ => '0',
                    })
                    .collect()
            })
            .collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.data[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.data[i * self.order..(i + 1) * self.order]
    }

    pub fn is_pm(&self) -> bool {
        self.data.iter().all(|&v| v == 1 || v == -1)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self.get(j, i))
    }

    pub fn negate(&self) -> Self {
        SignMatrix { order: self.order, data: self.data.iter().map(|v| -v).collect() }
    }

    /// Integer product; entries may leave {-1,0,1}, hence the wide return type.
    pub fn mul(&self, other: &SignMatrix) -> Vec<Vec<i64>> {
        let n = self.order;
        (0..n)
            .map(|i| {
                (0..n).map(|j| (0..n).map(|k| i64::from(self.get(i, k)) * i64::from(other.get(k, j))).sum()).collect()
            })
            .collect()
    }

    pub fn to_pm(&self) -> Result<PMMatrix> {
        if !self.is_pm() {
            return Err(Error::InvalidInput("matrix has zero entries".into()));
        }
        Ok(PMMatrix::from_fn(self.order, |i, j| self.get(i, j)))
    }
}

/// Square {+1,-1} matrix, one bit per entry (set bit = -1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PMMatrix {
    order: usize,
    words: usize,
    bits: Vec<u64>,
}

impl PMMatrix {
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> i8 + Sync) -> Self {
        Self::from_row_fn(order, |i, row| {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = f(i, j);
            }
        })
    }

    /// Builds each row from a callback that fills a scratch buffer of signs.
    pub fn from_row_fn(order: usize, fill: impl Fn(usize, &mut [i8]) + Sync) -> Self {
        let words = order.div_ceil(64);
        let mut bits = vec![0u64; order * words];
        if words > 0 {
            bits.par_chunks_mut(words).enumerate().for_each_init(
                || vec![0i8; order],
                |scratch, (i, out)| {
                    fill(i, scratch);
                    for (j, &v) in scratch.iter().enumerate() {
                        if v < 0 {
                            out[j / 64] |= 1 << (j % 64);
                        }
                    }
                },
            );
        }
        PMMatrix { order, words, bits }
    }

    pub fn from_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let m = SignMatrix::from_rows(rows, false)?;
        m.to_pm()
    }

    pub fn to_rows(&self) -> Vec<String> {
        (0..self.order).map(|i| (0..self.order).map(|j| if self.get(i, j) > 0 { '+' } else { '-' }).collect()).collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        if self.row_bits(i)[j / 64] >> (j % 64) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    fn row_bits(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    /// Inner product of rows `i` and `j`.
    pub fn dot(&self, i: usize, j: usize) -> i64 {
        let diff: u32 = self.row_bits(i).iter().zip(self.row_bits(j)).map(|(a, b)| (a ^ b).count_ones()).sum();
        self.order as i64 - 2 * i64::from(diff)
    }

    /// Order-independent digest of the entries, used to pin golden outputs.
    pub fn fingerprint(&self) -> u64 {
        // FNV-1a over the packed words.
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for w in &self.bits {
            for byte in w.to_le_bytes() {
                h ^= u64::from(byte);
                h = h.wrapping_mul(0x100_0000_01b3);
            }
        }
        h ^ self.order as u64
    }
}

/// Exact check of `H H^T = m I`.
pub fn verify_hadamard(h: &PMMatrix) -> bool {
    let m = h.order;
    (0..m).into_par_iter().all(|i| ((i + 1)..m).all(|j| h.dot(i, j) == 0))
}

/// Checks `pairs` random pairs of distinct rows, chosen by a seeded generator.
pub fn verify_hadamard_sampled(h: &PMMatrix, pairs: usize, seed: u64) -> bool {
    let m = h.order;
    if m < 2 {
        return true;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks: Vec<(usize, usize)> = (0..pairs)
        .map(|_| {
            let i = rng.gen_range(0..m);
            let mut j = rng.gen_range(0..m - 1);
            if j >= i {
                j += 1;
            }
            (i, j)
        })
        .collect();
    picks.par_iter().all(|&(i, j)| h.dot(i, j) == 0)
}

/// Four {+1,-1} matrices of a common order `w`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixQuad {
    pub w: [SignMatrix; 4],
}

impl MatrixQuad {
    pub fn new(w: [SignMatrix; 4]) -> Result<Self> {
        let n = w[0].order();
        if let Some(bad) = w.iter().find(|m| m.order() != n) {
            return Err(Error::OrderMismatch { expected: n, found: bad.order() });
        }
        if w.iter().any(|m| !m.is_pm()) {
            return Err(Error::InvalidInput("matrix has zero entries".into()));
        }
        Ok(MatrixQuad { w })
    }

    pub fn order(&self) -> usize {
        self.w[0].order()
    }

    /// The quadruple `(1,1,1,1)` of order 1.
    pub fn unit() -> Self {
        let one = SignMatrix::from_fn(1, |_, _| 1);
        MatrixQuad { w: [one.clone(), one.clone(), one.clone(), one] }
    }
}

/// Pairwise amicability plus `sum_k W_k W_k^T = 4w I`.
pub fn verify_wt(q: &MatrixQuad) -> bool {
    let n = q.order();
    if q.w.iter().any(|m| m.order() != n || !m.is_pm()) {
        return false;
    }
    let packed: Vec<PMMatrix> = q.w.iter().map(|m| PMMatrix::from_fn(n, |i, j| m.get(i, j))).collect();
    let cross = |x: &PMMatrix, y: &PMMatrix, a: usize, b: usize| -> i64 {
        let diff: u32 = x.row_bits(a).iter().zip(y.row_bits(b)).map(|(p, q)| (p ^ q).count_ones()).sum();
        n as i64 - 2 * i64::from(diff)
    };
    (0..n).into_par_iter().all(|a| {
        (0..n).all(|b| {
            let gram: i64 = packed.iter().map(|m| cross(m, m, a, b)).sum();
            let want = if a == b { 4 * n as i64 } else { 0 };
            gram == want
                && (0..4).all(|i| {
                    ((i + 1)..4).all(|j| cross(&packed[i], &packed[j], a, b) == cross(&packed[j], &packed[i], a, b))
                })
        })
    })
}
