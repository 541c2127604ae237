//! Unpruned reference counts and a T-sequence existence oracle.

use crate::error::{Error, Result};
use crate::objects::{verify_base, verify_near_normal, verify_normal, verify_t, BaseQuad, QuadKind, TQuad};
use crate::seqcore::{BinarySeq, Sequence, TernarySeq};

fn seq_from_bits(bits: u64, lo: usize, len: usize) -> BinarySeq {
    BinarySeq::from_bits(bits >> lo, len)
}

/// Number of BS(r,s) found by testing all `2^(2r+2s)` quadruples.
pub fn brute_base(r: usize, s: usize) -> u64 {
    let n = 2 * r + 2 * s;
    assert!(n < 40, "brute force over 2^{n} candidates");
    (0u64..1 << n)
        .filter(|&bits| {
            let q = BaseQuad {
                a: seq_from_bits(bits, 0, r),
                b: seq_from_bits(bits, r, r),
                c: seq_from_bits(bits, 2 * r, s),
                d: seq_from_bits(bits, 2 * r + s, s),
                kind: QuadKind::Plain,
            };
            verify_base(&q)
        })
        .count() as u64
}

/// Number of NS(n) or NN(n): every choice of A, the last entry of B, C
/// and D is built into a quad and passed to the full verifier.
pub fn brute_linked(kind: QuadKind, n: usize) -> u64 {
    let bits_total = 3 * n + 2;
    assert!(bits_total < 40, "brute force over 2^{bits_total} candidates");
    (0u64..1 << bits_total)
        .filter(|&bits| {
            let a = seq_from_bits(bits, 0, n + 1);
            let last = if bits >> (n + 1) & 1 == 1 { -1 } else { 1 };
            let mut b: Vec<i8> = a.entries().to_vec();
            for (i, v) in b.iter_mut().enumerate().take(n) {
                if kind == QuadKind::NearNormal && i % 2 == 1 {
                    *v = -*v;
                }
            }
            b[n] = last;
            let q = BaseQuad {
                a,
                b: BinarySeq::new(b).expect("binary"),
                c: seq_from_bits(bits, n + 2, n),
                d: seq_from_bits(bits, 2 * n + 2, n),
                kind,
            };
            match kind {
                QuadKind::Normal => verify_normal(&q).is_ok(),
                QuadKind::NearNormal => verify_near_normal(&q).is_ok(),
                QuadKind::Plain => verify_base(&q),
            }
        })
        .count() as u64
}

/// Largest length [`ts_oracle`] accepts.
pub const TS_ORACLE_BOUND: usize = 9;

struct TsSearch {
    t: usize,
    order: Vec<usize>,
    owner: Vec<Option<(usize, i8)>>,
    sums: Vec<i32>,
    fixed: Vec<i32>,
}

impl TsSearch {
    /// Assigns `p`; returns false when some shift can no longer reach zero.
    fn place(&mut self, p: usize, k: usize, sign: i8) -> bool {
        self.owner[p] = Some((k, sign));
        let mut ok = true;
        for q in 0..self.t {
            if q == p {
                continue;
            }
            if let Some((kq, sq)) = self.owner[q] {
                let j = p.abs_diff(q);
                self.fixed[j] += 1;
                if kq == k {
                    self.sums[j] += i32::from(sign * sq);
                }
                let open = (self.t - j) as i32 - self.fixed[j];
                ok &= self.sums[j].abs() <= open;
            }
        }
        ok
    }

    fn remove(&mut self, p: usize) {
        let (k, sign) = self.owner[p].take().expect("assigned");
        for q in 0..self.t {
            if let Some((kq, sq)) = self.owner[q] {
                let j = p.abs_diff(q);
                self.fixed[j] -= 1;
                if kq == k {
                    self.sums[j] -= i32::from(sign * sq);
                }
            }
        }
    }

    fn dfs(&mut self, depth: usize) -> bool {
        if depth == self.t {
            return true;
        }
        let p = self.order[depth];
        for k in 0..4 {
            for sign in [1i8, -1] {
                let ok = self.place(p, k, sign);
                if ok && self.dfs(depth + 1) {
                    return true;
                }
                self.remove(p);
            }
        }
        false
    }
}

/// Whether T-sequences of length `t` exist, with a witness. The first
/// position is fixed to `+` in the first sequence; permuting and negating
/// the four sequences makes this no loss.
pub fn ts_oracle(t: usize) -> Result<Option<TQuad>> {
    if t > TS_ORACLE_BOUND {
        return Err(Error::BoundExceeded { what: "T-sequence length", value: t, limit: TS_ORACLE_BOUND });
    }
    if t == 0 {
        return Ok(None);
    }
    let mut order = Vec::with_capacity(t);
    let (mut lo, mut hi) = (0, t - 1);
    while lo <= hi {
        order.push(lo);
        if hi != lo {
            order.push(hi);
        }
        lo += 1;
        if hi == 0 {
            break;
        }
        hi -= 1;
    }
    let mut s = TsSearch { t, order, owner: vec![None; t], sums: vec![0; t], fixed: vec![0; t] };
    s.place(0, 0, 1);
    if !s.dfs(1) {
        return Ok(None);
    }
    let parts: [TernarySeq; 4] = std::array::from_fn(|k| {
        TernarySeq::new(
            s.owner
                .iter()
                .map(|o| match o {
                    Some((kk, sign)) if *kk == k => *sign,
                    _ => 0,
                })
                .collect(),
        )
        .expect("ternary")
    });
    let q = TQuad::new(parts)?;
    if !verify_t(&q) {
        return Err(Error::VerificationFailed(format!("oracle produced {q}")));
    }
    Ok(Some(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_counts() {
        assert_eq!(brute_base(1, 0), 4);
        assert_eq!(brute_base(1, 1), 16);
        assert!(brute_base(2, 1) > 0);
        assert_eq!(brute_linked(QuadKind::NearNormal, 1), 0);
    }

    #[test]
    fn oracle_small_lengths() {
        assert!(ts_oracle(1).unwrap().is_some());
        let w = ts_oracle(3).unwrap().unwrap();
        assert_eq!(w.len(), 3);
        assert!(matches!(ts_oracle(10), Err(Error::BoundExceeded { .. })));
    }
}
