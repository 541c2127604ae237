use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::objects::{verify_wt, MatrixQuad, SignMatrix};

/// Largest order [`search_williamson`] accepts.
pub const WILLIAMSON_BOUND: usize = 13;

/// First rows of the symmetric circulants of odd order `w` with first entry `+`.
pub fn symmetric_circulants(w: usize) -> Vec<Vec<i8>> {
    let half = w / 2;
    (0u32..1 << half)
        .map(|bits| {
            let mut row = vec![1i8; w];
            for i in 1..=half {
                if bits >> (i - 1) & 1 == 1 {
                    row[i] = -1;
                    row[w - i] = -1;
                }
            }
            row
        })
        .collect()
}

fn paf(row: &[i8], j: usize) -> i32 {
    let w = row.len();
    (0..w).map(|i| i32::from(row[i] * row[(i + j) % w])).sum()
}

fn circ(row: &[i8]) -> SignMatrix {
    let w = row.len();
    SignMatrix::from_fn(w, |i, j| row[(j + w - i) % w])
}

/// All ordered quadruples of symmetric circulants (first entries `+`)
/// forming Williamson matrices of odd order `w`.
pub fn search_williamson(w: usize) -> Result<Vec<MatrixQuad>> {
    if w.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("order {w} is even")));
    }
    if w > WILLIAMSON_BOUND {
        return Err(Error::BoundExceeded { what: "williamson order", value: w, limit: WILLIAMSON_BOUND });
    }
    let rows = symmetric_circulants(w);
    let shifts = 1..=w / 2;
    let profiles: Vec<Vec<i32>> = rows.iter().map(|r| shifts.clone().map(|j| paf(r, j)).collect()).collect();
    let n = rows.len();
    let mut by_sum: HashMap<Vec<i32>, Vec<(usize, usize)>> = HashMap::new();
    for a in 0..n {
        for b in 0..n {
            let s: Vec<i32> = profiles[a].iter().zip(&profiles[b]).map(|(x, y)| x + y).collect();
            by_sum.entry(s).or_default().push((a, b));
        }
    }
    let mut found = Vec::new();
    for c in 0..n {
        for d in 0..n {
            let want: Vec<i32> = profiles[c].iter().zip(&profiles[d]).map(|(x, y)| -(x + y)).collect();
            if let Some(pairs) = by_sum.get(&want) {
                found.extend(pairs.iter().map(|&(a, b)| [a, b, c, d]));
            }
        }
    }
    found.sort_unstable();
    found
        .into_iter()
        .map(|idx| {
            let q = MatrixQuad::new(idx.map(|i| circ(&rows[i])))?;
            if !verify_wt(&q) {
                return Err(Error::VerificationFailed(format!("Williamson candidate {idx:?}")));
            }
            Ok(q)
        })
        .collect()
}
