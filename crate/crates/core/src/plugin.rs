//! T-sequences into orthogonal designs, designs into Hadamard matrices,
//! and the end-to-end pipeline for a parameter tuple `(y, h, (r,s), w)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::constructions::base_to_t;
use crate::error::{Error, Result};
use crate::objects::{
    verify_bhw, verify_hadamard, verify_hadamard_sampled, verify_od, verify_t, verify_wt, FormalArray, MatrixQuad,
    Monomial, PMMatrix, SignMatrix, TQuad,
};
use crate::seqcore::{Sequence, TernarySeq};
use crate::witness::Witnesses;
use crate::yang::{yang_multiply, YangInput};

/// Circulant matrix whose first row is `x`.
pub fn circulant(x: &TernarySeq) -> SignMatrix {
    let t = x.len();
    let e = x.entries();
    SignMatrix::from_fn(t, |i, j| e[(j + t - i) % t])
}

/// Back-diagonal identity `R` of order `t`.
pub fn back_identity(t: usize) -> SignMatrix {
    SignMatrix::from_fn(t, |i, j| i8::from(i + j + 1 == t))
}

const GS_ROWS: [[&str; 4]; 4] = [
    ["+x1", "+x2R", "+x3R", "+x4R"],
    ["-x2R", "+x1", "+x4'R", "-x3'R"],
    ["-x3R", "-x4'R", "+x1", "+x2'R"],
    ["-x4R", "+x3'R", "-x2'R", "+x1"],
];

/// The order-4 array into which four circulant blocks are plugged.
pub fn gs_template() -> FormalArray {
    let rows: Vec<Vec<&str>> = GS_ROWS.iter().map(|r| r.to_vec()).collect();
    FormalArray::from_rows(&rows).expect("built-in template parses")
}

/// For block variable `k` (row) and T-sequence `m` (column): the sign and
/// variable that `X_m = circ(T_m)` carries inside the block.
/// Block k is `sum_m sign * x_var * X_m`.
const BLOCK_VARS: [[(i8, u8); 4]; 4] = [
    [(1, 1), (1, 2), (1, 3), (1, 4)],
    [(-1, 2), (1, 1), (1, 4), (-1, 3)],
    [(-1, 3), (-1, 4), (1, 1), (1, 2)],
    [(-1, 4), (1, 3), (-1, 2), (1, 1)],
];

/// Substitution of circulant blocks built from a T-quadruple into a
/// marked array, entry by entry.
#[derive(Clone, Debug)]
pub struct BlockSubstitution {
    t: usize,
    owner: Vec<(usize, i8)>,
}

impl BlockSubstitution {
    /// `ts` must have disjoint full support; callers verify it first.
    pub fn new(ts: &TQuad) -> Result<Self> {
        let t = ts.len();
        let owner = (0..t)
            .map(|p| ts.owner(p).ok_or_else(|| Error::InvalidInput(format!("T-sequences vanish at {p}"))))
            .collect::<Result<_>>()?;
        Ok(BlockSubstitution { t, owner })
    }

    pub fn block_len(&self) -> usize {
        self.t
    }

    /// Entry `(i, j)` of the block `sign * M_k^tau R^rho` named by `m`.
    pub fn entry(&self, m: &Monomial, i: usize, j: usize) -> Monomial {
        let t = self.t;
        let j = if m.backflip { t - 1 - j } else { j };
        let (a, b) = if m.transposed { (j, i) } else { (i, j) };
        let (src, v) = self.owner[(b + t - a) % t];
        let (sign, var) = BLOCK_VARS[usize::from(m.var - 1)][src];
        Monomial::plain(m.sign * v * sign, var)
    }

    /// Entry `(row, col)` of the full substituted array.
    pub fn array_entry(&self, bhw: &FormalArray, row: usize, col: usize) -> Option<Monomial> {
        let t = self.t;
        bhw.get(row / t, col / t).map(|m| self.entry(&m, row % t, col % t))
    }
}

/// Substitutes the blocks into `bhw` without checking either input.
pub fn substitute(bhw: &FormalArray, ts: &TQuad) -> Result<FormalArray> {
    let sub = BlockSubstitution::new(ts)?;
    let n = bhw.order() * ts.len();
    Ok(FormalArray::from_fn(n, |i, j| sub.array_entry(bhw, i, j)))
}

fn require(ok: bool, what: String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidInput(what))
    }
}

/// OD(4ht) from an array of order 4h and T-sequences of length t.
pub fn od_from_bhw(bhw: &FormalArray, h: usize, ts: &TQuad) -> Result<FormalArray> {
    require(verify_bhw(bhw, h)?, format!("array of order {} fails the h = {h} check", bhw.order()))?;
    require(verify_t(ts), format!("not T-sequences: {ts}"))?;
    let od = substitute(bhw, ts)?;
    if !verify_od(&od, h * ts.len())? {
        return Err(Error::ConstructionFailedVerification(format!("OD({})", od.order())));
    }
    Ok(od)
}

/// OD(4t; t,t,t,t) via the built-in order-4 template.
pub fn od_from_ts(ts: &TQuad) -> Result<FormalArray> {
    od_from_bhw(&gs_template(), 1, ts)
}

/// How a Hadamard matrix is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum Check {
    Full,
    Sampled { pairs: usize, seed: u64 },
}

impl Check {
    pub const FULL_LIMIT: usize = 2000;
    pub const DEFAULT_PAIRS: usize = 10_000;
    pub const DEFAULT_SEED: u64 = 0x4841_444d;

    /// Full up to order 2000, sampled above.
    pub fn auto(order: usize, pairs: usize) -> Check {
        if order <= Self::FULL_LIMIT {
            Check::Full
        } else {
            Check::Sampled { pairs, seed: Self::DEFAULT_SEED }
        }
    }

    pub fn run(&self, h: &PMMatrix) -> bool {
        match *self {
            Check::Full => verify_hadamard(h),
            Check::Sampled { pairs, seed } => verify_hadamard_sampled(h, pairs, seed),
        }
    }
}

fn expand(order: usize, wt: &MatrixQuad, entry: impl Fn(usize, usize) -> Option<Monomial> + Sync) -> Result<PMMatrix> {
    let w = wt.order();
    let fill = |row: usize, out: &mut [i8]| {
        let (ro, a) = (row / w, row % w);
        for co in 0..order {
            let e = entry(ro, co).expect("design entries are nonzero");
            let src = wt.w[usize::from(e.var - 1)].row(a);
            for (slot, &v) in out[co * w..(co + 1) * w].iter_mut().zip(src) {
                *slot = e.sign * v;
            }
        }
    };
    Ok(PMMatrix::from_row_fn(order * w, fill))
}

/// Replaces every `±x_k` of the design by the block `±W_k`.
pub fn hm_from_od_wt(od: &FormalArray, weight: usize, wt: &MatrixQuad, check: Check) -> Result<PMMatrix> {
    require(verify_od(od, weight)?, format!("OD({}) fails the weight {weight} check", od.order()))?;
    require(od.entries().iter().all(Option::is_some), "design has zero entries".into())?;
    require(verify_wt(wt), format!("WT({}) fails the check", wt.order()))?;
    let hm = expand(od.order(), wt, |i, j| od.get(i, j))?;
    if !check.run(&hm) {
        return Err(Error::ConstructionFailedVerification(format!("HM({})", hm.order())));
    }
    Ok(hm)
}

/// `(y, h, (r,s), w)` with `n = y h (r+s) w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParamTuple {
    pub y: u64,
    pub h: u64,
    pub r: u64,
    pub s: u64,
    pub w: u64,
}

impl ParamTuple {
    pub fn new(y: u64, h: u64, r: u64, s: u64, w: u64) -> Self {
        ParamTuple { y, h, r, s, w }
    }

    pub fn n(&self) -> u64 {
        self.y * self.h * (self.r + self.s) * self.w
    }
}

impl fmt::Display for ParamTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, ({},{}), {})", self.y, self.h, self.r, self.s, self.w)
    }
}

/// Settings for [`pipeline`].
#[derive(Clone, Debug)]
pub struct PipelineConfig {
    /// Row pairs checked when the matrix is too large for a full check.
    pub sample_pairs: usize,
    /// Always run the full check, whatever the order.
    pub force_full: bool,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { sample_pairs: Check::DEFAULT_PAIRS, force_full: false }
    }
}

#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub params: ParamTuple,
    pub hm: PMMatrix,
    pub check: Check,
    /// Whether the orthogonal design was materialized and checked symbolically.
    pub od_checked: bool,
}

fn as_usize(v: u64) -> usize {
    usize::try_from(v).expect("parameter fits in usize")
}

/// T-sequences of length `y (r+s)` for the tuple.
pub fn t_sequences(p: &ParamTuple, wit: &Witnesses) -> Result<TQuad> {
    let bs = wit.base(as_usize(p.r), as_usize(p.s))?;
    if p.y == 1 {
        return base_to_t(&bs);
    }
    if p.y.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("y = {} is even", p.y)));
    }
    let l = as_usize((p.y - 1) / 2);
    let seq = wit.yang_seed(l)?;
    yang_multiply(&YangInput { seq, bs }).map_err(|e| match e {
        Error::NotImplementedForKind(kind) => {
            Error::NoConstructiveWitness(format!("TS({}) via {kind} sequences of length {l}", p.y * (p.r + p.s)))
        }
        other => other,
    })
}

/// Builds and checks HM(4n) for `n = y h (r+s) w`.
///
/// The design is materialized and checked symbolically when its order is
/// at most 2000; otherwise its entries are generated on the fly from the
/// already-checked array, T-sequences and Williamson-type matrices.
pub fn pipeline(p: &ParamTuple, wit: &Witnesses, cfg: &PipelineConfig) -> Result<PipelineOutput> {
    let h = as_usize(p.h);
    let ts = t_sequences(p, wit)?;
    let bhw = wit.bhw(h)?;
    let wt = wit.wt(as_usize(p.w))?;
    let od_order = 4 * h * ts.len();
    let order = od_order * wt.order();
    let check = if cfg.force_full { Check::Full } else { Check::auto(order, cfg.sample_pairs) };
    let (hm, od_checked) = if od_order <= Check::FULL_LIMIT {
        let od = od_from_bhw(&bhw, h, &ts)?;
        (hm_from_od_wt(&od, h * ts.len(), &wt, check)?, true)
    } else {
        require(verify_bhw(&bhw, h)?, format!("array for h = {h} fails the check"))?;
        require(verify_t(&ts), "T-sequences fail the check".into())?;
        require(verify_wt(&wt), format!("WT({}) fails the check", wt.order()))?;
        let sub = BlockSubstitution::new(&ts)?;
        let hm = expand(od_order, &wt, |i, j| sub.array_entry(&bhw, i, j))?;
        if !check.run(&hm) {
            return Err(Error::ConstructionFailedVerification(format!("HM({order})")));
        }
        (hm, false)
    };
    debug_assert_eq!(hm.order() as u64, 4 * p.n());
    Ok(PipelineOutput { params: *p, hm, check, od_checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::golay_to_normal;
    use crate::objects::{BaseQuad, GolayPair};

    fn t(s: &str) -> TernarySeq {
        s.parse().unwrap()
    }

    fn ts(parts: [&str; 4]) -> TQuad {
        TQuad::new(parts.map(t)).unwrap()
    }

    fn ts3() -> TQuad {
        ts(["+00", "0+0", "00+", "000"])
    }

    #[test]
    fn circulant_and_flip() {
        let c = circulant(&t("+0-"));
        assert_eq!(c.row(1), &[-1, 1, 0]);
        assert_eq!(back_identity(2).to_rows(), vec!["0+", "+0"]);
        for n in 1..=8 {
            let r = back_identity(n);
            let rr = r.mul(&r);
            for (i, row) in rr.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    assert_eq!(v, i64::from(i == j));
                }
            }
        }
    }

    #[test]
    fn template_passes_bhw_check() {
        assert!(verify_bhw(&gs_template(), 1).unwrap());
    }

    #[test]
    fn designs_from_small_t_sequences() {
        let od1 = od_from_ts(&ts(["+", "0", "0", "0"])).unwrap();
        assert_eq!(od1.order(), 4);
        assert!(verify_od(&od1, 1).unwrap());
        let od3 = od_from_ts(&ts3()).unwrap();
        assert_eq!(od3.order(), 12);
        assert!(verify_od(&od3, 3).unwrap());
        assert_eq!(od_from_bhw(&gs_template(), 1, &ts3()).unwrap(), od3);
    }

    #[test]
    fn invalid_t_sequences_rejected() {
        assert!(od_from_ts(&ts(["+0", "+0", "0+", "00"])).is_err());
    }

    #[test]
    fn single_sign_flips_in_template_are_caught() {
        let base = gs_template();
        let ts = ts3();
        for i in 0..4 {
            for j in 0..4 {
                let mut bad = base.clone();
                bad.set(i, j, bad.get(i, j).map(Monomial::negated));
                assert!(!verify_bhw(&bad, 1).unwrap());
                let od = substitute(&bad, &ts).unwrap();
                assert!(!verify_od(&od, 3).unwrap(), "flip at ({i},{j}) undetected");
            }
        }
    }

    #[test]
    fn hadamard_from_designs() {
        let wt1 = MatrixQuad::unit();
        let od4 = od_from_ts(&ts(["+", "0", "0", "0"])).unwrap();
        assert_eq!(hm_from_od_wt(&od4, 1, &wt1, Check::Full).unwrap().order(), 4);
        let od12 = od_from_ts(&ts3()).unwrap();
        assert_eq!(hm_from_od_wt(&od12, 3, &wt1, Check::Full).unwrap().order(), 12);
        let j = circulant(&t("+++"));
        let p = circulant(&t("+--"));
        let wt3 = MatrixQuad::new([j, p.clone(), p.clone(), p]).unwrap();
        assert_eq!(hm_from_od_wt(&od12, 3, &wt3, Check::Full).unwrap().order(), 36);
    }

    #[test]
    fn unit_blocks_reproduce_the_design() {
        let od = od_from_ts(&ts3()).unwrap();
        let hm = hm_from_od_wt(&od, 3, &MatrixQuad::unit(), Check::Full).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                assert_eq!(hm.get(i, j), od.get(i, j).unwrap().sign);
            }
        }
    }

    #[test]
    fn streamed_entries_match_materialized_design() {
        let bs = golay_to_normal(&GolayPair::new("++".parse().unwrap(), "+-".parse().unwrap()).unwrap()).unwrap();
        let bs = BaseQuad { kind: Default::default(), ..bs };
        let ts = base_to_t(&bs).unwrap();
        let od = od_from_ts(&ts).unwrap();
        let sub = BlockSubstitution::new(&ts).unwrap();
        let template = gs_template();
        for i in 0..od.order() {
            for j in 0..od.order() {
                assert_eq!(sub.array_entry(&template, i, j), od.get(i, j));
            }
        }
    }

    #[test]
    fn check_mode_threshold() {
        assert_eq!(Check::auto(2000, 5), Check::Full);
        assert!(matches!(Check::auto(2004, 5), Check::Sampled { pairs: 5, .. }));
    }
}
