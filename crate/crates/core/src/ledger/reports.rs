use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::kb::KnowledgeBase;
use crate::data::{DataSource, DELTA_FILE, TABLE1_FILE};
use crate::error::{Error, Result};
use crate::plugin::ParamTuple;

fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All `(y, h, (r,s), w)` with `n = y h (r+s) w` whose four ingredients
/// exist according to `kb`, in lexicographic order.
pub fn decompose(n: u64, kb: &KnowledgeBase) -> Vec<ParamTuple> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for y in divisors(n) {
        if !kb.is_yang_number(y) {
            continue;
        }
        let hs: BTreeSet<u64> = kb.bhw.iter().map(|f| f.h).collect();
        for h in hs {
            if !(n / y).is_multiple_of(h) {
                continue;
            }
            let rest = n / y / h;
            for t in divisors(rest) {
                let w = rest / t;
                if !kb.wt_exists(w) {
                    continue;
                }
                for r in t.div_ceil(2)..=t {
                    let s = t - r;
                    if kb.bs_exists(r, s) {
                        let p = ParamTuple::new(y, h, r, s, w);
                        assert_eq!(p.n(), n, "decomposition identity");
                        out.push(p);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

#[derive(Clone, Debug, Deserialize)]
struct DeltaFile {
    values: Vec<u64>,
}

pub fn load_delta(src: &DataSource) -> Result<Vec<u64>> {
    Ok(serde_json::from_str::<DeltaFile>(&src.shipped(DELTA_FILE)?)?.values)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaEntry {
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ParamTuple>,
    pub choices: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaReport {
    pub total: usize,
    pub good: usize,
    pub missing: Vec<u64>,
    pub entries: Vec<DeltaEntry>,
}

impl DeltaReport {
    pub fn all_good(&self) -> bool {
        self.missing.is_empty()
    }
}

/// A witness tuple for every value of the Δ data file, or a list of values without one.
pub fn delta_report(kb: &KnowledgeBase, src: &DataSource) -> Result<DeltaReport> {
    let values = load_delta(src)?;
    let entries: Vec<DeltaEntry> = values
        .par_iter()
        .map(|&n| {
            let all = decompose(n, kb);
            DeltaEntry { n, witness: all.first().copied(), choices: all.len() }
        })
        .collect();
    let missing: Vec<u64> = entries.iter().filter(|e| e.witness.is_none()).map(|e| e.n).collect();
    Ok(DeltaReport { total: entries.len(), good: entries.len() - missing.len(), missing, entries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Row {
    pub n: u64,
    pub y: u64,
    pub h: u64,
    pub r: u64,
    pub s: u64,
    pub w: u64,
}

impl Table1Row {
    pub fn params(&self) -> ParamTuple {
        ParamTuple::new(self.y, self.h, self.r, self.s, self.w)
    }
}

#[derive(Clone, Debug, Deserialize)]
struct Table1File {
    rows: Vec<Table1Row>,
}

pub fn load_table1(src: &DataSource) -> Result<Vec<Table1Row>> {
    Ok(serde_json::from_str::<Table1File>(&src.shipped(TABLE1_FILE)?)?.rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCheck {
    pub row: Table1Row,
    pub product: bool,
    pub yang: Option<String>,
    pub bhw: Option<String>,
    pub bs: Option<String>,
    pub wt: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Group {
    pub n: u64,
    pub rows: Vec<RowCheck>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Report {
    pub total: usize,
    pub passed: usize,
    pub groups: Vec<Table1Group>,
}

impl Table1Report {
    pub fn all_pass(&self) -> bool {
        self.total == self.passed
    }
}

pub fn check_row(row: &Table1Row, kb: &KnowledgeBase) -> RowCheck {
    let product = row.params().n() == row.n;
    let yang = kb.yang_reason(row.y);
    let bhw = kb.bhw_reason(row.h);
    let bs = kb.bs_reason(row.r, row.s);
    let wt = kb.wt_reason(row.w);
    let pass = product && yang.is_some() && bhw.is_some() && bs.is_some() && wt.is_some();
    RowCheck { row: *row, product, yang, bhw, bs, wt, pass }
}

/// Checks every row of the Table 1 data file, grouped by `n` in file order.
pub fn table1_verify(kb: &KnowledgeBase, src: &DataSource) -> Result<Table1Report> {
    let rows = load_table1(src)?;
    if rows.is_empty() {
        return Err(Error::DataMismatch("table has no rows".into()));
    }
    let mut groups: Vec<Table1Group> = Vec::new();
    for row in &rows {
        let check = check_row(row, kb);
        match groups.iter_mut().find(|g| g.n == row.n) {
            Some(g) => g.rows.push(check),
            None => groups.push(Table1Group { n: row.n, rows: vec![check] }),
        }
    }
    let passed = groups.iter().flat_map(|g| &g.rows).filter(|c| c.pass).count();
    Ok(Table1Report { total: rows.len(), passed, groups })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraEntry {
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<ParamTuple>,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub special: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtraReport {
    pub entries: Vec<ExtraEntry>,
}

impl ExtraReport {
    pub fn all_found(&self) -> bool {
        self.entries.iter().all(|e| e.found)
    }
}

/// The four further cases: three through BS(37,36) and one special fact.
pub fn extra_cases_report(kb: &KnowledgeBase) -> ExtraReport {
    let mut entries = Vec::new();
    let special = kb.special(191).map(|f| f.prov.clone());
    entries.push(ExtraEntry { n: 191, expected: None, found: special.is_some(), special });
    for w in [79, 97, 113] {
        let p = ParamTuple::new(1, 1, 37, 36, w);
        let n = p.n();
        let found = decompose(n, kb).contains(&p);
        entries.push(ExtraEntry { n, expected: Some(p), found, special: None });
    }
    ExtraReport { entries }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Good,
    Bad,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerEntry {
    pub n: u64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u8>,
    pub witnesses: Vec<ParamTuple>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub special: Option<String>,
}

/// One bad case of an external table, optionally with its exponent `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaselineEntry {
    Plain(u64),
    WithExponent { n: u64, t: u8 },
}

impl BaselineEntry {
    pub fn n(&self) -> u64 {
        match *self {
            BaselineEntry::Plain(n) | BaselineEntry::WithExponent { n, .. } => n,
        }
    }

    pub fn exponent(&self) -> Option<u8> {
        match *self {
            BaselineEntry::Plain(_) => None,
            BaselineEntry::WithExponent { t, .. } => Some(t),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Baseline {
    pub bad: Vec<BaselineEntry>,
}

impl Baseline {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        Ok(serde_json::from_str(&crate::objects::read(path)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RangeReport {
    pub max_n: u64,
    pub good: usize,
    pub bad: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub baseline_bad: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eliminated: Option<usize>,
    pub entries: Vec<LedgerEntry>,
}

/// Good/bad status of every odd `n <= max_n`.
pub fn classify_range(max_n: u64, kb: &KnowledgeBase, baseline: Option<&Baseline>) -> RangeReport {
    let odds: Vec<u64> = (1..=max_n).step_by(2).collect();
    let entries: Vec<LedgerEntry> = odds
        .par_iter()
        .map(|&n| {
            let witnesses = decompose(n, kb);
            let special = kb.special(n).map(|f| f.prov.clone());
            let status = if witnesses.is_empty() && special.is_none() { Status::Bad } else { Status::Good };
            let exponent = baseline.and_then(|b| b.bad.iter().find(|e| e.n() == n)).and_then(|e| e.exponent());
            LedgerEntry { n, status, exponent, witnesses, special }
        })
        .collect();
    let good = entries.iter().filter(|e| e.status == Status::Good).count();
    let (baseline_bad, eliminated) = match baseline {
        Some(b) => {
            let listed: BTreeSet<u64> = b.bad.iter().map(BaselineEntry::n).filter(|&n| n <= max_n).collect();
            let gone = entries.iter().filter(|e| e.status == Status::Good && listed.contains(&e.n)).count();
            (Some(listed.len()), Some(gone))
        }
        None => (None, None),
    };
    RangeReport { max_n, good, bad: entries.len() - good, baseline_bad, eliminated, entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kb() -> KnowledgeBase {
        KnowledgeBase::shipped()
    }

    #[test]
    fn divisor_order() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn table_rows_appear_in_decompositions() {
        let kb = kb();
        assert!(decompose(2773, &kb).contains(&ParamTuple::new(59, 1, 24, 23, 1)));
        assert!(decompose(4453, &kb).contains(&ParamTuple::new(1, 1, 31, 30, 73)));
        let d = decompose(9065, &kb);
        assert!(d.contains(&ParamTuple::new(49, 5, 19, 18, 1)));
        assert!(d.contains(&ParamTuple::new(37, 1, 25, 24, 5)));
    }

    #[test]
    fn decompositions_are_sorted_and_exact() {
        let kb = kb();
        for n in [45, 4389, 9065] {
            let d = decompose(n, &kb);
            assert!(d.windows(2).all(|w| w[0] < w[1]));
            assert!(d.iter().all(|p| p.n() == n));
        }
        assert!(!decompose(45, &kb).is_empty());
    }

    #[test]
    fn enlarging_the_kb_keeps_tuples() {
        let small = kb().without_wt_rules();
        let big = kb();
        for n in (1..400).step_by(2) {
            let d_small = decompose(n, &small);
            let d_big = decompose(n, &big);
            assert!(d_small.iter().all(|p| d_big.contains(p)), "n = {n}");
        }
    }

    #[test]
    fn extras() {
        let rep = extra_cases_report(&kb());
        assert!(rep.all_found());
        assert_eq!(rep.entries[0].special.as_deref(), Some("external construction of HM(764)"));
        let ns: Vec<u64> = rep.entries.iter().map(|e| e.n).collect();
        assert_eq!(ns, vec![191, 5767, 7081, 8249]);
    }

    #[test]
    fn range_with_baseline() {
        let kb = kb();
        let b = Baseline { bad: vec![BaselineEntry::WithExponent { n: 191, t: 3 }, BaselineEntry::Plain(45)] };
        let rep = classify_range(201, &kb, Some(&b));
        assert_eq!(rep.eliminated, Some(2));
        assert_eq!(rep.entries[0].status, Status::Good);
        let e191 = rep.entries.iter().find(|e| e.n == 191).unwrap();
        assert_eq!(e191.exponent, Some(3));
        assert_eq!(e191.status, Status::Good);
    }
}
