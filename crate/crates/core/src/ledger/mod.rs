//! Existence facts with provenance and the decomposition `n = y h (r+s) w`.

mod kb;
mod reports;

pub use kb::{is_prime_power, BsRules, GolayRule, HFact, KnowledgeBase, LengthFact, SpecialFact, WtFact, WtRule};
pub use reports::{
    check_row, classify_range, decompose, delta_report, extra_cases_report, load_delta, load_table1, table1_verify,
    Baseline, BaselineEntry, DeltaEntry, DeltaReport, ExtraEntry, ExtraReport, LedgerEntry, RangeReport, RowCheck,
    Status, Table1Group, Table1Report, Table1Row,
};
