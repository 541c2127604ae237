//! Ledger reports against the shipped data and a data directory.

use std::path::PathBuf;

use hforge_core::ledger::{delta_report, load_delta, load_table1, table1_verify, KnowledgeBase};
use hforge_core::{DataSource, Error};

fn shipped_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

#[test]
fn directory_copy_matches_embedded() {
    let dir = DataSource::dir(shipped_dir());
    let emb = DataSource::embedded();
    assert_eq!(load_delta(&dir).unwrap(), load_delta(&emb).unwrap());
    assert_eq!(load_table1(&dir).unwrap(), load_table1(&emb).unwrap());
    assert_eq!(KnowledgeBase::load(&dir).unwrap(), KnowledgeBase::shipped());
}

#[test]
fn delta_values_are_sorted_odd_and_unique() {
    let d = load_delta(&DataSource::embedded()).unwrap();
    assert_eq!(d.len(), 138);
    assert!(d.windows(2).all(|w| w[0] < w[1]));
    assert!(d.iter().all(|n| n % 2 == 1));
}

#[test]
fn explicit_facts_alone_leave_gaps() {
    let kb = KnowledgeBase::shipped().without_wt_rules();
    let rep = delta_report(&kb, &DataSource::embedded()).unwrap();
    assert_eq!(rep.good, 39);
    assert_eq!(rep.missing.len(), 99);
}

#[test]
fn every_table_row_is_its_own_witness() {
    let kb = KnowledgeBase::shipped();
    let rep = table1_verify(&kb, &DataSource::embedded()).unwrap();
    assert!(rep.all_pass());
    for g in &rep.groups {
        let tuples = hforge_core::ledger::decompose(g.n, &kb);
        for c in &g.rows {
            assert!(tuples.contains(&c.row.params()), "{}", c.row.n);
        }
    }
}

#[test]
fn edited_table_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["delta.json", "kb.json"] {
        std::fs::copy(shipped_dir().join(f), dir.path().join(f)).unwrap();
    }
    std::fs::write(dir.path().join("table1.json"), r#"{"rows":[{"n":2773,"y":59,"h":1,"r":24,"s":22,"w":1}]}"#)
        .unwrap();
    let src = DataSource::dir(dir.path());
    let rep = table1_verify(&KnowledgeBase::load(&src).unwrap(), &src).unwrap();
    assert!(!rep.all_pass());
    assert!(!rep.groups[0].rows[0].product);
    std::fs::remove_file(dir.path().join("delta.json")).unwrap();
    assert!(matches!(delta_report(&KnowledgeBase::shipped(), &src), Err(Error::MissingData(_))));
}
