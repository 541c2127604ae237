//! End-to-end constructions through the public API.

use hforge_core::constructions::{base_to_t, golay_to_normal};
use hforge_core::ledger::{decompose, KnowledgeBase};
use hforge_core::objects::{verify_hadamard, verify_hadamard_sampled, verify_od, verify_t, GolayPair, PMMatrix};
use hforge_core::plugin::{hm_from_od_wt, od_from_ts, pipeline, t_sequences, Check, ParamTuple, PipelineConfig};
use hforge_core::search::{search_williamson, ts_oracle};
use hforge_core::{DataSource, Error, Witnesses};

fn full() -> PipelineConfig {
    PipelineConfig { force_full: true, ..PipelineConfig::default() }
}

#[test]
fn small_tuples_give_hadamard_matrices() {
    let wit = Witnesses::default();
    for (r, s, w) in
        [(1, 0, 1), (2, 1, 1), (3, 2, 1), (2, 1, 5), (4, 3, 3), (5, 4, 7), (8, 7, 1), (13, 13, 1), (14, 13, 3)]
    {
        let p = ParamTuple::new(1, 1, r, s, w);
        let out = pipeline(&p, &wit, &full()).unwrap_or_else(|e| panic!("{p}: {e}"));
        assert_eq!(out.hm.order() as u64, 4 * p.n());
        assert!(verify_hadamard(&out.hm), "{p}");
        assert!(out.od_checked);
    }
}

#[test]
fn large_order_is_streamed_and_sampled() {
    let wit = Witnesses::default();
    // T-sequences of length 513 make an array of order 2052, above the materialization limit.
    let p = ParamTuple::new(1, 1, 257, 256, 1);
    let out = pipeline(&p, &wit, &PipelineConfig::default()).unwrap();
    assert!(!out.od_checked);
    assert!(matches!(out.check, Check::Sampled { .. }));
    assert_eq!(out.hm.order(), 2052);
    assert!(verify_hadamard(&out.hm));
}

#[test]
fn corrupted_matrix_is_caught() {
    let out = pipeline(&ParamTuple::new(1, 1, 2, 1, 3), &Witnesses::default(), &full()).unwrap();
    let n = out.hm.order();
    for (i, j) in [(0, 0), (5, 17), (35, 35)] {
        let bad = PMMatrix::from_fn(n, |a, b| if (a, b) == (i, j) { -out.hm.get(a, b) } else { out.hm.get(a, b) });
        assert!(!verify_hadamard(&bad));
        assert!(!verify_hadamard_sampled(&bad, 100_000, 1));
    }
}

#[test]
fn oracle_sequences_plug_in() {
    for t in 1..=9 {
        let ts = ts_oracle(t).unwrap().unwrap();
        assert!(verify_t(&ts));
        let od = od_from_ts(&ts).unwrap();
        assert!(verify_od(&od, t).unwrap());
        let hm = hm_from_od_wt(&od, t, &hforge_core::objects::MatrixQuad::unit(), Check::Full).unwrap();
        assert_eq!(hm.order(), 4 * t);
    }
}

#[test]
fn williamson_orders_combine() {
    let od = od_from_ts(&ts_oracle(3).unwrap().unwrap()).unwrap();
    for w in [3, 5, 7, 9] {
        let wt = search_williamson(w).unwrap().into_iter().next().unwrap();
        let hm = hm_from_od_wt(&od, 3, &wt, Check::Full).unwrap();
        assert_eq!(hm.order(), 12 * w);
    }
}

#[test]
fn golay_seeds_feed_normal_sequences() {
    let wit = Witnesses::default();
    for g in [10, 20, 26, 52] {
        let gp: GolayPair = wit.golay(g).unwrap();
        let ns = golay_to_normal(&gp).unwrap();
        assert!(verify_t(&base_to_t(&ns).unwrap()));
    }
}

#[test]
fn unsupported_ingredients_are_reported() {
    let wit = Witnesses::default();
    let yang = t_sequences(&ParamTuple::new(3, 1, 2, 1, 1), &wit);
    assert!(matches!(yang, Err(Error::NoConstructiveWitness(_))));
    let h5 = pipeline(&ParamTuple::new(1, 5, 2, 1, 1), &wit, &full());
    assert!(matches!(h5, Err(Error::MissingBhwData(5))));
    let w73 = pipeline(&ParamTuple::new(1, 1, 2, 1, 73), &wit, &full());
    assert!(matches!(w73, Err(Error::NoConstructiveWitness(_))));
}

#[test]
fn constructive_ledger_tuples_run() {
    let kb = KnowledgeBase::load(&DataSource::embedded()).unwrap();
    let wit = Witnesses::default();
    let mut built = 0;
    for n in (1..=45u64).step_by(2) {
        for p in decompose(n, &kb) {
            if p.y != 1 || p.h != 1 || p.w > 9 || p.r + p.s > 20 {
                continue;
            }
            let out = pipeline(&p, &wit, &full()).unwrap_or_else(|e| panic!("{p}: {e}"));
            assert!(verify_hadamard(&out.hm));
            built += 1;
        }
    }
    assert!(built > 20, "{built}");
}
