use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::engine::{run, Layout, Mode, Plan, RunSpec};
use super::group::Group;
use super::SearchConfig;
use crate::error::{Error, Result};
use crate::objects::{verify_quad, BaseQuad, QuadFields, QuadKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub representative: QuadFields,
    /// Members of the class that the search visited.
    pub orbit_size: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShardSpec {
    pub index: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub prefix_bits: u32,
    pub units: u64,
    pub group_order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shard: Option<ShardSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub kind: QuadKind,
    pub r: usize,
    pub s: usize,
    pub raw_count: u64,
    pub class_count: usize,
    pub classes: Vec<ClassEntry>,
    pub stats: SearchStats,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Representatives as quads.
    pub fn representatives(&self) -> Vec<BaseQuad> {
        self.classes
            .iter()
            .map(|c| {
                let f = &c.representative;
                BaseQuad { a: f.a.clone(), b: f.b.clone(), c: f.c.clone(), d: f.d.clone(), kind: self.kind }
            })
            .collect()
    }
}

fn fields(q: &BaseQuad) -> QuadFields {
    QuadFields { a: q.a.clone(), b: q.b.clone(), c: q.c.clone(), d: q.d.clone() }
}

fn layout_for(kind: QuadKind, r: usize, s: usize) -> Layout {
    match kind {
        QuadKind::Plain => Layout::base(r, s),
        QuadKind::Normal => Layout::normal(s),
        QuadKind::NearNormal => Layout::near_normal(s),
    }
}

fn classify(kind: QuadKind, r: usize, s: usize, cfg: &SearchConfig) -> Result<ClassificationReport> {
    let start = Instant::now();
    let spec = RunSpec { prefix_bits: cfg.prefix_bits, shards: cfg.shards, shard: cfg.shard, budget: cfg.budget };
    let plan = Plan::new(layout_for(kind, r, s));
    let group = Group::new(kind, r, s);
    let out = cfg.install(|| run(&plan, Mode::All, &spec))?;
    let canon: Vec<Vec<i8>> = cfg.install(|| out.solutions.par_iter().map(|x| group.canonical(x)).collect());
    let mut counts: BTreeMap<Vec<bool>, (Vec<i8>, u64)> = BTreeMap::new();
    for (x, c) in out.solutions.iter().zip(canon) {
        let q = BaseQuad::from_flat(x, r, s, kind);
        if !verify_quad(&q) {
            return Err(Error::VerificationFailed(format!("search produced {q}")));
        }
        let key = c.iter().map(|&v| v < 0).collect();
        counts.entry(key).or_insert((c, 0)).1 += 1;
    }
    let classes: Vec<ClassEntry> = counts
        .into_values()
        .map(|(c, n)| ClassEntry { representative: fields(&BaseQuad::from_flat(&c, r, s, kind)), orbit_size: n })
        .collect();
    Ok(ClassificationReport {
        kind,
        r,
        s,
        raw_count: out.solutions.len() as u64,
        class_count: classes.len(),
        classes,
        stats: SearchStats {
            nodes: out.nodes,
            prefix_bits: out.prefix_bits,
            units: out.units,
            group_order: group.order(),
            shard: (cfg.shards > 1).then_some(ShardSpec { index: cfg.shard, count: cfg.shards }),
            elapsed_ms: cfg.timing.then(|| start.elapsed().as_millis() as u64),
        },
    })
}

fn empty(kind: QuadKind, r: usize, s: usize) -> ClassificationReport {
    ClassificationReport {
        kind,
        r,
        s,
        raw_count: 0,
        class_count: 0,
        classes: Vec::new(),
        stats: SearchStats { nodes: 0, prefix_bits: 0, units: 0, group_order: 0, shard: None, elapsed_ms: None },
    }
}

/// All BS(r,s), grouped into classes under the full group.
pub fn enumerate_base(r: usize, s: usize, cfg: &SearchConfig) -> Result<ClassificationReport> {
    cfg.check_bits(2 * r + 2 * s)?;
    classify(QuadKind::Plain, r, s, cfg)
}

/// All NS(n) in BS(n+1,n).
pub fn enumerate_ns(n: usize, cfg: &SearchConfig) -> Result<ClassificationReport> {
    cfg.check_bits(3 * n + 2)?;
    classify(QuadKind::Normal, n + 1, n, cfg)
}

/// All NN(n) in BS(n+1,n); empty for odd `n`.
pub fn enumerate_nn(n: usize, cfg: &SearchConfig) -> Result<ClassificationReport> {
    if n % 2 == 1 {
        return Ok(empty(QuadKind::NearNormal, n + 1, n));
    }
    cfg.check_bits(3 * n + 2)?;
    classify(QuadKind::NearNormal, n + 1, n, cfg)
}

/// Combines shard reports of one search into the report a single run gives.
pub fn merge(reports: &[ClassificationReport]) -> Result<ClassificationReport> {
    let first = reports.first().ok_or_else(|| Error::InvalidInput("nothing to merge".into()))?;
    let mut counts: BTreeMap<Vec<bool>, (QuadFields, u64)> = BTreeMap::new();
    let mut stats = SearchStats { shard: None, elapsed_ms: None, nodes: 0, units: 0, ..first.stats.clone() };
    let mut raw = 0;
    for rep in reports {
        if (rep.kind, rep.r, rep.s, rep.stats.prefix_bits) != (first.kind, first.r, first.s, first.stats.prefix_bits) {
            return Err(Error::DataMismatch("reports come from different searches".into()));
        }
        raw += rep.raw_count;
        stats.nodes += rep.stats.nodes;
        stats.units += rep.stats.units;
        stats.group_order = stats.group_order.max(rep.stats.group_order);
        for c in &rep.classes {
            let f = &c.representative;
            let key = [&f.a, &f.b, &f.c, &f.d]
                .iter()
                .flat_map(|x| crate::seqcore::Sequence::entries(*x).iter().map(|&v| v < 0))
                .collect();
            counts.entry(key).or_insert((f.clone(), 0)).1 += c.orbit_size;
        }
    }
    let classes: Vec<ClassEntry> =
        counts.into_values().map(|(representative, orbit_size)| ClassEntry { representative, orbit_size }).collect();
    Ok(ClassificationReport {
        kind: first.kind,
        r: first.r,
        s: first.s,
        raw_count: raw,
        class_count: classes.len(),
        classes,
        stats,
    })
}
