use super::engine::{run, Layout, Mode, Plan, RunSpec};
use super::SearchConfig;
use crate::error::{Error, Result};
use crate::objects::{verify_golay, GolayPair};
use crate::seqcore::BinarySeq;

/// Largest length [`search_golay`] enumerates.
pub const GOLAY_BOUND: usize = 12;

fn split(flat: &[i8], g: usize) -> Result<GolayPair> {
    let gp = GolayPair::new(BinarySeq::new(flat[..g].to_vec())?, BinarySeq::new(flat[g..].to_vec())?)?;
    if !verify_golay(&gp) {
        return Err(Error::VerificationFailed(format!("search produced ({}, {})", gp.a, gp.b)));
    }
    Ok(gp)
}

fn spec(cfg: &SearchConfig) -> RunSpec {
    RunSpec { prefix_bits: cfg.prefix_bits, shards: cfg.shards, shard: cfg.shard, budget: cfg.budget }
}

/// Every ordered Golay pair of length `g`, sorted.
pub fn search_golay(g: usize, cfg: &SearchConfig) -> Result<Vec<GolayPair>> {
    if g > GOLAY_BOUND {
        return Err(Error::BoundExceeded { what: "golay length", value: g, limit: GOLAY_BOUND });
    }
    let plan = Plan::new(Layout::golay(g));
    let out = cfg.install(|| run(&plan, Mode::All, &spec(cfg)))?;
    let mut pairs = out.solutions.iter().map(|x| split(x, g)).collect::<Result<Vec<_>>>()?;
    pairs.sort_by(|p, q| (&p.a, &p.b).cmp(&(&q.a, &q.b)));
    Ok(pairs)
}

/// The first Golay pair of length `g` in search order, if any.
pub fn find_golay(g: usize, cfg: &SearchConfig) -> Result<Option<GolayPair>> {
    let plan = Plan::new(Layout::golay(g));
    let out = cfg.install(|| run(&plan, Mode::First, &spec(cfg)))?;
    out.solutions.first().map(|x| split(x, g)).transpose()
}
