//! Exhaustive searches: Golay pairs, base, normal and near-normal
//! sequences with classification, Williamson matrices and a T-sequence
//! existence oracle.

mod classify;
pub mod engine;
mod golay;
mod group;
pub mod oracle;
mod williamson;

pub use classify::{
    enumerate_base, enumerate_nn, enumerate_ns, merge, ClassEntry, ClassificationReport, SearchStats, ShardSpec,
};
pub use golay::{find_golay, search_golay, GOLAY_BOUND};
pub use group::{canonical_form, generator, generators_for, Group, SignedPerm};
pub use oracle::{ts_oracle, TS_ORACLE_BOUND};
pub use williamson::{search_williamson, symmetric_circulants, WILLIAMSON_BOUND};

use crate::error::{Error, Result};

/// Limits and work partition shared by the searches.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    pub shards: usize,
    pub shard: usize,
    /// Node cap for one run.
    pub budget: Option<u64>,
    /// Largest number of free ±1 entries a classification may have.
    pub max_free_bits: usize,
    pub prefix_bits: u32,
    /// Record wall time in reports. Off by default so reports compare byte for byte.
    pub timing: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            threads: None,
            shards: 1,
            shard: 0,
            budget: None,
            max_free_bits: 40,
            prefix_bits: 8,
            timing: false,
        }
    }
}

impl SearchConfig {
    pub(crate) fn check_bits(&self, bits: usize) -> Result<()> {
        if bits > self.max_free_bits {
            return Err(Error::BudgetExceeded { nodes: 0, bits });
        }
        Ok(())
    }

    /// Runs `f` on a pool with the configured thread count.
    pub fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> T {
        match self.threads {
            Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool").install(f),
            None => f(),
        }
    }
}
