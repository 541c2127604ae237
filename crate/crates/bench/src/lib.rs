//! Fixtures shared by the benches under `benches/`.

use hforge_core::objects::PMMatrix;
use hforge_core::plugin::{pipeline, ParamTuple, PipelineConfig};
use hforge_core::seqcore::BinarySeq;
use hforge_core::Witnesses;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A ±1 sequence of length `n`, fixed by `seed`.
pub fn random_sequence(n: usize, seed: u64) -> BinarySeq {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BinarySeq::new((0..n).map(|_| if rng.gen::<bool>() { 1 } else { -1 }).collect()).expect("±1 entries")
}

/// HM(4n) from the tuple `(1, 1, (r,s), w)`.
pub fn hadamard(r: u64, s: u64, w: u64) -> PMMatrix {
    pipeline(&ParamTuple::new(1, 1, r, s, w), &Witnesses::default(), &PipelineConfig::default())
        .expect("constructive tuple")
        .hm
}
