//! The object classes of the pipeline and their verifiers.

mod formal;
mod io;
mod matrix;
mod quads;

pub use formal::{verify_bhw, verify_od, FormalArray, Monomial};
pub(crate) use io::read;
pub use io::{Object, QuadFields, WtFile};
pub use matrix::{verify_hadamard, verify_hadamard_sampled, verify_wt, MatrixQuad, PMMatrix, SignMatrix};
pub use quads::{
    verify_base, verify_golay, verify_near_normal, verify_normal, verify_quad, verify_t, BaseQuad, GolayPair, QuadKind,
    Rejection, TQuad,
};
