//! Construction and verification of Hadamard matrices from complementary
//! sequences, with exhaustive search and an existence ledger.

pub mod constructions;
pub mod data;
pub mod error;
pub mod ledger;
pub mod objects;
pub mod plugin;
pub mod search;
pub mod seqcore;
pub mod witness;
pub mod yang;

pub use data::DataSource;
pub use error::{Error, Result};
pub use witness::Witnesses;
