//! Binary self-dual codes and their prime-order automorphisms.

pub mod casesearch;
pub mod code;
pub mod decomp;
pub mod error;
pub mod exclusion;
pub mod gf2;
pub mod lowweight;
pub mod modfield;
pub mod util;

pub use code::{BinaryCode, WeightDistribution};
pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVector};
