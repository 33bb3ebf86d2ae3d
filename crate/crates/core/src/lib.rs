pub mod cli;
pub mod error;
pub mod field;
pub mod gcd;
pub mod groebner;
pub mod invariants;
pub mod linalg;
pub mod modrep;
pub mod mpoly;
pub mod projmaps;
pub mod unipoly;

pub use error::{Error, Result};
