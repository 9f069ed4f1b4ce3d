pub mod artinian;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod fatpoints;
pub mod field;
pub mod linalg;
pub mod poly;
pub mod random;
pub mod report;

pub use error::{Error, Result};
pub use field::PrimeField;
pub use linalg::{DenseMatrix, RankResult};
