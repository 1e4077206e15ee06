pub mod cli;
pub mod corpus;
pub mod equivalence;
pub mod error;
pub mod jacobi;
pub mod notation;
pub mod partitions;
pub mod search;
pub mod selftest;
pub mod series;
pub mod theta;

pub use error::{Error, Result};
pub use series::Series;
