pub mod analysis;
pub mod cattaneo;
pub mod eigen;
pub mod error;
pub mod estimates;
pub mod floquet;
pub mod graph;
pub mod interval;
pub mod lattice;
pub mod oracle;
pub mod report;
pub mod spectrum;

pub use error::{Error, Result};
