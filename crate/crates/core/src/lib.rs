pub mod analysis;
pub mod checkpoint;
pub mod engine;
pub mod error;
pub mod golden;
pub mod graph;
pub mod kernel;
pub mod oeis;
pub mod oracle;
pub mod payload;
pub mod ring;
pub mod signature;

pub use engine::{count_dominating, domination_polynomial, run_sweep, torus_polynomial, EngineOptions};
pub use error::{Error, Result};
pub use graph::{Family, GraphSpec};
pub use ring::{Polynomial, RingTag};
