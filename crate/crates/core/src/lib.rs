pub mod bounds;
pub mod edgelog;
pub mod error;
pub mod experiment;
pub mod metrics;
pub mod ode;
pub mod process;
pub mod strategies;

pub use error::{Error, Result};
pub use process::{ProcessState, RngConfig, RoundRecord, Strategy, VertexId};
