pub mod cochain;
pub mod corpus;
pub mod critical;
pub mod error;
pub mod fibre;
pub mod graph;
pub mod jacobian;
pub mod linalg;
pub mod oracle;
pub mod sandpile;

pub use error::{Error, Result};
