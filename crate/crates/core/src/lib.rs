pub mod artifact;
pub mod builtin;
pub mod compare;
pub mod error;
pub mod navigate;
pub mod nlp;
pub mod pareto;
pub mod problem;
pub mod robust;
pub mod run;
pub mod sequence;

pub use error::{Error, Result};
