//! Command line and HTTP front end for the `pareto-robust` library.

pub mod api;
pub mod cli;
pub mod registry;
