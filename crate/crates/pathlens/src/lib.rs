//! Files, configuration, rendering and the command-line front end for
//! `pathlens-core`.

pub mod cli;
pub mod config;
pub mod error;
pub mod io;
pub mod render;

pub use error::{Error, Result};
