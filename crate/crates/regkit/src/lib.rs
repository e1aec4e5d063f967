//! File formats, report rendering and the `regkit` command-line tool built
//! on [`regkit_core`].

pub mod cli;
pub mod formats;
pub mod report;

pub use regkit_core as core;
