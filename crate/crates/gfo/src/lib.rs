//! Front-end for `gfo-core`: the `.gfo` model language, JSON reports and the
//! `gfo` command-line tool.

pub mod cli;
pub mod dsl;
pub mod json;

pub use gfo_core as core;
