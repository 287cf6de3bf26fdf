//! Output formats of the `polycrystal` command-line tool.

pub mod output;
