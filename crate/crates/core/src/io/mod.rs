//! File formats, run configuration and the staged pipeline behind the command line.

pub mod alist;
pub mod config;
pub mod pipeline;
pub mod report;
pub mod spec;

pub use alist::{emit_alist, parse_alist};
pub use config::{parse_config, Base, Codeword, Config};
pub use pipeline::{run_pipeline, Stage};
pub use report::{RunReport, Section, Table};
pub use spec::CodeSpec;
