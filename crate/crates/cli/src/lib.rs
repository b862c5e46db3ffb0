//! Verification campaigns over Brandt semigroup algebra instances, with
//! deterministic JSON reports.

pub mod app;
pub mod campaign;
pub mod checks;
pub mod config;
pub mod groups;
pub mod report;

pub use campaign::{run_campaign, Campaign, Check, Instance};
pub use report::{CheckRecord, Report, Status};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod exit {
    pub const PASS: i32 = 0;
    pub const FAIL: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const SIZE_LIMIT: i32 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("malformed report: {0}")]
    MalformedReport(String),
}
