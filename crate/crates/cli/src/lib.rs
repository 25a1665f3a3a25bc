//! Command-line shell and HTTP API over the entrench engine. Profiles live
//! in one directory each; both surfaces go through the same `AgentProfile`.

pub mod cli;
pub mod error;
pub mod server;
pub mod store;
pub mod views;

pub use cli::{run, Cli};
pub use error::CliError;
