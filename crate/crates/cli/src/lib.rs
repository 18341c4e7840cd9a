//! Command-line front end for `toric-tor`: JSON problem input, subcommand
//! dispatch, table rendering and JSON output.

pub mod commands;
pub mod problem;
pub mod render;
pub mod table_json;

pub use commands::{run, Command, Format, Outcome};
pub use problem::{CoefficientsJson, Geometry, ModeSpec, Problem};
pub use render::{format_piece, render_table};
pub use table_json::{table_from_json, table_to_json, TableJson};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] toric_tor::Error),
    #[error("`{expr}` is not a cocycle; its differential is {differential}")]
    NotACocycle { expr: String, differential: String },
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code for this error.
    pub fn exit_code(&self) -> u8 {
        2
    }
}
