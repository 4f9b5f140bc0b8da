//! Front end for `cwl-core`: presentation files, the subcommand logic and
//! the verification battery. `main.rs` only parses arguments and prints.

pub mod cosmetic;
pub mod error;
pub mod gen;
pub mod input;
pub mod knot;
pub mod lambda;
pub mod verify;

pub use error::CliError;
