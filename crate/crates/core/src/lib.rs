pub mod algebra;
pub mod cli;
pub mod error;
pub mod et;
pub mod io;
pub mod perm;
pub mod report;
pub mod runtime;
pub mod semigroup;
pub mod table;

pub use error::{Error, Result};
