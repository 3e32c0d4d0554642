pub mod bell;
pub mod error;
pub mod game;
pub mod optimize;
pub mod quantum;
pub mod uniqueness;

pub use error::{Error, Result};
