pub mod cli;
pub mod consistency;
pub mod error;
pub mod mc;
pub mod model;
pub mod onesided;
pub mod precise;
pub mod priors;
pub mod quad;
pub mod special;

pub use error::{Error, Result};
