pub mod cli;
pub mod coeffs;
pub mod criteria;
pub mod error;
pub mod optimizer;
pub mod oracle;
pub mod phiforms;
pub mod specfun;

pub use error::{Error, Result};
