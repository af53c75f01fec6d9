pub mod basicfield;
pub mod checker;
pub mod error;
pub mod expr;
pub mod ffield;
pub mod omfactor;
pub mod par;
pub mod pyramid;
pub mod ratfunc;

pub use error::{Error, Result};
