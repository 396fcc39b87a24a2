pub mod algebroid;
pub mod calculus;
pub mod catalog;
pub mod courant;
pub mod error;
pub mod grammar;
pub mod groupoid;
pub mod kplectic;
pub mod linalg;
pub mod sampling;
pub mod scalar;
pub mod verdict;

pub use error::{Error, Result};
