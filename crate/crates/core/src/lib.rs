pub mod affine;
pub mod combinatorics;
pub mod enumerator;
pub mod error;
pub mod gf2code;
pub mod linalg;
pub mod mendelsohn;
pub mod registry;
pub mod verifier;
pub mod lp;

pub use error::{Error, Result};
