//! Arithmetic dynamics on the projective line over Q.
//!
//! Green functions at every place, canonical heights, equilibrium-measure
//! samples and parameter-space heights for rational maps, with exact
//! arithmetic wherever the answer is exact.

pub mod acceptance;
pub mod cli;
pub mod equilibrium;
pub mod error;
pub mod factor;
pub mod green;
pub mod height;
pub mod io;
pub mod locus;
pub mod map;
pub mod parameter;
pub mod periodic;
pub mod poly;
pub mod rational;
pub mod roots;

pub use error::{Error, Result};
