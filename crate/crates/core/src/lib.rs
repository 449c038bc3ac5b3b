pub mod balas;
pub mod builders;
pub mod cli;
pub mod error;
pub mod graph;
pub mod hashfam;
pub mod linalg;
pub mod lp;
pub mod lpformat;
pub mod polyhedra;
pub mod rational;
pub mod symcert;

pub use error::{Error, Result};
pub use rational::Rational;
