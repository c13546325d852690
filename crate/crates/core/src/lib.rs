//! Exact orbifold Riemann-Roch for polarized Calabi-Yau threefolds and
//! certified bounds for birationality of `|K_X + mL + T|`.

pub mod basket;
pub mod certify;
pub mod cli;
pub mod error;
pub mod rational;
pub mod reid;
pub mod verify;
pub mod wps;

pub use basket::{Basket, OrbifoldPoint};
pub use error::{Error, Result};
pub use rational::Rational;
