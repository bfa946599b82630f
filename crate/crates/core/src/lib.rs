//! Symbolic differential algebra on classical Lie algebras: generic connections, Bruhat-cell
//! differential systems and the gauge reduction to a normal form.

pub mod diffpoly;
pub mod error;
pub mod gaugegen;
pub mod liealg;
pub mod matrix;
pub mod normalform;
pub mod rational;
pub mod ring;
pub mod rootsys;
pub mod sl3case;

pub use error::{Error, Result};
pub use rational::Q;
