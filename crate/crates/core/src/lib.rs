//! Exact Schwartz–Bruhat function calculus over `F_q((t))` and the explicit
//! operators of the local multiplicative theory of parabolic induction for
//! `GL(2)`.

pub mod error;
pub mod field;
pub mod gl2maps;
pub mod gl2rep;
pub mod harness;
pub mod schwartz;

pub use error::{Error, Result};
