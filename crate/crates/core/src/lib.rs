//! Exact arithmetic for ramified irregular connections `E_{f,q}`: cyclotomic
//! coefficients, truncated Puiseux series, plane curve germs, local Fourier
//! transforms, resolution plans and Stokes order sequences.

pub mod connection;
pub mod corpus;
pub mod cycfield;
pub mod error;
pub mod germ;
pub mod hp;
pub mod lft;
pub mod parse;
pub mod poly;
pub mod puiseux;
pub mod resolve;
pub mod stokes;

#[cfg(feature = "cli")]
pub mod cli;

pub use connection::{ConnGerm, DualPuiseuxChar, Place};
pub use cycfield::CycNum;
pub use error::{Error, Result};
pub use puiseux::{PuiseuxSeries, Q};
