//! Extendibility of Brauer states: representation-theoretic regions in the (f, b) plane,
//! closed forms for small two-sided extensions and a matrix oracle to check them.

pub mod brauer;
pub mod casimir;
pub mod definetti;
pub mod error;
pub mod geometry;
pub mod ogroup;
pub mod oracle;
pub mod partitions;
pub mod twosided;
pub mod validation;

pub use error::{Error, Result};

#[cfg(doctest)]
pub mod guide {
    #[doc = include_str!("../../../book/src/brauer-plane.md")]
    pub struct BrauerPlane;
    #[doc = include_str!("../../../book/src/representations.md")]
    pub struct Representations;
    #[doc = include_str!("../../../book/src/definetti.md")]
    pub struct Definetti;
    #[doc = include_str!("../../../book/src/twosided.md")]
    pub struct Twosided;
    #[doc = include_str!("../../../book/src/oracle.md")]
    pub struct Oracle;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
