//! High-precision Bergman polynomials for planar domains.

pub mod asymptotics;
pub mod config;
pub mod continuation;
pub mod error;
pub mod experiments;
pub mod faber;
pub mod geometry;
pub mod moments;
pub mod num;
pub mod report;
pub mod verify;

pub use error::{Error, Result};
pub use geometry::{DomainModel, DomainSpec};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/domains.md")]
    pub mod domains {}
    #[doc = include_str!("../../../book/src/orthonormal.md")]
    pub mod orthonormal {}
    #[doc = include_str!("../../../book/src/faber.md")]
    pub mod faber {}
    #[doc = include_str!("../../../book/src/continuation.md")]
    pub mod continuation {}
    #[doc = include_str!("../../../book/src/asymptotics.md")]
    pub mod asymptotics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
}
