//! Exact arithmetic for quaternion algebras over Q(sqrt a) acting on
//! hyperbolic 3-space: Pell-built closed totally geodesic surfaces and
//! separation primes for Hecke correspondences.

pub mod error;
pub mod exact;
pub mod hyp3;
pub mod itgs;
pub mod numthy;
pub mod quatalg;
pub mod separation;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/exact.md")]
    pub struct Exact;
    #[doc = include_str!("../../../book/src/numthy.md")]
    pub struct Numthy;
    #[doc = include_str!("../../../book/src/quatalg.md")]
    pub struct Quatalg;
    #[doc = include_str!("../../../book/src/hyp3.md")]
    pub struct Hyp3;
    #[doc = include_str!("../../../book/src/itgs.md")]
    pub struct Itgs;
    #[doc = include_str!("../../../book/src/separation.md")]
    pub struct Separation;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
