//! Finite pointfree topology toolkit.
//!
//! The crate works at desk scale with exhaustive, brute-force verifiable
//! algorithms: finite lattices and their Galois adjunctions, finite locales and
//! their prime spectra, finite topological spaces, subspace lattices of `F_q^n`
//! together with their spectrum topologies, quotient vector bundles classified by
//! kernel maps, and linearized locales with the support/spectrum adjunction
//! between the two worlds.
//!
//! Every structure is immutable once built and every operation is a pure
//! function of its inputs.

pub mod bits;
pub mod bundle;
pub mod cli;
pub mod dot;
pub mod error;
pub mod frame;
pub mod hyper;
pub mod linfq;
pub mod linloc;
pub mod order;
pub mod report;
pub mod schema;
pub mod space;

pub use error::{Error, Result};
pub use report::{Caps, Check, Status};
