//! Exact arithmetic for even lattices, their discriminant quadratic forms,
//! and the invariants of commuting involution pairs on the K3 lattice that
//! control the topology and 2-torsion Brauer group of real Enriques surfaces.
//!
//! Everything is computed over `BigInt`/`BigRational`; there is no floating
//! point anywhere. Each closed-form identity the `enriques` module reports is
//! evaluated from at least two independent computational routes, and a
//! disagreement surfaces as [`Error::Inconsistency`] rather than a silent
//! preference for either side.

pub mod catalog;
pub mod disc;
pub mod enriques;
pub mod error;
pub mod f2;
pub mod formats;
pub mod fqmod;
pub mod invol;
pub mod lattice;
pub mod linalg;
pub mod profiles;

pub use error::Error;
