//! Fundamental domains for permutation groups acting on `R^n` by permuting
//! coordinates: exact rational cones, the Schreier-Sims and generalized
//! Dirichlet constructions, lexicographic representatives, and brute-force
//! audits of the domain axioms.

pub mod audit;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod geometry;
pub mod group;
pub mod io;
pub mod lexmax;
pub mod perm;
pub mod sampling;

pub use audit::{effectiveness, verify_fundamental_domain, AuditLimits, EffectivenessReport, FDReport};
pub use constructions::{dirichlet_domain, gdd, ssp, ssp_reduced, Construction, GammaStrategy};
pub use error::{Error, Result};
pub use geometry::{ConeSystem, DirichletIneq, Membership, RatVec};
pub use group::{PermGroup, SchreierSimsTable, StabilizerChain};
pub use perm::Permutation;
