//! Exact rational vectors, Dirichlet-type inequalities and cone systems.

mod cone;
pub mod farkas;
mod ineq;
mod ratvec;

pub use cone::{
    integer_representative, CompiledCone, ConeSystem, ConstructionTrace, Membership, TraceRound,
};
pub use ineq::{fix_space_basis, DirichletIneq};
pub use ratvec::{format_rational, parse_rational, RatVec};
