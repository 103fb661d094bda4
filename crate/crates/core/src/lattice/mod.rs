//! Exact integer and rational linear algebra: lattice vectors, group
//! lattices in Hermite normal form, cone geometry and coset systems.

mod cone;
mod group;
mod vector;

pub use cone::{extremal_rays, in_nonnegative_span, Cone};
pub use group::{coset_system, hermite_basis, GroupLattice};
pub use vector::LatticeVector;

pub(crate) use cone::in_rational_span;
pub(crate) use group::{adjugate_i128, det_i128};
