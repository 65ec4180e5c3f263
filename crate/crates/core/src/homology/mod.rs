//! Homology of complexes of finitely presented abelian groups.

mod complex;
mod group;
mod simplicial;

pub use complex::{induced_on_homology, ChainMap, Complex, Grading, Summand};
pub use group::{
    hom_well_defined, homology_at, CanonicalGroup, GroupHom, Homology, PresentedAbGroup,
};
pub use simplicial::{acyclicity_check, simplicial_homology, Acyclicity, OrderComplex};
