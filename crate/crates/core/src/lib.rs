//! Exact cohomology of presheaves on finite posets with the Alexandrov topology.
//!
//! The crate computes Čech cohomology of a presheaf of finitely generated
//! abelian groups, topos cohomology of the sheaf it generates, and the
//! canonical comparison map between the two. It also decides, through the
//! acyclicity of upper sections of Dedekind–MacNeille cuts, whether the
//! comparison map is an isomorphism for *every* presheaf on a given poset.
//!
//! All arithmetic is exact. The linear algebra kernel in [`linalg`] is generic
//! over the integer scalar; the rest of the crate runs on arbitrary-precision
//! integers through the aliases below.
//!
//! ```
//! use poset_cech::{criterion, document::parse_poset, CriterionOptions};
//!
//! let n = parse_poset(r#"{"elements": ["p0","p1","p2","p3"],
//!     "relations": [["p2","p0"],["p3","p0"],["p3","p1"]]}"#).unwrap();
//! assert!(criterion(&n, CriterionOptions::default()).unwrap().passed());
//! ```

pub mod cuts;
pub mod diagram;
pub mod document;
pub mod error;
pub mod homology;
pub mod linalg;
pub mod poset;
pub mod random;

use num_bigint::BigInt;

pub use cuts::{
    criterion, enumerate_cuts, upper_section_acyclicity, CriterionOptions, CriterionReport, Cut,
    CutFailure, Shortcut,
};
pub use diagram::{
    cech_cohomology, cech_ordered_complex, compare_report, comparison_map, derived_colimit,
    derived_limit, full_complex_truncated, reduced_complex, sheafify_value, topos_cohomology,
    ComparisonReport, DegreeComparison, Diagram, Presheaf,
};
pub use error::{Error, Result};
pub use homology::{
    acyclicity_check, homology_at, induced_on_homology, simplicial_homology, Acyclicity,
    CanonicalGroup, ChainMap, Complex, GroupHom, Homology, OrderComplex, PresentedAbGroup,
};
pub use linalg::{IntMatrix, Scalar, SmithDecomposition, SmithSolver};
pub use poset::{ChainSet, IntersectionPoset, Poset, Subset};

/// Arbitrary-precision integer used throughout the cohomology pipeline.
pub type Int = BigInt;
/// Integer matrix over [`Int`].
pub type Matrix = IntMatrix<Int>;
/// Smith decomposition over [`Int`].
pub type Smith = SmithDecomposition<Int>;
