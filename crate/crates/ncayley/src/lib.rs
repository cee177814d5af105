//! Exact computation of splitting fields, integrality verdicts and
//! algebraic-degree bounds of n-Cayley digraphs over finite abelian groups.
//!
//! The pipeline follows the structure matrix of the digraph into the group
//! algebra Q[G]: principal-minor sums of the structure matrix determine a
//! stabilizer subgroup of the Galois group of Q(w_N), whose fixed field and
//! orbit count yield exact lower/upper bounds on the algebraic degree. When
//! every eigenvalue can be certified cyclotomic, the degree is computed
//! exactly; otherwise the report carries the bounds alone. Cayley digraphs
//! over non-abelian groups enter through a coset-transversal reduction.

pub mod cyclotomic;
pub mod error;
pub mod ga_matrix;
pub mod galois;
pub mod group;
pub mod group_algebra;
pub mod import;
pub mod numeric;
pub mod oracle;
pub mod poly;
pub(crate) mod ring;
pub mod spectra;

pub use cyclotomic::CyclotomicNumber;
pub use error::{Error, Result};
pub use ga_matrix::{CycloMatrix, GAMatrix, NCayleySpec};
pub use galois::{
    degree_bounds, fixed_field, in_fixed_field, orbit_decomposition, stabilizer_subgroup,
    FixedFieldDescription, OrbitDecomposition, StabilizerSubgroup,
};
pub use group::{FiniteAbelianGroup, GroupElement, UnitSet};
pub use group_algebra::{fourier_inverse, GroupAlgebraElement};
pub use import::{
    import_isomorphism_check, reduce_to_ncayley, verify_transversal, FiniteGroupTable,
    SubgroupEmbedding,
};
pub use oracle::{build_adjacency, char_poly_int, equivalence_check, AdjacencyMatrix};
pub use poly::{cyclotomic_polynomial, euler_phi, IntPolynomial, RatPolynomial};
pub use spectra::{
    analyze, char_poly_at, cyclotomic_reconstruct, degree_report, eigen_numeric, full_char_poly,
    integrality_test, Analysis, AnalyzeOptions, CertificationMethod, CycloPolynomial,
    DegreeReport, EigenValue, IntegralityResult,
};
