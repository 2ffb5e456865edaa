//! Exact computation with finite-dimensional algebras carrying invariant
//! symmetric bilinear forms, aimed at fermionic Novikov algebras.
//!
//! The crate checks the defining identities, solves for invariant forms,
//! runs the square-zero canonical-basis reduction that shows such algebras
//! are Novikov, and builds the small derived-dimension families.

pub mod exactlin;
pub mod algebra;
pub mod canon;
pub mod classify;
pub mod forms;

pub use algebra::{Algebra, AlgebraError, Element};
pub use canon::{
    canonical_basis, isotropy_check, max_rank_element, theorem_check, verify_structure,
    CanonError, CanonReport, IsotropyCheck, MaxRank, StructureClaims, TheoremReport,
};
pub use classify::{
    classify_k1, generate_instance, k2_condition, make_family, make_k2, scramble, Instance,
    K1Variant, K2Params,
};
pub use exactlin::{Mat, Rational};
pub use forms::{
    find_nondegenerate, invariant_form_space, is_invariant, normalize_orientation, FormError,
    SymForm,
};
