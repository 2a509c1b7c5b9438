//! Exact-arithmetic linear algebra over Q and F_{p^k}, with the wildness
//! gadget constructions, congruence invariants of skew-symmetric matrix
//! pairs, isomorphism decision for two-step nilpotent Lie algebras with
//! small commutator, and brute-force oracles that validate every decision
//! procedure at desk scale.

pub mod algebras;
pub mod error;
pub mod field;
pub mod matrix;
pub mod gadgets;
pub mod json;
pub mod mobius;
pub mod oracles;
pub mod pencil;
pub mod poly;
pub mod smith;
pub mod tuples;

pub use algebras::{
    adjoin_identity, check_semialgebra, emit_canonical_algebra, lie_classify, lie_isomorphic,
    pgroup_presentation, semialgebra_from_tuple, tuple_from_semialgebra, CanonicalLabel,
    SemialgebraReport, StructureConstants,
};
pub use error::{Error, Result};
pub use gadgets::{CongruenceWitness, MatrixPair, SimilarityWitness};
pub use mobius::{mobius_canonicalize, Mobius, PointConfiguration, ProjPoint};
pub use oracles::{
    brute_congruent, brute_orbit_iso, brute_similar, gl_enumerate, gl_order, EnumerationBudget,
};
pub use pencil::{pairs_congruent, pencil_invariants, SkewPair, SkewPencilInvariants};
pub use field::{FieldElement, FieldSpec};
pub use matrix::Matrix;
pub use poly::{charpoly, charpoly_factor, Polynomial};
pub use smith::{smith_polymatrix, PolyMatrix, SmithForm};
pub use tuples::{EpsilonSignature, MatrixTuple, SubstitutionMatrix};
