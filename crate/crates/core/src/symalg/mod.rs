//! The graded symmetric coalgebra `S(V)` over an indexed graded space,
//! coderivations and coalgebra morphisms through their Taylor components,
//! exponentials of word-length-lowering coderivations, and the generic
//! verifiers for L-infinity structures and morphisms.
//!
//! Degrees stored in a [`GradedSpace`] are the already-shifted ones: an
//! L-infinity structure on `A[1]` is encoded by its symmetric brackets on
//! `A[2]`, so for `A` an exterior algebra the basis word of length `k`
//! carries degree `k - 2` here, and every bracket is a degree `+1` map.

mod coder;
mod morphism;
mod space;
mod taylor;
mod verify;
mod word;

pub use coder::{taylor_from_action, Coderivation};
pub use morphism::Morphism;
pub use space::{GradedSpace, VElem};
pub use taylor::TaylorMap;
pub use verify::{
    jacobi_row, skew_from_symm, symm_from_skew, verify_jacobi, verify_morphism, JacobiReport,
    MorphismReport,
};
pub use word::{canonical_words, canonicalize, coproduct, SymElem, SymWord};
