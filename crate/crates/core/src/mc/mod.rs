//! Maurer-Cartan evaluation and transport: the equivalence between the
//! geometric Lagrangian-graph transform, the matrix series, and the
//! pushforward along `e^{R_eps}`, plus the pointwise block-matrix layer for
//! deformations of complex structures.

mod complex;
mod skew;
mod transport;

pub use complex::{
    complex_blocks, difference_bracket_identity, r_two_forms, ComplexStructureData,
    DiffBracketReport,
};
pub use skew::{map_to_two_form, two_form_to_map};
pub use transport::{
    graph_of_subspace, graph_transform, mc_check, mc_equivalence_certificate, mc_transport,
    mc_transport_inverse_form, subalgebra_deformation_form, McEquivalence, McReport,
};
