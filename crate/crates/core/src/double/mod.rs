//! Finite-dimensional quadratic Lie algebras with Lagrangian splittings,
//! the spinor module with its Clifford action, and the cubic Hamiltonian
//! generating the bracket by double graded commutators.

mod algebra;
mod hamiltonian;
mod operator;
mod splitting;
mod spinor;

pub use algebra::{validate_double, DoubleReport, QuadraticLieAlgebra};
pub use hamiltonian::build_hamiltonian;
pub use operator::{operator_order, CliffordOperator, HamiltonianPieces, OrderCheck};
pub use splitting::{
    bivector_to_matrix, matrix_to_bivector, validate_lagrangian, LagrangianReport,
    LagrangianSplitting,
};
pub use spinor::SpinorModule;
