//! Two-forms as skew maps `M -> L` under the duality normalization.
//!
//! The single convention constant relating forms and matrices is fixed by
//! the transport-coherence oracle (graph transform = matrix series =
//! pushforward along the exponential morphism) and frozen here: the matrix
//! of a 2-form has `W[j][i] = omega(m_i, m_j)`, so the term `c · m^i ∧ m^j`
//! (i < j) contributes `W[j][i] = c`, `W[i][j] = -c`, with no factor of 2.
//! Bivectors use the mirror convention in `double::bivector_to_matrix`.

use std::sync::Arc;

use crate::exterior::{ExteriorElement, GradedBasis, MultiIndex};
use crate::matrix::Matrix;

pub fn two_form_to_map(form_basis: &Arc<GradedBasis>, omega: &ExteriorElement) -> Matrix {
    assert!(Arc::ptr_eq(&omega.basis, form_basis));
    let n = form_basis.len();
    let mut w = Matrix::zero(n, n);
    for (word, c) in &omega.terms {
        assert_eq!(word.len(), 2, "two_form_to_map expects a 2-form");
        let (i, j) = (word.0[0] as usize, word.0[1] as usize);
        let v = &*w.get(j, i) + c;
        w.set(j, i, v);
        let v = &*w.get(i, j) - c;
        w.set(i, j, v);
    }
    w
}

pub fn map_to_two_form(form_basis: &Arc<GradedBasis>, w: &Matrix) -> ExteriorElement {
    let n = form_basis.len();
    assert_eq!((w.rows, w.cols), (n, n));
    assert!(w.is_skew(), "a 2-form matrix must be skew");
    let mut out = ExteriorElement::zero(form_basis);
    for i in 0..n {
        for j in (i + 1)..n {
            out.add_term(MultiIndex(vec![i as u32, j as u32]), w.get(j, i).clone());
        }
    }
    out
}
