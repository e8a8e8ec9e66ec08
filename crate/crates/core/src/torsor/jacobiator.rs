//! Jacobiators two ways: the direct generalized-Jacobi sum over shuffles,
//! and the iterated-adjoint formula on the graded pieces of the squared
//! operator. Their agreement is the oracle for every sign convention in the
//! extraction, and both vanish whenever the square is central.

use crate::error::{CoreError, Result};
use crate::exterior::ExteriorElement;
use crate::symalg::{jacobi_row, SymWord};

use super::{BvTorsor, DerivedLInfty};

/// Direct route: the arity-`k` generalized Jacobi expression of the
/// extracted structure, evaluated on basis-word arguments.
pub fn jacobiator_direct(structure: &DerivedLInfty, args: &SymWord) -> ExteriorElement {
    structure
        .forms
        .to_form(&jacobi_row(&structure.brackets.taylor, args))
}

/// Adjoint route: `J_k(x_1, …, x_k) = ad_{x_k} … ad_{x_1}((Δ²)_{4-2k})`,
/// read off as the multiplication operator it becomes. A result that is
/// not a multiplication operator signals a violated order certificate.
pub fn jacobiator_ad(torsor: &BvTorsor, args: &SymWord) -> Result<ExteriorElement> {
    let k = args.len();
    let square = torsor.delta_square();
    let piece = square.piece(4 - 2 * k as i64);
    let mut cur = piece;
    for &i in &args.0 {
        cur = cur.ad_form(
            &torsor.forms.form_of_index(i),
            (torsor.forms.module.space.words[i as usize].len() % 2) as i64,
        );
    }
    cur.as_multiplication().ok_or_else(|| {
        CoreError::Invariant(format!(
            "jacobiator_ad: ad-chain on {:?} is not a multiplication operator",
            args
        ))
    })
}
