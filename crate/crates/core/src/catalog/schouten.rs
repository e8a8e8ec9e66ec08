//! The algebraic Schouten bracket on multivectors, the Chevalley-Eilenberg
//! differential on forms, the Cartan 3-form and its pairing inverse, and the
//! classical Yang-Baxter classification of r-matrices.

use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::exterior::{wedge, ExteriorElement, ExteriorSpace, GradedBasis, MultiIndex};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Schouten bracket of multivectors over a Lie algebra with the given
/// structure constants: the biderivation extension of the Lie bracket,
/// `[x_1∧…∧x_p, y_1∧…∧y_q] = Σ_{i,j} (-1)^{i+j} [x_i,y_j] ∧ rest`.
pub fn schouten_bracket(
    brackets: &[Vec<Vec<Scalar>>],
    a: &ExteriorElement,
    b: &ExteriorElement,
) -> Result<ExteriorElement> {
    if !Arc::ptr_eq(&a.basis, &b.basis) {
        return Err(CoreError::arg("schouten_bracket: different bases"));
    }
    let basis = &a.basis;
    let n = basis.len();
    let mut out = ExteriorElement::zero(basis);
    for (wa, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            for (pi, &gi) in wa.0.iter().enumerate() {
                for (pj, &gj) in wb.0.iter().enumerate() {
                    // [x_i, y_j] as a multivector
                    let mut br = ExteriorElement::zero(basis);
                    for k in 0..n {
                        let c = &brackets[gi as usize][gj as usize][k];
                        if !c.is_zero() {
                            br.add_term(MultiIndex(vec![k as u32]), c.clone());
                        }
                    }
                    if br.is_zero() {
                        continue;
                    }
                    let mut rest_a = wa.0.clone();
                    rest_a.remove(pi);
                    let mut rest_b = wb.0.clone();
                    rest_b.remove(pj);
                    let sign = if (pi + pj) % 2 == 0 {
                        Scalar::one()
                    } else {
                        -Scalar::one()
                    };
                    let coeff = &(ca * cb) * &sign;
                    let ra = ExteriorElement::term(basis, MultiIndex(rest_a), Scalar::one());
                    let rb = ExteriorElement::term(basis, MultiIndex(rest_b), Scalar::one());
                    let term = wedge(&wedge(&br, &ra)?, &rb)?;
                    out = out.add(&term.scale(&coeff));
                }
            }
        }
    }
    Ok(out)
}

/// The Chevalley-Eilenberg differential on `Λg*` as a matrix on the
/// enumerated form space: `d u^k = - Σ_{i<j} c_{ij}^k u^i ∧ u^j`, extended
/// as an odd derivation. The sign convention is pinned by the cross-check
/// against the bracket extracted from the diagonal torsor of the double.
pub fn ce_differential(
    brackets: &[Vec<Vec<Scalar>>],
    form_space: &Arc<ExteriorSpace>,
) -> Matrix {
    let basis = &form_space.basis;
    let n = basis.len();
    // generator images
    let d_gen: Vec<ExteriorElement> = (0..n)
        .map(|k| {
            let mut img = ExteriorElement::zero(basis);
            for i in 0..n {
                for j in (i + 1)..n {
                    let c = &brackets[i][j][k];
                    if !c.is_zero() {
                        img.add_term(MultiIndex(vec![i as u32, j as u32]), -c.clone());
                    }
                }
            }
            img
        })
        .collect();
    let dim = form_space.dim();
    let mut mat = Matrix::zero(dim, dim);
    for (col, w) in form_space.words.iter().enumerate() {
        // odd derivation: d(u_{j1} ∧ … ∧ u_{jq}) = Σ_k (-1)^{k-1} … d(u_{jk}) …
        for (pos, &g) in w.0.iter().enumerate() {
            let mut pre = w.0.clone();
            let post = pre.split_off(pos + 1);
            pre.pop();
            let pre_elem = ExteriorElement::term(basis, MultiIndex(pre), Scalar::one());
            let post_elem = ExteriorElement::term(basis, MultiIndex(post), Scalar::one());
            let sign = if pos % 2 == 0 {
                Scalar::one()
            } else {
                -Scalar::one()
            };
            let term = wedge(&wedge(&pre_elem, &d_gen[g as usize]).unwrap(), &post_elem)
                .unwrap()
                .scale(&sign);
            for (wi, c) in &term.terms {
                let row = form_space.index_of(wi) as usize;
                let v = mat.get(row, col) + c;
                mat.set(row, col, v);
            }
        }
    }
    mat
}

/// The Cartan 3-form `η(x,y,z) = 1/2 <[x,y], z>` of a Lie algebra with an
/// invariant pairing, as a 3-form over the dual basis.
pub fn cartan_three_form(
    brackets: &[Vec<Vec<Scalar>>],
    gram: &Matrix,
    form_basis: &Arc<GradedBasis>,
) -> ExteriorElement {
    let n = form_basis.len();
    let mut out = ExteriorElement::zero(form_basis);
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut v = Scalar::zero();
                for l in 0..n {
                    v = &v + &(&brackets[i][j][l] * gram.get(l, k));
                }
                out.add_term(
                    MultiIndex(vec![i as u32, j as u32, k as u32]),
                    &v * &Scalar::rat(1, 2),
                );
            }
        }
    }
    out
}

/// Raise all indices of a form through the inverse Gram matrix, producing a
/// multivector over the given basis. The raising goes through the evaluation
/// pairing used everywhere else (contraction, first argument first), which
/// differs from slotwise tensor raising by the reversal sign
/// `(-1)^{k(k-1)/2}` on `k`-forms.
pub fn raise_indices(
    gram: &Matrix,
    form: &ExteriorElement,
    multi_basis: &Arc<GradedBasis>,
) -> Result<ExteriorElement> {
    let ginv = gram
        .try_inverse()
        .map_err(|_| CoreError::arg("raise_indices: degenerate pairing"))?;
    let mut out = ExteriorElement::zero(multi_basis);
    for (w, c) in &form.terms {
        // raise each slot: Σ over target tuples of Π G^{-1}
        let k = w.len();
        let c = if (k * k.saturating_sub(1) / 2) % 2 == 1 {
            -c.clone()
        } else {
            c.clone()
        };
        let c = &c;
        let mut targets = vec![0usize; k];
        loop {
            let mut coeff = c.clone();
            for (slot, &src) in w.0.iter().enumerate() {
                coeff = &coeff * ginv.get(src as usize, targets[slot]);
            }
            if !coeff.is_zero() {
                let mut e = ExteriorElement::unit(multi_basis);
                for &t in &targets {
                    e = wedge(
                        &e,
                        &ExteriorElement::generator(multi_basis, t as u32),
                    )?;
                }
                out = out.add(&e.scale(&coeff));
            }
            // advance the index tuple
            let mut pos = 0;
            loop {
                if pos == k {
                    break;
                }
                targets[pos] += 1;
                if targets[pos] < multi_basis.len() {
                    break;
                }
                targets[pos] = 0;
                pos += 1;
            }
            if pos == k {
                break;
            }
        }
    }
    Ok(out)
}

/// Inverse of the Cartan 3-form with respect to the pairing.
pub fn eta_inverse(
    brackets: &[Vec<Vec<Scalar>>],
    gram: &Matrix,
    form_basis: &Arc<GradedBasis>,
    multi_basis: &Arc<GradedBasis>,
) -> Result<ExteriorElement> {
    let eta = cartan_three_form(brackets, gram, form_basis);
    raise_indices(gram, &eta, multi_basis)
}

/// Outcome of the classical Yang-Baxter classification.
#[derive(Debug, Clone)]
pub enum CybeClass {
    /// `[r, r] = 0`.
    Triangular,
    /// `[r, r] = η^{-1}` for the Cartan 3-form of the pairing.
    QuasiTriangular { eta_inv: ExteriorElement },
    /// Neither; carries the residual `[r, r] - η^{-1}` and `[r, r]`.
    Neither {
        schouten_square: ExteriorElement,
        residual: ExteriorElement,
    },
}

impl CybeClass {
    pub fn label(&self) -> &'static str {
        match self {
            CybeClass::Triangular => "triangular",
            CybeClass::QuasiTriangular { .. } => "quasi-triangular",
            CybeClass::Neither { .. } => "neither",
        }
    }
}

/// Classify an r-matrix by computing `[r, r]` through the Schouten bracket
/// and comparing against zero and against the pairing inverse of the
/// Cartan 3-form. A pairing is only required (and must be nondegenerate)
/// when `[r, r]` is nonzero.
pub fn cybe_check(
    brackets: &[Vec<Vec<Scalar>>],
    gram: Option<&Matrix>,
    r: &ExteriorElement,
    form_basis: &Arc<GradedBasis>,
) -> Result<CybeClass> {
    let square = schouten_bracket(brackets, r, r)?;
    if square.is_zero() {
        return Ok(CybeClass::Triangular);
    }
    let gram = gram.ok_or_else(|| {
        CoreError::arg("cybe_check: [r,r] nonzero but no pairing supplied")
    })?;
    if gram.rank() != gram.rows {
        return Err(CoreError::arg("cybe_check: degenerate pairing"));
    }
    let eta_inv = eta_inverse(brackets, gram, form_basis, &r.basis)?;
    let residual = square.sub(&eta_inv);
    if residual.is_zero() {
        Ok(CybeClass::QuasiTriangular { eta_inv })
    } else {
        Ok(CybeClass::Neither {
            schouten_square: square,
            residual,
        })
    }
}
