//! Brute-force verifiers for the generalized Jacobi equations and the
//! L-infinity morphism relations, plus the symmetric/skew bracket conversion.

use std::sync::Arc;

use crate::koszul::{k_subsets, Degree};
use crate::scalar::Scalar;

use super::coder::Coderivation;
use super::morphism::Morphism;
use super::space::{GradedSpace, VElem};
use super::taylor::TaylorMap;
use super::word::{canonical_words, SymElem, SymWord};

/// One failing check: the word it failed on and the exact residual.
#[derive(Debug, Clone)]
pub struct Residual {
    pub arity: usize,
    pub word: String,
    pub value: String,
}

#[derive(Debug, Clone, Default)]
pub struct JacobiReport {
    pub checked_words: usize,
    pub residuals: Vec<Residual>,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

#[derive(Debug, Clone, Default)]
pub struct MorphismReport {
    pub checked_words: usize,
    pub residuals: Vec<Residual>,
}

impl MorphismReport {
    pub fn passed(&self) -> bool {
        self.residuals.is_empty()
    }
}

fn describe_word(space: &GradedSpace, w: &SymWord) -> String {
    if w.is_empty() {
        "1".to_string()
    } else {
        w.0.iter()
            .map(|&i| space.names[i as usize].clone())
            .collect::<Vec<_>>()
            .join("⊙")
    }
}

/// The arity-`n` generalized Jacobi expression on a word:
/// `sum_{k=0}^{n} sum_{Sh(k, n-k)} ε(σ) m_{n-k+1}(m_k(w_I), w_{I^c})`,
/// where shuffles are realized as front extractions of `k`-subsets.
/// Rows `n = 0, 1` include the curvature `m_0`.
pub fn jacobi_row(m: &TaylorMap, w: &SymWord) -> VElem {
    let space = &m.space;
    let n = w.len();
    let mut out = VElem::zero(space);
    for k in 0..=n {
        for positions in k_subsets(n, k) {
            let sign = w.extraction_sign(space, &positions);
            let inner = m.value(&w.select(&positions));
            if inner.is_zero() {
                continue;
            }
            let rest = w.deselect(&positions);
            let mut term = m.value_with_elem(&inner, &rest.0);
            if sign < 0 {
                term = term.scale(&-Scalar::one());
            }
            out = out.add(&term);
        }
    }
    out
}

/// Evaluate the generalized Jacobi equations on every canonical basis word
/// up to arity `max_arity` and report every nonzero residual.
pub fn verify_jacobi(m: &TaylorMap, max_arity: usize) -> JacobiReport {
    let mut report = JacobiReport::default();
    for n in 0..=max_arity {
        for w in canonical_words(&m.space, n) {
            report.checked_words += 1;
            let r = jacobi_row(m, &w);
            if !r.is_zero() {
                report.residuals.push(Residual {
                    arity: n,
                    word: describe_word(&m.space, &w),
                    value: r.to_string(),
                });
            }
        }
    }
    report
}

/// Check the L-infinity morphism relations for `f` from the structure
/// `src` to the structure `tgt`, on basis words up to `max_arity`.
///
/// Both sides of the relation are computed as the projection to `V` of the
/// coalgebra composites `Q_tgt ∘ F` and `F ∘ Q_src`: restricted to `S^n(V)`
/// these are exactly the arity-`n` relation, the cochain-map condition at
/// `n = 1` and the bracket-compatibility relation at `n = 2`. The arity-0
/// row (`m_0` of the target equals `f_1` of the source curvature) is
/// included, so curved structures are supported.
pub fn verify_morphism(
    f: &Morphism,
    src: &Coderivation,
    tgt: &Coderivation,
    max_arity: usize,
) -> MorphismReport {
    let space = f.space();
    assert!(Arc::ptr_eq(space, src.space()) && Arc::ptr_eq(space, tgt.space()));
    let mut report = MorphismReport::default();
    for n in 0..=max_arity {
        for w in canonical_words(space, n) {
            report.checked_words += 1;
            let e = SymElem::term(space, w.clone(), Scalar::one());
            let lhs = tgt.apply(&f.apply(&e)).project_v();
            let rhs = f.apply(&src.apply(&e)).project_v();
            let r = lhs.sub(&rhs);
            if !r.is_zero() {
                report.residuals.push(Residual {
                    arity: n,
                    word: describe_word(space, &w),
                    value: r.to_string(),
                });
            }
        }
    }
    report
}

/// Sign converting a symmetric bracket value to the skew convention on a
/// word with the given degrees (degrees in the unshifted-by-one grading):
/// `l_n(v_1,…,v_n) = (-1)^n (-1)^{sum_i (n-i)|v_i|} m_n(v_1,…,v_n)`.
pub fn skew_sign(degrees: &[Degree]) -> i8 {
    let n = degrees.len() as i64;
    let mut exp = n;
    for (i, d) in degrees.iter().enumerate() {
        exp += (n - (i as i64 + 1)) * d;
    }
    if exp.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Skew bracket value from a symmetric family. `degree_of` supplies the
/// grading in which the skew maps live (one above the stored shifted one).
pub fn skew_from_symm(m: &TaylorMap, w: &SymWord, degree_of: impl Fn(u32) -> Degree) -> VElem {
    let degrees: Vec<Degree> = w.0.iter().map(|&i| degree_of(i)).collect();
    let v = m.value(w);
    if skew_sign(&degrees) < 0 {
        v.scale(&-Scalar::one())
    } else {
        v
    }
}

/// Inverse conversion; the same sign, so the round-trip is the identity.
pub fn symm_from_skew(
    ell_value: &VElem,
    w: &SymWord,
    degree_of: impl Fn(u32) -> Degree,
) -> VElem {
    let degrees: Vec<Degree> = w.0.iter().map(|&i| degree_of(i)).collect();
    if skew_sign(&degrees) < 0 {
        ell_value.scale(&-Scalar::one())
    } else {
        ell_value.clone()
    }
}
