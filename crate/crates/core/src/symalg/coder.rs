//! Coderivations of `S(V)` determined by their Taylor components.
//!
//! A family `{g_j}` extends to the coderivation acting on a word
//! `v_1 ⊙ … ⊙ v_n` as the sum over `j`-subsets `I` of
//! `ε(σ_I) g_j(v_I) ⊙ v_{I^c}`, where `σ_I` brings the subset to the front.
//! The arity-0 component inserts a distinguished element of `V` (curvature).

use std::sync::Arc;

use crate::koszul::{k_subsets, Degree};
use crate::scalar::Scalar;

use super::space::GradedSpace;
use super::taylor::TaylorMap;
use super::word::{canonical_words, SymElem, SymWord};

#[derive(Debug, Clone)]
pub struct Coderivation {
    pub taylor: TaylorMap,
}

impl Coderivation {
    /// Extend a Taylor family to the coderivation it determines.
    pub fn extend(taylor: TaylorMap) -> Coderivation {
        Coderivation { taylor }
    }

    pub fn zero(space: &Arc<GradedSpace>, degree: Degree) -> Coderivation {
        Coderivation {
            taylor: TaylorMap::new(space, degree),
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.taylor.space
    }

    pub fn degree(&self) -> Degree {
        self.taylor.degree
    }

    fn parity(&self) -> i64 {
        self.taylor.degree.rem_euclid(2)
    }

    /// Apply to a single canonical word with coefficient 1.
    pub fn apply_word(&self, w: &SymWord) -> SymElem {
        let space = self.space();
        let mut out = SymElem::zero(space);
        let n = w.len();
        for j in self.taylor.arities() {
            if j > n {
                continue;
            }
            for positions in k_subsets(n, j) {
                let sign = w.extraction_sign(space, &positions);
                let val = self.taylor.value(&w.select(&positions));
                if val.is_zero() {
                    continue;
                }
                let rest = w.deselect(&positions);
                for (&u, cu) in &val.coeffs {
                    let mut indices = Vec::with_capacity(rest.len() + 1);
                    indices.push(u);
                    indices.extend_from_slice(&rest.0);
                    let mut c = cu.clone();
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_raw(&indices, c);
                }
            }
        }
        out
    }

    pub fn apply(&self, e: &SymElem) -> SymElem {
        let mut out = SymElem::zero(self.space());
        for (w, c) in &e.terms {
            out = out.add(&self.apply_word(w).scale(c));
        }
        out
    }

    /// Projection of the action back to Taylor components. Round-trips with
    /// [`Coderivation::extend`] exactly.
    pub fn extract_taylor(&self, max_arity: usize) -> TaylorMap {
        taylor_from_action(self.space(), self.degree(), max_arity, |e| self.apply(e))
    }

    /// Graded commutator `A ∘ B - (-1)^{|A||B|} B ∘ A` as a coderivation,
    /// with Taylor components computed arity by arity.
    pub fn commutator(&self, other: &Coderivation) -> Coderivation {
        assert!(Arc::ptr_eq(self.space(), other.space()));
        let max_arity =
            (self.taylor.max_arity() + other.taylor.max_arity()).saturating_sub(1).max(1);
        let sign = if self.parity() * other.parity() == 1 {
            -Scalar::one()
        } else {
            Scalar::one()
        };
        let taylor = taylor_from_action(
            self.space(),
            self.degree() + other.degree(),
            max_arity,
            |e| {
                let ab = self.apply(&other.apply(e));
                let ba = other.apply(&self.apply(e));
                ab.add(&ba.scale(&-&sign))
            },
        );
        Coderivation::extend(taylor)
    }

    /// Square of an odd coderivation, as Taylor components up to `max_arity`.
    pub fn square_taylor(&self, max_arity: usize) -> TaylorMap {
        taylor_from_action(self.space(), 2 * self.degree(), max_arity, |e| {
            self.apply(&self.apply(e))
        })
    }
}

/// Taylor components of an arbitrary word operator: the projection to `V`
/// of its action on canonical words, up to the given arity.
pub fn taylor_from_action(
    space: &Arc<GradedSpace>,
    degree: Degree,
    max_arity: usize,
    mut op: impl FnMut(&SymElem) -> SymElem,
) -> TaylorMap {
    let mut t = TaylorMap::new(space, degree);
    for n in 0..=max_arity {
        for w in canonical_words(space, n) {
            let image = op(&SymElem::term(space, w.clone(), Scalar::one()));
            let v = image.project_v();
            if !v.is_zero() {
                t.set(w, v);
            }
        }
    }
    t
}
