//! Counit-preserving coalgebra morphisms of `S(V)`: stored Taylor families
//! and exponentials of word-length-lowering coderivations.

use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::koszul::k_subsets;
use crate::scalar::Scalar;

use super::coder::Coderivation;
use super::space::{GradedSpace, VElem};
use super::taylor::TaylorMap;
use super::word::{SymElem, SymWord};

#[derive(Debug, Clone)]
pub enum Morphism {
    /// Degree-0 Taylor family `{f_n}_{n>=1}` (so `f_0 = 0`).
    Taylor(TaylorMap),
    /// `e^C` for a coderivation `C` that strictly lowers word length.
    Exp(Coderivation),
}

impl Morphism {
    pub fn identity(space: &Arc<GradedSpace>) -> Morphism {
        Morphism::Exp(Coderivation::zero(space, 0))
    }

    /// Exponential `Id + C + C^2/2! + …` of a coderivation. Refused unless
    /// every component has arity at least 2, which makes `C^n` vanish on
    /// `S^{<=n}(V)` and each evaluation a finite sum.
    pub fn exp(c: Coderivation) -> Result<Morphism> {
        if let Some(&a) = c.taylor.arities().iter().min() {
            if a < 2 {
                return Err(CoreError::Precondition(format!(
                    "exp of a coderivation with an arity-{a} component does not lower \
                     word length; the series would not terminate"
                )));
            }
        }
        Ok(Morphism::Exp(c))
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        match self {
            Morphism::Taylor(t) => &t.space,
            Morphism::Exp(c) => c.space(),
        }
    }

    /// The inverse of `e^C` is `e^{-C}`.
    pub fn inverse(&self) -> Result<Morphism> {
        match self {
            Morphism::Exp(c) => Ok(Morphism::Exp(Coderivation::extend(
                c.taylor.scale(&-Scalar::one()),
            ))),
            Morphism::Taylor(_) => Err(CoreError::Precondition(
                "inverse is only available for exponential morphisms".into(),
            )),
        }
    }

    pub fn apply(&self, e: &SymElem) -> SymElem {
        match self {
            Morphism::Exp(c) => {
                let mut out = e.clone();
                let mut power = e.clone();
                let mut k: i64 = 1;
                let mut factorial: i64 = 1;
                loop {
                    power = c.apply(&power);
                    if power.is_zero() {
                        break;
                    }
                    factorial *= k;
                    out = out.add(&power.scale(&Scalar::rat(1, factorial)));
                    k += 1;
                }
                out
            }
            Morphism::Taylor(t) => {
                let mut out = SymElem::zero(&t.space);
                for (w, c) in &e.terms {
                    out = out.add(&apply_taylor_word(t, w).scale(c));
                }
                out
            }
        }
    }

    /// Taylor component `f_n` on a canonical word: the projection to `V` of
    /// the image of the word.
    pub fn taylor_component(&self, w: &SymWord) -> VElem {
        match self {
            Morphism::Taylor(t) => t.value(w),
            Morphism::Exp(_) => self
                .apply(&SymElem::term(self.space(), w.clone(), Scalar::one()))
                .project_v(),
        }
    }

    /// Materialize Taylor components up to an arity bound.
    pub fn to_taylor(&self, max_arity: usize) -> TaylorMap {
        match self {
            Morphism::Taylor(t) => t.clone(),
            Morphism::Exp(_) => super::coder::taylor_from_action(self.space(), 0, max_arity, |e| {
                self.apply(e)
            }),
        }
    }

    /// Push a Maurer-Cartan-degree element through the morphism:
    /// `sum_{n>=1} (1/n!) f_n(omega^{⊙n})`.
    ///
    /// `omega` must have even degree (odd powers vanish identically and the
    /// series would be meaningless). Termination is verified: after the sum
    /// stabilizes through `cap` terms, the next term must vanish, otherwise
    /// the series is refused as non-terminating under the current truncation.
    pub fn mc_pushforward(&self, omega: &VElem, cap: usize) -> Result<VElem> {
        match omega.homogeneous_degree() {
            Some(d) if d.rem_euclid(2) == 0 => {}
            Some(_) => {
                return Err(CoreError::Precondition(
                    "mc_pushforward: element must have even (shifted) degree".into(),
                ))
            }
            None if omega.is_zero() => return Ok(VElem::zero(&omega.space)),
            None => {
                return Err(CoreError::Precondition(
                    "mc_pushforward: element must be homogeneous".into(),
                ))
            }
        }
        let max_n = match self {
            // finite Taylor family: the sum is finite by construction
            Morphism::Taylor(t) => t.max_arity(),
            Morphism::Exp(_) => cap,
        };
        let mut out = VElem::zero(&omega.space);
        let mut factorial: i64 = 1;
        for n in 1..=max_n {
            factorial *= n as i64;
            let term = self
                .taylor_component_on_power(omega, n)
                .scale(&Scalar::rat(1, factorial));
            out = out.add(&term);
        }
        if matches!(self, Morphism::Exp(_)) {
            let next = self.taylor_component_on_power(omega, max_n + 1);
            if !next.is_zero() {
                return Err(CoreError::NonTerminating(format!(
                    "mc_pushforward: term at arity {} is still nonzero",
                    max_n + 1
                )));
            }
        }
        Ok(out)
    }

    fn taylor_component_on_power(&self, omega: &VElem, n: usize) -> VElem {
        let power = SymElem::power(omega, n);
        let mut out = VElem::zero(&omega.space);
        for (w, c) in &power.terms {
            out = out.add(&self.taylor_component(w).scale(c));
        }
        out
    }
}

/// Apply a Taylor-family morphism to a canonical word: the sum over
/// unordered set partitions `{B_1, …, B_p}` of the word positions of
/// `ε(σ) f(B_1) ⊙ … ⊙ f(B_p)`, blocks extracted smallest-position-first.
fn apply_taylor_word(t: &TaylorMap, w: &SymWord) -> SymElem {
    let space = &t.space;
    if w.is_empty() {
        return SymElem::unit(space);
    }
    let mut out = SymElem::zero(space);
    // stack: (remaining word, accumulated sign, accumulated block images)
    let mut stack: Vec<(SymWord, i8, Vec<VElem>)> = vec![(w.clone(), 1, Vec::new())];
    while let Some((rem, sign, blocks)) = stack.pop() {
        if rem.is_empty() {
            expand_blocks(space, &blocks, sign, &mut out);
            continue;
        }
        let n = rem.len();
        // the first block always contains position 0 of the remaining word
        for k in 1..=n {
            for mut positions in k_subsets(n - 1, k - 1) {
                for p in positions.iter_mut() {
                    *p += 1;
                }
                positions.insert(0, 0);
                let ext = rem.extraction_sign(space, &positions);
                let val = t.value(&rem.select(&positions));
                if val.is_zero() {
                    continue;
                }
                let rest = rem.deselect(&positions);
                let mut next = blocks.clone();
                next.push(val);
                stack.push((rest, sign * ext, next));
            }
        }
    }
    out
}

/// Expand `V_1 ⊙ … ⊙ V_p` for space elements `V_i` into canonical words.
fn expand_blocks(space: &Arc<GradedSpace>, blocks: &[VElem], sign: i8, out: &mut SymElem) {
    let mut indices = Vec::with_capacity(blocks.len());
    let base = if sign < 0 {
        -Scalar::one()
    } else {
        Scalar::one()
    };
    fn rec(
        space: &Arc<GradedSpace>,
        blocks: &[VElem],
        k: usize,
        indices: &mut Vec<u32>,
        coeff: Scalar,
        out: &mut SymElem,
    ) {
        if k == blocks.len() {
            out.add_raw(indices, coeff);
            return;
        }
        for (&i, c) in &blocks[k].coeffs {
            indices.push(i);
            rec(space, blocks, k + 1, indices, &coeff * c, out);
            indices.pop();
        }
    }
    rec(space, blocks, 0, &mut indices, base, out);
}
