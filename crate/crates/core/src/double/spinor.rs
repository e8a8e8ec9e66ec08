//! The spinor module `ΛM*` of a Lagrangian splitting, with M acting by
//! contraction and L by wedging its dual covector. The Fock grading is by
//! word length: `U_k` is spanned by the length-`k` words, `U_0` is the pure
//! spinor line spanned by the unit.

use std::sync::Arc;

use crate::exterior::{
    contract_gen, DualPairing, ExteriorElement, ExteriorSpace, GradedBasis, MultiIndex,
};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

use super::splitting::LagrangianSplitting;

#[derive(Debug)]
pub struct SpinorModule {
    pub split: Arc<LagrangianSplitting>,
    /// Dual basis `m^1 … m^n` of M*, the generators of the spinor space.
    pub form_basis: Arc<GradedBasis>,
    /// Basis `m_1 … m_n` of M as a multivector algebra (for bivectors).
    pub multi_basis: Arc<GradedBasis>,
    pub pairing: DualPairing,
    pub space: Arc<ExteriorSpace>,
    wedge_ops: Vec<Matrix>,
    contract_ops: Vec<Matrix>,
}

impl SpinorModule {
    pub fn new(split: LagrangianSplitting) -> Arc<SpinorModule> {
        let n = split.rank();
        let m_names: Vec<String> = (1..=n).map(|i| format!("m{i}")).collect();
        let form_names: Vec<String> = (1..=n).map(|i| format!("m^{i}")).collect();
        let multi_basis = GradedBasis::new(
            format!("{}-multi", split.m_label),
            m_names.into_iter().map(|s| (s, 1)).collect(),
        );
        let form_basis = GradedBasis::new(
            format!("{}*", split.m_label),
            form_names.into_iter().map(|s| (s, 1)).collect(),
        );
        let pairing = DualPairing::canonical(&multi_basis, &form_basis);
        let space = ExteriorSpace::new(&form_basis);
        let wedge_ops = (0..n)
            .map(|j| space.wedge_operator(&ExteriorElement::generator(&form_basis, j as u32)))
            .collect();
        let contract_ops = (0..n)
            .map(|i| {
                space.contraction_operator(
                    &pairing,
                    &ExteriorElement::generator(&multi_basis, i as u32),
                )
            })
            .collect();
        Arc::new(SpinorModule {
            split: Arc::new(split),
            form_basis,
            multi_basis,
            pairing,
            space,
            wedge_ops,
            contract_ops,
        })
    }

    pub fn rank(&self) -> usize {
        self.split.rank()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn unit(&self) -> ExteriorElement {
        ExteriorElement::unit(&self.form_basis)
    }

    /// Word length of the basis spinor at the given space index.
    pub fn word_length(&self, idx: usize) -> usize {
        self.space.words[idx].len()
    }

    /// Matrix of the Clifford action of a vector of the double:
    /// the M-part contracts, the L-part wedges its dual covector.
    pub fn clifford_op(&self, u: &[Scalar]) -> Matrix {
        let (m, l) = self.split.decompose(u);
        let mut out = Matrix::zero(self.dim(), self.dim());
        for (i, c) in m.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.contract_ops[i].scale(c);
            }
        }
        for (j, c) in l.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.wedge_ops[j].scale(c);
            }
        }
        out
    }

    pub fn clifford_act(&self, u: &[Scalar], rho: &ExteriorElement) -> ExteriorElement {
        let v = self.space.to_vec(rho);
        let img = &self.clifford_op(u) * &Matrix::col_vec(&v);
        self.space.to_elem(&img.column(0))
    }

    /// Matrix of the algebra action of a form `a ∈ ΛM*` (wedge product);
    /// this is how `ΛM*` acts on the module through the identification
    /// with L-multivectors.
    pub fn wedge_op(&self, a: &ExteriorElement) -> Matrix {
        self.space.wedge_operator(a)
    }

    /// Matrix of the interior product by a multivector `x ∈ ΛM`; for a
    /// decomposable word the contractions compose innermost-first, matching
    /// the Clifford quantization of the bivector side.
    pub fn contraction_op(&self, x: &ExteriorElement) -> Matrix {
        self.space.contraction_operator(&self.pairing, x)
    }

    /// The unit-spinor image of an operator, as a form.
    pub fn on_unit(&self, op: &Matrix) -> ExteriorElement {
        let v = self.space.to_vec(&self.unit());
        let img = op * &Matrix::col_vec(&v);
        self.space.to_elem(&img.column(0))
    }

    /// Clifford relation residuals `u·v + v·u - 2<u,v>` over all basis
    /// pairs of the double, as matrices that must vanish.
    pub fn clifford_relation_residuals(&self) -> Vec<(usize, usize, Matrix)> {
        let alg = &self.split.alg;
        let mut bad = Vec::new();
        for i in 0..alg.dim {
            for j in 0..alg.dim {
                let a = self.clifford_op(&alg.basis_vector(i));
                let b = self.clifford_op(&alg.basis_vector(j));
                let anti = &(&a * &b) + &(&b * &a);
                let expected = Matrix::identity(self.dim()).scale(
                    &(&alg.pairing(&alg.basis_vector(i), &alg.basis_vector(j))
                        * &Scalar::from_int(2)),
                );
                let r = &anti - &expected;
                if !r.is_zero() {
                    bad.push((i, j, r));
                }
            }
        }
        bad
    }

    /// Evaluate a form on M-basis generators, first argument contracting
    /// first.
    pub fn evaluate_form(&self, omega: &ExteriorElement, args: &[u32]) -> Scalar {
        let mut cur = omega.clone();
        for &x in args {
            cur = contract_gen(&self.pairing, x, &cur).expect("canonical pairing");
        }
        cur.coeff(&MultiIndex::unit())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::algebra::QuadraticLieAlgebra;

    fn abelian_module(n: usize) -> Arc<SpinorModule> {
        let mut names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
        names.extend((1..=n).map(|i| format!("b{i}")));
        let gram = Matrix::from_fn(2 * n, 2 * n, |i, j| {
            if i + n == j || j + n == i {
                Scalar::rat(1, 2)
            } else {
                Scalar::zero()
            }
        });
        let alg = QuadraticLieAlgebra::from_sparse("abelian", names, &[], gram);
        let m: Vec<Vec<Scalar>> = (0..n).map(|i| alg.basis_vector(i)).collect();
        let l: Vec<Vec<Scalar>> = (0..n).map(|i| alg.basis_vector(n + i)).collect();
        SpinorModule::new(LagrangianSplitting::new(&alg, "M", m, "L", l).unwrap())
    }

    #[test]
    fn m_annihilates_the_unit_and_l_wedges() {
        let module = abelian_module(2);
        let alg = &module.split.alg;
        // m·1 = 0
        let acted = module.clifford_act(&alg.basis_vector(0), &module.unit());
        assert!(acted.is_zero());
        // l·1 = its covector, here m^1
        let acted = module.clifford_act(&alg.basis_vector(2), &module.unit());
        assert_eq!(
            acted,
            ExteriorElement::generator(&module.form_basis, 0)
        );
    }

    #[test]
    fn clifford_relation_holds_for_abelian_splittings() {
        for n in 1..=3 {
            let module = abelian_module(n);
            assert!(module.clifford_relation_residuals().is_empty(), "n = {n}");
        }
    }

    #[test]
    fn fock_grading_matches_word_length() {
        let module = abelian_module(2);
        for (idx, w) in module.space.words.iter().enumerate() {
            assert_eq!(module.word_length(idx), w.len());
        }
    }
}
