//! Cross-module identities pinning the formula-level behavior of the
//! exponential morphism and the catalog differentials.

use linfty::catalog::{builtin, ce_differential, BUILTIN_NAMES};
use linfty::koszul::enumerate_shuffles;
use linfty::matrix::Matrix;
use linfty::mc::{map_to_two_form, two_form_to_map};
use linfty::sampling::Sampler;
use linfty::symalg::{Morphism, SymElem, SymWord};
use linfty::torsor::{extract_brackets, r_epsilon, BvTorsor};

/// The arity-n component of `e^{R_eps}` on n distinct 2-forms is the sum
/// over all permutations of the alternating matrix products
/// `w_{s(1)} E w_{s(2)} E … E w_{s(n)}`.
#[test]
fn exponential_components_on_distinct_two_forms_are_permutation_sums() {
    let entry = builtin("abelian(3)").unwrap();
    let torsor = BvTorsor::of_splitting(entry.splittings["std"].clone()).unwrap();
    let forms = &torsor.forms;
    let module = &forms.module;
    let mut s = Sampler::new(71);
    let e_mat = s.skew_matrix(3);
    let eps = linfty::double::matrix_to_bivector(&module.multi_basis, &e_mat);
    let f = Morphism::exp(r_epsilon(forms, &eps)).unwrap();

    for n in 2..=3usize {
        let ws: Vec<Matrix> = (0..n).map(|_| s.skew_matrix(3)).collect();
        let w_forms: Vec<_> = ws
            .iter()
            .map(|w| map_to_two_form(&module.form_basis, w))
            .collect();

        // multilinear expansion of f_n(w_1 ⊙ … ⊙ w_n)
        let mut word = SymElem::unit(&forms.sym_space);
        for wf in &w_forms {
            let mut next = SymElem::zero(&forms.sym_space);
            for (w, c) in &word.terms {
                for (mi, cm) in &wf.terms {
                    let mut indices = w.0.clone();
                    indices.push(module.space.index_of(mi));
                    next.add_raw(&indices, c * cm);
                }
            }
            word = next;
        }
        let lhs_v = f.apply(&word).project_v();
        let lhs = if lhs_v.is_zero() {
            Matrix::zero(3, 3)
        } else {
            two_form_to_map(&module.form_basis, &forms.to_form(&lhs_v))
        };

        let mut rhs = Matrix::zero(3, 3);
        for sigma in enumerate_shuffles(&vec![1; n]) {
            let mut acc = ws[sigma[0]].clone();
            for &k in &sigma[1..] {
                acc = &(&acc * &e_mat) * &ws[k];
            }
            rhs = &rhs + &acc;
        }
        assert_eq!(lhs, rhs, "arity {n}");
    }
}

/// The extracted unary bracket equals the Chevalley-Eilenberg differential
/// of the base whenever M is a subalgebra, across the whole catalog.
#[test]
fn extracted_m1_is_the_ce_differential_on_every_entry() {
    for name in BUILTIN_NAMES {
        let entry = builtin(name).unwrap();
        for (sname, split) in &entry.splittings {
            let torsor = BvTorsor::of_splitting(split.clone()).unwrap();
            let structure = extract_brackets(&torsor).unwrap();
            let forms = &structure.forms;
            let module = &forms.module;
            let dim = module.dim();
            let mut m1 = Matrix::zero(dim, dim);
            for i in 0..dim as u32 {
                let img = forms.to_form(&structure.brackets.taylor.value(&SymWord::single(i)));
                for (w, c) in &img.terms {
                    m1.set(module.space.index_of(w) as usize, i as usize, c.clone());
                }
            }
            let dce = ce_differential(&entry.base.brackets, &module.space);
            assert_eq!(m1, dce, "{name}:{sname}");
            // and it squares to zero
            assert!((&dce * &dce).is_zero(), "{name}:{sname}");
        }
    }
}
