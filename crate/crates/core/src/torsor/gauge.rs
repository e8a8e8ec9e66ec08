//! Gauge equivariance of the derived brackets: the coderivation `R_eps`,
//! the infinitesimal and exponentiated comparison of structures, and the
//! transport certificate between the structures of two transversals.

use crate::error::Result;
use crate::exterior::{contract, wedge, ExteriorElement};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::symalg::{
    canonical_words, taylor_from_action, verify_morphism, Coderivation, Morphism, MorphismReport,
    SymElem, TaylorMap,
};

use crate::double::{matrix_to_bivector, CliffordOperator, LagrangianSplitting};

use super::{extract_brackets, extract_brackets_of_operator, BvTorsor, DerivedLInfty, FormSpace};

/// The arity-2 coderivation `R_eps = [i_eps, mu]` on `S(ΛM*[2])`: on a pair
/// of forms,
/// `R_eps(a ⊙ b) = i_eps(a ∧ b) - i_eps(a) ∧ b - a ∧ i_eps(b)`.
/// Since `i_eps` is even (degree −2), no Koszul corrections appear on basis
/// words.
pub fn r_epsilon(forms: &FormSpace, eps: &ExteriorElement) -> Coderivation {
    let module = &forms.module;
    let pairing = &module.pairing;
    let i_eps = |a: &ExteriorElement| contract(pairing, eps, a).expect("module pairing");
    let mut taylor = TaylorMap::new(&forms.sym_space, 0);
    for w in canonical_words(&forms.sym_space, 2) {
        let a = forms.form_of_index(w.0[0]);
        let b = forms.form_of_index(w.0[1]);
        let ab = wedge(&a, &b).expect("same basis");
        let value = i_eps(&ab)
            .sub(&wedge(&i_eps(&a), &b).expect("same basis"))
            .sub(&wedge(&a, &i_eps(&b)).expect("same basis"));
        let v = forms.to_velem(&value);
        if !v.is_zero() {
            taylor.set(w, v);
        }
    }
    Coderivation::extend(taylor)
}

/// Report of the two-route gauge-equivariance check.
#[derive(Debug, Clone, Default)]
pub struct GaugeReport {
    /// Words where `L∞([Δ, eps]) - [L∞(Δ), R_eps]` is nonzero.
    pub infinitesimal_residuals: Vec<String>,
    /// Words where the brackets of `e^{-eps} Δ e^{eps}` differ from the
    /// Taylor components of `e^{-R} L∞(Δ) e^{R}`.
    pub exponentiated_residuals: Vec<String>,
    pub checked_words: usize,
}

impl GaugeReport {
    pub fn passed(&self) -> bool {
        self.infinitesimal_residuals.is_empty() && self.exponentiated_residuals.is_empty()
    }
}

/// Verify, for one torsor and one bivector:
///
/// (a) the infinitesimal identity: the brackets of the almost torsor
///     `(A, P, [Δ, eps·])` coincide with the Taylor components of the
///     coderivation commutator `[L∞(Δ), R_eps]`, arity by arity;
///
/// (b) the exponentiated identity at the bracket level: the brackets of the
///     conjugated torsor `e^{-eps} Δ e^{eps}` coincide with the Taylor
///     components of `e^{-R_eps} L∞(Δ) e^{R_eps}`.
pub fn verify_gauge_equivariance(
    torsor: &BvTorsor,
    eps: &ExteriorElement,
    max_arity: usize,
) -> Result<GaugeReport> {
    let forms = &torsor.forms;
    let module = &forms.module;
    let structure = extract_brackets(torsor)?;
    let q = &structure.brackets;
    let r = r_epsilon(forms, eps);
    let mut report = GaugeReport::default();

    // (a) infinitesimal
    let eps_op = CliffordOperator::new(module, module.contraction_op(eps), 0);
    let commut = torsor.delta.commutator(&eps_op);
    let lhs = extract_brackets_of_operator(forms, &commut, max_arity)?;
    let rhs = q.commutator(&r);
    for n in 0..=max_arity {
        for w in canonical_words(&forms.sym_space, n) {
            report.checked_words += 1;
            let a = lhs.brackets.taylor.value(&w);
            let b = rhs.taylor.value(&w);
            if a != b {
                report.infinitesimal_residuals.push(format!(
                    "arity {n} word {w:?}: torsor {} vs coderivation {}",
                    a, b
                ));
            }
        }
    }

    // (b) exponentiated, at the bracket level
    let conjugated = torsor.delta.gauge_conjugate(&eps_op);
    let lhs = extract_brackets_of_operator(forms, &conjugated, max_arity)?;
    let f = Morphism::exp(r)?;
    let finv = f.inverse()?;
    let conj_taylor = taylor_from_action(&forms.sym_space, 1, max_arity, |e| {
        finv.apply(&q.apply(&f.apply(e)))
    });
    for n in 0..=max_arity {
        for w in canonical_words(&forms.sym_space, n) {
            let a = lhs.brackets.taylor.value(&w);
            let b = conj_taylor.value(&w);
            if a != b {
                report.exponentiated_residuals.push(format!(
                    "arity {n} word {w:?}: conjugated torsor {} vs conjugated coderivation {}",
                    a, b
                ));
            }
        }
    }
    Ok(report)
}

/// The data certifying the canonical isomorphism between the structures of
/// two transversals of the same M.
#[derive(Debug)]
pub struct TransportCertificate {
    /// Skew map `L -> M` whose graph is `L'`.
    pub eps_matrix: Matrix,
    pub eps_bivector: ExteriorElement,
    /// Structure of the pair `(M, L')` (the source of the morphism).
    pub source: DerivedLInfty,
    /// Structure of the pair `(M, L)` (the target).
    pub target: DerivedLInfty,
    /// The L-infinity isomorphism `e^{R_eps}`.
    pub morphism: Morphism,
    pub report: MorphismReport,
}

/// Solve `L' = graph(eps: L -> M)`, build both torsors over the same
/// exterior algebra of M, and certify `e^{R_eps}` as an L-infinity morphism
/// from the `(M, L')` structure to the `(M, L)` structure up to the given
/// arity.
pub fn transport_structure(
    split: &LagrangianSplitting,
    l_new: &[Vec<Scalar>],
    max_arity: usize,
) -> Result<TransportCertificate> {
    let eps_matrix = split.solve_graph_map(l_new)?;
    let target_torsor = BvTorsor::of_splitting(split.clone())?;
    let source_split = split.graph_lagrangian(&eps_matrix)?;
    let source_torsor = BvTorsor::of_splitting(source_split)?;
    let eps_bivector = matrix_to_bivector(&target_torsor.module().multi_basis, &eps_matrix);
    // both spinor modules share the same exterior algebra of M by
    // construction; rebuild the source structure on the target's FormSpace
    // so the coderivations live on one space
    let source =
        extract_brackets_of_operator(&target_torsor.forms, &transplant(&source_torsor, &target_torsor), 3)?;
    let target = extract_brackets(&target_torsor)?;
    let morphism = Morphism::exp(r_epsilon(&target_torsor.forms, &eps_bivector))?;
    let report = verify_morphism(&morphism, &source.brackets, &target.brackets, max_arity);
    Ok(TransportCertificate {
        eps_matrix,
        eps_bivector,
        source,
        target,
        morphism,
        report,
    })
}

/// Move an operator matrix between two spinor modules over the same M-basis
/// (their word spaces are enumerated identically).
fn transplant(from: &BvTorsor, to: &BvTorsor) -> CliffordOperator {
    assert_eq!(from.module().dim(), to.module().dim());
    CliffordOperator::new(to.module(), from.delta.mat.clone(), from.delta.parity)
}

/// Push a Maurer-Cartan candidate through the transport morphism.
pub fn transport_mc(
    cert: &TransportCertificate,
    omega: &ExteriorElement,
    cap: usize,
) -> Result<ExteriorElement> {
    let fs = &cert.target.forms;
    let v = fs.to_velem(omega);
    Ok(fs.to_form(&cert.morphism.mc_pushforward(&v, cap)?))
}

/// Evaluate the curved Maurer-Cartan functional
/// `MC(w) = sum_k (1/k!) m_k(w, …, w)` of a structure.
pub fn mc_functional(structure: &DerivedLInfty, omega: &ExteriorElement) -> ExteriorElement {
    let fs = &structure.forms;
    let v = fs.to_velem(omega);
    let mut out = crate::symalg::VElem::zero(structure.space());
    let mut factorial: i64 = 1;
    let max = structure.brackets.taylor.max_arity();
    for k in 0..=max {
        if k > 0 {
            factorial *= k as i64;
        }
        let power = SymElem::power(&v, k);
        let mut term = crate::symalg::VElem::zero(structure.space());
        for (w, c) in &power.terms {
            term = term.add(&structure.brackets.taylor.value(w).scale(c));
        }
        out = out.add(&term.scale(&Scalar::rat(1, factorial)));
    }
    fs.to_form(&out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::exterior::MultiIndex;
    use crate::sampling::Sampler;
    use crate::symalg::SymWord;

    fn torsor(name: &str, split: &str) -> BvTorsor {
        let entry = builtin(name).unwrap();
        BvTorsor::of_splitting(entry.splittings[split].clone()).unwrap()
    }

    #[test]
    fn r_epsilon_is_the_commutator_of_contraction_and_wedge() {
        // the stored arity-2 formula equals [iota_eps, mu] as coderivations
        let t = torsor("sl2_double_diag", "diag");
        let forms = &t.forms;
        let mut s = Sampler::new(41);
        let eps = s.exterior_elem(&forms.module.multi_basis, 2);
        let r = r_epsilon(forms, &eps);

        // iota_eps as an arity-1 coderivation of degree -2
        let mut iota = TaylorMap::new(&forms.sym_space, -2);
        for i in 0..forms.sym_space.dim() as u32 {
            let img = contract(&forms.module.pairing, &eps, &forms.form_of_index(i)).unwrap();
            let v = forms.to_velem(&img);
            if !v.is_zero() {
                iota.set(SymWord::single(i), v);
            }
        }
        // mu as an arity-2 coderivation of degree +2
        let mut mu = TaylorMap::new(&forms.sym_space, 2);
        for w in canonical_words(&forms.sym_space, 2) {
            let ab = wedge(&forms.form_of_index(w.0[0]), &forms.form_of_index(w.0[1])).unwrap();
            let v = forms.to_velem(&ab);
            if !v.is_zero() {
                mu.set(w, v);
            }
        }
        let comm = Coderivation::extend(iota).commutator(&Coderivation::extend(mu));
        assert!(comm.taylor.equals(&r.taylor));
        assert_eq!(r.taylor.arities(), vec![2]);
    }

    #[test]
    fn zero_bivector_gives_trivial_gauge_report() {
        let t = torsor("sl2_double_diag", "diag");
        let eps = ExteriorElement::zero(&t.module().multi_basis);
        let report = verify_gauge_equivariance(&t, &eps, 4).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn gauge_equivariance_on_sl2_with_random_bivectors() {
        let t = torsor("sl2_double_diag", "diag");
        let mut s = Sampler::new(7);
        for _ in 0..3 {
            let eps = s.exterior_elem(&t.module().multi_basis, 2);
            let report = verify_gauge_equivariance(&t, &eps, 4).unwrap();
            assert!(report.passed(), "{report:?}");
        }
    }

    #[test]
    fn transport_identity_when_l_is_unchanged() {
        let t = torsor("heisenberg_double", "std");
        let split = &t.module().split;
        let cert = transport_structure(split, &split.l_basis, 4).unwrap();
        assert!(cert.eps_matrix.is_zero());
        assert!(cert.report.passed());
    }

    #[test]
    fn transport_certifies_random_graphs_on_sl2() {
        let entry = builtin("sl2_double_diag").unwrap();
        let split = &entry.splittings["diag"];
        let mut s = Sampler::new(13);
        let e = s.skew_matrix(3);
        let graph = split.graph_lagrangian(&e).unwrap();
        let cert = transport_structure(split, &graph.l_basis, 4).unwrap();
        assert_eq!(cert.eps_matrix, e);
        assert!(cert.report.passed(), "{:?}", cert.report.residuals);
    }

    #[test]
    fn mc_functional_matches_hand_expansion_on_two_forms() {
        let t = torsor("sl2_double_diag", "diag");
        let s = extract_brackets(&t).unwrap();
        let omega = ExteriorElement::term(
            &t.module().form_basis,
            MultiIndex(vec![0, 1]),
            Scalar::rat(2, 3),
        );
        let fs = &s.forms;
        let v = fs.to_velem(&omega);
        let m = &s.brackets.taylor;
        // cubic structure with m0 = m2 = 0 here: MC = m1(w) + (1/6) m3(w,w,w)
        let hand = m
            .value_with_elem(&v, &[])
            .add(&{
                let idx = fs.module.space.index_of(&MultiIndex(vec![0, 1]));
                let c = &(&v.coeff(idx) * &v.coeff(idx)) * &v.coeff(idx);
                m.value(&SymWord(vec![idx, idx, idx])).scale(&(&c * &Scalar::rat(1, 6)))
            });
        let got = mc_functional(&s, &omega);
        assert_eq!(got, fs.to_form(&hand));
    }
}
