//! Maurer-Cartan transport three ways, exactly: the geometric graph
//! re-expression, the matrix series, and the pushforward along the
//! exponential morphism.

use crate::error::{CoreError, Result};
use crate::exterior::ExteriorElement;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

use crate::double::LagrangianSplitting;
use crate::torsor::{mc_functional, transport_mc, DerivedLInfty, TransportCertificate};

/// Residual of the curved Maurer-Cartan functional, split by word length.
#[derive(Debug, Clone)]
pub struct McReport {
    pub residual: ExteriorElement,
    pub residual_by_degree: Vec<(usize, String)>,
}

impl McReport {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Evaluate `MC(omega) = sum_k (1/k!) m_k(omega, …, omega)` and report the
/// exact residual. For a flat structure with `m_0 = m_3 = 0` this is the
/// classical equation `d omega + 1/2 [omega, omega] = 0` in the symmetric
/// convention.
pub fn mc_check(structure: &DerivedLInfty, omega: &ExteriorElement) -> McReport {
    let residual = mc_functional(structure, omega);
    let mut by_degree = Vec::new();
    for len in 0..=structure.forms.module.rank() {
        let part = residual.length_part(len);
        if !part.is_zero() {
            by_degree.push((len, part.to_string()));
        }
    }
    McReport {
        residual,
        residual_by_degree: by_degree,
    }
}

/// The series `sum_{n>=0} W (E W)^n`, truncated by the scalar context.
/// Terminates when a term vanishes identically (guaranteed for deformation
/// series with no constant term, and for nilpotent `E W`); refused past the
/// cap otherwise.
pub fn mc_transport(eps: &Matrix, omega: &Matrix, cap: usize) -> Result<Matrix> {
    let ew = eps * omega;
    let mut out = omega.clone();
    let mut term = omega.clone();
    for _ in 0..cap {
        term = &term * &ew;
        if term.is_zero() {
            return Ok(out);
        }
        out = &out + &term;
    }
    // one more step must vanish, otherwise the series does not terminate
    // (zero terms propagate, so a single vanishing step ends the series)
    if (&term * &ew).is_zero() {
        Ok(out)
    } else {
        Err(CoreError::NonTerminating(
            "mc_transport: series still nonzero at the truncation cap".into(),
        ))
    }
}

/// Geometric route: re-express the graph of a 2-form over `(M, L)` against
/// the decomposition `(M, L')` with `L' = graph(E)`, by solving the linear
/// graph equations, and verify the closed formula `W (Id - E W)^{-1}`.
pub fn graph_transform(omega: &Matrix, eps: &Matrix) -> Result<Matrix> {
    let n = omega.rows;
    // columns of the graph in (M, L)-coordinates are (e_i, W e_i); the
    // change to (M, L')-adapted coordinates sends (a, b) to (a - E b, b)
    let top = &Matrix::identity(n) - &(eps * omega);
    let bottom = omega.clone();
    // renormalize columns so the top block is the identity
    let top_inv = top.try_inverse().map_err(|_| {
        CoreError::Geometric(
            "graph_transform: Id - eps·omega is singular (graph not transverse to L')".into(),
        )
    })?;
    let solved = &bottom * &top_inv;
    // closed-formula verification
    let closed = omega * &(&Matrix::identity(n) - &(eps * omega)).try_inverse()?;
    if solved != closed {
        return Err(CoreError::Invariant(
            "graph solve disagrees with the closed formula".into(),
        ));
    }
    Ok(solved)
}

/// `B = (1 + rho eps)^{-1} rho = rho - rho·eps·rho + …`, the inverse-form
/// series of the block-matrix layer; agrees with `mc_transport(-eps, rho)`.
pub fn mc_transport_inverse_form(rho: &Matrix, eps: &Matrix, cap: usize) -> Result<Matrix> {
    let n = rho.rows;
    let factor = &Matrix::identity(n) + &(rho * eps);
    let inv = factor.try_inverse().map_err(|_| {
        CoreError::Geometric("mc_transport_inverse_form: 1 + rho·eps is singular".into())
    })?;
    let closed = &inv * rho;
    // series route, with the alternating signs of the geometric expansion
    let series = mc_transport(&(-eps), rho, cap)?;
    if series != closed {
        return Err(CoreError::Invariant(
            "inverse-form series disagrees with the closed formula".into(),
        ));
    }
    Ok(closed)
}

/// Express a subspace transverse to L as the graph of a 2-form over M,
/// returning its matrix: columns `(A; B)` in split coordinates give
/// `W = B A^{-1}`.
pub fn graph_of_subspace(
    split: &LagrangianSplitting,
    vectors: &[Vec<Scalar>],
) -> Result<Matrix> {
    let n = split.rank();
    if vectors.len() != n {
        return Err(CoreError::arg("graph_of_subspace: wrong rank"));
    }
    let mut a = Matrix::zero(n, n);
    let mut b = Matrix::zero(n, n);
    for (j, v) in vectors.iter().enumerate() {
        let (m, l) = split.decompose(v);
        for i in 0..n {
            a.set(i, j, m[i].clone());
            b.set(i, j, l[i].clone());
        }
    }
    let a_inv = a.try_inverse().map_err(|_| {
        CoreError::Geometric("graph_of_subspace: span not transverse to L".into())
    })?;
    Ok(&b * &a_inv)
}

/// The 2-form of the deformed subalgebra `exp(t · ad_u) M`, a guaranteed
/// Maurer-Cartan solution family: conjugating M by an inner automorphism
/// keeps it a Lagrangian subalgebra, and its graph form over `(M, L)`
/// solves the curved Maurer-Cartan equation.
pub fn subalgebra_deformation_form(
    split: &LagrangianSplitting,
    u: &[Scalar],
    t_order: u32,
) -> Result<Matrix> {
    let alg = &split.alg;
    let dim = alg.dim;
    let t = Scalar::t(t_order);
    // exp(t ad_u) columnwise on the M-basis, truncated by the jet context
    let mut new_m = Vec::with_capacity(split.rank());
    for m0 in &split.m_basis {
        let mut acc: Vec<Scalar> = m0.iter().map(|c| c.const_jet(t_order)).collect();
        let mut term: Vec<Scalar> = acc.clone();
        let mut factorial: i64 = 1;
        for k in 1..=(t_order as i64 + 1) {
            term = alg.bracket(u, &term).iter().map(|c| c * &t).collect();
            if term.iter().all(|c| c.is_zero()) {
                break;
            }
            factorial *= k;
            for i in 0..dim {
                acc[i] = &acc[i] + &term[i].div(&Scalar::from_int(factorial))?;
            }
        }
        new_m.push(acc);
    }
    graph_of_subspace(split, &new_m)
}

/// The full equivalence certificate for one transversal pair and one
/// Maurer-Cartan candidate: the precondition check in the source structure,
/// the three transport routes with their exact agreement, and the
/// Maurer-Cartan check of the transported element in the target structure.
#[derive(Debug)]
pub struct McEquivalence {
    pub precondition: McReport,
    pub pushforward: Matrix,
    pub series: Matrix,
    pub graph: Matrix,
    pub routes_agree: bool,
    pub postcondition: McReport,
}

impl McEquivalence {
    pub fn passed(&self) -> bool {
        self.precondition.passed() && self.routes_agree && self.postcondition.passed()
    }
}

/// Certify Maurer-Cartan transport along a certified transversal-pair
/// morphism: `omega` is a 2-form matrix over the source structure
/// `(M, L')`; the three routes into the target description must agree
/// exactly, and Maurer-Cartan solutions must map to solutions.
///
/// Route orientation: the certified morphism `e^{R_eps}` maps the
/// `(M, L')`-structure to the `(M, L)`-structure, and on matrices its
/// pushforward is `W (Id - E W)^{-1}` for the same `E` whose graph cuts
/// out `L'`.
pub fn mc_equivalence_certificate(
    cert: &TransportCertificate,
    omega: &Matrix,
    cap: usize,
) -> Result<McEquivalence> {
    let forms = &cert.source.forms;
    let omega_form = super::skew::map_to_two_form(&forms.module.form_basis, omega);
    let precondition = mc_check(&cert.source, &omega_form);

    let pushed = transport_mc(cert, &omega_form, cap)?;
    let pushforward = if pushed.is_zero() {
        Matrix::zero(omega.rows, omega.cols)
    } else {
        super::skew::two_form_to_map(&forms.module.form_basis, &pushed)
    };
    let series = mc_transport(&cert.eps_matrix, omega, cap)?;
    let graph = graph_transform(omega, &cert.eps_matrix)?;
    let routes_agree = pushforward == series && series == graph;

    let postcondition = mc_check(&cert.target, &pushed);
    Ok(McEquivalence {
        precondition,
        pushforward,
        series,
        graph,
        routes_agree,
        postcondition,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::sampling::Sampler;
    use crate::torsor::transport_structure;

    #[test]
    fn trivial_transports() {
        let n = 3;
        let zero = Matrix::zero(n, n);
        let mut s = Sampler::new(2);
        let w = s.skew_matrix(n);
        assert_eq!(mc_transport(&zero, &w, 8).unwrap(), w);
        assert_eq!(graph_transform(&w, &zero).unwrap(), w);
        assert_eq!(graph_transform(&zero, &w).unwrap(), zero);
        assert_eq!(mc_transport_inverse_form(&w, &zero, 8).unwrap(), w);
    }

    #[test]
    fn nilpotent_series_terminate_exactly() {
        // (E W)^2 = 0: the series is W + WEW exactly
        let mut e = Matrix::zero(2, 2);
        e.set(0, 1, Scalar::one());
        e.set(1, 0, -Scalar::one());
        let mut w = Matrix::zero(2, 2);
        w.set(0, 1, Scalar::one());
        w.set(1, 0, -Scalar::one());
        // here EW = diag(-1,-1), not nilpotent: use a genuinely nilpotent pair
        let mut e2 = Matrix::zero(3, 3);
        e2.set(0, 1, Scalar::one());
        e2.set(1, 0, -Scalar::one());
        let mut w2 = Matrix::zero(3, 3);
        w2.set(1, 2, Scalar::one());
        w2.set(2, 1, -Scalar::one());
        let ew = &e2 * &w2;
        assert!((&ew * &ew).is_zero());
        let got = mc_transport(&e2, &w2, 8).unwrap();
        assert_eq!(got, &w2 + &(&w2 * &ew));
        // the 2x2 pair above has EW = -Id: exercised in the refusal test
        let _ = (e, w);
    }

    #[test]
    fn non_terminating_series_is_refused() {
        // EW = -Id: W(EW)^n never vanishes over plain rationals
        let mut e = Matrix::zero(2, 2);
        e.set(0, 1, Scalar::one());
        e.set(1, 0, -Scalar::one());
        assert!(mc_transport(&e, &e, 8).is_err());
    }

    #[test]
    fn t_series_terminate_by_truncation() {
        let mut s = Sampler::new(23);
        let ord = 6;
        let e = s.deformation_matrix(3, ord, true);
        let w = s.skew_matrix(3).scale(&Scalar::one().const_jet(ord));
        let got = mc_transport(&e, &w, ord as usize + 2).unwrap();
        // closed form agrees in the truncated ring
        let closed = &w
            * &(&Matrix::identity(3) - &(&e * &w))
                .try_inverse()
                .unwrap();
        assert_eq!(got, closed);
        assert_eq!(graph_transform(&w, &e).unwrap(), closed);
    }

    #[test]
    fn inverse_form_on_random_jets() {
        let mut s = Sampler::new(29);
        for n in 1..=3 {
            let eps = s.deformation_matrix(n, 6, false);
            let rho = s.matrix(n).scale(&Scalar::one().const_jet(6));
            let b = mc_transport_inverse_form(&rho, &eps, 10).unwrap();
            let check = &(&Matrix::identity(n) + &(&rho * &eps)) * &b;
            assert_eq!(check, rho);
        }
    }

    #[test]
    fn graph_transform_is_functorial_in_eps() {
        // transforming by E then E' equals transforming by the composed
        // graph data: L'' = graph(E + E') over L, and the second step sees
        // the graph of E' over L' in its own normalized basis
        let mut s = Sampler::new(37);
        for _ in 0..10 {
            let w = s.skew_matrix(3);
            let e1 = s.skew_matrix(3);
            let e2 = s.skew_matrix(3);
            let Ok(step1) = graph_transform(&w, &e1) else { continue };
            let Ok(step2) = graph_transform(&step1, &e2) else { continue };
            let Ok(direct) = graph_transform(&w, &(&e1 + &e2)) else { continue };
            assert_eq!(step2, direct);
        }
    }

    #[test]
    fn transport_coherence_on_the_sl2_pair() {
        // the three routes agree and MC solutions map to MC solutions
        let entry = builtin("sl2_double_diag").unwrap();
        let split = &entry.splittings["diag"];
        let ord = 6;
        let mut s = Sampler::new(43);

        // deformation of L: graph of t-proportional bivector
        let e_raw = s.skew_matrix(3);
        let e = e_raw.scale(&Scalar::t(ord));
        // jets require the splitting data in the jet context: solve over
        // rationals first, then rescale
        let graph_split = split.graph_lagrangian(&e_raw).unwrap();
        let _ = graph_split;

        // certified transport for the rational graph; the coherence test
        // runs with t-scaled forms
        let cert = transport_structure(split, &split.graph_lagrangian(&e_raw).unwrap().l_basis, 4)
            .unwrap();
        assert!(cert.report.passed());

        // a Maurer-Cartan family in the source structure: deform M by an
        // inner automorphism and read its graph over (M, L') since the
        // source of the morphism is the deformed-L structure
        let src_split = split.graph_lagrangian(&cert.eps_matrix).unwrap();
        let u: Vec<Scalar> = entry.algebra.basis_vector(0);
        let w = subalgebra_deformation_form(&src_split, &u, ord).unwrap();
        let eq = mc_equivalence_certificate(&cert_with_jets(&cert, ord), &w, ord as usize + 2)
            .unwrap();
        assert!(eq.precondition.passed(), "{:?}", eq.precondition.residual_by_degree);
        assert!(eq.routes_agree);
        assert!(eq.postcondition.passed(), "{:?}", eq.postcondition.residual_by_degree);
        let _ = e;
    }

    /// The transport certificate is rational; Maurer-Cartan candidates come
    /// as jets. Matrices mix fine, this helper just documents intent.
    fn cert_with_jets(cert: &TransportCertificate, _ord: u32) -> TransportCertificate {
        TransportCertificate {
            eps_matrix: cert.eps_matrix.clone(),
            eps_bivector: cert.eps_bivector.clone(),
            source: cert.source.clone(),
            target: cert.target.clone(),
            morphism: cert.morphism.clone(),
            report: cert.report.clone(),
        }
    }

    #[test]
    fn deliberately_non_mc_form_is_flagged() {
        // on a curved structure (M not a subalgebra) the zero form is not
        // Maurer-Cartan: MC(0) = m0 != 0, and the certificate reports it
        let entry = builtin("sl2_double_diag").unwrap();
        let split = &entry.splittings["diag"];
        let swapped = crate::double::LagrangianSplitting::new(
            &entry.algebra,
            "antidiag",
            split.l_basis.clone(),
            "diag",
            split.m_basis.clone(),
        )
        .unwrap();
        let cert = transport_structure(&swapped, &swapped.l_basis, 4).unwrap();
        let w = Matrix::zero(3, 3);
        let eq = mc_equivalence_certificate(&cert, &w, 8).unwrap();
        assert!(!eq.precondition.passed());
        assert!(eq.routes_agree);
    }
}
