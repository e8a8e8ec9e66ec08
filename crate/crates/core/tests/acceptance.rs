//! Acceptance suite: every criterion is checked at tolerance zero (exact
//! arithmetic throughout) and prints one pass/fail line. The suite is the
//! exit gate of the workspace; run it with
//! `cargo test -p linfty --test acceptance -- --nocapture`.

use linfty::catalog::{
    builtin, cartan_cubic_structure, quasitriangular_bridge, triangular_formality, CatalogEntry,
    BUILTIN_NAMES,
};
use linfty::double::{bivector_to_matrix, LagrangianSplitting};
use linfty::exterior::ExteriorElement;
use linfty::matrix::Matrix;
use linfty::mc::{
    complex_blocks, difference_bracket_identity, graph_transform, mc_transport,
    mc_transport_inverse_form, subalgebra_deformation_form, two_form_to_map,
};
use linfty::sampling::Sampler;
use linfty::scalar::Scalar;
use linfty::symalg::{canonical_words, verify_jacobi};
use linfty::torsor::{
    extract_brackets, jacobiator_ad, jacobiator_direct, transport_structure,
    verify_gauge_equivariance, BvTorsor,
};

const ARITY: usize = 4;
const T_ORDER: u32 = 8;

struct Gate {
    failures: Vec<String>,
}

impl Gate {
    fn new() -> Gate {
        Gate { failures: Vec::new() }
    }

    fn criterion(&mut self, number: u32, name: &str, passed: bool, detail: String) {
        println!(
            "criterion {number:02} [{}] {name}{}",
            if passed { "PASS" } else { "FAIL" },
            if detail.is_empty() {
                String::new()
            } else {
                format!(" — {detail}")
            }
        );
        if !passed {
            self.failures.push(format!("criterion {number}: {name} ({detail})"));
        }
    }

    fn finish(self) {
        assert!(
            self.failures.is_empty(),
            "acceptance failures:\n{}",
            self.failures.join("\n")
        );
    }
}

fn entries() -> Vec<CatalogEntry> {
    BUILTIN_NAMES
        .iter()
        .map(|n| builtin(n).expect("catalog entry loads"))
        .collect()
}

/// Every named splitting of every entry, plus the swapped (curved) variants
/// so that the torsors with nonzero curvature are exercised too.
fn catalog_torsors() -> Vec<(String, BvTorsor)> {
    let mut out = Vec::new();
    for entry in entries() {
        for (sname, split) in &entry.splittings {
            let label = format!("{}:{}", entry.spec.name, sname);
            out.push((
                label.clone(),
                BvTorsor::of_splitting(split.clone()).expect("torsor builds"),
            ));
            let swapped = LagrangianSplitting::new(
                &entry.algebra,
                format!("{sname}.l"),
                split.l_basis.clone(),
                format!("{sname}.m"),
                split.m_basis.clone(),
            )
            .expect("swapped splitting");
            out.push((
                format!("{label}~swapped"),
                BvTorsor::of_splitting(swapped).expect("swapped torsor builds"),
            ));
        }
    }
    out
}

#[test]
fn acceptance() {
    let mut gate = Gate::new();

    // 1. Torsor integrity: order bounds of every graded piece and the
    //    derived-bracket identity on all basis pairs, exactly.
    {
        let mut ok = true;
        let mut detail = String::new();
        for (label, torsor) in catalog_torsors() {
            let report = torsor.check_almost();
            if !report.passed() {
                ok = false;
                detail = format!("{label}: order bounds or square integrability fail");
                break;
            }
            let module = torsor.module();
            let alg = &module.split.alg;
            for i in 0..alg.dim {
                for j in 0..alg.dim {
                    let x = module.clifford_op(&alg.basis_vector(i));
                    let y = module.clifford_op(&alg.basis_vector(j));
                    let inner = &(&torsor.delta.mat * &x) + &(&x * &torsor.delta.mat);
                    let got = &(&inner * &y) - &(&y * &inner);
                    let want = module.clifford_op(alg.bracket_basis(i, j));
                    if got != want {
                        ok = false;
                        detail = format!("{label}: derived-bracket identity fails at ({i},{j})");
                    }
                }
            }
        }
        gate.criterion(1, "torsor integrity", ok, detail);
    }

    // 2. Jacobi suite to arity 4 including curved rows, plus the equality
    //    of the direct and adjoint-formula Jacobiators on 100 random tuples.
    {
        let mut ok = true;
        let mut detail = String::new();
        let torsors = catalog_torsors();
        for (label, torsor) in &torsors {
            let structure = extract_brackets(torsor).expect("extraction");
            let report = verify_jacobi(&structure.brackets.taylor, ARITY);
            if !report.passed() {
                ok = false;
                detail = format!("{label}: {} residuals", report.residuals.len());
            }
        }
        let mut s = Sampler::new(101);
        let mut compared = 0usize;
        'outer: while compared < 100 {
            for (label, torsor) in &torsors {
                if compared >= 100 {
                    break 'outer;
                }
                let structure = extract_brackets(torsor).expect("extraction");
                let space = structure.space();
                let arity = 1 + compared % 4;
                let words = canonical_words(space, arity);
                if words.is_empty() {
                    continue;
                }
                let word = words[s.index(words.len())].clone();
                let direct = jacobiator_direct(&structure, &word);
                let ad = jacobiator_ad(torsor, &word).expect("ad route");
                if direct != ad {
                    ok = false;
                    detail = format!("{label}: routes disagree on {word:?}");
                    break 'outer;
                }
                compared += 1;
            }
        }
        gate.criterion(
            2,
            "generalized Jacobi and Jacobiator two-route agreement",
            ok,
            detail,
        );
    }

    // 3. Gauge equivariance, infinitesimal and exponentiated, for every
    //    catalog torsor and 20 random bivectors each.
    {
        let mut ok = true;
        let mut detail = String::new();
        for (label, torsor) in catalog_torsors() {
            let mut s = Sampler::new(301);
            for k in 0..20 {
                let eps = s.exterior_elem(&torsor.module().multi_basis, 2);
                let report =
                    verify_gauge_equivariance(&torsor, &eps, ARITY).expect("gauge check runs");
                if !report.passed() {
                    ok = false;
                    detail = format!("{label}: sample {k} fails");
                    break;
                }
            }
            if !ok {
                break;
            }
        }
        gate.criterion(3, "gauge equivariance (20 random bivectors per torsor)", ok, detail);
    }

    // 4. Morphism certificates for every catalog transversal pair,
    //    including the named r-matrix graphs.
    {
        let mut ok = true;
        let mut detail = String::new();
        for entry in entries() {
            for (sname, split) in &entry.splittings {
                let mut s = Sampler::new(401);
                let e = s.skew_matrix(split.rank());
                let graph = split.graph_lagrangian(&e).expect("graph");
                let cert =
                    transport_structure(split, &graph.l_basis, ARITY).expect("transport");
                if !cert.report.passed() {
                    ok = false;
                    detail = format!("{}:{sname} random graph", entry.spec.name);
                }
            }
            for (rname, rm) in &entry.rmatrices {
                let split = entry.splittings.values().next().expect("splitting");
                let scale = if rm.declared_class == "quasi-triangular" {
                    // the bridge scale pinned by the subalgebra certificate
                    Scalar::rat(1, 2)
                } else {
                    Scalar::one()
                };
                let torsor = BvTorsor::of_splitting(split.clone()).expect("torsor");
                let mut eps = ExteriorElement::zero(&torsor.module().multi_basis);
                for (w, c) in &rm.bivector.terms {
                    eps.add_term(w.clone(), c * &scale);
                }
                let e = bivector_to_matrix(&torsor.module().multi_basis, &eps);
                let graph = split.graph_lagrangian(&e).expect("graph");
                let cert =
                    transport_structure(split, &graph.l_basis, ARITY).expect("transport");
                if !cert.report.passed() {
                    ok = false;
                    detail = format!("{}: r-matrix {rname} graph", entry.spec.name);
                }
            }
        }
        gate.criterion(4, "transversal-pair morphism certificates", ok, detail);
    }

    // 5. Maurer-Cartan transport: the three routes agree exactly in the
    //    truncated ring for 20 random instances per catalog pair, and
    //    Maurer-Cartan solutions map to solutions.
    {
        let mut ok = true;
        let mut detail = String::new();
        let cap = T_ORDER as usize + 2;
        for entry in entries() {
            for (sname, split) in &entry.splittings {
                let mut s = Sampler::new(501);
                let e_raw = s.skew_matrix(split.rank());
                let graph = split.graph_lagrangian(&e_raw).expect("graph");
                let cert =
                    transport_structure(split, &graph.l_basis, ARITY).expect("transport");
                let forms = &cert.target.forms;
                let t = Scalar::t(T_ORDER);
                for k in 0..20 {
                    let w = s.skew_matrix(split.rank()).scale(&t);
                    let series =
                        mc_transport(&cert.eps_matrix, &w, cap).expect("series terminates");
                    let graph_route =
                        graph_transform(&w, &cert.eps_matrix).expect("graph transform");
                    let wform = linfty::mc::map_to_two_form(&forms.module.form_basis, &w);
                    let pushed = cert
                        .morphism
                        .mc_pushforward(&forms.to_velem(&wform), cap)
                        .expect("pushforward terminates");
                    let pushed_mat = if pushed.is_zero() {
                        Matrix::zero(w.rows, w.cols)
                    } else {
                        two_form_to_map(&forms.module.form_basis, &forms.to_form(&pushed))
                    };
                    if series != graph_route || graph_route != pushed_mat {
                        ok = false;
                        detail = format!("{}:{sname} instance {k}", entry.spec.name);
                        break;
                    }
                }
                // Maurer-Cartan solutions map to solutions: inner
                // automorphism deformations of M in the source structure
                let src_split = split.graph_lagrangian(&cert.eps_matrix).expect("graph");
                for g in 0..2 {
                    let u: Vec<Scalar> =
                        (0..entry.algebra.dim).map(|_| s.rat()).collect();
                    let w = subalgebra_deformation_form(&src_split, &u, T_ORDER)
                        .expect("deformation form");
                    let eq = linfty::mc::mc_equivalence_certificate(&cert, &w, cap)
                        .expect("certificate");
                    if !eq.passed() {
                        ok = false;
                        detail = format!("{}:{sname} mc witness {g}", entry.spec.name);
                        break;
                    }
                }
            }
        }
        gate.criterion(5, "Maurer-Cartan transport coherence (t-order 8)", ok, detail);
    }

    // 6. The cubic structure on Λg* for sl2: m1 is the Chevalley-Eilenberg
    //    differential on all words, the binary bracket vanishes on all
    //    words, and l3 is the eta-inverse contraction at the recorded scale.
    {
        let entry = builtin("sl2_double_diag").expect("entry");
        let report = cartan_cubic_structure(&entry.base).expect("certificate");
        let pinned = report.l3_constant == Some(Scalar::rat(1, 8));
        gate.criterion(
            6,
            "cubic structure on Λg* for sl2 (l3 scale 1/8 at the trace form)",
            report.passed() && pinned,
            if pinned {
                String::new()
            } else {
                format!("l3 constant {:?}", report.l3_constant)
            },
        );
    }

    // 7. Triangular formality for the 2-dimensional nonabelian bialgebra.
    {
        let entry = builtin("nonabelian2_double").expect("entry");
        let r = &entry.rmatrices["r"];
        let report = triangular_formality(&entry.base, &r.bivector).expect("certificate");
        gate.criterion(
            7,
            "triangular formality (morphism to the abelian structure, m2' = 0)",
            report.passed() && report.target_m2_zero,
            String::new(),
        );
    }

    // 8. Quasi-triangular bridge for sl2 with the standard r-matrix.
    {
        let entry = builtin("sl2_double_diag").expect("entry");
        let r = &entry.rmatrices["r_st"];
        let report = quasitriangular_bridge(&entry.base, &r.bivector).expect("certificate");
        gate.criterion(
            8,
            "quasi-triangular bridge (graph subalgebra + morphism to arity 4)",
            report.passed(),
            String::new(),
        );
    }

    // 9. Block-matrix layer: 50 random formal instances of sizes 1..=3,
    //    plus the difference-bracket identity on all catalog pairs.
    {
        let mut ok = true;
        let mut detail = String::new();
        let mut s = Sampler::new(901);
        for k in 0..50 {
            let n = 1 + k % 3;
            let phi = s.deformation_matrix(n, T_ORDER, false);
            let phibar = s.deformation_matrix(n, T_ORDER, false);
            let data = match complex_blocks(&phi, &phibar) {
                Ok(d) => d,
                Err(e) => {
                    ok = false;
                    detail = format!("instance {k}: {e}");
                    break;
                }
            };
            let rho = s.matrix(n).scale(&Scalar::one().const_jet(T_ORDER));
            let b = mc_transport_inverse_form(&rho, &data.eps_hat, T_ORDER as usize + 2);
            if b.is_err() {
                ok = false;
                detail = format!("instance {k}: inverse-form series");
                break;
            }
        }
        if ok {
            for entry in entries() {
                for (sname, split) in &entry.splittings {
                    let mut s = Sampler::new(902);
                    let e = s.skew_matrix(split.rank());
                    let graph = split.graph_lagrangian(&e).expect("graph");
                    let cert =
                        transport_structure(split, &graph.l_basis, ARITY).expect("transport");
                    let diff = difference_bracket_identity(&cert).expect("identity runs");
                    if !diff.passed() {
                        ok = false;
                        detail = format!("{}:{sname} difference bracket", entry.spec.name);
                    }
                }
            }
        }
        gate.criterion(9, "block-matrix layer and difference-bracket identity", ok, detail);
    }

    // 10. Out-of-scope acknowledgment: the manifold-level statements are
    //     not reproduced; their finite-dimensional algebraic engines are
    //     covered by criteria 3-5 and 9.
    gate.criterion(
        10,
        "out-of-scope acknowledgment (manifold-level theorems not reproduced)",
        true,
        "algebraic engines covered by criteria 3-5 and 9".into(),
    );

    gate.finish();
}
