//! The BV torsor abstraction: a graded algebra `A = ΛM*` acting freely on
//! the spinor module with the unit spinor as generator, together with an odd
//! operator whose degree-`(3-2k)` piece is a `k`-th order differential
//! operator. Iterated graded commutators of the pieces with multiplication
//! operators, read off on the unit spinor, produce the curved cubic
//! brackets; centrality of the square makes them an L-infinity structure.

mod gauge;
mod jacobiator;

pub use gauge::{
    mc_functional, r_epsilon, transport_mc, transport_structure, verify_gauge_equivariance,
    GaugeReport, TransportCertificate,
};
pub use jacobiator::{jacobiator_ad, jacobiator_direct};

use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::exterior::ExteriorElement;
use crate::koszul::Degree;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::symalg::{Coderivation, GradedSpace, SymWord, TaylorMap, VElem};

use crate::double::{
    build_hamiltonian, operator_order, CliffordOperator, HamiltonianPieces, LagrangianSplitting,
    OrderCheck, SpinorModule,
};

/// Bridge between the exterior algebra `ΛM*` and the shifted graded space
/// `ΛM*[2]` the symmetric-coalgebra machinery works over: basis words are
/// shared, a length-`k` word carries degree `k - 2`.
#[derive(Debug, Clone)]
pub struct FormSpace {
    pub module: Arc<SpinorModule>,
    pub sym_space: Arc<GradedSpace>,
}

impl FormSpace {
    pub fn new(module: &Arc<SpinorModule>) -> FormSpace {
        let names: Vec<String> = module
            .space
            .words
            .iter()
            .map(|w| {
                if w.is_empty() {
                    "1".to_string()
                } else {
                    w.0.iter()
                        .map(|&i| module.form_basis.name(i).to_string())
                        .collect::<Vec<_>>()
                        .join("^")
                }
            })
            .collect();
        let degrees: Vec<Degree> = module
            .space
            .words
            .iter()
            .map(|w| w.len() as Degree - 2)
            .collect();
        let sym_space = GradedSpace::new(
            format!("Λ{}[2]", module.split.m_label),
            names,
            degrees,
        );
        FormSpace {
            module: module.clone(),
            sym_space,
        }
    }

    pub fn to_velem(&self, e: &ExteriorElement) -> VElem {
        let mut v = VElem::zero(&self.sym_space);
        for (w, c) in &e.terms {
            v.add_term(self.module.space.index_of(w), c.clone());
        }
        v
    }

    pub fn to_form(&self, v: &VElem) -> ExteriorElement {
        let mut e = ExteriorElement::zero(&self.module.form_basis);
        for (&i, c) in &v.coeffs {
            e.add_term(self.module.space.words[i as usize].clone(), c.clone());
        }
        e
    }

    /// The exterior word behind a basis index.
    pub fn form_of_index(&self, i: u32) -> ExteriorElement {
        ExteriorElement::term(
            &self.module.form_basis,
            self.module.space.words[i as usize].clone(),
            Scalar::one(),
        )
    }

    fn word_parity(&self, i: u32) -> i64 {
        (self.module.space.words[i as usize].len() % 2) as i64
    }
}

/// Per-piece order certificates, the integrability certificate of the
/// square, and the recorded centrality observations.
#[derive(Debug, Clone)]
pub struct TorsorReport {
    pub piece_checks: Vec<(i64, usize, OrderCheck)>,
    pub stray_degrees: Vec<i64>,
    /// Jacobiator flatness: every `k`-fold iterated wedge-commutator of the
    /// graded piece `(Δ²)_{4-2k}` vanishes. This is exactly what the
    /// adjoint formula for the Jacobiators requires, and it is strictly
    /// weaker than centrality of the square: the bialgebra doubles have
    /// non-central squares with vanishing Jacobiators.
    pub square_flat_checks: Vec<(i64, bool)>,
    /// `Some(c)` when `Δ² = c · Id`; an observation, not a requirement.
    pub delta_square_scalar: Option<Scalar>,
    pub delta_square_zero: bool,
}

impl TorsorReport {
    /// Almost-torsor: order bounds hold and no stray degrees.
    pub fn almost_torsor(&self) -> bool {
        self.stray_degrees.is_empty() && self.piece_checks.iter().all(|(_, _, c)| c.passed())
    }

    /// The integrability certificate: all Jacobiators vanish identically.
    pub fn square_flat(&self) -> bool {
        self.square_flat_checks.iter().all(|(_, ok)| *ok)
    }

    /// Strict torsor: the square itself vanishes.
    pub fn strict(&self) -> bool {
        self.delta_square_zero
    }

    pub fn passed(&self) -> bool {
        self.almost_torsor() && self.square_flat()
    }
}

/// A (candidate) BV torsor: the spinor module of a splitting together with
/// an odd operator.
#[derive(Debug, Clone)]
pub struct BvTorsor {
    pub forms: FormSpace,
    pub delta: CliffordOperator,
}

impl BvTorsor {
    /// Build the canonical torsor of a splitting: the cubic Hamiltonian on
    /// the spinor module.
    pub fn of_splitting(split: LagrangianSplitting) -> Result<BvTorsor> {
        let module = SpinorModule::new(split);
        let delta = build_hamiltonian(&module)?;
        Ok(BvTorsor {
            forms: FormSpace::new(&module),
            delta,
        })
    }

    pub fn module(&self) -> &Arc<SpinorModule> {
        &self.forms.module
    }

    /// Same spinor module, different odd operator.
    pub fn with_operator(&self, delta: CliffordOperator) -> BvTorsor {
        assert_eq!(delta.parity, 1, "torsor operator must be odd");
        BvTorsor {
            forms: self.forms.clone(),
            delta,
        }
    }

    /// Run the order certificates on every graded piece (degree `3-2k`
    /// must be `k`-th order) and classify `Δ²`.
    pub fn check_almost(&self) -> TorsorReport {
        let mut piece_checks = Vec::new();
        let mut stray = Vec::new();
        for (d, piece) in self.delta.degree_pieces() {
            // degree 3-2k must be k-th order; degrees above +3 admit no k
            let k = (3 - d) / 2;
            if k < 0 || (3 - d) % 2 != 0 {
                stray.push(d);
                continue;
            }
            piece_checks.push((d, k as usize, operator_order(&piece, k as usize)));
        }
        let sq = CliffordOperator::new(
            self.module(),
            &self.delta.mat * &self.delta.mat,
            0,
        );
        // integrability: the degree 4-2k piece of the square must be
        // annihilated by k iterated wedge-commutators (k = 0 means the
        // piece itself vanishes); pieces in other degrees must be absent
        let mut square_flat_checks = Vec::new();
        for (d, piece) in sq.degree_pieces() {
            let ok = if (4 - d) % 2 != 0 || d > 4 {
                false
            } else {
                let k = (4 - d) / 2;
                if k == 0 {
                    piece.is_zero()
                } else {
                    operator_order(&piece, (k - 1) as usize).passed()
                }
            };
            square_flat_checks.push((d, ok));
        }
        TorsorReport {
            piece_checks,
            stray_degrees: stray,
            square_flat_checks,
            delta_square_scalar: sq.as_scalar(),
            delta_square_zero: sq.is_zero(),
        }
    }

    /// Square of the operator (an even operator).
    pub fn delta_square(&self) -> CliffordOperator {
        CliffordOperator::new(self.module(), &self.delta.mat * &self.delta.mat, 0)
    }
}

/// The curved cubic structure extracted from a torsor, with its provenance.
#[derive(Debug, Clone)]
pub struct DerivedLInfty {
    pub forms: FormSpace,
    pub brackets: Coderivation,
}

impl DerivedLInfty {
    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.forms.sym_space
    }

    /// Bracket value `m_k` on exterior-algebra arguments.
    pub fn bracket(&self, args: &[ExteriorElement]) -> ExteriorElement {
        let mut out = VElem::zero(self.space());
        // expand multilinearly over basis words
        let mut expand = vec![(SymWord::unit(), Scalar::one())];
        for a in args {
            let mut next = Vec::new();
            for (w, c) in &expand {
                for (aw, ac) in &a.terms {
                    let mut indices = w.0.clone();
                    indices.push(self.forms.module.space.index_of(aw));
                    next.push((SymWord(indices), c * ac));
                }
            }
            expand = next;
        }
        for (w, c) in &expand {
            out = out.add(&self.brackets.taylor.value_raw(&w.0).scale(c));
        }
        self.forms.to_form(&out)
    }
}

/// Extract the brackets `m_k`, `k <= max_arity`, of an odd operator on the
/// spinor module by iterated graded commutators applied to the unit spinor.
///
/// Each value is certified independent of the evaluation spinor: the
/// resulting operator must be multiplication by a form, which is checked on
/// every basis spinor, not sampled. A failure means an order certificate
/// was wrong and is reported as an invariant violation. Pieces in degrees
/// other than `3 - 2k`, `0 <= k <= max_arity`, are rejected.
pub fn extract_brackets_of_operator(
    forms: &FormSpace,
    op: &CliffordOperator,
    max_arity: usize,
) -> Result<DerivedLInfty> {
    let pieces = op.degree_pieces();
    for d in pieces.keys() {
        let k = (3 - d) / 2;
        if (3 - d) % 2 != 0 || k < 0 || k > max_arity as i64 {
            return Err(CoreError::Invariant(format!(
                "operator has a graded piece in degree {d}, not of the form 3-2k \
                 with 0 <= k <= {max_arity}"
            )));
        }
    }
    let mut taylor = TaylorMap::new(&forms.sym_space, 1);
    for (d, piece) in pieces {
        let k = ((3 - d) / 2) as usize;
        for w in crate::symalg::canonical_words(&forms.sym_space, k) {
            let mut cur = piece.clone();
            for &i in &w.0 {
                cur = cur.ad_form(&forms.form_of_index(i), forms.word_parity(i));
            }
            let Some(value) = cur.as_multiplication() else {
                return Err(CoreError::Invariant(format!(
                    "bracket m_{k} depends on the evaluation spinor on word {:?} \
                     (order certificate violated)",
                    w
                )));
            };
            let v = forms.to_velem(&value);
            if !v.is_zero() {
                taylor.set(w, v);
            }
        }
    }
    Ok(DerivedLInfty {
        forms: forms.clone(),
        brackets: Coderivation::extend(taylor),
    })
}

/// Extract the curved cubic structure of a torsor.
pub fn extract_brackets(torsor: &BvTorsor) -> Result<DerivedLInfty> {
    let report = torsor.check_almost();
    if !report.almost_torsor() {
        return Err(CoreError::Precondition(format!(
            "not an almost BV torsor: stray degrees {:?}, failed orders {:?}",
            report.stray_degrees,
            report
                .piece_checks
                .iter()
                .filter(|(_, _, c)| !c.passed())
                .map(|(d, k, _)| (*d, *k))
                .collect::<Vec<_>>()
        )));
    }
    extract_brackets_of_operator(&torsor.forms, &torsor.delta, 3)
}

/// The Nijenhuis form of M, and the centrality scalar, straight off the
/// torsor.
pub fn torsor_pieces(torsor: &BvTorsor) -> Result<HamiltonianPieces> {
    HamiltonianPieces::decompose(&torsor.delta)
}

/// Evaluate `<[x,y], z>`-style constants against the extracted `m_0`:
/// returns the matrix of `N_M(m_i, m_j, m_k)` alongside `2<[m_i,m_j], m_k>`
/// for golden-test pinning of the convention constant.
pub fn nijenhuis_cross_check(torsor: &BvTorsor) -> Vec<(usize, usize, usize, Scalar, Scalar)> {
    let module = torsor.module();
    let split = &module.split;
    let pieces = HamiltonianPieces::decompose(&torsor.delta).expect("odd cubic operator");
    let n_m = pieces.n_m_form();
    let n = module.rank();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let lhs = module.evaluate_form(&n_m, &[i as u32, j as u32, k as u32]);
                let br = split.alg.bracket(&split.m_basis[i], &split.m_basis[j]);
                let rhs = &split.alg.pairing(&br, &split.m_basis[k]) * &Scalar::from_int(2);
                rows.push((i, j, k, lhs, rhs));
            }
        }
    }
    rows
}

/// Scalar matrix helper for tests.
pub fn scalar_matrix(module: &Arc<SpinorModule>, c: &Scalar) -> Matrix {
    Matrix::identity(module.dim()).scale(c)
}
