//! Sparse sign-normalized exterior algebra over a graded basis.
//!
//! Words are strictly increasing tuples of generator indices; the empty word
//! is the unit. Coefficients are exact scalars and zero coefficients are never
//! stored. Wedge signs come from the generators' degrees; a repeated generator
//! of odd degree annihilates the word.
//!
//! Interior products compose innermost-first on decomposable multivectors:
//! `i_{x ∧ y} = i_y ∘ i_x`. This convention is pinned by a golden test and
//! every downstream sign depends on it.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::koszul::{sort_with_sign, Degree};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Ordered list of named generators with integer degrees, plus an optional
/// degree shift recorded for the space (elements are never re-indexed; the
/// shift only enters degree computations of whole words).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedBasis {
    pub label: String,
    pub gens: Vec<(String, Degree)>,
    pub shift: i64,
}

impl GradedBasis {
    pub fn new(label: impl Into<String>, gens: Vec<(String, Degree)>) -> Arc<GradedBasis> {
        let basis = GradedBasis {
            label: label.into(),
            gens,
            shift: 0,
        };
        let mut names: Vec<&String> = basis.gens.iter().map(|(n, _)| n).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), basis.gens.len(), "duplicate generator names");
        Arc::new(basis)
    }

    /// Generators of uniform degree 1 (covectors/vectors).
    pub fn odd(label: impl Into<String>, names: &[&str]) -> Arc<GradedBasis> {
        GradedBasis::new(
            label,
            names.iter().map(|n| (n.to_string(), 1)).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn degree(&self, i: u32) -> Degree {
        self.gens[i as usize].1
    }

    pub fn name(&self, i: u32) -> &str {
        &self.gens[i as usize].0
    }

    /// Raw (unshifted) degree of a word.
    pub fn word_degree(&self, w: &MultiIndex) -> Degree {
        w.0.iter().map(|&i| self.degree(i)).sum()
    }

    /// Word degree with the recorded shift applied.
    pub fn shifted_word_degree(&self, w: &MultiIndex) -> Degree {
        self.word_degree(w) - self.shift
    }
}

/// Strictly increasing tuple of basis indices; the empty tuple is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn unit() -> MultiIndex {
        MultiIndex(Vec::new())
    }

    pub fn single(i: u32) -> MultiIndex {
        MultiIndex(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] < w[1])
    }
}

impl Ord for MultiIndex {
    /// Graded-lexicographic: by length, then lexicographically.
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse element of the exterior algebra over a shared basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorElement {
    pub basis: Arc<GradedBasis>,
    pub terms: BTreeMap<MultiIndex, Scalar>,
}

impl ExteriorElement {
    pub fn zero(basis: &Arc<GradedBasis>) -> ExteriorElement {
        ExteriorElement {
            basis: basis.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(basis: &Arc<GradedBasis>) -> ExteriorElement {
        ExteriorElement::term(basis, MultiIndex::unit(), Scalar::one())
    }

    pub fn generator(basis: &Arc<GradedBasis>, i: u32) -> ExteriorElement {
        assert!((i as usize) < basis.len(), "generator index out of range");
        ExteriorElement::term(basis, MultiIndex::single(i), Scalar::one())
    }

    pub fn term(basis: &Arc<GradedBasis>, w: MultiIndex, c: Scalar) -> ExteriorElement {
        assert!(w.is_strictly_increasing(), "multi-index not increasing");
        assert!(
            w.0.iter().all(|&i| (i as usize) < basis.len()),
            "index out of range"
        );
        let mut e = ExteriorElement::zero(basis);
        e.add_term(w, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: MultiIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &ExteriorElement) -> ExteriorElement {
        assert!(Arc::ptr_eq(&self.basis, &other.basis), "basis mismatch");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ExteriorElement) -> ExteriorElement {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> ExteriorElement {
        if c.is_zero() {
            return ExteriorElement::zero(&self.basis);
        }
        ExteriorElement {
            basis: self.basis.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(w, v)| {
                    let s = v * c;
                    if s.is_zero() {
                        None
                    } else {
                        Some((w.clone(), s))
                    }
                })
                .collect(),
        }
    }

    pub fn coeff(&self, w: &MultiIndex) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Homogeneous part of the given word length.
    pub fn length_part(&self, k: usize) -> ExteriorElement {
        ExteriorElement {
            basis: self.basis.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == k)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }
}

/// Wedge two generator words, returning the merged word and Koszul sign,
/// or `None` if a repeated odd generator annihilates the product.
pub fn wedge_words(
    basis: &GradedBasis,
    a: &MultiIndex,
    b: &MultiIndex,
) -> Option<(MultiIndex, i8)> {
    let mut items: Vec<(u32, Degree)> = a
        .0
        .iter()
        .chain(b.0.iter())
        .map(|&i| (i, basis.degree(i)))
        .collect();
    let sign = sort_with_sign(&mut items)?;
    for w in items.windows(2) {
        // repeated even-degree generators have no strictly-increasing form
        assert!(w[0].0 != w[1].0, "repeated even-degree generator unsupported");
    }
    Some((MultiIndex(items.into_iter().map(|(i, _)| i).collect()), sign))
}

/// Bilinear, associative, graded-commutative product.
pub fn wedge(a: &ExteriorElement, b: &ExteriorElement) -> Result<ExteriorElement> {
    if !Arc::ptr_eq(&a.basis, &b.basis) {
        return Err(CoreError::arg("wedge: elements over different bases"));
    }
    let mut out = ExteriorElement::zero(&a.basis);
    for (wa, ca) in &a.terms {
        for (wb, cb) in &b.terms {
            if let Some((w, s)) = wedge_words(&a.basis, wa, wb) {
                let mut c = ca * cb;
                if s < 0 {
                    c = -c;
                }
                out.add_term(w, c);
            }
        }
    }
    Ok(out)
}

/// Pairing data between a multivector basis and a form basis:
/// `values[i][j] = <x_i, e_j>`.
#[derive(Debug, Clone)]
pub struct DualPairing {
    pub multi: Arc<GradedBasis>,
    pub form: Arc<GradedBasis>,
    pub values: Matrix,
}

impl DualPairing {
    /// Canonical duality: `<x_i, e_j> = delta_ij`.
    pub fn canonical(multi: &Arc<GradedBasis>, form: &Arc<GradedBasis>) -> DualPairing {
        assert_eq!(multi.len(), form.len());
        DualPairing {
            multi: multi.clone(),
            form: form.clone(),
            values: Matrix::identity(multi.len()),
        }
    }
}

/// Interior product by a single multivector generator: the odd-derivation
/// contraction acting on the first matching slot.
pub fn contract_gen(
    pairing: &DualPairing,
    x: u32,
    a: &ExteriorElement,
) -> Result<ExteriorElement> {
    if !Arc::ptr_eq(&pairing.form, &a.basis) {
        return Err(CoreError::arg("contract: form over unexpected basis"));
    }
    if (x as usize) >= pairing.multi.len() {
        return Err(CoreError::arg("contract: pairing undefined for generator"));
    }
    let xdeg = pairing.multi.degree(x);
    let mut out = ExteriorElement::zero(&a.basis);
    for (w, c) in &a.terms {
        let mut passed: Degree = 0;
        for (k, &j) in w.0.iter().enumerate() {
            let p = pairing.values.get(x as usize, j as usize);
            if !p.is_zero() {
                let mut rest = w.0.clone();
                rest.remove(k);
                let mut coeff = c * p;
                if xdeg.rem_euclid(2) == 1 && passed.rem_euclid(2) == 1 {
                    coeff = -coeff;
                }
                out.add_term(MultiIndex(rest), coeff);
            }
            passed += a.basis.degree(j);
        }
    }
    Ok(out)
}

/// Interior product by a multivector. For a decomposable word
/// `x_1 ∧ … ∧ x_k` the contractions compose innermost-first:
/// `i_{x_1 ∧ … ∧ x_k} = i_{x_k} ∘ … ∘ i_{x_1}`.
pub fn contract(
    pairing: &DualPairing,
    x: &ExteriorElement,
    a: &ExteriorElement,
) -> Result<ExteriorElement> {
    if !Arc::ptr_eq(&pairing.multi, &x.basis) {
        return Err(CoreError::arg("contract: multivector over unexpected basis"));
    }
    let mut out = ExteriorElement::zero(&a.basis);
    for (wx, cx) in &x.terms {
        let mut cur = a.clone();
        for &g in &wx.0 {
            cur = contract_gen(pairing, g, &cur)?;
            if cur.is_zero() {
                break;
            }
        }
        out = out.add(&cur.scale(cx));
    }
    Ok(out)
}

/// Evaluation of a form on multivector generators:
/// `omega(x_1, …, x_k) = (i_{x_k} ∘ … ∘ i_{x_1})(omega)`, so the first
/// argument contracts first.
pub fn evaluate_form(
    pairing: &DualPairing,
    omega: &ExteriorElement,
    args: &[u32],
) -> Result<Scalar> {
    let mut cur = omega.clone();
    for &x in args {
        cur = contract_gen(pairing, x, &cur)?;
    }
    Ok(cur.coeff(&MultiIndex::unit()))
}

/// The full exterior algebra over a basis as an indexed vector space:
/// all `2^n` words enumerated in graded-lexicographic order.
#[derive(Debug)]
pub struct ExteriorSpace {
    pub basis: Arc<GradedBasis>,
    pub words: Vec<MultiIndex>,
    index: BTreeMap<MultiIndex, u32>,
}

impl ExteriorSpace {
    pub fn new(basis: &Arc<GradedBasis>) -> Arc<ExteriorSpace> {
        let n = basis.len();
        assert!(n <= 16, "exterior space too large to enumerate densely");
        let mut words: Vec<MultiIndex> = (0u32..(1 << n))
            .map(|mask| {
                MultiIndex((0..n as u32).filter(|i| mask & (1 << i) != 0).collect())
            })
            .collect();
        words.sort();
        let index = words
            .iter()
            .enumerate()
            .map(|(k, w)| (w.clone(), k as u32))
            .collect();
        Arc::new(ExteriorSpace {
            basis: basis.clone(),
            words,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn index_of(&self, w: &MultiIndex) -> u32 {
        *self.index.get(w).expect("word not in space")
    }

    pub fn to_vec(&self, e: &ExteriorElement) -> Vec<Scalar> {
        assert!(Arc::ptr_eq(&self.basis, &e.basis));
        let mut v = vec![Scalar::zero(); self.dim()];
        for (w, c) in &e.terms {
            v[self.index_of(w) as usize] = c.clone();
        }
        v
    }

    pub fn to_elem(&self, v: &[Scalar]) -> ExteriorElement {
        assert_eq!(v.len(), self.dim());
        let mut e = ExteriorElement::zero(&self.basis);
        for (k, c) in v.iter().enumerate() {
            e.add_term(self.words[k].clone(), c.clone());
        }
        e
    }

    /// Matrix of left wedge multiplication by `x`.
    pub fn wedge_operator(&self, x: &ExteriorElement) -> Matrix {
        let mut m = Matrix::zero(self.dim(), self.dim());
        for (wx, cx) in &x.terms {
            for (col, w) in self.words.iter().enumerate() {
                if let Some((merged, s)) = wedge_words(&self.basis, wx, w) {
                    let row = self.index_of(&merged) as usize;
                    let mut c = cx.clone();
                    if s < 0 {
                        c = -c;
                    }
                    let v = m.get(row, col) + &c;
                    m.set(row, col, v);
                }
            }
        }
        m
    }

    /// Matrix of the interior product by a multivector over the dual basis
    /// (canonical pairing), composing innermost-first on decomposables.
    pub fn contraction_operator(&self, pairing: &DualPairing, x: &ExteriorElement) -> Matrix {
        let mut m = Matrix::zero(self.dim(), self.dim());
        for (col, w) in self.words.iter().enumerate() {
            let e = ExteriorElement::term(&self.basis, w.clone(), Scalar::one());
            let img = contract(pairing, x, &e).expect("contraction over space bases");
            for (wi, c) in &img.terms {
                let row = self.index_of(wi) as usize;
                let v = m.get(row, col) + c;
                m.set(row, col, v);
            }
        }
        m
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = if w.is_empty() {
                    "1".to_string()
                } else {
                    w.0.iter()
                        .map(|&i| self.basis.name(i).to_string())
                        .collect::<Vec<_>>()
                        .join("^")
                };
                format!("({c})*{word}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odd3() -> Arc<GradedBasis> {
        GradedBasis::odd("W", &["e1", "e2", "e3"])
    }

    #[test]
    fn generator_squares_vanish() {
        let b = odd3();
        let e1 = ExteriorElement::generator(&b, 0);
        assert!(wedge(&e1, &e1).unwrap().is_zero());
    }

    #[test]
    fn odd_generators_anticommute() {
        let b = odd3();
        let e1 = ExteriorElement::generator(&b, 0);
        let e2 = ExteriorElement::generator(&b, 1);
        let a = wedge(&e2, &e1).unwrap();
        let c = wedge(&e1, &e2).unwrap().scale(&-Scalar::one());
        assert_eq!(a, c);
    }

    #[test]
    fn expand_and_cancel() {
        // (e1 + e2) ^ (e1 ^ e2) = 0 in a two-generator odd algebra
        let b = GradedBasis::odd("W", &["e1", "e2"]);
        let s = ExteriorElement::generator(&b, 0).add(&ExteriorElement::generator(&b, 1));
        let e12 = ExteriorElement::term(&b, MultiIndex(vec![0, 1]), Scalar::one());
        assert!(wedge(&s, &e12).unwrap().is_zero());
    }

    #[test]
    fn wedge_is_associative_on_random_triples() {
        use crate::sampling::Sampler;
        let b = GradedBasis::odd("W", &["e1", "e2", "e3", "e4"]);
        let mut s = Sampler::new(7);
        for _ in 0..1000 {
            let x = s.exterior_elem(&b, 2);
            let y = s.exterior_elem(&b, 2);
            let z = s.exterior_elem(&b, 2);
            let left = wedge(&wedge(&x, &y).unwrap(), &z).unwrap();
            let right = wedge(&x, &wedge(&y, &z).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }

    #[test]
    fn base_mismatch_is_an_error() {
        let a = ExteriorElement::unit(&odd3());
        let b = ExteriorElement::unit(&GradedBasis::odd("V", &["f1", "f2", "f3"]));
        assert!(wedge(&a, &b).is_err());
    }

    #[test]
    fn contraction_kills_the_unit() {
        let m = GradedBasis::odd("M", &["m1", "m2"]);
        let mstar = GradedBasis::odd("M*", &["m^1", "m^2"]);
        let p = DualPairing::canonical(&m, &mstar);
        let x = ExteriorElement::generator(&m, 0);
        let unit = ExteriorElement::unit(&mstar);
        assert!(contract(&p, &x, &unit).unwrap().is_zero());
    }

    #[test]
    fn contraction_derivation_rule() {
        // i_m (m* ^ n*) = n* when <m, m*> = 1 and <m, n*> = 0
        let m = GradedBasis::odd("M", &["m", "n"]);
        let mstar = GradedBasis::odd("M*", &["m*", "n*"]);
        let p = DualPairing::canonical(&m, &mstar);
        let word = ExteriorElement::term(&mstar, MultiIndex(vec![0, 1]), Scalar::one());
        let got = contract_gen(&p, 0, &word).unwrap();
        assert_eq!(got, ExteriorElement::generator(&mstar, 1));
    }

    /// Golden test pinning the composition convention for decomposable
    /// interior products: i_{m ∧ n} = i_n ∘ i_m, so
    /// i_{m ∧ n}(m* ∧ n*) = i_n(n*) = +1.
    #[test]
    fn interior_product_composition_convention() {
        let m = GradedBasis::odd("M", &["m", "n"]);
        let mstar = GradedBasis::odd("M*", &["m*", "n*"]);
        let p = DualPairing::canonical(&m, &mstar);
        let mn = ExteriorElement::term(&m, MultiIndex(vec![0, 1]), Scalar::one());
        let word = ExteriorElement::term(&mstar, MultiIndex(vec![0, 1]), Scalar::one());
        let got = contract(&p, &mn, &word).unwrap();
        assert_eq!(got, ExteriorElement::unit(&mstar));
        // and evaluation contracts the first argument first:
        // (m*^n*)(m, n) = +1
        let val = evaluate_form(&p, &word, &[0, 1]).unwrap();
        assert_eq!(val, Scalar::one());
    }

    #[test]
    fn contraction_is_an_odd_derivation() {
        // i_x(a ^ b) = i_x(a) ^ b + (-1)^{|a|} a ^ i_x(b) over all basis words
        let m = GradedBasis::odd("M", &["m1", "m2", "m3", "m4"]);
        let mstar = GradedBasis::odd("M*", &["w1", "w2", "w3", "w4"]);
        let p = DualPairing::canonical(&m, &mstar);
        let space = ExteriorSpace::new(&mstar);
        for x in 0..4u32 {
            for a in &space.words {
                for b in &space.words {
                    let ea = ExteriorElement::term(&mstar, a.clone(), Scalar::one());
                    let eb = ExteriorElement::term(&mstar, b.clone(), Scalar::one());
                    let Ok(ab) = wedge(&ea, &eb) else { continue };
                    let lhs = contract_gen(&p, x, &ab).unwrap();
                    let mut rhs = wedge(&contract_gen(&p, x, &ea).unwrap(), &eb).unwrap();
                    let sign = if a.len() % 2 == 1 {
                        -Scalar::one()
                    } else {
                        Scalar::one()
                    };
                    rhs = rhs.add(
                        &wedge(&ea, &contract_gen(&p, x, &eb).unwrap())
                            .unwrap()
                            .scale(&sign),
                    );
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
