//! Arity-indexed families of symmetric multilinear maps `S^n(V) -> V`.
//!
//! Components are stored extensionally by their values on canonical basis
//! words; arities without a stored component are zero, so a map is always
//! total with finite support.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::koszul::Degree;
use crate::scalar::Scalar;

use super::space::{GradedSpace, VElem};
use super::word::{canonical_words, canonicalize, SymWord};

#[derive(Debug, Clone)]
pub struct TaylorMap {
    pub space: Arc<GradedSpace>,
    pub degree: Degree,
    comps: BTreeMap<usize, BTreeMap<SymWord, VElem>>,
}

impl TaylorMap {
    pub fn new(space: &Arc<GradedSpace>, degree: Degree) -> TaylorMap {
        TaylorMap {
            space: space.clone(),
            degree,
            comps: BTreeMap::new(),
        }
    }

    /// Build one arity component from a function on canonical words.
    pub fn from_fn(
        space: &Arc<GradedSpace>,
        degree: Degree,
        arity: usize,
        mut f: impl FnMut(&SymWord) -> VElem,
    ) -> TaylorMap {
        let mut t = TaylorMap::new(space, degree);
        for w in canonical_words(space, arity) {
            let v = f(&w);
            t.set(w, v);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|c| c.values().all(VElem::is_zero))
    }

    pub fn arities(&self) -> Vec<usize> {
        self.comps
            .iter()
            .filter(|(_, c)| c.values().any(|v| !v.is_zero()))
            .map(|(&n, _)| n)
            .collect()
    }

    pub fn max_arity(&self) -> usize {
        self.arities().into_iter().max().unwrap_or(0)
    }

    pub fn set(&mut self, w: SymWord, v: VElem) {
        assert!(w.is_sorted(), "word not canonical");
        if v.is_zero() {
            return;
        }
        self.comps.entry(w.len()).or_default().insert(w, v);
    }

    pub fn add_to(&mut self, w: &SymWord, v: &VElem) {
        if v.is_zero() {
            return;
        }
        let slot = self
            .comps
            .entry(w.len())
            .or_default()
            .entry(w.clone())
            .or_insert_with(|| VElem::zero(&self.space));
        *slot = slot.add(v);
        if slot.is_zero() {
            self.comps.get_mut(&w.len()).unwrap().remove(w);
        }
    }

    /// Value on a canonical word (zero when absent).
    pub fn value(&self, w: &SymWord) -> VElem {
        self.comps
            .get(&w.len())
            .and_then(|c| c.get(w))
            .cloned()
            .unwrap_or_else(|| VElem::zero(&self.space))
    }

    /// Value on an arbitrary index tuple, with the Koszul sign of sorting.
    pub fn value_raw(&self, indices: &[u32]) -> VElem {
        match canonicalize(&self.space, indices) {
            None => VElem::zero(&self.space),
            Some((w, sign)) => {
                let v = self.value(&w);
                if sign < 0 {
                    v.scale(&-Scalar::one())
                } else {
                    v
                }
            }
        }
    }

    /// Multilinear evaluation: one slot holds a space element, the others
    /// basis indices. Used by the Jacobi and morphism verifiers.
    pub fn value_with_elem(&self, elem: &VElem, rest: &[u32]) -> VElem {
        let mut out = VElem::zero(&self.space);
        for (&i, c) in &elem.coeffs {
            let mut indices = Vec::with_capacity(rest.len() + 1);
            indices.push(i);
            indices.extend_from_slice(rest);
            out = out.add(&self.value_raw(&indices).scale(c));
        }
        out
    }

    pub fn add(&self, other: &TaylorMap) -> TaylorMap {
        assert!(Arc::ptr_eq(&self.space, &other.space));
        assert_eq!(
            self.degree.rem_euclid(2),
            other.degree.rem_euclid(2),
            "adding maps of different parity"
        );
        let mut out = self.clone();
        for (_, comp) in &other.comps {
            for (w, v) in comp {
                out.add_to(w, v);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> TaylorMap {
        let mut out = TaylorMap::new(&self.space, self.degree);
        for (_, comp) in &self.comps {
            for (w, v) in comp {
                out.set(w.clone(), v.scale(c));
            }
        }
        out
    }

    /// Restrict to a single arity.
    pub fn component(&self, arity: usize) -> TaylorMap {
        let mut out = TaylorMap::new(&self.space, self.degree);
        if let Some(comp) = self.comps.get(&arity) {
            for (w, v) in comp {
                out.set(w.clone(), v.clone());
            }
        }
        out
    }

    /// Exact equality of stored values (totality makes this well-defined).
    pub fn equals(&self, other: &TaylorMap) -> bool {
        let arities: std::collections::BTreeSet<usize> = self
            .arities()
            .into_iter()
            .chain(other.arities())
            .collect();
        for n in arities {
            for w in canonical_words(&self.space, n) {
                if self.value(&w) != other.value(&w) {
                    return false;
                }
            }
        }
        true
    }

    /// Whether every stored value raises word degree by exactly the
    /// declared map degree.
    pub fn is_degree_homogeneous(&self) -> bool {
        self.comps.values().flatten().all(|(w, v)| {
            let wd = w.degree(&self.space);
            v.coeffs
                .keys()
                .all(|&i| self.space.degree(i) == wd + self.degree)
        })
    }

    /// All nonzero stored entries, for reporting.
    pub fn entries(&self) -> Vec<(SymWord, VElem)> {
        self.comps
            .values()
            .flat_map(|c| c.iter().map(|(w, v)| (w.clone(), v.clone())))
            .filter(|(_, v)| !v.is_zero())
            .collect()
    }
}
