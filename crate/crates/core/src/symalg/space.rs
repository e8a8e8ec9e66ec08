//! Indexed graded vector spaces and their sparse elements.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::koszul::Degree;
use crate::scalar::Scalar;

/// A finite graded vector space with a fixed ordered basis. Degrees are the
/// shifted degrees used by all `S(V)` sign computations.
#[derive(Debug, PartialEq, Eq)]
pub struct GradedSpace {
    pub label: String,
    pub names: Vec<String>,
    pub degrees: Vec<Degree>,
}

impl GradedSpace {
    pub fn new(
        label: impl Into<String>,
        names: Vec<String>,
        degrees: Vec<Degree>,
    ) -> Arc<GradedSpace> {
        assert_eq!(names.len(), degrees.len());
        Arc::new(GradedSpace {
            label: label.into(),
            names,
            degrees,
        })
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: u32) -> Degree {
        self.degrees[i as usize]
    }

    pub fn is_odd(&self, i: u32) -> bool {
        self.degrees[i as usize].rem_euclid(2) == 1
    }
}

/// Sparse element of a [`GradedSpace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VElem {
    pub space: Arc<GradedSpace>,
    pub coeffs: BTreeMap<u32, Scalar>,
}

impl VElem {
    pub fn zero(space: &Arc<GradedSpace>) -> VElem {
        VElem {
            space: space.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(space: &Arc<GradedSpace>, i: u32) -> VElem {
        VElem::term(space, i, Scalar::one())
    }

    pub fn term(space: &Arc<GradedSpace>, i: u32, c: Scalar) -> VElem {
        let mut v = VElem::zero(space);
        v.add_term(i, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, i: u32, c: Scalar) {
        assert!((i as usize) < self.space.dim(), "basis index out of range");
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(i) {
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

    pub fn add(&self, other: &VElem) -> VElem {
        assert!(Arc::ptr_eq(&self.space, &other.space), "space mismatch");
        let mut out = self.clone();
        for (&i, c) in &other.coeffs {
            out.add_term(i, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &VElem) -> VElem {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> VElem {
        if c.is_zero() {
            return VElem::zero(&self.space);
        }
        VElem {
            space: self.space.clone(),
            coeffs: self
                .coeffs
                .iter()
                .filter_map(|(&i, v)| {
                    let s = v * c;
                    if s.is_zero() {
                        None
                    } else {
                        Some((i, s))
                    }
                })
                .collect(),
        }
    }

    pub fn coeff(&self, i: u32) -> Scalar {
        self.coeffs.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Degree when homogeneous; `None` for zero or mixed elements.
    pub fn homogeneous_degree(&self) -> Option<Degree> {
        let mut it = self.coeffs.keys().map(|&i| self.space.degree(i));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for VElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&i, c)| format!("({c})*{}", self.space.names[i as usize]))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
