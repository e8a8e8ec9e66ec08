//! Words of the graded symmetric algebra and sparse elements of `S(V)`.
//!
//! A word is a canonically sorted tuple of basis indices; the Koszul sign
//! produced by sorting is absorbed into the coefficient, and a repeated
//! element of odd degree makes the word zero.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::koszul::{front_extraction_sign, sort_with_sign, Degree};
use crate::scalar::Scalar;

use super::space::{GradedSpace, VElem};

/// Canonically sorted tuple of basis indices of `V`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymWord(pub Vec<u32>);

impl SymWord {
    pub fn unit() -> SymWord {
        SymWord(Vec::new())
    }

    pub fn single(i: u32) -> SymWord {
        SymWord(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_sorted(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn degree(&self, space: &GradedSpace) -> Degree {
        self.0.iter().map(|&i| space.degree(i)).sum()
    }

    pub fn degrees(&self, space: &GradedSpace) -> Vec<Degree> {
        self.0.iter().map(|&i| space.degree(i)).collect()
    }

    /// Sub-word at the given (strictly increasing) positions.
    pub fn select(&self, positions: &[usize]) -> SymWord {
        SymWord(positions.iter().map(|&p| self.0[p]).collect())
    }

    /// Complementary sub-word.
    pub fn deselect(&self, positions: &[usize]) -> SymWord {
        SymWord(
            self.0
                .iter()
                .enumerate()
                .filter(|(p, _)| !positions.contains(p))
                .map(|(_, &i)| i)
                .collect(),
        )
    }

    /// Koszul sign of moving the selected positions to the front.
    pub fn extraction_sign(&self, space: &GradedSpace, positions: &[usize]) -> i8 {
        front_extraction_sign(&self.degrees(space), positions)
    }
}

/// Sort an arbitrary index tuple into canonical form, returning the word and
/// the Koszul sign, or `None` when a repeated odd-degree index makes it zero.
pub fn canonicalize(space: &GradedSpace, indices: &[u32]) -> Option<(SymWord, i8)> {
    let mut items: Vec<(u32, Degree)> =
        indices.iter().map(|&i| (i, space.degree(i))).collect();
    let sign = sort_with_sign(&mut items)?;
    Some((SymWord(items.into_iter().map(|(i, _)| i).collect()), sign))
}

/// Enumerate all canonical words of the given length: non-decreasing index
/// tuples with no repeated odd-degree index.
pub fn canonical_words(space: &Arc<GradedSpace>, len: usize) -> Vec<SymWord> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::with_capacity(len);
    fn rec(
        space: &GradedSpace,
        start: u32,
        len: usize,
        cur: &mut Vec<u32>,
        out: &mut Vec<SymWord>,
    ) {
        if cur.len() == len {
            out.push(SymWord(cur.clone()));
            return;
        }
        for i in start..space.dim() as u32 {
            let repeatable = !space.is_odd(i);
            if let Some(&last) = cur.last() {
                if i == last && !repeatable {
                    continue;
                }
            }
            cur.push(i);
            rec(space, i, len, cur, out);
            cur.pop();
        }
    }
    rec(space, 0, len, &mut cur, &mut out);
    out
}

/// Sparse element of `S(V)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymElem {
    pub space: Arc<GradedSpace>,
    pub terms: BTreeMap<SymWord, Scalar>,
}

impl SymElem {
    pub fn zero(space: &Arc<GradedSpace>) -> SymElem {
        SymElem {
            space: space.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(space: &Arc<GradedSpace>) -> SymElem {
        SymElem::term(space, SymWord::unit(), Scalar::one())
    }

    pub fn term(space: &Arc<GradedSpace>, w: SymWord, c: Scalar) -> SymElem {
        assert!(w.is_sorted(), "word not canonical");
        let mut e = SymElem::zero(space);
        e.add_term(w, c);
        e
    }

    pub fn from_velem(v: &VElem) -> SymElem {
        let mut e = SymElem::zero(&v.space);
        for (&i, c) in &v.coeffs {
            e.add_term(SymWord::single(i), c.clone());
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: SymWord, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    /// Add an arbitrary (unsorted, possibly vanishing) index tuple.
    pub fn add_raw(&mut self, indices: &[u32], c: Scalar) {
        if c.is_zero() {
            return;
        }
        if let Some((w, sign)) = canonicalize(&self.space, indices) {
            let c = if sign < 0 { -c } else { c };
            self.add_term(w, c);
        }
    }

    pub fn add(&self, other: &SymElem) -> SymElem {
        assert!(Arc::ptr_eq(&self.space, &other.space));
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymElem) -> SymElem {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> SymElem {
        if c.is_zero() {
            return SymElem::zero(&self.space);
        }
        SymElem {
            space: self.space.clone(),
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

    /// Part with words of the given length.
    pub fn length_part(&self, len: usize) -> SymElem {
        SymElem {
            space: self.space.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == len)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Projection to `V`: the length-one part as a space element.
    pub fn project_v(&self) -> VElem {
        let mut v = VElem::zero(&self.space);
        for (w, c) in &self.terms {
            if w.len() == 1 {
                v.add_term(w.0[0], c.clone());
            }
        }
        v
    }

    /// Symmetric product of the `n`-th power of a space element.
    pub fn power(v: &VElem, n: usize) -> SymElem {
        let mut out = SymElem::unit(&v.space);
        for _ in 0..n {
            let mut next = SymElem::zero(&v.space);
            for (w, c) in &out.terms {
                for (&i, ci) in &v.coeffs {
                    let mut indices = w.0.clone();
                    indices.push(i);
                    next.add_raw(&indices, c * ci);
                }
            }
            out = next;
        }
        out
    }
}

/// Coproduct of `S(V)` as a sum of word pairs with Koszul signs:
/// on a basis word, the sum over all subsets splitting it in two.
pub fn coproduct(e: &SymElem) -> BTreeMap<(SymWord, SymWord), Scalar> {
    let mut out: BTreeMap<(SymWord, SymWord), Scalar> = BTreeMap::new();
    for (w, c) in &e.terms {
        let n = w.len();
        for k in 0..=n {
            for positions in crate::koszul::k_subsets(n, k) {
                let sign = w.extraction_sign(&e.space, &positions);
                let left = w.select(&positions);
                let right = w.deselect(&positions);
                let mut v = c.clone();
                if sign < 0 {
                    v = -v;
                }
                let entry = out.entry((left, right)).or_insert_with(Scalar::zero);
                *entry = &*entry + &v;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

impl fmt::Display for SymElem {
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
                        .map(|&i| self.space.names[i as usize].clone())
                        .collect::<Vec<_>>()
                        .join("⊙")
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

    fn mixed_space() -> Arc<GradedSpace> {
        GradedSpace::new(
            "V",
            vec!["a".into(), "b".into(), "c".into()],
            vec![0, 1, 1],
        )
    }

    #[test]
    fn canonicalization_signs() {
        let s = mixed_space();
        // swapping two odd elements flips the sign
        let (w, sign) = canonicalize(&s, &[2, 1]).unwrap();
        assert_eq!(w, SymWord(vec![1, 2]));
        assert_eq!(sign, -1);
        // odd square is zero
        assert!(canonicalize(&s, &[1, 1]).is_none());
        // even elements repeat freely
        let (w, sign) = canonicalize(&s, &[0, 0]).unwrap();
        assert_eq!(w, SymWord(vec![0, 0]));
        assert_eq!(sign, 1);
    }

    #[test]
    fn canonical_word_enumeration() {
        let s = mixed_space();
        let w2 = canonical_words(&s, 2);
        // aa, ab, ac, bc -- bb and cc vanish
        assert_eq!(w2.len(), 4);
        assert!(w2.contains(&SymWord(vec![0, 0])));
        assert!(!w2.contains(&SymWord(vec![1, 1])));
    }

    #[test]
    fn power_of_even_element() {
        let s = mixed_space();
        let v = VElem::term(&s, 0, Scalar::from_int(2));
        let p = SymElem::power(&v, 3);
        assert_eq!(
            p.terms.get(&SymWord(vec![0, 0, 0])),
            Some(&Scalar::from_int(8))
        );
    }

    #[test]
    fn power_of_odd_element_vanishes() {
        let s = mixed_space();
        let v = VElem::basis(&s, 1);
        assert!(SymElem::power(&v, 2).is_zero());
    }

    #[test]
    fn coproduct_counts() {
        let s = mixed_space();
        let e = SymElem::term(&s, SymWord(vec![1, 2]), Scalar::one());
        let cp = coproduct(&e);
        // (1, bc), (b, c), (c, b) with sign, (bc, 1)
        assert_eq!(cp.len(), 4);
        assert_eq!(
            cp.get(&(SymWord(vec![2]), SymWord(vec![1]))),
            Some(&Scalar::from_int(-1))
        );
    }
}
