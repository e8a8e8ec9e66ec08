//! Koszul-sign combinatorics for graded vector spaces.
//!
//! A permutation acts on a word `v_1 ⊗ … ⊗ v_n` by accumulating the factor
//! `(-1)^{|v_i||v_j|}` each time two adjacent elements are transposed. The
//! resulting sign depends only on the permutation, not on the chosen
//! decomposition into adjacent transpositions.
//!
//! Permutations are represented in image form: `sigma[i] = j` means position
//! `i` of the output word holds the `j`-th input element (0-based).

use crate::error::{CoreError, Result};

pub type Degree = i64;

fn odd(d: Degree) -> bool {
    d.rem_euclid(2) == 1
}

/// Koszul sign of `sigma` on elements with the given degrees.
///
/// Computed as the product of `(-1)^{|v_{sigma[i]}||v_{sigma[j]}|}` over all
/// inversions `i < j`, `sigma[i] > sigma[j]`.
pub fn koszul_sign(degrees: &[Degree], sigma: &[usize]) -> Result<i8> {
    if degrees.len() != sigma.len() {
        return Err(CoreError::arg(format!(
            "koszul_sign: {} degrees vs permutation of length {}",
            degrees.len(),
            sigma.len()
        )));
    }
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || seen[s] {
            return Err(CoreError::arg("koszul_sign: not a permutation"));
        }
        seen[s] = true;
    }
    let mut sign = 1i8;
    for i in 0..n {
        for j in (i + 1)..n {
            if sigma[i] > sigma[j] && odd(degrees[sigma[i]]) && odd(degrees[sigma[j]]) {
                sign = -sign;
            }
        }
    }
    Ok(sign)
}

/// Ordinary sign of a permutation in image form.
pub fn perm_sign(sigma: &[usize]) -> i8 {
    let n = sigma.len();
    let mut sign = 1i8;
    for i in 0..n {
        for j in (i + 1)..n {
            if sigma[i] > sigma[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Stable-sort `items` by key, returning the Koszul sign of the sorting
/// permutation, or `None` when two equal keys of odd degree collide (the
/// word is zero in the graded symmetric or exterior algebra).
pub fn sort_with_sign<K: Ord + Copy>(items: &mut Vec<(K, Degree)>) -> Option<i8> {
    // insertion sort; words are short
    let mut sign = 1i8;
    for i in 1..items.len() {
        let mut j = i;
        while j > 0 && items[j - 1].0 > items[j].0 {
            if odd(items[j - 1].1) && odd(items[j].1) {
                sign = -sign;
            }
            items.swap(j - 1, j);
            j -= 1;
        }
    }
    for w in items.windows(2) {
        if w[0].0 == w[1].0 && odd(w[0].1) {
            return None;
        }
    }
    Some(sign)
}

/// Koszul sign of moving the elements at `positions` (strictly increasing)
/// to the front of a word with the given degrees, preserving the relative
/// order inside and outside the subset.
pub fn front_extraction_sign(degrees: &[Degree], positions: &[usize]) -> i8 {
    let mut sign = 1i8;
    for (k, &p) in positions.iter().enumerate() {
        // element at p jumps over every earlier element not in the subset
        for (q, &d) in degrees.iter().enumerate().take(p) {
            if !positions[..=k].contains(&q) && odd(degrees[p]) && odd(d) {
                sign = -sign;
            }
        }
    }
    sign
}

/// All strictly increasing `k`-subsets of `0..n`.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Enumerate the `(k_1, …, k_j)`-shuffles of `{0..n}` in image form:
/// permutations increasing within each consecutive block of positions.
/// The count is the multinomial coefficient `n! / (k_1! ⋯ k_j!)`.
pub fn enumerate_shuffles(block_sizes: &[usize]) -> Vec<Vec<usize>> {
    let n: usize = block_sizes.iter().sum();
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(
        remaining: Vec<usize>,
        sizes: &[usize],
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if sizes.is_empty() {
            out.push(blocks.concat());
            return;
        }
        for choice in k_subsets(remaining.len(), sizes[0]) {
            let block: Vec<usize> = choice.iter().map(|&i| remaining[i]).collect();
            let rest: Vec<usize> = remaining
                .iter()
                .enumerate()
                .filter(|(i, _)| !choice.contains(i))
                .map(|(_, &v)| v)
                .collect();
            blocks.push(block);
            rec(rest, &sizes[1..], blocks, out);
            blocks.pop();
        }
    }
    rec((0..n).collect(), block_sizes, &mut blocks, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_odd_elements_anticommute() {
        assert_eq!(koszul_sign(&[1, 1], &[1, 0]).unwrap(), -1);
    }

    #[test]
    fn odd_even_swap_is_trivial() {
        assert_eq!(koszul_sign(&[1, 2], &[1, 0]).unwrap(), 1);
    }

    #[test]
    fn cycle_of_three_odds() {
        // (v1,v2,v3) -> (v2,v3,v1): two adjacent swaps, each contributing -1
        assert_eq!(koszul_sign(&[1, 1, 1], &[1, 2, 0]).unwrap(), 1);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(koszul_sign(&[1, 1], &[0, 1, 2]).is_err());
        assert!(koszul_sign(&[1, 1], &[0, 0]).is_err());
    }

    #[test]
    fn koszul_sign_is_multiplicative() {
        // koszul(deg, sigma . tau) = koszul(deg thru tau, sigma) * koszul(deg, tau)
        let degrees = [1, 2, 1, 3];
        let perms: Vec<Vec<usize>> = enumerate_shuffles(&[1, 1, 1, 1]);
        for sigma in &perms {
            for tau in &perms {
                let composed: Vec<usize> = (0..4).map(|i| tau[sigma[i]]).collect();
                let deg_tau: Vec<Degree> = (0..4).map(|i| degrees[tau[i]]).collect();
                let lhs = koszul_sign(&degrees, &composed).unwrap();
                let rhs = koszul_sign(&deg_tau, sigma).unwrap() * koszul_sign(&degrees, tau).unwrap();
                assert_eq!(lhs, rhs, "sigma={sigma:?} tau={tau:?}");
            }
        }
    }

    #[test]
    fn shuffle_counts_match_multinomials() {
        assert_eq!(enumerate_shuffles(&[1, 1]).len(), 2);
        assert_eq!(enumerate_shuffles(&[2, 1]).len(), 3);
        assert_eq!(enumerate_shuffles(&[2, 2]).len(), 6);
        assert_eq!(enumerate_shuffles(&[1, 2, 1]).len(), 12);
        // blocks are increasing
        for sh in enumerate_shuffles(&[2, 2]) {
            assert!(sh[0] < sh[1] && sh[2] < sh[3]);
        }
    }

    #[test]
    fn extraction_sign_matches_full_koszul() {
        // moving positions {1,3} of an odd word to the front
        let degrees = [1, 1, 1, 1, 1];
        let positions = [1, 3];
        let image: Vec<usize> = vec![1, 3, 0, 2, 4];
        assert_eq!(
            front_extraction_sign(&degrees, &positions),
            koszul_sign(&degrees, &image).unwrap()
        );
    }

    #[test]
    fn sort_detects_odd_squares() {
        let mut w = vec![(2u32, 1i64), (2, 1)];
        assert_eq!(sort_with_sign(&mut w), None);
        let mut w = vec![(3u32, 2i64), (3, 2)];
        assert_eq!(sort_with_sign(&mut w), Some(1));
        let mut w = vec![(2u32, 1i64), (1, 1), (0, 1)];
        // full reversal of three odd elements: 3 inversions
        assert_eq!(sort_with_sign(&mut w), Some(-1));
    }
}
