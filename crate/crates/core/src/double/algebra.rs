//! Quadratic Lie algebras: structure constants plus an invariant
//! nondegenerate symmetric pairing, with brute-force validation.

use std::sync::Arc;

use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// A Lie algebra with an invariant nondegenerate symmetric product, given by
/// structure constants and a Gram matrix over exact rationals.
#[derive(Debug, Clone)]
pub struct QuadraticLieAlgebra {
    pub name: String,
    pub basis_names: Vec<String>,
    pub dim: usize,
    /// `brackets[i][j]` is the coefficient vector of `[e_i, e_j]`.
    brackets: Vec<Vec<Vec<Scalar>>>,
    pub gram: Matrix,
}

impl QuadraticLieAlgebra {
    pub fn new(
        name: impl Into<String>,
        basis_names: Vec<String>,
        brackets: Vec<Vec<Vec<Scalar>>>,
        gram: Matrix,
    ) -> Arc<QuadraticLieAlgebra> {
        let dim = basis_names.len();
        assert_eq!(brackets.len(), dim);
        assert!(brackets.iter().all(|row| row.len() == dim));
        assert!(brackets
            .iter()
            .all(|row| row.iter().all(|v| v.len() == dim)));
        assert_eq!((gram.rows, gram.cols), (dim, dim));
        Arc::new(QuadraticLieAlgebra {
            name: name.into(),
            basis_names,
            dim,
            brackets,
            gram,
        })
    }

    /// Build from a sparse list of `[i, j, k, c]` entries meaning
    /// `[e_i, e_j] += c e_k`, antisymmetrized automatically when only one
    /// orientation is given.
    pub fn from_sparse(
        name: impl Into<String>,
        basis_names: Vec<String>,
        entries: &[(usize, usize, usize, Scalar)],
        gram: Matrix,
    ) -> Arc<QuadraticLieAlgebra> {
        let dim = basis_names.len();
        let mut brackets = vec![vec![vec![Scalar::zero(); dim]; dim]; dim];
        for (i, j, k, c) in entries {
            brackets[*i][*j][*k] = &brackets[*i][*j][*k] + c;
            brackets[*j][*i][*k] = &brackets[*j][*i][*k] - c;
        }
        QuadraticLieAlgebra::new(name, basis_names, brackets, gram)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.brackets[i][j]
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let mut out = vec![Scalar::zero(); self.dim];
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                if y[j].is_zero() {
                    continue;
                }
                let c = &x[i] * &y[j];
                for k in 0..self.dim {
                    let b = &self.brackets[i][j][k];
                    if !b.is_zero() {
                        out[k] = &out[k] + &(&c * b);
                    }
                }
            }
        }
        out
    }

    pub fn pairing(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let mut s = Scalar::zero();
        for i in 0..self.dim {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim {
                let g = self.gram.get(i, j);
                if !g.is_zero() && !y[j].is_zero() {
                    s = &s + &(&(&x[i] * &y[j]) * g);
                }
            }
        }
        s
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = Scalar::one();
        v
    }
}

/// Residual-level validation report for a quadratic Lie algebra.
#[derive(Debug, Clone, Default)]
pub struct DoubleReport {
    pub antisymmetry: Vec<String>,
    pub jacobi: Vec<String>,
    pub pairing_symmetric: Vec<String>,
    pub invariance: Vec<String>,
    pub nondegenerate: bool,
    pub checked_triples: usize,
}

impl DoubleReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry.is_empty()
            && self.jacobi.is_empty()
            && self.pairing_symmetric.is_empty()
            && self.invariance.is_empty()
            && self.nondegenerate
    }
}

/// Brute-force all defining identities on basis triples: antisymmetry,
/// Jacobi, pairing symmetry, invariance
/// `<[x,y],z> + <y,[x,z]> = 0`, and nondegeneracy of the Gram matrix.
pub fn validate_double(alg: &QuadraticLieAlgebra) -> DoubleReport {
    let n = alg.dim;
    let mut report = DoubleReport {
        nondegenerate: alg.gram.rank() == n,
        ..Default::default()
    };
    let name = |i: usize| alg.basis_names[i].clone();
    for i in 0..n {
        for j in 0..n {
            let bij = alg.bracket_basis(i, j);
            let bji = alg.bracket_basis(j, i);
            for k in 0..n {
                let r = &bij[k] + &bji[k];
                if !r.is_zero() {
                    report.antisymmetry.push(format!(
                        "[{},{}] + [{},{}] has {}-component {}",
                        name(i),
                        name(j),
                        name(j),
                        name(i),
                        name(k),
                        r
                    ));
                }
            }
            let s = &alg.pairing(&alg.basis_vector(i), &alg.basis_vector(j))
                - &alg.pairing(&alg.basis_vector(j), &alg.basis_vector(i));
            if !s.is_zero() {
                report
                    .pairing_symmetric
                    .push(format!("<{},{}> asymmetry {}", name(i), name(j), s));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                report.checked_triples += 1;
                // Jacobi: [[ei,ej],ek] + [[ej,ek],ei] + [[ek,ei],ej] = 0
                let mut acc = alg.bracket(&alg.bracket_basis(i, j).to_vec(), &alg.basis_vector(k));
                let t2 = alg.bracket(&alg.bracket_basis(j, k).to_vec(), &alg.basis_vector(i));
                let t3 = alg.bracket(&alg.bracket_basis(k, i).to_vec(), &alg.basis_vector(j));
                for l in 0..n {
                    acc[l] = &acc[l] + &t2[l];
                    acc[l] = &acc[l] + &t3[l];
                }
                if acc.iter().any(|c| !c.is_zero()) {
                    report.jacobi.push(format!(
                        "jacobi({},{},{}) residual {:?}",
                        name(i),
                        name(j),
                        name(k),
                        acc.iter().map(|c| c.to_string()).collect::<Vec<_>>()
                    ));
                }
                // invariance: <[ei,ej],ek> + <ej,[ei,ek]> = 0
                let inv = &alg.pairing(alg.bracket_basis(i, j), &alg.basis_vector(k))
                    + &alg.pairing(&alg.basis_vector(j), alg.bracket_basis(i, k));
                if !inv.is_zero() {
                    report.invariance.push(format!(
                        "<[{0},{1}],{2}> + <{1},[{0},{2}]> = {3}",
                        name(i),
                        name(j),
                        name(k),
                        inv
                    ));
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Abelian algebra of dimension 2n with the hyperbolic pairing
    /// `<a_i, b_j> = 1/2 delta_ij`.
    pub fn abelian_double(n: usize) -> Arc<QuadraticLieAlgebra> {
        let mut names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
        names.extend((1..=n).map(|i| format!("b{i}")));
        let gram = Matrix::from_fn(2 * n, 2 * n, |i, j| {
            if i + n == j || j + n == i {
                Scalar::rat(1, 2)
            } else {
                Scalar::zero()
            }
        });
        QuadraticLieAlgebra::from_sparse("abelian", names, &[], gram)
    }

    #[test]
    fn abelian_double_validates() {
        let alg = abelian_double(2);
        assert!(validate_double(&alg).passed());
    }

    #[test]
    fn perturbed_structure_constant_breaks_jacobi() {
        // so(3) with one constant changed fails Jacobi but not antisymmetry
        let names = vec!["x".into(), "y".into(), "z".into()];
        let entries = [
            (0usize, 1usize, 2usize, Scalar::one()),
            (1, 2, 0, Scalar::one()),
            (2, 0, 1, Scalar::one()),
            (2, 0, 0, Scalar::one()), // spurious [z,x] += x
        ];
        let alg =
            QuadraticLieAlgebra::from_sparse("broken", names, &entries, Matrix::identity(3));
        let report = validate_double(&alg);
        assert!(report.antisymmetry.is_empty());
        assert!(!report.jacobi.is_empty());
    }
}
