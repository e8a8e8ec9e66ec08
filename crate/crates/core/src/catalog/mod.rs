//! Built-in doubles, Lie bialgebras and r-matrices used as finite test
//! instances, stored as spec files in `data/` and loaded on demand.

mod bialgebra;
mod certs;
mod schouten;
mod spec_file;

pub use bialgebra::{
    canonical_splitting, diagonal_splitting, double_of_quadratic, drinfeld_double, BialgebraSpec,
};
pub use certs::{
    cartan_cubic_structure, quasitriangular_bridge, triangular_formality, BridgeReport,
    CartanCubicReport, FormalityReport, BRIDGE_SCALE,
};
pub use schouten::{
    cartan_three_form, ce_differential, cybe_check, eta_inverse, raise_indices, schouten_bracket,
    CybeClass,
};
pub use spec_file::{RMatrixSpec, SpecFile, SplittingSpec};

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{CoreError, Result};
use crate::exterior::{ExteriorElement, GradedBasis, MultiIndex};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

use crate::double::{LagrangianSplitting, QuadraticLieAlgebra};

/// An r-matrix of a catalog entry: a bivector over the base half of the
/// double with its declared Yang-Baxter class.
#[derive(Debug, Clone)]
pub struct RMatrix {
    pub bivector: ExteriorElement,
    pub declared_class: String,
}

/// The base (first-half) Lie algebra of a catalog double, with the data the
/// Schouten/Chevalley-Eilenberg layer needs.
#[derive(Debug, Clone)]
pub struct BaseAlgebra {
    pub names: Vec<String>,
    pub brackets: Vec<Vec<Vec<Scalar>>>,
    /// Gram block of the base inside the double (may be degenerate for
    /// bialgebra doubles, where the base is not quadratic).
    pub gram: Matrix,
    pub multi_basis: Arc<GradedBasis>,
    pub form_basis: Arc<GradedBasis>,
    pub cobracket: Vec<ExteriorElement>,
}

/// A loaded, validated catalog entry.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub spec: SpecFile,
    pub algebra: Arc<QuadraticLieAlgebra>,
    pub splittings: BTreeMap<String, LagrangianSplitting>,
    pub rmatrices: BTreeMap<String, RMatrix>,
    pub base: BaseAlgebra,
}

pub const BUILTIN_NAMES: [&str; 5] = [
    "abelian(2)",
    "nonabelian2_double",
    "heisenberg_double",
    "sl2_double_diag",
    "sl2_bialgebra_double",
];

/// sl2 over the rationals in the `e, h, f` basis with the trace-form
/// pairing of the defining representation: `<e,f> = 1`, `<h,h> = 2`.
/// This is the recorded pairing scale every η-dependent constant refers to.
pub fn sl2_data() -> (Vec<String>, Vec<Vec<Vec<Scalar>>>, Matrix) {
    let names: Vec<String> = vec!["e".into(), "h".into(), "f".into()];
    let mut brackets = vec![vec![vec![Scalar::zero(); 3]; 3]; 3];
    let mut set = |i: usize, j: usize, k: usize, c: i64| {
        brackets[i][j][k] = Scalar::from_int(c);
        brackets[j][i][k] = Scalar::from_int(-c);
    };
    set(1, 0, 0, 2); // [h, e] = 2e
    set(1, 2, 2, -2); // [h, f] = -2f
    set(0, 2, 1, 1); // [e, f] = h
    let mut gram = Matrix::zero(3, 3);
    gram.set(0, 2, Scalar::one());
    gram.set(2, 0, Scalar::one());
    gram.set(1, 1, Scalar::from_int(2));
    (names, brackets, gram)
}

fn embedded_spec(name: &str) -> Option<&'static str> {
    match name {
        "abelian(2)" | "abelian2" => Some(include_str!("../../data/abelian2.json")),
        "nonabelian2_double" => Some(include_str!("../../data/nonabelian2_double.json")),
        "heisenberg_double" => Some(include_str!("../../data/heisenberg_double.json")),
        "sl2_double_diag" => Some(include_str!("../../data/sl2_double_diag.json")),
        "sl2_bialgebra_double" => Some(include_str!("../../data/sl2_bialgebra_double.json")),
        _ => None,
    }
}

/// Load a built-in entry by name. `abelian(n)` is constructed for any
/// `1 <= n <= 4`; the named doubles load from the shipped spec files.
pub fn builtin(name: &str) -> Result<CatalogEntry> {
    if let Some(text) = embedded_spec(name) {
        return load_entry(&SpecFile::parse(text)?);
    }
    if let Some(n) = name
        .strip_prefix("abelian(")
        .and_then(|s| s.strip_suffix(')'))
        .and_then(|s| s.parse::<usize>().ok())
    {
        if (1..=4).contains(&n) {
            return load_entry(&abelian_spec(n));
        }
        return Err(CoreError::UnknownCatalog(format!(
            "{name} (supported ranks: 1..=4)"
        )));
    }
    Err(CoreError::UnknownCatalog(name.into()))
}

/// Instantiate and certify a spec file: the algebra validates, every
/// declared splitting is Lagrangian and transverse, and every declared
/// r-matrix class is re-derived by `cybe_check`.
pub fn load_entry(spec: &SpecFile) -> Result<CatalogEntry> {
    let algebra = spec.to_algebra()?;
    let mut splittings = BTreeMap::new();
    for (sname, sp) in &spec.splittings {
        let m = SpecFile::parse_vectors(&sp.m)?;
        let l = SpecFile::parse_vectors(&sp.l)?;
        let split = LagrangianSplitting::new(
            &algebra,
            format!("{sname}.m"),
            m,
            format!("{sname}.l"),
            l,
        )?;
        splittings.insert(sname.clone(), split);
    }
    let base = base_of(spec, &algebra)?;
    let mut rmatrices = BTreeMap::new();
    for (rname, rm) in &spec.rmatrices {
        let mut bivector = ExteriorElement::zero(&base.multi_basis);
        for (i, j, c) in &rm.terms {
            if i >= j || *j >= base.names.len() {
                return Err(CoreError::Parse(format!(
                    "r-matrix `{rname}`: bad bivector term ({i}, {j})"
                )));
            }
            bivector.add_term(
                MultiIndex(vec![*i as u32, *j as u32]),
                Scalar::parse_rat(c)?,
            );
        }
        let gram_ok = base.gram.rank() == base.names.len();
        let class = cybe_check(
            &base.brackets,
            gram_ok.then_some(&base.gram),
            &bivector,
            &base.form_basis,
        )?;
        if class.label() != rm.class {
            return Err(CoreError::Precondition(format!(
                "r-matrix `{rname}` declared {} but certifies as {}",
                rm.class,
                class.label()
            )));
        }
        rmatrices.insert(
            rname.clone(),
            RMatrix {
                bivector,
                declared_class: rm.class.clone(),
            },
        );
    }
    Ok(CatalogEntry {
        spec: spec.clone(),
        algebra,
        splittings,
        rmatrices,
        base,
    })
}

/// The base half of a double: names, restricted brackets and gram block,
/// plus the cobracket read off the file.
fn base_of(spec: &SpecFile, algebra: &Arc<QuadraticLieAlgebra>) -> Result<BaseAlgebra> {
    let n = spec.dim / 2;
    let names: Vec<String> = spec.basis[..n].to_vec();
    let mut brackets = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for (k, c) in algebra.bracket_basis(i, j).iter().enumerate().take(n) {
                brackets[i][j][k] = c.clone();
            }
            // the base must actually be a subalgebra for this view
            for c in algebra.bracket_basis(i, j).iter().skip(n) {
                if !c.is_zero() {
                    return Err(CoreError::Parse(
                        "first half of the basis is not a subalgebra".into(),
                    ));
                }
            }
        }
    }
    let gram = Matrix::from_fn(n, n, |i, j| algebra.gram.get(i, j).clone());
    let multi_basis = GradedBasis::new(
        format!("{}-base", spec.name),
        names.iter().map(|s| (s.clone(), 1)).collect(),
    );
    let form_basis = GradedBasis::new(
        format!("{}-base*", spec.name),
        names.iter().map(|s| (format!("{s}^"), 1)).collect(),
    );
    let mut cobracket: Vec<ExteriorElement> = (0..n)
        .map(|_| ExteriorElement::zero(&multi_basis))
        .collect();
    for (i, j, k, c) in &spec.cobracket {
        if *i >= n || *j >= *k || *k >= n {
            return Err(CoreError::Parse("bad cobracket entry".into()));
        }
        cobracket[*i].add_term(
            MultiIndex(vec![*j as u32, *k as u32]),
            Scalar::parse_rat(c)?,
        );
    }
    Ok(BaseAlgebra {
        names,
        brackets,
        gram,
        multi_basis,
        form_basis,
        cobracket,
    })
}

fn fmt_scalar_rows(m: &[Vec<Scalar>]) -> Vec<Vec<String>> {
    m.iter()
        .map(|r| r.iter().map(|c| c.to_string()).collect())
        .collect()
}

fn abelian_spec(n: usize) -> SpecFile {
    let dim = 2 * n;
    let mut basis: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    basis.extend((1..=n).map(|i| format!("b{i}")));
    let gram = Matrix::from_fn(dim, dim, |i, j| {
        if i + n == j || j + n == i {
            Scalar::rat(1, 2)
        } else {
            Scalar::zero()
        }
    });
    let m: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut v = vec![Scalar::zero(); dim];
            v[i] = Scalar::one();
            v
        })
        .collect();
    let l: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut v = vec![Scalar::zero(); dim];
            v[n + i] = Scalar::one();
            v
        })
        .collect();
    let mut splittings = BTreeMap::new();
    splittings.insert(
        "std".to_string(),
        SplittingSpec {
            m: fmt_scalar_rows(&m),
            l: fmt_scalar_rows(&l),
        },
    );
    SpecFile {
        schema_version: 1,
        name: format!("abelian({n})"),
        dim,
        basis,
        degrees: vec![0; dim],
        brackets: vec![],
        gram: (0..dim)
            .map(|i| (0..dim).map(|j| gram.get(i, j).to_string()).collect())
            .collect(),
        splittings,
        rmatrices: BTreeMap::new(),
        cobracket: vec![],
    }
}

/// Programmatic constructions of the shipped catalog entries; the data
/// files are their canonical serializations, regenerated by the ignored
/// test below when the constructions change.
pub fn generate_builtin_specs() -> Vec<(String, SpecFile)> {
    let mut out = Vec::new();
    out.push(("abelian2".to_string(), abelian_spec(2)));

    // 2-dim nonabelian bialgebra with zero cobracket, plus r = x∧y
    {
        let spec = BialgebraSpec::new(
            vec!["x".into(), "y".into()],
            &[(0, 1, 1, Scalar::one())],
            &[],
        );
        let d = drinfeld_double(&spec).expect("nonabelian2 double");
        let mut file = spec_of_double(&d, "nonabelian2_double", 2);
        file.rmatrices.insert(
            "r".into(),
            RMatrixSpec {
                terms: vec![(0, 1, "1".into())],
                class: "triangular".into(),
            },
        );
        out.push(("nonabelian2_double".to_string(), file));
    }

    // Heisenberg algebra [p, q] = z with zero cobracket
    {
        let spec = BialgebraSpec::new(
            vec!["p".into(), "q".into(), "z".into()],
            &[(0, 1, 2, Scalar::one())],
            &[],
        );
        let d = drinfeld_double(&spec).expect("heisenberg double");
        let file = spec_of_double(&d, "heisenberg_double", 3);
        out.push(("heisenberg_double".to_string(), file));
    }

    // sl2 ⊕ sl2~ with the diagonal/antidiagonal splitting and r_st
    {
        let (names, brackets, gram) = sl2_data();
        let d = double_of_quadratic("sl2_double_diag", &names, &brackets, &gram);
        let split = diagonal_splitting(&d).expect("diagonal splitting");
        let mut file = spec_of_double(&d, "sl2_double_diag", 3);
        file.splittings.clear();
        file.splittings.insert(
            "diag".into(),
            SplittingSpec {
                m: fmt_scalar_rows(&split.m_basis),
                l: fmt_scalar_rows(&split.l_basis),
            },
        );
        file.rmatrices.insert(
            "r_st".into(),
            RMatrixSpec {
                terms: vec![(0, 2, "1/2".into())],
                class: "quasi-triangular".into(),
            },
        );
        out.push(("sl2_double_diag".to_string(), file));
    }

    // sl2 with the standard cobracket delta(r_st)
    {
        let (names, brackets, _) = sl2_data();
        let mut spec = BialgebraSpec::new(names, &[], &[]);
        spec.brackets = brackets;
        let r = ExteriorElement::term(
            &spec.multi_basis,
            MultiIndex(vec![0, 2]),
            Scalar::rat(1, 2),
        );
        let mut cob_entries = Vec::new();
        for i in 0..3u32 {
            let xi = ExteriorElement::generator(&spec.multi_basis, i);
            let di = schouten_bracket(&spec.brackets, &xi, &r).expect("same basis");
            spec.cobracket[i as usize] = di.clone();
            for (w, c) in &di.terms {
                cob_entries.push((
                    i as usize,
                    w.0[0] as usize,
                    w.0[1] as usize,
                    c.to_string(),
                ));
            }
        }
        let d = drinfeld_double(&spec).expect("sl2 bialgebra double");
        let mut file = spec_of_double(&d, "sl2_bialgebra_double", 3);
        // r_st itself lives in the quadratic double sl2_double_diag, where
        // the base pairing needed by cybe_check is available; here it only
        // enters through the cobracket delta(r_st).
        file.cobracket = cob_entries;
        out.push(("sl2_bialgebra_double".to_string(), file));
    }
    out
}

/// Serialize a double with the canonical `(first half, second half)`
/// splitting under the name `std`.
fn spec_of_double(d: &Arc<QuadraticLieAlgebra>, name: &str, n: usize) -> SpecFile {
    let dim = d.dim;
    let mut brackets = Vec::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            for (k, c) in d.bracket_basis(i, j).iter().enumerate() {
                if !c.is_zero() {
                    brackets.push((i, j, k, c.to_string()));
                }
            }
        }
    }
    let m: Vec<Vec<Scalar>> = (0..n).map(|i| d.basis_vector(i)).collect();
    let l: Vec<Vec<Scalar>> = (0..n).map(|i| d.basis_vector(n + i)).collect();
    let mut splittings = BTreeMap::new();
    splittings.insert(
        "std".to_string(),
        SplittingSpec {
            m: fmt_scalar_rows(&m),
            l: fmt_scalar_rows(&l),
        },
    );
    SpecFile {
        schema_version: 1,
        name: name.to_string(),
        dim,
        basis: d.basis_names.clone(),
        degrees: vec![0; dim],
        brackets,
        gram: (0..dim)
            .map(|i| (0..dim).map(|j| d.gram.get(i, j).to_string()).collect())
            .collect(),
        splittings,
        rmatrices: BTreeMap::new(),
        cobracket: vec![],
    }
}
