//! Property suites for the arithmetic substrate: ring axioms of the
//! truncated scalars, graded commutativity and associativity of the wedge,
//! and the multiplicativity of the Koszul sign.

use proptest::prelude::*;

use linfty::exterior::{wedge, ExteriorElement, GradedBasis, MultiIndex};
use linfty::koszul::{enumerate_shuffles, koszul_sign};
use linfty::scalar::Scalar;

fn small_rat() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Scalar::rat(n, d))
}

/// A jet of order 4 with up to five small rational coefficients.
fn small_jet() -> impl Strategy<Value = Scalar> {
    proptest::collection::vec(small_rat(), 1..=5).prop_map(|cs| {
        let t = Scalar::t(4);
        let mut acc = Scalar::zero();
        let mut power = Scalar::one().const_jet(4);
        for c in cs {
            acc = acc + &c * &power;
            power = &power * &t;
        }
        acc
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![small_rat(), small_jet()]
}

proptest! {
    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn units_invert_exactly(a in scalar()) {
        if a.is_unit() {
            let inv = a.inv().unwrap();
            prop_assert!((&a * &inv - Scalar::one()).is_zero());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }
}

fn sparse_elem(basis: &std::sync::Arc<GradedBasis>, words: Vec<(Vec<u32>, i64)>) -> ExteriorElement {
    let mut e = ExteriorElement::zero(basis);
    for (mut w, c) in words {
        w.sort_unstable();
        w.dedup();
        w.retain(|&i| (i as usize) < basis.len());
        e.add_term(MultiIndex(w), Scalar::from_int(c));
    }
    e
}

proptest! {
    #[test]
    fn wedge_graded_commutativity(
        wa in proptest::collection::vec((proptest::collection::vec(0u32..5, 0..3), -3i64..=3), 1..3),
        wb in proptest::collection::vec((proptest::collection::vec(0u32..5, 0..3), -3i64..=3), 1..3),
        p in 0usize..3,
        q in 0usize..3,
    ) {
        let basis = GradedBasis::odd("W", &["a", "b", "c", "d", "e"]);
        // homogeneous parts of fixed length to make degrees well-defined
        let a = sparse_elem(&basis, wa).length_part(p);
        let b = sparse_elem(&basis, wb).length_part(q);
        let ab = wedge(&a, &b).unwrap();
        let ba = wedge(&b, &a).unwrap();
        let sign = if p * q % 2 == 1 { -Scalar::one() } else { Scalar::one() };
        prop_assert_eq!(ab, ba.scale(&sign));
    }

    #[test]
    fn koszul_sign_is_a_homomorphism(
        degrees in proptest::collection::vec(0i64..=3, 4..=4),
        i in 0usize..24,
        j in 0usize..24,
    ) {
        let perms = enumerate_shuffles(&[1, 1, 1, 1]);
        let sigma = &perms[i % perms.len()];
        let tau = &perms[j % perms.len()];
        let composed: Vec<usize> = (0..4).map(|k| tau[sigma[k]]).collect();
        let deg_tau: Vec<i64> = (0..4).map(|k| degrees[tau[k]]).collect();
        let lhs = koszul_sign(&degrees, &composed).unwrap();
        let rhs = koszul_sign(&deg_tau, sigma).unwrap() * koszul_sign(&degrees, tau).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
