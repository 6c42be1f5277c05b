//! Randomized invariants: polynomial root recovery, exact inverse/kernel
//! duality, the parameter action as a group action, and twisting as a group
//! action on modules.

use num_traits::Zero;
use proptest::prelude::*;
use tetra::eval::{build_eval_module, EvalModuleSpec};
use tetra::matrix::ExactMatrix;
use tetra::poly::UniPoly;
use tetra::rational::{rat, ratio, Rational};
use tetra::symmetry::{perm_on_param, EvalParam, GenPair, Perm4};

fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

fn perm_strategy() -> impl Strategy<Value = Perm4> {
    (0usize..24).prop_map(|k| Perm4::all()[k])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn product_of_linear_factors_recovers_roots(
        roots in proptest::collection::vec((-5i64..=5, 1i64..=3), 1..4),
        lead in 1i64..=3,
    ) {
        let mut p = UniPoly::constant(rat(lead));
        let mut expected: Vec<Rational> = Vec::new();
        for (n, d) in roots {
            let r = ratio(n, d);
            p = &p * &UniPoly::new(vec![-r.clone(), rat(1)]);
            expected.push(r);
        }
        expected.sort();
        let found = p.rational_roots().unwrap();
        prop_assert_eq!(found.remainder_degree, 0);
        let mut flattened: Vec<Rational> = Vec::new();
        for (r, m) in found.roots {
            for _ in 0..m {
                flattened.push(r.clone());
            }
        }
        prop_assert_eq!(flattened, expected);
    }

    #[test]
    fn inverse_succeeds_iff_kernel_empty(
        entries in proptest::collection::vec(-4i64..=4, 9)
    ) {
        let m = ExactMatrix::build(3, 3, |r, c| rat(entries[r * 3 + c]));
        match m.inverse() {
            Some(inv) => {
                prop_assert!(m.kernel_basis().is_empty());
                prop_assert_eq!(&m * &inv, ExactMatrix::identity(3));
            }
            None => prop_assert!(!m.kernel_basis().is_empty()),
        }
    }

    #[test]
    fn parameter_action_composes(
        sigma in perm_strategy(),
        tau in perm_strategy(),
        a in rational_strategy(),
    ) {
        prop_assume!(!a.is_zero() && a != rat(1));
        let a = EvalParam::new(a).unwrap();
        let lhs = perm_on_param(sigma.compose(tau), &a);
        let rhs = perm_on_param(sigma, &perm_on_param(tau, &a));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twisting_composes_on_modules(
        sigma in perm_strategy(),
        tau in perm_strategy(),
    ) {
        let m = build_eval_module(&EvalModuleSpec::new(
            2,
            EvalParam::new(rat(3)).unwrap(),
        ));
        let lhs = m.twist(sigma.compose(tau));
        let rhs = m.twist(tau).twist(sigma);
        for p in GenPair::all() {
            prop_assert_eq!(lhs.action(p), rhs.action(p));
        }
    }

    #[test]
    fn poly_product_degree_adds(
        p in proptest::collection::vec(-3i64..=3, 1..5),
        q in proptest::collection::vec(-3i64..=3, 1..5),
    ) {
        let p = UniPoly::new(p.into_iter().map(rat).collect());
        let q = UniPoly::new(q.into_iter().map(rat).collect());
        let prod = &p * &q;
        match (p.degree(), q.degree()) {
            (Some(dp), Some(dq)) => prop_assert_eq!(prod.degree(), Some(dp + dq)),
            _ => prop_assert!(prod.is_zero()),
        }
    }
}
