//! Acceptance suite: one test per criterion, each printing a PASS line when
//! its checks hold exactly (run with `--nocapture` to see them). All
//! arithmetic is exact, so every comparison is equality, never a tolerance.

use std::time::Instant;
use tetra::eval::{build_eval_module, standard_form_gram, EvalModuleSpec};
use tetra::matrix::ExactMatrix;
use tetra::poly::UniPoly;
use tetra::rational::{rat, ratio, Rational};
use tetra::suites::{self, relative_table_rows, Suite};
use tetra::symmetry::{orbit_of_param, BasisQuad, EvalParam, GenPair, Perm4};
use tetra::tensor::{
    build_sigma_form, build_standard_form, classify, tensor, theta_sequence, Classification,
    TensorSpec,
};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn param(n: i64, d: i64) -> EvalParam {
    EvalParam::new(ratio(n, d)).unwrap()
}

fn spec(d: usize, n: i64, den: i64) -> EvalModuleSpec {
    EvalModuleSpec::new(d, param(n, den))
}

fn assert_suite_passes(suite: Suite, max_d: usize) {
    let results = suites::run(suite, max_d);
    let failures: Vec<String> = results
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{}: {}", r.name, r.detail.clone().unwrap_or_default()))
        .collect();
    assert!(
        failures.is_empty(),
        "suite {suite} failed {} checks:\n{}",
        failures.len(),
        failures.join("\n")
    );
}

/// The six 2x2 generator matrices of the diameter-1 module, as printed
/// formulas in the parameter.
fn diameter_one_formulas(a: &Rational) -> Vec<(GenPair, ExactMatrix)> {
    let one = Rational::one();
    let pair = |i, j| GenPair::from_indices(i, j).unwrap();
    let m = |rows: [[Rational; 2]; 2]| {
        ExactMatrix::from_rows(rows.into_iter().map(|r| r.to_vec()).collect())
    };
    use num_traits::One;
    vec![
        (pair(1, 2), m([[rat(-1), rat(2)], [rat(0), rat(1)]])),
        (pair(0, 3), m([[rat(-1), rat(0)], [-&(rat(2) * a), rat(1)]])),
        (pair(2, 3), m([[rat(-1), rat(0)], [rat(-2), rat(1)]])),
        (
            pair(0, 1),
            m([[rat(1), -&(&rat(2) / a)], [rat(0), rat(-1)]]),
        ),
        (pair(3, 1), m([[rat(1), rat(0)], [rat(0), rat(-1)]])),
        (
            pair(0, 2),
            m([
                [&(a + &one) / &(a - &one), &rat(2) / &(&one - a)],
                [&(&rat(2) * a) / &(a - &one), &(&one + a) / &(&one - a)],
            ]),
        ),
    ]
}

#[test]
fn acceptance_01_diameter_one_matrices() {
    let start = Instant::now();
    for (n, den) in [(2i64, 1i64), (3, 1), (1, 2)] {
        let a = ratio(n, den);
        let m = build_eval_module(&spec(1, n, den));
        for (pair, expect) in diameter_one_formulas(&a) {
            assert_eq!(m.action(pair), &expect, "x{pair} at a={n}/{den}");
            assert_eq!(
                m.action(pair.reversed()),
                &(-&expect),
                "reversed {pair} at a={n}/{den}"
            );
        }
    }
    println!(
        "PASS criterion 1: diameter-1 matrices match the printed formulas at a in {{2, 3, 1/2}} ({:?})",
        start.elapsed()
    );
}

#[test]
fn acceptance_02_relation_suite() {
    let start = Instant::now();
    assert_suite_passes(Suite::Relations, 5);
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 30,
        "relation suite exceeded its 30 s budget: {elapsed:?}"
    );
    println!("PASS criterion 2: all constructions satisfy the defining relations ({elapsed:?})");
}

#[test]
fn acceptance_03_relative_table_and_orbit() {
    let start = Instant::now();
    for (n, den) in [(3i64, 1i64), (7, 5)] {
        let a = param(n, den);
        let mut seen = 0usize;
        for (quads, value) in relative_table_rows(a.value()) {
            for q in quads {
                let b = BasisQuad::from_indices(q[0], q[1], q[2], q[3]).unwrap();
                let got = tetra::symmetry::relative(&a, b.i(), b.j(), b.k(), b.l()).unwrap();
                assert_eq!(got, value, "row {q:?} at a={n}/{den}");
                seen += 1;
            }
        }
        assert_eq!(seen, 24, "the table has 24 rows");
    }
    let orbit = orbit_of_param(&param(3, 1));
    let expect: std::collections::BTreeSet<Rational> = [
        rat(3),
        ratio(1, 3),
        rat(-2),
        ratio(-1, 2),
        ratio(3, 2),
        ratio(2, 3),
    ]
    .into_iter()
    .collect();
    assert_eq!(orbit, expect);
    println!(
        "PASS criterion 3: 24-row relative table at a = 3 and 7/5, orbit of 3 exact ({:?})",
        start.elapsed()
    );
}

#[test]
fn acceptance_04_and_05_basis_and_transition_cross_validation() {
    let start = Instant::now();
    // the transitions suite at max_d = 4 checks, for a in {2, 3} and all 24
    // bases: tabled generator matrices == change-of-basis matrices from the
    // polynomial model, all three adjacent-swap closed forms == explicit
    // basis change, and the reversal composite identity
    assert_suite_passes(Suite::Transitions, 4);
    println!(
        "PASS criterion 4: tabled bases equal polynomial-model change of basis, 24 bases, d <= 4, a in {{2, 3}} ({:?})",
        start.elapsed()
    );
    println!(
        "PASS criterion 5: adjacent-swap transition closed forms and reversal identity, d <= 4"
    );
}

#[test]
fn acceptance_06_bilinear_forms() {
    let start = Instant::now();
    assert_suite_passes(Suite::Bilinear, 5);
    // product module: solved form still intertwines and has even-diameter
    // symmetry
    let t = tensor(
        &build_eval_module(&spec(1, 2, 1)),
        &build_eval_module(&spec(2, 3, 1)),
    );
    let g = build_standard_form(&t).unwrap();
    for p in GenPair::all() {
        let residual = &(&t.action(p).transpose() * &g) + &(&g * t.action(p));
        assert!(residual.is_zero(), "Gram intertwining fails at {p}");
    }
    assert_eq!(
        g,
        -&g.transpose(),
        "odd total diameter must be antisymmetric"
    );
    let g1 = standard_form_gram(&spec(1, 2, 1));
    assert_eq!(
        g1,
        ExactMatrix::from_rows(vec![vec![rat(0), rat(1)], vec![rat(-1), rat(0)]])
    );
    println!(
        "PASS criterion 6: Gram intertwining, parity, pairing pattern and closed forms ({:?})",
        start.elapsed()
    );
}

#[test]
fn acceptance_07_drinfeld_polynomials() {
    let start = Instant::now();
    assert_suite_passes(Suite::Drinfeld, 5);
    let theta = theta_sequence(&build_eval_module(&spec(2, 3, 1))).unwrap();
    assert_eq!(theta.values(), &[rat(1), rat(6), rat(36)]);
    println!(
        "PASS criterion 7: Drinfel'd closed forms, theta example, multiplicativity ({:?})",
        start.elapsed()
    );
}

#[test]
fn acceptance_08_classification_round_trip() {
    let start = Instant::now();
    let pool: Vec<Rational> = vec![
        rat(2),
        rat(3),
        rat(5),
        ratio(1, 2),
        ratio(1, 3),
        ratio(3, 2),
        ratio(7, 3),
        rat(-1),
        rat(-2),
        ratio(-1, 2),
        ratio(5, 2),
        ratio(2, 3),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e7a);
    for round in 0..20 {
        let n_factors = rng.gen_range(1..=3);
        let mut params = pool.clone();
        params.shuffle(&mut rng);
        let factors: Vec<EvalModuleSpec> = params
            .into_iter()
            .take(n_factors)
            .map(|a| EvalModuleSpec::new(rng.gen_range(1..=3), EvalParam::new(a).unwrap()))
            .collect();
        let ts = TensorSpec::new(factors);
        let got = classify(&ts.build()).unwrap_or_else(|e| panic!("round {round} ({ts}): {e}"));
        let want = Classification::Factors(ts.canonical_sorted().factors);
        assert_eq!(got, want, "round {round} ({ts})");
    }
    // repeated parameters are reducible: the commutant grows
    for repeated in [
        TensorSpec::new(vec![spec(1, 2, 1), spec(1, 2, 1)]),
        TensorSpec::new(vec![spec(1, 1, 2), spec(2, 1, 2)]),
        TensorSpec::new(vec![spec(2, 3, 1), spec(1, 3, 1), spec(1, 2, 1)]),
    ] {
        let dim = repeated.build().commutant_dimension();
        assert!(
            dim > 1,
            "{repeated} should have commutant dimension > 1, got {dim}"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "classification round trip exceeded its 60 s budget: {elapsed:?}"
    );
    println!("PASS criterion 8: 20 random classification round trips, repeated parameters detected ({elapsed:?})");
}

#[test]
fn acceptance_09_twisting() {
    let start = Instant::now();
    assert_suite_passes(Suite::Twisting, 4);
    // spot check the classified parameter of one twist against the table
    let m = build_eval_module(&spec(3, 3, 1)).twist(Perm4::transposition(0, 1));
    assert_eq!(
        classify(&m).unwrap(),
        Classification::Factors(vec![spec(3, 3, 2)])
    );
    println!(
        "PASS criterion 9: twists classify as the transformed parameter, Klein twists fix the class, automorphism conjugation matches ({:?})",
        start.elapsed()
    );
}

#[test]
fn acceptance_10_sigma_forms() {
    let start = Instant::now();
    for d in 1..=4 {
        let m = build_eval_module(&spec(d, 3, 1));
        for sigma in Perm4::klein_nonidentity() {
            let g = build_sigma_form(&m, sigma)
                .unwrap_or_else(|e| panic!("V_{d}(3), sigma {sigma}: {e}"));
            assert_eq!(g, g.transpose(), "V_{d}(3), sigma {sigma}: not symmetric");
            assert!(g.inverse().is_some(), "V_{d}(3), sigma {sigma}: degenerate");
            for p in GenPair::all() {
                let residual =
                    &(&m.action(p).transpose() * &g) + &(&g * m.action(sigma.apply_pair(p)));
                assert!(residual.is_zero(), "V_{d}(3), sigma {sigma}, {p}");
            }
        }
    }
    let t = TensorSpec::new(vec![spec(1, 2, 1), spec(2, 3, 1)]).build();
    for sigma in Perm4::klein_nonidentity() {
        let g = build_sigma_form(&t, sigma).unwrap();
        assert_eq!(g, g.transpose());
        assert!(g.inverse().is_some());
    }
    println!(
        "PASS criterion 10: twisted forms exist, symmetric and nondegenerate, for all Klein elements ({:?})",
        start.elapsed()
    );
}

#[test]
fn gradings_suite_holds() {
    // supporting invariants behind several criteria: spectra, inversions,
    // opposite flags, the seven-case action table, and the raising property
    assert_suite_passes(Suite::Gradings, 3);
    println!("PASS supporting gradings suite");
}

#[test]
fn evaluation_module_isomorphism_criterion() {
    // same diameter and parameter is the isomorphism criterion: both the
    // invariant route and the constructive route agree
    let u = build_eval_module(&spec(2, 3, 1));
    let v = build_eval_module(&spec(2, 3, 1));
    let w = build_eval_module(&spec(2, 7, 3));
    assert_eq!(
        classify(&u).unwrap(),
        classify(&v).unwrap(),
        "equal parameters must classify equally"
    );
    assert!(tetra::tensor::solve_intertwiner(&u, &v).is_some());
    assert_ne!(classify(&u).unwrap(), classify(&w).unwrap());
    assert!(tetra::tensor::solve_intertwiner(&u, &w).is_none());
    // the dual is isomorphic to the original
    assert_eq!(classify(&u).unwrap(), classify(&u.dualize()).unwrap());
    let shape = u.shape_polynomial().unwrap();
    assert_eq!(shape, UniPoly::new(vec![rat(1), rat(1), rat(1)]));
    println!("PASS supporting isomorphism criteria");
}
