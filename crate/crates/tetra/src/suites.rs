//! Named verification suites over the documented desk-scale grids. The CLI
//! `verify` subcommand and the acceptance tests both run these; each check
//! is independent, so the suite fans out in parallel under the `parallel`
//! feature.

use crate::eval::{
    bracket_basis_matrices, build_eval_module, extract_eval_param, standard_form_gram,
    transition_matrix, EtaPairings, EvalModuleSpec, ExtractResult,
};
use crate::matrix::ExactMatrix;
use crate::module::{Decomposition, TetModule};
use crate::par;
use crate::poly::UniPoly;
use crate::poly_real::{
    automorphism_for_sigma, basis_matrix, betas_for_param, bracket_basis_vectors,
    build_poly_module, linear_form, BetaQuad, HomPoly, PolyGram,
};
use crate::rational::{binomial, format_rational, pow_i, rat, ratio, Rational};
use crate::symmetry::{
    orbit_of_param, perm_on_param, relative, BasisQuad, EvalParam, GenPair, Perm4, VertexIndex,
};
use crate::tensor::{
    build_sigma_form, build_standard_form, classify, drinfeld_polynomial, tensor, theta_sequence,
    Classification, TensorSpec,
};
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// The named property suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Relations,
    Gradings,
    Transitions,
    Bilinear,
    Twisting,
    Drinfeld,
    All,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "relations" => Ok(Suite::Relations),
            "gradings" => Ok(Suite::Gradings),
            "transitions" => Ok(Suite::Transitions),
            "bilinear" => Ok(Suite::Bilinear),
            "twisting" => Ok(Suite::Twisting),
            "drinfeld" => Ok(Suite::Drinfeld),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite {other:?} (expected relations, gradings, transitions, bilinear, twisting, drinfeld, all)"
            )),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Relations => "relations",
            Suite::Gradings => "gradings",
            Suite::Transitions => "transitions",
            Suite::Bilinear => "bilinear",
            Suite::Twisting => "twisting",
            Suite::Drinfeld => "drinfeld",
            Suite::All => "all",
        };
        write!(f, "{name}")
    }
}

/// Outcome of a single named check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

type Check = (String, Box<dyn Fn() -> Result<(), String> + Send + Sync>);

fn check(
    name: impl Into<String>,
    run: impl Fn() -> Result<(), String> + Send + Sync + 'static,
) -> Check {
    (name.into(), Box::new(run))
}

fn evaluate(checks: Vec<Check>) -> Vec<CheckResult> {
    par::map_collect(checks, |(name, run)| match run() {
        Ok(()) => CheckResult {
            name,
            pass: true,
            detail: None,
        },
        Err(detail) => CheckResult {
            name,
            pass: false,
            detail: Some(detail),
        },
    })
}

/// Runs a suite over grids capped at diameter `max_d`.
pub fn run(suite: Suite, max_d: usize) -> Vec<CheckResult> {
    match suite {
        Suite::Relations => evaluate(relations_checks(max_d)),
        Suite::Gradings => evaluate(gradings_checks(max_d)),
        Suite::Transitions => evaluate(transitions_checks(max_d)),
        Suite::Bilinear => evaluate(bilinear_checks(max_d)),
        Suite::Twisting => evaluate(twisting_checks(max_d)),
        Suite::Drinfeld => evaluate(drinfeld_checks(max_d)),
        Suite::All => {
            let mut checks = relations_checks(max_d);
            checks.extend(gradings_checks(max_d));
            checks.extend(transitions_checks(max_d));
            checks.extend(bilinear_checks(max_d));
            checks.extend(twisting_checks(max_d));
            checks.extend(drinfeld_checks(max_d));
            evaluate(checks)
        }
    }
}

fn param(n: i64, d: i64) -> EvalParam {
    EvalParam::new(ratio(n, d)).unwrap()
}

fn spec(d: usize, n: i64, den: i64) -> EvalModuleSpec {
    EvalModuleSpec::new(d, param(n, den))
}

fn sample_quads() -> Vec<BetaQuad> {
    vec![
        BetaQuad::new([rat(0), rat(1), rat(2), rat(3)]).unwrap(),
        BetaQuad::new([ratio(4, 3), rat(0), rat(1), rat(2)]).unwrap(),
        BetaQuad::new([rat(-3), rat(0), rat(1), rat(3)]).unwrap(),
    ]
}

/// The documented tensor grid: up to three factors, distinct parameters,
/// factor diameters capped by `max_d` (and by 3).
fn tensor_grid(max_d: usize) -> Vec<TensorSpec> {
    let dm = max_d.clamp(1, 3);
    vec![
        TensorSpec::new(vec![spec(1, 2, 1)]),
        TensorSpec::new(vec![spec(1, 2, 1), spec(dm, 3, 1)]),
        TensorSpec::new(vec![spec(1, 1, 2), spec(dm, 3, 1)]),
        TensorSpec::new(vec![spec(dm, 2, 1), spec(dm, 3, 1), spec(dm, 1, 2)]),
    ]
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn require_empty_report(m: &TetModule) -> Result<(), String> {
    let report = m.verify_relations();
    require(report.is_empty(), || {
        format!(
            "{}: {}",
            m.label(),
            report
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("; ")
        )
    })
}

/// Every construction the crate offers satisfies the defining relations:
/// evaluation modules, polynomial realizations, tensors, twists, duals, and
/// the tabled bracket-basis matrices.
pub fn relations_checks(max_d: usize) -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    for d in 1..=max_d {
        for (n, den) in [(2i64, 1i64), (3, 1), (-1, 1), (1, 2), (7, 3)] {
            checks.push(check(
                format!("relations: evaluation module d={d} a={n}/{den}"),
                move || require_empty_report(&build_eval_module(&spec(d, n, den))),
            ));
        }
        for (qi, quad) in sample_quads().into_iter().enumerate() {
            checks.push(check(
                format!("relations: polynomial realization d={d} betas#{qi}"),
                move || require_empty_report(&build_poly_module(d, &quad)),
            ));
        }
    }
    for ts in tensor_grid(max_d) {
        checks.push(check(format!("relations: tensor {ts}"), move || {
            require_empty_report(&ts.build())
        }));
    }
    let dt = max_d.clamp(1, 3);
    for sigma in Perm4::all() {
        checks.push(check(
            format!("relations: twist of V_{dt}(2) by {sigma}"),
            move || require_empty_report(&build_eval_module(&spec(dt, 2, 1)).twist(sigma)),
        ));
    }
    checks.push(check("relations: dual of V_2(3)", move || {
        require_empty_report(&build_eval_module(&spec(2, 3, 1)).dualize())
    }));
    for d in 1..=max_d.min(4) {
        for (n, den) in [(2i64, 1i64), (3, 1), (1, 2)] {
            checks.push(check(
                format!("relations: bracket-basis matrices d={d} a={n}/{den}, all 24 bases"),
                move || {
                    for b in BasisQuad::all() {
                        require_empty_report(&bracket_basis_matrices(&spec(d, n, den), b))?;
                    }
                    Ok(())
                },
            ));
        }
    }
    checks
}

fn grading_modules(max_d: usize) -> Vec<TetModule> {
    let mut modules = Vec::new();
    for d in 1..=max_d {
        for (n, den) in [(2i64, 1i64), (3, 1), (1, 2)] {
            modules.push(build_eval_module(&spec(d, n, den)));
        }
    }
    modules.push(TensorSpec::new(vec![spec(1, 2, 1), spec(2, 3, 1)]).build());
    modules
}

/// Zero-extended component lookup: component n of a decomposition, with the
/// out-of-range components equal to the zero space (`None`).
fn component_or_zero(dec: &Decomposition, n: isize) -> Option<ExactMatrix> {
    if n < 0 || n as usize > dec.diameter() {
        None
    } else {
        Some(dec.component(n as usize).clone())
    }
}

fn image_contained(image: &ExactMatrix, target: &Option<ExactMatrix>) -> bool {
    match target {
        None => image.is_zero(),
        Some(space) => space.colspace_contains_all(image),
    }
}

/// Eigenspace structure: exact spectra, palindromic shapes, inversion of
/// opposite pairs, mutually opposite flags recovering the components, the
/// seven-case action table, and the raising property.
pub fn gradings_checks(max_d: usize) -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    for (mi, module) in grading_modules(max_d).into_iter().enumerate() {
        let label = format!("{} (#{mi})", module.label());

        let m = module.clone();
        let name = format!("gradings: spectrum and shape of {label}");
        checks.push(check(name, move || {
            let s = m.shape_polynomial().map_err(|e| e.to_string())?;
            let dec = m
                .decomposition(VertexIndex::new(0).unwrap(), VertexIndex::new(1).unwrap())
                .map_err(|e| e.to_string())?;
            require(dec.is_palindromic(), || "shape is not palindromic".into())?;
            require(s.coeff(0).is_one(), || {
                "lowest component is not a line".into()
            })?;
            let total: usize = dec.shape().iter().sum();
            require(total == m.dim(), || {
                "component dimensions do not sum".into()
            })
        }));

        let m = module.clone();
        let name = format!("gradings: opposite pairs invert for {label}");
        checks.push(check(name, move || {
            for i in VertexIndex::ALL {
                for j in VertexIndex::ALL {
                    if i >= j {
                        continue;
                    }
                    let ij = m.decomposition(i, j).map_err(|e| e.to_string())?;
                    let ji = m.decomposition(j, i).map_err(|e| e.to_string())?;
                    require(ij.inversion() == ji, || format!("[{i},{j}] vs [{j},{i}]"))?;
                }
            }
            Ok(())
        }));

        let m = module.clone();
        let name = format!("gradings: flags are opposite and recover components for {label}");
        checks.push(check(name, move || {
            let flags: Vec<_> = VertexIndex::ALL
                .into_iter()
                .map(|i| m.flag(i))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            for i in VertexIndex::ALL {
                for j in VertexIndex::ALL {
                    if i == j {
                        continue;
                    }
                    let dec = m.decomposition(i, j).map_err(|e| e.to_string())?;
                    let d = dec.diameter();
                    for n in 0..=d {
                        let u = flags[i.index()].component(n);
                        let w = flags[j.index()].component(d - n);
                        // component n of [i,j] must be U_n ∩ W_{d-n}:
                        // containment in both plus an exact dimension count
                        let c = dec.component(n);
                        require(u.colspace_contains_all(c), || {
                            format!("component {n} of [{i},{j}] outside flag [{i}]")
                        })?;
                        require(w.colspace_contains_all(c), || {
                            format!("component {n} of [{i},{j}] outside flag [{j}]")
                        })?;
                        let sum_rank = u.hstack(w).rank();
                        let inter_dim = u.cols() + w.cols() - sum_rank;
                        require(inter_dim == c.cols(), || {
                            format!("intersection dimension off at component {n} of [{i},{j}]")
                        })?;
                    }
                }
            }
            Ok(())
        }));

        let m = module.clone();
        let name = format!("gradings: action table containments for {label}");
        checks.push(check(name, move || {
            for i in VertexIndex::ALL {
                for j in VertexIndex::ALL {
                    if i == j {
                        continue;
                    }
                    let dec = m.decomposition(i, j).map_err(|e| e.to_string())?;
                    let d = dec.diameter() as i64;
                    for pair in GenPair::all() {
                        let (r, s) = (pair.i(), pair.j());
                        let mat = m.action(pair);
                        for n in 0..=dec.diameter() {
                            let nn = n as i64;
                            let basis = dec.component(n);
                            let shift = |lambda: i64| -> ExactMatrix {
                                let id = ExactMatrix::identity(m.dim());
                                &(mat - &id.scale(&rat(lambda))) * basis
                            };
                            let ok = if (r, s) == (i, j) {
                                shift(2 * nn - d).is_zero()
                            } else if (r, s) == (j, i) {
                                shift(d - 2 * nn).is_zero()
                            } else if r == j {
                                image_contained(
                                    &shift(d - 2 * nn),
                                    &component_or_zero(&dec, n as isize + 1),
                                )
                            } else if s == j {
                                image_contained(
                                    &shift(2 * nn - d),
                                    &component_or_zero(&dec, n as isize + 1),
                                )
                            } else if r == i {
                                image_contained(
                                    &shift(2 * nn - d),
                                    &component_or_zero(&dec, n as isize - 1),
                                )
                            } else if s == i {
                                image_contained(
                                    &shift(d - 2 * nn),
                                    &component_or_zero(&dec, n as isize - 1),
                                )
                            } else {
                                let lo = n.saturating_sub(1);
                                let hi = (n + 1).min(dec.diameter());
                                let mut space = dec.component(lo).clone();
                                for t in lo + 1..=hi {
                                    space = space.hstack(dec.component(t));
                                }
                                space.colspace_contains_all(&(mat * basis))
                            };
                            require(ok, || {
                                format!("action of {pair} on component {n} of [{i},{j}]")
                            })?;
                        }
                    }
                }
            }
            Ok(())
        }));

        let m = module;
        let name = format!("gradings: raising property for {label}");
        checks.push(check(name, move || {
            for i in VertexIndex::ALL {
                for j in VertexIndex::ALL {
                    for k in VertexIndex::ALL {
                        if i == j || j == k || i == k {
                            continue;
                        }
                        let dec = m.decomposition(i, j).map_err(|e| e.to_string())?;
                        let raise = &(m.action_ij(i.index(), j.index()).clone())
                            + m.action_ij(j.index(), k.index());
                        for n in 0..=dec.diameter() {
                            let image = &raise * dec.component(n);
                            require(
                                image_contained(&image, &component_or_zero(&dec, n as isize + 1)),
                                || format!("(x{i}{j}+x{j}{k}) on component {n} of [{i},{j}]"),
                            )?;
                        }
                    }
                }
            }
            Ok(())
        }));
    }
    checks
}

/// The closed-form basis matrices and transition matrices against explicit
/// change of basis in the polynomial model.
pub fn transitions_checks(max_d: usize) -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    for d in 1..=max_d.min(4) {
        for a_num in [2i64, 3] {
            let a = param(a_num, 1);
            let quad = betas_for_param(&a);
            let es = EvalModuleSpec::new(d, a.clone());

            let quad2 = quad.clone();
            let es2 = es.clone();
            checks.push(check(
                format!(
                    "transitions: tabled generator matrices match basis change d={d} a={a_num}"
                ),
                move || {
                    let poly_mod = build_poly_module(d, &quad2);
                    for b in BasisQuad::all() {
                        let tabled = bracket_basis_matrices(&es2, b);
                        let basis = basis_matrix(&bracket_basis_vectors(d, &quad2, b));
                        let inv = basis.inverse().ok_or("basis is singular")?;
                        for p in GenPair::all() {
                            let changed = &(&inv * poly_mod.action(p)) * &basis;
                            require(&changed == tabled.action(p), || format!("{p} in basis {b}"))?;
                        }
                    }
                    Ok(())
                },
            ));

            let quad3 = quad.clone();
            let es3 = es.clone();
            checks.push(check(
                format!("transitions: adjacent-swap closed forms d={d} a={a_num}"),
                move || {
                    let pairings = beta_pairings(d, &quad3);
                    for b in BasisQuad::all() {
                        let from = basis_matrix(&bracket_basis_vectors(d, &quad3, b));
                        for to in [b.swap_ij(), b.swap_jk(), b.swap_kl()] {
                            let target = basis_matrix(&bracket_basis_vectors(d, &quad3, to));
                            let explicit = &from.inverse().ok_or("singular basis")? * &target;
                            let closed = transition_matrix(&es3, b, to, &pairings);
                            require(explicit == closed, || format!("{b} -> {to}"))?;
                        }
                    }
                    Ok(())
                },
            ));

            let es4 = es.clone();
            checks.push(check(
                format!("transitions: reversal composite identity d={d} a={a_num}"),
                move || {
                    let z = crate::eval::reversal_matrix(d);
                    let pairings = EtaPairings::default();
                    for b in BasisQuad::all() {
                        let t = transition_matrix(&es4, b, b.swap_ij(), &pairings);
                        let b2 = b.swap_ij().swap_kl();
                        let t2 = transition_matrix(&es4, b2, b2.swap_ij(), &pairings);
                        let prod = &(&(&t * &z) * &t2) * &z;
                        require(prod == ExactMatrix::identity(d + 1), || format!("{b}"))?;
                    }
                    Ok(())
                },
            ));
        }
    }
    checks
}

/// The pairing table of the polynomial model: ⟨z_i^d, z_j^d⟩ read off the
/// four free slots.
pub fn beta_pairings(d: usize, quad: &BetaQuad) -> EtaPairings {
    let v = VertexIndex::ALL;
    let diff = |i: usize, j: usize| quad.get(v[i]) - quad.get(v[j]);
    EtaPairings::new(
        pow_i(&diff(2, 3), d as i64),
        pow_i(&diff(3, 1), d as i64),
        pow_i(&diff(1, 2), d as i64),
        pow_i(&diff(0, 3), d as i64),
    )
    .expect("beta differences are nonzero")
}

/// Invariant bilinear forms: intertwining, parity, duality of opposite
/// decompositions, flag orthocomplements, the bracket-basis pairing pattern,
/// and the closed monomial pairing against the solved form.
pub fn bilinear_checks(max_d: usize) -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    for d in 1..=max_d {
        for (n, den) in [(2i64, 1i64), (3, 1), (1, 2)] {
            let es = spec(d, n, den);

            let es1 = es.clone();
            checks.push(check(
                format!("bilinear: closed Gram intertwines V_{d}({n}/{den})"),
                move || {
                    let m = build_eval_module(&es1);
                    let g = standard_form_gram(&es1);
                    for p in GenPair::all() {
                        let residual = &(&m.action(p).transpose() * &g) + &(&g * m.action(p));
                        require(residual.is_zero(), || format!("{p}"))?;
                    }
                    let sym = g == g.transpose();
                    require(sym == (d % 2 == 0), || "parity mismatch".into())
                },
            ));

            let es2 = es.clone();
            checks.push(check(
                format!("bilinear: solved form matches closed form for V_{d}({n}/{den})"),
                move || {
                    let m = build_eval_module(&es2);
                    let solved = build_standard_form(&m).map_err(|e| e.to_string())?;
                    let closed = standard_form_gram(&es2);
                    // both are nonzero multiples of the same form
                    let mut scale = None;
                    for r in 0..closed.rows() {
                        for c in 0..closed.cols() {
                            if !closed[(r, c)].is_zero() {
                                scale = Some(&solved[(r, c)] / &closed[(r, c)]);
                                break;
                            }
                        }
                        if scale.is_some() {
                            break;
                        }
                    }
                    let scale = scale.ok_or("closed form is zero")?;
                    require(!scale.is_zero() && solved == closed.scale(&scale), || {
                        "forms are not proportional".into()
                    })
                },
            ));

            let es3 = es.clone();
            checks.push(check(
                format!("bilinear: duality and flag complements for V_{d}({n}/{den})"),
                move || {
                    let m = build_eval_module(&es3);
                    let g = standard_form_gram(&es3);
                    for i in VertexIndex::ALL {
                        for j in VertexIndex::ALL {
                            if i == j {
                                continue;
                            }
                            let dec = m.decomposition(i, j).map_err(|e| e.to_string())?;
                            let dd = dec.diameter();
                            for r in 0..=dd {
                                for s in 0..=dd {
                                    let gram_block =
                                        &(&dec.component(r).transpose() * &g) * dec.component(s);
                                    require(gram_block.is_zero() == (r + s != dd), || {
                                        format!("pairing of components {r},{s} of [{i},{j}]")
                                    })?;
                                }
                            }
                        }
                        let flag = m.flag(i).map_err(|e| e.to_string())?;
                        let dd = flag.diameter();
                        for nn in 0..dd {
                            let u = flag.component(nn);
                            let w = flag.component(dd - nn - 1);
                            let block = &(&u.transpose() * &g) * w;
                            require(block.is_zero(), || {
                                format!("flag [{i}] components {nn} and {}", dd - nn - 1)
                            })?;
                            require(u.cols() + w.cols() == dd + 1, || {
                                "complement dimensions off".into()
                            })?;
                        }
                    }
                    Ok(())
                },
            ));
        }
    }

    for d in 1..=max_d.min(4) {
        let quad = betas_for_param(&param(3, 1));

        let q1 = quad.clone();
        checks.push(check(
            format!("bilinear: bracket-basis pairing pattern d={d}"),
            move || {
                let g = PolyGram::new(
                    d,
                    &q1,
                    VertexIndex::new(0).unwrap(),
                    VertexIndex::new(1).unwrap(),
                )
                .map_err(|e| e.to_string())?;
                let eta = |i: VertexIndex| HomPoly::from_linear_power(&linear_form(&q1, i), d);
                for b in BasisQuad::all() {
                    let vecs = bracket_basis_vectors(d, &q1, b);
                    let base = g.pair(&vecs[0], &vecs[d]);
                    require(!base.is_zero(), || format!("⟨u_0,u_d⟩ vanishes in {b}"))?;
                    // normalization of the endpoints: u_0 is eta_k scaled by
                    // ⟨eta_i,eta_l⟩/⟨eta_k,eta_l⟩, u_d is eta_l scaled by
                    // ⟨eta_k,eta_i⟩/⟨eta_k,eta_l⟩, and ⟨u_0,u_d⟩ collapses to
                    // ⟨eta_k,eta_i⟩⟨eta_i,eta_l⟩/⟨eta_k,eta_l⟩
                    let (ei, ek, el) = (eta(b.i()), eta(b.k()), eta(b.l()));
                    let p_kl = g.pair(&ek, &el);
                    let p_il = g.pair(&ei, &el);
                    let p_ki = g.pair(&ek, &ei);
                    let u0 = ek.scale(&(&p_il / &p_kl));
                    require(vecs[0] == u0, || format!("u_0 normalization in {b}"))?;
                    let ud = el.scale(&(&p_ki / &p_kl));
                    require(vecs[d] == ud, || format!("u_d normalization in {b}"))?;
                    require(base == &(&p_ki * &p_il) / &p_kl, || {
                        format!("⟨u_0,u_d⟩ value in {b}")
                    })?;
                    for r in 0..=d {
                        for s in 0..=d {
                            let got = g.pair(&vecs[r], &vecs[s]);
                            let expect = if r + s == d {
                                let sign = if r % 2 == 0 { rat(1) } else { rat(-1) };
                                &(&sign * &binomial(d, r)) * &base
                            } else {
                                Rational::zero()
                            };
                            require(got == expect, || format!("⟨u_{r},u_{s}⟩ in {b}"))?;
                        }
                    }
                }
                Ok(())
            },
        ));

        let q2 = quad.clone();
        checks.push(check(
            format!("bilinear: monomial pairing matches solved form d={d}"),
            move || {
                let m = build_poly_module(d, &q2);
                let solved = build_standard_form(&m).map_err(|e| e.to_string())?;
                let closed = PolyGram::new(
                    d,
                    &q2,
                    VertexIndex::new(0).unwrap(),
                    VertexIndex::new(1).unwrap(),
                )
                .map_err(|e| e.to_string())?
                .gram_on_monomials();
                let mut scale = None;
                'outer: for r in 0..closed.rows() {
                    for c in 0..closed.cols() {
                        if !closed[(r, c)].is_zero() {
                            scale = Some(&solved[(r, c)] / &closed[(r, c)]);
                            break 'outer;
                        }
                    }
                }
                let scale = scale.ok_or("closed form is zero")?;
                require(solved == closed.scale(&scale), || "not proportional".into())
            },
        ));

        let q3 = quad.clone();
        checks.push(check(
            format!("bilinear: pairing product identities d={d}"),
            move || {
                let a = q3.cross_ratio();
                let pair_of = |i: usize, j: usize| -> Result<Rational, String> {
                    let vi = VertexIndex::new(i).unwrap();
                    let vj = VertexIndex::new(j).unwrap();
                    let g = PolyGram::new(d, &q3, vi, vj).map_err(|e| e.to_string())?;
                    let zi = HomPoly::from_linear_power(&linear_form(&q3, vi), d);
                    let zj = HomPoly::from_linear_power(&linear_form(&q3, vj), d);
                    Ok(g.pair(&zi, &zj))
                };
                let p = |i: usize, j: usize| pair_of(i, j);
                let lhs1 = &(&p(0, 1)? / &p(0, 3)?) * &(&p(2, 3)? / &p(2, 1)?);
                require(lhs1 == pow_i(&a, d as i64), || "first product".into())?;
                let lhs2 = &(&p(0, 2)? / &p(0, 1)?) * &(&p(3, 1)? / &p(3, 2)?);
                let expect2 = pow_i(&(&Rational::one() - &a.recip()), d as i64);
                require(lhs2 == expect2, || "second product".into())?;
                let lhs3 = &(&p(0, 3)? / &p(0, 2)?) * &(&p(1, 2)? / &p(1, 3)?);
                let expect3 = pow_i(&(&Rational::one() - &a), -(d as i64));
                require(lhs3 == expect3, || "third product".into())
            },
        ));
    }
    checks
}

/// The 24-row relative table, orbits, twisting of evaluation modules, and
/// the polynomial-model automorphisms.
pub fn twisting_checks(max_d: usize) -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();

    for (n, den) in [(3i64, 1i64), (7, 5)] {
        checks.push(check(
            format!("twisting: 24-row relative table at a={n}/{den}"),
            move || {
                let a = param(n, den);
                for (quads, formula) in relative_table_rows(a.value()) {
                    for q in quads {
                        let b = BasisQuad::from_indices(q[0], q[1], q[2], q[3])
                            .map_err(|e| e.to_string())?;
                        let got =
                            relative(&a, b.i(), b.j(), b.k(), b.l()).map_err(|e| e.to_string())?;
                        require(got == formula, || {
                            format!(
                                "relative at ({},{},{},{}): got {}, want {}",
                                q[0],
                                q[1],
                                q[2],
                                q[3],
                                format_rational(&got),
                                format_rational(&formula)
                            )
                        })?;
                    }
                }
                Ok(())
            },
        ));
    }

    checks.push(check("twisting: orbit of 3 is the six-element set", || {
        let orbit = orbit_of_param(&param(3, 1));
        let expect: BTreeSet<Rational> = [
            rat(3),
            ratio(1, 3),
            rat(-2),
            ratio(-1, 2),
            ratio(3, 2),
            ratio(2, 3),
        ]
        .into_iter()
        .collect();
        require(orbit == expect, || {
            format!("orbit has {} elements", orbit.len())
        })
    }));

    for d in 1..=max_d.min(3) {
        checks.push(check(
            format!("twisting: twisted V_{d}(3) classifies as V_{d}(sigma(3))"),
            move || {
                let a = param(3, 1);
                let m = build_eval_module(&spec(d, 3, 1));
                for sigma in Perm4::all() {
                    let twisted = m.twist(sigma);
                    let expect_param = perm_on_param(sigma, &a);
                    match extract_eval_param(&twisted).map_err(|e| e.to_string())? {
                        ExtractResult::Param(p) => {
                            require(p == expect_param, || {
                                format!("{sigma}: extracted {p}, want {expect_param}")
                            })?;
                        }
                        ExtractResult::NotEvaluation => {
                            return Err(format!("{sigma}: twist is not an evaluation module"));
                        }
                    }
                    let got = classify(&twisted).map_err(|e| e.to_string())?;
                    let want =
                        Classification::Factors(vec![EvalModuleSpec::new(d, expect_param.clone())]);
                    require(got == want, || format!("{sigma}: classification differs"))?;
                    if sigma.is_in_g() {
                        require(expect_param == a, || {
                            format!("{sigma} in G must fix the parameter")
                        })?;
                    }
                }
                Ok(())
            },
        ));
    }

    for d in 1..=max_d.min(4) {
        checks.push(check(
            format!("twisting: automorphism conjugation equals twist on degree {d}"),
            move || {
                let quad = betas_for_param(&param(3, 1));
                let m = build_poly_module(d, &quad);
                for sigma in Perm4::klein_nonidentity() {
                    let phi = automorphism_for_sigma(&quad, sigma, d).map_err(|e| e.to_string())?;
                    let phi_inv = phi.inverse().ok_or("automorphism is singular")?;
                    let twisted = m.twist(sigma);
                    for p in GenPair::all() {
                        let conj = &(&phi * m.action(p)) * &phi_inv;
                        require(&conj == twisted.action(p), || format!("{sigma} at {p}"))?;
                    }
                }
                Ok(())
            },
        ));
    }

    checks.push(check(
        "twisting: tensor twists map every factor parameter",
        move || {
            let ts = TensorSpec::new(vec![spec(1, 2, 1), spec(2, 3, 1)]);
            let m = ts.build();
            for sigma in Perm4::all() {
                let got = classify(&m.twist(sigma)).map_err(|e| e.to_string())?;
                let mapped = TensorSpec::new(
                    ts.factors
                        .iter()
                        .map(|f| EvalModuleSpec::new(f.d, perm_on_param(sigma, &f.a)))
                        .collect(),
                );
                let want = Classification::Factors(mapped.canonical_sorted().factors);
                require(got == want, || {
                    format!("{sigma}: twisted tensor class differs")
                })?;
                if sigma.is_in_g() {
                    let fixed = Classification::Factors(ts.canonical_sorted().factors);
                    require(got == fixed, || {
                        format!("{sigma} in G must fix the tensor class")
                    })?;
                }
            }
            Ok(())
        },
    ));
    checks
}

/// The 24 rows of the relative table, grouped by value: each entry lists the
/// four quadruples sharing one of the six fractional linear images of a.
pub fn relative_table_rows(a: &Rational) -> Vec<(Vec<[usize; 4]>, Rational)> {
    let one = Rational::one();
    vec![
        (
            vec![[2, 0, 1, 3], [0, 2, 3, 1], [1, 3, 2, 0], [3, 1, 0, 2]],
            a.clone(),
        ),
        (
            vec![[0, 2, 1, 3], [2, 0, 3, 1], [1, 3, 0, 2], [3, 1, 2, 0]],
            a.recip(),
        ),
        (
            vec![[1, 0, 2, 3], [0, 1, 3, 2], [2, 3, 1, 0], [3, 2, 0, 1]],
            &one - a,
        ),
        (
            vec![[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]],
            (&one - a).recip(),
        ),
        (
            vec![[2, 1, 0, 3], [1, 2, 3, 0], [0, 3, 2, 1], [3, 0, 1, 2]],
            a / &(a - &one),
        ),
        (
            vec![[1, 2, 0, 3], [2, 1, 3, 0], [0, 3, 1, 2], [3, 0, 2, 1]],
            &one - &a.recip(),
        ),
    ]
}

/// Drinfel'd polynomials: closed forms, the θ example, multiplicativity,
/// classification round trips, and commutant behavior for repeated factors.
pub fn drinfeld_checks(max_d: usize) -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    for d in 1..=max_d.min(5) {
        for (n, den) in [(2i64, 1i64), (3, 1), (1, 2)] {
            checks.push(check(
                format!("drinfeld: P of V_{d}({n}/{den}) is (1-a*x)^{d}"),
                move || {
                    let p = drinfeld_polynomial(&build_eval_module(&spec(d, n, den)))
                        .map_err(|e| e.to_string())?;
                    let expect = UniPoly::one_minus_root(&ratio(n, den)).pow(d);
                    require(p.poly() == &expect, || format!("got {}", p.poly()))?;
                    require(p.poly().degree() == Some(d), || "degree mismatch".into())?;
                    require(!p.poly().eval(&Rational::one()).is_zero(), || {
                        "vanishes at 1".into()
                    })
                },
            ));
        }
    }

    checks.push(check("drinfeld: theta of V_2(3) is (1, 6, 36)", || {
        let t = theta_sequence(&build_eval_module(&spec(2, 3, 1))).map_err(|e| e.to_string())?;
        require(t.values() == [rat(1), rat(6), rat(36)], || {
            format!("got {:?}", t.values())
        })
    }));

    // both sides matrix-computed, over every factor-pair shape d <= 3 and
    // every ordered pair of distinct parameters from the sample set
    let params = [(2i64, 1i64), (3, 1), (1, 2), (-1, 1)];
    for du in 1..=max_d.min(3) {
        for dv in du..=max_d.min(3) {
            let name = format!("drinfeld: multiplicativity for diameters ({du},{dv})");
            checks.push(check(name, move || {
                for (un, uden) in params {
                    for (vn, vden) in params {
                        if (un, uden) == (vn, vden) {
                            continue;
                        }
                        let u = build_eval_module(&spec(du, un, uden));
                        let v = build_eval_module(&spec(dv, vn, vden));
                        let pu = drinfeld_polynomial(&u).map_err(|e| e.to_string())?;
                        let pv = drinfeld_polynomial(&v).map_err(|e| e.to_string())?;
                        let puv =
                            drinfeld_polynomial(&tensor(&u, &v)).map_err(|e| e.to_string())?;
                        require(puv.poly() == &(pu.poly() * pv.poly()), || {
                            format!("P(U(x)V) != P(U)P(V) at a=({un}/{uden},{vn}/{vden})")
                        })?;
                        // tensor commutativity
                        let pvu =
                            drinfeld_polynomial(&tensor(&v, &u)).map_err(|e| e.to_string())?;
                        require(puv == pvu, || {
                            format!("P(U(x)V) != P(V(x)U) at a=({un}/{uden},{vn}/{vden})")
                        })?;
                        // shapes multiply as well
                        let su = u.shape_polynomial().map_err(|e| e.to_string())?;
                        let sv = v.shape_polynomial().map_err(|e| e.to_string())?;
                        let suv = tensor(&u, &v)
                            .shape_polynomial()
                            .map_err(|e| e.to_string())?;
                        require(suv == &su * &sv, || {
                            format!("S(U(x)V) != S(U)S(V) at a=({un}/{uden},{vn}/{vden})")
                        })?;
                    }
                }
                Ok(())
            }));
        }
    }

    for ts in tensor_grid(max_d.min(3)) {
        let name = format!("drinfeld: classification round trip for {ts}");
        checks.push(check(name, move || {
            let got = classify(&ts.build()).map_err(|e| e.to_string())?;
            let want = Classification::Factors(ts.canonical_sorted().factors);
            require(got == want, || format!("classified {got:?}"))
        }));
    }

    checks.push(check(
        "drinfeld: repeated parameters enlarge the commutant",
        || {
            let repeated = TensorSpec::new(vec![spec(1, 2, 1), spec(1, 2, 1)]).build();
            require(repeated.commutant_dimension() > 1, || {
                "repeated parameters should be reducible".into()
            })?;
            let mixed = TensorSpec::new(vec![spec(1, 1, 2), spec(2, 1, 2)]).build();
            require(mixed.commutant_dimension() > 1, || {
                "repeated parameters should be reducible".into()
            })?;
            for (x, y) in [
                ((1usize, 2i64), (1usize, 3i64)),
                ((2, 2), (2, 3)),
                ((2, -1), (1, 3)),
            ] {
                let m = TensorSpec::new(vec![
                    EvalModuleSpec::new(x.0, param(x.1, 1)),
                    EvalModuleSpec::new(y.0, param(y.1, 1)),
                ])
                .build();
                require(m.commutant_dimension() == 1, || {
                    format!("distinct parameters {x:?},{y:?} should be irreducible")
                })?;
            }
            Ok(())
        },
    ));

    checks.push(check(
        "drinfeld: sigma forms exist, symmetric and nondegenerate",
        || {
            let modules = vec![
                build_eval_module(&spec(1, 3, 1)),
                build_eval_module(&spec(2, 3, 1)),
                TensorSpec::new(vec![spec(1, 2, 1), spec(2, 3, 1)]).build(),
            ];
            for m in &modules {
                for sigma in Perm4::klein_nonidentity() {
                    let g = build_sigma_form(m, sigma).map_err(|e| e.to_string())?;
                    require(g == g.transpose(), || format!("{sigma} on {}", m.label()))?;
                    require(g.inverse().is_some(), || {
                        format!("degenerate form for {sigma} on {}", m.label())
                    })?;
                }
            }
            Ok(())
        },
    ));
    checks
}
