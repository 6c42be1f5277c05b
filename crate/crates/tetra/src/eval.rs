//! Evaluation modules: sl₂ in the equitable basis, the pullback of the
//! irreducible sl₂-module V_d along the evaluation map at a parameter a, the
//! parameter extractor, closed-form generator matrices in all 24
//! distinguished bases, transition matrices between those bases, and the
//! standard invariant bilinear form.

use crate::matrix::ExactMatrix;
use crate::module::{ModuleError, TetModule};
use crate::rational::{binomial, format_rational, pow_i, rat, Rational};
use crate::symmetry::{relative, BasisQuad, EvalParam, GenPair, SymmetryError, VertexIndex};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("pairings must all be nonzero")]
    PairingsInconsistent,
    #[error("the one-unknown solve for the evaluation parameter is inconsistent: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// An element of sl₂ written in the equitable basis x, y, z, which satisfies
/// `[x,y] = 2x+2y`, `[y,z] = 2y+2z`, `[z,x] = 2z+2x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Element {
    pub cx: Rational,
    pub cy: Rational,
    pub cz: Rational,
}

impl Sl2Element {
    pub fn new(cx: Rational, cy: Rational, cz: Rational) -> Self {
        Sl2Element { cx, cy, cz }
    }

    pub fn zero() -> Self {
        Sl2Element::new(Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn neg(&self) -> Self {
        Sl2Element::new(-&self.cx, -&self.cy, -&self.cz)
    }

    /// Lie bracket in coordinates, from the three pairwise brackets of the
    /// equitable basis.
    pub fn bracket(&self, other: &Sl2Element) -> Sl2Element {
        let two = rat(2);
        // [x,y] = 2x+2y, [y,z] = 2y+2z, [z,x] = 2z+2x
        let xy = &(&self.cx * &other.cy) - &(&self.cy * &other.cx);
        let yz = &(&self.cy * &other.cz) - &(&self.cz * &other.cy);
        let zx = &(&self.cz * &other.cx) - &(&self.cx * &other.cz);
        Sl2Element::new(
            &two * &(&xy + &zx),
            &two * &(&xy + &yz),
            &two * &(&yz + &zx),
        )
    }

    /// The matrix of this element on V_d in the weight basis, where x, y, z
    /// act with diagonals ±(2n-d) and one off-diagonal stripe each.
    pub fn matrix_on(&self, d: usize) -> ExactMatrix {
        let n = d + 1;
        let mut m = ExactMatrix::zeros(n, n);
        for col in 0..n {
            let w = rat(d as i64 - 2 * col as i64); // d - 2n on the diagonal of z
            m[(col, col)] = &(&(-&w) * &self.cx) + &(&(&(-&w) * &self.cy) + &(&w * &self.cz));
            if col >= 1 {
                // x raises: (x + (d-2n)I).v_n = 2(d-n+1) v_{n-1}
                let c = rat(2 * (d as i64 - col as i64 + 1));
                m[(col - 1, col)] = &m[(col - 1, col)] + &(&c * &self.cx);
            }
            if col + 1 < n {
                // y lowers: (y + (d-2n)I).v_n = -2(n+1) v_{n+1}
                let c = rat(-2 * (col as i64 + 1));
                m[(col + 1, col)] = &m[(col + 1, col)] + &(&c * &self.cy);
            }
        }
        m
    }
}

/// Diameter and evaluation parameter: the data of one evaluation module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalModuleSpec {
    pub d: usize,
    pub a: EvalParam,
}

impl EvalModuleSpec {
    pub fn new(d: usize, a: EvalParam) -> Self {
        assert!(d >= 1, "diameter must be at least 1");
        EvalModuleSpec { d, a }
    }

    pub fn label(&self) -> String {
        format!("V_{}({})", self.d, self.a)
    }
}

impl fmt::Display for EvalModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.d, self.a)
    }
}

/// Identifies one of the 24 distinguished bases of an evaluation module.
pub type BracketBasisId = BasisQuad;

/// Image of the generator x_ij under the evaluation map at `a`, in equitable
/// coordinates: x12 ↦ x, x23 ↦ y, x31 ↦ z, x03 ↦ ay+(a-1)z,
/// x01 ↦ (1-a⁻¹)z - a⁻¹x, x02 ↦ (1-a)⁻¹x + a(1-a)⁻¹y; reversed pairs negate.
pub fn ev_map(a: &EvalParam, pair: GenPair) -> Sl2Element {
    let a = a.value();
    let one = Rational::one();
    let base = |i: usize, j: usize| -> Option<Sl2Element> {
        match (i, j) {
            (1, 2) => Some(Sl2Element::new(
                one.clone(),
                Rational::zero(),
                Rational::zero(),
            )),
            (2, 3) => Some(Sl2Element::new(
                Rational::zero(),
                one.clone(),
                Rational::zero(),
            )),
            (3, 1) => Some(Sl2Element::new(
                Rational::zero(),
                Rational::zero(),
                one.clone(),
            )),
            (0, 3) => Some(Sl2Element::new(Rational::zero(), a.clone(), a - &one)),
            (0, 1) => Some(Sl2Element::new(
                -&a.recip(),
                Rational::zero(),
                &one - &a.recip(),
            )),
            (0, 2) => {
                let inv = (&one - a).recip();
                Some(Sl2Element::new(inv.clone(), a * &inv, Rational::zero()))
            }
            _ => None,
        }
    };
    let (i, j) = (pair.i().index(), pair.j().index());
    match base(i, j) {
        Some(e) => e,
        None => base(j, i).expect("one orientation is primitive").neg(),
    }
}

/// The evaluation module V_d(a) on the weight basis: the matrix of x_ij is
/// the equitable-coordinate image under the evaluation map, substituted into
/// the weight-basis actions of x, y, z.
pub fn build_eval_module(spec: &EvalModuleSpec) -> TetModule {
    let action = GenPair::all()
        .map(|pair| ev_map(&spec.a, pair).matrix_on(spec.d))
        .to_vec();
    TetModule::new(spec.d + 1, spec.label(), action).expect("square by construction")
}

/// Outcome of the evaluation-parameter extractor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtractResult {
    /// The module is an evaluation module with this parameter.
    Param(EvalParam),
    /// The actions of x01, x02, x03 are linearly independent, so the module
    /// is not an evaluation module.
    NotEvaluation,
}

/// Solves a·x01 + (1-a)·x02 - x03 = 0 for the single unknown a, then checks
/// the remaining three vanishing expressions and that the shape is all ones.
/// Returns `NotEvaluation` when no such a exists; a module that passes the
/// solve but fails the follow-up checks is corrupted input and errors.
pub fn extract_eval_param(m: &TetModule) -> Result<ExtractResult, EvalError> {
    // a·(x01 - x02) = x03 - x02
    let lhs = &(m.action_ij(0, 1).clone()) - m.action_ij(0, 2);
    let rhs = &(m.action_ij(0, 3).clone()) - m.action_ij(0, 2);
    if lhs.is_zero() {
        return Ok(ExtractResult::NotEvaluation);
    }
    let mut a = None;
    'outer: for r in 0..lhs.rows() {
        for c in 0..lhs.cols() {
            if !lhs[(r, c)].is_zero() {
                a = Some(&rhs[(r, c)] / &lhs[(r, c)]);
                break 'outer;
            }
        }
    }
    let a = a.expect("nonzero matrix has a nonzero entry");
    if !(&lhs.scale(&a) - &rhs).is_zero() {
        return Ok(ExtractResult::NotEvaluation);
    }
    let param = EvalParam::new(a.clone()).map_err(|_| {
        EvalError::Inconsistent(format!(
            "solved parameter {} lies outside the domain",
            format_rational(&a)
        ))
    })?;

    // the other three vanishing expressions, e.g. a·x10 + (1-a)·x13 - x12
    let one_minus_a = &Rational::one() - &a;
    for (p1, p2, p3) in [
        ((1, 0), (1, 3), (1, 2)),
        ((2, 3), (2, 0), (2, 1)),
        ((3, 2), (3, 1), (3, 0)),
    ] {
        let expr = &(&m.action_ij(p1.0, p1.1).scale(&a)
            + &m.action_ij(p2.0, p2.1).scale(&one_minus_a))
            - m.action_ij(p3.0, p3.1);
        if !expr.is_zero() {
            return Err(EvalError::Inconsistent(format!(
                "x{}{} relation fails at the solved parameter",
                p1.0, p1.1
            )));
        }
    }

    // evaluation modules have shape (1,1,...,1)
    let dec = m
        .decomposition(VertexIndex::new(1).unwrap(), VertexIndex::new(3).unwrap())
        .map_err(|e| EvalError::Inconsistent(e.to_string()))?;
    if dec.shape().iter().any(|&s| s != 1) {
        return Err(EvalError::Inconsistent(format!(
            "shape {:?} is not all ones",
            dec.shape()
        )));
    }
    Ok(ExtractResult::Param(param))
}

/// The closed-form matrices of all 12 generators with respect to the
/// `[i,j,k,l]`-basis, driven by α = the (i,j,k,l)-relative of a. Subdiagonal
/// entries sit at (n, n-1), superdiagonal at (n-1, n), n = 1..d.
pub fn bracket_basis_matrices(spec: &EvalModuleSpec, basis: BracketBasisId) -> TetModule {
    let d = spec.d;
    let alpha = relative(&spec.a, basis.i(), basis.j(), basis.k(), basis.l())
        .expect("distinct basis indices");
    let one = Rational::one();
    let alpha_inv = alpha.recip();
    let am1_inv = (&alpha - &one).recip();
    let oma_inv = (&one - &alpha).recip();

    let diag = |f: &dyn Fn(i64) -> Rational| -> ExactMatrix {
        ExactMatrix::build(d + 1, d + 1, |r, c| {
            if r == c {
                f(r as i64)
            } else {
                Rational::zero()
            }
        })
    };
    let dd = d as i64;

    // entry builders: n is the row index for (n,n-1), the column index for (n-1,n)
    let build = |diagonal: &dyn Fn(i64) -> Rational,
                 sub: Option<&dyn Fn(i64) -> Rational>,
                 sup: Option<&dyn Fn(i64) -> Rational>|
     -> ExactMatrix {
        let mut m = diag(diagonal);
        for n in 1..=d {
            if let Some(f) = sub {
                m[(n, n - 1)] = f(n as i64);
            }
            if let Some(f) = sup {
                m[(n - 1, n)] = f(n as i64);
            }
        }
        m
    };

    let mut action = vec![ExactMatrix::zeros(d + 1, d + 1); 12];
    let mut set = |from: VertexIndex, to: VertexIndex, m: ExactMatrix| {
        action[GenPair::new(from, to).unwrap().storage_index()] = m;
    };
    let (i, j, k, l) = (basis.i(), basis.j(), basis.k(), basis.l());

    set(l, k, build(&|n| rat(dd - 2 * n), None, None));
    set(k, l, build(&|n| rat(2 * n - dd), None, None));
    set(
        k,
        i,
        build(
            &|n| rat(2 * n - dd),
            None,
            Some(&|n| rat(2 * dd - 2 * n + 2)),
        ),
    );
    set(
        i,
        k,
        build(
            &|n| rat(dd - 2 * n),
            None,
            Some(&|n| rat(2 * n - 2 * dd - 2)),
        ),
    );
    set(
        i,
        l,
        build(&|n| rat(2 * n - dd), Some(&|n| rat(-2 * n)), None),
    );
    set(
        l,
        i,
        build(&|n| rat(dd - 2 * n), Some(&|n| rat(2 * n)), None),
    );
    set(
        l,
        j,
        build(&|n| rat(dd - 2 * n), Some(&|n| &rat(2 * n) * &alpha), None),
    );
    set(
        j,
        l,
        build(&|n| rat(2 * n - dd), Some(&|n| &rat(-2 * n) * &alpha), None),
    );
    set(
        j,
        k,
        build(
            &|n| rat(dd - 2 * n),
            None,
            Some(&|n| &rat(2 * (n - dd - 1)) * &alpha_inv),
        ),
    );
    set(
        k,
        j,
        build(
            &|n| rat(2 * n - dd),
            None,
            Some(&|n| &rat(2 * (dd - n + 1)) * &alpha_inv),
        ),
    );
    set(
        j,
        i,
        build(
            &|n| &(&rat(dd - 2 * n) * &(&alpha + &one)) * &am1_inv,
            Some(&|n| &(&rat(2 * n) * &alpha) * &am1_inv),
            Some(&|n| &rat(2 * (dd - n + 1)) * &oma_inv),
        ),
    );
    set(
        i,
        j,
        build(
            &|n| &(&rat(dd - 2 * n) * &(&alpha + &one)) * &oma_inv,
            Some(&|n| &(&rat(2 * n) * &alpha) * &oma_inv),
            Some(&|n| &rat(2 * (dd - n + 1)) * &am1_inv),
        ),
    );

    TetModule::new(
        d + 1,
        format!("{} in basis {}", spec.label(), basis),
        action,
    )
    .expect("square by construction")
}

/// The four free pairings ⟨η_0,η_1⟩, ⟨η_0,η_2⟩, ⟨η_0,η_3⟩, ⟨η_1,η_2⟩ of the
/// normalizing vectors; the remaining pairings are forced by the three
/// product identities and the (-1)^d symmetry of the standard form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EtaPairings {
    pub p01: Rational,
    pub p02: Rational,
    pub p03: Rational,
    pub p12: Rational,
}

impl Default for EtaPairings {
    fn default() -> Self {
        EtaPairings {
            p01: Rational::one(),
            p02: Rational::one(),
            p03: Rational::one(),
            p12: Rational::one(),
        }
    }
}

impl EtaPairings {
    pub fn new(
        p01: Rational,
        p02: Rational,
        p03: Rational,
        p12: Rational,
    ) -> Result<Self, EvalError> {
        let p = EtaPairings { p01, p02, p03, p12 };
        if [&p.p01, &p.p02, &p.p03, &p.p12].iter().any(|v| v.is_zero()) {
            return Err(EvalError::PairingsInconsistent);
        }
        Ok(p)
    }

    /// The full table ⟨η_i, η_j⟩ for i ≠ j at diameter d and parameter a:
    /// ⟨η_1,η_3⟩ = (1-a)^d·p03·p12/p02, ⟨η_2,η_3⟩ = (-a)^d·p03·p12/p01,
    /// and ⟨η_j,η_i⟩ = (-1)^d ⟨η_i,η_j⟩.
    pub fn table(&self, spec: &EvalModuleSpec) -> [[Rational; 4]; 4] {
        let a = spec.a.value();
        let d = spec.d as i64;
        let one = Rational::one();
        let sign = pow_i(&-&one, d);
        let p13 = &(&pow_i(&(&one - a), d) * &self.p03) * &(&self.p12 / &self.p02);
        let p23 = &(&(&pow_i(a, d) * &sign) * &self.p03) * &(&self.p12 / &self.p01);
        let mut t: [[Rational; 4]; 4] =
            std::array::from_fn(|_| std::array::from_fn(|_| Rational::zero()));
        let upper = [
            (0, 1, self.p01.clone()),
            (0, 2, self.p02.clone()),
            (0, 3, self.p03.clone()),
            (1, 2, self.p12.clone()),
            (1, 3, p13),
            (2, 3, p23),
        ];
        for (i, j, v) in upper {
            t[j][i] = &sign * &v;
            t[i][j] = v;
        }
        t
    }
}

/// Transition matrix from the basis `from` to the basis `to` (columns of the
/// result express the new basis vectors in the old one). Adjacent swaps use
/// the closed forms; arbitrary pairs compose along a path of adjacent swaps.
pub fn transition_matrix(
    spec: &EvalModuleSpec,
    from: BracketBasisId,
    to: BracketBasisId,
    pairings: &EtaPairings,
) -> ExactMatrix {
    let table = pairings.table(spec);
    let mut acc = ExactMatrix::identity(spec.d + 1);
    let mut current = from;
    for step in swap_path(from, to) {
        let next = match step {
            Swap::Ij => current.swap_ij(),
            Swap::Jk => current.swap_jk(),
            Swap::Kl => current.swap_kl(),
        };
        acc = &acc * &adjacent_transition(spec, current, step, &table);
        current = next;
    }
    debug_assert_eq!(current, to);
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Swap {
    Ij,
    Jk,
    Kl,
}

/// Shortest sequence of adjacent swaps carrying `from` to `to` (BFS over the
/// 24 basis labels).
fn swap_path(from: BracketBasisId, to: BracketBasisId) -> Vec<Swap> {
    if from == to {
        return Vec::new();
    }
    let mut seen = vec![(from, Vec::new())];
    let mut frontier = vec![from];
    loop {
        let mut next_frontier = Vec::new();
        for b in frontier {
            let path = seen
                .iter()
                .find(|(q, _)| *q == b)
                .map(|(_, p)| p.clone())
                .expect("frontier recorded");
            for (swap, next) in [
                (Swap::Ij, b.swap_ij()),
                (Swap::Jk, b.swap_jk()),
                (Swap::Kl, b.swap_kl()),
            ] {
                if seen.iter().all(|(q, _)| *q != next) {
                    let mut p = path.clone();
                    p.push(swap);
                    if next == to {
                        return p;
                    }
                    seen.push((next, p.clone()));
                    next_frontier.push(next);
                }
            }
        }
        assert!(!next_frontier.is_empty(), "swap graph is connected");
        frontier = next_frontier;
    }
}

fn adjacent_transition(
    spec: &EvalModuleSpec,
    from: BracketBasisId,
    swap: Swap,
    table: &[[Rational; 4]; 4],
) -> ExactMatrix {
    let d = spec.d;
    let alpha =
        relative(&spec.a, from.i(), from.j(), from.k(), from.l()).expect("distinct basis indices");
    match swap {
        Swap::Ij => {
            // diagonal with (r,r)-entry (⟨η_j,η_l⟩/⟨η_i,η_l⟩)·α^r
            let ratio = &table[from.j().index()][from.l().index()]
                / &table[from.i().index()][from.l().index()];
            ExactMatrix::build(d + 1, d + 1, |r, c| {
                if r == c {
                    &ratio * &pow_i(&alpha, r as i64)
                } else {
                    Rational::zero()
                }
            })
        }
        Swap::Jk => {
            // lower triangular with (r,s)-entry C(r,s)·α^{r-s}·(1-α)^s
            let one_minus = &Rational::one() - &alpha;
            ExactMatrix::build(d + 1, d + 1, |r, s| {
                if s > r {
                    Rational::zero()
                } else {
                    &(&binomial(r, s) * &pow_i(&alpha, (r - s) as i64))
                        * &pow_i(&one_minus, s as i64)
                }
            })
        }
        Swap::Kl => reversal_matrix(d),
    }
}

/// The anti-diagonal permutation matrix Z with Z² = I.
pub fn reversal_matrix(d: usize) -> ExactMatrix {
    ExactMatrix::build(d + 1, d + 1, |r, c| {
        if r + c == d {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// Gram matrix of the standard bilinear form on the weight basis of V_d(a):
/// entry (r,s) = δ_{r+s,d}·(-1)^r·C(d,r). Satisfies Mᵀ·G = -G·M for every
/// generator matrix M of the module, and is symmetric for even d,
/// antisymmetric for odd d.
pub fn standard_form_gram(spec: &EvalModuleSpec) -> ExactMatrix {
    let d = spec.d;
    ExactMatrix::build(d + 1, d + 1, |r, s| {
        if r + s == d {
            let b = binomial(d, r);
            if r % 2 == 0 {
                b
            } else {
                -&b
            }
        } else {
            Rational::zero()
        }
    })
}
