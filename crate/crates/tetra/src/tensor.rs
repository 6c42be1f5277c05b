//! Tensor products, the Drinfel'd polynomial and its inversion back to
//! evaluation factors, intertwiner solving, and the invariant bilinear
//! forms obtained from stacked linear systems.

use crate::eval::{build_eval_module, EvalModuleSpec};
use crate::matrix::ExactMatrix;
use crate::module::{ModuleError, TetModule};
use crate::poly::UniPoly;
use crate::rational::{factorial, lex_key, parse_rational, rat, Rational};
use crate::symmetry::{EvalParam, GenPair, Perm4, SymmetryError, VertexIndex};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TensorError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
    #[error("lowest-weight vector is not a joint eigenvector (module is corrupt)")]
    ThetaInconsistent,
    #[error("no nonzero invariant form exists (module is corrupt)")]
    NoForm,
    #[error("no intertwiner onto the twisted module (module is corrupt)")]
    NoIntertwiner,
    #[error("cannot parse tensor spec {0:?}: expected \"(d1,a1);(d2,a2);...\"")]
    BadSpec(String),
}

/// A formal tensor product of evaluation modules. The product is irreducible
/// exactly when the evaluation parameters are mutually distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorSpec {
    pub factors: Vec<EvalModuleSpec>,
}

impl TensorSpec {
    pub fn new(factors: Vec<EvalModuleSpec>) -> Self {
        assert!(!factors.is_empty(), "at least one factor");
        TensorSpec { factors }
    }

    pub fn parse(s: &str) -> Result<Self, TensorError> {
        let bad = || TensorError::BadSpec(s.to_string());
        let mut factors = Vec::new();
        for part in s.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let inner = part
                .strip_prefix('(')
                .and_then(|p| p.strip_suffix(')'))
                .ok_or_else(bad)?;
            let (d, a) = inner.split_once(',').ok_or_else(bad)?;
            let d: usize = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            let a = parse_rational(a.trim()).map_err(|_| bad())?;
            let a = EvalParam::new(a).map_err(TensorError::Symmetry)?;
            factors.push(EvalModuleSpec::new(d, a));
        }
        if factors.is_empty() {
            return Err(bad());
        }
        Ok(TensorSpec::new(factors))
    }

    pub fn has_distinct_params(&self) -> bool {
        for x in 0..self.factors.len() {
            for y in x + 1..self.factors.len() {
                if self.factors[x].a == self.factors[y].a {
                    return false;
                }
            }
        }
        true
    }

    /// Builds the module by folding the Kronecker-sum action left to right.
    pub fn build(&self) -> TetModule {
        let mut it = self.factors.iter();
        let mut acc = build_eval_module(it.next().expect("nonempty"));
        for f in it {
            acc = tensor(&acc, &build_eval_module(f));
        }
        acc
    }

    /// Canonical multiset order: descending diameter, then ascending
    /// parameter by (numerator, denominator) lexicographic order.
    pub fn canonical_sorted(&self) -> TensorSpec {
        let mut factors = self.factors.clone();
        factors.sort_by(|x, y| {
            y.d.cmp(&x.d)
                .then_with(|| lex_key(x.a.value()).cmp(&lex_key(y.a.value())))
        });
        TensorSpec::new(factors)
    }
}

impl fmt::Display for TensorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// The tensor-product module: x_ij acts as the Kronecker sum
/// A ⊗ I + I ⊗ B, the left factor varying slowest.
pub fn tensor(u: &TetModule, v: &TetModule) -> TetModule {
    let iu = ExactMatrix::identity(u.dim());
    let iv = ExactMatrix::identity(v.dim());
    let action = GenPair::all()
        .map(|pair| &u.action(pair).kron(&iv) + &iu.kron(v.action(pair)))
        .to_vec();
    TetModule::new(
        u.dim() * v.dim(),
        format!("{} (x) {}", u.label(), v.label()),
        action,
    )
    .expect("square by construction")
}

/// The eigenvalue sequence of (e⁻)ⁱ(e⁺)ⁱ on the one-dimensional lowest
/// component of the `[1,3]` decomposition; θ_0 = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaSequence(Vec<Rational>);

impl ThetaSequence {
    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn diameter(&self) -> usize {
        self.0.len() - 1
    }
}

/// Extracts θ_0..θ_d: e⁺ = (x13+x30)/2 raises along the `[1,3]` decomposition
/// and e⁻ = (x31+x12)/2 lowers, so (e⁻)ⁱ(e⁺)ⁱ fixes the lowest component,
/// which must be one-dimensional. Each eigenvalue is an exact division.
pub fn theta_sequence(m: &TetModule) -> Result<ThetaSequence, TensorError> {
    let dec = m.decomposition(VertexIndex::new(1).unwrap(), VertexIndex::new(3).unwrap())?;
    let d = dec.diameter();
    let lowest = dec.component(0);
    if lowest.cols() != 1 {
        return Err(TensorError::Module(ModuleError::NotIrreducible(
            lowest.cols(),
        )));
    }
    let w = lowest.column(0);
    let pivot = w
        .iter()
        .position(|c| !c.is_zero())
        .expect("basis vector is nonzero");

    let half = Rational::new(1.into(), 2.into());
    let e_plus = (&(m.action_ij(1, 3).clone()) + m.action_ij(3, 0)).scale(&half);
    let e_minus = (&(m.action_ij(3, 1).clone()) + m.action_ij(1, 2)).scale(&half);

    let mut thetas = Vec::with_capacity(d + 1);
    let mut raised = w.clone();
    for i in 0..=d {
        if i > 0 {
            raised = e_plus.mul_vec(&raised);
        }
        let mut lowered = raised.clone();
        for _ in 0..i {
            lowered = e_minus.mul_vec(&lowered);
        }
        let theta = &lowered[pivot] / &w[pivot];
        // (e⁻)ⁱ(e⁺)ⁱ.w must equal θ_i·w exactly
        for (a, b) in lowered.iter().zip(&w) {
            if *a != &theta * b {
                return Err(TensorError::ThetaInconsistent);
            }
        }
        thetas.push(theta);
    }
    Ok(ThetaSequence(thetas))
}

/// A Drinfel'd polynomial: constant coefficient 1, and nonzero at λ = 1 for
/// every irreducible module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DrinfeldPoly(UniPoly);

impl DrinfeldPoly {
    pub fn poly(&self) -> &UniPoly {
        &self.0
    }
}

/// P = Σ (-1)ⁱ θ_i λⁱ / (i!)², every division exact.
pub fn drinfeld_polynomial(m: &TetModule) -> Result<DrinfeldPoly, TensorError> {
    let thetas = theta_sequence(m)?;
    let coeffs: Vec<Rational> = thetas
        .values()
        .iter()
        .enumerate()
        .map(|(i, theta)| {
            let sign = if i % 2 == 0 { rat(1) } else { rat(-1) };
            let fact = factorial(i);
            &(&sign * theta) / &(&fact * &fact)
        })
        .collect();
    Ok(DrinfeldPoly(UniPoly::new(coeffs)))
}

/// Why a module resisted classification over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Unclassifiable {
    /// The Drinfel'd polynomial has a factor with no rational roots; its
    /// factors live over an extension field.
    IrrationalFactor { remainder_degree: usize },
    /// The polynomial vanishes at λ = 1, which no genuine module permits.
    RootAtOne,
}

impl fmt::Display for Unclassifiable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Unclassifiable::IrrationalFactor { remainder_degree } => write!(
                f,
                "Drinfel'd polynomial has an irrational factor of degree {remainder_degree}"
            ),
            Unclassifiable::RootAtOne => {
                write!(f, "Drinfel'd polynomial vanishes at 1")
            }
        }
    }
}

/// Classification outcome: the multiset of evaluation factors, or the reason
/// none exists over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Factors(Vec<EvalModuleSpec>),
    Unclassifiable(Unclassifiable),
}

/// Inverts the Drinfel'd polynomial: each rational root r of multiplicity
/// d_j contributes the factor with diameter d_j and parameter 1/r. Returns
/// the factors canonically sorted (descending diameter, ascending parameter).
pub fn classify(m: &TetModule) -> Result<Classification, TensorError> {
    let p = drinfeld_polynomial(m)?;
    if p.poly().eval(&Rational::one()).is_zero() {
        return Ok(Classification::Unclassifiable(Unclassifiable::RootAtOne));
    }
    let roots = p
        .poly()
        .rational_roots()
        .expect("theta_0 = 1, so P is nonzero");
    if roots.remainder_degree > 0 {
        return Ok(Classification::Unclassifiable(
            Unclassifiable::IrrationalFactor {
                remainder_degree: roots.remainder_degree,
            },
        ));
    }
    let mut factors = Vec::with_capacity(roots.roots.len());
    for (root, mult) in roots.roots {
        // roots are nonzero because the constant coefficient is 1, and a
        // root of 1 was excluded above, so 1/root is a valid parameter
        let a = EvalParam::new(root.recip()).expect("root avoids 0 and 1");
        factors.push(EvalModuleSpec::new(mult, a));
    }
    Ok(Classification::Factors(
        TensorSpec::new(factors).canonical_sorted().factors,
    ))
}

/// Stacks the rows of T·A_g - B_g·T = 0 over the generator index g and
/// returns the kernel as matrices (the space of intertwiners u → v when
/// A_g, B_g are the corresponding generator actions).
fn sylvester_kernel(pairs: &[(ExactMatrix, ExactMatrix)]) -> Vec<ExactMatrix> {
    let n = pairs[0].0.rows();
    let unknowns = n * n;
    let mut rows = Vec::new();
    for (a, b) in pairs {
        for r in 0..n {
            for c in 0..n {
                let mut row = vec![Rational::zero(); unknowns];
                for m in 0..n {
                    let av = &a[(m, c)];
                    if !av.is_zero() {
                        row[r * n + m] += av;
                    }
                    let bv = &b[(r, m)];
                    if !bv.is_zero() {
                        row[m * n + c] -= bv;
                    }
                }
                if row.iter().any(|v| !v.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let kernel = if rows.is_empty() {
        return vec![ExactMatrix::identity(n)];
    } else {
        ExactMatrix::from_rows(rows).kernel_basis()
    };
    kernel
        .into_iter()
        .map(|flat| ExactMatrix::build(n, n, |r, c| flat[r * n + c].clone()))
        .collect()
}

/// A nonzero T with T·action_u(i,j) = action_v(i,j)·T for all pairs, found
/// as a kernel vector of the stacked Sylvester system; `None` if only the
/// zero map intertwines. When `u` is irreducible and T exists, the solution
/// space is one-dimensional and T is invertible.
pub fn solve_intertwiner(u: &TetModule, v: &TetModule) -> Option<ExactMatrix> {
    assert_eq!(u.dim(), v.dim(), "intertwiners need equal dimensions");
    let pairs: Vec<(ExactMatrix, ExactMatrix)> = GenPair::all()
        .into_iter()
        .filter(|p| p.i() < p.j())
        .map(|p| (u.action(p).clone(), v.action(p).clone()))
        .collect();
    sylvester_kernel(&pairs).into_iter().next()
}

/// Scales a matrix so its first nonzero entry in row-major order is 1.
fn normalize_leading_entry(m: &ExactMatrix) -> ExactMatrix {
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if !m[(r, c)].is_zero() {
                return m.scale(&m[(r, c)].recip());
            }
        }
    }
    m.clone()
}

/// The Gram matrix of the invariant form: the nonzero solution of
/// Mᵀ·G = -G·M over all generators, verified nondegenerate and normalized
/// so the first nonzero entry is 1. Unique up to scalar on irreducibles;
/// symmetric for even diameter, antisymmetric for odd.
pub fn build_standard_form(m: &TetModule) -> Result<ExactMatrix, TensorError> {
    let pairs: Vec<(ExactMatrix, ExactMatrix)> = GenPair::all()
        .into_iter()
        .filter(|p| p.i() < p.j())
        .map(|p| (m.action(p).clone(), -&m.action(p).transpose()))
        .collect();
    let gram = sylvester_kernel(&pairs)
        .into_iter()
        .next()
        .ok_or(TensorError::NoForm)?;
    if gram.inverse().is_none() {
        return Err(TensorError::NoForm);
    }
    Ok(normalize_leading_entry(&gram))
}

/// The twisted invariant form for a nonidentity σ in the Klein group: the
/// nonzero G with Mᵀ(i,j)·G = -G·M(σ(i),σ(j)) for all pairs, built by
/// composing the standard form with an intertwiner onto the twisted module.
/// Verified nondegenerate and symmetric, normalized like the standard form.
pub fn build_sigma_form(m: &TetModule, sigma: Perm4) -> Result<ExactMatrix, TensorError> {
    if sigma.is_identity() {
        return Err(TensorError::Symmetry(SymmetryError::IsIdentity));
    }
    if !sigma.is_in_g() {
        return Err(TensorError::Symmetry(SymmetryError::NotInG));
    }
    let standard = build_standard_form(m)?;
    let zeta = solve_intertwiner(m, &m.twist(sigma)).ok_or(TensorError::NoIntertwiner)?;
    let gram = &standard * &zeta;
    // defining residuals for all 12 pairs
    for p in GenPair::all() {
        let twisted = sigma.apply_pair(p);
        let residual = &(&m.action(p).transpose() * &gram) + &(&gram * m.action(twisted));
        if !residual.is_zero() {
            return Err(TensorError::NoForm);
        }
    }
    if gram.inverse().is_none() {
        return Err(TensorError::NoForm);
    }
    if gram != gram.transpose() {
        return Err(TensorError::NoForm);
    }
    Ok(normalize_leading_entry(&gram))
}
