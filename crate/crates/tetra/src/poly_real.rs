//! The polynomial model: the algebra acting by derivations on homogeneous
//! degree-d polynomials in z_0, z_1, with z_2, z_3 the linear forms cut out
//! by Σ z_i = 0 and Σ β_i z_i = 0 for four mutually distinct parameters β_i.
//! The slice of degree d is an evaluation module whose parameter is the
//! cross ratio of the β's, and it carries closed-form bracket bases, Gram
//! pairings, and the Klein-group automorphisms — an independent route to
//! every formula produced by [`crate::eval`].

use crate::matrix::ExactMatrix;
use crate::module::TetModule;
use crate::rational::{binomial, pow_i, rat, Rational};
use crate::symmetry::{BasisQuad, EvalParam, GenPair, Perm4, SymmetryError, VertexIndex};
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyRealError {
    #[error("beta parameters must be mutually distinct")]
    BetasNotDistinct,
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// Four mutually distinct rational parameters β_0..β_3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaQuad {
    values: [Rational; 4],
}

impl BetaQuad {
    pub fn new(values: [Rational; 4]) -> Result<Self, PolyRealError> {
        for a in 0..4 {
            for b in a + 1..4 {
                if values[a] == values[b] {
                    return Err(PolyRealError::BetasNotDistinct);
                }
            }
        }
        Ok(BetaQuad { values })
    }

    pub fn get(&self, i: VertexIndex) -> &Rational {
        &self.values[i.index()]
    }

    pub fn values(&self) -> &[Rational; 4] {
        &self.values
    }

    fn diff(&self, i: VertexIndex, j: VertexIndex) -> Rational {
        self.get(i) - self.get(j)
    }

    /// The cross ratio (β_0-β_1)(β_2-β_3) / ((β_0-β_3)(β_2-β_1)): the
    /// evaluation parameter of the degree-d slice.
    pub fn cross_ratio(&self) -> Rational {
        let v = VertexIndex::ALL;
        &(&self.diff(v[0], v[1]) * &self.diff(v[2], v[3]))
            / &(&self.diff(v[0], v[3]) * &self.diff(v[2], v[1]))
    }

    /// The generalized cross ratio (β_i-β_l)(β_j-β_k)/((β_i-β_k)(β_j-β_l)),
    /// which equals the (i,j,k,l)-relative of [`BetaQuad::cross_ratio`].
    pub fn relative_cross_ratio(&self, b: BasisQuad) -> Rational {
        let (i, j, k, l) = (b.i(), b.j(), b.k(), b.l());
        &(&self.diff(i, l) * &self.diff(j, k)) / &(&self.diff(i, k) * &self.diff(j, l))
    }
}

/// Distinct β's realizing the given evaluation parameter as their cross
/// ratio: β_1 = 0 and β_2 = 1 are fixed, and β_3 = 2, 3, ... is scanned
/// until the linear solve for β_0 avoids collisions (at most one value of
/// β_3 is ever skipped).
pub fn betas_for_param(a: &EvalParam) -> BetaQuad {
    let a = a.value();
    let one = Rational::one();
    for b3 in 2.. {
        let b3 = rat(b3);
        let denom = &(a - &one) + &b3;
        if denom.is_zero() {
            continue;
        }
        let b0 = &(a * &b3) / &denom;
        if let Ok(quad) = BetaQuad::new([b0, Rational::zero(), one.clone(), b3]) {
            return quad;
        }
    }
    unreachable!("the scan terminates")
}

/// A linear form p·z_0 + q·z_1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    pub p: Rational,
    pub q: Rational,
}

impl LinearForm {
    pub fn new(p: Rational, q: Rational) -> Self {
        LinearForm { p, q }
    }
}

/// The form z_r for r ∈ 𝕀: z_0 and z_1 are the coordinates themselves, and
/// z_2, z_3 come from eliminating the two linear constraints.
pub fn linear_form(betas: &BetaQuad, r: VertexIndex) -> LinearForm {
    let v = VertexIndex::ALL;
    match r.index() {
        0 => LinearForm::new(Rational::one(), Rational::zero()),
        1 => LinearForm::new(Rational::zero(), Rational::one()),
        // z_2 = ((β_0-β_3) z_0 + (β_1-β_3) z_1) / (β_3-β_2)
        2 => {
            let inv = betas.diff(v[3], v[2]).recip();
            LinearForm::new(
                &betas.diff(v[0], v[3]) * &inv,
                &betas.diff(v[1], v[3]) * &inv,
            )
        }
        // z_3 = ((β_2-β_0) z_0 + (β_2-β_1) z_1) / (β_3-β_2)
        3 => {
            let inv = betas.diff(v[3], v[2]).recip();
            LinearForm::new(
                &betas.diff(v[2], v[0]) * &inv,
                &betas.diff(v[2], v[1]) * &inv,
            )
        }
        _ => unreachable!("vertex indices are 0..4"),
    }
}

/// A homogeneous polynomial of degree d in z_0, z_1: coefficient of
/// z_0^{d-n} z_1^n at index n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomPoly {
    coeffs: Vec<Rational>,
}

impl HomPoly {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "degree is implicit in the length");
        HomPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn zero(degree: usize) -> Self {
        HomPoly::new(vec![Rational::zero(); degree + 1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> HomPoly {
        HomPoly::new(self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn add(&self, other: &HomPoly) -> HomPoly {
        assert_eq!(self.degree(), other.degree(), "degrees must match");
        HomPoly::new(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Product of homogeneous polynomials (degrees add).
    pub fn mul(&self, other: &HomPoly) -> HomPoly {
        let mut coeffs = vec![Rational::zero(); self.degree() + other.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        HomPoly::new(coeffs)
    }

    /// (p·z_0 + q·z_1)^e by exact binomial expansion.
    pub fn from_linear_power(form: &LinearForm, e: usize) -> HomPoly {
        let mut coeffs = Vec::with_capacity(e + 1);
        for n in 0..=e {
            coeffs.push(
                &(&binomial(e, n) * &pow_i(&form.p, (e - n) as i64)) * &pow_i(&form.q, n as i64),
            );
        }
        HomPoly::new(coeffs)
    }

    /// The monomial z_i^{d-n} z_j^n expanded into z_0, z_1 coordinates.
    pub fn from_monomial(
        betas: &BetaQuad,
        i: VertexIndex,
        j: VertexIndex,
        d: usize,
        n: usize,
    ) -> HomPoly {
        let zi = HomPoly::from_linear_power(&linear_form(betas, i), d - n);
        let zj = HomPoly::from_linear_power(&linear_form(betas, j), n);
        zi.mul(&zj)
    }
}

/// The 2x2 matrix (columns = images of z_0, z_1) of the derivation attached
/// to the pair (r,s): the unique derivation with z_r ↦ -z_r, z_s ↦ z_s.
fn derivation_on_degree_one(betas: &BetaQuad, pair: GenPair) -> ExactMatrix {
    let fr = linear_form(betas, pair.i());
    let fs = linear_form(betas, pair.j());
    // columns of f are z_r, z_s in (z_0, z_1) coordinates
    let f = ExactMatrix::from_rows(vec![
        vec![fr.p.clone(), fs.p.clone()],
        vec![fr.q.clone(), fs.q.clone()],
    ]);
    let eigen = ExactMatrix::from_rows(vec![vec![rat(-1), rat(0)], vec![rat(0), rat(1)]]);
    let f_inv = f.inverse().expect("z_r, z_s form a basis of the forms");
    &(&f * &eigen) * &f_inv
}

/// The degree-d slice of the polynomial module: each generator acts by its
/// derivation, extended from degree one by the Leibniz rule, expressed on
/// the monomial basis z_0^{d-n} z_1^n.
pub fn build_poly_module(d: usize, betas: &BetaQuad) -> TetModule {
    let n = d + 1;
    let action = GenPair::all()
        .map(|pair| {
            let der = derivation_on_degree_one(betas, pair);
            let mut m = ExactMatrix::zeros(n, n);
            for col in 0..n {
                let zeros = (d - col) as i64; // exponent of z_0
                let ones = col as i64; // exponent of z_1
                m[(col, col)] = &(&rat(zeros) * &der[(0, 0)]) + &(&rat(ones) * &der[(1, 1)]);
                if col + 1 < n {
                    m[(col + 1, col)] = &rat(zeros) * &der[(1, 0)];
                }
                if col >= 1 {
                    m[(col - 1, col)] = &rat(ones) * &der[(0, 1)];
                }
            }
            m
        })
        .to_vec();
    let label = format!(
        "P_{}(betas {})",
        d,
        betas
            .values()
            .iter()
            .map(crate::rational::format_rational)
            .collect::<Vec<_>>()
            .join(",")
    );
    TetModule::new(n, label, action).expect("square by construction")
}

/// The `[i,j,k,l]`-basis of the degree-d slice: the n-th vector is
/// z_k^{d-n} z_l^n · C(d,n) (β_j-β_k)^{d-n} (β_j-β_l)^n / (β_i-β_j)^d,
/// returned in monomial coordinates. The vectors sum to z_i^d.
pub fn bracket_basis_vectors(d: usize, betas: &BetaQuad, b: BasisQuad) -> Vec<HomPoly> {
    let (i, j, k, l) = (b.i(), b.j(), b.k(), b.l());
    let scale = pow_i(&betas.diff(i, j), d as i64).recip();
    (0..=d)
        .map(|n| {
            let c = &(&binomial(d, n) * &pow_i(&betas.diff(j, k), (d - n) as i64))
                * &(&pow_i(&betas.diff(j, l), n as i64) * &scale);
            HomPoly::from_monomial(betas, k, l, d, n).scale(&c)
        })
        .collect()
}

/// Matrix whose columns are the given polynomials' monomial coordinates.
pub fn basis_matrix(polys: &[HomPoly]) -> ExactMatrix {
    let cols: Vec<Vec<Rational>> = polys.iter().map(|p| p.coeffs().to_vec()).collect();
    ExactMatrix::from_columns(&cols)
}

/// The standard-form pairing on the degree-d slice, normalized so that
/// ⟨z_i^d, z_j^d⟩ = (β_k-β_l)^d with (i,j,k,l) carried to (2,0,1,3) by an
/// even permutation. Polynomials pair through their coordinates in the
/// z_i/z_j monomial basis, so the same evaluator serves all six index pairs.
pub struct PolyGram {
    d: usize,
    scale: Rational,
    to_ij_coords: ExactMatrix,
}

impl PolyGram {
    pub fn new(
        d: usize,
        betas: &BetaQuad,
        i: VertexIndex,
        j: VertexIndex,
    ) -> Result<Self, PolyRealError> {
        if i == j {
            return Err(PolyRealError::Symmetry(SymmetryError::IndicesNotDistinct));
        }
        let (k, l) = complement_even(i, j);
        let scale = pow_i(&betas.diff(k, l), d as i64);
        let columns: Vec<HomPoly> = (0..=d)
            .map(|n| HomPoly::from_monomial(betas, i, j, d, n))
            .collect();
        let to_ij_coords = basis_matrix(&columns)
            .inverse()
            .expect("monomials in z_i, z_j form a basis");
        Ok(PolyGram {
            d,
            scale,
            to_ij_coords,
        })
    }

    /// ⟨u, v⟩ by bilinear extension of the antidiagonal monomial pairing
    /// ⟨z_i^{d-r} z_j^r, z_i^{d-s} z_j^s⟩ = δ_{r+s,d} (-1)^r C(d,r)⁻¹ (β_k-β_l)^d.
    pub fn pair(&self, u: &HomPoly, v: &HomPoly) -> Rational {
        assert_eq!(u.degree(), self.d, "degree mismatch");
        assert_eq!(v.degree(), self.d, "degree mismatch");
        let uc = self.to_ij_coords.mul_vec(u.coeffs());
        let vc = self.to_ij_coords.mul_vec(v.coeffs());
        let mut acc = Rational::zero();
        for (r, ur) in uc.iter().enumerate() {
            let s = self.d - r;
            if ur.is_zero() || vc[s].is_zero() {
                continue;
            }
            let sign = if r % 2 == 0 { rat(1) } else { rat(-1) };
            acc += &(&(ur * &vc[s]) * &(&sign / &binomial(self.d, r))) * &self.scale;
        }
        acc
    }

    /// The Gram matrix on the monomial basis z_0^{d-n} z_1^n.
    pub fn gram_on_monomials(&self) -> ExactMatrix {
        let d = self.d;
        ExactMatrix::build(d + 1, d + 1, |r, c| {
            let u = unit_monomial(d, r);
            let v = unit_monomial(d, c);
            self.pair(&u, &v)
        })
    }
}

fn unit_monomial(d: usize, n: usize) -> HomPoly {
    let mut coeffs = vec![Rational::zero(); d + 1];
    coeffs[n] = Rational::one();
    HomPoly::new(coeffs)
}

/// The complement {k,l} of {i,j} in 𝕀, ordered so that (i,j,k,l) maps to
/// (2,0,1,3) under an even permutation.
fn complement_even(i: VertexIndex, j: VertexIndex) -> (VertexIndex, VertexIndex) {
    let rest: Vec<VertexIndex> = VertexIndex::ALL
        .into_iter()
        .filter(|&v| v != i && v != j)
        .collect();
    let (k, l) = (rest[0], rest[1]);
    let quad = BasisQuad::new(i, j, k, l).expect("complement is distinct");
    if quad.to_2013().is_even() {
        (k, l)
    } else {
        (l, k)
    }
}

/// The matrix on the degree-d slice of the algebra automorphism attached to
/// a nonidentity σ = (i,j)(k,l) in the Klein group: at degree one it sends
/// z_i ↦ (β_j-β_k)/(β_i-β_k)·z_j and z_j ↦ (β_i-β_l)/(β_j-β_l)·z_i, and it
/// extends multiplicatively. The labeling picks the smallest moved i and the
/// smallest remaining k.
pub fn automorphism_for_sigma(
    betas: &BetaQuad,
    sigma: Perm4,
    d: usize,
) -> Result<ExactMatrix, PolyRealError> {
    let (i, j, k, l) = klein_labeling(sigma)?;
    automorphism_for_labeling(betas, i, j, k, l, d)
}

/// Canonical (i,j)(k,l) labeling of a nonidentity Klein element.
pub fn klein_labeling(
    sigma: Perm4,
) -> Result<(VertexIndex, VertexIndex, VertexIndex, VertexIndex), PolyRealError> {
    if sigma.is_identity() {
        return Err(PolyRealError::Symmetry(SymmetryError::IsIdentity));
    }
    if !sigma.is_in_g() {
        return Err(PolyRealError::Symmetry(SymmetryError::NotInG));
    }
    let i = VertexIndex::new(0).unwrap();
    let j = sigma.apply(i);
    let k = VertexIndex::ALL
        .into_iter()
        .find(|&v| v != i && v != j)
        .expect("two vertices remain");
    let l = sigma.apply(k);
    Ok((i, j, k, l))
}

/// The degree-d automorphism matrix for an explicit (i,j)(k,l) labeling.
pub fn automorphism_for_labeling(
    betas: &BetaQuad,
    i: VertexIndex,
    j: VertexIndex,
    k: VertexIndex,
    l: VertexIndex,
    d: usize,
) -> Result<ExactMatrix, PolyRealError> {
    BasisQuad::new(i, j, k, l)?;
    let c_ij = &betas.diff(j, k) / &betas.diff(i, k); // z_i ↦ c_ij · z_j
    let c_ji = &betas.diff(i, l) / &betas.diff(j, l); // z_j ↦ c_ji · z_i
    let fi = linear_form(betas, i);
    let fj = linear_form(betas, j);
    let f = ExactMatrix::from_rows(vec![
        vec![fi.p.clone(), fj.p.clone()],
        vec![fi.q.clone(), fj.q.clone()],
    ]);
    let on_ij = ExactMatrix::from_rows(vec![vec![rat(0), c_ji], vec![c_ij, rat(0)]]);
    let a = &(&f * &on_ij) * &f.inverse().expect("z_i, z_j form a basis");
    let phi_z0 = LinearForm::new(a[(0, 0)].clone(), a[(1, 0)].clone());
    let phi_z1 = LinearForm::new(a[(0, 1)].clone(), a[(1, 1)].clone());
    let columns: Vec<HomPoly> = (0..=d)
        .map(|n| {
            HomPoly::from_linear_power(&phi_z0, d - n).mul(&HomPoly::from_linear_power(&phi_z1, n))
        })
        .collect();
    Ok(basis_matrix(&columns))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{extract_eval_param, ExtractResult};
    use crate::rational::{rat, ratio};
    use crate::symmetry::EvalParam;

    fn v(i: usize) -> VertexIndex {
        VertexIndex::new(i).unwrap()
    }

    fn betas(vals: [i64; 4]) -> BetaQuad {
        BetaQuad::new(vals.map(rat)).unwrap()
    }

    fn param(n: i64, d: i64) -> EvalParam {
        EvalParam::new(ratio(n, d)).unwrap()
    }

    #[test]
    fn betas_for_two_is_the_expected_quad() {
        let q = betas_for_param(&param(2, 1));
        assert_eq!(q.values(), &[ratio(4, 3), rat(0), rat(1), rat(2)]);
        assert_eq!(q.cross_ratio(), rat(2));
    }

    #[test]
    fn betas_round_trip_for_sample_parameters() {
        for (n, d) in [(3, 1), (-1, 1), (1, 2), (7, 5)] {
            let a = param(n, d);
            let q = betas_for_param(&a);
            assert_eq!(&q.cross_ratio(), a.value(), "a = {n}/{d}");
        }
    }

    #[test]
    fn duplicate_betas_rejected() {
        assert!(matches!(
            BetaQuad::new([rat(1), rat(2), rat(1), rat(3)]),
            Err(PolyRealError::BetasNotDistinct)
        ));
    }

    #[test]
    fn linear_forms_satisfy_the_two_constraints() {
        let q = betas([5, -1, 2, 7]);
        let mut sum = LinearForm::new(rat(0), rat(0));
        let mut weighted = LinearForm::new(rat(0), rat(0));
        for r in VertexIndex::ALL {
            let f = linear_form(&q, r);
            sum.p += &f.p;
            sum.q += &f.q;
            weighted.p += &(q.get(r) * &f.p);
            weighted.q += &(q.get(r) * &f.q);
        }
        assert_eq!(sum, LinearForm::new(rat(0), rat(0)));
        assert_eq!(weighted, LinearForm::new(rat(0), rat(0)));
    }

    #[test]
    fn x01_acts_diagonally_on_monomials() {
        let q = betas([5, -1, 2, 7]);
        let m = build_poly_module(3, &q);
        let x01 = m.action_ij(0, 1);
        for n in 0..=3usize {
            for r in 0..=3usize {
                let expect = if r == n {
                    rat(2 * n as i64 - 3)
                } else {
                    rat(0)
                };
                assert_eq!(x01[(r, n)], expect);
            }
        }
    }

    #[test]
    fn poly_modules_satisfy_relations() {
        for d in 1..=3 {
            for q in [
                betas([5, -1, 2, 7]),
                betas([0, 1, 2, 3]),
                betas([-3, 0, 1, 3]),
            ] {
                assert!(build_poly_module(d, &q).verify_relations().is_empty());
            }
        }
    }

    #[test]
    fn evaluation_parameter_is_the_cross_ratio() {
        let q = BetaQuad::new([ratio(4, 3), rat(0), rat(1), rat(2)]).unwrap();
        let m = build_poly_module(2, &q);
        assert_eq!(
            extract_eval_param(&m).unwrap(),
            ExtractResult::Param(param(2, 1))
        );
    }

    #[test]
    fn beta_weighted_dependency_vanishes() {
        let q = betas([5, -1, 2, 7]);
        let m = build_poly_module(3, &q);
        for i in VertexIndex::ALL {
            let rest: Vec<VertexIndex> = VertexIndex::ALL.into_iter().filter(|&w| w != i).collect();
            let (j, k, l) = (rest[0], rest[1], rest[2]);
            let c1 = &q.diff(i, j) * &q.diff(k, l);
            let c2 = &q.diff(i, k) * &q.diff(l, j);
            let c3 = &q.diff(i, l) * &q.diff(j, k);
            let combo = &(&m.action_ij(i.index(), j.index()).scale(&c1)
                + &m.action_ij(i.index(), k.index()).scale(&c2))
                + &m.action_ij(i.index(), l.index()).scale(&c3);
            assert!(combo.is_zero(), "dependency at i={i}");
        }
    }

    #[test]
    fn bracket_vectors_sum_to_eta() {
        let q = betas([5, -1, 2, 7]);
        let d = 3;
        for b in BasisQuad::all() {
            let vecs = bracket_basis_vectors(d, &q, b);
            let mut sum = HomPoly::zero(d);
            for u in &vecs {
                sum = sum.add(u);
            }
            // the binomial expansion of z_i^d collapses to the eta vector
            let eta = HomPoly::from_linear_power(&linear_form(&q, b.i()), d);
            assert_eq!(sum, eta, "basis {b}");
        }
    }

    #[test]
    fn monomial_pair_bases_give_monomial_bracket_vectors() {
        // when (k,l) = (0,1) the basis vectors are scalar multiples of the
        // plain monomials
        let q = betas([5, -1, 2, 7]);
        let b = BasisQuad::from_indices(2, 3, 0, 1).unwrap();
        let vecs = bracket_basis_vectors(2, &q, b);
        for (n, u) in vecs.iter().enumerate() {
            for (m, c) in u.coeffs().iter().enumerate() {
                assert_eq!(c.is_zero(), m != n, "vector {n}");
            }
        }
    }

    #[test]
    fn flag_components_are_shifted_monomial_slices() {
        // flag [i] component n of the degree-d slice is z_i^{d-n} times the
        // degree-n slice: spanned by z_i^{d-r} z_j^r for r <= n, any j != i
        let q = betas([5, -1, 2, 7]);
        let d = 3usize;
        let m = build_poly_module(d, &q);
        for i in VertexIndex::ALL {
            let flag = m.flag(i).unwrap();
            let j = VertexIndex::ALL.into_iter().find(|&w| w != i).unwrap();
            for n in 0..=d {
                let expected: Vec<HomPoly> = (0..=n)
                    .map(|r| HomPoly::from_monomial(&q, i, j, d, r))
                    .collect();
                let expected = basis_matrix(&expected).column_echelon();
                assert_eq!(flag.component(n), &expected, "flag [{i}] component {n}");
            }
        }
    }

    #[test]
    fn gram_pairs_eta_vectors_per_table() {
        let q = betas([5, -1, 2, 7]);
        let d = 2usize;
        let pair_of = |i: usize, j: usize| -> Rational {
            let g = PolyGram::new(d, &q, v(i), v(j)).unwrap();
            let zi = HomPoly::from_linear_power(&linear_form(&q, v(i)), d);
            let zj = HomPoly::from_linear_power(&linear_form(&q, v(j)), d);
            g.pair(&zi, &zj)
        };
        // ⟨z_2^d, z_0^d⟩ = (β_1-β_3)^d
        assert_eq!(pair_of(2, 0), pow_i(&q.diff(v(1), v(3)), d as i64));
        // ⟨z_0^d, z_0^d⟩ = 0
        let g = PolyGram::new(d, &q, v(0), v(1)).unwrap();
        let z0 = HomPoly::from_linear_power(&linear_form(&q, v(0)), d);
        assert_eq!(g.pair(&z0, &z0), rat(0));
        // full table of Gram values between the eta vectors
        let expect =
            |_i: usize, _j: usize, k: usize, l: usize| pow_i(&q.diff(v(k), v(l)), d as i64);
        assert_eq!(pair_of(0, 1), expect(0, 1, 2, 3));
        assert_eq!(pair_of(0, 2), expect(0, 2, 3, 1));
        assert_eq!(pair_of(0, 3), expect(0, 3, 1, 2));
        assert_eq!(pair_of(1, 2), expect(1, 2, 0, 3));
        assert_eq!(pair_of(1, 3), expect(1, 3, 2, 0));
        assert_eq!(pair_of(2, 3), expect(2, 3, 0, 1));
    }

    #[test]
    fn gram_is_independent_of_the_monomial_basis_used() {
        let q = betas([5, -1, 2, 7]);
        let d = 3usize;
        let u = HomPoly::new(vec![rat(1), rat(-2), rat(0), rat(5)]);
        let w = HomPoly::new(vec![rat(3), rat(1), rat(1), rat(-1)]);
        let reference = PolyGram::new(d, &q, v(0), v(1)).unwrap().pair(&u, &w);
        for (i, j) in [(0, 2), (1, 3), (2, 3), (3, 0), (2, 1)] {
            let g = PolyGram::new(d, &q, v(i), v(j)).unwrap();
            assert_eq!(g.pair(&u, &w), reference, "basis ({i},{j})");
        }
    }

    #[test]
    fn gram_intertwines_the_derivation_action() {
        let q = betas([5, -1, 2, 7]);
        let d = 2usize;
        let m = build_poly_module(d, &q);
        let gram = PolyGram::new(d, &q, v(0), v(1))
            .unwrap()
            .gram_on_monomials();
        for p in GenPair::all() {
            let lhs = &m.action(p).transpose() * &gram;
            let rhs = -&(&gram * m.action(p));
            assert_eq!(lhs, rhs, "{p}");
        }
    }

    #[test]
    fn automorphism_sends_z0_along_the_stated_line() {
        let q = betas([5, -1, 2, 7]);
        let sigma = Perm4::parse_cycles("(0 1)(2 3)").unwrap();
        let phi = automorphism_for_sigma(&q, sigma, 1).unwrap();
        // z_0 ↦ (β_1-β_2)/(β_0-β_2) z_1
        let c = &q.diff(v(1), v(2)) / &q.diff(v(0), v(2));
        assert_eq!(phi[(0, 0)], rat(0));
        assert_eq!(phi[(1, 0)], c);
    }

    #[test]
    fn automorphism_permutes_the_z_lines() {
        let q = betas([5, -1, 2, 7]);
        let d = 3usize;
        for sigma in Perm4::klein_nonidentity() {
            let phi = automorphism_for_sigma(&q, sigma, d).unwrap();
            for r in VertexIndex::ALL {
                let zr = HomPoly::from_linear_power(&linear_form(&q, r), d);
                let image = HomPoly::new(phi.mul_vec(zr.coeffs()));
                let target = HomPoly::from_linear_power(&linear_form(&q, sigma.apply(r)), d);
                // image must be a scalar multiple of z_{σ(r)}^d
                let pivot = target
                    .coeffs()
                    .iter()
                    .position(|c| !c.is_zero())
                    .expect("nonzero");
                let scale = &image.coeffs()[pivot] / &target.coeffs()[pivot];
                assert_eq!(image, target.scale(&scale), "sigma={sigma}, r={r}");
            }
        }
    }

    #[test]
    fn automorphism_conjugation_equals_twist() {
        let q = betas([5, -1, 2, 7]);
        let d = 2usize;
        let m = build_poly_module(d, &q);
        for sigma in Perm4::klein_nonidentity() {
            let phi = automorphism_for_sigma(&q, sigma, d).unwrap();
            let phi_inv = phi.inverse().unwrap();
            let twisted = m.twist(sigma);
            for p in GenPair::all() {
                let conj = &(&phi * m.action(p)) * &phi_inv;
                assert_eq!(&conj, twisted.action(p), "sigma={sigma} {p}");
            }
        }
    }

    #[test]
    fn alternative_labelings_conjugate_identically() {
        // one Klein element admits several (i,j)(k,l) labelings; they may
        // rescale the automorphism but must conjugate the same way
        let q = betas([5, -1, 2, 7]);
        let d = 2usize;
        let m = build_poly_module(d, &q);
        let sigma = Perm4::parse_cycles("(0 1)(2 3)").unwrap();
        let labelings = [
            (0usize, 1usize, 2usize, 3usize),
            (0, 1, 3, 2),
            (1, 0, 2, 3),
            (2, 3, 0, 1),
        ];
        for (i, j, k, l) in labelings {
            let phi = automorphism_for_labeling(&q, v(i), v(j), v(k), v(l), d).unwrap();
            let phi_inv = phi.inverse().unwrap();
            let twisted = m.twist(sigma);
            for p in GenPair::all() {
                let conj = &(&phi * m.action(p)) * &phi_inv;
                assert_eq!(&conj, twisted.action(p), "labeling ({i},{j},{k},{l}) {p}");
            }
        }
    }

    #[test]
    fn non_klein_input_is_rejected() {
        let q = betas([5, -1, 2, 7]);
        assert!(matches!(
            automorphism_for_sigma(&q, Perm4::transposition(0, 1), 2),
            Err(PolyRealError::Symmetry(SymmetryError::NotInG))
        ));
        assert!(matches!(
            automorphism_for_sigma(&q, Perm4::IDENTITY, 2),
            Err(PolyRealError::Symmetry(SymmetryError::IsIdentity))
        ));
    }

    #[test]
    fn relative_cross_ratio_matches_parameter_action() {
        let q = betas([5, -1, 2, 7]);
        let a = EvalParam::new(q.cross_ratio()).unwrap();
        for b in BasisQuad::all() {
            let via_action = crate::symmetry::relative(&a, b.i(), b.j(), b.k(), b.l()).unwrap();
            assert_eq!(q.relative_cross_ratio(b), via_action, "at {b}");
        }
    }
}
