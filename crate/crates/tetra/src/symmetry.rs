//! The vertex set 𝕀 = {0,1,2,3}, ordered generator pairs, the symmetric
//! group S₄ with its action on evaluation parameters, the Klein subgroup G,
//! and the relative (cross-ratio) machinery.

use crate::rational::{format_rational, Rational};
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SymmetryError {
    #[error("vertex index must lie in {{0,1,2,3}}, got {0}")]
    BadVertex(usize),
    #[error("generator pair indices must be distinct")]
    EqualIndices,
    #[error("indices must be mutually distinct")]
    IndicesNotDistinct,
    #[error("evaluation parameter must avoid 0 and 1, got {0}")]
    InvalidParam(String),
    #[error("not a permutation in cycle notation: {0:?}")]
    BadCycleNotation(String),
    #[error("permutation is not in the Klein subgroup G")]
    NotInG,
    #[error("the identity permutation is excluded here")]
    IsIdentity,
}

/// One of the four vertices 0..3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexIndex(u8);

impl VertexIndex {
    pub const ALL: [VertexIndex; 4] = [
        VertexIndex(0),
        VertexIndex(1),
        VertexIndex(2),
        VertexIndex(3),
    ];

    pub fn new(v: usize) -> Result<Self, SymmetryError> {
        if v < 4 {
            Ok(VertexIndex(v as u8))
        } else {
            Err(SymmetryError::BadVertex(v))
        }
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Ordered pair (i,j), i ≠ j: the label of one generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenPair {
    i: VertexIndex,
    j: VertexIndex,
}

impl GenPair {
    pub fn new(i: VertexIndex, j: VertexIndex) -> Result<Self, SymmetryError> {
        if i == j {
            Err(SymmetryError::EqualIndices)
        } else {
            Ok(GenPair { i, j })
        }
    }

    pub fn from_indices(i: usize, j: usize) -> Result<Self, SymmetryError> {
        GenPair::new(VertexIndex::new(i)?, VertexIndex::new(j)?)
    }

    pub fn i(self) -> VertexIndex {
        self.i
    }

    pub fn j(self) -> VertexIndex {
        self.j
    }

    pub fn reversed(self) -> GenPair {
        GenPair {
            i: self.j,
            j: self.i,
        }
    }

    /// All 12 ordered pairs, in the fixed storage order
    /// (0,1),(0,2),(0,3),(1,0),(1,2),(1,3),(2,0),(2,1),(2,3),(3,0),(3,1),(3,2).
    pub fn all() -> [GenPair; 12] {
        let mut pairs = Vec::with_capacity(12);
        for i in VertexIndex::ALL {
            for j in VertexIndex::ALL {
                if i != j {
                    pairs.push(GenPair { i, j });
                }
            }
        }
        pairs.try_into().expect("12 ordered pairs")
    }

    /// Position of this pair in [`GenPair::all`].
    pub fn storage_index(self) -> usize {
        let (i, j) = (self.i.index(), self.j.index());
        i * 3 + j - usize::from(j > i)
    }

    /// The key used in the JSON schema, e.g. `"x01"`.
    pub fn json_key(self) -> String {
        format!("x{}{}", self.i, self.j)
    }
}

impl fmt::Display for GenPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.i, self.j)
    }
}

/// An element of S₄ as the image sequence of (0,1,2,3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm4 {
    images: [u8; 4],
}

impl Perm4 {
    pub const IDENTITY: Perm4 = Perm4 {
        images: [0, 1, 2, 3],
    };

    pub fn from_images(images: [usize; 4]) -> Result<Self, SymmetryError> {
        let mut seen = [false; 4];
        for &v in &images {
            if v >= 4 || seen[v] {
                return Err(SymmetryError::IndicesNotDistinct);
            }
            seen[v] = true;
        }
        Ok(Perm4 {
            images: images.map(|v| v as u8),
        })
    }

    /// The transposition (a b).
    pub fn transposition(a: usize, b: usize) -> Self {
        let mut images = [0usize, 1, 2, 3];
        images.swap(a, b);
        Perm4::from_images(images).expect("valid transposition")
    }

    pub fn apply(self, v: VertexIndex) -> VertexIndex {
        VertexIndex(self.images[v.index()])
    }

    pub fn apply_index(self, v: usize) -> usize {
        self.images[v] as usize
    }

    pub fn apply_pair(self, p: GenPair) -> GenPair {
        GenPair {
            i: self.apply(p.i),
            j: self.apply(p.j),
        }
    }

    /// Composition: (self ∘ rhs)(v) = self(rhs(v)).
    pub fn compose(self, rhs: Perm4) -> Perm4 {
        Perm4 {
            images: [0, 1, 2, 3].map(|v| self.images[rhs.images[v] as usize]),
        }
    }

    pub fn inverse(self) -> Perm4 {
        let mut images = [0u8; 4];
        for v in 0..4 {
            images[self.images[v] as usize] = v as u8;
        }
        Perm4 { images }
    }

    pub fn is_identity(self) -> bool {
        self == Perm4::IDENTITY
    }

    /// Parity via inversion count.
    pub fn is_even(self) -> bool {
        let mut inversions = 0;
        for a in 0..4 {
            for b in a + 1..4 {
                if self.images[a] > self.images[b] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    pub fn sign(self) -> i32 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }

    /// All 24 elements, identity first, in lexicographic image order.
    pub fn all() -> Vec<Perm4> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4usize {
            for b in 0..4usize {
                for c in 0..4usize {
                    for d in 0..4usize {
                        if let Ok(p) = Perm4::from_images([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    /// Membership in G = {id, (01)(23), (02)(13), (03)(12)}, the kernel of
    /// the parameter action.
    pub fn is_in_g(self) -> bool {
        self.is_identity()
            || (0..4).all(|v| {
                let w = self.images[v] as usize;
                w != v && self.images[w] as usize == v
            })
    }

    /// The three nonidentity elements of G.
    pub fn klein_nonidentity() -> [Perm4; 3] {
        [
            Perm4::from_images([1, 0, 3, 2]).unwrap(),
            Perm4::from_images([2, 3, 0, 1]).unwrap(),
            Perm4::from_images([3, 2, 1, 0]).unwrap(),
        ]
    }

    /// Disjoint cycle decomposition, each cycle led by its smallest element,
    /// cycles ordered by leading element, fixed points omitted.
    fn cycles(self) -> Vec<Vec<usize>> {
        let mut seen = [false; 4];
        let mut cycles = Vec::new();
        for start in 0..4 {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut v = self.images[start] as usize;
            while v != start {
                seen[v] = true;
                cycle.push(v);
                v = self.images[v] as usize;
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// Parses cycle notation such as `"(0 1)(2 3)"`, `"(0,2,1)"` or `"id"`.
    pub fn parse_cycles(s: &str) -> Result<Perm4, SymmetryError> {
        let s = s.trim();
        if s.is_empty() || s == "id" || s == "()" || s == "e" {
            return Ok(Perm4::IDENTITY);
        }
        let bad = || SymmetryError::BadCycleNotation(s.to_string());
        let mut perm = Perm4::IDENTITY;
        let mut rest = s;
        while !rest.is_empty() {
            let rest_trim = rest.trim_start();
            let Some(inner_start) = rest_trim.strip_prefix('(') else {
                return Err(bad());
            };
            let Some(close) = inner_start.find(')') else {
                return Err(bad());
            };
            let body = &inner_start[..close];
            rest = &inner_start[close + 1..];
            let verts: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            if verts.is_empty() {
                continue;
            }
            let mut dedup = verts.clone();
            dedup.sort_unstable();
            dedup.dedup();
            if dedup.len() != verts.len() || verts.iter().any(|&v| v >= 4) {
                return Err(bad());
            }
            // the cycle (a b c ...) sends a->b, b->c, ..., last->a
            let mut images = [0usize, 1, 2, 3];
            for w in 0..verts.len() {
                images[verts[w]] = verts[(w + 1) % verts.len()];
            }
            let cycle = Perm4::from_images(images).map_err(|_| bad())?;
            perm = cycle.compose(perm);
        }
        Ok(perm)
    }
}

impl fmt::Display for Perm4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "id");
        }
        for cycle in cycles {
            let parts: Vec<String> = cycle.iter().map(|v| v.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// An evaluation parameter: a rational other than 0 and 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EvalParam(Rational);

impl EvalParam {
    pub fn new(a: Rational) -> Result<Self, SymmetryError> {
        if a.is_zero() || a.is_one() {
            Err(SymmetryError::InvalidParam(format_rational(&a)))
        } else {
            Ok(EvalParam(a))
        }
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_value(self) -> Rational {
        self.0
    }
}

impl fmt::Display for EvalParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

/// The generating transpositions of the parameter action and the fractional
/// linear map each one induces: (2,0) and (1,3) send a ↦ a⁻¹, (0,1) sends
/// a ↦ a(a-1)⁻¹.
const PARAM_GENERATORS: [(usize, usize); 3] = [(2, 0), (0, 1), (1, 3)];

fn generator_map(g: usize, a: &Rational) -> Rational {
    match g {
        0 | 2 => a.recip(),
        1 => a / (a - Rational::one()),
        _ => unreachable!("three generators"),
    }
}

/// Writes `sigma` as a shortest word in the generators (2,0), (0,1), (1,3);
/// the word multiplies left to right, so `sigma = g[0] ∘ g[1] ∘ ...`.
fn generator_word(sigma: Perm4) -> Vec<usize> {
    let mut frontier = vec![Perm4::IDENTITY];
    let mut seen = vec![(Perm4::IDENTITY, Vec::new())];
    loop {
        let mut next = Vec::new();
        for p in frontier {
            let word = seen
                .iter()
                .find(|(q, _)| *q == p)
                .map(|(_, w)| w.clone())
                .expect("frontier node recorded");
            for (g, &(a, b)) in PARAM_GENERATORS.iter().enumerate() {
                // extend the word on the right
                let q = p.compose(Perm4::transposition(a, b));
                if seen.iter().all(|(r, _)| *r != q) {
                    let mut w = word.clone();
                    w.push(g);
                    if q == sigma {
                        return w;
                    }
                    seen.push((q, w));
                    next.push(q);
                }
            }
        }
        if sigma.is_identity() {
            return Vec::new();
        }
        assert!(!next.is_empty(), "generators span S4");
        frontier = next;
    }
}

/// The image of `a` under the S₄ parameter action, computed by decomposing
/// `sigma` into the generating transpositions and composing their fractional
/// linear maps. Intermediate values never hit {0,1} for valid input.
pub fn perm_on_param(sigma: Perm4, a: &EvalParam) -> EvalParam {
    let word = generator_word(sigma);
    let mut value = a.value().clone();
    for &g in word.iter().rev() {
        assert!(
            !value.is_zero() && !value.is_one(),
            "parameter action left the domain"
        );
        value = generator_map(g, &value);
    }
    EvalParam::new(value).expect("parameter action preserves the domain")
}

/// The (i,j,k,l)-relative of `a`: σ(a) for the σ sending i↦2, j↦0, k↦1, l↦3.
pub fn relative(
    a: &EvalParam,
    i: VertexIndex,
    j: VertexIndex,
    k: VertexIndex,
    l: VertexIndex,
) -> Result<Rational, SymmetryError> {
    let quad = BasisQuad::new(i, j, k, l)?;
    Ok(perm_on_param(quad.to_2013(), a).into_value())
}

/// An ordered quadruple of mutually distinct vertices; the label of one of
/// the 24 distinguished bases of an evaluation module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisQuad {
    verts: [VertexIndex; 4],
}

impl BasisQuad {
    pub fn new(
        i: VertexIndex,
        j: VertexIndex,
        k: VertexIndex,
        l: VertexIndex,
    ) -> Result<Self, SymmetryError> {
        let verts = [i, j, k, l];
        let mut seen = [false; 4];
        for v in verts {
            if seen[v.index()] {
                return Err(SymmetryError::IndicesNotDistinct);
            }
            seen[v.index()] = true;
        }
        Ok(BasisQuad { verts })
    }

    pub fn from_indices(i: usize, j: usize, k: usize, l: usize) -> Result<Self, SymmetryError> {
        BasisQuad::new(
            VertexIndex::new(i)?,
            VertexIndex::new(j)?,
            VertexIndex::new(k)?,
            VertexIndex::new(l)?,
        )
    }

    pub fn i(self) -> VertexIndex {
        self.verts[0]
    }
    pub fn j(self) -> VertexIndex {
        self.verts[1]
    }
    pub fn k(self) -> VertexIndex {
        self.verts[2]
    }
    pub fn l(self) -> VertexIndex {
        self.verts[3]
    }

    pub fn verts(self) -> [VertexIndex; 4] {
        self.verts
    }

    /// The permutation sending this quadruple position-wise to (2,0,1,3).
    pub fn to_2013(self) -> Perm4 {
        let mut images = [0usize; 4];
        let targets = [2usize, 0, 1, 3];
        for (v, t) in self.verts.iter().zip(targets) {
            images[v.index()] = t;
        }
        Perm4::from_images(images).expect("distinct vertices")
    }

    /// All 24 quadruples in lexicographic order.
    pub fn all() -> Vec<BasisQuad> {
        let mut out = Vec::with_capacity(24);
        for p in Perm4::all() {
            out.push(BasisQuad {
                verts: [0, 1, 2, 3].map(|v| p.apply(VertexIndex::new(v).unwrap())),
            });
        }
        out.sort();
        out
    }

    /// Swap of the first two entries: `[i,j,k,l]` -> `[j,i,k,l]`.
    pub fn swap_ij(self) -> BasisQuad {
        let [i, j, k, l] = self.verts;
        BasisQuad {
            verts: [j, i, k, l],
        }
    }

    /// Swap of the middle two entries: `[i,j,k,l]` -> `[i,k,j,l]`.
    pub fn swap_jk(self) -> BasisQuad {
        let [i, j, k, l] = self.verts;
        BasisQuad {
            verts: [i, k, j, l],
        }
    }

    /// Swap of the last two entries: `[i,j,k,l]` -> `[i,j,l,k]`.
    pub fn swap_kl(self) -> BasisQuad {
        let [i, j, k, l] = self.verts;
        BasisQuad {
            verts: [i, j, l, k],
        }
    }
}

impl fmt::Display for BasisQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [i, j, k, l] = self.verts;
        write!(f, "[{},{},{},{}]", i, j, k, l)
    }
}

/// The full S₄-orbit of `a`: the six fractional linear images, deduplicated
/// (degenerate parameters collapse to orbits of size 2 or 3).
pub fn orbit_of_param(a: &EvalParam) -> BTreeSet<Rational> {
    let a = a.value();
    let one = Rational::one();
    BTreeSet::from([
        a.clone(),
        a.recip(),
        &one - a,
        (&one - a).recip(),
        a / &(a - &one),
        &one - &a.recip(),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn param(n: i64, d: i64) -> EvalParam {
        EvalParam::new(ratio(n, d)).unwrap()
    }

    #[test]
    fn param_domain_excludes_zero_and_one() {
        assert!(EvalParam::new(rat(0)).is_err());
        assert!(EvalParam::new(rat(1)).is_err());
        assert!(EvalParam::new(rat(-1)).is_ok());
        assert!(EvalParam::new(ratio(5, 7)).is_ok());
    }

    #[test]
    fn cycle_notation_round_trip() {
        for (text, canonical) in [
            ("(0 1)(2 3)", "(0 1)(2 3)"),
            ("(2,3)(0,1)", "(0 1)(2 3)"),
            ("id", "id"),
            ("(1 2 3)", "(1 2 3)"),
            ("(3 1 2)", "(1 2 3)"),
            ("(0 2)", "(0 2)"),
        ] {
            let p = Perm4::parse_cycles(text).unwrap();
            assert_eq!(p.to_string(), canonical);
            assert_eq!(Perm4::parse_cycles(&p.to_string()).unwrap(), p);
        }
        assert!(Perm4::parse_cycles("(0 4)").is_err());
        assert!(Perm4::parse_cycles("(0 0)").is_err());
        assert!(Perm4::parse_cycles("0 1").is_err());
    }

    #[test]
    fn cycle_application_order() {
        // (1 2 3): 1->2->3->1
        let p = Perm4::parse_cycles("(1 2 3)").unwrap();
        assert_eq!(p.apply_index(1), 2);
        assert_eq!(p.apply_index(2), 3);
        assert_eq!(p.apply_index(3), 1);
        assert_eq!(p.apply_index(0), 0);
    }

    #[test]
    fn parity_by_inversions() {
        assert!(Perm4::IDENTITY.is_even());
        assert!(!Perm4::transposition(0, 1).is_even());
        assert!(Perm4::parse_cycles("(0 1)(2 3)").unwrap().is_even());
        assert!(Perm4::parse_cycles("(0 1 2)").unwrap().is_even());
    }

    #[test]
    fn transposition_zero_one_sends_three_to_three_halves() {
        let sigma = Perm4::transposition(0, 1);
        assert_eq!(perm_on_param(sigma, &param(3, 1)).value(), &ratio(3, 2));
    }

    #[test]
    fn identity_fixes_parameters() {
        assert_eq!(
            perm_on_param(Perm4::IDENTITY, &param(5, 7)).value(),
            &ratio(5, 7)
        );
    }

    #[test]
    fn klein_elements_fix_parameters() {
        let sigma = Perm4::parse_cycles("(0 1)(2 3)").unwrap();
        assert_eq!(perm_on_param(sigma, &param(-2, 1)).value(), &rat(-2));
        for sigma in Perm4::klein_nonidentity() {
            for a in [param(3, 1), param(7, 3), param(-1, 2)] {
                assert_eq!(perm_on_param(sigma, &a), a);
            }
        }
    }

    #[test]
    fn parameter_action_is_a_group_action() {
        let samples = [
            param(2, 1),
            param(3, 1),
            param(5, 1),
            param(-1, 1),
            param(1, 2),
            param(7, 3),
        ];
        for sigma in Perm4::all() {
            for tau in Perm4::all() {
                let st = sigma.compose(tau);
                for a in &samples {
                    assert_eq!(
                        perm_on_param(st, a),
                        perm_on_param(sigma, &perm_on_param(tau, a)),
                        "failed at sigma={sigma} tau={tau}"
                    );
                }
            }
        }
    }

    #[test]
    fn kernel_of_parameter_action_is_g() {
        let samples = [param(3, 1), param(5, 1), param(7, 3)];
        for sigma in Perm4::all() {
            let fixes_all = samples.iter().all(|a| perm_on_param(sigma, a) == *a);
            assert_eq!(fixes_all, sigma.is_in_g(), "sigma={sigma}");
        }
        assert!(Perm4::parse_cycles("(0 1)(2 3)").unwrap().is_in_g());
        assert!(Perm4::IDENTITY.is_in_g());
        assert!(!Perm4::transposition(0, 1).is_in_g());
    }

    fn rel(a: &EvalParam, q: [usize; 4]) -> Rational {
        relative(
            a,
            VertexIndex::new(q[0]).unwrap(),
            VertexIndex::new(q[1]).unwrap(),
            VertexIndex::new(q[2]).unwrap(),
            VertexIndex::new(q[3]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn relative_table_spot_checks() {
        let a = param(3, 1);
        // (0,1,2,3) -> (1-a)^{-1}
        assert_eq!(rel(&a, [0, 1, 2, 3]), ratio(-1, 2));
        // (2,0,1,3) -> a
        assert_eq!(rel(&a, [2, 0, 1, 3]), rat(3));
        // (1,2,0,3) -> 1 - a^{-1}
        assert_eq!(rel(&a, [1, 2, 0, 3]), ratio(2, 3));
    }

    #[test]
    fn relative_swap_recursions() {
        let a = param(7, 3);
        let one = Rational::one();
        for q in BasisQuad::all() {
            let [i, j, k, l] = q.verts().map(VertexIndex::index);
            let alpha = rel(&a, [i, j, k, l]);
            assert_eq!(rel(&a, [j, i, k, l]), alpha.recip());
            assert_eq!(rel(&a, [i, j, l, k]), alpha.recip());
            assert_eq!(rel(&a, [i, k, j, l]), &alpha / &(&alpha - &one));
        }
    }

    #[test]
    fn relative_rejects_repeated_indices() {
        let a = param(3, 1);
        let v = VertexIndex::new(0).unwrap();
        let w = VertexIndex::new(1).unwrap();
        let u = VertexIndex::new(2).unwrap();
        assert_eq!(
            relative(&a, v, v, w, u),
            Err(SymmetryError::IndicesNotDistinct)
        );
    }

    #[test]
    fn orbit_of_three() {
        let orbit = orbit_of_param(&param(3, 1));
        let expected: BTreeSet<Rational> = [
            rat(3),
            ratio(1, 3),
            rat(-2),
            ratio(-1, 2),
            ratio(3, 2),
            ratio(2, 3),
        ]
        .into_iter()
        .collect();
        assert_eq!(orbit, expected);
    }

    #[test]
    fn degenerate_orbits_collapse() {
        let orbit = orbit_of_param(&param(-1, 1));
        let expected: BTreeSet<Rational> = [rat(-1), rat(2), ratio(1, 2)].into_iter().collect();
        assert_eq!(orbit, expected);
        let orbit = orbit_of_param(&param(2, 1));
        let expected: BTreeSet<Rational> = [rat(2), ratio(1, 2), rat(-1)].into_iter().collect();
        assert_eq!(orbit, expected);
    }

    #[test]
    fn orbit_matches_parameter_action() {
        for a in [param(3, 1), param(-1, 1), param(7, 3)] {
            let via_action: BTreeSet<Rational> = Perm4::all()
                .into_iter()
                .map(|s| perm_on_param(s, &a).into_value())
                .collect();
            assert_eq!(via_action, orbit_of_param(&a));
        }
    }

    #[test]
    fn storage_index_is_a_bijection() {
        for (n, p) in GenPair::all().into_iter().enumerate() {
            assert_eq!(p.storage_index(), n);
        }
    }
}
