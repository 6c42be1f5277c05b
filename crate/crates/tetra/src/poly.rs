//! Univariate polynomials over ℚ.
//!
//! Coefficients are stored low-to-high with trailing zeros trimmed; the zero
//! polynomial has an empty coefficient list. This is the carrier for shape
//! polynomials and Drinfel'd polynomials, so the one nontrivial operation is
//! exact rational root extraction with multiplicities.

use crate::rational::{format_rational, Rational};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Sub};

/// Polynomial in one variable over ℚ, coefficient of λⁿ at index `n`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial c·λⁿ.
    pub fn monomial(c: Rational, n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = c;
        UniPoly::new(coeffs)
    }

    /// 1 - a·λ, the linear factor attached to an evaluation parameter.
    pub fn one_minus_root(a: &Rational) -> Self {
        UniPoly::new(vec![Rational::one(), -a.clone()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the highest nonzero term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn pow(&self, e: usize) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient by (λ - r); `None` if r is not a root.
    pub fn deflate(&self, r: &Rational) -> Option<UniPoly> {
        if self.is_zero() {
            return None;
        }
        let mut quotient = vec![Rational::zero(); self.coeffs.len() - 1];
        let mut carry = Rational::zero();
        for n in (0..self.coeffs.len()).rev() {
            let value = &self.coeffs[n] + &carry;
            if n == 0 {
                if !value.is_zero() {
                    return None;
                }
            } else {
                carry = &value * r;
                quotient[n - 1] = value;
            }
        }
        Some(UniPoly::new(quotient))
    }

    /// All rational roots with exact multiplicities, plus the degree of the
    /// remaining factor with no rational roots. Candidates come from the
    /// rational root theorem applied to the denominator-cleared polynomial;
    /// each confirmed root is removed by exact deflation.
    pub fn rational_roots(&self) -> Result<RationalRoots, ZeroPolynomial> {
        if self.is_zero() {
            return Err(ZeroPolynomial);
        }
        let mut roots = Vec::new();
        let mut p = self.clone();

        // Roots at zero: strip the power of λ dividing p.
        let mut zero_mult = 0usize;
        while p.coeffs[0].is_zero() {
            p = UniPoly::new(p.coeffs[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((Rational::zero(), zero_mult));
        }

        if p.degree() == Some(0) {
            return Ok(RationalRoots {
                roots,
                remainder_degree: 0,
            });
        }

        for candidate in rational_root_candidates(&p) {
            if !p.eval(&candidate).is_zero() {
                continue;
            }
            let mut mult = 0usize;
            while let Some(q) = p.deflate(&candidate) {
                p = q;
                mult += 1;
                if p.degree() == Some(0) {
                    break;
                }
            }
            roots.push((candidate, mult));
        }

        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(RationalRoots {
            roots,
            remainder_degree: p.degree().unwrap_or(0),
        })
    }
}

/// Result of exact rational root extraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalRoots {
    /// (root, multiplicity), sorted by root.
    pub roots: Vec<(Rational, usize)>,
    /// Degree of the factor left after deflating every rational root.
    pub remainder_degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("the zero polynomial has no well-defined roots")]
pub struct ZeroPolynomial;

/// Candidate roots ±p/q with p dividing the (cleared) constant term and q
/// dividing the leading coefficient. Assumes a nonzero constant term.
fn rational_root_candidates(p: &UniPoly) -> Vec<Rational> {
    let mut lcm = BigInt::one();
    for c in p.coeffs() {
        lcm = lcm.lcm(c.denom());
    }
    let cleared: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let constant = cleared.first().expect("nonzero polynomial").magnitude();
    let leading = cleared.last().expect("nonzero polynomial").magnitude();

    let mut candidates = Vec::new();
    for num in divisors(constant) {
        for den in divisors(leading) {
            let q = Rational::new(BigInt::from(num.clone()), BigInt::from(den.clone()));
            if !candidates.contains(&q) {
                candidates.push(-&q);
                candidates.push(q);
            }
        }
    }
    candidates
}

/// All positive divisors of n (n > 0), via full prime factorization.
fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut divs = vec![BigUint::one()];
    for (prime, exp) in factorize(n.clone()) {
        let base = divs.clone();
        let mut power = BigUint::one();
        for _ in 0..exp {
            power = &power * &prime;
            for d in &base {
                divs.push(d * &power);
            }
        }
    }
    divs
}

/// Prime factorization by trial division, with Miller-Rabin + Pollard rho
/// picking up any residue too large for the trial bound.
fn factorize(mut n: BigUint) -> Vec<(BigUint, u32)> {
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let push = |p: BigUint, factors: &mut Vec<(BigUint, u32)>| {
        if let Some(entry) = factors.iter_mut().find(|(q, _)| *q == p) {
            entry.1 += 1;
        } else {
            factors.push((p, 1));
        }
    };
    for small in 2u64..=4096 {
        let p = BigUint::from(small);
        if &p * &p > n {
            break;
        }
        while (&n % &p).is_zero() {
            n /= &p;
            push(p.clone(), &mut factors);
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime(&m) {
            push(m, &mut factors);
        } else {
            let d = pollard_rho(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
    }
    factors.sort();
    factors
}

fn is_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u8) {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let p = BigUint::from(small);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    // Deterministic Miller-Rabin for n < 3.3e24 with this witness set.
    let one = BigUint::one();
    let two = BigUint::from(2u8);
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigUint) -> BigUint {
    let two = BigUint::from(2u8);
    if (n % &two).is_zero() {
        return two;
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = two.clone();
        let mut y = two.clone();
        loop {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break; // cycle without factor, retry with a new constant
            }
            let g = diff.gcd(n);
            if !g.is_one() {
                return g;
            }
        }
        c += BigUint::one();
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[n] += c;
        }
        for (n, c) in rhs.coeffs.iter().enumerate() {
            coeffs[n] += c;
        }
        UniPoly::new(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[n] += c;
        }
        for (n, c) in rhs.coeffs.iter().enumerate() {
            coeffs[n] -= c;
        }
        UniPoly::new(coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let mag = c.abs();
            match n {
                0 => write!(f, "{}", format_rational(&mag))?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{}*", format_rational(&mag))?;
                    }
                    if n == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{}", n)?;
                    }
                }
            }
        }
        Ok(())
    }
}
