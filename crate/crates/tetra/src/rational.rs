//! Exact rational scalars and their `"p/q"` text form.
//!
//! Every computation in this crate runs over ℚ with arbitrary-precision
//! integers; nothing is ever rounded. Scalars serialize as `"p/q"` in lowest
//! terms, with the denominator omitted when it is 1 (`"3"`, `"-4/7"`).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// The base field element: an arbitrary-precision rational in lowest terms
/// with positive denominator (both invariants maintained by `num-rational`).
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from a numerator/denominator pair. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Formats in lowest terms, denominator omitted when 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| ParseRationalError(s.to_string()))?;
    let den: BigInt = den.parse().map_err(|_| ParseRationalError(s.to_string()))?;
    if den.is_zero() {
        return Err(ParseRationalError(s.to_string()));
    }
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a rational number: {0:?} (expected \"p\" or \"p/q\", q nonzero)")]
pub struct ParseRationalError(pub String);

/// Exact binomial coefficient as a rational (integer-valued).
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

/// Exact factorial.
pub fn factorial(n: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Rational::from_integer(acc)
}

/// r^e for integer e (negative exponents invert; panics on 0^negative).
pub fn pow_i(r: &Rational, e: i64) -> Rational {
    if e == 0 {
        return Rational::one();
    }
    let base = if e < 0 {
        assert!(!r.is_zero(), "zero to a negative power");
        r.recip()
    } else {
        r.clone()
    };
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Orders rationals by (numerator, denominator) lexicographically, the
/// tie-break used for canonically sorted classification output.
pub fn lex_key(r: &Rational) -> (BigInt, BigInt) {
    (r.numer().clone(), r.denom().clone())
}

/// True iff `r` is a (possibly negative) integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Sign as -1, 0, 1.
pub fn signum(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
