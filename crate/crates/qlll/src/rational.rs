//! Exact rational arithmetic helpers.
//!
//! Relative dimensions and certificate bounds are ratios of integers by
//! construction. Representing them as arbitrary-precision rationals keeps
//! every identity in the algebra exact; floats only appear as a convenience
//! approximation at the serialization boundary.

use num::{BigInt, BigRational, FromPrimitive, ToPrimitive};

/// Exact rational value used for relative dimensions and certificate bounds.
pub type Rational = BigRational;

/// `p / q` as an exact rational. Panics if `q == 0`.
pub fn ratio(p: u64, q: u64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Exact conversion of a finite double into a rational.
///
/// Doubles are dyadic rationals, so the conversion is lossless; this is how
/// measured floating quantities enter exact comparisons.
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    BigRational::from_f64(x)
}

/// Nearest-double approximation of a rational, for reports.
pub fn rational_approx(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Canonical `"p/q"` rendering (always includes the denominator).
pub fn rational_to_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the `"p/q"` rendering produced by [`rational_to_string`], also
/// accepting a bare integer.
pub fn rational_from_string(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.trim().parse().ok()?;
            Some(BigRational::from_integer(p))
        }
    }
}

/// `base^exp` for rational base and non-negative integer exponent.
pub fn rational_pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::from_integer(BigInt::from(1));
    for _ in 0..exp {
        acc *= base;
    }
    acc
}
