//! Exact scalar, polynomial and matrix arithmetic.
//!
//! Everything here works over the rationals or the Gaussian rationals
//! `Q(i)`. There is no floating point anywhere in the crate.

mod matrix;
mod poly;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use matrix::{GaussMatrix, Matrix, RatMatrix, Scalar};
pub use poly::{poly_from_roots, Polynomial};

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Element of `Q(i)`.
pub type GaussianRational = Complex<Rational>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("NotConjugateClosed: {0} has no matching conjugate")]
    NotConjugateClosed(String),
    #[error("NotSquare: matrix is {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("EmptyMatrix: matrices must have at least one row and column")]
    EmptyMatrix,
    #[error("RaggedMatrix: row {row} has {found} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("Singular: matrix is not invertible")]
    Singular,
    #[error("ParseRational: cannot parse {0:?}")]
    ParseRational(String),
}

/// `n / d` as a rational. Panics when `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

/// Gaussian integer `re + im·i`.
pub fn gi(re: i64, im: i64) -> GaussianRational {
    Complex::new(int(re), int(im))
}

pub fn real(r: Rational) -> GaussianRational {
    Complex::new(r, Rational::zero())
}

pub fn is_real(z: &GaussianRational) -> bool {
    z.im.is_zero()
}

/// Canonical total order on `Q(i)`: by real part, then imaginary part.
pub fn canonical_cmp(a: &GaussianRational, b: &GaussianRational) -> Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

/// Parses `"p/q"` or `"p"`, with an optional sign on the numerator.
pub fn parse_rational(s: &str) -> Result<Rational, ExactError> {
    let t = s.trim();
    let err = || ExactError::ParseRational(s.to_string());
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| err())?;
    let den: BigInt = den.parse().map_err(|_| err())?;
    if den.is_zero() || den.is_negative() {
        return Err(err());
    }
    Ok(Rational::new(num, den))
}

/// Canonical string form: `"p"` when the denominator is one, else `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Human-readable Gaussian rational such as `-1+5i`, `3`, `-2i`.
pub fn format_gaussian(z: &GaussianRational) -> String {
    if z.im.is_zero() {
        return format_rational(&z.re);
    }
    let im_abs = z.im.abs();
    let im_part = if im_abs.is_one() {
        "i".to_string()
    } else {
        format!("{}i", format_rational(&im_abs))
    };
    if z.re.is_zero() {
        if z.im.is_negative() {
            format!("-{im_part}")
        } else {
            im_part
        }
    } else {
        let sign = if z.im.is_negative() { '-' } else { '+' };
        format!("{}{}{}", format_rational(&z.re), sign, im_part)
    }
}

/// Sign of a rational as -1, 0 or 1.
pub(crate) fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

/// A rational of smallest denominator in the half-open interval `(lo, hi]`.
pub(crate) fn simplest_in(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo < hi);
    simplest_between(lo, true, Some((hi, false)))
}

// Stern–Brocot style descent. `hi == None` means unbounded above.
fn simplest_between(lo: &Rational, lo_open: bool, hi: Option<(&Rational, bool)>) -> Rational {
    let fl = lo.floor();
    let candidate = if lo.is_integer() && !lo_open {
        lo.clone()
    } else {
        fl.clone() + Rational::one()
    };
    let fits = match hi {
        None => true,
        Some((h, open)) => {
            if open {
                &candidate < h
            } else {
                &candidate <= h
            }
        }
    };
    if fits {
        return candidate;
    }
    let (h, h_open) = hi.expect("bounded interval");
    // No integer inside, so both ends share the integer part `fl`.
    let lo_frac = lo - &fl;
    let hi_frac = h - &fl;
    let upper = if lo_frac.is_zero() {
        None
    } else {
        Some(lo_frac.recip())
    };
    let r = simplest_between(&hi_frac.recip(), h_open, upper.as_ref().map(|u| (u, lo_open)));
    fl + r.recip()
}
