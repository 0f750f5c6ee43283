//! Diagonal similarity to constant row sums.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::RealizeError;
use crate::exact::{format_rational, sign, simplest_in, Polynomial, RatMatrix, Rational};

/// Largest real root of `p`, provided it is rational.
///
/// Bisects with a Sturm sequence until the isolating interval is shorter
/// than `1/L²`, where `L` bounds the denominator of any rational root;
/// the simplest fraction inside is then the only candidate.
pub fn perron_root(p: &Polynomial) -> Result<Rational, RealizeError> {
    let sf = p.squarefree_part();
    let seq = sf.sturm_sequence();
    let changes = |x: &Rational| -> usize {
        let signs: Vec<i8> = seq.iter().map(|q| sign(&q.eval(x))).filter(|s| *s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let bound = sf
        .coeffs()
        .iter()
        .take(sf.degree())
        .map(|c| c.abs())
        .fold(Rational::zero(), |a, b| if b > a { b } else { a })
        + Rational::one();
    let mut lo = -bound.clone();
    let mut hi = bound;
    if changes(&lo) == changes(&hi) {
        return Err(RealizeError::PerronNotRational("no real eigenvalue".into()));
    }
    // A rational root p/q of the primitive integer polynomial has q | L.
    let lead = sf
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let width = Rational::new(BigInt::one(), &lead * &lead);
    let at_hi = changes(&hi);
    while &hi - &lo >= width {
        let mid = (&lo + &hi) / Rational::from_integer(2.into());
        if changes(&mid) > at_hi {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let candidate = simplest_in(&lo, &hi);
    if sf.eval(&candidate).is_zero() {
        Ok(candidate)
    } else {
        Err(RealizeError::PerronNotRational(format!(
            "largest real eigenvalue lies in ({}, {}] and is irrational",
            format_rational(&lo),
            format_rational(&hi)
        )))
    }
}

/// `D⁻¹MD` with `D` the Perron eigenvector, so every row sums to the
/// Perron root.
pub fn scale_to_cs(m: &RatMatrix) -> Result<RatMatrix, RealizeError> {
    m.require_square().map_err(|_| RealizeError::NotSquare)?;
    let p = m.char_poly().map_err(|_| RealizeError::NotSquare)?;
    let perron = perron_root(&p)?;
    scale_to_cs_at(m, &perron)
}

/// As [`scale_to_cs`] with the Perron root supplied.
pub fn scale_to_cs_at(m: &RatMatrix, perron: &Rational) -> Result<RatMatrix, RealizeError> {
    let n = m.require_square().map_err(|_| RealizeError::NotSquare)?;
    let mut basis = m.shifted(perron).nullspace_basis();
    if basis.len() != 1 {
        return Err(RealizeError::NotIrreducible(format!(
            "eigenspace at {} has dimension {}",
            format_rational(perron),
            basis.len()
        )));
    }
    let mut x = basis.pop().expect("one vector");
    if x.iter().any(Signed::is_negative) {
        x = x.into_iter().map(|v| -v).collect();
    }
    if !x.iter().all(Signed::is_positive) {
        return Err(RealizeError::NotIrreducible(format!(
            "eigenvector at {} is not strictly positive",
            format_rational(perron)
        )));
    }
    Ok(RatMatrix::from_fn(n, n, |i, j| m.get(i, j) * &x[j] / &x[i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::companion::companion_from_spectrum;
    use crate::exact::{gi, int, rat};
    use crate::spectrum::EigenList;

    #[test]
    fn companion_row_sums() {
        let l = EigenList::new([gi(4, 0), gi(-2, 0), gi(-1, 3), gi(-1, -3)]).unwrap();
        let m = companion_from_spectrum(&l).to_matrix();
        let b = scale_to_cs(&m).unwrap();
        assert!(b.row_sums().iter().all(|s| *s == int(4)));
        assert_eq!(b.char_poly().unwrap(), m.char_poly().unwrap());
    }

    #[test]
    fn already_constant() {
        let m = RatMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(1)]]).unwrap();
        assert_eq!(scale_to_cs(&m).unwrap(), m);
    }

    #[test]
    fn fractional_and_irrational_roots() {
        let p = Polynomial::new(vec![rat(-77, 4), int(1)]);
        assert_eq!(perron_root(&p).unwrap(), rat(77, 4));
        let q = Polynomial::new(vec![int(-2), int(0), int(1)]);
        assert!(matches!(perron_root(&q), Err(RealizeError::PerronNotRational(_))));
        let reducible = RatMatrix::identity(2);
        assert!(matches!(scale_to_cs(&reducible), Err(RealizeError::NotIrreducible(_))));
    }
}
