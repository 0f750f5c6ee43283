//! Companion matrices with ones on the subdiagonal and the coefficient
//! column last.
//!
//! For `p(x) = x^m − c₁x^{m−1} − c₂x^{m−2} − … − c_m` the companion is
//!
//! ```text
//! [ 0 0 … 0  c_m     ]
//! [ 1 0 … 0  c_{m−1} ]
//! [ 0 1 … 0  …       ]
//! [ 0 0 … 1  c₁      ]
//! ```
//!
//! so the bottom entry of the last column is the trace.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{format_rational, poly_from_roots, ExactError, GaussianRational, Polynomial, RatMatrix, Rational};
use crate::spectrum::{EigenList, JordanForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompanionError {
    #[error("NotConjugateClosed: {0} has no matching conjugate")]
    NotConjugateClosed(String),
    #[error("NotMonic: companion matrices need a monic polynomial of degree at least one")]
    NotMonic,
    #[error("NotAnEigenvalue: {0} is not a root of the characteristic polynomial")]
    NotAnEigenvalue(String),
    #[error("NotSimple: {0} is a repeated root")]
    NotSimple(String),
    #[error("NotNonnegative: eigenvectors at {0} have a negative entry")]
    NotNonnegative(String),
}

impl From<ExactError> for CompanionError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::NotConjugateClosed(z) => CompanionError::NotConjugateClosed(z),
            _ => CompanionError::NotMonic,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompanionMatrix {
    poly: Polynomial,
}

impl CompanionMatrix {
    pub fn from_poly(poly: Polynomial) -> Result<Self, CompanionError> {
        if !poly.is_monic() || poly.degree() == 0 {
            return Err(CompanionError::NotMonic);
        }
        Ok(CompanionMatrix { poly })
    }

    pub fn size(&self) -> usize {
        self.poly.degree()
    }

    /// The characteristic polynomial.
    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    /// Last column read top-down: `(c_m, …, c₁)`.
    pub fn last_column(&self) -> Vec<Rational> {
        (0..self.size()).map(|i| -self.poly.coeff(i)).collect()
    }

    /// `c_j`, the entry `j` places from the bottom of the last column
    /// (`c₁` is the corner).
    pub fn c(&self, j: usize) -> Rational {
        -self.poly.coeff(self.size() - j)
    }

    /// The corner entry `c₁`, equal to the trace.
    pub fn corner(&self) -> Rational {
        self.c(1)
    }

    pub fn to_matrix(&self) -> RatMatrix {
        let m = self.size();
        let col = self.last_column();
        RatMatrix::from_fn(m, m, |i, j| {
            if j == m - 1 {
                col[i].clone()
            } else if i == j + 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn is_nonnegative(&self) -> bool {
        self.last_column().iter().all(|c| !c.is_negative())
    }

    /// A size-one companion `[c]` counts as having a positive column when `c > 0`.
    pub fn has_positive_last_column(&self) -> bool {
        self.last_column().iter().all(Signed::is_positive)
    }
}

/// Companion matrix of `∏ (x − z)` over a conjugate-closed multiset.
pub fn companion_from_roots(roots: &[GaussianRational]) -> Result<CompanionMatrix, CompanionError> {
    CompanionMatrix::from_poly(poly_from_roots(roots)?)
}

pub fn companion_from_spectrum(list: &EigenList) -> CompanionMatrix {
    CompanionMatrix::from_poly(list.char_poly()).expect("nonempty list gives a monic polynomial")
}

/// Nonnegativity analysis of the companion of a list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonnegCheck {
    pub nonnegative: bool,
    /// Smallest `j` with `b_j > 0`, where `b_j` is the coefficient of
    /// `x^{m−j}` (so the companion entry `c_j = −b_j` is negative).
    pub witness: Option<usize>,
    pub last_column: Vec<Rational>,
    /// Verdict from `b₂` alone, present when the list has one real entry of
    /// positive real part, the rest in the closed left half-plane, and a
    /// nonnegative trace.
    pub shortcut: Option<bool>,
}

/// True when the `b₂`-only shortcut is valid for `list`.
pub fn shortcut_applies(list: &EigenList) -> bool {
    let mut positive = list.entries().iter().filter(|(z, _)| z.re.is_positive());
    let Some((z, k)) = positive.next() else {
        return false;
    };
    positive.next().is_none() && *k == 1 && z.im.is_zero() && !list.trace().is_negative()
}

pub fn is_nonneg_companion(list: &EigenList) -> NonnegCheck {
    let comp = companion_from_spectrum(list);
    let m = comp.size();
    let witness = (1..=m).find(|&j| comp.c(j).is_negative());
    let shortcut = (shortcut_applies(list) && m >= 2).then(|| !comp.c(2).is_negative());
    let nonnegative = witness.is_none();
    debug_assert!(
        shortcut.is_none_or(|s| s == nonnegative),
        "b₂ shortcut disagrees with the full scan for {list}"
    );
    NonnegCheck {
        nonnegative,
        witness,
        last_column: comp.last_column(),
        shortcut,
    }
}

/// Companions are nonderogatory: one block per distinct root.
pub fn jordan_of_companion(list: &EigenList) -> JordanForm {
    JordanForm::single_blocks(list)
}

/// Left and right eigenvectors at a simple real eigenvalue.
///
/// `left` and `right` are returned unscaled together with
/// `normalizer = leftᵀ·right`; the glue divides `right` by it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenPair {
    pub eigenvalue: Rational,
    pub left: Vec<Rational>,
    pub right: Vec<Rational>,
    pub normalizer: Rational,
}

impl EigenPair {
    /// `right / normalizer`, so that `leftᵀ·right = 1`.
    pub fn normalized_right(&self) -> Vec<Rational> {
        self.right.iter().map(|s| s / &self.normalizer).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.left.iter().chain(&self.right).all(|v| !v.is_negative())
    }

    /// Checks `tᵀM = c tᵀ`, `M s = c s` and the normalizer.
    pub fn satisfies(&self, m: &RatMatrix) -> bool {
        let c = &self.eigenvalue;
        let lhs_left = m.vec_mul(&self.left);
        let lhs_right = m.mul_vec(&self.right);
        let dot = self.left.iter().zip(&self.right).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
        lhs_left.iter().zip(&self.left).all(|(a, t)| *a == c * t)
            && lhs_right.iter().zip(&self.right).all(|(a, s)| *a == c * s)
            && dot == self.normalizer
            && !dot.is_zero()
    }
}

/// Eigenvectors of a companion matrix at a simple root `c`:
/// `t = (1, c, …, c^{m−1})` and `s` the coefficients of `p(x)/(x − c)`,
/// giving `tᵀs = p′(c)`.
pub fn perron_eigenpair(m: &CompanionMatrix, c: &Rational) -> Result<EigenPair, CompanionError> {
    let (quotient, rem) = m.poly().synthetic_divide(c);
    if !rem.is_zero() {
        return Err(CompanionError::NotAnEigenvalue(format_rational(c)));
    }
    let normalizer = m.poly().derivative().eval(c);
    if normalizer.is_zero() {
        return Err(CompanionError::NotSimple(format_rational(c)));
    }
    let size = m.size();
    let mut left = Vec::with_capacity(size);
    let mut pow = Rational::one();
    for _ in 0..size {
        left.push(pow.clone());
        pow *= c;
    }
    let right: Vec<Rational> = (0..size).map(|i| quotient.coeff(i)).collect();
    let pair = EigenPair {
        eigenvalue: c.clone(),
        left,
        right,
        normalizer,
    };
    if !pair.is_nonnegative() {
        return Err(CompanionError::NotNonnegative(format_rational(c)));
    }
    Ok(pair)
}
