use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{canonical_cmp, format_gaussian, format_rational, ExactError, GaussianRational, Rational};

/// Univariate polynomial with rational coefficients, constant term first.
///
/// The coefficient vector never carries zero leading coefficients; the zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = Rational::one();
        Polynomial { coeffs }
    }

    /// `x - c`.
    pub fn linear_root(c: &Rational) -> Self {
        Polynomial::new(vec![-c.clone(), Rational::one()])
    }

    /// `(x - z)(x - conj z) = x² - 2 Re(z) x + |z|²`.
    pub fn conjugate_pair(z: &GaussianRational) -> Self {
        let two_re = &z.re + &z.re;
        Polynomial::new(vec![z.norm_sqr(), -two_re, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Divides by `x - c`: `p = (x - c)·q + r` with `r = p(c)`.
    ///
    /// Returns `(0, 0)` for the zero polynomial and `(0, p0)` for constants.
    pub fn synthetic_divide(&self, c: &Rational) -> (Polynomial, Rational) {
        if self.coeffs.len() <= 1 {
            return (Polynomial::zero(), self.coeff(0));
        }
        let n = self.coeffs.len();
        let mut q = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for i in (0..n).rev() {
            let v = &self.coeffs[i] + &carry * c;
            if i == 0 {
                return (Polynomial::new(q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Polynomial long division by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.leading();
        if self.coeffs.len() < divisor.coeffs.len() {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); self.coeffs.len() - dd];
        for k in (0..quot.len()).rev() {
            let factor = &rem[k + dd] / &lead;
            if !factor.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &factor * d;
                }
            }
            quot[k] = factor;
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Remainder of `self` modulo `divisor`, negated (Sturm step).
    fn neg_rem(&self, divisor: &Polynomial) -> Polynomial {
        -self.div_rem(divisor).1
    }

    /// Sturm sequence `p, p', -rem(p, p'), …`.
    pub fn sturm_sequence(&self) -> Vec<Polynomial> {
        let mut seq = vec![self.clone()];
        if self.degree() == 0 {
            return seq;
        }
        seq.push(self.derivative());
        loop {
            let n = seq.len();
            let next = seq[n - 2].neg_rem(&seq[n - 1]);
            if next.is_zero() {
                break;
            }
            // Only signs matter, so keep the sequence small.
            let lead = next.leading().abs();
            seq.push(next.scale(&lead.recip()));
        }
        seq
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading();
        a.scale(&lead.recip())
    }

    /// `self / gcd(self, self')`, same roots without multiplicity.
    pub fn squarefree_part(&self) -> Polynomial {
        if self.degree() == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0
    }

    /// Number of distinct real roots in the half-open interval `(lo, hi]`.
    pub fn count_real_roots(&self, lo: &Rational, hi: &Rational) -> usize {
        let seq = self.squarefree_part().sturm_sequence();
        let changes = |x: &Rational| -> usize {
            let signs: Vec<i8> = seq
                .iter()
                .map(|p| super::sign(&p.eval(x)))
                .filter(|s| *s != 0)
                .collect();
            signs.windows(2).filter(|w| w[0] != w[1]).count()
        };
        changes(lo).saturating_sub(changes(hi))
    }

    fn mul_ref(&self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }

    fn add_ref(&self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_ref(rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.add_ref(&-rhs.clone())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_ref(rhs)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        self.mul_ref(&rhs)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{}", format_rational(&abs))?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Monic polynomial `∏ (x - z)` over a conjugate-closed multiset of roots.
///
/// Non-real roots are paired with their conjugates so the product stays
/// over the rationals.
pub fn poly_from_roots(roots: &[GaussianRational]) -> Result<Polynomial, ExactError> {
    let mut sorted: Vec<&GaussianRational> = roots.iter().collect();
    sorted.sort_by(|a, b| canonical_cmp(a, b));
    let mut upper: Vec<&GaussianRational> = Vec::new();
    let mut lower: Vec<GaussianRational> = Vec::new();
    let mut result = Polynomial::one();
    for z in sorted {
        if z.im.is_zero() {
            result = &result * &Polynomial::linear_root(&z.re);
        } else if z.im.is_positive() {
            upper.push(z);
        } else {
            lower.push(z.conj());
        }
    }
    lower.sort_by(canonical_cmp);
    if upper.len() != lower.len() || upper.iter().zip(&lower).any(|(u, l)| *u != l) {
        let count = |list: &[GaussianRational], z: &GaussianRational| list.iter().filter(|w| *w == z).count();
        let ups: Vec<GaussianRational> = upper.iter().map(|z| (*z).clone()).collect();
        let offender = ups
            .iter()
            .chain(lower.iter())
            .find(|z| count(&ups, z) != count(&lower, z))
            .cloned()
            .unwrap_or_default();
        return Err(ExactError::NotConjugateClosed(format_gaussian(&offender)));
    }
    for z in upper {
        result = &result * &Polynomial::conjugate_pair(z);
    }
    Ok(result)
}
