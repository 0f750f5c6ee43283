//! Lists with one repeated conjugate pair:
//! `Λ_c = {λ, −c, (−a ± bi)^{(n−2)/2}}`.
//!
//! Covers the closed form for the `(m−1, m)` companion entry of a chain
//! list, the admissible interval for `c`, the two explicit companions
//! that close the chain, and the one-parameter family in which every
//! admissible `c` works.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::companion::CompanionMatrix;
use crate::exact::{format_rational, gauss, int, real, Polynomial, Rational};
use crate::realize::{build_aux_chain, realize, realize_decomposition, RealizationCertificate, RealizeError};
use crate::spectrum::{EigenList, JordanForm, Spectrum, SpectrumError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("UnsupportedShape: n = {0} must be even and at least 6")]
    UnsupportedShape(usize),
    #[error("NonpositiveParameter: {0} must be positive")]
    NonpositiveParameter(&'static str),
    #[error("C1Violated: ((2n-11)a²+b²)/(2a) = {bound} exceeds λ = {lambda}")]
    C1Violated { bound: String, lambda: String },
    #[error("DenominatorNonpositive: λ - (n-2)a = {0} is not positive")]
    DenominatorNonpositive(String),
    #[error("IntervalEmpty: lower bound {lo} exceeds upper bound {hi}")]
    IntervalEmpty { lo: String, hi: String },
    #[error("C2Violated: c = {c} lies outside {interval}")]
    C2Violated { c: String, interval: String },
    #[error("ProofGapViolated: entry (2,4) of the closing companion is {0} < 0")]
    ProofGapViolated(String),
    #[error("PairConditionViolated: need 3a² < b², got 3a² = {three_a2}, b² = {b2}")]
    PairConditionViolated { three_a2: String, b2: String },
    #[error("CAboveMax: c = {c} exceeds (b²-3a²)/(2a) = {c_max}")]
    CAboveMax { c: String, c_max: String },
    #[error("{0}")]
    Spectrum(#[from] SpectrumError),
    #[error("{0}")]
    Realize(#[from] RealizeError),
}

/// Parameters of `Λ_c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniformPairList {
    pub lambda: Rational,
    pub a: Rational,
    pub b: Rational,
    pub n: usize,
    pub c: Rational,
}

fn check_shape(n: usize) -> Result<(), FamilyError> {
    if n < 6 || n % 2 == 1 {
        return Err(FamilyError::UnsupportedShape(n));
    }
    Ok(())
}

fn check_positive(value: &Rational, name: &'static str) -> Result<(), FamilyError> {
    if !value.is_positive() {
        return Err(FamilyError::NonpositiveParameter(name));
    }
    Ok(())
}

impl UniformPairList {
    pub fn new(lambda: Rational, a: Rational, b: Rational, n: usize, c: Rational) -> Result<Self, FamilyError> {
        check_shape(n)?;
        check_positive(&lambda, "lambda")?;
        check_positive(&a, "a")?;
        check_positive(&b, "b")?;
        check_positive(&c, "c")?;
        Ok(UniformPairList { lambda, a, b, n, c })
    }

    /// Number of conjugate pairs, `(n − 2)/2`.
    pub fn pairs(&self) -> usize {
        (self.n - 2) / 2
    }

    pub fn pair(&self) -> crate::exact::GaussianRational {
        gauss(-self.a.clone(), self.b.clone())
    }

    pub fn list(&self) -> EigenList {
        let z = self.pair();
        EigenList::from_pairs([
            (real(self.lambda.clone()), 1),
            (real(-self.c.clone()), 1),
            (z.conj(), self.pairs()),
            (z, self.pairs()),
        ])
        .expect("conjugate-closed by construction")
    }

    pub fn spectrum(&self) -> Result<Spectrum, FamilyError> {
        Ok(Spectrum::with_perron(self.list(), self.lambda.clone())?)
    }

    fn pair_list(&self, p: usize) -> EigenList {
        let z = self.pair();
        EigenList::from_pairs([(z.conj(), p), (z, p)]).expect("conjugate-closed")
    }
}

/// The `(m−1, m)` entry of the companion of a chain list with `p` pairs:
///
/// `p(2aλ − 2a²n + (4k−2p+1)a² − b²) + c(λ − (n−2)a)`,
///
/// where `k − 1` counts the pairs in this list and every later list.
/// Pass `c = 0` for a list that does not contain `−c`.
pub fn fb2(lambda: &Rational, a: &Rational, b: &Rational, n: usize, c: &Rational, k: usize, p: usize) -> Rational {
    let n = int(n as i64);
    let k = int(k as i64);
    let p = int(p as i64);
    let two = int(2);
    let a2 = a * a;
    let inner = &two * a * lambda - &two * &a2 * &n + (int(4) * &k - &two * &p + int(1)) * &a2 - b * b;
    p * inner + c * (lambda - (n - two) * a)
}

/// Admissible values of `c`; `lo_open` marks the clamp at `0⁺`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CInterval {
    pub lo: Rational,
    pub lo_open: bool,
    pub hi: Rational,
}

impl CInterval {
    pub fn contains(&self, c: &Rational) -> bool {
        let above = if self.lo_open { c > &self.lo } else { c >= &self.lo };
        above && c <= &self.hi
    }
}

impl std::fmt::Display for CInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let open = if self.lo_open { '(' } else { '[' };
        write!(f, "{}{}, {}]", open, format_rational(&self.lo), format_rational(&self.hi))
    }
}

/// Checks `((2n−11)a² + b²)/(2a) ≤ λ` and returns the interval
/// `(2a(na−λ) + b² − 7a²)/(λ − (n−2)a) ≤ c ≤ λ − (n−2)a`.
pub fn negc_interval(lambda: &Rational, a: &Rational, b: &Rational, n: usize) -> Result<CInterval, FamilyError> {
    check_shape(n)?;
    check_positive(lambda, "lambda")?;
    check_positive(a, "a")?;
    check_positive(b, "b")?;
    let nn = int(n as i64);
    let a2 = a * a;
    let b2 = b * b;
    let bound = ((int(2) * &nn - int(11)) * &a2 + &b2) / (int(2) * a);
    if &bound > lambda {
        return Err(FamilyError::C1Violated {
            bound: format_rational(&bound),
            lambda: format_rational(lambda),
        });
    }
    let hi = lambda - (&nn - int(2)) * a;
    if !hi.is_positive() {
        return Err(FamilyError::DenominatorNonpositive(format_rational(&hi)));
    }
    let lo = (int(2) * a * (&nn * a - lambda) + &b2 - int(7) * &a2) / &hi;
    if lo > hi {
        return Err(FamilyError::IntervalEmpty {
            lo: format_rational(&lo),
            hi: format_rational(&hi),
        });
    }
    Ok(if lo.is_positive() {
        CInterval { lo, lo_open: false, hi }
    } else {
        CInterval {
            lo: Rational::zero(),
            lo_open: true,
            hi,
        }
    })
}

fn check_c(params: &UniformPairList) -> Result<CInterval, FamilyError> {
    let interval = negc_interval(&params.lambda, &params.a, &params.b, params.n)?;
    if !interval.contains(&params.c) {
        return Err(FamilyError::C2Violated {
            c: format_rational(&params.c),
            interval: interval.to_string(),
        });
    }
    Ok(interval)
}

/// The two companions closing the chain: spectra
/// `{λ − (n−6)a, −a ± bi}` and `{λ − (n−4)a, −c, −a ± bi}`.
pub fn negc_proof_matrices(params: &UniformPairList) -> Result<(CompanionMatrix, CompanionMatrix), FamilyError> {
    check_c(params)?;
    let UniformPairList { lambda, a, b, n, c } = params;
    let nn = int(*n as i64);
    let a2 = a * a;
    let b2 = b * b;
    let m = &a2 + &b2;
    let rho = lambda - (&nn - int(6)) * a;
    let rho2 = lambda - (&nn - int(4)) * a;
    let first_col = [
        &m * &rho,
        int(2) * a * lambda - &a2 * (int(2) * &nn - int(11)) - &b2,
        rho2.clone(),
    ];
    let shift = int(7) * &a2 - &b2 + int(2) * a * lambda - int(2) * &a2 * &nn;
    let top = lambda - (&nn - int(2)) * a;
    let second_col = [
        &m * &rho2 * c,
        &m * &rho2 + &shift * c,
        &top * c + &shift,
        &top - c,
    ];
    if second_col[1].is_negative() {
        return Err(FamilyError::ProofGapViolated(format_rational(&second_col[1])));
    }
    let first = companion_with_column(&first_col);
    let second = companion_with_column(&second_col);
    debug_assert_eq!(
        first.poly(),
        &EigenList::from_pairs([(real(rho), 1), (params.pair(), 1), (params.pair().conj(), 1)])
            .expect("closed")
            .char_poly()
    );
    Ok((first, second))
}

/// Companion whose last column, read top-down, is `col`.
fn companion_with_column(col: &[Rational]) -> CompanionMatrix {
    let m = col.len();
    let mut coeffs: Vec<Rational> = col.iter().map(|x| -x.clone()).collect();
    coeffs.push(int(1));
    debug_assert_eq!(coeffs.len(), m + 1);
    CompanionMatrix::from_poly(Polynomial::new(coeffs)).expect("monic")
}

/// Distinct orderings of a multiset of parts, in lexicographically
/// decreasing order.
fn arrangements(parts: &[usize]) -> Vec<Vec<usize>> {
    fn rec(counts: &mut Vec<(usize, usize)>, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in 0..counts.len() {
            if counts[i].1 == 0 {
                continue;
            }
            counts[i].1 -= 1;
            cur.push(counts[i].0);
            rec(counts, left - 1, cur, out);
            cur.pop();
            counts[i].1 += 1;
        }
    }
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &p in parts {
        match counts.iter_mut().find(|(v, _)| *v == p) {
            Some((_, k)) => *k += 1,
            None => counts.push((p, 1)),
        }
    }
    counts.sort_by_key(|x| std::cmp::Reverse(x.0));
    let mut out = Vec::new();
    rec(&mut counts, parts.len(), &mut Vec::new(), &mut out);
    out
}

/// Realizes `Λ_c` with Jordan form `j`.
///
/// Each chain list holds one block of the pair, `λ` heads the first list
/// and `−c` joins the last. Orderings of the pair's blocks are screened
/// with [`fb2`] before any companion is built. A diagonal `j` yields the
/// chain whose last two links are [`negc_proof_matrices`]. If no ordering
/// works the generic search takes over.
pub fn negc_realize(params: &UniformPairList, j: &JordanForm) -> Result<RealizationCertificate, FamilyError> {
    let spec = params.spectrum()?;
    j.validate(spec.list())?;
    let proof = negc_proof_matrices(params)?;
    let parts = j.partition(&params.pair()).to_vec();
    let UniformPairList { lambda, a, b, n, c } = params;
    for order in arrangements(&parts) {
        let t = order.len();
        let mut later = 0;
        let mut screened = true;
        for (i, &p) in order.iter().enumerate().rev() {
            later += p;
            let cc = if i + 1 == t { c.clone() } else { Rational::zero() };
            if fb2(lambda, a, b, *n, &cc, later + 1, p).is_negative() {
                screened = false;
                break;
            }
        }
        if !screened {
            continue;
        }
        let sublists: Vec<EigenList> = order
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let mut l = params.pair_list(p);
                if i == 0 {
                    l = l.with_real(lambda, 1);
                }
                if i + 1 == t {
                    l = l.with_real(&-c.clone(), 1);
                }
                l
            })
            .collect();
        let Ok(decomposition) = build_aux_chain(sublists) else {
            continue;
        };
        if j.is_diagonal() {
            let links = decomposition.links();
            if links.len() >= 2 {
                debug_assert_eq!(&links[links.len() - 2], &proof.0);
            }
            debug_assert_eq!(links.last(), Some(&proof.1));
        }
        return Ok(realize_decomposition(&spec, j, decomposition)?);
    }
    Ok(realize(&spec, j)?)
}

/// Peak of the family: `((2n−7)a² + b²)/(2a)`.
pub fn corr_lambda(a: &Rational, b: &Rational, n: usize) -> Rational {
    ((int(2) * int(n as i64) - int(7)) * a * a + b * b) / (int(2) * a)
}

/// Largest admissible `c`: `(b² − 3a²)/(2a)`.
pub fn corr_c_max(a: &Rational, b: &Rational) -> Rational {
    (b * b - int(3) * a * a) / (int(2) * a)
}

/// Member of the family with `λ = ((2n−7)a² + b²)/(2a)` and
/// `0 < c ≤ (b² − 3a²)/(2a)`.
pub fn corr_family(a: &Rational, b: &Rational, n: usize, c: &Rational) -> Result<UniformPairList, FamilyError> {
    check_shape(n)?;
    check_positive(a, "a")?;
    check_positive(b, "b")?;
    check_positive(c, "c")?;
    let three_a2 = int(3) * a * a;
    let b2 = b * b;
    if three_a2 >= b2 {
        return Err(FamilyError::PairConditionViolated {
            three_a2: format_rational(&three_a2),
            b2: format_rational(&b2),
        });
    }
    let c_max = corr_c_max(a, b);
    if c > &c_max {
        return Err(FamilyError::CAboveMax {
            c: format_rational(c),
            c_max: format_rational(&c_max),
        });
    }
    UniformPairList::new(corr_lambda(a, b, n), a.clone(), b.clone(), n, c.clone())
}
