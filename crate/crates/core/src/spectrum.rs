//! Spectra, power sums, list classification, the left half-plane
//! realizability test and Jordan forms allowed by a spectrum.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{
    canonical_cmp, format_gaussian, format_rational, poly_from_roots, real, GaussianRational, Polynomial,
    Rational,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectrumError {
    #[error("NotConjugateClosed: {0} has no matching conjugate")]
    NotConjugateClosed(String),
    #[error("EmptySpectrum: a spectrum needs at least one entry")]
    Empty,
    #[error("NoPerronRoot: the entry of maximal modulus ({0}) is not a positive real")]
    NoPerronRoot(String),
    #[error("PerronAmbiguous: {other} has the same modulus as the Perron candidate {perron}")]
    PerronAmbiguous { perron: String, other: String },
    #[error("PerronNotInSpectrum: {0} is not an entry")]
    PerronNotInSpectrum(String),
    #[error("InvalidJordanForm: {0}")]
    InvalidJordanForm(String),
}

/// Conjugate-closed multiset of Gaussian rationals.
///
/// Stored as `(value, multiplicity)` pairs sorted by [`canonical_cmp`], so
/// equal multisets compare and hash equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct EigenList {
    entries: Vec<(GaussianRational, usize)>,
}

impl EigenList {
    pub fn new(values: impl IntoIterator<Item = GaussianRational>) -> Result<Self, SpectrumError> {
        Self::from_pairs(values.into_iter().map(|v| (v, 1)))
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (GaussianRational, usize)>) -> Result<Self, SpectrumError> {
        let list = Self::from_pairs_unchecked(pairs);
        for (z, k) in &list.entries {
            if !z.im.is_zero() && list.multiplicity(&z.conj()) != *k {
                return Err(SpectrumError::NotConjugateClosed(format_gaussian(z)));
            }
        }
        Ok(list)
    }

    pub(crate) fn from_pairs_unchecked(pairs: impl IntoIterator<Item = (GaussianRational, usize)>) -> Self {
        let mut raw: Vec<(GaussianRational, usize)> = pairs.into_iter().filter(|(_, k)| *k > 0).collect();
        raw.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        let mut entries: Vec<(GaussianRational, usize)> = Vec::with_capacity(raw.len());
        for (z, k) in raw {
            match entries.last_mut() {
                Some((last, n)) if *last == z => *n += k,
                _ => entries.push((z, k)),
            }
        }
        EigenList { entries }
    }

    pub fn from_reals(values: impl IntoIterator<Item = Rational>) -> Self {
        Self::from_pairs_unchecked(values.into_iter().map(|r| (real(r), 1)))
    }

    pub fn entries(&self) -> &[(GaussianRational, usize)] {
        &self.entries
    }

    /// Expanded values in canonical order, repeated by multiplicity.
    pub fn values(&self) -> Vec<GaussianRational> {
        self.entries
            .iter()
            .flat_map(|(z, k)| std::iter::repeat_n(z.clone(), *k))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.entries.iter().map(|(_, k)| k).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, z: &GaussianRational) -> usize {
        self.entries
            .binary_search_by(|(w, _)| canonical_cmp(w, z))
            .map_or(0, |i| self.entries[i].1)
    }

    pub fn contains(&self, z: &GaussianRational) -> bool {
        self.multiplicity(z) > 0
    }

    pub fn distinct(&self) -> impl Iterator<Item = &GaussianRational> {
        self.entries.iter().map(|(z, _)| z)
    }

    pub fn union(&self, other: &EigenList) -> EigenList {
        Self::from_pairs_unchecked(self.entries.iter().chain(&other.entries).cloned())
    }

    /// Adds `k` copies of a real value.
    pub fn with_real(&self, r: &Rational, k: usize) -> EigenList {
        Self::from_pairs_unchecked(self.entries.iter().cloned().chain([(real(r.clone()), k)]))
    }

    /// Removes one copy of `z`; `None` when absent.
    pub fn without_one(&self, z: &GaussianRational) -> Option<EigenList> {
        let i = self.entries.iter().position(|(w, _)| w == z)?;
        let mut entries = self.entries.clone();
        if entries[i].1 == 1 {
            entries.remove(i);
        } else {
            entries[i].1 -= 1;
        }
        Some(EigenList { entries })
    }

    /// Multiset difference `self \ other`; `None` if `other ⊄ self`.
    pub fn difference(&self, other: &EigenList) -> Option<EigenList> {
        let mut entries = self.entries.clone();
        for (z, k) in &other.entries {
            let i = entries.iter().position(|(w, _)| w == z)?;
            if entries[i].1 < *k {
                return None;
            }
            entries[i].1 -= k;
        }
        entries.retain(|(_, k)| *k > 0);
        Some(EigenList { entries })
    }

    /// `s_k = Σ λ^k`, exact. Imaginary parts cancel by conjugate closure.
    pub fn power_sum(&self, k: u32) -> Rational {
        let mut acc = GaussianRational::zero();
        for (z, m) in &self.entries {
            let mut p = GaussianRational::one();
            for _ in 0..k {
                p *= z;
            }
            acc += p * GaussianRational::from(Rational::from_integer((*m).into()));
        }
        assert!(acc.im.is_zero(), "power sum of a conjugate-closed list is real");
        acc.re
    }

    pub fn trace(&self) -> Rational {
        self.entries
            .iter()
            .fold(Rational::zero(), |acc, (z, m)| acc + &z.re * Rational::from_integer((*m).into()))
    }

    /// `∏ (x − λ)`.
    pub fn char_poly(&self) -> Polynomial {
        poly_from_roots(&self.values()).expect("eigen lists are conjugate-closed")
    }

    /// Largest `|λ|²` over entries other than one copy of `skip`.
    pub fn max_modulus_sqr_excluding(&self, skip: &GaussianRational) -> Option<Rational> {
        let rest = self.without_one(skip).unwrap_or_else(|| self.clone());
        rest.entries.iter().map(|(z, _)| z.norm_sqr()).max()
    }
}

impl fmt::Display for EigenList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (z, k) in &self.entries {
            if z.im.is_negative() {
                continue;
            }
            let label = if z.im.is_zero() {
                format_rational(&z.re)
            } else {
                let im = z.im.abs();
                let im = if im.is_one() { "i".to_string() } else { format!("{}i", format_rational(&im)) };
                if z.re.is_zero() {
                    format!("±{im}")
                } else {
                    format!("{}±{}", format_rational(&z.re), im)
                }
            };
            if *k == 1 {
                parts.push(label);
            } else {
                parts.push(format!("({label})^{k}"));
            }
        }
        // Largest first reads naturally: Perron candidate leads.
        parts.reverse();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A list with a distinguished Perron entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spectrum {
    list: EigenList,
    perron: Rational,
}

impl Spectrum {
    /// Detects the Perron entry: a positive real of maximal modulus that no
    /// other distinct entry ties with.
    pub fn new(values: impl IntoIterator<Item = GaussianRational>) -> Result<Self, SpectrumError> {
        Self::from_list(EigenList::new(values)?)
    }

    pub fn from_list(list: EigenList) -> Result<Self, SpectrumError> {
        let top = list
            .entries
            .iter()
            .map(|(z, _)| z)
            .max_by(|a, b| a.norm_sqr().cmp(&b.norm_sqr()).then_with(|| canonical_cmp(a, b)))
            .ok_or(SpectrumError::Empty)?
            .clone();
        if !top.im.is_zero() || !top.re.is_positive() {
            return Err(SpectrumError::NoPerronRoot(format_gaussian(&top)));
        }
        let radius = top.norm_sqr();
        if let Some(other) = list.distinct().find(|z| **z != top && z.norm_sqr() == radius) {
            return Err(SpectrumError::PerronAmbiguous {
                perron: format_gaussian(&top),
                other: format_gaussian(other),
            });
        }
        Ok(Spectrum { list, perron: top.re })
    }

    /// Uses an explicit Perron entry, which must be a positive real entry of
    /// maximal modulus.
    pub fn with_perron(list: EigenList, perron: Rational) -> Result<Self, SpectrumError> {
        let spec = Self::from_list(list)?;
        if spec.perron != perron {
            return Err(SpectrumError::PerronNotInSpectrum(format_rational(&perron)));
        }
        Ok(spec)
    }

    pub fn list(&self) -> &EigenList {
        &self.list
    }

    pub fn perron(&self) -> &Rational {
        &self.perron
    }

    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn values(&self) -> Vec<GaussianRational> {
        self.list.values()
    }

    /// Every entry except one copy of the Perron root.
    pub fn others(&self) -> EigenList {
        self.list
            .without_one(&real(self.perron.clone()))
            .expect("perron is an entry")
    }

    pub fn power_sum(&self, k: u32) -> Rational {
        self.list.power_sum(k)
    }

    /// `λ₁ ≥ |λ_i|` for all `i ≥ 2`. Always true for a constructed spectrum.
    pub fn is_weakly_dominant(&self) -> bool {
        let r = &self.perron * &self.perron;
        self.others().distinct().all(|z| z.norm_sqr() <= r)
    }

    /// `λ₁ > |λ_i|` for all `i ≥ 2`, which also forces `λ₁` simple.
    pub fn is_strictly_dominant(&self) -> bool {
        let r = &self.perron * &self.perron;
        self.others().distinct().all(|z| z.norm_sqr() < r)
    }

    pub fn has_zero_entry(&self) -> bool {
        self.list.contains(&GaussianRational::zero())
    }
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.list.fmt(f)
    }
}

/// Membership flags for the standard left half-plane cones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpectrumClass {
    pub left_half_plane: bool,
    pub suleimanova: bool,
    pub smigoc_type: bool,
    pub trace_nonneg: bool,
}

/// Computes the cone flags exactly. `√3|Re λ| ≥ |Im λ|` is tested as
/// `3 (Re λ)² ≥ (Im λ)²`.
pub fn classify(spec: &Spectrum) -> SpectrumClass {
    let others = spec.others();
    let left_half_plane = spec.perron.is_positive() && others.distinct().all(|z| !z.re.is_positive());
    let three = Rational::from_integer(3.into());
    let suleimanova = left_half_plane && others.distinct().all(|z| &z.re * &z.re >= &z.im * &z.im);
    let smigoc_type = left_half_plane && others.distinct().all(|z| &three * &z.re * &z.re >= &z.im * &z.im);
    SpectrumClass {
        left_half_plane,
        suleimanova,
        smigoc_type,
        trace_nonneg: !spec.power_sum(1).is_negative(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LsFailure {
    NegativeTrace,
    NegativeSecondMoment,
    MomentInequality,
}

/// Outcome of the three-inequality test for left half-plane lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LsVerdict {
    Realizable { s1: Rational, s2: Rational, n: usize },
    NotRealizable { s1: Rational, s2: Rational, n: usize, failure: LsFailure },
    Inapplicable { reason: String },
}

impl LsVerdict {
    pub fn is_realizable(&self) -> bool {
        matches!(self, LsVerdict::Realizable { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            LsVerdict::Realizable { .. } => "Realizable",
            LsVerdict::NotRealizable { .. } => "NotRealizable",
            LsVerdict::Inapplicable { .. } => "Inapplicable",
        }
    }
}

impl fmt::Display for LsVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LsVerdict::Realizable { s1, s2, n } => write!(
                f,
                "Realizable: s₁={} ≥ 0, s₂={} ≥ 0, s₁²={} ≤ n·s₂={}",
                format_rational(s1),
                format_rational(s2),
                format_rational(&(s1 * s1)),
                format_rational(&(s2 * Rational::from_integer((*n).into())))
            ),
            LsVerdict::NotRealizable { s1, s2, n, failure } => match failure {
                LsFailure::NegativeTrace => write!(f, "NotRealizable: s₁={} < 0", format_rational(s1)),
                LsFailure::NegativeSecondMoment => write!(f, "NotRealizable: s₂={} < 0", format_rational(s2)),
                LsFailure::MomentInequality => write!(
                    f,
                    "NotRealizable: s₁²={} > n·s₂={}",
                    format_rational(&(s1 * s1)),
                    format_rational(&(s2 * Rational::from_integer((*n).into())))
                ),
            },
            LsVerdict::Inapplicable { reason } => write!(f, "Inapplicable: {reason}"),
        }
    }
}

/// Realizability test for lists with `λ₁ ≥ |λ_i|` and `Re λ_i ≤ 0`:
/// realizable iff `s₁ ≥ 0`, `s₂ ≥ 0` and `s₁² ≤ n s₂`.
pub fn ls_realizable(spec: &Spectrum) -> LsVerdict {
    if !classify(spec).left_half_plane {
        return LsVerdict::Inapplicable {
            reason: "not a left half-plane list".into(),
        };
    }
    if !spec.is_weakly_dominant() {
        return LsVerdict::Inapplicable {
            reason: "Perron entry is not of maximal modulus".into(),
        };
    }
    let s1 = spec.power_sum(1);
    let s2 = spec.power_sum(2);
    let n = spec.len();
    let failure = if s1.is_negative() {
        Some(LsFailure::NegativeTrace)
    } else if s2.is_negative() {
        Some(LsFailure::NegativeSecondMoment)
    } else if &s1 * &s1 > &s2 * Rational::from_integer(n.into()) {
        Some(LsFailure::MomentInequality)
    } else {
        None
    };
    match failure {
        None => LsVerdict::Realizable { s1, s2, n },
        Some(failure) => LsVerdict::NotRealizable { s1, s2, n, failure },
    }
}

/// Jordan structure: for each distinct eigenvalue, the block sizes in
/// nonincreasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct JordanForm {
    blocks: Vec<(GaussianRational, Vec<usize>)>,
}

impl JordanForm {
    /// Normalizes ordering; zero-size parts are dropped and repeated
    /// eigenvalues are merged.
    pub fn new(blocks: impl IntoIterator<Item = (GaussianRational, Vec<usize>)>) -> Self {
        let mut merged: Vec<(GaussianRational, Vec<usize>)> = Vec::new();
        for (z, parts) in blocks {
            let parts: Vec<usize> = parts.into_iter().filter(|p| *p > 0).collect();
            if parts.is_empty() {
                continue;
            }
            match merged.iter_mut().find(|(w, _)| *w == z) {
                Some((_, existing)) => existing.extend(parts),
                None => merged.push((z, parts)),
            }
        }
        for (_, parts) in &mut merged {
            parts.sort_unstable_by(|a, b| b.cmp(a));
        }
        merged.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        JordanForm { blocks: merged }
    }

    /// All blocks of size one.
    pub fn diagonal(list: &EigenList) -> Self {
        JordanForm::new(list.entries().iter().map(|(z, k)| (z.clone(), vec![1; *k])))
    }

    /// One block per distinct eigenvalue (the nonderogatory form).
    pub fn single_blocks(list: &EigenList) -> Self {
        JordanForm::new(list.entries().iter().map(|(z, k)| (z.clone(), vec![*k])))
    }

    pub fn blocks(&self) -> &[(GaussianRational, Vec<usize>)] {
        &self.blocks
    }

    pub fn partition(&self, z: &GaussianRational) -> &[usize] {
        self.blocks
            .iter()
            .find(|(w, _)| w == z)
            .map_or(&[][..], |(_, p)| p.as_slice())
    }

    pub fn size(&self) -> usize {
        self.blocks.iter().flat_map(|(_, p)| p).sum()
    }

    pub fn is_diagonal(&self) -> bool {
        self.blocks.iter().all(|(_, p)| p.iter().all(|&s| s == 1))
    }

    /// Direct sum.
    pub fn direct_sum(&self, other: &JordanForm) -> JordanForm {
        JordanForm::new(self.blocks.iter().chain(&other.blocks).cloned())
    }

    /// Removes one block of the given size; `None` when absent.
    pub fn without_block(&self, z: &GaussianRational, size: usize) -> Option<JordanForm> {
        let mut blocks = self.blocks.clone();
        let (_, parts) = blocks.iter_mut().find(|(w, _)| w == z)?;
        let i = parts.iter().position(|&p| p == size)?;
        parts.remove(i);
        Some(JordanForm::new(blocks))
    }

    /// Eigenvalue multiset implied by the blocks.
    pub fn eigen_list(&self) -> EigenList {
        EigenList::from_pairs_unchecked(self.blocks.iter().map(|(z, p)| (z.clone(), p.iter().sum())))
    }

    /// Checks the form against a spectrum: partitions sum to multiplicities
    /// and conjugates carry identical partitions.
    pub fn validate(&self, list: &EigenList) -> Result<(), SpectrumError> {
        if &self.eigen_list() != list {
            return Err(SpectrumError::InvalidJordanForm(format!(
                "block sizes describe {} but the spectrum is {}",
                self.eigen_list(),
                list
            )));
        }
        for (z, p) in &self.blocks {
            if !z.im.is_zero() && self.partition(&z.conj()) != p.as_slice() {
                return Err(SpectrumError::InvalidJordanForm(format!(
                    "{} and its conjugate have different block sizes",
                    format_gaussian(z)
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for JordanForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (z, p) in self.blocks.iter().rev() {
            for s in p {
                parts.push(format!("J{}({})", s, format_gaussian(z)));
            }
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Integer partitions of `n` in descending lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every Jordan form allowed by the multiplicities of `list`.
///
/// Conjugate pairs share one partition choice. The first eigenvalue in
/// canonical order is the most significant digit of the enumeration.
pub fn jcf_enumerate(list: &EigenList) -> Vec<JordanForm> {
    let reps: Vec<(GaussianRational, Vec<Vec<usize>>)> = list
        .entries()
        .iter()
        .filter(|(z, _)| !z.im.is_negative())
        .map(|(z, k)| (z.clone(), partitions(*k)))
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; reps.len()];
    loop {
        let mut blocks = Vec::new();
        for ((z, parts), &c) in reps.iter().zip(&choice) {
            blocks.push((z.clone(), parts[c].clone()));
            if !z.im.is_zero() {
                blocks.push((z.conj(), parts[c].clone()));
            }
        }
        out.push(JordanForm::new(blocks));
        // Odometer, last digit fastest.
        let mut i = reps.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < reps[i].1.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}
