//! Decompositions of a spectrum into companion-realizable pieces, the
//! chain driver that glues them, and certificates for the result.

mod scale;
mod search;

use std::thread;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::companion::{companion_from_spectrum, is_nonneg_companion, CompanionMatrix};
use crate::exact::{format_rational, real, RatMatrix, Rational};
use crate::glue::{glue_chain, GlueChain, GlueError};
use crate::spectrum::{jcf_enumerate, ls_realizable, EigenList, JordanForm, LsVerdict, Spectrum};
use crate::verify::{compute_verdicts, Verdicts};

pub use scale::{perron_root, scale_to_cs, scale_to_cs_at};
pub use search::{find_decomposition, CandidateFilter, SearchOptions, SearchStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("NonnegativityViolated: companion of Γ{k} has a negative entry at coefficient {coefficient}")]
    NonnegativityViolated { k: usize, coefficient: usize },
    #[error("PositiveColumnViolated: companion of Γ{k} has a zero in its last column")]
    PositiveColumnViolated { k: usize },
    #[error("GlueValueNotSimple: glue value of Γ{0} also occurs in Λ{0}")]
    GlueValueNotSimple(usize),
    #[error("GlueValueNotDominant: glue value of Γ{0} does not strictly dominate the other entries")]
    GlueValueNotDominant(usize),
    #[error("GlueValueNonpositive: glue value of Γ{0} is not positive")]
    GlueValueNonpositive(usize),
    #[error("EmptySublist: Λ{0} is empty")]
    EmptySublist(usize),
    #[error("NoSublists: a decomposition needs at least one sublist")]
    NoSublists,
    #[error("NotFound: no decomposition of this shape exists ({examined} assignments examined{})", if *.exhausted_budget { ", budget exhausted" } else { "" })]
    NotFound { examined: u64, exhausted_budget: bool },
    #[error("{0}")]
    NotRealizable(String),
    #[error("{0}")]
    Inapplicable(String),
    #[error("InvalidJordanForm: {0}")]
    InvalidJordanForm(String),
    #[error("VerificationFailed: {0}")]
    VerificationFailed(String),
    #[error("NotIrreducible: {0}")]
    NotIrreducible(String),
    #[error("PerronNotRational: {0}")]
    PerronNotRational(String),
    #[error("NotSquare: matrix must be square")]
    NotSquare,
    #[error("{0}")]
    Glue(#[from] GlueError),
}

/// Sublists `Λ_k`, auxiliary lists `Γ_k` and glue values `c_k`
/// (`glue_values[k − 2]` belongs to `Γ_k`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomposition {
    pub sublists: Vec<EigenList>,
    pub aux: Vec<EigenList>,
    pub glue_values: Vec<Rational>,
}

impl Decomposition {
    pub fn links(&self) -> Vec<CompanionMatrix> {
        self.aux.iter().map(companion_from_spectrum).collect()
    }

    pub fn chain(&self) -> GlueChain {
        GlueChain {
            links: self.links(),
            glue_values: self.glue_values.clone(),
        }
    }

    /// Jordan form of the glued matrix: each `Λ_k` contributes one block per
    /// distinct entry.
    pub fn induced_jordan(&self) -> JordanForm {
        self.sublists
            .iter()
            .map(JordanForm::single_blocks)
            .fold(JordanForm::new([]), |acc, j| acc.direct_sum(&j))
    }

    pub fn union(&self) -> EigenList {
        self.sublists.iter().fold(EigenList::default(), |acc, l| acc.union(l))
    }
}

/// Builds and checks `Γ₁ = Λ₁`, `Γ_k = {s₁(Γ_{k−1})} ∪ Λ_k`.
pub fn build_aux_chain(sublists: Vec<EigenList>) -> Result<Decomposition, RealizeError> {
    build_aux_chain_with(sublists, false)
}

/// As [`build_aux_chain`]; with `positive_column` every companion must
/// also have a strictly positive last column.
pub fn build_aux_chain_with(sublists: Vec<EigenList>, positive_column: bool) -> Result<Decomposition, RealizeError> {
    if sublists.is_empty() {
        return Err(RealizeError::NoSublists);
    }
    let mut aux: Vec<EigenList> = Vec::with_capacity(sublists.len());
    let mut glue_values = Vec::new();
    for (i, lambda) in sublists.iter().enumerate() {
        let k = i + 1;
        if lambda.is_empty() {
            return Err(RealizeError::EmptySublist(k));
        }
        let gamma = match aux.last() {
            None => lambda.clone(),
            Some(prev) => {
                let g = prev.trace();
                check_glue_value(&g, lambda, k)?;
                glue_values.push(g.clone());
                lambda.with_real(&g, 1)
            }
        };
        check_companion(&gamma, k, positive_column)?;
        aux.push(gamma);
    }
    Ok(Decomposition {
        sublists,
        aux,
        glue_values,
    })
}

pub(crate) fn check_glue_value(g: &Rational, lambda: &EigenList, k: usize) -> Result<(), RealizeError> {
    if !g.is_positive() {
        return Err(RealizeError::GlueValueNonpositive(k));
    }
    if lambda.contains(&real(g.clone())) {
        return Err(RealizeError::GlueValueNotSimple(k));
    }
    let g2 = g * g;
    if lambda.distinct().any(|z| z.norm_sqr() >= g2) {
        return Err(RealizeError::GlueValueNotDominant(k));
    }
    Ok(())
}

pub(crate) fn check_companion(gamma: &EigenList, k: usize, positive_column: bool) -> Result<(), RealizeError> {
    let check = is_nonneg_companion(gamma);
    if let Some(coefficient) = check.witness {
        return Err(RealizeError::NonnegativityViolated { k, coefficient });
    }
    if positive_column && check.last_column.iter().any(Zero::is_zero) {
        return Err(RealizeError::PositiveColumnViolated { k });
    }
    Ok(())
}

/// A realization together with everything needed to re-check it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizationCertificate {
    pub spectrum: Spectrum,
    pub jcf: JordanForm,
    pub decomposition: Option<Decomposition>,
    pub matrix: RatMatrix,
    pub verdicts: Verdicts,
}

impl RealizationCertificate {
    /// Recomputes verdicts from the matrix and fails unless the matrix
    /// realizes the claimed spectrum and Jordan form nonnegatively.
    pub fn certify(
        spectrum: Spectrum,
        jcf: JordanForm,
        decomposition: Option<Decomposition>,
        matrix: RatMatrix,
    ) -> Result<Self, RealizeError> {
        let verdicts = compute_verdicts(&matrix, spectrum.list(), &jcf);
        if !verdicts.realizes() {
            return Err(RealizeError::VerificationFailed(format!(
                "spectrum {} jcf {} nonnegative {}",
                verdicts.spectrum_match, verdicts.jcf_match, verdicts.nonnegative
            )));
        }
        Ok(RealizationCertificate {
            spectrum,
            jcf,
            decomposition,
            matrix,
            verdicts,
        })
    }

    /// True when a fresh verification agrees with the stored verdicts.
    pub fn reverify(&self) -> bool {
        let fresh = compute_verdicts(&self.matrix, self.spectrum.list(), &self.jcf);
        fresh.realizes() && fresh == self.verdicts
    }
}

/// Rejects spectra outside the left half-plane setting or failing the
/// three-inequality test, and Jordan forms not allowed by the spectrum.
pub fn check_preconditions(spec: &Spectrum, j: &JordanForm) -> Result<(), RealizeError> {
    j.validate(spec.list())
        .map_err(|e| RealizeError::InvalidJordanForm(e.to_string().replace("InvalidJordanForm: ", "")))?;
    match ls_realizable(spec) {
        LsVerdict::Realizable { .. } => Ok(()),
        v @ LsVerdict::NotRealizable { .. } => Err(RealizeError::NotRealizable(v.to_string())),
        v @ LsVerdict::Inapplicable { .. } => Err(RealizeError::Inapplicable(v.to_string())),
    }
}

/// Glues the decomposition's companions and certifies the result.
pub fn realize_decomposition(
    spec: &Spectrum,
    j: &JordanForm,
    decomposition: Decomposition,
) -> Result<RealizationCertificate, RealizeError> {
    let matrix = glue_chain(&decomposition.chain())?;
    RealizationCertificate::certify(spec.clone(), j.clone(), Some(decomposition), matrix)
}

pub fn realize(spec: &Spectrum, j: &JordanForm) -> Result<RealizationCertificate, RealizeError> {
    realize_with(spec, j, &SearchOptions::default())
}

/// Searches with a positive last column first when the spectrum has no
/// zero entry and positive trace, then without.
pub fn realize_with(spec: &Spectrum, j: &JordanForm, opts: &SearchOptions) -> Result<RealizationCertificate, RealizeError> {
    check_preconditions(spec, j)?;
    let (decomposition, _) = find_with_preference(spec, j, opts)?;
    realize_decomposition(spec, j, decomposition)
}

pub(crate) fn find_with_preference(
    spec: &Spectrum,
    j: &JordanForm,
    opts: &SearchOptions,
) -> Result<(Decomposition, SearchStats), RealizeError> {
    let positive_allowed = !spec.has_zero_entry() && spec.power_sum(1).is_positive();
    if positive_allowed && !opts.positive_column {
        let strict = SearchOptions {
            positive_column: true,
            ..opts.clone()
        };
        if let Ok(found) = find_decomposition(spec, j, &strict) {
            return Ok(found);
        }
    }
    find_decomposition(spec, j, opts)
}

/// Outcome of [`universal`], one entry per enumerated Jordan form in
/// enumeration order.
#[derive(Debug, Clone)]
pub struct UniversalReport {
    pub entries: Vec<(JordanForm, Result<RealizationCertificate, RealizeError>)>,
}

impl UniversalReport {
    pub fn realized(&self) -> usize {
        self.entries.iter().filter(|(_, r)| r.is_ok()).count()
    }

    pub fn total(&self) -> usize {
        self.entries.len()
    }

    pub fn is_universal(&self) -> bool {
        self.realized() == self.total()
    }
}

/// Attempts every Jordan form allowed by `spec`, spreading the forms over
/// `jobs` threads.
pub fn universal(spec: &Spectrum, jobs: usize) -> UniversalReport {
    let forms = jcf_enumerate(spec.list());
    let jobs = jobs.max(1).min(forms.len().max(1));
    let mut slots: Vec<Option<Result<RealizationCertificate, RealizeError>>> = vec![None; forms.len()];
    if jobs == 1 {
        for (slot, j) in slots.iter_mut().zip(&forms) {
            *slot = Some(realize(spec, j));
        }
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    let forms = &forms;
                    scope.spawn(move || {
                        (w..forms.len())
                            .step_by(jobs)
                            .map(|i| (i, realize(spec, &forms[i])))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            for h in handles {
                for (i, r) in h.join().expect("worker panicked") {
                    slots[i] = Some(r);
                }
            }
        });
    }
    UniversalReport {
        entries: forms
            .into_iter()
            .zip(slots)
            .map(|(j, r)| (j, r.expect("every form attempted")))
            .collect(),
    }
}

/// Text form of a decomposition trace, one Γ-list per line.
pub fn describe_chain(d: &Decomposition) -> Vec<String> {
    d.aux
        .iter()
        .enumerate()
        .map(|(i, gamma)| {
            let glue = if i == 0 {
                String::new()
            } else {
                format!("  (glue at {})", format_rational(&d.glue_values[i - 1]))
            };
            format!("Γ{} = {}{}", i + 1, gamma, glue)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gi, int, rat};
    use crate::spectrum::tests::{example1, spec};
    use crate::verify::verify_jcf;

    fn list(values: &[(i64, i64)]) -> EigenList {
        EigenList::new(values.iter().map(|&(a, b)| gi(a, b))).unwrap()
    }

    fn example1_split() -> Vec<EigenList> {
        vec![
            list(&[(23, 0), (-1, 5), (-1, -5)]),
            list(&[(-2, 0), (-1, 5), (-1, -5), (-2, 7), (-2, -7)]),
            list(&[(-2, 0), (-1, 5), (-1, -5), (-2, 7), (-2, -7)]),
        ]
    }

    #[test]
    fn example1_chain() {
        let d = build_aux_chain(example1_split()).unwrap();
        assert_eq!(d.glue_values, vec![int(21), int(13)]);
        assert_eq!(d.aux[1], d.sublists[1].with_real(&int(21), 1));
        assert_eq!(d.aux[2], d.sublists[2].with_real(&int(13), 1));
        assert_eq!(d.union(), example1().list().clone());
        assert_eq!(d.aux[2].trace(), example1().power_sum(1));
    }

    #[test]
    fn single_sublist_chain() {
        let d = build_aux_chain(vec![list(&[(6, 0), (-1, 3), (-1, -3)])]).unwrap();
        assert!(d.glue_values.is_empty());
        assert_eq!(d.aux, d.sublists);
    }

    #[test]
    fn chain_errors() {
        let err = build_aux_chain(vec![list(&[(6, 0), (-2, 0)]), list(&[(-1, 3), (-1, -3)])]).unwrap_err();
        assert!(matches!(err, RealizeError::NonnegativityViolated { k: 2, .. }));
        let err = build_aux_chain(vec![list(&[(6, 0), (-2, 0), (-1, 3), (-1, -3)]), list(&[(-1, 3), (-1, -3)])])
            .unwrap_err();
        assert_eq!(err, RealizeError::GlueValueNotDominant(2));
        let err = build_aux_chain(vec![list(&[(2, 0), (-2, 0)]), list(&[(-1, 0)])]).unwrap_err();
        assert_eq!(err, RealizeError::GlueValueNonpositive(2));
        let err = build_aux_chain(vec![list(&[(5, 0), (-1, 0)]), list(&[(4, 0)])]).unwrap_err();
        assert_eq!(err, RealizeError::GlueValueNotSimple(2));
        let err = build_aux_chain(vec![list(&[(17, 0), (-3, 9), (-3, -9), (-3, 9), (-3, -9)])]).unwrap_err();
        assert_eq!(err, RealizeError::NonnegativityViolated { k: 1, coefficient: 2 });
    }

    #[test]
    fn example3_split() {
        let pairs = [(-2, 5), (-2, -5), (-2, 5), (-2, -5)];
        let l1 = list(&pairs).with_real(&rat(77, 4), 1);
        let l2 = list(&pairs).with_real(&int(-3), 1);
        let d = build_aux_chain(vec![l1, l2]).unwrap();
        assert_eq!(d.glue_values, vec![rat(45, 4)]);
        assert_eq!(d.aux[1].to_string(), "{45/4, (-2±5i)^2, -3}");
    }

    #[test]
    fn realize_example1_diagonal() {
        let s = example1();
        let j = JordanForm::diagonal(s.list());
        let cert = realize(&s, &j).unwrap();
        assert_eq!(cert.matrix.rows(), 13);
        assert!(cert.verdicts.irreducible);
        assert_eq!(cert.verdicts.positive_column, Some(12));
        assert!(cert.reverify());
    }

    #[test]
    fn realize_small_cases() {
        let s = spec(&[(7, 0)]);
        let cert = realize(&s, &JordanForm::diagonal(s.list())).unwrap();
        assert_eq!(cert.matrix, RatMatrix::from_rows(vec![vec![int(7)]]).unwrap());

        let s = spec(&[(6, 0), (-2, 0), (-1, 3), (-1, -3), (-1, 3), (-1, -3)]);
        let j = JordanForm::single_blocks(s.list());
        let cert = realize(&s, &j).unwrap();
        assert!(verify_jcf(&cert.matrix, &j));

        let s = spec(&[(17, 0), (-3, 9), (-3, -9), (-3, 9), (-3, -9)]);
        let err = realize(&s, &JordanForm::diagonal(s.list())).unwrap_err();
        assert_eq!(err.to_string(), "NotRealizable: s₁²=25 > n·s₂=5");
    }

    #[test]
    fn universal_small() {
        let s = spec(&[(6, 0), (-2, 0), (-1, 3), (-1, -3), (-1, 3), (-1, -3)]);
        let report = universal(&s, 2);
        assert_eq!((report.realized(), report.total()), (2, 2));
        let s = spec(&[(17, 0), (-3, 9), (-3, -9), (-3, 9), (-3, -9)]);
        let report = universal(&s, 1);
        assert_eq!(report.realized(), 0);
        assert!(report
            .entries
            .iter()
            .all(|(_, r)| matches!(r, Err(RealizeError::NotRealizable(_)))));
    }
}
