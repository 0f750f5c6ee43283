//! Merging two realizations with constant row sums into one realization
//! of `{λ₁+μ₁, λ₂, …, λ_n, μ₂, …, μ_m}`.
//!
//! `A` is shifted by `e·μ₁e_nᵀ`, moving its corner to `c = a_nn + μ₁`;
//! `B` is shifted by `e·a_nn e₁ᵀ`, moving its Perron root to `c`. The two
//! shifted matrices are then glued at `c`.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::companion::EigenPair;
use crate::exact::{format_rational, real, RatMatrix, Rational};
use crate::glue::{smigoc_glue, GlueError, GlueInput};
use crate::realize::{realize, scale_to_cs_at, RealizationCertificate, RealizeError};
use crate::spectrum::{JordanForm, Spectrum, SpectrumError};
use crate::verify::{jordan_form_of, verify_spectrum};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MergeError {
    #[error("NotConstantRowSums: {0} does not have constant row sums")]
    NotConstantRowSums(&'static str),
    #[error("NotSquare: {0} must be square")]
    NotSquare(&'static str),
    #[error("DimensionMismatch: shift vector has length {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("NotNonnegative: {0} has a negative entry")]
    NotNonnegative(&'static str),
    #[error("LastColumnNotPositive: last column of {0} is not strictly positive")]
    LastColumnNotPositive(&'static str),
    #[error("RowSumNotPerron: row sum of {which} is {found}, Perron root is {perron}")]
    RowSumNotPerron { which: &'static str, found: String, perron: String },
    #[error("NotStrictlyDominant: Perron root of {0} does not strictly dominate")]
    NotStrictlyDominant(&'static str),
    #[error("SpectrumMismatch: characteristic polynomial of {0} does not match its spectrum")]
    SpectrumMismatch(&'static str),
    #[error("EigenpairNotNonnegative: left Perron vector of the shifted second matrix has a negative entry")]
    EigenpairNotNonnegative,
    #[error("EigenpairNotPositive: left Perron vector of the shifted second matrix has a zero entry")]
    EigenpairNotPositive,
    #[error("CornerCollision: glue value {0} is not a simple eigenvalue of the shifted second matrix")]
    CornerCollision(String),
    #[error("{0}")]
    Glue(#[from] GlueError),
    #[error("{0}")]
    Realize(#[from] RealizeError),
    #[error("{0}")]
    Spectrum(#[from] SpectrumError),
}

/// `M + e vᵀ`. Moves the row-sum eigenvalue `α` to `α + Σ vᵢ` and leaves
/// the rest of the spectrum alone.
pub fn brauer_shift(m: &RatMatrix, v: &[Rational]) -> Result<RatMatrix, MergeError> {
    let n = m.require_square().map_err(|_| MergeError::NotSquare("matrix"))?;
    if v.len() != n {
        return Err(MergeError::DimensionMismatch { expected: n, found: v.len() });
    }
    let sums = m.row_sums();
    if sums.iter().any(|s| *s != sums[0]) {
        return Err(MergeError::NotConstantRowSums("matrix"));
    }
    Ok(RatMatrix::from_fn(n, n, |i, j| m.get(i, j) + &v[j]))
}

/// Two constant-row-sum realizations with their spectra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergeInput {
    pub mat_a: RatMatrix,
    pub spec_a: Spectrum,
    pub mat_b: RatMatrix,
    pub spec_b: Spectrum,
}

impl MergeInput {
    pub fn new(mat_a: RatMatrix, spec_a: Spectrum, mat_b: RatMatrix, spec_b: Spectrum) -> Result<Self, MergeError> {
        check_operand(&mat_a, &spec_a, "first matrix")?;
        check_operand(&mat_b, &spec_b, "second matrix")?;
        Ok(MergeInput {
            mat_a,
            spec_a,
            mat_b,
            spec_b,
        })
    }
}

fn check_operand(m: &RatMatrix, spec: &Spectrum, which: &'static str) -> Result<(), MergeError> {
    let n = m.require_square().map_err(|_| MergeError::NotSquare(which))?;
    if m.entries().any(Signed::is_negative) {
        return Err(MergeError::NotNonnegative(which));
    }
    if !(0..n).all(|i| m.get(i, n - 1).is_positive()) {
        return Err(MergeError::LastColumnNotPositive(which));
    }
    let sums = m.row_sums();
    if sums.iter().any(|s| *s != sums[0]) {
        return Err(MergeError::NotConstantRowSums(which));
    }
    if &sums[0] != spec.perron() {
        return Err(MergeError::RowSumNotPerron {
            which,
            found: format_rational(&sums[0]),
            perron: format_rational(spec.perron()),
        });
    }
    if !spec.is_strictly_dominant() {
        return Err(MergeError::NotStrictlyDominant(which));
    }
    if !verify_spectrum(m, spec.list()) {
        return Err(MergeError::SpectrumMismatch(which));
    }
    Ok(())
}

/// `{λ₁+μ₁, λ₂, …, λ_n, μ₂, …, μ_m}`.
pub fn merged_spectrum(a: &Spectrum, b: &Spectrum) -> Result<Spectrum, MergeError> {
    let top = a.perron() + b.perron();
    let list = a.others().union(&b.others()).with_real(&top, 1);
    Ok(Spectrum::with_perron(list, top)?)
}

/// Jordan form of the merge: `A`'s blocks with the Perron block moved to
/// `λ₁+μ₁`, plus `B`'s blocks without its Perron block.
fn merged_jordan(input: &MergeInput, target: &Spectrum) -> JordanForm {
    let ja = jordan_form_of(&input.mat_a, input.spec_a.list());
    let jb = jordan_form_of(&input.mat_b, input.spec_b.list());
    let ja = ja
        .without_block(&real(input.spec_a.perron().clone()), 1)
        .expect("strictly dominant Perron root is simple");
    let jb = jb
        .without_block(&real(input.spec_b.perron().clone()), 1)
        .expect("strictly dominant Perron root is simple");
    ja.direct_sum(&jb)
        .direct_sum(&JordanForm::new([(real(target.perron().clone()), vec![1])]))
}

pub fn merge(input: &MergeInput) -> Result<RealizationCertificate, MergeError> {
    let n = input.mat_a.rows();
    let m = input.mat_b.rows();
    let mu = input.spec_b.perron();
    let corner = input.mat_a.get(n - 1, n - 1).clone();

    let mut va = vec![Rational::zero(); n];
    va[n - 1] = mu.clone();
    let shifted_a = brauer_shift(&input.mat_a, &va)?;
    let mut vb = vec![Rational::zero(); m];
    vb[0] = corner.clone();
    let shifted_b = brauer_shift(&input.mat_b, &vb)?;
    let c = &corner + mu;

    let eigenpair = row_sum_eigenpair(&shifted_b, &c)?;
    let matrix = smigoc_glue(&GlueInput {
        top: shifted_a,
        bottom: shifted_b,
        eigenpair,
    })?;
    let target = merged_spectrum(&input.spec_a, &input.spec_b)?;
    let jcf = merged_jordan(input, &target);
    Ok(RealizationCertificate::certify(target, jcf, None, matrix)?)
}

/// Eigenpair at the row sum `c`: right vector `e`, left vector from the
/// nullspace of `Mᵀ − cI`, scaled so that `tᵀe = 1`.
fn row_sum_eigenpair(b: &RatMatrix, c: &Rational) -> Result<EigenPair, MergeError> {
    let mut basis = b.transpose().shifted(c).nullspace_basis();
    if basis.len() != 1 {
        return Err(MergeError::CornerCollision(format_rational(c)));
    }
    let t = basis.pop().expect("one vector");
    let total = t.iter().fold(Rational::zero(), |acc, x| acc + x);
    if total.is_zero() {
        return Err(MergeError::CornerCollision(format_rational(c)));
    }
    let t: Vec<Rational> = t.iter().map(|x| x / &total).collect();
    if t.iter().any(Signed::is_negative) {
        return Err(MergeError::EigenpairNotNonnegative);
    }
    if t.iter().any(Zero::is_zero) {
        return Err(MergeError::EigenpairNotPositive);
    }
    Ok(EigenPair {
        eigenvalue: c.clone(),
        left: t,
        right: vec![Rational::one(); b.rows()],
        normalizer: Rational::one(),
    })
}

/// Realizes both spectra diagonally, scales to constant row sums, and
/// merges.
pub fn merge_spectra(a: &Spectrum, b: &Spectrum) -> Result<RealizationCertificate, MergeError> {
    let operand = |s: &Spectrum| -> Result<RatMatrix, MergeError> {
        let cert = realize(s, &JordanForm::diagonal(s.list()))?;
        Ok(scale_to_cs_at(&cert.matrix, s.perron())?)
    };
    let input = MergeInput::new(operand(a)?, a.clone(), operand(b)?, b.clone())?;
    merge(&input)
}
