//! Construction-blind checks on a finished matrix: characteristic
//! polynomial, Jordan structure through Weyr characteristics, sign
//! pattern, irreducibility and row sums.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};

use crate::exact::{GaussianRational, Matrix, RatMatrix, Rational, Scalar};
use crate::spectrum::{EigenList, JordanForm};

/// Ranks of `(M − λI)^k` for `k = 0, 1, …`, stopping at the first repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeyrProfile {
    pub eigenvalue: GaussianRational,
    pub ranks: Vec<usize>,
}

impl WeyrProfile {
    /// `w_k = r_{k−1} − r_k`, the number of blocks of size at least `k`.
    pub fn weyr(&self) -> Vec<usize> {
        self.ranks
            .windows(2)
            .map(|w| w[0] - w[1])
            .take_while(|&d| d > 0)
            .collect()
    }

    /// Block sizes, largest first. Empty when `λ` is not an eigenvalue.
    pub fn partition(&self) -> Vec<usize> {
        let w = self.weyr();
        let mut parts = Vec::new();
        for (k, &count) in w.iter().enumerate() {
            let next = w.get(k + 1).copied().unwrap_or(0);
            parts.extend(std::iter::repeat_n(k + 1, count - next));
        }
        parts.reverse();
        parts
    }
}

fn rank_sequence<T: Scalar>(m: &Matrix<T>, lambda: &T) -> Vec<usize> {
    let n = m.rows();
    let shifted = m.shifted(lambda);
    let mut ranks = vec![n];
    let mut power = shifted.clone();
    loop {
        let r = power.rank();
        let last = *ranks.last().expect("nonempty");
        ranks.push(r);
        if r == last || r == 0 {
            return ranks;
        }
        power = power.mul(&shifted);
    }
}

pub fn weyr_profile(m: &RatMatrix, lambda: &GaussianRational) -> WeyrProfile {
    let ranks = if lambda.im.is_zero() {
        rank_sequence(m, &lambda.re)
    } else {
        rank_sequence(&m.to_gaussian(), lambda)
    };
    WeyrProfile {
        eigenvalue: lambda.clone(),
        ranks,
    }
}

/// `char_poly(M) = ∏ (x − λ)` over the list.
pub fn verify_spectrum(m: &RatMatrix, list: &EigenList) -> bool {
    m.char_poly().is_ok_and(|p| p == list.char_poly())
}

/// Jordan form of `M` over the distinct entries of `list`. Correct when
/// `list` is the spectrum of `M`.
pub fn jordan_form_of(m: &RatMatrix, list: &EigenList) -> JordanForm {
    JordanForm::new(list.distinct().map(|z| (z.clone(), weyr_profile(m, z).partition())))
}

/// True iff the Weyr partitions of `M` match `J` at every eigenvalue of
/// `J` and `J` accounts for the full dimension.
pub fn verify_jcf(m: &RatMatrix, j: &JordanForm) -> bool {
    if !m.is_square() || j.size() != m.rows() {
        return false;
    }
    j.blocks()
        .iter()
        .all(|(z, parts)| weyr_profile(m, z).partition() == *parts)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub nonnegative: bool,
    /// Zero-based indices of strictly positive columns.
    pub positive_columns: Vec<usize>,
    pub irreducible: bool,
    /// Common row sum, when every row sums to the same value.
    pub cs_value: Option<Rational>,
}

pub fn verify_structure(m: &RatMatrix) -> StructureReport {
    let nonnegative = m.entries().all(|x| !x.is_negative());
    let positive_columns = (0..m.cols())
        .filter(|&j| (0..m.rows()).all(|i| m.get(i, j).is_positive()))
        .collect();
    let sums = m.row_sums();
    let cs_value = sums
        .first()
        .filter(|first| sums.iter().all(|s| s == *first))
        .cloned();
    StructureReport {
        nonnegative,
        positive_columns,
        irreducible: is_irreducible(m),
        cs_value,
    }
}

/// Strong connectivity of the digraph with an edge `i → j` for each nonzero
/// off-diagonal or diagonal entry. A 1×1 matrix counts as irreducible.
pub fn is_irreducible(m: &RatMatrix) -> bool {
    let n = m.rows();
    if n <= 1 {
        return true;
    }
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                let entry = if forward { m.get(u, v) } else { m.get(v, u) };
                if !seen[v] && !entry.is_zero() {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

/// Everything a certificate claims, recomputed from the matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdicts {
    pub spectrum_match: bool,
    pub jcf_match: bool,
    pub nonnegative: bool,
    /// Largest zero-based index of a strictly positive column.
    pub positive_column: Option<usize>,
    pub irreducible: bool,
    pub cs_value: Option<Rational>,
}

impl Verdicts {
    /// The claims every realization must satisfy.
    pub fn realizes(&self) -> bool {
        self.spectrum_match && self.jcf_match && self.nonnegative
    }
}

pub fn compute_verdicts(m: &RatMatrix, list: &EigenList, j: &JordanForm) -> Verdicts {
    let spectrum_match = verify_spectrum(m, list);
    let jcf_match = spectrum_match && verify_jcf(m, j);
    let s = verify_structure(m);
    Verdicts {
        spectrum_match,
        jcf_match,
        nonnegative: s.nonnegative,
        positive_column: s.positive_columns.last().copied(),
        irreducible: s.irreducible,
        cs_value: s.cs_value,
    }
}
