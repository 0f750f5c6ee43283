//! Backtracking search for a decomposition whose glued companions have a
//! prescribed Jordan form.
//!
//! A Jordan block (or a conjugate pair of blocks) is one item. Companions
//! are nonderogatory, so a sublist takes at most one item per eigenvalue
//! and the blocks of the result are exactly the items. Sublists are
//! filled one at a time from the Perron anchor onward.

use std::cmp::Reverse;
use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use super::{check_companion, check_glue_value, Decomposition, RealizeError};
use crate::exact::{canonical_cmp, real, GaussianRational, Rational};
use crate::spectrum::{EigenList, JordanForm, Spectrum};

/// Extra test on a candidate `(k, Λ_k, glue value)`.
pub type CandidateFilter = Arc<dyn Fn(usize, &EigenList, Option<&Rational>) -> bool + Send + Sync>;

#[derive(Clone)]
pub struct SearchOptions {
    /// Require a strictly positive last column in every companion.
    pub positive_column: bool,
    /// Give up after this many candidate sublists.
    pub max_examined: u64,
    /// A `false` rejects the candidate before its companion is built.
    pub filter: Option<CandidateFilter>,
}

impl fmt::Debug for SearchOptions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SearchOptions")
            .field("positive_column", &self.positive_column)
            .field("max_examined", &self.max_examined)
            .field("filter", &self.filter.is_some())
            .finish()
    }
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            positive_column: false,
            max_examined: 2_000_000,
            filter: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    /// Candidate sublists whose auxiliary list was tested.
    pub examined: u64,
    /// Search states skipped by the failure memo.
    pub memo_hits: u64,
}

/// Remaining blocks: representative eigenvalue (imaginary part ≥ 0) with
/// its unassigned block sizes, largest first.
type Pool = Vec<(GaussianRational, Vec<usize>)>;

struct Search<'a> {
    opts: &'a SearchOptions,
    stats: SearchStats,
    failed: HashSet<(Pool, Rational, usize)>,
    exhausted: bool,
}

fn pool_of(j: &JordanForm) -> Pool {
    j.blocks()
        .iter()
        .filter(|(z, _)| !z.im.is_negative())
        .cloned()
        .collect()
}

fn take(pool: &Pool, picks: &[(usize, usize)]) -> Pool {
    let mut out = pool.clone();
    for &(i, size) in picks {
        let parts = &mut out[i].1;
        let at = parts.iter().position(|&p| p == size).expect("picked size is available");
        parts.remove(at);
    }
    out.retain(|(_, p)| !p.is_empty());
    out
}

fn to_list(pool: &Pool, picks: &[(usize, usize)]) -> EigenList {
    let mut pairs = Vec::new();
    for &(i, size) in picks {
        let z = &pool[i].0;
        pairs.push((z.clone(), size));
        if !z.im.is_zero() {
            pairs.push((z.conj(), size));
        }
    }
    EigenList::from_pairs(pairs).expect("items are conjugate-closed")
}

impl Search<'_> {
    /// Fills sublists `k, k+1, …` from `pool`. `glue` is `None` only for
    /// the first sublist, which must contain `anchor`.
    fn fill(
        &mut self,
        pool: &Pool,
        k: usize,
        glue: Option<&Rational>,
        anchor: Option<(usize, usize)>,
        chain: &mut Vec<EigenList>,
    ) -> bool {
        if let Some(g) = glue {
            if !g.is_positive() {
                return false;
            }
            // With nothing of positive real part left, later glue values
            // cannot grow, so every remaining entry must already be dominated.
            if pool.iter().all(|(z, _)| !z.re.is_positive()) {
                let g2 = g * g;
                if pool.iter().any(|(z, _)| z.norm_sqr() >= g2) {
                    return false;
                }
            }
            // A filter may depend on the list index, so it joins the key.
            let key = (pool.clone(), g.clone(), if self.opts.filter.is_some() { k } else { 0 });
            if self.failed.contains(&key) {
                self.stats.memo_hits += 1;
                return false;
            }
            if self.choose(pool, k, glue, anchor, chain) {
                return true;
            }
            if !self.exhausted {
                self.failed.insert(key);
            }
            false
        } else {
            self.choose(pool, k, glue, anchor, chain)
        }
    }

    fn choose(
        &mut self,
        pool: &Pool,
        k: usize,
        glue: Option<&Rational>,
        anchor: Option<(usize, usize)>,
        chain: &mut Vec<EigenList>,
    ) -> bool {
        // Largest available block first, eigenvalue order breaking ties.
        let mut order: Vec<usize> = (0..pool.len()).filter(|&i| Some(i) != anchor.map(|a| a.0)).collect();
        order.sort_by(|&a, &b| {
            Reverse(pool[a].1[0])
                .cmp(&Reverse(pool[b].1[0]))
                .then_with(|| canonical_cmp(&pool[a].0, &pool[b].0))
        });
        let g2 = glue.map(|g| g * g);
        let g_value = glue.map(|g| real(g.clone()));
        // Entries that the glue value cannot dominate never join this list.
        order.retain(|&i| match &g2 {
            Some(g2) => pool[i].0.norm_sqr() < *g2 && Some(&pool[i].0) != g_value.as_ref(),
            None => true,
        });
        let mut picks: Vec<(usize, usize)> = anchor.into_iter().collect();
        self.pick(pool, &order, 0, &mut picks, k, glue, chain)
    }

    #[allow(clippy::too_many_arguments)]
    fn pick(
        &mut self,
        pool: &Pool,
        order: &[usize],
        depth: usize,
        picks: &mut Vec<(usize, usize)>,
        k: usize,
        glue: Option<&Rational>,
        chain: &mut Vec<EigenList>,
    ) -> bool {
        if self.exhausted {
            return false;
        }
        if depth == order.len() {
            return !picks.is_empty() && self.try_candidate(pool, picks, k, glue, chain);
        }
        let i = order[depth];
        let mut sizes = pool[i].1.clone();
        sizes.dedup();
        for size in sizes {
            picks.push((i, size));
            if self.pick(pool, order, depth + 1, picks, k, glue, chain) {
                return true;
            }
            picks.pop();
        }
        self.pick(pool, order, depth + 1, picks, k, glue, chain)
    }

    fn try_candidate(
        &mut self,
        pool: &Pool,
        picks: &[(usize, usize)],
        k: usize,
        glue: Option<&Rational>,
        chain: &mut Vec<EigenList>,
    ) -> bool {
        if self.stats.examined >= self.opts.max_examined {
            self.exhausted = true;
            return false;
        }
        self.stats.examined += 1;
        let lambda = to_list(pool, picks);
        if let Some(filter) = &self.opts.filter {
            if !filter(k, &lambda, glue) {
                return false;
            }
        }
        let gamma = match glue {
            Some(g) => {
                if check_glue_value(g, &lambda, k).is_err() {
                    return false;
                }
                lambda.with_real(g, 1)
            }
            None => lambda.clone(),
        };
        if check_companion(&gamma, k, self.opts.positive_column).is_err() {
            return false;
        }
        let rest = take(pool, picks);
        chain.push(lambda);
        if rest.is_empty() {
            return true;
        }
        let next = gamma.trace();
        if self.fill(&rest, k + 1, Some(&next), None, chain) {
            return true;
        }
        chain.pop();
        false
    }
}

/// First decomposition in canonical order whose induced Jordan form is `j`.
pub fn find_decomposition(
    spec: &Spectrum,
    j: &JordanForm,
    opts: &SearchOptions,
) -> Result<(Decomposition, SearchStats), RealizeError> {
    j.validate(spec.list())
        .map_err(|e| RealizeError::InvalidJordanForm(e.to_string().replace("InvalidJordanForm: ", "")))?;
    let pool = pool_of(j);
    let perron = real(spec.perron().clone());
    let anchor_index = pool.iter().position(|(z, _)| *z == perron).expect("perron is an entry");
    let anchor = (anchor_index, pool[anchor_index].1[0]);
    let mut search = Search {
        opts,
        stats: SearchStats::default(),
        failed: HashSet::new(),
        exhausted: false,
    };
    let mut chain = Vec::new();
    if search.fill(&pool, 1, None, Some(anchor), &mut chain) {
        let d = super::build_aux_chain_with(chain, opts.positive_column)?;
        debug_assert_eq!(&d.induced_jordan(), j);
        return Ok((d, search.stats));
    }
    Err(RealizeError::NotFound {
        examined: search.stats.examined,
        exhausted_budget: search.exhausted,
    })
}
