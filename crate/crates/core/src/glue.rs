//! Gluing two matrices along a shared simple eigenvalue, and the chain
//! form used for sequences of companion matrices.
//!
//! With `top = [A₁ a; bᵀ c]` and `bottom = B` having left and right
//! eigenvectors `t`, `s` at `c` with `tᵀs = 1`, the glue is
//!
//! ```text
//! C = [ A₁    a tᵀ ]
//!     [ s bᵀ  B    ]
//! ```
//!
//! of size `n + m − 1`.

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::companion::{perron_eigenpair, CompanionError, CompanionMatrix, EigenPair};
use crate::exact::{format_rational, RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlueError {
    #[error("CornerMismatch: corner entry is {found}, glue value is {expected}")]
    CornerMismatch { expected: String, found: String },
    #[error("NotSquare: glue operands must be square")]
    NotSquare,
    #[error("EigenpairMismatch: supplied vectors are not eigenvectors of the bottom matrix at {0}")]
    EigenpairMismatch(String),
    #[error("NotSimple: {0} is not a simple eigenvalue of the bottom matrix")]
    NotSimple(String),
    #[error("NotNonnegative: eigenvectors at {0} cannot be chosen nonnegative")]
    NotNonnegative(String),
    #[error("GlueValueNonpositive: glue value {0} is not positive")]
    GlueValueNonpositive(String),
    #[error("ChainShape: {links} links need {expected} glue values, got {found}")]
    ChainShape { links: usize, expected: usize, found: usize },
    #[error("{0}")]
    Eigen(#[from] CompanionError),
    #[error("link {index}: {source}")]
    Link {
        index: usize,
        #[source]
        source: Box<GlueError>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueInput {
    pub top: RatMatrix,
    pub bottom: RatMatrix,
    pub eigenpair: EigenPair,
}

/// Glues `top` and `bottom` along `eigenpair.eigenvalue`, which must be
/// the bottom-right entry of `top`.
pub fn smigoc_glue(input: &GlueInput) -> Result<RatMatrix, GlueError> {
    let GlueInput { top, bottom, eigenpair } = input;
    let n = top.require_square().map_err(|_| GlueError::NotSquare)?;
    let m = bottom.require_square().map_err(|_| GlueError::NotSquare)?;
    let c = &eigenpair.eigenvalue;
    let corner = top.get(n - 1, n - 1);
    if corner != c {
        return Err(GlueError::CornerMismatch {
            expected: format_rational(c),
            found: format_rational(corner),
        });
    }
    if eigenpair.left.len() != m || eigenpair.right.len() != m || !eigenpair.satisfies(bottom) {
        return Err(GlueError::EigenpairMismatch(format_rational(c)));
    }
    let t = &eigenpair.left;
    let s = eigenpair.normalized_right();
    let k = n - 1;
    let mut out = RatMatrix::zeros(k + m, k + m);
    for i in 0..k {
        for j in 0..k {
            out.set(i, j, top.get(i, j).clone());
        }
        let a = top.get(i, n - 1);
        for (j, tj) in t.iter().enumerate() {
            out.set(i, k + j, a * tj);
        }
    }
    for (i, si) in s.iter().enumerate() {
        for j in 0..k {
            out.set(k + i, j, si * top.get(n - 1, j));
        }
    }
    out.paste(k, k, bottom);
    Ok(out)
}

/// Companion links glued top-down; `glue_values[k − 1]` joins link `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueChain {
    pub links: Vec<CompanionMatrix>,
    pub glue_values: Vec<Rational>,
}

impl GlueChain {
    pub fn size(&self) -> usize {
        self.links.iter().map(CompanionMatrix::size).sum::<usize>() + 1 - self.links.len()
    }
}

pub fn glue_chain(chain: &GlueChain) -> Result<RatMatrix, GlueError> {
    let links = chain.links.len();
    if links == 0 || chain.glue_values.len() + 1 != links {
        return Err(GlueError::ChainShape {
            links,
            expected: links.saturating_sub(1),
            found: chain.glue_values.len(),
        });
    }
    let mut acc = chain.links[0].to_matrix();
    for (k, (next, g)) in chain.links[1..].iter().zip(&chain.glue_values).enumerate() {
        let index = k + 1;
        let annotate = |e: GlueError| GlueError::Link {
            index,
            source: Box::new(e),
        };
        if !g.is_positive() {
            return Err(annotate(GlueError::GlueValueNonpositive(format_rational(g))));
        }
        let eigenpair = perron_eigenpair(next, g).map_err(|e| annotate(e.into()))?;
        let input = GlueInput {
            top: acc,
            bottom: next.to_matrix(),
            eigenpair,
        };
        acc = smigoc_glue(&input).map_err(annotate)?;
    }
    Ok(acc)
}

/// Eigenpair of an arbitrary square matrix at a simple eigenvalue, from
/// the nullspaces of `M − cI` and `Mᵀ − cI`. Both vectors are scaled so
/// their first nonzero entry is positive and must then be nonnegative.
pub fn matrix_eigenpair(m: &RatMatrix, c: &Rational) -> Result<EigenPair, GlueError> {
    m.require_square().map_err(|_| GlueError::NotSquare)?;
    let shifted = m.shifted(c);
    let right = single_null_vector(&shifted, c)?;
    let left = single_null_vector(&shifted.transpose(), c)?;
    let normalizer = left.iter().zip(&right).fold(Rational::zero(), |acc, (a, b)| acc + a * b);
    if normalizer.is_zero() {
        return Err(GlueError::NotSimple(format_rational(c)));
    }
    Ok(EigenPair {
        eigenvalue: c.clone(),
        left,
        right,
        normalizer,
    })
}

fn single_null_vector(m: &RatMatrix, c: &Rational) -> Result<Vec<Rational>, GlueError> {
    let mut basis = m.nullspace_basis();
    if basis.len() != 1 {
        return Err(GlueError::NotSimple(format_rational(c)));
    }
    let mut v = basis.pop().expect("one vector");
    if v.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        v = v.into_iter().map(|x| -x).collect();
    }
    if v.iter().any(Signed::is_negative) {
        return Err(GlueError::NotNonnegative(format_rational(c)));
    }
    Ok(v)
}

/// Glue with a general bottom matrix; the eigenpair comes from
/// [`matrix_eigenpair`].
pub fn glue_matrices(top: &RatMatrix, bottom: &RatMatrix) -> Result<RatMatrix, GlueError> {
    let n = top.require_square().map_err(|_| GlueError::NotSquare)?;
    let c = top.get(n - 1, n - 1).clone();
    if !c.is_positive() {
        return Err(GlueError::GlueValueNonpositive(format_rational(&c)));
    }
    let eigenpair = matrix_eigenpair(bottom, &c)?;
    smigoc_glue(&GlueInput {
        top: top.clone(),
        bottom: bottom.clone(),
        eigenpair,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::companion::companion_from_spectrum;
    use crate::exact::{gi, int, Polynomial};
    use crate::spectrum::EigenList;

    fn list(values: &[(i64, i64)]) -> EigenList {
        EigenList::new(values.iter().map(|&(a, b)| gi(a, b))).unwrap()
    }

    #[test]
    fn degenerate_bottom_is_identity_operation() {
        let top = companion_from_spectrum(&list(&[(6, 0), (-1, 3), (-1, -3)])).to_matrix();
        let c = top.get(2, 2).clone();
        let one = CompanionMatrix::from_poly(Polynomial::linear_root(&c)).unwrap();
        let input = GlueInput {
            top: top.clone(),
            bottom: one.to_matrix(),
            eigenpair: perron_eigenpair(&one, &c).unwrap(),
        };
        assert_eq!(smigoc_glue(&input).unwrap(), top);
    }

    #[test]
    fn six_by_six_example() {
        let top = companion_from_spectrum(&list(&[(6, 0), (-1, 3), (-1, -3)]));
        assert_eq!(top.corner(), int(4));
        let bottom = companion_from_spectrum(&list(&[(4, 0), (-2, 0), (-1, 3), (-1, -3)]));
        let c = glue_chain(&GlueChain {
            links: vec![top.clone(), bottom.clone()],
            glue_values: vec![int(4)],
        })
        .unwrap();
        assert_eq!(c.rows(), 6);
        assert!(c.entries().all(|x| !x.is_negative()));
        let expected = list(&[(6, 0), (-2, 0), (-1, 3), (-1, -3), (-1, 3), (-1, -3)]).char_poly();
        assert_eq!(c.char_poly().unwrap(), expected);
        assert_eq!(c.trace(), top.corner() + bottom.corner() - int(4));
    }

    #[test]
    fn chain_errors_carry_link_index() {
        let a = companion_from_spectrum(&list(&[(6, 0), (-1, 3), (-1, -3)]));
        let b = companion_from_spectrum(&list(&[(5, 0), (-2, 0)]));
        let err = glue_chain(&GlueChain {
            links: vec![a.clone(), b],
            glue_values: vec![int(4)],
        })
        .unwrap_err();
        assert!(matches!(err, GlueError::Link { index: 1, .. }));
        let err = glue_chain(&GlueChain {
            links: vec![a],
            glue_values: vec![int(4)],
        })
        .unwrap_err();
        assert!(matches!(err, GlueError::ChainShape { .. }));
    }

    #[test]
    fn corner_mismatch() {
        let top = companion_from_spectrum(&list(&[(6, 0), (-1, 3), (-1, -3)])).to_matrix();
        let b = companion_from_spectrum(&list(&[(5, 0), (-2, 0)]));
        let input = GlueInput {
            top,
            bottom: b.to_matrix(),
            eigenpair: perron_eigenpair(&b, &int(5)).unwrap(),
        };
        assert!(matches!(smigoc_glue(&input), Err(GlueError::CornerMismatch { .. })));
    }

    #[test]
    fn nullspace_eigenpair() {
        let b = RatMatrix::from_rows(vec![vec![int(1), int(2)], vec![int(2), int(1)]]).unwrap();
        let ep = matrix_eigenpair(&b, &int(3)).unwrap();
        assert_eq!(ep.right, vec![int(1), int(1)]);
        assert_eq!(ep.normalizer, int(2));
        assert!(matches!(matrix_eigenpair(&b, &int(-1)), Err(GlueError::NotNonnegative(_))));
        let id = RatMatrix::identity(2);
        assert!(matches!(matrix_eigenpair(&id, &int(1)), Err(GlueError::NotSimple(_))));
    }
}
