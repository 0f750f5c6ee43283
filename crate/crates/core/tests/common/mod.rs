//! Generators and independent oracles shared by the property suites.
#![allow(dead_code)]

use nnreal::companion::{companion_from_spectrum, is_nonneg_companion, perron_eigenpair, EigenPair};
use nnreal::exact::{gi, int, rat, real, GaussianRational, Polynomial, RatMatrix, Rational};
use nnreal::glue::{smigoc_glue, GlueInput};
use nnreal::spectrum::{partitions, EigenList, JordanForm, Spectrum};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

pub const CASES: u32 = 256;

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

pub fn rational_matrix(rows: usize, cols: usize) -> impl Strategy<Value = RatMatrix> {
    proptest::collection::vec(small_rational(), rows * cols)
        .prop_map(move |v| RatMatrix::new(rows, cols, v).unwrap())
}

pub fn square_matrix(max: usize) -> impl Strategy<Value = RatMatrix> {
    (1..=max).prop_flat_map(|n| rational_matrix(n, n))
}

pub fn matrix_from_ints(rows: &[&[i64]]) -> RatMatrix {
    RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
}

/// An entry of a left half-plane list: a nonpositive real or a pair
/// `-a ± bi` with `a ≥ 0`, `b > 0`, represented by its upper member.
pub fn lhp_item() -> impl Strategy<Value = GaussianRational> {
    prop_oneof![
        (-5i64..=0).prop_map(|r| gi(r, 0)),
        (0i64..=4, 1i64..=5).prop_map(|(a, b)| gi(-a, b)),
    ]
}

/// Values of `items`, each pair expanded to both members.
pub fn expand(items: &[GaussianRational]) -> Vec<GaussianRational> {
    let mut out = Vec::new();
    for z in items {
        out.push(z.clone());
        if !z.im.is_zero() {
            out.push(z.conj());
        }
    }
    out
}

pub fn width(items: &[GaussianRational]) -> usize {
    items.iter().map(|z| if z.im.is_zero() { 1 } else { 2 }).sum()
}

/// `{ρ} ∪ items` with `ρ = -Σ Re + extra`, so the trace is `extra ≥ 0`.
pub fn lhp_list(max_len: usize) -> impl Strategy<Value = EigenList> {
    (proptest::collection::vec(lhp_item(), 0..max_len), 0i64..=8, 1i64..=2).prop_filter_map(
        "too long",
        move |(items, extra, d)| {
            if width(&items) + 1 > max_len {
                return None;
            }
            let mut values = expand(&items);
            let neg_trace: Rational = values.iter().fold(Rational::zero(), |acc, z| acc - &z.re);
            values.push(real(neg_trace + rat(extra, d)));
            Some(EigenList::new(values).unwrap())
        },
    )
}

/// Left half-plane spectrum whose Perron root strictly dominates.
pub fn lhp_spectrum(max_len: usize) -> impl Strategy<Value = Spectrum> {
    (proptest::collection::vec(lhp_item(), 0..max_len), 1i64..=12).prop_filter_map(
        "no strict Perron root",
        move |(items, extra)| {
            if width(&items) + 1 > max_len {
                return None;
            }
            let mut values = expand(&items);
            let neg_trace: Rational = values.iter().fold(Rational::zero(), |acc, z| acc - &z.re);
            values.push(real(neg_trace + int(extra)));
            let s = Spectrum::new(values).ok()?;
            s.is_strictly_dominant().then_some(s)
        },
    )
}

pub fn x_minus(c: &Rational) -> Polynomial {
    Polynomial::new(vec![-c.clone(), Rational::one()])
}

/// `det(xI − M)` by Laplace expansion along the first row.
pub fn cofactor_char_poly(m: &RatMatrix) -> Polynomial {
    let n = m.rows();
    let entries: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut c = vec![-m.get(i, j).clone()];
                    if i == j {
                        c.push(Rational::one());
                    }
                    Polynomial::new(c)
                })
                .collect()
        })
        .collect();
    laplace(&entries)
}

fn laplace(m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one();
    }
    let mut total = Polynomial::zero();
    for j in 0..n {
        let minor: Vec<Vec<Polynomial>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
            .collect();
        let term = &m[0][j] * &laplace(&minor);
        total = if j % 2 == 0 { &total + &term } else { &total - &term };
    }
    total
}

/// Elementary symmetric functions `e₀ … e_n` of `values`, real parts only
/// (the lists are conjugate-closed).
pub fn elementary(values: &[GaussianRational]) -> Vec<Rational> {
    let mut e = vec![GaussianRational::one()];
    for z in values {
        let mut next = e.clone();
        next.push(GaussianRational::zero());
        for k in 1..next.len() {
            next[k] = &e.get(k).cloned().unwrap_or_else(GaussianRational::zero) + &(&e[k - 1] * z);
        }
        e = next;
    }
    e.into_iter().map(|z| z.re).collect()
}

/// Real Jordan matrix of `j`: ordinary blocks for real eigenvalues and
/// `[[a, b], [−b, a]]` blocks coupled by `I₂` for each pair `a ± bi`.
pub fn real_jordan_matrix(j: &JordanForm) -> RatMatrix {
    let mut blocks: Vec<RatMatrix> = Vec::new();
    for (z, parts) in j.blocks() {
        if z.im.is_zero() {
            for &s in parts {
                blocks.push(RatMatrix::from_fn(s, s, |r, c| {
                    if r == c {
                        z.re.clone()
                    } else if c == r + 1 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
            }
        } else if z.im > Rational::zero() {
            for &s in parts {
                blocks.push(RatMatrix::from_fn(2 * s, 2 * s, |r, c| {
                    let (br, bc) = (r / 2, c / 2);
                    let (ir, ic) = (r % 2, c % 2);
                    if br == bc {
                        match (ir, ic) {
                            (0, 0) | (1, 1) => z.re.clone(),
                            (0, 1) => z.im.clone(),
                            _ => -z.im.clone(),
                        }
                    } else if bc == br + 1 && ir == ic {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
            }
        }
    }
    let n = blocks.iter().map(RatMatrix::rows).sum();
    let mut out = RatMatrix::zeros(n, n);
    let mut at = 0;
    for b in &blocks {
        out.paste(at, at, b);
        at += b.rows();
    }
    out
}

/// Boolean reachability through `(I + A)^(n−1)`.
pub fn strongly_connected_by_powers(pattern: &[Vec<bool>]) -> bool {
    let n = pattern.len();
    let mut reach: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j || pattern[i][j]).collect()).collect();
    let step = reach.clone();
    for _ in 1..n.max(1) {
        reach = (0..n)
            .map(|i| (0..n).map(|j| (0..n).any(|k| reach[i][k] && step[k][j])).collect())
            .collect();
    }
    reach.iter().all(|row| row.iter().all(|&b| b))
}

/// A nonnegative companion `top` with positive trace `c`, and a list for
/// `bottom` that contains `c` exactly once.
pub fn glue_case() -> impl Strategy<Value = (EigenList, EigenList)> {
    (lhp_list(5), proptest::collection::vec(lhp_item(), 0..3)).prop_filter_map("unusable", |(top, items)| {
        if !is_nonneg_companion(&top).nonnegative {
            return None;
        }
        let c = top.trace();
        if !c.is_positive() || width(&items) + 1 > 5 {
            return None;
        }
        let mut values = expand(&items);
        values.push(real(c));
        Some((top, EigenList::new(values).unwrap()))
    })
}

pub fn glue(top: &EigenList, bottom: &EigenList) -> (RatMatrix, EigenPair) {
    let c = top.trace();
    let b = companion_from_spectrum(bottom);
    let eigenpair = perron_eigenpair(&b, &c).unwrap();
    let input = GlueInput {
        top: companion_from_spectrum(top).to_matrix(),
        bottom: b.to_matrix(),
        eigenpair: eigenpair.clone(),
    };
    (smigoc_glue(&input).unwrap(), eigenpair)
}

/// Jordan form with distinct real eigenvalues and at most one pair, of
/// total size at most `max`.
pub fn planted_form(max: usize) -> impl Strategy<Value = JordanForm> {
    (
        proptest::collection::btree_set(-3i64..=3, 1..=3),
        proptest::option::of((-2i64..=1, 1i64..=3)),
        proptest::collection::vec(any::<prop::sample::Index>(), 4),
        proptest::collection::vec(1usize..=3, 4),
    )
        .prop_filter_map("too large", move |(reals, pair, picks, sizes)| {
            let mut blocks: Vec<(GaussianRational, Vec<usize>)> = Vec::new();
            let mut total = 0;
            for (i, r) in reals.iter().enumerate() {
                let options = partitions(sizes[i]);
                let part = options[picks[i].index(options.len())].clone();
                total += sizes[i];
                blocks.push((gi(*r, 0), part));
            }
            if let Some((a, b)) = pair {
                let options = partitions(sizes[3].min(2));
                let part = options[picks[3].index(options.len())].clone();
                total += 2 * sizes[3].min(2);
                blocks.push((gi(a, b), part.clone()));
                blocks.push((gi(a, -b), part));
            }
            (total <= max).then(|| JordanForm::new(blocks))
        })
}

/// Unit lower times unit upper triangular: always invertible.
pub fn conjugator(n: usize) -> impl Strategy<Value = RatMatrix> {
    (
        proptest::collection::vec(-2i64..=2, n * n),
        proptest::collection::vec(-2i64..=2, n * n),
    )
        .prop_map(move |(l, u)| {
            let lower = RatMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Equal => Rational::one(),
                std::cmp::Ordering::Greater => int(l[i * n + j]),
                std::cmp::Ordering::Less => Rational::zero(),
            });
            let upper = RatMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Equal => Rational::one(),
                std::cmp::Ordering::Less => int(u[i * n + j]),
                std::cmp::Ordering::Greater => Rational::zero(),
            });
            lower.mul(&upper)
        })
}

pub fn planted(max: usize) -> impl Strategy<Value = (JordanForm, RatMatrix)> {
    planted_form(max).prop_flat_map(|j| {
        let n = j.size();
        (Just(j), conjugator(n))
    })
}

/// Random matrix with all row sums equal to `s`.
pub fn constant_row_sums(max: usize) -> impl Strategy<Value = (RatMatrix, Rational)> {
    (1..=max)
        .prop_flat_map(|n| (rational_matrix(n, n), small_rational()))
        .prop_map(|(m, s)| {
            let n = m.rows();
            let mut out = m.clone();
            for i in 0..n {
                let head = (0..n - 1).fold(Rational::zero(), |acc, j| acc + m.get(i, j));
                out.set(i, n - 1, &s - head);
            }
            (out, s)
        })
}
