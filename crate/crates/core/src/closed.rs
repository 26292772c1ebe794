//! Closed binomial-sum formulas for genera of complete intersections.
//!
//! All formulas share one shape: a signed sum over subsets `S` of the
//! multidegree of `C(shift - 1 + Σ_{i∈S} d_i, n + r)`. The sums over
//! subsets are enumerated with a bitmask, so `r` is capped at
//! [`MAX_DEGREES`].

use crate::arith::{binomial, Rational};
use crate::ci::{CompleteIntersection, TwistedGenusQuery};
use crate::{Error, GenusValue, Result};

/// Largest multidegree length accepted by the subset sums.
pub const MAX_DEGREES: usize = 20;

/// `(Σ_{i∈S} d_i, |S|)` for every subset `S`, indexed by bitmask.
fn subset_sums(degrees: &[u32]) -> Result<Vec<(i64, usize)>> {
    let r = degrees.len();
    if r > MAX_DEGREES {
        return Err(Error::TooManyDegrees(r));
    }
    let mut out = vec![(0i64, 0usize); 1 << r];
    for mask in 1usize..(1 << r) {
        let low = mask.trailing_zeros() as usize;
        let (s, c) = out[mask & (mask - 1)];
        out[mask] = (s + degrees[low] as i64, c + 1);
    }
    Ok(out)
}

/// `Σ_S (-1)^{n+r+|S|} C(shift - 1 + d_S, n+r)`, the common kernel of the
/// Todd and twisted Euler-Poincaré formulas. Admits `n = 0`.
fn signed_subset_sum(n: u32, degrees: &[u32], shift: &Rational) -> Result<Rational> {
    let r = degrees.len();
    let top = n as i64 + r as i64;
    let base = shift - Rational::one();
    let total = subset_sums(degrees)?
        .into_iter()
        .map(|(ds, size)| {
            let term = binomial(&(&base + Rational::from(ds)), top);
            if (top + size as i64) % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    Ok(total)
}

/// Todd genus from the alternating binomial sum over subsets of degrees.
pub fn todd_closed(ci: &CompleteIntersection) -> Result<GenusValue> {
    signed_subset_sum(ci.dim(), ci.degrees(), &Rational::zero())
}

/// `χ(X, K^t)` for an arbitrary rational exponent `t`.
///
/// For `N ∤ c_1` this is the formal genus and may be non-integral.
pub fn chi_k_fraction(ci: &CompleteIntersection, t: &Rational) -> Result<GenusValue> {
    let shift = t * Rational::from(ci.first_chern_coefficient());
    signed_subset_sum(ci.dim(), ci.degrees(), &shift)
}

/// `χ(X, K^t)` evaluated directly on an unnormalized degree tuple, which may
/// contain 1's. Agrees with [`chi_k_fraction`] on the normalized intersection.
pub fn chi_k_raw(n: u32, raw_degrees: &[u32], t: &Rational) -> Result<GenusValue> {
    let c1 = n as i64 + raw_degrees.len() as i64 + 1 - raw_degrees.iter().map(|&d| d as i64).sum::<i64>();
    signed_subset_sum(n, raw_degrees, &(t * Rational::from(c1)))
}

/// Cusp value `χ(X, K^{k/N})` of the level-N elliptic genus.
pub fn chi_k_closed(q: &TwistedGenusQuery) -> Result<GenusValue> {
    chi_k_fraction(&q.ci, &q.fraction())
}

/// Â-genus, i.e. `χ(X, K^{1/2})`.
pub fn ahat_closed(ci: &CompleteIntersection) -> Result<GenusValue> {
    chi_k_fraction(ci, &Rational::new(1, 2))
}

/// A_k-genus `k^n Σ_S (-1)^{r-|S|} C(c_1/k - 1 + d_S, n+r)`; `k = 1` gives Todd.
pub fn ak_closed(ci: &CompleteIntersection, k: u32) -> Result<GenusValue> {
    if k == 0 {
        return Err(Error::InvalidParameter("A_k needs k >= 1".into()));
    }
    let r = ci.codim();
    let top = ci.dim() as i64 + r as i64;
    let base = Rational::new(ci.first_chern_coefficient(), k) - Rational::one();
    let sum: Rational = subset_sums(ci.degrees())?
        .into_iter()
        .map(|(ds, size)| {
            let term = binomial(&(&base + Rational::from(ds)), top);
            if (r - size).is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum();
    Ok(sum * Rational::from(k).pow(ci.dim() as i32))
}

/// Todd genera `Td(X_l(d))` for `l = 0..=n` by peeling off the last degree:
/// `Td(X_l(d)) = Σ_{j≤l} (-1)^{l-j} C(d_r, l-j+1) Td(X_j(d without d_r))`.
fn todd_by_recurrence(n: u32, degrees: &[u32]) -> Vec<Rational> {
    let Some((&last, rest)) = degrees.split_last() else {
        return vec![Rational::one(); n as usize + 1];
    };
    let lower = todd_by_recurrence(n, rest);
    let weights: Vec<Rational> = (0..=n as i64 + 1).map(|m| binomial(&Rational::from(last), m)).collect();
    (0..=n as usize)
        .map(|l| {
            (0..=l)
                .map(|j| {
                    let t = &weights[l - j + 1] * &lower[j];
                    if (l - j) % 2 == 0 {
                        t
                    } else {
                        -t
                    }
                })
                .sum()
        })
        .collect()
}

/// Todd genus via the degree recurrence; needs at least one degree.
pub fn todd_recurrence(ci: &CompleteIntersection) -> Result<GenusValue> {
    if ci.codim() == 0 {
        return Err(Error::InvalidParameter("todd_recurrence needs at least one degree >= 2".into()));
    }
    Ok(todd_by_recurrence(ci.dim(), ci.degrees()).pop().unwrap())
}

/// A_k-genus from Todd genera of the same multidegree in dimensions `0..=n`:
/// `k^n Σ_l C(c_1/k, n-l) (-1)^l Td(X_l(d))`.
///
/// `c_1` here is that of `X_n`, not of the lower-dimensional `X_l`.
pub fn ak_from_todd(ci: &CompleteIntersection, k: u32) -> Result<GenusValue> {
    if k == 0 {
        return Err(Error::InvalidParameter("A_k needs k >= 1".into()));
    }
    let n = ci.dim();
    let ratio = Rational::new(ci.first_chern_coefficient(), k);
    let mut sum = Rational::zero();
    for l in 0..=n {
        let td = todd_at_dim(ci, l)?;
        let term = binomial(&ratio, (n - l) as i64) * td;
        if l % 2 == 0 {
            sum += term;
        } else {
            sum -= &term;
        }
    }
    Ok(sum * Rational::from(k).pow(n as i32))
}

/// Todd genus `Td(X_l(d))` at an intermediate dimension, `l = 0` allowed.
pub(crate) fn todd_at_dim(ci: &CompleteIntersection, l: u32) -> Result<GenusValue> {
    todd_closed(&ci.with_dim(l))
}
