//! Independent computation routes for genera of complete intersections.
//!
//! Two families live here:
//!
//! - Chern-root evaluation: the tangent bundle of `X_n(d)` is stably
//!   `(n+r+1)γ - Σ γ^{d_i}`, so a multiplicative genus with characteristic
//!   series `Q` equals `[x^n] Q(x)^{n+r+1} Π Q(d_i x)^{-1}` times the total
//!   degree.
//! - Generating functions in `z` whose `z^{n+r}` coefficient is the
//!   (twisted) χ_y-characteristic of `X_n(d)`.
//!
//! The χ_y polynomial is recovered by evaluating its generating function
//! at `y = 0, 1, ..., n+1` and interpolating, so every series stays
//! univariate.

use std::fmt;

use serde::Serialize;

use crate::arith::Rational;
use crate::ci::CompleteIntersection;
use crate::series::Series;
use crate::{Error, GenusValue, Result};

/// Which characteristic power series to build.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeriesLabel {
    /// `x / (1 - e^{-x})`
    Todd,
    /// `k x e^x / (e^{kx} - 1)`
    Ak(u32),
    /// `(x/2) / sinh(x/2)`
    Ahat,
    /// `e^{-(k/N) x} x / (1 - e^{-x})`, the cusp value `χ(-, K^{k/N})`.
    Level { k: u32, level: u32 },
}

impl fmt::Display for SeriesLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesLabel::Todd => write!(f, "todd"),
            SeriesLabel::Ak(k) => write!(f, "A_{k}"),
            SeriesLabel::Ahat => write!(f, "ahat"),
            SeriesLabel::Level { k, level } => write!(f, "chi(K^{k}/{level})"),
        }
    }
}

/// A characteristic power series `Q(x)` with `Q(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacteristicSeries {
    pub label: SeriesLabel,
    q: Series,
}

impl CharacteristicSeries {
    pub fn series(&self) -> &Series {
        &self.q
    }

    pub fn order(&self) -> usize {
        self.q.order()
    }
}

/// `(e^{a x} - 1) / x` at the given order.
fn exp_quotient(a: &Rational, order: usize) -> Result<Series> {
    let e = Series::exp_linear(a, order + 1);
    e.sub(&Series::one(order + 1))?.divide_by_x()
}

/// Expands the characteristic series for `label` to `order`.
pub fn build_q_series(label: SeriesLabel, order: usize) -> Result<CharacteristicSeries> {
    let q = match label {
        // (1 - e^{-x})/x = -(e^{-x} - 1)/x
        SeriesLabel::Todd => exp_quotient(&-Rational::one(), order)?.neg().inverse()?,
        SeriesLabel::Level { k, level } => {
            if level == 0 || k > level {
                return Err(Error::InvalidParameter(format!(
                    "level series needs 0 <= k <= N, N >= 1; got k={k}, N={level}"
                )));
            }
            let todd = build_q_series(SeriesLabel::Todd, order)?.q;
            Series::exp_linear(&-Rational::new(k, level), order).mul(&todd)?
        }
        SeriesLabel::Ak(k) => {
            if k == 0 {
                return Err(Error::InvalidParameter("A_k needs k >= 1".into()));
            }
            // (e^{kx} - 1)/(kx) is the dilation of (e^x - 1)/x by k
            let denom = exp_quotient(&Rational::one(), order)?.dilate(&Rational::from(k));
            denom.inverse()?.mul(&Series::exp_linear(&Rational::one(), order))?
        }
        SeriesLabel::Ahat => {
            let half = Rational::new(1, 2);
            let sinh2 =
                Series::exp_linear(&half, order + 1).sub(&Series::exp_linear(&-half, order + 1))?.divide_by_x()?;
            sinh2.inverse()?
        }
    };
    debug_assert_eq!(q.constant_term(), &Rational::one());
    Ok(CharacteristicSeries { label, q })
}

/// Genus of `ci` for the characteristic series `cs`, by formal Chern roots.
pub fn genus_chern_root(ci: &CompleteIntersection, cs: &CharacteristicSeries) -> Result<GenusValue> {
    genus_chern_root_raw(ci.dim(), ci.degrees(), cs)
}

/// [`genus_chern_root`] on an unnormalized degree tuple.
pub fn genus_chern_root_raw(n: u32, raw_degrees: &[u32], cs: &CharacteristicSeries) -> Result<GenusValue> {
    let n = n as usize;
    if cs.order() < n {
        return Err(Error::InsufficientOrder { have: cs.order(), need: n });
    }
    let q = Series::from_coeffs(cs.q.coeffs()[..=n].to_vec());
    let ambient = n as i64 + raw_degrees.len() as i64 + 1;
    let mut class = q.pow_int(ambient)?;
    let mut total_degree = Rational::one();
    for &d in raw_degrees {
        let d = Rational::from(d);
        class = class.mul(&q.dilate(&d).inverse()?)?;
        total_degree *= &d;
    }
    Ok(class.coefficient(n as i64)? * total_degree)
}

/// `(1 - z)^d` at the given order.
fn one_minus_z_pow(d: i64, order: usize) -> Result<Series> {
    Series::from_ints(&[1, -1], order).pow_int(d)
}

/// `Π (1 - (1 - z)^{d_i})`.
fn hypersurface_factor(degrees: &[u32], order: usize) -> Result<Series> {
    let one = Series::one(order);
    degrees.iter().try_fold(one.clone(), |acc, &d| acc.mul(&one.sub(&one_minus_z_pow(d as i64, order)?)?))
}

/// `χ(X, γ^m)`: the `z^{n+r}` coefficient of `(1-z)^{-(m+1)} Π (1 - (1-z)^{d_i})`.
pub fn chi_twist_genfun(ci: &CompleteIntersection, m: i64) -> Result<GenusValue> {
    chi_twist_genfun_raw(ci.dim(), ci.degrees(), m)
}

/// [`chi_twist_genfun`] on an unnormalized degree tuple.
pub fn chi_twist_genfun_raw(n: u32, raw_degrees: &[u32], m: i64) -> Result<GenusValue> {
    let top = n as usize + raw_degrees.len();
    let f = one_minus_z_pow(-(m + 1), top)?.mul(&hypersurface_factor(raw_degrees, top)?)?;
    f.coefficient(top as i64)
}

/// Todd genus as the `z^{n+r}` coefficient of `(1-z)^{-1} Π (1 - (1-z)^{d_i})`.
pub fn todd_genfun(ci: &CompleteIntersection) -> Result<GenusValue> {
    chi_twist_genfun(ci, 0)
}

/// `χ_y(X, γ^twist)` at one rational `y`, read off its generating function
///
/// `(1+zy)^{m-1} / (1-z)^{m+1} · Π ((1+zy)^d - (1-z)^d) / ((1+zy)^d + y(1-z)^d)`.
///
/// `y = -1` is rejected: the denominators lose their unit constant term.
pub fn chi_y_value(ci: &CompleteIntersection, twist: i64, y: &Rational) -> Result<Rational> {
    if *y == -Rational::one() {
        return Err(Error::InvalidParameter("the χ_y generating function cannot be evaluated at y = -1".into()));
    }
    let top = ci.dim() as usize + ci.codim();
    let mut one_plus_zy = Series::one(top);
    if top > 0 {
        one_plus_zy = Series::from_coeffs(
            std::iter::once(Rational::one())
                .chain(std::iter::once(y.clone()))
                .chain(std::iter::repeat_n(Rational::zero(), top - 1))
                .collect(),
        );
    }
    let mut f = one_plus_zy.pow_int(twist - 1)?.mul(&one_minus_z_pow(-(twist + 1), top)?)?;
    for &d in ci.degrees() {
        let a = one_plus_zy.pow_int(d as i64)?;
        let b = one_minus_z_pow(d as i64, top)?;
        let numer = a.sub(&b)?;
        let denom = a.add(&b.scale(y))?;
        f = f.mul(&numer)?.mul(&denom.inverse()?)?;
    }
    f.coefficient(top as i64)
}

/// Coefficients (lowest degree first) of the unique polynomial of degree
/// `< points.len()` through the given points, by Newton divided differences.
pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Vec<Rational>> {
    let m = points.len();
    let mut dd: Vec<Rational> = points.iter().map(|(_, v)| v.clone()).collect();
    for level in 1..m {
        for i in (level..m).rev() {
            let dx = &points[i].0 - &points[i - level].0;
            let inv = dx.recip().ok_or_else(|| Error::InvalidParameter("repeated interpolation node".into()))?;
            dd[i] = (&dd[i] - &dd[i - 1]) * inv;
        }
    }
    // Horner expansion of the Newton form into monomial coefficients.
    let mut coeffs = vec![Rational::zero(); m.max(1)];
    for i in (0..m).rev() {
        let node = &points[i].0;
        for j in (1..m).rev() {
            let prev = coeffs[j - 1].clone();
            coeffs[j] = prev - node * &coeffs[j];
        }
        coeffs[0] = &dd[i] - node * &coeffs[0];
    }
    Ok(coeffs)
}

/// `χ_y(X, γ^twist) = Σ_p χ^p y^p`, stored lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiYPolynomial {
    pub twist: i64,
    coeffs: Vec<Rational>,
}

impl ChiYPolynomial {
    /// The `χ^p`, `p = 0..=n`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, y: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * y + c)
    }

    /// `χ^p = (-1)^n χ^{n-p}` for all `p`.
    pub fn is_palindromic(&self) -> bool {
        let n = self.dim();
        let sign = Rational::sign_power(n as i64);
        (0..=n).all(|p| self.coeffs[p] == &sign * &self.coeffs[n - p])
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }
}

impl fmt::Display for ChiYPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (p, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            match p {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*y")?,
                _ => write!(f, "{mag}*y^{p}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// χ_y polynomial of the twist `γ^twist`, by evaluation at `y = 0..=n+1`
/// and interpolation.
pub fn chi_y_polynomial(ci: &CompleteIntersection, twist: i64) -> Result<ChiYPolynomial> {
    let n = ci.dim() as usize;
    let points = (0..=n as i64 + 1)
        .map(|y| {
            let y = Rational::from(y);
            let v = chi_y_value(ci, twist, &y)?;
            Ok((y, v))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut coeffs = interpolate(&points)?;
    // n + 2 samples of a degree-n polynomial: the top coefficient must vanish.
    let extra = coeffs.pop().unwrap();
    if !extra.is_zero() {
        return Err(Error::InvalidParameter(format!("χ_y samples of {ci} do not fit a degree-{n} polynomial")));
    }
    Ok(ChiYPolynomial { twist, coeffs })
}

/// Topological Euler characteristic, `χ_{-1}`.
pub fn euler_characteristic(ci: &CompleteIntersection) -> Result<GenusValue> {
    Ok(chi_y_polynomial(ci, 0)?.eval(&-Rational::one()))
}

/// Signature, `χ_1`.
pub fn signature(ci: &CompleteIntersection) -> Result<GenusValue> {
    Ok(chi_y_polynomial(ci, 0)?.eval(&Rational::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed;

    fn ci(s: &str) -> CompleteIntersection {
        s.parse().unwrap()
    }

    fn q(p: i64, r: i64) -> Rational {
        Rational::new(p, r)
    }

    fn int(v: i64) -> Rational {
        Rational::from(v)
    }

    #[test]
    fn todd_series_is_bernoulli() {
        let t = build_q_series(SeriesLabel::Todd, 4).unwrap();
        assert_eq!(t.series().coeffs(), &[q(1, 1), q(1, 2), q(1, 12), q(0, 1), q(-1, 720)]);
    }

    #[test]
    fn ahat_series_is_even() {
        let a = build_q_series(SeriesLabel::Ahat, 6).unwrap();
        assert_eq!(&a.series().coeffs()[..3], &[q(1, 1), q(0, 1), q(-1, 24)]);
        assert!(a.series().coeffs().iter().skip(1).step_by(2).all(Rational::is_zero));
        // 7/5760 is the x^4 coefficient of (x/2)/sinh(x/2)
        assert_eq!(a.series().coeffs()[4], q(7, 5760));
    }

    #[test]
    fn level_zero_matches_todd() {
        let t = build_q_series(SeriesLabel::Todd, 6).unwrap();
        let l = build_q_series(SeriesLabel::Level { k: 0, level: 5 }, 6).unwrap();
        assert_eq!(t.series(), l.series());
    }

    #[test]
    fn a2_series_is_even() {
        let a2 = build_q_series(SeriesLabel::Ak(2), 7).unwrap();
        assert!(a2.series().coeffs().iter().skip(1).step_by(2).all(Rational::is_zero));
    }

    #[test]
    fn invalid_labels() {
        assert!(build_q_series(SeriesLabel::Ak(0), 3).is_err());
        assert!(build_q_series(SeriesLabel::Level { k: 3, level: 2 }, 3).is_err());
        assert!(build_q_series(SeriesLabel::Level { k: 0, level: 0 }, 3).is_err());
    }

    #[test]
    fn chern_root_examples() {
        let todd = build_q_series(SeriesLabel::Todd, 2).unwrap();
        assert_eq!(genus_chern_root(&ci("X2(2,2)"), &todd).unwrap(), int(1));
        let ahat = build_q_series(SeriesLabel::Ahat, 2).unwrap();
        assert_eq!(genus_chern_root(&ci("X2(4)"), &ahat).unwrap(), int(2));
        let lvl = build_q_series(SeriesLabel::Level { k: 1, level: 2 }, 2).unwrap();
        assert_eq!(genus_chern_root(&ci("X2(6)"), &lvl).unwrap(), int(8));
        assert_eq!(genus_chern_root(&ci("X3(6)"), &todd), Err(Error::InsufficientOrder { have: 2, need: 3 }));
        // a longer series is cut to the needed order
        let long = build_q_series(SeriesLabel::Todd, 9).unwrap();
        assert_eq!(genus_chern_root(&ci("X2(2,2)"), &long).unwrap(), int(1));
    }

    #[test]
    fn genfun_examples() {
        assert_eq!(todd_genfun(&ci("X2(3)")).unwrap(), int(1));
        assert_eq!(todd_genfun(&ci("X1(3)")).unwrap(), closed::todd_closed(&ci("X1(3)")).unwrap());
        for n in 1..8 {
            assert_eq!(todd_genfun(&CompleteIntersection::projective_space(n).unwrap()).unwrap(), int(1));
        }
        for s in ["X2(4)", "X3(3,2)", "X1(5)"] {
            assert_eq!(chi_twist_genfun(&ci(s), 0).unwrap(), todd_genfun(&ci(s)).unwrap());
        }
        assert_eq!(chi_twist_genfun(&ci("X2(6)"), 1).unwrap(), int(8));
        assert_eq!(chi_twist_genfun(&ci("X3(5)"), 0).unwrap(), int(0));
    }

    #[test]
    fn chi_twist_on_projective_space() {
        // χ(CP^n, O(m)) = C(n+m, n)
        for n in 1..6i64 {
            let p = CompleteIntersection::projective_space(n as u32).unwrap();
            for m in -8..8i64 {
                let expect = crate::arith::binomial_int(n + m, n);
                assert_eq!(chi_twist_genfun(&p, m).unwrap(), expect, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn chi_y_examples() {
        let x = chi_y_polynomial(&ci("X2(2,2)"), 0).unwrap();
        assert_eq!(x.eval(&int(1)), int(-4));
        assert_eq!(chi_y_polynomial(&ci("X1(3)"), 0).unwrap().eval(&int(-1)), int(0));
        for m in 1..=3u32 {
            let p = CompleteIntersection::projective_space(2 * m).unwrap();
            assert_eq!(signature(&p).unwrap(), int(1));
        }
        assert_eq!(chi_y_polynomial(&ci("X2(4)"), 0).unwrap().eval(&int(0)), int(2));
    }

    #[test]
    fn euler_and_signature_examples() {
        assert_eq!(euler_characteristic(&ci("X1(3)")).unwrap(), int(0));
        assert_eq!(signature(&ci("X2(2)")).unwrap(), int(0));
        assert_eq!(euler_characteristic(&ci("CP2")).unwrap(), int(3));
        // K3 surface: Euler 24, signature -16
        assert_eq!(euler_characteristic(&ci("X2(4)")).unwrap(), int(24));
        assert_eq!(signature(&ci("X2(4)")).unwrap(), int(-16));
        // quintic threefold: Euler -200
        assert_eq!(euler_characteristic(&ci("X3(5)")).unwrap(), int(-200));
    }

    #[test]
    fn chi_y_polynomial_of_projective_plane() {
        let p = chi_y_polynomial(&ci("CP2"), 0).unwrap();
        assert_eq!(p.coeffs(), &[int(1), int(-1), int(1)]);
        assert!(p.is_palindromic());
        assert_eq!(p.to_string(), "1 - 1*y + 1*y^2");
    }

    #[test]
    fn chi_y_rejects_minus_one() {
        assert!(chi_y_value(&ci("X2(3)"), 0, &int(-1)).is_err());
    }

    #[test]
    fn interpolate_recovers_polynomial() {
        // 2 - 3y + y^3/2
        let f = |y: &Rational| int(2) - int(3) * y + y.pow(3) * q(1, 2);
        let pts: Vec<_> = [-2, 0, 1, 5].iter().map(|&y| (int(y), f(&int(y)))).collect();
        assert_eq!(interpolate(&pts).unwrap(), vec![int(2), int(-3), int(0), q(1, 2)]);
        let dup = vec![(int(1), int(1)), (int(1), int(2))];
        assert!(interpolate(&dup).is_err());
    }
}
