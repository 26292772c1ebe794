//! Theorem-verification sweeps over ranges of complete intersections.
//!
//! Every check compares exact rationals. A failed comparison becomes a
//! [`ViolationRecord`]; sweeps never stop early. Instances are evaluated in
//! parallel and merged back in enumeration order, so reports are
//! deterministic.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{binomial, binomial_int, Rational};
use crate::ci::{CompleteIntersection, TwistedGenusQuery};
use crate::oracles::{self, CharacteristicSeries, SeriesLabel};
use crate::query::{self, GenusKind, Oracle};
use crate::{closed, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CheckId {
    #[serde(rename = "todd")]
    Todd,
    #[serde(rename = "chi-k")]
    ChiK,
    #[serde(rename = "ak")]
    Ak,
    #[serde(rename = "ahat")]
    Ahat,
    #[serde(rename = "chi-y")]
    ChiY,
    #[serde(rename = "four-term")]
    FourTerm,
    #[serde(rename = "binomial")]
    Binomial,
    #[serde(rename = "oracles")]
    Oracles,
}

impl CheckId {
    pub const ALL: [CheckId; 8] = [
        CheckId::Todd,
        CheckId::ChiK,
        CheckId::Ak,
        CheckId::Ahat,
        CheckId::ChiY,
        CheckId::FourTerm,
        CheckId::Binomial,
        CheckId::Oracles,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CheckId::Todd => "todd",
            CheckId::ChiK => "chi-k",
            CheckId::Ak => "ak",
            CheckId::Ahat => "ahat",
            CheckId::ChiY => "chi-y",
            CheckId::FourTerm => "four-term",
            CheckId::Binomial => "binomial",
            CheckId::Oracles => "oracles",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown check `{s}`")))
    }
}

/// Ranges swept by the checks. All bounds are inclusive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub n_min: u32,
    pub n_max: u32,
    pub r_max: usize,
    pub d_max: u32,
    /// Levels `N`; every `0 <= k <= N` is checked.
    pub levels: Vec<u32>,
    /// The `k` of the A_k-genera, each `>= 2`.
    pub ak_ks: Vec<u32>,
    /// Multidegree lengths used by the four-term identity.
    pub four_term_r: Vec<usize>,
    pub binomial_a: (i64, i64),
    pub binomial_b: (i64, i64),
    pub binomial_n: (i64, i64),
    pub checks: Vec<CheckId>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            n_min: 1,
            n_max: 8,
            r_max: 3,
            d_max: 6,
            levels: vec![2, 3, 4, 5, 6],
            ak_ks: vec![2, 3, 4],
            four_term_r: vec![3, 4],
            binomial_a: (-10, 15),
            binomial_b: (-10, 15),
            binomial_n: (1, 12),
            checks: CheckId::ALL.to_vec(),
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        if self.n_min < 1 || self.n_min > self.n_max {
            return bad(format!("need 1 <= n_min <= n_max, got {}..={}", self.n_min, self.n_max));
        }
        if self.d_max < 2 {
            return bad(format!("d_max must be >= 2, got {}", self.d_max));
        }
        if self.r_max > closed::MAX_DEGREES || self.four_term_r.iter().any(|&r| r > closed::MAX_DEGREES) {
            return bad(format!("multidegree length is capped at {}", closed::MAX_DEGREES));
        }
        if self.levels.contains(&0) {
            return bad("levels must be >= 1".into());
        }
        if self.ak_ks.iter().any(|&k| k < 2) {
            return bad("A_k sweeps need k >= 2".into());
        }
        if self.four_term_r.iter().any(|&r| r < 3) {
            return bad("the four-term identity needs r >= 3".into());
        }
        Ok(())
    }

    /// Canonical instances: `n` ascending, then `r`, then non-increasing
    /// degree tuples in lexicographic order.
    pub fn intersections(&self) -> Vec<CompleteIntersection> {
        let mut out = Vec::new();
        for n in self.n_min..=self.n_max {
            for r in 0..=self.r_max {
                for degrees in multidegrees(r, self.d_max) {
                    out.push(CompleteIntersection::raw(n, &degrees));
                }
            }
        }
        out
    }

    fn level_pairs(&self) -> Vec<(u32, u32)> {
        self.levels.iter().flat_map(|&level| (0..=level).map(move |k| (k, level))).collect()
    }
}

/// Non-increasing tuples of length `r` with entries in `2..=d_max`, sorted
/// lexicographically.
pub fn multidegrees(r: usize, d_max: u32) -> Vec<Vec<u32>> {
    fn rec(r: usize, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == r {
            out.push(prefix.clone());
            return;
        }
        for d in 2..=cap {
            prefix.push(d);
            rec(r, d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, d_max, &mut Vec::with_capacity(r), &mut out);
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub level: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ak_k: Option<u32>,
    /// Free-form instance description when there is no single `ci`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Params {
    fn level(k: u32, level: u32) -> Self {
        Params { k: Some(k), level: Some(level), ..Default::default() }
    }

    fn ak(k: u32) -> Self {
        Params { ak_k: Some(k), ..Default::default() }
    }

    fn detail(d: String) -> Self {
        Params { detail: Some(d), ..Default::default() }
    }
}

/// A failed exact comparison.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ViolationRecord {
    pub check: CheckId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ci: Option<CompleteIntersection>,
    pub params: Params,
    pub relation: String,
    pub left: Rational,
    pub right: Rational,
}

impl fmt::Display for ViolationRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.check)?;
        if let Some(ci) = &self.ci {
            write!(f, " {ci}")?;
        }
        let p = &self.params;
        if let (Some(k), Some(level)) = (p.k, p.level) {
            write!(f, " k/N={k}/{level}")?;
        }
        if let Some(k) = p.ak_k {
            write!(f, " A_{k}")?;
        }
        if let Some(d) = &p.detail {
            write!(f, " {d}")?;
        }
        write!(f, ": {} fails with left={} right={}", self.relation, self.left, self.right)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub check: CheckId,
    pub instances: usize,
    pub comparisons: usize,
    pub violations: Vec<ViolationRecord>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<10} {:>6} instances {:>8} comparisons {:>4} violations  {}",
            self.check.name(),
            self.instances,
            self.comparisons,
            self.violations.len(),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Per-instance accumulator of comparisons.
struct Tally {
    check: CheckId,
    ci: Option<CompleteIntersection>,
    comparisons: usize,
    violations: Vec<ViolationRecord>,
}

impl Tally {
    fn new(check: CheckId, ci: Option<&CompleteIntersection>) -> Self {
        Tally { check, ci: ci.cloned(), comparisons: 0, violations: Vec::new() }
    }

    fn record(&mut self, ok: bool, params: &Params, relation: &str, left: &Rational, right: &Rational) {
        self.comparisons += 1;
        if !ok {
            self.violations.push(ViolationRecord {
                check: self.check,
                ci: self.ci.clone(),
                params: params.clone(),
                relation: relation.to_string(),
                left: left.clone(),
                right: right.clone(),
            });
        }
    }

    fn eq(&mut self, params: &Params, relation: &str, left: &Rational, right: &Rational) {
        self.record(left == right, params, relation, left, right);
    }

    fn ge(&mut self, params: &Params, relation: &str, left: &Rational, right: &Rational) {
        self.record(left >= right, params, relation, left, right);
    }

    fn holds(&mut self, ok: bool, params: &Params, relation: &str, value: &Rational) {
        self.record(ok, params, relation, value, value);
    }

    /// A computation error is itself a violation.
    fn fail(&mut self, params: &Params, err: &Error) {
        self.record(false, params, &format!("computation error: {err}"), &Rational::zero(), &Rational::zero());
    }
}

fn merge(check: CheckId, tallies: Vec<Tally>) -> SweepReport {
    let instances = tallies.len();
    let mut comparisons = 0;
    let mut violations = Vec::new();
    for t in tallies {
        comparisons += t.comparisons;
        violations.extend(t.violations);
    }
    SweepReport { check, instances, comparisons, violations }
}

fn sign(n: u32) -> Rational {
    Rational::sign_power(n as i64)
}

fn int(v: i64) -> Rational {
    Rational::from(v)
}

/// Lower bound `C(n+1 - a c_1, n+1) + (-1)^n C(n+1 - b c_1, n+1)`.
fn two_term_bound(n: u32, c1: i64, a: &Rational, b: &Rational) -> Rational {
    let top = n as i64 + 1;
    let c1 = int(c1);
    binomial(&(int(top) - a * &c1), top) + sign(n) * binomial(&(int(top) - b * &c1), top)
}

/// Todd genus vanishing theorem and both lower bounds for `c_1 < 0`.
pub fn check_theorem_todd(cfg: &SweepConfig) -> SweepReport {
    let tallies = cfg
        .intersections()
        .par_iter()
        .map(|ci| {
            let mut t = Tally::new(CheckId::Todd, Some(ci));
            let p = Params::default();
            let td = match closed::todd_closed(ci) {
                Ok(v) => v,
                Err(e) => {
                    t.fail(&p, &e);
                    return t;
                }
            };
            let n = ci.dim();
            let c1 = ci.first_chern_coefficient();
            let r = ci.codim() as i64;
            if c1 > 0 {
                t.eq(&p, "c1>0 => Td = 1", &td, &int(1));
            } else if c1 == 0 {
                t.eq(&p, "c1=0 => Td = 1+(-1)^n", &td, &(int(1) + sign(n)));
            } else if r >= 1 {
                let signed = sign(n) * &td;
                t.ge(&p, "c1<0 => (-1)^n Td >= n+r", &signed, &int(n as i64 + r));
                let bound = binomial_int(n as i64 + 1 - c1, n as i64 + 1) + sign(n);
                t.ge(&p, "c1<0 => (-1)^n Td >= C(n+1-c1,n+1)+(-1)^n", &signed, &bound);
            }
            t
        })
        .collect();
    merge(CheckId::Todd, tallies)
}

fn chi_k_instance(ci: &CompleteIntersection, level: u32, t: &mut Tally) -> Result<()> {
    let n = ci.dim();
    let c1 = ci.first_chern_coefficient();
    let values = (0..=level)
        .map(|k| closed::chi_k_closed(&TwistedGenusQuery::new(ci.clone(), k, level)?))
        .collect::<Result<Vec<_>>>()?;
    let todd = closed::todd_closed(ci)?;
    let divisible = c1 % level as i64 == 0;
    for k in 0..=level {
        let p = Params::level(k, level);
        let v = &values[k as usize];
        t.eq(&p, "chi(K^{k/N}) = (-1)^n chi(K^{(N-k)/N})", v, &(sign(n) * &values[(level - k) as usize]));
        if k == 0 {
            t.eq(&p, "chi(K^0) = Td", v, &todd);
        }
        if k == level {
            t.eq(&p, "chi(K) = (-1)^n Td", v, &(sign(n) * &todd));
        }
        if !divisible {
            continue;
        }
        t.holds(v.is_integer(), &p, "N | c1 => chi(K^{k/N}) integral", v);
        if c1 > 0 {
            let expect = if k == 0 {
                int(1)
            } else if k == level {
                sign(n)
            } else {
                int(0)
            };
            t.eq(&p, "c1>0 => chi(K^{k/N}) = 1 / 0 / (-1)^n", v, &expect);
        } else if c1 == 0 {
            t.eq(&p, "c1=0 => chi(K^{k/N}) = 1+(-1)^n", v, &(int(1) + sign(n)));
        } else if ci.codim() >= 1 {
            let frac = Rational::new(k, level);
            let rest = Rational::new(level - k, level);
            if 2 * k >= level {
                let bound = two_term_bound(n, c1, &frac, &rest);
                t.ge(&p, "c1<0, k/N>=1/2 => chi >= C(n+1-(k/N)c1,n+1)+(-1)^n C(n+1-((N-k)/N)c1,n+1)", v, &bound);
            }
            if 2 * k <= level {
                let bound = two_term_bound(n, c1, &rest, &frac);
                let signed = sign(n) * v;
                t.ge(
                    &p,
                    "c1<0, k/N<=1/2 => (-1)^n chi >= C(n+1-((N-k)/N)c1,n+1)+(-1)^n C(n+1-(k/N)c1,n+1)",
                    &signed,
                    &bound,
                );
            }
            if 2 * k == level && n % 2 == 1 {
                t.eq(&p, "c1<0, k/N=1/2, n odd => chi = 0", v, &int(0));
            }
        }
    }
    Ok(())
}

/// Cusp values `χ(X, K^{k/N})`: case values, both half-interval bounds,
/// integrality and the `k <-> N-k` symmetry.
pub fn check_theorem_chi_k(cfg: &SweepConfig) -> SweepReport {
    let tallies = cfg
        .intersections()
        .par_iter()
        .map(|ci| {
            let mut t = Tally::new(CheckId::ChiK, Some(ci));
            for &level in &cfg.levels {
                if let Err(e) = chi_k_instance(ci, level, &mut t) {
                    t.fail(&Params { level: Some(level), ..Default::default() }, &e);
                }
            }
            t
        })
        .collect();
    merge(CheckId::ChiK, tallies)
}

fn ak_instance(ci: &CompleteIntersection, ks: &[u32], t: &mut Tally) -> Result<()> {
    let n = ci.dim();
    let c1 = ci.first_chern_coefficient();
    let knorm = |k: u32| Rational::from(k).pow(n as i32);
    t.eq(&Params::ak(1), "A_1 = Td", &closed::ak_closed(ci, 1)?, &closed::todd_closed(ci)?);
    for &k in ks {
        let p = Params::ak(k);
        let ak = closed::ak_closed(ci, k)?;
        let bridge = knorm(k) * closed::chi_k_fraction(ci, &Rational::new(k - 1, k))?;
        t.eq(&p, "A_k = k^n chi(K^{(k-1)/k})", &ak, &bridge);
        if k == 2 {
            t.eq(&p, "A_2 = 2^n Ahat", &ak, &(knorm(2) * closed::ahat_closed(ci)?));
        }
        if c1 % k as i64 != 0 {
            continue;
        }
        if c1 > 0 {
            t.eq(&p, "c1>0 => A_k = 0", &ak, &int(0));
        } else if c1 == 0 {
            t.eq(&p, "c1=0 => A_k = k^n(1+(-1)^n)", &ak, &(knorm(k) * (int(1) + sign(n))));
        } else if ci.codim() >= 1 {
            let bound = knorm(k) * two_term_bound(n, c1, &Rational::new(k - 1, k), &Rational::new(1, k));
            t.ge(&p, "c1<0 => A_k >= k^n[C(n+1-((k-1)/k)c1,n+1)+(-1)^n C(n+1-c1/k,n+1)]", &ak, &bound);
        }
    }
    Ok(())
}

/// A_k-genus theorem, the cusp-value bridge, `A_2 = 2^n Â` and `A_1 = Td`.
pub fn check_theorem_ak(cfg: &SweepConfig) -> SweepReport {
    let tallies = cfg
        .intersections()
        .par_iter()
        .map(|ci| {
            let mut t = Tally::new(CheckId::Ak, Some(ci));
            if let Err(e) = ak_instance(ci, &cfg.ak_ks, &mut t) {
                t.fail(&Params::default(), &e);
            }
            t
        })
        .collect();
    merge(CheckId::Ak, tallies)
}

/// Â-genus values for even `c_1`.
pub fn check_theorem_ahat(cfg: &SweepConfig) -> SweepReport {
    let tallies = cfg
        .intersections()
        .par_iter()
        .map(|ci| {
            let mut t = Tally::new(CheckId::Ahat, Some(ci));
            let p = Params::default();
            let n = ci.dim();
            let c1 = ci.first_chern_coefficient();
            if c1 % 2 != 0 {
                return t;
            }
            let a = match closed::ahat_closed(ci) {
                Ok(v) => v,
                Err(e) => {
                    t.fail(&p, &e);
                    return t;
                }
            };
            t.holds(a.is_integer(), &p, "c1 even => Ahat integral", &a);
            if c1 > 0 || n % 2 == 1 {
                t.eq(&p, "c1>0 or n odd => Ahat = 0", &a, &int(0));
            } else if c1 == 0 {
                t.eq(&p, "c1=0 => Ahat = 1+(-1)^n", &a, &(int(1) + sign(n)));
            } else if ci.codim() >= 1 {
                let bound = int(2) * binomial_int(n as i64 + 1 - c1 / 2, n as i64 + 1);
                t.ge(&p, "c1<0, n even => Ahat >= 2 C(n+1-c1/2,n+1)", &a, &bound);
            }
            t
        })
        .collect();
    merge(CheckId::Ahat, tallies)
}

fn chi_y_instance(ci: &CompleteIntersection, t: &mut Tally) -> Result<()> {
    let p = Params::default();
    let n = ci.dim();
    let poly = oracles::chi_y_polynomial(ci, 0)?;
    let first = poly.coeffs().iter().find(|c| !c.is_integer()).cloned().unwrap_or_else(Rational::zero);
    t.holds(poly.is_integral(), &p, "chi^p integral", &first);
    for q in 0..=n as usize {
        let mirror = sign(n) * &poly.coeffs()[n as usize - q];
        t.eq(&Params::detail(format!("p={q}")), "chi^p = (-1)^n chi^{n-p}", &poly.coeffs()[q], &mirror);
    }
    t.eq(&p, "chi_0 = Td (genfun)", &poly.eval(&Rational::zero()), &oracles::todd_genfun(ci)?);
    let held_out = Rational::from(n as i64 + 2);
    t.eq(
        &p,
        "interpolated chi_y(n+2) = direct series value",
        &poly.eval(&held_out),
        &oracles::chi_y_value(ci, 0, &held_out)?,
    );
    let euler = poly.eval(&-Rational::one());
    let total = ci.total_degree();
    if total > num_bigint::BigInt::from(2) {
        t.ge(&p, "total degree > 2 => (-1)^n euler >= 0", &(sign(n) * &euler), &int(0));
    }
    let degs = ci.degrees();
    let exceptional = (n == 1 && degs == [3]) || (n % 2 == 1 && degs == [2, 2]);
    if euler.is_zero() {
        t.holds(exceptional, &p, "euler = 0 only for X_1(3) and X_n(2,2), n odd", &euler);
    }
    if exceptional {
        t.eq(&p, "euler(X_1(3)) = euler(X_odd(2,2)) = 0", &euler, &int(0));
    }
    Ok(())
}

/// χ_y polynomial: integrality, duality palindrome, Todd specialization,
/// interpolation hold-out, Euler characteristic sign and vanishing.
pub fn check_chi_y(cfg: &SweepConfig) -> SweepReport {
    let tallies = cfg
        .intersections()
        .par_iter()
        .map(|ci| {
            let mut t = Tally::new(CheckId::ChiY, Some(ci));
            if let Err(e) = chi_y_instance(ci, &mut t) {
                t.fail(&Params::default(), &e);
            }
            t
        })
        .collect();
    merge(CheckId::ChiY, tallies)
}

/// One four-term instance `(n; d_1, d_2, d_3, ...)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FourTermInstance {
    pub n: u32,
    pub degrees: Vec<u32>,
}

impl FourTermInstance {
    /// The four multidegrees `d`, `(d_1+1, d_2-1, d_3, ...)`,
    /// `(d_1, d_2-1+d_3, d_4, ...)` and `(d_2-1, d_1+d_3, d_4, ...)`,
    /// normalized so that a `d_2 - 1 = 1` entry drops out.
    pub fn terms(&self) -> Result<[CompleteIntersection; 4]> {
        let d: Vec<i64> = self.degrees.iter().map(|&x| x as i64).collect();
        if d.len() < 3 || d[1] < 2 {
            return Err(Error::InvalidParameter("four-term identity needs r >= 3 and d_2 >= 2".into()));
        }
        let n = self.n as i64;
        let tail = &d[3..];
        let build = |head: &[i64]| {
            let all: Vec<i64> = head.iter().chain(tail).copied().collect();
            CompleteIntersection::normalize(n, &all)
        };
        Ok([
            build(&d[..3])?,
            build(&[d[0] + 1, d[1] - 1, d[2]])?,
            build(&[d[0], d[1] - 1 + d[2]])?,
            build(&[d[1] - 1, d[0] + d[2]])?,
        ])
    }

    /// Left and right sides of the identity at exponent `t`.
    pub fn sides(&self, t: &Rational) -> Result<(Rational, Rational)> {
        let [a, b, c, d] = self.terms()?;
        let chi = |x: &CompleteIntersection| closed::chi_k_fraction(x, t);
        Ok((chi(&a)? - chi(&b)?, chi(&c)? - chi(&d)?))
    }
}

impl fmt::Display for FourTermInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ds: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        write!(f, "n={}; d={}", self.n, ds.join(","))
    }
}

/// Instances of the four-term identity covered by `cfg`.
pub fn four_term_instances(cfg: &SweepConfig) -> Vec<FourTermInstance> {
    let mut out = Vec::new();
    for n in cfg.n_min..=cfg.n_max {
        for &r in &cfg.four_term_r {
            for degrees in multidegrees(r, cfg.d_max) {
                out.push(FourTermInstance { n, degrees });
            }
        }
    }
    out
}

/// Exact four-term identity between cusp values of related multidegrees.
pub fn check_four_term_identity(cfg: &SweepConfig) -> SweepReport {
    let pairs = cfg.level_pairs();
    let tallies = four_term_instances(cfg)
        .par_iter()
        .map(|inst| {
            let mut t = Tally::new(CheckId::FourTerm, None);
            for &(k, level) in &pairs {
                let p = Params { detail: Some(inst.to_string()), ..Params::level(k, level) };
                match inst.sides(&Rational::new(k, level)) {
                    Ok((lhs, rhs)) => t.eq(
                        &p,
                        "chi(d1,d2,d3,..) - chi(d1+1,d2-1,d3,..) = chi(d1,d2-1+d3,..) - chi(d2-1,d1+d3,..)",
                        &lhs,
                        &rhs,
                    ),
                    Err(e) => t.fail(&p, &e),
                }
            }
            t
        })
        .collect();
    merge(CheckId::FourTerm, tallies)
}

/// `C(a+1,n) + C(b-1,n) >= C(a,n) + C(b,n)` for integers `a >= b`,
/// `a + b >= n - 1`, `n > 0`, with equality when `a + b = n - 1` and `n` odd.
pub fn check_binomial_inequality(a_range: (i64, i64), b_range: (i64, i64), n_range: (i64, i64)) -> SweepReport {
    let a_vals: Vec<i64> = (a_range.0..=a_range.1).collect();
    let tallies = a_vals
        .par_iter()
        .map(|&a| {
            let mut t = Tally::new(CheckId::Binomial, None);
            for b in b_range.0..=b_range.1.min(a) {
                for n in n_range.0.max(1)..=n_range.1 {
                    if a + b < n - 1 {
                        continue;
                    }
                    let p = Params::detail(format!("a={a} b={b} n={n}"));
                    let lhs = binomial_int(a + 1, n) + binomial_int(b - 1, n);
                    let rhs = binomial_int(a, n) + binomial_int(b, n);
                    t.ge(&p, "C(a+1,n)+C(b-1,n) >= C(a,n)+C(b,n)", &lhs, &rhs);
                    let diff = binomial_int(a, n - 1) - binomial_int(b - 1, n - 1);
                    t.eq(&p, "difference = C(a,n-1) - C(b-1,n-1)", &(&lhs - &rhs), &diff);
                    if a + b == n - 1 && n % 2 == 1 {
                        t.eq(&p, "a+b=n-1, n odd => equality", &lhs, &rhs);
                    }
                }
            }
            t
        })
        .collect();
    merge(CheckId::Binomial, tallies)
}

fn series_cache(cfg: &SweepConfig) -> Result<Vec<CharacteristicSeries>> {
    let order = cfg.n_max as usize;
    let mut labels = vec![SeriesLabel::Todd, SeriesLabel::Ahat];
    labels.extend(cfg.ak_ks.iter().map(|&k| SeriesLabel::Ak(k)));
    labels.extend(cfg.level_pairs().into_iter().map(|(k, level)| SeriesLabel::Level { k, level }));
    labels.into_iter().map(|l| oracles::build_q_series(l, order)).collect()
}

fn oracle_instance(
    ci: &CompleteIntersection,
    cfg: &SweepConfig,
    cache: &[CharacteristicSeries],
    t: &mut Tally,
) -> Result<()> {
    let lookup = |label: SeriesLabel| cache.iter().find(|c| c.label == label).expect("cached series");
    let root = |label: SeriesLabel| oracles::genus_chern_root(ci, lookup(label));
    let p = Params::default();
    let n = ci.dim();

    let td = closed::todd_closed(ci)?;
    t.eq(&p, "Td closed = genfun", &td, &oracles::todd_genfun(ci)?);
    t.eq(&p, "Td closed = chern-root", &td, &root(SeriesLabel::Todd)?);
    if ci.codim() > 0 {
        t.eq(&p, "Td closed = recurrence", &td, &closed::todd_recurrence(ci)?);
    }

    let ahat = closed::ahat_closed(ci)?;
    let ahat_root = root(SeriesLabel::Ahat)?;
    t.eq(&p, "Ahat closed = chern-root", &ahat, &ahat_root);
    if n % 2 == 1 {
        t.eq(&p, "n odd => Ahat chern-root = 0", &ahat_root, &int(0));
    }

    for &k in &cfg.ak_ks {
        let p = Params::ak(k);
        let ak = closed::ak_closed(ci, k)?;
        t.eq(&p, "A_k closed = chern-root", &ak, &root(SeriesLabel::Ak(k))?);
        t.eq(&p, "A_k closed = from-todd", &ak, &closed::ak_from_todd(ci, k)?);
        if let Some(v) = query::evaluate(ci, GenusKind::Ak { k }, Oracle::Genfun)? {
            t.eq(&p, "A_k closed = genfun", &ak, &v);
        }
    }

    for (k, level) in cfg.level_pairs() {
        let p = Params::level(k, level);
        let q = TwistedGenusQuery::new(ci.clone(), k, level)?;
        let v = closed::chi_k_closed(&q)?;
        t.eq(&p, "chi(K^{k/N}) closed = chern-root", &v, &root(SeriesLabel::Level { k, level })?);
        if let Some(m) = q.line_bundle_exponent() {
            t.eq(&p, "chi(K^{k/N}) closed = genfun", &v, &oracles::chi_twist_genfun(ci, m)?);
        }
    }
    Ok(())
}

/// Agreement of closed forms, generating functions, Chern-root series and
/// recurrences for Todd, Â, A_k and every configured cusp value.
pub fn check_oracle_agreement(cfg: &SweepConfig) -> SweepReport {
    let cache = match series_cache(cfg) {
        Ok(c) => c,
        Err(e) => {
            let mut t = Tally::new(CheckId::Oracles, None);
            t.fail(&Params::default(), &e);
            return merge(CheckId::Oracles, vec![t]);
        }
    };
    let tallies = cfg
        .intersections()
        .par_iter()
        .map(|ci| {
            let mut t = Tally::new(CheckId::Oracles, Some(ci));
            if let Err(e) = oracle_instance(ci, cfg, &cache, &mut t) {
                t.fail(&Params::default(), &e);
            }
            t
        })
        .collect();
    merge(CheckId::Oracles, tallies)
}

pub fn run_check(cfg: &SweepConfig, check: CheckId) -> SweepReport {
    match check {
        CheckId::Todd => check_theorem_todd(cfg),
        CheckId::ChiK => check_theorem_chi_k(cfg),
        CheckId::Ak => check_theorem_ak(cfg),
        CheckId::Ahat => check_theorem_ahat(cfg),
        CheckId::ChiY => check_chi_y(cfg),
        CheckId::FourTerm => check_four_term_identity(cfg),
        CheckId::Binomial => check_binomial_inequality(cfg.binomial_a, cfg.binomial_b, cfg.binomial_n),
        CheckId::Oracles => check_oracle_agreement(cfg),
    }
}

/// Runs the configured checks in a fixed order.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepReport>> {
    cfg.validate()?;
    let mut checks = cfg.checks.clone();
    checks.sort();
    checks.dedup();
    Ok(checks.into_iter().map(|c| run_check(cfg, c)).collect())
}

#[derive(Serialize)]
struct Metadata<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a SweepConfig,
}

#[derive(Serialize)]
struct SweepDocument<'a> {
    metadata: Metadata<'a>,
    reports: &'a [SweepReport],
}

/// JSON report with a metadata header echoing the configuration.
pub fn sweep_json(cfg: &SweepConfig, reports: &[SweepReport]) -> String {
    let doc = SweepDocument {
        metadata: Metadata { tool: "cigenera", version: env!("CARGO_PKG_VERSION"), config: cfg },
        reports,
    };
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

/// One row of a value table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub n: u32,
    pub r: usize,
    pub degrees: String,
    pub c1: i64,
    pub genus_label: &'static str,
    pub k: Option<u32>,
    #[serde(rename = "N")]
    pub level: Option<u32>,
    pub value: String,
}

/// Genus values over the configured range. For `chi-k` and `ak` the `k`
/// and level of `kind` are ignored and all configured values are emitted.
/// χ_y rows carry the polynomial coefficients joined by `;`.
pub fn table_rows(cfg: &SweepConfig, kind: GenusKind, oracle: Oracle) -> Result<Vec<TableRow>> {
    cfg.validate()?;
    let kinds: Vec<GenusKind> = match kind {
        GenusKind::ChiK { .. } => {
            cfg.level_pairs().into_iter().map(|(k, level)| GenusKind::ChiK { k, level }).collect()
        }
        GenusKind::Ak { .. } => cfg.ak_ks.iter().map(|&k| GenusKind::Ak { k }).collect(),
        other => vec![other],
    };
    let rows: Vec<Vec<TableRow>> = cfg
        .intersections()
        .par_iter()
        .map(|ci| {
            let mut rows = Vec::new();
            for &kind in &kinds {
                let value = if kind == GenusKind::ChiY {
                    let poly = oracles::chi_y_polynomial(ci, 0)?;
                    poly.coeffs().iter().map(Rational::to_string).collect::<Vec<_>>().join(";")
                } else {
                    match query::evaluate(ci, kind, oracle)? {
                        Some(v) => v.to_string(),
                        None => continue,
                    }
                };
                let (k, level) = kind.params();
                rows.push(TableRow {
                    n: ci.dim(),
                    r: ci.codim(),
                    degrees: ci.degrees_joined(";"),
                    c1: ci.first_chern_coefficient(),
                    genus_label: kind.name(),
                    k,
                    level,
                    value,
                });
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    Ok(rows.into_iter().flatten().collect())
}
