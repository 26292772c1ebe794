//! Complete intersections `X_n(d_1, ..., d_r)` in `CP^{n+r}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::arith::Rational;
use crate::{Error, Result};

/// Dimension plus normalized multidegree.
///
/// Degrees are at least 2 and sorted descending; an empty multidegree is
/// projective space `CP^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CompleteIntersection {
    n: u32,
    degrees: Vec<u32>,
}

impl CompleteIntersection {
    /// Drops degree-1 entries and sorts the rest descending.
    pub fn normalize(n: i64, raw_degrees: &[i64]) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidIntersection(format!("dimension must be >= 1, got {n}")));
        }
        let n = u32::try_from(n).map_err(|_| Error::InvalidIntersection(format!("dimension {n} too large")))?;
        let mut degrees = Vec::with_capacity(raw_degrees.len());
        for &d in raw_degrees {
            if d < 1 {
                return Err(Error::InvalidIntersection(format!("degree must be >= 1, got {d}")));
            }
            let d = u32::try_from(d).map_err(|_| Error::InvalidIntersection(format!("degree {d} too large")))?;
            if d > 1 {
                degrees.push(d);
            }
        }
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CompleteIntersection { n, degrees })
    }

    /// Already-normalized constructor for internal loops; also admits `n = 0`.
    pub(crate) fn raw(n: u32, degrees: &[u32]) -> Self {
        let mut degrees: Vec<u32> = degrees.iter().copied().filter(|&d| d > 1).collect();
        degrees.sort_unstable_by(|a, b| b.cmp(a));
        CompleteIntersection { n, degrees }
    }

    pub fn projective_space(n: u32) -> Result<Self> {
        Self::normalize(n as i64, &[])
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    /// Number of defining hypersurfaces `r`.
    pub fn codim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree_sum(&self) -> i64 {
        self.degrees.iter().map(|&d| d as i64).sum()
    }

    /// Coefficient `c_1 = n + r + 1 - Σ d_i` of the first Chern class.
    pub fn first_chern_coefficient(&self) -> i64 {
        self.n as i64 + self.codim() as i64 + 1 - self.degree_sum()
    }

    /// Product of the degrees, equal to `x^n [X]`.
    pub fn total_degree(&self) -> BigInt {
        self.degrees.iter().map(|&d| BigInt::from(d)).product()
    }

    /// Same multidegree in another dimension.
    pub(crate) fn with_dim(&self, n: u32) -> Self {
        CompleteIntersection { n, degrees: self.degrees.clone() }
    }

    /// Compact `Xn(d1,...,dr)` form.
    pub fn label(&self) -> String {
        self.to_string()
    }

    /// Degrees joined with `;`, as used in CSV output.
    pub fn degrees_joined(&self, sep: &str) -> String {
        self.degrees.iter().map(u32::to_string).collect::<Vec<_>>().join(sep)
    }
}

impl fmt::Display for CompleteIntersection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}({})", self.n, self.degrees_joined(","))
    }
}

impl fmt::Debug for CompleteIntersection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for CompleteIntersection {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("invalid degree `{}`", t.trim()))))
        .collect()
}

/// Accepts `X3(5,2,2)`, `X_3(5,2,2)`, `CP3` and `n=3 d=5,2,2`.
impl FromStr for CompleteIntersection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_dim = |t: &str| {
            t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("invalid dimension `{}` in `{s}`", t.trim())))
        };
        if let Some(rest) = s.strip_prefix("CP") {
            return Self::normalize(parse_dim(rest)?, &[]);
        }
        if let Some(rest) = s.strip_prefix('X') {
            let rest = rest.strip_prefix('_').unwrap_or(rest);
            return match rest.split_once('(') {
                Some((dim, tail)) => {
                    let inner = tail.strip_suffix(')').ok_or_else(|| Error::Parse(format!("missing `)` in `{s}`")))?;
                    Self::normalize(parse_dim(dim)?, &parse_int_list(inner)?)
                }
                None => Self::normalize(parse_dim(rest)?, &[]),
            };
        }
        if s.starts_with("n=") {
            let mut n = None;
            let mut degrees = Vec::new();
            for tok in s.split_whitespace() {
                match tok.split_once('=') {
                    Some(("n", v)) => n = Some(parse_dim(v)?),
                    Some(("d", v)) => degrees = parse_int_list(v)?,
                    _ => return Err(Error::Parse(format!("unexpected token `{tok}` in `{s}`"))),
                }
            }
            let n = n.ok_or_else(|| Error::Parse(format!("missing n= in `{s}`")))?;
            return Self::normalize(n, &degrees);
        }
        Err(Error::Parse(format!(
            "cannot parse complete intersection `{s}` (expected e.g. X3(5,2,2) or `n=3 d=5,2,2`)"
        )))
    }
}

/// A cusp value query `χ(X, K^{k/N})` with `0 <= k <= N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwistedGenusQuery {
    pub ci: CompleteIntersection,
    k: u32,
    level: u32,
}

impl TwistedGenusQuery {
    pub fn new(ci: CompleteIntersection, k: u32, level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidParameter("level N must be >= 1".into()));
        }
        if k > level {
            return Err(Error::InvalidParameter(format!("need 0 <= k <= N, got k={k}, N={level}")));
        }
        Ok(TwistedGenusQuery { ci, k, level })
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// The exponent `k/N`.
    pub fn fraction(&self) -> Rational {
        Rational::new(self.k, self.level)
    }

    /// `N | c_1`, the condition for an integral twist.
    pub fn is_integral_twist(&self) -> bool {
        self.ci.first_chern_coefficient() % self.level as i64 == 0
    }

    /// The line-bundle exponent `m` with `K^{k/N} = γ^m`, when integral.
    pub fn line_bundle_exponent(&self) -> Option<i64> {
        let num = -self.ci.first_chern_coefficient() * self.k as i64;
        (num % self.level as i64 == 0).then(|| num / self.level as i64)
    }
}
