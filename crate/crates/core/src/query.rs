//! Single-genus queries dispatched over the available computation routes.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::Rational;
use crate::ci::{CompleteIntersection, TwistedGenusQuery};
use crate::oracles::{self, SeriesLabel};
use crate::{closed, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenusKind {
    Todd,
    Euler,
    Signature,
    ChiY,
    Ahat,
    Ak { k: u32 },
    ChiK { k: u32, level: u32 },
}

impl GenusKind {
    /// Short name used in tables: `todd`, `ak`, `chi-k`, ...
    pub fn name(&self) -> &'static str {
        match self {
            GenusKind::Todd => "todd",
            GenusKind::Euler => "euler",
            GenusKind::Signature => "signature",
            GenusKind::ChiY => "chi-y",
            GenusKind::Ahat => "ahat",
            GenusKind::Ak { .. } => "ak",
            GenusKind::ChiK { .. } => "chi-k",
        }
    }

    /// `(k, N)` columns of a table row; A_k reports its `k` with no level.
    pub fn params(&self) -> (Option<u32>, Option<u32>) {
        match *self {
            GenusKind::Ak { k } => (Some(k), None),
            GenusKind::ChiK { k, level } => (Some(k), Some(level)),
            _ => (None, None),
        }
    }
}

impl fmt::Display for GenusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenusKind::Ak { k } => write!(f, "ak(k={k})"),
            GenusKind::ChiK { k, level } => write!(f, "chi-k(k={k},N={level})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Oracle {
    Closed,
    Recurrence,
    Genfun,
    ChernRoot,
}

impl Oracle {
    pub const ALL: [Oracle; 4] = [Oracle::Closed, Oracle::Recurrence, Oracle::Genfun, Oracle::ChernRoot];

    pub fn name(&self) -> &'static str {
        match self {
            Oracle::Closed => "closed",
            Oracle::Recurrence => "recurrence",
            Oracle::Genfun => "genfun",
            Oracle::ChernRoot => "chern-root",
        }
    }
}

impl fmt::Display for Oracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Oracle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Oracle::ALL.into_iter().find(|o| o.name() == s).ok_or_else(|| Error::Parse(format!("unknown oracle `{s}`")))
    }
}

fn chern_root(ci: &CompleteIntersection, label: SeriesLabel) -> Result<Rational> {
    let cs = oracles::build_q_series(label, ci.dim() as usize)?;
    oracles::genus_chern_root(ci, &cs)
}

/// Evaluates `kind` on `ci` through `oracle`.
///
/// Returns `Ok(None)` when the route does not apply to this genus or
/// instance, e.g. the generating function for a non-integral twist.
/// The χ_y genus has no scalar value; use [`oracles::chi_y_polynomial`].
pub fn evaluate(ci: &CompleteIntersection, kind: GenusKind, oracle: Oracle) -> Result<Option<Rational>> {
    let n = ci.dim();
    let c1 = ci.first_chern_coefficient();
    let value = match (kind, oracle) {
        (GenusKind::Todd, Oracle::Closed) => closed::todd_closed(ci)?,
        (GenusKind::Todd, Oracle::Recurrence) if ci.codim() > 0 => closed::todd_recurrence(ci)?,
        (GenusKind::Todd, Oracle::Genfun) => oracles::todd_genfun(ci)?,
        (GenusKind::Todd, Oracle::ChernRoot) => chern_root(ci, SeriesLabel::Todd)?,

        (GenusKind::Euler, Oracle::Genfun) => oracles::euler_characteristic(ci)?,
        (GenusKind::Signature, Oracle::Genfun) => oracles::signature(ci)?,

        (GenusKind::Ahat, Oracle::Closed) => closed::ahat_closed(ci)?,
        (GenusKind::Ahat, Oracle::Genfun) if c1 % 2 == 0 => oracles::chi_twist_genfun(ci, -c1 / 2)?,
        (GenusKind::Ahat, Oracle::ChernRoot) => chern_root(ci, SeriesLabel::Ahat)?,

        (GenusKind::Ak { k }, Oracle::Closed) => closed::ak_closed(ci, k)?,
        (GenusKind::Ak { k }, Oracle::Recurrence) => closed::ak_from_todd(ci, k)?,
        (GenusKind::Ak { k }, Oracle::Genfun) if k > 0 && c1 % k as i64 == 0 => {
            let m = -c1 / k as i64 * (k as i64 - 1);
            oracles::chi_twist_genfun(ci, m)? * Rational::from(k).pow(n as i32)
        }
        (GenusKind::Ak { k }, Oracle::ChernRoot) => chern_root(ci, SeriesLabel::Ak(k))?,

        (GenusKind::ChiK { k, level }, oracle) => {
            let q = TwistedGenusQuery::new(ci.clone(), k, level)?;
            match oracle {
                Oracle::Closed => closed::chi_k_closed(&q)?,
                Oracle::Genfun => match q.line_bundle_exponent() {
                    Some(m) => oracles::chi_twist_genfun(ci, m)?,
                    None => return Ok(None),
                },
                Oracle::ChernRoot => chern_root(ci, SeriesLabel::Level { k, level })?,
                Oracle::Recurrence => return Ok(None),
            }
        }
        _ => return Ok(None),
    };
    Ok(Some(value))
}

/// Every applicable route, in [`Oracle::ALL`] order.
pub fn evaluate_all(ci: &CompleteIntersection, kind: GenusKind) -> Result<Vec<(Oracle, Rational)>> {
    let mut out = Vec::new();
    for oracle in Oracle::ALL {
        if let Some(v) = evaluate(ci, kind, oracle)? {
            out.push((oracle, v));
        }
    }
    Ok(out)
}

/// The route used when the caller does not pick one.
pub fn default_oracle(kind: GenusKind) -> Oracle {
    match kind {
        GenusKind::Euler | GenusKind::Signature | GenusKind::ChiY => Oracle::Genfun,
        _ => Oracle::Closed,
    }
}
