//! Dense truncated power series in one variable over [`Rational`].
//!
//! A series of order `m` stores the coefficients of `x^0 ..= x^m`. Binary
//! operations require both operands to share the same order; nothing is
//! ever extended or truncated implicitly.

use std::fmt;

use crate::arith::{binomial, Rational};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        Series { coeffs }
    }

    /// Integer coefficients, zero padded (or cut) to `order`.
    pub fn from_ints(ints: &[i64], order: usize) -> Self {
        let coeffs = (0..=order).map(|i| Rational::from(ints.get(i).copied().unwrap_or(0))).collect();
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![Rational::zero(); order + 1] }
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Series::constant(Rational::one(), order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    /// Coefficient of `x^m`.
    pub fn coefficient(&self, m: i64) -> Result<Rational> {
        if m < 0 || m as usize > self.order() {
            return Err(Error::CoefficientOutOfRange { index: m, order: self.order() });
        }
        Ok(self.coeffs[m as usize].clone())
    }

    fn check_order(&self, other: &Series) -> Result<()> {
        if self.order() != other.order() {
            Err(Error::OrderMismatch(self.order(), other.order()))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Series { coeffs })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(Series { coeffs })
    }

    pub fn neg(&self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_order(other)?;
        let order = self.order();
        let mut coeffs = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Ok(Series { coeffs })
    }

    /// Reciprocal series, defined when the constant term is nonzero.
    pub fn inverse(&self) -> Result<Series> {
        let c0 = self.coeffs[0].recip().ok_or(Error::NotInvertible)?;
        let order = self.order();
        let mut inv: Vec<Rational> = Vec::with_capacity(order + 1);
        inv.push(c0.clone());
        for m in 1..=order {
            let acc: Rational =
                (1..=m).filter(|&i| !self.coeffs[i].is_zero()).map(|i| &self.coeffs[i] * &inv[m - i]).sum();
            inv.push(-(acc * &c0));
        }
        Ok(Series { coeffs: inv })
    }

    /// `e^{a x}` to the given order.
    pub fn exp_linear(a: &Rational, order: usize) -> Series {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Rational::one();
        coeffs.push(term.clone());
        for m in 1..=order {
            term = term * a / Rational::from(m);
            coeffs.push(term.clone());
        }
        Series { coeffs }
    }

    /// `(1 + x)^a` for rational `a`.
    pub fn binomial_power(a: &Rational, order: usize) -> Series {
        let coeffs = (0..=order).map(|m| binomial(a, m as i64)).collect();
        Series { coeffs }
    }

    /// Substitutes `x -> d x`.
    pub fn dilate(&self, d: &Rational) -> Series {
        let mut scale = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                let out = c * &scale;
                scale *= d;
                out
            })
            .collect();
        Series { coeffs }
    }

    /// Integer power by repeated squaring; negative powers invert first.
    pub fn pow_int(&self, e: i64) -> Result<Series> {
        let order = self.order();
        if e == 0 {
            return Ok(Series::one(order));
        }
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Series::one(order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Divides by `x`, dropping one order. The constant term must vanish.
    pub fn divide_by_x(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidParameter("divide_by_x needs a zero constant term".into()));
        }
        if self.order() == 0 {
            return Err(Error::InsufficientOrder { have: 0, need: 1 });
        }
        Ok(Series { coeffs: self.coeffs[1..].to_vec() })
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}
