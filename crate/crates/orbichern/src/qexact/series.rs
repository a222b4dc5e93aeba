use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::Rat;
use crate::{Error, Result};

/// Truncated formal power series over Q: the coefficients of `z^0 … z^trunc`.
///
/// Coefficients beyond the truncation order are *undefined* — they are never
/// stored and never assumed zero. Binary operations require both operands to
/// share the same truncation order and error otherwise; nothing re-truncates
/// silently.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    trunc: usize,
    coeffs: Vec<Rat>,
}

impl Series {
    pub fn zero(trunc: usize) -> Self {
        Series {
            trunc,
            coeffs: vec![Rat::zero(); trunc + 1],
        }
    }

    pub fn one(trunc: usize) -> Self {
        Series::constant(trunc, Rat::one())
    }

    pub fn constant(trunc: usize, c: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); trunc + 1];
        coeffs[0] = c;
        Series { trunc, coeffs }
    }

    /// `c·z^k`. Panics if `k > trunc`; such a term has no representation.
    pub fn monomial(trunc: usize, k: usize, c: Rat) -> Self {
        assert!(k <= trunc, "monomial degree {k} exceeds truncation {trunc}");
        let mut coeffs = vec![Rat::zero(); trunc + 1];
        coeffs[k] = c;
        Series { trunc, coeffs }
    }

    /// Builds a series from exactly `trunc + 1` coefficients.
    pub fn from_coeffs(trunc: usize, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != trunc + 1 {
            return Err(Error::SizeMismatch(coeffs.len(), trunc + 1));
        }
        Ok(Series { trunc, coeffs })
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    /// Coefficient of `z^k` for `k ≤ trunc`. Panics beyond the truncation
    /// order — those coefficients do not exist.
    pub fn coeff(&self, k: usize) -> &Rat {
        assert!(k <= self.trunc, "coefficient {k} beyond truncation {}", self.trunc);
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    fn check_trunc(&self, other: &Series) -> Result<()> {
        if self.trunc != other.trunc {
            return Err(Error::TruncMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_trunc(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Series { trunc: self.trunc, coeffs })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_trunc(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Series { trunc: self.trunc, coeffs })
    }

    pub fn neg(&self) -> Series {
        Series {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Series {
        Series {
            trunc: self.trunc,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at the shared order.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_trunc(other)?;
        let n = self.trunc;
        let mut coeffs = vec![Rat::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n + 1 - i).enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += &(a * b);
            }
        }
        Ok(Series { trunc: n, coeffs })
    }

    /// `exp(a)` for a series with zero constant term: `Σ_k a^k / k!`.
    pub fn exp(&self) -> Result<Series> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm { op: "series exp" });
        }
        let n = self.trunc;
        let mut acc = Series::one(n);
        let mut term = Series::one(n);
        for k in 1..=n {
            // term = a^k / k!  (each a^· gains a vanishing constant term, so
            // degrees below k are exact zeros and the loop may stop at n).
            term = term.mul(self)?.scale(&Rat::frac(1, k as i64));
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// `log(a)` for a series with constant term one:
    /// `Σ_k (-1)^{k+1} (a-1)^k / k`.
    pub fn log(&self) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne { op: "series log" });
        }
        let n = self.trunc;
        let u = self.sub(&Series::one(n))?;
        let mut acc = Series::zero(n);
        let mut pw = Series::one(n);
        for k in 1..=n {
            pw = pw.mul(&u)?;
            let c = Rat::frac(if k % 2 == 1 { 1 } else { -1 }, k as i64);
            acc = acc.add(&pw.scale(&c))?;
        }
        Ok(acc)
    }

    /// `a^e = exp(e·log a)` for any exact rational exponent; requires
    /// constant term one.
    pub fn pow_rat(&self, e: &Rat) -> Result<Series> {
        if !self.coeffs[0].is_one() {
            return Err(Error::ConstantTermNotOne { op: "series pow" });
        }
        self.log()?.scale(e).exp()
    }

    /// Euler product `∏_{r≥1} (1 - z^r)^{-a_r}` with exactly the exponents
    /// present in the map (missing r means `a_r = 0`). Keys above the
    /// truncation order contribute nothing and are ignored; a key of zero is
    /// rejected.
    pub fn euler_product(exponents: &BTreeMap<usize, Rat>, trunc: usize) -> Result<Series> {
        let mut acc = Series::one(trunc);
        for (&r, a) in exponents {
            if r == 0 {
                return Err(Error::Invalid("euler_product: exponent index 0".into()));
            }
            if r > trunc || a.is_zero() {
                continue;
            }
            let base = Series::one(trunc).sub(&Series::monomial(trunc, r, Rat::one()))?;
            acc = acc.mul(&base.pow_rat(&-a)?)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "z")?,
                1 => write!(f, "{c}*z")?,
                _ if c.is_one() => write!(f, "z^{k}")?,
                _ => write!(f, "{c}*z^{k}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.trunc + 1)
    }
}

impl Serialize for Series {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Series", 2)?;
        st.serialize_field("trunc", &self.trunc)?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}
