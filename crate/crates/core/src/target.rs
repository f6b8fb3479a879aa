//! Requested spectra and the text literals used to write them down.
//!
//! A literal is a comma-separated list of values, each optionally followed
//! by `^k` for multiplicity `k`: `-2^3,6` or `-3/2,-1/2,1^2`. Integers,
//! decimals and fractions are kept as exact rationals; anything else that
//! parses as a float (`1e-3`, `1.4142135623730951e0`) is kept approximately.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectra::{Oml, Spectrum};

pub type Rational = Ratio<i128>;

/// Absolute tolerance for comparisons involving inexact values.
pub const APPROX_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug)]
pub struct Value {
    approx: f64,
    exact: Option<Rational>,
}

impl Value {
    pub fn exact(r: Rational) -> Self {
        Value {
            approx: r.to_f64().unwrap_or(f64::NAN),
            exact: Some(r),
        }
    }

    pub fn int(i: i64) -> Self {
        Value::exact(Rational::from_integer(i128::from(i)))
    }

    pub fn approx(x: f64) -> Self {
        Value { approx: x, exact: None }
    }

    pub fn as_f64(&self) -> f64 {
        self.approx
    }

    pub fn as_exact(&self) -> Option<Rational> {
        self.exact
    }

    pub fn is_zero(&self) -> bool {
        match self.exact {
            Some(r) => r.is_zero(),
            None => self.approx.abs() <= APPROX_TOL,
        }
    }

    pub fn neg(&self) -> Value {
        Value {
            approx: -self.approx,
            exact: self.exact.map(|r| -r),
        }
    }

    fn same(&self, other: &Value, tol: f64) -> bool {
        match (self.exact, other.exact) {
            (Some(a), Some(b)) => a == b,
            _ => (self.approx - other.approx).abs() <= tol,
        }
    }

    fn cmp_approx(&self, other: &Value) -> Ordering {
        match (self.exact, other.exact) {
            (Some(a), Some(b)) => a.cmp(&b),
            _ => self.approx.total_cmp(&other.approx),
        }
    }
}

impl PartialEq for Value {
    fn eq(&self, other: &Self) -> bool {
        match (self.exact, other.exact) {
            (Some(a), Some(b)) => a == b,
            (None, None) => self.approx == other.approx,
            _ => false,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact {
            Some(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Some(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            None => write!(f, "{:e}", self.approx),
        }
    }
}

fn parse_value(s: &str, offset: usize) -> Result<Value> {
    let t = s.trim();
    let bad = || Error::parse(offset, format!("`{t}` is not a number"));
    if t.is_empty() {
        return Err(Error::parse(offset, "empty value"));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n: i128 = num.trim().parse().map_err(|_| bad())?;
        let d: i128 = den.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(Error::parse(offset, "zero denominator"));
        }
        return Ok(Value::exact(Rational::new(n, d)));
    }
    if let Some(r) = parse_decimal(t) {
        return Ok(Value::exact(r));
    }
    let x: f64 = t.parse().map_err(|_| bad())?;
    if !x.is_finite() {
        return Err(Error::parse(offset, format!("`{t}` is not finite")));
    }
    Ok(Value::approx(x))
}

/// `[-+]digits[.digits]` as an exact rational, if it fits.
fn parse_decimal(t: &str) -> Option<Rational> {
    let (neg, body) = match t.as_bytes().first()? {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let numer: i128 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let denom = 10i128.checked_pow(u32::try_from(frac.len()).ok()?)?;
    let r = Rational::new(numer, denom);
    Some(if neg { -r } else { r })
}

/// A multiset of reals, stored as distinct values (ascending) with
/// multiplicities.
#[derive(Clone, Debug, PartialEq)]
pub struct TargetSpectrum {
    values: Vec<(Value, usize)>,
}

impl TargetSpectrum {
    /// Merges equal values and sorts.
    pub fn new(items: Vec<(Value, usize)>) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::param("a spectrum needs at least one value"));
        }
        if items.iter().any(|&(_, m)| m == 0) {
            return Err(Error::param("multiplicities must be positive"));
        }
        if items.iter().any(|(v, _)| !v.approx.is_finite()) {
            return Err(Error::param("values must be finite"));
        }
        let mut items = items;
        items.sort_by(|a, b| a.0.cmp_approx(&b.0));
        let mut values: Vec<(Value, usize)> = Vec::new();
        for (v, m) in items {
            match values.last_mut() {
                Some((w, k)) if w.same(&v, 0.0) => *k += m,
                _ => values.push((v, m)),
            }
        }
        Ok(TargetSpectrum { values })
    }

    pub fn from_f64(xs: &[f64]) -> Result<Self> {
        TargetSpectrum::new(xs.iter().map(|&x| (Value::approx(x), 1)).collect())
    }

    pub fn from_spectrum(s: &Spectrum) -> Self {
        TargetSpectrum {
            values: s.values.iter().map(|&(v, m)| (Value::approx(v), m)).collect(),
        }
    }

    pub fn values(&self) -> &[(Value, usize)] {
        &self.values
    }

    pub fn order(&self) -> usize {
        self.values.iter().map(|&(_, m)| m).sum()
    }

    pub fn distinct(&self) -> usize {
        self.values.len()
    }

    pub fn oml(&self) -> Oml {
        Oml(self.values.iter().map(|&(_, m)| m).collect())
    }

    /// Ascending, repeated by multiplicity.
    pub fn expanded(&self) -> Vec<f64> {
        self.values
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat_n(v.approx, m))
            .collect()
    }

    pub fn expanded_values(&self) -> Vec<Value> {
        self.values
            .iter()
            .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
            .collect()
    }

    pub fn zero_multiplicity(&self) -> usize {
        self.values
            .iter()
            .find(|(v, _)| v.is_zero())
            .map_or(0, |&(_, m)| m)
    }

    pub fn nonzero_count(&self) -> usize {
        self.order() - self.zero_multiplicity()
    }

    pub fn is_simple(&self) -> bool {
        self.values.iter().all(|&(_, m)| m == 1)
    }

    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0, |r, (v, _)| r.max(v.approx.abs()))
    }

    /// `Σ m·μ` exactly, when every value is exact and nothing overflows.
    pub fn trace_exact(&self) -> Option<Rational> {
        self.values.iter().try_fold(Rational::zero(), |acc, &(v, m)| {
            let term = v.exact?.checked_mul(&Rational::from_integer(m as i128))?;
            acc.checked_add(&term)
        })
    }

    pub fn trace_approx(&self) -> f64 {
        self.values.iter().map(|&(v, m)| v.approx * m as f64).sum()
    }

    /// Whether the eigenvalue sum is zero: exactly for rational targets,
    /// otherwise within `APPROX_TOL` relative to the absolute sum.
    pub fn satisfies_trace(&self) -> bool {
        match self.trace_exact() {
            Some(t) => t.is_zero(),
            None => {
                let scale: f64 = self.values.iter().map(|&(v, m)| v.approx.abs() * m as f64).sum();
                self.trace_approx().abs() <= APPROX_TOL * scale.max(1.0)
            }
        }
    }

    /// Whether the multiset equals its negation.
    pub fn is_symmetric(&self) -> bool {
        let q = self.values.len();
        (0..q).all(|i| {
            let (a, ma) = self.values[i];
            let (b, mb) = self.values[q - 1 - i];
            ma == mb && a.same(&b.neg(), APPROX_TOL * self.spectral_radius().max(1.0))
        })
    }

    /// Multiplies every value by `s`.
    pub fn scaled(&self, s: Value) -> TargetSpectrum {
        let items = self
            .values
            .iter()
            .map(|&(v, m)| {
                let exact = match (v.exact, s.exact) {
                    (Some(a), Some(b)) => a.checked_mul(&b),
                    _ => None,
                };
                let value = match exact {
                    Some(r) => Value::exact(r),
                    None => Value::approx(v.approx * s.approx),
                };
                (value, m)
            })
            .collect();
        TargetSpectrum::new(items).expect("scaling keeps the spectrum valid")
    }

    pub fn is_positive_at(&self, i: usize) -> bool {
        match self.values[i].0.exact {
            Some(r) => r.is_positive(),
            None => self.values[i].0.approx > 0.0,
        }
    }
}

impl fmt::Display for TargetSpectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(v, m)| if *m == 1 { v.to_string() } else { format!("{v}^{m}") })
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for TargetSpectrum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut items = Vec::new();
        let mut offset = 0;
        for part in s.split(',') {
            let lead = part.len() - part.trim_start().len();
            let (val, mult) = match part.split_once('^') {
                Some((v, k)) => {
                    let k_off = offset + v.len() + 1;
                    let m = k
                        .trim()
                        .parse::<usize>()
                        .ok()
                        .filter(|&m| m > 0)
                        .ok_or_else(|| Error::parse(k_off, format!("bad multiplicity `{k}`")))?;
                    (v, m)
                }
                None => (part, 1),
            };
            items.push((parse_value(val, offset + lead)?, mult));
            offset += part.len() + 1;
        }
        TargetSpectrum::new(items)
    }
}

impl Serialize for TargetSpectrum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TargetSpectrum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Something to realize or refute: a full spectrum or only its multiplicity list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Spectrum(TargetSpectrum),
    Oml(Oml),
}

impl Target {
    pub fn oml(&self) -> Oml {
        match self {
            Target::Spectrum(s) => s.oml(),
            Target::Oml(m) => m.clone(),
        }
    }

    pub fn order(&self) -> usize {
        match self {
            Target::Spectrum(s) => s.order(),
            Target::Oml(m) => m.order(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Spectrum(s) => write!(f, "{{{s}}}"),
            Target::Oml(m) => write!(f, "{m}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_with_multiplicities() {
        let t: TargetSpectrum = "-2^3, 6".parse().unwrap();
        assert_eq!(t.order(), 4);
        assert_eq!(t.oml(), Oml(vec![3, 1]));
        assert!(t.satisfies_trace());
        assert_eq!(t.to_string(), "-2^3,6");
    }

    #[test]
    fn decimals_and_fractions_are_exact() {
        let t: TargetSpectrum = "-1.5,-1/2,1^2".parse().unwrap();
        assert_eq!(t.trace_exact(), Some(Rational::from_integer(0)));
        assert_eq!(t.to_string(), "-3/2,-1/2,1^2");
        let u: TargetSpectrum = "0.1,0.2,-0.3".parse().unwrap();
        assert!(u.satisfies_trace());
    }

    #[test]
    fn trace_violation() {
        let t: TargetSpectrum = "1^2,2".parse().unwrap();
        assert!(!t.satisfies_trace());
    }

    #[test]
    fn floats_round_trip() {
        let x = 2f64.sqrt();
        let t = TargetSpectrum::from_f64(&[-x, 0.0, x]).unwrap();
        let back: TargetSpectrum = t.to_string().parse().unwrap();
        assert_eq!(back, t);
        assert!(t.is_symmetric());
    }

    #[test]
    fn duplicates_merge() {
        let t: TargetSpectrum = "1,-1,1,-1".parse().unwrap();
        assert_eq!(t.oml(), Oml(vec![2, 2]));
        assert!(t.is_symmetric());
    }

    #[test]
    fn parse_errors_carry_offsets() {
        assert!(matches!("1,x".parse::<TargetSpectrum>(), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!("1^0".parse::<TargetSpectrum>(), Err(Error::Parse { offset: 2, .. })));
        assert!("1/0".parse::<TargetSpectrum>().is_err());
        assert!("".parse::<TargetSpectrum>().is_err());
        assert!("inf".parse::<TargetSpectrum>().is_err());
    }

    #[test]
    fn symmetry_needs_matching_multiplicities() {
        assert!(!"-2^2,1,3".parse::<TargetSpectrum>().unwrap().is_symmetric());
        assert!("-2^2,0,2^2".parse::<TargetSpectrum>().unwrap().is_symmetric());
    }
}
