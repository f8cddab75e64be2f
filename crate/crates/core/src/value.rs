//! Exact scalar values.
//!
//! Every function value is a rational with `i128` parts. All quantities the
//! library reports are sums, differences and halves of input values, so
//! exact arithmetic keeps equality checks honest.

use alloc::string::String;
use core::fmt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::float::FloatCore;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Value = Ratio<i128>;

#[inline]
pub fn int(n: i128) -> Value {
    Value::from_integer(n)
}

#[inline]
pub fn frac(n: i128, d: i128) -> Value {
    Value::new(n, d)
}

#[inline]
pub fn half(v: Value) -> Value {
    v / int(2)
}

pub fn abs_diff(a: Value, b: Value) -> Value {
    (a - b).abs()
}

pub fn to_f64(v: Value) -> f64 {
    v.numer().to_f64().unwrap_or(f64::NAN) / v.denom().to_f64().unwrap_or(f64::NAN)
}

/// Nearest rational with denominator `den` (used for float inputs).
pub fn from_f64(x: f64, den: i128) -> Value {
    let n = FloatCore::round(x * den as f64) as i128;
    Value::new(n, den)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseValueError(pub String);

impl fmt::Display for ParseValueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bad number `{}`", self.0)
    }
}

fn parse_int(s: &str) -> Option<i128> {
    if s.is_empty() {
        return None;
    }
    s.parse::<i128>().ok()
}

/// Parses `7`, `-0.25`, `3/8` or `1e-3` style literals exactly.
pub fn parse_value(s: &str) -> Result<Value, ParseValueError> {
    let err = || ParseValueError(String::from(s));
    let t = s.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n = parse_int(n).ok_or_else(err)?;
        let d = parse_int(d).ok_or_else(err)?;
        if d == 0 {
            return Err(err());
        }
        return Ok(Value::new(n, d));
    }
    let (mant, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (neg, body) = match mant.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if ip.is_empty() && fp.is_empty() {
        return Err(err());
    }
    if !ip.bytes().chain(fp.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err());
    }
    let mut digits = String::from(ip);
    digits.push_str(fp);
    let n = parse_int(&digits).ok_or_else(err)?;
    let scale = exp - fp.len() as i32;
    if scale.unsigned_abs() > 30 {
        return Err(err());
    }
    let p = 10i128.pow(scale.unsigned_abs());
    let mut v = if scale >= 0 { Value::from_integer(n * p) } else { Value::new(n, p) };
    if neg {
        v = -v;
    }
    Ok(v)
}

/// Canonical text: terminating decimals are written as decimals, anything
/// else as `p/q`. `parse_value(&format_value(v)) == v` always holds.
pub fn format_value(v: Value) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    let (n, d) = (*v.numer(), *v.denom());
    if d == 1 {
        let _ = write!(out, "{}", n);
        return out;
    }
    let mut rest = d;
    let (mut twos, mut fives) = (0u32, 0u32);
    while rest % 2 == 0 {
        rest /= 2;
        twos += 1;
    }
    while rest % 5 == 0 {
        rest /= 5;
        fives += 1;
    }
    let k = twos.max(fives);
    if rest != 1 || k > 30 {
        let _ = write!(out, "{}/{}", n, d);
        return out;
    }
    let scaled = n * (10i128.pow(k) / d);
    let p = 10i128.pow(k);
    let (q, r) = scaled.abs().div_rem(&p);
    if scaled < 0 {
        out.push('-');
    }
    let _ = write!(out, "{}.{:0width$}", q, r, width = k as usize);
    out
}

/// Decimal rendering for humans.
pub fn format_decimal(v: Value) -> String {
    alloc::format!("{:.6}", to_f64(v))
}

pub fn min_max<I: IntoIterator<Item = Value>>(it: I) -> Option<(Value, Value)> {
    let mut it = it.into_iter();
    let first = it.next()?;
    Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
}

/// Value with a symbolic infinitesimal: `std + inf * δ`, ordered
/// lexicographically. Used where a construction needs "a tiny bit above".
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DVal {
    pub std: Value,
    pub inf: Value,
}

impl DVal {
    pub fn new(std: Value, inf: Value) -> Self {
        DVal { std, inf }
    }
    pub fn exact(std: Value) -> Self {
        DVal { std, inf: Value::zero() }
    }
    pub fn abs(self) -> Self {
        if self < DVal::default() {
            DVal { std: -self.std, inf: -self.inf }
        } else {
            self
        }
    }
    pub fn half(self) -> Self {
        DVal { std: half(self.std), inf: half(self.inf) }
    }
    /// Substitutes a concrete `δ`.
    pub fn at(self, delta: Value) -> Value {
        self.std + self.inf * delta
    }
}

impl core::ops::Add for DVal {
    type Output = DVal;
    fn add(self, o: DVal) -> DVal {
        DVal { std: self.std + o.std, inf: self.inf + o.inf }
    }
}

impl core::ops::Sub for DVal {
    type Output = DVal;
    fn sub(self, o: DVal) -> DVal {
        DVal { std: self.std - o.std, inf: self.inf - o.inf }
    }
}

impl From<Value> for DVal {
    fn from(v: Value) -> Self {
        DVal::exact(v)
    }
}

impl fmt::Display for DVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_value(self.std))?;
        if !self.inf.is_zero() {
            if self.inf.is_positive() {
                f.write_str("+")?;
            } else {
                f.write_str("-")?;
            }
            write!(f, "{}d", format_value(self.inf.abs()))?;
        }
        Ok(())
    }
}

/// Parses `3`, `3+1d`, `7/2-2d`.
pub fn parse_dval(s: &str) -> Result<DVal, ParseValueError> {
    let t = s.trim();
    if let Some(body) = t.strip_suffix('d') {
        // last sign that is not the leading one splits the parts
        let idx = body
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
            .map(|(i, _)| i)
            .last()
            .ok_or_else(|| ParseValueError(String::from(s)))?;
        let std = parse_value(&body[..idx])?;
        let inf = parse_value(&body[idx..])?;
        return Ok(DVal { std, inf });
    }
    Ok(DVal::exact(parse_value(t)?))
}

/// A value or `+∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    Finite(Value),
    Infinite,
}

impl Ext {
    pub fn finite(self) -> Option<Value> {
        match self {
            Ext::Finite(v) => Some(v),
            Ext::Infinite => None,
        }
    }

    pub fn scale(self, k: Value) -> Ext {
        match self {
            Ext::Finite(v) => Ext::Finite(v * k),
            Ext::Infinite => Ext::Infinite,
        }
    }
}

impl From<Value> for Ext {
    fn from(v: Value) -> Self {
        Ext::Finite(v)
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Finite(v) => f.write_str(&format_value(*v)),
            Ext::Infinite => f.write_str("inf"),
        }
    }
}

/// Certified enclosure `lo <= d <= hi` of a distance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub lo: Ext,
    pub hi: Ext,
}

impl Bracket {
    pub fn exact(v: Value) -> Self {
        Bracket { lo: Ext::Finite(v), hi: Ext::Finite(v) }
    }

    pub fn infinite() -> Self {
        Bracket { lo: Ext::Infinite, hi: Ext::Infinite }
    }

    pub fn is_collapsed(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Ext {
        match (self.lo, self.hi) {
            (Ext::Finite(a), Ext::Finite(b)) => Ext::Finite(b - a),
            (Ext::Infinite, Ext::Infinite) => Ext::Finite(Value::zero()),
            _ => Ext::Infinite,
        }
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_and_fractions() {
        assert_eq!(parse_value("0.25").unwrap(), frac(1, 4));
        assert_eq!(parse_value("-1.5").unwrap(), frac(-3, 2));
        assert_eq!(parse_value("7/3").unwrap(), frac(7, 3));
        assert_eq!(parse_value("1e-3").unwrap(), frac(1, 1000));
        assert_eq!(parse_value("2.5E2").unwrap(), int(250));
        assert!(parse_value("abc").is_err());
        assert!(parse_value("1/0").is_err());
        assert!(parse_value(".").is_err());
    }

    #[test]
    fn format_round_trips() {
        for v in [int(0), int(-4), frac(1, 3), frac(-7, 8), frac(3, 10), frac(1, 1024)] {
            assert_eq!(parse_value(&format_value(v)).unwrap(), v);
        }
        assert_eq!(format_value(frac(-1, 20)), "-0.05");
        assert_eq!(format_value(frac(2, 3)), "2/3");
    }

    #[test]
    fn dval_order_and_text() {
        let a = DVal::new(int(3), int(1));
        let b = DVal::new(int(3), int(-2));
        assert!(b < DVal::exact(int(3)) && DVal::exact(int(3)) < a);
        assert_eq!(alloc::format!("{}", b), "3-2d");
        assert_eq!(parse_dval("3-2d").unwrap(), b);
        assert_eq!(parse_dval("7/2+1d").unwrap(), DVal::new(frac(7, 2), int(1)));
        assert_eq!((a - b).abs(), DVal::new(int(0), int(3)));
    }
}
