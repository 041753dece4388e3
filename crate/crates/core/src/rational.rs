//! Exact rational helpers shared by every module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

use crate::error::{LatticeError, Result};

pub type Rat = BigRational;

pub fn int(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn big(v: &BigInt) -> Rat {
    Rat::from_integer(v.clone())
}

/// Parses an integer, a `p/q` fraction or a terminating decimal such as `-0.25`.
pub fn parse_rational(text: &str) -> Result<Rat> {
    let s = text.trim();
    let bad = || LatticeError::Parse(format!("not a rational number: {text:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(LatticeError::Parse(format!("zero denominator in {text:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{whole_digits}{frac}");
        let mut n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
        if negative {
            n = -n;
        }
        let d = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(Rat::new(n, d));
    }
    BigInt::from_str(s).map(Rat::from_integer).map_err(|_| bad())
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn render(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact square root when both numerator and denominator are perfect squares.
pub fn sqrt_exact(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

pub fn pow(r: &Rat, e: u32) -> Rat {
    let mut acc = Rat::one();
    for _ in 0..e {
        acc *= r;
    }
    acc
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn norm_sq(a: &[Rat]) -> Rat {
    dot(a, a)
}

/// Smallest rational with a short representation that is `>= x`. Used to turn
/// floating-point radius hints into exact enumeration radii.
pub fn rational_at_least(x: f64) -> Rat {
    let y = if x > 0.0 { x * (1.0 + 1e-12) } else { x };
    Rat::from_float(y).unwrap_or_else(Rat::zero)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Rational enclosure `PI_LO < π < PI_HI`, width 1e-40.
pub fn pi_enclosure() -> (Rat, Rat) {
    let digits = "31415926535897932384626433832795028841971";
    let n = BigInt::from_str(digits).expect("digits");
    let d = num_traits::pow(BigInt::from(10), digits.len() - 1);
    let lo = Rat::new(n.clone(), d.clone());
    let hi = Rat::new(n + 1, d);
    (lo, hi)
}
