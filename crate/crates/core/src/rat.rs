//! Exact rational arithmetic helpers.
//!
//! All thresholds that the underlying statements state exactly (`rho * n`,
//! Johnson denominators, the theorem's gamma/sigma calculus) are computed
//! over arbitrary-precision rationals, never floats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serializer;

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: u64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

/// Parses "3/4", "0.25", or "2" into an exact rational.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad(s))?;
        let d: BigInt = den.trim().parse().map_err(|_| bad(s))?;
        if d.is_zero() {
            return Err(format!("zero denominator in '{s}'"));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int = if int.is_empty() { "0" } else { int };
        let (sign, int) = match int.strip_prefix('-') {
            Some(rest) => (-1, if rest.is_empty() { "0" } else { rest }),
            None => (1, int),
        };
        let i: BigInt = int.parse().map_err(|_| bad(s))?;
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad(s));
        }
        let f: BigInt = frac.parse().map_err(|_| bad(s))?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let v = Rat::new(i * &scale + f, scale);
        return Ok(if sign < 0 { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| bad(s))?;
    Ok(Rat::from_integer(n))
}

fn bad(s: &str) -> String {
    format!("cannot parse '{s}' as a rational (expected n, n/d, or a decimal)")
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `floor(r)` as u64; caller guarantees the value is nonnegative and small.
pub fn rat_floor_u64(r: &Rat) -> u64 {
    debug_assert!(!r.is_negative());
    r.floor().to_integer().to_u64().unwrap_or(u64::MAX)
}

/// Serde helper: rationals serialize as their exact "n/d" display form.
pub fn serialize_rat<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn serialize_rat_opt<S: Serializer>(r: &Option<Rat>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}
