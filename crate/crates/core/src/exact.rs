//! Exact rational arithmetic and decimal rendering.
//!
//! [`Rational`] is kept in canonical form after every operation: the
//! denominator is positive, numerator and denominator are coprime and zero
//! is `0/1`. Division is checked here so that a zero divisor surfaces as
//! [`Error::DivisionByZero`] instead of a panic.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Rational, Result};

pub fn rat_add(a: &Rational, b: &Rational) -> Rational {
    a + b
}

pub fn rat_sub(a: &Rational, b: &Rational) -> Rational {
    a - b
}

pub fn rat_mul(a: &Rational, b: &Rational) -> Rational {
    a * b
}

pub fn rat_div(a: &Rational, b: &Rational) -> Result<Rational> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(a / b)
}

/// Builds `num/den` in canonical form.
pub fn ratio(num: i64, den: i64) -> Result<Rational> {
    if den == 0 {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(BigInt::from(num), BigInt::from(den)))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Reduces an arbitrary numerator/denominator pair.
pub fn canonicalize(num: BigInt, den: BigInt) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

pub fn is_canonical(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

/// `10^digits` as a big integer.
pub fn pow10(digits: usize) -> BigInt {
    num_traits::pow(BigInt::from(10u32), digits)
}

/// Renders `a` with exactly `digits` fractional digits, rounding half to even.
///
/// The format is an optional `-`, the integer part, `.` and the fractional
/// digits. No exponent notation is used. A value whose rounded magnitude is
/// zero is printed without a sign.
pub fn to_decimal(a: &Rational, digits: usize) -> String {
    let scale = pow10(digits);
    let num = a.numer().abs() * &scale;
    let den = a.denom();
    let (mut q, r) = num.div_rem(den);
    let twice = &r * 2u32;
    match twice.cmp(den) {
        std::cmp::Ordering::Greater => q += 1u32,
        std::cmp::Ordering::Equal if q.is_odd() => q += 1u32,
        _ => {}
    }
    let negative = a.is_negative() && !q.is_zero();
    let (int_part, frac_part) = q.div_rem(&scale);
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&int_part.to_str_radix(10));
    if digits > 0 {
        out.push('.');
        let frac = frac_part.to_str_radix(10);
        out.extend(std::iter::repeat_n('0', digits - frac.len()));
        out.push_str(&frac);
    }
    out
}

/// `num/den` fraction syntax; integers print as `n/1`.
pub fn to_fraction(a: &Rational) -> String {
    format!("{}/{}", a.numer(), a.denom())
}

/// Parses `num/den` or a bare integer.
pub fn parse_fraction(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidArgument(format!("not a fraction: {s:?}"));
    let parse = |t: &str| t.trim().parse::<BigInt>().map_err(|_| bad());
    match s.split_once('/') {
        Some((n, d)) => canonicalize(parse(n)?, parse(d)?),
        None => Ok(Rational::from_integer(parse(s)?)),
    }
}

/// Floor of `a · 10^digits`.
pub fn scaled_floor(a: &Rational, digits: usize) -> BigInt {
    (a.numer() * pow10(digits)).div_floor(a.denom())
}

/// Ceiling of `a · 10^digits`.
pub fn scaled_ceil(a: &Rational, digits: usize) -> BigInt {
    let n = a.numer() * pow10(digits);
    let (q, r) = n.div_mod_floor(a.denom());
    if r.is_zero() {
        q
    } else {
        q + 1
    }
}

/// Sign of a rational as `-1`, `0` or `1`.
pub fn signum(a: &Rational) -> i8 {
    match a.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}
