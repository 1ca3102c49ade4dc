//! Reference values for verification, computed rather than typed in.
//!
//! Everything here is independent of the coefficient recurrences and the
//! summation engine: π comes from Machin's arctangent formula, ln 2 from
//! `Σ 1/(k 2^k)`, Bernoulli numbers from their binomial recurrence, and
//! tails of monotone series from brute-force partial sums with integral
//! bounds.

use std::fmt;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, Zero};

use crate::exact::{int, pow10, scaled_ceil, scaled_floor};
use crate::terms::TermFamily;
use crate::{Error, Rational, Result, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstantName {
    Pi,
    Ln2,
}

impl fmt::Display for ConstantName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstantName::Pi => "pi",
            ConstantName::Ln2 => "ln2",
        })
    }
}

/// Approximation with a guaranteed bound: `|value - true| <= error_bound`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceConstant {
    pub name: ConstantName,
    pub value: Rational,
    pub error_bound: Rational,
}

impl ReferenceConstant {
    /// `value^k` with the bound `k (|v| + ε)^(k-1) ε`.
    pub fn powi(&self, k: u32) -> (Rational, Rational) {
        let value = num_traits::pow(self.value.clone(), k as usize);
        if k == 0 {
            return (value, Rational::zero());
        }
        let top = self.value.abs() + &self.error_bound;
        let bound = int(i64::from(k)) * num_traits::pow(top, (k - 1) as usize) * &self.error_bound;
        (value, bound)
    }

    /// Whether `x` lies within `error_bound + slack` of the value.
    pub fn agrees_with(&self, x: &Rational, slack: &Rational) -> bool {
        (x - &self.value).abs() <= &self.error_bound + slack
    }
}

fn tolerance(digits: u32) -> Rational {
    Rational::new(BigInt::one(), pow10(digits as usize))
}

/// Rounds to a multiple of `10^-digits`, returning the value and the
/// rounding error bound.
fn round_to(x: &Rational, digits: usize) -> (Rational, Rational) {
    let scale = pow10(digits);
    let rounded = Rational::new(scaled_floor(x, digits), scale.clone());
    (rounded, Rational::new(BigInt::one(), scale))
}

/// `atan(1/m)` by its alternating series, with the first omitted term as
/// the bound (valid because the terms decrease).
fn arctan_inverse(m: u64, target: &Rational) -> (Rational, Rational) {
    let m = BigInt::from(m);
    let m2 = &m * &m;
    let mut power = m.clone();
    let mut sum = Rational::zero();
    let mut j = 0u64;
    loop {
        let term = Rational::new(BigInt::one(), BigInt::from(2 * j + 1) * &power);
        if &term <= target {
            return (sum, term);
        }
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power *= &m2;
        j += 1;
    }
}

/// π to within `10^-(digits+2)`, from `π = 16 atan(1/5) - 4 atan(1/239)`.
pub fn compute_pi(digits: u32) -> ReferenceConstant {
    let target = tolerance(digits + 2);
    let (a, ea) = arctan_inverse(5, &(&target / int(64)));
    let (b, eb) = arctan_inverse(239, &(&target / int(16)));
    let raw = int(16) * a - int(4) * b;
    let (value, rounding) = round_to(&raw, digits as usize + 4);
    let error_bound = int(16) * ea + int(4) * eb + rounding;
    debug_assert!(error_bound <= target);
    ReferenceConstant {
        name: ConstantName::Pi,
        value,
        error_bound,
    }
}

/// ln 2 to within `10^-(digits+2)`, from `Σ_{k≥1} 1/(k 2^k)`.
pub fn compute_ln2(digits: u32) -> ReferenceConstant {
    let target = tolerance(digits + 2) / int(2);
    let mut sum = Rational::zero();
    let mut pow2 = BigInt::one();
    let mut k = 1u64;
    loop {
        pow2 <<= 1;
        sum += Rational::new(BigInt::one(), BigInt::from(k) * &pow2);
        // Σ_{j>k} 1/(j 2^j) <= 1/((k+1) 2^k)
        let tail = Rational::new(BigInt::one(), BigInt::from(k + 1) * &pow2);
        if tail <= target {
            let (value, rounding) = round_to(&sum, digits as usize + 4);
            return ReferenceConstant {
                name: ConstantName::Ln2,
                value,
                error_bound: tail + rounding,
            };
        }
        k += 1;
    }
}

/// Bernoulli numbers `B_0 .. B_(count-1)` (with `B_1 = -1/2`) from
/// `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(count: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(count);
    for m in 0..count {
        if m == 0 {
            b.push(Rational::one());
            continue;
        }
        let n = BigInt::from(m + 1);
        let s = b.iter().enumerate().fold(Rational::zero(), |acc, (j, bj)| {
            acc + Rational::from_integer(binomial(n.clone(), BigInt::from(j))) * bj
        });
        b.push(-s / Rational::from_integer(n));
    }
    b
}

/// `Σ_{j=0}^{terms-1} (±1)^j X(x_start + j)`, literally.
pub fn naive_partial_sum<T: Scalar>(
    term: &dyn TermFamily<T>,
    x_start: u64,
    terms: u64,
    alternating: bool,
) -> Result<T> {
    let mut acc = T::zero();
    for j in 0..terms {
        let v = term.value(&T::from_u64_exact(x_start + j))?;
        if alternating && j % 2 == 1 {
            acc = acc - v;
        } else {
            acc = acc + v;
        }
    }
    Ok(acc)
}

/// Rigorous enclosure of a same-sign tail `Σ_{k≥x} X(k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TailBracket {
    pub lower: Rational,
    pub upper: Rational,
}

impl TailBracket {
    pub fn contains(&self, v: &Rational) -> bool {
        &self.lower <= v && v <= &self.upper
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    /// Largest distance from `v` to any point of the bracket.
    pub fn max_distance(&self, v: &Rational) -> Rational {
        let a = (v - &self.lower).abs();
        let b = (v - &self.upper).abs();
        if a > b {
            a
        } else {
            b
        }
    }
}

/// Encloses `Σ_{k≥x} X(k)` for a positive, decreasing term with a tail
/// integral: `terms` values are summed with directed rounding to
/// `10^-digits`, and the rest `R = Σ_{k≥x+terms} X(k)` is bounded by
/// `∫_{x+terms}^∞ X ≤ R ≤ X(x+terms) + ∫_{x+terms}^∞ X`.
pub fn tail_bracket(
    term: &dyn TermFamily<Rational>,
    x: u64,
    terms: u64,
    digits: usize,
) -> Result<TailBracket> {
    if x == 0 {
        return Err(Error::InvalidArgument("bracket needs x >= 1".into()));
    }
    if !term.supports_same_sign() {
        return Err(Error::MissingTailIntegral);
    }
    let scale = pow10(digits);
    let mut low = BigInt::zero();
    let mut high = BigInt::zero();
    for k in x..x + terms {
        let v = term.value(&Rational::from_integer(BigInt::from(k)))?;
        let (q, r) = (v.numer() * &scale).div_mod_floor(v.denom());
        if !r.is_zero() {
            high += 1;
        }
        high += &q;
        low += q;
    }
    let end = Rational::from_integer(BigInt::from(x + terms));
    let integral = term.tail_integral(&end)?;
    let last = term.value(&end)?;
    low += scaled_floor(&integral, digits);
    high += scaled_ceil(&(integral + last), digits);
    Ok(TailBracket {
        lower: Rational::new(low, scale.clone()),
        upper: Rational::new(high, scale),
    })
}
