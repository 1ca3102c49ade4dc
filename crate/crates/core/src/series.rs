//! Truncated formal power series.
//!
//! A [`PowerSeries`] stores the coefficients of `z^0 .. z^(order-1)`; every
//! term of degree `order` and above is unknown. Binary operations truncate
//! to the smaller order of their operands, so precision is never claimed
//! that the inputs do not carry.

use std::ops::{Add, Mul, Neg, Sub};

use serde_json::Value;

use crate::exact::to_fraction;
use crate::{Error, Rational, Result, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
}

/// Which even/odd quotient of hyperbolic series to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioKind {
    /// `t·coth(t) = t·cosh(t)/sinh(t) = 1 + t²/3 - t⁴/45 + ...`
    Coth,
    /// `tanh(t) = sinh(t)/cosh(t) = t - t³/3 + 2t⁵/15 - ...`
    Tanh,
}

impl<T: Scalar> PowerSeries<T> {
    /// Series whose truncation order is the number of coefficients given.
    pub fn new(coeffs: Vec<T>) -> Self {
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries::new(vec![T::zero(); order])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(T::one(), order)
    }

    pub fn constant(c: T, order: usize) -> Self {
        let mut s = Self::zero(order);
        if let Some(first) = s.coeffs.first_mut() {
            *first = c;
        }
        s
    }

    /// The formal variable `z`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    /// `e^z`, coefficient of `z^k` equal to `1/k!`.
    pub fn exp(order: usize) -> Self {
        let mut coeffs = Vec::with_capacity(order);
        let mut c = T::one();
        for k in 0..order {
            if k > 0 {
                c = c / T::from_u64_exact(k as u64);
            }
            coeffs.push(c.clone());
        }
        PowerSeries::new(coeffs)
    }

    /// `sinh z`, the odd part of `e^z`.
    pub fn sinh(order: usize) -> Self {
        Self::exp(order).odd_part()
    }

    /// `cosh z`, the even part of `e^z`.
    pub fn cosh(order: usize) -> Self {
        Self::exp(order).even_part()
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coefficients(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `z^k`, or `None` beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Option<&T> {
        self.coeffs.get(k)
    }

    pub fn truncate(&self, order: usize) -> Self {
        PowerSeries::new(self.coeffs.iter().take(order).cloned().collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        PowerSeries::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplies by `z^k`; the result is known to `order + k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PowerSeries::new(coeffs)
    }

    /// Formal derivative; loses one order.
    pub fn derivative(&self) -> Self {
        PowerSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_u64_exact(k as u64))
                .collect(),
        )
    }

    /// Substitutes `z -> -z`.
    pub fn reflect(&self) -> Self {
        PowerSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    pub fn even_part(&self) -> Self {
        self.keep_parity(0)
    }

    pub fn odd_part(&self) -> Self {
        self.keep_parity(1)
    }

    fn keep_parity(&self, parity: usize) -> Self {
        PowerSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    if k % 2 == parity {
                        c.clone()
                    } else {
                        T::zero()
                    }
                })
                .collect(),
        )
    }

    /// Number of leading zero coefficients.
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// True when every known coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Quotient `self / divisor`.
    ///
    /// When the divisor starts with `m` zero coefficients, the dividend must
    /// start with at least `m` zeros as well; both prefixes are stripped
    /// before dividing (this is how `z / (e^z - 1)` is formed). The quotient
    /// is then known to `min(order) - m`.
    pub fn checked_div(&self, divisor: &Self) -> Result<Self> {
        let order = self.order().min(divisor.order());
        let m = divisor.truncate(order).valuation();
        if m >= order {
            return Err(Error::NonInvertibleSeries);
        }
        if self.truncate(order).valuation() < m {
            return Err(Error::NonInvertibleSeries);
        }
        let num = &self.coeffs[m..order];
        let den = &divisor.coeffs[m..order];
        let n = order - m;
        let lead = den[0].clone();
        let mut q: Vec<T> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = num[k].clone();
            for j in 1..=k {
                acc = acc - den[j].clone() * q[k - j].clone();
            }
            q.push(acc / lead.clone());
        }
        Ok(PowerSeries::new(q))
    }

    /// Even/odd quotient of hyperbolic series in `t`, known to `order`.
    ///
    /// [`RatioKind::Coth`] returns `t·u` with `u = cosh t / sinh t`, which is
    /// a genuine power series; [`RatioKind::Tanh`] returns `u = sinh t / cosh t`.
    pub fn ratio_even_odd(order: usize, kind: RatioKind) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidArgument(format!(
                "hyperbolic ratio needs order >= 2, got {order}"
            )));
        }
        match kind {
            RatioKind::Coth => {
                let num = Self::cosh(order).shift_up(1);
                num.checked_div(&Self::sinh(order + 1))
            }
            RatioKind::Tanh => Self::sinh(order).checked_div(&Self::cosh(order)),
        }
    }

    /// Residual of `du/dt + u² - 1` for the expansion of the given kind.
    ///
    /// For [`RatioKind::Tanh`] the input is `u` itself and the residual is
    /// known to `order - 1`. For [`RatioKind::Coth`] the input is `w = t·u`
    /// and the residual is computed in the equivalent polynomial form
    /// `t·w' - w + w² - t²` (the ODE multiplied by `t²`), known to `order`.
    pub fn ode_residual(&self, kind: RatioKind) -> Self {
        let order = self.order();
        match kind {
            RatioKind::Tanh => {
                let du = self.derivative();
                let u2 = self * self;
                &(&du + &u2) - &Self::one(order)
            }
            RatioKind::Coth => {
                let tdw = self.derivative().shift_up(1);
                let w2 = self * self;
                let t2 = Self::variable(order).shift_up(1).truncate(order);
                &(&(&tdw - self) + &w2) - &t2
            }
        }
    }
}

impl PowerSeries<Rational> {
    /// Coefficients as a JSON array of `"num/den"` strings.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs
                .iter()
                .map(|c| Value::String(to_fraction(c)))
                .collect(),
        )
    }
}

fn zip_with<T: Scalar>(
    a: &PowerSeries<T>,
    b: &PowerSeries<T>,
    f: impl Fn(T, T) -> T,
) -> PowerSeries<T> {
    PowerSeries::new(
        a.coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| f(x.clone(), y.clone()))
            .collect(),
    )
}

impl<T: Scalar> Add for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    fn add(self, rhs: Self) -> PowerSeries<T> {
        zip_with(self, rhs, |x, y| x + y)
    }
}

impl<T: Scalar> Sub for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    fn sub(self, rhs: Self) -> PowerSeries<T> {
        zip_with(self, rhs, |x, y| x - y)
    }
}

impl<T: Scalar> Neg for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    fn neg(self) -> PowerSeries<T> {
        PowerSeries::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Scalar> Mul for &PowerSeries<T> {
    type Output = PowerSeries<T>;

    /// Cauchy product truncated to the smaller order.
    fn mul(self, rhs: Self) -> PowerSeries<T> {
        let order = self.order().min(rhs.order());
        let mut out = vec![T::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        PowerSeries::new(out)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl<T: Scalar> $tr for PowerSeries<T> {
            type Output = PowerSeries<T>;

            fn $method(self, rhs: Self) -> PowerSeries<T> {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
