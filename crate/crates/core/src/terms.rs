//! Series terms `X(x)` and their derivatives.
//!
//! Derivatives are taken with respect to a unit step in the index, so the
//! derivative of order `m` of `1/x^n` is `(-1)^m n(n+1)...(n+m-1) / x^(n+m)`.

use std::fmt;

use crate::{Error, Rational, Result, Scalar};

/// A term `X(x)` of a series summed over `x, x+1, x+2, ...`.
pub trait TermFamily<T> {
    /// Derivative of order `m` at `x`; order 0 is the value itself.
    fn derivative(&self, m: u32, x: &T) -> Result<T>;

    fn value(&self, x: &T) -> Result<T> {
        self.derivative(0, x)
    }

    /// `∫_x^∞ X(t) dt`. Only needed for same-sign sums.
    fn tail_integral(&self, _x: &T) -> Result<T> {
        Err(Error::MissingTailIntegral)
    }

    /// Whether the same-sign formula applies (the tail integral is finite).
    fn supports_same_sign(&self) -> bool;
}

impl<T, F: TermFamily<T> + ?Sized> TermFamily<T> for &F {
    fn derivative(&self, m: u32, x: &T) -> Result<T> {
        (**self).derivative(m, x)
    }

    fn value(&self, x: &T) -> Result<T> {
        (**self).value(x)
    }

    fn tail_integral(&self, x: &T) -> Result<T> {
        (**self).tail_integral(x)
    }

    fn supports_same_sign(&self) -> bool {
        (**self).supports_same_sign()
    }
}

/// `X = 1/x^n` with integer `n ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerTerm {
    exponent: u32,
}

impl PowerTerm {
    pub fn new(exponent: u32) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::InvalidArgument(
                "power term exponent must be at least 1".into(),
            ));
        }
        Ok(PowerTerm { exponent })
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }
}

impl fmt::Display for PowerTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/x^{}", self.exponent)
    }
}

impl<T: Scalar> TermFamily<T> for PowerTerm {
    fn derivative(&self, m: u32, x: &T) -> Result<T> {
        if x.is_zero() {
            return Err(Error::Pole);
        }
        let n = self.exponent;
        let mut numer = T::one();
        for i in 0..m {
            numer = numer * T::from_u64_exact(u64::from(n + i));
        }
        if m % 2 == 1 {
            numer = -numer;
        }
        Ok(numer / num_traits::pow(x.clone(), (n + m) as usize))
    }

    fn tail_integral(&self, x: &T) -> Result<T> {
        let n = self.exponent;
        if n < 2 {
            return Err(Error::Divergent { exponent: n });
        }
        if !x.is_positive() {
            return Err(Error::InvalidArgument(
                "tail integral of 1/x^n needs x > 0".into(),
            ));
        }
        let denom =
            T::from_u64_exact(u64::from(n - 1)) * num_traits::pow(x.clone(), (n - 1) as usize);
        Ok(T::one() / denom)
    }

    fn supports_same_sign(&self) -> bool {
        self.exponent >= 2
    }
}

fn index<T: Scalar>(x: u64) -> T {
    T::from_u64_exact(x)
}

pub fn power_value(n: u32, x: u64) -> Result<Rational> {
    PowerTerm::new(n)?.value(&index(x))
}

pub fn power_derivative(n: u32, m: u32, x: u64) -> Result<Rational> {
    PowerTerm::new(n)?.derivative(m, &index(x))
}

pub fn power_tail_integral(n: u32, x: u64) -> Result<Rational> {
    PowerTerm::new(n)?.tail_integral(&index(x))
}

type DerivativeFn<T> = dyn Fn(u32, &T) -> Result<T> + Send + Sync;
type IntegralFn<T> = dyn Fn(&T) -> Result<T> + Send + Sync;

/// Term described by user-supplied closures.
///
/// ```
/// use eulersum::{FnTerm, TermFamily};
///
/// // X(x) = e^(-x): every derivative is ±e^(-x), and so is the tail integral.
/// let term = FnTerm::new(|m, x: &f64| {
///     let v = (-x).exp();
///     Ok(if m % 2 == 0 { v } else { -v })
/// })
/// .with_tail_integral(|x: &f64| Ok((-x).exp()));
/// assert!(term.supports_same_sign());
/// ```
pub struct FnTerm<T> {
    derivative: Box<DerivativeFn<T>>,
    tail_integral: Option<Box<IntegralFn<T>>>,
}

impl<T> FnTerm<T> {
    pub fn new(derivative: impl Fn(u32, &T) -> Result<T> + Send + Sync + 'static) -> Self {
        FnTerm {
            derivative: Box::new(derivative),
            tail_integral: None,
        }
    }

    /// Supplying a tail integral enables the same-sign formula.
    pub fn with_tail_integral(
        mut self,
        integral: impl Fn(&T) -> Result<T> + Send + Sync + 'static,
    ) -> Self {
        self.tail_integral = Some(Box::new(integral));
        self
    }
}

impl<T> fmt::Debug for FnTerm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnTerm")
            .field("tail_integral", &self.tail_integral.is_some())
            .finish()
    }
}

impl<T> TermFamily<T> for FnTerm<T> {
    fn derivative(&self, m: u32, x: &T) -> Result<T> {
        (self.derivative)(m, x)
    }

    fn tail_integral(&self, x: &T) -> Result<T> {
        match &self.tail_integral {
            Some(f) => f(x),
            None => Err(Error::MissingTailIntegral),
        }
    }

    fn supports_same_sign(&self) -> bool {
        self.tail_integral.is_some()
    }
}

/// Sum of the terms before index `x`: `Σ_{k=1}^{x-1} X(k)`, or with signs
/// `(-1)^(k+1)` when `alternating`. Empty (zero) for `x = 1`.
pub fn head_sum<T: Scalar>(term: &dyn TermFamily<T>, x: u64, alternating: bool) -> Result<T> {
    if x == 0 {
        return Err(Error::InvalidArgument("head sum needs x >= 1".into()));
    }
    let mut acc = T::zero();
    for k in 1..x {
        let v = term.value(&index(k))?;
        if alternating && k % 2 == 0 {
            acc = acc - v;
        } else {
            acc = acc + v;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use num_traits::Signed;

    fn r(n: i64, d: i64) -> Rational {
        ratio(n, d).unwrap()
    }

    #[test]
    fn power_values() {
        assert_eq!(power_value(2, 10).unwrap(), r(1, 100));
        assert_eq!(power_value(1, 3).unwrap(), r(1, 3));
        assert_eq!(power_value(5, 2).unwrap(), r(1, 32));
        assert_eq!(power_value(2, 0), Err(Error::Pole));
        assert!(PowerTerm::new(0).is_err());
    }

    #[test]
    fn power_derivatives() {
        assert_eq!(power_derivative(2, 1, 10).unwrap(), r(-1, 500));
        assert_eq!(power_derivative(2, 3, 10).unwrap(), r(-3, 12500));
        assert_eq!(power_derivative(3, 0, 2).unwrap(), r(1, 8));
        assert_eq!(power_derivative(3, 2, 1).unwrap(), r(12, 1));
        assert_eq!(power_derivative(1, 1, 0), Err(Error::Pole));
    }

    #[test]
    fn power_tail_integrals() {
        assert_eq!(power_tail_integral(2, 10).unwrap(), r(1, 10));
        assert_eq!(power_tail_integral(3, 10).unwrap(), r(1, 200));
        assert_eq!(
            power_tail_integral(1, 10),
            Err(Error::Divergent { exponent: 1 })
        );
        let t = PowerTerm::new(1).unwrap();
        assert!(!TermFamily::<Rational>::supports_same_sign(&t));
        let t = PowerTerm::new(2).unwrap();
        assert!(TermFamily::<Rational>::supports_same_sign(&t));
    }

    #[test]
    fn head_sums() {
        let sq = PowerTerm::new(2).unwrap();
        let h: Rational = head_sum(&sq, 10, false).unwrap();
        // Direct 9-term sum, accumulated independently.
        let direct = (1..10).map(|k| r(1, k * k)).fold(int(0), |a, b| a + b);
        assert_eq!(h, direct);
        assert_eq!(h, r(9778141, 6350400));
        let empty: Rational = head_sum(&sq, 1, true).unwrap();
        assert_eq!(empty, int(0));
        let harmonic = PowerTerm::new(1).unwrap();
        let alt: Rational = head_sum(&harmonic, 4, true).unwrap();
        assert_eq!(alt, r(5, 6));
        assert!(head_sum::<Rational>(&sq, 0, false).is_err());
    }

    #[test]
    fn head_sum_steps_by_signed_value() {
        let t = PowerTerm::new(3).unwrap();
        for x in 1..15u64 {
            for alternating in [false, true] {
                let a: Rational = head_sum(&t, x, alternating).unwrap();
                let b: Rational = head_sum(&t, x + 1, alternating).unwrap();
                let v: Rational = t.value(&int(x as i64)).unwrap();
                let sign = if alternating && x % 2 == 0 { -1 } else { 1 };
                assert_eq!(b - a, v * int(sign));
            }
        }
    }

    /// Central differences at h and h/2: errors shrink by about 4.
    #[test]
    fn central_difference_is_second_order() {
        let t = PowerTerm::new(2).unwrap();
        let x = int(10);
        let exact: Rational = t.derivative(1, &x).unwrap();
        let err = |h: Rational| -> Rational {
            let plus: Rational = t.value(&(&x + &h)).unwrap();
            let minus: Rational = t.value(&(&x - &h)).unwrap();
            ((plus - minus) / (int(2) * h) - &exact).abs()
        };
        let e1 = err(r(1, 1024));
        let e2 = err(r(1, 2048));
        let ratio = e1 / e2;
        assert!(ratio > r(399, 100) && ratio < r(401, 100), "ratio {ratio}");
    }

    #[test]
    fn integral_brackets_terms() {
        for n in 2..6u32 {
            for x in 1..30u64 {
                let step =
                    power_tail_integral(n, x).unwrap() - power_tail_integral(n, x + 1).unwrap();
                assert!(power_value(n, x + 1).unwrap() < step);
                assert!(step < power_value(n, x).unwrap());
            }
        }
    }

    #[test]
    fn float_and_exact_agree() {
        let t = PowerTerm::new(4).unwrap();
        for m in 0..8 {
            let e: Rational = t.derivative(m, &int(7)).unwrap();
            let f: f64 = t.derivative(m, &7.0).unwrap();
            assert!((f64::from_rational(&e) - f).abs() <= 1e-15 * f.abs());
        }
    }

    #[test]
    fn closure_terms() {
        let term = FnTerm::new(|m, x: &f64| Ok(if m % 2 == 0 { 1.0 / x } else { -1.0 / (x * x) }));
        assert!(!term.supports_same_sign());
        assert_eq!(term.tail_integral(&2.0), Err(Error::MissingTailIntegral));
        assert_eq!(term.value(&4.0), Ok(0.25));
    }
}
