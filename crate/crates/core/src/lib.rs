//! Euler's differential summation formulas.
//!
//! The crate evaluates infinite series `X(x) + X(x+1) + X(x+2) + ...` and
//! their alternating counterparts by an explicit head sum plus an
//! accelerated tail built from odd-order derivatives of the term. The two
//! families of weights come from exact rational recurrences and are
//! cross-checked against power-series expansions of `z/(e^z - 1)` and
//! `1/(1 + e^z)` and against Bernoulli numbers.
//!
//! Everything above the coefficient layer is generic over [`Scalar`], so
//! the same engine runs exactly over [`Rational`] or in `f64`.
//!
//! ```
//! use eulersum::{zeta_approx, Order, Rational};
//!
//! let sum = zeta_approx(2, 10, Order::Fixed(5)).unwrap();
//! let text = eulersum::exact::to_decimal(&sum.value, 10);
//! assert_eq!(text, "1.6449340668");
//! ```

pub mod coefficients;
pub mod engine;
mod error;
pub mod exact;
pub mod oracle;
mod scalar;
pub mod series;
pub mod terms;
pub mod verify;

pub use coefficients::{
    coth_coefficients, engine_weights, ratio_identity_check, tanh_coefficients, zeta_relation,
    CoefficientCache, CoefficientTable, EngineWeights, Family,
};
pub use engine::{
    eta_approx, sum_series, tail_sum, zeta_approx, Case, Contribution, Engine, Order, SeriesSum,
    TailSumRequest, TailSumResult, DEFAULT_ORDER_CAP,
};
pub use error::{Error, Result};
pub use scalar::Scalar;
pub use series::{PowerSeries, RatioKind};
pub use terms::{head_sum, FnTerm, PowerTerm, TermFamily};

/// Exact rational over arbitrary-precision integers, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer used for numerators and denominators.
pub type BigInt = num_bigint::BigInt;

/// Power series with exact rational coefficients.
pub type ExactSeries = PowerSeries<Rational>;

/// Power series with `f64` coefficients.
pub type FloatSeries = PowerSeries<f64>;

/// Tail sum evaluated exactly.
pub type ExactTailSum = TailSumResult<Rational>;

/// Tail sum evaluated in `f64`.
pub type FloatTailSum = TailSumResult<f64>;

/// Head plus tail evaluated exactly.
pub type ExactSeriesSum = SeriesSum<Rational>;
