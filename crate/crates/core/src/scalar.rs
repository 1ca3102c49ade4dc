use std::fmt::Debug;

use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

use crate::Rational;

/// Field element the engine, series and term families compute with.
///
/// Implemented for `f32`, `f64` and [`Rational`]. Exact coefficient tables
/// are converted into the scalar with [`Scalar::from_rational`].
pub trait Scalar:
    Clone + Debug + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    fn from_rational(r: &Rational) -> Self;

    /// Whether arithmetic in this type is exact.
    fn is_exact() -> bool {
        false
    }

    fn from_u64_exact(v: u64) -> Self {
        Self::from_u64(v).expect("every scalar can represent a u64 (possibly rounded)")
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn is_exact() -> bool {
        true
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }
}
