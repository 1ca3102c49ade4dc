//! Accelerated tail sums and head/tail assembly.
//!
//! For a tail starting at index `x` the same-sign sum is
//!
//! ```text
//! X(x) + X(x+1) + ... ≈ ∫_x^∞ X + X(x)/2 + Σ_{k=1}^{K} e_k ∂^(2k-1) X(x)
//! ```
//!
//! and the alternating sum is
//!
//! ```text
//! X(x) - X(x+1) + ... ≈ X(x)/2 + Σ_{k=1}^{K} f_k ∂^(2k-1) X(x)
//! ```
//!
//! Both expansions are asymptotic: the terms shrink for a while and then
//! grow. The error estimate reported is the magnitude of the first term
//! left out.

use crate::terms::{head_sum, PowerTerm, TermFamily};
use crate::{CoefficientCache, Error, Rational, Result, Scalar};

/// Order cap used when none is configured.
pub const DEFAULT_ORDER_CAP: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// `X + X' + X'' + ...`
    SameSign,
    /// `X - X' + X'' - ...`
    Alternating,
}

/// How many derivative terms to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Fixed(usize),
    /// Stop where the next term is smallest, up to the engine's cap.
    Auto,
}

pub struct TailSumRequest<'a, T> {
    pub term: &'a dyn TermFamily<T>,
    /// Index of the first tail term, at least 1.
    pub start: u64,
    pub case: Case,
    pub order: Order,
}

impl<'a, T> TailSumRequest<'a, T> {
    pub fn new(term: &'a dyn TermFamily<T>, start: u64, case: Case, order: Order) -> Self {
        TailSumRequest {
            term,
            start,
            case,
            order,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Contribution<T> {
    pub label: String,
    pub value: T,
}

impl<T> Contribution<T> {
    fn new(label: impl Into<String>, value: T) -> Self {
        Contribution {
            label: label.into(),
            value,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TailSumResult<T> {
    /// Sum of `contributions`.
    pub value: T,
    /// `integral` (same-sign only), `half`, then `d1`, `d3`, ... for each
    /// derivative order kept.
    pub contributions: Vec<Contribution<T>>,
    /// `|first omitted term|`.
    pub error_estimate: T,
    /// Number of derivative terms kept.
    pub order_used: usize,
    /// Set when the order was limited by the cap: either a fixed order
    /// above the cap was requested, or the automatic choice was still
    /// improving when it reached the cap.
    pub capped: bool,
}

/// A full series evaluated as head plus signed tail.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSum<T> {
    pub value: T,
    /// `Σ_{k=1}^{x-1}` of the (signed) terms.
    pub head: T,
    pub tail: TailSumResult<T>,
    /// Sign the full series gives to the term at the split index.
    pub tail_sign: i8,
}

impl<T: Scalar> SeriesSum<T> {
    /// `head` followed by the tail contributions with the tail sign applied;
    /// these add up to `value`.
    pub fn contributions(&self) -> Vec<Contribution<T>> {
        let mut out = vec![Contribution::new("head", self.head.clone())];
        out.extend(self.tail.contributions.iter().map(|c| {
            let v = if self.tail_sign < 0 {
                -c.value.clone()
            } else {
                c.value.clone()
            };
            Contribution::new(c.label.clone(), v)
        }));
        out
    }
}

/// Stateless evaluator over a shared coefficient cache.
#[derive(Debug, Clone, Copy)]
pub struct Engine<'c> {
    cache: &'c CoefficientCache,
    cap: usize,
}

impl Default for Engine<'static> {
    fn default() -> Self {
        Engine::new()
    }
}

impl Engine<'static> {
    /// Engine on the process-wide cache with the default cap.
    pub fn new() -> Self {
        Engine {
            cache: CoefficientCache::global(),
            cap: DEFAULT_ORDER_CAP,
        }
    }
}

impl<'c> Engine<'c> {
    pub fn with_cache(cache: &'c CoefficientCache) -> Self {
        Engine {
            cache,
            cap: DEFAULT_ORDER_CAP,
        }
    }

    pub fn with_cap(self, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidArgument(
                "order cap must be at least 1".into(),
            ));
        }
        Ok(Engine { cap, ..self })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn tail_sum<T: Scalar>(&self, req: &TailSumRequest<'_, T>) -> Result<TailSumResult<T>> {
        if req.start == 0 {
            return Err(Error::InvalidArgument("tail must start at x >= 1".into()));
        }
        let x = T::from_u64_exact(req.start);
        let term = req.term;

        let mut contributions = Vec::new();
        if req.case == Case::SameSign {
            if !term.supports_same_sign() {
                return Err(term
                    .tail_integral(&x)
                    .err()
                    .unwrap_or(Error::MissingTailIntegral));
            }
            contributions.push(Contribution::new("integral", term.tail_integral(&x)?));
        }
        let half = T::one() / T::from_u64_exact(2);
        contributions.push(Contribution::new("half", term.value(&x)? * half));

        let (limit, fixed_capped) = match req.order {
            Order::Fixed(0) => {
                return Err(Error::InvalidArgument("order must be at least 1".into()))
            }
            Order::Fixed(k) => (k.min(self.cap), k > self.cap),
            Order::Auto => (self.cap, false),
        };

        // terms[k-1] = weight_k · ∂^(2k-1) X(x), one past the limit for the estimate
        let weights = self.cache.weights(limit + 1);
        let weight_list = match req.case {
            Case::SameSign => weights.case1_all(),
            Case::Alternating => weights.case2_all(),
        };
        let mut terms = Vec::with_capacity(limit + 1);
        for (k, w) in (1..=limit + 1).zip(weight_list) {
            let d = term.derivative((2 * k - 1) as u32, &x)?;
            terms.push(T::from_rational(w) * d);
        }

        let (order_used, capped) = match req.order {
            Order::Fixed(_) => (limit, fixed_capped),
            Order::Auto => {
                let order = best_order(&terms);
                let still_falling = order == limit
                    && !terms[limit].is_zero()
                    && terms[limit].abs() < terms[limit - 1].abs();
                (order, still_falling)
            }
        };

        for (k, t) in terms.iter().take(order_used).enumerate() {
            contributions.push(Contribution::new(format!("d{}", 2 * k + 1), t.clone()));
        }
        let value = contributions
            .iter()
            .fold(T::zero(), |acc, c| acc + c.value.clone());
        Ok(TailSumResult {
            value,
            contributions,
            error_estimate: terms[order_used].abs(),
            order_used,
            capped,
        })
    }

    /// Head `Σ_{k<x}` plus the accelerated tail from `x`.
    ///
    /// For alternating series the tail is added with sign `(-1)^(x+1)`, the
    /// sign of the term at index `x` when the series starts `+X(1)`.
    pub fn sum_series<T: Scalar>(
        &self,
        term: &dyn TermFamily<T>,
        split: u64,
        case: Case,
        order: Order,
    ) -> Result<SeriesSum<T>> {
        let alternating = case == Case::Alternating;
        let tail = self.tail_sum(&TailSumRequest::new(term, split, case, order))?;
        let head = head_sum(term, split, alternating)?;
        let tail_sign: i8 = if alternating && split.is_multiple_of(2) { -1 } else { 1 };
        let value = if tail_sign < 0 {
            head.clone() - tail.value.clone()
        } else {
            head.clone() + tail.value.clone()
        };
        Ok(SeriesSum {
            value,
            head,
            tail,
            tail_sign,
        })
    }

    /// `ζ(n) = Σ 1/k^n`, exactly.
    pub fn zeta(&self, n: u32, split: u64, order: Order) -> Result<SeriesSum<Rational>> {
        let term = PowerTerm::new(n)?;
        if n < 2 {
            return Err(Error::Divergent { exponent: n });
        }
        self.sum_series(&term, split, Case::SameSign, order)
    }

    /// `η(n) = Σ (-1)^(k+1)/k^n`, exactly.
    pub fn eta(&self, n: u32, split: u64, order: Order) -> Result<SeriesSum<Rational>> {
        let term = PowerTerm::new(n)?;
        self.sum_series(&term, split, Case::Alternating, order)
    }
}

/// `K` in `1..terms.len()` minimising `|terms[K]|` (the first term left out);
/// ties go to the smaller `K`.
fn best_order<T: Scalar>(terms: &[T]) -> usize {
    let mut best = 1;
    for k in 2..terms.len() {
        if terms[k].abs() < terms[best].abs() {
            best = k;
        }
    }
    best
}

pub fn tail_sum<T: Scalar>(req: &TailSumRequest<'_, T>) -> Result<TailSumResult<T>> {
    Engine::new().tail_sum(req)
}

pub fn sum_series<T: Scalar>(
    term: &dyn TermFamily<T>,
    split: u64,
    case: Case,
    order: Order,
) -> Result<SeriesSum<T>> {
    Engine::new().sum_series(term, split, case, order)
}

pub fn zeta_approx(n: u32, split: u64, order: Order) -> Result<SeriesSum<Rational>> {
    Engine::new().zeta(n, split, order)
}

pub fn eta_approx(n: u32, split: u64, order: Order) -> Result<SeriesSum<Rational>> {
    Engine::new().eta(n, split, order)
}
