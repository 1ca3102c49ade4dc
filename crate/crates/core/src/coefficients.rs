//! Exact coefficient families and the per-order engine weights.
//!
//! The COTH family `a_1, a_2, ... = 1/6, 1/90, 1/945, ...` comes from
//! expanding `u = coth t` as `1/t + 2a_1 t - 2a_2 t³ + 2a_3 t⁵ - ...` and
//! requiring `u' + u² - 1 = 0`, which gives
//!
//! ```text
//! (2m + 1) a_m = 2 Σ_{i+j=m, i,j≥1} a_i a_j        (a_1 = 1/6)
//! ```
//!
//! The TANH family `c_0, c_1, ... = 1, 1/3, 2/15, 17/315, ...` comes from
//! `u = tanh t = c_0 t - c_1 t³ + c_2 t⁵ - ...` in the same equation:
//!
//! ```text
//! (2k + 1) c_k = Σ_{i+j=k-1, i,j≥0} c_i c_j        (c_0 = 1)
//! ```
//!
//! The weight of the derivative of order `2k - 1` is
//! `e_k = (-1)^k a_k / 2^(2k-1)` in the same-sign formula and
//! `f_k = (-1)^k c_(k-1) / 4^k` in the alternating one, and
//! `f_k = (2^(2k) - 1) e_k`.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::int;
use crate::{ExactSeries, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `A, B, C, ...`, 1-indexed (`a_1 = A = 1/6`).
    Coth,
    /// `1, 𝔄, 𝔅, ...`, 0-indexed (`c_0 = 1`, `c_1 = 1/3`).
    Tanh,
}

impl Family {
    /// Index of the first entry.
    pub fn first_index(self) -> usize {
        match self {
            Family::Coth => 1,
            Family::Tanh => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Coth => "coth",
            Family::Tanh => "tanh",
        }
    }
}

/// Append-only table of one coefficient family.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable {
    family: Family,
    values: Vec<Rational>,
}

impl CoefficientTable {
    pub fn new(family: Family) -> Self {
        CoefficientTable {
            family,
            values: Vec::new(),
        }
    }

    /// Table holding externally supplied values, unchecked. Used to feed
    /// the verification battery with tables that did not come from the
    /// recurrences.
    pub fn from_values(family: Family, values: Vec<Rational>) -> Self {
        CoefficientTable { family, values }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// Entry `k` in the family's own indexing.
    pub fn get(&self, k: usize) -> Option<&Rational> {
        k.checked_sub(self.family.first_index())
            .and_then(|i| self.values.get(i))
    }

    /// `(k, value)` pairs in the family's indexing.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &Rational)> {
        let first = self.family.first_index();
        self.values
            .iter()
            .enumerate()
            .map(move |(i, v)| (i + first, v))
    }

    /// Grows the table to `count` entries; existing entries are kept.
    pub fn extend_to(&mut self, count: usize) {
        while self.values.len() < count {
            let next = match self.family {
                Family::Coth => self.next_coth(),
                Family::Tanh => self.next_tanh(),
            };
            self.values.push(next);
        }
    }

    fn next_coth(&self) -> Rational {
        // values[i] = a_{i+1}
        let m = self.values.len() + 1;
        if m == 1 {
            return Rational::new(BigInt::one(), BigInt::from(6));
        }
        let sum = convolve(&self.values, m - 2);
        sum * int(2) / int(2 * m as i64 + 1)
    }

    fn next_tanh(&self) -> Rational {
        let k = self.values.len();
        if k == 0 {
            return Rational::one();
        }
        convolve(&self.values, k - 1) / int(2 * k as i64 + 1)
    }
}

/// `Σ v[i]·v[j]` over ordered pairs with `i + j = target`.
fn convolve(v: &[Rational], target: usize) -> Rational {
    (0..=target)
        .map(|i| &v[i] * &v[target - i])
        .fold(Rational::zero(), |acc, x| acc + x)
}

/// First `count` COTH coefficients `a_1 .. a_count`.
pub fn coth_coefficients(count: usize) -> CoefficientTable {
    let mut t = CoefficientTable::new(Family::Coth);
    t.extend_to(count);
    t
}

/// First `count` TANH coefficients `c_0 .. c_(count-1)`.
pub fn tanh_coefficients(count: usize) -> CoefficientTable {
    let mut t = CoefficientTable::new(Family::Tanh);
    t.extend_to(count);
    t
}

/// Weights of `∂^(2k-1) X` in both summation formulas, `k = 1 ..= max_order`.
#[derive(Debug, Clone, PartialEq)]
pub struct EngineWeights {
    case1: Vec<Rational>,
    case2: Vec<Rational>,
}

impl EngineWeights {
    /// Derives the weights from tables holding at least `max_order`
    /// entries each. Returns `None` when a table is too short.
    pub fn from_tables(
        coth: &CoefficientTable,
        tanh: &CoefficientTable,
        max_order: usize,
    ) -> Option<Self> {
        let mut case1 = Vec::with_capacity(max_order);
        let mut case2 = Vec::with_capacity(max_order);
        for k in 1..=max_order {
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            let pow2 = Rational::from_integer(BigInt::one() << (2 * k - 1));
            case1.push(&sign * coth.get(k)? / pow2);
            let pow4 = Rational::from_integer(BigInt::one() << (2 * k));
            case2.push(sign * tanh.get(k - 1)? / pow4);
        }
        Some(EngineWeights { case1, case2 })
    }

    pub fn max_order(&self) -> usize {
        self.case1.len()
    }

    /// `e_k`, 1-indexed.
    pub fn case1(&self, k: usize) -> Option<&Rational> {
        k.checked_sub(1).and_then(|i| self.case1.get(i))
    }

    /// `f_k`, 1-indexed.
    pub fn case2(&self, k: usize) -> Option<&Rational> {
        k.checked_sub(1).and_then(|i| self.case2.get(i))
    }

    pub fn case1_all(&self) -> &[Rational] {
        &self.case1
    }

    pub fn case2_all(&self) -> &[Rational] {
        &self.case2
    }

    /// `f_k / e_k`.
    pub fn ratio(&self, k: usize) -> Option<Rational> {
        Some(self.case2(k)? / self.case1(k)?)
    }

    /// `1 - z/2 - Σ e_k z^(2k)`: the expansion of `z/(e^z - 1)` implied by
    /// the same-sign weights, known to `order` (needs `2·max_order ≥ order - 1`).
    pub fn case1_generating_series(&self, order: usize) -> Option<ExactSeries> {
        let mut c = vec![Rational::zero(); order];
        if order > 0 {
            c[0] = int(1);
        }
        if order > 1 {
            c[1] = Rational::new(BigInt::from(-1), BigInt::from(2));
        }
        for (deg, slot) in c.iter_mut().enumerate().skip(2) {
            if deg % 2 == 0 {
                *slot = -self.case1(deg / 2)?.clone();
            }
        }
        Some(ExactSeries::new(c))
    }

    /// `1/2 + Σ f_k z^(2k-1)`: the expansion of `1/(1 + e^z)` implied by
    /// the alternating weights, known to `order`.
    pub fn case2_generating_series(&self, order: usize) -> Option<ExactSeries> {
        let mut c = vec![Rational::zero(); order];
        if order > 0 {
            c[0] = Rational::new(BigInt::one(), BigInt::from(2));
        }
        for (deg, slot) in c.iter_mut().enumerate().skip(1) {
            if deg % 2 == 1 {
                *slot = self.case2(deg.div_ceil(2))?.clone();
            }
        }
        Some(ExactSeries::new(c))
    }
}

pub fn engine_weights(max_order: usize) -> EngineWeights {
    let coth = coth_coefficients(max_order);
    let tanh = tanh_coefficients(max_order);
    EngineWeights::from_tables(&coth, &tanh, max_order).expect("tables sized to max_order")
}

/// `f_k / e_k`, which equals `2^(2k) - 1`.
pub fn ratio_identity_check(k: usize) -> Rational {
    assert!(k >= 1, "ratio identity is defined for k >= 1");
    engine_weights(k).ratio(k).expect("weights computed to k")
}

/// `a_k = ζ(2k) / π^(2k)`.
pub fn zeta_relation(k: usize) -> Rational {
    assert!(k >= 1, "zeta relation is defined for k >= 1");
    coth_coefficients(k)
        .get(k)
        .cloned()
        .expect("table computed to k")
}

/// Shared, lazily extended coefficient tables.
///
/// Readers take a shared lock; growing a table takes the write lock, and
/// entries already present are never modified.
#[derive(Debug)]
pub struct CoefficientCache {
    coth: RwLock<CoefficientTable>,
    tanh: RwLock<CoefficientTable>,
}

impl Default for CoefficientCache {
    fn default() -> Self {
        Self::new()
    }
}

impl CoefficientCache {
    pub fn new() -> Self {
        CoefficientCache {
            coth: RwLock::new(CoefficientTable::new(Family::Coth)),
            tanh: RwLock::new(CoefficientTable::new(Family::Tanh)),
        }
    }

    /// Process-wide cache used by the free functions of the engine.
    pub fn global() -> &'static CoefficientCache {
        static CACHE: OnceLock<CoefficientCache> = OnceLock::new();
        CACHE.get_or_init(CoefficientCache::new)
    }

    fn ensure(lock: &RwLock<CoefficientTable>, count: usize) {
        if lock.read().expect("coefficient cache poisoned").len() >= count {
            return;
        }
        lock.write()
            .expect("coefficient cache poisoned")
            .extend_to(count);
    }

    /// Snapshot of the first `count` entries of a family.
    pub fn table(&self, family: Family, count: usize) -> CoefficientTable {
        let lock = match family {
            Family::Coth => &self.coth,
            Family::Tanh => &self.tanh,
        };
        Self::ensure(lock, count);
        let t = lock.read().expect("coefficient cache poisoned");
        CoefficientTable::from_values(family, t.values()[..count].to_vec())
    }

    pub fn weights(&self, max_order: usize) -> EngineWeights {
        let coth = self.table(Family::Coth, max_order);
        let tanh = self.table(Family::Tanh, max_order);
        EngineWeights::from_tables(&coth, &tanh, max_order).expect("tables sized to max_order")
    }

    /// Number of entries currently held for a family.
    pub fn len(&self, family: Family) -> usize {
        match family {
            Family::Coth => self.coth.read().expect("coefficient cache poisoned").len(),
            Family::Tanh => self.tanh.read().expect("coefficient cache poisoned").len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;
    use crate::oracle::bernoulli_numbers;
    use crate::series::RatioKind;
    use num_traits::Signed;

    fn r(n: i64, d: i64) -> Rational {
        ratio(n, d).unwrap()
    }

    #[test]
    fn coth_first_values() {
        let t = coth_coefficients(5);
        let want = [r(1, 6), r(1, 90), r(1, 945), r(1, 9450), r(1, 93555)];
        assert_eq!(t.values(), &want);
        assert_eq!(t.get(1), Some(&r(1, 6)));
        assert_eq!(t.get(0), None);
    }

    #[test]
    fn tanh_first_values() {
        let t = tanh_coefficients(5);
        let want = [r(1, 1), r(1, 3), r(2, 15), r(17, 315), r(62, 2835)];
        assert_eq!(t.values(), &want);
        assert_eq!(t.get(0), Some(&r(1, 1)));
    }

    #[test]
    fn recurrences_match_hyperbolic_series() {
        let coth = coth_coefficients(20);
        let tanh = tanh_coefficients(21);
        let coth_series = ExactSeries::ratio_even_odd(42, RatioKind::Coth).unwrap();
        let tanh_series = ExactSeries::ratio_even_odd(44, RatioKind::Tanh).unwrap();
        for k in 1..=20 {
            // t·coth t = 1 + Σ 2(-1)^(k+1) a_k t^(2k)
            let sign = if k % 2 == 1 { r(1, 2) } else { r(-1, 2) };
            assert_eq!(
                coth.get(k).unwrap(),
                &(sign * coth_series.coeff(2 * k).unwrap())
            );
        }
        for k in 0..=20 {
            let sign = if k % 2 == 0 { r(1, 1) } else { r(-1, 1) };
            assert_eq!(
                tanh.get(k).unwrap(),
                &(sign * tanh_series.coeff(2 * k + 1).unwrap())
            );
        }
        assert_eq!(coth.get(6), Some(&r(691, 638512875)));
        assert_eq!(tanh.get(5), Some(&r(1382, 155925)));
    }

    #[test]
    fn bernoulli_cross_oracle() {
        let b = bernoulli_numbers(41);
        let coth = coth_coefficients(20);
        let mut fact = BigInt::one();
        for k in 1..=20usize {
            fact *= BigInt::from((2 * k - 1) * 2 * k);
            let want = b[2 * k].abs() * Rational::from_integer(BigInt::one() << (2 * k - 1))
                / Rational::from_integer(fact.clone());
            assert_eq!(coth.get(k).unwrap(), &want, "k = {k}");
        }
    }

    #[test]
    fn weights_examples() {
        let w = engine_weights(3);
        assert_eq!(w.case1_all(), &[r(-1, 12), r(1, 720), r(-1, 30240)]);
        assert_eq!(w.case2(1), Some(&r(-1, 4)));
        assert_eq!(w.case2(2), Some(&r(1, 48)));
        assert_eq!(w.case2(3), Some(&r(-1, 480)));
        assert_eq!(w.case1(0), None);
        assert_eq!(w.case1(4), None);
    }

    #[test]
    fn weight_signs_alternate() {
        let w = engine_weights(20);
        for k in 1..=20 {
            let expect_positive = k % 2 == 0;
            assert_eq!(w.case1(k).unwrap().is_positive(), expect_positive);
            assert_eq!(w.case2(k).unwrap().is_positive(), expect_positive);
        }
    }

    #[test]
    fn ratio_identity() {
        assert_eq!(ratio_identity_check(1), r(3, 1));
        assert_eq!(ratio_identity_check(2), r(15, 1));
        assert_eq!(ratio_identity_check(5), r(1023, 1));
        let w = engine_weights(17);
        for k in 1..=17 {
            let want = Rational::from_integer((BigInt::one() << (2 * k)) - 1);
            assert_eq!(w.ratio(k).unwrap(), want);
        }
    }

    #[test]
    fn zeta_relations() {
        assert_eq!(zeta_relation(1), r(1, 6));
        assert_eq!(zeta_relation(2), r(1, 90));
        assert_eq!(zeta_relation(3), r(1, 945));
    }

    #[test]
    fn positive_and_decreasing() {
        let coth = coth_coefficients(34);
        let tanh = tanh_coefficients(34);
        assert!(coth.values().iter().all(|v| v.is_positive()));
        assert!(tanh.values().iter().all(|v| v.is_positive()));
        for pair in coth.values().windows(2) {
            assert!(pair[1] < pair[0]);
        }
        // a_34 = ζ(68)/π^68 ≈ 1.4e-34
        let a34 = coth.get(34).unwrap();
        assert!(a34 < &Rational::new(BigInt::one(), crate::exact::pow10(33)));
        assert!(a34 > &Rational::new(BigInt::one(), crate::exact::pow10(35)));
    }

    #[test]
    fn extension_is_stable() {
        let mut t = coth_coefficients(10);
        let first: Vec<_> = t.values().to_vec();
        t.extend_to(20);
        assert_eq!(&t.values()[..10], first.as_slice());
        assert_eq!(t.values(), coth_coefficients(20).values());
    }

    #[test]
    fn generating_series_identities() {
        let w = engine_weights(12);
        let v1 = w.case1_generating_series(20).unwrap();
        // (e^z - 1)/z has coefficients 1/(k+1)!
        let exp = ExactSeries::exp(21);
        let em1_over_z = ExactSeries::new(exp.coefficients()[1..].to_vec());
        assert_eq!(&v1 * &em1_over_z, ExactSeries::one(20));

        let v2 = w.case2_generating_series(20).unwrap();
        let one_plus_exp = &ExactSeries::one(20) + &ExactSeries::exp(20);
        assert_eq!(&v2 * &one_plus_exp, ExactSeries::one(20));

        assert!(w.case1_generating_series(40).is_none());
    }

    #[test]
    fn cache_is_shared_and_stable() {
        let cache = CoefficientCache::new();
        let small = cache.weights(4);
        let big = cache.weights(12);
        assert_eq!(&big.case1_all()[..4], small.case1_all());
        assert_eq!(cache.len(Family::Coth), 12);
        std::thread::scope(|s| {
            for n in [5usize, 17, 9, 30] {
                let cache = &cache;
                s.spawn(move || {
                    let t = cache.table(Family::Tanh, n);
                    assert_eq!(t.values(), tanh_coefficients(n).values());
                });
            }
        });
        assert_eq!(cache.len(Family::Tanh), 30);
    }
}
