//! Cross-check battery over a pair of coefficient tables.
//!
//! Each check compares the tables against a route that does not use them:
//! power-series quotients, the ODE residual, Bernoulli numbers, the
//! generating-function identities and numeric zeta/eta values.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::coefficients::{CoefficientTable, EngineWeights, Family};
use crate::engine::{Case, Engine, Order};
use crate::exact::{int, to_fraction};
use crate::oracle::{bernoulli_numbers, compute_ln2, compute_pi};
use crate::series::RatioKind;
use crate::terms::PowerTerm;
use crate::{coth_coefficients, tanh_coefficients, ExactSeries, Rational};

/// Outcome of one named identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag}  {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub depth: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verification battery, depth {}", self.depth)?;
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let ok = self.checks.iter().filter(|c| c.passed).count();
        write!(f, "{ok}/{} checks passed", self.checks.len())
    }
}

/// Runs the battery on freshly computed tables.
pub fn run(depth: usize) -> Report {
    let coth = coth_coefficients(depth);
    let tanh = tanh_coefficients(depth + 1);
    run_with_tables(depth, &coth, &tanh)
}

/// Runs the battery on the given tables; `coth` needs `depth` entries and
/// `tanh` needs `depth + 1`. Short tables fail the first check.
pub fn run_with_tables(depth: usize, coth: &CoefficientTable, tanh: &CoefficientTable) -> Report {
    let depth = depth.max(1);
    let mut checks = Vec::new();
    let mut push = |name: String, result: Result<(), String>| {
        let (passed, detail) = match result {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        checks.push(Check {
            name,
            passed,
            detail,
        });
    };

    let sized = coth.family() == Family::Coth
        && tanh.family() == Family::Tanh
        && coth.len() >= depth
        && tanh.len() > depth;
    push(
        format!("tables hold coth a_1..a_{depth} and tanh c_0..c_{depth}"),
        if sized {
            Ok(())
        } else {
            Err(format!(
                "got {} coth and {} tanh entries",
                coth.len(),
                tanh.len()
            ))
        },
    );
    if !sized {
        return Report { depth, checks };
    }

    push(
        "first entries a_1 = 1/6, c_0 = 1, c_1 = 1/3".to_string(),
        first_entries(coth, tanh),
    );
    push(
        format!("coth recurrence = t*coth(t) series quotient (k <= {depth})"),
        coth_vs_series(coth, depth),
    );
    push(
        format!("tanh recurrence = tanh(t) series quotient (k <= {depth})"),
        tanh_vs_series(tanh, depth),
    );
    push(
        format!(
            "ODE u' + u^2 - 1 = 0 residual vanishes (both expansions, degree <= {})",
            2 * depth
        ),
        ode_residuals(coth, tanh, depth),
    );
    push(
        format!("coth a_k = |B_2k| 2^(2k-1)/(2k)! (k <= {depth})"),
        bernoulli_check(coth, depth),
    );

    let weights = EngineWeights::from_tables(coth, tanh, depth).expect("tables sized above");
    push(
        format!(
            "V (e^z - 1)/z = 1 with V from same-sign weights (order {})",
            2 * depth + 1
        ),
        case1_identity(&weights, depth),
    );
    push(
        format!(
            "V (1 + e^z) = 1 with V from alternating weights (order {})",
            2 * depth
        ),
        case2_identity(&weights, depth),
    );
    push(
        format!("f_k / e_k = 2^(2k) - 1 (k <= {depth})"),
        ratio_identity(&weights, depth),
    );

    let numeric_depth = depth.min(3);
    push(
        format!("a_k pi^(2k) = zeta(2k) at split 10 (k <= {numeric_depth})"),
        zeta_relations(coth, numeric_depth),
    );
    push("eta(1) at split 10 = ln 2".to_string(), eta_ln2());
    Report { depth, checks }
}

fn mismatch(what: &str, k: usize, got: &Rational, want: &Rational) -> String {
    format!(
        "{what} at k = {k}: table has {}, expected {}",
        to_fraction(got),
        to_fraction(want)
    )
}

fn first_entries(coth: &CoefficientTable, tanh: &CoefficientTable) -> Result<(), String> {
    let checks = [
        (
            coth.get(1),
            Rational::new(BigInt::one(), BigInt::from(6)),
            "a",
            1,
        ),
        (tanh.get(0), Rational::one(), "c", 0),
        (
            tanh.get(1),
            Rational::new(BigInt::one(), BigInt::from(3)),
            "c",
            1,
        ),
    ];
    for (got, want, name, k) in checks {
        let got = got.expect("sized");
        if got != &want {
            return Err(mismatch(name, k, got, &want));
        }
    }
    Ok(())
}

fn coth_vs_series(coth: &CoefficientTable, depth: usize) -> Result<(), String> {
    let series =
        ExactSeries::ratio_even_odd(2 * depth + 1, RatioKind::Coth).map_err(|e| e.to_string())?;
    for k in 1..=depth {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let sign = if k % 2 == 1 { half } else { -half };
        let want = sign * series.coeff(2 * k).expect("order covers 2k");
        let got = coth.get(k).expect("sized");
        if got != &want {
            return Err(mismatch("a", k, got, &want));
        }
    }
    Ok(())
}

fn tanh_vs_series(tanh: &CoefficientTable, depth: usize) -> Result<(), String> {
    let series =
        ExactSeries::ratio_even_odd(2 * depth + 2, RatioKind::Tanh).map_err(|e| e.to_string())?;
    for k in 0..=depth {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        let want = sign * series.coeff(2 * k + 1).expect("order covers 2k+1");
        let got = tanh.get(k).expect("sized");
        if got != &want {
            return Err(mismatch("c", k, got, &want));
        }
    }
    Ok(())
}

/// Builds `t·coth t` and `tanh t` from the tables and checks the ODE.
fn ode_residuals(
    coth: &CoefficientTable,
    tanh: &CoefficientTable,
    depth: usize,
) -> Result<(), String> {
    let order = 2 * depth + 1;
    let mut w = vec![int(0); order];
    w[0] = int(1);
    for k in 1..=depth {
        let sign = if k % 2 == 1 { 2 } else { -2 };
        w[2 * k] = int(sign) * coth.get(k).expect("sized");
    }
    let res = ExactSeries::new(w).ode_residual(RatioKind::Coth);
    if let Some(deg) = res
        .coefficients()
        .iter()
        .position(|c| !num_traits::Zero::is_zero(c))
    {
        return Err(format!("coth residual nonzero at degree {deg}"));
    }

    let order = 2 * depth + 2;
    let mut u = vec![int(0); order];
    for k in 0..=depth {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        u[2 * k + 1] = int(sign) * tanh.get(k).expect("sized");
    }
    let res = ExactSeries::new(u).ode_residual(RatioKind::Tanh);
    if let Some(deg) = res
        .coefficients()
        .iter()
        .position(|c| !num_traits::Zero::is_zero(c))
    {
        return Err(format!("tanh residual nonzero at degree {deg}"));
    }
    Ok(())
}

fn bernoulli_check(coth: &CoefficientTable, depth: usize) -> Result<(), String> {
    let b = bernoulli_numbers(2 * depth + 1);
    let mut fact = BigInt::one();
    for k in 1..=depth {
        fact *= BigInt::from((2 * k - 1) * 2 * k);
        let want = b[2 * k].abs() * Rational::from_integer(BigInt::one() << (2 * k - 1))
            / Rational::from_integer(fact.clone());
        let got = coth.get(k).expect("sized");
        if got != &want {
            return Err(mismatch("a", k, got, &want));
        }
    }
    Ok(())
}

fn case1_identity(weights: &EngineWeights, depth: usize) -> Result<(), String> {
    let order = 2 * depth + 1;
    let v = weights
        .case1_generating_series(order)
        .expect("weights cover order");
    let exp = ExactSeries::exp(order + 1);
    let em1_over_z = ExactSeries::new(exp.coefficients()[1..].to_vec());
    let product = &v * &em1_over_z;
    if product != ExactSeries::one(order) {
        return Err(first_deviation(&product));
    }
    // Direct quotient z/(e^z - 1) agrees too.
    let z = ExactSeries::variable(order + 1);
    let direct = z
        .checked_div(&(&exp - &ExactSeries::one(order + 1)))
        .map_err(|e| e.to_string())?;
    if direct != v {
        return Err("z/(e^z - 1) quotient differs from weight expansion".into());
    }
    Ok(())
}

fn case2_identity(weights: &EngineWeights, depth: usize) -> Result<(), String> {
    let order = 2 * depth;
    let v = weights
        .case2_generating_series(order)
        .expect("weights cover order");
    let denom = &ExactSeries::one(order) + &ExactSeries::exp(order);
    let product = &v * &denom;
    if product != ExactSeries::one(order) {
        return Err(first_deviation(&product));
    }
    let direct = ExactSeries::one(order)
        .checked_div(&denom)
        .map_err(|e| e.to_string())?;
    if direct != v {
        return Err("1/(1 + e^z) quotient differs from weight expansion".into());
    }
    Ok(())
}

fn first_deviation(product: &ExactSeries) -> String {
    let one = ExactSeries::one(product.order());
    let deg = product
        .coefficients()
        .iter()
        .zip(one.coefficients())
        .position(|(a, b)| a != b)
        .unwrap_or(0);
    format!(
        "product differs from 1 at degree {deg} (coefficient {})",
        to_fraction(&product.coefficients()[deg])
    )
}

fn ratio_identity(weights: &EngineWeights, depth: usize) -> Result<(), String> {
    for k in 1..=depth {
        let want = Rational::from_integer((BigInt::one() << (2 * k)) - 1);
        let got = weights.ratio(k).expect("weights cover depth");
        if got != want {
            return Err(mismatch("f/e", k, &got, &want));
        }
    }
    Ok(())
}

/// `a_k π^(2k)` against the accelerated `ζ(2k)`, within the π bound plus
/// the engine's error estimate.
fn zeta_relations(coth: &CoefficientTable, depth: usize) -> Result<(), String> {
    let pi = compute_pi(40);
    let engine = Engine::new();
    for k in 1..=depth {
        let n = 2 * k as u32;
        let sum = engine.zeta(n, 10, Order::Auto).map_err(|e| e.to_string())?;
        let (pi_pow, pi_err) = pi.powi(n);
        let a = coth.get(k).expect("sized");
        let predicted = a * pi_pow;
        let allowed = a * pi_err + &sum.tail.error_estimate;
        let diff = (&predicted - &sum.value).abs();
        if diff > allowed {
            return Err(format!(
                "k = {k}: |a_k pi^{n} - zeta({n})| = {} exceeds {}",
                crate::exact::to_decimal(&diff, 40),
                crate::exact::to_decimal(&allowed, 40)
            ));
        }
    }
    Ok(())
}

fn eta_ln2() -> Result<(), String> {
    let ln2 = compute_ln2(30);
    let term = PowerTerm::new(1).expect("exponent 1 is valid");
    let sum = Engine::new()
        .sum_series::<Rational>(&term, 10, Case::Alternating, Order::Auto)
        .map_err(|e| e.to_string())?;
    let slack = int(10) * &sum.tail.error_estimate;
    if ln2.agrees_with(&sum.value, &slack) {
        Ok(())
    } else {
        Err(format!(
            "eta(1) = {} but ln 2 = {}",
            crate::exact::to_decimal(&sum.value, 20),
            crate::exact::to_decimal(&ln2.value, 20)
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_passes() {
        for depth in [1, 2, 10] {
            let report = run(depth);
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn tampered_table_fails() {
        let mut values = coth_coefficients(10).values().to_vec();
        values[4] = Rational::new(BigInt::one(), BigInt::from(93556));
        let coth = CoefficientTable::from_values(Family::Coth, values);
        let report = run_with_tables(10, &coth, &tanh_coefficients(11));
        assert!(!report.passed());
        let first = report.first_failure().unwrap();
        assert!(first.name.contains("coth recurrence"), "{first}");
        assert!(first.detail.contains("k = 5"));
    }

    #[test]
    fn short_tables_fail_early() {
        let report = run_with_tables(5, &coth_coefficients(3), &tanh_coefficients(6));
        assert_eq!(report.checks.len(), 1);
        assert!(!report.passed());
    }
}
