//! Table, JSON and CSV renderings of command results.
//!
//! Decimals are rendered from exact rationals, so output is identical on
//! every platform and locale.

use clap::ValueEnum;
use eulersum::coefficients::{CoefficientTable, EngineWeights};
use eulersum::exact::{to_decimal, to_fraction};
use eulersum::verify::Report;
use eulersum::{Contribution, Rational, SeriesSum, TailSumResult};
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// One result in all three output formats.
pub struct Rendered {
    table: String,
    json: Value,
    csv: Vec<Vec<String>>,
}

impl Rendered {
    pub fn to_format(&self, format: Format) -> String {
        match format {
            Format::Table => self.table.clone(),
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &self.csv {
                    w.write_record(row).expect("in-memory CSV write");
                }
                String::from_utf8(w.into_inner().expect("in-memory CSV flush"))
                    .expect("CSV is UTF-8")
            }
        }
    }
}

fn to_json(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

/// Left-aligned columns separated by two spaces.
fn columns(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..width)
        .map(|i| {
            rows.iter()
                .filter_map(|r| r.get(i))
                .map(|c| c.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if i + 1 == row.len() {
                    c.clone()
                } else {
                    format!("{c:<w$}", w = widths[i])
                }
            })
            .collect();
        out.push_str(&line.join("  "));
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct CoefficientRow {
    k: usize,
    family: &'static str,
    numerator: String,
    denominator: String,
    decimal: String,
}

pub fn table(table: &CoefficientTable, digits: usize) -> Rendered {
    let family = table.family().name();
    let rows: Vec<CoefficientRow> = table
        .entries()
        .map(|(k, v)| CoefficientRow {
            k,
            family,
            numerator: v.numer().to_string(),
            denominator: v.denom().to_string(),
            decimal: to_decimal(v, digits),
        })
        .collect();

    let mut text = vec![vec!["k".to_string(), "fraction".into(), "decimal".into()]];
    text.extend(rows.iter().map(|r| {
        vec![
            r.k.to_string(),
            format!("{}/{}", r.numerator, r.denominator),
            r.decimal.clone(),
        ]
    }));

    let mut csv = vec![vec![
        "k".to_string(),
        "family".into(),
        "numerator".into(),
        "denominator".into(),
        "decimal".into(),
    ]];
    csv.extend(rows.iter().map(|r| {
        vec![
            r.k.to_string(),
            r.family.to_string(),
            r.numerator.clone(),
            r.denominator.clone(),
            r.decimal.clone(),
        ]
    }));

    Rendered {
        table: columns(&text),
        json: to_json(&rows),
        csv,
    }
}

#[derive(Serialize)]
struct WeightRow {
    k: usize,
    case1_weight: String,
    case1_decimal: String,
    case2_weight: String,
    case2_decimal: String,
    ratio: String,
}

fn compact(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        to_fraction(r)
    }
}

pub fn weights(w: &EngineWeights, digits: usize) -> Rendered {
    let rows: Vec<WeightRow> = (1..=w.max_order())
        .map(|k| {
            let e = w.case1(k).expect("k within max_order");
            let f = w.case2(k).expect("k within max_order");
            WeightRow {
                k,
                case1_weight: to_fraction(e),
                case1_decimal: to_decimal(e, digits),
                case2_weight: to_fraction(f),
                case2_decimal: to_decimal(f, digits),
                ratio: compact(&w.ratio(k).expect("k within max_order")),
            }
        })
        .collect();

    let mut text = vec![vec![
        "k".to_string(),
        "e_k (same sign)".into(),
        "f_k (alternating)".into(),
        "f_k/e_k".into(),
    ]];
    text.extend(rows.iter().map(|r| {
        vec![
            r.k.to_string(),
            r.case1_weight.clone(),
            r.case2_weight.clone(),
            r.ratio.clone(),
        ]
    }));

    let mut csv = vec![vec![
        "k".to_string(),
        "case1_weight".into(),
        "case1_decimal".into(),
        "case2_weight".into(),
        "case2_decimal".into(),
        "ratio".into(),
    ]];
    csv.extend(rows.iter().map(|r| {
        vec![
            r.k.to_string(),
            r.case1_weight.clone(),
            r.case1_decimal.clone(),
            r.case2_weight.clone(),
            r.case2_decimal.clone(),
            r.ratio.clone(),
        ]
    }));

    Rendered {
        table: columns(&text),
        json: to_json(&rows),
        csv,
    }
}

#[derive(Serialize)]
struct RationalJson {
    num: String,
    den: String,
}

#[derive(Serialize)]
struct ContributionJson {
    label: String,
    decimal: String,
}

#[derive(Serialize)]
struct ResultJson {
    value_decimal: String,
    value_rational: RationalJson,
    order_used: usize,
    error_estimate_decimal: String,
    contributions: Vec<ContributionJson>,
}

fn result(
    title: &str,
    value: &Rational,
    error: &Rational,
    order_used: usize,
    capped: bool,
    contributions: &[Contribution<Rational>],
    digits: usize,
) -> Rendered {
    let json = ResultJson {
        value_decimal: to_decimal(value, digits),
        value_rational: RationalJson {
            num: value.numer().to_string(),
            den: value.denom().to_string(),
        },
        order_used,
        error_estimate_decimal: to_decimal(error, digits),
        contributions: contributions
            .iter()
            .map(|c| ContributionJson {
                label: c.label.clone(),
                decimal: to_decimal(&c.value, digits),
            })
            .collect(),
    };

    let order_note = if capped {
        format!("{order_used} (cap reached)")
    } else {
        order_used.to_string()
    };
    let mut text = vec![
        vec!["value".to_string(), json.value_decimal.clone()],
        vec![
            "error estimate".to_string(),
            json.error_estimate_decimal.clone(),
        ],
        vec!["order used".to_string(), order_note],
        vec!["contributions".to_string()],
    ];
    text.extend(
        json.contributions
            .iter()
            .map(|c| vec![format!("  {}", c.label), c.decimal.clone()]),
    );
    let table = format!("{title}\n{}", columns(&text));

    let mut csv = vec![vec![
        "label".to_string(),
        "fraction".into(),
        "decimal".into(),
    ]];
    csv.push(vec![
        "value".into(),
        to_fraction(value),
        json.value_decimal.clone(),
    ]);
    csv.push(vec![
        "error_estimate".into(),
        to_fraction(error),
        json.error_estimate_decimal.clone(),
    ]);
    csv.push(vec![
        "order_used".into(),
        format!("{order_used}/1"),
        to_decimal(&Rational::from_integer(order_used.into()), digits),
    ]);
    csv.extend(contributions.iter().map(|c| {
        vec![
            c.label.clone(),
            to_fraction(&c.value),
            to_decimal(&c.value, digits),
        ]
    }));

    Rendered {
        table,
        json: to_json(&json),
        csv,
    }
}

pub fn tail(title: &str, res: &TailSumResult<Rational>, digits: usize) -> Rendered {
    result(
        title,
        &res.value,
        &res.error_estimate,
        res.order_used,
        res.capped,
        &res.contributions,
        digits,
    )
}

pub fn series(title: &str, sum: &SeriesSum<Rational>, digits: usize) -> Rendered {
    result(
        title,
        &sum.value,
        &sum.tail.error_estimate,
        sum.tail.order_used,
        sum.tail.capped,
        &sum.contributions(),
        digits,
    )
}

#[derive(Serialize)]
struct CheckJson<'a> {
    name: &'a str,
    passed: bool,
    detail: &'a str,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    depth: usize,
    passed: bool,
    checks: Vec<CheckJson<'a>>,
}

pub fn report(report: &Report) -> Rendered {
    let checks: Vec<CheckJson<'_>> = report
        .checks
        .iter()
        .map(|c| CheckJson {
            name: &c.name,
            passed: c.passed,
            detail: &c.detail,
        })
        .collect();
    let mut csv = vec![vec!["check".to_string(), "status".into(), "detail".into()]];
    csv.extend(report.checks.iter().map(|c| {
        vec![
            c.name.clone(),
            if c.passed { "pass" } else { "fail" }.to_string(),
            c.detail.clone(),
        ]
    }));
    let json = to_json(ReportJson {
        depth: report.depth,
        passed: report.passed(),
        checks,
    });
    Rendered {
        table: format!("{report}\n"),
        json,
        csv,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use eulersum::{coth_coefficients, engine_weights, zeta_approx, Order};

    #[test]
    fn coefficient_csv() {
        let out = table(&coth_coefficients(2), 5).to_format(Format::Csv);
        assert_eq!(
            out,
            "k,family,numerator,denominator,decimal\n1,coth,1,6,0.16667\n2,coth,1,90,0.01111\n"
        );
    }

    #[test]
    fn weight_ratios() {
        let out = weights(&engine_weights(3), 4).to_format(Format::Csv);
        let ratios: Vec<&str> = out
            .lines()
            .skip(1)
            .map(|l| l.rsplit(',').next().unwrap())
            .collect();
        assert_eq!(ratios, ["3", "15", "63"]);
    }

    #[test]
    fn json_round_trips_byte_for_byte() {
        let sum = zeta_approx(3, 10, Order::Fixed(4)).unwrap();
        let text = series("zeta(3)", &sum, 20).to_format(Format::Json);
        let parsed: Value = serde_json::from_str(&text).unwrap();
        let again = serde_json::to_string_pretty(&parsed).unwrap() + "\n";
        assert_eq!(text, again);
        let keys: Vec<&String> = parsed.as_object().unwrap().keys().collect();
        assert_eq!(
            keys,
            [
                "value_decimal",
                "value_rational",
                "order_used",
                "error_estimate_decimal",
                "contributions"
            ]
        );
    }

    #[test]
    fn table_alignment() {
        let rows = vec![
            vec!["a".to_string(), "bbb".into()],
            vec!["cccc".to_string(), "d".into()],
        ];
        assert_eq!(columns(&rows), "a     bbb\ncccc  d\n");
    }
}
