//! Output records.
//!
//! In `records` format every line is one JSON object whose first key,
//! `record`, names its type; the remaining keys follow in the order declared
//! below. Floats are rounded to 12 significant digits before printing, so
//! parsing a line into [`Record`] and serializing it again reproduces it byte
//! for byte. The first line of every run is a `header`.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "snake_case")]
pub enum Record {
    Header {
        schema_version: String,
        command: String,
        argv: Vec<String>,
        base: u32,
        tol: f64,
        seed: Option<u64>,
    },
    /// `digits`: one row per leading digit.
    Digit {
        digit: u32,
        probability: f64,
    },
    DigitSum {
        sum: f64,
    },
    /// `fit`: where the data came from.
    Input {
        path: String,
        input_format: String,
        column: String,
        absolute_value: bool,
    },
    /// `sequence`: the generated terms.
    Sequence {
        kind: String,
        n: u64,
        last_significand: f64,
        last_exponent: i64,
    },
    /// `fit` / `sequence`: observed against NB, per digit.
    DigitCount {
        digit: u32,
        count: u64,
        observed: f64,
        expected: f64,
    },
    Conformance {
        n_used: u64,
        skipped_nonpositive: u64,
        skipped_nonfinite: u64,
        chi_square_statistic: Option<f64>,
        chi_square_pvalue: Option<f64>,
        chi_square_dof: Option<u32>,
        ks_stat: f64,
        tv_distance: f64,
    },
    /// `wrap`: one grid point.
    Curve {
        x: f64,
        wrapped_pdf: f64,
        nb_pdf: f64,
        difference: f64,
    },
    Distance {
        distribution: String,
        sup: f64,
        tv: f64,
    },
    Entropy {
        distribution: String,
        entropy: f64,
        mean_log: f64,
        gibbs_bound: f64,
        gibbs_gap: f64,
        nb_entropy: f64,
        constraint_met: bool,
        quadrature_error_estimate: f64,
    },
}

/// Rounds to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

impl Record {
    /// Copy with every float rounded by [`round12`].
    pub fn rounded(self) -> Record {
        let r = round12;
        let ro = |x: Option<f64>| x.map(round12);
        match self {
            Record::Header {
                schema_version,
                command,
                argv,
                base,
                tol,
                seed,
            } => Record::Header {
                schema_version,
                command,
                argv,
                base,
                tol: r(tol),
                seed,
            },
            Record::Digit { digit, probability } => Record::Digit {
                digit,
                probability: r(probability),
            },
            Record::DigitSum { sum } => Record::DigitSum { sum: r(sum) },
            rec @ Record::Input { .. } => rec,
            Record::Sequence {
                kind,
                n,
                last_significand,
                last_exponent,
            } => Record::Sequence {
                kind,
                n,
                last_significand: r(last_significand),
                last_exponent,
            },
            Record::DigitCount {
                digit,
                count,
                observed,
                expected,
            } => Record::DigitCount {
                digit,
                count,
                observed: r(observed),
                expected: r(expected),
            },
            Record::Conformance {
                n_used,
                skipped_nonpositive,
                skipped_nonfinite,
                chi_square_statistic,
                chi_square_pvalue,
                chi_square_dof,
                ks_stat,
                tv_distance,
            } => Record::Conformance {
                n_used,
                skipped_nonpositive,
                skipped_nonfinite,
                chi_square_statistic: ro(chi_square_statistic),
                chi_square_pvalue: ro(chi_square_pvalue),
                chi_square_dof,
                ks_stat: r(ks_stat),
                tv_distance: r(tv_distance),
            },
            Record::Curve {
                x,
                wrapped_pdf,
                nb_pdf,
                difference,
            } => Record::Curve {
                x: r(x),
                wrapped_pdf: r(wrapped_pdf),
                nb_pdf: r(nb_pdf),
                difference: r(difference),
            },
            Record::Distance {
                distribution,
                sup,
                tv,
            } => Record::Distance {
                distribution,
                sup: r(sup),
                tv: r(tv),
            },
            Record::Entropy {
                distribution,
                entropy,
                mean_log,
                gibbs_bound,
                gibbs_gap,
                nb_entropy,
                constraint_met,
                quadrature_error_estimate,
            } => Record::Entropy {
                distribution,
                entropy: r(entropy),
                mean_log: r(mean_log),
                gibbs_bound: r(gibbs_bound),
                gibbs_gap: r(gibbs_gap),
                nb_entropy: r(nb_entropy),
                constraint_met,
                quadrature_error_estimate: r(quadrature_error_estimate),
            },
        }
    }

    /// One JSON line, without the trailing newline.
    pub fn to_line(&self) -> String {
        serde_json::to_string(&self.clone().rounded()).expect("records always serialize")
    }
}

/// 12 significant digits, plain notation where that stays readable.
pub fn sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..12).contains(&mag) {
        format!("{:.*}", (11 - mag) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".into(), sig12)
}

/// Human-readable rendering of a run.
pub fn render_human(records: &[Record]) -> String {
    let mut out = String::new();
    let mut last_kind = "";
    for rec in records {
        let kind = match rec {
            Record::Digit { .. } => "digit",
            Record::DigitCount { .. } => "count",
            Record::Curve { .. } => "curve",
            _ => "",
        };
        if kind != last_kind && !kind.is_empty() {
            out.push_str(match kind {
                "digit" => "digit  probability\n",
                "count" => "digit  count  observed  expected\n",
                _ => "x  wrapped_pdf  nb_pdf  difference\n",
            });
        }
        last_kind = kind;
        let line = match rec {
            Record::Header { command, base, tol, seed, .. } => {
                let seed = seed.map_or_else(String::new, |s| format!(", seed {s}"));
                format!("# benford {command} (base {base}, tol {tol:e}{seed})")
            }
            Record::Digit { digit, probability } => format!("{digit:>5}  {probability:.12}"),
            Record::DigitSum { sum } => format!("  sum  {sum:.12}"),
            Record::Input {
                path,
                input_format,
                column,
                absolute_value,
            } => format!("input: {path} ({input_format}), column {column}, absolute value {absolute_value}"),
            Record::Sequence {
                kind,
                n,
                last_significand,
                last_exponent,
            } => format!("sequence: {kind}, {n} terms, last = {}e{last_exponent}", sig12(*last_significand)),
            Record::DigitCount {
                digit,
                count,
                observed,
                expected,
            } => format!("{digit:>5}  {count}  {}  {}", sig12(*observed), sig12(*expected)),
            Record::Conformance {
                n_used,
                skipped_nonpositive,
                skipped_nonfinite,
                chi_square_statistic,
                chi_square_pvalue,
                chi_square_dof,
                ks_stat,
                tv_distance,
            } => format!(
                "used {n_used}, skipped {skipped_nonpositive} nonpositive and {skipped_nonfinite} nonfinite\n\
                 chi-square {} (dof {}), p-value {}\n\
                 KS {}\n\
                 TV {}",
                opt(*chi_square_statistic),
                chi_square_dof.map_or_else(|| "n/a".into(), |d| d.to_string()),
                opt(*chi_square_pvalue),
                sig12(*ks_stat),
                sig12(*tv_distance),
            ),
            Record::Curve {
                x,
                wrapped_pdf,
                nb_pdf,
                difference,
            } => format!("{}  {}  {}  {}", sig12(*x), sig12(*wrapped_pdf), sig12(*nb_pdf), sig12(*difference)),
            Record::Distance { distribution, sup, tv } => {
                format!("{distribution}: sup distance {}, TV {}", sig12(*sup), sig12(*tv))
            }
            Record::Entropy {
                distribution,
                entropy,
                mean_log,
                gibbs_bound,
                gibbs_gap,
                nb_entropy,
                constraint_met,
                quadrature_error_estimate,
            } => format!(
                "{distribution}\n\
                 entropy      {}\n\
                 mean log     {}\n\
                 gibbs bound  {}\n\
                 gibbs gap    {}\n\
                 NB entropy   {}\n\
                 mean_log <= ln(b)/2: {constraint_met}\n\
                 quadrature error  {}",
                sig12(*entropy),
                sig12(*mean_log),
                sig12(*gibbs_bound),
                sig12(*gibbs_gap),
                sig12(*nb_entropy),
                sig12(*quadrature_error_estimate),
            ),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round12(0.123456789012345), 0.123456789012);
        assert_eq!(round12(1.0 - 1e-15), 1.0);
        assert_eq!(round12(0.0), 0.0);
        assert_eq!(round12(-123456.7890123456), -123456.789012);
    }

    #[test]
    fn sig12_format() {
        assert_eq!(sig12(0.123456789012345), "0.123456789012");
        assert_eq!(sig12(1.985324991), "1.98532499100");
        assert_eq!(sig12(2.5e-7), "2.50000000000e-7");
    }

    #[test]
    fn field_order_and_round_trip() {
        let rec = Record::Curve {
            x: 1.0 / 3.0,
            wrapped_pdf: 0.1,
            nb_pdf: 2.0,
            difference: -1e-20,
        };
        let line = rec.to_line();
        assert_eq!(
            line,
            r#"{"record":"curve","x":0.333333333333,"wrapped_pdf":0.1,"nb_pdf":2.0,"difference":-1e-20}"#
        );
        let back: Record = serde_json::from_str(&line).unwrap();
        assert_eq!(back.to_line(), line);
    }
}
