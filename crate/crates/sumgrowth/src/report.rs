//! Deterministic report rendering shared by the CLI and the examples:
//! exact-rational decimal rendering, CSV rows, and JSON objects with sorted
//! keys.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::body::{ConvergenceRow, DominationReport, SpectralProductBody, BodyComponent};
use crate::decompose::DecompositionResult;
use crate::error::{Error, Result};
use crate::heights::InvariantSubspaceResult;
use crate::interval::RealInterval;
use crate::sumset::RatioReport;

/// Renders an exact rational as a decimal with `places` fractional digits
/// (round half up), trailing zeros trimmed.
pub fn rational_decimal(r: &BigRational, places: usize) -> String {
    let neg = r.is_negative();
    let a = r.abs();
    let pow = BigInt::from(10u32).pow(places as u32);
    // floor(n*10^p/d + 1/2)
    let scaled = (a.numer() * &pow * BigInt::from(2) + a.denom()) / (a.denom() * BigInt::from(2));
    let digits = scaled.to_string();
    let digits = if digits.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - digits.len()), digits)
    } else {
        digits
    };
    let split = digits.len() - places;
    let (int_part, frac_part) = digits.split_at(split);
    let frac_part = frac_part.trim_end_matches('0');
    let body = if frac_part.is_empty() {
        int_part.to_string()
    } else {
        format!("{int_part}.{frac_part}")
    };
    if neg && !body.chars().all(|c| c == '0' || c == '.') {
        format!("-{body}")
    } else {
        body
    }
}

/// Parses `p/q`, a plain integer, or an exact decimal like `0.25`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad rational `{s}`")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad rational `{s}`")))?;
        if d.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let digits = format!("{int_part}{frac_part}");
        let n: BigInt = digits
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad decimal `{s}`")))?;
        let d = BigInt::from(10u32).pow(frac_part.len() as u32);
        return Ok(BigRational::new(n, d));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::InvalidInput(format!("bad number `{s}`")))?;
    Ok(BigRational::from_integer(n))
}

/// Output format of the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

pub fn interval_report(name: &str, h: &RealInterval, format: Format) -> String {
    match format {
        Format::Plain => format!("{name} = {}\n", h.render(10)),
        Format::Csv => format!("h_lo,h_hi\n{},{}\n", h.lo, h.hi),
        Format::Json => {
            let v = json!({
                "lo": h.lo,
                "hi": h.hi,
                "midpoint": h.midpoint(),
                "radius": h.radius(),
            });
            format!("{v}\n")
        }
    }
}

pub fn ratio_report_text(r: &RatioReport, format: Format) -> String {
    let ratio = rational_decimal(&r.ratio, 10);
    match format {
        Format::Csv => format!(
            "set_size,sumset_size,ratio,h_circ_lo,h_circ_hi,gap\n{},{},{},{},{},{}\n",
            r.set_size, r.sumset_size, ratio, r.reference_height.lo, r.reference_height.hi, r.gap
        ),
        Format::Json => {
            let v = json!({
                "set_size": r.set_size,
                "sumset_size": r.sumset_size,
                "ratio": ratio,
                "h_circ_lo": r.reference_height.lo,
                "h_circ_hi": r.reference_height.hi,
                "gap": r.gap,
            });
            format!("{v}\n")
        }
        Format::Plain => format!(
            "|A| = {}\n|A+TA| = {}\nratio = {}\nH° = {}\ngap = {}\n",
            r.set_size,
            r.sumset_size,
            ratio,
            r.reference_height.render(10),
            r.gap
        ),
    }
}

pub fn convergence_table(rows: &[ConvergenceRow], format: Format) -> String {
    match format {
        Format::Json => {
            let arr: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "M": r.m,
                        "count": r.count,
                        "sumset_count": r.sumset_count,
                        "ratio": rational_decimal(&r.ratio, 10),
                        "h_circ_lo": r.h_circ.lo,
                        "h_circ_hi": r.h_circ.hi,
                    })
                })
                .collect();
            format!("{}\n", Value::Array(arr))
        }
        _ => {
            let mut out = String::from("M,count,sumset_count,ratio,h_circ_lo,h_circ_hi\n");
            for r in rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.m,
                    r.count,
                    r.sumset_count,
                    rational_decimal(&r.ratio, 10),
                    r.h_circ.lo,
                    r.h_circ.hi
                ));
            }
            out
        }
    }
}

pub fn invariant_subspace_report(r: &InvariantSubspaceResult, format: Format) -> String {
    let basis: Vec<Vec<String>> = r
        .basis
        .iter()
        .map(|v| v.iter().map(ToString::to_string).collect())
        .collect();
    let restriction: Vec<Vec<String>> = (0..r.restriction.rows())
        .map(|i| {
            (0..r.restriction.cols())
                .map(|j| r.restriction.entry(i, j).to_string())
                .collect()
        })
        .collect();
    match format {
        Format::Json => {
            let v = json!({
                "divisor": r.divisor.to_string(),
                "degree": r.divisor.degree(),
                "height_lo": r.height.lo,
                "height_hi": r.height.hi,
                "basis": basis,
                "restriction": restriction,
            });
            format!("{v}\n")
        }
        _ => {
            let mut out = String::new();
            out.push_str(&format!("divisor g = {}\n", r.divisor));
            out.push_str(&format!("height H(g) = {}\n", r.height.render(10)));
            out.push_str("basis (columns v, Tv, ...):\n");
            for v in &basis {
                out.push_str(&format!("  [{}]\n", v.join(" ")));
            }
            out.push_str("restriction matrix:\n");
            for row in &restriction {
                out.push_str(&format!("  [{}]\n", row.join(" ")));
            }
            out
        }
    }
}

pub fn decomposition_report(r: &DecompositionResult, format: Format) -> String {
    let corners: Vec<Vec<i64>> = r.cells.iter().map(|c| c.corner.clone()).collect();
    match format {
        Format::Plain => {
            let mut out = String::new();
            out.push_str(&format!(
                "level = {}\nB = {}\ncells = {} (side {})\nretained = {}\n",
                r.level,
                r.refinement,
                r.cells.len(),
                r.cells.first().map_or(0, |c| c.side),
                r.a_prime.len()
            ));
            out
        }
        _ => {
            let v = json!({
                "level": r.level,
                "B": r.refinement,
                "cell_side": r.cells.first().map_or(0, |c| c.side),
                "cell_corners": corners,
                "retained": r.a_prime.len(),
            });
            format!("{v}\n")
        }
    }
}

pub fn body_report(b: &SpectralProductBody, ratio: f64, format: Format) -> String {
    let d = b.dim();
    let basis: Vec<Vec<f64>> = (0..d)
        .map(|r| (0..d).map(|c| b.basis_entry(r, c)).collect())
        .collect();
    let comps: Vec<Value> = b
        .components()
        .iter()
        .map(|c| match c {
            BodyComponent::Interval {
                eigenvalue,
                half_width,
            } => json!({
                "type": "interval",
                "eigenvalue": eigenvalue,
                "extent": half_width,
            }),
            BodyComponent::Disk { eigenvalue, radius } => json!({
                "type": "disk",
                "eigenvalue_re": eigenvalue.re,
                "eigenvalue_im": eigenvalue.im,
                "extent": radius,
            }),
        })
        .collect();
    match format {
        Format::Plain => {
            let mut out = String::new();
            out.push_str(&format!("dimension = {d}\n"));
            out.push_str(&format!("measure ratio = {ratio}\n"));
            out.push_str(&format!(
                "condition = {}\nresidual = {}\n",
                b.condition, b.residual
            ));
            for c in b.components() {
                match c {
                    BodyComponent::Interval { eigenvalue, .. } => {
                        out.push_str(&format!("interval component, eigenvalue {eigenvalue}\n"))
                    }
                    BodyComponent::Disk { eigenvalue, .. } => out.push_str(&format!(
                        "disk component, eigenvalue {} + {}i\n",
                        eigenvalue.re, eigenvalue.im
                    )),
                }
            }
            out
        }
        _ => {
            let v = json!({
                "dimension": d,
                "measure_ratio": ratio,
                "condition": b.condition,
                "residual": b.residual,
                "basis_rows": basis,
                "components": comps,
            });
            format!("{v}\n")
        }
    }
}

pub fn domination_report_text(r: &DominationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let v = json!({
                "hypothesis_ok": r.hypothesis_ok,
                "lhs": r.lhs,
                "rhs": r.rhs,
                "h_lo": r.h_operator.lo,
                "h_hi": r.h_operator.hi,
                "note": r.note,
            });
            format!("{v}\n")
        }
        _ => format!(
            "hypothesis_ok = {}\nlhs (∫h) = {}\nrhs (H·∫f) = {}\nH = {}\nnote: {}\n",
            r.hypothesis_ok,
            r.lhs,
            r.rhs,
            r.h_operator.render(10),
            r.note
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(rational_decimal(&rat(14, 5), 10), "2.8");
        assert_eq!(rational_decimal(&rat(35, 9), 10), "3.8888888889");
        assert_eq!(rational_decimal(&rat(3, 1), 10), "3");
        assert_eq!(rational_decimal(&rat(-1, 3), 5), "-0.33333");
        assert_eq!(rational_decimal(&rat(1, 1000), 2), "0");
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("1/4").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational("-1/2").unwrap(), rat(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("a").is_err());
    }
}
