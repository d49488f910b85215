//! Report rows and the full cross-check sweep behind the `report` command.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Serialize, Serializer};

use crate::bijection::{audit_cases, verify_bijection};
use crate::ehrhart::{
    canonical_symmetry_check, closed_form_polynomial, eval_closed_form, interpolate_counts,
    reflexivity_check, Family,
};
use crate::enumerate::count;
use crate::error::{Error, Result};
use crate::spectra::{
    cl_check, closed_form_residual, closed_form_roots, interlace_check, numeric_roots,
    DEFAULT_AGREEMENT_TOL, DEFAULT_CL_TOL, DEFAULT_RESIDUAL_TOL, MAX_NUMERIC_DEGREE,
};

/// Rounds to 12 significant digits and prints the shortest decimal that
/// reads back to the rounded value. Very small or large magnitudes use
/// exponent notation.
pub fn fmt_float(x: f64) -> String {
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if rounded == 0.0 {
        "0".to_string()
    } else if !rounded.is_finite() || (1e-4..1e15).contains(&rounded.abs()) {
        rounded.to_string()
    } else {
        format!("{rounded:e}")
    }
}

fn as_decimal<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Formula,
    Enumeration,
}

impl std::fmt::Display for Source {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Source::Formula => "formula",
            Source::Enumeration => "enumeration",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportRow {
    pub polytope: String,
    pub d: usize,
    pub k: i64,
    #[serde(serialize_with = "as_decimal")]
    pub count: BigInt,
    #[serde(serialize_with = "as_decimal")]
    pub boundary: BigInt,
    pub source: Source,
}

impl ReportRow {
    /// Same counts, ignoring where they came from.
    pub fn agrees_with(&self, other: &ReportRow) -> bool {
        self.count == other.count && self.boundary == other.boundary
    }
}

/// Counts from the closed form. The boundary uses `E(k) - E(k-1)`, valid
/// because all four families are reflexive; it is 0 at `k = 0`.
pub fn formula_row(family: Family, d: usize, k: i64) -> Result<ReportRow> {
    if k < 0 {
        return Err(Error::InvalidScale(k));
    }
    let total = eval_closed_form(family, d, k)?;
    let boundary = if k == 0 {
        BigInt::from(0)
    } else {
        (&total - eval_closed_form(family, d, k - 1)?).to_integer()
    };
    Ok(ReportRow {
        polytope: family.to_string(),
        d,
        k,
        count: total.to_integer(),
        boundary,
        source: Source::Formula,
    })
}

/// Counts by brute-force enumeration; only for `Astar` and `Cstar`.
pub fn enumeration_row(family: Family, d: usize, k: i64, budget: u64) -> Result<ReportRow> {
    let p = family.polytope(d)?;
    let c = count(&p, k, budget)?;
    Ok(ReportRow {
        polytope: family.to_string(),
        d,
        k,
        count: BigInt::from(c.total),
        boundary: BigInt::from(c.boundary),
        source: Source::Enumeration,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountCell {
    #[serde(flatten)]
    pub row: ReportRow,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictRow {
    pub check: &'static str,
    pub polytope: String,
    pub d: usize,
    pub k: Option<i64>,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub max_d: usize,
    pub max_k: i64,
    pub counts: Vec<CountCell>,
    pub verdicts: Vec<VerdictRow>,
    pub pass: bool,
}

impl SweepReport {
    pub fn failures(&self) -> Vec<String> {
        let cells = self.counts.iter().filter(|c| !c.pass).map(|c| {
            format!(
                "count mismatch ({}, d={}, k={})",
                c.row.polytope, c.row.d, c.row.k
            )
        });
        let verdicts = self.verdicts.iter().filter(|v| !v.pass).map(|v| {
            let k = v.k.map_or(String::new(), |k| format!(", k={k}"));
            format!(
                "{} failed ({}, d={}{k}): {}",
                v.check, v.polytope, v.d, v.detail
            )
        });
        cells.chain(verdicts).collect()
    }

    pub const CSV_HEADER: &'static str =
        "kind,check,polytope,d,k,count,boundary,source,status,detail";

    /// CSV with a fixed header; LF line endings.
    pub fn to_csv(&self) -> String {
        fn clean(s: &str) -> String {
            s.replace([',', '\n', '\r', '"'], ";")
        }
        fn status(pass: bool) -> &'static str {
            if pass {
                "PASS"
            } else {
                "FAIL"
            }
        }
        let mut out = String::new();
        out.push_str(Self::CSV_HEADER);
        out.push('\n');
        for c in &self.counts {
            let r = &c.row;
            let _ = writeln!(
                out,
                "count,count,{},{},{},{},{},{},{},",
                r.polytope,
                r.d,
                r.k,
                r.count,
                r.boundary,
                r.source,
                status(c.pass)
            );
        }
        for v in &self.verdicts {
            let k = v.k.map_or(String::new(), |k| k.to_string());
            let _ = writeln!(
                out,
                "verdict,{},{},{},{},,,,{},{}",
                v.check,
                v.polytope,
                v.d,
                k,
                status(v.pass),
                clean(&v.detail)
            );
        }
        out
    }
}

/// Runs every cross-check for `1 <= d <= max_d`, `0 <= k <= max_k`.
///
/// Count cells cover C*_d. Verdicts cover the A* closed form, the reduction
/// identity, the bijection and its case analysis, interpolation,
/// reflexivity, exact root symmetry, the canonical-line property and
/// interlacing. Ordering is deterministic.
pub fn sweep(max_d: usize, max_k: i64, budget: u64) -> Result<SweepReport> {
    if max_d == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if max_k < 1 {
        return Err(Error::InvalidScale(max_k));
    }
    let mut counts = Vec::new();
    let mut verdicts = Vec::new();

    for d in 1..=max_d {
        for k in 0..=max_k {
            let row = enumeration_row(Family::CStar, d, k, budget)?;
            let pass = row.agrees_with(&formula_row(Family::CStar, d, k)?);
            counts.push(CountCell { row, pass });
        }
    }

    for d in 1..=max_d {
        let mut bad = Vec::new();
        for k in 0..=max_k {
            let e = enumeration_row(Family::AStar, d, k, budget)?;
            if !e.agrees_with(&formula_row(Family::AStar, d, k)?) {
                bad.push(k.to_string());
            }
        }
        verdicts.push(VerdictRow {
            check: "astar-counts",
            polytope: "Astar".into(),
            d,
            k: None,
            pass: bad.is_empty(),
            detail: if bad.is_empty() {
                format!(
                    "enumeration = (k+1)^{} - k^{} for k=0..{max_k}",
                    d + 1,
                    d + 1
                )
            } else {
                format!("mismatch at k={}", bad.join(" "))
            },
        });
    }

    for d in 2..=max_d {
        let c = Family::CStar.polytope(d)?;
        let a = Family::AStar.polytope(d - 1)?;
        for k in 1..=max_k {
            let lhs = count(&c, k, budget)?.boundary;
            let shell = count(&a, k, budget)?.boundary;
            let inner = count(&a, k - 1, budget)?.total;
            verdicts.push(VerdictRow {
                check: "reduction",
                polytope: "Cstar".into(),
                d,
                k: Some(k),
                pass: lhs == shell + 2 * inner,
                detail: format!("{lhs} = {shell} + 2*{inner}"),
            });
        }
    }

    for d in 1..=max_d {
        for k in 1..=max_k {
            let r = verify_bijection(d, k, budget)?;
            let audit = audit_cases(d, k, budget)?;
            verdicts.push(VerdictRow {
                check: "bijection",
                polytope: "Cstar".into(),
                d,
                k: Some(k),
                pass: r.ok() && audit.ok(),
                detail: format!(
                    "{r}; well-defined failures {}; distinctness failures {}; sign-chain failures {}",
                    audit.well_defined_failures, audit.distinctness_failures, audit.sign_chain_failures
                ),
            });
        }
    }

    for family in [Family::AStar, Family::CStar] {
        for d in 1..=max_d {
            let p = family.polytope(d)?;
            let fitted = interpolate_counts(&p, budget)?;
            let closed = closed_form_polynomial(family, d)?;
            verdicts.push(VerdictRow {
                check: "interpolation",
                polytope: family.to_string(),
                d,
                k: None,
                pass: fitted.poly() == closed.poly(),
                detail: format!("coefficients {fitted}"),
            });
            let refl = reflexivity_check(&p, max_k, budget)?;
            verdicts.push(VerdictRow {
                check: "reflexivity",
                polytope: family.to_string(),
                d,
                k: None,
                pass: refl.holds,
                detail: match refl.counterexample {
                    None => format!("shell = boundary for k=1..{max_k}"),
                    Some(m) => format!("k={} shell {} boundary {}", m.k, m.shell, m.boundary),
                },
            });
        }
    }

    for family in Family::ALL {
        for d in 1..=max_d {
            let p = closed_form_polynomial(family, d)?;
            verdicts.push(VerdictRow {
                check: "symmetry",
                polytope: family.to_string(),
                d,
                k: None,
                pass: canonical_symmetry_check(&p),
                detail: "p(k) = (-1)^d p(-k-1)".into(),
            });
        }
    }

    for d in 1..=max_d {
        let closed = closed_form_roots(d)?;
        let residual = closed
            .iter()
            .map(|r| closed_form_residual(r.value(), d))
            .fold(0.0, f64::max);
        let mut pass = residual <= DEFAULT_RESIDUAL_TOL;
        let mut detail = format!("residual {}", fmt_float(residual));
        if d <= MAX_NUMERIC_DEGREE {
            let numeric = numeric_roots(&closed_form_polynomial(Family::CStar, d)?)?;
            let agreement = numeric
                .iter()
                .zip(&closed)
                .map(|(z, r)| (z - r.value()).norm())
                .fold(0.0, f64::max);
            let cl = cl_check(&numeric, DEFAULT_CL_TOL)?;
            pass &= agreement <= DEFAULT_AGREEMENT_TOL && cl.holds;
            let _ = write!(
                detail,
                "; numeric agreement {}; max |Re+1/2| {}",
                fmt_float(agreement),
                fmt_float(cl.max_deviation)
            );
        }
        verdicts.push(VerdictRow {
            check: "canonical-line",
            polytope: "Cstar".into(),
            d,
            k: None,
            pass,
            detail,
        });
    }

    for d in 1..max_d {
        let r = interlace_check(d)?;
        verdicts.push(VerdictRow {
            check: "interlacing",
            polytope: "Cstar".into(),
            d,
            k: None,
            pass: r.non_strict && r.angle_chain,
            detail: format!(
                "degrees {} and {}; non-strict {}; strict {}; angle chain {}",
                d,
                d + 1,
                r.non_strict,
                r.strict,
                r.angle_chain
            ),
        });
    }

    let pass = counts.iter().all(|c| c.pass) && verdicts.iter().all(|v| v.pass);
    Ok(SweepReport {
        max_d,
        max_k,
        counts,
        verdicts,
        pass,
    })
}
