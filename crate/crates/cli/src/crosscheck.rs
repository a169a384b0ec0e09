//! Enumerated designs against a parameter table, one row per quantity.

use std::fmt;
use std::path::Path;

use design_forge::blocks::groups_u2;
use design_forge::{
    verify_bibd, verify_gdd, BinaryField, DesignError, Enumerator, FieldElement, ParamRow,
    ParamTable,
};
use num_bigint::BigInt;
use serde::Deserialize;

use crate::args::CrosscheckArgs;
use crate::commands::{csv_output, emit};
use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Match => "match",
            Status::Mismatch => "mismatch",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRow {
    pub m: u32,
    pub k: u64,
    pub quantity: &'static str,
    pub observed: Option<BigInt>,
    pub expected: BigInt,
    pub status: Status,
}

impl CheckRow {
    fn compare(m: u32, k: u64, quantity: &'static str, observed: Option<u64>, expected: BigInt) -> Self {
        let observed = observed.map(BigInt::from);
        let status = if observed.as_ref() == Some(&expected) {
            Status::Match
        } else {
            Status::Mismatch
        };
        CheckRow {
            m,
            k,
            quantity,
            observed,
            expected,
            status,
        }
    }

    fn skipped(m: u32, k: u64, quantity: &'static str, expected: BigInt) -> Self {
        CheckRow {
            m,
            k,
            quantity,
            observed: None,
            expected,
            status: Status::Skipped,
        }
    }

    fn cells(&self) -> [String; 6] {
        [
            self.m.to_string(),
            self.k.to_string(),
            self.quantity.to_owned(),
            self.observed.as_ref().map(BigInt::to_string).unwrap_or_default(),
            self.expected.to_string(),
            self.status.to_string(),
        ]
    }
}

#[derive(Deserialize)]
struct TableLine {
    k: u64,
    b_k: String,
    r_k: String,
    lambda_k: String,
    lambda_prime_k: String,
}

/// Reads a table written by `params --format csv`. Extra columns are ignored.
pub fn load_table(path: &Path, m: u32) -> Result<ParamTable> {
    let table_err = |source| CliError::Table {
        path: path.to_owned(),
        source,
    };
    let mut reader = csv::Reader::from_path(path).map_err(table_err)?;
    let mut rows = Vec::new();
    for line in reader.deserialize::<TableLine>() {
        let line = line.map_err(table_err)?;
        let int = |s: &str| {
            s.trim().parse::<BigInt>().map_err(|e| CliError::Malformed {
                path: path.to_owned(),
                reason: format!("k = {}: {s:?}: {e}", line.k),
            })
        };
        rows.push(ParamRow {
            k: line.k,
            b: int(&line.b_k)?,
            r: int(&line.r_k)?,
            lambda: int(&line.lambda_k)?,
            lambda_prime: int(&line.lambda_prime_k)?,
        });
    }
    Ok(ParamTable { m, rows })
}

fn expected_row(table: &ParamTable, k: u64) -> Result<&ParamRow> {
    table.row(k).ok_or_else(|| {
        DesignError::Consistency(format!("parameter table for m = {} has no row k = {k}", table.m)).into()
    })
}

/// Checks one m. A budget overrun is fatal when `explicit` is set and turns
/// into skipped rows otherwise.
pub fn check_m(
    m: u32,
    ks: impl IntoIterator<Item = u64>,
    explicit: bool,
    gdd_alpha: Option<FieldElement>,
    table: &ParamTable,
    enumerator: &Enumerator,
) -> Result<Vec<CheckRow>> {
    let field = BinaryField::new(m)?;
    let points: Vec<FieldElement> = field.nonzero().collect();
    let mut rows = Vec::new();
    for k in ks {
        let expected = expected_row(table, k)?;
        let ku = usize::try_from(k).map_err(|_| DesignError::Argument(format!("k = {k} is too large")))?;
        match enumerator.w(m, ku) {
            Ok(w) => {
                let report = verify_bibd(&points, w.blocks())?;
                rows.push(CheckRow::compare(m, k, "b", Some(w.len() as u64), expected.b.clone()));
                rows.push(CheckRow::compare(m, k, "r", report.r(), expected.r.clone()));
                rows.push(CheckRow::compare(m, k, "lambda", report.lambda(), expected.lambda.clone()));
            }
            Err(DesignError::Resource { .. }) if !explicit => {
                for (q, e) in [("b", &expected.b), ("r", &expected.r), ("lambda", &expected.lambda)] {
                    rows.push(CheckRow::skipped(m, k, q, e.clone()));
                }
            }
            Err(e) => return Err(e.into()),
        }
        let Some(alpha) = gdd_alpha else { continue };
        let bridge = &expected.lambda << (k - 3);
        match enumerator.u(m, ku, alpha) {
            Ok(u) => {
                let vpoints: Vec<FieldElement> = BinaryField::new(m + 1)?
                    .nonzero()
                    .filter(|&x| x != alpha)
                    .collect();
                let groups = groups_u2(m, alpha)?;
                let report = verify_gdd(&vpoints, groups.blocks(), u.blocks())?;
                let observed = report.cross_group_lambda.filter(|_| report.passed());
                rows.push(CheckRow::compare(m, k, "lambda_prime", observed, expected.lambda_prime.clone()));
                rows.push(CheckRow::compare(m, k, "lambda_prime_bridge", observed, bridge));
            }
            Err(DesignError::Resource { .. }) if !explicit => {
                rows.push(CheckRow::skipped(m, k, "lambda_prime", expected.lambda_prime.clone()));
                rows.push(CheckRow::skipped(m, k, "lambda_prime_bridge", bridge));
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(rows)
}

pub const HEADER: [&str; 6] = ["m", "k", "quantity", "observed", "expected", "status"];

pub fn to_csv<'a>(rows: impl IntoIterator<Item = &'a CheckRow>) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(HEADER).map_err(csv_output)?;
    for row in rows {
        w.write_record(row.cells()).map_err(csv_output)?;
    }
    w.into_inner().map_err(|e| CliError::Output(e.into_error()))
}

pub fn run(args: &CrosscheckArgs) -> Result<bool> {
    if args.table.is_some() && !args.m.is_single() {
        return Err(CliError::Usage("--table needs a single --m".into()));
    }
    if args.alpha.is_some() && !args.gdd {
        return Err(CliError::Usage("--alpha only applies with --gdd".into()));
    }
    let enumerator = Enumerator::new(args.budget.budget);
    let mut rows = Vec::new();
    for m in args.m.iter() {
        let m = u32::try_from(m).map_err(|_| DesignError::Argument(format!("m = {m} is too large")))?;
        let field = BinaryField::new(m)?;
        let table = match &args.table {
            Some(path) => load_table(path, m)?,
            None => ParamTable::compute(m)?,
        };
        let gdd_alpha = args
            .gdd
            .then(|| FieldElement::new(args.alpha.unwrap_or(1)));
        let top = u64::from(field.order()) - 4;
        let (ks, explicit) = match args.k {
            Some(span) => (span.iter(), true),
            None => (3..=top, false),
        };
        rows.extend(check_m(m, ks, explicit, gdd_alpha, &table, &enumerator)?);
    }
    emit(args.out.as_deref(), &to_csv(&rows)?)?;
    let mismatches: Vec<&CheckRow> = rows.iter().filter(|r| r.status == Status::Mismatch).collect();
    if mismatches.is_empty() {
        return Ok(true);
    }
    let report = to_csv(mismatches)?;
    eprint!("{}", String::from_utf8_lossy(&report));
    Ok(false)
}
