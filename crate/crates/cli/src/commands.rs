use std::fs;
use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use design_forge::blocks::groups_u2;
use design_forge::params::{closed_form_lambda, prior_work_lambda};
use design_forge::{
    verify_bibd, verify_gdd, BinaryField, Block, BlockFamily, DesignError, Enumerator, FamilyKind,
    FieldElement, ParamTable,
};
use serde::Serialize;

use crate::args::{FamilyArgs, Format, ParamsArgs, VerifyArgs};
use crate::error::{CliError, Result};
use crate::records::{self, BlockRecord};

/// Writes `text` to `out` in one call, or to stdout.
pub fn emit(out: Option<&Path>, text: &[u8]) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        }),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text)
                .and_then(|_| stdout.flush())
                .map_err(CliError::Output)
        }
    }
}

fn required(value: Option<u32>, flag: &str, kind: FamilyKind) -> Result<FieldElement> {
    value
        .map(FieldElement::new)
        .ok_or_else(|| DesignError::Argument(format!("--{flag} is required for family {kind}")).into())
}

fn family_for_k(args: &FamilyArgs, enumerator: &Enumerator, k: usize) -> Result<BlockFamily> {
    let kind = FamilyKind::from(args.family);
    let family = match kind {
        FamilyKind::W => enumerator.w(args.m, k)?,
        FamilyKind::WPair => {
            let i = required(args.i, "i", kind)?;
            let j = required(args.j, "j", kind)?;
            enumerator.w_pair(args.m, k, i, j)?
        }
        FamilyKind::I | FamilyKind::J | FamilyKind::L => {
            let (i, j, l) = enumerator.ijl(args.m, k, required(args.alpha, "alpha", kind)?)?;
            match kind {
                FamilyKind::I => i,
                FamilyKind::J => j,
                _ => l,
            }
        }
        FamilyKind::U => enumerator.u(args.m, k, required(args.alpha, "alpha", kind)?)?,
        FamilyKind::U2 => groups_u2(args.m, required(args.alpha, "alpha", kind)?)?,
    };
    Ok(family)
}

fn collect_records(args: &FamilyArgs) -> Result<Vec<BlockRecord>> {
    let enumerator = Enumerator::new(args.budget.budget);
    let ks: Vec<u64> = match (args.k, FamilyKind::from(args.family)) {
        (None, FamilyKind::U2) => vec![2],
        (Some(span), FamilyKind::U2) if !(span.is_single() && span.start == 2) => {
            return Err(DesignError::Range {
                what: "k",
                value: span.end,
                min: 2,
                max: 2,
            }
            .into())
        }
        (Some(span), _) => span.iter().collect(),
        (None, kind) => {
            return Err(DesignError::Argument(format!("--k is required for family {kind}")).into())
        }
    };
    let mut out = Vec::new();
    for k in ks {
        let k = usize::try_from(k).map_err(|_| DesignError::Argument(format!("k = {k} is too large")))?;
        let family = family_for_k(args, &enumerator, k)?;
        out.extend(records::from_family(&family));
    }
    Ok(out)
}

fn render(records: &[BlockRecord], format: Format) -> String {
    match format {
        Format::Jsonl => records::to_jsonl(records),
        Format::Csv => records::to_csv(records),
    }
}

/// `enumerate` and `export`: the whole output is built before anything is
/// written, so a budget failure leaves no partial file behind.
pub fn enumerate(args: &FamilyArgs, require_out: bool) -> Result<bool> {
    if require_out && args.out.is_none() {
        return Err(CliError::Usage("export needs --out PATH".into()));
    }
    let start = Instant::now();
    let records = collect_records(args)?;
    emit(args.out.as_deref(), render(&records, args.format).as_bytes())?;
    let summary = serde_json::json!({
        "count": records.len(),
        "elapsed_ms": start.elapsed().as_millis() as u64,
    });
    eprintln!("{summary}");
    Ok(true)
}

fn ingest(path: &Path) -> Result<(BlockRecord, Vec<Block>)> {
    let records = records::read_jsonl(path)?;
    let (m, k, family, alpha) = records::common_header(path, &records)?;
    let blocks = records.iter().map(BlockRecord::to_block).collect::<Result<_>>()?;
    let header = BlockRecord {
        m,
        k,
        family,
        alpha,
        block: Vec::new(),
    };
    Ok((header, blocks))
}

fn print_report(out: Option<&Path>, report: &impl Serialize) -> Result<()> {
    let mut line = serde_json::to_string(report).expect("report serializes");
    line.push('\n');
    emit(out, line.as_bytes())
}

pub fn verify_bibd_cmd(args: &VerifyArgs) -> Result<bool> {
    let (m, blocks) = match &args.input {
        Some(path) => {
            let (header, blocks) = ingest(path)?;
            let kind: FamilyKind = header.family.parse()?;
            if kind.is_lifted() {
                return Err(CliError::Malformed {
                    path: path.clone(),
                    reason: format!("family {kind} lives in F_2^(m+1); use verify-gdd"),
                });
            }
            (header.m, blocks)
        }
        None => {
            let (m, k) = (args.m.expect("clap requires m"), args.k.expect("clap requires k"));
            (m, Enumerator::new(args.budget.budget).w(m, k)?.into_blocks())
        }
    };
    let points: Vec<FieldElement> = BinaryField::new(m)?.nonzero().collect();
    let report = verify_bibd(&points, &blocks)?;
    print_report(args.out.as_deref(), &report)?;
    Ok(report.passed())
}

pub fn verify_gdd_cmd(args: &VerifyArgs) -> Result<bool> {
    let (m, alpha, blocks, groups) = match &args.input {
        Some(path) => {
            let (header, blocks) = ingest(path)?;
            let alpha = header.alpha.map(FieldElement::new).ok_or_else(|| CliError::Malformed {
                path: path.clone(),
                reason: "records carry no alpha".into(),
            })?;
            let groups = match &args.groups {
                Some(gpath) => {
                    let (gheader, groups) = ingest(gpath)?;
                    if (gheader.m, gheader.alpha) != (header.m, header.alpha) {
                        return Err(CliError::Malformed {
                            path: gpath.clone(),
                            reason: "groups were exported for a different m or alpha".into(),
                        });
                    }
                    groups
                }
                None => groups_u2(header.m, alpha)?.into_blocks(),
            };
            (header.m, alpha, blocks, groups)
        }
        None => {
            let (m, k) = (args.m.expect("clap requires m"), args.k.expect("clap requires k"));
            let alpha = required(args.alpha, "alpha", FamilyKind::U)?;
            let blocks = Enumerator::new(args.budget.budget).u(m, k, alpha)?.into_blocks();
            (m, alpha, blocks, groups_u2(m, alpha)?.into_blocks())
        }
    };
    let points: Vec<FieldElement> = BinaryField::new(m + 1)?
        .nonzero()
        .filter(|&x| x != alpha)
        .collect();
    let report = verify_gdd(&points, &groups, &blocks)?;
    print_report(args.out.as_deref(), &report)?;
    Ok(report.passed())
}

pub const PARAMS_HEADER: [&str; 7] = [
    "k",
    "b_k",
    "r_k",
    "lambda_k",
    "lambda_prime_k",
    "lambda_k_closed_form",
    "prior_work_lambda",
];

/// The parameter table as rows of decimal strings; `None` marks a blank cell.
pub fn params_rows(m: u32) -> Result<Vec<[Option<String>; 7]>> {
    let table = ParamTable::compute(m)?;
    Ok(table
        .rows
        .iter()
        .map(|row| {
            let k = row.k;
            [
                Some(k.to_string()),
                Some(row.b.to_string()),
                Some(row.r.to_string()),
                Some(row.lambda.to_string()),
                Some(row.lambda_prime.to_string()),
                closed_form_lambda(m, k).ok().map(|x| x.to_string()),
                prior_work_lambda(m, k).ok().map(|x| x.to_string()),
            ]
        })
        .collect())
}

pub fn params(args: &ParamsArgs) -> Result<bool> {
    let rows = params_rows(args.m)?;
    let text = match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(PARAMS_HEADER).map_err(csv_output)?;
            for row in &rows {
                w.write_record(row.iter().map(|c| c.as_deref().unwrap_or("")))
                    .map_err(csv_output)?;
            }
            w.into_inner().map_err(|e| CliError::Output(e.into_error()))?
        }
        Format::Jsonl => {
            let mut out = String::new();
            for row in &rows {
                let cells: Vec<String> = PARAMS_HEADER
                    .iter()
                    .zip(row)
                    .map(|(name, cell)| {
                        let value = cell.as_deref().map_or("null".into(), |c| format!("\"{c}\""));
                        format!("\"{name}\":{value}")
                    })
                    .collect();
                out.push('{');
                out.push_str(&cells.join(","));
                out.push_str("}\n");
            }
            out.into_bytes()
        }
    };
    emit(args.out.as_deref(), &text)?;
    Ok(true)
}

pub(crate) fn csv_output(e: csv::Error) -> CliError {
    CliError::Output(io::Error::other(e))
}
