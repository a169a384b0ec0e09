//! Block export formats: JSONL (one object per block) and CSV.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use design_forge::{Block, BlockFamily, DesignError};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// One exported block. Field order is part of the format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockRecord {
    pub m: u32,
    pub k: usize,
    pub family: String,
    pub alpha: Option<u32>,
    pub block: Vec<u32>,
}

impl BlockRecord {
    pub fn to_block(&self) -> Result<Block> {
        let block = Block::from_values(&self.block)?;
        if block.len() != self.k {
            return Err(DesignError::Shape {
                expected: self.k,
                found: block.len(),
            }
            .into());
        }
        Ok(block)
    }
}

pub fn from_family(family: &BlockFamily) -> impl Iterator<Item = BlockRecord> + '_ {
    let spec = family.spec();
    family.blocks().iter().map(move |b| BlockRecord {
        m: spec.m,
        k: spec.k,
        family: spec.kind.name().to_owned(),
        alpha: spec.alpha.map(|a| a.value()),
        block: b.values().collect(),
    })
}

pub fn to_jsonl(records: &[BlockRecord]) -> String {
    let mut out = String::new();
    for r in records {
        // a struct of integers and a string cannot fail to serialize
        out.push_str(&serde_json::to_string(r).expect("record serializes"));
        out.push('\n');
    }
    out
}

pub fn to_csv(records: &[BlockRecord]) -> String {
    let mut out = String::from("m,k,family,alpha,block\n");
    for r in records {
        let alpha = r.alpha.map(|a| a.to_string()).unwrap_or_default();
        let block: Vec<String> = r.block.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{},{},{},{},{}", r.m, r.k, r.family, alpha, block.join(" "));
    }
    out
}

pub fn read_jsonl(path: &Path) -> Result<Vec<BlockRecord>> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(n, l)| {
            serde_json::from_str(l).map_err(|source| CliError::Record {
                path: path.to_owned(),
                line: n + 1,
                source,
            })
        })
        .collect()
}

/// The (m, k, family, alpha) shared by every record, or an error naming the
/// first record that disagrees.
pub fn common_header(path: &Path, records: &[BlockRecord]) -> Result<(u32, usize, String, Option<u32>)> {
    let first = records.first().ok_or_else(|| CliError::Malformed {
        path: path.to_owned(),
        reason: "no records".into(),
    })?;
    let header = (first.m, first.k, first.family.clone(), first.alpha);
    if let Some((n, _)) = records
        .iter()
        .enumerate()
        .find(|(_, r)| (r.m, r.k, &r.family, r.alpha) != (header.0, header.1, &header.2, header.3))
    {
        return Err(CliError::Malformed {
            path: path.to_owned(),
            reason: format!("record {} has a different m, k, family or alpha", n + 1),
        });
    }
    Ok(header)
}
