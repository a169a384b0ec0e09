//! Exhaustive pair-coverage checks for BIBDs and GDDs.
//!
//! Each block contributes C(k, 2) increments to a triangular pair table, so a
//! sweep costs O(b·k²). Reports keep the full r and λ histograms; on failure
//! the lexicographically smallest offending pair is recorded.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::blocks::Block;
use crate::error::{DesignError, Result};
use crate::field::FieldElement;

/// A pair whose coverage breaks balance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub pair: (u32, u32),
    pub coverage: u64,
    pub expected: u64,
    pub same_group: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail(Counterexample),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

/// Outcome of a BIBD check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DesignReport {
    pub v: usize,
    pub k: usize,
    pub b: usize,
    /// occurrence count → number of points with that count
    pub r_histogram: BTreeMap<u64, usize>,
    /// coverage count → number of pairs with that count
    pub lambda_histogram: BTreeMap<u64, usize>,
    pub verdict: Verdict,
}

impl DesignReport {
    pub fn passed(&self) -> bool {
        self.verdict.passed()
    }

    fn single(histogram: &BTreeMap<u64, usize>) -> Option<u64> {
        match histogram.len() {
            1 => histogram.keys().next().copied(),
            _ => None,
        }
    }

    /// The replication number, when every point has the same one.
    pub fn r(&self) -> Option<u64> {
        Self::single(&self.r_histogram)
    }

    /// The balance parameter, when the check passed.
    pub fn lambda(&self) -> Option<u64> {
        if self.passed() {
            Self::single(&self.lambda_histogram)
        } else {
            None
        }
    }
}

/// Outcome of a GDD check. Histograms and verdict cover the whole design; the
/// λ histogram counts cross-group pairs only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GddReport {
    #[serde(flatten)]
    pub design: DesignReport,
    pub group_count: usize,
    pub group_size: usize,
    pub partition_ok: bool,
    /// most blocks covering any same-group pair
    pub within_group_coverage: u64,
    pub cross_group_lambda: Option<u64>,
}

impl GddReport {
    pub fn passed(&self) -> bool {
        self.design.passed()
    }
}

/// (v, b, r, λ) read off a passing report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ObservedParams {
    pub v: u64,
    pub b: u64,
    pub r: u64,
    pub lambda: u64,
}

struct PairTable {
    v: usize,
    counts: Vec<u32>,
    occurrences: Vec<u64>,
}

impl PairTable {
    fn slot(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < b);
        a * (2 * self.v - a - 1) / 2 + (b - a - 1)
    }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.v).flat_map(move |a| (a + 1..self.v).map(move |b| (a, b)))
    }

    fn count(&self, a: usize, b: usize) -> u64 {
        self.counts[self.slot(a, b)].into()
    }
}

struct PointIndex {
    points: Vec<FieldElement>,
    index: Vec<usize>,
}

impl PointIndex {
    fn new(points: &[FieldElement]) -> Result<Self> {
        let mut points = points.to_vec();
        points.sort_unstable();
        points.dedup();
        if points.len() < 2 {
            return Err(DesignError::Argument("a design needs at least two points".into()));
        }
        let top = points.last().map_or(0, |x| x.value() as usize);
        let mut index = vec![usize::MAX; top + 1];
        for (n, x) in points.iter().enumerate() {
            index[x.value() as usize] = n;
        }
        Ok(PointIndex { points, index })
    }

    fn get(&self, x: FieldElement) -> Option<usize> {
        self.index
            .get(x.value() as usize)
            .copied()
            .filter(|&n| n != usize::MAX)
    }

    fn value(&self, n: usize) -> u32 {
        self.points[n].value()
    }

    fn sweep(&self, blocks: &[Block]) -> Result<(usize, PairTable)> {
        let k = blocks
            .first()
            .map(Block::len)
            .ok_or_else(|| DesignError::Argument("no blocks to verify".into()))?;
        if k < 2 {
            return Err(DesignError::Argument("blocks must have at least two points".into()));
        }
        let v = self.points.len();
        let mut table = PairTable {
            v,
            counts: vec![0; v * (v - 1) / 2],
            occurrences: vec![0; v],
        };
        let mut slots = Vec::with_capacity(k);
        for block in blocks {
            if block.len() != k {
                return Err(DesignError::Shape {
                    expected: k,
                    found: block.len(),
                });
            }
            slots.clear();
            for &x in block.elements() {
                let n = self
                    .get(x)
                    .ok_or(DesignError::Containment { element: x.value() })?;
                slots.push(n);
            }
            // block and points are both ascending, so slots are too
            for (s, &a) in slots.iter().enumerate() {
                table.occurrences[a] += 1;
                for &b in &slots[s + 1..] {
                    let at = table.slot(a, b);
                    table.counts[at] += 1;
                }
            }
        }
        Ok((k, table))
    }
}

fn histogram(values: impl Iterator<Item = u64>) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for x in values {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

/// Checks the balance property of (`points`, `blocks`).
pub fn verify_bibd(points: &[FieldElement], blocks: &[Block]) -> Result<DesignReport> {
    let index = PointIndex::new(points)?;
    let (k, table) = index.sweep(blocks)?;
    let reference = table.count(0, 1);
    let verdict = table
        .pairs()
        .find(|&(a, b)| table.count(a, b) != reference)
        .map_or(Verdict::Pass, |(a, b)| {
            Verdict::Fail(Counterexample {
                pair: (index.value(a), index.value(b)),
                coverage: table.count(a, b),
                expected: reference,
                same_group: false,
            })
        });
    Ok(DesignReport {
        v: table.v,
        k,
        b: blocks.len(),
        r_histogram: histogram(table.occurrences.iter().copied()),
        lambda_histogram: histogram(table.counts.iter().map(|&c| u64::from(c))),
        verdict,
    })
}

/// Checks that `groups` partition `points` and that (`points`, `groups`,
/// `blocks`) is a GDD: no block covers a same-group pair and every cross-group
/// pair is covered equally often.
pub fn verify_gdd(points: &[FieldElement], groups: &[Block], blocks: &[Block]) -> Result<GddReport> {
    let index = PointIndex::new(points)?;
    let v = index.points.len();
    let group_size = groups
        .first()
        .map(Block::len)
        .ok_or_else(|| DesignError::Partition("no groups".into()))?;
    let mut group_of = vec![usize::MAX; v];
    for (g, group) in groups.iter().enumerate() {
        if group.len() != group_size {
            return Err(DesignError::Shape {
                expected: group_size,
                found: group.len(),
            });
        }
        for &x in group.elements() {
            let n = index
                .get(x)
                .ok_or_else(|| DesignError::Partition(format!("group element {x} is not a point")))?;
            if group_of[n] != usize::MAX {
                return Err(DesignError::Partition(format!("point {x} lies in two groups")));
            }
            group_of[n] = g;
        }
    }
    if let Some(n) = group_of.iter().position(|&g| g == usize::MAX) {
        return Err(DesignError::Partition(format!(
            "point {} is in no group",
            index.value(n)
        )));
    }
    if groups.len() < 2 {
        return Err(DesignError::Partition("need more than one group".into()));
    }

    let (k, table) = index.sweep(blocks)?;
    let same = |a: usize, b: usize| group_of[a] == group_of[b];
    let within_group_coverage = table
        .pairs()
        .filter(|&(a, b)| same(a, b))
        .map(|(a, b)| table.count(a, b))
        .max()
        .unwrap_or(0);
    let reference = table
        .pairs()
        .find(|&(a, b)| !same(a, b))
        .map_or(0, |(a, b)| table.count(a, b));
    let verdict = table
        .pairs()
        .find(|&(a, b)| {
            let c = table.count(a, b);
            if same(a, b) {
                c != 0
            } else {
                c != reference
            }
        })
        .map_or(Verdict::Pass, |(a, b)| {
            Verdict::Fail(Counterexample {
                pair: (index.value(a), index.value(b)),
                coverage: table.count(a, b),
                expected: if same(a, b) { 0 } else { reference },
                same_group: same(a, b),
            })
        });
    let lambda_histogram = histogram(
        table
            .pairs()
            .filter(|&(a, b)| !same(a, b))
            .map(|(a, b)| table.count(a, b)),
    );
    let cross_group_lambda = verdict.passed().then_some(reference);
    Ok(GddReport {
        design: DesignReport {
            v,
            k,
            b: blocks.len(),
            r_histogram: histogram(table.occurrences.iter().copied()),
            lambda_histogram,
            verdict,
        },
        group_count: groups.len(),
        group_size,
        partition_ok: true,
        within_group_coverage,
        cross_group_lambda,
    })
}

/// (v, b, r, λ) of a passing BIBD report, checked against r(k − 1) = λ(v − 1)
/// and bk = vr.
pub fn observed_params(report: &DesignReport) -> Result<ObservedParams> {
    let (Some(lambda), Some(r)) = (report.lambda(), report.r()) else {
        return Err(DesignError::State);
    };
    let params = ObservedParams {
        v: report.v as u64,
        b: report.b as u64,
        r,
        lambda,
    };
    let k = report.k as u64;
    if r * (k - 1) != lambda * (params.v - 1) {
        return Err(DesignError::Consistency(format!(
            "r(k-1) = {} but lambda(v-1) = {}",
            r * (k - 1),
            lambda * (params.v - 1)
        )));
    }
    if params.b * k != params.v * r {
        return Err(DesignError::Consistency(format!(
            "bk = {} but vr = {}",
            params.b * k,
            params.v * r
        )));
    }
    Ok(params)
}
