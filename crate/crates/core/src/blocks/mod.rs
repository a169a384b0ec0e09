//! Blocks and the block families built from zero-sum conditions.
//!
//! | family | ground set            | condition                           |
//! |--------|-----------------------|-------------------------------------|
//! | `W`    | F_{2^m}^*             | sum 0                               |
//! | `Wpair`| F_{2^m}^*             | sum 0, contains i and j             |
//! | `I`    | F_{2^m} ∖ {0, α}      | sum α                               |
//! | `J`    | F_{2^m} ∖ {0, α}      | sum 0                               |
//! | `L`    | F_{2^m}^*             | B = B + α                           |
//! | `U`    | F_{2^{m+1}} ∖ {0, α}  | sum α, B ∩ (B + α) = ∅              |
//! | `U2`   | F_{2^{m+1}} ∖ {0, α}  | pairs {x, x + α} (the GDD groups)   |

mod enumerate;
mod maps;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{DesignError, Result};
use crate::field::{BinaryField, FieldElement};

pub use enumerate::{
    enumerate_ijl, enumerate_u, enumerate_w, enumerate_w_pair, groups_u2, Enumerator,
    DEFAULT_BUDGET,
};
pub use maps::{
    lemma1_phi, lemma1_phi_tilde, lemma2_inverse, lemma2_map, representative,
};

/// A set of nonzero field elements in canonical (strictly ascending) order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Block(Vec<FieldElement>);

impl Block {
    /// Builds a block from arbitrary-order elements; rejects zero and repeats.
    pub fn new(elements: impl IntoIterator<Item = FieldElement>) -> Result<Self> {
        let mut elements: Vec<FieldElement> = elements.into_iter().collect();
        elements.sort_unstable();
        if elements.first().is_some_and(|x| x.is_zero()) {
            return Err(DesignError::Argument("blocks cannot contain 0".into()));
        }
        if let Some(w) = elements.windows(2).find(|w| w[0] == w[1]) {
            return Err(DesignError::Argument(format!(
                "element {} repeated in block",
                w[0]
            )));
        }
        Ok(Block(elements))
    }

    pub fn from_values(values: &[u32]) -> Result<Self> {
        Block::new(values.iter().copied().map(FieldElement::new))
    }

    pub(crate) fn from_sorted(values: Vec<u32>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(values.first().is_none_or(|&x| x != 0));
        Block(values.into_iter().map(FieldElement::new).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.0
    }

    pub fn values(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.iter().map(|x| x.value())
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn sum(&self) -> FieldElement {
        self.0.iter().sum()
    }

    /// True when B = B + α.
    pub fn is_shift_invariant(&self, alpha: FieldElement) -> bool {
        self.0.iter().all(|&x| self.contains(x + alpha))
    }

    /// True when B ∩ (B + α) = ∅.
    pub fn avoids_shift(&self, alpha: FieldElement) -> bool {
        self.0.iter().all(|&x| !self.contains(x + alpha))
    }

    /// B ∖ `removed`.
    pub fn without(&self, removed: &[FieldElement]) -> Vec<FieldElement> {
        self.0
            .iter()
            .copied()
            .filter(|x| !removed.contains(x))
            .collect()
    }

    /// F_{2^m}^* ∖ B.
    pub fn complement(&self, field: &BinaryField) -> Block {
        Block(field.nonzero().filter(|&x| !self.contains(x)).collect())
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, x) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("}")
    }
}

/// Which family a [`BlockFamily`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    W,
    WPair,
    I,
    J,
    L,
    U,
    U2,
}

impl FamilyKind {
    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::W => "W",
            FamilyKind::WPair => "Wpair",
            FamilyKind::I => "I",
            FamilyKind::J => "J",
            FamilyKind::L => "L",
            FamilyKind::U => "U",
            FamilyKind::U2 => "U2",
        }
    }

    /// Families whose blocks live in F_{2^{m+1}} rather than F_{2^m}.
    pub fn is_lifted(self) -> bool {
        matches!(self, FamilyKind::U | FamilyKind::U2)
    }

    pub fn needs_alpha(self) -> bool {
        !matches!(self, FamilyKind::W | FamilyKind::WPair)
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = DesignError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "W" => FamilyKind::W,
            "Wpair" => FamilyKind::WPair,
            "I" => FamilyKind::I,
            "J" => FamilyKind::J,
            "L" => FamilyKind::L,
            "U" => FamilyKind::U,
            "U2" => FamilyKind::U2,
            other => return Err(DesignError::Argument(format!("unknown family {other:?}"))),
        })
    }
}

/// Everything that identifies a family except its blocks.
///
/// `m` is always the exponent of the base field F_{2^m}; `U` and `U2` blocks
/// live in F_{2^{m+1}}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub m: u32,
    pub k: usize,
    pub alpha: Option<FieldElement>,
    pub pair: Option<(FieldElement, FieldElement)>,
}

impl FamilySpec {
    /// The field the blocks are drawn from.
    pub fn field(&self) -> Result<BinaryField> {
        if self.kind.is_lifted() {
            BinaryField::new(self.m + 1)
        } else {
            BinaryField::new(self.m)
        }
    }

    /// Whether `block` satisfies the family's defining predicate.
    pub fn admits(&self, block: &Block) -> bool {
        let Ok(field) = self.field() else {
            return false;
        };
        if block.len() != self.k || !block.elements().iter().all(|&x| field.contains(x)) {
            return false;
        }
        let alpha = self.alpha.unwrap_or(FieldElement::ZERO);
        let avoids_alpha = !block.contains(alpha);
        match self.kind {
            FamilyKind::W => block.sum().is_zero(),
            FamilyKind::WPair => {
                let Some((i, j)) = self.pair else {
                    return false;
                };
                block.sum().is_zero() && block.contains(i) && block.contains(j)
            }
            FamilyKind::I => avoids_alpha && block.sum() == alpha,
            FamilyKind::J => avoids_alpha && block.sum().is_zero(),
            FamilyKind::L => !alpha.is_zero() && block.is_shift_invariant(alpha),
            FamilyKind::U => avoids_alpha && block.sum() == alpha && block.avoids_shift(alpha),
            FamilyKind::U2 => avoids_alpha && block.sum() == alpha,
        }
    }
}

/// A block family together with the parameters that define it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFamily {
    spec: FamilySpec,
    blocks: Vec<Block>,
}

impl BlockFamily {
    /// Wraps `blocks`, checking every one against the family predicate.
    pub fn new(spec: FamilySpec, blocks: Vec<Block>) -> Result<Self> {
        if spec.kind.needs_alpha() && spec.alpha.is_none_or(|a| a.is_zero()) {
            return Err(DesignError::InvalidShift);
        }
        if let Some(bad) = blocks.iter().find(|b| !spec.admits(b)) {
            return Err(DesignError::Domain {
                block: bad.clone(),
                reason: format!("not a member of family {}", spec.kind),
            });
        }
        Ok(BlockFamily { spec, blocks })
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn kind(&self) -> FamilyKind {
        self.spec.kind
    }

    pub fn k(&self) -> usize {
        self.spec.k
    }

    pub fn alpha(&self) -> Option<FieldElement> {
        self.spec.alpha
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Membership by binary search; blocks are kept in lexicographic order.
    pub fn contains(&self, block: &Block) -> bool {
        self.blocks.binary_search(block).is_ok()
    }

    pub fn into_blocks(self) -> Vec<Block> {
        self.blocks
    }
}
