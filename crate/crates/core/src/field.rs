//! Additive structure of the binary field F_{2^m}.
//!
//! Elements are m-bit masks and addition is XOR. Nothing in the designs needs
//! field multiplication, so none is provided. The module also covers the coset
//! partition H_α = F_{2^m}/{0, α}, total orders on that partition, and an explicit
//! isomorphism from F_{2^{m+1}}/{0, α} onto the additive group of F_{2^m}.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};

use serde::Serialize;

use crate::error::{DesignError, Result};

/// Smallest field exponent accepted anywhere in the crate.
pub const MIN_EXPONENT: u32 = 3;
/// Largest field exponent accepted anywhere in the crate.
pub const MAX_EXPONENT: u32 = 16;

/// An element of F_{2^m}, stored as its bitmask.
///
/// The exponent is carried by [`BinaryField`], not by each element, so sets of
/// elements stay as compact as a `Vec<u32>`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    pub const fn new(value: u32) -> Self {
        FieldElement(value)
    }

    pub const fn value(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl Add for FieldElement {
    type Output = FieldElement;

    // characteristic 2: addition is XOR
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl AddAssign for FieldElement {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl Sum for FieldElement {
    fn sum<I: Iterator<Item = FieldElement>>(iter: I) -> Self {
        iter.fold(FieldElement::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a FieldElement> for FieldElement {
    fn sum<I: Iterator<Item = &'a FieldElement>>(iter: I) -> Self {
        iter.copied().sum()
    }
}

impl From<FieldElement> for u32 {
    fn from(x: FieldElement) -> u32 {
        x.0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Characteristic-2 addition.
pub fn add(x: FieldElement, y: FieldElement) -> FieldElement {
    x + y
}

/// The field F_{2^m} for a validated exponent m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BinaryField {
    m: u32,
}

impl BinaryField {
    pub fn new(m: u32) -> Result<Self> {
        if !(MIN_EXPONENT..=MAX_EXPONENT).contains(&m) {
            return Err(DesignError::Exponent {
                m,
                min: MIN_EXPONENT,
                max: MAX_EXPONENT,
            });
        }
        Ok(BinaryField { m })
    }

    pub fn exponent(&self) -> u32 {
        self.m
    }

    /// 2^m.
    pub fn order(&self) -> u32 {
        1 << self.m
    }

    /// 2^m − 1, the number of nonzero elements.
    pub fn nonzero_count(&self) -> u32 {
        self.order() - 1
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.0 < self.order()
    }

    /// Checks that `value` is a bitmask of this field.
    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value >= self.order() {
            return Err(DesignError::Range {
                what: "field element",
                value: value.into(),
                min: 0,
                max: (self.order() - 1).into(),
            });
        }
        Ok(FieldElement(value))
    }

    /// Checks that `value` is a nonzero bitmask of this field.
    pub fn nonzero_element(&self, value: u32) -> Result<FieldElement> {
        if value == 0 {
            return Err(DesignError::Argument("element must be nonzero".into()));
        }
        self.element(value)
    }

    /// The nonzero elements in ascending order.
    pub fn nonzero(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.order()).map(FieldElement)
    }

    fn shift(&self, alpha: FieldElement) -> Result<FieldElement> {
        if alpha.is_zero() {
            return Err(DesignError::InvalidShift);
        }
        self.element(alpha.0)
    }

    /// The partition H_α of the whole field into pairs {x, x + α}, ordered by
    /// their smaller element. Includes {0, α}.
    pub fn cosets_of(&self, alpha: FieldElement) -> Result<Vec<Coset>> {
        let alpha = self.shift(alpha)?;
        Ok((0..self.order())
            .map(FieldElement)
            .filter(|&x| x < x + alpha)
            .map(|x| Coset { low: x, alpha })
            .collect())
    }
}

/// The pair {x, x + α}, an element of H_α.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coset {
    low: FieldElement,
    alpha: FieldElement,
}

impl Coset {
    /// The coset of `x` under the shift `alpha`. `alpha` must be nonzero.
    pub fn of(x: FieldElement, alpha: FieldElement) -> Self {
        debug_assert!(!alpha.is_zero());
        let other = x + alpha;
        Coset {
            low: x.min(other),
            alpha,
        }
    }

    pub fn low(&self) -> FieldElement {
        self.low
    }

    pub fn high(&self) -> FieldElement {
        self.low + self.alpha
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    /// True for the subgroup {0, α} itself.
    pub fn is_identity(&self) -> bool {
        self.low.is_zero()
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x == self.low || x == self.high()
    }

    pub fn elements(&self) -> [FieldElement; 2] {
        [self.low, self.high()]
    }
}

impl Add for Coset {
    type Output = Coset;

    fn add(self, rhs: Coset) -> Coset {
        debug_assert_eq!(self.alpha, rhs.alpha, "cosets of different subgroups");
        Coset::of(self.low + rhs.low, self.alpha)
    }
}

impl fmt::Display for Coset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.low, self.high())
    }
}

/// A total order O_α on the cosets of H_α, as ranks 1..=2^{m−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetOrdering {
    alpha: FieldElement,
    // rank of the coset containing x, indexed by x
    rank_by_element: Vec<u32>,
}

impl CosetOrdering {
    /// Ranks cosets by ascending smaller element.
    pub fn natural(field: &BinaryField, alpha: FieldElement) -> Result<Self> {
        let cosets = field.cosets_of(alpha)?;
        Self::from_sequence(field, alpha, &cosets)
    }

    /// The natural order turned upside down.
    pub fn reversed(field: &BinaryField, alpha: FieldElement) -> Result<Self> {
        let mut cosets = field.cosets_of(alpha)?;
        cosets.reverse();
        Self::from_sequence(field, alpha, &cosets)
    }

    /// Ranks cosets by their position in `sequence` (first gets rank 1). The
    /// sequence must list every coset of H_α exactly once.
    pub fn from_sequence(
        field: &BinaryField,
        alpha: FieldElement,
        sequence: &[Coset],
    ) -> Result<Self> {
        let alpha = field.shift(alpha)?;
        let expected = (field.order() / 2) as usize;
        if sequence.len() != expected {
            return Err(DesignError::Argument(format!(
                "ordering lists {} cosets, H_alpha has {expected}",
                sequence.len()
            )));
        }
        let mut rank_by_element = vec![0u32; field.order() as usize];
        for (position, coset) in sequence.iter().enumerate() {
            if coset.alpha != alpha || !field.contains(coset.high()) {
                return Err(DesignError::Argument(format!(
                    "{coset} is not a coset of {{0, {alpha}}}"
                )));
            }
            for x in coset.elements() {
                if rank_by_element[x.0 as usize] != 0 {
                    return Err(DesignError::Argument(format!("{coset} listed twice")));
                }
                rank_by_element[x.0 as usize] = position as u32 + 1;
            }
        }
        Ok(CosetOrdering {
            alpha,
            rank_by_element,
        })
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    pub fn rank(&self, coset: &Coset) -> u32 {
        self.rank_of(coset.low)
    }

    /// Whether `x` lies in the field this ordering was built for.
    pub fn covers(&self, x: FieldElement) -> bool {
        (x.0 as usize) < self.rank_by_element.len()
    }

    /// Rank of the coset that contains `x`.
    pub fn rank_of(&self, x: FieldElement) -> u32 {
        self.rank_by_element[x.0 as usize]
    }
}

/// The additive isomorphism ψ: F_{2^{m+1}}/{0, α} → F_{2^m}.
///
/// {α} is extended greedily to a GF(2) basis of the ambient field using the
/// smallest independent bitmasks. ψ writes an element in that basis, drops the
/// α coordinate and reads the remaining m coordinates as a bitmask.
#[derive(Clone, Debug)]
pub struct QuotientIso {
    alpha: FieldElement,
    ambient: BinaryField,
    target: BinaryField,
    basis: Vec<FieldElement>,
    // echelon rows (vector, combination of basis indices), pivots descending
    rows: Vec<(u32, u32)>,
}

impl QuotientIso {
    pub fn new(ambient: &BinaryField, alpha: FieldElement) -> Result<Self> {
        let alpha = ambient.shift(alpha)?;
        let target = BinaryField::new(ambient.m - 1)?;
        let mut iso = QuotientIso {
            alpha,
            ambient: *ambient,
            target,
            basis: Vec::with_capacity(ambient.m as usize),
            rows: Vec::with_capacity(ambient.m as usize),
        };
        iso.push_basis(alpha.0);
        for candidate in 1..ambient.order() {
            if iso.basis.len() == ambient.m as usize {
                break;
            }
            iso.push_basis(candidate);
        }
        if iso.basis.len() != ambient.m as usize {
            return Err(DesignError::Consistency("basis extension fell short".into()));
        }
        Ok(iso)
    }

    fn reduce(&self, mut x: u32) -> (u32, u32) {
        let mut combination = 0;
        for &(vector, comb) in &self.rows {
            let pivot = 31 - vector.leading_zeros();
            if x >> pivot & 1 == 1 {
                x ^= vector;
                combination ^= comb;
            }
        }
        (x, combination)
    }

    fn push_basis(&mut self, candidate: u32) {
        let (residual, combination) = self.reduce(candidate);
        if residual == 0 {
            return;
        }
        let index = self.basis.len();
        self.basis.push(FieldElement(candidate));
        let row = (residual, combination ^ (1 << index));
        let at = self
            .rows
            .iter()
            .position(|&(v, _)| v.leading_zeros() > residual.leading_zeros())
            .unwrap_or(self.rows.len());
        self.rows.insert(at, row);
    }

    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    pub fn ambient(&self) -> &BinaryField {
        &self.ambient
    }

    pub fn target(&self) -> &BinaryField {
        &self.target
    }

    /// The basis of the ambient field; `basis()[0]` is α.
    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    /// Coordinates of `x` in [`Self::basis`], bit t for basis vector t.
    pub fn coordinates(&self, x: FieldElement) -> u32 {
        let (residual, combination) = self.reduce(x.0);
        debug_assert_eq!(residual, 0, "{x} outside the ambient field");
        combination
    }

    /// ψ of the coset containing `x`.
    pub fn apply_element(&self, x: FieldElement) -> FieldElement {
        FieldElement(self.coordinates(x) >> 1)
    }

    pub fn apply(&self, coset: &Coset) -> FieldElement {
        debug_assert_eq!(coset.alpha, self.alpha);
        self.apply_element(coset.low)
    }

    /// A preimage coset of `y` under ψ.
    pub fn preimage(&self, y: FieldElement) -> Coset {
        let x = self
            .basis
            .iter()
            .skip(1)
            .enumerate()
            .filter(|(t, _)| y.0 >> t & 1 == 1)
            .map(|(_, &b)| b)
            .sum();
        Coset::of(x, self.alpha)
    }
}

/// Builds ψ for the ambient field F_{2^{m+1}} given its exponent.
pub fn quotient_iso(alpha: FieldElement, ambient_exponent: u32) -> Result<QuotientIso> {
    QuotientIso::new(&BinaryField::new(ambient_exponent)?, alpha)
}
