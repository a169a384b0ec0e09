//! Representative selection and the two block exchanges built on it.
//!
//! Both exchanges swap one element of a block for its partner under the shift
//! α; which element is swapped is decided by a [`CosetOrdering`]. They are
//! implemented as checked maps: each validates its input domain and its own
//! output, and reports a structured error rather than returning a block that
//! is not in the claimed codomain.

use super::Block;
use crate::error::{DesignError, Result};
use crate::field::{CosetOrdering, FieldElement};

fn check_ordering(ordering: &CosetOrdering, alpha: FieldElement) -> Result<()> {
    if ordering.alpha() != alpha {
        return Err(DesignError::Argument(format!(
            "ordering is for shift {}, map needs {alpha}",
            ordering.alpha()
        )));
    }
    Ok(())
}

fn representative_of(
    elements: &[FieldElement],
    alpha: FieldElement,
    ordering: &CosetOrdering,
) -> Option<FieldElement> {
    elements
        .iter()
        .copied()
        .filter(|&x| elements.binary_search(&(x + alpha)).is_err())
        .max_by_key(|&x| ordering.rank_of(x))
}

/// The element of B ∖ (B + α) whose coset ranks highest under `ordering`.
pub fn representative(
    block: &Block,
    alpha: FieldElement,
    ordering: &CosetOrdering,
) -> Result<FieldElement> {
    check_ordering(ordering, alpha)?;
    if let Some(&x) = block.elements().iter().find(|&&x| !ordering.covers(x)) {
        return Err(DesignError::Containment { element: x.value() });
    }
    representative_of(block.elements(), alpha, ordering).ok_or_else(|| {
        DesignError::NoRepresentative {
            block: block.clone(),
            alpha: alpha.value(),
        }
    })
}

/// Sends a block of W_k^{i,j} to W_k^{i,ℓ}.
///
/// With α = j + ℓ: blocks already containing ℓ are fixed; otherwise j and the
/// representative β of B ∖ {i, j, α} are replaced by ℓ and β + α. `ordering`
/// must be an ordering of the cosets of {0, j + ℓ}.
///
/// When β = i + α the replacement collides with i and the image has only
/// k − 1 elements; that case is returned as [`DesignError::MapViolation`].
pub fn lemma1_phi(
    block: &Block,
    i: FieldElement,
    j: FieldElement,
    ell: FieldElement,
    ordering: &CosetOrdering,
) -> Result<Block> {
    if i.is_zero() || j.is_zero() || ell.is_zero() || i == j || j == ell || i == ell {
        return Err(DesignError::Argument(
            "i, j and ell must be distinct nonzero elements".into(),
        ));
    }
    let alpha = j + ell;
    check_ordering(ordering, alpha)?;
    if !block.sum().is_zero() || !block.contains(i) || !block.contains(j) {
        return Err(DesignError::Domain {
            block: block.clone(),
            reason: format!("not a zero-sum block containing {i} and {j}"),
        });
    }
    if block.contains(ell) {
        return Ok(block.clone());
    }
    let reduced = block.without(&[i, j, alpha]);
    let beta = representative_of(&reduced, alpha, ordering).ok_or_else(|| {
        DesignError::NoRepresentative {
            block: block.clone(),
            alpha: alpha.value(),
        }
    })?;
    let mut image: Vec<u32> = block
        .without(&[j, beta])
        .into_iter()
        .chain([ell, beta + alpha])
        .map(FieldElement::value)
        .collect();
    image.sort_unstable();
    let violation = |image: Vec<u32>, reason: String| DesignError::MapViolation {
        source_block: block.clone(),
        image,
        reason,
    };
    if image.windows(2).any(|w| w[0] == w[1]) {
        image.dedup();
        return Err(violation(
            image,
            format!("replacement {} is already in the block", beta + alpha),
        ));
    }
    let image = Block::from_sorted(image);
    if image.len() != block.len() || !image.sum().is_zero() || !image.contains(i) || !image.contains(ell)
    {
        return Err(violation(
            image.values().collect(),
            format!("image is not a zero-sum block containing {i} and {ell}"),
        ));
    }
    Ok(image)
}

/// The reverse exchange W_k^{i,ℓ} → W_k^{i,j}: [`lemma1_phi`] with j and ℓ
/// swapped. Uses the same shift j + ℓ, so the same ordering applies.
pub fn lemma1_phi_tilde(
    block: &Block,
    i: FieldElement,
    j: FieldElement,
    ell: FieldElement,
    ordering: &CosetOrdering,
) -> Result<Block> {
    lemma1_phi(block, i, ell, j, ordering)
}

fn swap_representative(block: &Block, alpha: FieldElement, ordering: &CosetOrdering) -> Result<Block> {
    let beta = representative(block, alpha, ordering)?;
    let image = Block::new(block.without(&[beta]).into_iter().chain([beta + alpha]))?;
    if image.is_shift_invariant(alpha) || image.contains(alpha) {
        return Err(DesignError::MapViolation {
            source_block: block.clone(),
            image: image.values().collect(),
            reason: "image meets the excluded set".into(),
        });
    }
    Ok(image)
}

/// Sends a block of I_k^α (sum α) to J_k^α ∖ L_k^α (sum 0) by replacing the
/// representative β with β + α. Shift-invariant blocks have no representative.
pub fn lemma2_map(
    block: &Block,
    alpha: FieldElement,
    k: usize,
    ordering: &CosetOrdering,
) -> Result<Block> {
    if block.len() != k || block.contains(alpha) || block.sum() != alpha {
        return Err(DesignError::Domain {
            block: block.clone(),
            reason: format!("not a {k}-subset avoiding {alpha} with sum {alpha}"),
        });
    }
    let image = swap_representative(block, alpha, ordering)?;
    debug_assert!(image.sum().is_zero());
    Ok(image)
}

/// Inverse of [`lemma2_map`]: J_k^α ∖ L_k^α → I_k^α ∖ L_k^α.
pub fn lemma2_inverse(
    block: &Block,
    alpha: FieldElement,
    k: usize,
    ordering: &CosetOrdering,
) -> Result<Block> {
    if block.len() != k || block.contains(alpha) || !block.sum().is_zero() {
        return Err(DesignError::Domain {
            block: block.clone(),
            reason: format!("not a {k}-subset avoiding {alpha} with sum 0"),
        });
    }
    swap_representative(block, alpha, ordering)
}
