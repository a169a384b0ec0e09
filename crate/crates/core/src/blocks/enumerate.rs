//! Depth-first enumeration of fixed-size subsets with a prescribed XOR sum.
//!
//! The search walks the ground set in ascending order carrying the XOR of the
//! chosen prefix. The last slot is filled by a direct lookup of the one element
//! that completes the sum, so a search for r-subsets visits about C(n, r − 1)
//! nodes. Output is lexicographic; shards split on the first element are
//! concatenated in order, so parallel runs give the same result.

use rayon::prelude::*;

use super::{Block, BlockFamily, FamilyKind, FamilySpec};
use crate::error::{DesignError, Result};
use crate::field::{BinaryField, FieldElement};

/// Default cap on the enumeration search space.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

// searches smaller than this stay on one thread
const PARALLEL_THRESHOLD: u128 = 200_000;

/// C(n, r), saturating at `u128::MAX`.
fn search_space(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut c: u128 = 1;
    for t in 0..r {
        match c.checked_mul((n - t) as u128) {
            Some(p) => c = p / (t as u128 + 1),
            None => return u128::MAX,
        }
    }
    c
}

struct SubsetSearch {
    ground: Vec<u32>,
    // position of each value in `ground`, or usize::MAX
    position: Vec<usize>,
    slots: usize,
    target: u32,
    // forbid choosing both x and x ^ shift
    exclusive_shift: Option<u32>,
}

impl SubsetSearch {
    fn new(order: u32, ground: Vec<u32>, slots: usize, target: u32) -> Self {
        let mut position = vec![usize::MAX; order as usize];
        for (p, &x) in ground.iter().enumerate() {
            position[x as usize] = p;
        }
        SubsetSearch {
            ground,
            position,
            slots,
            target,
            exclusive_shift: None,
        }
    }

    fn run(&self, budget: u64) -> Result<Vec<Vec<u32>>> {
        let required = search_space(self.ground.len(), self.slots);
        if required > u128::from(budget) {
            return Err(DesignError::Resource { required, budget });
        }
        if self.slots == 0 {
            return Ok(if self.target == 0 { vec![vec![]] } else { vec![] });
        }
        if self.slots > self.ground.len() {
            return Ok(vec![]);
        }
        let firsts = 0..=self.ground.len() - self.slots;
        if required < PARALLEL_THRESHOLD || self.slots == 1 {
            let mut out = Vec::new();
            let mut chosen = Vec::with_capacity(self.slots);
            self.descend(0, 0, &mut chosen, &mut out);
            return Ok(out);
        }
        let shards: Vec<Vec<Vec<u32>>> = firsts
            .into_par_iter()
            .map(|p| {
                let mut out = Vec::new();
                let mut chosen = Vec::with_capacity(self.slots);
                let x = self.ground[p];
                chosen.push(x);
                self.descend(p + 1, x, &mut chosen, &mut out);
                out
            })
            .collect();
        Ok(shards.into_iter().flatten().collect())
    }

    fn clashes(&self, chosen: &[u32], x: u32) -> bool {
        match self.exclusive_shift {
            Some(shift) => chosen.contains(&(x ^ shift)),
            None => false,
        }
    }

    fn descend(&self, start: usize, sum: u32, chosen: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        let remaining = self.slots - chosen.len();
        if remaining == 1 {
            let need = sum ^ self.target;
            if let Some(&p) = self.position.get(need as usize) {
                if p != usize::MAX && p >= start && !self.clashes(chosen, need) {
                    let mut block = chosen.clone();
                    block.push(need);
                    out.push(block);
                }
            }
            return;
        }
        for p in start..=self.ground.len() - remaining {
            let x = self.ground[p];
            if self.clashes(chosen, x) {
                continue;
            }
            chosen.push(x);
            self.descend(p + 1, sum ^ x, chosen, out);
            chosen.pop();
        }
    }
}

fn check_k(k: usize, min: usize, max: u32) -> Result<()> {
    if k < min || k > max as usize {
        return Err(DesignError::Range {
            what: "block size k",
            value: k as u64,
            min: min as u64,
            max: max.into(),
        });
    }
    Ok(())
}

fn nonzero_in(field: &BinaryField, x: FieldElement, what: &str) -> Result<FieldElement> {
    field
        .nonzero_element(x.value())
        .map_err(|_| DesignError::Argument(format!("{what} = {x} must be a nonzero element of F_{}", field.order())))
}

/// Enumerates the block families under a fixed search budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Enumerator {
    budget: u64,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Enumerator {
    pub fn new(budget: u64) -> Self {
        Enumerator { budget }
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// W_k: k-subsets of F_{2^m}^* summing to zero, 3 ≤ k ≤ 2^m − 4.
    pub fn w(&self, m: u32, k: usize) -> Result<BlockFamily> {
        let field = BinaryField::new(m)?;
        check_k(k, 3, field.order() - 4)?;
        let search = SubsetSearch::new(field.order(), (1..field.order()).collect(), k, 0);
        let blocks = search
            .run(self.budget)?
            .into_iter()
            .map(Block::from_sorted)
            .collect();
        BlockFamily::new(
            FamilySpec {
                kind: FamilyKind::W,
                m,
                k,
                alpha: None,
                pair: None,
            },
            blocks,
        )
    }

    /// W_k^{i,j}: members of W_k containing both i and j.
    pub fn w_pair(&self, m: u32, k: usize, i: FieldElement, j: FieldElement) -> Result<BlockFamily> {
        let field = BinaryField::new(m)?;
        check_k(k, 3, field.order() - 4)?;
        let i = nonzero_in(&field, i, "i")?;
        let j = nonzero_in(&field, j, "j")?;
        if i == j {
            return Err(DesignError::Argument("i and j must be distinct".into()));
        }
        let ground = field
            .nonzero()
            .filter(|&x| x != i && x != j)
            .map(FieldElement::value)
            .collect();
        let search = SubsetSearch::new(field.order(), ground, k - 2, (i + j).value());
        let mut blocks: Vec<Block> = search
            .run(self.budget)?
            .into_iter()
            .map(|mut rest| {
                rest.push(i.value());
                rest.push(j.value());
                rest.sort_unstable();
                Block::from_sorted(rest)
            })
            .collect();
        blocks.sort_unstable();
        BlockFamily::new(
            FamilySpec {
                kind: FamilyKind::WPair,
                m,
                k,
                alpha: None,
                pair: Some((i, j)),
            },
            blocks,
        )
    }

    /// (I_k^α, J_k^α, L_k^α) for 2 ≤ k ≤ 2^m − 2. L is empty for odd k.
    pub fn ijl(
        &self,
        m: u32,
        k: usize,
        alpha: FieldElement,
    ) -> Result<(BlockFamily, BlockFamily, BlockFamily)> {
        let field = BinaryField::new(m)?;
        check_k(k, 2, field.order() - 2)?;
        if alpha.is_zero() {
            return Err(DesignError::InvalidShift);
        }
        let alpha = field.element(alpha.value())?;
        let ground: Vec<u32> = field
            .nonzero()
            .filter(|&x| x != alpha)
            .map(FieldElement::value)
            .collect();
        let spec = |kind| FamilySpec {
            kind,
            m,
            k,
            alpha: Some(alpha),
            pair: None,
        };
        let collect = |target: u32| -> Result<Vec<Block>> {
            Ok(SubsetSearch::new(field.order(), ground.clone(), k, target)
                .run(self.budget)?
                .into_iter()
                .map(Block::from_sorted)
                .collect())
        };
        let i = BlockFamily::new(spec(FamilyKind::I), collect(alpha.value())?)?;
        let j = BlockFamily::new(spec(FamilyKind::J), collect(0)?)?;
        let l = BlockFamily::new(spec(FamilyKind::L), self.shift_invariant(&field, k, alpha)?)?;
        Ok((i, j, l))
    }

    // L_k^α: unions of k/2 cosets of {0, α} other than {0, α} itself
    fn shift_invariant(&self, field: &BinaryField, k: usize, alpha: FieldElement) -> Result<Vec<Block>> {
        if k % 2 == 1 {
            return Ok(vec![]);
        }
        let lows: Vec<u32> = field
            .cosets_of(alpha)?
            .into_iter()
            .filter(|c| !c.is_identity())
            .map(|c| c.low().value())
            .collect();
        let required = search_space(lows.len(), k / 2);
        if required > u128::from(self.budget) {
            return Err(DesignError::Resource {
                required,
                budget: self.budget,
            });
        }
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(k / 2);
        fn pick(lows: &[u32], start: usize, want: usize, chosen: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if chosen.len() == want {
                out.push(chosen.clone());
                return;
            }
            for p in start..=lows.len() - (want - chosen.len()) {
                chosen.push(lows[p]);
                pick(lows, p + 1, want, chosen, out);
                chosen.pop();
            }
        }
        pick(&lows, 0, k / 2, &mut chosen, &mut out);
        let mut blocks: Vec<Block> = out
            .into_iter()
            .map(|lows| {
                let mut values: Vec<u32> = lows.iter().flat_map(|&x| [x, x ^ alpha.value()]).collect();
                values.sort_unstable();
                Block::from_sorted(values)
            })
            .collect();
        blocks.sort_unstable();
        Ok(blocks)
    }

    /// U_{α,k} in F_{2^{m+1}}: k-subsets of V_α = F_{2^{m+1}} ∖ {0, α} summing
    /// to α that meet each coset of {0, α} at most once. 3 ≤ k ≤ 2^m − 4.
    pub fn u(&self, m: u32, k: usize, alpha: FieldElement) -> Result<BlockFamily> {
        let base = BinaryField::new(m)?;
        let ambient = BinaryField::new(m + 1)?;
        check_k(k, 3, base.order() - 4)?;
        if alpha.is_zero() {
            return Err(DesignError::InvalidShift);
        }
        let alpha = ambient.element(alpha.value())?;
        let ground = ambient
            .nonzero()
            .filter(|&x| x != alpha)
            .map(FieldElement::value)
            .collect();
        let mut search = SubsetSearch::new(ambient.order(), ground, k, alpha.value());
        search.exclusive_shift = Some(alpha.value());
        let blocks = search
            .run(self.budget)?
            .into_iter()
            .map(Block::from_sorted)
            .collect();
        BlockFamily::new(
            FamilySpec {
                kind: FamilyKind::U,
                m,
                k,
                alpha: Some(alpha),
                pair: None,
            },
            blocks,
        )
    }
}

/// W_k with the default budget.
pub fn enumerate_w(m: u32, k: usize) -> Result<BlockFamily> {
    Enumerator::default().w(m, k)
}

/// W_k^{i,j} with the default budget.
pub fn enumerate_w_pair(m: u32, k: usize, i: FieldElement, j: FieldElement) -> Result<BlockFamily> {
    Enumerator::default().w_pair(m, k, i, j)
}

/// (I_k^α, J_k^α, L_k^α) with the default budget.
pub fn enumerate_ijl(
    m: u32,
    k: usize,
    alpha: FieldElement,
) -> Result<(BlockFamily, BlockFamily, BlockFamily)> {
    Enumerator::default().ijl(m, k, alpha)
}

/// U_{α,k} with the default budget.
pub fn enumerate_u(m: u32, k: usize, alpha: FieldElement) -> Result<BlockFamily> {
    Enumerator::default().u(m, k, alpha)
}

/// The groups U_{α,2} of the GDD: the 2^m − 1 pairs {x, x + α} in V_α.
pub fn groups_u2(m: u32, alpha: FieldElement) -> Result<BlockFamily> {
    let ambient = BinaryField::new(m + 1)?;
    if alpha.is_zero() {
        return Err(DesignError::Argument("alpha must be nonzero".into()));
    }
    let alpha = ambient.element(alpha.value())?;
    let blocks = ambient
        .cosets_of(alpha)?
        .into_iter()
        .filter(|c| !c.is_identity())
        .map(|c| Block::from_sorted(vec![c.low().value(), c.high().value()]))
        .collect();
    BlockFamily::new(
        FamilySpec {
            kind: FamilyKind::U2,
            m,
            k: 2,
            alpha: Some(alpha),
            pair: None,
        },
        blocks,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(v: u32) -> FieldElement {
        FieldElement::new(v)
    }

    fn values(family: &BlockFamily) -> Vec<Vec<u32>> {
        family
            .blocks()
            .iter()
            .map(|b| b.values().collect())
            .collect()
    }

    #[test]
    fn search_space_matches_binomials() {
        assert_eq!(search_space(7, 3), 35);
        assert_eq!(search_space(31, 4), 31_465);
        assert_eq!(search_space(5, 7), 0);
        assert_eq!(search_space(4, 0), 1);
        assert_eq!(search_space(65_535, 40), u128::MAX);
    }

    #[test]
    fn w_small_fields() {
        let w = enumerate_w(3, 3).unwrap();
        assert_eq!(w.len(), 7);
        assert!(w.contains(&Block::from_values(&[1, 2, 3]).unwrap()));
        assert!(w.contains(&Block::from_values(&[1, 4, 5]).unwrap()));
        assert_eq!(enumerate_w(3, 4).unwrap().len(), 7);
        assert_eq!(enumerate_w(4, 3).unwrap().len(), 35);
    }

    #[test]
    fn w_is_lexicographic() {
        let w = enumerate_w(4, 5).unwrap();
        assert!(w.blocks().windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn w_range_errors() {
        assert!(matches!(enumerate_w(3, 2), Err(DesignError::Range { .. })));
        assert!(matches!(enumerate_w(3, 5), Err(DesignError::Range { .. })));
        assert!(matches!(enumerate_w(4, 99), Err(DesignError::Range { .. })));
        assert!(matches!(enumerate_w(2, 3), Err(DesignError::Exponent { .. })));
    }

    #[test]
    fn budget_is_enforced() {
        let err = Enumerator::new(1000).w(5, 4).unwrap_err();
        assert_eq!(
            err,
            DesignError::Resource {
                required: 31_465,
                budget: 1000
            }
        );
        assert!(err.to_string().contains("1000"));
        assert!(matches!(enumerate_w(5, 15), Err(DesignError::Resource { .. })));
    }

    #[test]
    fn parallel_and_serial_agree() {
        // C(31, 5) is above the parallel threshold
        let big = enumerate_w(5, 5).unwrap();
        let field = BinaryField::new(5).unwrap();
        let mut serial = Vec::new();
        let search = SubsetSearch::new(field.order(), (1..32).collect(), 5, 0);
        search.descend(0, 0, &mut Vec::new(), &mut serial);
        assert_eq!(values(&big), serial);
    }

    #[test]
    fn w_pair_examples() {
        assert_eq!(enumerate_w_pair(4, 4, fe(1), fe(2)).unwrap().len(), 6);
        assert_eq!(
            values(&enumerate_w_pair(3, 3, fe(1), fe(2)).unwrap()),
            vec![vec![1, 2, 3]]
        );
        assert_eq!(enumerate_w_pair(4, 5, fe(3), fe(7)).unwrap().len(), 16);
        assert!(matches!(
            enumerate_w_pair(4, 4, fe(2), fe(2)),
            Err(DesignError::Argument(_))
        ));
        assert!(matches!(
            enumerate_w_pair(4, 4, fe(0), fe(2)),
            Err(DesignError::Argument(_))
        ));
    }

    #[test]
    fn ijl_examples() {
        let (i, j, l) = enumerate_ijl(3, 2, fe(1)).unwrap();
        assert_eq!((i.len(), j.len(), l.len()), (3, 0, 3));
        for k in [3, 5] {
            let (_, _, l) = enumerate_ijl(3, k, fe(1)).unwrap();
            assert!(l.is_empty());
        }
        let (i, j, l) = enumerate_ijl(4, 4, fe(5)).unwrap();
        assert_eq!(i.len() + 21, j.len());
        assert_eq!(l.len(), 21);
        assert_eq!(enumerate_ijl(3, 2, fe(0)).unwrap_err(), DesignError::InvalidShift);
        assert!(matches!(enumerate_ijl(3, 7, fe(1)), Err(DesignError::Range { .. })));
    }

    #[test]
    fn u_examples() {
        let u = enumerate_u(3, 3, fe(1)).unwrap();
        assert_eq!(u.len(), 28);
        for b in u.blocks() {
            assert!(b.avoids_shift(fe(1)));
        }
        for b in enumerate_u(4, 4, fe(1)).unwrap().blocks() {
            assert_eq!(b.sum(), fe(1));
        }
        assert_eq!(enumerate_u(3, 3, fe(0)).unwrap_err(), DesignError::InvalidShift);
        assert!(matches!(enumerate_u(3, 5, fe(1)), Err(DesignError::Range { .. })));
    }

    #[test]
    fn groups_partition_v_alpha() {
        let g = groups_u2(3, fe(1)).unwrap();
        assert_eq!(
            values(&g),
            vec![
                vec![2, 3],
                vec![4, 5],
                vec![6, 7],
                vec![8, 9],
                vec![10, 11],
                vec![12, 13],
                vec![14, 15]
            ]
        );
        let g = groups_u2(4, fe(9)).unwrap();
        assert_eq!(g.len(), 15);
        let mut covered: Vec<u32> = g.blocks().iter().flat_map(|b| b.values()).collect();
        covered.sort_unstable();
        let expected: Vec<u32> = (1..32).filter(|&x| x != 9).collect();
        assert_eq!(covered, expected);
        assert!(groups_u2(3, fe(0)).is_err());
    }
}
