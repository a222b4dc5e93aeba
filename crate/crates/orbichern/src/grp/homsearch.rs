use super::spec::{Presentation, Word};
use crate::{Error, Result};

/// Cap on the number of candidate generator-image tuples an enumeration may
/// visit. Checked *before* the search starts, so a blown budget never yields
/// a partial count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub cap: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { cap: 100_000_000 }
    }
}

impl Budget {
    pub fn new(cap: u128) -> Self {
        Budget { cap }
    }

    pub fn check(&self, needed: u128) -> Result<()> {
        if needed > self.cap {
            return Err(Error::BudgetExceeded {
                needed,
                cap: self.cap,
            });
        }
        Ok(())
    }
}

/// Finite group seen through element indices: enough structure to evaluate
/// relator words. Implemented by permutation groups and wreath products.
pub trait MulTable {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
}

/// Number of candidate generator-image tuples: `order^gens` (saturating).
pub fn hom_candidates(order: usize, gens: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..gens {
        acc = acc.saturating_mul(order as u128);
    }
    acc
}

/// Evaluates a relator word at the given generator images.
pub fn eval_word<T: MulTable + ?Sized>(word: &Word, images: &[usize], target: &T) -> usize {
    let mut acc = target.identity();
    for &letter in word.letters() {
        let idx = letter.unsigned_abs() as usize - 1;
        let img = images[idx];
        let factor = if letter > 0 { img } else { target.inv(img) };
        acc = target.mul(acc, factor);
    }
    acc
}

/// Enumerates every homomorphism from the presented group into `target` by
/// backtracking over generator images. Each relator is evaluated as soon as
/// all generators it mentions are assigned (an early prune; the final
/// assignment is always fully checked). Calls `f` once per homomorphism with
/// the tuple of generator image indices and returns the total count.
pub fn for_each_hom<T, F>(
    pres: &Presentation,
    target: &T,
    budget: Budget,
    mut f: F,
) -> Result<u64>
where
    T: MulTable + ?Sized,
    F: FnMut(&[usize]),
{
    let gens = pres.generators.len();
    budget.check(hom_candidates(target.order(), gens))?;

    // relators_at[d] = relators whose highest generator is d (checkable once
    // generators 0..=d are assigned); empty words are identically satisfied.
    let mut relators_at: Vec<Vec<&Word>> = vec![Vec::new(); gens];
    for w in &pres.relators {
        if let Some(top) = w.letters().iter().map(|l| l.unsigned_abs() as usize - 1).max() {
            relators_at[top].push(w);
        }
    }

    if gens == 0 {
        f(&[]);
        return Ok(1);
    }

    let order = target.order();
    let mut images = vec![0usize; gens];
    let mut count = 0u64;
    let mut depth = 0usize;
    // images[depth] holds the next candidate to try at this depth
    loop {
        if images[depth] == order {
            // exhausted this level; backtrack
            images[depth] = 0;
            if depth == 0 {
                break;
            }
            depth -= 1;
            images[depth] += 1;
            continue;
        }
        let ok = relators_at[depth]
            .iter()
            .all(|w| eval_word(w, &images, target) == target.identity());
        if ok {
            if depth + 1 == gens {
                count += 1;
                f(&images);
                images[depth] += 1;
            } else {
                depth += 1;
            }
        } else {
            images[depth] += 1;
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::{FiniteGroup, GroupSpec};

    #[test]
    fn budget_checked_before_search() {
        let pres = GroupSpec::FreeAbelian(3).presentation().unwrap();
        let target = FiniteGroup::symmetric(4);
        let err = for_each_hom(&pres, &target, Budget::new(100), |_| {});
        match err {
            Err(Error::BudgetExceeded { needed, cap }) => {
                assert_eq!(needed, 24u128.pow(3));
                assert_eq!(cap, 100);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn free_group_homs_are_all_tuples() {
        let pres = GroupSpec::FreeAbelian(1).presentation().unwrap();
        let target = FiniteGroup::symmetric(3);
        let n = for_each_hom(&pres, &target, Budget::default(), |_| {}).unwrap();
        assert_eq!(n, 6);
    }

    #[test]
    fn commuting_pairs_in_s3() {
        // |Hom(Z², S_3)| = Σ_g |C(g)| = |S_3| · #classes = 18
        let pres = GroupSpec::FreeAbelian(2).presentation().unwrap();
        let target = FiniteGroup::symmetric(3);
        let mut seen = Vec::new();
        let n = for_each_hom(&pres, &target, Budget::default(), |im| {
            seen.push(im.to_vec());
        })
        .unwrap();
        assert_eq!(n, 18);
        assert_eq!(seen.len(), 18);
        // verify every reported pair really commutes
        for im in &seen {
            assert_eq!(target.mul(im[0], im[1]), target.mul(im[1], im[0]));
        }
    }

    #[test]
    fn torsion_relator() {
        // |Hom(Z/2, S_3)| = #{x : x² = e} = 4
        let pres = GroupSpec::Cyclic(2).presentation().unwrap();
        let target = FiniteGroup::symmetric(3);
        let n = for_each_hom(&pres, &target, Budget::default(), |_| {}).unwrap();
        assert_eq!(n, 4);
    }

    #[test]
    fn zero_generator_presentation_has_one_hom() {
        let pres = GroupSpec::Trivial.presentation().unwrap();
        let target = FiniteGroup::symmetric(4);
        let mut calls = 0;
        let n = for_each_hom(&pres, &target, Budget::new(1), |im| {
            assert!(im.is_empty());
            calls += 1;
        })
        .unwrap();
        assert_eq!((n, calls), (1, 1));
    }
}
