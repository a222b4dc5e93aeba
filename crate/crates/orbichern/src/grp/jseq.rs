use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::finite::FiniteGroup;
use super::homsearch::{for_each_hom, Budget};
use super::perm::orbit_sizes;
use super::spec::GroupSpec;
use crate::qexact::factorial;
use crate::{Error, Result};

/// How a subgroup count was obtained.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Family closed form (trivial / cyclic / p-adic divisor patterns, the
    /// free-abelian divisor-sum recursion).
    ClosedForm,
    /// Counted by enumerating transitive actions and dividing by `(r-1)!`.
    Enumerated,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct JEntry {
    pub value: u64,
    pub provenance: Provenance,
}

/// The sequence `j_r(A)` of finite-index subgroup counts, `1 ≤ r ≤ rmax`.
#[derive(Clone, Debug)]
pub struct JSequence {
    source: GroupSpec,
    entries: Vec<JEntry>,
}

impl JSequence {
    pub fn source(&self) -> &GroupSpec {
        &self.source
    }

    pub fn rmax(&self) -> usize {
        self.entries.len()
    }

    /// `j_r` for `1 ≤ r ≤ rmax`. Panics out of range — callers size the
    /// sequence to their truncation order up front.
    pub fn j(&self, r: usize) -> u64 {
        assert!(r >= 1 && r <= self.entries.len(), "j_{r} not computed");
        self.entries[r - 1].value
    }

    pub fn entries(&self) -> &[JEntry] {
        &self.entries
    }
}

/// `j(m; k)` for the free abelian group `Z^m` by the divisor-sum recursion
/// `j(m; k) = Σ_{d|k} d·j(m-1; d)`, with `j(0; k) = [k = 1]`.
/// Returns `j(m; 1..=kmax)`.
pub fn free_abelian_j(m: u32, kmax: usize) -> Result<Vec<u64>> {
    let mut prev: Vec<u64> = (1..=kmax).map(|k| u64::from(k == 1)).collect();
    for _ in 0..m {
        let mut next = vec![0u64; kmax];
        for k in 1..=kmax {
            let mut acc: u64 = 0;
            for d in 1..=k {
                if k % d == 0 {
                    let term = (d as u64)
                        .checked_mul(prev[d - 1])
                        .ok_or(Error::Overflow("free_abelian_j"))?;
                    acc = acc.checked_add(term).ok_or(Error::Overflow("free_abelian_j"))?;
                }
            }
            next[k - 1] = acc;
        }
        prev = next;
    }
    Ok(prev)
}

/// Number of homomorphisms `A → S_r` whose image acts transitively on the
/// `r` points. This is `(r-1)! · j_r(A)`: a transitive action is a coset
/// action on an index-`r` subgroup together with a labeling of the cosets
/// by `{2, …, r}` (the subgroup itself labeled 1).
pub fn count_transitive_homs(a: &GroupSpec, r: usize, budget: Budget) -> Result<u64> {
    let pres = a.presentation().map_err(|_| Error::UnsupportedGroup {
        op: "count_transitive_homs",
        group: a.to_string(),
    })?;
    let target = FiniteGroup::symmetric(r);
    let mut count = 0u64;
    for_each_hom(&pres, &target, budget, |images| {
        let perms: Vec<&super::perm::Permutation> =
            images.iter().map(|&i| target.element(i)).collect();
        if orbit_sizes(r, &perms).len() == 1 {
            count += 1;
        }
    })?;
    Ok(count)
}

#[cfg(test)]
fn divisors(k: usize) -> Vec<usize> {
    (1..=k).filter(|d| k % d == 0).collect()
}

/// Subgroup counts `j_r(A)` for `1 ≤ r ≤ rmax`.
///
/// Built-in families use their closed forms; explicit presentations are
/// counted by enumerating transitive actions on `r` points and dividing by
/// `(r-1)!` (an internal-consistency error if that division is not exact).
pub fn j_sequence(a: &GroupSpec, rmax: usize, budget: Budget) -> Result<JSequence> {
    let entries: Vec<JEntry> = match a {
        GroupSpec::Trivial => (1..=rmax)
            .map(|r| JEntry {
                value: u64::from(r == 1),
                provenance: Provenance::ClosedForm,
            })
            .collect(),
        GroupSpec::Cyclic(d) => (1..=rmax)
            .map(|r| JEntry {
                value: u64::from(*d as usize % r == 0),
                provenance: Provenance::ClosedForm,
            })
            .collect(),
        GroupSpec::PAdic(p) => (1..=rmax)
            .map(|r| {
                // j_r = 1 exactly when r is a power of p
                let mut x = r;
                while x % *p as usize == 0 {
                    x /= *p as usize;
                }
                JEntry {
                    value: u64::from(x == 1),
                    provenance: Provenance::ClosedForm,
                }
            })
            .collect(),
        GroupSpec::FreeAbelian(m) => free_abelian_j(*m, rmax)?
            .into_iter()
            .map(|value| JEntry {
                value,
                provenance: Provenance::ClosedForm,
            })
            .collect(),
        GroupSpec::Presentation(_) => {
            let mut entries = Vec::with_capacity(rmax);
            for r in 1..=rmax {
                let t = count_transitive_homs(a, r, budget)?;
                let fact = factorial(r.saturating_sub(1));
                let fact: u64 = (&fact)
                    .try_into()
                    .map_err(|_| Error::Overflow("j_sequence"))?;
                if t % fact != 0 {
                    return Err(Error::TransitiveCountNotDivisible { r, count: t });
                }
                entries.push(JEntry {
                    value: t / fact,
                    provenance: Provenance::Enumerated,
                });
            }
            entries
        }
    };
    if rmax >= 1 {
        debug_assert_eq!(entries[0].value, 1, "every group has exactly one index-1 subgroup");
    }
    Ok(JSequence {
        source: a.clone(),
        entries,
    })
}

/// Subgroup counts up to conjugacy, `u_d(A)` for `1 ≤ d ≤ dmax`.
///
/// Abelian built-ins have all subgroups normal, so `u_d = j_d`; explicit
/// presentations count orbits of simultaneous `S_d`-conjugation on the
/// transitive actions.
pub fn u_sequence(a: &GroupSpec, dmax: usize, budget: Budget) -> Result<BTreeMap<usize, u64>> {
    match a {
        GroupSpec::Trivial
        | GroupSpec::Cyclic(_)
        | GroupSpec::PAdic(_)
        | GroupSpec::FreeAbelian(_) => {
            let j = j_sequence(a, dmax, budget)?;
            Ok((1..=dmax).map(|d| (d, j.j(d))).collect())
        }
        GroupSpec::Presentation(p) => {
            let mut out = BTreeMap::new();
            for d in 1..=dmax {
                let target = FiniteGroup::symmetric(d);
                let mut transitive: Vec<Vec<usize>> = Vec::new();
                for_each_hom(p, &target, budget, |images| {
                    let perms: Vec<&super::perm::Permutation> =
                        images.iter().map(|&i| target.element(i)).collect();
                    if orbit_sizes(d, &perms).len() == 1 {
                        transitive.push(images.to_vec());
                    }
                })?;
                // orbit count under simultaneous conjugation
                let mut seen: HashSet<Vec<usize>> = HashSet::new();
                let mut orbits = 0u64;
                for hom in &transitive {
                    if seen.contains(hom) {
                        continue;
                    }
                    orbits += 1;
                    for s in 0..target.order() {
                        let conj: Vec<usize> = hom
                            .iter()
                            .map(|&g| target.mul(target.mul(s, g), target.inv(s)))
                            .collect();
                        seen.insert(conj);
                    }
                }
                out.insert(d, orbits);
            }
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn free_abelian_rank_one_is_all_ones() {
        let j = j_sequence(&GroupSpec::FreeAbelian(1), 8, b()).unwrap();
        for r in 1..=8 {
            assert_eq!(j.j(r), 1);
        }
    }

    #[test]
    fn free_abelian_rank_two_is_divisor_sum() {
        let j = j_sequence(&GroupSpec::FreeAbelian(2), 6, b()).unwrap();
        let want = [1, 3, 4, 7, 6, 12];
        for r in 1..=6 {
            assert_eq!(j.j(r), want[r - 1], "j_{r}");
        }
    }

    #[test]
    fn cyclic_counts_divisors() {
        let j = j_sequence(&GroupSpec::Cyclic(4), 4, b()).unwrap();
        assert_eq!(
            (1..=4).map(|r| j.j(r)).collect::<Vec<_>>(),
            vec![1, 1, 0, 1]
        );
    }

    #[test]
    fn padic_counts_prime_powers() {
        let j = j_sequence(&GroupSpec::PAdic(2), 9, b()).unwrap();
        let support: Vec<usize> = (1..=9).filter(|&r| j.j(r) == 1).collect();
        assert_eq!(support, vec![1, 2, 4, 8]);
        assert!((1..=9).all(|r| j.j(r) <= 1));
    }

    #[test]
    fn trivial_group() {
        let j = j_sequence(&GroupSpec::Trivial, 5, b()).unwrap();
        assert_eq!(j.j(1), 1);
        assert!((2..=5).all(|r| j.j(r) == 0));
    }

    #[test]
    fn transitive_counts_match_examples() {
        // Z on 3 points: the two 3-cycles
        assert_eq!(
            count_transitive_homs(&GroupSpec::FreeAbelian(1), 3, b()).unwrap(),
            2
        );
        // Z² on 2 points: pairs of commuting permutations acting
        // transitively on {1,2} — (e,t), (t,e), (t,t)
        assert_eq!(
            count_transitive_homs(&GroupSpec::FreeAbelian(2), 2, b()).unwrap(),
            3
        );
        // r = 1: a unique (empty) transitive action
        assert_eq!(
            count_transitive_homs(&GroupSpec::Cyclic(3), 1, b()).unwrap(),
            1
        );
    }

    #[test]
    fn presentation_j_matches_closed_forms() {
        // ⟨a,b | [a,b]⟩ ≅ Z², counted via transitive actions
        let z2: GroupSpec = "<a,b | [a,b]>".parse().unwrap();
        let j = j_sequence(&z2, 5, b()).unwrap();
        let closed = j_sequence(&GroupSpec::FreeAbelian(2), 5, b()).unwrap();
        for r in 1..=5 {
            assert_eq!(j.j(r), closed.j(r), "r={r}");
            assert_eq!(j.entries()[r - 1].provenance, Provenance::Enumerated);
        }
    }

    #[test]
    fn presentation_torsion_j() {
        // ⟨a | a^4⟩ ≅ Z/4
        let z4: GroupSpec = "<a | a^4>".parse().unwrap();
        let j = j_sequence(&z4, 4, b()).unwrap();
        assert_eq!(
            (1..=4).map(|r| j.j(r)).collect::<Vec<_>>(),
            vec![1, 1, 0, 1]
        );
    }

    #[test]
    fn free_group_rank_two_index_two() {
        // F_2 has three index-2 subgroups
        let f2: GroupSpec = "<a,b>".parse().unwrap();
        let j = j_sequence(&f2, 3, b()).unwrap();
        assert_eq!(j.j(2), 3);
        // and 7 + 6 = 13 of index 3
        assert_eq!(j.j(3), 13);
    }

    #[test]
    fn klein_four_presentation() {
        // ⟨a,b | a², b², (ab)²⟩ ≅ Z/2 × Z/2: subgroups of index 1,2,4
        let v: GroupSpec = "<a,b | a^2, b^2, (ab)^2>".parse().unwrap();
        let j = j_sequence(&v, 4, b()).unwrap();
        assert_eq!(
            (1..=4).map(|r| j.j(r)).collect::<Vec<_>>(),
            vec![1, 3, 0, 1]
        );
    }

    #[test]
    fn u_equals_j_for_abelian_families() {
        for spec in [GroupSpec::FreeAbelian(2), GroupSpec::Cyclic(6)] {
            let u = u_sequence(&spec, 6, b()).unwrap();
            let j = j_sequence(&spec, 6, b()).unwrap();
            for d in 1..=6 {
                assert_eq!(u[&d], j.j(d));
            }
        }
    }

    #[test]
    fn u_for_presented_infinite_cyclic() {
        // Z has exactly one subgroup of each index, all normal
        let z: GroupSpec = "<a>".parse().unwrap();
        let u = u_sequence(&z, 5, b()).unwrap();
        for d in 1..=5 {
            assert_eq!(u[&d], 1);
        }
    }

    #[test]
    fn conjugacy_counts_relate_to_direct_product_growth() {
        // j_k(A × Z) = Σ_{d|k} d·u_d(A), exercised with A = Z (so A×Z = Z²).
        let z: GroupSpec = "<a>".parse().unwrap();
        let u = u_sequence(&z, 6, b()).unwrap();
        let j2 = j_sequence(&GroupSpec::FreeAbelian(2), 6, b()).unwrap();
        for k in 1..=6usize {
            let sum: u64 = divisors(k).iter().map(|&d| d as u64 * u[&d]).sum();
            assert_eq!(sum, j2.j(k));
        }
    }

    #[test]
    fn rank_recursion_matches_product_formula() {
        // j(m; k) = Σ over m-tuples with j_1⋯j_m = k of j_1^{m-1}⋯j_{m-1}^1
        fn product_formula(m: u32, k: usize) -> u64 {
            fn rec(m: u32, k: usize, depth: u32) -> u64 {
                if depth == m {
                    return u64::from(k == 1);
                }
                let mut acc = 0u64;
                for d in divisors(k) {
                    let weight = (d as u64).pow(m - 1 - depth);
                    acc += weight * rec(m, k / d, depth + 1);
                }
                acc
            }
            rec(m, k, 0)
        }
        for m in 1..=4u32 {
            let j = free_abelian_j(m, 12).unwrap();
            for k in 1..=12usize {
                assert_eq!(j[k - 1], product_formula(m, k), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn padic_unsupported_for_enumeration() {
        assert!(matches!(
            count_transitive_homs(&GroupSpec::PAdic(2), 2, b()),
            Err(Error::UnsupportedGroup { .. })
        ));
    }
}
