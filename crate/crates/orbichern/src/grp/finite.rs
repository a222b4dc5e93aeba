use std::collections::HashMap;
use std::sync::OnceLock;

use super::homsearch::MulTable;
use super::perm::Permutation;
use crate::{Error, Result};

/// Elements beyond this count abort group closure.
pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// Build the full index-based multiplication table only while it stays this
/// small (entries = order²); larger groups multiply on demand.
const FULL_TABLE_LIMIT: usize = 4_000_000;

/// A finite permutation group, fully enumerated.
///
/// Elements are sorted by image vector, which puts the identity at index 0
/// and makes every derived enumeration deterministic. The index-based
/// multiplication table is built lazily on first use (and only for groups
/// where it stays small); inverses likewise.
#[derive(Debug)]
pub struct FiniteGroup {
    label: String,
    degree: usize,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    generators: Vec<usize>,
    table: OnceLock<Option<Vec<u32>>>,
    inverses: OnceLock<Vec<u32>>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        // Lazy caches restart empty; they are pure functions of the elements.
        FiniteGroup {
            label: self.label.clone(),
            degree: self.degree,
            elements: self.elements.clone(),
            index: self.index.clone(),
            generators: self.generators.clone(),
            table: OnceLock::new(),
            inverses: OnceLock::new(),
        }
    }
}

impl FiniteGroup {
    /// Closes `gens` under composition (breadth-first), then sorts. Errors
    /// if the generators have mixed degrees or the closure exceeds `cap`.
    pub fn close_group(gens: &[Permutation], cap: usize) -> Result<Self> {
        let degree = match gens.first() {
            Some(g) => g.degree(),
            None => return Ok(Self::trivial(1)),
        };
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut elements = vec![Permutation::identity(degree)];
        let mut seen: HashMap<Permutation, ()> = elements.iter().cloned().map(|p| (p, ())).collect();
        let mut frontier = 0;
        while frontier < elements.len() {
            let cur = elements[frontier].clone();
            frontier += 1;
            for g in gens {
                let next = g.compose(&cur);
                if !seen.contains_key(&next) {
                    if elements.len() >= cap {
                        return Err(Error::GroupCapExceeded { cap });
                    }
                    seen.insert(next.clone(), ());
                    elements.push(next);
                }
            }
        }
        Self::from_sorted(String::new(), degree, elements, gens)
    }

    /// The symmetric group on `n` points, all `n!` elements enumerated
    /// directly in lexicographic order.
    pub fn symmetric(n: usize) -> Self {
        let mut elements = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            elements.push(Permutation::from_images(cur.clone()).unwrap());
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        let gens: Vec<Permutation> = if n >= 2 {
            vec![
                Permutation::parse("(1 2)", Some(n)).unwrap(),
                Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap(),
            ]
        } else {
            Vec::new()
        };
        Self::from_sorted(format!("S_{n}"), n, elements, &gens).unwrap()
    }

    /// The cyclic group of order `d` acting by rotation on `d` points
    /// (`d = 1` gives the trivial group on one point).
    pub fn cyclic(d: usize) -> Self {
        assert!(d >= 1);
        let gen = Permutation::from_images((0..d).map(|i| (i + 1) % d).collect()).unwrap();
        let mut g = Self::close_group(&[gen], d + 1).unwrap();
        g.label = format!("Z/{d}");
        g
    }

    /// The one-element group acting on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        let elements = vec![Permutation::identity(degree)];
        Self::from_sorted("1".into(), degree, elements, &[]).unwrap()
    }

    /// Builds a group from an explicit element list, validating closure
    /// under composition and inverses. Used for stabilizers and other
    /// subgroups selected element-wise.
    pub fn from_elements(label: &str, elements: Vec<Permutation>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Invalid("empty element list".into()));
        }
        let degree = elements[0].degree();
        for e in &elements {
            if e.degree() != degree {
                return Err(Error::DegreeMismatch(degree, e.degree()));
            }
        }
        let g = Self::from_sorted(label.into(), degree, elements, &[])?;
        for a in &g.elements {
            if !g.index.contains_key(&a.inverse()) {
                return Err(Error::Invalid(format!("set not closed under inverse at {a}")));
            }
            for b in &g.elements {
                if !g.index.contains_key(&a.compose(b)) {
                    return Err(Error::Invalid(format!(
                        "set not closed under composition at {a}·{b}"
                    )));
                }
            }
        }
        Ok(g)
    }

    fn from_sorted(
        label: String,
        degree: usize,
        mut elements: Vec<Permutation>,
        gens: &[Permutation],
    ) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let index: HashMap<Permutation, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        if !elements[0].is_identity() {
            return Err(Error::Invalid("identity missing from element set".into()));
        }
        let generators = gens
            .iter()
            .map(|g| {
                index
                    .get(g)
                    .copied()
                    .ok_or_else(|| Error::Invalid(format!("generator {g} not in closure")))
            })
            .collect::<Result<Vec<_>>>()?;
        let label = if label.is_empty() {
            format!("grp{}", elements.len())
        } else {
            label
        };
        Ok(FiniteGroup {
            label,
            degree,
            elements,
            index,
            generators,
            table: OnceLock::new(),
            inverses: OnceLock::new(),
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: &str) {
        self.label = label.into();
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity_index(&self) -> usize {
        0 // sorted image vectors put the identity first
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    fn full_table(&self) -> Option<&Vec<u32>> {
        self.table
            .get_or_init(|| {
                let n = self.order();
                if n.checked_mul(n)? > FULL_TABLE_LIMIT {
                    return None;
                }
                let mut t = vec![0u32; n * n];
                for i in 0..n {
                    for j in 0..n {
                        let p = self.elements[i].compose(&self.elements[j]);
                        t[i * n + j] = self.index[&p] as u32;
                    }
                }
                Some(t)
            })
            .as_ref()
    }

    /// Index of `elements[i] ∘ elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        match self.full_table() {
            Some(t) => t[i * self.order() + j] as usize,
            None => self.index[&self.elements[i].compose(&self.elements[j])],
        }
    }

    pub fn inv(&self, i: usize) -> usize {
        let invs = self.inverses.get_or_init(|| {
            self.elements
                .iter()
                .map(|p| self.index[&p.inverse()] as u32)
                .collect()
        });
        invs[i] as usize
    }

    /// Number of conjugacy classes, by direct orbit partition under
    /// conjugation.
    pub fn conjugacy_class_count(&self) -> usize {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = 0;
        for i in 0..n {
            if seen[i] {
                continue;
            }
            classes += 1;
            for s in 0..n {
                let c = self.mul(self.mul(s, i), self.inv(s));
                seen[c] = true;
            }
        }
        classes
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (i..n).all(|j| self.mul(i, j) == self.mul(j, i)))
    }
}

impl MulTable for FiniteGroup {
    fn order(&self) -> usize {
        self.order()
    }
    fn identity(&self) -> usize {
        self.identity_index()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.mul(a, b)
    }
    fn inv(&self, a: usize) -> usize {
        self.inv(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn close_transposition() {
        let g = FiniteGroup::close_group(&[Permutation::parse("(1 2)", None).unwrap()], 10)
            .unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.identity_index(), 0);
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn close_s3() {
        let gens = [
            Permutation::parse("(1 2)", Some(3)).unwrap(),
            Permutation::parse("(1 2 3)", Some(3)).unwrap(),
        ];
        let g = FiniteGroup::close_group(&gens, 100).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.conjugacy_class_count(), 3);
        assert!(!g.is_abelian());
    }

    #[test]
    fn close_dihedral_eight() {
        let gens = [
            Permutation::parse("(1 2 3 4)", None).unwrap(),
            Permutation::parse("(1 3)", Some(4)).unwrap(),
        ];
        let g = FiniteGroup::close_group(&gens, 100).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.conjugacy_class_count(), 5);
    }

    #[test]
    fn cap_is_enforced() {
        let gens = [
            Permutation::parse("(1 2)", Some(5)).unwrap(),
            Permutation::parse("(1 2 3 4 5)", None).unwrap(),
        ];
        assert!(matches!(
            FiniteGroup::close_group(&gens, 50),
            Err(Error::GroupCapExceeded { cap: 50 })
        ));
    }

    #[test]
    fn mixed_degrees_rejected() {
        let gens = [
            Permutation::parse("(1 2)", Some(2)).unwrap(),
            Permutation::parse("(1 2 3)", Some(3)).unwrap(),
        ];
        assert!(matches!(
            FiniteGroup::close_group(&gens, 50),
            Err(Error::DegreeMismatch(2, 3))
        ));
    }

    #[test]
    fn symmetric_enumeration_matches_closure() {
        for n in 0..=5 {
            let direct = FiniteGroup::symmetric(n);
            assert_eq!(direct.order(), (1..=n).product::<usize>().max(1));
            if n >= 2 {
                let gens: Vec<Permutation> = direct
                    .generator_indices()
                    .iter()
                    .map(|&i| direct.element(i).clone())
                    .collect();
                let closed = FiniteGroup::close_group(&gens, 1000).unwrap();
                assert_eq!(closed.elements(), direct.elements());
            }
        }
    }

    #[test]
    fn mul_and_inv_agree_with_composition() {
        let g = FiniteGroup::symmetric(4);
        for i in (0..g.order()).step_by(5) {
            assert_eq!(g.mul(i, g.inv(i)), g.identity_index());
            for j in (0..g.order()).step_by(7) {
                let direct = g.element(i).compose(g.element(j));
                assert_eq!(g.element(g.mul(i, j)), &direct);
            }
        }
    }

    #[test]
    fn cyclic_and_trivial() {
        let c4 = FiniteGroup::cyclic(4);
        assert_eq!(c4.order(), 4);
        assert!(c4.is_abelian());
        assert_eq!(c4.conjugacy_class_count(), 4);
        assert_eq!(FiniteGroup::trivial(3).order(), 1);
        assert_eq!(FiniteGroup::cyclic(1).order(), 1);
    }

    #[test]
    fn from_elements_validates_closure() {
        let s3 = FiniteGroup::symmetric(3);
        // {e, (1 2)} is closed
        let sub = FiniteGroup::from_elements(
            "sub",
            vec![
                Permutation::identity(3),
                Permutation::parse("(1 2)", Some(3)).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(sub.order(), 2);
        // {e, (1 2 3)} is not
        assert!(FiniteGroup::from_elements(
            "bad",
            vec![
                Permutation::identity(3),
                Permutation::parse("(1 2 3)", Some(3)).unwrap(),
            ],
        )
        .is_err());
        assert_eq!(s3.order(), 6);
    }
}
