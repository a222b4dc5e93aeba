use std::collections::HashMap;
use std::sync::OnceLock;

use super::finite::FiniteGroup;
use super::homsearch::MulTable;
use super::perm::Permutation;
use crate::{Error, Result};

const FULL_TABLE_LIMIT: usize = 4_000_000;

/// Element `(ḡ, σ)` of the wreath product `G ≀ S_n`: an n-tuple of base
/// group elements (by index into `G`) and a permutation of the n slots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WreathElement {
    pub gbar: Vec<usize>,
    pub sigma: Permutation,
}

pub fn wreath_identity(g: &FiniteGroup, n: usize) -> WreathElement {
    WreathElement {
        gbar: vec![g.identity_index(); n],
        sigma: Permutation::identity(n),
    }
}

/// `(h̄, σ)(ḡ, τ) = (h̄ · σ(ḡ), στ)` where `σ(ḡ)_i = g_{σ⁻¹(i)}` — the slot
/// permutation acts before its tuple is multiplied in slotwise.
pub fn wreath_mul(
    x: &WreathElement,
    y: &WreathElement,
    g: &FiniteGroup,
) -> Result<WreathElement> {
    let n = x.gbar.len();
    if y.gbar.len() != n || x.sigma.degree() != n || y.sigma.degree() != n {
        return Err(Error::SizeMismatch(n, y.gbar.len()));
    }
    let sigma_inv = x.sigma.inverse();
    let gbar = (0..n)
        .map(|i| g.mul(x.gbar[i], y.gbar[sigma_inv.apply(i)]))
        .collect();
    Ok(WreathElement {
        gbar,
        sigma: x.sigma.compose(&y.sigma),
    })
}

/// `(ḡ, σ)⁻¹ = (h̄, σ⁻¹)` with `h_j = g_{σ(j)}⁻¹`.
pub fn wreath_inv(x: &WreathElement, g: &FiniteGroup) -> WreathElement {
    let n = x.gbar.len();
    let gbar = (0..n).map(|j| g.inv(x.gbar[x.sigma.apply(j)])).collect();
    WreathElement {
        gbar,
        sigma: x.sigma.inverse(),
    }
}

/// `G ≀ S_n` with every element materialized, as an enumeration target for
/// homomorphism searches. Elements are ordered tuple-lexicographically
/// (base indices, then slot permutation), identity first.
#[derive(Debug)]
pub struct WreathGroup {
    base: FiniteGroup,
    n: usize,
    elements: Vec<WreathElement>,
    index: HashMap<WreathElement, usize>,
    table: OnceLock<Option<Vec<u32>>>,
    inverses: OnceLock<Vec<u32>>,
}

impl WreathGroup {
    /// Errors if `|G|^n · n!` exceeds `cap`.
    pub fn new(base: &FiniteGroup, n: usize, cap: usize) -> Result<Self> {
        let mut order: u128 = 1;
        for _ in 0..n {
            order = order.saturating_mul(base.order() as u128);
        }
        for k in 1..=n {
            order = order.saturating_mul(k as u128);
        }
        if order > cap as u128 {
            return Err(Error::GroupCapExceeded { cap });
        }
        let sym = FiniteGroup::symmetric(n);
        let mut elements = Vec::with_capacity(order as usize);
        let mut gbar = vec![0usize; n];
        loop {
            for s in sym.elements() {
                elements.push(WreathElement {
                    gbar: gbar.clone(),
                    sigma: s.clone(),
                });
            }
            // increment the mixed-radix tuple; most significant digit first
            // so the ordering is lexicographic
            let mut pos = n;
            while pos > 0 {
                pos -= 1;
                gbar[pos] += 1;
                if gbar[pos] < base.order() {
                    break;
                }
                gbar[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX || n == 0 {
                break;
            }
        }
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(WreathGroup {
            base: base.clone(),
            n,
            elements,
            index,
            table: OnceLock::new(),
            inverses: OnceLock::new(),
        })
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn slots(&self) -> usize {
        self.n
    }

    pub fn element(&self, i: usize) -> &WreathElement {
        &self.elements[i]
    }

    pub fn index_of(&self, e: &WreathElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn label(&self) -> String {
        format!("{} wr S_{}", self.base.label(), self.n)
    }

    fn mul_direct(&self, a: usize, b: usize) -> usize {
        let p = wreath_mul(&self.elements[a], &self.elements[b], &self.base).unwrap();
        self.index[&p]
    }

    fn full_table(&self) -> Option<&Vec<u32>> {
        self.table
            .get_or_init(|| {
                let n = self.elements.len();
                if n.checked_mul(n)? > FULL_TABLE_LIMIT {
                    return None;
                }
                let mut t = vec![0u32; n * n];
                for i in 0..n {
                    for j in 0..n {
                        t[i * n + j] = self.mul_direct(i, j) as u32;
                    }
                }
                Some(t)
            })
            .as_ref()
    }
}

impl MulTable for WreathGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }

    fn identity(&self) -> usize {
        self.index[&wreath_identity(&self.base, self.n)]
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        match self.full_table() {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.mul_direct(a, b),
        }
    }

    fn inv(&self, a: usize) -> usize {
        let invs = self.inverses.get_or_init(|| {
            self.elements
                .iter()
                .map(|e| self.index[&wreath_inv(e, &self.base)] as u32)
                .collect()
        });
        invs[a] as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FiniteGroup {
        FiniteGroup::cyclic(2)
    }

    #[test]
    fn multiplication_follows_slot_twist() {
        // ((a,e), id) · ((e,e), (1 2)) = ((a,e), (1 2))
        let g = z2();
        let a = 1usize; // the nonidentity element of Z/2
        let x = WreathElement {
            gbar: vec![a, 0],
            sigma: Permutation::identity(2),
        };
        let y = WreathElement {
            gbar: vec![0, 0],
            sigma: Permutation::parse("(1 2)", Some(2)).unwrap(),
        };
        let xy = wreath_mul(&x, &y, &g).unwrap();
        assert_eq!(xy.gbar, vec![a, 0]);
        assert_eq!(xy.sigma, Permutation::parse("(1 2)", Some(2)).unwrap());

        // ((e,e),(1 2)) · ((a,e), id) = ((e,a), (1 2)): the twist moves the
        // incoming tuple before slotwise multiplication
        let yx = wreath_mul(&y, &x, &g).unwrap();
        assert_eq!(yx.gbar, vec![0, a]);
    }

    #[test]
    fn identity_and_inverse_laws() {
        let g = z2();
        let w = WreathGroup::new(&g, 2, 1000).unwrap();
        assert_eq!(MulTable::order(&w), 8);
        let e = w.identity();
        for i in 0..MulTable::order(&w) {
            assert_eq!(w.mul(e, i), i);
            assert_eq!(w.mul(i, e), i);
            assert_eq!(w.mul(i, w.inv(i)), e);
            assert_eq!(w.mul(w.inv(i), i), e);
        }
    }

    #[test]
    fn associativity_sampled_in_s3_wreath_s3() {
        let g = FiniteGroup::symmetric(3);
        let w = WreathGroup::new(&g, 3, 10_000).unwrap();
        let n = MulTable::order(&w);
        assert_eq!(n, 6usize.pow(3) * 6);
        // deterministic stride sample of ~100 triples
        let mut checked = 0;
        let mut x = 7usize;
        while checked < 100 {
            let a = x % n;
            let b = (x / 3) % n;
            let c = (x / 7) % n;
            assert_eq!(w.mul(w.mul(a, b), c), w.mul(a, w.mul(b, c)));
            x = x.wrapping_mul(2654435761).wrapping_add(13);
            checked += 1;
        }
    }

    #[test]
    fn cap_enforced() {
        let g = FiniteGroup::symmetric(3);
        assert!(matches!(
            WreathGroup::new(&g, 5, 1000),
            Err(Error::GroupCapExceeded { .. })
        ));
    }

    #[test]
    fn zero_slots_is_trivial() {
        let g = z2();
        let w = WreathGroup::new(&g, 0, 10).unwrap();
        assert_eq!(MulTable::order(&w), 1);
        assert_eq!(w.identity(), 0);
    }
}
