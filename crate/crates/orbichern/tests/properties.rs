//! Property suites for the algebraic invariants: series exp/log inversion
//! and power laws, ⊙-ring laws and grading, degree specialization as a ring
//! homomorphism, permutation and wreath group laws, and the subgroup-count
//! recursion against raw enumeration.

use proptest::prelude::*;

use orbichern::diagalg::{BaseClass, DiagElement, DiagMonomial};
use orbichern::grp::{
    count_transitive_homs, free_abelian_j, wreath_inv, wreath_mul, Budget, FiniteGroup, GroupSpec,
    Permutation, WreathElement,
};
use orbichern::qexact::{factorial, Rat, Series};

const TRUNC: usize = 5;

fn rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rat::frac(n, d))
}

fn series_with_constant(c0: Rat) -> impl Strategy<Value = Series> {
    proptest::collection::vec(rat(), TRUNC).prop_map(move |tail| {
        let mut coeffs = vec![c0.clone()];
        coeffs.extend(tail);
        Series::from_coeffs(TRUNC, coeffs).unwrap()
    })
}

fn series() -> impl Strategy<Value = Series> {
    rat().prop_flat_map(series_with_constant)
}

fn base_class() -> impl Strategy<Value = BaseClass> {
    prop_oneof![Just("a"), Just("b")].prop_map(|name| BaseClass::new(name).unwrap())
}

fn monomial() -> impl Strategy<Value = DiagMonomial> {
    proptest::collection::vec((1usize..=3, base_class(), 1u32..=2), 0..=2).prop_map(|factors| {
        DiagMonomial::from_factors(factors).unwrap()
    })
}

/// Elements of bounded weight with a handful of terms; weights beyond
/// TRUNC are dropped by the constructor-side filter.
fn element() -> impl Strategy<Value = DiagElement> {
    proptest::collection::vec((monomial(), rat()), 1..=4).prop_map(|terms| {
        DiagElement::from_terms(
            TRUNC,
            terms.into_iter().filter(|(m, _)| m.weight() <= TRUNC),
        )
        .unwrap()
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    proptest::collection::vec(0usize..1000, n).prop_map(move |keys| {
        let mut images: Vec<usize> = (0..n).collect();
        // deterministic shuffle driven by the random keys
        images.sort_by_key(|&i| (keys[i], i));
        Permutation::from_images(images).unwrap()
    })
}

fn wreath_element(order: usize, n: usize) -> impl Strategy<Value = WreathElement> {
    (proptest::collection::vec(0..order, n), permutation(n))
        .prop_map(|(gbar, sigma)| WreathElement { gbar, sigma })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // --- truncated series over Q ---------------------------------------

    #[test]
    fn series_log_inverts_exp(s in series_with_constant(Rat::zero())) {
        let roundtrip = s.exp().unwrap().log().unwrap();
        prop_assert_eq!(roundtrip, s);
    }

    #[test]
    fn series_exp_inverts_log(s in series_with_constant(Rat::one())) {
        let roundtrip = s.log().unwrap().exp().unwrap();
        prop_assert_eq!(roundtrip, s);
    }

    #[test]
    fn series_power_law_is_additive(
        s in series_with_constant(Rat::one()),
        p in rat(),
        q in rat(),
    ) {
        let sum = s.pow_rat(&(&p + &q)).unwrap();
        let split = s.pow_rat(&p).unwrap().mul(&s.pow_rat(&q).unwrap()).unwrap();
        prop_assert_eq!(sum, split);
    }

    #[test]
    fn series_multiplication_laws(a in series(), b in series(), c in series()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn series_truncation_mismatch_is_an_error(a in series()) {
        let other = Series::one(TRUNC + 1);
        prop_assert!(a.mul(&other).is_err());
        prop_assert!(a.add(&other).is_err());
    }

    // --- the ⊙-algebra of diagonal operators ----------------------------

    #[test]
    fn odot_is_commutative_and_associative(u in element(), v in element(), w in element()) {
        prop_assert_eq!(u.odot(&v).unwrap(), v.odot(&u).unwrap());
        prop_assert_eq!(
            u.odot(&v).unwrap().odot(&w).unwrap(),
            u.odot(&v.odot(&w).unwrap()).unwrap()
        );
    }

    #[test]
    fn odot_distributes_over_addition(u in element(), v in element(), w in element()) {
        let lhs = u.odot(&v.add(&w).unwrap()).unwrap();
        let rhs = u.odot(&v).unwrap().add(&u.odot(&w).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn odot_grading_is_additive(u in element(), v in element()) {
        // the weight-n slice of u⊙v collects exactly the products of
        // complementary slices
        let product = u.odot(&v).unwrap();
        for n in 0..=TRUNC {
            let mut assembled = DiagElement::zero(TRUNC);
            for i in 0..=n {
                let part = u.weight_slice(i).odot(&v.weight_slice(n - i)).unwrap();
                assembled = assembled.add(&part).unwrap();
            }
            prop_assert_eq!(product.weight_slice(n), assembled);
        }
    }

    #[test]
    fn element_log_inverts_exp(e in element()) {
        // zero the constant term, then exp/log round-trips
        let unit_free = e.sub(&e.weight_slice(0)).unwrap();
        let roundtrip = unit_free.exp().unwrap().log().unwrap();
        prop_assert_eq!(roundtrip, unit_free);
    }

    #[test]
    fn degree_specialization_is_a_ring_homomorphism(
        u in element(),
        v in element(),
        x in rat(),
        y in rat(),
    ) {
        let values: std::collections::BTreeMap<BaseClass, Rat> = [
            (BaseClass::new("a").unwrap(), x),
            (BaseClass::new("b").unwrap(), y),
        ]
        .into();
        let sum = u.add(&v).unwrap().degree_specialize(&values).unwrap();
        let sum_split = u
            .degree_specialize(&values)
            .unwrap()
            .add(&v.degree_specialize(&values).unwrap())
            .unwrap();
        prop_assert_eq!(sum, sum_split);
        let prod = u.odot(&v).unwrap().degree_specialize(&values).unwrap();
        let prod_split = u
            .degree_specialize(&values)
            .unwrap()
            .mul(&v.degree_specialize(&values).unwrap())
            .unwrap();
        prop_assert_eq!(prod, prod_split);
    }

    // --- permutations and wreath products -------------------------------

    #[test]
    fn permutation_group_laws(p in permutation(5), q in permutation(5), r in permutation(5)) {
        prop_assert_eq!(
            p.compose(&q).compose(&r),
            p.compose(&q.compose(&r))
        );
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn wreath_group_laws(
        x in wreath_element(3, 3),
        y in wreath_element(3, 3),
        z in wreath_element(3, 3),
    ) {
        let g = FiniteGroup::cyclic(3);
        let xy = wreath_mul(&x, &y, &g).unwrap();
        prop_assert_eq!(
            wreath_mul(&xy, &z, &g).unwrap(),
            wreath_mul(&x, &wreath_mul(&y, &z, &g).unwrap(), &g).unwrap()
        );
        let e = wreath_mul(&x, &wreath_inv(&x, &g), &g).unwrap();
        prop_assert!(e.sigma.is_identity());
        prop_assert!(e.gbar.iter().all(|&gi| gi == 0));
    }

    // --- subgroup growth -------------------------------------------------

    #[test]
    fn free_abelian_recursion_steps_down(m in 1u32..=4, k in 1usize..=12) {
        // j(m; k) = Σ_{d|k} d·j(m−1; d)
        let upper = free_abelian_j(m, k).unwrap();
        let lower = free_abelian_j(m - 1, k).unwrap();
        let folded: u64 = (1..=k).filter(|d| k % d == 0).map(|d| d as u64 * lower[d - 1]).sum();
        prop_assert_eq!(upper[k - 1], folded);
    }
}

/// The recursion against raw transitive-representation counts:
/// `j_r(A) = |transitive homs A → S_r| / (r−1)!`.
#[test]
fn subgroup_counts_match_enumeration() {
    for (m, rmax) in [(1u32, 6usize), (2, 6), (3, 5)] {
        let j = free_abelian_j(m, rmax).unwrap();
        for r in 1..=rmax {
            let transitive =
                count_transitive_homs(&GroupSpec::FreeAbelian(m), r, Budget::default()).unwrap();
            let normalized = Rat::from(transitive) / Rat::from_biguint(&factorial(r - 1));
            assert_eq!(
                normalized,
                Rat::from(j[r - 1]),
                "j({m}; {r}) disagrees with enumeration"
            );
        }
    }
}
