//! Property tests for the algebraic invariants: sesquilinearity of the
//! pairing, distributivity and isometry of multiplication, grading
//! additivity, transference isometry, and parser round trips.

use hartogs_core::element::{HElement, MultiplierPoly, Space};
use hartogs_core::index::MonomialIndex;
use hartogs_core::parse::parse_element;
use hartogs_core::scalar::{GaussianRational, Rat};
use hartogs_core::transference::{psi, psi_inverse};
use proptest::prelude::*;

fn rat_strategy() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=5).prop_map(|(p, q)| Rat::new(p.into(), q.into()))
}

fn scalar_strategy() -> impl Strategy<Value = GaussianRational> {
    (rat_strategy(), rat_strategy()).prop_map(|(re, im)| GaussianRational::new(re, im))
}

fn hartogs_index_strategy() -> impl Strategy<Value = MonomialIndex> {
    (0i64..=7, 0i64..=14).prop_map(|(z, offset)| {
        // w >= -z - 1 keeps the index inside the Hartogs set
        MonomialIndex::new(z, offset - z - 1)
    })
}

fn quadrant_index_strategy() -> impl Strategy<Value = MonomialIndex> {
    (0i64..=6, 0i64..=6).prop_map(|(z, w)| MonomialIndex::new(z, w))
}

fn element_strategy() -> impl Strategy<Value = HElement> {
    prop::collection::vec((hartogs_index_strategy(), scalar_strategy()), 0..6)
        .prop_map(|terms| HElement::from_terms(Space::Hartogs, terms).unwrap())
}

fn poly_strategy() -> impl Strategy<Value = MultiplierPoly> {
    prop::collection::vec((quadrant_index_strategy(), scalar_strategy()), 0..5)
        .prop_map(|terms| MultiplierPoly::from_terms(terms).unwrap())
}

proptest! {
    #[test]
    fn pairing_is_sesquilinear(
        u in element_strategy(),
        v in element_strategy(),
        w in element_strategy(),
        c in scalar_strategy(),
    ) {
        // linear in the first argument
        let lhs = u.add(&v).unwrap().inner(&w).unwrap();
        let rhs = &u.inner(&w).unwrap() + &v.inner(&w).unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs = u.scaled(&c).inner(&w).unwrap();
        let rhs = &c * &u.inner(&w).unwrap();
        prop_assert_eq!(lhs, rhs);
        // conjugate-linear in the second
        let lhs = u.inner(&w.scaled(&c)).unwrap();
        let rhs = &c.conj() * &u.inner(&w).unwrap();
        prop_assert_eq!(lhs, rhs);
        // conjugate symmetry and positivity
        prop_assert_eq!(u.inner(&v).unwrap().conj(), v.inner(&u).unwrap());
        let self_pairing = u.inner(&u).unwrap();
        prop_assert!(self_pairing.is_real());
        prop_assert_eq!(self_pairing.re.clone(), u.norm_sqr());
        prop_assert_eq!(self_pairing.re >= Rat::default(), true);
        prop_assert_eq!(self_pairing.re == Rat::default(), u.is_zero());
    }

    #[test]
    fn multiplication_distributes_and_one_is_identity(
        p in poly_strategy(),
        u in element_strategy(),
        v in element_strategy(),
    ) {
        let lhs = p.multiply(&u.add(&v).unwrap());
        let rhs = p.multiply(&u).add(&p.multiply(&v)).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(MultiplierPoly::one().multiply(&u), u);
    }

    #[test]
    fn monomial_multiplication_is_an_isometry(
        idx in quadrant_index_strategy(),
        c in scalar_strategy(),
        v in element_strategy(),
    ) {
        prop_assume!(c.is_unimodular() || c == GaussianRational::one() || !c.is_zero());
        let p = MultiplierPoly::monomial(idx, GaussianRational::one()).unwrap();
        prop_assert_eq!(p.multiply(&v).norm_sqr(), v.norm_sqr());
    }

    #[test]
    fn grading_is_additive_up_to_the_constant(
        a in hartogs_index_strategy(),
        b in hartogs_index_strategy(),
    ) {
        let sum = a.shifted(b);
        prop_assert_eq!(sum.grading(), a.grading() + b.grading() - 1);
    }

    #[test]
    fn level_parts_partition(v in element_strategy()) {
        let mut rebuilt = HElement::zero(Space::Hartogs);
        for (level, part) in v.level_parts() {
            for (idx, _) in part.terms() {
                prop_assert_eq!(idx.grading(), level as i64);
            }
            rebuilt = rebuilt.add(&part).unwrap();
        }
        prop_assert_eq!(rebuilt, v);
    }

    #[test]
    fn transference_is_an_exact_isometry(
        u in element_strategy(),
        v in element_strategy(),
    ) {
        let pu = psi(&u).unwrap();
        let pv = psi(&v).unwrap();
        prop_assert_eq!(u.inner(&v).unwrap(), pu.inner(&pv).unwrap());
        prop_assert_eq!(psi_inverse(&pu).unwrap(), u);
    }

    #[test]
    fn canonical_text_round_trips(v in element_strategy()) {
        let text = v.to_string();
        let reparsed = parse_element(&text, Space::Hartogs).unwrap();
        prop_assert_eq!(reparsed.clone(), v);
        // canonical form is a fixed point of the round trip
        prop_assert_eq!(reparsed.to_string(), text);
    }
}
