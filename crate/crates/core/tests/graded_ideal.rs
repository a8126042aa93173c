use gradal_core::arith::field::{rat, Field};
use gradal_core::corpoid::{Corpoid, GradedPolyRing};
use gradal_core::degree::MultRealGroup;
use gradal_core::graded_ideal::GradedIdeal;
use gradal_core::poly::ideal::Ideal;
use proptest::prelude::*;
use std::sync::Arc;

/// `F_3[t, 1/t]` with `|t| = 1/2`, variables of radius 1 and 1/2.
fn ring() -> Arc<GradedPolyRing> {
    let d = MultRealGroup::from_ints(&[2]).unwrap();
    let half = d.generator(0).pow_rat(&rat(-1, 1));
    let k = Corpoid::split(&Field::Prime(3), &d, &[half.clone()], None).unwrap();
    GradedPolyRing::new(&k, vec!["X".into(), "Y".into()], vec![d.one(), half]).unwrap()
}

const FACTORS: [&str; 6] = ["X", "X - 1", "X + 1", "X^2 + 1", "Y - t*X", "Y"];

/// Products of a few factors, with repeats, so that some ideals are not
/// radical.
fn ideal() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec(prop::collection::vec(0..FACTORS.len(), 1..4), 1..3)
        .prop_map(|gs| gs.iter().map(|g| g.iter().map(|&i| format!("({})", FACTORS[i])).collect::<Vec<_>>().join("*")).collect())
}

fn build(gens: &[String]) -> GradedIdeal {
    let strs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
    GradedIdeal::from_strs(&ring(), &strs).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn radical_is_idempotent_and_contains(gens in ideal()) {
        let i = build(&gens);
        let r = i.radical().unwrap();
        prop_assert!(i.is_subset_of(&r));
        prop_assert!(r.radical().unwrap().equals(&r));
        prop_assert!(r.is_reduced().unwrap());
    }

    #[test]
    fn minimal_primes_cut_out_the_radical(gens in ideal()) {
        let i = build(&gens);
        let r = i.radical().unwrap();
        let ps = i.minimal_primes().unwrap();
        let generic: Vec<Ideal> = ps.iter().map(|p| p.generic().clone()).collect();
        match Ideal::intersect_all(&generic) {
            Some(meet) => prop_assert!(meet.equals(r.generic())),
            None => prop_assert!(i.is_unit()),
        }
        for p in &ps {
            prop_assert!(p.is_prime().unwrap());
        }
    }

    #[test]
    fn reduced_means_geometrically_reduced_over_f3(gens in ideal()) {
        let i = build(&gens);
        prop_assert_eq!(i.is_reduced().unwrap(), i.is_geometrically_reduced().unwrap());
    }

    #[test]
    fn component_idempotents_are_orthogonal(gens in ideal()) {
        let i = build(&gens);
        if i.is_unit() {
            return Ok(());
        }
        let r = i.ring();
        let cs = i.connected_components().unwrap();
        let mut sum = r.zero(r.corpoid.ambient().one());
        for (a, c) in cs.iter().enumerate() {
            for d in &cs[a + 1..] {
                prop_assert!(i.contains(&r.mul(&c.idempotent, &d.idempotent)));
            }
            sum = r.add(&sum, &c.idempotent).unwrap();
        }
        prop_assert!(i.contains(&r.sub(&sum, &r.one()).unwrap()));
    }

    #[test]
    fn dimension_survives_translation(gens in ideal()) {
        let i = build(&gens);
        let again = GradedIdeal::from_generic(i.ring(), i.generic()).unwrap();
        prop_assert_eq!(again.dimension(), i.dimension());
        prop_assert!(again.equals(&i));
    }
}

#[test]
fn non_reduced_example() {
    let i = build(&["X^2".into()]);
    assert!(!i.is_reduced().unwrap());
    assert_eq!(i.minimal_primes().unwrap().len(), 1);
}
