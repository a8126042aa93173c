use gradal_core::arith::field::{rat_int, Field};
use gradal_core::arith::upoly;
use gradal_core::tate::{
    is_distinguished, reduce_presentation, schauder_basis, schauder_residue, strong_division, Divider, TatePresentation, TateRing, ValuedField,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn fields() -> Vec<Arc<ValuedField>> {
    vec![
        ValuedField::trivial(&Field::Rational, &[rat_int(2), rat_int(3)]).unwrap(),
        ValuedField::p_adic(3, &[]).unwrap(),
        ValuedField::laurent(&Field::prime(2).unwrap(), "t", &[]).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn gauss_norm_is_multiplicative(seed in any::<u64>(), which in 0usize..3) {
        let k = &fields()[which];
        let r = k.ambient().generator(0);
        let ring = TateRing::new(k, &["X", "Y"], vec![r, k.ambient().one()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g) = (ring.random_series(&mut rng, 5, 4), ring.random_series(&mut rng, 5, 4));
        prop_assert_eq!(ring.gauss_norm(&ring.mul(&f, &g)).unwrap(), ring.gauss_norm(&f).unwrap().mul(&ring.gauss_norm(&g).unwrap()));
    }

    #[test]
    fn division_certificates_hold(seed in any::<u64>()) {
        let k = ValuedField::p_adic(3, &[]).unwrap();
        let ring = TateRing::unit(&k, &["x", "y"]).unwrap();
        let gens = vec![ring.parse("x^2 - x").unwrap(), ring.parse("y - 3*x").unwrap()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = ring.random_series(&mut rng, 2, 2);
        for g in &gens {
            f = ring.add(&f, &ring.mul(&ring.random_series(&mut rng, 2, 2), g));
        }
        // f need not lie in the ideal; divide its part that does.
        let d = Divider::new(&ring, &gens).unwrap();
        if let Ok(div) = strong_division(&ring, &f, &gens, None) {
            prop_assert!(d.certify(&f, &div));
        }
    }

    /// A monic integral polynomial over Q3 with reduced reduction presents
    /// a distinguished algebra.
    #[test]
    fn reduced_reduction_is_distinguished(cs in prop::collection::vec(-9i64..=9, 1..4)) {
        let k = ValuedField::p_adic(3, &[]).unwrap();
        let ring = TateRing::unit(&k, &["T"]).unwrap();
        let n = cs.len();
        let mut s = format!("T^{n}");
        for (i, c) in cs.iter().enumerate() {
            s.push_str(&format!(" + ({c})*T^{i}"));
        }
        let p = TatePresentation::from_strs(&ring, &[s.as_str()]).unwrap();
        prop_assert_eq!(p.distinguished_flag(), None);
        let reduced = reduce_presentation(&p).unwrap().is_reduced().unwrap();
        let dist = is_distinguished(&p).unwrap();
        prop_assert_eq!(p.distinguished_flag(), Some(dist));
        if reduced {
            prop_assert!(dist, "{}", s);
        }
    }
}

#[test]
fn schauder_residues_are_distinct() {
    for k in [ValuedField::trivial(&Field::prime(2).unwrap(), &[rat_int(2)]).unwrap(), ValuedField::p_adic(3, &[]).unwrap()] {
        let basis = schauder_basis(&k, &k.ambient().one(), 3).unwrap();
        let kappa = k.residue_field().clone();
        let mut seen: Vec<(Vec<_>, Vec<_>)> = vec![];
        for e in &basis {
            let (n, d) = schauder_residue(&k, e).unwrap();
            let key = (upoly::monic(&kappa, &d), n);
            assert!(!seen.contains(&key), "{k}: repeated residue {}", e.display(k.field()));
            seen.push(key);
        }
    }
}

#[test]
fn random_elements_have_spread_norms() {
    let k = ValuedField::p_adic(2, &[]).unwrap();
    let ring = TateRing::unit(&k, &["T"]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut norms = std::collections::BTreeSet::new();
    for _ in 0..50 {
        let n: u32 = rng.gen_range(1..4);
        norms.insert(ring.gauss_norm(&ring.random_series(&mut rng, n as usize, 2)).unwrap());
    }
    assert!(norms.len() > 2);
}
