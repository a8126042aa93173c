use gradal_core::arith::field::{rat, Rat};
use gradal_core::degree::{integer_coords, order_modulo, DegreeElement, MultRealGroup};
use proptest::prelude::*;
use std::cmp::Ordering;
use std::sync::Arc;

fn group() -> Arc<MultRealGroup> {
    MultRealGroup::from_ints(&[2, 3, 5]).unwrap()
}

fn elem() -> impl Strategy<Value = DegreeElement> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 3).prop_map(|e| group().element(e.into_iter().map(|(n, d)| rat(n, d)).collect()).unwrap())
}

proptest! {
    #[test]
    fn compare_is_a_total_order(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(a.compare(&b).unwrap(), b.compare(&a).unwrap().reverse());
        prop_assert_eq!(a.compare(&b).unwrap() == Ordering::Equal, a == b);
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
    }

    #[test]
    fn compare_agrees_with_reals(a in elem(), b in elem()) {
        let (x, y) = (a.to_f64(), b.to_f64());
        if (x - y).abs() > 1e-9 * x.max(y) {
            prop_assert_eq!(a.compare(&b).unwrap(), x.partial_cmp(&y).unwrap());
        }
    }

    #[test]
    fn compare_is_translation_invariant(a in elem(), b in elem(), c in elem()) {
        prop_assert_eq!(a.mul(&c).compare(&b.mul(&c)).unwrap(), a.compare(&b).unwrap());
    }

    #[test]
    fn order_modulo_is_minimal(r in elem(), h in prop::collection::vec(elem(), 1..3)) {
        if let Some(n) = order_modulo(&r, &h).unwrap() {
            prop_assert!(integer_coords(&r.pow(n as i64), &h).is_some());
            for m in 1..n {
                prop_assert!(integer_coords(&r.pow(m as i64), &h).is_none());
            }
        }
    }
}

#[test]
fn half_power_has_order_two_modulo_its_square() {
    let g = group();
    let r = g.power_of_rational(&Rat::from_integer(2.into()), &rat(1, 2)).unwrap();
    assert_eq!(order_modulo(&r, &[g.generator(0)]).unwrap(), Some(2));
    assert_eq!(order_modulo(&g.generator(1), &[g.generator(0)]).unwrap(), None);
}
