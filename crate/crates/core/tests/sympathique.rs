use gradal_core::arith::field::{rat_int, Field};
use gradal_core::sympathique::{check_sympathique, check_universally_distinguished, FiberPoint, RelativePresentation};
use gradal_core::tate::{TatePresentation, TateRing, ValuedField, Verdict};
use std::sync::Arc;

fn fields() -> Vec<Arc<ValuedField>> {
    vec![
        ValuedField::trivial(&Field::Rational, &[rat_int(2), rat_int(3)]).unwrap(),
        ValuedField::p_adic(3, &[]).unwrap(),
        ValuedField::laurent(&Field::prime(3).unwrap(), "t", &[]).unwrap(),
    ]
}

fn family(k: &Arc<ValuedField>, rel: &str, points: &[i64]) -> RelativePresentation {
    let base = TatePresentation::from_strs(&TateRing::unit(k, &["S"]).unwrap(), &[]).unwrap();
    let f = k.field();
    let samples = points.iter().map(|&c| FiberPoint { coords: vec![f.from_i64(c)] }).collect();
    RelativePresentation::from_strs(&base, &["T"], vec![k.ambient().one()], &[rel], samples).unwrap()
}

const RELATORS: [&str; 5] = ["T^2 - T", "T^2 - S", "S*T - 1", "T^2 - S*T", "(S - 1)*T^2 + T"];

#[test]
fn more_samples_never_turn_fail_into_pass() {
    for k in fields() {
        for rel in RELATORS {
            let few = check_sympathique(&family(&k, rel, &[0]));
            let many = check_sympathique(&family(&k, rel, &[0, 1, 2]));
            for (a, b) in few.conditions.iter().zip(&many.conditions) {
                if a.verdict == Verdict::Fail {
                    assert_eq!(b.verdict, Verdict::Fail, "{rel} over {k}: condition {}", a.condition);
                }
            }
            if few.verdict == Verdict::Fail {
                assert_eq!(many.verdict, Verdict::Fail);
            }
        }
    }
}

#[test]
fn overall_verdict_is_the_meet() {
    for k in fields() {
        for rel in RELATORS {
            let r = check_sympathique(&family(&k, rel, &[0, 1]));
            let meet = r.conditions.iter().fold(Verdict::Pass, |acc, c| acc.and(c.verdict));
            assert_eq!(r.verdict, meet, "{rel} over {k}");
            assert_eq!(r.verdict == Verdict::Pass, r.conditions.iter().all(|c| c.verdict == Verdict::Pass));
        }
    }
}

#[test]
fn reports_are_reproducible() {
    for k in fields() {
        for rel in RELATORS {
            let a = format!("{:?}", check_sympathique(&family(&k, rel, &[0, 1])));
            let b = format!("{:?}", check_sympathique(&family(&k, rel, &[0, 1])));
            assert_eq!(a, b);
        }
    }
}

#[test]
fn unit_disc_is_universally_distinguished() {
    for k in fields() {
        let p = TatePresentation::from_strs(&TateRing::unit(&k, &["T"]).unwrap(), &[]).unwrap();
        assert_eq!(check_universally_distinguished(&p, &[]).verdict, Verdict::Pass);
    }
}
