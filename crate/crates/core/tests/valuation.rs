use gradal_core::arith::field::{frac_from_polys, rat, Elem, Field};
use gradal_core::corpoid::{Corpoid, CorpoidElement};
use gradal_core::degree::MultRealGroup;
use gradal_core::valuation::{GradedValuation, IntegralAlgebra, Place};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn valuations() -> Vec<GradedValuation> {
    let amb = MultRealGroup::from_ints(&[2]).unwrap();
    let f3 = Field::prime(3).unwrap();
    vec![
        GradedValuation::p_adic(&Corpoid::trivial(&Field::Rational, &amb), 2).unwrap(),
        GradedValuation::t_adic(&Corpoid::trivial(&Field::fractions(&f3, "t"), &amb)).unwrap(),
        GradedValuation::composite(&Corpoid::trivial(&Field::fractions(&Field::fractions(&f3, "s"), "t"), &amb), vec![Place::Adic, Place::Adic]).unwrap(),
    ]
}

fn random_poly(f: &Field, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    let n = rng.gen_range(1..4);
    let mut v: Vec<Elem> = (0..n).map(|_| f.random(rng)).collect();
    v.push(f.one());
    let shift = rng.gen_range(0..3);
    let mut out = vec![f.zero(); shift];
    out.append(&mut v);
    out
}

fn random_elem(f: &Field, rng: &mut ChaCha8Rng) -> Elem {
    loop {
        let x = match f {
            Field::Rational => Elem::Q(rat(rng.gen_range(-40..=40), rng.gen_range(1..=40))),
            Field::Frac(ff) => {
                let (n, d) = (random_poly(&ff.base, rng), random_poly(&ff.base, rng));
                let x = frac_from_polys(f, n, d).unwrap();
                if rng.gen_bool(0.3) {
                    f.add(&x, &f.one())
                } else {
                    x
                }
            }
            _ => f.random(rng),
        };
        if !f.is_zero(&x) {
            return x;
        }
    }
}

#[test]
fn tilde_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for v in valuations() {
        let c = v.corpoid().clone();
        for _ in 0..500 {
            let x = c.from_base(random_elem(c.base(), &mut rng));
            let y = c.from_base(random_elem(c.base(), &mut rng));
            let (tx, ty) = (v.tilde(&x).unwrap(), v.tilde(&y).unwrap());
            let txy = v.tilde(&c.mul(&x, &y)).unwrap();
            assert_eq!(txy, v.residue_corpoid().mul(&tx, &ty), "{v}");
        }
    }
}

fn in_annuloid_sample(v: &GradedValuation, rng: &mut ChaCha8Rng) -> Option<CorpoidElement> {
    let c = v.corpoid();
    let x = c.from_base(random_elem(c.base(), rng));
    v.in_annuloid(&x).then_some(x)
}

#[test]
fn coarsenings_enlarge_the_annuloid() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for v in valuations() {
        for level in 0..=v.height() {
            let w = v.coarsening(level).unwrap();
            for _ in 0..200 {
                if let Some(x) = in_annuloid_sample(&v, &mut rng) {
                    assert!(w.in_annuloid(&x), "{v} at level {level}");
                }
            }
        }
    }
}

#[test]
fn heights_add_up() {
    for v in valuations() {
        for level in 0..=v.height() {
            let coarse = v.coarsening(level).unwrap().height();
            let residual = v.induced_on_residue(level).unwrap().height();
            assert_eq!(coarse + residual, v.height(), "{v} at level {level}");
        }
    }
}

#[test]
fn local_ring_spot_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for v in valuations() {
        let c = v.corpoid().clone();
        for _ in 0..100 {
            let x = c.from_base(random_elem(c.base(), &mut rng));
            assert!(v.in_annuloid(&x) || v.in_annuloid(&c.inv(&x).unwrap()));
        }
    }
}

#[test]
fn covers_verify_on_every_fiber() {
    let vs = valuations();
    for (v, vars, gens) in [(&vs[1], vec!["x"], vec!["x^3 - x"]), (&vs[2], vec!["x", "y"], vec!["x^2 - x - s*t*y"])] {
        let a = IntegralAlgebra::new(v, &vars, &gens).unwrap();
        assert!(a.is_flat_module().unwrap());
        let c = a.fiber_splitting_cover().unwrap();
        assert!(c.verify(), "{gens:?}");
    }
}

#[test]
fn torsion_is_detected() {
    let vs = valuations();
    let a = IntegralAlgebra::new(&vs[1], &["x", "y"], &["t*x*y", "x^2 - x"]).unwrap();
    assert!(!a.is_flat_module().unwrap());
    assert_eq!(vs[0].height(), 1);
    assert_eq!(vs[2].height(), 2);
}
