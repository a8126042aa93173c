//! Buchberger's algorithm with the product and chain criteria, optionally
//! tracking how each basis element is expressed in the input generators.

use std::collections::HashSet;

use super::mpoly::{coprime, divides, lcm, mono_div, Mono, Poly, PolyRing};

/// Normal form of `f` with respect to `basis` (full reduction).
pub fn reduce(ring: &PolyRing, f: &Poly, basis: &[Poly]) -> Poly {
    reduce_inner(ring, f, basis, None)
}

/// `(q, r)` with `f = sum q_i basis_i + r` and `r` reduced.
pub fn reduce_with_quotients(ring: &PolyRing, f: &Poly, basis: &[Poly]) -> (Vec<Poly>, Poly) {
    let mut q = vec![Poly::default(); basis.len()];
    let r = reduce_inner(ring, f, basis, Some(&mut q));
    (q, r)
}

fn reduce_inner(ring: &PolyRing, f: &Poly, basis: &[Poly], mut quot: Option<&mut Vec<Poly>>) -> Poly {
    let k = &ring.field;
    let mut p = f.clone();
    let mut rem: Vec<(Mono, _)> = Vec::new();
    let invs: Vec<_> = basis.iter().map(|b| if b.is_zero() { None } else { Some(k.inv(b.lc()).unwrap()) }).collect();
    while !p.is_zero() {
        let (m, c) = p.terms[0].clone();
        let hit = basis.iter().enumerate().find(|(_, b)| !b.is_zero() && divides(b.lm(), &m));
        match hit {
            Some((i, b)) => {
                let qm = mono_div(&m, b.lm());
                let qc = k.mul(&c, invs[i].as_ref().unwrap());
                let sub = ring.mul_term(b, &qm, &qc);
                p = ring.sub(&p, &sub);
                if let Some(q) = quot.as_deref_mut() {
                    q[i] = ring.add(&q[i], &ring.monomial(qm, qc));
                }
            }
            None => {
                rem.push((m, c));
                p.terms.remove(0);
            }
        }
    }
    Poly { terms: rem }
}

struct Elt {
    p: Poly,
    cof: Option<Vec<Poly>>,
}

pub fn groebner(ring: &PolyRing, gens: &[Poly]) -> Vec<Poly> {
    buchberger(ring, gens, false).0
}

/// Reduced basis together with cofactors: `basis[i] = sum cof[i][j] gens[j]`.
pub fn groebner_tracked(ring: &PolyRing, gens: &[Poly]) -> (Vec<Poly>, Vec<Vec<Poly>>) {
    let (b, c) = buchberger(ring, gens, true);
    (b, c.unwrap())
}

fn lin_comb(ring: &PolyRing, a: &[Poly], ma: &Poly, b: &[Poly], mb: &Poly) -> Vec<Poly> {
    a.iter().zip(b).map(|(x, y)| ring.sub(&ring.mul(x, ma), &ring.mul(y, mb))).collect()
}

fn reduce_elt(ring: &PolyRing, e: Elt, basis: &[Elt]) -> Elt {
    let polys: Vec<Poly> = basis.iter().map(|b| b.p.clone()).collect();
    match e.cof {
        None => Elt { p: reduce(ring, &e.p, &polys), cof: None },
        Some(cof) => {
            let (q, r) = reduce_with_quotients(ring, &e.p, &polys);
            let mut cof = cof;
            for (qi, b) in q.iter().zip(basis) {
                if qi.is_zero() {
                    continue;
                }
                let bc = b.cof.as_ref().unwrap();
                for (c, d) in cof.iter_mut().zip(bc) {
                    *c = ring.sub(c, &ring.mul(qi, d));
                }
            }
            Elt { p: r, cof: Some(cof) }
        }
    }
}

fn make_monic(ring: &PolyRing, e: Elt) -> Elt {
    if e.p.is_zero() {
        return e;
    }
    let inv = ring.field.inv(e.p.lc()).unwrap();
    Elt {
        p: ring.scale(&e.p, &inv),
        cof: e.cof.map(|c| c.iter().map(|x| ring.scale(x, &inv)).collect()),
    }
}

fn buchberger(ring: &PolyRing, gens: &[Poly], track: bool) -> (Vec<Poly>, Option<Vec<Vec<Poly>>>) {
    let n = gens.len();
    let mut basis: Vec<Elt> = Vec::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    let mut queue: Vec<(usize, usize)> = Vec::new();

    let add = |basis: &mut Vec<Elt>, pending: &mut HashSet<(usize, usize)>, queue: &mut Vec<(usize, usize)>, e: Elt| {
        let t = basis.len();
        for i in 0..t {
            pending.insert((i, t));
            queue.push((i, t));
        }
        basis.push(e);
    };

    for (j, g) in gens.iter().enumerate() {
        let cof = track.then(|| {
            let mut v = vec![Poly::default(); n];
            v[j] = ring.one();
            v
        });
        let e = reduce_elt(ring, Elt { p: g.clone(), cof }, &basis);
        if !e.p.is_zero() {
            let e = make_monic(ring, e);
            add(&mut basis, &mut pending, &mut queue, e);
        }
    }

    while !queue.is_empty() {
        // Normal selection strategy: smallest lcm first.
        let (qi, _) = queue
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = lcm(basis[a.0].p.lm(), basis[a.1].p.lm());
                let lb = lcm(basis[b.0].p.lm(), basis[b.1].p.lm());
                ring.cmp(&la, &lb)
            })
            .unwrap();
        let (i, j) = queue.swap_remove(qi);
        pending.remove(&(i, j));
        let li = basis[i].p.lm().clone();
        let lj = basis[j].p.lm().clone();
        if coprime(&li, &lj) {
            continue;
        }
        let l = lcm(&li, &lj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(basis[k].p.lm(), &l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        let mi = ring.monomial(mono_div(&l, &li), ring.field.one());
        let mj = ring.monomial(mono_div(&l, &lj), ring.field.one());
        let s = ring.sub(&ring.mul(&basis[i].p, &mi), &ring.mul(&basis[j].p, &mj));
        let cof = track.then(|| lin_comb(ring, basis[i].cof.as_ref().unwrap(), &mi, basis[j].cof.as_ref().unwrap(), &mj));
        let e = reduce_elt(ring, Elt { p: s, cof }, &basis);
        if !e.p.is_zero() {
            let e = make_monic(ring, e);
            add(&mut basis, &mut pending, &mut queue, e);
        }
    }

    // Minimize.
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j && keep[j] && divides(basis[j].p.lm(), basis[i].p.lm()) && (basis[j].p.lm() != basis[i].p.lm() || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut min: Vec<Elt> = basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| e).collect();
    // Interreduce tails.
    for i in 0..min.len() {
        let e = std::mem::replace(&mut min[i], Elt { p: Poly::default(), cof: None });
        let lead = (e.p.terms[0].clone(), e.cof.as_ref().map(|_| ()));
        let tail = Elt { p: Poly { terms: e.p.terms[1..].to_vec() }, cof: e.cof };
        let others: Vec<Elt> = min
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, x)| Elt { p: x.p.clone(), cof: x.cof.clone() })
            .collect();
        let tail_cof_needed = tail.cof.is_some();
        // Reduce the tail alone; cofactor bookkeeping covers the whole element.
        let polys: Vec<Poly> = others.iter().map(|x| x.p.clone()).collect();
        let (q, r) = reduce_with_quotients(ring, &tail.p, &polys);
        let mut p = r;
        p.terms.insert(0, lead.0);
        let cof = if tail_cof_needed {
            let mut c = tail.cof.unwrap();
            for (qi, o) in q.iter().zip(&others) {
                if qi.is_zero() {
                    continue;
                }
                for (cc, d) in c.iter_mut().zip(o.cof.as_ref().unwrap()) {
                    *cc = ring.sub(cc, &ring.mul(qi, d));
                }
            }
            Some(c)
        } else {
            None
        };
        min[i] = Elt { p, cof };
    }
    min.sort_by(|a, b| ring.cmp(a.p.lm(), b.p.lm()));
    let cofs = track.then(|| min.iter().map(|e| e.cof.clone().unwrap()).collect());
    (min.into_iter().map(|e| e.p).collect(), cofs)
}
