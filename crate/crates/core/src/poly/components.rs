//! Connected components of `Spec k[X]/I` and the idempotents cutting them out.

use super::decomp::{self, display_gb};
use super::groebner::groebner_tracked;
use super::ideal::Ideal;
use super::mpoly::Poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Component {
    /// Minimal primes whose closures lie in this component.
    pub primes: Vec<Ideal>,
    /// Idempotent of `k[X]/I` equal to 1 on this component, reduced mod `I`.
    pub idempotent: Poly,
}

pub fn connected_components(i: &Ideal) -> Result<Vec<Component>> {
    let ring = i.ring().clone();
    let primes = decomp::minimal_primes(i)?;
    let n = primes.len();
    if n == 0 {
        return Ok(vec![]);
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for a in 0..n {
        for b in a + 1..n {
            if !primes[a].sum(&primes[b]).is_unit() {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let roots: Vec<usize> = (0..n).map(|a| find(&mut parent, a)).collect();
    for a in 0..n {
        match groups.iter_mut().find(|g| roots[g[0]] == roots[a]) {
            Some(g) => g.push(a),
            None => groups.push(vec![a]),
        }
    }
    if groups.len() == 1 {
        return Ok(vec![Component { primes, idempotent: ring.one() }]);
    }
    let closed: Vec<Ideal> = groups
        .iter()
        .map(|g| Ideal::intersect_all(&g.iter().map(|&a| primes[a].clone()).collect::<Vec<_>>()).unwrap())
        .collect();
    let mut out = Vec::new();
    for (gi, g) in groups.iter().enumerate() {
        let others: Vec<Ideal> = closed.iter().enumerate().filter(|(j, _)| *j != gi).map(|(_, c)| c.clone()).collect();
        let rest = Ideal::intersect_all(&others).unwrap();
        // 1 = a + b with a in the component's ideal and b vanishing elsewhere.
        let mine = closed[gi].gb().to_vec();
        let theirs = rest.gb().to_vec();
        let mut gens = mine.clone();
        gens.extend(theirs.iter().cloned());
        let (basis, cof) = groebner_tracked(&ring, &gens);
        if basis.len() != 1 || !ring.is_constant(&basis[0]) {
            return Err(Error::Inconclusive("components are not comaximal".into()));
        }
        let mut b = ring.zero();
        for (c, t) in cof[0][mine.len()..].iter().zip(&theirs) {
            b = ring.add(&b, &ring.mul(c, t));
        }
        let e = lift_idempotent(i, &i.reduce(&b));
        out.push(Component { primes: g.iter().map(|&a| primes[a].clone()).collect(), idempotent: e });
    }
    out.sort_by_key(|c| display_gb(&c.primes[0]));
    Ok(out)
}

/// Newton iteration `e -> 3e^2 - 2e^3` lifting an idempotent modulo the
/// nilradical to one modulo `I`.
pub fn lift_idempotent(i: &Ideal, e: &Poly) -> Poly {
    let ring = i.ring();
    let k = &ring.field;
    let mut e = i.reduce(e);
    loop {
        let e2 = i.reduce(&ring.mul(&e, &e));
        if e2 == e {
            return e;
        }
        let e3 = i.reduce(&ring.mul(&e2, &e));
        e = i.reduce(&ring.sub(&ring.scale(&e2, &k.from_i64(3)), &ring.scale(&e3, &k.from_i64(2))));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::Field;
    use crate::poly::mpoly::PolyRing;

    #[test]
    fn two_points_with_nilpotents() {
        let r = PolyRing::with_vars(&Field::Prime(3), &["T"]);
        let i = Ideal::from_strs(&r, &["T^2 * (T - 1)"]).unwrap();
        let cs = connected_components(&i).unwrap();
        assert_eq!(cs.len(), 2);
        let mut sum = r.zero();
        for c in &cs {
            let e = &c.idempotent;
            assert_eq!(i.reduce(&r.mul(e, e)), *e);
            sum = r.add(&sum, e);
        }
        assert_eq!(i.reduce(&sum), r.one());
        assert!(i.reduce(&r.mul(&cs[0].idempotent, &cs[1].idempotent)).is_zero());
    }

    #[test]
    fn crossing_lines_are_connected() {
        let r = PolyRing::with_vars(&Field::Rational, &["x", "y"]);
        let i = Ideal::from_strs(&r, &["x*y"]).unwrap();
        let cs = connected_components(&i).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].primes.len(), 2);
        let j = Ideal::from_strs(&r, &["x*(x - 1)"]).unwrap();
        assert_eq!(connected_components(&j).unwrap().len(), 2);
    }
}
