//! Ideals of a polynomial ring with a lazily computed reduced Groebner basis.

use std::collections::{BTreeSet, VecDeque};
use std::sync::{Arc, OnceLock};

use super::groebner::{self, reduce_with_quotients};
use super::mpoly::{divides, MonomialOrder, Mono, Poly, PolyRing};
use crate::arith::field::Elem;
use crate::arith::linalg;

#[derive(Debug)]
pub struct Ideal {
    ring: Arc<PolyRing>,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

/// Exact quotient `a / b` in the polynomial ring, if `b` divides `a`.
pub fn div_exact(ring: &PolyRing, a: &Poly, b: &Poly) -> Option<Poly> {
    let (q, r) = reduce_with_quotients(ring, a, std::slice::from_ref(b));
    r.is_zero().then(|| q.into_iter().next().unwrap())
}

impl Ideal {
    pub fn new(ring: Arc<PolyRing>, gens: Vec<Poly>) -> Ideal {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring, gens, gb: OnceLock::new() }
    }

    pub fn from_strs(ring: &Arc<PolyRing>, gens: &[&str]) -> crate::error::Result<Ideal> {
        let g = gens.iter().map(|s| ring.parse(s)).collect::<crate::error::Result<Vec<_>>>()?;
        Ok(Ideal::new(ring.clone(), g))
    }

    pub fn unit(ring: Arc<PolyRing>) -> Ideal {
        let one = ring.one();
        Ideal::new(ring, vec![one])
    }

    pub fn zero(ring: Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, vec![])
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn gb(&self) -> &[Poly] {
        self.gb.get_or_init(|| groebner::groebner(&self.ring, &self.gens))
    }

    pub fn is_unit(&self) -> bool {
        let b = self.gb();
        b.len() == 1 && self.ring.is_constant(&b[0])
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        groebner::reduce(&self.ring, f, self.gb())
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.reduce(f).is_zero()
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    pub fn equals(&self, other: &Ideal) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    pub fn add_gens(&self, extra: &[Poly]) -> Ideal {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Ideal::new(self.ring.clone(), g)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        self.add_gens(&other.gens)
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(self.ring.mul(a, b));
            }
        }
        Ideal::new(self.ring.clone(), g)
    }

    /// The same ideal viewed in `ring`, matching variables by name.
    pub fn in_ring(&self, ring: &Arc<PolyRing>) -> Ideal {
        let g = self.gens.iter().map(|p| self.ring.transfer(p, ring)).collect();
        Ideal::new(ring.clone(), g)
    }

    /// `I ∩ k[rest]`, as an ideal of a ring on the remaining variables.
    pub fn eliminate(&self, elim: &[usize]) -> Ideal {
        let r = &self.ring;
        let rest: Vec<usize> = (0..r.nvars()).filter(|i| !elim.contains(i)).collect();
        let mut names: Vec<String> = elim.iter().map(|&i| r.vars[i].clone()).collect();
        names.extend(rest.iter().map(|&i| r.vars[i].clone()));
        let block = PolyRing::new(r.field.clone(), names, MonomialOrder::Block(vec![elim.len(), rest.len()]));
        let target = PolyRing::new(
            r.field.clone(),
            rest.iter().map(|&i| r.vars[i].clone()).collect(),
            MonomialOrder::GrevLex,
        );
        let gens: Vec<Poly> = self.gens.iter().map(|g| r.transfer(g, &block)).collect();
        let gb = groebner::groebner(&block, &gens);
        let kept: Vec<Poly> = gb
            .into_iter()
            .filter(|p| p.terms.iter().all(|(m, _)| m[..elim.len()].iter().all(|&e| e == 0)))
            .map(|p| {
                let terms = p.terms.into_iter().map(|(m, c)| (m[elim.len()..].to_vec(), c)).collect();
                target.from_terms(terms)
            })
            .collect();
        Ideal::new(target, kept)
    }

    /// Elimination with the result moved back into `self.ring()`.
    pub fn eliminate_in_place(&self, elim: &[usize]) -> Ideal {
        self.eliminate(elim).in_ring(&self.ring)
    }

    fn with_aux_var(&self, name: &str) -> (Arc<PolyRing>, usize) {
        let r = &self.ring;
        let mut names = vec![name.to_string()];
        names.extend(r.vars.iter().cloned());
        let ext = PolyRing::new(r.field.clone(), names, MonomialOrder::Block(vec![1, r.nvars()]));
        (ext, 0)
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        if self.is_unit() {
            return other.clone();
        }
        if other.is_unit() {
            return self.clone();
        }
        if self.is_zero() || other.is_zero() {
            return Ideal::zero(self.ring.clone());
        }
        let (ext, t) = self.with_aux_var("_t");
        let tv = ext.var(t);
        let omt = ext.sub(&ext.one(), &tv);
        let mut g = Vec::new();
        for a in &self.gens {
            g.push(ext.mul(&tv, &self.ring.transfer(a, &ext)));
        }
        for b in &other.gens {
            g.push(ext.mul(&omt, &other.ring.transfer(b, &ext)));
        }
        let out = Ideal::new(ext, g).eliminate(&[t]).in_ring(&self.ring);
        out.with_reduced_gens()
    }

    pub fn intersect_all(ideals: &[Ideal]) -> Option<Ideal> {
        let mut it = ideals.iter();
        let mut acc = it.next()?.clone();
        for i in it {
            acc = acc.intersect(i);
        }
        Some(acc)
    }

    /// `I : f`.
    pub fn quotient(&self, f: &Poly) -> Ideal {
        if f.is_zero() {
            return Ideal::unit(self.ring.clone());
        }
        let fi = Ideal::new(self.ring.clone(), vec![f.clone()]);
        let inter = self.intersect(&fi);
        let g = inter.gens.iter().map(|p| div_exact(&self.ring, p, f).expect("divisible by f")).collect();
        Ideal::new(self.ring.clone(), g).with_reduced_gens()
    }

    /// `I : f^∞`.
    pub fn saturate(&self, f: &Poly) -> Ideal {
        if f.is_zero() {
            return Ideal::unit(self.ring.clone());
        }
        let (ext, y) = self.with_aux_var("_y");
        let yv = ext.var(y);
        let mut g: Vec<Poly> = self.gens.iter().map(|a| self.ring.transfer(a, &ext)).collect();
        let fe = self.ring.transfer(f, &ext);
        g.push(ext.sub(&ext.one(), &ext.mul(&yv, &fe)));
        Ideal::new(ext, g).eliminate(&[y]).in_ring(&self.ring).with_reduced_gens()
    }

    /// Replace generators by the reduced Groebner basis.
    pub fn with_reduced_gens(&self) -> Ideal {
        let gb = self.gb().to_vec();
        let out = Ideal::new(self.ring.clone(), gb.clone());
        let _ = out.gb.set(gb);
        out
    }

    fn leading_monos(&self) -> Vec<Mono> {
        self.gb().iter().map(|p| p.lm().clone()).collect()
    }

    /// Largest set of variables independent modulo the ideal.
    pub fn max_independent_set(&self) -> Vec<usize> {
        let n = self.ring.nvars();
        let lms = self.leading_monos();
        let ok = |s: &BTreeSet<usize>| !lms.iter().any(|m| m.iter().enumerate().all(|(i, &e)| e == 0 || s.contains(&i)));
        let mut best: BTreeSet<usize> = BTreeSet::new();
        fn go(i: usize, n: usize, cur: &mut BTreeSet<usize>, best: &mut BTreeSet<usize>, ok: &dyn Fn(&BTreeSet<usize>) -> bool) {
            if cur.len() + (n - i) <= best.len() {
                return;
            }
            if i == n {
                if cur.len() > best.len() {
                    *best = cur.clone();
                }
                return;
            }
            cur.insert(i);
            if ok(cur) {
                go(i + 1, n, cur, best, ok);
            }
            cur.remove(&i);
            go(i + 1, n, cur, best, ok);
        }
        if self.is_unit() {
            return vec![];
        }
        let mut cur = BTreeSet::new();
        go(0, n, &mut cur, &mut best, &ok);
        best.into_iter().collect()
    }

    /// Krull dimension of the quotient ring; -1 for the unit ideal.
    pub fn dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        self.max_independent_set().len() as i64
    }

    pub fn is_zero_dimensional(&self) -> bool {
        !self.is_unit() && self.dimension() == 0
    }

    /// Monomials outside the leading ideal (zero-dimensional ideals only).
    pub fn standard_monomials(&self) -> Option<Vec<Mono>> {
        if self.is_unit() {
            return Some(vec![]);
        }
        if self.dimension() != 0 {
            return None;
        }
        let lms = self.leading_monos();
        let n = self.ring.nvars();
        let mut seen: BTreeSet<Mono> = BTreeSet::new();
        let mut q = VecDeque::new();
        let one = vec![0u32; n];
        q.push_back(one.clone());
        seen.insert(one);
        let mut out = Vec::new();
        while let Some(m) = q.pop_front() {
            out.push(m.clone());
            for i in 0..n {
                let mut nm = m.clone();
                nm[i] += 1;
                if lms.iter().any(|l| divides(l, &nm)) || seen.contains(&nm) {
                    continue;
                }
                seen.insert(nm.clone());
                q.push_back(nm);
            }
        }
        out.sort_by(|a, b| self.ring.cmp(a, b));
        Some(out)
    }

    pub fn vector_space_dim(&self) -> Option<usize> {
        self.standard_monomials().map(|s| s.len())
    }

    /// Coordinates of the normal form of `f` on the standard monomials.
    pub fn coords(&self, f: &Poly, basis: &[Mono]) -> Vec<Elem> {
        let k = &self.ring.field;
        let nf = self.reduce(f);
        let mut v = vec![k.zero(); basis.len()];
        for (m, c) in nf.terms {
            let i = basis.iter().position(|b| *b == m).expect("normal form on standard monomials");
            v[i] = c;
        }
        v
    }

    pub fn from_coords(&self, v: &[Elem], basis: &[Mono]) -> Poly {
        self.ring.from_terms(basis.iter().cloned().zip(v.iter().cloned()).collect())
    }

    /// Minimal polynomial of `f` in a zero-dimensional quotient, monic,
    /// constant term first.
    pub fn min_poly(&self, f: &Poly) -> Option<Vec<Elem>> {
        let basis = self.standard_monomials()?;
        let k = &self.ring.field;
        let mut powers: Vec<Vec<Elem>> = Vec::new();
        let mut cur = self.ring.one();
        loop {
            let v = self.coords(&cur, &basis);
            if !powers.is_empty() {
                // Solve sum c_i v_i = v.
                let m = linalg::transpose(&powers);
                if let Some(c) = linalg::solve(k, &m, &v) {
                    let mut out: Vec<Elem> = c.iter().map(|x| k.neg(x)).collect();
                    out.push(k.one());
                    return Some(out);
                }
            } else if v.iter().all(|x| k.is_zero(x)) {
                return Some(vec![k.one()]);
            }
            powers.push(v);
            cur = self.reduce(&self.ring.mul(&cur, f));
        }
    }

    pub fn display(&self) -> String {
        let g: Vec<String> = self.gens.iter().map(|p| self.ring.display(p)).collect();
        format!("({})", g.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::Field;

    #[test]
    fn saturation_removes_torsion() {
        let r = PolyRing::with_vars(&Field::Prime(5), &["t", "T"]);
        let i = Ideal::from_strs(&r, &["t*T"]).unwrap();
        let s = i.saturate(&r.parse("t").unwrap());
        assert!(s.equals(&Ideal::from_strs(&r, &["T"]).unwrap()));
    }

    #[test]
    fn intersection_and_quotient() {
        let r = PolyRing::with_vars(&Field::Rational, &["x", "y"]);
        let a = Ideal::from_strs(&r, &["x"]).unwrap();
        let b = Ideal::from_strs(&r, &["y"]).unwrap();
        let c = a.intersect(&b);
        assert!(c.equals(&Ideal::from_strs(&r, &["x*y"]).unwrap()));
        let q = c.quotient(&r.parse("x").unwrap());
        assert!(q.equals(&b));
    }

    #[test]
    fn dimension_and_min_poly() {
        let r = PolyRing::with_vars(&Field::Rational, &["x", "y", "z"]);
        assert_eq!(Ideal::from_strs(&r, &["x*y - z"]).unwrap().dimension(), 2);
        let z = Ideal::from_strs(&r, &["x^2 - 2", "y - x", "z"]).unwrap();
        assert_eq!(z.vector_space_dim(), Some(2));
        let mp = z.min_poly(&r.parse("x + y").unwrap()).unwrap();
        let k = Field::Rational;
        assert_eq!(mp, vec![k.from_i64(-8), k.zero(), k.one()]);
    }
}
