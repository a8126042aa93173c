//! Radicals and minimal primes.
//!
//! Zero-dimensional ideals are handled directly (Seidenberg's lemma for
//! radicals; Frobenius-fixed subalgebras over finite fields and primitive
//! elements over infinite fields for primes). Positive-dimensional ideals
//! are localized at a maximal independent set, which reduces them to the
//! zero-dimensional case over a rational function field, and the
//! remaining locus is handled recursively.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::groebner;
use super::ideal::Ideal;
use super::mfactor::{embed_from, flatten_once};
use super::mpoly::{MonomialOrder, Poly, PolyRing};
use crate::arith::factor;
use crate::arith::field::{Elem, Field};
use crate::arith::linalg;
use crate::arith::upoly;
use crate::error::{Error, Result};

const SEED: u64 = 0x7072_696d;

/// Passage between `k[U, X']` and `k(U)[X']` for an independent set `U`.
pub struct Localization {
    pub ring: Arc<PolyRing>,
    pub u: Vec<usize>,
    pub xp: Vec<usize>,
    pub field: Field,
    pub kring: Arc<PolyRing>,
}

impl Localization {
    pub fn new(ring: &Arc<PolyRing>, u: &[usize]) -> Localization {
        let xp: Vec<usize> = (0..ring.nvars()).filter(|i| !u.contains(i)).collect();
        let mut field = ring.field.clone();
        // Innermost level is the last independent variable.
        for &i in u.iter().rev() {
            field = Field::fractions(&field, &ring.vars[i]);
        }
        let kring = PolyRing::new(field.clone(), xp.iter().map(|&i| ring.vars[i].clone()).collect(), MonomialOrder::GrevLex);
        Localization { ring: ring.clone(), u: u.to_vec(), xp, field, kring }
    }

    fn u_generator(&self, j: usize) -> Elem {
        // Level of u[j] counted from the top.
        let mut level = self.field.clone();
        for _ in 0..j {
            level = level.base().unwrap().clone();
        }
        embed_from(&self.field, &level, &level.generator().unwrap())
    }

    pub fn extend(&self, p: &Poly) -> Poly {
        let mut images: Vec<Poly> = vec![Poly::default(); self.ring.nvars()];
        for (j, &i) in self.xp.iter().enumerate() {
            images[i] = self.kring.var(j);
        }
        for (j, &i) in self.u.iter().enumerate() {
            images[i] = self.kring.constant(self.u_generator(j));
        }
        let base = &self.ring.field;
        self.ring.map_into(p, &self.kring, &images, &|c| embed_from(&self.field, base, c))
    }

    /// A polynomial of `k[U, X']` equal to `p` up to a unit of `k(U)`.
    pub fn clear(&self, p: &Poly) -> Poly {
        let mut r = self.kring.clone();
        let mut q = p.clone();
        for _ in 0..self.u.len() {
            let (nr, nq) = flatten_once(&r, &q).expect("fraction levels");
            r = nr;
            q = nq;
        }
        r.transfer(&q, &self.ring)
    }

    /// Contraction of an ideal of `k(U)[X']`, together with the product of
    /// the leading coefficients used for the saturation.
    pub fn contract(&self, j: &Ideal) -> (Ideal, Poly) {
        let gb = j.gb().to_vec();
        let mut h = self.ring.one();
        let mut gens = Vec::new();
        for g in &gb {
            let c = self.clear(g);
            h = self.ring.mul(&h, &self.leading_coefficient(g, &c));
            gens.push(c);
        }
        let i = Ideal::new(self.ring.clone(), gens);
        (i.saturate(&h), h)
    }

    /// `h` in `k[U]` with `I : h^inf` equal to the contraction of the
    /// extension of `I`: the product of the leading coefficients of a
    /// Groebner basis for the block order `X' >> U`.
    pub fn splitting_polynomial(&self, i: &Ideal) -> Poly {
        let mut vars: Vec<String> = self.xp.iter().map(|&v| self.ring.vars[v].clone()).collect();
        vars.extend(self.u.iter().map(|&v| self.ring.vars[v].clone()));
        let nx = self.xp.len();
        let block = PolyRing::new(self.ring.field.clone(), vars, MonomialOrder::Block(vec![nx, self.u.len()]));
        let gens: Vec<Poly> = i.gens().iter().map(|g| self.ring.transfer(g, &block)).collect();
        let mut h = block.one();
        for g in groebner::groebner(&block, &gens) {
            let lead = g.lm()[..nx].to_vec();
            let terms = g
                .terms
                .iter()
                .filter(|(m, _)| m[..nx] == lead[..])
                .map(|(m, x)| {
                    let mut n = m.clone();
                    n[..nx].iter_mut().for_each(|e| *e = 0);
                    (n, x.clone())
                })
                .collect();
            h = block.mul(&h, &block.from_terms(terms));
        }
        block.transfer(&h, &self.ring)
    }

    /// Coefficient in `k[U]` of the `X'`-leading monomial of `g`, read off the
    /// cleared polynomial `c`.
    fn leading_coefficient(&self, g: &Poly, c: &Poly) -> Poly {
        let lm = g.lm();
        let terms = c
            .terms
            .iter()
            .filter(|(m, _)| self.xp.iter().enumerate().all(|(j, &i)| m[i] == lm[j]))
            .map(|(m, x)| {
                let mut n = m.clone();
                for &i in &self.xp {
                    n[i] = 0;
                }
                (n, x.clone())
            })
            .collect();
        self.ring.from_terms(terms)
    }
}

/// Whether `I` equals its radical.
pub fn is_radical(i: &Ideal) -> Result<bool> {
    Ok(radical(i)?.is_subset_of(i))
}

pub fn radical(i: &Ideal) -> Result<Ideal> {
    if i.is_unit() || i.is_zero() {
        return Ok(i.clone());
    }
    let d = i.dimension();
    if d == 0 {
        return zero_dim_radical(i);
    }
    let u = i.max_independent_set();
    let loc = Localization::new(i.ring(), &u);
    let ext = Ideal::new(loc.kring.clone(), i.gens().iter().map(|g| loc.extend(g)).collect());
    let rk = zero_dim_radical(&ext)?;
    let (rc, _) = loc.contract(&rk);
    let h = loc.splitting_polynomial(i);
    let rest = i.add_gens(&[h]);
    if rest.is_unit() {
        return Ok(rc);
    }
    let rr = radical(&rest)?;
    Ok(rc.intersect(&rr))
}

fn var_min_polys(i: &Ideal) -> Vec<Vec<Elem>> {
    let r = i.ring();
    (0..r.nvars()).map(|v| i.min_poly(&r.var(v)).expect("zero-dimensional")).collect()
}

fn univariate_in(r: &PolyRing, v: usize, c: &[Elem]) -> Poly {
    let terms = c
        .iter()
        .enumerate()
        .map(|(e, x)| {
            let mut m = r.unit_mono();
            m[v] = e as u32;
            (m, x.clone())
        })
        .collect();
    r.from_terms(terms)
}

fn zero_dim_radical(i: &Ideal) -> Result<Ideal> {
    let r = i.ring();
    let k = &r.field;
    let mps = var_min_polys(i);
    let mut extra = Vec::new();
    let mut inseparable = false;
    for (v, mp) in mps.iter().enumerate() {
        let s = factor::squarefree_part(k, mp)?;
        if !factor::is_separable(k, &s) {
            inseparable = true;
        }
        if upoly::deg(&s) < upoly::deg(mp) {
            extra.push(univariate_in(r, v, &s));
        }
    }
    if !inseparable {
        return Ok(i.add_gens(&extra).with_reduced_gens());
    }
    if r.nvars() == 1 {
        return Ok(i.add_gens(&extra).with_reduced_gens());
    }
    Err(Error::Inconclusive(format!(
        "radical over the imperfect field {k} with inseparable minimal polynomials"
    )))
}

/// Minimal primes, sorted by printed Groebner basis.
pub fn minimal_primes(i: &Ideal) -> Result<Vec<Ideal>> {
    if i.is_unit() {
        return Ok(vec![]);
    }
    let r = radical(i)?;
    let mut ps = primes_of_radical(&r)?;
    ps = minimalize(ps);
    ps.sort_by_key(display_gb);
    Ok(ps)
}

pub fn display_gb(i: &Ideal) -> String {
    let r = i.ring();
    i.gb().iter().map(|p| r.display(p)).collect::<Vec<_>>().join(", ")
}

fn minimalize(ps: Vec<Ideal>) -> Vec<Ideal> {
    let mut out: Vec<Ideal> = Vec::new();
    for p in ps {
        if out.iter().any(|q| q.is_subset_of(&p)) {
            continue;
        }
        out.retain(|q| !p.is_subset_of(q));
        out.push(p);
    }
    out
}

fn primes_of_radical(r: &Ideal) -> Result<Vec<Ideal>> {
    if r.is_unit() {
        return Ok(vec![]);
    }
    if r.is_zero() {
        return Ok(vec![r.clone()]);
    }
    let d = r.dimension();
    if d == 0 {
        return zero_dim_primes(r);
    }
    let u = r.max_independent_set();
    let loc = Localization::new(r.ring(), &u);
    let ext = Ideal::new(loc.kring.clone(), r.gens().iter().map(|g| loc.extend(g)).collect());
    let mut out = Vec::new();
    for p in zero_dim_primes(&ext)? {
        out.push(loc.contract(&p).0.with_reduced_gens());
    }
    let h = loc.splitting_polynomial(r);
    let rest = r.add_gens(&[h]);
    if !rest.is_unit() {
        out.extend(primes_of_radical(&radical(&rest)?)?);
    }
    Ok(minimalize(out))
}

fn zero_dim_primes(r: &Ideal) -> Result<Vec<Ideal>> {
    if r.is_unit() {
        return Ok(vec![]);
    }
    let k = r.ring().field.clone();
    if k.is_finite() {
        finite_field_split(r)
    } else {
        primitive_element_split(r)
    }
}

/// Split a radical zero-dimensional ideal over F_q using the subalgebra of
/// Frobenius-fixed elements, whose dimension counts the prime factors.
fn finite_field_split(r: &Ideal) -> Result<Vec<Ideal>> {
    let ring = r.ring();
    let k = &ring.field;
    let q = k.order().unwrap();
    let basis = r.standard_monomials().unwrap();
    let n = basis.len();
    if n <= 1 {
        return Ok(vec![r.with_reduced_gens()]);
    }
    let frob_vars: Vec<Poly> = (0..ring.nvars())
        .map(|v| {
            let mut acc = ring.one();
            let mut b = ring.var(v);
            let bits = q.bits();
            for bit in 0..bits {
                if q.bit(bit) {
                    acc = r.reduce(&ring.mul(&acc, &b));
                }
                if bit + 1 < bits {
                    b = r.reduce(&ring.mul(&b, &b));
                }
            }
            acc
        })
        .collect();
    // Column j holds Frob(basis_j) - basis_j.
    let mut cols = Vec::with_capacity(n);
    for m in &basis {
        let mut img = ring.one();
        for (v, &e) in m.iter().enumerate() {
            for _ in 0..e {
                img = r.reduce(&ring.mul(&img, &frob_vars[v]));
            }
        }
        let mut c = r.coords(&img, &basis);
        let own = basis.iter().position(|b| b == m).unwrap();
        c[own] = k.sub(&c[own], &k.one());
        cols.push(c);
    }
    let mat = linalg::transpose(&cols);
    let ker = linalg::kernel(k, &mat, n);
    if ker.len() <= 1 {
        return Ok(vec![r.with_reduced_gens()]);
    }
    let b = ker
        .iter()
        .map(|v| r.from_coords(v, &basis))
        .find(|p| !ring.is_constant(p))
        .expect("non-constant fixed element");
    let mp = r.min_poly(&b).unwrap();
    let mut out = Vec::new();
    for root in factor::roots(k, &mp)? {
        let piece = r.add_gens(&[ring.sub(&b, &ring.constant(root))]);
        if !piece.is_unit() {
            out.extend(finite_field_split(&piece.with_reduced_gens())?);
        }
    }
    Ok(out)
}

fn random_coefficient(k: &Field, rng: &mut ChaCha8Rng, attempt: usize) -> Elem {
    match k {
        Field::Frac(_) => {
            // Mix small constants with powers of the variable so the choice
            // is not confined to a finite prime field.
            let t = k.generator().unwrap();
            let e = rng.gen_range(0..=(1 + attempt as u64 / 3));
            let c = k.from_i64(rng.gen_range(1..=5));
            k.add(&k.pow(&t, e), &c)
        }
        _ => k.from_i64(rng.gen_range(-(2 + attempt as i64)..=(2 + attempt as i64))),
    }
}

fn primitive_element_split(r: &Ideal) -> Result<Vec<Ideal>> {
    let ring = r.ring();
    let k = &ring.field;
    let n = r.vector_space_dim().unwrap();
    if n <= 1 {
        return Ok(vec![r.with_reduced_gens()]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for attempt in 0..40 {
        let mut l = ring.zero();
        for v in 0..ring.nvars() {
            let c = if attempt == 0 && v == ring.nvars() - 1 { k.one() } else { random_coefficient(k, &mut rng, attempt) };
            if attempt == 0 && v != ring.nvars() - 1 {
                continue;
            }
            l = ring.add(&l, &ring.scale(&ring.var(v), &c));
        }
        let mp = r.min_poly(&l).unwrap();
        if upoly::deg(&mp) as usize != n {
            continue;
        }
        let mut out = Vec::new();
        for (f, _) in factor::factor(k, &mp)? {
            let fl = eval_univariate_at(ring, &f, &l);
            out.push(r.add_gens(&[fl]).with_reduced_gens());
        }
        return Ok(out);
    }
    Err(Error::Inconclusive(format!("no primitive element found over {k}")))
}

/// `f(l)` for a univariate `f`.
pub fn eval_univariate_at(ring: &PolyRing, f: &[Elem], l: &Poly) -> Poly {
    let mut acc = ring.zero();
    for c in f.iter().rev() {
        acc = ring.add(&ring.mul(&acc, l), &ring.constant(c.clone()));
    }
    acc
}

pub fn is_prime(i: &Ideal) -> Result<bool> {
    if i.is_unit() {
        return Ok(false);
    }
    if !is_radical(i)? {
        return Ok(false);
    }
    Ok(minimal_primes(i)?.len() == 1)
}

/// Groebner basis check used by tests: S-polynomials reduce to zero.
pub fn is_groebner(ring: &PolyRing, basis: &[Poly]) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let l = super::mpoly::lcm(basis[i].lm(), basis[j].lm());
            let k = &ring.field;
            let ti = ring.monomial(super::mpoly::mono_div(&l, basis[i].lm()), k.inv(basis[i].lc()).unwrap());
            let tj = ring.monomial(super::mpoly::mono_div(&l, basis[j].lm()), k.inv(basis[j].lc()).unwrap());
            let s = ring.sub(&ring.mul(&ti, &basis[i]), &ring.mul(&tj, &basis[j]));
            if !groebner::reduce(ring, &s, basis).is_zero() {
                return false;
            }
        }
    }
    true
}
