//! Geometric reducedness and geometric irreducibility over the base field.
//!
//! Answers are exact where a complete criterion is available and
//! `Error::Inconclusive` otherwise:
//! * reducedness: separability of minimal polynomials in dimension zero,
//!   reducedness after adjoining p-th roots of the parameters otherwise;
//! * irreducibility: pure inseparability in dimension zero; in positive
//!   dimension a birational hypersurface is tested by factoring over
//!   extensions (finite fields) or by Gao's linear system (large or zero
//!   characteristic).

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::decomp::{self, Localization};
use super::ideal::Ideal;
use super::mfactor::factor_multivariate;
use super::mpoly::{MonomialOrder, Poly, PolyRing};
use crate::arith::factor;
use crate::arith::field::{frac_from_polys, Elem, Field};
use crate::arith::linalg;
use crate::arith::upoly;
use crate::error::{Error, Result};

const SEED: u64 = 0x6765_6f6d;

/// The field `K^{1/p}` for a rational function field over a perfect field,
/// presented with new parameters `w` satisfying `w^p = u`.
fn root_field(k: &Field) -> Option<Field> {
    match k {
        Field::Frac(ff) => {
            let b = if ff.base.is_perfect() { ff.base.clone() } else { root_field(&ff.base)? };
            Some(Field::fractions(&b, &format!("{}_r", ff.var)))
        }
        _ if k.is_perfect() => Some(k.clone()),
        _ => None,
    }
}

fn root_map(k: &Field, kr: &Field, e: &Elem) -> Elem {
    match (k, kr, e) {
        (Field::Frac(ff), Field::Frac(fr), Elem::Frac(n, d)) => {
            let p = k.characteristic() as usize;
            let spread = |v: &[Elem]| {
                let mut out = vec![fr.base.zero(); (v.len().max(1) - 1) * p + 1];
                for (i, c) in v.iter().enumerate() {
                    out[i * p] = root_map(&ff.base, &fr.base, c);
                }
                out
            };
            frac_from_polys(kr, spread(n), spread(d)).expect("fraction field")
        }
        _ => e.clone(),
    }
}

pub fn is_geometrically_reduced(i: &Ideal) -> Result<bool> {
    if i.is_unit() {
        return Ok(true);
    }
    if !decomp::is_radical(i)? {
        return Ok(false);
    }
    let ring = i.ring();
    let k = &ring.field;
    if k.is_perfect() {
        return Ok(true);
    }
    if i.is_zero_dimensional() {
        for v in 0..ring.nvars() {
            let mp = i.min_poly(&ring.var(v)).unwrap();
            if !factor::is_separable(k, &mp) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    let kr = root_field(k).ok_or_else(|| Error::Unsupported(format!("p-th roots over {k}")))?;
    let rr = PolyRing::new(kr.clone(), ring.vars.clone(), ring.order.clone());
    let images: Vec<Poly> = (0..ring.nvars()).map(|v| rr.var(v)).collect();
    let gens = i.gens().iter().map(|g| ring.map_into(g, &rr, &images, &|c| root_map(k, &kr, c))).collect();
    decomp::is_radical(&Ideal::new(rr, gens))
}

/// Whether `x^d - c` with `d` a power of the characteristic (or `d = 1`).
fn purely_inseparable(k: &Field, mp: &[Elem]) -> bool {
    let d = upoly::deg(mp);
    if d <= 1 {
        return true;
    }
    let p = k.characteristic() as i64;
    if p == 0 {
        return false;
    }
    let mut e = d;
    while e % p == 0 {
        e /= p;
    }
    e == 1 && mp[1..mp.len() - 1].iter().all(|c| k.is_zero(c))
}

/// Geometric irreducibility of a prime ideal.
pub fn is_geometrically_irreducible(p: &Ideal) -> Result<bool> {
    if p.is_unit() {
        return Ok(false);
    }
    let ring = p.ring().clone();
    let k = ring.field.clone();
    if p.is_zero() {
        return Ok(true);
    }
    if p.is_zero_dimensional() {
        for v in 0..ring.nvars() {
            if !purely_inseparable(&k, &p.min_poly(&ring.var(v)).unwrap()) {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    // An algebraic coordinate with separable part of degree > 1 rules it out.
    for v in 0..ring.nvars() {
        let others: Vec<usize> = (0..ring.nvars()).filter(|&w| w != v).collect();
        let e = p.eliminate(&others);
        if let Some(g) = e.gb().first() {
            let er = e.ring();
            let mut c = vec![k.zero(); er.degree_in(g, 0).max(0) as usize + 1];
            for (m, x) in &g.terms {
                c[m[0] as usize] = x.clone();
            }
            if !purely_inseparable(&k, &c) {
                return Ok(false);
            }
        }
    }
    let (hring, f) = birational_hypersurface(p)?;
    hypersurface_absolutely_irreducible(&hring, &f)
}

/// A hypersurface `f` in `d + 1` variables birational to `V(p)`.
fn birational_hypersurface(p: &Ideal) -> Result<(Arc<PolyRing>, Poly)> {
    let ring = p.ring().clone();
    let k = ring.field.clone();
    let u = p.max_independent_set();
    let loc = Localization::new(&ring, &u);
    let xp = loc.xp.clone();
    if xp.len() == 1 {
        let g = p.gb();
        if g.len() == 1 {
            return Ok((ring.clone(), g[0].clone()));
        }
    }
    let ext = Ideal::new(loc.kring.clone(), p.gens().iter().map(|g| loc.extend(g)).collect());
    let degree = ext.vector_space_dim().unwrap();
    let mut vars = ring.vars.clone();
    vars.push("_z".into());
    let zr = PolyRing::new(k.clone(), vars, MonomialOrder::GrevLex);
    let z = ring.nvars();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for attempt in 0..30 {
        let mut l = zr.zero();
        for (j, &v) in xp.iter().enumerate() {
            let c = if attempt == 0 { k.from_i64(j as i64 + 1) } else { k.from_i64(rng.gen_range(-5..=5)) };
            l = zr.add(&l, &zr.scale(&zr.var(v), &c));
        }
        let mut gens: Vec<Poly> = p.gens().iter().map(|g| ring.transfer(g, &zr)).collect();
        gens.push(zr.sub(&zr.var(z), &l));
        let e = Ideal::new(zr.clone(), gens).eliminate(&xp);
        let g = e.gb();
        if g.len() != 1 {
            continue;
        }
        let er = e.ring().clone();
        let zi = er.var_index("_z").unwrap();
        if er.degree_in(&g[0], zi) as usize == degree {
            return Ok((er.clone(), g[0].clone()));
        }
    }
    Err(Error::Inconclusive(format!("no birational projection found over {k}")))
}

pub fn hypersurface_absolutely_irreducible(ring: &Arc<PolyRing>, f: &Poly) -> Result<bool> {
    let k = &ring.field;
    let fs = factor_multivariate(ring, f)?;
    if fs.len() != 1 || fs[0].1 != 1 {
        return Ok(false);
    }
    let vars = ring.support_vars(f);
    if vars.len() <= 1 {
        return Ok(upoly_abs_irreducible(ring, f));
    }
    if k.is_finite() {
        return finite_field_absolute(ring, f);
    }
    if vars.len() == 2 {
        return gao_count(ring, f, vars[0], vars[1]).map(|c| c == 1);
    }
    plane_sections(ring, f, &vars)
}

fn upoly_abs_irreducible(ring: &PolyRing, f: &Poly) -> bool {
    // Irreducible univariate polynomials are absolutely irreducible only
    // in degree one or when purely inseparable.
    let v = ring.support_vars(f);
    if v.is_empty() {
        return false;
    }
    let mut c = vec![ring.field.zero(); ring.degree_in(f, v[0]) as usize + 1];
    for (m, x) in &f.terms {
        c[m[v[0]] as usize] = x.clone();
    }
    purely_inseparable(&ring.field, &upoly::monic(&ring.field, &c))
}

/// Over F_q an irreducible `f` stays irreducible over the algebraic closure
/// iff it stays irreducible over F_{q^l} for every prime `l` dividing its
/// total degree.
fn finite_field_absolute(ring: &Arc<PolyRing>, f: &Poly) -> Result<bool> {
    let k = &ring.field;
    let d = ring.total_degree(f) as u64;
    for l in factor::prime_divisors(d) {
        let m = factor::first_irreducible(k, l as usize)?;
        let kl = Field::extension_unchecked(k, m, "_b");
        let rl = PolyRing::new(kl.clone(), ring.vars.clone(), ring.order.clone());
        let images: Vec<Poly> = (0..ring.nvars()).map(|v| rl.var(v)).collect();
        let fl = ring.map_into(f, &rl, &images, &|c| kl.embed(c));
        if factor_multivariate(&rl, &fl)?.len() > 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn gao_applies(k: &Field, m: i64, n: i64) -> bool {
    let p = k.characteristic() as i64;
    p == 0 || p > (2 * m - 1) * n
}

/// Number of absolutely irreducible factors of a squarefree bivariate `f`
/// in variables `x`, `y`: the dimension of the space of `g` with
/// `d/dy (g/f) = d/dx (h/f)`, `deg g <= (m-1, n)`, `deg h <= (m, n-1)`.
pub fn gao_count(ring: &PolyRing, f: &Poly, x: usize, y: usize) -> Result<usize> {
    let k = &ring.field;
    let (mut x, mut y) = (x, y);
    if !coprime_to_derivative(ring, f, x)? {
        std::mem::swap(&mut x, &mut y);
        if !coprime_to_derivative(ring, f, x)? {
            return Err(Error::Inconclusive("polynomial shares a factor with both partial derivatives".into()));
        }
    }
    let m = ring.degree_in(f, x);
    let n = ring.degree_in(f, y);
    if !gao_applies(k, m, n) {
        return Err(Error::Inconclusive(format!("characteristic {} too small for the differential test", k.characteristic())));
    }
    let fx = ring.derivative(f, x);
    let fy = ring.derivative(f, y);
    let mono = |i: i64, j: i64| {
        let mut e = ring.unit_mono();
        e[x] = i as u32;
        e[y] = j as u32;
        ring.monomial(e, k.one())
    };
    let mut cols: Vec<Poly> = Vec::new();
    let mut ng = 0;
    for i in 0..m {
        for j in 0..=n {
            let g = mono(i, j);
            // f g_y - g f_y
            cols.push(ring.sub(&ring.mul(f, &ring.derivative(&g, y)), &ring.mul(&g, &fy)));
            ng += 1;
        }
    }
    for i in 0..=m {
        for j in 0..n {
            let h = mono(i, j);
            // -(f h_x - h f_x)
            cols.push(ring.sub(&ring.mul(&h, &fx), &ring.mul(f, &ring.derivative(&h, x))));
        }
    }
    let mut monos: Vec<Vec<u32>> = cols.iter().flat_map(|c| c.terms.iter().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    let mat: Vec<Vec<Elem>> = monos.iter().map(|mm| cols.iter().map(|c| c.coeff(mm).cloned().unwrap_or_else(|| k.zero())).collect()).collect();
    let ker = linalg::kernel(k, &mat, cols.len());
    let proj: Vec<Vec<Elem>> = ker.iter().map(|v| v[..ng].to_vec()).collect();
    Ok(linalg::rank(k, &proj))
}

fn coprime_to_derivative(ring: &PolyRing, f: &Poly, x: usize) -> Result<bool> {
    let fx = ring.derivative(f, x);
    if fx.is_zero() {
        return Ok(false);
    }
    for (g, mult) in factor_multivariate(ring, f)? {
        if mult > 1 || ring.degree_in(&g, x) <= 0 {
            return Ok(false);
        }
        if ring.field.characteristic() > 0 && ring.derivative(&g, x).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Restrict to random planes that keep the total degree; a section counted
/// as absolutely irreducible certifies the hypersurface.
fn plane_sections(ring: &Arc<PolyRing>, f: &Poly, vars: &[usize]) -> Result<bool> {
    let k = &ring.field;
    let (x, y) = (vars[0], vars[1]);
    let deg = ring.total_degree(f);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    for _ in 0..8 {
        let mut images: Vec<Poly> = (0..ring.nvars()).map(|v| ring.var(v)).collect();
        for &v in &vars[2..] {
            let a = ring.constant(k.from_i64(rng.gen_range(-7..=7)));
            let b = ring.scale(&ring.var(x), &k.from_i64(rng.gen_range(-7..=7)));
            let c = ring.scale(&ring.var(y), &k.from_i64(rng.gen_range(-7..=7)));
            images[v] = ring.add(&a, &ring.add(&b, &c));
        }
        let g = ring.map_into(f, ring, &images, &|c| c.clone());
        if ring.total_degree(&g) != deg {
            continue;
        }
        if let Ok(1) = gao_count(ring, &g, x, y) {
            return Ok(true);
        }
    }
    Err(Error::Inconclusive("no plane section certified absolute irreducibility".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> Arc<PolyRing> {
        PolyRing::with_vars(&Field::Rational, &["x", "y"])
    }

    #[test]
    fn gao_counts_absolute_factors() {
        let r = q2();
        assert_eq!(gao_count(&r, &r.parse("x^2 + y^2").unwrap(), 0, 1).unwrap(), 2);
        assert_eq!(gao_count(&r, &r.parse("y - x^2").unwrap(), 0, 1).unwrap(), 1);
        assert_eq!(gao_count(&r, &r.parse("x^2 + y^2 - 1").unwrap(), 0, 1).unwrap(), 1);
    }

    #[test]
    fn conic_without_points_is_still_geometrically_irreducible() {
        let r = q2();
        let p = Ideal::from_strs(&r, &["x^2 + y^2 + 1"]).unwrap();
        assert!(is_geometrically_irreducible(&p).unwrap());
        let q = Ideal::from_strs(&r, &["x^2 + y^2"]).unwrap();
        assert!(!is_geometrically_irreducible(&q).unwrap());
    }

    #[test]
    fn finite_field_norm_form() {
        // x^2 + y^2 splits over F9 but not over F3.
        let r = PolyRing::with_vars(&Field::Prime(3), &["x", "y"]);
        let p = Ideal::from_strs(&r, &["x^2 + y^2"]).unwrap();
        assert!(!is_geometrically_irreducible(&p).unwrap());
        let q = Ideal::from_strs(&r, &["x^2 + y^2 + 1"]).unwrap();
        assert!(is_geometrically_irreducible(&q).unwrap());
    }

    #[test]
    fn purely_inseparable_point() {
        let k = Field::fractions(&Field::Prime(2), "S");
        let r = PolyRing::with_vars(&k, &["T"]);
        let p = Ideal::from_strs(&r, &["T^2 - S"]).unwrap();
        assert!(is_geometrically_irreducible(&p).unwrap());
        assert!(!is_geometrically_reduced(&p).unwrap());
        let q = Ideal::from_strs(&r, &["T^2 + T + S"]).unwrap();
        assert!(is_geometrically_reduced(&q).unwrap());
        assert!(!is_geometrically_irreducible(&q).unwrap());
    }

    #[test]
    fn positive_dimensional_inseparable() {
        let k = Field::fractions(&Field::Prime(2), "S");
        let r = PolyRing::with_vars(&k, &["x", "y"]);
        let p = Ideal::from_strs(&r, &["x^2 - S*y^2"]).unwrap();
        assert!(!is_geometrically_reduced(&p).unwrap());
    }

    #[test]
    fn space_curve() {
        let r = PolyRing::with_vars(&Field::Rational, &["x", "y", "z"]);
        let p = Ideal::from_strs(&r, &["y - x^2", "z - x^3"]).unwrap();
        assert!(is_geometrically_irreducible(&p).unwrap());
        let q = Ideal::from_strs(&r, &["x^2 - 2", "z - y"]).unwrap();
        assert!(!is_geometrically_irreducible(&q).unwrap());
    }
}
