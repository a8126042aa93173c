//! Multivariate factorization by Kronecker substitution and trial division,
//! plus the flattening of rational-function coefficients into extra
//! polynomial variables.

use std::collections::HashSet;
use std::sync::Arc;

use super::ideal::div_exact;
use super::mpoly::{MonomialOrder, Poly, PolyRing};
use crate::arith::factor::{self, combinations};
use crate::arith::field::{Elem, Field};
use crate::arith::upoly;
use crate::error::{Error, Result};

/// Irreducible factors with multiplicities; each factor is monic for the
/// ring order. Constants are dropped.
pub fn factor_multivariate(ring: &PolyRing, f: &Poly) -> Result<Vec<(Poly, usize)>> {
    if f.is_zero() {
        return Err(Error::Usage("cannot factor zero".into()));
    }
    if let Field::Frac(_) = ring.field {
        return factor_over_frac_coefficients(ring, f);
    }
    let mut out: Vec<(Poly, usize)> = Vec::new();
    let mut f = ring.monic(f);
    while !ring.is_constant(&f) {
        let g = first_irreducible_factor(ring, &f)?;
        let mut m = 0;
        while let Some(q) = div_exact(ring, &f, &g) {
            f = q;
            m += 1;
        }
        out.push((ring.monic(&g), m));
    }
    out.sort_by(|a, b| ring.display(&a.0).cmp(&ring.display(&b.0)));
    Ok(out)
}

fn kronecker_bases(ring: &PolyRing, f: &Poly) -> Vec<u64> {
    let mut bases = Vec::with_capacity(ring.nvars());
    let mut acc = 1u64;
    for v in 0..ring.nvars() {
        bases.push(acc);
        acc *= (ring.degree_in(f, v).max(0) + 1) as u64;
    }
    bases
}

fn to_kronecker(ring: &PolyRing, f: &Poly, bases: &[u64]) -> Vec<Elem> {
    let k = &ring.field;
    let deg: u64 = f.terms.iter().map(|(m, _)| m.iter().zip(bases).map(|(&e, &b)| e as u64 * b).sum::<u64>()).max().unwrap_or(0);
    let mut v = vec![k.zero(); deg as usize + 1];
    for (m, c) in &f.terms {
        let e: u64 = m.iter().zip(bases).map(|(&e, &b)| e as u64 * b).sum();
        v[e as usize] = k.add(&v[e as usize], c);
    }
    upoly::trim(v, k)
}

fn from_kronecker(ring: &PolyRing, u: &[Elem], bases: &[u64], limits: &[u64]) -> Poly {
    let k = &ring.field;
    let n = ring.nvars();
    let mut terms = Vec::new();
    for (e, c) in u.iter().enumerate() {
        if k.is_zero(c) {
            continue;
        }
        let mut rest = e as u64;
        let mut m = vec![0u32; n];
        for v in (0..n).rev() {
            m[v] = (rest / bases[v]) as u32;
            rest %= bases[v];
        }
        let _ = limits;
        terms.push((m, c.clone()));
    }
    ring.from_terms(terms)
}

fn first_irreducible_factor(ring: &PolyRing, f: &Poly) -> Result<Poly> {
    let k = &ring.field;
    let vars = ring.support_vars(f);
    if vars.len() == 1 {
        // Plain univariate factorization.
        let v = vars[0];
        let mut c = vec![k.zero(); ring.degree_in(f, v) as usize + 1];
        for (m, x) in &f.terms {
            c[m[v] as usize] = x.clone();
        }
        let fs = factor::factor(k, &c)?;
        let g = &fs[0].0;
        let terms = g
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let mut m = ring.unit_mono();
                m[v] = i as u32;
                (m, x.clone())
            })
            .collect();
        return Ok(ring.from_terms(terms));
    }
    let bases = kronecker_bases(ring, f);
    let limits: Vec<u64> = (0..ring.nvars()).map(|v| ring.degree_in(f, v).max(0) as u64).collect();
    let u = to_kronecker(ring, f, &bases);
    let mut pieces: Vec<Vec<Elem>> = Vec::new();
    for (g, m) in factor::factor(k, &u)? {
        for _ in 0..m {
            pieces.push(g.clone());
        }
    }
    let r = pieces.len();
    let mut tried: HashSet<Vec<usize>> = HashSet::new();
    for s in 1..=r / 2 {
        for combo in combinations(r, s) {
            // Skip combinations equal as multisets of factors.
            let key: Vec<usize> = {
                let mut ids: Vec<usize> = combo.iter().map(|&i| pieces.iter().position(|p| *p == pieces[i]).unwrap()).collect();
                ids.sort();
                ids
            };
            if !tried.insert(key) {
                continue;
            }
            let mut prod = vec![k.one()];
            for &i in &combo {
                prod = upoly::mul(k, &prod, &pieces[i]);
            }
            let g = from_kronecker(ring, &prod, &bases, &limits);
            if ring.is_constant(&g) {
                continue;
            }
            let exceeds = (0..ring.nvars()).any(|v| ring.degree_in(&g, v) as u64 > limits[v]);
            if exceeds {
                continue;
            }
            if div_exact(ring, f, &g).is_some() {
                return Ok(g);
            }
        }
    }
    Ok(f.clone())
}

/// Clear one level of rational-function coefficients: a polynomial over
/// `B(u)` becomes a polynomial over `B` with `u` appended as a variable.
/// The result agrees with the input up to a unit of `B(u)`.
pub fn flatten_once(ring: &PolyRing, f: &Poly) -> Result<(Arc<PolyRing>, Poly)> {
    let Field::Frac(ff) = &ring.field else {
        return Err(Error::Usage("flatten_once needs rational-function coefficients".into()));
    };
    let base = &ff.base;
    let mut den = vec![base.one()];
    for (_, c) in &f.terms {
        let Elem::Frac(_, d) = c else { unreachable!() };
        let g = upoly::gcd(base, &den, d);
        den = upoly::mul(base, &den, &upoly::exact_div(base, d, &g));
    }
    let mut vars = ring.vars.clone();
    vars.push(ff.var.clone());
    let flat = PolyRing::new(base.clone(), vars, MonomialOrder::GrevLex);
    let mut terms = Vec::new();
    for (m, c) in &f.terms {
        let Elem::Frac(n, d) = c else { unreachable!() };
        let scaled = upoly::mul(base, n, &upoly::exact_div(base, &den, d));
        for (i, x) in scaled.iter().enumerate() {
            if base.is_zero(x) {
                continue;
            }
            let mut mm = m.clone();
            mm.push(i as u32);
            terms.push((mm, x.clone()));
        }
    }
    let p = flat.from_terms(terms);
    Ok((flat, p))
}

/// Embed an element of a field lower in the tower of `top`.
pub fn embed_from(top: &Field, level: &Field, e: &Elem) -> Elem {
    if top == level {
        return e.clone();
    }
    let b = top.base().expect("level lies in the tower");
    top.embed(&embed_from(b, level, e))
}

/// Flatten all rational-function levels; the returned ring is over the
/// innermost non-fraction field and carries the parameters as trailing
/// variables (outermost first).
pub fn flatten_all(ring: &PolyRing, f: &Poly) -> Result<(Arc<PolyRing>, Poly)> {
    let mut r = Arc::new(PolyRing { field: ring.field.clone(), vars: ring.vars.clone(), order: ring.order.clone() });
    let mut p = f.clone();
    while let Field::Frac(_) = r.field {
        let (nr, np) = flatten_once(&r, &p)?;
        r = nr;
        p = np;
    }
    Ok((r, p))
}

/// Map a flattened polynomial back to `ring` (whose field is the tower top).
pub fn unflatten(flat: &PolyRing, g: &Poly, ring: &Arc<PolyRing>) -> Poly {
    let top = &ring.field;
    let mut images: Vec<Poly> = (0..ring.nvars()).map(|i| ring.var(i)).collect();
    let mut level = top.clone();
    while let Field::Frac(_) = level {
        images.push(ring.constant(embed_from(top, &level, &level.generator().unwrap())));
        level = level.base().unwrap().clone();
    }
    let inner = level;
    flat.map_into(g, ring, &images, &|c| embed_from(top, &inner, c))
}

fn factor_over_frac_coefficients(ring: &PolyRing, f: &Poly) -> Result<Vec<(Poly, usize)>> {
    let target = Arc::new(PolyRing { field: ring.field.clone(), vars: ring.vars.clone(), order: ring.order.clone() });
    let (flat, p) = flatten_all(ring, f)?;
    let n = ring.nvars();
    let mut out = Vec::new();
    for (g, m) in factor_multivariate(&flat, &p)? {
        let involves_main = g.terms.iter().any(|(mm, _)| mm[..n].iter().any(|&e| e > 0));
        if !involves_main {
            continue;
        }
        let back = unflatten(&flat, &g, &target);
        out.push((ring.monic(&ring.resort(&back)), m));
    }
    out.sort_by(|a, b| ring.display(&a.0).cmp(&ring.display(&b.0)));
    Ok(out)
}

/// Univariate factorization over a rational function field.
pub fn factor_over_function_field(k: &Field, f: &[Elem]) -> Result<factor::Factors> {
    let ring = PolyRing::with_vars(k, &["_x"]);
    let terms = f.iter().enumerate().map(|(i, c)| (vec![i as u32], c.clone())).collect();
    let p = ring.from_terms(terms);
    let mut out = Vec::new();
    for (g, m) in factor_multivariate(&ring, &p)? {
        let mut c = vec![k.zero(); ring.degree_in(&g, 0) as usize + 1];
        for (mm, x) in &g.terms {
            c[mm[0] as usize] = x.clone();
        }
        out.push((upoly::monic(k, &c), m));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_difference_of_squares_over_q() {
        let r = PolyRing::with_vars(&Field::Rational, &["x", "y"]);
        let f = r.parse("x^2 - y^2").unwrap();
        let fs = factor_multivariate(&r, &f).unwrap();
        assert_eq!(fs.len(), 2);
    }

    #[test]
    fn irreducible_over_f2_function_field() {
        let k = Field::fractions(&Field::Prime(2), "S");
        let r = PolyRing::with_vars(&k, &["T"]);
        let f = r.parse("T^2 - S").unwrap();
        let fs = factor_multivariate(&r, &f).unwrap();
        assert_eq!(fs.len(), 1);
        let g = r.parse("T^2 - S^2").unwrap();
        let gs = factor_multivariate(&r, &g).unwrap();
        assert_eq!(gs, vec![(r.parse("T + S").unwrap(), 2)]);
    }

    #[test]
    fn factor_with_repeated_and_three_vars() {
        let r = PolyRing::with_vars(&Field::Prime(3), &["x", "y", "z"]);
        let f = r.parse("(x*y - z)^2 * (x + y + z + 1)").unwrap();
        let fs = factor_multivariate(&r, &f).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().any(|(_, m)| *m == 2));
    }
}
