//! Univariate factorization: Cantor-Zassenhaus over finite fields,
//! Zassenhaus with Hensel lifting over Q, Trager's norm method over
//! algebraic extensions. Rational function fields are handed to the
//! multivariate factorizer.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::field::{Elem, Field, Rat};
use super::linalg;
use super::upoly;
use crate::error::{Error, Result};

/// Monic irreducible factors with multiplicities.
pub type Factors = Vec<(Vec<Elem>, usize)>;

const SEED: u64 = 0x6772_6164;

pub fn factor(k: &Field, f: &[Elem]) -> Result<Factors> {
    let f = upoly::trim(f.to_vec(), k);
    if f.is_empty() {
        return Err(Error::Usage("cannot factor the zero polynomial".into()));
    }
    if upoly::deg(&f) == 0 {
        return Ok(vec![]);
    }
    let mut out = match k {
        Field::Prime(_) => factor_finite(k, &f),
        Field::Ext(_) if k.is_finite() => factor_finite(k, &f),
        Field::Rational => factor_rational(&f),
        Field::Ext(e) => {
            if e.base.characteristic() != 0 {
                return Err(Error::Unsupported(format!("factorization over {k}")));
            }
            factor_trager(k, &f)?
        }
        Field::Frac(_) => crate::poly::mfactor::factor_over_function_field(k, &f)?,
    };
    sort_factors(k, &mut out);
    Ok(out)
}

pub fn sort_factors(k: &Field, fs: &mut Factors) {
    fs.sort_by(|a, b| {
        upoly::deg(&a.0)
            .cmp(&upoly::deg(&b.0))
            .then_with(|| upoly::display(k, &a.0, "x").cmp(&upoly::display(k, &b.0, "x")))
            .then(a.1.cmp(&b.1))
    });
}

pub fn is_irreducible(k: &Field, f: &[Elem]) -> Result<bool> {
    let f = upoly::monic(k, f);
    if upoly::deg(&f) < 1 {
        return Ok(false);
    }
    if upoly::deg(&f) == 1 {
        return Ok(true);
    }
    if k.is_finite() {
        return Ok(rabin_irreducible(k, &f));
    }
    let fs = factor(k, &f)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

pub fn is_separable(k: &Field, f: &[Elem]) -> bool {
    let d = upoly::derivative(k, f);
    upoly::deg(&upoly::gcd(k, f, &d)) == 0
}

/// Squarefree decomposition. Exact over perfect fields; over imperfect
/// fields it goes through full factorization.
pub fn squarefree_decomposition(k: &Field, f: &[Elem]) -> Result<Factors> {
    if !k.is_perfect() {
        let fs = factor(k, f)?;
        let mut by_mult: std::collections::BTreeMap<usize, Vec<Elem>> = Default::default();
        for (g, m) in fs {
            let e = by_mult.entry(m).or_insert_with(|| vec![k.one()]);
            *e = upoly::mul(k, e, &g);
        }
        return Ok(by_mult.into_iter().map(|(m, g)| (g, m)).collect());
    }
    Ok(sqf_perfect(k, &upoly::monic(k, f)))
}

pub fn squarefree_part(k: &Field, f: &[Elem]) -> Result<Vec<Elem>> {
    let mut r = vec![k.one()];
    for (g, _) in squarefree_decomposition(k, f)? {
        r = upoly::mul(k, &r, &g);
    }
    Ok(r)
}

fn sqf_perfect(k: &Field, f: &[Elem]) -> Factors {
    let mut out = Vec::new();
    if upoly::deg(f) <= 0 {
        return out;
    }
    let p = k.characteristic();
    let d = upoly::derivative(k, f);
    if d.is_empty() {
        let h = pth_root_poly(k, f).expect("perfect field");
        for (g, m) in sqf_perfect(k, &h) {
            out.push((g, m * p as usize));
        }
        return out;
    }
    let mut c = upoly::gcd(k, f, &d);
    let mut w = upoly::exact_div(k, f, &c);
    let mut i = 1;
    while upoly::deg(&w) > 0 {
        let y = upoly::gcd(k, &w, &c);
        let z = upoly::exact_div(k, &w, &y);
        if upoly::deg(&z) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = upoly::exact_div(k, &c, &y);
        w = y;
    }
    if upoly::deg(&c) > 0 {
        let h = pth_root_poly(k, &c).expect("remaining cofactor is a p-th power");
        for (g, m) in sqf_perfect(k, &h) {
            out.push((g, m * p as usize));
        }
    }
    out
}

/// `h` with `h^p = f`, when the coefficients allow it.
pub fn pth_root_poly(k: &Field, f: &[Elem]) -> Option<Vec<Elem>> {
    let p = k.characteristic() as usize;
    if p == 0 {
        return None;
    }
    let mut out = Vec::new();
    for (i, c) in f.iter().enumerate() {
        if i % p == 0 {
            out.push(k.pth_root(c)?);
        } else if !k.is_zero(c) {
            return None;
        }
    }
    Some(upoly::trim(out, k))
}

pub fn roots(k: &Field, f: &[Elem]) -> Result<Vec<Elem>> {
    Ok(factor(k, f)?
        .into_iter()
        .filter(|(g, _)| upoly::deg(g) == 1)
        .map(|(g, _)| k.neg(&g[0]))
        .collect())
}

// ---------- finite fields ----------

fn factor_finite(k: &Field, f: &[Elem]) -> Factors {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for (g, m) in sqf_perfect(k, &upoly::monic(k, f)) {
        for (h, d) in ddf(k, &g) {
            for e in edf(k, &h, d, &mut rng) {
                out.push((e, m));
            }
        }
    }
    out
}

fn x_poly(k: &Field) -> Vec<Elem> {
    vec![k.zero(), k.one()]
}

fn ddf(k: &Field, f: &[Elem]) -> Vec<(Vec<Elem>, usize)> {
    let q = k.order().unwrap();
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let mut h = x_poly(k);
    let mut i = 1;
    while 2 * i as i64 <= upoly::deg(&f) {
        h = upoly::pow_mod(k, &h, &q, &f);
        let g = upoly::gcd(k, &upoly::sub(k, &h, &x_poly(k)), &f);
        if upoly::deg(&g) > 0 {
            f = upoly::exact_div(k, &f, &g);
            h = upoly::rem(k, &h, &f);
            out.push((g, i));
        }
        i += 1;
    }
    if upoly::deg(&f) > 0 {
        let d = upoly::deg(&f) as usize;
        out.push((f, d));
    }
    out
}

fn edf(k: &Field, f: &[Elem], d: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Elem>> {
    let n = upoly::deg(f) as usize;
    if n == d {
        return vec![f.to_vec()];
    }
    let q = k.order().unwrap();
    let p = k.characteristic();
    loop {
        let a: Vec<Elem> = upoly::trim((0..n).map(|_| k.random(rng)).collect(), k);
        if upoly::deg(&a) < 1 {
            continue;
        }
        let b = if p == 2 {
            // Absolute trace of F_{q^d} over F_2.
            let e = (q.bits() - 1) as usize * d;
            let mut t = upoly::rem(k, &a, f);
            let mut s = t.clone();
            for _ in 1..e {
                t = upoly::rem(k, &upoly::mul(k, &t, &t), f);
                s = upoly::add(k, &s, &t);
            }
            s
        } else {
            let e = (num_traits::pow(q.clone(), d) - BigUint::one()) / BigUint::from(2u32);
            upoly::sub(k, &upoly::pow_mod(k, &a, &e, f), &[k.one()])
        };
        let g = upoly::gcd(k, &b, f);
        if upoly::deg(&g) > 0 && upoly::deg(&g) < n as i64 {
            let h = upoly::exact_div(k, f, &g);
            let mut out = edf(k, &g, d, rng);
            out.extend(edf(k, &upoly::monic(k, &h), d, rng));
            return out;
        }
    }
}

fn rabin_irreducible(k: &Field, f: &[Elem]) -> bool {
    let n = upoly::deg(f) as usize;
    let q = k.order().unwrap();
    let xq = |m: usize| {
        let mut h = x_poly(k);
        for _ in 0..m {
            h = upoly::pow_mod(k, &h, &q, f);
        }
        h
    };
    if upoly::sub(k, &xq(n), &upoly::rem(k, &x_poly(k), f)).len() > 0 {
        return false;
    }
    for l in prime_divisors(n as u64) {
        let h = xq(n / l as usize);
        if upoly::deg(&upoly::gcd(k, &upoly::sub(k, &h, &x_poly(k)), f)) > 0 {
            return false;
        }
    }
    true
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// First monic irreducible polynomial of degree `d` over a finite field,
/// in the order of coefficient indices.
pub fn first_irreducible(k: &Field, d: usize) -> Result<Vec<Elem>> {
    let q = k.order_u64().ok_or_else(|| Error::Usage("finite field required".into()))?;
    let total = q.checked_pow(d as u32).ok_or_else(|| Error::Unsupported("field too large".into()))?;
    for idx in 0..total {
        let mut c = Vec::with_capacity(d + 1);
        let mut i = idx;
        for _ in 0..d {
            c.push(k.element_from_index(i % q));
            i /= q;
        }
        c.push(k.one());
        if rabin_irreducible(k, &c) {
            return Ok(c);
        }
    }
    Err(Error::Usage(format!("no irreducible polynomial of degree {d}")))
}

// ---------- rationals ----------

type ZPoly = Vec<BigInt>;

fn to_zpoly(f: &[Elem]) -> ZPoly {
    let mut den = BigInt::one();
    for c in f {
        if let Elem::Q(r) = c {
            den = den.lcm(r.denom());
        }
    }
    let v: ZPoly = f
        .iter()
        .map(|c| match c {
            Elem::Q(r) => r.numer() * (&den / r.denom()),
            _ => unreachable!(),
        })
        .collect();
    primitive(&v)
}

fn content(f: &ZPoly) -> BigInt {
    f.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(f: &ZPoly) -> ZPoly {
    let c = content(f);
    if c.is_zero() {
        return f.clone();
    }
    let sign = if f.last().is_some_and(|x| x.is_negative()) { -BigInt::one() } else { BigInt::one() };
    f.iter().map(|x| x / &c * &sign).collect()
}

fn z_to_q(f: &ZPoly) -> Vec<Elem> {
    f.iter().map(|c| Elem::Q(Rat::from_integer(c.clone()))).collect()
}

fn z_to_p(f: &ZPoly, p: u64) -> Vec<Elem> {
    let k = Field::Prime(p);
    upoly::trim(f.iter().map(|c| k.from_bigint(c)).collect(), &k)
}

fn p_to_z(f: &[Elem]) -> ZPoly {
    f.iter()
        .map(|c| match c {
            Elem::P(x) => BigInt::from(*x),
            _ => unreachable!(),
        })
        .collect()
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn zmods(f: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut v: ZPoly = f
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half { r - m } else { r }
        })
        .collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Exact quotient over Z, if `b` divides `a`.
fn zdiv(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let k = Field::Rational;
    let (q, r) = upoly::divrem(&k, &z_to_q(a), &z_to_q(b));
    if !r.is_empty() {
        return None;
    }
    q.iter()
        .map(|c| match c {
            Elem::Q(r) if r.is_integer() => Some(r.numer().clone()),
            _ => None,
        })
        .collect()
}

fn factor_rational(f: &[Elem]) -> Factors {
    let k = Field::Rational;
    let mut out = Vec::new();
    for (g, m) in sqf_perfect(&k, &upoly::monic(&k, f)) {
        for h in zassenhaus(&to_zpoly(&g)) {
            out.push((upoly::monic(&k, &z_to_q(&h)), m));
        }
    }
    out
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| super::field::is_prime_u64(n))
}

fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();
    // Pick a prime with squarefree reduction and few modular factors.
    let mut best: Option<(u64, Vec<Vec<Elem>>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = z_to_p(f, p);
        let k = Field::Prime(p);
        if upoly::deg(&fp) as usize != n || !is_separable(&k, &fp) {
            continue;
        }
        let facs: Vec<Vec<Elem>> = factor_finite(&k, &fp).into_iter().map(|(g, _)| g).collect();
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 4 {
            break;
        }
    }
    let (p, facs) = best.expect("a good prime exists");
    if facs.len() == 1 {
        return vec![f.clone()];
    }
    let maxc = f.iter().map(|c| c.abs()).max().unwrap();
    let bound = lc.abs() * (BigInt::one() << n) * BigInt::from(n + 1) * maxc * 2;
    let pb = BigInt::from(p);
    let mut e = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        e += 1;
    }
    let lifted = hensel_multi(f, &facs, p, e);
    recombine(f, lifted, &m)
}

/// Lift `f = lc * prod(facs)` mod p to mod p^e; factors stay monic.
fn hensel_multi(f: &ZPoly, facs: &[Vec<Elem>], p: u64, e: u32) -> Vec<ZPoly> {
    let k = Field::Prime(p);
    let m = num_traits::pow(BigInt::from(p), e as usize);
    let mut out = Vec::new();
    let mut cur = f.clone();
    for i in 0..facs.len() - 1 {
        let a = facs[i].clone();
        let mut b = vec![k.from_bigint(cur.last().unwrap())];
        for g in &facs[i + 1..] {
            b = upoly::mul(&k, &b, g);
        }
        let (aa, bb) = hensel_two(&cur, &a, &b, p, e);
        out.push(aa);
        cur = zmods(&bb, &m);
    }
    out.push(primitive_monic_mod(&cur, &m));
    out
}

fn primitive_monic_mod(f: &ZPoly, m: &BigInt) -> ZPoly {
    let lc = f.last().unwrap().clone();
    let inv = mod_inverse(&lc, m);
    zmods(&f.iter().map(|c| c * &inv).collect(), m)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    e.x.mod_floor(m)
}

fn hensel_two(f: &ZPoly, a: &[Elem], b: &[Elem], p: u64, e: u32) -> (ZPoly, ZPoly) {
    let k = Field::Prime(p);
    let (_, s, t) = upoly::xgcd(&k, a, b);
    let pb = BigInt::from(p);
    let mut aa = p_to_z(a);
    let mut bb = p_to_z(b);
    let mut pj = pb.clone();
    for _ in 1..e {
        let prod = zmul(&aa, &bb);
        let n = f.len().max(prod.len());
        let diff: ZPoly = (0..n)
            .map(|i| f.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default())
            .collect();
        let ebar: Vec<Elem> =
            upoly::trim(diff.iter().map(|c| k.from_bigint(&(c / &pj))).collect(), &k);
        let (q, r) = upoly::divrem(&k, &upoly::mul(&k, &ebar, &t), a);
        let db = upoly::add(&k, &upoly::mul(&k, &ebar, &s), &upoly::mul(&k, &q, b));
        let da = r;
        for (i, c) in p_to_z(&da).into_iter().enumerate() {
            if i >= aa.len() {
                aa.push(BigInt::zero());
            }
            aa[i] += &pj * c;
        }
        for (i, c) in p_to_z(&db).into_iter().enumerate() {
            if i >= bb.len() {
                bb.push(BigInt::zero());
            }
            bb[i] += &pj * c;
        }
        pj *= &pb;
    }
    (zmods(&aa, &pj), zmods(&bb, &pj))
}

fn recombine(f: &ZPoly, lifted: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let mut f = f.clone();
    let mut rem: Vec<ZPoly> = lifted;
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= rem.len() {
        let mut found = None;
        for combo in combinations(rem.len(), s) {
            let lc = f.last().unwrap().clone();
            let mut g: ZPoly = vec![lc];
            for &i in &combo {
                g = zmods(&zmul(&g, &rem[i]), m);
            }
            let g = primitive(&g);
            if let Some(q) = zdiv(&f, &g) {
                found = Some((combo, g, q));
                break;
            }
        }
        match found {
            Some((combo, g, q)) => {
                out.push(g);
                f = q;
                rem = rem.into_iter().enumerate().filter(|(i, _)| !combo.contains(i)).map(|(_, x)| x).collect();
            }
            None => s += 1,
        }
    }
    if f.len() > 1 {
        out.push(primitive(&f));
    }
    out
}

pub fn combinations(n: usize, s: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    go(0, n, s, &mut cur, &mut out);
    out
}

// ---------- algebraic extensions ----------

/// Norm from an extension field to its base.
pub fn ext_norm(k: &Field, a: &Elem) -> Elem {
    let Field::Ext(e) = k else { return a.clone() };
    let d = k.ext_degree();
    let alpha = k.generator().unwrap();
    let mut cols = Vec::with_capacity(d);
    let mut basis = k.one();
    for _ in 0..d {
        cols.push(k.coords(&k.mul(a, &basis)));
        basis = k.mul(&basis, &alpha);
    }
    linalg::det(&e.base, &linalg::transpose(&cols))
}

fn interpolate(k: &Field, xs: &[Elem], ys: &[Elem]) -> Vec<Elem> {
    let n = xs.len();
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = k.sub(&coef[i], &coef[i - 1]);
            let den = k.sub(&xs[i], &xs[i - j]);
            coef[i] = k.div(&num, &den).unwrap();
        }
    }
    let mut p: Vec<Elem> = vec![];
    for i in (0..n).rev() {
        p = upoly::mul(k, &p, &[k.neg(&xs[i]), k.one()]);
        p = upoly::add(k, &p, &upoly::constant(k, coef[i].clone()));
    }
    p
}

fn poly_norm(k: &Field, g: &[Elem]) -> Vec<Elem> {
    let Field::Ext(e) = k else { unreachable!() };
    let base = &e.base;
    let d = upoly::deg(g) as usize * k.ext_degree();
    let xs: Vec<Elem> = (0..=d as i64).map(|i| base.from_i64(i)).collect();
    let ys: Vec<Elem> = xs.iter().map(|x| ext_norm(k, &upoly::eval(k, g, &k.embed(x)))).collect();
    interpolate(base, &xs, &ys)
}

fn factor_trager(k: &Field, f: &[Elem]) -> Result<Factors> {
    let mut out = Vec::new();
    for (g, m) in sqf_perfect(k, &upoly::monic(k, f)) {
        for h in trager_squarefree(k, &g)? {
            out.push((h, m));
        }
    }
    Ok(out)
}

fn trager_squarefree(k: &Field, g: &[Elem]) -> Result<Vec<Vec<Elem>>> {
    if upoly::deg(g) <= 1 {
        return Ok(vec![g.to_vec()]);
    }
    let Field::Ext(e) = k else { unreachable!() };
    let alpha = k.generator()?;
    for s in [0i64, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 7, -7] {
        let sa = k.mul(&k.from_i64(s), &alpha);
        let shift = vec![k.neg(&sa), k.one()];
        let gs = upoly::compose(k, g, &shift);
        let n = poly_norm(k, &gs);
        if !is_separable(&e.base, &n) {
            continue;
        }
        let mut out = Vec::new();
        for (ni, _) in factor(&e.base, &n)? {
            let ni_k: Vec<Elem> = ni.iter().map(|c| k.embed(c)).collect();
            let h = upoly::gcd(k, &gs, &ni_k);
            if upoly::deg(&h) > 0 {
                let back = upoly::compose(k, &h, &[sa.clone(), k.one()]);
                out.push(upoly::monic(k, &back));
            }
        }
        return Ok(out);
    }
    Err(Error::Unsupported("no squarefree norm found".into()))
}

/// Integer value of a small prime-field or rational element (helpers for tests).
pub fn elem_to_i64(a: &Elem) -> Option<i64> {
    match a {
        Elem::P(x) => Some(*x as i64),
        Elem::Q(r) if r.is_integer() => r.numer().to_i64(),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: &Field, c: &[i64]) -> Vec<Elem> {
        upoly::trim(c.iter().map(|&x| k.from_i64(x)).collect(), k)
    }

    fn product(k: &Field, fs: &Factors) -> Vec<Elem> {
        let mut r = vec![k.one()];
        for (g, m) in fs {
            for _ in 0..*m {
                r = upoly::mul(k, &r, g);
            }
        }
        r
    }

    #[test]
    fn factor_over_f3() {
        let k = Field::Prime(3);
        // (x^2+1)(x+1)^2 over F3
        let f = upoly::mul(&k, &p(&k, &[1, 0, 1]), &upoly::pow(&k, &p(&k, &[1, 1]), 2));
        let fs = factor(&k, &f).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&k, &fs), f);
    }

    #[test]
    fn factor_over_f2_high_degree() {
        let k = Field::Prime(2);
        let f = p(&k, &[0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]); // x^16 + x
        let fs = factor(&k, &f).unwrap();
        assert_eq!(product(&k, &fs), f);
        assert!(fs.iter().all(|(g, m)| *m == 1 && [1, 2, 4].contains(&upoly::deg(g))));
    }

    #[test]
    fn factor_over_q_swinnerton_dyer_like() {
        let k = Field::Rational;
        // x^4 - 10x^2 + 1 is irreducible over Q but splits mod every prime
        let f = p(&k, &[1, 0, -10, 0, 1]);
        assert_eq!(factor(&k, &f).unwrap().len(), 1);
        let g = upoly::mul(&k, &p(&k, &[-2, 0, 1]), &p(&k, &[1, 1, 0, 2]));
        let fs = factor(&k, &g).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(upoly::monic(&k, &product(&k, &fs)), upoly::monic(&k, &g));
    }

    #[test]
    fn factor_over_gaussian_rationals() {
        let q = Field::Rational;
        let k = Field::extension(&q, &p(&q, &[1, 0, 1]), "i").unwrap();
        let f = p(&k, &[1, 0, 1]);
        let fs = factor(&k, &f).unwrap();
        assert_eq!(fs.len(), 2);
        let f2 = p(&k, &[-2, 0, 1]);
        assert_eq!(factor(&k, &f2).unwrap().len(), 1);
    }

    #[test]
    fn first_irreducible_quadratic_f3() {
        let k = Field::Prime(3);
        let m = first_irreducible(&k, 2).unwrap();
        assert!(is_irreducible(&k, &m).unwrap());
    }
}
