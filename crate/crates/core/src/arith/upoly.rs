//! Dense univariate polynomials over a runtime [`Field`], as coefficient
//! vectors with the constant term first and no trailing zeros.

use super::field::{Elem, Field};

pub fn trim(mut v: Vec<Elem>, k: &Field) -> Vec<Elem> {
    while v.last().is_some_and(|c| k.is_zero(c)) {
        v.pop();
    }
    v
}

/// Degree, with -1 for the zero polynomial.
pub fn deg(a: &[Elem]) -> i64 {
    a.len() as i64 - 1
}

pub fn lc<'a>(a: &'a [Elem]) -> Option<&'a Elem> {
    a.last()
}

pub fn constant(k: &Field, c: Elem) -> Vec<Elem> {
    trim(vec![c], k)
}

pub fn x_pow(k: &Field, n: usize) -> Vec<Elem> {
    let mut v = vec![k.zero(); n + 1];
    v[n] = k.one();
    v
}

pub fn add(k: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => out.push(k.add(x, y)),
            (Some(x), None) => out.push(x.clone()),
            (None, Some(y)) => out.push(y.clone()),
            _ => unreachable!(),
        }
    }
    trim(out, k)
}

pub fn neg(k: &Field, a: &[Elem]) -> Vec<Elem> {
    a.iter().map(|c| k.neg(c)).collect()
}

pub fn sub(k: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    add(k, a, &neg(k, b))
}

pub fn scale(k: &Field, a: &[Elem], c: &Elem) -> Vec<Elem> {
    if k.is_zero(c) {
        return vec![];
    }
    trim(a.iter().map(|x| k.mul(x, c)).collect(), k)
}

pub fn mul(k: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(out, k)
}

/// Shift by `x^n`.
pub fn shift(k: &Field, a: &[Elem], n: usize) -> Vec<Elem> {
    if a.is_empty() {
        return vec![];
    }
    let mut v = vec![k.zero(); n];
    v.extend_from_slice(a);
    v
}

pub fn divrem(k: &Field, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    if a.len() < b.len() {
        return (vec![], a.to_vec());
    }
    let inv = k.inv(b.last().unwrap()).unwrap();
    let mut r = a.to_vec();
    let mut q = vec![k.zero(); a.len() - b.len() + 1];
    let db = b.len() - 1;
    while r.len() >= b.len() {
        let s = r.len() - 1 - db;
        let c = k.mul(r.last().unwrap(), &inv);
        for (j, y) in b.iter().enumerate() {
            r[s + j] = k.sub(&r[s + j], &k.mul(&c, y));
        }
        q[s] = c;
        r.pop();
        r = trim(r, k);
    }
    (trim(q, k), r)
}

pub fn rem(k: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    divrem(k, a, b).1
}

pub fn exact_div(k: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let (q, r) = divrem(k, a, b);
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

pub fn divides(k: &Field, b: &[Elem], a: &[Elem]) -> bool {
    rem(k, a, b).is_empty()
}

pub fn monic(k: &Field, a: &[Elem]) -> Vec<Elem> {
    let a = trim(a.to_vec(), k);
    match a.last() {
        None => a,
        Some(c) if k.is_one(c) => a,
        Some(c) => {
            let i = k.inv(c).unwrap();
            scale(k, &a, &i)
        }
    }
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn gcd(k: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut x = trim(a.to_vec(), k);
    let mut y = trim(b.to_vec(), k);
    while !y.is_empty() {
        let r = rem(k, &x, &y);
        x = y;
        y = r;
    }
    monic(k, &x)
}

/// `(g, s, t)` with `s a + t b = g` and `g` the monic gcd.
pub fn xgcd(k: &Field, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>, Vec<Elem>) {
    let mut r0 = trim(a.to_vec(), k);
    let mut r1 = trim(b.to_vec(), k);
    let mut s0 = vec![k.one()];
    let mut s1: Vec<Elem> = vec![];
    let mut t0: Vec<Elem> = vec![];
    let mut t1 = vec![k.one()];
    while !r1.is_empty() {
        let (q, r) = divrem(k, &r0, &r1);
        let s2 = sub(k, &s0, &mul(k, &q, &s1));
        let t2 = sub(k, &t0, &mul(k, &q, &t1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    if let Some(c) = r0.last().cloned() {
        let i = k.inv(&c).unwrap();
        (scale(k, &r0, &i), scale(k, &s0, &i), scale(k, &t0, &i))
    } else {
        (r0, s0, t0)
    }
}

pub fn derivative(k: &Field, a: &[Elem]) -> Vec<Elem> {
    if a.len() <= 1 {
        return vec![];
    }
    trim(
        a.iter().enumerate().skip(1).map(|(i, c)| k.mul(&k.from_i64(i as i64), c)).collect(),
        k,
    )
}

pub fn eval(k: &Field, a: &[Elem], x: &Elem) -> Elem {
    let mut acc = k.zero();
    for c in a.iter().rev() {
        acc = k.add(&k.mul(&acc, x), c);
    }
    acc
}

/// `a(b(x))`.
pub fn compose(k: &Field, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut acc: Vec<Elem> = vec![];
    for c in a.iter().rev() {
        acc = add(k, &mul(k, &acc, b), &constant(k, c.clone()));
    }
    acc
}

/// `a^e mod m`.
pub fn pow_mod(k: &Field, a: &[Elem], e: &num_bigint::BigUint, m: &[Elem]) -> Vec<Elem> {
    let mut r = rem(k, &[k.one()], m);
    let mut b = rem(k, a, m);
    let bits = e.bits();
    for i in 0..bits {
        if e.bit(i) {
            r = rem(k, &mul(k, &r, &b), m);
        }
        if i + 1 < bits {
            b = rem(k, &mul(k, &b, &b), m);
        }
    }
    r
}

pub fn pow(k: &Field, a: &[Elem], e: usize) -> Vec<Elem> {
    let mut r = vec![k.one()];
    for _ in 0..e {
        r = mul(k, &r, a);
    }
    r
}

/// Map coefficients through a field homomorphism.
pub fn map(a: &[Elem], to: &Field, f: impl Fn(&Elem) -> Elem) -> Vec<Elem> {
    trim(a.iter().map(f).collect(), to)
}

pub fn display(k: &Field, a: &[Elem], var: &str) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut parts: Vec<String> = Vec::new();
    for (i, c) in a.iter().enumerate().rev() {
        if k.is_zero(c) {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let cs = k.fmt_elem(c);
        let term = if mono.is_empty() {
            if k.is_compound(c) { format!("({cs})") } else { cs }
        } else if k.is_one(c) {
            mono
        } else if k.is_one(&k.neg(c)) {
            format!("-{mono}")
        } else if k.is_compound(c) {
            format!("({cs})*{mono}")
        } else {
            format!("{cs}*{mono}")
        };
        parts.push(term);
    }
    let mut s = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            s.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            s.push_str(" - ");
            s.push_str(rest);
        } else {
            s.push_str(" + ");
            s.push_str(p);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(k: &Field, c: &[i64]) -> Vec<Elem> {
        trim(c.iter().map(|&x| k.from_i64(x)).collect(), k)
    }

    #[test]
    fn xgcd_identity_over_q() {
        let k = Field::Rational;
        let a = p(&k, &[-1, 0, 1]);
        let b = p(&k, &[1, 1]);
        let (g, s, t) = xgcd(&k, &a, &b);
        assert_eq!(g, p(&k, &[1, 1]));
        assert_eq!(add(&k, &mul(&k, &s, &a), &mul(&k, &t, &b)), g);
    }

    #[test]
    fn divrem_reconstructs() {
        let k = Field::Prime(5);
        let a = p(&k, &[1, 2, 3, 4, 1]);
        let b = p(&k, &[2, 0, 3]);
        let (q, r) = divrem(&k, &a, &b);
        assert_eq!(add(&k, &mul(&k, &q, &b), &r), a);
        assert!(deg(&r) < deg(&b));
    }

    #[test]
    fn display_signs() {
        let k = Field::Rational;
        assert_eq!(display(&k, &p(&k, &[0, -1, 1]), "T"), "T^2 - T");
    }
}
