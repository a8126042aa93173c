//! Sparse multivariate polynomials over a runtime field.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use super::parse;
use crate::arith::field::{Elem, Field};
use crate::error::Result;

pub type Mono = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Consecutive variable blocks, each ordered by grevlex, earlier blocks
    /// dominating later ones.
    Block(Vec<usize>),
}

#[derive(Debug, PartialEq, Eq)]
pub struct PolyRing {
    pub field: Field,
    pub vars: Vec<String>,
    pub order: MonomialOrder,
}

/// Terms sorted by decreasing monomial in the owning ring's order; no zero
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    pub terms: Vec<(Mono, Elem)>,
}

pub fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn mono_mul(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn mono_div(a: &[u32], b: &[u32]) -> Mono {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>, order: MonomialOrder) -> Arc<PolyRing> {
        if let MonomialOrder::Block(b) = &order {
            assert_eq!(b.iter().sum::<usize>(), vars.len(), "block sizes must cover all variables");
        }
        Arc::new(PolyRing { field, vars, order })
    }

    pub fn with_vars(field: &Field, vars: &[&str]) -> Arc<PolyRing> {
        Self::new(field.clone(), vars.iter().map(|s| s.to_string()).collect(), MonomialOrder::GrevLex)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match &self.order {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex_cmp(a, b),
            MonomialOrder::Block(sizes) => {
                let mut s = 0;
                for &n in sizes {
                    let o = grevlex_cmp(&a[s..s + n], &b[s..s + n]);
                    if o != Ordering::Equal {
                        return o;
                    }
                    s += n;
                }
                Ordering::Equal
            }
        }
    }

    /// Same variables and field with another order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<PolyRing> {
        PolyRing::new(self.field.clone(), self.vars.clone(), order)
    }

    pub fn zero(&self) -> Poly {
        Poly::default()
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field.one())
    }

    pub fn unit_mono(&self) -> Mono {
        vec![0; self.nvars()]
    }

    pub fn constant(&self, c: Elem) -> Poly {
        if self.field.is_zero(&c) {
            return Poly::default();
        }
        Poly { terms: vec![(self.unit_mono(), c)] }
    }

    pub fn from_i64(&self, n: i64) -> Poly {
        self.constant(self.field.from_i64(n))
    }

    pub fn var(&self, i: usize) -> Poly {
        let mut m = self.unit_mono();
        m[i] = 1;
        Poly { terms: vec![(m, self.field.one())] }
    }

    pub fn monomial(&self, m: Mono, c: Elem) -> Poly {
        if self.field.is_zero(&c) {
            return Poly::default();
        }
        Poly { terms: vec![(m, c)] }
    }

    /// Build from unsorted terms, combining duplicates.
    pub fn from_terms(&self, terms: Vec<(Mono, Elem)>) -> Poly {
        let k = &self.field;
        let mut acc: HashMap<Mono, Elem> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(x) => *x = k.add(x, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut t: Vec<(Mono, Elem)> = acc.into_iter().filter(|(_, c)| !k.is_zero(c)).collect();
        t.sort_by(|a, b| self.cmp(&b.0, &a.0));
        Poly { terms: t }
    }

    /// Re-sort after an order change.
    pub fn resort(&self, p: &Poly) -> Poly {
        let mut t = p.terms.clone();
        t.sort_by(|a, b| self.cmp(&b.0, &a.0));
        Poly { terms: t }
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let k = &self.field;
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < a.terms.len() && j < b.terms.len() {
            match self.cmp(&a.terms[i].0, &b.terms[j].0) {
                Ordering::Greater => {
                    out.push(a.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = k.add(&a.terms[i].1, &b.terms[j].1);
                    if !k.is_zero(&c) {
                        out.push((a.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a.terms[i..]);
        out.extend_from_slice(&b.terms[j..]);
        Poly { terms: out }
    }

    pub fn neg(&self, a: &Poly) -> Poly {
        Poly { terms: a.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect() }
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Poly, c: &Elem) -> Poly {
        if self.field.is_zero(c) {
            return Poly::default();
        }
        Poly { terms: a.terms.iter().map(|(m, x)| (m.clone(), self.field.mul(x, c))).collect() }
    }

    pub fn mul_term(&self, a: &Poly, m: &[u32], c: &Elem) -> Poly {
        if self.field.is_zero(c) {
            return Poly::default();
        }
        Poly {
            terms: a.terms.iter().map(|(n, x)| (mono_mul(n, m), self.field.mul(x, c))).collect(),
        }
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::default();
        }
        if a.terms.len() == 1 {
            return self.mul_term(b, &a.terms[0].0, &a.terms[0].1);
        }
        if b.terms.len() == 1 {
            return self.mul_term(a, &b.terms[0].0, &b.terms[0].1);
        }
        let k = &self.field;
        let mut acc: HashMap<Mono, Elem> = HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (m, x) in &a.terms {
            for (n, y) in &b.terms {
                let mm = mono_mul(m, n);
                let c = k.mul(x, y);
                match acc.get_mut(&mm) {
                    Some(v) => *v = k.add(v, &c),
                    None => {
                        acc.insert(mm, c);
                    }
                }
            }
        }
        let mut t: Vec<(Mono, Elem)> = acc.into_iter().filter(|(_, c)| !k.is_zero(c)).collect();
        t.sort_by(|a, b| self.cmp(&b.0, &a.0));
        Poly { terms: t }
    }

    pub fn pow(&self, a: &Poly, e: u32) -> Poly {
        let mut r = self.one();
        let mut b = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        match a.terms.first() {
            None => a.clone(),
            Some((_, c)) if self.field.is_one(c) => a.clone(),
            Some((_, c)) => self.scale(a, &self.field.inv(c).unwrap()),
        }
    }

    pub fn is_constant(&self, a: &Poly) -> bool {
        a.terms.is_empty() || (a.terms.len() == 1 && a.terms[0].0.iter().all(|&e| e == 0))
    }

    pub fn total_degree(&self, a: &Poly) -> i64 {
        a.terms.iter().map(|(m, _)| m.iter().map(|&e| e as i64).sum::<i64>()).max().unwrap_or(-1)
    }

    pub fn degree_in(&self, a: &Poly, v: usize) -> i64 {
        a.terms.iter().map(|(m, _)| m[v] as i64).max().unwrap_or(-1)
    }

    /// Variables that occur in `a`.
    pub fn support_vars(&self, a: &Poly) -> Vec<usize> {
        (0..self.nvars()).filter(|&v| a.terms.iter().any(|(m, _)| m[v] > 0)).collect()
    }

    pub fn derivative(&self, a: &Poly, v: usize) -> Poly {
        let k = &self.field;
        let terms = a
            .terms
            .iter()
            .filter(|(m, _)| m[v] > 0)
            .map(|(m, c)| {
                let mut n = m.clone();
                n[v] -= 1;
                (n, k.mul(c, &k.from_i64(m[v] as i64)))
            })
            .collect();
        self.from_terms(terms)
    }

    /// Ring map into `target`: variable `i` goes to `images[i]`, coefficients
    /// through `coef`.
    pub fn map_into(&self, a: &Poly, target: &PolyRing, images: &[Poly], coef: &dyn Fn(&Elem) -> Elem) -> Poly {
        let mut out = target.zero();
        let mut cache: Vec<Vec<Poly>> = vec![Vec::new(); images.len()];
        for (m, c) in &a.terms {
            let mut t = target.constant(coef(c));
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                while powers.len() <= e as usize {
                    let next = if powers.is_empty() {
                        target.one()
                    } else {
                        target.mul(powers.last().unwrap(), &images[i])
                    };
                    powers.push(next);
                }
                t = target.mul(&t, &powers[e as usize]);
            }
            out = target.add(&out, &t);
        }
        out
    }

    /// Move a polynomial into another ring with the same field, matching
    /// variables by name. Panics on a variable missing from `target`.
    pub fn transfer(&self, a: &Poly, target: &PolyRing) -> Poly {
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.var_index(v).unwrap_or_else(|| panic!("variable {v} missing in target ring")))
            .collect();
        let terms = a
            .terms
            .iter()
            .map(|(m, c)| {
                let mut n = target.unit_mono();
                for (i, &e) in m.iter().enumerate() {
                    n[idx[i]] += e;
                }
                (n, c.clone())
            })
            .collect();
        target.from_terms(terms)
    }

    /// Substitute field values for some variables (others kept).
    pub fn eval_vars(&self, a: &Poly, vals: &[(usize, Elem)]) -> Poly {
        let k = &self.field;
        let terms = a
            .terms
            .iter()
            .map(|(m, c)| {
                let mut n = m.clone();
                let mut c = c.clone();
                for (v, x) in vals {
                    c = k.mul(&c, &k.pow(x, m[*v] as u64));
                    n[*v] = 0;
                }
                (n, c)
            })
            .collect();
        self.from_terms(terms)
    }

    pub fn eval_all(&self, a: &Poly, vals: &[Elem]) -> Elem {
        let k = &self.field;
        let mut acc = k.zero();
        for (m, c) in &a.terms {
            let mut t = c.clone();
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = k.mul(&t, &k.pow(&vals[i], e as u64));
                }
            }
            acc = k.add(&acc, &t);
        }
        acc
    }

    pub fn parse(&self, s: &str) -> Result<Poly> {
        parse::parse_poly(self, s)
    }

    pub fn display(&self, a: &Poly) -> String {
        if a.terms.is_empty() {
            return "0".into();
        }
        let k = &self.field;
        let mut s = String::new();
        for (i, (m, c)) in a.terms.iter().enumerate() {
            let mut mono = Vec::new();
            for (v, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => mono.push(self.vars[v].clone()),
                    _ => mono.push(format!("{}^{}", self.vars[v], e)),
                }
            }
            let mono = mono.join("*");
            let (neg, cabs) = if k.is_compound(c) || !k.fmt_elem(c).starts_with('-') {
                (false, c.clone())
            } else {
                (true, k.neg(c))
            };
            let cs = k.fmt_elem(&cabs);
            let cs = if k.is_compound(&cabs) { format!("({cs})") } else { cs };
            let body = if mono.is_empty() {
                cs
            } else if k.is_one(&cabs) {
                mono
            } else {
                format!("{cs}*{mono}")
            };
            if i == 0 {
                if neg {
                    s.push('-');
                }
                s.push_str(&body);
            } else {
                s.push_str(if neg { " - " } else { " + " });
                s.push_str(&body);
            }
        }
        s
    }
}

impl Poly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &Elem {
        &self.terms[0].1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> Option<&Elem> {
        self.terms.iter().find(|(n, _)| n.as_slice() == m).map(|(_, c)| c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let r = PolyRing::with_vars(&Field::Rational, &["x", "y"]);
        let x = r.var(0);
        let y = r.var(1);
        let f = r.sub(&r.mul(&x, &y), &r.one());
        let g = r.mul(&f, &f);
        assert_eq!(r.display(&g), "x^2*y^2 - 2*x*y + 1");
        assert_eq!(r.parse("(x*y-1)^2").unwrap(), g);
    }

    #[test]
    fn grevlex_order() {
        assert_eq!(grevlex_cmp(&[1, 1, 0], &[2, 0, 0]), Ordering::Less);
        assert_eq!(grevlex_cmp(&[0, 0, 2], &[1, 1, 0]), Ordering::Less);
    }
}
