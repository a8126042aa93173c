//! Fields described at runtime: the rationals, prime fields, simple algebraic
//! extensions and rational function fields, nested freely.

use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use super::upoly;
use crate::error::{Error, Result};

pub type Rat = BigRational;

#[derive(Clone, Debug)]
pub enum Field {
    Rational,
    Prime(u64),
    Ext(Arc<ExtField>),
    Frac(Arc<FracField>),
}

/// `base[x]/(modulus)` with `modulus` monic irreducible.
#[derive(Debug)]
pub struct ExtField {
    pub base: Field,
    pub modulus: Vec<Elem>,
    pub name: String,
}

/// `base(var)`.
#[derive(Debug)]
pub struct FracField {
    pub base: Field,
    pub var: String,
}

/// Field element. The variant always matches the owning [`Field`].
/// `Ext` holds reduced coefficients (low degree first, trimmed);
/// `Frac` holds a coprime pair with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Q(Rat),
    P(u64),
    Ext(Vec<Elem>),
    Frac(Vec<Elem>, Vec<Elem>),
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Field::Rational, Field::Rational) => true,
            (Field::Prime(p), Field::Prime(q)) => p == q,
            (Field::Ext(a), Field::Ext(b)) => {
                Arc::ptr_eq(a, b) || (a.base == b.base && a.modulus == b.modulus)
            }
            (Field::Frac(a), Field::Frac(b)) => {
                Arc::ptr_eq(a, b) || (a.base == b.base && a.var == b.var)
            }
            _ => false,
        }
    }
}
impl Eq for Field {}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = ((r as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    r
}

fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime_u64(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::Usage(format!("{p} is not prime")))
        }
    }

    /// `base[x]/(modulus)`; the modulus is made monic and checked irreducible.
    pub fn extension(base: &Field, modulus: &[Elem], name: &str) -> Result<Field> {
        let m = upoly::monic(base, modulus);
        if upoly::deg(&m) < 1 {
            return Err(Error::Usage("extension modulus must have positive degree".into()));
        }
        if !super::factor::is_irreducible(base, &m)? {
            return Err(Error::Usage(format!(
                "extension modulus {} is reducible",
                upoly::display(base, &m, "x")
            )));
        }
        Ok(Self::extension_unchecked(base, m, name))
    }

    pub fn extension_unchecked(base: &Field, modulus: Vec<Elem>, name: &str) -> Field {
        Field::Ext(Arc::new(ExtField { base: base.clone(), modulus, name: name.to_string() }))
    }

    pub fn fractions(base: &Field, var: &str) -> Field {
        Field::Frac(Arc::new(FracField { base: base.clone(), var: var.to_string() }))
    }

    /// The field with `q` elements, built on the first irreducible monic
    /// polynomial in the enumeration order of [`Field::elements`].
    pub fn finite(q: u64) -> Result<Field> {
        let (p, d) = prime_power(q).ok_or_else(|| Error::Usage(format!("{q} is not a prime power")))?;
        let fp = Field::Prime(p);
        if d == 1 {
            return Ok(fp);
        }
        let modulus = super::factor::first_irreducible(&fp, d as usize)?;
        Ok(Field::extension_unchecked(&fp, modulus, "a"))
    }

    pub fn base(&self) -> Option<&Field> {
        match self {
            Field::Ext(e) => Some(&e.base),
            Field::Frac(f) => Some(&f.base),
            _ => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
            Field::Ext(e) => e.base.characteristic(),
            Field::Frac(f) => f.base.characteristic(),
        }
    }

    /// Number of elements, if finite.
    pub fn order(&self) -> Option<BigUint> {
        match self {
            Field::Rational | Field::Frac(_) => None,
            Field::Prime(p) => Some(BigUint::from(*p)),
            Field::Ext(e) => {
                let b = e.base.order()?;
                Some(num_traits::pow(b, upoly::deg(&e.modulus) as usize))
            }
        }
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order().and_then(|o| o.to_u64())
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    /// Perfect fields: characteristic zero or finite.
    pub fn is_perfect(&self) -> bool {
        match self {
            Field::Rational | Field::Prime(_) => true,
            Field::Ext(e) => e.base.is_perfect(),
            Field::Frac(_) => self.characteristic() == 0,
        }
    }

    /// Degree of the extension over `base()`.
    pub fn ext_degree(&self) -> usize {
        match self {
            Field::Ext(e) => upoly::deg(&e.modulus) as usize,
            _ => 1,
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Field::Rational => Elem::Q(Rat::zero()),
            Field::Prime(_) => Elem::P(0),
            Field::Ext(_) => Elem::Ext(vec![]),
            Field::Frac(f) => Elem::Frac(vec![], vec![f.base.one()]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        match self {
            Field::Rational => Elem::Q(Rat::from_integer(BigInt::from(n))),
            Field::Prime(p) => Elem::P(n.rem_euclid(*p as i64) as u64),
            Field::Ext(e) => self.embed(&e.base.from_i64(n)),
            Field::Frac(f) => self.embed(&f.base.from_i64(n)),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        self.from_rat(&Rat::from_integer(n.clone())).expect("integers embed")
    }

    pub fn from_rat(&self, r: &Rat) -> Result<Elem> {
        match self {
            Field::Rational => Ok(Elem::Q(r.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = r.numer().mod_floor(&pb).to_u64().unwrap();
                let d = r.denom().mod_floor(&pb).to_u64().unwrap();
                if d == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Elem::P(((n as u128 * mod_inv(d, *p) as u128) % *p as u128) as u64))
            }
            Field::Ext(e) => Ok(self.embed(&e.base.from_rat(r)?)),
            Field::Frac(f) => Ok(self.embed(&f.base.from_rat(r)?)),
        }
    }

    /// Image of a base-field element (identity for prime fields and Q).
    pub fn embed(&self, b: &Elem) -> Elem {
        match self {
            Field::Ext(e) => Elem::Ext(upoly::trim(vec![b.clone()], &e.base)),
            Field::Frac(f) => Elem::Frac(upoly::trim(vec![b.clone()], &f.base), vec![f.base.one()]),
            _ => b.clone(),
        }
    }

    /// The adjoined element `x` (extensions) or the variable (fraction fields).
    pub fn generator(&self) -> Result<Elem> {
        match self {
            Field::Ext(e) => {
                let x = vec![e.base.zero(), e.base.one()];
                Ok(Elem::Ext(upoly::rem(&e.base, &x, &e.modulus)))
            }
            Field::Frac(f) => Ok(Elem::Frac(vec![f.base.zero(), f.base.one()], vec![f.base.one()])),
            _ => Err(Error::Usage("prime fields have no generator".into())),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Q(r) => r.is_zero(),
            Elem::P(x) => *x == 0,
            Elem::Ext(c) => c.is_empty(),
            Elem::Frac(n, _) => n.is_empty(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Rational, Elem::Q(x), Elem::Q(y)) => Elem::Q(x + y),
            (Field::Prime(p), Elem::P(x), Elem::P(y)) => Elem::P(((*x as u128 + *y as u128) % *p as u128) as u64),
            (Field::Ext(e), Elem::Ext(x), Elem::Ext(y)) => Elem::Ext(upoly::add(&e.base, x, y)),
            (Field::Frac(f), Elem::Frac(an, ad), Elem::Frac(bn, bd)) => {
                let k = &f.base;
                if ad == bd {
                    return frac_normalize(k, upoly::add(k, an, bn), ad.clone());
                }
                let n = upoly::add(k, &upoly::mul(k, an, bd), &upoly::mul(k, bn, ad));
                frac_normalize(k, n, upoly::mul(k, ad, bd))
            }
            _ => panic!("element does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Field::Rational, Elem::Q(x)) => Elem::Q(-x),
            (Field::Prime(p), Elem::P(x)) => Elem::P(if *x == 0 { 0 } else { p - x }),
            (Field::Ext(e), Elem::Ext(x)) => Elem::Ext(upoly::neg(&e.base, x)),
            (Field::Frac(f), Elem::Frac(n, d)) => Elem::Frac(upoly::neg(&f.base, n), d.clone()),
            _ => panic!("element does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Rational, Elem::Q(x), Elem::Q(y)) => Elem::Q(x * y),
            (Field::Prime(p), Elem::P(x), Elem::P(y)) => Elem::P(((*x as u128 * *y as u128) % *p as u128) as u64),
            (Field::Ext(e), Elem::Ext(x), Elem::Ext(y)) => {
                Elem::Ext(upoly::rem(&e.base, &upoly::mul(&e.base, x, y), &e.modulus))
            }
            (Field::Frac(f), Elem::Frac(an, ad), Elem::Frac(bn, bd)) => {
                let k = &f.base;
                if an.is_empty() || bn.is_empty() {
                    return self.zero();
                }
                let g1 = upoly::gcd(k, an, bd);
                let g2 = upoly::gcd(k, bn, ad);
                let n = upoly::mul(k, &upoly::exact_div(k, an, &g1), &upoly::exact_div(k, bn, &g2));
                let d = upoly::mul(k, &upoly::exact_div(k, ad, &g2), &upoly::exact_div(k, bd, &g1));
                frac_normalize(k, n, d)
            }
            _ => panic!("element does not belong to field {self}"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (Field::Rational, Elem::Q(x)) => Elem::Q(x.recip()),
            (Field::Prime(p), Elem::P(x)) => Elem::P(mod_inv(*x, *p)),
            (Field::Ext(e), Elem::Ext(x)) => {
                let (g, s, _) = upoly::xgcd(&e.base, x, &e.modulus);
                debug_assert_eq!(upoly::deg(&g), 0);
                Elem::Ext(upoly::rem(&e.base, &s, &e.modulus))
            }
            (Field::Frac(f), Elem::Frac(n, d)) => frac_normalize(&f.base, d.clone(), n.clone()),
            _ => panic!("element does not belong to field {self}"),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, e: u64) -> Elem {
        self.pow_big(a, &BigUint::from(e))
    }

    pub fn pow_big(&self, a: &Elem, e: &BigUint) -> Elem {
        let mut r = self.one();
        let mut b = a.clone();
        let bits = e.bits();
        for i in 0..bits {
            if e.bit(i) {
                r = self.mul(&r, &b);
            }
            if i + 1 < bits {
                b = self.mul(&b, &b);
            }
        }
        r
    }

    pub fn pow_i64(&self, a: &Elem, e: i64) -> Result<Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }

    /// The p-th root in characteristic p, when it exists in this field.
    pub fn pth_root(&self, a: &Elem) -> Option<Elem> {
        let p = self.characteristic();
        if p == 0 {
            return None;
        }
        match self {
            Field::Prime(_) => Some(a.clone()),
            Field::Ext(e) => {
                if let Some(q) = self.order() {
                    // Inverse Frobenius on F_q is x -> x^(q/p).
                    let e_pow = q / BigUint::from(p);
                    return Some(self.pow_big(a, &e_pow));
                }
                let _ = e;
                None
            }
            Field::Frac(f) => {
                let Elem::Frac(n, d) = a else { return None };
                let rn = poly_pth_root(&f.base, n, p)?;
                let rd = poly_pth_root(&f.base, d, p)?;
                Some(frac_normalize(&f.base, rn, rd))
            }
            Field::Rational => None,
        }
    }

    /// Uniform element of a finite field, or a small element otherwise.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match self {
            Field::Rational => {
                let n: i64 = rng.gen_range(-9..=9);
                let d: i64 = rng.gen_range(1..=4);
                Elem::Q(Rat::new(BigInt::from(n), BigInt::from(d)))
            }
            Field::Prime(p) => Elem::P(rng.gen_range(0..*p)),
            Field::Ext(e) => {
                let d = upoly::deg(&e.modulus) as usize;
                let c: Vec<Elem> = (0..d).map(|_| e.base.random(rng)).collect();
                Elem::Ext(upoly::trim(c, &e.base))
            }
            Field::Frac(f) => {
                let deg = rng.gen_range(0..=2);
                let c: Vec<Elem> = (0..=deg).map(|_| f.base.random(rng)).collect();
                let n = upoly::trim(c, &f.base);
                frac_normalize(&f.base, n, vec![f.base.one()])
            }
        }
    }

    /// All elements of a finite field with at most `limit` elements,
    /// enumerated in a fixed order starting with 0 and 1 (prime fields).
    pub fn elements(&self, limit: u64) -> Option<Vec<Elem>> {
        let q = self.order_u64()?;
        if q > limit {
            return None;
        }
        Some((0..q).map(|i| self.element_from_index(i)).collect())
    }

    /// Element with base-q digit expansion `i` (finite fields only).
    pub fn element_from_index(&self, mut i: u64) -> Elem {
        match self {
            Field::Prime(p) => Elem::P(i % p),
            Field::Ext(e) => {
                let bq = e.base.order_u64().expect("finite base");
                let d = upoly::deg(&e.modulus) as usize;
                let mut c = Vec::with_capacity(d);
                for _ in 0..d {
                    c.push(e.base.element_from_index(i % bq));
                    i /= bq;
                }
                Elem::Ext(upoly::trim(c, &e.base))
            }
            _ => panic!("element_from_index on an infinite field"),
        }
    }

    /// Coordinates over the base field (extensions only), padded to `ext_degree`.
    pub fn coords(&self, a: &Elem) -> Vec<Elem> {
        match (self, a) {
            (Field::Ext(e), Elem::Ext(c)) => {
                let mut v = c.clone();
                v.resize(upoly::deg(&e.modulus) as usize, e.base.zero());
                v
            }
            _ => vec![a.clone()],
        }
    }

    pub fn from_coords(&self, c: &[Elem]) -> Elem {
        match self {
            Field::Ext(e) => Elem::Ext(upoly::trim(c.to_vec(), &e.base)),
            _ => c[0].clone(),
        }
    }

    /// Rational value of an element of Q.
    pub fn as_rat<'a>(&self, a: &'a Elem) -> Option<&'a Rat> {
        match a {
            Elem::Q(r) => Some(r),
            _ => None,
        }
    }

    /// Whether `a` lies in the prime subfield image of the integers/rationals
    /// and equals `r`.
    pub fn equals_rat(&self, a: &Elem, r: &Rat) -> bool {
        self.from_rat(r).map(|x| x == *a).unwrap_or(false)
    }

    pub fn fmt_elem(&self, a: &Elem) -> String {
        match (self, a) {
            (Field::Rational, Elem::Q(r)) => fmt_rat(r),
            (Field::Prime(_), Elem::P(x)) => x.to_string(),
            (Field::Ext(e), Elem::Ext(c)) => upoly::display(&e.base, c, &e.name),
            (Field::Frac(f), Elem::Frac(n, d)) => {
                let ns = upoly::display(&f.base, n, &f.var);
                if upoly::deg(d) == 0 {
                    ns
                } else {
                    format!("({})/({})", ns, upoly::display(&f.base, d, &f.var))
                }
            }
            _ => "?".into(),
        }
    }

    /// Whether the printed form needs parentheses inside a product.
    pub fn is_compound(&self, a: &Elem) -> bool {
        if matches!(self, Field::Rational | Field::Prime(_)) {
            return false;
        }
        let s = self.fmt_elem(a);
        let body = s.strip_prefix('-').unwrap_or(&s);
        body.contains('+') || body.contains('-') || body.contains('/')
    }
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn frac_normalize(k: &Field, n: Vec<Elem>, d: Vec<Elem>) -> Elem {
    assert!(!d.is_empty(), "zero denominator");
    if n.is_empty() {
        return Elem::Frac(vec![], vec![k.one()]);
    }
    let g = upoly::gcd(k, &n, &d);
    let (mut n, mut d) = if upoly::deg(&g) > 0 {
        (upoly::exact_div(k, &n, &g), upoly::exact_div(k, &d, &g))
    } else {
        (n, d)
    };
    let lc = d.last().unwrap().clone();
    if !k.is_one(&lc) {
        let li = k.inv(&lc).unwrap();
        n = upoly::scale(k, &n, &li);
        d = upoly::scale(k, &d, &li);
    }
    Elem::Frac(n, d)
}

/// Build a fraction-field element from numerator and denominator polynomials.
pub fn frac_from_polys(f: &Field, n: Vec<Elem>, d: Vec<Elem>) -> Result<Elem> {
    let Field::Frac(ff) = f else { return Err(Error::Usage("not a fraction field".into())) };
    let n = upoly::trim(n, &ff.base);
    let d = upoly::trim(d, &ff.base);
    if d.is_empty() {
        return Err(Error::DivisionByZero);
    }
    Ok(frac_normalize(&ff.base, n, d))
}

fn poly_pth_root(k: &Field, a: &[Elem], p: u64) -> Option<Vec<Elem>> {
    let p = p as usize;
    let mut out = Vec::new();
    for (i, c) in a.iter().enumerate() {
        if k.is_zero(c) {
            if i % p == 0 {
                out.push(k.zero());
            }
            continue;
        }
        if i % p != 0 {
            return None;
        }
        out.push(k.pth_root(c)?);
    }
    Some(upoly::trim(out, k))
}

/// `q = p^d` with p prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut d = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        d += 1;
    }
    (r == 1).then_some((p, d))
}

impl std::fmt::Display for Field {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
            Field::Ext(e) => {
                if let Some(q) = self.order() {
                    let mut s = String::new();
                    let _ = write!(s, "F{q}");
                    write!(f, "{s}")
                } else {
                    write!(f, "{}[{}]/({})", e.base, e.name, upoly::display(&e.base, &e.modulus, &e.name))
                }
            }
            Field::Frac(ff) => write!(f, "{}({})", ff.base, ff.var),
        }
    }
}

/// Integer part helpers on rationals used across the crate.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::Prime(7);
        let a = f.from_i64(3);
        let b = f.from_i64(5);
        assert_eq!(f.mul(&a, &b), f.from_i64(1));
        assert_eq!(f.inv(&a).unwrap(), b);
        assert_eq!(f.from_rat(&rat(1, 2)).unwrap(), f.from_i64(4));
    }

    #[test]
    fn f9_has_nine_elements_and_inverses() {
        let f = Field::finite(9).unwrap();
        let els = f.elements(100).unwrap();
        assert_eq!(els.len(), 9);
        for a in &els[1..] {
            let i = f.inv(a).unwrap();
            assert!(f.is_one(&f.mul(a, &i)));
        }
    }

    #[test]
    fn frac_field_normalizes() {
        let k = Field::Rational;
        let f = Field::fractions(&k, "t");
        let t = f.generator().unwrap();
        let one = f.one();
        let x = f.div(&f.sub(&f.mul(&t, &t), &one), &f.sub(&t, &one)).unwrap();
        assert_eq!(x, f.add(&t, &one));
    }

    #[test]
    fn pth_root_in_function_field() {
        let f = Field::fractions(&Field::Prime(3), "t");
        let t = f.generator().unwrap();
        let t3 = f.pow(&t, 3);
        assert_eq!(f.pth_root(&t3).unwrap(), t);
        assert!(f.pth_root(&t).is_none());
    }
}
