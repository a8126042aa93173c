//! Split corpoids `F = F^1[t_g : g in G]` and graded polynomial rings
//! `F[r\T]` over them.
//!
//! A split corpoid with degree group `G` (free of rank `s`, basis `b_j`)
//! is modelled two ways:
//! * the *Laurent* form `F^1[U_j, V_j] / (U_j V_j - 1)`, where `U_j` marks
//!   `t_{b_j}`;
//! * the *generic* form, the rational function field `F^1(u_1, ..., u_s)`.
//!
//! Homogeneous data embeds faithfully in both: a nonzero homogeneous
//! element of `F^1[U^{+-1}]` is a unit, so localizing at all nonzero
//! Laurent polynomials loses nothing for homogeneous ideals.

use std::fmt;
use std::sync::Arc;

use crate::arith::field::{Elem, Field};
use crate::degree::{integer_coords, lattice_basis, DegreeElement, MultRealGroup};
use crate::error::{Error, Result};
use crate::poly::mfactor::embed_from;
use crate::poly::mpoly::{Mono, MonomialOrder, Poly, PolyRing};

#[derive(Debug)]
pub struct Corpoid {
    base: Field,
    ambient: Arc<MultRealGroup>,
    basis: Vec<DegreeElement>,
    names: Vec<String>,
    generic: Field,
}

impl PartialEq for Corpoid {
    fn eq(&self, o: &Self) -> bool {
        self.base == o.base && self.ambient == o.ambient && self.basis == o.basis && self.names == o.names
    }
}

/// Homogeneous element `c * t_d` (or the zero of degree `d`).
#[derive(Clone, Debug, PartialEq)]
pub struct CorpoidElement {
    pub coeff: Elem,
    pub degree: DegreeElement,
}

impl Corpoid {
    /// The split corpoid over `base` whose nonzero degrees form the subgroup
    /// generated by `gens`. `names` label the Laurent variables.
    pub fn split(base: &Field, ambient: &Arc<MultRealGroup>, gens: &[DegreeElement], names: Option<Vec<String>>) -> Result<Arc<Corpoid>> {
        for g in gens {
            if g.group() != ambient {
                return Err(Error::GroupMismatch(format!("{} vs {}", g.group(), ambient)));
            }
        }
        let mut basis = lattice_basis(ambient, gens);
        // Keep the caller's generators when they already form a Z-basis.
        if gens.len() == basis.len() && basis.iter().all(|b| integer_coords(b, gens).is_some()) {
            basis = gens.to_vec();
        }
        let names = match names {
            Some(n) if n.len() == basis.len() => n,
            Some(n) => {
                return Err(Error::Usage(format!("{} Laurent names for a degree group of rank {}", n.len(), basis.len())));
            }
            None if basis.len() == 1 => vec!["t".to_string()],
            None => (1..=basis.len()).map(|j| format!("t{j}")).collect(),
        };
        let mut generic = base.clone();
        for n in &names {
            generic = Field::fractions(&generic, n);
        }
        Ok(Arc::new(Corpoid { base: base.clone(), ambient: ambient.clone(), basis, names, generic }))
    }

    /// `F^1` viewed as a corpoid concentrated in degree 1.
    pub fn trivial(base: &Field, ambient: &Arc<MultRealGroup>) -> Arc<Corpoid> {
        Corpoid::split(base, ambient, &[], None).expect("trivial degree group")
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn ambient(&self) -> &Arc<MultRealGroup> {
        &self.ambient
    }

    /// Z-basis of the degree group `G`.
    pub fn basis(&self) -> &[DegreeElement] {
        &self.basis
    }

    pub fn laurent_names(&self) -> &[String] {
        &self.names
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `F^1(u_1, ..., u_s)`.
    pub fn generic_field(&self) -> &Field {
        &self.generic
    }

    pub fn coords(&self, d: &DegreeElement) -> Option<Vec<i64>> {
        integer_coords(d, &self.basis)
    }

    pub fn contains_degree(&self, d: &DegreeElement) -> bool {
        self.coords(d).is_some()
    }

    pub fn degree_of_coords(&self, n: &[i64]) -> DegreeElement {
        let mut d = self.ambient.one();
        for (b, &e) in self.basis.iter().zip(n) {
            d = d.mul(&b.pow(e));
        }
        d
    }

    pub fn element(&self, coeff: Elem, degree: DegreeElement) -> Result<CorpoidElement> {
        if !self.base.is_zero(&coeff) && !self.contains_degree(&degree) {
            return Err(Error::DegreeMismatch(format!("no nonzero element of degree {degree} in this corpoid")));
        }
        Ok(CorpoidElement { coeff, degree })
    }

    pub fn one(&self) -> CorpoidElement {
        CorpoidElement { coeff: self.base.one(), degree: self.ambient.one() }
    }

    pub fn zero(&self, degree: DegreeElement) -> CorpoidElement {
        CorpoidElement { coeff: self.base.zero(), degree }
    }

    pub fn from_base(&self, c: Elem) -> CorpoidElement {
        CorpoidElement { coeff: c, degree: self.ambient.one() }
    }

    /// The section element `t_{b_j}`.
    pub fn section(&self, j: usize) -> CorpoidElement {
        CorpoidElement { coeff: self.base.one(), degree: self.basis[j].clone() }
    }

    pub fn is_zero(&self, a: &CorpoidElement) -> bool {
        self.base.is_zero(&a.coeff)
    }

    pub fn mul(&self, a: &CorpoidElement, b: &CorpoidElement) -> CorpoidElement {
        CorpoidElement { coeff: self.base.mul(&a.coeff, &b.coeff), degree: a.degree.mul(&b.degree) }
    }

    pub fn add(&self, a: &CorpoidElement, b: &CorpoidElement) -> Result<CorpoidElement> {
        if a.degree != b.degree {
            return Err(Error::DegreeMismatch(format!("cannot add elements of degrees {} and {}", a.degree, b.degree)));
        }
        Ok(CorpoidElement { coeff: self.base.add(&a.coeff, &b.coeff), degree: a.degree.clone() })
    }

    pub fn neg(&self, a: &CorpoidElement) -> CorpoidElement {
        CorpoidElement { coeff: self.base.neg(&a.coeff), degree: a.degree.clone() }
    }

    pub fn inv(&self, a: &CorpoidElement) -> Result<CorpoidElement> {
        Ok(CorpoidElement { coeff: self.base.inv(&a.coeff)?, degree: a.degree.inv() })
    }

    fn laurent_generator(&self, j: usize) -> Elem {
        let mut level = self.generic.clone();
        for _ in j + 1..self.rank() {
            level = level.base().unwrap().clone();
        }
        embed_from(&self.generic, &level, &level.generator().unwrap())
    }

    /// `c * u^n` in the generic field.
    pub fn generic_monomial(&self, c: &Elem, n: &[i64]) -> Elem {
        let k = &self.generic;
        let mut x = embed_from(k, &self.base, c);
        for (j, &e) in n.iter().enumerate() {
            if e != 0 {
                x = k.mul(&x, &k.pow_i64(&self.laurent_generator(j), e).unwrap());
            }
        }
        x
    }

    pub fn to_generic(&self, a: &CorpoidElement) -> Elem {
        if self.is_zero(a) {
            return self.generic.zero();
        }
        let n = self.coords(&a.degree).expect("degree in G");
        self.generic_monomial(&a.coeff, &n)
    }

    /// Inverse of [`Corpoid::to_generic`] on Laurent monomials.
    pub fn from_generic(&self, e: &Elem) -> Option<(Elem, Vec<i64>)> {
        let mut n = vec![0i64; self.rank()];
        let mut level = self.generic.clone();
        let mut x = e.clone();
        for j in (0..self.rank()).rev() {
            let Elem::Frac(num, den) = &x else { return None };
            let base = level.base().unwrap().clone();
            let nz: Vec<usize> = (0..num.len()).filter(|&i| !base.is_zero(&num[i])).collect();
            let dz: Vec<usize> = (0..den.len()).filter(|&i| !base.is_zero(&den[i])).collect();
            if nz.len() > 1 || dz.len() != 1 {
                return None;
            }
            if nz.is_empty() {
                return Some((self.base.zero(), vec![0; self.rank()]));
            }
            let c = base.div(&num[nz[0]], &den[dz[0]]).ok()?;
            n[j] = nz[0] as i64 - dz[0] as i64;
            x = c;
            level = base;
        }
        Some((x, n))
    }

    pub fn element_from_generic(&self, e: &Elem) -> Option<CorpoidElement> {
        let (c, n) = self.from_generic(e)?;
        Some(CorpoidElement { coeff: c, degree: self.degree_of_coords(&n) })
    }

    pub fn display(&self, a: &CorpoidElement) -> String {
        if self.is_zero(a) {
            return format!("0^{}", a.degree);
        }
        self.generic.fmt_elem(&self.to_generic(a))
    }
}

impl fmt::Display for Corpoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gs: Vec<String> = self.basis.iter().map(|b| b.to_string()).collect();
        write!(f, "{}[<{}>]", self.base, gs.join(", "))
    }
}

/// `F[r\T]`: indeterminates `T_i` of degree `r_i` over a split corpoid.
#[derive(Debug)]
pub struct GradedPolyRing {
    pub corpoid: Arc<Corpoid>,
    pub vars: Vec<String>,
    pub radii: Vec<DegreeElement>,
    generic: Arc<PolyRing>,
}

impl PartialEq for GradedPolyRing {
    fn eq(&self, o: &Self) -> bool {
        self.corpoid == o.corpoid && self.vars == o.vars && self.radii == o.radii
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradedPolynomial {
    pub degree: DegreeElement,
    /// Terms `(I, c)` meaning `c * t_g * T^I` with `g = degree / r^I`;
    /// sorted by the generic ring's order, no zero coefficients.
    pub terms: Vec<(Mono, Elem)>,
}

impl GradedPolynomial {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl GradedPolyRing {
    pub fn new(corpoid: &Arc<Corpoid>, vars: Vec<String>, radii: Vec<DegreeElement>) -> Result<Arc<GradedPolyRing>> {
        if vars.len() != radii.len() {
            return Err(Error::Usage("one radius per indeterminate".into()));
        }
        for r in &radii {
            if r.group() != corpoid.ambient() {
                return Err(Error::GroupMismatch(format!("radius {r} not in the ambient degree group")));
            }
        }
        let generic = PolyRing::new(corpoid.generic_field().clone(), vars.clone(), MonomialOrder::GrevLex);
        Ok(Arc::new(GradedPolyRing { corpoid: corpoid.clone(), vars, radii, generic }))
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    /// Ordinary polynomial ring over `F^1(u)` in the same indeterminates.
    pub fn generic_ring(&self) -> &Arc<PolyRing> {
        &self.generic
    }

    pub fn mono_degree(&self, m: &[u32]) -> DegreeElement {
        let mut d = self.corpoid.ambient().one();
        for (r, &e) in self.radii.iter().zip(m) {
            d = d.mul(&r.pow(e as i64));
        }
        d
    }

    pub fn zero(&self, degree: DegreeElement) -> GradedPolynomial {
        GradedPolynomial { degree, terms: vec![] }
    }

    pub fn one(&self) -> GradedPolynomial {
        self.constant(&self.corpoid.one())
    }

    pub fn constant(&self, c: &CorpoidElement) -> GradedPolynomial {
        self.monomial(c, vec![0; self.nvars()])
    }

    pub fn var(&self, i: usize) -> GradedPolynomial {
        let mut m = vec![0; self.nvars()];
        m[i] = 1;
        self.monomial(&self.corpoid.one(), m)
    }

    pub fn monomial(&self, c: &CorpoidElement, m: Mono) -> GradedPolynomial {
        let degree = c.degree.mul(&self.mono_degree(&m));
        let terms = if self.corpoid.is_zero(c) { vec![] } else { vec![(m, c.coeff.clone())] };
        GradedPolynomial { degree, terms }
    }

    /// Build from `(I, c)` pairs, checking that every coefficient degree
    /// `degree / r^I` lies in the corpoid's degree group.
    pub fn from_terms(&self, degree: DegreeElement, terms: Vec<(Mono, Elem)>) -> Result<GradedPolynomial> {
        let k = self.corpoid.base();
        for (m, c) in &terms {
            if k.is_zero(c) {
                continue;
            }
            let cd = degree.div(&self.mono_degree(m));
            if !self.corpoid.contains_degree(&cd) {
                return Err(Error::NotHomogeneous(format!("term {:?} cannot have degree {degree}", m)));
            }
        }
        Ok(self.normalize(degree, terms))
    }

    fn normalize(&self, degree: DegreeElement, terms: Vec<(Mono, Elem)>) -> GradedPolynomial {
        let k = self.corpoid.base();
        let mut terms: Vec<(Mono, Elem)> = terms.into_iter().filter(|(_, c)| !k.is_zero(c)).collect();
        terms.sort_by(|a, b| self.generic.cmp(&b.0, &a.0));
        let mut out: Vec<(Mono, Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = k.add(lc, &c),
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !k.is_zero(c));
        GradedPolynomial { degree, terms: out }
    }

    pub fn term_coeff(&self, p: &GradedPolynomial, i: usize) -> CorpoidElement {
        let (m, c) = &p.terms[i];
        CorpoidElement { coeff: c.clone(), degree: p.degree.div(&self.mono_degree(m)) }
    }

    pub fn add(&self, a: &GradedPolynomial, b: &GradedPolynomial) -> Result<GradedPolynomial> {
        if a.degree != b.degree {
            return Err(Error::DegreeMismatch(format!("cannot add polynomials of degrees {} and {}", a.degree, b.degree)));
        }
        let mut t = a.terms.clone();
        t.extend(b.terms.iter().cloned());
        Ok(self.normalize(a.degree.clone(), t))
    }

    pub fn neg(&self, a: &GradedPolynomial) -> GradedPolynomial {
        let k = self.corpoid.base();
        GradedPolynomial { degree: a.degree.clone(), terms: a.terms.iter().map(|(m, c)| (m.clone(), k.neg(c))).collect() }
    }

    pub fn sub(&self, a: &GradedPolynomial, b: &GradedPolynomial) -> Result<GradedPolynomial> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &GradedPolynomial, b: &GradedPolynomial) -> GradedPolynomial {
        let k = self.corpoid.base();
        let mut t = Vec::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Mono = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                t.push((m, k.mul(ca, cb)));
            }
        }
        self.normalize(a.degree.mul(&b.degree), t)
    }

    pub fn pow(&self, a: &GradedPolynomial, e: u32) -> GradedPolynomial {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    pub fn scale(&self, a: &GradedPolynomial, c: &CorpoidElement) -> GradedPolynomial {
        self.mul(a, &self.constant(c))
    }

    pub fn is_homogeneous(&self, p: &GradedPolynomial) -> bool {
        p.terms.iter().all(|(m, _)| self.corpoid.contains_degree(&p.degree.div(&self.mono_degree(m))))
    }

    pub fn to_generic(&self, p: &GradedPolynomial) -> Poly {
        let terms = p
            .terms
            .iter()
            .map(|(m, c)| {
                let n = self.corpoid.coords(&p.degree.div(&self.mono_degree(m))).expect("homogeneous");
                (m.clone(), self.corpoid.generic_monomial(c, &n))
            })
            .collect();
        self.generic.from_terms(terms)
    }

    /// Read a homogeneous polynomial back from the generic ring. The zero
    /// polynomial needs `zero_degree`.
    pub fn from_generic(&self, q: &Poly, zero_degree: Option<&DegreeElement>) -> Result<GradedPolynomial> {
        if q.is_zero() {
            let d = zero_degree.cloned().unwrap_or_else(|| self.corpoid.ambient().one());
            return Ok(self.zero(d));
        }
        let mut degree: Option<DegreeElement> = None;
        let mut terms = Vec::new();
        for (m, c) in &q.terms {
            let (b, n) = self
                .corpoid
                .from_generic(c)
                .ok_or_else(|| Error::NotHomogeneous(format!("coefficient {} is not a Laurent monomial", self.generic.field.fmt_elem(c))))?;
            let d = self.corpoid.degree_of_coords(&n).mul(&self.mono_degree(m));
            match &degree {
                None => degree = Some(d),
                Some(d0) if *d0 != d => {
                    return Err(Error::NotHomogeneous(format!("terms of degrees {d0} and {d} in {}", self.generic.display(q))));
                }
                _ => {}
            }
            terms.push((m.clone(), b));
        }
        Ok(self.normalize(degree.unwrap(), terms))
    }

    /// Strip the unit Laurent monomial dividing every coefficient, making
    /// the polynomial's leading coefficient lie in degree 1 when possible.
    pub fn generic_primitive(&self, q: &Poly) -> Poly {
        if q.is_zero() {
            return q.clone();
        }
        let g = self.generic.field.clone();
        match self.corpoid.from_generic(q.lc()) {
            Some(_) => self.generic.scale(q, &g.inv(q.lc()).unwrap()),
            None => q.clone(),
        }
    }

    pub fn display(&self, p: &GradedPolynomial) -> String {
        if p.is_zero() {
            return format!("0^{}", p.degree);
        }
        self.generic.display(&self.to_generic(p))
    }

    pub fn parse(&self, s: &str) -> Result<GradedPolynomial> {
        let q = self.generic.parse(s)?;
        self.from_generic(&q, None)
    }
}

/// The passage `F[r\T] -> F^1[T, U, V] / (U V - 1)`.
#[derive(Debug)]
pub struct LaurentTranslation {
    pub source: Arc<GradedPolyRing>,
    pub target: Arc<PolyRing>,
}

impl LaurentTranslation {
    pub fn new(source: &Arc<GradedPolyRing>) -> LaurentTranslation {
        let c = &source.corpoid;
        let mut vars = source.vars.clone();
        vars.extend(c.laurent_names().iter().cloned());
        vars.extend(c.laurent_names().iter().map(|n| format!("{n}_inv")));
        let target = PolyRing::new(c.base().clone(), vars, MonomialOrder::GrevLex);
        LaurentTranslation { source: source.clone(), target }
    }

    fn s(&self) -> usize {
        self.source.corpoid.rank()
    }

    /// `U_j V_j - 1` for every degree generator.
    pub fn relations(&self) -> Vec<Poly> {
        let n = self.source.nvars();
        let s = self.s();
        (0..s)
            .map(|j| {
                let uv = self.target.mul(&self.target.var(n + j), &self.target.var(n + s + j));
                self.target.sub(&uv, &self.target.one())
            })
            .collect()
    }

    fn term(&self, m: &[u32], c: &Elem, coords: &[i64], shift: &[i64]) -> (Mono, Elem) {
        let n = self.source.nvars();
        let s = self.s();
        let mut mono = vec![0u32; n + 2 * s];
        mono[..n].copy_from_slice(m);
        for j in 0..s {
            let e = coords[j] - shift[j];
            if e >= 0 {
                mono[n + j] = e as u32;
            } else {
                mono[n + s + j] = (-e) as u32;
            }
        }
        (mono, c.clone())
    }

    fn coeff_coords(&self, p: &GradedPolynomial) -> Vec<Vec<i64>> {
        p.terms.iter().map(|(m, _)| self.source.corpoid.coords(&p.degree.div(&self.source.mono_degree(m))).expect("homogeneous")).collect()
    }

    /// Exact image: `c t_g T^I -> c U^{g+} V^{g-} T^I`.
    pub fn translate(&self, p: &GradedPolynomial) -> Poly {
        let cs = self.coeff_coords(p);
        let zero = vec![0; self.s()];
        let terms = p.terms.iter().zip(&cs).map(|((m, c), n)| self.term(m, c, n, &zero)).collect();
        self.target.from_terms(terms)
    }

    /// Image divided by the largest common unit monomial, so that only
    /// nonnegative powers of the `U_j` occur and no `U_j` divides all terms.
    /// Returns the stripped exponent vector alongside.
    pub fn translate_stripped(&self, p: &GradedPolynomial) -> (Poly, Vec<i64>) {
        let cs = self.coeff_coords(p);
        let s = self.s();
        let shift: Vec<i64> = (0..s).map(|j| cs.iter().map(|n| n[j]).min().unwrap_or(0)).collect();
        let terms = p.terms.iter().zip(&cs).map(|((m, c), n)| self.term(m, c, n, &shift)).collect();
        (self.target.from_terms(terms), shift)
    }

    /// The homogeneous component of degree `degree` of the image of `q`
    /// under `U_j -> t_j`, `V_j -> t_j^{-1}`.
    pub fn component(&self, q: &Poly, degree: &DegreeElement) -> GradedPolynomial {
        let n = self.source.nvars();
        let s = self.s();
        let c = &self.source.corpoid;
        let terms = q
            .terms
            .iter()
            .filter_map(|(m, x)| {
                let coords: Vec<i64> = (0..s).map(|j| m[n + j] as i64 - m[n + s + j] as i64).collect();
                let tm: Mono = m[..n].to_vec();
                (c.degree_of_coords(&coords).mul(&self.source.mono_degree(&tm)) == *degree).then(|| (tm, x.clone()))
            })
            .collect();
        self.source.normalize(degree.clone(), terms)
    }

    /// Inverse of [`LaurentTranslation::translate`]; `V_j` counts as `U_j^{-1}`.
    pub fn untranslate(&self, q: &Poly, zero_degree: Option<&DegreeElement>) -> Result<GradedPolynomial> {
        let n = self.source.nvars();
        let s = self.s();
        let c = &self.source.corpoid;
        if q.is_zero() {
            return Ok(self.source.zero(zero_degree.cloned().unwrap_or_else(|| c.ambient().one())));
        }
        let mut degree: Option<DegreeElement> = None;
        let mut terms = Vec::new();
        for (m, x) in &q.terms {
            let coords: Vec<i64> = (0..s).map(|j| m[n + j] as i64 - m[n + s + j] as i64).collect();
            let tm: Mono = m[..n].to_vec();
            let d = c.degree_of_coords(&coords).mul(&self.source.mono_degree(&tm));
            match &degree {
                None => degree = Some(d),
                Some(d0) if *d0 != d => return Err(Error::NotHomogeneous(format!("terms of degrees {d0} and {d}"))),
                _ => {}
            }
            terms.push((tm, x.clone()));
        }
        Ok(self.source.normalize(degree.unwrap(), terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::rat;

    fn setup() -> (Arc<MultRealGroup>, Arc<Corpoid>) {
        let d = MultRealGroup::from_ints(&[2, 3]).unwrap();
        let k = Corpoid::split(&Field::Rational, &d, &[d.generator(0)], None).unwrap();
        (d, k)
    }

    #[test]
    fn corpoid_arithmetic() {
        let (d, k) = setup();
        let s2 = d.power_of_rational(&rat(2, 1), &rat(1, 2)).unwrap();
        // 2^(1/2) is not a degree of F, so only zero lives there.
        assert!(k.element(Field::Rational.from_i64(2), s2.clone()).is_err());
        let a = k.element(Field::Rational.from_i64(2), d.generator(0)).unwrap();
        let b = k.element(Field::Rational.from_i64(3), d.generator(0)).unwrap();
        let p = k.mul(&a, &b);
        assert_eq!(p.degree, d.generator(0).pow(2));
        assert_eq!(k.add(&a, &b).unwrap().coeff, Field::Rational.from_i64(5));
        assert!(matches!(k.add(&a, &k.one()), Err(Error::DegreeMismatch(_))));
        let c = k.add(&a, &k.neg(&a)).unwrap();
        assert!(k.is_zero(&c));
        assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
    }

    #[test]
    fn generic_round_trip() {
        let (d, k) = setup();
        let a = k.element(Field::Rational.from_i64(-5), d.generator(0).pow(-3)).unwrap();
        let g = k.to_generic(&a);
        assert_eq!(k.element_from_generic(&g).unwrap(), a);
    }

    #[test]
    fn laurent_translation_round_trip() {
        let (d, k) = setup();
        let r = GradedPolyRing::new(&k, vec!["T".into()], vec![d.generator(0)]).unwrap();
        let t = r.var(0);
        let c = r.constant(&k.section(0));
        let p = r.mul(&r.sub(&t, &c).unwrap(), &r.add(&t, &c).unwrap());
        assert_eq!(r.display(&p), "T^2 - t^2");
        let tr = LaurentTranslation::new(&r);
        let q = tr.translate(&p);
        assert_eq!(tr.target.display(&q), "T^2 - t^2");
        assert_eq!(tr.untranslate(&q, None).unwrap(), p);
        let tinv = r.constant(&k.inv(&k.section(0)).unwrap());
        let p2 = r.mul(&p, &tinv);
        let (q2, shift) = tr.translate_stripped(&p2);
        assert_eq!(shift, vec![-1]);
        assert_eq!(tr.target.display(&q2), "T^2 - t^2");
        assert_eq!(tr.untranslate(&tr.translate(&p2), None).unwrap(), p2);
        assert!(r.from_generic(&r.generic_ring().parse("T + 1").unwrap(), None).is_err());
    }
}
