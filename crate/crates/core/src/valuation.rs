//! Valuations on split corpoids.
//!
//! A valuation on `F = F^1[t_G]` is stored as a chain of places on `F^1`
//! (coarsest first) together with the values of the degree sections `t_b`.
//! The value of `c` is read through the chain: each place contributes an
//! order and passes the leading coefficient down to its residue field.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::field::{Elem, Field, Rat};
use crate::arith::linalg;
use crate::corpoid::{Corpoid, CorpoidElement, GradedPolyRing, GradedPolynomial};
use crate::degree::{DegreeElement, OrderedValue, OrderedValueGroup};
use crate::error::{Error, Result};
use crate::graded_ideal::GradedIdeal;
use crate::poly::components::{self, Component};
use crate::poly::decomp::{self, Localization};
use crate::poly::ideal::Ideal;
use crate::poly::mfactor::flatten_once;
use crate::poly::mpoly::{Mono, MonomialOrder, Poly, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Place {
    /// `p`-adic order on `Q`, residue field `F_p`.
    PAdic(u64),
    /// Order at the variable of `B(x)`, residue field `B`.
    Adic,
}

#[derive(Clone, Debug)]
pub struct GradedValuation {
    corpoid: Arc<Corpoid>,
    group: OrderedValueGroup,
    places: Vec<Place>,
    place_values: Vec<OrderedValue>,
    sections: Vec<OrderedValue>,
    /// `fields[0] = F^1`; `fields[i + 1]` is the residue field of place `i`.
    fields: Vec<Field>,
}

fn vpow(v: &OrderedValue, n: i64) -> OrderedValue {
    match v {
        OrderedValue::Real(d) => OrderedValue::Real(d.pow(n)),
        OrderedValue::Lex(x) => OrderedValue::Lex(x.iter().map(|a| a * Rat::from_integer(n.into())).collect()),
    }
}

fn place_step(place: &Place, k: &Field, c: &Elem) -> Result<(i64, Elem, Field)> {
    match (place, k, c) {
        (Place::PAdic(p), Field::Rational, Elem::Q(r)) => {
            let pb = BigInt::from(*p);
            let strip = |mut n: BigInt| {
                let mut e = 0i64;
                while n.is_multiple_of(&pb) {
                    n /= &pb;
                    e += 1;
                }
                (e, n)
            };
            let (en, n) = strip(r.numer().clone());
            let (ed, d) = strip(r.denom().clone());
            let fp = Field::Prime(*p);
            let res = fp.div(&fp.from_bigint(&n), &fp.from_bigint(&d))?;
            Ok((en - ed, res, fp))
        }
        (Place::Adic, Field::Frac(ff), Elem::Frac(n, d)) => {
            let b = &ff.base;
            let ln = n.iter().position(|x| !b.is_zero(x)).expect("nonzero");
            let ld = d.iter().position(|x| !b.is_zero(x)).expect("nonzero");
            Ok((ln as i64 - ld as i64, b.div(&n[ln], &d[ld])?, b.clone()))
        }
        _ => Err(Error::Usage(format!("place {place:?} does not apply to {k}"))),
    }
}

/// Residue of a nonzero element: coefficient in the residue field and
/// coordinates on the residue corpoid's degree lattice (place orders, then
/// degree coordinates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tilde {
    pub coeff: Elem,
    pub coords: Vec<i64>,
}

/// Split residue corpoid: residue field of the chain, graded by the
/// lattice spanned by the bidegrees of the uniformizers and sections.
#[derive(Clone, Debug)]
pub struct ResidueCorpoid {
    pub field: Field,
    pub group: OrderedValueGroup,
    /// Bidegrees `(degree, value)` of the lattice basis.
    pub bidegrees: Vec<(DegreeElement, OrderedValue)>,
}

impl ResidueCorpoid {
    pub fn mul(&self, a: &Tilde, b: &Tilde) -> Tilde {
        Tilde { coeff: self.field.mul(&a.coeff, &b.coeff), coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect() }
    }

    pub fn bidegree(&self, t: &Tilde) -> (DegreeElement, OrderedValue) {
        let mut d = self.bidegrees.first().map(|b| b.0.group().one());
        let mut v = self.group.identity();
        for ((bd, bv), &n) in self.bidegrees.iter().zip(&t.coords) {
            d = d.map(|x| x.mul(&bd.pow(n)));
            v = self.group.mul(&v, &vpow(bv, n)).expect("one value group");
        }
        (d.expect("nonempty lattice or trivial degree"), v)
    }

    pub fn rank(&self) -> usize {
        self.bidegrees.len()
    }
}

impl GradedValuation {
    pub fn new(
        corpoid: &Arc<Corpoid>,
        group: OrderedValueGroup,
        places: Vec<Place>,
        place_values: Vec<OrderedValue>,
        sections: Vec<OrderedValue>,
    ) -> Result<GradedValuation> {
        if places.len() != place_values.len() || sections.len() != corpoid.rank() {
            return Err(Error::Usage("one value per place and per degree generator".into()));
        }
        let mut fields = vec![corpoid.base().clone()];
        for p in &places {
            let k = fields.last().unwrap().clone();
            let next = match (p, &k) {
                (Place::PAdic(q), Field::Rational) => Field::prime(*q)?,
                (Place::Adic, Field::Frac(ff)) => ff.base.clone(),
                _ => return Err(Error::Usage(format!("place {p:?} does not apply to {k}"))),
            };
            fields.push(next);
        }
        let one = group.identity();
        for v in place_values.iter() {
            if group.compare(v, &one)? != Ordering::Less {
                return Err(Error::Usage(format!("uniformizer value {v} must be < 1")));
            }
        }
        for v in &sections {
            group.compare(v, &one)?;
        }
        Ok(GradedValuation { corpoid: corpoid.clone(), group, places, place_values, sections, fields })
    }

    /// The trivial valuation on `F^1`, with prescribed values on the sections.
    pub fn trivial(corpoid: &Arc<Corpoid>, group: OrderedValueGroup, sections: Vec<OrderedValue>) -> Result<GradedValuation> {
        GradedValuation::new(corpoid, group, vec![], vec![], sections)
    }

    /// `|p| = 1/p` on `Q`, sections of value 1 (for the trivial degree group).
    pub fn p_adic(corpoid: &Arc<Corpoid>, p: u64) -> Result<GradedValuation> {
        let amb = corpoid.ambient();
        let v = amb.from_rational(&Rat::new(1.into(), p.into()))?;
        let sections = vec![OrderedValue::Real(amb.one()); corpoid.rank()];
        GradedValuation::new(corpoid, OrderedValueGroup::Real(amb.clone()), vec![Place::PAdic(p)], vec![OrderedValue::Real(v)], sections)
    }

    /// `|t| = 1/2` on `B(t)`.
    pub fn t_adic(corpoid: &Arc<Corpoid>) -> Result<GradedValuation> {
        let amb = corpoid.ambient();
        let v = amb.from_rational(&Rat::new(1.into(), 2.into()))?;
        let sections = vec![OrderedValue::Real(amb.one()); corpoid.rank()];
        GradedValuation::new(corpoid, OrderedValueGroup::Real(amb.clone()), vec![Place::Adic], vec![OrderedValue::Real(v)], sections)
    }

    /// Composite of the given places with values in `Q^h` (lex), the
    /// `i`-th uniformizer having value `-e_i`.
    pub fn composite(corpoid: &Arc<Corpoid>, places: Vec<Place>) -> Result<GradedValuation> {
        let h = places.len();
        let pv = (0..h)
            .map(|i| OrderedValue::Lex((0..h).map(|j| if i == j { Rat::from_integer((-1).into()) } else { Rat::zero() }).collect()))
            .collect();
        let sections = vec![OrderedValueGroup::Lex(h).identity(); corpoid.rank()];
        GradedValuation::new(corpoid, OrderedValueGroup::Lex(h), places, pv, sections)
    }

    pub fn corpoid(&self) -> &Arc<Corpoid> {
        &self.corpoid
    }

    pub fn group(&self) -> &OrderedValueGroup {
        &self.group
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn place_values(&self) -> &[OrderedValue] {
        &self.place_values
    }

    pub fn section_values(&self) -> &[OrderedValue] {
        &self.sections
    }

    /// `fields()[i]` is the field reached after `i` places.
    pub fn fields(&self) -> &[Field] {
        &self.fields
    }

    pub fn residue_field(&self) -> &Field {
        self.fields.last().unwrap()
    }

    pub fn compare(&self, a: &OrderedValue, b: &OrderedValue) -> Ordering {
        self.group.compare(a, b).expect("one value group")
    }

    pub fn mul_values(&self, a: &OrderedValue, b: &OrderedValue) -> OrderedValue {
        self.group.mul(a, b).expect("one value group")
    }

    pub fn value_pow(&self, a: &OrderedValue, n: i64) -> OrderedValue {
        vpow(a, n)
    }

    /// Orders along the chain and the final residue of a nonzero `c`.
    pub fn ords(&self, c: &Elem) -> Result<(Vec<i64>, Elem)> {
        let mut x = c.clone();
        let mut o = Vec::with_capacity(self.places.len());
        for (i, p) in self.places.iter().enumerate() {
            let (e, r, _) = place_step(p, &self.fields[i], &x)?;
            o.push(e);
            x = r;
        }
        Ok((o, x))
    }

    /// Residue after the first `level` places of an element whose first
    /// `level` orders vanish.
    fn residue_to(&self, c: &Elem, level: usize) -> Result<Elem> {
        let mut x = c.clone();
        for i in 0..level {
            x = place_step(&self.places[i], &self.fields[i], &x)?.1;
        }
        Ok(x)
    }

    pub fn value_of_coords(&self, ords: &[i64], n: &[i64]) -> OrderedValue {
        let mut v = self.group.identity();
        for (pv, &e) in self.place_values.iter().zip(ords) {
            v = self.mul_values(&v, &vpow(pv, e));
        }
        for (sv, &e) in self.sections.iter().zip(n) {
            v = self.mul_values(&v, &vpow(sv, e));
        }
        v
    }

    /// `|c|` for `c` in `F^1`; `None` for zero.
    pub fn abs_base(&self, c: &Elem) -> Option<OrderedValue> {
        if self.corpoid.base().is_zero(c) {
            return None;
        }
        let (o, _) = self.ords(c).expect("element of F^1");
        Some(self.value_of_coords(&o, &[]))
    }

    pub fn evaluate(&self, x: &CorpoidElement) -> Option<OrderedValue> {
        if self.corpoid.is_zero(x) {
            return None;
        }
        let (o, _) = self.ords(&x.coeff).expect("element of F^1");
        let n = self.corpoid.coords(&x.degree).expect("degree in G");
        Some(self.value_of_coords(&o, &n))
    }

    /// `|x| <= 1`.
    pub fn in_annuloid(&self, x: &CorpoidElement) -> bool {
        match self.evaluate(x) {
            None => true,
            Some(v) => self.compare(&v, &self.group.identity()) != Ordering::Greater,
        }
    }

    /// `|x| < 1`.
    pub fn in_max_ideal(&self, x: &CorpoidElement) -> bool {
        match self.evaluate(x) {
            None => true,
            Some(v) => self.compare(&v, &self.group.identity()) == Ordering::Less,
        }
    }

    fn all_values(&self) -> Vec<OrderedValue> {
        self.place_values.iter().chain(&self.sections).cloned().collect()
    }

    /// Coordinates where the value group gains a new archimedean class.
    fn jump_positions(&self) -> Vec<usize> {
        let vals = self.all_values();
        match &self.group {
            OrderedValueGroup::Real(_) => {
                if vals.iter().any(|v| matches!(v, OrderedValue::Real(d) if !d.is_one())) {
                    vec![0]
                } else {
                    vec![]
                }
            }
            OrderedValueGroup::Lex(n) => {
                let q = Field::Rational;
                let rows: Vec<Vec<Elem>> = vals
                    .iter()
                    .map(|v| match v {
                        OrderedValue::Lex(x) => x.iter().map(|a| Elem::Q(a.clone())).collect(),
                        _ => unreachable!(),
                    })
                    .collect();
                let mut out = Vec::new();
                let mut prev = 0;
                for p in 0..*n {
                    let cut: Vec<Vec<Elem>> = rows.iter().map(|r| r[..=p].to_vec()).collect();
                    let r = if cut.is_empty() { 0 } else { linalg::rank(&q, &cut) };
                    if r > prev {
                        out.push(p);
                    }
                    prev = r;
                }
                out
            }
        }
    }

    /// Number of proper convex subgroups of the subgroup of values.
    pub fn height(&self) -> usize {
        self.jump_positions().len()
    }

    /// Coarsening by a convex subgroup.
    pub fn compose(&self, h: &crate::degree::ConvexSubgroup) -> Result<GradedValuation> {
        let group = self.group.quotient(h);
        let c = |v: &OrderedValue| self.group.coarsen(v, h);
        Ok(GradedValuation {
            corpoid: self.corpoid.clone(),
            group,
            places: self.places.clone(),
            place_values: self.place_values.iter().map(c).collect::<Result<_>>()?,
            sections: self.sections.iter().map(c).collect::<Result<_>>()?,
            fields: self.fields.clone(),
        })
    }

    /// The coarsening whose maximal ideal is the prime `tau_level`.
    pub fn coarsening(&self, level: usize) -> Result<GradedValuation> {
        let jumps = self.jump_positions();
        if level > jumps.len() {
            return Err(Error::OutOfRange(format!("level {level} above height {}", jumps.len())));
        }
        let drop = match &self.group {
            OrderedValueGroup::Real(_) => usize::from(level > 0),
            OrderedValueGroup::Lex(n) => {
                if level == jumps.len() {
                    *n
                } else {
                    jumps[level]
                }
            }
        };
        self.compose(&crate::degree::ConvexSubgroup { drop })
    }

    /// Whether `x` lies in the prime `tau_level` of `F^o`.
    pub fn in_prime(&self, x: &CorpoidElement, level: usize) -> Result<bool> {
        if !self.in_annuloid(x) {
            return Err(Error::Usage("element outside the valuation annuloid".into()));
        }
        Ok(self.coarsening(level)?.in_max_ideal(x))
    }

    /// Valuation induced on the residue field of the coarsening at `level`,
    /// for chains whose `i`-th uniformizer carries the `i`-th class.
    pub fn induced_on_residue(&self, level: usize) -> Result<GradedValuation> {
        self.require_standard()?;
        let h = self.places.len();
        let base = Corpoid::trivial(&self.fields[level], self.corpoid.ambient());
        let rest = self.places[level..].to_vec();
        match &self.group {
            OrderedValueGroup::Lex(_) => GradedValuation::composite(&base, rest),
            OrderedValueGroup::Real(amb) if level == h => GradedValuation::trivial(&base, OrderedValueGroup::Real(amb.clone()), vec![]),
            OrderedValueGroup::Real(_) => Ok(GradedValuation { corpoid: base, fields: self.fields[level..].to_vec(), sections: vec![], ..self.clone() }),
        }
    }

    /// Chains of places on an ungraded field whose `i`-th uniformizer
    /// generates the `i`-th archimedean class.
    fn require_standard(&self) -> Result<()> {
        if self.corpoid.rank() != 0 {
            return Err(Error::Unsupported("graded base corpoid for integral algebras".into()));
        }
        let ok = match &self.group {
            OrderedValueGroup::Real(_) => self.places.len() <= 1,
            OrderedValueGroup::Lex(n) => {
                *n == self.places.len()
                    && self.place_values.iter().enumerate().all(|(i, v)| match v {
                        OrderedValue::Lex(x) => x.iter().position(|a| !a.is_zero()) == Some(i) && x[i].is_negative(),
                        _ => false,
                    })
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Unsupported("valuation is not a standard chain of places".into()))
        }
    }

    pub fn residue_corpoid(&self) -> ResidueCorpoid {
        let amb = self.corpoid.ambient();
        let mut bidegrees: Vec<(DegreeElement, OrderedValue)> = self.place_values.iter().map(|v| (amb.one(), v.clone())).collect();
        bidegrees.extend(self.corpoid.basis().iter().cloned().zip(self.sections.iter().cloned()));
        ResidueCorpoid { field: self.residue_field().clone(), group: self.group.clone(), bidegrees }
    }

    pub fn tilde(&self, x: &CorpoidElement) -> Option<Tilde> {
        if self.corpoid.is_zero(x) {
            return None;
        }
        let (mut o, r) = self.ords(&x.coeff).expect("element of F^1");
        o.extend(self.corpoid.coords(&x.degree).expect("degree in G"));
        Some(Tilde { coeff: r, coords: o })
    }

    /// Uniformizer of place `i` as an element of `F^1`.
    fn uniformizer(&self, i: usize) -> Elem {
        match &self.places[i] {
            Place::PAdic(p) => self.lift(i, Elem::Q(Rat::from_integer((*p).into()))),
            Place::Adic => {
                let g = self.fields[i].generator().expect("fraction field");
                self.lift(i, g)
            }
        }
    }

    /// An element of `F^1` reducing to `e` in `fields[i]` (coefficients are
    /// embedded level by level).
    fn lift(&self, i: usize, e: Elem) -> Elem {
        let mut x = e;
        for j in (0..i).rev() {
            x = self.fields[j].embed(&x);
        }
        x
    }

    /// The chain `tau_0 (generic) ... tau_h (closed)` of `Spec F^o`.
    pub fn height_chain(&self) -> Result<HeightChain> {
        let h = self.height();
        let mut cands: Vec<CorpoidElement> = Vec::new();
        for i in 0..self.places.len() {
            let u = self.uniformizer(i);
            cands.push(self.corpoid.from_base(u));
        }
        for j in 0..self.corpoid.rank() {
            cands.push(self.corpoid.section(j));
            cands.push(self.corpoid.inv(&self.corpoid.section(j))?);
        }
        let mut witnesses = Vec::with_capacity(h + 1);
        for i in 0..h {
            let w = cands
                .iter()
                .find(|c| self.in_annuloid(c) && !self.in_prime(c, i).unwrap_or(true) && self.in_prime(c, i + 1).unwrap_or(false))
                .ok_or_else(|| Error::Unsupported(format!("no monomial witness for tau_{i}")))?;
            witnesses.push(w.clone());
        }
        witnesses.push(self.corpoid.one());
        Ok(HeightChain { height: h, witnesses })
    }
}

impl fmt::Display for GradedValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self
            .places
            .iter()
            .zip(&self.place_values)
            .map(|(p, v)| match p {
                Place::PAdic(q) => format!("|{q}| = {v}"),
                Place::Adic => format!("adic place of value {v}"),
            })
            .collect();
        if ps.is_empty() {
            write!(f, "trivial valuation on {}", self.corpoid)
        } else {
            write!(f, "valuation on {} ({})", self.corpoid, ps.join("; "))
        }
    }
}

/// `tau_0, ..., tau_h` with `nu_i` outside `tau_i` and inside `tau_{i+1}`;
/// `nu_h = 1`.
#[derive(Clone, Debug)]
pub struct HeightChain {
    pub height: usize,
    pub witnesses: Vec<CorpoidElement>,
}

/// `F(r\T/gamma)`: Gauss valuation on a graded polynomial ring.
#[derive(Clone, Debug)]
pub struct GaussValuation {
    pub base: GradedValuation,
    pub ring: Arc<GradedPolyRing>,
    pub gammas: Vec<OrderedValue>,
}

pub fn gauss_extend(v: &GradedValuation, ring: &Arc<GradedPolyRing>, gammas: Vec<OrderedValue>) -> Result<GaussValuation> {
    if ring.corpoid != v.corpoid {
        return Err(Error::Usage("Gauss extension over a different corpoid".into()));
    }
    if gammas.len() != ring.nvars() {
        return Err(Error::Usage("one parameter per indeterminate".into()));
    }
    for g in &gammas {
        v.group.compare(g, &v.group.identity())?;
    }
    Ok(GaussValuation { base: v.clone(), ring: ring.clone(), gammas })
}

impl GaussValuation {
    fn term_value(&self, p: &GradedPolynomial, i: usize) -> OrderedValue {
        let c = self.ring.term_coeff(p, i);
        let mut v = self.base.evaluate(&c).expect("nonzero term");
        for (g, &e) in self.gammas.iter().zip(&p.terms[i].0) {
            v = self.base.mul_values(&v, &vpow(g, e as i64));
        }
        v
    }

    /// `max |a_I| gamma^I`.
    pub fn evaluate(&self, p: &GradedPolynomial) -> Option<OrderedValue> {
        (0..p.terms.len()).map(|i| self.term_value(p, i)).max_by(|a, b| self.base.compare(a, b))
    }

    /// The terms of maximal value, reduced: the residue of `p` in
    /// `F~[T~]`, with `T~_i` of bidegree `(r_i, gamma_i)`.
    pub fn reduction(&self, p: &GradedPolynomial) -> Vec<(Mono, Tilde)> {
        let Some(top) = self.evaluate(p) else { return vec![] };
        (0..p.terms.len())
            .filter(|&i| self.base.compare(&self.term_value(p, i), &top) == Ordering::Equal)
            .map(|i| (p.terms[i].0.clone(), self.base.tilde(&self.ring.term_coeff(p, i)).unwrap()))
            .collect()
    }

    /// Residue corpoid of the base plus the bidegrees of the `T~_i`.
    pub fn residue_corpoid(&self) -> (ResidueCorpoid, Vec<(DegreeElement, OrderedValue)>) {
        let vars = self.ring.radii.iter().cloned().zip(self.gammas.iter().cloned()).collect();
        (self.base.residue_corpoid(), vars)
    }
}

/// `|a(xi)| <= 1` for every `a`, at the point of `Spv` given by a Gauss
/// valuation on the generic point.
pub fn spv_membership(xi: &GaussValuation, elems: &[GradedPolynomial]) -> bool {
    let one = xi.base.group.identity();
    elems.iter().all(|a| match xi.evaluate(a) {
        None => true,
        Some(v) => xi.base.compare(&v, &one) != Ordering::Greater,
    })
}

/// Whether `P(a) = 0` in `A = R/J` for the monic `P` whose coefficients
/// (leading first) are given; the coefficient of `T^{n-k}` must have degree
/// `deg(a)^k`.
pub fn integrality_witness_check(a: &GradedPolynomial, monic: &[GradedPolynomial], ideal: Option<&GradedIdeal>, ring: &Arc<GradedPolyRing>) -> Result<bool> {
    let Some(lead) = monic.first() else {
        return Err(Error::Usage("empty polynomial".into()));
    };
    if *lead != ring.one() {
        return Err(Error::Usage("integrality witness is not monic".into()));
    }
    for (k, c) in monic.iter().enumerate() {
        if !c.is_zero() && c.degree != a.degree.pow(k as i64) {
            return Err(Error::DegreeMismatch(format!("coefficient {k} has degree {} instead of {}", c.degree, a.degree.pow(k as i64))));
        }
    }
    let mut acc = lead.clone();
    for c in &monic[1..] {
        let c = if c.is_zero() { ring.zero(acc.degree.mul(&a.degree)) } else { c.clone() };
        acc = ring.add(&ring.mul(&acc, a), &c)?;
    }
    Ok(match ideal {
        Some(j) => j.contains(&acc),
        None => acc.is_zero(),
    })
}

/// A finitely presented `F^o`-algebra `F^o[x] / (f_1, ..., f_m)` over an
/// ungraded base.
#[derive(Clone, Debug)]
pub struct IntegralAlgebra {
    pub valuation: GradedValuation,
    pub ring: Arc<PolyRing>,
    pub gens: Vec<Poly>,
    level_rings: Vec<Arc<PolyRing>>,
}

impl IntegralAlgebra {
    pub fn new(valuation: &GradedValuation, vars: &[&str], gens: &[&str]) -> Result<IntegralAlgebra> {
        valuation.require_standard()?;
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        for (i, k) in valuation.fields.iter().enumerate() {
            if let Field::Frac(ff) = k {
                if valuation.places.get(i) == Some(&Place::Adic) && names.contains(&ff.var) {
                    return Err(Error::Usage(format!("variable {} clashes with the base parameter", ff.var)));
                }
            }
        }
        let ring = PolyRing::new(valuation.fields[0].clone(), names.clone(), MonomialOrder::GrevLex);
        let gens = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        IntegralAlgebra::from_polys(valuation, &ring, gens)
    }

    pub fn from_polys(valuation: &GradedValuation, ring: &Arc<PolyRing>, gens: Vec<Poly>) -> Result<IntegralAlgebra> {
        valuation.require_standard()?;
        let one = valuation.group.identity();
        for g in &gens {
            for (_, c) in &g.terms {
                let v = valuation.abs_base(c).unwrap();
                if valuation.compare(&v, &one) == Ordering::Greater {
                    return Err(Error::Usage(format!("coefficient {} is not integral", ring.field.fmt_elem(c))));
                }
            }
        }
        let level_rings = valuation.fields.iter().map(|k| PolyRing::new(k.clone(), ring.vars.clone(), MonomialOrder::GrevLex)).collect();
        Ok(IntegralAlgebra { valuation: valuation.clone(), ring: ring.clone(), gens, level_rings })
    }

    pub fn height(&self) -> usize {
        self.valuation.places.len()
    }

    pub fn level_ring(&self, level: usize) -> &Arc<PolyRing> {
        &self.level_rings[level]
    }

    /// Image of an integral coefficient in `F^o / tau_level`, inside the
    /// field reached after `level` places.
    pub fn reduce_coeff(&self, c: &Elem, level: usize) -> Result<Elem> {
        let v = &self.valuation;
        let k = &v.fields[0];
        if k.is_zero(c) {
            return Ok(v.fields[level].zero());
        }
        let (o, _) = v.ords(c)?;
        match o[..level].iter().find(|&&e| e != 0) {
            None => v.residue_to(c, level),
            Some(&e) if e > 0 => Ok(v.fields[level].zero()),
            Some(_) => Err(Error::Usage("coefficient is not integral".into())),
        }
    }

    fn reduce_poly(&self, p: &Poly, level: usize) -> Result<Poly> {
        let r = &self.level_rings[level];
        let terms = p.terms.iter().map(|(m, c)| Ok((m.clone(), self.reduce_coeff(c, level)?))).collect::<Result<Vec<_>>>()?;
        Ok(r.from_terms(terms))
    }

    /// `X_{tau_level}`, an ideal over the residue field of the coarsening.
    pub fn fiber(&self, level: usize) -> Result<Ideal> {
        let r = self.level_rings[level].clone();
        let gens = self.gens.iter().map(|g| self.reduce_poly(g, level)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(r, gens))
    }

    /// Torsion-freeness of `F^o[x]/I`, checked one place at a time: over
    /// the discrete valuation ring of place `j`, the reduction modulo
    /// `tau_j` must have no torsion.
    pub fn is_flat_module(&self) -> Result<bool> {
        for j in 0..self.height() {
            if self.valuation.places[j] != Place::Adic {
                return Err(Error::Unsupported("torsion over a p-adic place needs Groebner bases over Z".into()));
            }
            let fj = self.fiber(j)?;
            if !dvr_torsion_free(&fj)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Closure in `X_{tau_{j+1}}` of a closed subset `V(p)` of `X_{tau_j}`.
    pub fn specialize(&self, p: &Ideal, j: usize) -> Result<Ideal> {
        if self.valuation.places[j] != Place::Adic {
            return Err(Error::Unsupported("specialization across a p-adic place".into()));
        }
        let Field::Frac(ff) = &self.valuation.fields[j] else { unreachable!() };
        let next = &self.level_rings[j + 1];
        let mut vars = self.ring.vars.clone();
        vars.push(ff.var.clone());
        let flat = PolyRing::new(ff.base.clone(), vars, MonomialOrder::GrevLex);
        let nx = self.ring.nvars();
        let loc = Localization::new(&flat, &[nx]);
        let pk = Ideal::new(loc.kring.clone(), p.gens().iter().map(|g| p.ring().transfer(g, &loc.kring)).collect());
        let (q, _) = loc.contract(&pk);
        let zero = ff.base.zero();
        let gens = q
            .gb()
            .iter()
            .map(|g| next.from_terms(flat.eval_vars(g, &[(nx, zero.clone())]).terms.into_iter().map(|(m, c)| (m[..nx].to_vec(), c)).collect()))
            .collect();
        Ok(Ideal::new(next.clone(), gens))
    }

    /// Open cover whose fiber over every `tau_i` is empty or one connected
    /// component of `X_{tau_i}`.
    pub fn fiber_splitting_cover(&self) -> Result<OpenCover> {
        let h = self.height();
        let mut levels = Vec::with_capacity(h + 1);
        for i in 0..=h {
            let ideal = self.fiber(i)?;
            if !decomp::is_radical(&ideal)? {
                return Err(Error::Usage(format!("fiber over tau_{i} is not reduced: {}", decomp::display_gb(&ideal))));
            }
            let comps = components::connected_components(&ideal)?;
            levels.push(LevelFiber { field: self.valuation.fields[i].clone(), ideal, components: comps });
        }
        // parents[i][w]: the component of level i - 1 whose closure contains w.
        let mut parents: Vec<Vec<usize>> = vec![vec![]];
        for i in 1..=h {
            let spec: Vec<Vec<Ideal>> = levels[i - 1]
                .components
                .iter()
                .map(|c| c.primes.iter().map(|p| self.specialize(p, i - 1)).collect::<Result<Vec<_>>>())
                .collect::<Result<_>>()?;
            let mut par = Vec::new();
            for w in &levels[i].components {
                let pw = &w.primes[0];
                let hits: Vec<usize> = (0..spec.len()).filter(|&c| spec[c].iter().any(|q| q.is_subset_of(pw))).collect();
                if hits.len() != 1 {
                    return Err(Error::Inconclusive(format!(
                        "component {} of the fiber over tau_{i} lies in {} generic closures",
                        decomp::display_gb(pw),
                        hits.len()
                    )));
                }
                par.push(hits[0]);
            }
            parents.push(par);
        }
        let mut pieces: Vec<CoverPiece> = Vec::new();
        for i in 0..=h {
            for w in 0..levels[i].components.len() {
                let mut fibers = vec![None; h + 1];
                let mut c = w;
                for j in (0..=i).rev() {
                    fibers[j] = Some(c);
                    if j > 0 {
                        c = parents[j][c];
                    }
                }
                pieces.push(CoverPiece { level: i, fibers });
            }
        }
        let keep: Vec<CoverPiece> = pieces
            .iter()
            .enumerate()
            .filter(|(a, p)| !pieces.iter().enumerate().any(|(b, q)| *a != b && p.contained_in(q) && (!q.contained_in(p) || b < *a)))
            .map(|(_, p)| p.clone())
            .collect();
        Ok(OpenCover { levels, parents, pieces: keep })
    }
}

/// Torsion-freeness over the discrete valuation ring of the variable of
/// `B(x)`: `I` and `I : x^inf` must agree after localizing `B[x]` at `(x)`.
fn dvr_torsion_free(i: &Ideal) -> Result<bool> {
    let ring = i.ring().clone();
    let Field::Frac(_) = &ring.field else { unreachable!() };
    let mut flat: Option<Arc<PolyRing>> = None;
    let mut gens = Vec::new();
    for g in i.gens() {
        let (r, f) = flatten_once(&ring, g)?;
        gens.push(f);
        flat = Some(r);
    }
    let Some(flat) = flat else { return Ok(true) };
    let t = flat.nvars() - 1;
    let j = Ideal::new(flat.clone(), gens);
    let s = j.saturate(&flat.var(t));
    if s.is_subset_of(&j) {
        return Ok(true);
    }
    let quotients: Vec<Ideal> = s.gb().iter().map(|f| j.quotient(f)).collect();
    let q = Ideal::intersect_all(&quotients).unwrap();
    let elim: Vec<usize> = (0..t).collect();
    let e = q.eliminate(&elim);
    Ok(match e.gb().first() {
        Some(g) => g.coeff(&[0]).is_some_and(|c| !flat.field.is_zero(c)),
        None => false,
    })
}

#[derive(Clone, Debug)]
pub struct LevelFiber {
    pub field: Field,
    pub ideal: Ideal,
    pub components: Vec<Component>,
}

/// An open of `X`, described by its fibers: `fibers[i]` is the connected
/// component of `X_{tau_i}` it meets, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverPiece {
    pub level: usize,
    pub fibers: Vec<Option<usize>>,
}

impl CoverPiece {
    fn contained_in(&self, o: &CoverPiece) -> bool {
        self.fibers.iter().zip(&o.fibers).all(|(a, b)| a.is_none() || a == b)
    }
}

#[derive(Clone, Debug)]
pub struct OpenCover {
    pub levels: Vec<LevelFiber>,
    pub parents: Vec<Vec<usize>>,
    pub pieces: Vec<CoverPiece>,
}

impl OpenCover {
    /// Independent check: every fiber of every piece is empty or a
    /// connected component (its idempotent is 1 there and 0 on the rest of
    /// the fiber), pieces are stable under generization, and the pieces
    /// cover every component.
    pub fn verify(&self) -> bool {
        for lf in &self.levels {
            let r = lf.ideal.ring();
            let mut sum = r.zero();
            for (a, c) in lf.components.iter().enumerate() {
                let e = &c.idempotent;
                if lf.ideal.reduce(&r.sub(&r.mul(e, e), e)) != r.zero() {
                    return false;
                }
                for (b, d) in lf.components.iter().enumerate() {
                    let target = if a == b { r.sub(&r.one(), e) } else { e.clone() };
                    if !d.primes.iter().all(|p| p.contains(&target)) {
                        return false;
                    }
                }
                sum = r.add(&sum, e);
            }
            if !lf.ideal.is_unit() && !lf.ideal.contains(&r.sub(&sum, &r.one())) {
                return false;
            }
        }
        for p in &self.pieces {
            let mut seen_empty = false;
            for (i, f) in p.fibers.iter().enumerate() {
                match f {
                    None => seen_empty = true,
                    Some(c) => {
                        if seen_empty || *c >= self.levels[i].components.len() {
                            return false;
                        }
                        if i > 0 && p.fibers[i - 1] != Some(self.parents[i][*c]) {
                            return false;
                        }
                    }
                }
            }
        }
        self.levels
            .iter()
            .enumerate()
            .all(|(i, lf)| (0..lf.components.len()).all(|c| self.pieces.iter().any(|p| p.fibers[i] == Some(c))))
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }
}

/// Real number of a rank-one value.
pub fn value_to_f64(v: &OrderedValue) -> Option<f64> {
    match v {
        OrderedValue::Real(d) => Some(d.to_f64()),
        OrderedValue::Lex(x) if x.len() == 1 => x[0].to_f64().map(f64::exp),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::MultRealGroup;

    fn ft() -> (Arc<MultRealGroup>, Arc<Corpoid>, GradedValuation) {
        let amb = MultRealGroup::from_ints(&[2]).unwrap();
        let k = Field::fractions(&Field::Prime(3), "t");
        let c = Corpoid::trivial(&k, &amb);
        let v = GradedValuation::t_adic(&c).unwrap();
        (amb, c, v)
    }

    fn two_step() -> GradedValuation {
        let amb = MultRealGroup::from_ints(&[2]).unwrap();
        let k = Field::fractions(&Field::fractions(&Field::Prime(3), "s"), "t");
        GradedValuation::composite(&Corpoid::trivial(&k, &amb), vec![Place::Adic, Place::Adic]).unwrap()
    }

    #[test]
    fn t_adic_values() {
        let (amb, c, v) = ft();
        let k = c.base().clone();
        let t = k.generator().unwrap();
        let x = c.from_base(k.mul(&t, &t));
        assert_eq!(v.evaluate(&x), Some(OrderedValue::Real(amb.from_rational(&Rat::new(1.into(), 4.into())).unwrap())));
        assert!(v.in_max_ideal(&c.from_base(t.clone())));
        assert!(!v.in_annuloid(&c.inv(&c.from_base(t)).unwrap()));
        assert_eq!(v.height(), 1);
    }

    #[test]
    fn p_adic_residue() {
        let amb = MultRealGroup::from_ints(&[2]).unwrap();
        let c = Corpoid::trivial(&Field::Rational, &amb);
        let v = GradedValuation::p_adic(&c, 2).unwrap();
        let x = c.from_base(Elem::Q(Rat::new(12.into(), 5.into())));
        let t = v.tilde(&x).unwrap();
        assert_eq!(t.coords, vec![2]);
        assert_eq!(t.coeff, Elem::P(1));
    }

    #[test]
    fn chain_of_height_two() {
        let v = two_step();
        assert_eq!(v.height(), 2);
        let ch = v.height_chain().unwrap();
        for i in 0..2 {
            assert!(!v.in_prime(&ch.witnesses[i], i).unwrap());
            assert!(v.in_prime(&ch.witnesses[i], i + 1).unwrap());
        }
        let coarse = v.coarsening(1).unwrap();
        assert_eq!(coarse.height(), 1);
        assert_eq!(v.induced_on_residue(1).unwrap().height(), 1);
    }

    #[test]
    fn torsion_and_flatness() {
        let (_, _, v) = ft();
        assert!(!IntegralAlgebra::new(&v, &["x"], &["t*x"]).unwrap().is_flat_module().unwrap());
        assert!(IntegralAlgebra::new(&v, &["x"], &[]).unwrap().is_flat_module().unwrap());
        assert!(IntegralAlgebra::new(&v, &["x"], &["x^2 - t"]).unwrap().is_flat_module().unwrap());
        assert!(IntegralAlgebra::new(&v, &["x"], &["(t - 1)*x"]).unwrap().is_flat_module().unwrap());
        assert!(IntegralAlgebra::new(&v, &["x"], &["x/t"]).is_err());
    }

    #[test]
    fn covers() {
        let (_, _, v) = ft();
        let a = IntegralAlgebra::new(&v, &["x"], &["x^2 - x"]).unwrap();
        let c = a.fiber_splitting_cover().unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.verify());
        let b = IntegralAlgebra::new(&v, &["x", "y"], &["x*y - t"]).unwrap();
        let c = b.fiber_splitting_cover().unwrap();
        assert_eq!(c.len(), 1);
        assert!(c.verify());
        // Connected generic fiber, special fiber two disjoint lines.
        let d = IntegralAlgebra::new(&v, &["x", "y"], &["x^2 - x - t*y"]).unwrap();
        let c = d.fiber_splitting_cover().unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.verify());
        let w = two_step();
        let e = IntegralAlgebra::new(&w, &["x", "y"], &["x*y - s"]).unwrap();
        assert!(e.is_flat_module().unwrap());
        let c = e.fiber_splitting_cover().unwrap();
        assert!(c.verify());
        assert_eq!(c.len(), 1);
    }
}
