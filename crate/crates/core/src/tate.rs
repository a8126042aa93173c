//! Tate algebras `k{T/r}` over desk-scale valued fields.
//!
//! Series are finite sums with exact coefficients and an optional norm
//! floor `eps`: terms of norm below the floor are dropped and unknown.
//! Ideal arithmetic happens on graded reductions in `k~[r\T]`, which lives
//! over the residue corpoid of `k`.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::factor;
use crate::arith::field::{Elem, Field, Rat};
use crate::arith::upoly;
use crate::corpoid::{Corpoid, CorpoidElement, GradedPolyRing, GradedPolynomial};
use crate::degree::{integer_coords, order_modulo, DegreeElement, MultRealGroup, OrderedValue, OrderedValueGroup, Value};
use crate::error::{Error, Result};
use crate::graded_ideal::GradedIdeal;
use crate::poly::mpoly::{Mono, MonomialOrder, Poly, PolyRing};
use crate::valuation::GradedValuation;

/// Rounds after which a division or descent that has not reached its floor
/// gives up.
pub const MAX_ROUNDS: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    /// Fail dominates inconclusive, which dominates pass.
    pub fn and(self, o: Verdict) -> Verdict {
        match (self, o) {
            (Verdict::Fail, _) | (_, Verdict::Fail) => Verdict::Fail,
            (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => Verdict::Inconclusive,
            _ => Verdict::Pass,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseKind {
    Trivial,
    PAdic(u64),
    /// `B((t))`, modelled on `B(t)` with `|t| = 1/2`.
    Laurent,
}

#[derive(Debug)]
pub struct ValuedField {
    kind: BaseKind,
    field: Field,
    ambient: Arc<MultRealGroup>,
    gamma: Vec<DegreeElement>,
    valuation: GradedValuation,
    residue: Arc<Corpoid>,
    name: String,
}

fn ambient_for(rats: &[Rat]) -> Result<Arc<MultRealGroup>> {
    let mut primes: Vec<u64> = Vec::new();
    for r in rats {
        for n in [r.numer(), r.denom()] {
            let n = n.magnitude().to_string().parse::<u64>().map_err(|_| Error::Unsupported("generator too large".into()))?;
            primes.extend(factor::prime_divisors(n));
        }
    }
    primes.sort();
    primes.dedup();
    MultRealGroup::new(primes.into_iter().map(|p| Rat::from_integer(p.into())).collect())
}

impl ValuedField {
    fn build(kind: BaseKind, field: Field, special: Option<Rat>, gamma: &[Rat], name: String) -> Result<Arc<ValuedField>> {
        let mut all: Vec<Rat> = gamma.to_vec();
        all.extend(special.clone());
        let ambient = ambient_for(&all)?;
        let mut gamma: Vec<DegreeElement> = gamma.iter().map(|g| ambient.from_rational(g)).collect::<Result<_>>()?;
        if gamma.is_empty() {
            if let Some(s) = &special {
                gamma.push(ambient.from_rational(s)?);
            }
        }
        if gamma.iter().all(|g| g.is_one()) && special.is_none() {
            return Err(Error::Usage("a trivially valued field needs a nontrivial group of radii".into()));
        }
        let base = Corpoid::trivial(&field, &ambient);
        let (valuation, residue) = match &kind {
            BaseKind::Trivial => (GradedValuation::trivial(&base, OrderedValueGroup::Real(ambient.clone()), vec![])?, base.clone()),
            BaseKind::PAdic(p) => {
                let pi = ambient.from_rational(&Rat::new(1.into(), (*p).into()))?;
                let res = Corpoid::split(&Field::prime(*p)?, &ambient, &[pi], Some(vec!["pi".into()]))?;
                (GradedValuation::p_adic(&base, *p)?, res)
            }
            BaseKind::Laurent => {
                let Field::Frac(ff) = &field else { unreachable!() };
                let pi = ambient.from_rational(&Rat::new(1.into(), 2.into()))?;
                let res = Corpoid::split(&ff.base, &ambient, &[pi], Some(vec![ff.var.clone()]))?;
                (GradedValuation::t_adic(&base)?, res)
            }
        };
        Ok(Arc::new(ValuedField { kind, field, ambient, gamma, valuation, residue, name }))
    }

    /// `Q` or `F_q` with the trivial absolute value; `gamma` generates `Gamma`.
    pub fn trivial(field: &Field, gamma: &[Rat]) -> Result<Arc<ValuedField>> {
        let name = match field {
            Field::Rational => "Q".to_string(),
            f => format!("F{}", f.order_u64().map(|q| q.to_string()).unwrap_or_else(|| f.to_string())),
        };
        ValuedField::build(BaseKind::Trivial, field.clone(), None, gamma, name)
    }

    /// `Q_p` with `|p| = 1/p`; `Gamma` defaults to `|Q_p^x|`.
    pub fn p_adic(p: u64, gamma: &[Rat]) -> Result<Arc<ValuedField>> {
        Field::prime(p)?;
        ValuedField::build(BaseKind::PAdic(p), Field::Rational, Some(Rat::new(1.into(), p.into())), gamma, format!("Q{p}"))
    }

    /// `B((var))` with `|var| = 1/2`; `Gamma` defaults to `2^Z`.
    pub fn laurent(residue: &Field, var: &str, gamma: &[Rat]) -> Result<Arc<ValuedField>> {
        let name = format!("F{}(({var}))", residue.order_u64().map(|q| q.to_string()).unwrap_or_default());
        ValuedField::build(BaseKind::Laurent, Field::fractions(residue, var), Some(Rat::new(1.into(), 2.into())), gamma, name)
    }

    pub fn kind(&self) -> &BaseKind {
        &self.kind
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn ambient(&self) -> &Arc<MultRealGroup> {
        &self.ambient
    }

    pub fn gamma(&self) -> &[DegreeElement] {
        &self.gamma
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn valuation(&self) -> &GradedValuation {
        &self.valuation
    }

    /// The graded residue field `k~`.
    pub fn residue_corpoid(&self) -> &Arc<Corpoid> {
        &self.residue
    }

    /// `k~^1`.
    pub fn residue_field(&self) -> &Field {
        self.residue.base()
    }

    pub fn is_trivially_valued(&self) -> bool {
        self.kind == BaseKind::Trivial
    }

    /// Generators of `|k^x|`.
    pub fn abs_group(&self) -> Vec<DegreeElement> {
        self.residue.basis().to_vec()
    }

    pub fn in_gamma(&self, d: &DegreeElement) -> bool {
        matches!(order_modulo(d, &self.gamma), Ok(Some(1)))
    }

    pub fn abs(&self, c: &Elem) -> Value {
        match self.valuation.abs_base(c) {
            None => Value::Zero,
            Some(OrderedValue::Real(d)) => Value::Pos(d),
            Some(_) => unreachable!("real valuation"),
        }
    }

    /// The floor used when none is given: the largest power of `|pi|` not
    /// above `2^-20`. Trivially valued fields compute exactly.
    pub fn default_eps(&self) -> Option<DegreeElement> {
        let pi = self.abs_group().into_iter().next()?;
        let n = (20.0 * std::f64::consts::LN_2 / -pi.to_f64().ln()).ceil() as i64;
        Some(pi.pow(n))
    }

    pub fn uniformizer(&self) -> Option<Elem> {
        match &self.kind {
            BaseKind::Trivial => None,
            BaseKind::PAdic(p) => Some(Elem::Q(Rat::from_integer((*p).into()))),
            BaseKind::Laurent => self.field.generator().ok(),
        }
    }

    /// `c~` in `k~`, of degree `|c|`.
    pub fn residue(&self, c: &Elem) -> Option<CorpoidElement> {
        if self.field.is_zero(c) {
            return None;
        }
        let Value::Pos(d) = self.abs(c) else { unreachable!() };
        let (_, r) = self.valuation.ords(c).expect("element of k");
        Some(self.residue.element(r, d).expect("|c| in |k^x|"))
    }

    /// A representative in `k^o` of an element of `k~^1`.
    pub fn lift_coeff(&self, r: &Elem) -> Elem {
        match (&self.kind, r) {
            (BaseKind::Trivial, _) => r.clone(),
            (BaseKind::PAdic(_), Elem::P(a)) => Elem::Q(Rat::from_integer((*a).into())),
            (BaseKind::Laurent, _) => self.field.embed(r),
            _ => unreachable!("residue of a p-adic field"),
        }
    }

    /// An element of `k` with residue `x`.
    pub fn lift(&self, x: &CorpoidElement) -> Elem {
        let c = self.lift_coeff(&x.coeff);
        match self.uniformizer() {
            None => c,
            Some(pi) => {
                let n = self.residue.coords(&x.degree).expect("degree in |k^x|");
                self.field.mul(&c, &self.field.pow_i64(&pi, n[0]).expect("uniformizer is a unit"))
            }
        }
    }

    /// A random nonzero element with a spread of absolute values.
    pub fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let c = match &self.kind {
                BaseKind::Trivial => self.field.random(rng),
                BaseKind::PAdic(p) => {
                    let e: i32 = rng.gen_range(-2..=2);
                    let n: i64 = rng.gen_range(-12..=12);
                    let d: i64 = rng.gen_range(1..=6);
                    let pe = Rat::from_integer(BigInt::from(*p)).pow(e);
                    Elem::Q(pe * Rat::new(n.into(), d.into()))
                }
                BaseKind::Laurent => {
                    let e = rng.gen_range(-2..=2);
                    let u = self.field.random(rng);
                    self.field.mul(&u, &self.field.pow_i64(&self.uniformizer().unwrap(), e).unwrap())
                }
            };
            if !self.field.is_zero(&c) {
                return c;
            }
        }
    }
}

impl std::fmt::Display for ValuedField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.name)
    }
}

/// A finite series with an optional norm floor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateSeries {
    pub poly: Poly,
    /// `None` means exact.
    pub eps: Option<DegreeElement>,
}

impl TateSeries {
    pub fn exact(poly: Poly) -> TateSeries {
        TateSeries { poly, eps: None }
    }

    pub fn is_exact(&self) -> bool {
        self.eps.is_none()
    }
}

fn max_opt(a: Option<DegreeElement>, b: Option<DegreeElement>) -> Option<DegreeElement> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

/// `k{T_1/r_1, ..., T_n/r_n}`.
#[derive(Debug)]
pub struct TateRing {
    pub k: Arc<ValuedField>,
    pub radii: Vec<DegreeElement>,
    pub ring: Arc<PolyRing>,
    /// `k~[r\T]`.
    pub reduction: Arc<GradedPolyRing>,
}

impl TateRing {
    pub fn new(k: &Arc<ValuedField>, vars: &[&str], radii: Vec<DegreeElement>) -> Result<Arc<TateRing>> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        TateRing::with_names(k, vars, radii)
    }

    pub fn with_names(k: &Arc<ValuedField>, vars: Vec<String>, radii: Vec<DegreeElement>) -> Result<Arc<TateRing>> {
        if vars.len() != radii.len() {
            return Err(Error::Usage("one radius per indeterminate".into()));
        }
        for v in &vars {
            if crate::poly::parse::field_symbol(k.field(), v).is_some() || k.residue.laurent_names().contains(v) {
                return Err(Error::Usage(format!("indeterminate {v} clashes with a name of the base field")));
            }
        }
        for r in &radii {
            if r.group() != &k.ambient {
                return Err(Error::GroupMismatch(format!("radius {r} outside the value group of {k}")));
            }
        }
        let ring = PolyRing::new(k.field.clone(), vars.clone(), MonomialOrder::GrevLex);
        let reduction = GradedPolyRing::new(&k.residue, vars, radii.clone())?;
        Ok(Arc::new(TateRing { k: k.clone(), radii, ring, reduction }))
    }

    /// The ring with all radii 1.
    pub fn unit(k: &Arc<ValuedField>, vars: &[&str]) -> Result<Arc<TateRing>> {
        TateRing::new(k, vars, vec![k.ambient.one(); vars.len()])
    }

    pub fn nvars(&self) -> usize {
        self.radii.len()
    }

    pub fn mono_radius(&self, m: &[u32]) -> DegreeElement {
        let mut d = self.k.ambient.one();
        for (r, &e) in self.radii.iter().zip(m) {
            d = d.mul(&r.pow(e as i64));
        }
        d
    }

    pub fn term_norm(&self, m: &[u32], c: &Elem) -> Value {
        self.k.abs(c).mul(&Value::Pos(self.mono_radius(m)))
    }

    pub fn series(&self, p: Poly) -> TateSeries {
        TateSeries::exact(p)
    }

    pub fn parse(&self, s: &str) -> Result<TateSeries> {
        Ok(TateSeries::exact(self.ring.parse(s)?))
    }

    pub fn zero(&self) -> TateSeries {
        TateSeries::exact(self.ring.zero())
    }

    pub fn one(&self) -> TateSeries {
        TateSeries::exact(self.ring.one())
    }

    pub fn var(&self, i: usize) -> TateSeries {
        TateSeries::exact(self.ring.var(i))
    }

    pub fn constant(&self, c: Elem) -> TateSeries {
        TateSeries::exact(self.ring.constant(c))
    }

    fn poly_norm(&self, p: &Poly) -> Value {
        p.terms.iter().map(|(m, c)| self.term_norm(m, c)).max().unwrap_or(Value::Zero)
    }

    /// Drops the terms below the floor.
    pub fn truncate(&self, p: Poly, eps: Option<DegreeElement>) -> TateSeries {
        match eps {
            None => TateSeries::exact(p),
            Some(e) => {
                let floor = Value::Pos(e.clone());
                let terms = p.terms.into_iter().filter(|(m, c)| self.term_norm(m, c) >= floor).collect();
                TateSeries { poly: Poly { terms }, eps: Some(e) }
            }
        }
    }

    /// `max |a_I| r^I`.
    pub fn gauss_norm(&self, f: &TateSeries) -> Result<Value> {
        if f.poly.is_zero() && f.eps.is_some() {
            return Err(Error::Precision(format!("all terms below the floor {}", f.eps.as_ref().unwrap())));
        }
        Ok(self.poly_norm(&f.poly))
    }

    pub fn add(&self, a: &TateSeries, b: &TateSeries) -> TateSeries {
        self.truncate(self.ring.add(&a.poly, &b.poly), max_opt(a.eps.clone(), b.eps.clone()))
    }

    pub fn neg(&self, a: &TateSeries) -> TateSeries {
        TateSeries { poly: self.ring.neg(&a.poly), eps: a.eps.clone() }
    }

    pub fn sub(&self, a: &TateSeries, b: &TateSeries) -> TateSeries {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &TateSeries, b: &TateSeries) -> TateSeries {
        let na = self.poly_norm(&a.poly);
        let nb = self.poly_norm(&b.poly);
        let scaled = |e: &Option<DegreeElement>, n: &Value| e.as_ref().and_then(|e| n.pos().map(|n| e.mul(n)));
        let mut eps = max_opt(scaled(&a.eps, &nb), scaled(&b.eps, &na));
        if let (Some(x), Some(y)) = (&a.eps, &b.eps) {
            eps = max_opt(eps, Some(x.mul(y)));
        }
        self.truncate(self.ring.mul(&a.poly, &b.poly), eps)
    }

    pub fn scale(&self, a: &TateSeries, c: &Elem) -> TateSeries {
        let eps = a.eps.as_ref().and_then(|e| self.k.abs(c).pos().map(|n| e.mul(n)));
        TateSeries { poly: self.ring.scale(&a.poly, c), eps }
    }

    /// The class of `f` in `k~[r\T]`, homogeneous of degree `||f||`.
    pub fn reduction(&self, f: &TateSeries) -> Result<Option<GradedPolynomial>> {
        let Value::Pos(top) = self.gauss_norm(f)? else { return Ok(None) };
        let terms = f
            .poly
            .terms
            .iter()
            .filter(|(m, c)| self.term_norm(m, c) == Value::Pos(top.clone()))
            .map(|(m, c)| (m.clone(), self.k.residue(c).unwrap().coeff))
            .collect();
        Ok(Some(self.reduction.from_terms(top, terms)?))
    }

    /// A series whose reduction is the homogeneous `h`, with the same norm.
    pub fn lift(&self, h: &GradedPolynomial) -> TateSeries {
        let terms = (0..h.terms.len())
            .map(|i| {
                let c = self.reduction.term_coeff(h, i);
                (h.terms[i].0.clone(), self.k.lift(&c))
            })
            .collect();
        TateSeries::exact(self.ring.from_terms(terms))
    }

    pub fn display(&self, f: &TateSeries) -> String {
        let s = self.ring.display(&f.poly);
        match &f.eps {
            None => s,
            Some(e) => format!("{s} + O({e})"),
        }
    }

    /// Random polynomial with up to `nterms` terms of degree at most `maxdeg`
    /// in each variable.
    pub fn random_series<R: Rng + ?Sized>(&self, rng: &mut R, nterms: usize, maxdeg: u32) -> TateSeries {
        let n = self.nvars();
        let terms: Vec<(Mono, Elem)> = (0..nterms.max(1))
            .map(|_| ((0..n).map(|_| rng.gen_range(0..=maxdeg)).collect(), self.k.random_elem(rng)))
            .collect();
        TateSeries::exact(self.ring.from_terms(terms))
    }

    /// Reductions of nonzero elements, as a graded ideal of `k~[r\T]`.
    pub fn reduced_ideal(&self, gens: &[TateSeries]) -> Result<GradedIdeal> {
        let mut out = Vec::with_capacity(gens.len());
        for g in gens {
            match self.reduction(g)? {
                Some(h) => out.push(h),
                None => return Err(Error::Usage("zero generator".into())),
            }
        }
        GradedIdeal::new(&self.reduction, out)
    }
}

/// `f = sum b_i g_i + remainder` with `||b_i|| rho_i <= ||f||` and the
/// remainder below the floor.
#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<TateSeries>,
    pub remainder: TateSeries,
    pub rounds: usize,
}

/// Repeated division by a fixed family, sharing the reduced ideal.
#[derive(Clone, Debug)]
pub struct Divider {
    pub ring: Arc<TateRing>,
    pub gens: Vec<TateSeries>,
    pub norms: Vec<DegreeElement>,
    ideal: GradedIdeal,
}

impl Divider {
    pub fn new(ring: &Arc<TateRing>, gens: &[TateSeries]) -> Result<Divider> {
        let mut norms = Vec::with_capacity(gens.len());
        for g in gens {
            match ring.gauss_norm(g)? {
                Value::Pos(d) => norms.push(d),
                Value::Zero => return Err(Error::Usage("zero generator".into())),
            }
        }
        let ideal = ring.reduced_ideal(gens)?;
        Ok(Divider { ring: ring.clone(), gens: gens.to_vec(), norms, ideal })
    }

    pub fn reduced_ideal(&self) -> &GradedIdeal {
        &self.ideal
    }

    /// One step of the descent: if `f~` lies in the reduced ideal, returns
    /// homogeneous lifts `h_i` of the cofactors.
    fn step(&self, f: &TateSeries) -> Result<Option<Vec<TateSeries>>> {
        let Some(ft) = self.ring.reduction(f)? else { return Ok(Some(vec![])) };
        Ok(self.ideal.cofactors(&ft).map(|cs| cs.iter().map(|c| self.ring.lift(c)).collect()))
    }

    pub fn divide(&self, f: &TateSeries, eps: Option<&DegreeElement>) -> Result<Division> {
        let r = &self.ring;
        let floor = max_opt(f.eps.clone(), eps.cloned()).or_else(|| r.k.default_eps());
        let mut rem = f.clone();
        let mut quotients = vec![r.zero(); self.gens.len()];
        let mut rounds = 0;
        loop {
            let n = r.poly_norm(&rem.poly);
            let Value::Pos(top) = n.clone() else { break };
            if floor.as_ref().is_some_and(|e| top < *e) {
                break;
            }
            if rounds >= MAX_ROUNDS {
                return Err(Error::Precision(format!("remainder of norm {top} after {MAX_ROUNDS} rounds")));
            }
            let Some(hs) = self.step(&rem)? else {
                return Err(Error::Precision(format!("remainder of norm {top} is not in the ideal at this precision")));
            };
            for (i, h) in hs.iter().enumerate() {
                if h.poly.is_zero() {
                    continue;
                }
                quotients[i] = r.add(&quotients[i], h);
                rem = r.sub(&rem, &r.mul(h, &self.gens[i]));
            }
            rem = r.truncate(rem.poly, floor.clone());
            if r.poly_norm(&rem.poly) >= n {
                return Err(Error::Precision(format!("no contraction below {top}")));
            }
            rounds += 1;
        }
        let quotients = quotients
            .into_iter()
            .zip(&self.norms)
            .map(|(q, rho)| TateSeries { poly: q.poly, eps: floor.as_ref().map(|e| e.div(rho)) })
            .collect();
        Ok(Division { quotients, remainder: TateSeries { poly: rem.poly, eps: floor }, rounds })
    }

    /// Independent check of a division: the norm contract, and
    /// `f - sum b_i g_i` below the floor.
    pub fn certify(&self, f: &TateSeries, d: &Division) -> bool {
        let r = &self.ring;
        let nf = r.poly_norm(&f.poly);
        let contract = d.quotients.iter().zip(&self.norms).all(|(b, rho)| r.poly_norm(&b.poly).mul(&Value::Pos(rho.clone())) <= nf);
        let mut acc = f.poly.clone();
        for (b, g) in d.quotients.iter().zip(&self.gens) {
            acc = r.ring.sub(&acc, &r.ring.mul(&b.poly, &g.poly));
        }
        let resid = r.poly_norm(&acc);
        let close = match &d.remainder.eps {
            None => resid == Value::Zero,
            Some(e) => resid < Value::Pos(e.clone()),
        };
        contract && close
    }
}

pub fn strong_division(ring: &Arc<TateRing>, f: &TateSeries, gens: &[TateSeries], eps: Option<&DegreeElement>) -> Result<Division> {
    Divider::new(ring, gens)?.divide(f, eps)
}

#[derive(Clone, Debug)]
pub struct Perturbation {
    pub gens: Vec<TateSeries>,
    /// `max ||delta_i|| / ||g_i||`, below 1.
    pub contraction: Value,
}

pub fn perturb_generators(ring: &Arc<TateRing>, gens: &[TateSeries], deltas: &[TateSeries]) -> Result<Perturbation> {
    if gens.len() != deltas.len() {
        return Err(Error::Usage("one perturbation per generator".into()));
    }
    let mut contraction = Value::Zero;
    let mut out = Vec::with_capacity(gens.len());
    for (g, d) in gens.iter().zip(deltas) {
        let Value::Pos(ng) = ring.gauss_norm(g)? else {
            return Err(Error::Usage("zero generator".into()));
        };
        let nd = ring.gauss_norm(d)?;
        if nd >= Value::Pos(ng.clone()) {
            return Err(Error::Usage(format!("perturbation of norm {} is not below {ng}", fmt_value(&nd))));
        }
        if let Value::Pos(x) = &nd {
            contraction = contraction.max(Value::Pos(x.div(&ng)));
        }
        out.push(ring.add(g, d));
    }
    Ok(Perturbation { gens: out, contraction })
}

pub fn fmt_value(v: &Value) -> String {
    match v {
        Value::Zero => "0".into(),
        Value::Pos(d) => d.to_string(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub verdict: Verdict,
    pub reason: String,
}

impl Finding {
    pub fn new(verdict: Verdict, reason: impl Into<String>) -> Finding {
        Finding { verdict, reason: reason.into() }
    }
}

/// Strong generation of the ideal spanned by `gens`: division with the
/// norm contract must succeed on the witnesses (asserted to lie in the
/// ideal) and on random combinations; a pass needs a single generator or a
/// geometrically reduced reduction with geometrically integral components.
pub fn is_strongly_generating(ring: &Arc<TateRing>, gens: &[TateSeries], witnesses: &[TateSeries], samples: usize, eps: Option<&DegreeElement>) -> Result<Finding> {
    if gens.is_empty() {
        return Ok(Finding::new(Verdict::Pass, "empty family"));
    }
    for g in gens {
        if ring.gauss_norm(g)?.is_zero() {
            return Ok(Finding::new(Verdict::Fail, "zero member"));
        }
    }
    let div = Divider::new(ring, gens)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut tests: Vec<TateSeries> = witnesses.to_vec();
    for _ in 0..samples {
        let mut f = ring.zero();
        for g in gens {
            let c = ring.random_series(&mut rng, 2, 2);
            f = ring.add(&f, &ring.mul(&c, g));
        }
        tests.push(f);
    }
    for f in &tests {
        if ring.gauss_norm(f)?.is_zero() {
            continue;
        }
        let ok = match div.divide(f, eps) {
            Ok(d) => div.certify(f, &d),
            Err(Error::Precision(_)) => false,
            Err(e) => return Err(e),
        };
        if !ok {
            return Ok(Finding::new(Verdict::Fail, format!("no division of {} meets the norm contract", ring.display(f))));
        }
    }
    if gens.len() == 1 {
        return Ok(Finding::new(Verdict::Pass, "single generator; the Gauss norm is multiplicative"));
    }
    let red = div.reduced_ideal();
    let geometric = red.is_geometrically_reduced().unwrap_or(false)
        && red.minimal_primes().is_ok_and(|ps| ps.iter().all(|p| p.is_geometrically_irreducible().unwrap_or(false)));
    if geometric {
        return Ok(Finding::new(Verdict::Pass, "reduction geometrically reduced with geometrically integral components"));
    }
    Ok(Finding::new(Verdict::Inconclusive, format!("divisions succeeded on {} elements; reduction {} not covered by the criterion", tests.len(), red.display())))
}

/// `u: k{T/r} -> k{T/r} / (a_1, ..., a_m)`.
#[derive(Clone, Debug)]
pub struct TatePresentation {
    pub ring: Arc<TateRing>,
    pub relators: Vec<TateSeries>,
    pub rho: Vec<Value>,
    strong: OnceLock<Finding>,
    distinguished: OnceLock<bool>,
}

/// Random combinations tried when a presentation checks its relators.
pub const STRONG_SAMPLES: usize = 6;

impl TatePresentation {
    pub fn new(ring: &Arc<TateRing>, relators: Vec<TateSeries>) -> Result<TatePresentation> {
        let relators: Vec<TateSeries> = relators.into_iter().filter(|a| !(a.is_exact() && a.poly.is_zero())).collect();
        let rho = relators.iter().map(|a| ring.gauss_norm(a)).collect::<Result<Vec<_>>>()?;
        Ok(TatePresentation { ring: ring.clone(), relators, rho, strong: OnceLock::new(), distinguished: OnceLock::new() })
    }

    pub fn from_strs(ring: &Arc<TateRing>, relators: &[&str]) -> Result<TatePresentation> {
        let rs = relators.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        TatePresentation::new(ring, rs)
    }

    /// Runs the strong-generation verifier once and records the outcome.
    pub fn strongly_generating(&self) -> Result<&Finding> {
        if let Some(f) = self.strong.get() {
            return Ok(f);
        }
        let f = is_strongly_generating(&self.ring, &self.relators, &[], STRONG_SAMPLES, None)?;
        Ok(self.strong.get_or_init(|| f))
    }

    pub fn distinguished_flag(&self) -> Option<bool> {
        self.distinguished.get().copied()
    }

    fn divider(&self) -> Result<Divider> {
        Divider::new(&self.ring, &self.relators)
    }

    pub fn display(&self) -> String {
        let r: Vec<String> = self.relators.iter().map(|a| self.ring.display(a)).collect();
        let vars: Vec<String> = self.ring.ring.vars.iter().zip(&self.ring.radii).map(|(v, r)| format!("{v}/{r}")).collect();
        format!("{}{{{}}} / ({})", self.ring.k, vars.join(", "), r.join(", "))
    }
}

/// `(a_1~, ..., a_m~)` in `k~[r\T]`; needs every `||a_i||` in `Gamma`.
pub fn reduce_presentation(p: &TatePresentation) -> Result<GradedIdeal> {
    for (a, rho) in p.relators.iter().zip(&p.rho) {
        if let Value::Pos(d) = rho {
            if !p.ring.k.in_gamma(d) {
                return Err(Error::OutOfRange(format!("norm {d} of {} is not in Gamma", p.ring.display(a))));
            }
        }
    }
    p.ring.reduced_ideal(&p.relators)
}

/// Whether `k~[r\T] / (a~)` is reduced, for a strongly generating family.
pub fn is_distinguished(p: &TatePresentation) -> Result<bool> {
    if let Some(d) = p.distinguished.get() {
        return Ok(*d);
    }
    let sg = p.strongly_generating()?;
    match sg.verdict {
        Verdict::Pass => {}
        Verdict::Fail => return Err(Error::NotStronglyGenerating(sg.reason.clone())),
        Verdict::Inconclusive => return Err(Error::Inconclusive(sg.reason.clone())),
    }
    let d = reduce_presentation(p)?.is_reduced()?;
    Ok(*p.distinguished.get_or_init(|| d))
}

/// Quotient norm of the image of `a`, by descent: subtract lifts of
/// cofactors while `a~` lies in the reduced ideal.
pub fn quotient_norm(p: &TatePresentation, a: &TateSeries, eps: Option<&DegreeElement>) -> Result<Value> {
    Ok(quotient_representative(p, a, eps)?.1)
}

/// A representative of the class of `a` whose Gauss norm is the quotient
/// norm, together with that norm.
pub fn quotient_representative(p: &TatePresentation, a: &TateSeries, eps: Option<&DegreeElement>) -> Result<(TateSeries, Value)> {
    let r = &p.ring;
    if p.relators.is_empty() {
        return Ok((a.clone(), r.gauss_norm(a)?));
    }
    let div = p.divider()?;
    let floor = max_opt(a.eps.clone(), eps.cloned()).or_else(|| r.k.default_eps());
    let mut x = a.clone();
    for _ in 0..MAX_ROUNDS {
        let n = r.gauss_norm(&x)?;
        let Value::Pos(top) = n.clone() else { return Ok((x, Value::Zero)) };
        if floor.as_ref().is_some_and(|e| top < *e) {
            return Err(Error::Precision(format!("descent reached the floor {}", floor.unwrap())));
        }
        match div.step(&x)? {
            None => return Ok((x, n)),
            Some(hs) => {
                for (h, g) in hs.iter().zip(&div.gens) {
                    x = r.sub(&x, &r.mul(h, g));
                }
                if x.poly.is_zero() && x.eps.is_none() {
                    return Ok((x, Value::Zero));
                }
                x = r.truncate(x.poly, floor.clone());
            }
        }
    }
    Err(Error::Precision(format!("descent did not settle in {MAX_ROUNDS} rounds")))
}

/// Spectral seminorm of the image of `a`, for a distinguished presentation.
pub fn spectral_norm_in_quotient(p: &TatePresentation, a: &TateSeries, eps: Option<&DegreeElement>) -> Result<Value> {
    if !is_distinguished(p)? {
        return Err(Error::Usage("spectral norm needs a distinguished presentation; the quotient norm is only an upper bound".into()));
    }
    quotient_norm(p, a, eps)
}

/// `A -> A (x)^ k(T'/r')^`, with elements written `sum a_J T'^J`.
#[derive(Clone, Debug)]
pub struct GaussExtension {
    pub base: TatePresentation,
    pub ring: Arc<TateRing>,
    pub presentation: TatePresentation,
    pub new_radii: Vec<DegreeElement>,
}

pub fn extend_scalars_gauss(p: &TatePresentation, names: &[&str], radii: Vec<DegreeElement>) -> Result<GaussExtension> {
    let mut vars = p.ring.ring.vars.clone();
    vars.extend(names.iter().map(|s| s.to_string()));
    let mut all = p.ring.radii.clone();
    all.extend(radii.iter().cloned());
    let ring = TateRing::with_names(&p.ring.k, vars, all)?;
    let rel = p.relators.iter().map(|a| TateSeries { poly: p.ring.ring.transfer(&a.poly, &ring.ring), eps: a.eps.clone() }).collect();
    let presentation = TatePresentation::new(&ring, rel)?;
    Ok(GaussExtension { base: p.clone(), ring, presentation, new_radii: radii })
}

impl GaussExtension {
    pub fn embed(&self, a: &TateSeries) -> TateSeries {
        TateSeries { poly: self.base.ring.ring.transfer(&a.poly, &self.ring.ring), eps: a.eps.clone() }
    }

    /// `sum a_J T'^J`.
    pub fn assemble(&self, coeffs: &[(Mono, TateSeries)]) -> TateSeries {
        let n = self.base.ring.nvars();
        let mut acc = self.ring.zero();
        for (j, a) in coeffs {
            let mut m = vec![0u32; n];
            m.extend(j.iter().copied());
            let t = TateSeries::exact(self.ring.ring.monomial(m, self.ring.k.field().one()));
            acc = self.ring.add(&acc, &self.ring.mul(&self.embed(a), &t));
        }
        acc
    }

    fn radius(&self, j: &[u32]) -> DegreeElement {
        let mut d = self.ring.k.ambient().one();
        for (r, &e) in self.new_radii.iter().zip(j) {
            d = d.mul(&r.pow(e as i64));
        }
        d
    }

    /// Per-term values `||a_J|| r'^J`, with the spectral norm of `A`.
    pub fn term_values(&self, coeffs: &[(Mono, TateSeries)], eps: Option<&DegreeElement>) -> Result<Vec<Value>> {
        coeffs
            .iter()
            .map(|(j, a)| Ok(spectral_norm_in_quotient(&self.base, a, eps)?.mul(&Value::Pos(self.radius(j)))))
            .collect()
    }

    /// `max_J ||a_J|| r'^J`.
    pub fn double_max_norm(&self, coeffs: &[(Mono, TateSeries)], eps: Option<&DegreeElement>) -> Result<Value> {
        Ok(self.term_values(coeffs, eps)?.into_iter().max().unwrap_or(Value::Zero))
    }

    /// Spectral norm computed in the extended presentation.
    pub fn norm(&self, x: &TateSeries, eps: Option<&DegreeElement>) -> Result<Value> {
        spectral_norm_in_quotient(&self.presentation, x, eps)
    }
}

/// A member of an orthogonal Schauder basis of `k(T/r)^` over `k`, as a
/// rational function in `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchauderElement {
    pub num: Vec<Elem>,
    pub den: Vec<Elem>,
    pub norm: DegreeElement,
}

impl SchauderElement {
    pub fn display(&self, k: &Field) -> String {
        let n = upoly::display(k, &self.num, "T");
        if upoly::deg(&self.den) == 0 {
            return n;
        }
        let d = upoly::display(k, &self.den, "T");
        let wrap = |s: String, p: &[Elem]| if p.iter().filter(|c| !k.is_zero(c)).count() > 1 { format!("({s})") } else { s };
        format!("{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }
}

fn monic_polys(k: &Field, d: usize) -> Vec<Vec<Elem>> {
    let q = k.order_u64().expect("finite field");
    let count = q.pow(d as u32);
    (0..count)
        .map(|mut i| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push(k.element_from_index(i % q));
                i /= q;
            }
            c.push(k.one());
            c
        })
        .collect()
}

/// Monic irreducible polynomials of degree `d` over a finite field.
pub fn monic_irreducibles(k: &Field, d: usize) -> Result<Vec<Vec<Elem>>> {
    let mut out = Vec::new();
    for p in monic_polys(k, d) {
        if factor::is_irreducible(k, &p)? {
            out.push(p);
        }
    }
    Ok(out)
}

/// `T^i` for `i >= 0` and `T^d / P^m` for lifts `P` of monic irreducibles
/// of `k~^1[T]`, with `deg P^m <= bound`.
fn unit_radius_basis(k: &ValuedField, bound: usize) -> Result<Vec<(Vec<Elem>, Vec<Elem>)>> {
    let kappa = k.residue_field();
    if !kappa.is_finite() {
        return Err(Error::Unsupported(format!("enumerating irreducibles over the infinite residue field {kappa}")));
    }
    let f = k.field();
    let mut out = Vec::new();
    for i in 0..=bound {
        out.push((upoly::x_pow(f, i), upoly::constant(f, f.one())));
    }
    for d in 1..=bound {
        for pt in monic_irreducibles(kappa, d)? {
            let p: Vec<Elem> = pt.iter().map(|c| k.lift_coeff(c)).collect();
            for m in 1..=bound / d {
                let pm = upoly::pow(f, &p, m);
                for e in 0..d {
                    out.push((upoly::x_pow(f, e), pm.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// `sum c_i S^i` with `S = T^n / c`.
fn substitute(f: &Field, p: &[Elem], n: usize, c: &Elem) -> Result<Vec<Elem>> {
    let ci = f.inv(c)?;
    let mut out = vec![f.zero(); (p.len().max(1) - 1) * n + 1];
    for (i, a) in p.iter().enumerate() {
        out[i * n] = f.mul(a, &f.pow(&ci, i as u64));
    }
    Ok(upoly::trim(out, f))
}

/// Orthogonal Schauder basis of `k(T/r)^` over `k`, truncated at `bound`.
pub fn schauder_basis(k: &ValuedField, r: &DegreeElement, bound: usize) -> Result<Vec<SchauderElement>> {
    let f = k.field();
    let one = upoly::constant(f, f.one());
    let laurent = || {
        (-(bound as i64)..=bound as i64)
            .map(|i| {
                let (num, den) = if i >= 0 { (upoly::x_pow(f, i as usize), one.clone()) } else { (one.clone(), upoly::x_pow(f, (-i) as usize)) };
                SchauderElement { num, den, norm: r.pow(i) }
            })
            .collect()
    };
    let order = if k.is_trivially_valued() {
        if r.is_one() {
            Some(1)
        } else {
            None
        }
    } else {
        order_modulo(r, &k.abs_group())?
    };
    let Some(n) = order else { return Ok(laurent()) };
    let n = n as usize;
    // r^n = |c| with c a power of the uniformizer.
    let c = match k.uniformizer() {
        None => f.one(),
        Some(pi) => {
            let e = integer_coords(&r.pow(n as i64), &k.abs_group()).expect("r^n in |k^x|")[0];
            f.pow_i64(&pi, e)?
        }
    };
    let mut out = Vec::new();
    for (num, den) in unit_radius_basis(k, bound)? {
        let num = substitute(f, &num, n, &c)?;
        let den = substitute(f, &den, n, &c)?;
        for a in 0..n {
            out.push(SchauderElement { num: upoly::shift(f, &num, a), den: den.clone(), norm: r.pow(a as i64) });
        }
    }
    Ok(out)
}

/// Residue in `k~^1(T)` of a basis element of norm one with integral
/// coefficients.
pub fn schauder_residue(k: &ValuedField, e: &SchauderElement) -> Option<(Vec<Elem>, Vec<Elem>)> {
    if !e.norm.is_one() {
        return None;
    }
    let kappa = k.residue_field();
    let red = |p: &[Elem]| -> Option<Vec<Elem>> {
        let v = p
            .iter()
            .map(|c| match k.abs(c) {
                Value::Zero => Some(kappa.zero()),
                Value::Pos(d) if d.is_one() => Some(k.residue(c).unwrap().coeff),
                Value::Pos(d) if d < k.ambient().one() => Some(kappa.zero()),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(upoly::trim(v, kappa))
    };
    Some((red(&e.num)?, red(&e.den)?))
}

/// `r` given as `q^e` for rationals, inside the value group of `k`.
pub fn radius(k: &ValuedField, q: &Rat, e: &Rat) -> Result<DegreeElement> {
    if e.is_one() {
        k.ambient().from_rational(q)
    } else {
        k.ambient().power_of_rational(q, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::rat;

    fn q2() -> Arc<ValuedField> {
        ValuedField::p_adic(2, &[]).unwrap()
    }

    fn unit(k: &Arc<ValuedField>, vars: &[&str]) -> Arc<TateRing> {
        TateRing::unit(k, vars).unwrap()
    }

    fn v(k: &ValuedField, n: i64, d: i64) -> Value {
        Value::Pos(k.ambient().from_rational(&rat(n, d)).unwrap())
    }

    #[test]
    fn gauss_norm_examples() {
        let k = q2();
        let r = unit(&k, &["T"]);
        assert_eq!(r.gauss_norm(&r.parse("T^2 - 2").unwrap()).unwrap(), v(&k, 1, 1));
        assert_eq!(r.gauss_norm(&r.parse("2*T + 4").unwrap()).unwrap(), v(&k, 1, 2));
        assert_eq!(r.gauss_norm(&r.zero()).unwrap(), Value::Zero);
        let big = TateRing::new(&k, &["T"], vec![k.ambient().from_rational(&rat(4, 1)).unwrap()]).unwrap();
        assert_eq!(big.gauss_norm(&big.parse("T").unwrap()).unwrap(), v(&k, 4, 1));
    }

    #[test]
    fn reductions() {
        let k = q2();
        let r = unit(&k, &["T"]);
        let p = TatePresentation::from_strs(&r, &["T^2 - 2"]).unwrap();
        let red = reduce_presentation(&p).unwrap();
        assert_eq!(red.display(), "(T^2)");
        assert!(!is_distinguished(&p).unwrap());
        let p = TatePresentation::from_strs(&r, &["T^2 - T"]).unwrap();
        assert!(is_distinguished(&p).unwrap());
        let t = r.parse("T").unwrap();
        assert_eq!(spectral_norm_in_quotient(&p, &t, None).unwrap(), v(&k, 1, 1));
        assert_eq!(spectral_norm_in_quotient(&p, &p.relators[0], None).unwrap(), Value::Zero);
        let c = r.parse("6").unwrap();
        assert_eq!(spectral_norm_in_quotient(&p, &c, None).unwrap(), v(&k, 1, 2));
    }

    #[test]
    fn division_examples() {
        let k = ValuedField::trivial(&Field::Rational, &[rat(2, 1)]).unwrap();
        let r = unit(&k, &["T"]);
        let g = r.parse("T^2 - T").unwrap();
        let f = r.parse("T^3 - T").unwrap();
        let d = strong_division(&r, &f, &[g.clone()], None).unwrap();
        assert_eq!(r.display(&d.quotients[0]), "T + 1");
        assert!(strong_division(&r, &r.one(), &[r.parse("T").unwrap()], None).is_err());
        let q = ValuedField::p_adic(3, &[]).unwrap();
        let r3 = unit(&q, &["x", "y"]);
        let gens = [r3.parse("x").unwrap(), r3.parse("y").unwrap()];
        let deltas = [r3.parse("3*y").unwrap(), r3.parse("3*x").unwrap()];
        let pert = perturb_generators(&r3, &gens, &deltas).unwrap();
        assert_eq!(pert.contraction, v(&q, 1, 3));
        let eps = q.ambient().from_rational(&rat(1, 3i64.pow(12))).unwrap();
        let div = Divider::new(&r3, &pert.gens).unwrap();
        for g in &gens {
            let dd = div.divide(g, Some(&eps)).unwrap();
            assert!(div.certify(g, &dd));
        }
        let t = gens[0].clone();
        assert!(perturb_generators(&r3, &[t.clone()], &[r3.one()]).is_err());
    }

    #[test]
    fn strong_generation_examples() {
        let k = q2();
        let r = unit(&k, &["T"]);
        let gens = [r.parse("T^2 - T").unwrap()];
        assert_eq!(is_strongly_generating(&r, &gens, &[], 4, None).unwrap().verdict, Verdict::Pass);
        let two = [r.parse("2*T").unwrap()];
        let w = [r.parse("T").unwrap()];
        assert_eq!(is_strongly_generating(&r, &two, &w, 4, None).unwrap().verdict, Verdict::Pass);
        let kk = ValuedField::trivial(&Field::Prime(3), &[rat(2, 1)]).unwrap();
        let rr = unit(&kk, &["x", "y"]);
        let gens = [rr.parse("x*y").unwrap(), rr.parse("x^2").unwrap()];
        assert_eq!(is_strongly_generating(&rr, &gens, &[], 4, None).unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn laurent_presentation() {
        let k = ValuedField::laurent(&Field::Prime(3), "t", &[]).unwrap();
        let two = k.ambient().from_rational(&rat(2, 1)).unwrap();
        let r = TateRing::new(&k, &["T", "S"], vec![two.clone(), two.inv()]).unwrap();
        let p = TatePresentation::from_strs(&r, &["S*T - 1"]).unwrap();
        assert!(is_distinguished(&p).unwrap());
        let x = r.parse("t*T^2 + S").unwrap();
        assert_eq!(spectral_norm_in_quotient(&p, &x, None).unwrap(), Value::Pos(two.clone()));
    }

    #[test]
    fn scalar_extension() {
        let k = q2();
        let r = unit(&k, &["T"]);
        let p = TatePresentation::from_strs(&r, &["T^2 - T"]).unwrap();
        let rp = k.ambient().power_of_rational(&rat(2, 1), &rat(1, 2)).unwrap();
        let ext = extend_scalars_gauss(&p, &["U"], vec![rp.clone()]).unwrap();
        let a = r.parse("2*T + 1").unwrap();
        let coeffs = vec![(vec![0], a.clone()), (vec![1], r.parse("T").unwrap())];
        let x = ext.assemble(&coeffs);
        assert_eq!(ext.norm(&x, None).unwrap(), ext.double_max_norm(&coeffs, None).unwrap());
        assert_eq!(ext.norm(&x, None).unwrap(), Value::Pos(rp));
    }

    #[test]
    fn schauder_over_f2() {
        let k = ValuedField::trivial(&Field::Prime(2), &[rat(2, 1)]).unwrap();
        let one = k.ambient().one();
        let b = schauder_basis(&k, &one, 2).unwrap();
        let shown: Vec<String> = b.iter().map(|e| e.display(k.field())).collect();
        assert_eq!(shown, ["1", "T", "T^2", "1/T", "1/T^2", "1/(T + 1)", "1/(T^2 + 1)", "1/(T^2 + T + 1)", "T/(T^2 + T + 1)"]);
        let two = k.ambient().from_rational(&rat(2, 1)).unwrap();
        assert_eq!(schauder_basis(&k, &two, 2).unwrap().len(), 5);
        let q = ValuedField::p_adic(2, &[]).unwrap();
        let s = q.ambient().power_of_rational(&rat(2, 1), &rat(1, 2)).unwrap();
        let b = schauder_basis(&q, &s, 1).unwrap();
        assert_eq!(b.len(), 2 * 4);
        assert_eq!(b[1].norm, s);
    }
}
