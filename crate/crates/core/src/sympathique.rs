//! Verification of relative presentations `A{T/r} -> B = A{T/r}/(a)`.
//!
//! Conditions quantifying over every point of `M(A)` are decided by a
//! residue-level sufficient criterion where one is available and otherwise
//! by the fibers actually tested; the verdicts are three-valued.

use std::sync::Arc;

use serde::Serialize;

use crate::arith::field::Elem;
use crate::degree::{DegreeElement, Value};
use crate::error::{Error, Result};
use crate::graded_ideal::{fiber_over, residue_field, GradedIdeal};
use crate::poly::components;
use crate::poly::decomp::{self, display_gb, Localization};
use crate::poly::geometric;
use crate::poly::ideal::Ideal;
use crate::poly::mfactor::{embed_from, flatten_once};
use crate::poly::mpoly::{Mono, Poly, PolyRing};
use crate::tate::{
    extend_scalars_gauss, fmt_value, is_distinguished, is_strongly_generating, quotient_norm, quotient_representative, reduce_presentation, BaseKind,
    Finding, GaussExtension, TatePresentation, TateRing, TateSeries, Verdict, STRONG_SAMPLES,
};
use crate::valuation::IntegralAlgebra;

/// A rigid point of `M(A)` with coordinates in `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberPoint {
    pub coords: Vec<Elem>,
}

/// `A{T/r} / (a_1, ..., a_m)` with `A` distinguished, and the fibers to
/// sample.
#[derive(Clone, Debug)]
pub struct RelativePresentation {
    pub base: TatePresentation,
    /// `A{T/r}` presented over `k{S/s, T/r}`.
    pub total: GaussExtension,
    /// `k{T/r}`, the ring of every fiber.
    pub fiber_ring: Arc<TateRing>,
    pub relators: Vec<TateSeries>,
    /// Spectral norms `rho_i` of the relators in `A{T/r}`.
    pub rho: Vec<Value>,
    pub samples: Vec<FiberPoint>,
}

impl RelativePresentation {
    pub fn new(base: &TatePresentation, names: &[&str], radii: Vec<DegreeElement>, relators: Vec<TateSeries>, samples: Vec<FiberPoint>) -> Result<RelativePresentation> {
        if !is_distinguished(base)? {
            return Err(Error::Usage(format!("base {} is not distinguished", base.display())));
        }
        let total = extend_scalars_gauss(base, names, radii.clone())?;
        let fiber_ring = TateRing::new(&base.ring.k, names, radii)?;
        let ns = base.ring.nvars();
        let k = base.ring.k.clone();
        for x in &samples {
            if x.coords.len() != ns {
                return Err(Error::Usage(format!("fiber point needs {ns} coordinates")));
            }
            for (c, s) in x.coords.iter().zip(&base.ring.radii) {
                if k.abs(c) > Value::Pos(s.clone()) {
                    return Err(Error::Usage(format!("coordinate {} outside the polydisc", k.field().fmt_elem(c))));
                }
            }
            for a in &base.relators {
                if !k.field().is_zero(&base.ring.ring.eval_all(&a.poly, &x.coords)) {
                    return Err(Error::Usage(format!("point is not on the base: {} does not vanish", base.ring.display(a))));
                }
            }
        }
        let mut p = RelativePresentation { base: base.clone(), total, fiber_ring, relators: vec![], rho: vec![], samples };
        // Rewrite every coefficient as a norm-realizing representative, so
        // that Gauss norms in `k{S, T}` are the norms in `A{T/r}`.
        for a in relators {
            let mut coeffs = Vec::new();
            for (j, c) in p.coefficients(&a) {
                let (x, _) = quotient_representative(base, &c, None)?;
                coeffs.push((j, x));
            }
            let mut b = p.total.assemble(&coeffs);
            if let Some(e) = &a.eps {
                b = p.total.ring.truncate(b.poly, Some(e.clone()));
            }
            let rho = p.total.double_max_norm(&coeffs, None)?;
            p.relators.push(b);
            p.rho.push(rho);
        }
        Ok(p)
    }

    pub fn from_strs(base: &TatePresentation, names: &[&str], radii: Vec<DegreeElement>, relators: &[&str], samples: Vec<FiberPoint>) -> Result<RelativePresentation> {
        let vars: Vec<String> = base.ring.ring.vars.iter().cloned().chain(names.iter().map(|s| s.to_string())).collect();
        let ring = PolyRing::new(base.ring.k.field().clone(), vars, crate::poly::mpoly::MonomialOrder::GrevLex);
        let rs = relators.iter().map(|s| Ok(TateSeries::exact(ring.parse(s)?))).collect::<Result<Vec<_>>>()?;
        RelativePresentation::new(base, names, radii, rs, samples)
    }

    pub fn nbase(&self) -> usize {
        self.base.ring.nvars()
    }

    /// `a = sum_J a_J T^J` with `a_J` in `k{S/s}`.
    pub fn coefficients(&self, a: &TateSeries) -> Vec<(Mono, TateSeries)> {
        let ns = self.nbase();
        let mut parts: Vec<(Mono, Vec<(Mono, Elem)>)> = Vec::new();
        for (m, c) in &a.poly.terms {
            let (s, t) = (m[..ns].to_vec(), m[ns..].to_vec());
            match parts.iter_mut().find(|(j, _)| *j == t) {
                Some((_, v)) => v.push((s, c.clone())),
                None => parts.push((t, vec![(s, c.clone())])),
            }
        }
        parts.sort_by(|a, b| a.0.cmp(&b.0));
        parts
            .into_iter()
            .map(|(j, terms)| (j, TateSeries { poly: self.base.ring.ring.from_terms(terms), eps: a.eps.clone() }))
            .collect()
    }

    /// `a|_{D_x}` in `k{T/r}`.
    pub fn restrict(&self, a: &TateSeries, x: &FiberPoint) -> TateSeries {
        let ns = self.nbase();
        let r = &self.total.ring.ring;
        let vals: Vec<(usize, Elem)> = x.coords.iter().cloned().enumerate().collect();
        let e = r.eval_vars(&a.poly, &vals);
        let poly = self.fiber_ring.ring.from_terms(e.terms.into_iter().map(|(m, c)| (m[ns..].to_vec(), c)).collect());
        self.fiber_ring.truncate(poly, a.eps.clone())
    }

    pub fn display_point(&self, x: &FiberPoint) -> String {
        let k = self.base.ring.k.field();
        let parts: Vec<String> = self.base.ring.ring.vars.iter().zip(&x.coords).map(|(v, c)| format!("{v} = {}", k.fmt_elem(c))).collect();
        if parts.is_empty() {
            "the point".into()
        } else {
            parts.join(", ")
        }
    }

    pub fn display(&self) -> String {
        let r: Vec<String> = self.relators.iter().map(|a| self.total.ring.display(a)).collect();
        let ns = self.nbase();
        let vars: Vec<String> = self.total.ring.ring.vars[ns..].iter().zip(&self.total.new_radii).map(|(v, r)| format!("{v}/{r}")).collect();
        format!("A{{{}}} / ({}) over A = {}", vars.join(", "), r.join(", "), self.base.display())
    }

    /// `A~` as an ideal of `k~[s\S]`.
    pub fn base_reduction(&self) -> Result<GradedIdeal> {
        reduce_presentation(&self.base)
    }

    /// `A~[r\T] / (a~)` as an ideal of `k~[s\S, r\T]`.
    pub fn total_reduction(&self) -> Result<GradedIdeal> {
        let mut gens: Vec<TateSeries> = self.base.relators.iter().map(|a| self.total.embed(a)).collect();
        gens.extend(self.relators.iter().cloned());
        self.total.ring.reduced_ideal(&gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub condition: u8,
    pub verdict: Verdict,
    pub witness: String,
}

impl ConditionReport {
    fn new(condition: u8, f: Finding) -> ConditionReport {
        ConditionReport { condition, verdict: f.verdict, witness: f.reason }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SympathiqueReport {
    pub conditions: Vec<ConditionReport>,
    pub verdict: Verdict,
    /// Idempotents cutting out the opens of the splitting cover.
    pub cover: Vec<String>,
}

impl SympathiqueReport {
    pub fn condition(&self, i: u8) -> &ConditionReport {
        &self.conditions[i as usize - 1]
    }
}

fn inconclusive(e: Error) -> Finding {
    Finding::new(Verdict::Inconclusive, e.to_string())
}

/// (1) `r_i` and `rho_i` in `Gamma`.
pub fn check_radii(p: &RelativePresentation) -> Finding {
    let k = &p.base.ring.k;
    for (i, r) in p.total.new_radii.iter().enumerate() {
        if !k.in_gamma(r) {
            return Finding::new(Verdict::Fail, format!("radius {r} of {} is not in Gamma", p.fiber_ring.ring.vars[i]));
        }
    }
    for (a, rho) in p.relators.iter().zip(&p.rho) {
        match rho {
            Value::Pos(d) if k.in_gamma(d) => {}
            _ => return Finding::new(Verdict::Fail, format!("spectral norm {} of {} is not in Gamma", fmt_value(rho), p.total.ring.display(a))),
        }
    }
    Finding::new(Verdict::Pass, "radii and relator norms in Gamma")
}

/// (2) `||a_i|_{D_x}|| = rho_i`: sampled fibers, plus a coefficient of top
/// value whose reduction is a unit of `A~`.
pub fn check_fiber_norms(p: &RelativePresentation) -> Finding {
    match fiber_norms(p) {
        Ok(f) => f,
        Err(e) => inconclusive(e),
    }
}

fn fiber_norms(p: &RelativePresentation) -> Result<Finding> {
    for x in &p.samples {
        for (a, rho) in p.relators.iter().zip(&p.rho) {
            let n = p.fiber_ring.gauss_norm(&p.restrict(a, x))?;
            if n != *rho {
                return Ok(Finding::new(
                    Verdict::Fail,
                    format!("at {} the fiber norm of {} is {}, not {}", p.display_point(x), p.total.ring.display(a), fmt_value(&n), fmt_value(rho)),
                ));
            }
        }
    }
    let base_red = p.base_reduction()?;
    for (a, rho) in p.relators.iter().zip(&p.rho) {
        let coeffs = p.coefficients(a);
        let values = p.total.term_values(&coeffs, None)?;
        let mut found = false;
        for ((_, c), v) in coeffs.iter().zip(&values) {
            if v != rho {
                continue;
            }
            let Some(h) = p.base.ring.reduction(c)? else { continue };
            if base_red.add_gens(&[h])?.is_unit() {
                found = true;
                break;
            }
        }
        if !found {
            return Ok(Finding::new(
                Verdict::Inconclusive,
                format!("{} sampled fibers agree; no top coefficient of {} has a unit reduction", p.samples.len(), p.total.ring.display(a)),
            ));
        }
    }
    Ok(Finding::new(Verdict::Pass, "every relator has a top coefficient with unit reduction"))
}

/// (3) strong generation on each sampled fiber.
pub fn check_fiber_strong_generation(p: &RelativePresentation) -> Finding {
    if p.relators.is_empty() {
        return Finding::new(Verdict::Pass, "empty family");
    }
    if p.samples.is_empty() {
        return Finding::new(Verdict::Inconclusive, "no fiber sampled");
    }
    let mut verdict = Verdict::Pass;
    let mut notes = Vec::new();
    for x in &p.samples {
        let gens: Vec<TateSeries> = p.relators.iter().map(|a| p.restrict(a, x)).collect();
        let gens: Vec<TateSeries> = gens.into_iter().filter(|g| !(g.is_exact() && g.poly.is_zero())).collect();
        let f = match is_strongly_generating(&p.fiber_ring, &gens, &[], STRONG_SAMPLES, None) {
            Ok(f) => f,
            Err(e) => inconclusive(e),
        };
        match f.verdict {
            Verdict::Fail => return Finding::new(Verdict::Fail, format!("at {}: {}", p.display_point(x), f.reason)),
            Verdict::Inconclusive => {
                verdict = Verdict::Inconclusive;
                notes.push(format!("at {}: {}", p.display_point(x), f.reason));
            }
            Verdict::Pass => {}
        }
    }
    if verdict == Verdict::Pass {
        Finding::new(Verdict::Pass, format!("{} sampled fibers strongly generated", p.samples.len()))
    } else {
        Finding::new(verdict, notes.join("; "))
    }
}

/// The reduced family `p: Spec A~[r\T]/(a~) -> Spec A~`, in generic form,
/// with the base points whose fibers are examined.
#[derive(Clone, Debug)]
pub struct ReducedFamily {
    pub nbase: usize,
    /// Generic form of `A~[r\T]/(a~)`.
    pub total: Ideal,
    /// Generic form of `A~`.
    pub base: Ideal,
    pub shape: BaseShape,
    /// Primes of the base, labelled.
    pub points: Vec<(String, Ideal)>,
    /// Whether the listed points control every fiber.
    pub exhaustive: bool,
    pub note: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseShape {
    /// `A~` is the residue corpoid.
    Corpoid,
    /// `A~` has finite spectrum.
    Finite,
    /// `A~ = k~[s\S]` in one variable.
    Line,
    Other,
}

impl ReducedFamily {
    pub fn new(p: &RelativePresentation) -> Result<ReducedFamily> {
        let ns = p.nbase();
        let total = p.total_reduction()?.generic().clone();
        let base = p.base_reduction()?.generic().clone();
        let br = base.ring().clone();
        let shape = if ns == 0 {
            BaseShape::Corpoid
        } else if base.dimension() <= 0 {
            BaseShape::Finite
        } else if ns == 1 && base.is_zero() {
            BaseShape::Line
        } else {
            BaseShape::Other
        };
        let mut points: Vec<(String, Ideal)> = Vec::new();
        let push = |pts: &mut Vec<(String, Ideal)>, q: Ideal| {
            if !pts.iter().any(|(_, o)| o.equals(&q)) {
                pts.push((label(&q), q));
            }
        };
        // Reductions of the sampled points come first.
        let base_graded = &p.base.ring.reduction;
        for x in &p.samples {
            let mut gens = Vec::new();
            for (j, (c, s)) in x.coords.iter().zip(&p.base.ring.radii).enumerate() {
                let mut m = vec![0u32; ns];
                m[j] = 1;
                let k = &p.base.ring.k;
                let mut terms = vec![(m, base_graded.corpoid.base().one())];
                if k.abs(c) == Value::Pos(s.clone()) {
                    let r = k.residue(c).unwrap();
                    terms.push((vec![0; ns], base_graded.corpoid.base().neg(&r.coeff)));
                }
                gens.push(base_graded.from_terms(s.clone(), terms)?);
            }
            let q = GradedIdeal::new(base_graded, gens)?.generic().clone().add_gens(base.gens());
            if !q.is_unit() {
                push(&mut points, Ideal::new(br.clone(), q.gb().to_vec()));
            }
        }
        let mut exhaustive = true;
        let mut note = String::new();
        match shape {
            BaseShape::Corpoid => push(&mut points, Ideal::zero(br.clone())),
            BaseShape::Finite => {
                for q in decomp::minimal_primes(&base)? {
                    push(&mut points, q);
                }
            }
            BaseShape::Line => {
                let (bad, ci) = singular_locus(&total, ns)?;
                match bad {
                    Some(e) if !e.is_zero() => {
                        if !e.is_unit() {
                            for q in decomp::minimal_primes(&e.in_ring(&br))? {
                                push(&mut points, q);
                            }
                        }
                    }
                    _ => {
                        exhaustive = false;
                        note = "the non-smooth locus dominates the base".into();
                    }
                }
                if !ci {
                    exhaustive = false;
                    note = "relators do not cut out a relative complete intersection".into();
                }
                push(&mut points, Ideal::zero(br.clone()));
            }
            BaseShape::Other => {
                for q in decomp::minimal_primes(&base)? {
                    push(&mut points, q);
                }
                exhaustive = false;
                note = "base shape outside the corpoid, finite and line cases".into();
            }
        }
        Ok(ReducedFamily { nbase: ns, total, base, shape, points, exhaustive, note })
    }

    pub fn fiber(&self, xi: &Ideal, extra: &[Poly]) -> Result<Ideal> {
        let total = if extra.is_empty() { self.total.clone() } else { self.total.add_gens(extra) };
        if self.nbase == 0 {
            return Ok(total);
        }
        let res = residue_field(xi)?;
        Ok(fiber_over(&total, self.nbase, &res)?.ideal)
    }

    /// Torsion-freeness over `k~[S]` through the generic point.
    pub fn is_flat(&self) -> Result<bool> {
        match self.shape {
            BaseShape::Corpoid | BaseShape::Finite => Ok(true),
            BaseShape::Line => {
                let loc = Localization::new(self.total.ring(), &[0]);
                let ext = Ideal::new(loc.kring.clone(), self.total.gens().iter().map(|g| loc.extend(g)).collect());
                let (c, _) = loc.contract(&ext);
                Ok(c.equals(&self.total))
            }
            BaseShape::Other => Err(Error::Unsupported("flatness over this base shape".into())),
        }
    }
}

/// Elimination ideal in the base variables of the locus where the
/// Jacobian in `T` drops rank, and whether the generic fiber has the
/// expected dimension.
fn singular_locus(total: &Ideal, ns: usize) -> Result<(Option<Ideal>, bool)> {
    let r = total.ring().clone();
    let nt = r.nvars() - ns;
    let rel: Vec<Poly> = total.gens().iter().filter(|g| !g.is_zero()).cloned().collect();
    let m = rel.len();
    if m == 0 {
        return Ok((Some(Ideal::unit(r)), true));
    }
    let expected = ns as i64 + nt as i64 - m as i64;
    let ci = m <= nt && total.dimension() == expected;
    if m > nt {
        return Ok((None, ci));
    }
    let jac: Vec<Vec<Poly>> = rel.iter().map(|g| (0..nt).map(|j| r.derivative(g, ns + j)).collect()).collect();
    let mut minors = Vec::new();
    for cols in subsets(nt, m) {
        let sub: Vec<Vec<Poly>> = jac.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        minors.push(det(&r, &sub));
    }
    let sing = total.add_gens(&minors);
    let elim: Vec<usize> = (ns..ns + nt).collect();
    Ok((Some(sing.eliminate(&elim)), ci))
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for mut rest in subsets(n, k - 1).into_iter().filter(|s| s.first().is_none_or(|&x| x > first)) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn det(r: &PolyRing, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = r.zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect()).collect();
        let t = r.mul(&m[0][j], &det(r, &minor));
        acc = if j % 2 == 0 { r.add(&acc, &t) } else { r.sub(&acc, &t) };
    }
    acc
}

fn label(q: &Ideal) -> String {
    if q.is_zero() {
        "(0)".into()
    } else {
        format!("({})", display_gb(q))
    }
}

fn scope(fam: &ReducedFamily) -> String {
    let pts: Vec<&str> = fam.points.iter().map(|(l, _)| l.as_str()).collect();
    format!("fibers over {}", pts.join(", "))
}

/// (4) flatness of `p` and geometric reducedness of its fibers.
pub fn check_reduction_flat_reduced(p: &RelativePresentation) -> Finding {
    match ReducedFamily::new(p).and_then(|f| flat_reduced(&f)) {
        Ok(f) => f,
        Err(e) => inconclusive(e),
    }
}

fn flat_reduced(fam: &ReducedFamily) -> Result<Finding> {
    for (label, xi) in &fam.points {
        let fiber = fam.fiber(xi, &[])?;
        if !geometric::is_geometrically_reduced(&fiber)? {
            return Ok(Finding::new(Verdict::Fail, format!("fiber over {label} is not geometrically reduced: {}", display_gb(&fiber))));
        }
    }
    let flat = match fam.is_flat() {
        Ok(true) => true,
        Ok(false) => return Ok(Finding::new(Verdict::Fail, "the reduction has torsion over the base".to_string())),
        Err(e) => return Ok(inconclusive(e)),
    };
    if flat && fam.exhaustive {
        Ok(Finding::new(Verdict::Pass, format!("flat; {} geometrically reduced", scope(fam))))
    } else {
        Ok(Finding::new(Verdict::Inconclusive, format!("{} geometrically reduced; {}", scope(fam), fam.note)))
    }
}

/// (5) geometric irreducibility of the components of the tested fibers.
pub fn check_geom_irreducible_components(p: &RelativePresentation) -> Finding {
    match ReducedFamily::new(p).and_then(|f| irreducible_components(&f)) {
        Ok(f) => f,
        Err(e) => inconclusive(e),
    }
}

fn irreducible_components(fam: &ReducedFamily) -> Result<Finding> {
    for (label, xi) in &fam.points {
        let fiber = fam.fiber(xi, &[])?;
        for q in decomp::minimal_primes(&fiber)? {
            if !geometric::is_geometrically_irreducible(&q)? {
                return Ok(Finding::new(Verdict::Fail, format!("component {} of the fiber over {label} is not geometrically irreducible", display_gb(&q))));
            }
        }
    }
    Ok(Finding::new(Verdict::Pass, format!("components of the {} geometrically irreducible", scope(fam))))
}

/// A cover of `Spec A~[r\T]/(a~)` by the supports of idempotents.
#[derive(Clone, Debug)]
pub struct SplittingCover {
    pub idempotents: Vec<Poly>,
    pub ring: Arc<PolyRing>,
}

impl SplittingCover {
    pub fn display(&self) -> Vec<String> {
        self.idempotents.iter().map(|e| self.ring.display(e)).collect()
    }
}

/// (6) opens from the connected components of the reduction, checked to
/// meet every listed fiber in nothing or one connected component.
pub fn build_splitting_cover(p: &RelativePresentation) -> (Finding, Option<SplittingCover>) {
    match ReducedFamily::new(p).and_then(|f| splitting_cover(&f)) {
        Ok(x) => x,
        Err(e) => (inconclusive(e), None),
    }
}

fn splitting_cover(fam: &ReducedFamily) -> Result<(Finding, Option<SplittingCover>)> {
    let r = fam.total.ring().clone();
    let comps = components::connected_components(&fam.total)?;
    let idempotents: Vec<Poly> = if comps.is_empty() { vec![] } else { comps.into_iter().map(|c| c.idempotent).collect() };
    let cover = SplittingCover { idempotents: idempotents.clone(), ring: r.clone() };
    for (j, e) in idempotents.iter().enumerate() {
        let cut = r.sub(&r.one(), e);
        for (label, xi) in &fam.points {
            let fiber = fam.fiber(xi, &[cut.clone()])?;
            if fiber.is_unit() {
                continue;
            }
            let n = components::connected_components(&fiber)?.len();
            if n > 1 {
                return Ok((
                    Finding::new(Verdict::Inconclusive, format!("open {j} meets the fiber over {label} in {n} connected components")),
                    Some(cover),
                ));
            }
        }
    }
    let verdict = if fam.exhaustive || matches!(fam.shape, BaseShape::Corpoid | BaseShape::Finite) { Verdict::Pass } else { Verdict::Inconclusive };
    let mut reason = format!("{} opens; each meets the {} in nothing or one connected component", idempotents.len(), scope(fam));
    if verdict != Verdict::Pass {
        reason = format!("{reason}; {}", fam.note);
    }
    Ok((Finding::new(verdict, reason), Some(cover)))
}

/// All six conditions.
pub fn check_sympathique(p: &RelativePresentation) -> SympathiqueReport {
    let (c6, cover) = build_splitting_cover(p);
    let conditions = vec![
        ConditionReport::new(1, check_radii(p)),
        ConditionReport::new(2, check_fiber_norms(p)),
        ConditionReport::new(3, check_fiber_strong_generation(p)),
        ConditionReport::new(4, check_reduction_flat_reduced(p)),
        ConditionReport::new(5, check_geom_irreducible_components(p)),
        ConditionReport::new(6, c6),
    ];
    let verdict = conditions.iter().fold(Verdict::Pass, |v, c| v.and(c.verdict));
    SympathiqueReport { conditions, verdict, cover: cover.map(|c| c.display()).unwrap_or_default() }
}

/// Sufficient criteria for `p` to stay distinguished after any complete
/// extension of `k`: a geometrically reduced reduction whose minimal primes
/// are geometrically integral, or separating witnesses of exact norm.
pub fn check_universally_distinguished(p: &TatePresentation, witnesses: &[TateSeries]) -> Finding {
    match universally_distinguished(p, witnesses) {
        Ok(f) => f,
        Err(e) => inconclusive(e),
    }
}

fn universally_distinguished(p: &TatePresentation, witnesses: &[TateSeries]) -> Result<Finding> {
    let red = reduce_presentation(p)?;
    if !red.is_reduced()? {
        return Ok(Finding::new(Verdict::Fail, format!("reduction {} is not reduced", red.display())));
    }
    if !red.is_geometrically_reduced()? {
        return Ok(Finding::new(Verdict::Inconclusive, format!("reduction {} is reduced but not geometrically reduced", red.display())));
    }
    let primes = red.minimal_primes()?;
    let mut alpha = true;
    for q in &primes {
        if !q.is_geometrically_irreducible()? {
            alpha = false;
            break;
        }
    }
    if alpha {
        return Ok(Finding::new(Verdict::Pass, "minimal primes of the reduction geometrically integral"));
    }
    let r = &p.ring;
    for (i, q) in primes.iter().enumerate() {
        let mut ok = false;
        for f in witnesses {
            let Some(h) = r.reduction(f)? else { continue };
            if q.contains(&h) || primes.iter().enumerate().any(|(j, o)| j != i && !o.contains(&h)) {
                continue;
            }
            if quotient_norm(p, f, None)? == r.gauss_norm(f)? {
                ok = true;
                break;
            }
        }
        if !ok {
            return Ok(Finding::new(Verdict::Inconclusive, format!("no separating witness for the component {}", q.display())));
        }
    }
    Ok(Finding::new(Verdict::Pass, "each component separated by a witness of exact norm"))
}

/// An integral model over `F_q[t]_(t)` and the torsion it had to kill.
#[derive(Clone, Debug)]
pub struct FormalModel {
    /// `F_q(t)[T]`; model generators have coefficients in `F_q[t]`.
    pub ring: Arc<PolyRing>,
    pub relators: Vec<Poly>,
    pub killers: Vec<Poly>,
    pub flat: bool,
    pub generic_equal: bool,
    /// Special fiber of the model against the graded reduction.
    pub special_fiber_matches: bool,
}

impl FormalModel {
    pub fn model_gens(&self) -> Vec<Poly> {
        self.relators.iter().chain(&self.killers).cloned().collect()
    }

    pub fn display_killers(&self) -> Vec<String> {
        self.killers.iter().map(|b| self.ring.display(b)).collect()
    }
}

/// Kill the `t`-torsion of `k°[T]/(a)` for `k = F_q((t))` and `r = 1`.
pub fn build_formal_model(p: &TatePresentation) -> Result<FormalModel> {
    let tr = &p.ring;
    if *tr.k.kind() != BaseKind::Laurent {
        return Err(Error::Unsupported("formal models need a Laurent series base".into()));
    }
    if tr.radii.iter().any(|r| !r.is_one()) {
        return Err(Error::Unsupported("formal models need unit radii".into()));
    }
    if p.relators.iter().any(|a| !a.is_exact()) {
        return Err(Error::Unsupported("formal models need polynomial relators".into()));
    }
    let ring = tr.ring.clone();
    let relators: Vec<Poly> = p.relators.iter().map(|a| a.poly.clone()).collect();
    let v = tr.k.valuation();
    IntegralAlgebra::from_polys(v, &ring, relators.clone())?;
    let n = ring.nvars();
    let mut flat_ring = None;
    let mut flat = Vec::new();
    for a in &relators {
        let (fr, f) = flatten_once(&ring, a)?;
        flat.push(f);
        flat_ring = Some(fr);
    }
    let killers = match flat_ring {
        None => vec![],
        Some(fr) => {
            let i = Ideal::new(fr.clone(), flat);
            let sat = i.saturate(&fr.var(n));
            let base = tr.k.field().base().unwrap().clone();
            let mut images: Vec<Poly> = (0..n).map(|j| ring.var(j)).collect();
            images.push(ring.constant(tr.k.field().generator().unwrap()));
            let top = tr.k.field().clone();
            sat.gb()
                .iter()
                .filter(|g| !i.contains(g))
                .map(|g| fr.map_into(g, &ring, &images, &|c| embed_from(&top, &base, c)))
                .collect()
        }
    };
    let mut gens = relators.clone();
    gens.extend(killers.iter().cloned());
    let model = IntegralAlgebra::from_polys(v, &ring, gens.clone())?;
    let flat = model.is_flat_module()?;
    let generic_equal = Ideal::new(ring.clone(), relators.clone()).equals(&Ideal::new(ring.clone(), gens));
    let special = model.fiber(1)?;
    let red = reduce_presentation(p)?;
    let one = tr.k.ambient().one();
    let lifted = special
        .gb()
        .iter()
        .map(|g| tr.reduction.from_terms(one.clone(), g.terms.clone()))
        .collect::<Result<Vec<_>>>()?;
    let special_fiber_matches = GradedIdeal::new(&tr.reduction, lifted)?.equals(&red);
    Ok(FormalModel { ring, relators, killers, flat, generic_equal, special_fiber_matches })
}
