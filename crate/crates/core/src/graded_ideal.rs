//! Ideals of graded polynomial rings over split corpoids.
//!
//! Membership and Groebner bases use the Laurent form
//! `F^1[T, U, V] / (U V - 1)`. Radicals, primes, dimension, components and
//! geometric properties are read off the extension to `F^1(u)[T]`: a
//! homogeneous ideal and its extension have the same minimal primes, the
//! same radical and the same dimension over the corpoid.

use std::sync::{Arc, OnceLock};

use crate::arith::field::{Elem, Field};
use crate::arith::linalg;
use crate::corpoid::{GradedPolyRing, GradedPolynomial, LaurentTranslation};
use crate::error::{Error, Result};
use crate::poly::components;
use crate::poly::decomp::{self, display_gb, Localization};
use crate::poly::geometric;
use crate::poly::groebner;
use crate::poly::ideal::Ideal;
use crate::poly::mfactor::embed_from;
use crate::poly::mpoly::{MonomialOrder, Poly, PolyRing};

/// Largest quotient dimension for which components and geometric
/// irreducibility are attempted.
pub const DEFAULT_DIM_BOUND: i64 = 4;

#[derive(Debug)]
pub struct GradedIdeal {
    ring: Arc<GradedPolyRing>,
    gens: Vec<GradedPolynomial>,
    dim_bound: i64,
    translated: OnceLock<(Arc<LaurentTranslation>, Vec<Poly>)>,
    generic: OnceLock<Ideal>,
    tracked: OnceLock<(Vec<Poly>, Vec<Vec<Poly>>)>,
}

impl Clone for GradedIdeal {
    fn clone(&self) -> Self {
        GradedIdeal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            dim_bound: self.dim_bound,
            translated: self.translated.clone(),
            generic: self.generic.clone(),
            tracked: self.tracked.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct GradedComponent {
    pub primes: Vec<GradedIdeal>,
    /// Homogeneous of degree 1; equal to 1 on the component and 0 elsewhere.
    pub idempotent: GradedPolynomial,
}

impl GradedIdeal {
    pub fn new(ring: &Arc<GradedPolyRing>, gens: Vec<GradedPolynomial>) -> Result<GradedIdeal> {
        for g in &gens {
            if !ring.is_homogeneous(g) {
                return Err(Error::NotHomogeneous(ring.display(g)));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(GradedIdeal { ring: ring.clone(), gens, dim_bound: DEFAULT_DIM_BOUND, translated: OnceLock::new(), generic: OnceLock::new(), tracked: OnceLock::new() })
    }

    pub fn from_strs(ring: &Arc<GradedPolyRing>, gens: &[&str]) -> Result<GradedIdeal> {
        let gs = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        GradedIdeal::new(ring, gs)
    }

    pub fn zero(ring: &Arc<GradedPolyRing>) -> GradedIdeal {
        GradedIdeal::new(ring, vec![]).unwrap()
    }

    /// The graded ideal generated by the (homogeneous) generic ideal `i`.
    pub fn from_generic(ring: &Arc<GradedPolyRing>, i: &Ideal) -> Result<GradedIdeal> {
        let gens = i.gb().iter().map(|g| ring.from_generic(g, None)).collect::<Result<Vec<_>>>()?;
        let out = GradedIdeal::new(ring, gens)?;
        let _ = out.generic.set(i.clone());
        Ok(out)
    }

    pub fn with_dim_bound(mut self, bound: i64) -> GradedIdeal {
        self.dim_bound = bound;
        self
    }

    pub fn ring(&self) -> &Arc<GradedPolyRing> {
        &self.ring
    }

    pub fn gens(&self) -> &[GradedPolynomial] {
        &self.gens
    }

    fn translated(&self) -> &(Arc<LaurentTranslation>, Vec<Poly>) {
        self.translated.get_or_init(|| {
            let tr = Arc::new(LaurentTranslation::new(&self.ring));
            let mut gens: Vec<Poly> = self.gens.iter().map(|g| tr.translate_stripped(g).0).collect();
            gens.extend(tr.relations());
            let gb = groebner::groebner(&tr.target, &gens);
            (tr, gb)
        })
    }

    pub fn translation(&self) -> &Arc<LaurentTranslation> {
        &self.translated().0
    }

    /// Reduced Groebner basis of the translated ideal (Laurent relations
    /// included) for grevlex with the Laurent pairs last.
    pub fn groebner(&self) -> &[Poly] {
        &self.translated().1
    }

    /// The extension to `F^1(u)[T]`.
    pub fn generic(&self) -> &Ideal {
        self.generic.get_or_init(|| {
            let gr = self.ring.generic_ring().clone();
            Ideal::new(gr, self.gens.iter().map(|g| self.ring.to_generic(g)).collect())
        })
    }

    pub fn contains(&self, p: &GradedPolynomial) -> bool {
        let (tr, gb) = self.translated();
        groebner::reduce(&tr.target, &tr.translate(p), gb).is_zero()
    }

    /// Homogeneous `h_i` of degree `deg p / deg g_i` with `p = sum h_i g_i`,
    /// or `None` when `p` is not in the ideal.
    pub fn cofactors(&self, p: &GradedPolynomial) -> Option<Vec<GradedPolynomial>> {
        let tr = self.translation();
        let r = &tr.target;
        let (basis, cof) = self.tracked.get_or_init(|| {
            let mut gens: Vec<Poly> = self.gens.iter().map(|g| tr.translate(g)).collect();
            gens.extend(tr.relations());
            groebner::groebner_tracked(r, &gens)
        });
        let (quots, rem) = groebner::reduce_with_quotients(r, &tr.translate(p), basis);
        if !rem.is_zero() {
            return None;
        }
        Some(
            self.gens
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    let mut h = r.zero();
                    for (q, c) in quots.iter().zip(cof) {
                        if !q.is_zero() {
                            h = r.add(&h, &r.mul(q, &c[i]));
                        }
                    }
                    tr.component(&h, &p.degree.div(&g.degree))
                })
                .collect(),
        )
    }

    pub fn is_unit(&self) -> bool {
        self.generic().is_unit()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_subset_of(&self, o: &GradedIdeal) -> bool {
        self.gens.iter().all(|g| o.contains(g))
    }

    pub fn equals(&self, o: &GradedIdeal) -> bool {
        self.is_subset_of(o) && o.is_subset_of(self)
    }

    pub fn add_gens(&self, extra: &[GradedPolynomial]) -> Result<GradedIdeal> {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Ok(GradedIdeal::new(&self.ring, g)?.with_dim_bound(self.dim_bound))
    }

    pub fn reduce(&self, p: &GradedPolynomial) -> Result<GradedPolynomial> {
        let nf = self.generic().reduce(&self.ring.to_generic(p));
        self.ring.from_generic(&nf, Some(&p.degree))
    }

    pub fn is_reduced(&self) -> Result<bool> {
        decomp::is_radical(self.generic())
    }

    pub fn radical(&self) -> Result<GradedIdeal> {
        GradedIdeal::from_generic(&self.ring, &decomp::radical(self.generic())?).map(|r| r.with_dim_bound(self.dim_bound))
    }

    pub fn minimal_primes(&self) -> Result<Vec<GradedIdeal>> {
        decomp::minimal_primes(self.generic())?
            .iter()
            .map(|p| GradedIdeal::from_generic(&self.ring, p).map(|r| r.with_dim_bound(self.dim_bound)))
            .collect()
    }

    pub fn is_prime(&self) -> Result<bool> {
        decomp::is_prime(self.generic())
    }

    /// Dimension over the corpoid (the degree variables are not counted).
    pub fn dimension(&self) -> i64 {
        self.generic().dimension()
    }

    pub fn is_geometrically_reduced(&self) -> Result<bool> {
        geometric::is_geometrically_reduced(self.generic())
    }

    /// Geometric irreducibility of a prime, decided over an algebraic
    /// closure of `F^1(u)`.
    pub fn is_geometrically_irreducible(&self) -> Result<bool> {
        if !self.is_prime()? {
            return Err(Error::NotPrime(self.display()));
        }
        let d = self.dimension();
        if d > self.dim_bound {
            return Err(Error::Inconclusive(format!("dimension {d} exceeds the bound {}", self.dim_bound)));
        }
        geometric::is_geometrically_irreducible(self.generic())
    }

    pub fn connected_components(&self) -> Result<Vec<GradedComponent>> {
        let d = self.dimension();
        if d > self.dim_bound {
            return Err(Error::Inconclusive(format!("dimension {d} exceeds the bound {}", self.dim_bound)));
        }
        let one = self.ring.corpoid.ambient().one();
        components::connected_components(self.generic())?
            .into_iter()
            .map(|c| {
                let primes = c
                    .primes
                    .iter()
                    .map(|p| GradedIdeal::from_generic(&self.ring, p).map(|r| r.with_dim_bound(self.dim_bound)))
                    .collect::<Result<Vec<_>>>()?;
                let idempotent = self.ring.from_generic(&c.idempotent, Some(&one))?;
                Ok(GradedComponent { primes, idempotent })
            })
            .collect()
    }

    pub fn display(&self) -> String {
        let g: Vec<String> = self.gens.iter().map(|p| self.ring.display(p)).collect();
        format!("({})", g.join(", "))
    }

    /// Canonical display through the reduced generic basis.
    pub fn display_gb(&self) -> String {
        display_gb(self.generic())
    }
}

/// A finite set of graded primes of one quotient, ordered by specialization.
#[derive(Clone, Debug)]
pub struct FiniteSpectrum {
    pub primes: Vec<GradedIdeal>,
}

impl FiniteSpectrum {
    pub fn new(primes: Vec<GradedIdeal>) -> Result<FiniteSpectrum> {
        let mut out: Vec<GradedIdeal> = Vec::new();
        for p in primes {
            if !p.is_prime()? {
                return Err(Error::NotPrime(p.display()));
            }
            if !out.iter().any(|q| q.equals(&p)) {
                out.push(p);
            }
        }
        Ok(FiniteSpectrum { primes: out })
    }

    /// The minimal primes of a quotient; complete when it has dimension 0.
    pub fn of_minimal_primes(i: &GradedIdeal) -> Result<FiniteSpectrum> {
        FiniteSpectrum::new(i.minimal_primes()?)
    }

    /// Whether `primes[b]` is a specialization of `primes[a]`.
    pub fn specializes(&self, a: usize, b: usize) -> bool {
        self.primes[a].is_subset_of(&self.primes[b])
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// `kappa(xi)` in generic form together with the images of the base
/// variables.
#[derive(Clone, Debug)]
pub struct ResidueField {
    pub field: Field,
    pub description: String,
    base_field: Field,
    images: Vec<Elem>,
}

/// A fiber `Y_xi` presented as an ordinary ideal over the generic form of
/// `kappa(xi)`.
#[derive(Clone, Debug)]
pub struct Fiber {
    pub residue: ResidueField,
    pub ideal: Ideal,
}

impl Fiber {
    pub fn is_reduced(&self) -> Result<bool> {
        decomp::is_radical(&self.ideal)
    }

    pub fn is_geometrically_reduced(&self) -> Result<bool> {
        geometric::is_geometrically_reduced(&self.ideal)
    }

    pub fn minimal_primes(&self) -> Result<Vec<Ideal>> {
        decomp::minimal_primes(&self.ideal)
    }

    pub fn is_empty(&self) -> bool {
        self.ideal.is_unit()
    }

    pub fn display(&self) -> String {
        format!("{} over {}", display_gb(&self.ideal), self.residue.description)
    }
}

/// Residue field of a prime `xi` of the generic base ring `F^1(u)[S]`.
pub fn residue_field(xi: &Ideal) -> Result<ResidueField> {
    let ring = xi.ring().clone();
    let k = ring.field.clone();
    if xi.is_unit() {
        return Err(Error::NotPrime("(1)".into()));
    }
    let u = xi.max_independent_set();
    let loc = Localization::new(&ring, &u);
    let l = loc.field.clone();
    let ext = Ideal::new(loc.kring.clone(), xi.gens().iter().map(|g| loc.extend(g)).collect());
    let mut images = vec![l.zero(); ring.nvars()];
    for (j, &i) in u.iter().enumerate() {
        let mut level = l.clone();
        for _ in 0..j {
            level = level.base().unwrap().clone();
        }
        images[i] = embed_from(&l, &level, &level.generator().unwrap());
    }
    let names: Vec<String> = u.iter().map(|&i| ring.vars[i].clone()).collect();
    let xr = &loc.kring;
    let dim = ext.vector_space_dim().ok_or_else(|| Error::NotPrime(xi.display()))?;
    if !decomp::is_prime(xi)? {
        return Err(Error::NotPrime(xi.display()));
    }
    if dim == 1 {
        for (j, &i) in loc.xp.iter().enumerate() {
            let nf = ext.reduce(&xr.var(j));
            images[i] = nf.coeff(&xr.unit_mono()).cloned().unwrap_or_else(|| l.zero());
        }
        let description = if u.is_empty() { format!("{k}") } else { format!("{k}({})", names.join(", ")) };
        return Ok(ResidueField { field: l, description, base_field: k, images });
    }
    // A primitive coordinate among the remaining variables.
    let basis = ext.standard_monomials().unwrap();
    for (j, &_i) in loc.xp.iter().enumerate() {
        let mp = ext.min_poly(&xr.var(j)).unwrap();
        if mp.len() - 1 != dim {
            continue;
        }
        let name = format!("{}_", ring.vars[loc.xp[j]]);
        let kappa = Field::extension_unchecked(&l, mp.clone(), &name);
        let mut powers = Vec::new();
        let mut cur = xr.one();
        for _ in 0..dim {
            powers.push(ext.coords(&cur, &basis));
            cur = ext.reduce(&xr.mul(&cur, &xr.var(j)));
        }
        let m = linalg::transpose(&powers);
        for (jj, &ii) in loc.xp.iter().enumerate() {
            let v = ext.coords(&xr.var(jj), &basis);
            let c = linalg::solve(&l, &m, &v).ok_or_else(|| Error::Inconclusive("primitive coordinate".into()))?;
            images[ii] = Elem::Ext(trim(&l, c));
        }
        for &i in &u {
            images[i] = kappa.embed(&images[i]);
        }
        let description = format!("{l}[{name}]/({})", crate::arith::upoly::display(&l, &mp, &name));
        return Ok(ResidueField { field: kappa, description, base_field: k, images });
    }
    Err(Error::Unsupported(format!("residue field of {} has no primitive coordinate", xi.display())))
}

fn trim(k: &Field, mut c: Vec<Elem>) -> Vec<Elem> {
    while c.last().is_some_and(|x| k.is_zero(x)) {
        c.pop();
    }
    c
}

/// The fiber of `Spec F[r\S, r'\T]/I -> Spec F[r\S]` over the prime `xi`
/// of the base; the first `nbase` variables of `total` are the `S`.
pub fn fiber_ring(total: &GradedIdeal, nbase: usize, xi: &GradedIdeal) -> Result<Fiber> {
    let tr = total.ring();
    let br = xi.ring();
    if br.vars[..] != tr.vars[..nbase] || br.corpoid != tr.corpoid {
        return Err(Error::Usage(format!("{} is not a prime of the base", xi.display())));
    }
    let residue = residue_field(xi.generic())?;
    fiber_over(total.generic(), nbase, &residue)
}

/// Substitute the residue map on the first `nbase` variables.
pub fn fiber_over(i: &Ideal, nbase: usize, residue: &ResidueField) -> Result<Fiber> {
    let ring = i.ring();
    if ring.field != residue.base_field {
        return Err(Error::Usage("residue field over a different base".into()));
    }
    let kappa = &residue.field;
    let fr = PolyRing::new(kappa.clone(), ring.vars[nbase..].to_vec(), MonomialOrder::GrevLex);
    let mut images: Vec<Poly> = residue.images.iter().map(|e| fr.constant(e.clone())).collect();
    images.extend((0..fr.nvars()).map(|j| fr.var(j)));
    let base = &residue.base_field;
    let gens = i.gens().iter().map(|g| ring.map_into(g, &fr, &images, &|c| embed_from(kappa, base, c))).collect();
    Ok(Fiber { residue: residue.clone(), ideal: Ideal::new(fr, gens) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpoid::Corpoid;
    use crate::degree::MultRealGroup;

    fn ring(vars: &[&str]) -> Arc<GradedPolyRing> {
        let d = MultRealGroup::from_ints(&[2]).unwrap();
        let k = Corpoid::split(&Field::Prime(3), &d, &[d.generator(0).pow_rat(&crate::arith::field::rat(-1, 1))], None).unwrap();
        GradedPolyRing::new(&k, vars.iter().map(|s| s.to_string()).collect(), vec![d.one(); vars.len()]).unwrap()
    }

    #[test]
    fn groebner_and_membership() {
        let r = ring(&["T"]);
        let i = GradedIdeal::from_strs(&r, &["T^2 - T", "T^3 - T"]).unwrap();
        let tr = i.translation();
        let mut gb: Vec<String> = i.groebner().iter().map(|g| tr.target.display(g)).collect();
        gb.sort();
        assert_eq!(gb, vec!["T^2 + 2*T", "t*t_inv + 2"]);
        assert!(i.contains(&r.parse("T^3 - T").unwrap()));
        assert!(!i.contains(&r.var(0)));
        assert!(GradedIdeal::from_strs(&r, &["1"]).unwrap().is_unit());
    }

    #[test]
    fn reducedness_and_primes() {
        let r = ring(&["T"]);
        assert!(!GradedIdeal::from_strs(&r, &["T^2"]).unwrap().is_reduced().unwrap());
        let i = GradedIdeal::from_strs(&r, &["T^2 - T"]).unwrap();
        assert!(i.is_reduced().unwrap());
        let ps = i.minimal_primes().unwrap();
        assert_eq!(ps.len(), 2);
        let cs = i.connected_components().unwrap();
        assert_eq!(cs.len(), 2);
        assert!(GradedIdeal::zero(&r).is_reduced().unwrap());
    }

    #[test]
    fn dimension_of_laurent_ring_in_free_radius() {
        let d = MultRealGroup::from_ints(&[2, 3]).unwrap();
        let k = Corpoid::split(&Field::Rational, &d, &[d.generator(0)], None).unwrap();
        let rho = d.generator(1);
        let r = GradedPolyRing::new(&k, vec!["T".into(), "S".into()], vec![rho.clone(), rho.inv()]).unwrap();
        let i = GradedIdeal::from_strs(&r, &["S*T - 1"]).unwrap();
        assert_eq!(i.dimension(), 1);
        assert!(i.is_prime().unwrap());
        assert!(i.is_geometrically_irreducible().unwrap());
    }

    #[test]
    fn fiber_at_origin() {
        let r = ring(&["S", "T"]);
        let b = ring(&["S"]);
        let i = GradedIdeal::from_strs(&r, &["T^2 - S"]).unwrap();
        let xi = GradedIdeal::from_strs(&b, &["S"]).unwrap();
        let f = fiber_ring(&i, 1, &xi).unwrap();
        assert!(!f.is_reduced().unwrap());
        let g = fiber_ring(&i, 1, &GradedIdeal::zero(&b)).unwrap();
        assert!(g.is_reduced().unwrap());
        assert_eq!(g.ideal.ring().vars, vec!["T".to_string()]);
    }
}
