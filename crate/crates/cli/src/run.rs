//! Session execution and reports.

use std::collections::HashMap;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value as Json};
use sha2::{Digest, Sha256};

use gradal_core::arith::field::{Elem, Field, Rat};
use gradal_core::corpoid::Corpoid;
use gradal_core::degree::{DegreeElement, MultRealGroup};
use gradal_core::sympathique::{build_formal_model, build_splitting_cover, check_sympathique, check_universally_distinguished, FiberPoint, RelativePresentation};
use gradal_core::tate::{
    fmt_value, is_distinguished, is_strongly_generating, radius, reduce_presentation, schauder_basis, Finding, TatePresentation, TateRing, TateSeries,
    ValuedField, Verdict, STRONG_SAMPLES,
};
use gradal_core::valuation::{GradedValuation, IntegralAlgebra, Place};
use gradal_core::Error;

use crate::ast::*;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Default, Serialize)]
pub struct Settings {
    /// Norm floor for divisions, as a radius `q` or `q^(e)`.
    pub eps: Option<String>,
    pub deg_bound: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Done,
    Error,
}

impl From<Verdict> for Status {
    fn from(v: Verdict) -> Status {
        match v {
            Verdict::Pass => Status::Pass,
            Verdict::Fail => Status::Fail,
            Verdict::Inconclusive => Status::Inconclusive,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub item: usize,
    pub command: String,
    pub status: Status,
    pub summary: String,
    pub result: Json,
    pub provenance: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: String,
    pub input_sha256: String,
    pub settings: Settings,
    pub records: Vec<Record>,
}

impl Report {
    /// 0 when every command passed or completed, 2 on any error, else 1.
    pub fn exit_code(&self) -> i32 {
        if self.records.iter().any(|r| r.status == Status::Error) {
            2
        } else if self.records.iter().all(|r| matches!(r.status, Status::Pass | Status::Done)) {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug)]
struct RelativeRecipe {
    base: TatePresentation,
    base_name: String,
    names: Vec<String>,
    radii: Vec<DegreeElement>,
    relators: Vec<TateSeries>,
}

#[derive(Clone, Debug)]
enum Obj {
    Group(Vec<Rat>),
    Field(Arc<ValuedField>),
    Corpoid(#[allow(dead_code)] Arc<Corpoid>),
    Val(GradedValuation),
    Tate(Arc<TateRing>),
    Present(TatePresentation),
    Relative(RelativeRecipe),
    Integral(IntegralAlgebra),
}

type Env = HashMap<String, Result<Obj, String>>;

fn rat(s: &str) -> Result<Rat, String> {
    Rat::from_str(s).map_err(|_| format!("bad rational {s}"))
}

fn base_field(s: &str) -> Result<Field, Error> {
    if s == "Q" {
        Ok(Field::Rational)
    } else {
        Field::finite(s[1..].parse().map_err(|_| Error::Usage(format!("bad field {s}")))?)
    }
}

fn to_radius(k: &ValuedField, r: &Radius) -> Result<DegreeElement, String> {
    let q = rat(&r.base)?;
    let e = match &r.exp {
        None => Rat::from_integer(1.into()),
        Some(e) => rat(e)?,
    };
    radius(k, &q, &e).map_err(|e| e.to_string())
}

fn lookup<'a>(env: &'a Env, name: &str) -> Result<&'a Obj, String> {
    match env.get(name) {
        Some(Ok(o)) => Ok(o),
        Some(Err(e)) => Err(format!("declaration {name} failed: {e}")),
        None => Err(format!("unknown name {name}")),
    }
}

fn group_of(env: &Env, g: &Option<String>) -> Result<Vec<Rat>, String> {
    match g {
        None => Ok(vec![]),
        Some(name) => match lookup(env, name)? {
            Obj::Group(g) => Ok(g.clone()),
            _ => Err(format!("{name} is not a group")),
        },
    }
}

fn declare(env: &Env, kind: &DeclKind) -> Result<Obj, String> {
    let es = |e: Error| e.to_string();
    match kind {
        DeclKind::Group(g) => Ok(Obj::Group(g.iter().map(|s| rat(s)).collect::<Result<_, _>>()?)),
        DeclKind::Field(spec) => {
            let k = match spec {
                FieldSpec::Trivial { base, group } => {
                    let mut g = group_of(env, group)?;
                    if g.is_empty() {
                        g.push(Rat::from_integer(2.into()));
                    }
                    ValuedField::trivial(&base_field(base).map_err(es)?, &g)
                }
                FieldSpec::PAdic { p, group } => ValuedField::p_adic(*p, &group_of(env, group)?),
                FieldSpec::Laurent { residue, var, group } => ValuedField::laurent(&base_field(residue).map_err(es)?, var, &group_of(env, group)?),
            };
            Ok(Obj::Field(k.map_err(es)?))
        }
        DeclKind::Corpoid { field } => match lookup(env, field)? {
            Obj::Field(k) => Ok(Obj::Corpoid(k.residue_corpoid().clone())),
            _ => Err(format!("{field} is not a field")),
        },
        DeclKind::Val { residue, params } => {
            let mut k = base_field(residue).map_err(es)?;
            for p in params.iter().rev() {
                k = Field::fractions(&k, p);
            }
            let amb = MultRealGroup::from_ints(&[2]).map_err(es)?;
            let c = Corpoid::trivial(&k, &amb);
            let v = if params.len() == 1 { GradedValuation::t_adic(&c) } else { GradedValuation::composite(&c, vec![Place::Adic; params.len()]) };
            Ok(Obj::Val(v.map_err(es)?))
        }
        DeclKind::Tate { field, vars } => {
            let Obj::Field(k) = lookup(env, field)? else { return Err(format!("{field} is not a field")) };
            let radii = vars.iter().map(|(_, r)| to_radius(k, r)).collect::<Result<Vec<_>, _>>()?;
            let names: Vec<&str> = vars.iter().map(|(v, _)| v.as_str()).collect();
            Ok(Obj::Tate(TateRing::new(k, &names, radii).map_err(es)?))
        }
        DeclKind::Present(PresentSpec::Tate { ring, relators }) => {
            let Obj::Tate(r) = lookup(env, ring)? else { return Err(format!("{ring} is not a Tate algebra")) };
            let rs: Vec<&str> = relators.iter().map(|s| s.as_str()).collect();
            Ok(Obj::Present(TatePresentation::from_strs(r, &rs).map_err(es)?))
        }
        DeclKind::Present(PresentSpec::Relative { base, vars, relators }) => {
            let Obj::Present(a) = lookup(env, base)? else { return Err(format!("{base} is not a presentation")) };
            let k = &a.ring.k;
            let radii = vars.iter().map(|(_, r)| to_radius(k, r)).collect::<Result<Vec<_>, _>>()?;
            let names: Vec<String> = vars.iter().map(|(v, _)| v.clone()).collect();
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let rs: Vec<&str> = relators.iter().map(|s| s.as_str()).collect();
            let p = RelativePresentation::from_strs(a, &refs, radii.clone(), &rs, vec![]).map_err(es)?;
            Ok(Obj::Relative(RelativeRecipe { base: a.clone(), base_name: base.clone(), names, radii, relators: p.relators }))
        }
        DeclKind::Present(PresentSpec::Integral { val, vars, relators }) => {
            let Obj::Val(v) = lookup(env, val)? else { return Err(format!("{val} is not a valuation")) };
            let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
            let rs: Vec<&str> = relators.iter().map(|s| s.as_str()).collect();
            Ok(Obj::Integral(IntegralAlgebra::new(v, &names, &rs).map_err(es)?))
        }
    }
}

fn finding_json(f: &Finding) -> Json {
    json!({ "verdict": f.verdict, "witness": f.reason })
}

struct Outcome {
    status: Status,
    summary: String,
    result: Json,
    provenance: &'static str,
}

fn outcome(status: Status, summary: impl Into<String>, result: Json, provenance: &'static str) -> Outcome {
    Outcome { status, summary: summary.into(), result, provenance }
}

fn presentation<'a>(env: &'a Env, name: &str) -> Result<&'a TatePresentation, String> {
    match lookup(env, name)? {
        Obj::Present(p) => Ok(p),
        _ => Err(format!("{name} is not a presentation")),
    }
}

fn fiber_points(r: &RelativeRecipe, fibers: &[PointText]) -> Result<Vec<FiberPoint>, String> {
    let ring = &r.base.ring.ring;
    let mut out = Vec::new();
    for pt in fibers {
        let mut coords: Vec<Option<Elem>> = vec![None; ring.nvars()];
        for (v, c) in pt {
            let i = ring.var_index(v).ok_or_else(|| format!("{v} is not a coordinate of the base"))?;
            if coords[i].is_some() {
                return Err(format!("{v} assigned twice in {}", point_text(pt)));
            }
            let p = ring.parse(c).map_err(|e| e.to_string())?;
            if !ring.is_constant(&p) {
                return Err(format!("{c} is not a constant"));
            }
            coords[i] = Some(p.coeff(&ring.unit_mono()).cloned().unwrap_or_else(|| ring.field.zero()));
        }
        let coords = coords
            .into_iter()
            .enumerate()
            .map(|(i, c)| c.ok_or_else(|| format!("{} missing in {}", ring.vars[i], point_text(pt))))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(FiberPoint { coords });
    }
    Ok(out)
}

fn execute(env: &Env, settings: &Settings, c: &Command) -> Result<Outcome, String> {
    let es = |e: Error| e.to_string();
    match c {
        Command::Reduce { target } => {
            let p = presentation(env, target)?;
            let red = reduce_presentation(p).map_err(es)?;
            let distinguished = is_distinguished(p).ok();
            let result = json!({
                "reduction": red.display(),
                "groebner": red.display_gb(),
                "rho": p.rho.iter().map(fmt_value).collect::<Vec<_>>(),
                "distinguished": distinguished,
            });
            Ok(outcome(Status::Done, red.display(), result, "graded Groebner basis of the reduced relators"))
        }
        Command::Check { kind, target, over, fibers, witnesses } => match kind {
            CheckKind::Distinguished => {
                let p = presentation(env, target)?;
                let (status, why) = match is_distinguished(p) {
                    Ok(true) => (Status::Pass, "strongly generating with reduced reduction".to_string()),
                    Ok(false) => (Status::Fail, format!("reduction {} is not reduced", reduce_presentation(p).map_err(es)?.display())),
                    Err(Error::NotStronglyGenerating(w)) => (Status::Fail, format!("not strongly generating: {w}")),
                    Err(Error::Inconclusive(w)) => (Status::Inconclusive, w),
                    Err(e) => return Err(e.to_string()),
                };
                Ok(outcome(status, why.clone(), json!({ "witness": why }), "radical test of the graded reduction after the strong-generation verifier"))
            }
            CheckKind::Strong => {
                let p = presentation(env, target)?;
                let eps = match &settings.eps {
                    None => None,
                    Some(s) => {
                        let r = crate::parse::parse_radius(s).map_err(|e| e.to_string())?;
                        Some(to_radius(&p.ring.k, &r)?)
                    }
                };
                let f = is_strongly_generating(&p.ring, &p.relators, &[], STRONG_SAMPLES, eps.as_ref()).map_err(es)?;
                Ok(outcome(f.verdict.into(), f.reason.clone(), finding_json(&f), "strong division on random combinations, seed 0x5eed"))
            }
            CheckKind::Universal => {
                let p = presentation(env, target)?;
                let ws = witnesses.iter().map(|w| p.ring.parse(w)).collect::<Result<Vec<_>, _>>().map_err(es)?;
                let f = check_universally_distinguished(p, &ws);
                Ok(outcome(f.verdict.into(), f.reason.clone(), finding_json(&f), "geometric integrality of the reduction's minimal primes, or separating witnesses"))
            }
            CheckKind::Sympathique => {
                let Obj::Relative(r) = lookup(env, target)? else { return Err(format!("{target} is not a relative presentation")) };
                if let Some(a) = over {
                    if *a != r.base_name {
                        return Err(format!("{target} is presented over {}, not {a}", r.base_name));
                    }
                }
                let samples = fiber_points(r, fibers)?;
                let names: Vec<&str> = r.names.iter().map(|s| s.as_str()).collect();
                let p = RelativePresentation::new(&r.base, &names, r.radii.clone(), r.relators.clone(), samples).map_err(es)?;
                let rep = check_sympathique(&p);
                let failed: Vec<String> = rep.conditions.iter().filter(|c| c.verdict != Verdict::Pass).map(|c| format!("({}) {}", c.condition, c.verdict)).collect();
                let summary = if failed.is_empty() { "all six conditions pass".to_string() } else { failed.join(", ") };
                let result = serde_json::to_value(&rep).expect("report serializes");
                Ok(outcome(rep.verdict.into(), summary, result, "residue-level criteria plus the listed fibers"))
            }
        },
        Command::Cover { target } => match lookup(env, target)? {
            Obj::Integral(a) => {
                let cover = a.fiber_splitting_cover().map_err(es)?;
                let ok = cover.verify();
                let pieces: Vec<Json> = cover.pieces.iter().map(|p| json!({ "level": p.level, "fibers": p.fibers })).collect();
                let levels: Vec<Json> = cover
                    .levels
                    .iter()
                    .map(|l| json!({ "fiber": gradal_core::poly::decomp::display_gb(&l.ideal), "components": l.components.len() }))
                    .collect();
                let status = if ok { Status::Pass } else { Status::Fail };
                Ok(outcome(status, format!("{} open{}", cover.len(), if cover.len() == 1 { "" } else { "s" }), json!({ "opens": pieces, "levels": levels, "verified": ok }), "component closures descended along the chain, checked by idempotents"))
            }
            Obj::Relative(r) => {
                let names: Vec<&str> = r.names.iter().map(|s| s.as_str()).collect();
                let p = RelativePresentation::new(&r.base, &names, r.radii.clone(), r.relators.clone(), vec![]).map_err(es)?;
                let (f, cover) = build_splitting_cover(&p);
                let opens = cover.map(|c| c.display()).unwrap_or_default();
                Ok(outcome(f.verdict.into(), f.reason.clone(), json!({ "opens": opens, "witness": f.reason }), "idempotents of the reduction, checked on the listed fibers"))
            }
            _ => Err(format!("{target} cannot be covered")),
        },
        Command::Model { target } => {
            let p = presentation(env, target)?;
            let m = build_formal_model(p).map_err(es)?;
            let ok = m.flat && m.generic_equal && m.special_fiber_matches;
            let result = json!({
                "killers": m.display_killers(),
                "flat": m.flat,
                "generic_equal": m.generic_equal,
                "special_fiber_matches": m.special_fiber_matches,
            });
            let status = if ok { Status::Pass } else { Status::Fail };
            Ok(outcome(status, format!("killers [{}]", m.display_killers().join(", ")), result, "saturation by the uniformizer over F_q[t]"))
        }
        Command::Basis { field, radius, bound } => {
            let Obj::Field(k) = lookup(env, field)? else { return Err(format!("{field} is not a field")) };
            let r = to_radius(k, radius)?;
            let b = schauder_basis(k, &r, bound.unwrap_or(settings.deg_bound)).map_err(es)?;
            let elems: Vec<String> = b.iter().map(|e| e.display(k.field())).collect();
            let norms: Vec<String> = b.iter().map(|e| e.norm.to_string()).collect();
            Ok(outcome(Status::Done, format!("{} elements", elems.len()), json!({ "elements": elems, "norms": norms }), "monic irreducibles over the residue field"))
        }
    }
}

pub fn input_hash(src: &str) -> String {
    format!("{:x}", Sha256::digest(src.as_bytes()))
}

/// Declarations are built in order; commands then run in parallel and are
/// reported in source order.
pub fn run(session: &Session, src: &str, settings: &Settings) -> Report {
    let mut env: Env = HashMap::new();
    let mut records = Vec::new();
    let mut commands = Vec::new();
    for (i, item) in session.items.iter().enumerate() {
        match item {
            Item::Decl { name, kind } => {
                let o = declare(&env, kind);
                if let Err(e) = &o {
                    records.push(Record {
                        item: i,
                        command: format!("{} {name}", kind.keyword()),
                        status: Status::Error,
                        summary: e.clone(),
                        result: Json::Null,
                        provenance: "declaration".into(),
                    });
                }
                env.insert(name.clone(), o);
            }
            Item::Command(c) => commands.push((i, c)),
        }
    }
    let done: Vec<Record> = commands
        .par_iter()
        .map(|(i, c)| match execute(&env, settings, c) {
            Ok(o) => Record { item: *i, command: c.to_string(), status: o.status, summary: o.summary, result: o.result, provenance: o.provenance.into() },
            Err(e) => Record { item: *i, command: c.to_string(), status: Status::Error, summary: e.clone(), result: Json::Null, provenance: "error".into() },
        })
        .collect();
    records.extend(done);
    records.sort_by_key(|r| r.item);
    Report {
        schema: SCHEMA,
        tool: format!("gradal {}", env!("CARGO_PKG_VERSION")),
        input_sha256: input_hash(src),
        settings: settings.clone(),
        records,
    }
}
