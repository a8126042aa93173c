//! Multiplicative groups of positive reals generated by positive rationals,
//! and ordered value groups of finite rank.
//!
//! An element of a [`MultRealGroup`] is a rational exponent vector over the
//! generators. Its real value is a product of prime powers with rational
//! exponents, which gives exact equality and exact comparison (raise both
//! sides to a common denominator and compare integers).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::field::{fmt_rat, Rat};
use crate::arith::linalg;
use crate::arith::{Elem, Field};
use crate::error::{Error, Result};

pub type PrimeVec = BTreeMap<u64, Rat>;

fn q(x: Rat) -> Elem {
    Elem::Q(x)
}

fn factor_u(mut n: BigUint, sign: i64, out: &mut PrimeVec) -> Result<()> {
    let mut p = 2u64;
    while n > BigUint::one() {
        if BigUint::from(p) * BigUint::from(p) > n {
            let q = n.to_u64().ok_or_else(|| Error::Unsupported("generator with a large prime factor".into()))?;
            *out.entry(q).or_insert_with(Rat::zero) += Rat::from_integer(sign.into());
            break;
        }
        while (&n % p).is_zero() {
            n /= p;
            *out.entry(p).or_insert_with(Rat::zero) += Rat::from_integer(sign.into());
        }
        p += 1;
        if p > 1_000_000 {
            return Err(Error::Unsupported("generator with a large prime factor".into()));
        }
    }
    Ok(())
}

fn prime_vector_of(q: &Rat) -> Result<PrimeVec> {
    if !q.is_positive() {
        return Err(Error::Usage(format!("group generators must be positive, got {}", fmt_rat(q))));
    }
    let mut v = PrimeVec::new();
    factor_u(q.numer().magnitude().clone(), 1, &mut v)?;
    factor_u(q.denom().magnitude().clone(), -1, &mut v)?;
    v.retain(|_, e| !e.is_zero());
    Ok(v)
}

/// Subgroup of `R_{>0}` generated by finitely many positive rationals.
#[derive(Debug)]
pub struct MultRealGroup {
    generators: Vec<Rat>,
    pvecs: Vec<PrimeVec>,
}

impl PartialEq for MultRealGroup {
    fn eq(&self, o: &Self) -> bool {
        self.generators == o.generators
    }
}
impl Eq for MultRealGroup {}

impl MultRealGroup {
    pub fn new(generators: Vec<Rat>) -> Result<Arc<MultRealGroup>> {
        let pvecs = generators.iter().map(prime_vector_of).collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(MultRealGroup { generators, pvecs }))
    }

    pub fn from_ints(gens: &[i64]) -> Result<Arc<MultRealGroup>> {
        MultRealGroup::new(gens.iter().map(|&g| Rat::from_integer(g.into())).collect())
    }

    pub fn generators(&self) -> &[Rat] {
        &self.generators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.pvecs.iter().flat_map(|v| v.keys().copied()).collect();
        ps.sort();
        ps.dedup();
        ps
    }

    pub fn one(self: &Arc<Self>) -> DegreeElement {
        DegreeElement { group: self.clone(), exps: vec![Rat::zero(); self.rank()] }
    }

    pub fn generator(self: &Arc<Self>, i: usize) -> DegreeElement {
        let mut exps = vec![Rat::zero(); self.rank()];
        exps[i] = Rat::one();
        DegreeElement { group: self.clone(), exps }
    }

    pub fn element(self: &Arc<Self>, exps: Vec<Rat>) -> Result<DegreeElement> {
        if exps.len() != self.rank() {
            return Err(Error::Usage(format!("exponent vector of length {} for a group of rank {}", exps.len(), self.rank())));
        }
        Ok(DegreeElement { group: self.clone(), exps })
    }

    /// The element with real value `q^e`, if it lies in the divisible hull.
    pub fn power_of_rational(self: &Arc<Self>, q: &Rat, e: &Rat) -> Result<DegreeElement> {
        let mut v = prime_vector_of(q)?;
        for x in v.values_mut() {
            *x *= e;
        }
        self.from_prime_vector(&v)
            .ok_or_else(|| Error::OutOfRange(format!("{}^({}) is not in the divisible hull of {}", fmt_rat(q), fmt_rat(e), self)))
    }

    pub fn from_rational(self: &Arc<Self>, q: &Rat) -> Result<DegreeElement> {
        self.power_of_rational(q, &Rat::one())
    }

    pub fn from_prime_vector(self: &Arc<Self>, v: &PrimeVec) -> Option<DegreeElement> {
        let mut primes = self.primes();
        for p in v.keys() {
            if !primes.contains(p) {
                if v[p].is_zero() {
                    continue;
                }
                return None;
            }
        }
        primes.sort();
        let k = Field::Rational;
        // Columns: generators; rows: primes.
        let m: Vec<Vec<_>> = primes
            .iter()
            .map(|p| self.pvecs.iter().map(|g| q(g.get(p).cloned().unwrap_or_else(Rat::zero))).collect())
            .collect();
        let b: Vec<_> = primes.iter().map(|p| q(v.get(p).cloned().unwrap_or_else(Rat::zero))).collect();
        if self.rank() == 0 {
            return if v.values().all(|x| x.is_zero()) { Some(self.one()) } else { None };
        }
        let sol = linalg::solve(&k, &m, &b)?;
        Some(DegreeElement { group: self.clone(), exps: sol.iter().map(|e| k.as_rat(e).unwrap().clone()).collect() })
    }
}

impl fmt::Display for MultRealGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.generators.iter().map(fmt_rat).collect();
        write!(f, "<{}>", g.join(", "))
    }
}

/// Element of a [`MultRealGroup`] (or of its divisible hull).
#[derive(Clone, Debug)]
pub struct DegreeElement {
    group: Arc<MultRealGroup>,
    exps: Vec<Rat>,
}

impl DegreeElement {
    pub fn group(&self) -> &Arc<MultRealGroup> {
        &self.group
    }

    pub fn exps(&self) -> &[Rat] {
        &self.exps
    }

    fn same_group(&self, o: &DegreeElement) -> Result<()> {
        if self.group == o.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("{} vs {}", self.group, o.group)))
        }
    }

    pub fn try_mul(&self, o: &DegreeElement) -> Result<DegreeElement> {
        self.same_group(o)?;
        Ok(DegreeElement { group: self.group.clone(), exps: self.exps.iter().zip(&o.exps).map(|(a, b)| a + b).collect() })
    }

    pub fn mul(&self, o: &DegreeElement) -> DegreeElement {
        self.try_mul(o).expect("degrees from one group")
    }

    pub fn inv(&self) -> DegreeElement {
        DegreeElement { group: self.group.clone(), exps: self.exps.iter().map(|a| -a).collect() }
    }

    pub fn div(&self, o: &DegreeElement) -> DegreeElement {
        self.mul(&o.inv())
    }

    pub fn pow(&self, n: i64) -> DegreeElement {
        self.pow_rat(&Rat::from_integer(n.into()))
    }

    pub fn pow_rat(&self, e: &Rat) -> DegreeElement {
        DegreeElement { group: self.group.clone(), exps: self.exps.iter().map(|a| a * e).collect() }
    }

    /// Real value as a product of prime powers.
    pub fn prime_vector(&self) -> PrimeVec {
        let mut v = PrimeVec::new();
        for (e, g) in self.exps.iter().zip(&self.group.pvecs) {
            for (p, x) in g {
                *v.entry(*p).or_insert_with(Rat::zero) += e * x;
            }
        }
        v.retain(|_, x| !x.is_zero());
        v
    }

    pub fn is_one(&self) -> bool {
        self.prime_vector().is_empty()
    }

    /// Rational value, if the element is rational.
    pub fn as_rational(&self) -> Option<Rat> {
        let mut r = Rat::one();
        for (p, e) in self.prime_vector() {
            if !e.is_integer() {
                return None;
            }
            let n = e.to_integer().to_i32()?;
            r *= Rat::from_integer(BigInt::from(p)).pow(n);
        }
        Some(r)
    }

    pub fn to_f64(&self) -> f64 {
        self.prime_vector().iter().map(|(p, e)| (*p as f64).powf(e.to_f64().unwrap_or(0.0))).product()
    }

    pub fn compare(&self, o: &DegreeElement) -> Result<Ordering> {
        self.same_group(o)?;
        Ok(cmp_to_one(&self.div(o).prime_vector()))
    }
}

/// Compare `prod p^{e_p}` with 1.
fn cmp_to_one(v: &PrimeVec) -> Ordering {
    if v.is_empty() {
        return Ordering::Equal;
    }
    let l = v.values().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for (p, e) in v {
        let x = (e * Rat::from_integer(l.clone())).to_integer();
        let pw = BigUint::from(*p).pow(x.magnitude().to_u32().expect("exponent fits"));
        if x.is_positive() {
            num *= pw;
        } else {
            den *= pw;
        }
    }
    num.cmp(&den)
}

impl PartialEq for DegreeElement {
    fn eq(&self, o: &Self) -> bool {
        self.group == o.group && self.prime_vector() == o.prime_vector()
    }
}
impl Eq for DegreeElement {}

impl Hash for DegreeElement {
    fn hash<H: Hasher>(&self, h: &mut H) {
        for (p, e) in self.prime_vector() {
            p.hash(h);
            e.numer().hash(h);
            e.denom().hash(h);
        }
    }
}

impl PartialOrd for DegreeElement {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for DegreeElement {
    fn cmp(&self, o: &Self) -> Ordering {
        self.compare(o).expect("degrees from one group")
    }
}

impl fmt::Display for DegreeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", fmt_rat(&q));
        }
        let parts: Vec<String> = self
            .prime_vector()
            .iter()
            .map(|(p, e)| if e.is_integer() { format!("{p}^{}", e) } else { format!("{p}^({})", fmt_rat(e)) })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A norm value: zero or a positive degree element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Zero,
    Pos(DegreeElement),
}

impl Value {
    pub fn mul(&self, o: &Value) -> Value {
        match (self, o) {
            (Value::Pos(a), Value::Pos(b)) => Value::Pos(a.mul(b)),
            _ => Value::Zero,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Value::Zero)
    }

    pub fn pos(&self) -> Option<&DegreeElement> {
        match self {
            Value::Pos(d) => Some(d),
            Value::Zero => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Zero => write!(f, "0"),
            Value::Pos(d) => write!(f, "{d}"),
        }
    }
}

fn common_primes(items: &[&DegreeElement]) -> Vec<u64> {
    let mut ps: Vec<u64> = items.iter().flat_map(|d| d.prime_vector().into_keys()).collect();
    ps.sort();
    ps.dedup();
    ps
}

fn as_rows(items: &[&DegreeElement], primes: &[u64]) -> Vec<Vec<Rat>> {
    items
        .iter()
        .map(|d| {
            let v = d.prime_vector();
            primes.iter().map(|p| v.get(p).cloned().unwrap_or_else(Rat::zero)).collect()
        })
        .collect()
}

fn rat_rank(rows: &[Vec<Rat>]) -> usize {
    let k = Field::Rational;
    let m: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|x| q(x.clone())).collect()).collect();
    if m.is_empty() || m[0].is_empty() {
        return 0;
    }
    linalg::rank(&k, &m)
}

fn integer_rows(rows: &[Vec<Rat>]) -> Vec<Vec<BigInt>> {
    let l = rows.iter().flatten().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    rows.iter().map(|r| r.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect()).collect()
}

/// Smallest `n >= 1` with `r^n` in the subgroup generated by `h`; `None`
/// when no power lies in it.
pub fn order_modulo(r: &DegreeElement, h: &[DegreeElement]) -> Result<Option<u64>> {
    for x in h {
        r.same_group(x)?;
    }
    let mut all: Vec<&DegreeElement> = h.iter().collect();
    all.push(r);
    let primes = common_primes(&all);
    if primes.is_empty() {
        return Ok(Some(1));
    }
    let rows = as_rows(&all, &primes);
    let hr = &rows[..h.len()];
    if rat_rank(&rows) > rat_rank(hr) {
        return Ok(None);
    }
    // Express r in a lattice basis of <h>; the order is the lcm of the
    // denominators of its coordinates.
    let ints = integer_rows(&rows);
    let basis = linalg::integer_row_basis(&ints[..h.len()]);
    if basis.is_empty() {
        return Ok(Some(1));
    }
    let k = Field::Rational;
    let m: Vec<Vec<_>> = (0..primes.len()).map(|c| basis.iter().map(|b| k.from_bigint(&b[c])).collect()).collect();
    let target: Vec<_> = ints[h.len()].iter().map(|x| k.from_bigint(x)).collect();
    let sol = linalg::solve(&k, &m, &target).expect("r lies in the rational span");
    let n = sol.iter().fold(BigInt::one(), |acc, e| acc.lcm(k.as_rat(e).unwrap().clone().denom()));
    Ok(Some(n.to_u64().ok_or_else(|| Error::OutOfRange("order too large".into()))?))
}

/// Whether the family is Q-linearly independent modulo the rational span of `h`.
pub fn is_free_family(rs: &[DegreeElement], h: &[DegreeElement]) -> bool {
    let all: Vec<&DegreeElement> = h.iter().chain(rs.iter()).collect();
    let primes = common_primes(&all);
    let rows = as_rows(&all, &primes);
    rat_rank(&rows) == rat_rank(&rows[..h.len()]) + rs.len()
}

/// Exponent of the torsion subgroup of `<h, rs> / <h>`.
pub fn torsion_exponent(rs: &[DegreeElement], h: &[DegreeElement]) -> Result<u64> {
    if rs.is_empty() {
        return Ok(1);
    }
    let all: Vec<&DegreeElement> = h.iter().chain(rs.iter()).collect();
    let primes = common_primes(&all);
    if primes.is_empty() {
        return Ok(1);
    }
    let rows = as_rows(&all, &primes);
    // Project the r's away from span(h) and find their integer relations.
    let k = Field::Rational;
    let to_field = |r: &Vec<Rat>| r.iter().map(|x| q(x.clone())).collect::<Vec<_>>();
    let mut hm: Vec<Vec<_>> = rows[..h.len()].iter().map(to_field).collect();
    let pivots = if hm.is_empty() { vec![] } else { linalg::rref(&k, &mut hm) };
    let project = |r: &Vec<Rat>| -> Vec<Rat> {
        let mut v = r.clone();
        for (row, &c) in hm.iter().zip(&pivots) {
            let f = v[c].clone();
            if f.is_zero() {
                continue;
            }
            for j in 0..v.len() {
                v[j] -= &f * k.as_rat(&row[j]).unwrap();
            }
        }
        v
    };
    let proj: Vec<Vec<Rat>> = rows[h.len()..].iter().map(project).collect();
    let n = rs.len();
    let pint = integer_rows(&proj);
    let aug: Vec<Vec<BigInt>> = pint
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let basis = linalg::integer_row_basis(&aug);
    let m = primes.len();
    let mut exp = 1u64;
    for b in basis.iter().filter(|b| b[..m].iter().all(|x| x.is_zero())) {
        let mut x = rs[0].group.one();
        for (j, c) in b[m..].iter().enumerate() {
            x = x.mul(&rs[j].pow(c.to_i64().expect("small relation")));
        }
        let o = order_modulo(&x, h)?.expect("relation lies in the rational span");
        exp = exp.lcm(&o);
    }
    Ok(exp)
}

/// A Z-basis of the subgroup generated by `gens` (empty for the trivial group).
pub fn lattice_basis(group: &Arc<MultRealGroup>, gens: &[DegreeElement]) -> Vec<DegreeElement> {
    let refs: Vec<&DegreeElement> = gens.iter().collect();
    let primes = common_primes(&refs);
    if primes.is_empty() {
        return vec![];
    }
    let rows = as_rows(&refs, &primes);
    let l = rows.iter().flatten().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let basis = linalg::integer_row_basis(&integer_rows(&rows));
    basis
        .iter()
        .map(|b| {
            let v: PrimeVec = primes
                .iter()
                .zip(b)
                .filter(|(_, x)| !x.is_zero())
                .map(|(p, x)| (*p, Rat::new(x.clone(), l.clone())))
                .collect();
            group.from_prime_vector(&v).expect("basis lies in the group")
        })
        .collect()
}

/// Integer coordinates of `d` in a Z-basis, if `d` lies in its span.
pub fn integer_coords(d: &DegreeElement, basis: &[DegreeElement]) -> Option<Vec<i64>> {
    if basis.is_empty() {
        return d.is_one().then(Vec::new);
    }
    let mut refs: Vec<&DegreeElement> = basis.iter().collect();
    refs.push(d);
    let primes = common_primes(&refs);
    let rows = as_rows(&refs, &primes);
    let k = Field::Rational;
    let m: Vec<Vec<Elem>> = (0..primes.len()).map(|c| rows[..basis.len()].iter().map(|r| q(r[c].clone())).collect()).collect();
    let b: Vec<Elem> = rows[basis.len()].iter().map(|x| q(x.clone())).collect();
    let sol = linalg::solve(&k, &m, &b)?;
    sol.iter()
        .map(|e| {
            let r = k.as_rat(e).unwrap();
            if r.is_integer() {
                r.to_integer().to_i64()
            } else {
                None
            }
        })
        .collect()
}

/// Ordered value group: a real group or `Q^h` with the lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderedValueGroup {
    Real(Arc<MultRealGroup>),
    Lex(usize),
}

/// Element of an ordered value group, written multiplicatively: for `Lex`
/// the vector holds exponents and the identity is the zero vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderedValue {
    Real(DegreeElement),
    Lex(Vec<Rat>),
}

/// A convex subgroup: for `Lex(h)` the elements whose first `drop`
/// coordinates vanish; for `Real` either trivial (`drop = 1`) or everything.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexSubgroup {
    pub drop: usize,
}

impl OrderedValueGroup {
    pub fn rank(&self) -> usize {
        match self {
            OrderedValueGroup::Real(g) => usize::from(g.rank() > 0 && g.generators().iter().any(|x| !x.is_one())),
            OrderedValueGroup::Lex(h) => *h,
        }
    }

    pub fn identity(&self) -> OrderedValue {
        match self {
            OrderedValueGroup::Real(g) => OrderedValue::Real(g.one()),
            OrderedValueGroup::Lex(h) => OrderedValue::Lex(vec![Rat::zero(); *h]),
        }
    }

    pub fn compare(&self, a: &OrderedValue, b: &OrderedValue) -> Result<Ordering> {
        match (a, b) {
            (OrderedValue::Real(x), OrderedValue::Real(y)) => x.compare(y),
            (OrderedValue::Lex(x), OrderedValue::Lex(y)) if x.len() == y.len() => Ok(x.cmp(y)),
            _ => Err(Error::GroupMismatch("value groups differ".into())),
        }
    }

    pub fn mul(&self, a: &OrderedValue, b: &OrderedValue) -> Result<OrderedValue> {
        match (a, b) {
            (OrderedValue::Real(x), OrderedValue::Real(y)) => Ok(OrderedValue::Real(x.try_mul(y)?)),
            (OrderedValue::Lex(x), OrderedValue::Lex(y)) if x.len() == y.len() => {
                Ok(OrderedValue::Lex(x.iter().zip(y).map(|(p, q)| p + q).collect()))
            }
            _ => Err(Error::GroupMismatch("value groups differ".into())),
        }
    }

    /// Convex subgroup generated by the given elements; fails if their span
    /// is not convex.
    pub fn convex_subgroup(&self, gens: &[OrderedValue]) -> Result<ConvexSubgroup> {
        match self {
            OrderedValueGroup::Real(_) => {
                let nontrivial = gens.iter().any(|g| matches!(g, OrderedValue::Real(d) if !d.is_one()));
                Ok(ConvexSubgroup { drop: if nontrivial { 0 } else { 1 } })
            }
            OrderedValueGroup::Lex(h) => {
                let rows: Vec<Vec<Rat>> = gens
                    .iter()
                    .map(|g| match g {
                        OrderedValue::Lex(v) if v.len() == *h => Ok(v.clone()),
                        _ => Err(Error::GroupMismatch("value groups differ".into())),
                    })
                    .collect::<Result<_>>()?;
                let r = rat_rank(&rows);
                let drop = h - r;
                // The span must be exactly {0}^drop x Q^r.
                let inside = rows.iter().all(|v| v[..drop].iter().all(|x| x.is_zero()));
                if !inside {
                    return Err(Error::NonConvex("span is not a lexicographic tail".into()));
                }
                Ok(ConvexSubgroup { drop })
            }
        }
    }

    /// Image of `v` in the quotient by a convex subgroup.
    pub fn coarsen(&self, v: &OrderedValue, h: &ConvexSubgroup) -> Result<OrderedValue> {
        match (self, v) {
            (OrderedValueGroup::Real(_), OrderedValue::Real(_)) => {
                if h.drop == 0 {
                    Ok(OrderedValue::Lex(vec![]))
                } else {
                    Ok(v.clone())
                }
            }
            (OrderedValueGroup::Lex(n), OrderedValue::Lex(x)) if x.len() == *n => Ok(OrderedValue::Lex(x[..h.drop].to_vec())),
            _ => Err(Error::GroupMismatch("value groups differ".into())),
        }
    }

    pub fn quotient(&self, h: &ConvexSubgroup) -> OrderedValueGroup {
        match self {
            OrderedValueGroup::Real(_) if h.drop == 0 => OrderedValueGroup::Lex(0),
            OrderedValueGroup::Real(_) => self.clone(),
            OrderedValueGroup::Lex(_) => OrderedValueGroup::Lex(h.drop),
        }
    }
}

impl fmt::Display for OrderedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderedValue::Real(d) => write!(f, "{d}"),
            OrderedValue::Lex(v) => {
                let s: Vec<String> = v.iter().map(fmt_rat).collect();
                write!(f, "({})", s.join(", "))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::rat;

    fn d23() -> Arc<MultRealGroup> {
        MultRealGroup::from_ints(&[2, 3]).unwrap()
    }

    #[test]
    fn exact_comparisons() {
        let g = d23();
        let a = g.power_of_rational(&rat(2, 1), &rat(1, 2)).unwrap();
        let b = g.power_of_rational(&rat(3, 1), &rat(1, 3)).unwrap();
        assert_eq!(a.compare(&b).unwrap(), Ordering::Less);
        let c = g.power_of_rational(&rat(4, 1), &rat(1, 2)).unwrap();
        assert_eq!(c, g.generator(0));
        let other = MultRealGroup::from_ints(&[5]).unwrap();
        assert!(matches!(a.compare(&other.one()), Err(Error::GroupMismatch(_))));
    }

    #[test]
    fn orders_modulo_subgroups() {
        let g = d23();
        let s2 = g.power_of_rational(&rat(2, 1), &rat(1, 2)).unwrap();
        assert_eq!(order_modulo(&s2, &[g.generator(0)]).unwrap(), Some(2));
        assert_eq!(order_modulo(&g.generator(0), &[g.generator(0)]).unwrap(), Some(1));
        assert_eq!(order_modulo(&g.generator(1), &[g.generator(0)]).unwrap(), None);
        assert_eq!(order_modulo(&g.generator(0).pow(3), &[g.generator(0).pow(2)]).unwrap(), Some(2));
    }

    #[test]
    fn free_families() {
        let g = MultRealGroup::from_ints(&[2, 3, 4]).unwrap();
        let s2 = g.power_of_rational(&rat(2, 1), &rat(1, 2)).unwrap();
        assert!(is_free_family(&[s2], &[]));
        assert!(!is_free_family(&[g.generator(0), g.generator(2)], &[]));
        assert!(is_free_family(&[g.generator(0), g.generator(1)], &[]));
    }

    #[test]
    fn torsion_of_radii() {
        let g = d23();
        let s2 = g.power_of_rational(&rat(2, 1), &rat(1, 2)).unwrap();
        assert_eq!(torsion_exponent(&[s2.clone()], &[g.generator(0)]).unwrap(), 2);
        assert_eq!(torsion_exponent(&[g.generator(1)], &[g.generator(0)]).unwrap(), 1);
        let r1 = s2.mul(&g.generator(1));
        assert_eq!(torsion_exponent(&[r1, g.generator(1)], &[g.generator(0)]).unwrap(), 2);
    }

    #[test]
    fn lex_coarsening() {
        let grp = OrderedValueGroup::Lex(2);
        let h = grp.convex_subgroup(&[OrderedValue::Lex(vec![rat(0, 1), rat(1, 1)])]).unwrap();
        let v = OrderedValue::Lex(vec![rat(2, 1), rat(-5, 1)]);
        assert_eq!(grp.coarsen(&v, &h).unwrap(), OrderedValue::Lex(vec![rat(2, 1)]));
        assert!(matches!(grp.convex_subgroup(&[OrderedValue::Lex(vec![rat(1, 1), rat(0, 1)])]), Err(Error::NonConvex(_))));
    }
}
