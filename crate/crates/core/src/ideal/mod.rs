//! Finitely generated ideals: normal forms, algebra, annihilators,
//! saturations, the nilradical, and quotient rings.

pub mod purity;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::int::{is_zero_vec, lcm_all, zero_vec, IntVec};
use crate::linalg::Lattice;
use crate::ring::finite::FiniteRing;
use crate::ring::zalgebra::{ZAlgebra, ZProjection};
use crate::ring::{Backend, BackendKind, Element, Ring};
pub use purity::{purity_class, PurityClass};

/// Enumeration budget for the coset search in the Z-algebra nilradical.
pub const NIL_COSET_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum NormalForm {
    /// Element set of a finite ring.
    Set(FixedBitSet),
    /// Lattice `Λ ⊆ L ⊆ Z^m` in Hermite normal form.
    Lattice(Lattice),
}

#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Element>,
    form: NormalForm,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.form == other.form
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| self.ring.format(g)).collect();
        if gens.is_empty() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", gens.join(", "))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealOrder {
    Equal,
    Leq,
    Geq,
    Incomparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
    Intersect,
}

/// Additive subgroup `A + B` of a finite ring.
pub(crate) fn set_sum(f: &FiniteRing, a: &FixedBitSet, b: &FixedBitSet) -> FixedBitSet {
    let mut out = a.clone();
    for y in b.ones() {
        if out.contains(y) {
            continue;
        }
        for x in a.ones() {
            out.insert(f.add(x as u32, y as u32) as usize);
        }
    }
    out
}

pub(crate) fn set_generated(f: &FiniteRing, gens: &[u32]) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(f.size());
    s.insert(f.zero() as usize);
    for &g in gens {
        if s.contains(g as usize) {
            continue;
        }
        let p = f.principal(g);
        s = set_sum(f, &s, &p);
    }
    s
}

/// Greedy generating set of an ideal given as a set, in index order.
fn set_generators(f: &FiniteRing, set: &FixedBitSet) -> Vec<u32> {
    let mut gens = Vec::new();
    let mut cur = FixedBitSet::with_capacity(f.size());
    cur.insert(f.zero() as usize);
    for x in set.ones() {
        if !cur.contains(x) {
            gens.push(x as u32);
            cur = set_sum(f, &cur, &f.principal(x as u32));
            if cur == *set {
                break;
            }
        }
    }
    gens
}

impl Ideal {
    pub fn new(ring: &Ring, gens: &[Element]) -> Result<Ideal> {
        for g in gens {
            ring.check(g)?;
        }
        Ok(match ring.backend() {
            Backend::Finite(f) => {
                let idx: Vec<u32> = gens.iter().map(|g| g.index()).collect();
                Self::from_set(ring, set_generated(f, &idx))
            }
            Backend::ZAlg(z) => {
                let coords: Vec<IntVec> = gens.iter().map(|g| g.coords().to_vec()).collect();
                Self::from_lattice(ring, z.ideal_lattice(&coords))
            }
        })
    }

    /// Wraps a set already known to be an ideal.
    pub fn from_set(ring: &Ring, set: FixedBitSet) -> Ideal {
        let f = ring.finite().expect("finite ring");
        let gens = set_generators(f, &set).into_iter().map(|i| ring.idx(i)).collect();
        Ideal { ring: ring.clone(), gens, form: NormalForm::Set(set) }
    }

    /// Wraps a lattice already known to be an ideal containing `Λ`.
    pub fn from_lattice(ring: &Ring, l: Lattice) -> Ideal {
        let z = ring.zalg().expect("Z-algebra");
        let rel = z.relations();
        let gens = l.basis().iter().filter(|row| !rel.contains(row)).map(|row| ring.coords(row.clone())).collect();
        Ideal { ring: ring.clone(), gens, form: NormalForm::Lattice(l) }
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Self::new(ring, &[]).unwrap()
    }

    pub fn whole(ring: &Ring) -> Ideal {
        Self::new(ring, &[ring.one()]).unwrap()
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Element] {
        &self.gens
    }

    pub fn normal_form(&self) -> &NormalForm {
        &self.form
    }

    pub fn set(&self) -> Option<&FixedBitSet> {
        match &self.form {
            NormalForm::Set(s) => Some(s),
            NormalForm::Lattice(_) => None,
        }
    }

    pub fn lattice(&self) -> Option<&Lattice> {
        match &self.form {
            NormalForm::Lattice(l) => Some(l),
            NormalForm::Set(_) => None,
        }
    }

    /// Elements of an ideal in a finite ring, in index order.
    pub fn elements(&self) -> Result<Vec<Element>> {
        match &self.form {
            NormalForm::Set(s) => Ok(s.ones().map(|i| self.ring.idx(i as u32)).collect()),
            NormalForm::Lattice(l) => {
                let z = self.ring.zalg().unwrap();
                let all = z.enumerate()?;
                Ok(all.into_iter().filter(|v| l.contains(v)).map(|v| self.ring.coords(v)).collect())
            }
        }
    }

    pub fn contains(&self, e: &Element) -> bool {
        match &self.form {
            NormalForm::Set(s) => s.contains(e.index() as usize),
            NormalForm::Lattice(l) => l.contains(e.coords()),
        }
    }

    pub fn is_whole(&self) -> bool {
        self.contains(&self.ring.one())
    }

    pub fn is_zero(&self) -> bool {
        match &self.form {
            NormalForm::Set(s) => s.count_ones(..) == 1,
            NormalForm::Lattice(_) => self.gens.is_empty(),
        }
    }

    pub fn leq(&self, other: &Ideal) -> bool {
        match (&self.form, &other.form) {
            (NormalForm::Set(a), NormalForm::Set(b)) => a.is_subset(b),
            (NormalForm::Lattice(a), NormalForm::Lattice(b)) => a.leq(b),
            _ => false,
        }
    }

    pub fn compare(&self, other: &Ideal) -> Result<IdealOrder> {
        self.same_ring(other)?;
        Ok(match (self.leq(other), other.leq(self)) {
            (true, true) => IdealOrder::Equal,
            (true, false) => IdealOrder::Leq,
            (false, true) => IdealOrder::Geq,
            (false, false) => IdealOrder::Incomparable,
        })
    }

    fn same_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn algebra(&self, op: IdealOp, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        Ok(match op {
            IdealOp::Sum => self.sum(other),
            IdealOp::Product => self.product(other),
            IdealOp::Intersect => self.intersect(other),
        })
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        match (&self.form, &other.form) {
            (NormalForm::Set(a), NormalForm::Set(b)) => {
                Self::from_set(&self.ring, set_sum(self.ring.finite().unwrap(), a, b))
            }
            (NormalForm::Lattice(a), NormalForm::Lattice(b)) => Self::from_lattice(&self.ring, a.sum(b)),
            _ => unreachable!(),
        }
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        match (&self.form, &other.form) {
            (NormalForm::Set(a), NormalForm::Set(b)) => {
                let mut s = a.clone();
                s.intersect_with(b);
                Self::from_set(&self.ring, s)
            }
            (NormalForm::Lattice(a), NormalForm::Lattice(b)) => Self::from_lattice(&self.ring, a.intersect(b)),
            _ => unreachable!(),
        }
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(self.ring.mul(a, b));
            }
        }
        Self::new(&self.ring, &gens).unwrap()
    }

    /// `(I : f) = {g : f g ∈ I}`
    pub fn colon(&self, f: &Element) -> Ideal {
        match &self.form {
            NormalForm::Set(s) => {
                let fr = self.ring.finite().unwrap();
                let mut out = FixedBitSet::with_capacity(fr.size());
                for g in fr.elements() {
                    if s.contains(fr.mul(g, f.index()) as usize) {
                        out.insert(g as usize);
                    }
                }
                Self::from_set(&self.ring, out)
            }
            NormalForm::Lattice(l) => {
                let z = self.ring.zalg().unwrap();
                Self::from_lattice(&self.ring, z.colon(l, f.coords()))
            }
        }
    }

    /// `(I : f^∞)`
    pub fn saturation(&self, f: &Element) -> Ideal {
        let mut cur = self.clone();
        loop {
            let next = cur.colon(f);
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    /// Both `(I : f)` and `(I : f^∞)`.
    pub fn colon_saturation(&self, f: &Element) -> (Ideal, Ideal) {
        (self.colon(f), self.saturation(f))
    }

    /// Sort key: sorted element indices or HNF rows.
    pub fn sort_key(&self) -> Vec<BigInt> {
        match &self.form {
            NormalForm::Set(s) => s.ones().map(BigInt::from).collect(),
            NormalForm::Lattice(l) => l.basis().iter().flatten().cloned().collect(),
        }
    }

    pub fn cmp_key(&self, other: &Ideal) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

pub fn ideal_from_generators(ring: &Ring, gens: &[Element]) -> Result<Ideal> {
    Ideal::new(ring, gens)
}

pub fn annihilator(ring: &Ring, f: &Element) -> Ideal {
    match ring.backend() {
        Backend::Finite(fr) => Ideal::from_set(ring, fr.ann(f.index()).clone()),
        Backend::ZAlg(z) => Ideal::from_lattice(ring, z.annihilator(f.coords())),
    }
}

/// Smallest `n >= 1` with `Ann(f^n) = Ann(f^{n+1})`, and that ideal.
pub fn annihilator_power_stabilized(ring: &Ring, f: &Element) -> Result<(u32, Ideal)> {
    let mut n = 1u32;
    let mut p = f.clone();
    let mut cur = annihilator(ring, &p);
    loop {
        let p1 = ring.mul(&p, f);
        let next = annihilator(ring, &p1);
        if next == cur {
            let p2 = ring.mul(&p1, f);
            if annihilator(ring, &p2) != cur {
                return Err(Error::Verification(format!(
                    "annihilator chain of {} moved after stabilizing",
                    ring.format(f)
                )));
            }
            return Ok((n, cur));
        }
        n += 1;
        p = p1;
        cur = next;
        if n > 100_000 {
            return Err(Error::Verification("annihilator chain did not stabilize".into()));
        }
    }
}

// ---- nilradical -----------------------------------------------------------

pub fn nilradical(ring: &Ring) -> Result<Ideal> {
    let cached = ring.memo("nilradical", || compute_nilradical(ring));
    (*cached).clone()
}

fn compute_nilradical(ring: &Ring) -> Result<Ideal> {
    match ring.backend() {
        Backend::Finite(f) => Ok(Ideal::from_set(ring, f.nilpotents().clone())),
        Backend::ZAlg(z) => {
            let l = zalg_nilradical(z)?;
            Ok(Ideal::from_lattice(ring, l))
        }
    }
}

fn pad(z: &ZAlgebra, free: &[BigInt]) -> IntVec {
    let mut v = zero_vec(z.dim());
    v[..free.len()].clone_from_slice(free);
    v
}

pub(crate) fn zalg_nilradical(z: &ZAlgebra) -> Result<Lattice> {
    let m = z.dim();
    let rad: Vec<IntVec> = z.rational()?.rad.iter().map(|row| pad(z, row)).collect();
    let torsion = z.torsion_elements()?;
    let e = if z.torsion_invariants().is_empty() { BigInt::one() } else { lcm_all(z.torsion_invariants()) };
    let mut seed = z.relation_rows();
    seed.extend(rad.iter().map(|row| row.iter().map(|x| x * &e).collect::<IntVec>()));
    seed.extend(torsion.iter().filter(|t| z.is_nilpotent(t)).cloned());
    let e_small = num_traits::ToPrimitive::to_usize(&e).unwrap_or(usize::MAX);
    let count = e_small.checked_pow(rad.len() as u32).and_then(|c| c.checked_mul(torsion.len()));
    if !matches!(count, Some(c) if c <= NIL_COSET_LIMIT) {
        return Err(Error::Capacity("nilradical coset search too large".into()));
    }
    let mut n_lat = Lattice::from_rows(&seed, m);
    let mut coeffs = vec![0usize; rad.len()];
    loop {
        let mut base = zero_vec(m);
        for (c, row) in coeffs.iter().zip(&rad) {
            for (b, x) in base.iter_mut().zip(row) {
                *b += x * BigInt::from(*c);
            }
        }
        for t in torsion {
            let v = z.add(&base, t);
            if !n_lat.contains(&v) && z.is_nilpotent(&v) {
                n_lat = n_lat.sum(&Lattice::from_rows(&[v], m));
            }
        }
        let mut k = 0;
        while k < coeffs.len() {
            coeffs[k] += 1;
            if coeffs[k] < e_small {
                break;
            }
            coeffs[k] = 0;
            k += 1;
        }
        if k == coeffs.len() {
            break;
        }
    }
    // close under multiplication: the nilpotents form an ideal, so this is a check
    let closed = z.ideal_lattice(&n_lat.basis().clone());
    if closed != n_lat {
        return Err(Error::Verification("nilpotent lattice is not an ideal".into()));
    }
    if n_lat.basis().iter().any(|row| !z.is_nilpotent(row)) {
        return Err(Error::Verification("non-nilpotent generator in nilradical".into()));
    }
    let (pres, _) = z.quotient(&n_lat);
    let q = ZAlgebra::new(&pres).map_err(|e| Error::Verification(e.to_string()))?;
    if !zalg_is_reduced_direct(&q)? {
        return Err(Error::Verification("quotient by the computed nilradical is not reduced".into()));
    }
    Ok(n_lat)
}

/// Reduced test without computing a nilradical: `Rad(A) = 0` and no nonzero
/// nilpotent torsion element.
pub(crate) fn zalg_is_reduced_direct(z: &ZAlgebra) -> Result<bool> {
    if !z.rational()?.rad.is_empty() {
        return Ok(false);
    }
    Ok(z.torsion_elements()?.iter().all(|t| is_zero_vec(t) || !z.is_nilpotent(t)))
}

// ---- quotients ------------------------------------------------------------

enum QuotientData {
    Finite { coset: Vec<u32>, reps: Vec<u32> },
    ZAlg(ZProjection),
}

/// The canonical map `R -> R/I` with lifting.
pub struct QuotientMap {
    source: Ring,
    target: Ring,
    ideal: Ideal,
    data: QuotientData,
}

impl QuotientMap {
    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn kernel(&self) -> &Ideal {
        &self.ideal
    }

    pub fn project(&self, a: &Element) -> Element {
        match &self.data {
            QuotientData::Finite { coset, .. } => self.target.idx(coset[a.index() as usize]),
            QuotientData::ZAlg(p) => {
                let z = self.target.zalg().unwrap();
                self.target.coords(p.project(z, a.coords()))
            }
        }
    }

    pub fn lift(&self, b: &Element) -> Element {
        match &self.data {
            QuotientData::Finite { reps, .. } => self.source.idx(reps[b.index() as usize]),
            QuotientData::ZAlg(p) => self.source.coords(p.lift(b.coords())),
        }
    }

    /// Preimage of an ideal of the quotient.
    pub fn preimage(&self, j: &Ideal) -> Ideal {
        let mut gens: Vec<Element> = j.generators().iter().map(|g| self.lift(g)).collect();
        gens.extend(self.ideal.generators().iter().cloned());
        Ideal::new(&self.source, &gens).unwrap()
    }

    /// Image of an ideal of the source.
    pub fn image(&self, i: &Ideal) -> Ideal {
        let gens: Vec<Element> = i.generators().iter().map(|g| self.project(g)).collect();
        Ideal::new(&self.target, &gens).unwrap()
    }
}

pub fn quotient_map(ideal: &Ideal) -> Result<QuotientMap> {
    quotient_map_named(ideal, format!("{}/{}", ideal.ring().name(), ideal))
}

/// `quotient_map` with a chosen name for the quotient ring.
pub fn quotient_map_named(ideal: &Ideal, name: String) -> Result<QuotientMap> {
    let ring = ideal.ring();
    match ring.backend() {
        Backend::Finite(f) => {
            let set = ideal.set().unwrap();
            let n = f.size();
            let mut coset = vec![u32::MAX; n];
            let mut reps = Vec::new();
            for a in f.elements() {
                if coset[a as usize] != u32::MAX {
                    continue;
                }
                let k = reps.len() as u32;
                reps.push(a);
                for i in set.ones() {
                    coset[f.add(a, i as u32) as usize] = k;
                }
            }
            let q = reps.len();
            let mut add = vec![0u32; q * q];
            let mut mul = vec![0u32; q * q];
            for (i, &a) in reps.iter().enumerate() {
                for (j, &b) in reps.iter().enumerate() {
                    add[i * q + j] = coset[f.add(a, b) as usize];
                    mul[i * q + j] = coset[f.mul(a, b) as usize];
                }
            }
            let labels = reps.iter().map(|&a| f.label(a)).collect();
            let target = Ring::from_tables_unchecked(add, mul, labels, name, BackendKind::Quotient)?;
            Ok(QuotientMap {
                source: ring.clone(),
                target,
                ideal: ideal.clone(),
                data: QuotientData::Finite { coset, reps },
            })
        }
        Backend::ZAlg(z) => {
            let (pres, proj) = z.quotient(ideal.lattice().unwrap());
            let qz = ZAlgebra::new(&pres).map_err(|e| Error::Verification(e.to_string()))?;
            let target = Ring::from_backend(name, BackendKind::Quotient, Backend::ZAlg(qz));
            Ok(QuotientMap { source: ring.clone(), target, ideal: ideal.clone(), data: QuotientData::ZAlg(proj) })
        }
    }
}

pub fn quotient_ring(ideal: &Ideal) -> Result<Ring> {
    Ok(quotient_map(ideal)?.target)
}

/// `R -> R/𝔑`, memoized per ring.
pub fn nil_quotient(ring: &Ring) -> Result<Arc<QuotientMap>> {
    let cached = ring.memo("nil_quotient", || -> Result<Arc<QuotientMap>> {
        let n = nilradical(ring)?;
        Ok(Arc::new(quotient_map(&n)?))
    });
    (*cached).clone()
}

/// Lifts an idempotent of `R/𝔑` (an element of `nil_quotient(R).target()`)
/// to an idempotent of `R`.
pub fn lift_idempotent_mod_nil(ring: &Ring, class: &Element) -> Result<Element> {
    let q = nil_quotient(ring)?;
    let target = q.target();
    target.check(class)?;
    if !target.is_idempotent(class) {
        return Err(Error::NotIdempotentClass);
    }
    let three = ring.from_int(3);
    let two = ring.from_int(2);
    let mut e = q.lift(class);
    for _ in 0..256 {
        let e2 = ring.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = ring.mul(&e2, &e);
        e = ring.sub(&ring.mul(&three, &e2), &ring.mul(&two, &e3));
    }
    Err(Error::Verification("idempotent lifting did not converge".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::spec::parse_ring;

    pub(crate) const DELIGNE: &str = r#"{"kind":"zalgebra","name":"deligne","free_rank":1,"torsion":[2],
        "basis":["1","x"],"unity":[1,0],"structure":[[[1,0],[0,1]],[[0,1],[0,0]]]}"#;

    fn deligne() -> Ring {
        parse_ring(DELIGNE).unwrap()
    }

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        let g: Vec<Element> = gens.iter().map(|s| r.parse(s).unwrap()).collect();
        Ideal::new(r, &g).unwrap()
    }

    #[test]
    fn deligne_ideal_algebra() {
        let r = deligne();
        let s = ideal(&r, &["x"]).sum(&ideal(&r, &["2"]));
        assert_eq!(s, ideal(&r, &["2", "x"]));
        assert_eq!(s.lattice().unwrap().basis().len(), 2);
        assert!(ideal(&r, &["2"]).product(&ideal(&r, &["x"])).is_zero());
        assert_eq!(annihilator(&r, &r.parse("2").unwrap()), ideal(&r, &["x"]));
        assert_eq!(ideal(&r, &[]).colon(&r.parse("x").unwrap()), ideal(&r, &["2", "x"]));
        assert_eq!(nilradical(&r).unwrap(), ideal(&r, &["x"]));
        assert_eq!(nilradical(&r).unwrap().to_string(), "(x)");
    }

    #[test]
    fn stabilization_examples() {
        let z8 = Ring::zmod(8).unwrap();
        let (n, j) = annihilator_power_stabilized(&z8, &z8.parse("2").unwrap()).unwrap();
        assert_eq!((n, j.is_whole()), (3, true));
        let r = deligne();
        let (n, j) = annihilator_power_stabilized(&r, &r.parse("2").unwrap()).unwrap();
        assert_eq!(n, 1);
        assert_eq!(j, ideal(&r, &["x"]));
        let (n, j) = annihilator_power_stabilized(&z8, &z8.parse("3").unwrap()).unwrap();
        assert_eq!((n, j.is_zero()), (1, true));
    }

    #[test]
    fn zmod12_examples() {
        let r = Ring::zmod(12).unwrap();
        let sat = Ideal::zero(&r).saturation(&r.parse("3").unwrap());
        assert_eq!(sat, ideal(&r, &["4"]));
        assert_eq!(nilradical(&r).unwrap(), ideal(&r, &["6"]));
        let q = quotient_ring(&ideal(&r, &["4"])).unwrap();
        assert_eq!(q.finite().unwrap().size(), 4);
        let nq = nil_quotient(&r).unwrap();
        let class = nq.project(&r.parse("3").unwrap());
        assert_eq!(r.format(&lift_idempotent_mod_nil(&r, &class).unwrap()), "9");
        assert_eq!(lift_idempotent_mod_nil(&r, &nq.project(&r.parse("2").unwrap())), Err(Error::NotIdempotentClass));
    }

    #[test]
    fn deligne_mod_nil_is_z() {
        let r = deligne();
        let q = nil_quotient(&r).unwrap();
        let z = q.target().zalg().unwrap();
        assert_eq!((z.free_rank(), z.torsion_invariants().len()), (1, 0));
        let x = ideal(&r, &["x"]);
        assert_eq!(q.preimage(&Ideal::zero(q.target())), x);
    }
}
