//! Ring handles, elements, and element-level queries.

pub mod finite;
pub mod spec;
pub mod zalgebra;

use std::any::Any;
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntVec;
pub use finite::FiniteRing;
pub use spec::RingSpec;
pub use zalgebra::{validate_presentation, Presentation, PresentationReport, ZAlgebra};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendKind {
    Zmod,
    Table,
    Product,
    Quotient,
    Powerset,
    Zalgebra,
}

#[derive(Debug)]
pub enum Backend {
    Finite(FiniteRing),
    ZAlg(ZAlgebra),
}

type Memo = Mutex<HashMap<&'static str, Arc<dyn Any + Send + Sync>>>;

struct RingInner {
    id: u64,
    name: String,
    kind: BackendKind,
    backend: Backend,
    memo: Memo,
}

/// Immutable, cheaply clonable handle to a ring.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.0.name)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Ring {}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Repr {
    Idx(u32),
    Coords(IntVec),
}

/// An element tagged with the ring it belongs to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    ring: u64,
    repr: Repr,
}

impl Element {
    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    pub fn index(&self) -> u32 {
        match &self.repr {
            Repr::Idx(i) => *i,
            Repr::Coords(_) => panic!("Z-algebra element has no index"),
        }
    }

    pub fn coords(&self) -> &[BigInt] {
        match &self.repr {
            Repr::Coords(v) => v,
            Repr::Idx(_) => panic!("finite-ring element has no coordinates"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementPredicates {
    pub is_unit: bool,
    pub is_zero_divisor: bool,
    pub is_nilpotent: bool,
    pub is_idempotent: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Sub,
}

impl Ring {
    fn wrap(name: String, kind: BackendKind, backend: Backend) -> Ring {
        Ring(Arc::new(RingInner {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name,
            kind,
            backend,
            memo: Mutex::new(HashMap::new()),
        }))
    }

    pub fn zmod(n: u32) -> Result<Ring> {
        if n == 0 {
            return Err(Error::Schema("zmod needs n >= 1; use a zalgebra for Z".into()));
        }
        Ok(Self::wrap(format!("Z/{n}"), BackendKind::Zmod, Backend::Finite(FiniteRing::zmod(n))))
    }

    pub fn power_set(ground: usize) -> Result<Ring> {
        if ground > 20 {
            return Err(Error::Capacity(format!("power set of a {ground}-element set")));
        }
        Ok(Self::wrap(format!("P({ground})"), BackendKind::Powerset, Backend::Finite(FiniteRing::power_set(ground))))
    }

    /// Ring from row-major `n x n` tables; the ring laws are checked.
    pub fn from_tables(add: Vec<u32>, mul: Vec<u32>, labels: Option<Vec<String>>) -> Result<Ring> {
        let n = (add.len() as f64).sqrt() as usize;
        if n == 0 || n * n != add.len() {
            return Err(Error::Schema("table must be square and nonempty".into()));
        }
        if n > 512 {
            return Err(Error::Capacity(format!("law check for a {n}-element table")));
        }
        finite::check_table_laws(n, &add, &mul).map_err(Error::Algebra)?;
        let labels = labels.unwrap_or_else(|| (0..n).map(|i| i.to_string()).collect());
        if labels.len() != n {
            return Err(Error::Schema("label count differs from table size".into()));
        }
        Self::from_tables_unchecked(add, mul, labels, format!("table{n}"), BackendKind::Table)
    }

    pub(crate) fn from_tables_unchecked(
        add: Vec<u32>,
        mul: Vec<u32>,
        labels: Vec<String>,
        name: String,
        kind: BackendKind,
    ) -> Result<Ring> {
        let f = FiniteRing::from_tables(add, mul, labels)?;
        Ok(Self::wrap(name, kind, Backend::Finite(f)))
    }

    pub fn product(factors: Vec<Ring>) -> Result<Ring> {
        if factors.is_empty() {
            return Err(Error::Schema("product needs at least one factor".into()));
        }
        let name = factors.iter().map(|f| f.name().to_string()).collect::<Vec<_>>().join(" x ");
        if factors.iter().all(|f| f.finite().is_some()) {
            let f = FiniteRing::product(factors)?;
            Ok(Self::wrap(name, BackendKind::Product, Backend::Finite(f)))
        } else if factors.iter().all(|f| f.zalg().is_some()) {
            let parts: Vec<Presentation> = factors.iter().map(|f| f.zalg().unwrap().presentation()).collect();
            let z = ZAlgebra::new(&zalgebra::product_presentation(&parts))?;
            Ok(Self::wrap(name, BackendKind::Product, Backend::ZAlg(z)))
        } else {
            Err(Error::Schema("products must not mix finite and Z-algebra factors".into()))
        }
    }

    /// `base[var] / (var^d + m_{d-1} var^{d-1} + … + m_0)` with `modulus = [m_0, …, m_{d-1}]`
    /// given as indices of `base`.
    pub fn poly_quotient(base: &Ring, modulus: Vec<u32>, var: &str) -> Result<Ring> {
        if base.finite().is_none() {
            return Err(Error::Schema("polynomial quotients need a finite base".into()));
        }
        let name = {
            let b = base.finite().unwrap();
            let mut terms = vec![format!("{var}^{}", modulus.len())];
            for (i, &c) in modulus.iter().enumerate().rev() {
                if c != b.zero() {
                    let mono = match i {
                        0 => String::new(),
                        1 => var.to_string(),
                        _ => format!("{var}^{i}"),
                    };
                    terms.push(match (mono.is_empty(), c == b.one()) {
                        (true, _) => b.label(c),
                        (false, true) => mono,
                        (false, false) => format!("{}{}", b.label(c), mono),
                    });
                }
            }
            format!("{}[{var}]/({})", base.name(), terms.join("+"))
        };
        let f = FiniteRing::poly_quotient(base.clone(), modulus, var)?;
        Ok(Self::wrap(name, BackendKind::Table, Backend::Finite(f)))
    }

    /// `R[x]/(x^k)` for a finite ring `R`.
    pub fn truncated(base: &Ring, k: usize) -> Result<Ring> {
        let b = base.finite().ok_or_else(|| Error::InfiniteRing("truncation base".into()))?;
        Self::poly_quotient(base, vec![b.zero(); k], "x").map(|r| r.with_name(format!("{}[x]/(x^{k})", base.name())))
    }

    pub fn zalgebra(p: &Presentation) -> Result<Ring> {
        let z = ZAlgebra::new(p)?;
        let name =
            format!("zalg(r={},d={:?})", p.free_rank, p.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>());
        Ok(Self::wrap(name, BackendKind::Zalgebra, Backend::ZAlg(z)))
    }

    pub(crate) fn from_backend(name: String, kind: BackendKind, backend: Backend) -> Ring {
        Self::wrap(name, kind, backend)
    }

    /// Same ring under another name (fresh identity and memo).
    pub fn with_name(self, name: impl Into<String>) -> Ring {
        match Arc::try_unwrap(self.0) {
            Ok(inner) => Self::wrap(name.into(), inner.kind, inner.backend),
            Err(shared) => {
                let ring = Ring(shared);
                let backend = match ring.backend() {
                    Backend::ZAlg(z) => Backend::ZAlg(ZAlgebra::new_unchecked(&z.presentation())),
                    Backend::Finite(_) => {
                        // Rebuild from the materialized tables.
                        let f = ring.finite().unwrap();
                        let (add, mul) = ring.tables_of(f);
                        let labels = f.elements().map(|i| f.label(i)).collect();
                        Backend::Finite(FiniteRing::from_tables(add, mul, labels).expect("valid tables"))
                    }
                };
                Self::wrap(name.into(), ring.kind(), backend)
            }
        }
    }

    fn tables_of(&self, f: &FiniteRing) -> (Vec<u32>, Vec<u32>) {
        let n = f.size();
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in f.elements() {
            for b in f.elements() {
                add[a as usize * n + b as usize] = f.add(a, b);
                mul[a as usize * n + b as usize] = f.mul(a, b);
            }
        }
        (add, mul)
    }

    /// Explicit operation tables of a finite ring.
    pub fn tables(&self) -> Result<(Vec<u32>, Vec<u32>)> {
        let f = self.finite().ok_or_else(|| Error::InfiniteRing(self.name().into()))?;
        Ok(self.tables_of(f))
    }

    pub fn id(&self) -> u64 {
        self.0.id
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn kind(&self) -> BackendKind {
        self.0.kind
    }

    pub fn backend(&self) -> &Backend {
        &self.0.backend
    }

    pub fn finite(&self) -> Option<&FiniteRing> {
        match &self.0.backend {
            Backend::Finite(f) => Some(f),
            Backend::ZAlg(_) => None,
        }
    }

    pub fn zalg(&self) -> Option<&ZAlgebra> {
        match &self.0.backend {
            Backend::ZAlg(z) => Some(z),
            Backend::Finite(_) => None,
        }
    }

    /// Number of elements, when finite.
    pub fn order(&self) -> Option<BigInt> {
        match &self.0.backend {
            Backend::Finite(f) => Some(BigInt::from(f.size())),
            Backend::ZAlg(z) => z.order(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn is_zero_ring(&self) -> bool {
        self.zero() == self.one()
    }

    /// Memoized invariant; the value is computed outside the lock.
    pub fn memo<T, F>(&self, key: &'static str, compute: F) -> Arc<T>
    where
        T: Any + Send + Sync,
        F: FnOnce() -> T,
    {
        if let Some(v) = self.0.memo.lock().unwrap().get(key) {
            return v.clone().downcast::<T>().expect("memo type");
        }
        let value: Arc<T> = Arc::new(compute());
        let mut map = self.0.memo.lock().unwrap();
        let entry = map.entry(key).or_insert_with(|| value.clone() as Arc<dyn Any + Send + Sync>);
        entry.clone().downcast::<T>().expect("memo type")
    }

    // ---- elements -----------------------------------------------------------

    pub fn idx(&self, i: u32) -> Element {
        Element { ring: self.0.id, repr: Repr::Idx(i) }
    }

    pub fn coords(&self, v: IntVec) -> Element {
        let z = self.zalg().expect("coordinates on a Z-algebra");
        Element { ring: self.0.id, repr: Repr::Coords(z.canon(&v)) }
    }

    pub fn owns(&self, e: &Element) -> bool {
        e.ring == self.0.id
    }

    pub fn check(&self, e: &Element) -> Result<()> {
        if self.owns(e) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn zero(&self) -> Element {
        match &self.0.backend {
            Backend::Finite(f) => self.idx(f.zero()),
            Backend::ZAlg(z) => self.coords(z.zero()),
        }
    }

    pub fn one(&self) -> Element {
        match &self.0.backend {
            Backend::Finite(f) => self.idx(f.one()),
            Backend::ZAlg(z) => self.coords(z.one()),
        }
    }

    pub fn from_int(&self, k: i64) -> Element {
        match &self.0.backend {
            Backend::Finite(f) => {
                let mut acc = f.zero();
                let base = if k >= 0 { f.one() } else { f.neg(f.one()) };
                let steps = k.unsigned_abs() % (f.size() as u64).max(1);
                for _ in 0..steps {
                    acc = f.add(acc, base);
                }
                self.idx(acc)
            }
            Backend::ZAlg(z) => self.coords(z.from_int(&BigInt::from(k))),
        }
    }

    /// Arithmetic with ring-membership checks.
    pub fn arith(&self, op: ArithOp, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Sub => self.sub(a, b),
        })
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        match (&self.0.backend, &a.repr, &b.repr) {
            (Backend::Finite(f), Repr::Idx(x), Repr::Idx(y)) => self.idx(f.add(*x, *y)),
            (Backend::ZAlg(z), Repr::Coords(x), Repr::Coords(y)) => self.coords(z.add(x, y)),
            _ => panic!("element representation does not match backend"),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        match (&self.0.backend, &a.repr, &b.repr) {
            (Backend::Finite(f), Repr::Idx(x), Repr::Idx(y)) => self.idx(f.mul(*x, *y)),
            (Backend::ZAlg(z), Repr::Coords(x), Repr::Coords(y)) => self.coords(z.mul(x, y)),
            _ => panic!("element representation does not match backend"),
        }
    }

    pub fn neg(&self, a: &Element) -> Element {
        match (&self.0.backend, &a.repr) {
            (Backend::Finite(f), Repr::Idx(x)) => self.idx(f.neg(*x)),
            (Backend::ZAlg(z), Repr::Coords(x)) => self.coords(z.neg(x)),
            _ => panic!("element representation does not match backend"),
        }
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.add(a, &self.neg(b))
    }

    pub fn pow(&self, a: &Element, k: u32) -> Element {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        *a == self.zero()
    }

    pub fn parse(&self, s: &str) -> Result<Element> {
        match &self.0.backend {
            Backend::Finite(f) => f.parse(s).map(|i| self.idx(i)),
            Backend::ZAlg(z) => z.parse(s).map(|v| self.coords(v)),
        }
    }

    pub fn format(&self, a: &Element) -> String {
        match (&self.0.backend, &a.repr) {
            (Backend::Finite(f), Repr::Idx(x)) => f.label(*x),
            (Backend::ZAlg(z), Repr::Coords(v)) => z.format(v),
            _ => panic!("element representation does not match backend"),
        }
    }

    // ---- element predicates -------------------------------------------------

    pub fn is_unit(&self, a: &Element) -> bool {
        match (&self.0.backend, &a.repr) {
            (Backend::Finite(f), Repr::Idx(x)) => f.is_unit(*x),
            (Backend::ZAlg(z), Repr::Coords(v)) => z.is_unit(v),
            _ => panic!("element representation does not match backend"),
        }
    }

    pub fn is_zero_divisor(&self, a: &Element) -> bool {
        match (&self.0.backend, &a.repr) {
            (Backend::Finite(f), Repr::Idx(x)) => f.is_zero_divisor(*x),
            (Backend::ZAlg(z), Repr::Coords(v)) => z.is_zero_divisor(v),
            _ => panic!("element representation does not match backend"),
        }
    }

    pub fn is_nilpotent(&self, a: &Element) -> bool {
        match (&self.0.backend, &a.repr) {
            (Backend::Finite(f), Repr::Idx(x)) => f.is_nilpotent(*x),
            (Backend::ZAlg(z), Repr::Coords(v)) => z.is_nilpotent(v),
            _ => panic!("element representation does not match backend"),
        }
    }

    pub fn is_idempotent(&self, a: &Element) -> bool {
        self.mul(a, a) == *a
    }

    pub fn predicates(&self, a: &Element) -> ElementPredicates {
        ElementPredicates {
            is_unit: self.is_unit(a),
            is_zero_divisor: self.is_zero_divisor(a),
            is_nilpotent: self.is_nilpotent(a),
            is_idempotent: self.is_idempotent(a),
        }
    }

    /// Every idempotent, in canonical order.
    pub fn idempotents(&self) -> Result<Vec<Element>> {
        match &self.0.backend {
            Backend::Finite(f) => Ok(f.idempotents().iter().map(|&i| self.idx(i)).collect()),
            Backend::ZAlg(z) => Ok(z.idempotents()?.iter().map(|v| self.coords(v.clone())).collect()),
        }
    }

    pub fn enumerate(&self) -> Result<Vec<Element>> {
        match &self.0.backend {
            Backend::Finite(f) => Ok(f.elements().map(|i| self.idx(i)).collect()),
            Backend::ZAlg(z) => Ok(z.enumerate()?.into_iter().map(|v| self.coords(v)).collect()),
        }
    }

    /// Finite rings: every element. Z-algebras: free coordinates bounded by `h`.
    pub fn sample(&self, h: u32) -> Result<Vec<Element>> {
        match &self.0.backend {
            Backend::Finite(_) => self.enumerate(),
            Backend::ZAlg(z) => Ok(z.sample(h)?.into_iter().map(|v| self.coords(v)).collect()),
        }
    }

    /// Serializable description that rebuilds an equal ring.
    pub fn spec(&self) -> RingSpec {
        spec::describe(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_arithmetic() {
        let r = Ring::zmod(6).unwrap();
        let three = r.parse("3").unwrap();
        let four = r.parse("4").unwrap();
        assert_eq!(r.format(&r.add(&three, &four)), "1");
        assert!(r.is_idempotent(&three));
        let z4 = Ring::zmod(4).unwrap();
        let two = z4.parse("2").unwrap();
        assert_eq!(z4.mul(&two, &two), z4.zero());
        assert_eq!(
            z4.predicates(&two),
            ElementPredicates { is_unit: false, is_zero_divisor: true, is_nilpotent: true, is_idempotent: false }
        );
        assert_eq!(r.arith(ArithOp::Add, &three, &two), Err(Error::RingMismatch));
    }

    #[test]
    fn product_of_z2_z3_matches_z6() {
        let p = Ring::product(vec![Ring::zmod(2).unwrap(), Ring::zmod(3).unwrap()]).unwrap();
        let z6 = Ring::zmod(6).unwrap();
        // (1,1) generates additively; compare k*(1,1) with k in Z/6
        let g = p.one();
        let mut x = p.zero();
        let mut map = HashMap::new();
        for k in 0..6 {
            map.insert(x.clone(), z6.from_int(k));
            x = p.add(&x, &g);
        }
        assert_eq!(map.len(), 6);
        for (a, ia) in &map {
            for (b, ib) in &map {
                assert_eq!(map[&p.add(a, b)], z6.add(ia, ib));
                assert_eq!(map[&p.mul(a, b)], z6.mul(ia, ib));
            }
        }
        assert_eq!(p.idempotents().unwrap().len(), 4);
    }

    #[test]
    fn memo_is_shared() {
        let r = Ring::zmod(5).unwrap();
        let a = r.memo("k", || 7u32);
        let b = r.memo("k", || 9u32);
        assert_eq!(*a, 7);
        assert_eq!(*b, 7);
    }
}
