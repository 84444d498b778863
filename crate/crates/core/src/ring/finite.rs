//! Finite rings with elements numbered `0..size`.

use std::collections::HashMap;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use super::Ring;
use crate::error::{Error, Result};

/// Rings up to this size get materialized operation tables.
pub const TABLE_LIMIT: usize = 1024;

#[derive(Debug)]
pub struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

#[derive(Debug)]
pub enum Shape {
    Zmod(u32),
    Table {
        labels: Vec<String>,
    },
    /// Index is lexicographic in the components, first factor most significant.
    Product {
        factors: Vec<Ring>,
        strides: Vec<u32>,
    },
    /// `base[x] / (x^d + m_{d-1} x^{d-1} + ... + m_0)`; element index is
    /// `sum c_i * |base|^i`.
    Poly {
        base: Ring,
        modulus: Vec<u32>,
        var: String,
    },
    /// Subsets of `{1..ground}` as bitmasks; `+` is symmetric difference.
    PowerSet {
        ground: usize,
    },
}

#[derive(Debug, Default)]
struct Cache {
    units: OnceLock<FixedBitSet>,
    nilpotents: OnceLock<FixedBitSet>,
    idempotents: OnceLock<Vec<u32>>,
    ann: OnceLock<Vec<FixedBitSet>>,
    labels: OnceLock<HashMap<String, u32>>,
}

#[derive(Debug)]
pub struct FiniteRing {
    size: u32,
    zero: u32,
    one: u32,
    tables: Option<Tables>,
    shape: Shape,
    cache: Cache,
}

impl FiniteRing {
    pub(crate) fn zmod(n: u32) -> Self {
        Self::build(n, 0, 1 % n, Shape::Zmod(n))
    }

    pub(crate) fn power_set(ground: usize) -> Self {
        let size = 1u32 << ground;
        Self::build(size, 0, size - 1, Shape::PowerSet { ground })
    }

    pub(crate) fn product(factors: Vec<Ring>) -> Result<Self> {
        let sizes: Vec<u64> = factors.iter().map(|f| f.finite().unwrap().size() as u64).collect();
        let total: u64 = sizes.iter().product();
        if total > u32::MAX as u64 / 2 {
            return Err(Error::Capacity(format!("product of size {total}")));
        }
        let mut strides = vec![1u32; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * sizes[i + 1] as u32;
        }
        let zero = factors.iter().zip(&strides).map(|(f, s)| f.finite().unwrap().zero() * s).sum();
        let one = factors.iter().zip(&strides).map(|(f, s)| f.finite().unwrap().one() * s).sum();
        Ok(Self::build(total as u32, zero, one, Shape::Product { factors, strides }))
    }

    /// `modulus` lists the non-leading coefficients of a monic polynomial.
    pub(crate) fn poly_quotient(base: Ring, modulus: Vec<u32>, var: &str) -> Result<Self> {
        let b = base.finite().unwrap();
        let total = (b.size() as u64).checked_pow(modulus.len() as u32).unwrap_or(u64::MAX);
        if total > 1 << 24 {
            return Err(Error::Capacity(format!("polynomial quotient of size {total}")));
        }
        let d = modulus.len();
        let zeros = vec![b.zero(); d];
        let zero_idx = Self::poly_index(&zeros, b.size);
        let mut unit = zeros;
        if d > 0 {
            unit[0] = b.one();
        }
        let one_idx = Self::poly_index(&unit, b.size);
        let shape = Shape::Poly { base, modulus, var: var.to_string() };
        Ok(Self::build(total as u32, zero_idx, one_idx, shape))
    }

    /// A ring from explicit tables; the caller has checked the ring laws.
    pub(crate) fn from_tables(add: Vec<u32>, mul: Vec<u32>, labels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        let zero = (0..n)
            .find(|&z| (0..n).all(|a| add[z * n + a] as usize == a))
            .ok_or_else(|| Error::Algebra("no additive identity".into()))?;
        let one = (0..n)
            .find(|&u| (0..n).all(|a| mul[u * n + a] as usize == a))
            .ok_or_else(|| Error::Algebra("no multiplicative identity".into()))?;
        let neg = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| add[a * n + b] as usize == zero)
                    .map(|b| b as u32)
                    .ok_or_else(|| Error::Algebra(format!("element {a} has no negative")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteRing {
            size: n as u32,
            zero: zero as u32,
            one: one as u32,
            tables: Some(Tables { add, mul, neg }),
            shape: Shape::Table { labels },
            cache: Cache::default(),
        })
    }

    fn build(size: u32, zero: u32, one: u32, shape: Shape) -> Self {
        let mut ring = FiniteRing { size, zero, one, tables: None, shape, cache: Cache::default() };
        if (size as usize) <= TABLE_LIMIT {
            let n = size as usize;
            let mut add = vec![0u32; n * n];
            let mut mul = vec![0u32; n * n];
            for a in 0..size {
                for b in a..size {
                    let s = ring.lazy_add(a, b);
                    let p = ring.lazy_mul(a, b);
                    add[a as usize * n + b as usize] = s;
                    add[b as usize * n + a as usize] = s;
                    mul[a as usize * n + b as usize] = p;
                    mul[b as usize * n + a as usize] = p;
                }
            }
            let neg = (0..size).map(|a| ring.lazy_neg(a)).collect();
            ring.tables = Some(Tables { add, mul, neg });
        }
        ring
    }

    pub fn size(&self) -> usize {
        self.size as usize
    }

    pub fn zero(&self) -> u32 {
        self.zero
    }

    pub fn one(&self) -> u32 {
        self.one
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.size
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.add[a as usize * self.size as usize + b as usize],
            None => self.lazy_add(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.mul[a as usize * self.size as usize + b as usize],
            None => self.lazy_mul(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.tables {
            Some(t) => t.neg[a as usize],
            None => self.lazy_neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: u32, k: u32) -> u32 {
        let mut acc = self.one;
        for _ in 0..k {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `1 - a`
    pub fn complement(&self, a: u32) -> u32 {
        self.sub(self.one, a)
    }

    pub fn components(&self, a: u32) -> Vec<u32> {
        match &self.shape {
            Shape::Product { strides, factors } => {
                strides.iter().zip(factors).map(|(s, f)| (a / s) % f.finite().unwrap().size).collect()
            }
            _ => vec![a],
        }
    }

    pub fn compose(&self, comps: &[u32]) -> u32 {
        match &self.shape {
            Shape::Product { strides, .. } => comps.iter().zip(strides).map(|(c, s)| c * s).sum(),
            _ => comps[0],
        }
    }

    pub fn factors(&self) -> Option<&[Ring]> {
        match &self.shape {
            Shape::Product { factors, .. } => Some(factors),
            _ => None,
        }
    }

    /// Coefficient indices (in the base ring) of an element of a polynomial
    /// quotient, lowest degree first.
    pub fn poly_coefficients(&self, a: u32) -> Option<Vec<u32>> {
        match &self.shape {
            Shape::Poly { base, modulus, .. } => Some(self.poly_coeffs(a, base.finite().unwrap().size, modulus.len())),
            _ => None,
        }
    }

    fn poly_coeffs(&self, a: u32, base: u32, d: usize) -> Vec<u32> {
        let mut a = a;
        (0..d)
            .map(|_| {
                let c = a % base;
                a /= base;
                c
            })
            .collect()
    }

    fn poly_index(coeffs: &[u32], base: u32) -> u32 {
        coeffs.iter().rev().fold(0, |acc, &c| acc * base + c)
    }

    fn lazy_add(&self, a: u32, b: u32) -> u32 {
        match &self.shape {
            Shape::Zmod(n) => ((a as u64 + b as u64) % *n as u64) as u32,
            Shape::PowerSet { .. } => a ^ b,
            Shape::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, s)| {
                    let f = f.finite().unwrap();
                    f.add((a / s) % f.size, (b / s) % f.size) * s
                })
                .sum(),
            Shape::Poly { base, modulus, .. } => {
                let r = base.finite().unwrap();
                let d = modulus.len();
                let (x, y) = (self.poly_coeffs(a, r.size, d), self.poly_coeffs(b, r.size, d));
                let s: Vec<u32> = x.iter().zip(&y).map(|(&p, &q)| r.add(p, q)).collect();
                Self::poly_index(&s, r.size)
            }
            Shape::Table { .. } => unreachable!("table rings always carry tables"),
        }
    }

    fn lazy_mul(&self, a: u32, b: u32) -> u32 {
        match &self.shape {
            Shape::Zmod(n) => ((a as u64 * b as u64) % *n as u64) as u32,
            Shape::PowerSet { .. } => a & b,
            Shape::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, s)| {
                    let f = f.finite().unwrap();
                    f.mul((a / s) % f.size, (b / s) % f.size) * s
                })
                .sum(),
            Shape::Poly { base, modulus, .. } => {
                let r = base.finite().unwrap();
                let d = modulus.len();
                let (x, y) = (self.poly_coeffs(a, r.size, d), self.poly_coeffs(b, r.size, d));
                let mut prod = vec![r.zero; (2 * d).saturating_sub(1).max(1)];
                for (i, &p) in x.iter().enumerate() {
                    if p == r.zero {
                        continue;
                    }
                    for (j, &q) in y.iter().enumerate() {
                        prod[i + j] = r.add(prod[i + j], r.mul(p, q));
                    }
                }
                for k in (d..prod.len()).rev() {
                    let c = prod[k];
                    if c == r.zero {
                        continue;
                    }
                    for (i, &m) in modulus.iter().enumerate() {
                        prod[k - d + i] = r.sub(prod[k - d + i], r.mul(c, m));
                    }
                    prod[k] = r.zero;
                }
                prod.truncate(d);
                Self::poly_index(&prod, r.size)
            }
            Shape::Table { .. } => unreachable!("table rings always carry tables"),
        }
    }

    fn lazy_neg(&self, a: u32) -> u32 {
        match &self.shape {
            Shape::Zmod(n) => (n - a) % n,
            Shape::PowerSet { .. } => a,
            Shape::Product { factors, strides } => factors
                .iter()
                .zip(strides)
                .map(|(f, s)| {
                    let f = f.finite().unwrap();
                    f.neg((a / s) % f.size) * s
                })
                .sum(),
            Shape::Poly { base, modulus, .. } => {
                let r = base.finite().unwrap();
                let c: Vec<u32> = self.poly_coeffs(a, r.size, modulus.len()).iter().map(|&x| r.neg(x)).collect();
                Self::poly_index(&c, r.size)
            }
            Shape::Table { .. } => unreachable!("table rings always carry tables"),
        }
    }

    // ---- element syntax ----------------------------------------------------

    pub fn label(&self, a: u32) -> String {
        match &self.shape {
            Shape::Zmod(_) => a.to_string(),
            Shape::Table { labels } => labels[a as usize].clone(),
            Shape::Product { factors, .. } => {
                let parts: Vec<String> =
                    self.components(a).iter().zip(factors).map(|(&c, f)| f.finite().unwrap().label(c)).collect();
                format!("({})", parts.join(","))
            }
            Shape::Poly { base, modulus, var } => {
                let r = base.finite().unwrap();
                let coeffs = self.poly_coeffs(a, r.size, modulus.len());
                let mut terms = Vec::new();
                for (i, &c) in coeffs.iter().enumerate() {
                    if c == r.zero {
                        continue;
                    }
                    let lc = r.label(c);
                    let mono = match i {
                        0 => String::new(),
                        1 => var.clone(),
                        _ => format!("{var}^{i}"),
                    };
                    terms.push(match (i, c == r.one) {
                        (0, _) => lc,
                        (_, true) => mono,
                        _ => format!("{lc}*{mono}"),
                    });
                }
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join("+")
                }
            }
            Shape::PowerSet { ground } => {
                let members: Vec<String> =
                    (0..*ground).filter(|i| a >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", members.join(","))
            }
        }
    }

    pub fn parse(&self, s: &str) -> Result<u32> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if let Some(rest) = t.strip_prefix('#') {
            return rest.parse::<u32>().ok().filter(|&i| i < self.size).ok_or_else(|| Error::Parse(s.to_string()));
        }
        match &self.shape {
            Shape::Zmod(n) => {
                let v: i64 = t.parse().map_err(|_| Error::Parse(s.to_string()))?;
                Ok(v.rem_euclid(*n as i64) as u32)
            }
            Shape::Product { factors, .. } => {
                let inner =
                    t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).ok_or_else(|| Error::Parse(s.to_string()))?;
                let parts = split_top_level(inner);
                if parts.len() != factors.len() {
                    return Err(Error::Parse(format!("{s}: expected {} components", factors.len())));
                }
                let comps =
                    parts.iter().zip(factors).map(|(p, f)| f.finite().unwrap().parse(p)).collect::<Result<Vec<_>>>()?;
                Ok(self.compose(&comps))
            }
            Shape::PowerSet { ground } => {
                let inner =
                    t.strip_prefix('{').and_then(|x| x.strip_suffix('}')).ok_or_else(|| Error::Parse(s.to_string()))?;
                let mut mask = 0u32;
                for m in inner.split(',').filter(|x| !x.is_empty()) {
                    let i: usize = m.parse().map_err(|_| Error::Parse(s.to_string()))?;
                    if i == 0 || i > *ground {
                        return Err(Error::Parse(format!("{s}: member {i} outside 1..{ground}")));
                    }
                    mask |= 1 << (i - 1);
                }
                Ok(mask)
            }
            _ => {
                let map = self.cache.labels.get_or_init(|| {
                    self.elements()
                        .map(|i| (self.label(i).chars().filter(|c| !c.is_whitespace()).collect(), i))
                        .collect()
                });
                map.get(&t).copied().ok_or_else(|| Error::Parse(s.to_string()))
            }
        }
    }

    // ---- cached element classes -------------------------------------------

    pub fn units(&self) -> &FixedBitSet {
        self.cache.units.get_or_init(|| {
            let mut set = FixedBitSet::with_capacity(self.size());
            for a in self.elements() {
                if self.elements().any(|b| self.mul(a, b) == self.one) {
                    set.insert(a as usize);
                }
            }
            set
        })
    }

    pub fn is_unit(&self, a: u32) -> bool {
        self.units().contains(a as usize)
    }

    /// Smallest `k >= 1` with `a^k = 0`.
    pub fn nil_index(&self, a: u32) -> Option<u32> {
        let mut seen = FixedBitSet::with_capacity(self.size());
        let mut p = a;
        let mut k = 1;
        loop {
            if p == self.zero {
                return Some(k);
            }
            if seen.put(p as usize) {
                return None;
            }
            p = self.mul(p, a);
            k += 1;
        }
    }

    pub fn nilpotents(&self) -> &FixedBitSet {
        self.cache.nilpotents.get_or_init(|| {
            let mut set = FixedBitSet::with_capacity(self.size());
            for a in self.elements() {
                if self.nil_index(a).is_some() {
                    set.insert(a as usize);
                }
            }
            set
        })
    }

    pub fn is_nilpotent(&self, a: u32) -> bool {
        self.nilpotents().contains(a as usize)
    }

    pub fn idempotents(&self) -> &[u32] {
        self.cache.idempotents.get_or_init(|| self.elements().filter(|&a| self.mul(a, a) == a).collect())
    }

    /// Annihilator sets of every element.
    pub fn annihilators(&self) -> &[FixedBitSet] {
        self.cache.ann.get_or_init(|| {
            let n = self.size();
            let mut out = vec![FixedBitSet::with_capacity(n); n];
            for a in self.elements() {
                for b in a..self.size {
                    if self.mul(a, b) == self.zero {
                        out[a as usize].insert(b as usize);
                        out[b as usize].insert(a as usize);
                    }
                }
            }
            out
        })
    }

    pub fn ann(&self, a: u32) -> &FixedBitSet {
        &self.annihilators()[a as usize]
    }

    pub fn is_zero_divisor(&self, a: u32) -> bool {
        self.ann(a).ones().any(|b| b as u32 != self.zero)
    }

    /// `{x a : x in R}`
    pub fn principal(&self, a: u32) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.size());
        for x in self.elements() {
            set.insert(self.mul(x, a) as usize);
        }
        set
    }

    /// Primitive idempotents: minimal nonzero idempotents.
    pub fn primitive_idempotents(&self) -> Vec<u32> {
        let idem: Vec<u32> = self.idempotents().iter().copied().filter(|&e| e != self.zero).collect();
        idem.iter().copied().filter(|&e| idem.iter().all(|&f| f == e || self.mul(e, f) != f)).collect()
    }
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | '{' | '[' => depth += 1,
            ')' | '}' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    parts.push(cur);
    parts
}

/// Checks the commutative ring laws of explicit tables; returns the first
/// violation found.
pub fn check_table_laws(n: usize, add: &[u32], mul: &[u32]) -> std::result::Result<(), String> {
    if add.len() != n * n || mul.len() != n * n {
        return Err("table dimensions".into());
    }
    if add.iter().chain(mul).any(|&x| x as usize >= n) {
        return Err("table entry out of range".into());
    }
    let at = |t: &[u32], a: usize, b: usize| t[a * n + b] as usize;
    for a in 0..n {
        for b in 0..n {
            if at(add, a, b) != at(add, b, a) {
                return Err(format!("addition not commutative at ({a},{b})"));
            }
            if at(mul, a, b) != at(mul, b, a) {
                return Err(format!("multiplication not commutative at ({a},{b})"));
            }
            for c in 0..n {
                if at(add, at(add, a, b), c) != at(add, a, at(add, b, c)) {
                    return Err(format!("addition not associative at ({a},{b},{c})"));
                }
                if at(mul, at(mul, a, b), c) != at(mul, a, at(mul, b, c)) {
                    return Err(format!("multiplication not associative at ({a},{b},{c})"));
                }
                if at(mul, a, at(add, b, c)) != at(add, at(mul, a, b), at(mul, a, c)) {
                    return Err(format!("distributivity fails at ({a},{b},{c})"));
                }
            }
        }
    }
    Ok(())
}
