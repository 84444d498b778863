//! Power-set ideals, supports, the star ideal `I*` and ultra-rings over
//! finite index sets.
//!
//! Every ideal of the power-set ring of a finite `X` is principal, so a
//! [`SetIdeal`] is stored as the union `Y` of its members.

use std::fmt;

use fixedbitset::FixedBitSet;

use crate::classify::{decide, Predicate, Strategy};
use crate::error::{Error, Result};
use crate::harness::report::{ClauseResult, Rule, TheoremReport};
use crate::ideal::purity::purity_class;
use crate::ideal::{quotient_map_named, Ideal, QuotientMap};
use crate::ring::finite::FiniteRing;
use crate::ring::{Element, Ring};
use crate::verdict::Verdict;

/// Largest product an ultra-ring may be built over.
pub const PRODUCT_BUDGET: usize = 1 << 16;

/// The ideal of all subsets of `Y` in the power-set ring of `{1..ground}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetIdeal {
    ground: usize,
    mask: u32,
}

impl SetIdeal {
    /// The ideal generated by the given subsets (1-based points).
    pub fn from_generators(ground: usize, gens: &[Vec<usize>]) -> Result<SetIdeal> {
        if ground > 20 {
            return Err(Error::Capacity(format!("ground set of size {ground}")));
        }
        let mut mask = 0u32;
        for g in gens {
            for &x in g {
                if x == 0 || x > ground {
                    return Err(Error::Schema(format!("point {x} outside 1..={ground}")));
                }
                mask |= 1 << (x - 1);
            }
        }
        Ok(SetIdeal { ground, mask })
    }

    pub fn principal(ground: usize, mask: u32) -> SetIdeal {
        SetIdeal { ground, mask: mask & ((1u64 << ground) - 1) as u32 }
    }

    /// All `2^|X|` ideals, ordered by mask.
    pub fn all(ground: usize) -> Vec<SetIdeal> {
        (0..1u32 << ground).map(|m| SetIdeal { ground, mask: m }).collect()
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    /// The points of `Y`.
    pub fn union(&self) -> Vec<usize> {
        (1..=self.ground).filter(|&x| self.mask & (1 << (x - 1)) != 0).collect()
    }

    pub fn contains(&self, subset: u32) -> bool {
        subset & !self.mask == 0
    }

    /// Every member, as bitmasks.
    pub fn members(&self) -> Vec<u32> {
        (0..1u32 << self.ground).filter(|&s| self.contains(s)).collect()
    }
}

impl fmt::Display for SetIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.union().iter().map(|x| x.to_string()).collect();
        write!(f, "P({{{}}})", pts.join(","))
    }
}

fn product_parts(ring: &Ring) -> Result<(&FiniteRing, &[Ring])> {
    let f = ring.finite().ok_or_else(|| Error::InfiniteRing(ring.name().into()))?;
    let parts = f.factors().ok_or_else(|| Error::Schema(format!("{} is not a product", ring.name())))?;
    Ok((f, parts))
}

fn support_mask(f: &FiniteRing, factors: &[Ring], a: u32) -> u32 {
    f.components(a)
        .iter()
        .zip(factors)
        .enumerate()
        .filter(|(_, (&c, r))| c != r.finite().unwrap().zero())
        .fold(0, |m, (i, _)| m | (1 << i))
}

/// `Su(f) = {x : f_x ≠ 0}`, 1-based.
pub fn support(ring: &Ring, a: &Element) -> Result<Vec<usize>> {
    ring.check(a)?;
    let (f, parts) = product_parts(ring)?;
    let m = support_mask(f, parts, a.index());
    Ok((1..=parts.len()).filter(|&x| m & (1 << (x - 1)) != 0).collect())
}

/// `I* = {f : Su(f) ∈ I}`.
pub fn star_ideal(product: &Ring, i: &SetIdeal) -> Result<Ideal> {
    let (f, parts) = product_parts(product)?;
    if parts.len() != i.ground {
        return Err(Error::RingMismatch);
    }
    let mut set = FixedBitSet::with_capacity(f.size());
    for a in f.elements() {
        if i.contains(support_mask(f, parts, a)) {
            set.insert(a as usize);
        }
    }
    Ok(Ideal::from_set(product, set))
}

pub struct UltraRing {
    pub factors: Vec<Ring>,
    pub ideal: SetIdeal,
    pub product: Ring,
    pub star: Ideal,
    pub map: QuotientMap,
    /// The product of the factors outside `Y`.
    pub complement: Ring,
}

impl UltraRing {
    pub fn quotient(&self) -> &Ring {
        self.map.target()
    }
}

/// `R / I*`, checked to be isomorphic to the product over the points outside `Y`.
pub fn ultra_ring(factors: &[Ring], i: &SetIdeal) -> Result<UltraRing> {
    if factors.len() != i.ground {
        return Err(Error::RingMismatch);
    }
    let mut size = 1usize;
    for r in factors {
        let s = r.finite().ok_or_else(|| Error::InfiniteRing(r.name().into()))?.size();
        size = size.saturating_mul(s);
    }
    if size > PRODUCT_BUDGET {
        return Err(Error::Capacity(format!("product of size {size}")));
    }
    let product = Ring::product(factors.to_vec())?;
    let star = star_ideal(&product, i)?;
    let map = quotient_map_named(&star, format!("{}/{}*", product.name(), i))?;
    let outside: Vec<usize> = (0..factors.len()).filter(|k| i.mask & (1 << k) == 0).collect();
    let complement = if outside.is_empty() {
        Ring::zmod(1)?
    } else {
        Ring::product(outside.iter().map(|&k| factors[k].clone()).collect())?
    };
    check_isomorphism(&product, &map, &complement, &outside)?;
    Ok(UltraRing { factors: factors.to_vec(), ideal: *i, product, star, map, complement })
}

fn check_isomorphism(product: &Ring, map: &QuotientMap, complement: &Ring, outside: &[usize]) -> Result<()> {
    let pf = product.finite().unwrap();
    let q = map.target().finite().unwrap();
    let c = complement.finite().unwrap();
    let fail = |what: &str| Err(Error::Verification(format!("R/I* is not the complementary product: {what}")));
    if q.size() != c.size() {
        return fail("sizes differ");
    }
    let phi: Vec<u32> = q
        .elements()
        .map(|b| {
            let a = map.lift(&map.target().idx(b)).index();
            let comps = pf.components(a);
            if outside.is_empty() {
                c.zero()
            } else {
                c.compose(&outside.iter().map(|&k| comps[k]).collect::<Vec<_>>())
            }
        })
        .collect();
    let mut hit = FixedBitSet::with_capacity(c.size());
    for &v in &phi {
        hit.insert(v as usize);
    }
    if hit.count_ones(..) != c.size() {
        return fail("not a bijection");
    }
    if phi[q.one() as usize] != c.one() {
        return fail("unity");
    }
    for a in q.elements() {
        for b in q.elements() {
            let (x, y) = (phi[a as usize], phi[b as usize]);
            if phi[q.add(a, b) as usize] != c.add(x, y) || phi[q.mul(a, b) as usize] != c.mul(x, y) {
                return fail("operations");
            }
        }
    }
    Ok(())
}

fn all_factors(u: &UltraRing, p: Predicate) -> Result<Verdict> {
    let mut v = Verdict::True;
    for r in &u.factors {
        v = v.and(&decide(r, p)?.0.verdict);
    }
    Ok(v)
}

/// Purity of `I*`, and preservation of reduced, pp and pf by `R -> R/I*`.
pub fn ultra_preservation_suite(u: &UltraRing) -> Result<TheoremReport> {
    let q = u.quotient();
    let def = Strategy::Definitional;
    let mut clauses = vec![ClauseResult::new("I* is pure", purity_class(&u.star)?.pure, def)];
    for p in [Predicate::Reduced, Predicate::Pp, Predicate::Pf] {
        clauses.push(ClauseResult::new(format!("every factor {p}"), all_factors(u, p)?, def));
        clauses.push(ClauseResult::new(format!("R/I* {p}"), decide(q, p)?.0.verdict, def));
    }
    let rules = vec![Rule::Holds(0), Rule::Implies(1, 2), Rule::Implies(3, 4), Rule::Implies(5, 6)];
    Ok(TheoremReport::new("ultra", q.name(), clauses, rules))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::report::Agreement;

    fn z(n: u32) -> Ring {
        Ring::zmod(n).unwrap()
    }

    #[test]
    fn supports() {
        let r = Ring::product(vec![z(4), z(4), z(4)]).unwrap();
        assert_eq!(support(&r, &r.parse("(1,0,2)").unwrap()).unwrap(), vec![1, 3]);
        assert_eq!(support(&r, &r.zero()).unwrap(), Vec::<usize>::new());
        assert_eq!(support(&r, &r.parse("(0,3,0)").unwrap()).unwrap(), vec![2]);
    }

    #[test]
    fn quotients() {
        let f = vec![z(4), z(4), z(4)];
        let u = ultra_ring(&f, &SetIdeal::from_generators(3, &[vec![1], vec![2]]).unwrap()).unwrap();
        assert_eq!(u.quotient().finite().unwrap().size(), 4);
        let u0 = ultra_ring(&f, &SetIdeal::principal(3, 0)).unwrap();
        assert!(u0.star.is_zero());
        assert_eq!(u0.quotient().finite().unwrap().size(), 64);
        let u1 = ultra_ring(&f, &SetIdeal::principal(3, 7)).unwrap();
        assert!(u1.star.is_whole());
        assert!(u1.quotient().is_zero_ring());
    }

    #[test]
    fn suite() {
        let f = vec![z(2), z(3), z(2)];
        for i in SetIdeal::all(3) {
            let rep = ultra_preservation_suite(&ultra_ring(&f, &i).unwrap()).unwrap();
            assert_eq!(rep.agreement, Agreement::Pass, "{rep}");
        }
        let u = ultra_ring(&[z(4), z(4)], &SetIdeal::principal(2, 0)).unwrap();
        let rep = ultra_preservation_suite(&u).unwrap();
        assert_eq!(rep.agreement, Agreement::Pass);
        assert_eq!(rep.clauses[3].verdict, Verdict::False);
    }
}
