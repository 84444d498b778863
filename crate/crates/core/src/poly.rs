//! Polynomials over finite rings, through bounded windows and truncations.
//!
//! `R[x]` is never a ring handle. Its annihilators are computed on windows of
//! bounded degree, and idempotents of `R[x]` are studied in `R[x]/(x^k)`.

use std::fmt;

use fixedbitset::FixedBitSet;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{decide, Predicate};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::finite::FiniteRing;
use crate::ring::{Element, Ring};
use crate::verdict::Verdict;

/// Largest number of polynomials a window scan may enumerate.
pub const WINDOW_BUDGET: u64 = 1 << 20;
/// Polynomials tried by the sampled part of the reduced-base check.
pub const PF_WINDOW_SAMPLES: usize = 50;
const SEED: u64 = 0x5eed;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    base: Ring,
    coeffs: Vec<u32>,
}

fn base_of(ring: &Ring) -> Result<&FiniteRing> {
    ring.finite().ok_or_else(|| Error::InfiniteRing(format!("{} as polynomial base", ring.name())))
}

impl Poly {
    pub fn new(base: &Ring, coeffs: &[Element]) -> Result<Poly> {
        base_of(base)?;
        for c in coeffs {
            base.check(c)?;
        }
        Ok(Self::from_indices(base, coeffs.iter().map(|c| c.index()).collect()))
    }

    pub(crate) fn from_indices(base: &Ring, mut coeffs: Vec<u32>) -> Poly {
        let zero = base.finite().unwrap().zero();
        while coeffs.last() == Some(&zero) {
            coeffs.pop();
        }
        Poly { base: base.clone(), coeffs }
    }

    pub fn constant(c: &Element, base: &Ring) -> Result<Poly> {
        Self::new(base, std::slice::from_ref(c))
    }

    pub fn zero(base: &Ring) -> Poly {
        Poly { base: base.clone(), coeffs: Vec::new() }
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn coeffs(&self) -> Vec<Element> {
        self.coeffs.iter().map(|&c| self.base.idx(c)).collect()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn fr(&self) -> &FiniteRing {
        self.base.finite().unwrap()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.fr();
        let n = self.coeffs.len().max(other.coeffs.len());
        let at = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(f.zero());
        let c = (0..n).map(|i| f.add(at(&self.coeffs, i), at(&other.coeffs, i))).collect();
        Self::from_indices(&self.base, c)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.base);
        }
        let f = self.fr();
        let mut c = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = f.add(c[i + j], f.mul(a, b));
            }
        }
        Self::from_indices(&self.base, c)
    }

    pub fn scale(&self, e: &Element) -> Poly {
        let f = self.fr();
        Self::from_indices(&self.base, self.coeffs.iter().map(|&a| f.mul(a, e.index())).collect())
    }

    /// Whether `f g = 0`, without building the product.
    pub fn annihilates(&self, g: &Poly) -> bool {
        if self.is_zero() || g.is_zero() {
            return true;
        }
        let f = self.fr();
        (0..self.coeffs.len() + g.coeffs.len() - 1).all(|k| {
            let lo = k.saturating_sub(g.coeffs.len() - 1);
            let hi = k.min(self.coeffs.len() - 1);
            (lo..=hi).fold(f.zero(), |acc, i| f.add(acc, f.mul(self.coeffs[i], g.coeffs[k - i]))) == f.zero()
        })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f = self.fr();
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != f.zero())
            .map(|(i, &c)| {
                let mut l = f.label(c);
                if i > 0 && l.contains('+') {
                    l = format!("({l})");
                }
                match i {
                    0 => l,
                    1 => format!("{l}*x"),
                    _ => format!("{l}*x^{i}"),
                }
            })
            .collect();
        if terms.is_empty() {
            out.write_str("0")
        } else {
            out.write_str(&terms.join(" + "))
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "Poly({self})")
    }
}

/// Every polynomial of degree at most `d`, in index order.
pub fn window(base: &Ring, d: usize) -> Result<Vec<Poly>> {
    let f = base_of(base)?;
    let n = f.size() as u64;
    let count = n.checked_pow(d as u32 + 1).filter(|&c| c <= WINDOW_BUDGET);
    let Some(count) = count else {
        return Err(Error::Capacity(format!("{n}^{} polynomials exceed the window budget", d + 1)));
    };
    Ok((0..count)
        .map(|mut k| {
            let c = (0..=d)
                .map(|_| {
                    let x = (k % n) as u32;
                    k /= n;
                    x
                })
                .collect();
            Poly::from_indices(base, c)
        })
        .collect())
}

/// `e = ∏ e_i` with `Ann(f_i) = (e_i)`, the generator of `Ann(f)` in `R[x]`
/// for a p.p. base.
pub fn pp_annihilator_idempotent(f: &Poly) -> Result<Element> {
    let base = f.base();
    if !decide(base, Predicate::Pp)?.0.verdict.is_true() {
        return Err(Error::BaseNotPP);
    }
    let fr = base_of(base)?;
    let mut e = fr.one();
    for &c in &f.coeffs {
        let ec = crate::ideal::purity::idempotent_generator_set(fr, fr.ann(c)).ok_or(Error::BaseNotPP)?;
        e = fr.mul(e, ec);
    }
    Ok(base.idx(e))
}

#[derive(Debug, Clone)]
pub struct BoundedAnnihilator {
    pub degree_bound: usize,
    pub members: Vec<Poly>,
    /// `∩ Ann(f_i)`, the constants that kill `f`.
    pub constant_annihilator: Ideal,
    /// A nonzero constant `c` with `c f = 0`, when the window is nonzero.
    pub mccoy_witness: Option<Element>,
}

pub fn poly_annihilator_bounded(f: &Poly, d: usize) -> Result<BoundedAnnihilator> {
    let base = f.base();
    let fr = base_of(base)?;
    let members: Vec<Poly> = window(base, d)?.into_iter().filter(|g| f.annihilates(g)).collect();
    let mut consts = FixedBitSet::with_capacity(fr.size() as usize);
    consts.insert_range(..);
    for &c in &f.coeffs {
        consts.intersect_with(fr.ann(c));
    }
    let nonzero = members.iter().any(|g| !g.is_zero());
    let mccoy_witness =
        if nonzero { consts.ones().map(|c| c as u32).find(|&c| c != fr.zero()).map(|c| base.idx(c)) } else { None };
    Ok(BoundedAnnihilator {
        degree_bound: d,
        members,
        constant_annihilator: Ideal::from_set(base, consts),
        mccoy_witness,
    })
}

/// `{g e : deg g <= d}` as a sorted list.
pub fn idempotent_multiples(base: &Ring, e: &Element, d: usize) -> Result<Vec<Poly>> {
    let mut out: Vec<Poly> = window(base, d)?.iter().map(|g| g.scale(e)).collect();
    out.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
    out.dedup();
    Ok(out)
}

/// Whether the degree-`d` window of `Ann(f)` is exactly the `e`-multiples.
pub fn annihilator_window_matches(f: &Poly, d: usize) -> Result<bool> {
    let e = pp_annihilator_idempotent(f)?;
    let mut ann = poly_annihilator_bounded(f, d)?.members;
    ann.sort_by(|a, b| a.coeffs.cmp(&b.coeffs));
    Ok(ann == idempotent_multiples(f.base(), &e, d)?)
}

/// `R[x]/(x^k)` as a finite ring.
pub fn truncated_ring(r: &Ring, k: usize) -> Result<Ring> {
    if k == 0 {
        return Err(Error::Schema("truncation order must be at least 1".into()));
    }
    Ring::truncated(r, k)
}

/// Every idempotent of `R[x]/(x^k)` is constant, and there are as many as in `R`.
pub fn truncated_idempotents_check(r: &Ring, k: usize) -> Result<Verdict> {
    let t = truncated_ring(r, k)?;
    let tf = t.finite().unwrap();
    let zero = base_of(r)?.zero();
    let idem = tf.idempotents();
    let constant = idem.iter().all(|&e| tf.poly_coefficients(e).unwrap().iter().skip(1).all(|&c| c == zero));
    Ok(Verdict::from_bool(constant && idem.len() == base_of(r)?.idempotents().len()))
}

/// The p.f. property of `R[x]` on bounded windows, for a finite reduced base.
///
/// Bases with at most 256 polynomials of degree <= 2 are scanned exhaustively;
/// otherwise 50 seeded random polynomials of degree <= 3 are used. The oracle
/// degree is `2 deg f`, lowered until the window fits `2^16` polynomials.
pub fn reduced_pf_window_check(r: &Ring) -> Result<Verdict> {
    let fr = base_of(r)?;
    if !decide(r, Predicate::Reduced)?.0.verdict.is_true() {
        return Err(Error::NotReduced);
    }
    let n = fr.size() as u64;
    let polys = if n.pow(3) <= 256 {
        window(r, 2)?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        (0..PF_WINDOW_SAMPLES)
            .map(|_| Poly::from_indices(r, (0..4).map(|_| rng.gen_range(0..fr.size() as u32)).collect()))
            .collect()
    };
    for f in &polys {
        let mut d = 2 * f.degree().unwrap_or(0);
        while d > 0 && n.pow(d as u32 + 1) > 1 << 16 {
            d -= 1;
        }
        if !annihilator_window_matches(f, d)? {
            return Ok(Verdict::False);
        }
    }
    Ok(Verdict::True)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(base: &Ring, cs: &[&str]) -> Poly {
        let c: Vec<Element> = cs.iter().map(|s| base.parse(s).unwrap()).collect();
        Poly::new(base, &c).unwrap()
    }

    fn f2xf3() -> Ring {
        Ring::product(vec![Ring::zmod(2).unwrap(), Ring::zmod(3).unwrap()]).unwrap()
    }

    #[test]
    fn idempotent_construction_example() {
        let r = f2xf3();
        let f = p(&r, &["(1,0)", "(0,1)"]);
        let e = pp_annihilator_idempotent(&f).unwrap();
        assert_eq!(r.format(&e), "(0,0)");
        assert!(annihilator_window_matches(&f, 4).unwrap());
        let zero = Poly::zero(&r);
        assert_eq!(pp_annihilator_idempotent(&zero).unwrap(), r.one());
        let c = p(&r, &["(1,0)"]);
        assert_eq!(r.format(&pp_annihilator_idempotent(&c).unwrap()), "(0,1)");
    }

    #[test]
    fn z4_window() {
        let z4 = Ring::zmod(4).unwrap();
        let f = p(&z4, &["2", "2"]);
        let a = poly_annihilator_bounded(&f, 2).unwrap();
        assert_eq!(a.members.len(), 8);
        assert!(a.members.iter().all(|g| g.coeffs.iter().all(|&c| c % 2 == 0)));
        assert_eq!(z4.format(a.mccoy_witness.as_ref().unwrap()), "2");
        assert!(matches!(pp_annihilator_idempotent(&f), Err(Error::BaseNotPP)));
        let one = p(&z4, &["1"]);
        assert_eq!(poly_annihilator_bounded(&one, 3).unwrap().members, vec![Poly::zero(&z4)]);
    }

    #[test]
    fn truncations() {
        let z4 = Ring::zmod(4).unwrap();
        let t = truncated_ring(&z4, 3).unwrap();
        assert_eq!(t.finite().unwrap().size(), 64);
        assert_eq!(truncated_idempotents_check(&z4, 3).unwrap(), Verdict::True);
        let f2f2 = Ring::product(vec![Ring::zmod(2).unwrap(), Ring::zmod(2).unwrap()]).unwrap();
        assert_eq!(truncated_idempotents_check(&f2f2, 2).unwrap(), Verdict::True);
        assert_eq!(truncated_idempotents_check(&z4, 1).unwrap(), Verdict::True);
    }

    #[test]
    fn reduced_pf_window() {
        assert_eq!(reduced_pf_window_check(&f2xf3()).unwrap(), Verdict::True);
        assert_eq!(reduced_pf_window_check(&Ring::zmod(5).unwrap()).unwrap(), Verdict::True);
        assert!(matches!(reduced_pf_window_check(&Ring::zmod(4).unwrap()), Err(Error::NotReduced)));
    }

    #[test]
    fn display() {
        let r = f2xf3();
        assert_eq!(p(&r, &["(1,0)", "(0,0)", "(1,2)"]).to_string(), "(1,0) + (1,2)*x^2");
        assert_eq!(Poly::zero(&r).to_string(), "0");
    }
}
