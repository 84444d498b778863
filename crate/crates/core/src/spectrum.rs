//! Primes, minimal and associated primes, localization kernels, and the
//! total ring of fractions.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{
    annihilator, nil_quotient, nilradical, quotient_map, quotient_ring, set_sum, zalg_is_reduced_direct, Ideal,
};
use crate::linalg::int::{left_kernel, unit_vec, zero_vec, IntMatrix, IntVec};
use crate::linalg::rat::{self, QVec};
use crate::linalg::Lattice;
use crate::ring::zalgebra::ZAlgebra;
use crate::ring::{Backend, Element, Ring};
use crate::verdict::{Verdict, Witness};

/// Sample height used by the membership check on localization kernels.
pub const KER_PI_CHECK_HEIGHT: u32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    FiniteScan,
    QuotientDomainTest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeIdeal {
    pub ideal: Ideal,
    pub certified: Certification,
}

impl PrimeIdeal {
    fn certify(ideal: Ideal) -> Result<PrimeIdeal> {
        let certified =
            if ideal.ring().is_finite() { Certification::FiniteScan } else { Certification::QuotientDomainTest };
        if !is_prime(&ideal)?.is_true() {
            return Err(Error::Verification(format!("{ideal} failed the prime test")));
        }
        Ok(PrimeIdeal { ideal, certified })
    }
}

#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub minimal_primes: Vec<PrimeIdeal>,
    pub maximal_ideals: Option<Vec<PrimeIdeal>>,
    pub mp: Verdict,
    pub min_compact: bool,
    pub min_compact_reason: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalRingReport {
    pub tr_equals_r: Verdict,
    pub absolutely_flat: Verdict,
    pub zero_dimensional: Verdict,
    pub witness: Option<Witness>,
}

// ---- domains and fields ----------------------------------------------------

fn finite_zalg_elements(z: &ZAlgebra) -> Result<Vec<IntVec>> {
    z.enumerate()
}

pub fn is_domain(ring: &Ring) -> Result<Verdict> {
    if ring.is_zero_ring() {
        return Ok(Verdict::False);
    }
    Ok(Verdict::from_bool(match ring.backend() {
        Backend::Finite(f) => f.elements().all(|a| a == f.zero() || !f.is_zero_divisor(a)),
        Backend::ZAlg(z) if z.free_rank() == 0 => {
            finite_zalg_elements(z)?.iter().all(|v| v.iter().all(Zero::is_zero) || !z.is_zero_divisor(v))
        }
        Backend::ZAlg(z) => {
            z.torsion_invariants().is_empty() && zalg_is_reduced_direct(z)? && z.rational()?.primitive.len() == 1
        }
    }))
}

pub fn is_field(ring: &Ring) -> Result<Verdict> {
    if ring.is_zero_ring() {
        return Ok(Verdict::False);
    }
    Ok(Verdict::from_bool(match ring.backend() {
        Backend::Finite(f) => f.elements().all(|a| a == f.zero() || f.is_unit(a)),
        Backend::ZAlg(z) if z.free_rank() == 0 => is_domain(ring)?.is_true(),
        Backend::ZAlg(_) => false,
    }))
}

pub fn is_prime(i: &Ideal) -> Result<Verdict> {
    if i.is_whole() {
        return Ok(Verdict::False);
    }
    is_domain(&quotient_ring(i)?)
}

pub fn is_maximal(i: &Ideal) -> Result<Verdict> {
    if i.is_whole() {
        return Ok(Verdict::False);
    }
    is_field(&quotient_ring(i)?)
}

pub fn is_primary_ideal(i: &Ideal) -> Result<Verdict> {
    if i.is_whole() {
        return Ok(Verdict::False);
    }
    is_primary_ring(&quotient_ring(i)?)
}

/// Every zero-divisor is nilpotent (and the ring is nonzero).
pub fn is_primary_ring(ring: &Ring) -> Result<Verdict> {
    if ring.is_zero_ring() {
        return Ok(Verdict::False);
    }
    match ring.backend() {
        Backend::Finite(f) => Ok(Verdict::from_bool(f.elements().all(|a| !f.is_zero_divisor(a) || f.is_nilpotent(a)))),
        Backend::ZAlg(_) => {
            let n = nilradical(ring)?;
            if !is_prime(&n)?.is_true() {
                return Ok(Verdict::False);
            }
            let p = PrimeIdeal { ideal: n, certified: Certification::QuotientDomainTest };
            Ok(Verdict::from_bool(ker_pi(&p)?.is_zero()))
        }
    }
}

// ---- finite rings: all ideals ----------------------------------------------

/// Every ideal of a finite ring, sorted by element set.
pub fn all_ideals(ring: &Ring) -> Result<Arc<Vec<Ideal>>> {
    let f = ring.finite().ok_or_else(|| Error::InfiniteRing(ring.name().into()))?;
    Ok(ring.memo("all_ideals", || {
        let mut seen: HashSet<FixedBitSet> = HashSet::new();
        let principal: Vec<FixedBitSet> = {
            let mut ps: Vec<FixedBitSet> = f.elements().map(|a| f.principal(a)).collect();
            ps.sort_by(|a, b| a.ones().cmp(b.ones()));
            ps.dedup();
            ps
        };
        let mut queue: VecDeque<FixedBitSet> = VecDeque::new();
        for p in &principal {
            if seen.insert(p.clone()) {
                queue.push_back(p.clone());
            }
        }
        while let Some(s) = queue.pop_front() {
            for p in &principal {
                if p.is_subset(&s) {
                    continue;
                }
                let t = set_sum(f, &s, p);
                if seen.insert(t.clone()) {
                    queue.push_back(t);
                }
            }
        }
        let mut sets: Vec<FixedBitSet> = seen.into_iter().collect();
        sets.sort_by(|a, b| a.ones().cmp(b.ones()));
        sets.into_iter().map(|s| Ideal::from_set(ring, s)).collect()
    }))
}

/// Maximal ideals of a finite ring (by the field test on every ideal).
pub fn maximal_ideals(ring: &Ring) -> Result<Vec<PrimeIdeal>> {
    let mut out = Vec::new();
    for i in all_ideals(ring)?.iter() {
        if is_maximal(i)?.is_true() {
            out.push(PrimeIdeal { ideal: i.clone(), certified: Certification::FiniteScan });
        }
    }
    Ok(out)
}

/// Prime ideals of a finite ring (by the domain test on every ideal).
pub fn all_primes(ring: &Ring) -> Result<Vec<PrimeIdeal>> {
    let mut out = Vec::new();
    for i in all_ideals(ring)?.iter() {
        if is_prime(i)?.is_true() {
            out.push(PrimeIdeal { ideal: i.clone(), certified: Certification::FiniteScan });
        }
    }
    Ok(out)
}

// ---- minimal primes --------------------------------------------------------

pub fn minimal_primes(ring: &Ring) -> Result<Vec<PrimeIdeal>> {
    let cached = ring.memo("minimal_primes", || compute_minimal_primes(ring));
    (*cached).clone()
}

fn sort_primes(ps: &mut [PrimeIdeal]) {
    ps.sort_by(|a, b| a.ideal.cmp_key(&b.ideal));
}

fn compute_minimal_primes(ring: &Ring) -> Result<Vec<PrimeIdeal>> {
    let mut primes = match ring.backend() {
        Backend::Finite(f) => {
            let mut out = Vec::new();
            for e in f.primitive_idempotents() {
                let mut set = FixedBitSet::with_capacity(f.size());
                for a in f.elements() {
                    if f.is_nilpotent(f.mul(a, e)) {
                        set.insert(a as usize);
                    }
                }
                out.push(PrimeIdeal::certify(Ideal::from_set(ring, set))?);
            }
            out
        }
        Backend::ZAlg(z) => {
            let mut out = Vec::new();
            for l in char_zero_primes(z)? {
                out.push(PrimeIdeal::certify(Ideal::from_lattice(ring, l))?);
            }
            for i in torsion_minimal_primes(ring)? {
                out.push(PrimeIdeal::certify(i)?);
            }
            out
        }
    };
    sort_primes(&mut primes);
    for (a, p) in primes.iter().enumerate() {
        for (b, q) in primes.iter().enumerate() {
            if a != b && p.ideal.leq(&q.ideal) {
                return Err(Error::Verification("minimal primes are not pairwise incomparable".into()));
            }
        }
    }
    let meet = primes
        .iter()
        .skip(1)
        .fold(primes.first().map(|p| p.ideal.clone()).unwrap_or_else(|| Ideal::whole(ring)), |acc, p| {
            acc.intersect(&p.ideal)
        });
    if meet != nilradical(ring)? {
        return Err(Error::Verification("minimal primes do not intersect to the nilradical".into()));
    }
    Ok(primes)
}

/// `{v : ε v ∈ Rad(A)} + T` for each primitive idempotent `ε` of `A`.
fn char_zero_primes(z: &ZAlgebra) -> Result<Vec<Lattice>> {
    let data = z.rational()?;
    let r = z.free_rank();
    let m = z.dim();
    let gram: Vec<QVec> = data.gram.iter().map(|row| rat::to_q(row)).collect();
    let mut out = Vec::new();
    for eps in &data.primitive {
        let me = z.a_mult_matrix(eps);
        let c: Vec<QVec> = me.iter().map(|row| rat::vec_mat(row, &gram, r)).collect();
        // integer left kernel of the column-scaled matrix
        let cols: Vec<IntVec> = rat::transpose(&c, r).iter().map(|col| rat::clear_denominators(col)).collect();
        let scaled: IntMatrix = (0..r).map(|i| cols.iter().map(|col| col[i].clone()).collect()).collect();
        let ker = left_kernel(&scaled, r);
        let mut rows: IntMatrix = ker
            .iter()
            .map(|k| {
                let mut v = zero_vec(m);
                v[..r].clone_from_slice(k);
                v
            })
            .collect();
        rows.extend((r..m).map(|i| unit_vec(m, i)));
        out.push(Lattice::from_rows(&rows, m));
    }
    Ok(out)
}

/// Minimal primes containing a rational prime: preimages of `Ann(f_j)` in
/// `R/𝔑` for the primitive idempotents `f_j` of its (finite, reduced)
/// torsion ideal.
fn torsion_minimal_primes(ring: &Ring) -> Result<Vec<Ideal>> {
    let q = nil_quotient(ring)?;
    let b = q.target();
    let bz = b.zalg().unwrap();
    let torsion = bz.torsion_elements()?;
    let idem: Vec<&IntVec> = torsion.iter().filter(|t| !t.iter().all(Zero::is_zero) && bz.is_idempotent(t)).collect();
    let primitive: Vec<&IntVec> =
        idem.iter().copied().filter(|e| idem.iter().all(|f| f == e || bz.mul(e, f) != **f)).collect();
    Ok(primitive.into_iter().map(|e| q.preimage(&annihilator(b, &b.coords(e.clone())))).collect())
}

pub fn is_mp(ring: &Ring) -> Result<Verdict> {
    let mins = minimal_primes(ring)?;
    for (a, p) in mins.iter().enumerate() {
        for q in &mins[a + 1..] {
            if !p.ideal.sum(&q.ideal).is_whole() {
                return Ok(Verdict::False);
            }
        }
    }
    Ok(Verdict::True)
}

/// The first pair of distinct minimal primes that is not comaximal.
pub fn mp_witness(ring: &Ring) -> Result<Option<(Ideal, Ideal)>> {
    let mins = minimal_primes(ring)?;
    for (a, p) in mins.iter().enumerate() {
        for q in &mins[a + 1..] {
            if !p.ideal.sum(&q.ideal).is_whole() {
                return Ok(Some((p.ideal.clone(), q.ideal.clone())));
            }
        }
    }
    Ok(None)
}

pub fn spectrum_report(ring: &Ring) -> Result<SpectrumReport> {
    Ok(SpectrumReport {
        minimal_primes: minimal_primes(ring)?,
        maximal_ideals: if ring.finite().is_some() { Some(maximal_ideals(ring)?) } else { None },
        mp: is_mp(ring)?,
        min_compact: true,
        min_compact_reason: "finitely many minimal primes",
    })
}

// ---- associated primes and localization kernels ------------------------------

/// Associated primes, sorted.
pub fn associated_primes(ring: &Ring) -> Result<Vec<PrimeIdeal>> {
    let cached = ring.memo("associated_primes", || compute_associated_primes(ring));
    (*cached).clone()
}

fn compute_associated_primes(ring: &Ring) -> Result<Vec<PrimeIdeal>> {
    let mut seen: Vec<Ideal> = Vec::new();
    let candidates: Vec<Element> = match ring.backend() {
        Backend::Finite(_) => ring.enumerate()?,
        Backend::ZAlg(z) => {
            for l in char_zero_primes(z)? {
                seen.push(Ideal::from_lattice(ring, l));
            }
            z.torsion_elements()?.iter().map(|t| ring.coords(t.clone())).collect()
        }
    };
    for t in candidates {
        if ring.is_zero(&t) {
            continue;
        }
        let a = annihilator(ring, &t);
        if !seen.contains(&a) && is_prime(&a)?.is_true() {
            seen.push(a);
        }
    }
    let mut out: Vec<PrimeIdeal> = seen.into_iter().map(PrimeIdeal::certify).collect::<Result<_>>()?;
    sort_primes(&mut out);
    Ok(out)
}

fn first_outside(i: &Ideal, p: &Ideal) -> Option<Element> {
    i.generators().iter().find(|g| !p.contains(g)).cloned()
}

/// `Ker(R -> R_p) = {f : f s = 0 for some s ∉ p}`.
pub fn ker_pi(p: &PrimeIdeal) -> Result<Ideal> {
    let ring = p.ideal.ring();
    match ring.backend() {
        Backend::Finite(f) => {
            let set = p.ideal.set().unwrap();
            let mut out = FixedBitSet::with_capacity(f.size());
            for s in f.elements() {
                if !set.contains(s as usize) {
                    out.union_with(f.ann(s));
                }
            }
            Ok(Ideal::from_set(ring, out))
        }
        Backend::ZAlg(_) => zalg_ker_pi(ring, &p.ideal),
    }
}

fn zalg_ker_pi(ring: &Ring, p: &Ideal) -> Result<Ideal> {
    let ass = associated_primes(ring)?;
    let outside: Vec<&Ideal> = ass.iter().map(|q| &q.ideal).filter(|q| !q.leq(p)).collect();
    let zero = Ideal::zero(ring);
    let product = outside.iter().fold(Ideal::whole(ring), |acc, q| acc.product(q));
    let s1 = first_outside(&product, p).ok_or_else(|| Error::SeparatorNotFound(format!("no separator for {p}")))?;
    let k1 = zero.saturation(&s1);
    let mut s2 = ring.one();
    for q in &outside {
        let sq = first_outside(q, p).ok_or_else(|| Error::SeparatorNotFound(format!("{q} inside {p}")))?;
        s2 = ring.mul(&s2, &sq);
    }
    let k2 = zero.saturation(&s2);
    if k1 != k2 {
        return Err(Error::Verification(format!("separators disagree on ker_pi({p})")));
    }
    for f in ring.sample(KER_PI_CHECK_HEIGHT)? {
        let outside_p = !annihilator(ring, &f).leq(p);
        if outside_p != k1.contains(&f) {
            return Err(Error::Verification(format!("ker_pi({p}) membership check failed at {}", ring.format(&f))));
        }
    }
    Ok(k1)
}

/// `R_p` for a prime of a finite ring, as `R / Ker π_p`.
pub fn localization_at_prime(p: &PrimeIdeal) -> Result<Ring> {
    let ring = p.ideal.ring();
    if ring.finite().is_none() {
        return Err(Error::InfiniteRing(format!("localization of {}", ring.name())));
    }
    let k = ker_pi(p)?;
    let q = quotient_map(&k)?;
    let name = format!("{}_{}", ring.name(), p.ideal);
    Ok(q.target().clone().with_name(name))
}

// ---- total ring of fractions -------------------------------------------------

fn smallest_prime_avoiding(d: &[BigInt]) -> BigInt {
    let mut p = BigInt::from(2);
    loop {
        if d.iter().all(|x| !x.is_multiple_of(&p)) {
            return p;
        }
        p += BigInt::one();
        while (2..).take_while(|k| BigInt::from(k * k) <= p).any(|k| p.is_multiple_of(&BigInt::from(k))) {
            p += BigInt::one();
        }
    }
}

pub fn total_ring_report(ring: &Ring) -> Result<TotalRingReport> {
    match ring.backend() {
        Backend::Finite(f) => {
            let tr = f.elements().all(|a| f.is_zero_divisor(a) || f.is_unit(a));
            if !tr {
                return Err(Error::Verification("finite ring with a non-unit non-zero-divisor".into()));
            }
            let bad = f.elements().find(|&a| !f.elements().any(|g| f.mul(f.mul(a, a), g) == a));
            Ok(TotalRingReport {
                tr_equals_r: Verdict::True,
                absolutely_flat: Verdict::from_bool(bad.is_none()),
                zero_dimensional: Verdict::True,
                witness: bad.map(|a| Witness::element(f.label(a), "no g with f = f^2 g")),
            })
        }
        Backend::ZAlg(z) => {
            let (tr, witness) = if z.free_rank() == 0 {
                (true, None)
            } else {
                let p = smallest_prime_avoiding(z.torsion_invariants());
                let e = ring.coords(z.from_int(&p));
                (false, Some(Witness::element(ring.format(&e), "non-zero-divisor that is not a unit")))
            };
            let zd = ass_equals_min(ring)?;
            let reduced = nilradical(ring)?.is_zero();
            Ok(TotalRingReport {
                tr_equals_r: Verdict::from_bool(tr),
                absolutely_flat: Verdict::from_bool(zd && reduced),
                zero_dimensional: Verdict::from_bool(zd),
                witness,
            })
        }
    }
}

/// `Ass(R) = Min(R)`, which for Noetherian rings is zero-dimensionality of `T(R)`.
pub fn ass_equals_min(ring: &Ring) -> Result<bool> {
    let ass = associated_primes(ring)?;
    let min = minimal_primes(ring)?;
    Ok(ass.len() == min.len() && ass.iter().zip(&min).all(|(a, b)| a.ideal == b.ideal))
}

// ---- Zariski utilities (finite rings) ------------------------------------------

pub fn zariski_sets(ring: &Ring, f: &Element) -> Result<(Vec<PrimeIdeal>, Vec<PrimeIdeal>)> {
    let primes = all_primes(ring)?;
    let (v, d): (Vec<_>, Vec<_>) = primes.into_iter().partition(|p| p.ideal.contains(f));
    Ok((d, v))
}

/// `γ`: each prime to the unique minimal prime below it.
pub fn gamma_retraction(ring: &Ring) -> Result<Vec<(PrimeIdeal, PrimeIdeal)>> {
    if !is_mp(ring)?.is_true() {
        return Err(Error::NotMpRing);
    }
    let mins = minimal_primes(ring)?;
    let mut out = Vec::new();
    for p in all_primes(ring)? {
        let below: Vec<&PrimeIdeal> = mins.iter().filter(|m| m.ideal.leq(&p.ideal)).collect();
        if below.len() != 1 {
            return Err(Error::Verification(format!("{} lies over {} minimal primes", p.ideal, below.len())));
        }
        out.push((p.clone(), below[0].clone()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::spec::parse_ring;

    const DELIGNE: &str = r#"{"kind":"zalgebra","name":"deligne","free_rank":1,"torsion":[2],
        "basis":["1","x"],"unity":[1,0],"structure":[[[1,0],[0,1]],[[0,1],[0,0]]]}"#;
    const SPLIT: &str = r#"{"kind":"zalgebra","free_rank":2,"torsion":[],
        "basis":["1","x"],"unity":[1,0],"structure":[[[1,0],[0,1]],[[0,1],[0,2]]]}"#;

    fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
        let g: Vec<Element> = gens.iter().map(|s| r.parse(s).unwrap()).collect();
        Ideal::new(r, &g).unwrap()
    }

    #[test]
    fn deligne_spectrum() {
        let r = parse_ring(DELIGNE).unwrap();
        assert!(is_prime(&ideal(&r, &["x"])).unwrap().is_true());
        assert!(is_maximal(&ideal(&r, &["2", "x"])).unwrap().is_true());
        assert!(!is_maximal(&ideal(&r, &["x"])).unwrap().is_true());
        let mins = minimal_primes(&r).unwrap();
        assert_eq!(mins.len(), 1);
        assert_eq!(mins[0].ideal, ideal(&r, &["x"]));
        assert!(is_mp(&r).unwrap().is_true());
        let ass = associated_primes(&r).unwrap();
        assert_eq!(ass.len(), 2);
        assert_eq!(ker_pi(&mins[0]).unwrap(), ideal(&r, &["x"]));
        let m = PrimeIdeal { ideal: ideal(&r, &["2", "x"]), certified: Certification::QuotientDomainTest };
        assert!(ker_pi(&m).unwrap().is_zero());
        assert!(is_primary_ring(&r).unwrap().is_false());
        let t = total_ring_report(&r).unwrap();
        assert_eq!(t.zero_dimensional, Verdict::False);
    }

    #[test]
    fn split_ring_is_not_mp() {
        let r = parse_ring(SPLIT).unwrap();
        let mins = minimal_primes(&r).unwrap();
        let expect = [ideal(&r, &["x"]), ideal(&r, &["-2+x"])];
        assert_eq!(mins.len(), 2);
        for e in &expect {
            assert!(mins.iter().any(|p| p.ideal == *e));
        }
        assert!(is_mp(&r).unwrap().is_false());
        assert!(is_domain(&r).unwrap().is_false());
    }

    #[test]
    fn zmod12() {
        let r = Ring::zmod(12).unwrap();
        let mins = minimal_primes(&r).unwrap();
        assert_eq!(mins.iter().map(|p| p.ideal.to_string()).collect::<Vec<_>>(), ["(2)", "(3)"]);
        let k = ker_pi(&mins[0]).unwrap();
        assert_eq!(k, ideal(&r, &["4"]));
        let loc = localization_at_prime(&mins[1]).unwrap();
        assert_eq!(loc.finite().unwrap().size(), 3);
        let (d, v) = zariski_sets(&r, &r.parse("2").unwrap()).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(v.len(), 1);
        assert_eq!(d[0].ideal.to_string(), "(3)");
        assert_eq!(gamma_retraction(&r).unwrap().len(), 2);
        assert!(is_primary_ideal(&Ideal::zero(&Ring::zmod(4).unwrap())).unwrap().is_true());
    }

    #[test]
    fn total_ring_examples() {
        let z4 = total_ring_report(&Ring::zmod(4).unwrap()).unwrap();
        assert_eq!(z4.absolutely_flat, Verdict::False);
        let z6 = total_ring_report(&Ring::zmod(6).unwrap()).unwrap();
        assert_eq!(z6.absolutely_flat, Verdict::True);
        let z = parse_ring(
            r#"{"kind":"zalgebra","free_rank":1,"torsion":[],"basis":["1"],"unity":[1],"structure":[[[1]]]}"#,
        )
        .unwrap();
        let t = total_ring_report(&z).unwrap();
        assert_eq!((t.zero_dimensional.clone(), t.tr_equals_r.clone()), (Verdict::True, Verdict::False));
    }
}
