//! Routes for Z-algebras.
//!
//! In a Noetherian ring `Ann(f^∞)` is the intersection of the primary
//! components of `0` whose primes miss `f`, so it only depends on the
//! down-closed set `σ(f) = {Q ∈ Ass : f ∉ Q}`. Every down-closed `σ` occurs
//! (prime avoidance), and the component intersection for `σ` is
//! `(0 : I^∞)` with `I = ∏_{Q ∉ σ} Q`. In a reduced ring the same argument
//! with `Min` in place of `Ass` gives `Ann(f) = ∩_{P ∈ Min, f ∉ P} P`.
//! Annihilator conditions therefore reduce to finitely many ideals, and a
//! sample that meets every class is exhaustive.

use std::collections::BTreeSet;

use super::{finite, log_route, Predicate, Strategy};
use crate::error::Result;
use crate::ideal::purity::{idempotent_generator, purity_class};
use crate::ideal::{annihilator, annihilator_power_stabilized, nilradical, Ideal};
use crate::ring::{Element, Ring};
use crate::spectrum::{self, associated_primes, ker_pi, minimal_primes};
use crate::verdict::{Decision, Witness, WitnessKind};

/// Height of the sample used by the sampled routes.
pub const SAMPLE_HEIGHT: u32 = 4;
/// Largest prime family whose subsets are enumerated.
pub const SIGMA_LIMIT: usize = 16;

fn free_rank(ring: &Ring) -> usize {
    ring.zalg().map_or(0, |z| z.free_rank())
}

/// A nonzero `y` with `y^2 = 0`, if the ring is not reduced.
pub fn square_zero_witness(ring: &Ring) -> Result<Option<Element>> {
    let n = nilradical(ring)?;
    let Some(x) = n.generators().iter().find(|g| !ring.is_zero(g)).cloned() else {
        return Ok(None);
    };
    let mut y = x.clone();
    loop {
        let next = ring.mul(&y, &x);
        if ring.is_zero(&next) {
            return Ok(Some(y));
        }
        y = next;
    }
}

fn nilpotent_refutation(ring: &Ring, y: &Element, what: &str) -> Decision {
    Decision::no(Some(Witness::element(ring.format(y), format!("y^2 = 0 puts y in Ann(y), so Ann(y) is not {what}"))))
}

fn mask(f: &Element, primes: &[Ideal]) -> u32 {
    primes.iter().enumerate().filter(|(_, p)| !p.contains(f)).fold(0, |m, (i, _)| m | (1 << i))
}

fn down_closed(primes: &[Ideal]) -> Vec<u32> {
    let n = primes.len();
    (0..1u32 << n)
        .filter(|&s| {
            (0..n)
                .filter(|&i| s & (1 << i) != 0)
                .all(|i| (0..n).all(|j| !primes[j].leq(&primes[i]) || s & (1 << j) != 0))
        })
        .collect()
}

fn sample(ring: &Ring) -> Result<Vec<Element>> {
    ring.sample(SAMPLE_HEIGHT)
}

fn representative(ring: &Ring, primes: &[Ideal], s: u32) -> Result<Option<Element>> {
    Ok(sample(ring)?.into_iter().find(|f| mask(f, primes) == s))
}

fn class_witness(ring: &Ring, primes: &[Ideal], s: u32, note: &str) -> Result<Witness> {
    Ok(match representative(ring, primes, s)? {
        Some(f) => Witness::element(ring.format(&f), note.to_string()),
        None => Witness::new(
            WitnessKind::Separator,
            (0..primes.len()).filter(|i| s & (1 << i) != 0).map(|i| primes[i].to_string()).collect(),
            format!("{note} for elements outside exactly these primes"),
        ),
    })
}

fn ideals(primes: &[spectrum::PrimeIdeal]) -> Vec<Ideal> {
    primes.iter().map(|p| p.ideal.clone()).collect()
}

/// `Ann(f^∞)` for any `f` whose class is `σ`.
pub fn stable_annihilator_of_class(ring: &Ring, ass: &[Ideal], s: u32) -> Ideal {
    let i = (0..ass.len()).filter(|k| s & (1 << k) == 0).fold(Ideal::whole(ring), |acc, k| acc.product(&ass[k]));
    let zero = Ideal::zero(ring);
    i.generators().iter().fold(Ideal::whole(ring), |acc, g| acc.intersect(&zero.saturation(g)))
}

/// pp: reduced, and every intersection of minimal primes is idempotent-generated.
pub fn pp_sigma(ring: &Ring) -> Result<Decision> {
    log_route("pp_sigma");
    if let Some(y) = square_zero_witness(ring)? {
        return Ok(nilpotent_refutation(ring, &y, "generated by an idempotent"));
    }
    let mins = ideals(&minimal_primes(ring)?);
    if mins.len() > SIGMA_LIMIT {
        return Ok(Decision::unknown(format!("more than {SIGMA_LIMIT} minimal primes")));
    }
    for s in 0..1u32 << mins.len() {
        let i =
            (0..mins.len()).filter(|k| s & (1 << k) != 0).fold(Ideal::whole(ring), |acc, k| acc.intersect(&mins[k]));
        if idempotent_generator(&i)?.is_none() {
            let w = class_witness(ring, &mins, s, "annihilator not generated by an idempotent")?;
            return Ok(Decision::no(Some(w)));
        }
    }
    Ok(Decision::yes())
}

/// pf by sampled refutation, decided when the sample meets every class.
pub fn pf_sampled(ring: &Ring) -> Result<Decision> {
    log_route("pf_sampled");
    let elems = sample(ring)?;
    for f in &elems {
        if purity_class(&annihilator(ring, f))?.pure.is_false() {
            return Ok(Decision::no(Some(Witness::element(ring.format(f), "Ann(f) is not pure"))));
        }
    }
    if let Some(y) = square_zero_witness(ring)? {
        return Ok(nilpotent_refutation(ring, &y, "pure"));
    }
    if free_rank(ring) == 0 {
        return Ok(Decision::yes());
    }
    let mins = ideals(&minimal_primes(ring)?);
    coverage(&elems, &mins, &all_subsets(mins.len()), "pf")
}

fn all_subsets(n: usize) -> Vec<u32> {
    if n > SIGMA_LIMIT {
        return Vec::new();
    }
    (0..1u32 << n).collect()
}

fn coverage(elems: &[Element], primes: &[Ideal], classes: &[u32], what: &str) -> Result<Decision> {
    if primes.len() > SIGMA_LIMIT {
        return Ok(Decision::unknown(format!("{what}: more than {SIGMA_LIMIT} primes")));
    }
    let seen: BTreeSet<u32> = elems.iter().map(|f| mask(f, primes)).collect();
    let hit = classes.iter().filter(|c| seen.contains(c)).count();
    if hit == classes.len() {
        Ok(Decision::yes())
    } else {
        Ok(Decision::unknown(format!("{what}: height-{SAMPLE_HEIGHT} sample meets {hit} of {} classes", classes.len())))
    }
}

/// gpp: every stable annihilator class is idempotent-generated.
pub fn gpp_sigma(ring: &Ring) -> Result<Decision> {
    log_route("gpp_sigma");
    let ass = ideals(&associated_primes(ring)?);
    if ass.len() > SIGMA_LIMIT {
        return Ok(Decision::unknown(format!("more than {SIGMA_LIMIT} associated primes")));
    }
    for s in down_closed(&ass) {
        let k = stable_annihilator_of_class(ring, &ass, s);
        if idempotent_generator(&k)?.is_none() {
            let w = class_witness(ring, &ass, s, "stable annihilator not generated by an idempotent")?;
            return Ok(Decision::no(Some(w)));
        }
    }
    Ok(Decision::yes())
}

/// gpf by sampled refutation on stable annihilators.
pub fn gpf_sampled(ring: &Ring) -> Result<Decision> {
    log_route("gpf_sampled");
    let elems = sample(ring)?;
    for f in &elems {
        let (_, k) = annihilator_power_stabilized(ring, f)?;
        if purity_class(&k)?.pure.is_false() {
            return Ok(Decision::no(Some(Witness::element(ring.format(f), "no Ann(f^n) is pure"))));
        }
    }
    if free_rank(ring) == 0 {
        return Ok(Decision::yes());
    }
    let ass = ideals(&associated_primes(ring)?);
    if ass.len() > SIGMA_LIMIT {
        return Ok(Decision::unknown(format!("gpf: more than {SIGMA_LIMIT} primes")));
    }
    coverage(&elems, &ass, &down_closed(&ass), "gpf")
}

/// quasi-pf through the localization kernels at minimal primes.
pub fn kerpi_min(ring: &Ring) -> Result<Decision> {
    log_route("kerpi_min");
    for p in minimal_primes(ring)? {
        let k = ker_pi(&p)?;
        if purity_class(&k)?.pure.is_false() {
            return Ok(Decision::no(Some(Witness::new(
                WitnessKind::Separator,
                vec![p.ideal.to_string()],
                format!("Ker(R -> R_P) = {k} is not pure"),
            ))));
        }
    }
    Ok(Decision::yes())
}

/// quasi-pf by sampled refutation with the quasi-pure generator reduction.
pub fn qpf_sampled(ring: &Ring) -> Result<Decision> {
    log_route("qpf_sampled");
    let elems = sample(ring)?;
    for f in &elems {
        if purity_class(&annihilator(ring, f))?.quasi_pure.is_false() {
            return Ok(Decision::no(Some(Witness::element(ring.format(f), "Ann(f) is not quasi-pure"))));
        }
    }
    if free_rank(ring) == 0 {
        return Ok(Decision::yes());
    }
    if !nilradical(ring)?.is_zero() {
        return Ok(Decision::unknown("quasi-pf: no finite class reduction for non-reduced rings"));
    }
    let mins = ideals(&minimal_primes(ring)?);
    coverage(&elems, &mins, &all_subsets(mins.len()), "quasi-pf")
}

/// Every localization at a maximal ideal is primary iff no two associated
/// primes lie in a common maximal ideal.
pub fn ass_comaximal(ring: &Ring) -> Result<Decision> {
    log_route("ass_comaximal");
    let ass = associated_primes(ring)?;
    for (a, p) in ass.iter().enumerate() {
        for q in &ass[a + 1..] {
            if !p.ideal.sum(&q.ideal).is_whole() {
                return Ok(Decision::no(Some(Witness::new(
                    WitnessKind::Separator,
                    vec![p.ideal.to_string(), q.ideal.to_string()],
                    "associated primes in a common maximal ideal",
                ))));
            }
        }
    }
    Ok(Decision::yes())
}

/// Idempotents lift along `R -> T(R)`. When `T(R)` is zero-dimensional it is
/// a product of one local ring per minimal prime and `R` embeds in it, so
/// lifting means `|Idem R| = 2^|Min R|`.
pub fn lift_count(ring: &Ring) -> Result<Decision> {
    log_route("lift_count");
    if !spectrum::ass_equals_min(ring)? {
        return Ok(Decision::unknown("T(R) is not zero-dimensional"));
    }
    let idem = ring.idempotents()?.len();
    let mins = minimal_primes(ring)?.len();
    if mins >= 32 {
        return Ok(Decision::unknown("too many minimal primes"));
    }
    let want = 1usize << mins;
    Ok(if idem == want {
        Decision::yes()
    } else {
        Decision::no(Some(Witness::new(
            WitnessKind::Idempotent,
            vec![],
            format!("{idem} idempotents in R, {want} in T(R)"),
        )))
    })
}

fn int_label(ring: &Ring, k: i64) -> String {
    ring.format(&ring.from_int(k))
}

pub fn decide(ring: &Ring, p: Predicate) -> Result<(Decision, Strategy)> {
    use Predicate::*;
    let r = free_rank(ring);
    let exact = Strategy::TheoremBacked;
    Ok(match p {
        Reduced => {
            let d = match square_zero_witness(ring)? {
                None => Decision::yes(),
                Some(y) => Decision::no(Some(Witness::element(ring.format(&y), "nonzero nilpotent"))),
            };
            (d, Strategy::Definitional)
        }
        Domain => (Decision { verdict: spectrum::is_domain(ring)?, witness: None }, Strategy::Definitional),
        Field => (Decision { verdict: spectrum::is_field(ring)?, witness: None }, Strategy::Definitional),
        Local if ring.is_zero_ring() => (Decision::no(None), exact),
        Local if r > 0 => {
            let w = Witness::pair(int_label(ring, 3), int_label(ring, -2), "non-units with a unit sum");
            (Decision::no(Some(w)), exact)
        }
        Local => (Decision::from_bool(minimal_primes(ring)?.len() == 1), exact),
        ZeroDimensional => (Decision::from_bool(r == 0), exact),
        AbsolutelyFlat => (Decision::from_bool(r == 0 && nilradical(ring)?.is_zero()), exact),
        Primary => (Decision { verdict: spectrum::is_primary_ring(ring)?, witness: None }, exact),
        Mp => (finite::mp(ring)?, Strategy::Definitional),
        Pp | AlmostPp => (pp_sigma(ring)?, exact),
        Pf => {
            let d = pf_sampled(ring)?;
            if d.verdict.is_decided() {
                (d, exact)
            } else {
                (pp_sigma(ring)?, exact)
            }
        }
        Gpp | StronglyPurified => (gpp_sigma(ring)?, exact),
        Gpf => {
            let d = gpf_sampled(ring)?;
            if d.verdict.is_decided() {
                (d, exact)
            } else {
                (gpp_sigma(ring)?, exact)
            }
        }
        QuasiPf => (kerpi_min(ring)?, exact),
        Purified => (finite::purified(ring)?, Strategy::Definitional),
        Admissible if r == 0 => (Decision::yes(), exact),
        Admissible => (Decision::unknown("admissibility with positive free rank"), Strategy::Unknown),
    })
}
