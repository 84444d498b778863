//! Definitional whole-ring predicates on finite rings.

use std::collections::HashMap;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::log_route;
use crate::error::Result;
use crate::ideal::purity::{idempotent_generator_set, is_pure_set, is_quasi_pure_set, is_regular_set};
use crate::ring::finite::FiniteRing;
use crate::ring::Ring;
use crate::spectrum::{self, minimal_primes};
use crate::verdict::{Decision, Verdict, Witness, WitnessKind};

/// Purity data of one annihilator ideal.
#[derive(Debug, Clone, Copy)]
pub struct AnnFlags {
    pub generator: Option<u32>,
    pub pure: bool,
    pub quasi_pure: bool,
    pub regular: bool,
}

/// Flags of `Ann(a)` for every element `a`, computed once per distinct ideal.
pub fn ann_profile(ring: &Ring) -> Arc<Vec<AnnFlags>> {
    ring.memo("ann_profile", || {
        let f = ring.finite().unwrap();
        let mut seen: HashMap<FixedBitSet, AnnFlags> = HashMap::new();
        f.elements()
            .map(|a| {
                let set = f.ann(a);
                *seen.entry(set.clone()).or_insert_with(|| AnnFlags {
                    generator: idempotent_generator_set(f, set),
                    pure: is_pure_set(f, set),
                    quasi_pure: is_quasi_pure_set(f, set),
                    regular: is_regular_set(f, set),
                })
            })
            .collect()
    })
}

fn fr(ring: &Ring) -> &FiniteRing {
    ring.finite().expect("finite ring")
}

/// `a, a^2, …` up to the first power whose annihilator equals the next one.
pub fn powers_to_stable(f: &FiniteRing, a: u32) -> Vec<u32> {
    let mut out = vec![a];
    let mut p = a;
    loop {
        let next = f.mul(p, a);
        if f.ann(next) == f.ann(p) {
            return out;
        }
        out.push(next);
        p = next;
    }
}

pub fn set_label(f: &FiniteRing, set: &FixedBitSet) -> String {
    let items: Vec<String> = set.ones().take(17).map(|i| f.label(i as u32)).collect();
    if items.len() > 16 {
        format!("{{{}, …}}", items[..16].join(","))
    } else {
        format!("{{{}}}", items.join(","))
    }
}

fn forall_elements(ring: &Ring, bad: impl Fn(u32) -> Option<String>) -> Decision {
    let f = fr(ring);
    for a in f.elements() {
        if let Some(note) = bad(a) {
            return Decision::no(Some(Witness::element(f.label(a), note)));
        }
    }
    Decision::yes()
}

pub fn reduced(ring: &Ring) -> Result<Decision> {
    let f = fr(ring);
    Ok(forall_elements(ring, |a| (a != f.zero() && f.is_nilpotent(a)).then(|| "nonzero nilpotent".to_string())))
}

pub fn domain(ring: &Ring) -> Result<Decision> {
    let f = fr(ring);
    if ring.is_zero_ring() {
        return Ok(Decision::no(None));
    }
    for a in f.elements().filter(|&a| a != f.zero()) {
        if let Some(b) = f.ann(a).ones().find(|&b| b as u32 != f.zero()) {
            return Ok(Decision::no(Some(Witness::pair(f.label(a), f.label(b as u32), "product is zero"))));
        }
    }
    Ok(Decision::yes())
}

pub fn field(ring: &Ring) -> Result<Decision> {
    let f = fr(ring);
    if ring.is_zero_ring() {
        return Ok(Decision::no(None));
    }
    Ok(forall_elements(ring, |a| (a != f.zero() && !f.is_unit(a)).then(|| "nonzero non-unit".to_string())))
}

/// Nonzero, and the non-units are closed under addition.
pub fn local(ring: &Ring) -> Result<Decision> {
    let f = fr(ring);
    if ring.is_zero_ring() {
        return Ok(Decision::no(None));
    }
    let non_units: Vec<u32> = f.elements().filter(|&a| !f.is_unit(a)).collect();
    for &a in &non_units {
        for &b in &non_units {
            if f.is_unit(f.add(a, b)) {
                return Ok(Decision::no(Some(Witness::pair(f.label(a), f.label(b), "non-units with a unit sum"))));
            }
        }
    }
    Ok(Decision::yes())
}

pub fn absolutely_flat(ring: &Ring) -> Result<Decision> {
    let f = fr(ring);
    Ok(forall_elements(ring, |a| {
        let sq = f.mul(a, a);
        (!f.elements().any(|g| f.mul(sq, g) == a)).then(|| "no g with f = f^2 g".to_string())
    }))
}

pub fn primary(ring: &Ring) -> Result<Decision> {
    let f = fr(ring);
    if ring.is_zero_ring() {
        return Ok(Decision::no(None));
    }
    Ok(forall_elements(ring, |a| {
        (f.is_zero_divisor(a) && !f.is_nilpotent(a)).then(|| "zero-divisor that is not nilpotent".to_string())
    }))
}

pub fn pp(ring: &Ring) -> Result<Decision> {
    log_route("finite_pp");
    let f = fr(ring);
    let prof = ann_profile(ring);
    Ok(forall_elements(ring, |a| {
        prof[a as usize]
            .generator
            .is_none()
            .then(|| format!("Ann({}) = {} is not generated by an idempotent", f.label(a), set_label(f, f.ann(a))))
    }))
}

pub fn pf(ring: &Ring) -> Result<Decision> {
    log_route("finite_pf");
    let f = fr(ring);
    let prof = ann_profile(ring);
    Ok(forall_elements(ring, |a| {
        (!prof[a as usize].pure).then(|| format!("Ann({}) = {} is not pure", f.label(a), set_label(f, f.ann(a))))
    }))
}

pub fn quasi_pf(ring: &Ring) -> Result<Decision> {
    log_route("finite_quasi_pf");
    let f = fr(ring);
    let prof = ann_profile(ring);
    Ok(forall_elements(ring, |a| {
        (!prof[a as usize].quasi_pure)
            .then(|| format!("Ann({}) = {} is not quasi-pure", f.label(a), set_label(f, f.ann(a))))
    }))
}

pub fn almost_pp(ring: &Ring) -> Result<Decision> {
    let f = fr(ring);
    let prof = ann_profile(ring);
    Ok(forall_elements(ring, |a| {
        (!prof[a as usize].regular).then(|| format!("Ann({}) = {} is not regular", f.label(a), set_label(f, f.ann(a))))
    }))
}

fn some_power(ring: &Ring, what: &str, ok: impl Fn(&AnnFlags) -> bool) -> Decision {
    let f = fr(ring);
    let prof = ann_profile(ring);
    forall_elements(ring, |a| {
        let powers = powers_to_stable(f, a);
        (!powers.iter().any(|&p| ok(&prof[p as usize])))
            .then(|| format!("no power of {} has {what} annihilator", f.label(a)))
    })
}

pub fn gpp(ring: &Ring) -> Result<Decision> {
    log_route("finite_gpp");
    Ok(some_power(ring, "an idempotent-generated", |x| x.generator.is_some()))
}

pub fn gpf(ring: &Ring) -> Result<Decision> {
    log_route("finite_gpf");
    Ok(some_power(ring, "a pure", |x| x.pure))
}

pub fn strongly_purified(ring: &Ring) -> Result<Decision> {
    Ok(some_power(ring, "a regular", |x| x.regular))
}

/// Distinct minimal primes are separated by idempotents.
pub fn purified(ring: &Ring) -> Result<Decision> {
    let idem = ring.idempotents()?;
    let mins = minimal_primes(ring)?;
    for p in &mins {
        for q in &mins {
            if p == q {
                continue;
            }
            let sep = idem.iter().any(|e| p.ideal.contains(e) && q.ideal.contains(&ring.sub(&ring.one(), e)));
            if !sep {
                return Ok(Decision::no(Some(Witness::new(
                    WitnessKind::Separator,
                    vec![p.ideal.to_string(), q.ideal.to_string()],
                    "no idempotent separates these minimal primes",
                ))));
            }
        }
    }
    Ok(Decision::yes())
}

pub fn mp(ring: &Ring) -> Result<Decision> {
    Ok(match spectrum::mp_witness(ring)? {
        None => Decision::yes(),
        Some((p, q)) => Decision::no(Some(Witness::new(
            WitnessKind::Separator,
            vec![p.to_string(), q.to_string()],
            "minimal primes are not comaximal",
        ))),
    })
}

/// `X_f` is a subset of the finite set `Max(R)`, hence quasi-compact.
pub fn admissible(_ring: &Ring) -> Result<Decision> {
    Ok(Decision::yes())
}

pub fn zero_dimensional(_ring: &Ring) -> Result<Decision> {
    Ok(Decision::from_bool(true))
}

pub fn verdict_of(d: &Decision) -> Verdict {
    d.verdict.clone()
}
