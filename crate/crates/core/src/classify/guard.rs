//! Sampled re-check of Z-algebra verdicts. A true verdict must survive a
//! search for refuting elements; a refuting element must replay.

use super::{Classification, Predicate};
use crate::error::{Error, Result};
use crate::ideal::purity::{idempotent_generator, purity_class};
use crate::ideal::{annihilator, annihilator_power_stabilized};
use crate::ring::{Element, Ring};
use crate::verdict::{Verdict, WitnessKind};

pub const GUARD_HEIGHT: u32 = 4;
pub const GUARD_CAP: usize = 256;

/// Whether `f` satisfies the element-wise condition behind `p`.
fn holds_at(ring: &Ring, p: Predicate, f: &Element) -> Result<Option<bool>> {
    Ok(Some(match p {
        Predicate::Pp | Predicate::AlmostPp => idempotent_generator(&annihilator(ring, f))?.is_some(),
        Predicate::Pf => purity_class(&annihilator(ring, f))?.pure.is_true(),
        Predicate::Gpp | Predicate::StronglyPurified => {
            idempotent_generator(&annihilator_power_stabilized(ring, f)?.1)?.is_some()
        }
        Predicate::Gpf => purity_class(&annihilator_power_stabilized(ring, f)?.1)?.pure.is_true(),
        Predicate::QuasiPf => purity_class(&annihilator(ring, f))?.quasi_pure.is_true(),
        _ => return Ok(None),
    }))
}

pub fn check(ring: &Ring, c: &Classification) -> Result<()> {
    let mut elems = ring.sample(GUARD_HEIGHT)?;
    elems.truncate(GUARD_CAP);
    for p in Predicate::ALL {
        match c.get(p) {
            Verdict::True => {
                for f in &elems {
                    if holds_at(ring, p, f)? == Some(false) {
                        return Err(Error::Consistency(format!(
                            "{}: {p} reported true but {} refutes it",
                            ring.name(),
                            ring.format(f)
                        )));
                    }
                }
            }
            Verdict::False => {
                let Some(w) = c.witnesses.get(&p) else { continue };
                if w.kind != WitnessKind::RefutingElement {
                    continue;
                }
                let f = ring.parse(&w.elements[0])?;
                if holds_at(ring, p, &f)? == Some(true) {
                    return Err(Error::Consistency(format!(
                        "{}: witness {} for {p} does not replay",
                        ring.name(),
                        w.elements[0]
                    )));
                }
            }
            Verdict::Unknown { .. } => {}
        }
    }
    Ok(())
}
