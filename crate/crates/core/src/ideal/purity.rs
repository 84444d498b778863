//! Pure, quasi-pure and regular ideals.
//!
//! Finite rings use the definitions directly. For Z-algebras two reductions
//! to finitely many checks are used, both cross-validated against the
//! definitional scans on finite presentations:
//!
//! * A finitely generated ideal `I = (g_1, …, g_k)` is pure iff it is
//!   generated by an idempotent. If each `g_i = g_i a_i` with `a_i ∈ I`, put
//!   `h = 1 - ∏(1 - a_i) ∈ I`; then `g_i h = g_i` for all `i`, so `f h = f`
//!   on all of `I`, `h² = h` and `I = (h)`. The converse is immediate. For
//!   finitely generated ideals "regular" and "pure" therefore coincide.
//! * `I` is quasi-pure iff `I + Ann(g^∞) = R` for every generator `g`. If
//!   `g(1-a)` is nilpotent with `a ∈ I` then `(1-a)^n ∈ Ann(g^n)` and
//!   `1 - (1-a)^n ∈ I`. Conversely `1 = a_i + b_i` with `b_i g_i^n = 0`
//!   makes each `g_i(1-a_i)` nilpotent, and `h = 1 - ∏(1 - a_i)` serves all
//!   of `I` at once.

use fixedbitset::FixedBitSet;

use super::{annihilator_power_stabilized, Ideal, NormalForm};
use crate::error::Result;
use crate::ring::finite::FiniteRing;
use crate::ring::{Element, Ring};
use crate::testing::purity_mutation;
use crate::verdict::Verdict;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PurityClass {
    pub pure: Verdict,
    pub quasi_pure: Verdict,
    pub regular: Verdict,
    pub idempotent_generator: Option<Element>,
}

/// `∀ a ∈ S ∃ g ∈ S : a = a g`
pub fn is_pure_set(f: &FiniteRing, set: &FixedBitSet) -> bool {
    if purity_mutation() {
        return true;
    }
    set.ones().all(|a| set.ones().any(|g| f.mul(a as u32, g as u32) == a as u32))
}

/// `∀ a ∈ S ∃ g ∈ S : a (1 - g)` nilpotent
pub fn is_quasi_pure_set(f: &FiniteRing, set: &FixedBitSet) -> bool {
    set.ones().all(|a| set.ones().any(|g| f.is_nilpotent(f.mul(a as u32, f.complement(g as u32)))))
}

/// `∀ a ∈ S ∃ idempotent e ∈ S : a = a e`
pub fn is_regular_set(f: &FiniteRing, set: &FixedBitSet) -> bool {
    let idem: Vec<u32> = f.idempotents().iter().copied().filter(|&e| set.contains(e as usize)).collect();
    set.ones().all(|a| idem.iter().any(|&e| f.mul(a as u32, e) == a as u32))
}

/// The idempotent `e` with `S = Re`, if any.
pub fn idempotent_generator_set(f: &FiniteRing, set: &FixedBitSet) -> Option<u32> {
    f.idempotents()
        .iter()
        .copied()
        .find(|&e| set.contains(e as usize) && set.ones().all(|a| f.mul(a as u32, e) == a as u32))
}

/// The idempotent generating `I`, found among the idempotents of the ring.
pub fn idempotent_generator(i: &Ideal) -> Result<Option<Element>> {
    let ring = i.ring();
    for e in ring.idempotents()? {
        if i.contains(&e) && i.generators().iter().all(|g| ring.mul(g, &e) == *g) {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Quasi-purity through the generator reduction.
pub fn quasi_pure_by_generators(i: &Ideal) -> Result<(bool, Option<Element>)> {
    let ring = i.ring();
    for g in i.generators() {
        let (_, sat) = annihilator_power_stabilized(ring, g)?;
        if !i.sum(&sat).is_whole() {
            return Ok((false, Some(g.clone())));
        }
    }
    Ok((true, None))
}

/// Reductions only, on any backend.
pub fn purity_class_reduced(i: &Ideal) -> Result<PurityClass> {
    let generator = idempotent_generator(i)?;
    let pure = purity_mutation() || generator.is_some();
    let (qp, _) = quasi_pure_by_generators(i)?;
    Ok(PurityClass {
        pure: Verdict::from_bool(pure),
        quasi_pure: Verdict::from_bool(qp),
        regular: Verdict::from_bool(pure),
        idempotent_generator: generator,
    })
}

/// Definitional on finite rings, reductions on Z-algebras.
pub fn purity_class(i: &Ideal) -> Result<PurityClass> {
    match i.normal_form() {
        NormalForm::Set(s) => {
            let ring: &Ring = i.ring();
            let f = ring.finite().unwrap();
            Ok(PurityClass {
                pure: Verdict::from_bool(is_pure_set(f, s)),
                quasi_pure: Verdict::from_bool(is_quasi_pure_set(f, s)),
                regular: Verdict::from_bool(is_regular_set(f, s)),
                idempotent_generator: idempotent_generator_set(f, s).map(|e| ring.idx(e)),
            })
        }
        NormalForm::Lattice(_) => purity_class_reduced(i),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::annihilator;
    use crate::ring::spec::parse_ring;

    #[test]
    fn zmod_examples() {
        let z4 = Ring::zmod(4).unwrap();
        let two = Ideal::new(&z4, &[z4.parse("2").unwrap()]).unwrap();
        let pc = purity_class(&two).unwrap();
        assert_eq!(pc.pure, Verdict::False);
        assert_eq!(pc.quasi_pure, Verdict::True);
        let z6 = Ring::zmod(6).unwrap();
        let three = Ideal::new(&z6, &[z6.parse("3").unwrap()]).unwrap();
        let pc = purity_class(&three).unwrap();
        assert_eq!(pc.pure, Verdict::True);
        assert_eq!(z6.format(pc.idempotent_generator.as_ref().unwrap()), "3");
    }

    #[test]
    fn deligne_maximal_ideal_not_quasi_pure() {
        let r = parse_ring(super::super::tests::DELIGNE).unwrap();
        let m = Ideal::new(&r, &[r.parse("2").unwrap(), r.parse("x").unwrap()]).unwrap();
        let pc = purity_class(&m).unwrap();
        assert_eq!(pc.quasi_pure, Verdict::False);
        assert_eq!(pc.pure, Verdict::False);
        let ann2 = annihilator(&r, &r.parse("2").unwrap());
        assert_eq!(purity_class(&ann2).unwrap().pure, Verdict::False);
    }

    #[test]
    fn reductions_match_definitions_on_small_rings() {
        for n in 1..=24 {
            let r = Ring::zmod(n).unwrap();
            for a in r.enumerate().unwrap() {
                let i = Ideal::new(&r, &[a]).unwrap();
                let d = purity_class(&i).unwrap();
                let t = purity_class_reduced(&i).unwrap();
                assert_eq!(d.pure, t.pure, "Z/{n} {i}");
                assert_eq!(d.quasi_pure, t.quasi_pure, "Z/{n} {i}");
                assert_eq!(d.regular, t.regular, "Z/{n} {i}");
            }
        }
    }
}
