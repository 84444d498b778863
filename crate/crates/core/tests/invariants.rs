//! Exhaustive module invariants over the small finite rings of the corpus.

use std::collections::BTreeSet;

use ringlab::classify::{classify, Predicate};
use ringlab::harness::corpus::{corpus_rings, CorpusSpec};
use ringlab::ideal::purity::{idempotent_generator_set, is_pure_set, purity_class};
use ringlab::ideal::{annihilator, nilradical};
use ringlab::spectrum::{all_ideals, all_primes, ker_pi, localization_at_prime, maximal_ideals, minimal_primes};
use ringlab::{Ideal, Ring, Verdict};

const SMALL: usize = 64;

fn small_rings() -> Vec<Ring> {
    corpus_rings(&CorpusSpec::default())
        .unwrap()
        .into_iter()
        .filter(|r| r.finite().is_some_and(|f| f.size() <= SMALL))
        .collect()
}

fn set(i: &Ideal) -> BTreeSet<u32> {
    i.elements().unwrap().iter().map(|e| e.index()).collect()
}

#[test]
fn element_predicates_match_definitions() {
    for r in small_rings() {
        let es = r.enumerate().unwrap();
        let n = es.len() as u32;
        for f in &es {
            let p = r.predicates(f);
            let unit = es.iter().any(|g| r.mul(f, g) == r.one());
            let zd = es.iter().any(|g| !r.is_zero(g) && r.is_zero(&r.mul(f, g)));
            let nil = r.is_zero(&r.pow(f, n));
            assert_eq!(p.is_unit, unit, "{} unit {}", r.name(), r.format(f));
            assert_eq!(p.is_zero_divisor, zd, "{} zero-divisor {}", r.name(), r.format(f));
            assert_eq!(p.is_nilpotent, nil, "{} nilpotent {}", r.name(), r.format(f));
            assert_eq!(p.is_idempotent, r.mul(f, f) == *f, "{} idempotent {}", r.name(), r.format(f));
        }
    }
}

#[test]
fn idempotents_form_a_boolean_algebra() {
    for r in small_rings() {
        let idem: BTreeSet<u32> = r.idempotents().unwrap().iter().map(|e| e.index()).collect();
        for &a in &idem {
            let e = r.idx(a);
            assert!(idem.contains(&r.sub(&r.one(), &e).index()), "{}", r.name());
            for &b in &idem {
                assert!(idem.contains(&r.mul(&e, &r.idx(b)).index()), "{}", r.name());
            }
        }
    }
}

#[test]
fn annihilator_invariants() {
    for r in small_rings() {
        let f = r.finite().unwrap();
        let es = r.enumerate().unwrap();
        let pure: Vec<bool> = f.elements().map(|a| is_pure_set(f, f.ann(a))).collect();
        let reduced = classify(&r).unwrap().get(Predicate::Reduced).is_true();
        for a in &es {
            let ann_a = annihilator(&r, a);
            for b in &es {
                let ab = r.mul(a, b);
                assert!(ann_a.leq(&annihilator(&r, &ab)), "{}: Ann(f) in Ann(fg)", r.name());
                if pure[a.index() as usize] && pure[b.index() as usize] {
                    assert!(
                        pure[ab.index() as usize],
                        "{}: Ann(fg) pure for {}, {}",
                        r.name(),
                        r.format(a),
                        r.format(b)
                    );
                }
            }
            if reduced {
                for k in 2..4 {
                    assert_eq!(ann_a, annihilator(&r, &r.pow(a, k)), "{}", r.name());
                }
            }
        }
    }
}

#[test]
fn ideal_purity_invariants() {
    for r in small_rings() {
        let f = r.finite().unwrap();
        for i in all_ideals(&r).unwrap().iter() {
            let pc = purity_class(i).unwrap();
            if pc.regular.is_true() {
                assert!(pc.pure.is_true(), "{}: regular not pure {i}", r.name());
            }
            if pc.pure.is_true() {
                assert!(pc.quasi_pure.is_true(), "{}: pure not quasi-pure {i}", r.name());
                assert_eq!(i.product(i), *i, "{}: I^2 != I for pure {i}", r.name());
            }
            let s = set(i);
            let generators = f
                .idempotents()
                .iter()
                .filter(|&&e| {
                    let multiples: BTreeSet<u32> = f.elements().map(|x| f.mul(e, x)).collect();
                    multiples == s
                })
                .count();
            assert!(generators <= 1, "{}: {generators} idempotent generators of {i}", r.name());
            let fs = i.set().unwrap();
            assert_eq!(idempotent_generator_set(f, fs).is_some(), generators == 1, "{}: {i}", r.name());
        }
    }
}

#[test]
fn spectrum_invariants() {
    for r in small_rings() {
        let min = minimal_primes(&r).unwrap();
        let max = maximal_ideals(&r).unwrap();
        let all = all_primes(&r).unwrap();
        let key = |ps: &[ringlab::spectrum::PrimeIdeal]| ps.iter().map(|p| set(&p.ideal)).collect::<BTreeSet<_>>();
        assert_eq!(key(&min), key(&max), "{}", r.name());
        assert_eq!(key(&min), key(&all), "{}", r.name());
        let local_factors = r.idempotents().unwrap().len().trailing_zeros() as usize;
        assert_eq!(all.len(), local_factors, "{}", r.name());

        let mut meet = Ideal::whole(&r);
        for p in &min {
            meet = meet.intersect(&p.ideal);
        }
        assert_eq!(meet, nilradical(&r).unwrap(), "{}", r.name());

        for p in &all {
            assert!(ker_pi(p).unwrap().leq(&p.ideal), "{}: ker pi not in {}", r.name(), p.ideal);
            let rp = localization_at_prime(p).unwrap();
            assert!(classify(&rp).unwrap().get(Predicate::Primary).is_true(), "{}: R_p not primary", r.name());
        }
    }
}

#[test]
fn finite_class_collapse() {
    use Predicate::*;
    for r in small_rings() {
        let c = classify(&r).unwrap();
        let v = |p| c.get(p).clone();
        assert_eq!(v(Pp), v(Pf), "{}", r.name());
        assert_eq!(v(Pp), v(Reduced), "{}", r.name());
        for p in [Gpp, Gpf, QuasiPf, Mp, ZeroDimensional] {
            assert_eq!(v(p), Verdict::True, "{}: {p}", r.name());
        }
        if v(Local).is_true() {
            assert!(v(Primary).is_true(), "{}: local but not primary", r.name());
        }
        if v(Admissible).is_true() && v(QuasiPf).is_true() {
            assert!(v(Gpf).is_true(), "{}", r.name());
        }
        if !r.is_zero_ring() {
            let trivial = r.idempotents().unwrap().len() == 2;
            assert_eq!(v(Domain).is_true(), v(Pp).is_true() && trivial, "{}", r.name());
        }
        if v(StronglyPurified).is_true() {
            assert!(v(Purified).is_true(), "{}", r.name());
            for i in all_ideals(&r).unwrap().iter() {
                let pc = purity_class(i).unwrap();
                assert!(!pc.pure.is_true() || pc.regular.is_true(), "{}: pure not regular {i}", r.name());
            }
        }
    }
}

#[test]
fn products_are_factorwise() {
    use Predicate::*;
    let rings = corpus_rings(&CorpusSpec { products: true, ..CorpusSpec::empty() }).unwrap();
    for r in rings {
        let factors = r.finite().unwrap().factors().unwrap();
        let c = classify(&r).unwrap();
        for p in [Pp, Pf, Gpp, Gpf] {
            let mut all = Verdict::True;
            for f in factors {
                all = all.and(classify(f).unwrap().get(p));
            }
            assert_eq!(c.get(p), &all, "{}: {p}", r.name());
        }
    }
}
