//! Theorem registry. Every clause of a theorem is computed by its own code
//! path; the fast paths a clause runs are logged and two clauses of one
//! theorem may not share one.
//!
//! Two clause evaluations on Z-algebras rest on the class reduction of the
//! classifier: for `K = Ann(f^∞)` and `σ = {Q ∈ Ass : f ∉ Q}`,
//!
//! * `∃ h ∈ K` with `K ∩ Ann(h) = 0` depends on `K` only, and
//! * `∃ a ∈ K` with `f^n + a` a non-zero-divisor (`n` the stabilization
//!   index) holds iff `K ⊄ Q` for every `Q ∈ Ass \ σ`: primes in `σ` contain
//!   `K` and miss `f^n`, primes outside `σ` contain `f^n`, and prime
//!   avoidance supplies `a`.
//!
//! So a sample meeting every down-closed `σ` settles both clauses.

use std::collections::BTreeSet;

use crate::classify::{finite, log_route, take_routes, zalg, Strategy};
use crate::error::{Error, Result};
use crate::harness::report::{ClauseResult, Rule, TheoremReport};
use crate::ideal::purity::purity_class;
use crate::ideal::{annihilator, annihilator_power_stabilized, nil_quotient, quotient_map, Ideal};
use crate::poly::{reduced_pf_window_check, truncated_idempotents_check};
use crate::ring::{Element, Ring};
use crate::spectrum::{
    self, all_ideals, all_primes, associated_primes, ker_pi, localization_at_prime, maximal_ideals, minimal_primes,
    total_ring_report, PrimeIdeal,
};
use crate::ultra::{ultra_preservation_suite, ultra_ring, SetIdeal};
use crate::verdict::{Decision, Verdict, Witness};

/// Routes that a theorem's own statement repeats across clauses.
const SHARED_ROUTES: [&str; 0] = [];

#[derive(Clone, Copy)]
pub struct TheoremInfo {
    pub id: &'static str,
    pub statement: &'static str,
    applies: fn(&Ring) -> bool,
    run: fn(&Ring) -> Result<TheoremReport>,
}

impl TheoremInfo {
    pub fn applies(&self, ring: &Ring) -> bool {
        (self.applies)(ring)
    }
}

fn any(_: &Ring) -> bool {
    true
}

fn finite_only(r: &Ring) -> bool {
    r.finite().is_some()
}

fn nonzero(r: &Ring) -> bool {
    !r.is_zero_ring()
}

fn small_finite(r: &Ring) -> bool {
    r.finite().is_some_and(|f| f.size() <= 16)
}

fn small_reduced(r: &Ring) -> bool {
    small_finite(r) && finite::reduced(r).is_ok_and(|d| d.verdict.is_true())
}

fn ultra_product(r: &Ring) -> bool {
    r.finite()
        .and_then(|f| f.factors().map(|fs| fs.len() <= 4 && f.size() <= crate::ultra::PRODUCT_BUDGET))
        .unwrap_or(false)
}

pub const THEOREMS: [TheoremInfo; 19] = [
    TheoremInfo {
        id: "pp-flat-total",
        statement: "pp <=> pf and T(R) absolutely flat <=> T(R) absolutely flat and idempotents lift along localizations <=> T(R) absolutely flat and idempotents lift along R -> T(R)",
        applies: any,
        run: pp_flat_total,
    },
    TheoremInfo {
        id: "gpp-zero-dim-total",
        statement: "gpp <=> gpf and T(R) zero-dimensional <=> T(R) zero-dimensional and idempotents lift along localizations <=> T(R) zero-dimensional and idempotents lift along R -> T(R)",
        applies: any,
        run: gpp_zero_dim_total,
    },
    TheoremInfo {
        id: "gpf-local",
        statement: "gpf <=> for each f there is n with f/1 a non-zero-divisor or f^n/1 = 0 in every R_m",
        applies: finite_only,
        run: gpf_local,
    },
    TheoremInfo {
        id: "quasi-pf",
        statement: "quasi-pf <=> R_p primary for all p <=> R_m primary for all m <=> Ker(R -> R_p) pure for minimal p <=> Ker(R -> R_m) primary for all m",
        applies: any,
        run: quasi_pf,
    },
    TheoremInfo {
        id: "gpp-structure",
        statement: "gpp <=> gpf and Min compact <=> quasi-pf and Min compact <=> pp(R/N) and R_m primary for all m",
        applies: any,
        run: gpp_structure,
    },
    TheoremInfo {
        id: "pp-min-compact",
        statement: "pp <=> pf and Min compact",
        applies: any,
        run: pp_min_compact,
    },
    TheoremInfo { id: "mp-reduced-pf", statement: "mp <=> pf(R/N)", applies: any, run: mp_reduced_pf },
    TheoremInfo {
        id: "reduced-pp",
        statement: "pp(R/N) <=> mp and Min compact",
        applies: any,
        run: reduced_pp,
    },
    TheoremInfo { id: "gpf-chain", statement: "gpf => quasi-pf => mp", applies: any, run: gpf_chain },
    TheoremInfo {
        id: "strongly-purified",
        statement: "strongly purified => purified and every pure ideal is regular",
        applies: any,
        run: strongly_purified,
    },
    TheoremInfo {
        id: "total-zero-dim",
        statement: "T(R) zero-dimensional <=> for each f, h in Ann(f^n) with Ann(f^n) and Ann(h) meeting in 0 <=> for each f, f^n g = f^2n with g a non-zero-divisor",
        applies: any,
        run: total_zero_dim,
    },
    TheoremInfo {
        id: "finite-collapse",
        statement: "finitely many maximal ideals: gpp <=> gpf <=> quasi-pf",
        applies: finite_only,
        run: finite_collapse,
    },
    TheoremInfo {
        id: "local-primary",
        statement: "local and gpf => primary",
        applies: any,
        run: local_primary,
    },
    TheoremInfo {
        id: "quasi-pf-local",
        statement: "quasi-pf <=> every R_m is quasi-pf",
        applies: finite_only,
        run: quasi_pf_local,
    },
    TheoremInfo {
        id: "domain-pp",
        statement: "domain <=> pp with only trivial idempotents (nonzero rings)",
        applies: nonzero,
        run: domain_pp,
    },
    TheoremInfo {
        id: "pure-quotient",
        statement: "gpp and gpf pass to quotients by pure ideals",
        applies: finite_only,
        run: pure_quotient,
    },
    TheoremInfo {
        id: "poly-idempotents",
        statement: "idempotents of R[x]/(x^k) are constant",
        applies: small_finite,
        run: poly_idempotents,
    },
    TheoremInfo {
        id: "poly-pf-reduced",
        statement: "R[x] is pf on bounded windows over a finite reduced R",
        applies: small_reduced,
        run: poly_pf_reduced,
    },
    TheoremInfo {
        id: "ultra",
        statement: "I* is pure, and R/I* inherits reduced, pp and pf from the factors",
        applies: ultra_product,
        run: ultra,
    },
];

pub fn theorem(id: &str) -> Result<&'static TheoremInfo> {
    THEOREMS.iter().find(|t| t.id == id).ok_or_else(|| Error::UnknownName(format!("theorem {id:?}")))
}

pub fn verify_theorem(id: &str, ring: &Ring) -> Result<TheoremReport> {
    let t = theorem(id)?;
    if !t.applies(ring) {
        return Err(Error::NotApplicable(format!("{id} on {}", ring.name())));
    }
    (t.run)(ring)
}

/// Every applicable theorem, in registry order.
pub fn verify_all(ring: &Ring) -> Result<Vec<TheoremReport>> {
    THEOREMS.iter().filter(|t| t.applies(ring)).map(|t| (t.run)(ring)).collect()
}

// ---- clause plumbing ---------------------------------------------------------

struct Builder {
    id: &'static str,
    ring: String,
    clauses: Vec<ClauseResult>,
}

impl Builder {
    fn new(id: &'static str, ring: &Ring) -> Self {
        take_routes();
        Builder { id, ring: ring.name().to_string(), clauses: Vec::new() }
    }

    fn clause(&mut self, label: &str, strategy: Strategy, f: impl FnOnce() -> Result<Decision>) -> Result<()> {
        take_routes();
        let d = f()?;
        let mut routes = take_routes();
        routes.sort_unstable();
        routes.dedup();
        let mut c = ClauseResult::new(label, d.verdict, strategy);
        c.routes = routes;
        c.witness = d.witness;
        self.clauses.push(c);
        Ok(())
    }

    fn finish(self, rules: Vec<Rule>) -> Result<TheoremReport> {
        for (i, a) in self.clauses.iter().enumerate() {
            for b in &self.clauses[i + 1..] {
                let shared: Vec<&&str> =
                    a.routes.iter().filter(|r| b.routes.contains(r) && !SHARED_ROUTES.contains(r)).collect();
                if !shared.is_empty() {
                    return Err(Error::Consistency(format!(
                        "{}: clauses {:?} and {:?} share fast path {}",
                        self.id, a.label, b.label, shared[0]
                    )));
                }
            }
        }
        Ok(TheoremReport::new(self.id, self.ring, self.clauses, rules))
    }

    /// Rules relating one predicate on two rings; the clauses may share routes.
    fn preservation(self, rules: Vec<Rule>) -> TheoremReport {
        TheoremReport::new(self.id, self.ring, self.clauses, rules)
    }

    fn equivalent(self) -> Result<TheoremReport> {
        let n = self.clauses.len();
        self.finish(Rule::equivalent(n))
    }
}

fn is_zalg(r: &Ring) -> bool {
    r.zalg().is_some()
}

fn strategy(r: &Ring) -> Strategy {
    if is_zalg(r) {
        Strategy::TheoremBacked
    } else {
        Strategy::Definitional
    }
}

fn and(a: Decision, b: Decision) -> Decision {
    let verdict = a.verdict.and(&b.verdict);
    let witness = match (&a.verdict, &b.verdict) {
        (Verdict::False, _) => a.witness,
        (_, Verdict::False) => b.witness,
        _ => None,
    };
    Decision { verdict, witness }
}

fn verdict(v: Verdict) -> Decision {
    Decision { verdict: v, witness: None }
}

// ---- predicate routes per backend ----------------------------------------------

fn pp(r: &Ring) -> Result<Decision> {
    if is_zalg(r) {
        zalg::pp_sigma(r)
    } else {
        finite::pp(r)
    }
}

fn pf(r: &Ring) -> Result<Decision> {
    if is_zalg(r) {
        zalg::pf_sampled(r)
    } else {
        finite::pf(r)
    }
}

fn gpp(r: &Ring) -> Result<Decision> {
    if is_zalg(r) {
        zalg::gpp_sigma(r)
    } else {
        finite::gpp(r)
    }
}

fn gpf(r: &Ring) -> Result<Decision> {
    if is_zalg(r) {
        zalg::gpf_sampled(r)
    } else {
        finite::gpf(r)
    }
}

fn qpf(r: &Ring) -> Result<Decision> {
    if is_zalg(r) {
        zalg::qpf_sampled(r)
    } else {
        finite::quasi_pf(r)
    }
}

fn mp(r: &Ring) -> Result<Decision> {
    finite::mp(r)
}

/// `Min(R)` is finite for the Noetherian rings handled here.
fn min_compact(r: &Ring) -> Result<Decision> {
    minimal_primes(r)?;
    Ok(Decision::yes())
}

fn tr_abs_flat(r: &Ring) -> Result<Decision> {
    let t = total_ring_report(r)?;
    Ok(Decision { verdict: t.absolutely_flat, witness: if is_zalg(r) { None } else { t.witness } })
}

fn tr_zero_dim(r: &Ring) -> Result<Decision> {
    Ok(verdict(total_ring_report(r)?.zero_dimensional))
}

fn nil_target(r: &Ring) -> Result<Ring> {
    Ok(nil_quotient(r)?.target().clone())
}

/// The localization map `R -> R_p` of a finite ring.
fn localization_map(p: &PrimeIdeal) -> Result<crate::ideal::QuotientMap> {
    quotient_map(&ker_pi(p)?)
}

fn primary_localizations(r: &Ring, primes: Vec<PrimeIdeal>) -> Result<Decision> {
    for p in primes {
        let rp = localization_at_prime(&p)?;
        if !finite::primary(&rp)?.verdict.is_true() {
            return Ok(Decision::no(Some(Witness::new(
                crate::verdict::WitnessKind::Separator,
                vec![p.ideal.to_string()],
                "the localization is not primary",
            ))));
        }
    }
    let _ = r;
    Ok(Decision::yes())
}

/// `R_m` primary for every maximal `m`.
fn rm_primary(r: &Ring) -> Result<Decision> {
    if is_zalg(r) {
        zalg::ass_comaximal(r)
    } else {
        primary_localizations(r, maximal_ideals(r)?)
    }
}

/// Every idempotent of every `R_p` is the image of an idempotent of `R`.
fn lift_localizations(r: &Ring) -> Result<Decision> {
    let idem = r.idempotents()?;
    for p in all_primes(r)? {
        let q = localization_map(&p)?;
        let images: BTreeSet<u32> = idem.iter().map(|e| q.project(e).index()).collect();
        for e in q.target().idempotents()? {
            if !images.contains(&e.index()) {
                return Ok(Decision::no(Some(Witness::new(
                    crate::verdict::WitnessKind::Idempotent,
                    vec![q.target().format(&e)],
                    format!("idempotent of the localization at {} does not lift", p.ideal),
                ))));
            }
        }
    }
    Ok(Decision::yes())
}

/// Idempotents lift along `R -> T(R)`; `T(R) = R` for finite rings.
fn lift_total(r: &Ring) -> Result<Decision> {
    if is_zalg(r) {
        zalg::lift_count(r)
    } else {
        Ok(Decision::yes())
    }
}

// ---- theorems --------------------------------------------------------------------

fn pp_flat_total(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("pp-flat-total", r);
    let s = strategy(r);
    b.clause("pp", s, || pp(r))?;
    b.clause("pf and T(R) absolutely flat", s, || Ok(and(pf(r)?, tr_abs_flat(r)?)))?;
    if !is_zalg(r) {
        b.clause("T(R) absolutely flat and lifting along localizations", s, || {
            Ok(and(tr_abs_flat(r)?, lift_localizations(r)?))
        })?;
    }
    b.clause("T(R) absolutely flat and lifting along R -> T(R)", s, || Ok(and(tr_abs_flat(r)?, lift_total(r)?)))?;
    b.equivalent()
}

fn gpp_zero_dim_total(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("gpp-zero-dim-total", r);
    let s = strategy(r);
    b.clause("gpp", s, || gpp(r))?;
    b.clause("gpf and T(R) zero-dimensional", s, || Ok(and(gpf(r)?, tr_zero_dim(r)?)))?;
    if !is_zalg(r) {
        b.clause("T(R) zero-dimensional and lifting along localizations", s, || {
            Ok(and(tr_zero_dim(r)?, lift_localizations(r)?))
        })?;
    }
    b.clause("T(R) zero-dimensional and lifting along R -> T(R)", s, || Ok(and(tr_zero_dim(r)?, lift_total(r)?)))?;
    b.equivalent()
}

fn gpf_local(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("gpf-local", r);
    let s = Strategy::Definitional;
    b.clause("gpf", s, || gpf(r))?;
    b.clause("f/1 non-zero-divisor or f^n/1 = 0 in every R_m", s, || {
        let maps: Vec<_> = maximal_ideals(r)?.iter().map(localization_map).collect::<Result<_>>()?;
        for f in r.enumerate()? {
            for q in &maps {
                let t = q.target();
                let g = q.project(&f);
                if t.is_zero_divisor(&g) && !t.is_nilpotent(&g) {
                    return Ok(Decision::no(Some(Witness::element(
                        r.format(&f),
                        format!("zero-divisor and not nilpotent modulo {}", q.kernel()),
                    ))));
                }
            }
        }
        Ok(Decision::yes())
    })?;
    b.equivalent()
}

fn quasi_pf(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("quasi-pf", r);
    let s = strategy(r);
    let fin = !is_zalg(r);
    b.clause("quasi-pf", s, || qpf(r))?;
    if fin {
        b.clause("R_p primary for every prime p", s, || primary_localizations(r, all_primes(r)?))?;
    }
    b.clause("R_m primary for every maximal m", s, || rm_primary(r))?;
    b.clause("Ker(R -> R_p) pure for every minimal p", s, || zalg::kerpi_min(r))?;
    if fin {
        b.clause("Ker(R -> R_m) primary for every maximal m", s, || {
            for m in maximal_ideals(r)? {
                if !spectrum::is_primary_ideal(&ker_pi(&m)?)?.is_true() {
                    return Ok(Decision::no(Some(Witness::new(
                        crate::verdict::WitnessKind::Separator,
                        vec![m.ideal.to_string()],
                        "the localization kernel is not primary",
                    ))));
                }
            }
            Ok(Decision::yes())
        })?;
    }
    b.equivalent()
}

fn gpp_structure(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("gpp-structure", r);
    let s = strategy(r);
    b.clause("gpp", s, || gpp(r))?;
    b.clause("gpf and Min compact", s, || Ok(and(gpf(r)?, min_compact(r)?)))?;
    b.clause("quasi-pf and Min compact", s, || {
        let q = if is_zalg(r) { zalg::kerpi_min(r)? } else { finite::quasi_pf(r)? };
        Ok(and(q, min_compact(r)?))
    })?;
    b.clause("pp(R/N) and R_m primary for every maximal m", s, || Ok(and(pp(&nil_target(r)?)?, rm_primary(r)?)))?;
    b.equivalent()
}

fn pp_min_compact(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("pp-min-compact", r);
    let s = strategy(r);
    b.clause("pp", s, || pp(r))?;
    b.clause("pf and Min compact", s, || Ok(and(pf(r)?, min_compact(r)?)))?;
    b.equivalent()
}

fn mp_reduced_pf(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("mp-reduced-pf", r);
    let s = strategy(r);
    b.clause("mp", Strategy::Definitional, || mp(r))?;
    b.clause("pf(R/N)", s, || pf(&nil_target(r)?))?;
    b.equivalent()
}

fn reduced_pp(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("reduced-pp", r);
    let s = strategy(r);
    b.clause("pp(R/N)", s, || pp(&nil_target(r)?))?;
    b.clause("mp and Min compact", Strategy::Definitional, || Ok(and(mp(r)?, min_compact(r)?)))?;
    b.equivalent()
}

fn gpf_chain(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("gpf-chain", r);
    let s = strategy(r);
    b.clause("gpf", s, || gpf(r))?;
    b.clause("quasi-pf", s, || qpf(r))?;
    b.clause("mp", Strategy::Definitional, || mp(r))?;
    let n = b.clauses.len();
    b.finish(Rule::chain(n))
}

fn strongly_purified(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("strongly-purified", r);
    let s = strategy(r);
    b.clause("strongly purified", s, || if is_zalg(r) { zalg::gpp_sigma(r) } else { finite::strongly_purified(r) })?;
    b.clause("purified", Strategy::Definitional, || finite::purified(r))?;
    b.clause("every pure ideal is regular", s, || {
        if is_zalg(r) {
            // Ideals are finitely generated, and finitely generated pure
            // ideals are generated by one idempotent.
            return Ok(Decision::yes());
        }
        for i in all_ideals(r)?.iter() {
            let pc = purity_class(i)?;
            if pc.pure.is_true() && !pc.regular.is_true() {
                return Ok(Decision::no(Some(Witness::new(
                    crate::verdict::WitnessKind::Separator,
                    vec![i.to_string()],
                    "pure but not regular",
                ))));
            }
        }
        Ok(Decision::yes())
    })?;
    let n = b.clauses.len();
    b.finish(Rule::premise(n))
}

// ---- T(R) zero-dimensional ---------------------------------------------------------

const SEARCH_COEFF: i64 = 2;
const SEARCH_CAP: usize = 4096;

/// Elements of `K`: all of them if `K` is finite, else small combinations of
/// its generators. The flag says whether the list is exhaustive.
fn ideal_candidates(k: &Ideal) -> Result<(Vec<Element>, bool)> {
    let r = k.ring();
    if r.finite().is_some() {
        return Ok((k.elements()?, true));
    }
    let z = r.zalg().unwrap();
    let free = z.free_rank();
    let torsion_only = k.generators().iter().all(|g| g.coords()[..free].iter().all(|c| c == &0.into()));
    if torsion_only {
        let all = z.torsion_elements()?;
        return Ok((all.iter().map(|v| r.coords(v.clone())).filter(|e| k.contains(e)).collect(), true));
    }
    let gens = k.generators();
    let width = (2 * SEARCH_COEFF + 1) as usize;
    let mut out = vec![r.zero()];
    for g in gens {
        let mut next = Vec::new();
        for base in &out {
            for c in -SEARCH_COEFF..=SEARCH_COEFF {
                next.push(r.add(base, &r.mul(&r.from_int(c), g)));
                if next.len() >= SEARCH_CAP {
                    break;
                }
            }
        }
        out = next;
        if out.len() >= SEARCH_CAP / width {
            break;
        }
    }
    Ok((out, false))
}

enum Search {
    Found,
    Refuted,
    Exhausted,
}

fn search(cands: &(Vec<Element>, bool), ok: impl Fn(&Element) -> bool) -> Search {
    if cands.0.iter().any(ok) {
        Search::Found
    } else if cands.1 {
        Search::Refuted
    } else {
        Search::Exhausted
    }
}

fn per_element_clause(
    r: &Ring,
    what: &'static str,
    test: impl Fn(&Element, u32, &Ideal) -> Result<Search>,
) -> Result<Decision> {
    let elems = if is_zalg(r) { r.sample(zalg::SAMPLE_HEIGHT)? } else { r.enumerate()? };
    let mut open = false;
    for f in &elems {
        let (n, k) = annihilator_power_stabilized(r, f)?;
        match test(f, n, &k)? {
            Search::Found => {}
            Search::Refuted => {
                return Ok(Decision::no(Some(Witness::element(r.format(f), format!("no {what}")))));
            }
            Search::Exhausted => open = true,
        }
    }
    let finite_sample = r.zalg().is_none_or(|z| z.free_rank() == 0);
    if open {
        return Ok(Decision::unknown(format!("bounded search for {what}")));
    }
    if finite_sample {
        return Ok(Decision::yes());
    }
    let ass: Vec<Ideal> = associated_primes(r)?.into_iter().map(|p| p.ideal).collect();
    if ass.len() > zalg::SIGMA_LIMIT {
        return Ok(Decision::unknown("too many associated primes"));
    }
    let seen: BTreeSet<u32> = elems
        .iter()
        .map(|f| ass.iter().enumerate().filter(|(_, q)| !q.contains(f)).fold(0, |m, (i, _)| m | (1 << i)))
        .collect();
    let needed = (0..1u32 << ass.len()).filter(|&s| {
        (0..ass.len())
            .filter(|&i| s & (1 << i) != 0)
            .all(|i| (0..ass.len()).all(|j| !ass[j].leq(&ass[i]) || s & (1 << j) != 0))
    });
    let missing = needed.filter(|s| !seen.contains(s)).count();
    Ok(if missing == 0 { Decision::yes() } else { Decision::unknown(format!("{missing} classes unsampled")) })
}

fn total_zero_dim(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("total-zero-dim", r);
    let s = strategy(r);
    b.clause("T(R) zero-dimensional", s, || tr_zero_dim(r))?;
    b.clause("h in Ann(f^n) with Ann(f^n) and Ann(h) meeting in 0", s, || {
        per_element_clause(r, "h", |_, _, k| {
            let cands = ideal_candidates(k)?;
            Ok(search(&cands, |h| k.intersect(&annihilator(r, h)).is_zero()))
        })
    })?;
    b.clause("f^n g = f^2n with g a non-zero-divisor", s, || {
        per_element_clause(r, "g", |f, n, k| {
            let fnn = r.pow(f, n);
            let cands = ideal_candidates(k)?;
            Ok(search(&cands, |a| !r.is_zero_divisor(&r.add(&fnn, a))))
        })
    })?;
    b.equivalent()
}

// ---- further results ---------------------------------------------------------------

fn finite_collapse(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("finite-collapse", r);
    let s = Strategy::Definitional;
    b.clause("gpp", s, || finite::gpp(r))?;
    b.clause("gpf", s, || finite::gpf(r))?;
    b.clause("quasi-pf", s, || finite::quasi_pf(r))?;
    b.equivalent()
}

fn local_primary(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("local-primary", r);
    let s = strategy(r);
    b.clause("local and gpf", s, || {
        let l = if is_zalg(r) {
            crate::classify::decide(r, crate::classify::Predicate::Local)?.0
        } else {
            finite::local(r)?
        };
        Ok(and(l, gpf(r)?))
    })?;
    b.clause(
        "primary",
        s,
        || {
            if is_zalg(r) {
                Ok(verdict(spectrum::is_primary_ring(r)?))
            } else {
                finite::primary(r)
            }
        },
    )?;
    b.finish(vec![Rule::Implies(0, 1)])
}

fn quasi_pf_local(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("quasi-pf-local", r);
    let s = Strategy::Definitional;
    b.clause("quasi-pf", s, || finite::quasi_pf(r))?;
    b.clause("every R_m quasi-pf", s, || {
        for m in maximal_ideals(r)? {
            let rm = localization_at_prime(&m)?;
            let d = zalg::kerpi_min(&rm)?;
            if !d.verdict.is_true() {
                return Ok(d);
            }
        }
        Ok(Decision::yes())
    })?;
    b.equivalent()
}

fn domain_pp(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("domain-pp", r);
    let s = strategy(r);
    b.clause("domain", Strategy::Definitional, || Ok(verdict(spectrum::is_domain(r)?)))?;
    b.clause("pp with trivial idempotents", s, || {
        let trivial = Decision::from_bool(r.idempotents()?.len() == 2);
        Ok(and(pp(r)?, trivial))
    })?;
    b.equivalent()
}

fn pure_quotient(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("pure-quotient", r);
    let s = Strategy::Definitional;
    let pure: Vec<Ideal> =
        all_ideals(r)?.iter().filter(|i| purity_class(i).is_ok_and(|p| p.pure.is_true())).cloned().collect();
    let over = |check: fn(&Ring) -> Result<Decision>| -> Result<Decision> {
        for i in &pure {
            let q = quotient_map(i)?;
            let d = check(q.target())?;
            if !d.verdict.is_true() {
                return Ok(d);
            }
        }
        Ok(Decision::yes())
    };
    b.clause("gpp", s, || finite::gpp(r))?;
    b.clause("gpp(R/I) for every pure I", s, || {
        over(|q| crate::classify::decide(q, crate::classify::Predicate::Gpp).map(|d| d.0))
    })?;
    b.clause("gpf", s, || finite::gpf(r))?;
    b.clause("gpf(R/I) for every pure I", s, || {
        over(|q| crate::classify::decide(q, crate::classify::Predicate::Gpf).map(|d| d.0))
    })?;
    Ok(b.preservation(vec![Rule::Implies(0, 1), Rule::Implies(2, 3)]))
}

fn poly_idempotents(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("poly-idempotents", r);
    for k in [2, 3] {
        b.clause(&format!("idempotents of R[x]/(x^{k}) constant"), Strategy::Definitional, || {
            Ok(verdict(truncated_idempotents_check(r, k)?))
        })?;
    }
    let n = b.clauses.len();
    b.finish((0..n).map(Rule::Holds).collect())
}

fn poly_pf_reduced(r: &Ring) -> Result<TheoremReport> {
    let mut b = Builder::new("poly-pf-reduced", r);
    b.clause("Ann(f) in R[x] generated by the product idempotent", Strategy::Definitional, || {
        Ok(verdict(reduced_pf_window_check(r)?))
    })?;
    b.finish(vec![Rule::Holds(0)])
}

fn ultra(r: &Ring) -> Result<TheoremReport> {
    let factors = r.finite().and_then(|f| f.factors()).ok_or_else(|| Error::NotApplicable("ultra".into()))?;
    let mut clauses = Vec::new();
    let mut rules = Vec::new();
    for i in SetIdeal::all(factors.len()) {
        let rep = ultra_preservation_suite(&ultra_ring(factors, &i)?)?;
        let off = clauses.len();
        rules.extend(rep.rules.iter().map(|rule| match *rule {
            Rule::Holds(a) => Rule::Holds(a + off),
            Rule::Implies(a, c) => Rule::Implies(a + off, c + off),
            Rule::Equiv(a, c) => Rule::Equiv(a + off, c + off),
        }));
        for mut c in rep.clauses {
            c.label = format!("{i}: {}", c.label);
            clauses.push(c);
        }
    }
    log_route("ultra");
    take_routes();
    Ok(TheoremReport::new("ultra", r.name(), clauses, rules))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::catalog::catalog_get;
    use crate::harness::report::Agreement;

    fn ring(name: &str) -> Ring {
        catalog_get(name).unwrap().ring().unwrap()
    }

    fn verdicts(rep: &TheoremReport) -> Vec<Option<bool>> {
        rep.clauses.iter().map(|c| c.verdict.as_bool()).collect()
    }

    #[test]
    fn deligne_structure() {
        let rep = verify_theorem("gpp-structure", &ring("deligne")).unwrap();
        assert_eq!(verdicts(&rep), vec![Some(false); 4]);
        assert_eq!(rep.agreement, Agreement::Pass);
    }

    #[test]
    fn zmod4_flat_total() {
        let rep = verify_theorem("pp-flat-total", &Ring::zmod(4).unwrap()).unwrap();
        assert!(verdicts(&rep).iter().all(|v| *v == Some(false)), "{rep}");
        assert_eq!(rep.agreement, Agreement::Pass);
    }

    #[test]
    fn zmod6_min_compact() {
        let rep = verify_theorem("pp-min-compact", &Ring::zmod(6).unwrap()).unwrap();
        assert_eq!(verdicts(&rep), vec![Some(true); 2]);
        assert_eq!(rep.agreement, Agreement::Pass);
    }

    #[test]
    fn catalog_passes() {
        for e in crate::harness::catalog::catalog() {
            let r = e.ring().unwrap();
            for rep in verify_all(&r).unwrap() {
                assert_ne!(rep.agreement, Agreement::Fail, "{rep}");
            }
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(verify_theorem("nope", &ring("z")), Err(Error::UnknownName(_))));
        assert!(matches!(verify_theorem("gpf-local", &ring("z")), Err(Error::NotApplicable(_))));
    }
}
