//! Corpus generation and batch verification.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::classify::{classify, Predicate};
use crate::error::{Error, Result};
use crate::harness::catalog::catalog;
use crate::harness::report::{Agreement, TheoremReport};
use crate::harness::theorems::verify_all;
use crate::ideal::{nilradical, Ideal};
use crate::ring::Ring;
use crate::spectrum::minimal_primes;
use crate::verdict::Verdict;

/// Which generators a corpus run draws from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusSpec {
    /// `Z/n` for `1 <= n <= max_zmod`; 0 disables the family.
    pub max_zmod: u32,
    /// Products of 2 and 3 factors from the seed rings.
    pub products: bool,
    /// Every `F_p[x]/(f)`, `f` monic of degree at least 2, with at most 64 elements.
    pub poly_quotients: bool,
    pub catalog: bool,
    /// Products of 1 and 4 factors from `F2, F3, Z/4`, for the ultra suite.
    pub ultra: bool,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec { max_zmod: 64, products: true, poly_quotients: true, catalog: true, ultra: true }
    }
}

impl CorpusSpec {
    pub fn empty() -> Self {
        CorpusSpec { max_zmod: 0, products: false, poly_quotients: false, catalog: false, ultra: false }
    }

    pub fn catalog_only() -> Self {
        CorpusSpec { catalog: true, ..Self::empty() }
    }
}

fn field(p: u32) -> Result<Ring> {
    Ok(Ring::zmod(p)?.with_name(format!("F{p}")))
}

/// `F2, F3, F4, Z/4, Z/8, Z/9`.
pub fn seed_rings() -> Result<Vec<Ring>> {
    let f2 = Ring::zmod(2)?;
    let f4 = Ring::poly_quotient(&f2, vec![1, 1], "a")?.with_name("F4");
    Ok(vec![field(2)?, field(3)?, f4, Ring::zmod(4)?, Ring::zmod(8)?, Ring::zmod(9)?])
}

fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in multisets(n, k - 1) {
        let lo = rest.last().copied().unwrap_or(0);
        for i in lo..n {
            let mut v = rest.clone();
            v.push(i);
            out.push(v);
        }
    }
    out
}

fn products_of(seeds: &[Ring], sizes: &[usize]) -> Result<Vec<Ring>> {
    let mut out = Vec::new();
    for &k in sizes {
        for pick in multisets(seeds.len(), k) {
            out.push(Ring::product(pick.iter().map(|&i| seeds[i].clone()).collect())?);
        }
    }
    Ok(out)
}

fn poly_quotients() -> Result<Vec<Ring>> {
    let mut out = Vec::new();
    for p in [2u32, 3, 5, 7] {
        let base = field(p)?;
        let mut d = 2u32;
        while p.pow(d) <= 64 {
            for code in 0..p.pow(d) {
                let modulus: Vec<u32> = (0..d).map(|i| code / p.pow(i) % p).collect();
                out.push(Ring::poly_quotient(&base, modulus, "x")?);
            }
            d += 1;
        }
    }
    Ok(out)
}

/// The rings of a corpus, sorted by name with duplicates removed.
pub fn corpus_rings(spec: &CorpusSpec) -> Result<Vec<Ring>> {
    let mut rings = Vec::new();
    for n in 1..=spec.max_zmod {
        rings.push(Ring::zmod(n)?);
    }
    if spec.products {
        rings.extend(products_of(&seed_rings()?, &[2, 3])?);
    }
    if spec.poly_quotients {
        rings.extend(poly_quotients()?);
    }
    if spec.catalog {
        for e in catalog() {
            rings.push(e.ring()?);
        }
    }
    if spec.ultra {
        let small = [field(2)?, field(3)?, Ring::zmod(4)?];
        rings.extend(products_of(&small, &[1, 4])?);
    }
    let mut by_name = BTreeMap::new();
    for r in rings {
        by_name.entry(r.name().to_string()).or_insert(r);
    }
    Ok(by_name.into_values().collect())
}

/// Everything computed for one ring.
#[derive(Debug, Clone, Serialize)]
pub struct RingOutcome {
    pub ring: String,
    pub verdicts: BTreeMap<Predicate, Verdict>,
    pub reports: Vec<TheoremReport>,
    /// Broken implications of the predicate lattice.
    pub violations: Vec<(Predicate, Predicate)>,
    /// Failed module invariants and catalog expectations.
    pub invariant_failures: Vec<String>,
    pub error: Option<String>,
}

fn invariants(ring: &Ring) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let nil = nilradical(ring)?;
    let mut meet = Ideal::whole(ring);
    for p in minimal_primes(ring)? {
        meet = meet.intersect(&p.ideal);
    }
    if meet != nil {
        out.push(format!("intersection of minimal primes {meet} differs from the nilradical {nil}"));
    }
    if let Some(e) = catalog().into_iter().find(|e| e.name == ring.name()) {
        for (p, want, got) in e.mismatches()? {
            out.push(format!("catalog expects {p} = {want}, got {got}"));
        }
    }
    Ok(out)
}

fn outcome(ring: &Ring) -> RingOutcome {
    let mut o = RingOutcome {
        ring: ring.name().to_string(),
        verdicts: BTreeMap::new(),
        reports: Vec::new(),
        violations: Vec::new(),
        invariant_failures: Vec::new(),
        error: None,
    };
    let run = |o: &mut RingOutcome| -> Result<()> {
        let c = classify(ring)?;
        o.verdicts = c.verdicts.clone();
        o.violations = c.implication_violations();
        o.reports = verify_all(ring)?;
        o.invariant_failures = invariants(ring)?;
        Ok(())
    };
    if let Err(e) = run(&mut o) {
        o.error = Some(e.to_string());
    }
    o
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub rings: usize,
    pub reports: usize,
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
    pub violations: usize,
    pub invariant_failures: usize,
    pub errors: usize,
}

impl Summary {
    /// Exit status: 1 on any failure, 2 on indeterminate results under `strict`.
    pub fn exit_code(&self, strict: bool) -> i32 {
        if self.fail + self.violations + self.invariant_failures + self.errors > 0 {
            1
        } else if strict && self.indeterminate > 0 {
            2
        } else {
            0
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusRun {
    pub outcomes: Vec<RingOutcome>,
    pub summary: Summary,
}

/// Classifies and verifies every ring of the corpus, `jobs` threads at a time
/// (all cores when `None`).
pub fn run_corpus(spec: &CorpusSpec, jobs: Option<usize>) -> Result<CorpusRun> {
    let rings = corpus_rings(spec)?;
    let work = || rings.par_iter().map(outcome).collect::<Vec<_>>();
    let outcomes = match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(work),
        None => work(),
    };
    let mut s = Summary { rings: outcomes.len(), ..Summary::default() };
    for o in &outcomes {
        for r in &o.reports {
            s.reports += 1;
            match r.agreement {
                Agreement::Pass => s.pass += 1,
                Agreement::Indeterminate => s.indeterminate += 1,
                Agreement::Fail => s.fail += 1,
            }
        }
        s.violations += o.violations.len();
        s.invariant_failures += o.invariant_failures.len();
        s.errors += usize::from(o.error.is_some());
    }
    Ok(CorpusRun { outcomes, summary: s })
}

/// One JSON object per predicate verdict and per theorem report.
pub fn predicate_lines(ring: &str, c: &crate::classify::Classification) -> Vec<String> {
    Predicate::ALL
        .iter()
        .map(|&p| {
            json!({"ring": ring, "predicate": p.name(), "verdict": c.get(p), "witness": c.witnesses.get(&p)})
                .to_string()
        })
        .collect()
}

pub fn report_line(r: &TheoremReport) -> String {
    let clauses: Vec<_> = r.clauses.iter().map(|c| json!({"label": c.label, "verdict": c.verdict})).collect();
    json!({
        "ring": r.ring,
        "theorem": r.theorem,
        "verdict": r.agreement.to_string(),
        "witness": r.witnesses().first(),
        "clauses": clauses,
    })
    .to_string()
}

impl CorpusRun {
    pub fn machine_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for o in &self.outcomes {
            for (p, v) in &o.verdicts {
                out.push(json!({"ring": o.ring, "predicate": p.name(), "verdict": v, "witness": null}).to_string());
            }
            out.extend(o.reports.iter().map(report_line));
            for (a, b) in &o.violations {
                out.push(
                    json!({"ring": o.ring, "predicate": format!("{a} => {b}"), "verdict": "violated", "witness": null})
                        .to_string(),
                );
            }
            for f in &o.invariant_failures {
                out.push(
                    json!({"ring": o.ring, "predicate": "invariant", "verdict": "violated", "witness": f}).to_string(),
                );
            }
            if let Some(e) = &o.error {
                out.push(json!({"ring": o.ring, "predicate": "error", "verdict": "error", "witness": e}).to_string());
            }
        }
        out.push(json!({"summary": self.summary}).to_string());
        out
    }

    /// Non-passing reports and problems, then the summary.
    pub fn text(&self) -> String {
        let mut s = String::new();
        for o in &self.outcomes {
            for r in o.reports.iter().filter(|r| r.agreement != Agreement::Pass) {
                let _ = write!(s, "{r}");
            }
            for (a, b) in &o.violations {
                let _ = writeln!(s, "{}: implication {a} => {b} violated", o.ring);
            }
            for f in &o.invariant_failures {
                let _ = writeln!(s, "{}: {f}", o.ring);
            }
            if let Some(e) = &o.error {
                let _ = writeln!(s, "{}: error: {e}", o.ring);
            }
        }
        let m = &self.summary;
        let _ = writeln!(
            s,
            "{} rings, {} reports: {} pass, {} fail, {} indeterminate; {} implication violations, {} invariant failures, {} errors",
            m.rings, m.reports, m.pass, m.fail, m.indeterminate, m.violations, m.invariant_failures, m.errors
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus() {
        let run = run_corpus(&CorpusSpec::empty(), Some(1)).unwrap();
        assert_eq!(run.summary, Summary::default());
        assert_eq!(run.summary.exit_code(true), 0);
    }

    #[test]
    fn generator_counts() {
        assert_eq!(multisets(6, 3).len(), 56);
        assert_eq!(multisets(6, 2).len(), 21);
        assert_eq!(poly_quotients().unwrap().len(), 4 + 8 + 16 + 32 + 64 + 9 + 27 + 25 + 49);
    }

    #[test]
    fn catalog_corpus_clean() {
        let run = run_corpus(&CorpusSpec::catalog_only(), None).unwrap();
        assert_eq!(run.summary.fail, 0, "{}", run.text());
        assert_eq!(run.summary.invariant_failures, 0, "{}", run.text());
        assert_eq!(run.summary.errors, 0, "{}", run.text());
    }
}
