//! End-to-end acceptance criteria, one line of output each.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use common::{ann_oracle, mirrors, nil_oracle, poly_mul_is_zero, poly_window, primes_oracle, pure_oracle};
use ringlab::classify::{classify, quotient_mod_nil_profile, Predicate};
use ringlab::harness::catalog::catalog_get;
use ringlab::harness::corpus::{corpus_rings, run_corpus, CorpusRun, CorpusSpec};
use ringlab::harness::report::Agreement;
use ringlab::ideal::purity::purity_class;
use ringlab::ideal::{annihilator, nilradical};
use ringlab::poly::{pp_annihilator_idempotent, truncated_idempotents_check, Poly};
use ringlab::spectrum::minimal_primes;
use ringlab::ultra::{ultra_preservation_suite, ultra_ring, SetIdeal};
use ringlab::{Ideal, Ring, Verdict};

const CATALOG_LIMIT: Duration = Duration::from_secs(1);
const CORPUS_LIMIT: Duration = Duration::from_secs(300);
const MIN_MIRRORS: usize = 20;
const WINDOW_DEGREE: usize = 4;
const ULTRA_INSTANCES: usize = 1554;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn criterion_1() -> Outcome {
    let mut problems = Vec::new();
    let t = Instant::now();
    let z4 = catalog_get("zmod4").unwrap().ring().unwrap();
    let c = classify(&z4).unwrap();
    if !c.get(Predicate::Gpf).is_true() || !c.get(Predicate::Pf).is_false() {
        problems.push("zmod4 gpf/pf".to_string());
    }
    match c.witnesses.get(&Predicate::Pf) {
        Some(w) if w.note == "Ann(2) = {0,2} is not pure" => {}
        w => problems.push(format!("zmod4 pf witness {w:?}")),
    }
    let t4 = t.elapsed();

    let t = Instant::now();
    let d = catalog_get("deligne").unwrap().ring().unwrap();
    let c = classify(&d).unwrap();
    for (p, want) in [(Predicate::Mp, true), (Predicate::QuasiPf, false), (Predicate::Gpp, false)] {
        if c.get(p).as_bool() != Some(want) {
            problems.push(format!("deligne {p} = {}", c.get(p)));
        }
    }
    let idem: Vec<String> = d.idempotents().unwrap().iter().map(|e| d.format(e)).collect();
    if idem != ["0", "1"] {
        problems.push(format!("deligne idempotents {idem:?}"));
    }
    let x = Ideal::new(&d, &[d.parse("x").unwrap()]).unwrap();
    if nilradical(&d).unwrap() != x {
        problems.push("deligne nilradical".into());
    }
    let min: Vec<Ideal> = minimal_primes(&d).unwrap().into_iter().map(|p| p.ideal).collect();
    if min != [x] {
        problems.push("deligne minimal primes".into());
    }
    if !quotient_mod_nil_profile(&d).unwrap().get(Predicate::Pp).is_true() {
        problems.push("deligne R/N pp".into());
    }
    let td = t.elapsed();
    if t4 > CATALOG_LIMIT || td > CATALOG_LIMIT {
        problems.push(format!("too slow: {t4:?}, {td:?}"));
    }
    outcome(problems.is_empty(), format!("zmod4 {t4:?}, deligne {td:?} {problems:?}"))
}

fn criterion_2(run: &CorpusRun, elapsed: Duration) -> Outcome {
    let s = &run.summary;
    let pass = s.fail == 0 && s.errors == 0 && s.invariant_failures == 0 && elapsed < CORPUS_LIMIT;
    outcome(
        pass,
        format!(
            "{} rings, {} reports, {} fail, {} indeterminate, {} errors in {elapsed:?}",
            s.rings, s.reports, s.fail, s.indeterminate, s.errors
        ),
    )
}

fn criterion_3() -> Outcome {
    let ms = mirrors();
    let mut problems = Vec::new();
    for m in &ms {
        let (t, z) = (&m.table, &m.zalg);
        for a in t.enumerate().unwrap() {
            let za = m.zalg_of(a.index());
            let ann = annihilator(z, &za);
            let got = m.image(&ann.elements().unwrap());
            let want = ann_oracle(t, &a);
            if got != want {
                problems.push(format!("{}: Ann({})", t.name(), t.format(&a)));
                continue;
            }
            let pure = purity_class(&ann).unwrap().pure.as_bool();
            if pure != Some(pure_oracle(t, &want)) {
                problems.push(format!("{}: purity of Ann({})", t.name(), t.format(&a)));
            }
        }
        if m.image(&nilradical(z).unwrap().elements().unwrap()) != nil_oracle(t) {
            problems.push(format!("{}: nilradical", t.name()));
        }
        let got: BTreeSet<BTreeSet<u32>> =
            minimal_primes(z).unwrap().iter().map(|p| m.image(&p.ideal.elements().unwrap())).collect();
        let want: BTreeSet<BTreeSet<u32>> = primes_oracle(t).into_iter().collect();
        if got != want {
            problems.push(format!("{}: minimal primes", t.name()));
        }
        let (ct, cz) = (classify(t).unwrap(), classify(z).unwrap());
        for p in Predicate::ALL {
            if ct.get(p) != cz.get(p) {
                problems.push(format!("{}: {p} table {} zalgebra {}", t.name(), ct.get(p), cz.get(p)));
            }
        }
    }
    let pass = ms.len() >= MIN_MIRRORS && problems.is_empty();
    outcome(pass, format!("{} mirrors, {} disagreements {problems:?}", ms.len(), problems.len()))
}

fn criterion_4() -> Outcome {
    let f2 = Ring::zmod(2).unwrap();
    let f3 = Ring::zmod(3).unwrap();
    let f4 = Ring::poly_quotient(&f2, vec![1, 1], "a").unwrap();
    let bases = [
        f2.clone(),
        f3.clone(),
        f4,
        Ring::product(vec![f2.clone(), f2.clone()]).unwrap(),
        Ring::product(vec![f2, f3]).unwrap(),
    ];
    let (mut checked, mut mismatches) = (0usize, Vec::new());
    for base in &bases {
        let window = poly_window(base, WINDOW_DEGREE);
        for f in poly_window(base, 2) {
            let e = pp_annihilator_idempotent(&Poly::new(base, &f).unwrap()).unwrap();
            let key = |g: &[ringlab::Element]| g.iter().map(|c| c.index()).collect::<Vec<u32>>();
            let ann: BTreeSet<Vec<u32>> =
                window.iter().filter(|g| poly_mul_is_zero(base, &f, g)).map(|g| key(g)).collect();
            let multiples: BTreeSet<Vec<u32>> =
                window.iter().map(|g| key(&g.iter().map(|c| base.mul(c, &e)).collect::<Vec<_>>())).collect();
            checked += 1;
            if ann != multiples {
                mismatches.push(format!("{} over {}", key(&f).len(), base.name()));
            }
        }
    }
    outcome(mismatches.is_empty(), format!("{checked} polynomials, {} mismatches", mismatches.len()))
}

fn criterion_5() -> Outcome {
    let rings: Vec<Ring> = corpus_rings(&CorpusSpec::default())
        .unwrap()
        .into_iter()
        .filter(|r| r.finite().is_some_and(|f| f.size() <= 16))
        .collect();
    let mut problems = Vec::new();
    for r in &rings {
        let base_idem = r.enumerate().unwrap().into_iter().filter(|e| r.mul(e, e) == *e).count();
        for k in [2, 3] {
            let t = Ring::truncated(r, k).unwrap();
            let tf = t.finite().unwrap();
            let idem: Vec<u32> = tf.elements().filter(|&e| tf.mul(e, e) == e).collect();
            let zero = r.finite().unwrap().zero();
            let constant = idem.iter().all(|&e| tf.poly_coefficients(e).unwrap()[1..].iter().all(|&c| c == zero));
            let oracle = constant && idem.len() == base_idem;
            let lib = truncated_idempotents_check(r, k).unwrap();
            if !oracle || lib != Verdict::True {
                problems.push(format!("{} k={k}", r.name()));
            }
        }
    }
    outcome(problems.is_empty(), format!("{} rings x k in {{2,3}}, failures {problems:?}", rings.len()))
}

fn criterion_6() -> Outcome {
    let seeds = [Ring::zmod(2).unwrap(), Ring::zmod(3).unwrap(), Ring::zmod(4).unwrap()];
    let mut tuples: Vec<Vec<Ring>> = vec![Vec::new()];
    let mut all = Vec::new();
    for _ in 0..4 {
        tuples =
            tuples.into_iter().flat_map(|t| seeds.iter().map(move |s| [t.clone(), vec![s.clone()]].concat())).collect();
        all.extend(tuples.clone());
    }
    let (mut instances, mut problems) = (0usize, Vec::new());
    for factors in &all {
        let reduced = factors.iter().all(|f| nil_oracle(f).len() == 1);
        for i in SetIdeal::all(factors.len()) {
            let u = ultra_ring(factors, &i).unwrap();
            instances += 1;
            let star: BTreeSet<u32> = u.star.elements().unwrap().iter().map(|e| e.index()).collect();
            let q = u.quotient();
            let mut bad =
                !pure_oracle(&u.product, &star) || ultra_preservation_suite(&u).unwrap().agreement != Agreement::Pass;
            if reduced {
                bad |= nil_oracle(q).len() != 1;
            }
            if bad {
                problems.push(format!("{}/{i}*", u.product.name()));
            }
        }
    }
    let pass = problems.is_empty() && instances == ULTRA_INSTANCES;
    outcome(pass, format!("{instances} instances, failures {problems:?}"))
}

const LATTICE: [(Predicate, Predicate); 7] = [
    (Predicate::Pp, Predicate::Pf),
    (Predicate::Gpf, Predicate::QuasiPf),
    (Predicate::QuasiPf, Predicate::Mp),
    (Predicate::ZeroDimensional, Predicate::Gpp),
    (Predicate::Domain, Predicate::Pp),
    (Predicate::AbsolutelyFlat, Predicate::Pp),
    (Predicate::Primary, Predicate::Gpf),
];

fn criterion_7(run: &CorpusRun) -> Outcome {
    let mut violations = Vec::new();
    for o in &run.outcomes {
        for (a, b) in LATTICE {
            if o.verdicts[&a].is_true() && o.verdicts[&b].is_false() {
                violations.push(format!("{}: {a} => {b}", o.ring));
            }
        }
    }
    let total = violations.len() + run.summary.violations;
    outcome(total == 0, format!("{} rings, {total} violations {violations:?}", run.outcomes.len()))
}

fn criterion_8(run: &CorpusRun) -> Outcome {
    let get = |ring: &str, p: Predicate| {
        run.outcomes.iter().find(|o| o.ring == ring).and_then(|o| o.verdicts.get(&p)).and_then(|v| v.as_bool())
    };
    let checks = [
        ("Z/4 pf = F", get("Z/4", Predicate::Pf) == Some(false)),
        ("z_x_x2_minus_2x mp = F", get("z_x_x2_minus_2x", Predicate::Mp) == Some(false)),
        (
            "deligne quasi_pf = F, mp = T",
            get("deligne", Predicate::QuasiPf) == Some(false) && get("deligne", Predicate::Mp) == Some(true),
        ),
    ];
    let missing: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    outcome(missing.is_empty(), format!("missing {missing:?}"))
}

fn criterion_9(a: &CorpusRun, b: &CorpusRun) -> Outcome {
    let (la, lb) = (a.machine_lines(), b.machine_lines());
    let same = la == lb;
    outcome(same, format!("{} lines, identical: {same}", la.len()))
}

#[test]
fn acceptance() {
    let start = Instant::now();
    let first = run_corpus(&CorpusSpec::default(), None).unwrap();
    let elapsed = start.elapsed();
    let second = run_corpus(&CorpusSpec::default(), Some(2)).unwrap();

    let results = [
        criterion_1(),
        criterion_2(&first, elapsed),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(&first),
        criterion_8(&first),
        criterion_9(&first, &second),
    ];
    for (i, r) in results.iter().enumerate() {
        println!("criterion {}: {}  {}", i + 1, if r.pass { "PASS" } else { "FAIL" }, r.detail);
    }
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, r)| !r.pass).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failed criteria {failed:?}");
}
