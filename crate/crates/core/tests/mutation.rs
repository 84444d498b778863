//! With purity checks forced to "pure", the corpus must report failures.
//!
//! Kept in its own test binary: the fault switch is process-wide.

use ringlab::harness::corpus::{run_corpus, CorpusSpec};
use ringlab::testing::set_purity_mutation;

#[test]
fn corrupted_purity_is_caught() {
    let spec = CorpusSpec { max_zmod: 16, ..CorpusSpec::empty() };
    let clean = run_corpus(&spec, Some(1)).unwrap();
    assert_eq!(clean.summary.exit_code(false), 0, "{}", clean.text());

    set_purity_mutation(true);
    let mutated = run_corpus(&spec, Some(1));
    set_purity_mutation(false);
    let s = mutated.unwrap().summary;
    assert!(s.fail + s.violations + s.errors >= 1, "mutation went unnoticed: {s:?}");
}
