//! A reduced corpus run: Z/n for n <= 24 plus the catalog.

use ringlab::harness::corpus::{run_corpus, CorpusSpec};

fn main() -> ringlab::Result<()> {
    let spec = CorpusSpec { max_zmod: 24, catalog: true, ..CorpusSpec::empty() };
    let run = run_corpus(&spec, None)?;
    print!("{}", run.text());
    for line in run.machine_lines().iter().take(3) {
        println!("{line}");
    }
    std::process::exit(run.summary.exit_code(false));
}
