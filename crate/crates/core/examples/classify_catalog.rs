//! Classify every catalog ring and print its profile in one line.

use ringlab::classify::{classify, Predicate};
use ringlab::harness::catalog::catalog;

fn main() -> ringlab::Result<()> {
    let cols = [
        Predicate::Reduced,
        Predicate::Pp,
        Predicate::Pf,
        Predicate::Gpp,
        Predicate::Gpf,
        Predicate::QuasiPf,
        Predicate::Mp,
        Predicate::Primary,
    ];
    print!("{:<18}", "ring");
    for p in cols {
        print!("{:>9}", p.name());
    }
    println!();
    for entry in catalog() {
        let c = classify(&entry.ring()?)?;
        print!("{:<18}", entry.name);
        for p in cols {
            print!("{:>9}", c.get(p).label());
        }
        println!();
    }
    Ok(())
}
