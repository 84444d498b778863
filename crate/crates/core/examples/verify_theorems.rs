//! Evaluate every applicable theorem on a few rings, clause by clause.

use ringlab::harness::catalog::catalog_get;
use ringlab::harness::theorems::{verify_all, verify_theorem};
use ringlab::Ring;

fn main() -> ringlab::Result<()> {
    let d = catalog_get("deligne")?.ring()?;
    print!("{}", verify_theorem("gpp-structure", &d)?);

    for r in [Ring::zmod(12)?, catalog_get("z_x_x2_minus_2x")?.ring()?] {
        for rep in verify_all(&r)? {
            println!("{:<20} {:<18} {}", rep.theorem, rep.ring, rep.agreement);
        }
    }
    Ok(())
}
