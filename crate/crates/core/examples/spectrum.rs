//! Primes, localizations and the total ring of fractions.

use ringlab::harness::catalog::catalog_get;
use ringlab::spectrum::{all_primes, ker_pi, localization_at_prime, minimal_primes, total_ring_report};
use ringlab::Ring;

fn main() -> ringlab::Result<()> {
    let r = Ring::zmod(36)?;
    for p in all_primes(&r)? {
        let rp = localization_at_prime(&p)?;
        println!("{}: Ker pi = {}, |R_p| = {}", p.ideal, ker_pi(&p)?, rp.finite().unwrap().size());
    }

    for name in ["z_x_x2_minus_2x", "deligne", "z_cross_f2"] {
        let z = catalog_get(name)?.ring()?;
        let t = total_ring_report(&z)?;
        let min: Vec<String> = minimal_primes(&z)?.iter().map(|p| p.ideal.to_string()).collect();
        println!(
            "{name}: Min = {min:?}, T(R) zero-dimensional {}, absolutely flat {}",
            t.zero_dimensional.label(),
            t.absolutely_flat.label()
        );
    }
    Ok(())
}
