//! Z[x]/(x^2, 2x): an mp-ring that is not quasi p.f.

use ringlab::classify::{classify, quotient_mod_nil_profile, Predicate};
use ringlab::harness::catalog::catalog_get;
use ringlab::ideal::{annihilator_power_stabilized, nilradical};
use ringlab::spectrum::{associated_primes, ker_pi, minimal_primes};

fn main() -> ringlab::Result<()> {
    let r = catalog_get("deligne")?.ring()?;
    println!("nilradical     {}", nilradical(&r)?);
    for p in minimal_primes(&r)? {
        println!("minimal prime  {}", p.ideal);
    }
    for p in associated_primes(&r)? {
        println!("associated     {}", p.ideal);
    }
    let two = r.parse("2")?;
    let (n, ann) = annihilator_power_stabilized(&r, &two)?;
    println!("Ann(2^k) = {ann} for k >= {n}");

    let idem: Vec<String> = r.idempotents()?.iter().map(|e| r.format(e)).collect();
    println!("idempotents    {idem:?}");

    let c = classify(&r)?;
    for p in [Predicate::Mp, Predicate::QuasiPf, Predicate::Gpp, Predicate::Gpf] {
        let note = c.witnesses.get(&p).map(|w| w.note.clone()).unwrap_or_default();
        println!("{:<10} {:<6} {note}", p.name(), c.get(p).label());
    }
    println!("R/N pp         {}", quotient_mod_nil_profile(&r)?.get(Predicate::Pp).label());

    for p in minimal_primes(&r)? {
        println!("Ker(R -> R_{}) = {}", p.ideal, ker_pi(&p)?);
    }
    Ok(())
}
