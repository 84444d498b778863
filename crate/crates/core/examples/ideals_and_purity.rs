//! Pure, quasi-pure and regular ideals of Z/12 and of Z/2 x Z/4.

use ringlab::ideal::purity::purity_class;
use ringlab::spectrum::all_ideals;
use ringlab::Ring;

fn main() -> ringlab::Result<()> {
    let rings = [Ring::zmod(12)?, Ring::product(vec![Ring::zmod(2)?, Ring::zmod(4)?])?];
    for r in &rings {
        println!("{}", r.name());
        for i in all_ideals(r)?.iter() {
            let pc = purity_class(i)?;
            let gen = pc.idempotent_generator.as_ref().map(|e| r.format(e)).unwrap_or_default();
            println!(
                "  {:<28} pure {:<6} quasi-pure {:<6} regular {:<6} {gen}",
                i.to_string(),
                pc.pure.label(),
                pc.quasi_pure.label(),
                pc.regular.label()
            );
        }
    }
    Ok(())
}
