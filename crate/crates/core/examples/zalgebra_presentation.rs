//! Build a Z-algebra from structure constants, then compute with it.

use ringlab::classify::classify;
use ringlab::ideal::{annihilator, quotient_map, Ideal};
use ringlab::ring::spec::parse_ring;

const SPEC: &str = r#"{
    "kind": "zalgebra", "name": "Z[x]/(x^2-2x)",
    "free_rank": 2, "torsion": [],
    "basis": ["1", "x"], "unity": [1, 0],
    "structure": [[[1, 0], [0, 1]], [[0, 1], [0, 2]]]
}"#;

fn main() -> ringlab::Result<()> {
    let r = parse_ring(SPEC)?;
    let x = r.parse("x")?;
    let y = r.sub(&x, &r.from_int(2));
    println!("x * (x - 2) = {}", r.format(&r.mul(&x, &y)));
    println!("Ann(x)      = {}", annihilator(&r, &x));

    let i = Ideal::new(&r, &[r.from_int(6), x.clone()])?;
    let q = quotient_map(&i)?;
    let t = q.target();
    println!("R/(6, x) has order {:?}", t.order());

    let c = classify(&r)?;
    for (p, v) in &c.verdicts {
        println!("  {:<18} {}", p.name(), v.label());
    }
    Ok(())
}
