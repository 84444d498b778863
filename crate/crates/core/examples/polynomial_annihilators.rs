//! Annihilators in R[x] over finite bases, and idempotents of R[x]/(x^k).

use ringlab::poly::{
    annihilator_window_matches, poly_annihilator_bounded, pp_annihilator_idempotent, truncated_idempotents_check, Poly,
};
use ringlab::Ring;

fn main() -> ringlab::Result<()> {
    let r = Ring::product(vec![Ring::zmod(2)?, Ring::zmod(3)?])?;
    let f = Poly::new(&r, &[r.parse("(1,0)")?, r.parse("(0,0)")?, r.parse("(1,0)")?])?;
    let e = pp_annihilator_idempotent(&f)?;
    println!("f = {f}");
    println!("Ann(f) = ({}) in R[x]; degree-4 window agrees: {}", r.format(&e), annihilator_window_matches(&f, 4)?);

    let z4 = Ring::zmod(4)?;
    let g = Poly::new(&z4, &[z4.parse("2")?, z4.parse("2")?])?;
    let b = poly_annihilator_bounded(&g, 2)?;
    println!("{} polynomials of degree <= 2 kill {g}", b.members.len());
    if let Some(c) = &b.mccoy_witness {
        println!("constant witness {}", z4.format(c));
    }

    for k in [2, 3] {
        println!("idempotents of Z/4[x]/(x^{k}) constant: {}", truncated_idempotents_check(&z4, k)?.label());
    }
    Ok(())
}
