//! Quotients of finite products by star ideals.

use ringlab::ultra::{support, ultra_preservation_suite, ultra_ring, SetIdeal};
use ringlab::Ring;

fn main() -> ringlab::Result<()> {
    let factors = vec![Ring::zmod(2)?, Ring::zmod(4)?, Ring::zmod(3)?];
    let product = Ring::product(factors.clone())?;
    let f = product.parse("(1,2,0)")?;
    println!("Su{} = {:?}", product.format(&f), support(&product, &f)?);

    for i in SetIdeal::all(3) {
        let u = ultra_ring(&factors, &i)?;
        let rep = ultra_preservation_suite(&u)?;
        println!(
            "{:<10} |R/I*| = {:<3} {} ({})",
            i.to_string(),
            u.quotient().finite().unwrap().size(),
            rep.agreement,
            u.complement.name()
        );
    }
    Ok(())
}
