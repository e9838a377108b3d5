//! Arithmetic in GF(q) and the prime-power test.
//!
//! cargo run --example field_arithmetic -- 9

use mobius_metric::field::{prime_power, Field};

fn main() -> anyhow::Result<()> {
    let q: u32 = std::env::args().nth(1).map_or(Ok(9), |s| s.parse())?;
    let Some((p, k)) = prime_power(q) else {
        anyhow::bail!("{q} is not a prime power");
    };
    let f = Field::new(p, k)?;
    println!(
        "GF({q}) = GF({p})[x] / ({})",
        f.reduction_polynomial_string()
    );

    let g = f.generator();
    println!(
        "generator {g} has multiplicative order {}",
        f.multiplicative_order(g)?
    );
    for a in f.elements().take(6) {
        let inv = f.inv(a).map_or("-".to_string(), |i| i.to_string());
        println!(
            "a={a:>3}  a+g={:>3}  a*g={:>3}  a^-1={inv:>3}  frob(a)={:>3}",
            f.add(a, g),
            f.mul(a, g),
            f.frobenius(a)
        );
    }
    if k % 2 == 0 {
        let sub = f.subfield(p.pow(k / 2));
        println!("subfield of order {} : {:?}", sub.len(), sub);
    }
    Ok(())
}
