//! Direct use of the residue engine on exponential-polynomial sums.

use kvol::exactmath::{format_rational, rat};
use kvol::residues::{inner_res_plus_y, iterated_res_plus, res_plus_1d, ExpSum1, ExpSum2, ExpTerm1, ExpTerm2};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // e^(x/2) / x^3 keeps its pole (slope > 0): residue (1/2)^2 / 2! = 1/8.
    let mut s = ExpSum1::new();
    s.add(ExpTerm1 { q: rat(1, 1), mu: rat(1, 2), p: -3 });
    println!("res+ e^(x/2)/x^3 = {}", format_rational(&res_plus_1d(&s)?));
    // A negative slope is dropped.
    let mut s = ExpSum1::new();
    s.add(ExpTerm1 { q: rat(1, 1), mu: rat(-1, 2), p: -3 });
    println!("res+ e^(-x/2)/x^3 = {}", format_rational(&res_plus_1d(&s)?));

    let mut s2 = ExpSum2::new();
    s2.add(ExpTerm2 { q: rat(1, 1), mu_x: rat(3, 2), mu_y: rat(1, 3), px: -2, py: -1, pz: -1 });
    let inner = inner_res_plus_y(&s2)?;
    println!("after y: {} terms, after x: {}", inner.len(), format_rational(&res_plus_1d(&inner)?));
    println!(
        "iterated e^(3x/2 + y/3) / (x^2 y (x+y)) = {}",
        format_rational(&iterated_res_plus(&rat(3, 2), &rat(1, 3), 2, 1, 1)?)
    );
    // Zero slope next to a pole is reported, not guessed.
    let mut z = ExpSum1::new();
    z.add(ExpTerm1 { q: rat(1, 1), mu: rat(0, 1), p: -1 });
    println!("zero slope: {}", res_plus_1d(&z).unwrap_err());
    Ok(())
}
