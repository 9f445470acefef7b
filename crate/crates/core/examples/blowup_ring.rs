//! Intersection ring of the blow-up along the base: x-power reductions,
//! mixed powers, and the top self-intersection.

use kvol::blowupring::{mixed_power, ring_trace, xpow_reduce, RingElement};
use kvol::exactmath::format_rational;

fn main() {
    for k in 1..=6 {
        let (a, b) = xpow_reduce(k);
        println!("x^{k} = {} h x + {} h^2", format_rational(&a), format_rational(&b));
    }
    let e = (&RingElement::x() + &(&RingElement::h() * &RingElement::big_h())).pow(3).reduce();
    println!("(x + hH)^3 reduced has {} terms", e.terms().count());
    let n = 4;
    for i in 2..=n + 1 {
        let mp = mixed_power(n, i).expect("2 <= i <= n+1");
        println!(
            "H^{} E^{i}: reduction {} printed {} implied {}",
            n + 1 - i,
            format_rational(&mp.reduction),
            format_rational(&mp.printed),
            format_rational(&mp.implied)
        );
    }
    let t = ring_trace(n);
    println!("top self-intersection {}, c_ring {}", format_rational(&t.top_self_intersection), format_rational(&t.c_ring));
}
