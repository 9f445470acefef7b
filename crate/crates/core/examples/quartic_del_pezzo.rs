//! Quartic del Pezzo moduli: the residue sum S(m), the CM volume for both
//! choices of the constant c, and the reconciliation between them.

use kvol::closedform::CReconciliation;
use kvol::exactmath::format_rational;
use kvol::residues::dp4_residue_sum;
use kvol::{dp4_sum_closed, dp4_volume, CMode, DP4Input};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for m in 4..=9 {
        let s = dp4_sum_closed(m)?;
        assert_eq!(s, dp4_residue_sum(m)?);
        println!("S({m}) = {}", format_rational(&s));
    }
    for c_mode in [CMode::Ring, CMode::Paper, CMode::Explicit(kvol::exactmath::rat(120, 1))] {
        let label = match &c_mode {
            CMode::Ring => "ring",
            CMode::Paper => "paper",
            CMode::Explicit(_) => "explicit",
        };
        let rep = dp4_volume(&DP4Input { c_mode: c_mode.clone(), ..DP4Input::new(5) })?;
        println!(
            "m=5 {label}: c = {}, CM volume = {}",
            rep.c.as_ref().map(format_rational).unwrap_or_default(),
            format_rational(&rep.cm_volume)
        );
    }
    for n in 2..=6 {
        let r = CReconciliation::for_n(n);
        println!("n={n}: c_paper {} c_ring {} agree={}", format_rational(&r.c_paper), format_rational(&r.c_ring), r.agree);
    }
    Ok(())
}
