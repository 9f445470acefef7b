//! Volume of a weighted point configuration on the line (n = 1): closed
//! form, residue oracle, and the chamber census.

use kvol::closedform::vol1_closed_with;
use kvol::exactmath::{approx_decimal, format_rational};
use kvol::{cm_scale, jk_volume_rank1, WeightVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in ["3/10,3/10,3/10,2/5", "1/3,1/4,1/5,1/6,1/7,2/9", "1/2,1/3,1/3,1/5,2/7,1/11,3/13"] {
        let w = WeightVector::parse(1, d)?;
        let closed = vol1_closed_with(&w, 1)?;
        let oracle = jk_volume_rank1(&w)?;
        assert_eq!(closed.volume, oracle);
        println!(
            "d = ({d})\n  vol = {} (~{}), CM scale {}, F+ = {}, outside = {}",
            format_rational(&closed.volume),
            approx_decimal(&closed.volume),
            format_rational(&cm_scale(&w)),
            closed.census.f_plus,
            closed.census.outside,
        );
    }
    Ok(())
}
