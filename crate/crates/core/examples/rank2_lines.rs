//! Line arrangements in the plane (n = 2): the repaired closed form against
//! the residue oracle, with the literal chamber formula shown for contrast.

use kvol::closedform::{vol2_as_printed, vol2_closed_with};
use kvol::exactmath::format_rational;
use kvol::{jk_volume_rank2, WeightVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in ["1/5,1/3,2/7,1/2,3/8", "1/4,1/4,1/3,2/7,1/5,1/6", "1/7,3/11,2/9,1/4,5/13,1/5,2/7"] {
        let w = WeightVector::parse(2, d)?;
        let out = vol2_closed_with(&w, 0)?;
        let oracle = jk_volume_rank2(&w)?;
        let literal = vol2_as_printed(&w)?;
        println!("d = ({d})");
        println!("  closed  {}", format_rational(&out.volume));
        println!("  oracle  {}", format_rational(&oracle));
        println!("  literal {}{}", format_rational(&literal), if literal == oracle { "" } else { "  (differs)" });
        println!("  census  {}", serde_json::to_string(&out.census)?);
    }
    Ok(())
}
