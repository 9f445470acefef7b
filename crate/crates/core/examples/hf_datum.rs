//! The meromorphic datum attached to each fixed point, as JSON.

use kvol::residues::dump_hf;
use kvol::WeightVector;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = WeightVector::parse(2, "1/5,1/3,2/7,1/2")?;
    let entries = dump_hf(&w)?;
    println!("{} fixed points; first three:", entries.len());
    println!("{}", serde_json::to_string_pretty(&entries[..3])?);
    Ok(())
}
