//! Sweep one weight across an interval and watch the volume jump across
//! walls.

use kvol::arrangements::wall_check;
use kvol::exactmath::{approx_decimal, format_rational, rat};
use kvol::{vol_arrangement, ArrangementOptions, StabilityClass, WeightVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = ArrangementOptions::default();
    for k in 1..=11 {
        let t = rat(k, 12);
        let mut d = vec![rat(1, 5), rat(1, 3), rat(2, 7), rat(3, 8)];
        d.push(t.clone());
        let w = WeightVector::new(2, d)?;
        let label = format_rational(&t);
        if w.stability_class() != StabilityClass::LogFano {
            println!("d5 = {label:>5}: {:?}", w.stability_class());
        } else if !wall_check(&w)?.is_empty() {
            println!("d5 = {label:>5}: wall");
        } else {
            let r = vol_arrangement(&w, &opts)?;
            println!("d5 = {label:>5}: vol {} (~{})", format_rational(&r.git_volume), approx_decimal(&r.git_volume));
        }
    }
    Ok(())
}
