//! Exact CM/GIT volumes of K-moduli spaces.
//!
//! Two families are covered: the quartic del Pezzo moduli `S^m P^1 // SL(2)`
//! and moduli of weighted hyperplane arrangements `(P^n)^m // SL(n+1)` for
//! `n = 1, 2`. Every closed-form volume has an independent Jeffrey-Kirwan
//! residue oracle ([`residues`]) and the tests hold the two to exact
//! rational equality.
//!
//! ```
//! use kvol::{vol1_closed, WeightVector};
//! let w = WeightVector::parse(1, "3/10,3/10,3/10,2/5").unwrap();
//! assert_eq!(kvol::exactmath::format_rational(&vol1_closed(&w).unwrap()), "1/2");
//! ```

pub mod arrangements;
pub mod blowupring;
pub mod cli;
pub mod closedform;
pub mod error;
pub mod exactmath;
mod parallel;
pub mod residues;
pub mod sampling;
pub mod verify;

pub use arrangements::{ChamberCensus, ChamberLabel, FixedPoint, StabilityClass, WeightVector};
pub use closedform::{
    cm_scale, dp4_sum_closed, dp4_volume, vol1_closed, vol2_closed, vol_arrangement,
    ArrangementOptions, CMode, DP4Input, Method, VolumeReport,
};
pub use error::VolumeError;
pub use exactmath::Rational;
pub use residues::{jk_volume_rank1, jk_volume_rank2};
