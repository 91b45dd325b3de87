//! Inputs shared by the benchmarks in `benches/`.

use latscope::classify::catalog::hexagonal_catalog;
use latscope::linalg::{qvec, QVec};
use latscope::pattern::WaveSum;
use latscope::{CrystalGroup, ZModule};

/// Generators of a skew lattice with entries in all four surd directions.
pub fn skew_generators() -> Vec<QVec> {
    vec![
        qvec(&["3/2", "1/2*r2", "1/3*r3"]),
        qvec(&["-1/2*r6", "2", "1/4"]),
        qvec(&["1/5", "-1/3*r3", "7/2+r2"]),
    ]
}

pub fn worked_example() -> ZModule {
    ZModule::canonicalize(&[qvec(&["5", "4"]), qvec(&["0", "7"])], 2).expect("lattice")
}

/// The largest group of the hexagonal catalog.
pub fn catalog_group() -> CrystalGroup {
    hexagonal_catalog().pop().expect("nonempty catalog").group
}

pub fn projected_pattern() -> WaveSum {
    latscope::gallery::ls_pattern().expect("pattern")
}
