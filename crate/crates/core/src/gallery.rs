//! Two triclinic lattices over the hexagonal plane, their duals, and the
//! projected patterns built from them.

use crate::crystal::{CrystalGroup, OrthoElem};
use crate::error::Result;
use crate::exactnum::QF;
use crate::lattice::ZModule;
use crate::linalg::{qvec, zeros, QMat, QVec};
use crate::pattern::{invariant_wave, project, WaveSum};

/// Band width used for both patterns.
pub fn band_width() -> QF {
    crate::exactnum::qf("1/14*r2")
}

pub fn lt_generators() -> Vec<QVec> {
    vec![qvec(&["1", "0", "0"]), qvec(&["1/2", "1/2*r3", "0"]), qvec(&["1", "1", "1"])]
}

/// Dual generators `k1, k2, k3`.
pub fn lt_dual_generators() -> Vec<QVec> {
    vec![
        qvec(&["0", "0", "1"]),
        qvec(&["0", "2/3*r3", "-2/3*r3"]),
        qvec(&["1", "-1/3*r3", "1/3*r3-1"]),
    ]
}

pub fn ls_generators() -> Vec<QVec> {
    vec![qvec(&["1", "0", "0"]), qvec(&["1/2", "1/2*r3", "0"]), qvec(&["1/2*r2", "0", "1"])]
}

/// Dual generators `l1, l2, l3`.
pub fn ls_dual_generators() -> Vec<QVec> {
    vec![qvec(&["0", "0", "1"]), qvec(&["0", "2/3*r3", "0"]), qvec(&["1", "-1/3*r3", "-1/2*r2"])]
}

pub fn lt_lattice() -> ZModule {
    ZModule::canonicalize(&lt_generators(), 3).expect("lattice")
}

pub fn ls_lattice() -> ZModule {
    ZModule::canonicalize(&ls_generators(), 3).expect("lattice")
}

/// Reflection in the plane orthogonal to `(0, 1, 0)`.
pub fn gamma_y() -> QMat {
    QMat::from_strs(&[&["1", "0", "0"], &["0", "-1", "0"], &["0", "0", "1"]])
}

pub fn lt_group() -> CrystalGroup {
    CrystalGroup::translations(lt_lattice())
}

pub fn ls_group() -> CrystalGroup {
    let reps = vec![
        OrthoElem::new(QMat::identity(3), zeros(3)),
        OrthoElem::new(gamma_y(), zeros(3)),
    ];
    CrystalGroup::new(ls_lattice(), reps).expect("group")
}

/// The band projection of `omega_{k3}` for the translation group of `L_T`.
pub fn lt_pattern() -> Result<WaveSum> {
    project(&invariant_wave(&lt_dual_generators()[2], &lt_group())?, &band_width())
}

/// The band projection of `f_{l2} + f_{l3}` for the reflection group on `L_S`.
pub fn ls_pattern() -> Result<WaveSum> {
    let g = ls_group();
    let d = ls_dual_generators();
    let f = invariant_wave(&d[1], &g)?.add(&invariant_wave(&d[2], &g)?)?;
    project(&f, &band_width())
}
