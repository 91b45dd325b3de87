//! One representative group for every case and `v1` choice of the
//! hexagonal classification, with `c = 1` and `y1 = 1/4`.

use crate::crystal::{CrystalGroup, OrthoElem};
use crate::lattice::{reflection_sigma, ZModule};
use crate::linalg::{qvec, QMat, QVec};

use super::CaseId;

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub case: CaseId,
    pub v1: Option<QVec>,
    pub group: CrystalGroup,
}

const Y1: &str = "1/4";

fn group(gens: &[&[&str]], v1: Option<&[&str]>) -> CrystalGroup {
    let gens: Vec<QVec> = gens.iter().map(|g| qvec(g)).collect();
    let lattice = ZModule::canonicalize(&gens, 3).expect("catalog lattice");
    let mut reps = vec![OrthoElem::new(QMat::identity(3), qvec(&["0", "0", "0"]))];
    if let Some(v) = v1 {
        reps.push(OrthoElem::new(reflection_sigma(3), qvec(&[v[0], v[1], Y1])));
    }
    CrystalGroup::new(lattice, reps).expect("catalog group")
}

fn entry(case: CaseId, gens: &[&[&str]], v1: Option<&[&str]>) -> CatalogEntry {
    CatalogEntry {
        case,
        v1: v1.map(qvec),
        group: group(gens, v1),
    }
}

const H1: &[&str] = &["1", "0", "0"];
const H2: &[&str] = &["1/2", "1/2*r3", "0"];
const C: &[&str] = &["0", "0", "1"];

/// Representatives in the column order of the reference tables.
pub fn hexagonal_catalog() -> Vec<CatalogEntry> {
    use CaseId::*;
    let mut out = vec![
        entry(C1, &[H1, H2, &["1/2*r2", "0", "1"]], None),
        // rhombohedral, vertically rescaled to c = 1
        entry(C2_1, &[&["1", "0", "1/3"], &["-1/2", "-1/2*r3", "1/3"], C], None),
        // primitive cubic, vertically rescaled to c = 1
        entry(C2_2, &[H1, &["1/2", "1/6*r3", "-1/3"], C], None),
        entry(C3_1, &[H1, H2, C], None),
        entry(C3_2, &[&["1", "0", "1/2"], H2, C], None),
        entry(C3_3, &[&["1/2", "0", "1/2"], H2, C], None),
    ];
    for v1 in [&["0", "0"], &["1/2", "0"], &["1/4", "1/4*r3"], &["3/4", "1/4*r3"]] {
        out.push(entry(C4_1, &[H1, H2, C], Some(v1)));
    }
    out.push(entry(C4_2, &[&["2", "0", "0"], H2, C], Some(&["1", "0"])));
    out.push(entry(C4_3, &[H1, &["1", "r3", "0"], C], Some(&["1/2", "1/2*r3"])));

    let case5: [(CaseId, &[&str], &[&str], &[&[&str]]); 5] = [
        (C5_1, &["1", "0"], &["1/2", "1/2*r3"], &[&["0", "0"], &["1", "0"]]),
        (
            C5_2,
            &["1", "0"],
            &["1", "r3"],
            &[&["1/2", "1/2*r3"], &["3/2", "1/2*r3"]],
        ),
        (
            C5_3,
            &["3/4", "-1/4*r3"],
            &["1/2", "1/2*r3"],
            &[&["1/4", "1/4*r3"], &["1", "0"]],
        ),
        (
            C5_4,
            &["1/2", "0"],
            &["1", "r3"],
            &[&["1/2", "1/2*r3"], &["1", "1/2*r3"]],
        ),
        (
            C5_5,
            &["1/2", "0"],
            &["1/2", "1/2*r3"],
            &[&["0", "0"], &["1/2", "0"], &["1/4", "1/4*r3"], &["3/4", "1/4*r3"]],
        ),
    ];
    for (case, a, b, v1s) in case5 {
        let ga: &[&str] = &[a[0], a[1], "1/2"];
        let gb: &[&str] = &[b[0], b[1], "0"];
        for v1 in v1s {
            out.push(entry(case, &[ga, gb, C], Some(v1)));
        }
    }
    out
}
