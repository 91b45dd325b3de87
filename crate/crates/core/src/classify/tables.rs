//! The reference profile tables, transcribed literally, plus the list of
//! entries whose literal value contradicts the surrounding derivation.
//!
//! Width-class sets are written as in the tables: `R+` for every width,
//! unions like `A∪B`, and `O` for whatever the column does not list.

use std::collections::BTreeMap;

use super::catalog::CatalogEntry;
use super::{hex_profile, CaseId, Result, WidthClass};

#[derive(Clone, Copy, Debug)]
pub struct Column {
    pub case: CaseId,
    /// Column header `v1` as printed, in QF literals.
    pub v1: Option<[&'static str; 2]>,
    /// `(lattice name, width classes)` rows present in the column.
    pub rows: &'static [(&'static str, &'static str)],
}

const fn col(
    case: CaseId,
    v1: Option<[&'static str; 2]>,
    rows: &'static [(&'static str, &'static str)],
) -> Column {
    Column { case, v1, rows }
}

use CaseId::*;

const H: &str = "H";
const REC1: &str = "rec I";
const REC2: &str = "rec II";
const REC3: &str = "rec III";
const ROT_P: &str = "R_{pi/3} rec I";
const ROT_M: &str = "R_{-pi/3} rec I";
const TWO_ROT_P: &str = "2 R_{pi/3} rec I";
const TWO_REC1: &str = "2 rec I";
const TWO_H: &str = "2 H";
const HALF_H: &str = "1/2 H";

/// Every column of the reference tables, in order.
pub const COLUMNS: [Column; 24] = [
    col(C1, None, &[(H, "R+")]),
    col(C2_1, None, &[(H, "A"), ("sublattice", "O")]),
    col(C2_2, None, &[(H, "O"), ("superlattice", "A")]),
    col(C3_1, None, &[(H, "R+")]),
    col(C3_2, None, &[(H, "A"), (TWO_ROT_P, "O")]),
    col(C3_3, None, &[(H, "O"), (REC1, "A")]),
    col(C4_1, Some(["0", "0"]), &[(H, "R+")]),
    col(C4_1, Some(["1/2", "0"]), &[(H, "O"), (REC1, "A∪B")]),
    col(C4_1, Some(["1/4", "1/4*r3"]), &[(H, "O"), (ROT_P, "A∪B")]),
    col(C4_1, Some(["3/2", "1/2*r3"]), &[(H, "O"), (TWO_REC1, "A∪B")]),
    col(C4_2, Some(["1/2", "0"]), &[(H, "A∪B"), (TWO_ROT_P, "O")]),
    col(C4_3, Some(["1/2", "1/2*r3"]), &[(H, "A∪B"), (TWO_REC1, "O")]),
    col(C5_1, Some(["0", "0"]), &[(H, "A∪C"), (ROT_M, "O")]),
    col(C5_1, Some(["1", "0"]), &[(H, "A∪B"), (ROT_M, "O")]),
    col(C5_2, Some(["1/2", "1/2*r3"]), &[(H, "A"), (TWO_H, "O"), (TWO_ROT_P, "C"), (ROT_M, "B")]),
    col(C5_2, Some(["3/2", "1/2*r3"]), &[(H, "A"), (TWO_H, "O"), (TWO_ROT_P, "B"), (ROT_M, "C")]),
    col(C5_3, Some(["1/4", "1/4*r3"]), &[(H, "C"), (REC3, "B"), (ROT_P, "A"), (ROT_M, "O")]),
    col(C5_3, Some(["1", "0"]), &[(H, "B"), (REC3, "C"), (ROT_P, "A"), (ROT_M, "O")]),
    col(C5_4, Some(["1/2", "1/2*r3"]), &[(H, "B"), (REC1, "A"), (TWO_REC1, "O"), (REC2, "C")]),
    col(C5_4, Some(["1", "1/2*r3"]), &[(H, "C"), (REC1, "A"), (TWO_REC1, "O"), (REC2, "B")]),
    col(C5_5, Some(["0", "0"]), &[(H, "O"), (REC1, "A∪C")]),
    col(C5_5, Some(["1/2", "0"]), &[(H, "O"), (REC1, "A∪B")]),
    col(C5_5, Some(["1/4", "1/4*r3"]), &[(H, "O"), (HALF_H, "A"), (ROT_P, "B"), (ROT_M, "C")]),
    col(C5_5, Some(["3/4", "1/4*r3"]), &[(H, "O"), (HALF_H, "A"), (ROT_P, "C"), (ROT_M, "B")]),
];

/// A literal table entry that is replaced before comparison.
#[derive(Clone, Copy, Debug)]
pub struct Erratum {
    pub column: usize,
    pub class: WidthClass,
    pub literal: &'static str,
    pub corrected: &'static str,
    /// The literal lattice cannot occur at any width: it fails
    /// `R_0(L) ⊆ L̃_{y0} ⊆ {P(L), P(v_σ)}_Z`.
    pub impossible: bool,
    pub reason: &'static str,
}

const fn erratum(
    column: usize,
    class: WidthClass,
    literal: &'static str,
    corrected: &'static str,
    impossible: bool,
    reason: &'static str,
) -> Erratum {
    Erratum {
        column,
        class,
        literal,
        corrected,
        impossible,
        reason,
    }
}

const HALF_SUM: &str = "v1 = (a0+b0)/2 gives {a0, (a0+b0)/2}, which is R_{-pi/3} rec I; \
    the printed 2 rec I does not contain P(L) = H";
const ROW_SHIFT: &str = "the row printed as R_{-pi/3} rec I holds {2a0, b0}, which the other \
    tables call 2 R_{pi/3} rec I; R_{-pi/3} rec I strictly contains H and cannot lie in {P(L), v1}";
const ROW_SHIFT_2: &str = "with the rows shifted, the row printed as 2 R_{pi/3} rec I holds \
    {2a0, a0+b0} = 2 R_{-pi/3} rec I";

pub const ERRATA: &[Erratum] = &[
    erratum(9, WidthClass::A, TWO_REC1, "R_{-pi/3} rec I", true, HALF_SUM),
    erratum(9, WidthClass::B, TWO_REC1, "R_{-pi/3} rec I", true, HALF_SUM),
    erratum(12, WidthClass::B, ROT_M, TWO_ROT_P, true, ROW_SHIFT),
    erratum(12, WidthClass::O, ROT_M, TWO_ROT_P, true, ROW_SHIFT),
    erratum(13, WidthClass::C, ROT_M, TWO_ROT_P, true, ROW_SHIFT),
    erratum(13, WidthClass::O, ROT_M, TWO_ROT_P, true, ROW_SHIFT),
    erratum(14, WidthClass::B, ROT_M, TWO_ROT_P, true, ROW_SHIFT),
    erratum(14, WidthClass::C, TWO_ROT_P, "2 R_{-pi/3} rec I", false, ROW_SHIFT_2),
    erratum(15, WidthClass::B, TWO_ROT_P, "2 R_{-pi/3} rec I", false, ROW_SHIFT_2),
    erratum(15, WidthClass::C, ROT_M, TWO_ROT_P, true, ROW_SHIFT),
    erratum(16, WidthClass::O, ROT_M, TWO_ROT_P, true, ROW_SHIFT),
    erratum(17, WidthClass::O, ROT_M, TWO_ROT_P, true, ROW_SHIFT),
];

/// A column whose printed `v1` is not the one the derivation needs.
#[derive(Clone, Copy, Debug)]
pub struct HeaderErratum {
    pub column: usize,
    pub v1: [&'static str; 2],
    pub reason: &'static str,
}

pub const HEADER_ERRATA: &[HeaderErratum] = &[
    HeaderErratum {
        column: 9,
        v1: ["3/4", "1/4*r3"],
        reason: "(3/2, √3/2) lies in H, which would make the column identical to v1 = (0, 0)",
    },
    HeaderErratum {
        column: 10,
        v1: ["1", "0"],
        reason: "the lattice is {(2a0, 0), (b0, 0), c} with v1 = a0; with L = H × cZ and \
            v1 = (1/2, 0) the column would repeat case 4.1",
    },
];

/// The `v1` used for a column after header errata.
pub fn column_v1(column: usize) -> Option<[&'static str; 2]> {
    HEADER_ERRATA
        .iter()
        .find(|h| h.column == column)
        .map(|h| h.v1)
        .or(COLUMNS[column].v1)
}

/// Module of the named lattice printed in the tables.
pub fn named_module(name: &str) -> Option<crate::lattice::ZModule> {
    use super::{BaseLattice, Scale};
    let (scale, rest) = if let Some(r) = name.strip_prefix("2 ") {
        (Scale::Two, r)
    } else if let Some(r) = name.strip_prefix("1/2 ") {
        (Scale::Half, r)
    } else {
        (Scale::One, name)
    };
    let base = BaseLattice::ALL.into_iter().find(|b| {
        super::LatticeName::Named(Scale::One, *b).kind() == rest
    })?;
    Some(base.module().scaled(&scale.factor()))
}

fn classes_of(set: &str) -> Vec<WidthClass> {
    set.split('∪')
        .map(|s| match s.trim() {
            "A" => WidthClass::A,
            "B" => WidthClass::B,
            "C" => WidthClass::C,
            "O" => WidthClass::O,
            other => panic!("unknown width class {other}"),
        })
        .collect()
}

impl Column {
    fn applicable(&self) -> Vec<WidthClass> {
        if self.case.has_sigma_coset() {
            vec![WidthClass::A, WidthClass::B, WidthClass::C, WidthClass::O]
        } else {
            vec![WidthClass::A, WidthClass::O]
        }
    }

    /// The literal column as one name per applicable width class.
    pub fn expand(&self) -> BTreeMap<WidthClass, String> {
        let mut out = BTreeMap::new();
        let mut other = None;
        for (name, set) in self.rows {
            if *set == "R+" {
                other = Some(name.to_string());
                continue;
            }
            for c in classes_of(set) {
                if c == WidthClass::O {
                    other = Some(name.to_string());
                } else {
                    out.insert(c, name.to_string());
                }
            }
        }
        let other = other.expect("every column has an O or R+ row");
        for c in self.applicable() {
            out.entry(c).or_insert_with(|| other.clone());
        }
        out
    }
}

/// The expanded column with errata applied.
pub fn corrected(column: usize) -> BTreeMap<WidthClass, String> {
    let mut m = COLUMNS[column].expand();
    for e in ERRATA.iter().filter(|e| e.column == column) {
        m.insert(e.class, e.corrected.to_string());
    }
    m
}

/// The computed profile of a catalog entry as `class → name kind`.
pub fn computed(entry: &CatalogEntry) -> Result<BTreeMap<WidthClass, String>> {
    Ok(hex_profile(&entry.group)?
        .entries
        .into_iter()
        .map(|(c, n)| (c, n.kind()))
        .collect())
}

/// One disagreement between a computed profile and a table column.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Mismatch {
    pub column: usize,
    pub class: WidthClass,
    pub expected: String,
    pub computed: String,
}

/// Compares computed profiles against the tables, with or without errata.
pub fn check_tables(catalog: &[CatalogEntry], with_errata: bool) -> Result<Vec<Mismatch>> {
    let mut out = Vec::new();
    for (i, entry) in catalog.iter().enumerate() {
        let expected = if with_errata {
            corrected(i)
        } else {
            COLUMNS[i].expand()
        };
        out.extend(diff(i, &expected, &computed(entry)?));
    }
    Ok(out)
}

/// Outcome of checking one group against the column for its case.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GroupCheck {
    pub case: CaseId,
    /// The matching column, or the closest one when nothing matches.
    pub column: Option<usize>,
    pub mismatches: Vec<Mismatch>,
}

fn diff(column: usize, expected: &BTreeMap<WidthClass, String>, got: &BTreeMap<WidthClass, String>) -> Vec<Mismatch> {
    let classes: std::collections::BTreeSet<_> = expected.keys().chain(got.keys()).collect();
    classes
        .into_iter()
        .filter_map(|c| {
            let e = expected.get(c).cloned().unwrap_or_else(|| "-".into());
            let g = got.get(c).cloned().unwrap_or_else(|| "-".into());
            (e != g).then(|| Mismatch { column, class: *c, expected: e, computed: g })
        })
        .collect()
}

/// Classifies `g` against the hexagonal target and compares its profile
/// with the (corrected) columns of that case.
pub fn check_group(g: &crate::crystal::CrystalGroup) -> Result<GroupCheck> {
    let case = super::classify_case(g, &super::Target::hexagonal())?.id;
    let got: BTreeMap<WidthClass, String> =
        hex_profile(g)?.entries.into_iter().map(|(c, n)| (c, n.kind())).collect();
    let mut best: Option<(usize, Vec<Mismatch>)> = None;
    for i in (0..COLUMNS.len()).filter(|&i| COLUMNS[i].case == case) {
        let m = diff(i, &corrected(i), &got);
        if best.as_ref().map_or(true, |(_, b)| m.len() < b.len()) {
            best = Some((i, m));
        }
    }
    Ok(match best {
        Some((i, m)) => GroupCheck { case, column: Some(i), mismatches: m },
        None => GroupCheck { case, column: None, mismatches: Vec::new() },
    })
}
