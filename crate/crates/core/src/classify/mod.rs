//! Which 3D groups project onto a prescribed planar lattice, and how the
//! projected lattice changes with the band width.

pub mod catalog;
mod names;
pub mod tables;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

pub use names::{BaseLattice, LatticeName, Scale};

use crate::crystal::{CrystalGroup, SigmaData};
use crate::error::{Error, Result};
use crate::exactnum::QF;
use crate::lattice::{self, holohedry, projected, reflection_sigma, BandSpec, ZModule};
use crate::linalg::{self, hnf_with_transform, last, qvec, solve_integer, QVec};
use crate::projection::period_module;

/// Residue class of a band width modulo the vertical period `c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum WidthClass {
    /// `y0 ≡ 0`
    A,
    /// `y0 ≡ y1`
    B,
    /// `y0 ≡ y1 + c/2`
    C,
    /// every other width
    O,
}

impl fmt::Display for WidthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

pub fn width_class(y0: &QF, c: &QF, y1: Option<&QF>) -> Result<WidthClass> {
    if !c.is_positive() {
        return Err(Error::Precondition("vertical period must be positive".into()));
    }
    let r = y0.rem_euclid(c);
    if r.is_zero() {
        return Ok(WidthClass::A);
    }
    if let Some(y1) = y1 {
        if r == y1.rem_euclid(c) {
            return Ok(WidthClass::B);
        }
        if r == (y1 + &(c * &QF::frac(1, 2))).rem_euclid(c) {
            return Ok(WidthClass::C);
        }
    }
    Ok(WidthClass::O)
}

/// Two sample widths per class; `B` and `C` only when `y1` is given.
pub fn class_representatives(c: &QF, y1: Option<&QF>) -> Result<Vec<(WidthClass, [QF; 2])>> {
    let k = |n: i64| c * &QF::from_int(n);
    let mut out = vec![(WidthClass::A, [k(1), k(2)])];
    if let Some(y1) = y1 {
        let y = y1.rem_euclid(c);
        let half = &y + &(c * &QF::frac(1, 2));
        out.push((WidthClass::B, [&y + &k(1), &y + &k(2)]));
        out.push((WidthClass::C, [&half + &k(1), &half + &k(2)]));
    }
    let fractions = ["1/3", "1/14*r2", "1/5", "2/7", "1/10*r3", "3/11", "1/7*r6"];
    let mut others = Vec::new();
    for s in fractions {
        let y = c * &crate::exactnum::qf(s);
        if width_class(&y, c, y1)? == WidthClass::O {
            others.push(y);
        }
        if others.len() == 2 {
            break;
        }
    }
    let [o1, o2]: [QF; 2] = others
        .try_into()
        .map_err(|_| Error::Precondition("no generic width found".into()))?;
    out.push((WidthClass::O, [o1, o2]));
    Ok(out)
}

/// `D(L) = {(m, n) : m a3 + n b3 ≡ 0 (mod c)}`, as an HNF basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DModule {
    pub gens: Vec<[BigInt; 2]>,
}

impl DModule {
    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Builds the canonical form of the module spanned by `pairs`.
    pub fn from_pairs(pairs: &[[BigInt; 2]]) -> Self {
        let rows: Vec<Vec<BigInt>> = pairs.iter().map(|p| p.to_vec()).collect();
        if rows.is_empty() {
            return DModule { gens: Vec::new() };
        }
        let (h, _, rank) = hnf_with_transform(&rows);
        DModule {
            gens: h[..rank].iter().map(|r| [r[0].clone(), r[1].clone()]).collect(),
        }
    }
}

pub fn d_module_of(a3: &QF, b3: &QF, c: &QF) -> Result<DModule> {
    if !c.is_positive() {
        return Err(Error::Precondition("vertical period must be positive".into()));
    }
    let rows: Vec<Vec<BigRational>> = [a3, b3, c].iter().map(|x| x.rationalize().to_vec()).collect();
    let zero = QF::zero().rationalize();
    let sol = solve_integer(&rows, &zero);
    let pairs: Vec<[BigInt; 2]> = sol
        .kernel
        .iter()
        .map(|k| [k[0].clone(), k[1].clone()])
        .collect();
    Ok(DModule::from_pairs(&pairs))
}

/// `D(L)` for a basis `a = (â, a3)`, `b = (b̂, b3)` and vertical period `c`.
pub fn d_module_for_basis(a: &[QF], b: &[QF], c: &QF) -> Result<DModule> {
    d_module_of(last(a), last(b), c)
}

/// `D(L)` relative to the canonical basis of `P(L)`.
pub fn d_module(l: &ZModule) -> Result<DModule> {
    let (a3, b3, c) = normal_heights(l)?;
    d_module_of(&a3, &b3, &c)
}

/// `(a3, b3, c)` for the canonical basis `â, b̂` of `P(L)`, heights reduced into `[0, c)`.
fn normal_heights(l: &ZModule) -> Result<(QF, QF, QF)> {
    if l.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: l.dim(),
        });
    }
    let c = lattice::vertical_period(l)?.ok_or(Error::NoVerticalVector)?;
    let pl = projected(l);
    let mut hs = Vec::new();
    for v in pl.basis() {
        let h = lattice::lift(l, v)?.expect("projected vectors lift");
        hs.push(h.rem_euclid(&c));
    }
    Ok((hs[0].clone(), hs[1].clone(), c))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseId {
    #[serde(rename = "1")]
    C1,
    #[serde(rename = "2.1")]
    C2_1,
    #[serde(rename = "2.2")]
    C2_2,
    #[serde(rename = "3.1")]
    C3_1,
    #[serde(rename = "3.2")]
    C3_2,
    #[serde(rename = "3.3")]
    C3_3,
    #[serde(rename = "4.1")]
    C4_1,
    #[serde(rename = "4.2")]
    C4_2,
    #[serde(rename = "4.3")]
    C4_3,
    #[serde(rename = "5.1")]
    C5_1,
    #[serde(rename = "5.2")]
    C5_2,
    #[serde(rename = "5.3")]
    C5_3,
    #[serde(rename = "5.4")]
    C5_4,
    #[serde(rename = "5.5")]
    C5_5,
}

impl CaseId {
    pub const ALL: [CaseId; 14] = [
        CaseId::C1,
        CaseId::C2_1,
        CaseId::C2_2,
        CaseId::C3_1,
        CaseId::C3_2,
        CaseId::C3_3,
        CaseId::C4_1,
        CaseId::C4_2,
        CaseId::C4_3,
        CaseId::C5_1,
        CaseId::C5_2,
        CaseId::C5_3,
        CaseId::C5_4,
        CaseId::C5_5,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::C1 => "1",
            CaseId::C2_1 => "2.1",
            CaseId::C2_2 => "2.2",
            CaseId::C3_1 => "3.1",
            CaseId::C3_2 => "3.2",
            CaseId::C3_3 => "3.3",
            CaseId::C4_1 => "4.1",
            CaseId::C4_2 => "4.2",
            CaseId::C4_3 => "4.3",
            CaseId::C5_1 => "5.1",
            CaseId::C5_2 => "5.2",
            CaseId::C5_3 => "5.3",
            CaseId::C5_4 => "5.4",
            CaseId::C5_5 => "5.5",
        }
    }

    pub fn has_sigma_coset(self) -> bool {
        self.as_str().starts_with('4') || self.as_str().starts_with('5')
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A case of the decision tree with its normalized parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseLabel {
    pub id: CaseId,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<QF>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a3: Option<QF>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b3: Option<QF>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub v1: Option<QVec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y1: Option<QF>,
}

/// An ordered basis `(a0, b0)` of the target planar lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Target {
    pub a0: QVec,
    pub b0: QVec,
}

impl Target {
    pub fn new(a0: QVec, b0: QVec) -> Result<Self> {
        let t = Target { a0, b0 };
        if t.a0.len() != 2 || t.b0.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: t.a0.len().max(t.b0.len()),
            });
        }
        if !t.module()?.is_lattice() {
            return Err(Error::NotFullRank { rank: 1, dim: 2 });
        }
        Ok(t)
    }

    pub fn hexagonal() -> Self {
        Target {
            a0: qvec(&["1", "0"]),
            b0: qvec(&["1/2", "1/2*r3"]),
        }
    }

    pub fn module(&self) -> Result<ZModule> {
        ZModule::canonicalize(&[self.a0.clone(), self.b0.clone()], 2)
    }
}

/// `L̃_{y0}` sampled at two widths of every class, checked constant per class.
pub fn sampled_periods(g: &CrystalGroup) -> Result<Vec<(WidthClass, ZModule)>> {
    if g.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: g.dim(),
        });
    }
    let c = lattice::vertical_period(g.lattice())?.unwrap_or_else(QF::one);
    let y1 = match g.sigma_data()? {
        SigmaData::InJ { y1, .. } => Some(y1),
        SigmaData::NotInJ => None,
    };
    let mut out = Vec::new();
    for (class, widths) in class_representatives(&c, y1.as_ref())? {
        let first = period_module(g, &BandSpec::new(widths[0].clone())?)?.module;
        let second = period_module(g, &BandSpec::new(widths[1].clone())?)?.module;
        if first != second {
            return Err(Error::Precondition(format!(
                "projected lattice is not constant on class {class}"
            )));
        }
        out.push((class, first));
    }
    Ok(out)
}

fn certificate(samples: &[(WidthClass, ZModule)]) -> String {
    samples
        .iter()
        .map(|(c, m)| format!("{c}: {}", LatticeName::identify(m)))
        .collect::<Vec<_>>()
        .join("; ")
}

fn span(vs: &[QVec]) -> ZModule {
    ZModule::canonicalize(vs, 2).expect("planar vectors")
}

fn half(v: &[QF]) -> QVec {
    linalg::scale(v, &QF::frac(1, 2))
}

fn twice(v: &[QF]) -> QVec {
    linalg::scale(v, &QF::from_int(2))
}

/// Ordered bases `(αa0, αb0)` for `α` in the holohedry of the target.
fn frames(target: &Target) -> Result<Vec<(QVec, QVec)>> {
    let m = target.module()?;
    Ok(holohedry(&m)?
        .iter()
        .map(|alpha| (alpha.apply(&target.a0), alpha.apply(&target.b0)))
        .collect())
}

fn case4(pl: &ZModule, a: &[QF], b: &[QF]) -> Option<CaseId> {
    if *pl == span(&[a.to_vec(), b.to_vec()]) {
        Some(CaseId::C4_1)
    } else if *pl == span(&[twice(a), b.to_vec()]) {
        Some(CaseId::C4_2)
    } else if *pl == span(&[a.to_vec(), twice(b)]) {
        Some(CaseId::C4_3)
    } else {
        None
    }
}

fn case5(pl: &ZModule, r0: &ZModule, a: &[QF], b: &[QF]) -> Option<CaseId> {
    let (a, b) = (a.to_vec(), b.to_vec());
    let patterns = [
        (CaseId::C5_1, [a.clone(), b.clone()], [twice(&a), b.clone()]),
        (CaseId::C5_2, [a.clone(), twice(&b)], [twice(&a), twice(&b)]),
        (
            CaseId::C5_3,
            [linalg::sub(&a, &half(&b)), b.clone()],
            [twice(&a), b.clone()],
        ),
        (CaseId::C5_4, [half(&a), twice(&b)], [a.clone(), twice(&b)]),
        (CaseId::C5_5, [half(&a), b.clone()], [a.clone(), b.clone()]),
    ];
    patterns
        .into_iter()
        .find(|(_, p, r)| *pl == span(p) && *r0 == span(r))
        .map(|(id, _, _)| id)
}

/// Places `G` in the case tree relative to the target lattice.
pub fn classify_case(g: &CrystalGroup, target: &Target) -> Result<CaseLabel> {
    let m = target.module()?;
    let samples = sampled_periods(g)?;
    if !samples.iter().any(|(_, s)| *s == m) {
        return Err(Error::NoWidthProjects {
            certificate: certificate(&samples),
        });
    }
    let no_case = || Error::NoWidthProjects {
        certificate: certificate(&samples),
    };
    let l = g.lattice();
    let mut label = CaseLabel {
        id: CaseId::C1,
        c: None,
        a3: None,
        b3: None,
        v1: None,
        y1: None,
    };
    let Some(_) = lattice::vertical_period(l)? else {
        return Ok(label);
    };
    let (a3, b3, c) = normal_heights(l)?;
    label.c = Some(c);
    label.a3 = Some(a3);
    label.b3 = Some(b3);
    let pl = projected(l);
    let r0 = lattice::slice(l, &QF::zero())?.module;

    if !l.preserved_by(&reflection_sigma(3)) {
        label.id = if pl == m {
            CaseId::C2_1
        } else if r0.rank() == 2 && r0 == m {
            CaseId::C2_2
        } else {
            return Err(no_case());
        };
        return Ok(label);
    }

    let sigma = g.sigma_data()?;
    let SigmaData::InJ { v1, y1 } = sigma.clone() else {
        label.id = case3(&pl, &r0, &m).ok_or_else(no_case)?;
        return Ok(label);
    };
    if g.sigma_in_lattice() {
        label.id = case3(&pl, &r0, &m).ok_or_else(no_case)?;
        return Ok(label);
    }
    label.v1 = Some(v1);
    label.y1 = Some(y1);
    let frames = frames(target)?;
    let id = if r0 == pl {
        frames.iter().find_map(|(a, b)| case4(&pl, a, b))
    } else {
        frames
            .iter()
            .find_map(|(a, b)| case5(&pl, &r0, a, b).or_else(|| case5(&pl, &r0, b, a)))
    };
    label.id = id.ok_or_else(no_case)?;
    Ok(label)
}

fn case3(pl: &ZModule, r0: &ZModule, m: &ZModule) -> Option<CaseId> {
    if r0 == pl {
        (pl == m).then_some(CaseId::C3_1)
    } else if pl == m {
        Some(CaseId::C3_2)
    } else if r0 == m {
        Some(CaseId::C3_3)
    } else {
        None
    }
}

/// Named projected lattice per width class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HexProfile {
    pub entries: Vec<(WidthClass, LatticeName)>,
}

impl HexProfile {
    pub fn get(&self, class: WidthClass) -> Option<&LatticeName> {
        self.entries.iter().find(|(c, _)| *c == class).map(|(_, n)| n)
    }
}

pub fn hex_profile(g: &CrystalGroup) -> Result<HexProfile> {
    let entries = sampled_periods(g)?
        .into_iter()
        .map(|(c, m)| (c, LatticeName::identify(&m)))
        .collect();
    Ok(HexProfile { entries })
}
