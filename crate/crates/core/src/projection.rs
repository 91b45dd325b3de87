//! Symmetries shared by every projection `Π_{y0} f` and every restriction
//! `Φ_r f` of the functions invariant under a crystallographic group.

use serde::Serialize;

use crate::crystal::{lift, CrystalGroup};
use crate::error::{Error, Result};
use crate::exactnum::QF;
use crate::lattice::{self, projected, reflection_sigma, BandSpec, ZModule};
use crate::linalg::{self, horizontal, last, QMat, QVec};

/// Which sufficient condition established a symmetry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Clause {
    /// `((v, 0), α_+) ∈ Γ`
    A,
    /// `((v, y0), α_-) ∈ Γ`, or `((v, 2r), α_-)` for restrictions
    B,
    /// `(0, y0) ∈ L` and `((v, y1), α_+) ∈ Γ`
    C,
    /// `(0, y0) ∈ L` and `((v, y1), α_-) ∈ Γ`
    D,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ProjSymResult {
    pub holds: bool,
    pub clause: Option<Clause>,
}

impl ProjSymResult {
    fn from(clause: Option<Clause>) -> Self {
        ProjSymResult {
            holds: clause.is_some(),
            clause,
        }
    }
}

fn check_shapes(g: &CrystalGroup, v_alpha: &[QF], alpha: &QMat) -> Result<()> {
    let n = g.dim() - 1;
    if v_alpha.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: v_alpha.len(),
        });
    }
    if alpha.nrows() != n || !alpha.is_square() {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: alpha.nrows(),
        });
    }
    Ok(())
}

fn at_height(x: &[QF], y: QF) -> QVec {
    let mut v = x.to_vec();
    v.push(y);
    v
}

/// `((v, y), α) ∈ Γ` for some height `y`.
fn contains_some_height(g: &CrystalGroup, v: &[QF], alpha: &QMat) -> bool {
    g.rep_of(alpha).is_some_and(|r| {
        projected(g.lattice()).contains(&linalg::sub(v, &horizontal(&r.v)))
    })
}

fn vertical_in_lattice(g: &CrystalGroup, y: &QF) -> bool {
    let n = g.dim() - 1;
    g.lattice().contains(&at_height(&linalg::zeros(n), y.clone()))
}

/// Whether every `Π_{y0} f` is invariant under `x ↦ αx + v_α`.
pub fn proj_symmetry(
    g: &CrystalGroup,
    band: &BandSpec,
    v_alpha: &[QF],
    alpha: &QMat,
) -> Result<ProjSymResult> {
    check_shapes(g, v_alpha, alpha)?;
    let y0 = band.width();
    let plus = lift(alpha, true);
    let minus = lift(alpha, false);
    let clause = if g.contains(&at_height(v_alpha, QF::zero()), &plus) {
        Some(Clause::A)
    } else if g.contains(&at_height(v_alpha, y0.clone()), &minus) {
        Some(Clause::B)
    } else if vertical_in_lattice(g, y0) && contains_some_height(g, v_alpha, &plus) {
        Some(Clause::C)
    } else if vertical_in_lattice(g, y0) && contains_some_height(g, v_alpha, &minus) {
        Some(Clause::D)
    } else {
        None
    };
    Ok(ProjSymResult::from(clause))
}

/// Whether every `Φ_r f` is invariant under `x ↦ αx + v_α`.
pub fn restr_symmetry(
    g: &CrystalGroup,
    r: &QF,
    v_alpha: &[QF],
    alpha: &QMat,
) -> Result<ProjSymResult> {
    check_shapes(g, v_alpha, alpha)?;
    let two_r = QF::from_int(2) * r;
    let clause = if g.contains(&at_height(v_alpha, QF::zero()), &lift(alpha, true)) {
        Some(Clause::A)
    } else if g.contains(&at_height(v_alpha, two_r), &lift(alpha, false)) {
        Some(Clause::B)
    } else {
        None
    };
    Ok(ProjSymResult::from(clause))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Derivation {
    /// `(0, y0) ∈ L`: generated by `P(L) ∪ P(L_σ)`
    WithVertical,
    /// `(0, y0) ∉ L`: generated by `R_0(L) ∪ R_{y0}(L_σ)`
    WithoutVertical,
}

/// The module of periods common to all projected invariant functions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodModule {
    pub module: ZModule,
    pub derivation: Derivation,
}

impl PeriodModule {
    pub fn rank(&self) -> usize {
        self.module.rank()
    }
}

/// The slice `R_y(v + L)` as a single representative, if nonempty.
fn coset_slice(l: &ZModule, v: &[QF], y: &QF) -> Result<Option<QVec>> {
    let s = lattice::slice(l, &(y - last(v)))?;
    Ok(s.rep.map(|x| linalg::add(&horizontal(v), &x)))
}

pub fn period_module(g: &CrystalGroup, band: &BandSpec) -> Result<PeriodModule> {
    let l = g.lattice();
    let y0 = band.width();
    let v_sigma = g.sigma_translation();
    if vertical_in_lattice(g, y0) {
        let mut gens: Vec<QVec> = projected(l).basis().to_vec();
        gens.extend(v_sigma.map(|v| horizontal(v)));
        Ok(PeriodModule {
            module: ZModule::canonicalize(&gens, g.dim() - 1)?,
            derivation: Derivation::WithVertical,
        })
    } else {
        let r0 = lattice::slice(l, &QF::zero())?.module;
        let extra = match v_sigma {
            Some(v) => coset_slice(l, v, y0)?,
            None => None,
        };
        Ok(PeriodModule {
            module: r0.with(&extra.into_iter().collect::<Vec<_>>())?,
            derivation: Derivation::WithoutVertical,
        })
    }
}

/// A horizontal map together with the candidate translations `v_α`
/// realizing it, tagged by which lift (`α_+` or `α_-`) supplies each one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectedElem {
    pub alpha: QMat,
    pub candidates: Vec<(Lift, QVec)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lift {
    Plus,
    Minus,
}

fn lifted_maps(g: &CrystalGroup) -> Vec<(QMat, Lift, &QVec)> {
    g.reps()
        .iter()
        .filter_map(|r| {
            r.delta.split_vertical().map(|(alpha, s)| {
                let lift = if s > 0 { Lift::Plus } else { Lift::Minus };
                (alpha, lift, &r.v)
            })
        })
        .collect()
}

fn push_candidate(out: &mut Vec<ProjectedElem>, alpha: QMat, lift: Lift, v: QVec) {
    match out.iter_mut().find(|e| e.alpha == alpha) {
        Some(e) => e.candidates.push((lift, v)),
        None => out.push(ProjectedElem {
            alpha,
            candidates: vec![(lift, v)],
        }),
    }
}

/// Horizontal maps realized at prescribed heights: `α_+` at height 0 and
/// `α_-` at height `h`.
fn realized_at(g: &CrystalGroup, h: &QF) -> Result<Vec<ProjectedElem>> {
    let mut out = Vec::new();
    for (alpha, lift, v) in lifted_maps(g) {
        let target = match lift {
            Lift::Plus => QF::zero(),
            Lift::Minus => h.clone(),
        };
        if let Some(x) = coset_slice(g.lattice(), v, &target)? {
            push_candidate(&mut out, alpha, lift, x);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProjectedPointGroup {
    /// `{α : α_+ ∈ J or α_- ∈ J}`
    pub j0: Vec<ProjectedElem>,
    /// The point group shared by all projections.
    pub jtilde: Vec<ProjectedElem>,
}

pub fn point_group_projected(g: &CrystalGroup, band: &BandSpec) -> Result<ProjectedPointGroup> {
    let mut j0 = Vec::new();
    for (alpha, lift, v) in lifted_maps(g) {
        push_candidate(&mut j0, alpha, lift, horizontal(v));
    }
    let jtilde = if vertical_in_lattice(g, band.width()) {
        j0.clone()
    } else {
        realized_at(g, band.width())?
    };
    Ok(ProjectedPointGroup { j0, jtilde })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionGroup {
    pub lhat: ZModule,
    pub jhat: Vec<ProjectedElem>,
}

pub fn restriction_group(g: &CrystalGroup, r: &QF) -> Result<RestrictionGroup> {
    let l = g.lattice();
    let two_r = QF::from_int(2) * r;
    let r0 = lattice::slice(l, &QF::zero())?.module;
    let extra = match g.sigma_translation() {
        Some(v) => coset_slice(l, v, &two_r)?,
        None => None,
    };
    Ok(RestrictionGroup {
        lhat: r0.with(&extra.into_iter().collect::<Vec<_>>())?,
        jhat: realized_at(g, &two_r)?,
    })
}

/// `σ` restricted to the horizontal coordinates is the identity.
pub fn sigma_in_group(g: &CrystalGroup) -> bool {
    g.rep_of(&reflection_sigma(g.dim())).is_some()
}
