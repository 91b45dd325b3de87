//! Crystallographic groups stored as a translation lattice plus one coset
//! representative `(v, δ)` per point-group element.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::QF;
use crate::lattice::{self, reflection_sigma, ZModule};
use crate::linalg::{self, fmt_vec, horizontal, is_zero_vec, last, QMat, QVec};

/// An isometry `x ↦ δx + v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthoElem {
    pub delta: QMat,
    pub v: QVec,
}

impl OrthoElem {
    pub fn new(delta: QMat, v: QVec) -> Self {
        OrthoElem { delta, v }
    }

    pub fn apply(&self, x: &[QF]) -> QVec {
        linalg::add(&self.delta.apply(x), &self.v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupSpec", into = "GroupSpec")]
pub struct CrystalGroup {
    lattice: ZModule,
    reps: Vec<OrthoElem>,
}

/// Wire form of a group: lattice generators plus representatives.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub dim: usize,
    pub gens: Vec<QVec>,
    #[serde(default)]
    pub reps: Vec<OrthoElem>,
}

impl TryFrom<GroupSpec> for CrystalGroup {
    type Error = Error;
    fn try_from(s: GroupSpec) -> Result<Self> {
        let lattice = ZModule::canonicalize(&s.gens, s.dim)?;
        if s.reps.is_empty() {
            return Ok(CrystalGroup::translations(lattice));
        }
        CrystalGroup::new(lattice, s.reps)
    }
}

impl From<CrystalGroup> for GroupSpec {
    fn from(g: CrystalGroup) -> Self {
        GroupSpec {
            dim: g.lattice.dim(),
            gens: g.lattice.basis().to_vec(),
            reps: g.reps,
        }
    }
}

/// A failed group axiom, with the representatives that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    LatticeNotFullRank { rank: usize, dim: usize },
    Shape { rep: usize },
    MissingIdentity,
    IdentityTranslation { rep: usize },
    NotOrthogonal { rep: usize },
    LatticeNotPreserved { rep: usize },
    DuplicateDelta { first: usize, second: usize },
    ProductNotInGroup { left: usize, right: usize },
    ProductMismatch { left: usize, right: usize, product: usize },
    MissingInverse { rep: usize },
    Sigma2a { rep: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            LatticeNotFullRank { rank, dim } => {
                write!(f, "lattice has real rank {rank} in dimension {dim}")
            }
            Shape { rep } => write!(f, "rep {rep}: matrix or vector has the wrong size"),
            MissingIdentity => write!(f, "no representative with δ = Id"),
            IdentityTranslation { rep } => write!(f, "rep {rep}: identity with v ∉ L"),
            NotOrthogonal { rep } => write!(f, "rep {rep}: δ·δᵀ ≠ Id"),
            LatticeNotPreserved { rep } => write!(f, "rep {rep}: δL ≠ L"),
            DuplicateDelta { first, second } => {
                write!(f, "reps {first} and {second} share the same δ")
            }
            ProductNotInGroup { left, right } => {
                write!(f, "δ{left}·δ{right} is not a point-group element")
            }
            ProductMismatch {
                left,
                right,
                product,
            } => write!(
                f,
                "reps {left}·{right} differ from rep {product} by a non-lattice translation"
            ),
            MissingInverse { rep } => write!(f, "rep {rep}: δ⁻¹ is not a point-group element"),
            Sigma2a { rep } => write!(f, "rep {rep}: σ-representative with (2v₁, 0) ∉ L"),
        }
    }
}

/// The `σ`-coset of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SigmaData {
    NotInJ,
    InJ { v1: QVec, y1: QF },
}

impl CrystalGroup {
    /// Builds a group, reducing every `v` into the fundamental cell of `L`.
    /// Checks shapes only; call [`CrystalGroup::validate`] for the axioms.
    pub fn new(lattice: ZModule, reps: Vec<OrthoElem>) -> Result<Self> {
        let dim = lattice.dim();
        let mut out = Vec::with_capacity(reps.len());
        for r in reps {
            if r.v.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.v.len(),
                });
            }
            if r.delta.nrows() != dim || r.delta.rows.iter().any(|row| row.len() != dim) {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.delta.nrows(),
                });
            }
            let v = lattice.reduce(&r.v);
            out.push(OrthoElem::new(r.delta, v));
        }
        Ok(CrystalGroup { lattice, reps: out })
    }

    /// The translation group `L` alone.
    pub fn translations(lattice: ZModule) -> Self {
        let dim = lattice.dim();
        CrystalGroup {
            lattice,
            reps: vec![OrthoElem::new(QMat::identity(dim), linalg::zeros(dim))],
        }
    }

    pub fn lattice(&self) -> &ZModule {
        &self.lattice
    }

    pub fn reps(&self) -> &[OrthoElem] {
        &self.reps
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn point_group(&self) -> Vec<&QMat> {
        self.reps.iter().map(|r| &r.delta).collect()
    }

    pub fn rep_of(&self, delta: &QMat) -> Option<&OrthoElem> {
        self.reps.iter().find(|r| r.delta == *delta)
    }

    /// Whether `x ↦ δx + v` belongs to the group.
    pub fn contains(&self, v: &[QF], delta: &QMat) -> bool {
        self.rep_of(delta)
            .is_some_and(|r| self.lattice.contains(&linalg::sub(v, &r.v)))
    }

    /// Every violated axiom; empty when the group is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let l = &self.lattice;
        if !l.is_lattice() {
            out.push(Violation::LatticeNotFullRank {
                rank: l.real_rank(),
                dim: l.dim(),
            });
            return out;
        }
        let dim = l.dim();
        if self.reps.iter().any(|r| r.delta.nrows() != dim || r.v.len() != dim) {
            let rep = self
                .reps
                .iter()
                .position(|r| r.delta.nrows() != dim || r.v.len() != dim)
                .unwrap_or(0);
            out.push(Violation::Shape { rep });
            return out;
        }
        match self.reps.iter().position(|r| r.delta.is_identity()) {
            None => out.push(Violation::MissingIdentity),
            Some(i) if !l.contains(&self.reps[i].v) => {
                out.push(Violation::IdentityTranslation { rep: i })
            }
            Some(_) => {}
        }
        let mut sane = vec![true; self.reps.len()];
        for (i, r) in self.reps.iter().enumerate() {
            if !r.delta.is_orthogonal() {
                out.push(Violation::NotOrthogonal { rep: i });
                sane[i] = false;
            } else if !l.preserved_by(&r.delta) {
                out.push(Violation::LatticeNotPreserved { rep: i });
            }
        }
        for i in 0..self.reps.len() {
            for j in i + 1..self.reps.len() {
                if self.reps[i].delta == self.reps[j].delta {
                    out.push(Violation::DuplicateDelta { first: i, second: j });
                }
            }
        }
        let index_of = |d: &QMat| self.reps.iter().position(|r| r.delta == *d);
        for (i, a) in self.reps.iter().enumerate() {
            for (j, b) in self.reps.iter().enumerate() {
                let delta = a.delta.mul(&b.delta);
                match index_of(&delta) {
                    None => out.push(Violation::ProductNotInGroup { left: i, right: j }),
                    Some(k) => {
                        let v = a.apply(&b.v);
                        if !l.contains(&linalg::sub(&v, &self.reps[k].v)) {
                            out.push(Violation::ProductMismatch {
                                left: i,
                                right: j,
                                product: k,
                            });
                        }
                    }
                }
            }
            if sane[i] && index_of(&a.delta.transpose()).is_none() {
                out.push(Violation::MissingInverse { rep: i });
            }
        }
        let sigma = reflection_sigma(dim);
        if let Some(i) = index_of(&sigma) {
            let mut twice = linalg::scale_int(&horizontal(&self.reps[i].v), &2.into());
            twice.push(QF::zero());
            if !l.contains(&twice) {
                out.push(Violation::Sigma2a { rep: i });
            }
        }
        out
    }

    /// The `σ`-representative `((v1, y1), σ)` with `y1` reduced modulo the
    /// height module of `L` and `v1` modulo `R_0(L)`.
    pub fn sigma_data(&self) -> Result<SigmaData> {
        let dim = self.dim();
        let Some(rep) = self.rep_of(&reflection_sigma(dim)) else {
            return Ok(SigmaData::NotInJ);
        };
        let heights = lattice::height_module(&self.lattice);
        let g = heights
            .basis()
            .first()
            .map(|h| h[0].abs())
            .filter(|_| heights.is_discrete())
            .ok_or_else(|| Error::Precondition("σ ∈ J needs discrete heights".into()))?;
        let y = last(&rep.v);
        let y1 = y.rem_euclid(&g);
        let slice = lattice::slice(&self.lattice, &(&y1 - y))?;
        let shift = slice.rep.ok_or_else(|| Error::Precondition("height not attained".into()))?;
        let v1 = slice
            .module
            .reduce(&linalg::add(&horizontal(&rep.v), &shift));
        Ok(SigmaData::InJ { v1, y1 })
    }

    /// `L_σ = v_σ + L`, or `None` when `σ ∉ J`.
    pub fn sigma_translation(&self) -> Option<&QVec> {
        self.rep_of(&reflection_sigma(self.dim())).map(|r| &r.v)
    }

    /// True when `v_σ ∈ L` (the σ-coset is the lattice itself).
    pub fn sigma_in_lattice(&self) -> bool {
        self.sigma_translation()
            .is_some_and(|v| is_zero_vec(v) || self.lattice.contains(v))
    }
}

impl fmt::Display for CrystalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L = {{")?;
        for (i, b) in self.lattice.basis().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_vec(b))?;
        }
        write!(f, "}}, |J| = {}", self.reps.len())
    }
}

/// `α_+ = diag(α, 1)` or `α_- = diag(α, −1)`.
pub fn lift(alpha: &QMat, plus: bool) -> QMat {
    alpha.block_with(if plus { QF::one() } else { -QF::one() })
}
