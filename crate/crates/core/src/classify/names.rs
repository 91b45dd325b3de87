//! Named planar lattices that occur as projections onto the hexagonal
//! lattice, matched by module equality.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::exactnum::QF;
use crate::lattice::ZModule;
use crate::linalg::{fmt_vec, qvec, QVec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseLattice {
    Hexagonal,
    RecI,
    RecII,
    RecIII,
    RotPlusRecI,
    RotMinusRecI,
}

impl BaseLattice {
    pub const ALL: [BaseLattice; 6] = [
        BaseLattice::Hexagonal,
        BaseLattice::RecI,
        BaseLattice::RecII,
        BaseLattice::RecIII,
        BaseLattice::RotPlusRecI,
        BaseLattice::RotMinusRecI,
    ];

    /// The generator pair `(a, b)`.
    pub fn generators(self) -> [QVec; 2] {
        let (a, b): (&[&str], &[&str]) = match self {
            BaseLattice::Hexagonal => (&["1", "0"], &["1/2", "1/2*r3"]),
            BaseLattice::RecI => (&["1/2", "0"], &["0", "1/2*r3"]),
            BaseLattice::RecII => (&["0", "1/2*r3"], &["1", "0"]),
            BaseLattice::RecIII => (&["1/4", "1/4*r3"], &["3/2", "-1/2*r3"]),
            BaseLattice::RotPlusRecI => (&["1/4", "1/4*r3"], &["-3/4", "1/4*r3"]),
            BaseLattice::RotMinusRecI => (&["1/4", "-1/4*r3"], &["3/4", "1/4*r3"]),
        };
        [qvec(a), qvec(b)]
    }

    pub fn module(self) -> ZModule {
        ZModule::canonicalize(&self.generators(), 2).expect("planar generators")
    }

    fn label(self) -> &'static str {
        match self {
            BaseLattice::Hexagonal => "H",
            BaseLattice::RecI => "rec I",
            BaseLattice::RecII => "rec II",
            BaseLattice::RecIII => "rec III",
            BaseLattice::RotPlusRecI => "R_{pi/3} rec I",
            BaseLattice::RotMinusRecI => "R_{-pi/3} rec I",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scale {
    Half,
    One,
    Two,
}

impl Scale {
    pub fn factor(self) -> QF {
        match self {
            Scale::Half => QF::frac(1, 2),
            Scale::One => QF::one(),
            Scale::Two => QF::from_int(2),
        }
    }

    fn prefix(self) -> &'static str {
        match self {
            Scale::Half => "1/2 ",
            Scale::One => "",
            Scale::Two => "2 ",
        }
    }
}

/// How a computed planar module relates to the named lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeName {
    Named(Scale, BaseLattice),
    /// A proper submodule of `H`.
    Sublattice(Vec<QVec>),
    /// A module properly containing `H`.
    Superlattice(Vec<QVec>),
    Basis(Vec<QVec>),
}

impl LatticeName {
    pub fn identify(m: &ZModule) -> LatticeName {
        for base in BaseLattice::ALL {
            for scale in [Scale::One, Scale::Two, Scale::Half] {
                if base.module().scaled(&scale.factor()) == *m {
                    return LatticeName::Named(scale, base);
                }
            }
        }
        let h = BaseLattice::Hexagonal.module();
        let basis = m.basis().to_vec();
        if h.contains_module(m) {
            LatticeName::Sublattice(basis)
        } else if m.contains_module(&h) {
            LatticeName::Superlattice(basis)
        } else {
            LatticeName::Basis(basis)
        }
    }

    /// Short label; sub/superlattices collapse to their kind.
    pub fn kind(&self) -> String {
        match self {
            LatticeName::Named(s, b) => format!("{}{}", s.prefix(), b.label()),
            LatticeName::Sublattice(_) => "sublattice".into(),
            LatticeName::Superlattice(_) => "superlattice".into(),
            LatticeName::Basis(_) => "basis".into(),
        }
    }
}

fn fmt_basis(b: &[QVec]) -> String {
    let parts: Vec<String> = b.iter().map(|v| fmt_vec(v)).collect();
    format!("{{{}}}", parts.join(", "))
}

impl fmt::Display for LatticeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeName::Named(..) => f.write_str(&self.kind()),
            LatticeName::Sublattice(b) | LatticeName::Superlattice(b) => {
                write!(f, "{} {}", self.kind(), fmt_basis(b))
            }
            LatticeName::Basis(b) => f.write_str(&fmt_basis(b)),
        }
    }
}

impl Serialize for LatticeName {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
