pub mod error;
pub mod classify;
pub mod crystal;
pub mod exactnum;
pub mod gallery;
pub mod io;
pub mod lattice;
pub mod pattern;
pub mod projection;
pub mod linalg;

pub use crystal::{CrystalGroup, OrthoElem, SigmaData, Violation};
pub use error::{Error, Result};
pub use exactnum::QF;
pub use lattice::{BandSpec, ZModule};
pub use linalg::{QMat, QVec};
pub use pattern::{Wave, WaveSum, Window};
