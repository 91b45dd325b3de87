//! Finite wave sums: invariant synthesis, band projection, restriction,
//! numerical evaluation and grayscale rendering.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::crystal::CrystalGroup;
use crate::error::{Error, Result};
use crate::exactnum::QF;
use crate::lattice::dual;
use crate::linalg::{dot, horizontal, last, QVec};

/// A single term `coeff * exp(2 pi i <k, x>)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(from = "WaveSpec", into = "WaveSpec")]
pub struct Wave {
    pub k: QVec,
    pub coeff: Complex64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct WaveSpec {
    k: QVec,
    re: f64,
    im: f64,
}

impl From<WaveSpec> for Wave {
    fn from(s: WaveSpec) -> Self {
        Wave { k: s.k, coeff: Complex64::new(s.re, s.im) }
    }
}

impl From<Wave> for WaveSpec {
    fn from(w: Wave) -> Self {
        WaveSpec { k: w.k, re: w.coeff.re, im: w.coeff.im }
    }
}

impl Wave {
    pub fn new(k: QVec, coeff: Complex64) -> Self {
        Wave { k, coeff }
    }

    /// The plain wave `omega_k`.
    pub fn unit(k: QVec) -> Self {
        Wave::new(k, Complex64::new(1.0, 0.0))
    }
}

/// `exp(2 pi i t)`, with `t` reduced modulo 1 before rounding.
fn cis_turns(t: &QF) -> Complex64 {
    let frac = t.rem_euclid(&QF::one());
    Complex64::from_polar(1.0, 2.0 * PI * frac.to_f64())
}

/// Sum of waves with pairwise distinct frequencies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveSum {
    dim: usize,
    terms: Vec<Wave>,
}

impl WaveSum {
    pub fn new(dim: usize) -> Self {
        WaveSum { dim, terms: Vec::new() }
    }

    pub fn from_waves(dim: usize, waves: impl IntoIterator<Item = Wave>) -> Result<Self> {
        let mut s = WaveSum::new(dim);
        for w in waves {
            s.push(w)?;
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Wave] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds a wave, merging it into an existing term with the same frequency.
    pub fn push(&mut self, w: Wave) -> Result<()> {
        if w.k.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: w.k.len() });
        }
        match self.terms.iter_mut().find(|t| t.k == w.k) {
            Some(t) => t.coeff += w.coeff,
            None => self.terms.push(w),
        }
        Ok(())
    }

    pub fn add(&self, other: &WaveSum) -> Result<WaveSum> {
        let mut out = self.clone();
        for w in &other.terms {
            out.push(w.clone())?;
        }
        Ok(out)
    }

    pub fn scaled(&self, c: Complex64) -> WaveSum {
        WaveSum {
            dim: self.dim,
            terms: self.terms.iter().map(|t| Wave::new(t.k.clone(), t.coeff * c)).collect(),
        }
    }

    /// Frequencies in double precision, ready for repeated evaluation.
    pub fn compile(&self) -> Compiled {
        Compiled {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|t| (t.k.iter().map(QF::to_f64).collect(), t.coeff))
                .collect(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<Complex64> {
        self.compile().eval(x)
    }

    pub fn eval_real(&self, x: &[f64]) -> Result<f64> {
        Ok(self.eval(x)?.re)
    }

    fn map_vertical(&self, factor: impl Fn(&QF) -> Complex64) -> Result<WaveSum> {
        if self.dim < 2 {
            return Err(Error::Unsupported(format!("wave sum of dimension {} has no vertical axis", self.dim)));
        }
        let mut out = WaveSum::new(self.dim - 1);
        for t in &self.terms {
            out.push(Wave::new(horizontal(&t.k), t.coeff * factor(last(&t.k))))?;
        }
        Ok(out)
    }
}

#[derive(Clone, Debug)]
pub struct Compiled {
    dim: usize,
    terms: Vec<(Vec<f64>, Complex64)>,
}

impl Compiled {
    pub fn eval(&self, x: &[f64]) -> Result<Complex64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        Ok(self.eval_unchecked(x))
    }

    fn eval_unchecked(&self, x: &[f64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.terms {
            let phase: f64 = k.iter().zip(x).map(|(a, b)| a * b).sum();
            acc += c * Complex64::from_polar(1.0, 2.0 * PI * phase);
        }
        acc
    }
}

/// The orbit sum `I_k = sum over J of omega_{dk}(x) omega_{dk}(-v_d)`.
pub fn invariant_wave(k: &[QF], g: &CrystalGroup) -> Result<WaveSum> {
    if k.len() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), found: k.len() });
    }
    if !dual(g.lattice())?.contains(k) {
        return Err(Error::NotInDual);
    }
    let mut out = WaveSum::new(g.dim());
    for rep in g.reps() {
        let dk = rep.delta.apply(k);
        let coeff = cis_turns(&-dot(&dk, &rep.v));
        out.push(Wave::new(dk, coeff))?;
    }
    Ok(out)
}

/// Integral over the band `0 <= y <= y0`, term by term.
pub fn project(f: &WaveSum, y0: &QF) -> Result<WaveSum> {
    if !y0.is_positive() {
        return Err(Error::Precondition(format!("band width {y0} must be positive")));
    }
    let w = y0.to_f64();
    f.map_vertical(|ky| {
        if ky.is_zero() {
            return Complex64::new(w, 0.0);
        }
        let s = (ky * y0).rem_euclid(&QF::one());
        if s.is_zero() {
            return Complex64::new(0.0, 0.0);
        }
        // (e^{2 pi i s} - 1) / (2 pi i ky) = e^{i pi s} sin(pi s) / (pi ky)
        let s = s.to_f64();
        Complex64::from_polar((PI * s).sin() / (PI * ky.to_f64()), PI * s)
    })
}

/// Restriction to the hyperplane `y = r`.
pub fn restrict(f: &WaveSum, r: &QF) -> Result<WaveSum> {
    f.map_vertical(|ky| cis_turns(&(ky * r)))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl Window {
    pub fn square(half: f64) -> Self {
        Window { xmin: -half, xmax: half, ymin: -half, ymax: half }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrayImage {
    pub width: usize,
    pub height: usize,
    pub pixels: Vec<u8>,
}

impl GrayImage {
    pub fn get(&self, col: usize, row: usize) -> u8 {
        self.pixels[row * self.width + col]
    }

    /// Binary PGM, maxval 255.
    pub fn to_pgm(&self) -> Vec<u8> {
        let mut out = format!("P5\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.pixels);
        out
    }
}

/// Samples the real part at pixel centres, top row first, and maps the
/// observed range affinely onto `0..=255`.
pub fn render(f: &WaveSum, window: Window, px: (usize, usize)) -> Result<GrayImage> {
    let (w, h) = px;
    let Window { xmin, xmax, ymin, ymax } = window;
    let finite = [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite());
    if w == 0 || h == 0 || !finite || xmax <= xmin || ymax <= ymin {
        return Err(Error::DegenerateWindow);
    }
    if f.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: f.dim() });
    }
    let c = f.compile();
    let dx = (xmax - xmin) / w as f64;
    let dy = (ymax - ymin) / h as f64;
    let rows: Vec<Vec<f64>> = (0..h)
        .into_par_iter()
        .map(|j| {
            let y = ymax - (j as f64 + 0.5) * dy;
            (0..w)
                .map(|i| c.eval_unchecked(&[xmin + (i as f64 + 0.5) * dx, y]).re)
                .collect()
        })
        .collect();
    let values: Vec<f64> = rows.into_iter().flatten().collect();
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let pixels = if hi > lo {
        values.iter().map(|v| ((v - lo) / (hi - lo) * 255.0).round() as u8).collect()
    } else {
        vec![128; values.len()]
    };
    Ok(GrayImage { width: w, height: h, pixels })
}
