//! Random generators and numerical oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use num_rational::BigRational;
use quadrature::double_exponential;
use num_traits::Zero;
use rand::Rng;

use latscope::crystal::{CrystalGroup, OrthoElem};
use latscope::lattice::{reflection_sigma, slice};
use latscope::linalg::{self, QVec};
use latscope::{QMat, ZModule, QF};

pub fn random_rational<R: Rng>(rng: &mut R, lo: i64, hi: i64, max_den: i64) -> BigRational {
    let d = rng.gen_range(1..=max_den);
    BigRational::new(rng.gen_range(lo * d..=hi * d).into(), d.into())
}

/// A rational in `[lo, hi]` with denominator at most `max_den`.
pub fn random_qf<R: Rng>(rng: &mut R, lo: i64, hi: i64, max_den: i64) -> QF {
    QF::from_rational(random_rational(rng, lo, hi, max_den))
}

/// `q0 + q1 r2 + q2 r3` with small rational parts, often rational.
pub fn random_field<R: Rng>(rng: &mut R, bound: i64) -> QF {
    let mut x = random_qf(rng, -bound, bound, 4);
    if rng.gen_bool(0.3) {
        x = x + QF::sqrt2() * random_qf(rng, -1, 1, 3);
    }
    if rng.gen_bool(0.3) {
        x = x + QF::sqrt3() * random_qf(rng, -1, 1, 3);
    }
    x
}

pub fn random_rational_lattice_2d<R: Rng>(rng: &mut R) -> ([BigRational; 2], [BigRational; 2]) {
    loop {
        let a = [random_rational(rng, -4, 4, 3), random_rational(rng, -4, 4, 3)];
        let b = [random_rational(rng, -4, 4, 3), random_rational(rng, -4, 4, 3)];
        if !(&a[0] * &b[1] - &a[1] * &b[0]).is_zero() {
            return (a, b);
        }
    }
}

fn rational_vec<R: Rng>(rng: &mut R, n: usize, bound: i64, den: i64) -> QVec {
    (0..n).map(|_| random_qf(rng, -bound, bound, den)).collect()
}

/// A rational lattice `{(a, a3), (b, b3), (0, 0, c)}` with `a3, b3 ∈ {0, c/2}`,
/// so that the vertical reflection preserves it.
fn sigma_lattice<R: Rng>(rng: &mut R) -> ZModule {
    loop {
        let c = random_qf(rng, 1, 3, 3);
        let half = &c * &QF::frac(1, 2);
        let mut a = rational_vec(rng, 2, 3, 3);
        let mut b = rational_vec(rng, 2, 3, 3);
        a.push(if rng.gen_bool(0.5) { half.clone() } else { QF::zero() });
        b.push(if rng.gen_bool(0.5) { half.clone() } else { QF::zero() });
        let v = vec![QF::zero(), QF::zero(), c];
        if let Ok(l) = ZModule::canonicalize(&[a, b, v], 3) {
            if l.is_lattice() {
                return l;
            }
        }
    }
}

fn generic_lattice<R: Rng>(rng: &mut R) -> ZModule {
    loop {
        let gens: Vec<QVec> = (0..3).map(|_| rational_vec(rng, 3, 3, 3)).collect();
        if let Ok(l) = ZModule::canonicalize(&gens, 3) {
            if l.is_lattice() {
                return l;
            }
        }
    }
}

fn identity(dim: usize) -> OrthoElem {
    OrthoElem::new(QMat::identity(dim), linalg::zeros(dim))
}

fn neg_identity(dim: usize) -> QMat {
    let mut m = QMat::identity(dim);
    for (i, row) in m.rows.iter_mut().enumerate() {
        row[i] = -QF::one();
    }
    m
}

/// Half of a random element of `R_0(L)`, so that `(v1, y1)` squares into `L`.
fn half_horizontal<R: Rng>(rng: &mut R, l: &ZModule) -> QVec {
    let r0 = slice(l, &QF::zero()).unwrap().module;
    let mut u = linalg::zeros(2);
    for g in r0.basis() {
        let k = QF::from_int(rng.gen_range(-2..=2));
        u = linalg::add(&u, &linalg::scale(g, &k));
    }
    let mut v = linalg::scale(&u, &QF::frac(1, 2));
    v.push(QF::zero());
    v
}

/// A valid crystallographic group with rational lattice and point group among
/// `{1}`, `{1, -1}`, `{1, σ}`, `{±1, ±σ}`.
pub fn random_group<R: Rng>(rng: &mut R) -> CrystalGroup {
    loop {
        let kind = rng.gen_range(0..5);
        let l = if kind >= 2 { sigma_lattice(rng) } else { generic_lattice(rng) };
        let c = latscope::lattice::vertical_period(&l).unwrap().unwrap();
        let reps = match kind {
            0 | 2 => vec![identity(3)],
            1 => vec![identity(3), OrthoElem::new(neg_identity(3), rational_vec(rng, 3, 2, 4))],
            3 => {
                let mut v = half_horizontal(rng, &l);
                v[2] = random_qf(rng, 0, 2, 4);
                vec![identity(3), OrthoElem::new(reflection_sigma(3), v)]
            }
            _ => {
                let mut v = half_horizontal(rng, &l);
                v[2] = if rng.gen_bool(0.5) { QF::zero() } else { &c * &QF::frac(1, 2) };
                let minus_sigma = neg_identity(3).mul(&reflection_sigma(3));
                vec![
                    identity(3),
                    OrthoElem::new(reflection_sigma(3), v.clone()),
                    OrthoElem::new(neg_identity(3), linalg::zeros(3)),
                    OrthoElem::new(minus_sigma, v),
                ]
            }
        };
        let g = CrystalGroup::new(l, reps).unwrap();
        if g.validate().is_empty() {
            return g;
        }
    }
}

/// Numerical integral of a complex integrand: double-exponential quadrature of
/// the real and imaginary parts over equal subintervals.
pub fn quad<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Complex64 {
    let n = 8;
    let h = (b - a) / n as f64;
    (0..n)
        .map(|i| {
            let (lo, hi) = (a + i as f64 * h, a + (i + 1) as f64 * h);
            let re = double_exponential::integrate(|y| f(y).re, lo, hi, tol / n as f64).integral;
            let im = double_exponential::integrate(|y| f(y).im, lo, hi, tol / n as f64).integral;
            Complex64::new(re, im)
        })
        .sum()
}
