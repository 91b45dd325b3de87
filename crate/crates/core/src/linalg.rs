//! Exact vectors and matrices over QF, and integer Hermite normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::QF;

pub type QVec = Vec<QF>;

pub fn qvec(items: &[&str]) -> QVec {
    items.iter().map(|s| crate::exactnum::qf(s)).collect()
}

pub fn zeros(n: usize) -> QVec {
    vec![QF::zero(); n]
}

pub fn dot(a: &[QF], b: &[QF]) -> QF {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[QF], b: &[QF]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[QF], b: &[QF]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[QF], s: &QF) -> QVec {
    a.iter().map(|x| x * s).collect()
}

pub fn scale_int(a: &[QF], k: &BigInt) -> QVec {
    let s = QF::from_bigint(k.clone());
    scale(a, &s)
}

pub fn neg(a: &[QF]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[QF]) -> bool {
    a.iter().all(QF::is_zero)
}

pub fn norm2(a: &[QF]) -> QF {
    dot(a, a)
}

/// Integer combination `Σ coeffs[i] · vecs[i]`.
pub fn combine(vecs: &[QVec], coeffs: &[BigInt], dim: usize) -> QVec {
    let mut out = zeros(dim);
    for (v, k) in vecs.iter().zip(coeffs) {
        if k.is_zero() {
            continue;
        }
        out = add(&out, &scale_int(v, k));
    }
    out
}

/// Drops the last coordinate.
pub fn horizontal(v: &[QF]) -> QVec {
    v[..v.len() - 1].to_vec()
}

pub fn last(v: &[QF]) -> &QF {
    v.last().expect("nonempty vector")
}

pub fn fmt_vec(v: &[QF]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Q-coordinates of a QF vector: 4 rationals per entry.
pub fn rationalize(v: &[QF]) -> Vec<BigRational> {
    v.iter().flat_map(|x| x.rationalize()).collect()
}

pub fn derationalize(r: &[BigRational]) -> QVec {
    r.chunks(4)
        .map(|c| QF::from_components([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()]))
        .collect()
}

/// Square or rectangular matrix over QF, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QMat {
    pub rows: Vec<QVec>,
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| fmt_vec(r)).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

impl QMat {
    pub fn new(rows: Vec<QVec>) -> Self {
        QMat { rows }
    }

    pub fn from_strs(rows: &[&[&str]]) -> Self {
        QMat::new(rows.iter().map(|r| qvec(r)).collect())
    }

    pub fn identity(n: usize) -> Self {
        QMat::new(
            (0..n)
                .map(|i| (0..n).map(|j| QF::from_int((i == j) as i64)).collect())
                .collect(),
        )
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn is_square(&self) -> bool {
        self.rows.iter().all(|r| r.len() == self.nrows())
    }

    pub fn transpose(&self) -> Self {
        let (m, n) = (self.nrows(), self.ncols());
        QMat::new(
            (0..n)
                .map(|j| (0..m).map(|i| self.rows[i][j].clone()).collect())
                .collect(),
        )
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        let t = other.transpose();
        QMat::new(
            self.rows
                .iter()
                .map(|r| t.rows.iter().map(|c| dot(r, c)).collect())
                .collect(),
        )
    }

    pub fn apply(&self, v: &[QF]) -> QVec {
        self.rows.iter().map(|r| dot(r, v)).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == QMat::identity(self.nrows())
    }

    pub fn is_orthogonal(&self) -> bool {
        self.is_square() && self.mul(&self.transpose()).is_identity()
    }

    pub fn inverse(&self) -> Result<QMat> {
        let n = self.nrows();
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: self.ncols(),
            });
        }
        let mut a: Vec<QVec> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| QF::from_int((i == j) as i64)));
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&i| !a[i][col].is_zero())
                .ok_or(Error::NotFullRank { rank: col, dim: n })?;
            a.swap(col, piv);
            let inv = a[col][col].inv()?;
            a[col] = scale(&a[col], &inv);
            for i in 0..n {
                if i != col && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    a[i] = sub(&a[i], &scale(&a[col], &f));
                }
            }
        }
        Ok(QMat::new(a.into_iter().map(|r| r[n..].to_vec()).collect()))
    }

    /// Block matrix `[[self, 0], [0, corner]]`.
    pub fn block_with(&self, corner: QF) -> QMat {
        let n = self.nrows();
        let mut rows: Vec<QVec> = self
            .rows
            .iter()
            .map(|r| {
                let mut row = r.clone();
                row.push(QF::zero());
                row
            })
            .collect();
        let mut lastrow = zeros(n + 1);
        lastrow[n] = corner;
        rows.push(lastrow);
        QMat::new(rows)
    }

    /// If the matrix has the form `[[a, 0], [0, ±1]]`, returns `(a, ±1)`.
    pub fn split_vertical(&self) -> Option<(QMat, i8)> {
        let n = self.nrows();
        if n < 2 {
            return None;
        }
        let k = n - 1;
        for i in 0..k {
            if !self.rows[i][k].is_zero() || !self.rows[k][i].is_zero() {
                return None;
            }
        }
        let corner = &self.rows[k][k];
        let sign = if *corner == QF::one() {
            1
        } else if *corner == -QF::one() {
            -1
        } else {
            return None;
        };
        let a = QMat::new(self.rows[..k].iter().map(|r| r[..k].to_vec()).collect());
        Some((a, sign))
    }
}

/// Rank over R of a list of QF vectors (Gaussian elimination in the field).
pub fn real_rank(vectors: &[QVec]) -> usize {
    let mut rows: Vec<QVec> = vectors.to_vec();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("nonzero pivot");
        for i in rank + 1..rows.len() {
            if !rows[i][col].is_zero() {
                let f = &rows[i][col] * &inv;
                rows[i] = sub(&rows[i], &scale(&rows[rank], &f));
            }
        }
        rank += 1;
    }
    rank
}

/// Solves `Σ c_i basis_i = v` over QF when the basis is R-independent.
pub fn solve_coords(basis: &[QVec], v: &[QF]) -> Option<QVec> {
    let k = basis.len();
    let dim = v.len();
    // Augmented system with unknowns as columns: rows are coordinates.
    let mut a: Vec<QVec> = (0..dim)
        .map(|j| {
            let mut row: QVec = basis.iter().map(|b| b[j].clone()).collect();
            row.push(v[j].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..dim).find(|&i| !a[i][col].is_zero()) else {
            return None;
        };
        a.swap(r, p);
        let inv = a[r][col].inv().ok()?;
        a[r] = scale(&a[r], &inv);
        for i in 0..dim {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                a[i] = sub(&a[i], &scale(&a[r], &f));
            }
        }
        pivots.push(col);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[k].is_zero()) {
        return None;
    }
    Some((0..k).map(|i| a[i][k].clone()).collect())
}

pub type IntMat = Vec<Vec<BigInt>>;

pub fn int_identity(n: usize) -> IntMat {
    (0..n)
        .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect()
}

fn row_axpy(target: &mut [BigInt], q: &BigInt, src: &[BigInt]) {
    for (t, s) in target.iter_mut().zip(src) {
        *t -= q * s;
    }
}

/// Row-style Hermite normal form with transform: returns `(h, u, rank)` with
/// `u · a = h`, `u` unimodular, the first `rank` rows of `h` in echelon form
/// with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`, and the remaining rows zero.
pub fn hnf_with_transform(a: &IntMat) -> (IntMat, IntMat, usize) {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut h = a.clone();
    let mut u = int_identity(m);
    let mut r = 0;
    for col in 0..n {
        if r == m {
            break;
        }
        loop {
            let piv = (r..m)
                .filter(|&i| !h[i][col].is_zero())
                .min_by(|&i, &j| h[i][col].abs().cmp(&h[j][col].abs()));
            let Some(p) = piv else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut clean = true;
            for i in r + 1..m {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = h[i][col].div_floor(&h[r][col]);
                let (hr, ur) = (h[r].clone(), u[r].clone());
                row_axpy(&mut h[i], &q, &hr);
                row_axpy(&mut u[i], &q, &ur);
                if !h[i][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h[r][col].is_zero() {
            continue;
        }
        if h[r][col].is_negative() {
            for x in h[r].iter_mut() {
                *x = -&*x;
            }
            for x in u[r].iter_mut() {
                *x = -&*x;
            }
        }
        let (hr, ur) = (h[r].clone(), u[r].clone());
        for i in 0..r {
            let q = h[i][col].div_floor(&hr[col]);
            if !q.is_zero() {
                row_axpy(&mut h[i], &q, &hr);
                row_axpy(&mut u[i], &q, &ur);
            }
        }
        r += 1;
    }
    (h, u, r)
}

fn common_denominator<'a>(items: impl Iterator<Item = &'a BigRational>) -> BigInt {
    items.fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

fn to_integer_rows(rows: &[Vec<BigRational>], den: &BigInt) -> IntMat {
    rows.iter()
        .map(|r| r.iter().map(|x| (x * den).to_integer()).collect())
        .collect()
}

/// Canonical Z-basis (HNF rows) of the Z-module spanned by rational rows.
pub fn rational_hnf(rows: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let den = common_denominator(rows.iter().flatten());
    let ints = to_integer_rows(rows, &den);
    let (h, _, rank) = hnf_with_transform(&ints);
    let d = BigRational::from_integer(den);
    h[..rank]
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()) / &d)
                .collect()
        })
        .collect()
}

/// Integer solutions `x` of `Σ x_i · rows[i] = rhs`.
#[derive(Debug, Clone)]
pub struct IntSolutions {
    pub particular: Option<Vec<BigInt>>,
    /// Basis of the integer kernel `{x : Σ x_i rows[i] = 0}`.
    pub kernel: IntMat,
}

pub fn solve_integer(rows: &[Vec<BigRational>], rhs: &[BigRational]) -> IntSolutions {
    let m = rows.len();
    let den = common_denominator(rows.iter().flatten().chain(rhs.iter()));
    let a = to_integer_rows(rows, &den);
    let b: Vec<BigInt> = rhs.iter().map(|x| (x * &den).to_integer()).collect();
    let (h, u, rank) = hnf_with_transform(&a);
    let kernel: IntMat = u[rank..].to_vec();
    let mut residual = b;
    let mut w = vec![BigInt::zero(); m];
    let mut ok = true;
    for (i, row) in h.iter().enumerate().take(rank) {
        let col = row.iter().position(|x| !x.is_zero()).expect("pivot row");
        let (q, rem) = residual[col].div_rem(&row[col]);
        if !rem.is_zero() {
            ok = false;
            break;
        }
        row_axpy(&mut residual, &q, row);
        w[i] = q;
    }
    if ok && residual.iter().any(|x| !x.is_zero()) {
        ok = false;
    }
    let particular = ok.then(|| {
        (0..m)
            .map(|j| (0..m).map(|i| &w[i] * &u[i][j]).sum())
            .collect()
    });
    IntSolutions { particular, kernel }
}

/// Inverse of a unimodular integer matrix.
pub fn int_inverse(u: &IntMat) -> Option<IntMat> {
    let n = u.len();
    let mut a: Vec<Vec<BigRational>> = u
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> =
                r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.extend((0..n).map(|j| BigRational::from_integer(BigInt::from((i == j) as i64))));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        a[col] = a[col].iter().map(|x| x * &inv).collect();
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                let pr = a[col].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter()
        .map(|r| {
            r[n..]
                .iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect()
        })
        .collect()
}

/// Extends a primitive integer vector to a unimodular matrix whose first
/// row is that vector.
pub fn extend_to_unimodular(v: &[BigInt]) -> Option<IntMat> {
    let col: IntMat = v.iter().map(|x| vec![x.clone()]).collect();
    let (h, u, _) = hnf_with_transform(&col);
    if !h[0][0].is_one() {
        return None;
    }
    // u·v = e1, so v is the first column of u⁻¹; transpose to make it a row.
    let inv = int_inverse(&u)?;
    let n = v.len();
    Some((0..n).map(|i| (0..n).map(|j| inv[j][i].clone()).collect()).collect())
}

pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> IntMat {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn mat_mul(a: &IntMat, b: &IntMat) -> IntMat {
        let n = b[0].len();
        a.iter()
            .map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, br)| x * &br[j]).sum()).collect())
            .collect()
    }

    #[test]
    fn hnf_transform_identity_holds() {
        let a = ints(&[&[4, 7, 2], &[2, 4, 6], &[6, 11, 8]]);
        let (h, u, rank) = hnf_with_transform(&a);
        assert_eq!(mat_mul(&u, &a), h);
        assert_eq!(rank, 2);
        assert!(h[2].iter().all(Zero::is_zero));
        assert!(int_inverse(&u).is_some());
    }

    #[test]
    fn integer_solve_finds_particular_and_kernel() {
        // 4m + 7n = 1
        let rows = vec![
            vec![BigRational::from_integer(4.into())],
            vec![BigRational::from_integer(7.into())],
        ];
        let s = solve_integer(&rows, &[BigRational::one()]);
        let p = s.particular.unwrap();
        assert_eq!(&p[0] * 4 + &p[1] * 7, BigInt::one());
        assert_eq!(s.kernel.len(), 1);
        let k = &s.kernel[0];
        assert_eq!(&k[0] * 4 + &k[1] * 7, BigInt::zero());
        // 2m = 1 has no integer solution
        let none = solve_integer(&[vec![BigRational::from_integer(2.into())]], &[BigRational::one()]);
        assert!(none.particular.is_none());
    }

    #[test]
    fn unimodular_extension() {
        let v = vec![BigInt::from(3), BigInt::from(5), BigInt::from(7)];
        let u = extend_to_unimodular(&v).unwrap();
        assert_eq!(u[0], v);
        assert!(int_inverse(&u).is_some());
        assert!(extend_to_unimodular(&[BigInt::from(2), BigInt::from(4)]).is_none());
    }

    #[test]
    fn qf_inverse_and_orthogonality() {
        let r = QMat::from_strs(&[&["1/2", "-1/2*r3"], &["1/2*r3", "1/2"]]);
        assert!(r.is_orthogonal());
        assert_eq!(r.mul(&r.inverse().unwrap()), QMat::identity(2));
        let s = QMat::from_strs(&[&["1", "1"], &["2", "2"]]);
        assert!(s.inverse().is_err());
    }

    #[test]
    fn real_rank_vs_rational_rank() {
        // (1) and (√2) are R-dependent in R^1
        assert_eq!(real_rank(&[qvec(&["1"]), qvec(&["r2"])]), 1);
        assert_eq!(real_rank(&[qvec(&["1", "0"]), qvec(&["1/2", "1/2*r3"])]), 2);
    }
}
