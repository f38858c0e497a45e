//! Exact scalar and dense matrix arithmetic over the rationals or a prime field.
//!
//! Every pivoting decision uses the first nonzero entry in column order, so
//! bases returned by [`Mat::kernel`], [`Mat::image_basis`] and friends are a
//! deterministic function of the input.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field: characteristic 0 means the rationals, otherwise the prime field of that order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    characteristic: u64,
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::RATIONALS
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element. Values of a prime field are kept reduced into `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod(u64),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(q) => write!(f, "{q}"),
            Scalar::Mod(v) => write!(f, "{v}"),
        }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(q) => q.is_zero(),
            Scalar::Mod(v) => *v == 0,
        }
    }
}

impl FieldSpec {
    pub const RATIONALS: FieldSpec = FieldSpec { characteristic: 0 };

    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || (is_prime(characteristic) && characteristic < (1 << 31)) {
            Ok(FieldSpec { characteristic })
        } else {
            Err(Error::InvalidField(characteristic))
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn zero(&self) -> Scalar {
        if self.characteristic == 0 {
            Scalar::Rat(BigRational::zero())
        } else {
            Scalar::Mod(0)
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        if self.characteristic == 0 {
            Scalar::Rat(BigRational::from_integer(BigInt::from(v)))
        } else {
            let p = self.characteristic as i128;
            Scalar::Mod((v as i128).rem_euclid(p) as u64)
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod((x + y) % self.characteristic),
            _ => panic!("mixed field arithmetic"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Rat(x) => Scalar::Rat(-x),
            Scalar::Mod(x) => Scalar::Mod((self.characteristic - x) % self.characteristic),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u128 * *y as u128) % self.characteristic as u128) as u64)
            }
            _ => panic!("mixed field arithmetic"),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: &Scalar) -> Scalar {
        assert!(!a.is_zero(), "inverse of zero");
        match a {
            Scalar::Rat(x) => Scalar::Rat(x.recip()),
            Scalar::Mod(x) => {
                let p = self.characteristic as u128;
                let (mut base, mut exp, mut acc) = (*x as u128 % p, p - 2, 1u128);
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Scalar::Mod(acc as u64)
            }
        }
    }

    /// All elements of a prime field, or `None` over the rationals.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        if self.characteristic == 0 {
            None
        } else {
            Some((0..self.characteristic).map(Scalar::Mod).collect())
        }
    }

    /// Render a scalar as an integer when it is one (used for stable text output).
    pub fn render(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(q) if q.is_integer() => q.to_integer().to_string(),
            other => other.to_string(),
        }
    }
}

/// A dense row-major matrix of exact scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, field, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Mat::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, field.from_i64(*v));
            }
        }
        m
    }

    /// Build a matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: FieldSpec, rows: usize, columns: &[Vec<Scalar>]) -> Mat {
        let mut m = Mat::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j);
                    let v = f.add(cur, &f.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| (0..self.cols).fold(f.zero(), |acc, k| f.add(&acc, &f.mul(self.get(i, k), &v[k]))))
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        Mat {
            rows: self.rows,
            cols: self.cols,
            field: f,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let f = self.field;
        Mat { rows: self.rows, cols: self.cols, field: f, data: self.data.iter().map(|a| f.mul(a, c)).collect() }
    }

    pub fn trace(&self) -> Scalar {
        assert!(self.is_square());
        (0..self.rows).fold(self.field.zero(), |acc, i| self.field.add(&acc, self.get(i, i)))
    }

    pub fn pow(&self, e: usize) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.field, self.rows);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.rows, other.rows);
        let mut m = Mat::zeros(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    /// Vertical concatenation of `self` over `other`.
    pub fn vstack(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { rows: self.rows + other.rows, cols: self.cols, field: self.field, data }
    }

    /// Block diagonal matrix `diag(self, other)`.
    pub fn block_diag(&self, other: &Mat) -> Mat {
        let mut m = Mat::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Overwrite the block starting at `(r0, c0)` with `block`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Mat {
        let mut m = Mat::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        m
    }

    pub fn select_columns(&self, cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                m.set(i, jj, self.get(i, j).clone());
            }
        }
        m
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if p != row {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, row * m.cols + j);
                }
            }
            let inv = f.inv(m.get(row, col));
            for j in col..m.cols {
                let v = f.mul(m.get(row, j), &inv);
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for j in col..m.cols {
                    let v = f.sub(m.get(r, j), &f.mul(&factor, m.get(row, j)));
                    m.set(r, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns spanning the right null space `{x : self * x = 0}`.
    pub fn kernel(&self) -> Mat {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(f, self.cols, free.len());
        for (j, &fc) in free.iter().enumerate() {
            k.set(fc, j, f.one());
            for (pr, &pc) in pivots.iter().enumerate() {
                k.set(pc, j, f.neg(r.get(pr, fc)));
            }
        }
        k
    }

    /// The pivot columns of `self`, a basis of its column space.
    pub fn image_basis(&self) -> Mat {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// A surjection `Q` from the target onto the cokernel: `Q * self = 0`, `rows(Q) = rows - rank`.
    pub fn cokernel_projection(&self) -> Mat {
        self.transpose().kernel().transpose()
    }

    /// Rank, a basis of the image, and the cokernel projection in one pass.
    pub fn rank_image_cokernel(&self) -> (usize, Mat, Mat) {
        let img = self.image_basis();
        (img.cols(), img, self.cokernel_projection())
    }

    /// Some `X` with `self * X = rhs`, if one exists.
    pub fn solve(&self, rhs: &Mat) -> Option<Mat> {
        assert_eq!(self.rows, rhs.rows);
        let f = self.field;
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Mat::zeros(f, self.cols, rhs.cols);
        for (pr, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(pr, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Mat::identity(self.field, self.rows))?;
        (self.mul(&x) == Mat::identity(self.field, self.rows)).then_some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Standard basis vectors completing the column space of `self` to the whole space.
    pub fn complement_basis(&self) -> Mat {
        let aug = self.hstack(&Mat::identity(self.field, self.rows));
        let (_, pivots) = aug.rref();
        let extra: Vec<usize> = pivots.into_iter().filter(|&p| p >= self.cols).collect();
        aug.select_columns(&extra)
    }

    /// Integer view of every entry, if all entries are integral (used in rendering and tests).
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| match self.get(i, j) {
                        Scalar::Rat(q) if q.is_integer() => q.to_integer().to_i64(),
                        Scalar::Rat(_) => None,
                        Scalar::Mod(v) => i64::try_from(*v).ok(),
                    })
                    .collect()
            })
            .collect()
    }

    /// Largest absolute numerator/denominator bit-length; a growth diagnostic.
    pub fn max_bits(&self) -> u64 {
        self.data
            .iter()
            .map(|s| match s {
                Scalar::Rat(q) => q.numer().abs().bits().max(q.denom().bits()),
                Scalar::Mod(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.field.render(self.get(i, j)))?;
            }
        }
        write!(f, "]")
    }
}

/// Basis of the right null space of `a`, one vector per column.
pub fn solve_kernel(a: &Mat) -> Mat {
    a.kernel()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    #[test]
    fn identity_has_empty_kernel() {
        let k = Mat::identity(q(), 2).kernel();
        assert_eq!((k.rows(), k.cols()), (2, 0));
    }

    #[test]
    fn zero_map_kernel_is_everything() {
        let k = Mat::zeros(q(), 2, 3).kernel();
        assert_eq!(k.cols(), 3);
        assert_eq!(k.rank(), 3);
    }

    #[test]
    fn all_ones_kernel_is_antidiagonal() {
        let a = Mat::from_i64_rows(q(), &[vec![1, 1], vec![1, 1]]);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.to_i64_rows().unwrap(), vec![vec![-1], vec![1]]);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn identity_rank_and_trivial_cokernel() {
        let (r, img, q) = Mat::identity(q(), 3).rank_image_cokernel();
        assert_eq!(r, 3);
        assert_eq!(img.cols(), 3);
        assert_eq!(q.rows(), 0);
    }

    #[test]
    fn zero_map_cokernel_is_identity() {
        let (r, _, q) = Mat::zeros(q(), 2, 2).rank_image_cokernel();
        assert_eq!(r, 0);
        assert_eq!(q, Mat::identity(FieldSpec::RATIONALS, 2));
    }

    #[test]
    fn rank_over_f3() {
        let f3 = FieldSpec::new(3).unwrap();
        assert_eq!(Mat::from_i64_rows(f3, &[vec![2, 4]]).rank(), 1);
        let f2 = FieldSpec::new(2).unwrap();
        assert_eq!(Mat::from_i64_rows(f2, &[vec![2, 4]]).rank(), 0);
    }

    #[test]
    fn rejects_composite_characteristic() {
        assert!(FieldSpec::new(4).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(7).is_ok());
    }

    #[test]
    fn solve_and_inverse() {
        let a = Mat::from_i64_rows(q(), &[vec![2, 1], vec![1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Mat::identity(q(), 2));
        let singular = Mat::from_i64_rows(q(), &[vec![1, 2], vec![2, 4]]);
        assert!(singular.inverse().is_none());
        let rhs = Mat::from_i64_rows(q(), &[vec![1], vec![3]]);
        assert!(singular.solve(&rhs).is_none());
    }

    #[test]
    fn mod_p_inverse() {
        let f7 = FieldSpec::new(7).unwrap();
        for v in 1..7 {
            let x = f7.from_i64(v);
            assert_eq!(f7.mul(&x, &f7.inv(&x)), f7.one());
        }
    }

    #[test]
    fn complement_completes_basis() {
        let s = Mat::from_i64_rows(q(), &[vec![1], vec![1], vec![0]]);
        let c = s.complement_basis();
        assert_eq!(c.cols(), 2);
        assert_eq!(s.hstack(&c).rank(), 3);
    }
}
