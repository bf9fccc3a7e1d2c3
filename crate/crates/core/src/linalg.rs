//! Dense matrices over a prime field F_p.
//!
//! A matrix of shape `rows x cols` represents a linear map `K^cols -> K^rows`
//! acting on column vectors, so `a.compose(&b)` is the map "first b, then a".

use crate::error::{Error, Result};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn two() -> Self {
        PrimeField { p: 2 }
    }

    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.p as u64 - b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let mut result = 1u64;
        let mut base = a as u64;
        let mut e = self.p - 2;
        let m = self.p as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result * base % m;
            }
            base = base * base % m;
            e >>= 1;
        }
        result as u32
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Cokernel of a matrix `M : K^n -> K^m`: its dimension and a surjection
/// `projection : K^m -> K^dim` whose kernel is the column span of `M`.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub dim: usize,
    pub projection: FpMatrix,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = FpMatrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from integer rows, reducing entries mod p.
    /// `cols` is needed for the case of zero rows.
    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let mut m = FpMatrix::zeros(field, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!("row {i} has {} entries, expected {cols}", r.len())));
            }
            for (j, &v) in r.iter().enumerate() {
                m.data[i * cols + j] = field.reduce(v);
            }
        }
        Ok(m)
    }

    /// A `n x 1` matrix.
    pub fn column_vector(field: PrimeField, v: &[u32]) -> Self {
        FpMatrix { field, rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    fn check_field(&self, other: &FpMatrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DimensionMismatch(format!("fields F_{} and F_{}", self.field.p, other.field.p)));
        }
        Ok(())
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} with {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.field.p as u64;
        let mut out = FpMatrix::zeros(self.field, self.rows, other.cols);
        let mut acc = vec![0u64; other.cols];
        for i in 0..self.rows {
            acc.iter_mut().for_each(|a| *a = 0);
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                let row = &other.data[k * other.cols..(k + 1) * other.cols];
                for (slot, &b) in acc.iter_mut().zip(row) {
                    *slot = (*slot + a * b as u64) % p;
                }
            }
            for (j, &v) in acc.iter().enumerate() {
                out.data[i * other.cols + j] = v as u32;
            }
        }
        Ok(out)
    }

    /// Panicking variant of [`compose`](Self::compose) for shapes known to match.
    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        self.compose(other).expect("matrix shapes must agree")
    }

    fn zip_with(&self, other: &FpMatrix, f: impl Fn(u32, u32) -> u32) -> Result<FpMatrix> {
        self.check_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect();
        Ok(FpMatrix { field: self.field, rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &FpMatrix) -> Result<FpMatrix> {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        FpMatrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> FpMatrix {
        self.scale(self.field.neg(1))
    }

    /// Block diagonal matrix `[[self, 0], [0, other]]`.
    pub fn direct_sum(&self, other: &FpMatrix) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    pub fn block_diagonal(field: PrimeField, blocks: &[FpMatrix]) -> FpMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = FpMatrix::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &FpMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    /// Concatenates matrices with equal row counts side by side.
    pub fn hstack(field: PrimeField, rows: usize, parts: &[FpMatrix]) -> Result<FpMatrix> {
        let cols = parts.iter().map(|b| b.cols).sum();
        let mut out = FpMatrix::zeros(field, rows, cols);
        let mut c = 0;
        for b in parts {
            if b.rows != rows {
                return Err(Error::DimensionMismatch(format!("hstack rows {} vs {rows}", b.rows)));
            }
            out.set_block(0, c, b);
            c += b.cols;
        }
        Ok(out)
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(field: PrimeField, cols: usize, parts: &[FpMatrix]) -> Result<FpMatrix> {
        let rows = parts.iter().map(|b| b.rows).sum();
        let mut out = FpMatrix::zeros(field, rows, cols);
        let mut r = 0;
        for b in parts {
            if b.cols != cols {
                return Err(Error::DimensionMismatch(format!("vstack cols {} vs {cols}", b.cols)));
            }
            out.set_block(r, 0, b);
            r += b.rows;
        }
        Ok(out)
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            for j in c..m.cols {
                let v = m.get(r, j);
                m.set(r, j, f.mul(v, inv));
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the null space; shape `cols x nullity`.
    pub fn kernel_basis(&self) -> FpMatrix {
        let f = self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = FpMatrix::zeros(f, self.cols, free.len());
        for (t, &fc) in free.iter().enumerate() {
            k.set(fc, t, 1);
            for (i, &pc) in pivots.iter().enumerate() {
                k.set(pc, t, f.neg(r.get(i, fc)));
            }
        }
        k
    }

    /// Pivot columns of the matrix itself; shape `rows x rank`.
    pub fn image_basis(&self) -> FpMatrix {
        let (_, pivots) = self.rref();
        let mut out = FpMatrix::zeros(self.field, self.rows, pivots.len());
        for (t, &c) in pivots.iter().enumerate() {
            for i in 0..self.rows {
                out.set(i, t, self.get(i, c));
            }
        }
        out
    }

    pub fn cokernel(&self) -> Cokernel {
        let projection = self.transpose().kernel_basis().transpose();
        Cokernel { dim: projection.rows, projection }
    }

    /// Some `X` with `self * X = b`, or `None` if no solution exists.
    pub fn solve(&self, b: &FpMatrix) -> Result<Option<FpMatrix>> {
        self.check_field(b)?;
        if b.rows != self.rows {
            return Err(Error::DimensionMismatch(format!("solve: {} rows vs {}", self.rows, b.rows)));
        }
        let aug = FpMatrix::hstack(self.field, self.rows, &[self.clone(), b.clone()])?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = FpMatrix::zeros(self.field, self.cols, b.cols);
        for (i, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(pc, j, r.get(i, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    /// Right inverse of a surjective matrix.
    pub fn right_inverse(&self) -> Option<FpMatrix> {
        self.solve(&FpMatrix::identity(self.field, self.rows)).ok().flatten()
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols || self.rank() != self.rows {
            return None;
        }
        self.right_inverse()
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}{:?}", self.field.p, self.to_rows())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(matches!(PrimeField::new(4), Err(Error::NotPrime(4))));
        assert!(matches!(PrimeField::new(1), Err(Error::NotPrime(1))));
        assert!(PrimeField::new(7).is_ok());
    }

    #[test]
    fn compose_shape_mismatch() {
        let a = FpMatrix::zeros(f(2), 2, 3);
        let b = FpMatrix::zeros(f(2), 2, 3);
        assert!(matches!(a.compose(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn inverse_mod_five() {
        let m = FpMatrix::from_rows(f(5), 2, &[vec![1, 2], vec![3, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), FpMatrix::identity(f(5), 2));
        let singular = FpMatrix::from_rows(f(5), 2, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn cokernel_of_diagonal_embedding() {
        let m = FpMatrix::from_rows(f(2), 1, &[vec![1], vec![1]]).unwrap();
        let c = m.cokernel();
        assert_eq!(c.dim, 1);
        assert!(c.projection.mul(&m).is_zero());
    }

    fn arb_matrix() -> impl Strategy<Value = FpMatrix> {
        (prop::sample::select(vec![2u32, 3, 5]), 0usize..6, 0usize..6).prop_flat_map(|(p, r, c)| {
            prop::collection::vec(0i64..p as i64, r * c).prop_map(move |v| {
                let rows: Vec<Vec<i64>> = v.chunks(c.max(1)).take(r).map(|x| x.to_vec()).collect();
                let rows = if c == 0 { vec![vec![]; r] } else { rows };
                FpMatrix::from_rows(PrimeField::new(p).unwrap(), c, &rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let k = m.kernel_basis();
            prop_assert_eq!(m.rank() + k.cols(), m.cols());
            prop_assert!(m.mul(&k).is_zero());
            prop_assert_eq!(k.rank(), k.cols());
        }

        #[test]
        fn image_and_cokernel(m in arb_matrix()) {
            let im = m.image_basis();
            prop_assert_eq!(im.rank(), m.rank());
            let c = m.cokernel();
            prop_assert_eq!(c.dim, m.rows() - m.rank());
            prop_assert!(c.projection.mul(&m).is_zero());
            prop_assert_eq!(c.projection.rank(), c.dim);
        }

        #[test]
        fn solve_finds_preimages(m in arb_matrix()) {
            let x = FpMatrix::identity(m.field(), m.cols());
            let b = m.mul(&x);
            let sol = m.solve(&b).unwrap().unwrap();
            prop_assert_eq!(m.mul(&sol), b);
        }

        #[test]
        fn transpose_preserves_rank(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }
    }
}
