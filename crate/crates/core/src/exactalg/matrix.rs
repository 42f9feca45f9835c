//! Dense matrices over exact rationals.
//!
//! Row reduction clears denominators row by row and eliminates over the
//! integers, dividing every row by its content after each step. Rationals
//! only reappear when the reduced echelon form is read back out.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Outcome of solving `A x = b` exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Unique(RatMatrix),
    /// A particular solution together with a basis (as columns) of the kernel of `A`.
    NotUnique {
        particular: RatMatrix,
        kernel: RatMatrix,
    },
    NoSolution,
}

/// Quotient of the target of a matrix by its image.
///
/// `proj` is surjective with kernel exactly the image; `sect` is a right
/// inverse of `proj` built from unit vectors at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub proj: RatMatrix,
    pub sect: RatMatrix,
}

impl Cokernel {
    pub fn dim(&self) -> usize {
        self.proj.rows()
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(rows * cols, data.len(), "matrix data has wrong length");
        RatMatrix { rows, cols, data }
    }

    /// Builds a matrix from rows; every row must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix rows");
            data.extend(row);
        }
        RatMatrix { rows: r, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(rows * cols, entries.len());
        RatMatrix { rows, cols, data: entries.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect() }
    }

    /// Column vector.
    pub fn column(entries: Vec<Rational>) -> Self {
        let n = entries.len();
        RatMatrix { rows: n, cols: 1, data: entries }
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col(&self, j: usize) -> RatMatrix {
        RatMatrix::column((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    /// Sum of the diagonal. Panics on non-square input; use [`trace`](super::trace)
    /// for the checked version.
    pub fn trace(&self) -> Rational {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| &self[(i, i)]).sum()
    }

    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> RatMatrix {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = self[(r0 + i, c0 + j)].clone();
            }
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &RatMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)].clone();
            }
        }
    }

    pub fn add_block(&mut self, r0: usize, c0: usize, block: &RatMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                let v = &block[(i, j)];
                if !v.is_zero() {
                    self[(r0 + i, c0 + j)] += v;
                }
            }
        }
    }

    pub fn hstack(blocks: &[&RatMatrix]) -> RatMatrix {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let mut c = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            m.set_block(0, c, b);
            c += b.cols;
        }
        m
    }

    pub fn vstack(blocks: &[&RatMatrix]) -> RatMatrix {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(rows, cols);
        let mut r = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            m.set_block(r, 0, b);
            r += b.rows;
        }
        m
    }

    /// Block diagonal matrix.
    pub fn direct_sum(blocks: &[&RatMatrix]) -> RatMatrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    /// Kronecker product; row index of `A⊗B` is `i * B.rows + k`.
    pub fn kron(&self, other: &RatMatrix) -> RatMatrix {
        let mut m = Self::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = &self[(i, j)];
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = &other[(k, l)];
                        if !b.is_zero() {
                            m[(i * other.rows + k, j * other.cols + l)] = a * b;
                        }
                    }
                }
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Columns form a basis of the null space.
    pub fn kernel_basis(&self) -> RatMatrix {
        let (r, pivots) = rref(self);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.cols, free.len());
        for (idx, &fc) in free.iter().enumerate() {
            k[(fc, idx)] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                k[(pc, idx)] = -r[(row, fc)].clone();
            }
        }
        k
    }

    /// Columns form a basis of the column space (pivot columns of `self`).
    pub fn image_basis(&self) -> RatMatrix {
        let (_, pivots) = rref(self);
        let cols: Vec<RatMatrix> = pivots.iter().map(|&c| self.col(c)).collect();
        let refs: Vec<&RatMatrix> = cols.iter().collect();
        if refs.is_empty() {
            Self::zeros(self.rows, 0)
        } else {
            Self::hstack(&refs)
        }
    }

    pub fn cokernel(&self) -> Cokernel {
        let left = self.transpose().kernel_basis().transpose();
        let (proj, pivots) = rref(&left);
        let proj = proj.submatrix(0, 0, pivots.len(), self.rows);
        let mut sect = Self::zeros(self.rows, pivots.len());
        for (i, &p) in pivots.iter().enumerate() {
            sect[(p, i)] = Rational::one();
        }
        Cokernel { proj, sect }
    }

    /// Solves `self * x = rhs` for `x`.
    pub fn solve(&self, rhs: &RatMatrix) -> Solution {
        assert_eq!(self.rows, rhs.rows, "solve: row mismatch");
        let aug = Self::hstack(&[self, rhs]);
        let (r, pivots) = rref(&aug);
        if pivots.iter().any(|&p| p >= self.cols) {
            return Solution::NoSolution;
        }
        let mut x = Self::zeros(self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x[(pc, j)] = r[(row, self.cols + j)].clone();
            }
        }
        if pivots.len() == self.cols {
            Solution::Unique(x)
        } else {
            Solution::NotUnique { particular: x, kernel: self.kernel_basis() }
        }
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if !self.is_square() {
            return None;
        }
        match self.solve(&Self::identity(self.rows)) {
            Solution::Unique(x) => Some(x),
            _ => None,
        }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    /// Row-major flattening as a column vector.
    pub fn vectorize(&self) -> RatMatrix {
        RatMatrix::column(self.data.clone())
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows).map(|i| integer_row(m.row(i))).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].bits()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r);
        let (prow, tail) = tail.split_first_mut().expect("pivot row");
        let prow = &*prow;
        for other in head.iter_mut().chain(tail.iter_mut()) {
            if other[c].is_zero() {
                continue;
            }
            eliminate(other, prow, c);
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = RatMatrix::zeros(m.rows, m.cols);
    for (i, &pc) in pivots.iter().enumerate() {
        let lead = rows[i][pc].clone();
        for j in 0..m.cols {
            if !rows[i][j].is_zero() {
                out[(i, j)] = Rational::new(rows[i][j].clone(), lead.clone());
            }
        }
    }
    (out, pivots)
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().filter(|x| !x.is_zero()).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// `target <- p*target - t*pivot` with `p`, `t` the entries in column `c`,
/// followed by content removal.
fn eliminate(target: &mut [BigInt], pivot: &[BigInt], c: usize) {
    let g = pivot[c].gcd(&target[c]);
    let mut p = &pivot[c] / &g;
    let mut t = &target[c] / &g;
    if p.is_negative() {
        p = -p;
        t = -t;
    }
    for (x, y) in target.iter_mut().zip(pivot) {
        if y.is_zero() {
            if !x.is_zero() && !p.is_one() {
                *x *= &p;
            }
            continue;
        }
        *x = &*x * &p - &t * y;
    }
    make_primitive(target);
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch {:?} * {:?}", self.shape(), rhs.shape());
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs.data[k * rhs.cols + j];
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Mul for RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: RatMatrix) -> RatMatrix {
        &self * &rhs
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;

    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;

    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;

    fn neg(self) -> RatMatrix {
        RatMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn m(rows: usize, cols: usize, e: &[i64]) -> RatMatrix {
        RatMatrix::from_i64(rows, cols, e)
    }

    #[test]
    fn rref_of_rank_one() {
        let a = m(2, 3, &[2, 4, 6, 1, 2, 3]);
        let (r, p) = rref(&a);
        assert_eq!(p, vec![0]);
        assert_eq!(r, m(2, 3, &[1, 2, 3, 0, 0, 0]));
    }

    #[test]
    fn rref_with_fractions() {
        let a = RatMatrix::from_rows(2, vec![vec![rat(1, 2), rat(1, 3)], vec![rat(1, 4), rat(1, 5)]]);
        let (r, p) = rref(&a);
        assert_eq!(p, vec![0, 1]);
        assert!(r.is_identity());
    }

    #[test]
    fn kernel_is_annihilated() {
        let a = m(2, 4, &[1, 2, 0, -1, 0, 1, 1, 1]);
        let k = a.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!((&a * &k).is_zero());
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn cokernel_kills_image() {
        let a = m(3, 2, &[1, 0, 1, 0, 0, 1]);
        let c = a.cokernel();
        assert_eq!(c.dim(), 1);
        assert!((&c.proj * &a).is_zero());
        assert!((&c.proj * &c.sect).is_identity());
    }

    #[test]
    fn solve_cases() {
        let a = m(2, 2, &[1, 1, 0, 2]);
        let b = m(2, 1, &[3, 4]);
        assert_eq!(a.solve(&b), Solution::Unique(m(2, 1, &[1, 2])));
        let singular = m(2, 2, &[1, 1, 1, 1]);
        assert_eq!(singular.solve(&b), Solution::NoSolution);
        match singular.solve(&m(2, 1, &[2, 2])) {
            Solution::NotUnique { particular, kernel } => {
                assert_eq!(&singular * &particular, m(2, 1, &[2, 2]));
                assert_eq!(kernel.cols(), 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = m(3, 3, &[2, 1, 0, 0, 1, 3, 1, 0, 1]);
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_identity());
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn empty_shapes() {
        let a = RatMatrix::zeros(0, 3);
        assert_eq!(a.kernel_basis().shape(), (3, 3));
        assert_eq!(a.cokernel().dim(), 0);
        let b = RatMatrix::zeros(3, 0);
        assert_eq!(b.cokernel().dim(), 3);
        assert_eq!(b.kernel_basis().shape(), (0, 0));
    }
}
