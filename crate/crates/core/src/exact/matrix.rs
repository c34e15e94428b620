use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};
use serde::Serialize;

use super::rational::{int, Rational};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Sylvester inertia of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub n_neg: usize,
    pub n_zero: usize,
    pub n_pos: usize,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimMismatch {
                expected: c,
                got: bad.len(),
            });
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Rational>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if let Some(bad) = cols.iter().find(|col| col.len() != r) {
            return Err(Error::DimMismatch {
                expected: r,
                got: bad.len(),
            });
        }
        Ok(Self::from_fn(r, c, |i, j| cols[j][i].clone()))
    }

    /// Convenience constructor for small integer matrices.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
            .expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `xᵀ M y`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let my = self.mul_vec(y);
        x.iter()
            .zip(&my)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Trace.
    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + &self[(i, i)])
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// Rows rescaled by the lcm of their denominators. Row scaling by a
    /// nonzero constant changes neither rank nor (up to the returned factor)
    /// determinant.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Rational) {
        let mut factor = Rational::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let l = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                factor *= Rational::from_integer(l.clone());
                row.iter().map(|q| q.numer() * (&l / q.denom())).collect()
            })
            .collect();
        (rows, factor)
    }

    /// Bareiss elimination on the integer-scaled rows. Returns the rank and,
    /// for square input, the determinant of the scaled matrix.
    fn bareiss(&self) -> (usize, BigInt) {
        let (mut a, _) = self.integer_rows();
        let (n, m) = (self.rows, self.cols);
        let mut prev = BigInt::one();
        let mut sign = 1i32;
        let mut r = 0;
        for c in 0..m {
            if r == n {
                break;
            }
            let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            if p != r {
                a.swap(p, r);
                sign = -sign;
            }
            for i in r + 1..n {
                for j in c + 1..m {
                    let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                    debug_assert!((&num % &prev).is_zero(), "inexact Bareiss division");
                    a[i][j] = num / &prev;
                }
                a[i][c] = BigInt::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        let det = if r == n && n == m {
            if n == 0 {
                BigInt::one()
            } else {
                &prev * sign
            }
        } else {
            BigInt::zero()
        };
        (r, det)
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.bareiss().0
    }

    pub fn det(&self) -> Result<Rational> {
        self.require_square()?;
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        let (_, scale) = self.integer_rows();
        let (_, d) = self.bareiss();
        Ok(Rational::from_integer(d) / scale)
    }

    pub fn inverse(&self) -> Result<Matrix> {
        self.require_square()?;
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Matrix::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a[(i, c)].is_zero()).ok_or(Error::Singular)?;
            a.swap_rows(p, c);
            inv.swap_rows(p, c);
            let piv = a[(c, c)].clone();
            for j in 0..n {
                a[(c, j)] /= &piv;
                inv[(c, j)] /= &piv;
            }
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..n {
                    let (acj, icj) = (a[(c, j)].clone(), inv[(c, j)].clone());
                    if !acj.is_zero() {
                        a[(i, j)] -= &f * acj;
                    }
                    if !icj.is_zero() {
                        inv[(i, j)] -= &f * icj;
                    }
                }
            }
        }
        Ok(inv)
    }

    /// Solves `self · X = rhs` when `self` has full column rank and the
    /// system is consistent. Returns `None` if no exact solution exists.
    pub fn solve_left(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let (n, m, k) = (self.rows, self.cols, rhs.cols);
        let mut a = Matrix::from_fn(n, m + k, |i, j| {
            if j < m {
                self[(i, j)].clone()
            } else {
                rhs[(i, j - m)].clone()
            }
        });
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m {
            let p = (r..n).find(|&i| !a[(i, c)].is_zero())?;
            a.swap_rows(p, r);
            let piv = a[(r, c)].clone();
            for j in 0..m + k {
                a[(r, j)] /= &piv;
            }
            for i in 0..n {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    for j in 0..m + k {
                        let v = a[(r, j)].clone();
                        a[(i, j)] -= &f * v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        // Remaining rows must be consistent.
        if (r..n).any(|i| (m..m + k).any(|j| !a[(i, j)].is_zero())) {
            return None;
        }
        Some(Matrix::from_fn(m, k, |i, j| a[(i, m + j)].clone()))
    }

    /// Basis of the right nullspace, from the reduced row echelon form.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let (n, m) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m {
            if r == n {
                break;
            }
            let Some(p) = (r..n).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, r);
            let piv = a[(r, c)].clone();
            for j in 0..m {
                a[(r, j)] /= &piv;
            }
            for i in 0..n {
                if i != r && !a[(i, c)].is_zero() {
                    let f = -a[(i, c)].clone();
                    a.add_row(r, i, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (0..m)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); m];
                v[free] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[(row, free)].clone();
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Monic characteristic polynomial `det(λI − M)`, via reduction to upper
    /// Hessenberg form followed by the standard three-term recurrence.
    pub fn char_poly(&self) -> Result<UniPoly> {
        self.require_square()?;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(p) = (m..n).find(|&i| !h[(i, m - 1)].is_zero()) else {
                continue;
            };
            h.swap_rows(p, m);
            h.swap_cols(p, m);
            let piv = h[(m, m - 1)].clone();
            for i in m + 1..n {
                if h[(i, m - 1)].is_zero() {
                    continue;
                }
                let u = &h[(i, m - 1)] / &piv;
                for j in 0..n {
                    let v = h[(m, j)].clone();
                    if !v.is_zero() {
                        h[(i, j)] -= &u * v;
                    }
                }
                for r in 0..n {
                    let v = h[(r, i)].clone();
                    if !v.is_zero() {
                        h[(r, m)] += &u * v;
                    }
                }
            }
        }
        // polys[m] = charpoly of the leading m×m block.
        let mut polys = vec![UniPoly::one()];
        for m in 1..=n {
            let lin = UniPoly::new(vec![-h[(m - 1, m - 1)].clone(), Rational::one()]);
            let mut pm = &lin * &polys[m - 1];
            let mut prod = Rational::one();
            for i in (1..m).rev() {
                prod *= &h[(i, i - 1)];
                if prod.is_zero() {
                    break;
                }
                let coef = &h[(i - 1, m - 1)] * &prod;
                if !coef.is_zero() {
                    pm = &pm - &polys[i - 1].scale(&coef);
                }
            }
            polys.push(pm);
        }
        Ok(polys.pop().unwrap())
    }

    /// Congruence diagonalization of a symmetric matrix: returns `(B, d)`
    /// with `Bᵀ M B = diag(d)`, `B` nonsingular. Zero diagonal pivots with a
    /// nonzero off-diagonal partner are repaired by a 2×2 shear.
    pub fn congruence_diagonalize(&self) -> Result<(Matrix, Vec<Rational>)> {
        self.require_square()?;
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut b = Matrix::identity(n);
        for k in 0..n {
            if a[(k, k)].is_zero() {
                if let Some(j) = (k + 1..n).find(|&j| !a[(j, j)].is_zero()) {
                    a.swap_rows(k, j);
                    a.swap_cols(k, j);
                    b.swap_cols(k, j);
                } else if let Some(j) = (k + 1..n).find(|&j| !a[(k, j)].is_zero()) {
                    // e_k <- e_k + e_j; new pivot is 2 a_kj.
                    a.add_row(j, k, &Rational::one());
                    a.add_col(j, k, &Rational::one());
                    b.add_col(j, k, &Rational::one());
                } else {
                    continue;
                }
            }
            let piv = a[(k, k)].clone();
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = -(&a[(i, k)] / &piv);
                a.add_row(k, i, &f);
                a.add_col(k, i, &f);
                b.add_col(k, i, &f);
            }
        }
        let d = (0..n).map(|i| a[(i, i)].clone()).collect();
        Ok((b, d))
    }

    /// row[dst] += f·row[src]
    fn add_row(&mut self, src: usize, dst: usize, f: &Rational) {
        for j in 0..self.cols {
            let v = self[(src, j)].clone();
            if !v.is_zero() {
                self[(dst, j)] += f * v;
            }
        }
    }

    /// col[dst] += f·col[src]
    fn add_col(&mut self, src: usize, dst: usize, f: &Rational) {
        for i in 0..self.rows {
            let v = self[(i, src)].clone();
            if !v.is_zero() {
                self[(i, dst)] += f * v;
            }
        }
    }

    /// Inertia by exact congruence diagonalization.
    pub fn signature(&self) -> Result<Inertia> {
        let (_, d) = self.congruence_diagonalize()?;
        let mut s = Inertia {
            n_neg: 0,
            n_zero: 0,
            n_pos: 0,
        };
        for x in &d {
            if x.is_zero() {
                s.n_zero += 1;
            } else if x.is_negative() {
                s.n_neg += 1;
            } else {
                s.n_pos += 1;
            }
        }
        Ok(s)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToString::to_string).collect())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{:?}", self.to_strings())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let w = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>w$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn hilbert3() -> Matrix {
        Matrix::from_rows(vec![
            vec![rat(1, 1), rat(1, 2), rat(1, 3)],
            vec![rat(1, 2), rat(1, 3), rat(1, 4)],
            vec![rat(1, 3), rat(1, 4), rat(1, 5)],
        ])
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::identity(4).rank(), 4);
        assert_eq!(Matrix::from_ints(&[&[0, 1], &[0, 0]]).rank(), 1);
        assert_eq!(hilbert3().rank(), 3);
        assert_eq!(Matrix::zeros(3, 5).rank(), 0);
        assert_eq!(Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]).rank(), 2);
    }

    #[test]
    fn determinant_matches_hand_values() {
        // det of the 3x3 Hilbert matrix is 1/2160.
        assert_eq!(hilbert3().det().unwrap(), rat(1, 2160));
        assert_eq!(Matrix::from_ints(&[&[0, 1], &[1, 0]]).det().unwrap(), int(-1));
        assert_eq!(Matrix::from_ints(&[&[1, 2], &[2, 4]]).det().unwrap(), int(0));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(Matrix::identity(3).inverse().unwrap(), Matrix::identity(3));
        let swap = Matrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(swap.inverse().unwrap(), swap);
        let d = Matrix::diagonal(&[int(2), rat(1, 3)]);
        assert_eq!(d.inverse().unwrap(), Matrix::diagonal(&[rat(1, 2), int(3)]));
        assert_eq!(
            Matrix::from_ints(&[&[1, 2], &[2, 4]]).inverse(),
            Err(Error::Singular)
        );
        let h = hilbert3();
        assert_eq!(&h * &h.inverse().unwrap(), Matrix::identity(3));
    }

    #[test]
    fn char_poly_examples() {
        let nil = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(nil.char_poly().unwrap(), UniPoly::from_ints(&[0, 0, 1]));
        let rot = Matrix::from_ints(&[&[0, -1], &[1, 0]]);
        assert_eq!(rot.char_poly().unwrap(), UniPoly::from_ints(&[1, 0, 1]));
        // Companion matrix of λ³ - 2λ² + 3λ - 5.
        let comp = Matrix::from_ints(&[&[0, 0, 5], &[1, 0, -3], &[0, 1, 2]]);
        assert_eq!(comp.char_poly().unwrap(), UniPoly::from_ints(&[-5, 3, -2, 1]));
        assert!(Matrix::zeros(2, 3).char_poly().is_err());
    }

    #[test]
    fn signature_examples() {
        let s = Matrix::diagonal(&[int(1), int(-1)]).signature().unwrap();
        assert_eq!((s.n_neg, s.n_zero, s.n_pos), (1, 0, 1));
        let s = Matrix::zeros(1, 1).signature().unwrap();
        assert_eq!((s.n_neg, s.n_zero, s.n_pos), (0, 1, 0));
        // Hyperbolic plane: zero diagonal needs the 2x2 repair.
        let s = Matrix::from_ints(&[&[0, 1], &[1, 0]]).signature().unwrap();
        assert_eq!((s.n_neg, s.n_zero, s.n_pos), (1, 0, 1));
        assert_eq!(
            Matrix::from_ints(&[&[0, 1], &[2, 0]]).signature(),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn congruence_diagonalization_is_congruence() {
        let m = Matrix::from_ints(&[&[0, 1, 0, 2], &[1, 0, 3, 0], &[0, 3, 0, 0], &[2, 0, 0, 0]]);
        let (b, d) = m.congruence_diagonalize().unwrap();
        assert_eq!(&(&b.transpose() * &m) * &b, Matrix::diagonal(&d));
        assert_ne!(b.det().unwrap(), int(0));
    }

    #[test]
    fn kernel_spans_nullspace() {
        let m = Matrix::from_ints(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        assert!(Matrix::identity(3).kernel().is_empty());
    }

    #[test]
    fn solve_left_detects_inconsistency() {
        let x = Matrix::from_ints(&[&[1, 0], &[0, 1], &[0, 0]]);
        let y = Matrix::from_ints(&[&[2, 0], &[0, 2], &[0, 0]]);
        assert_eq!(x.solve_left(&y).unwrap(), Matrix::diagonal(&[int(2), int(2)]));
        let z = Matrix::from_ints(&[&[1, 0], &[0, 0], &[0, 1]]);
        assert!(x.solve_left(&z).is_none());
    }
}
