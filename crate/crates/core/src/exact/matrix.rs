use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_traits::{Signed, Zero};

use super::GaussianRational as Q;
use crate::error::LinalgError;

/// Dense row-major matrix over Q(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

/// Solution set of `m·x = rhs` for a single right-hand side column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Inconsistent,
    Affine {
        particular: Vec<Q>,
        kernel: Vec<Vec<Q>>,
    },
}

/// Reduced row echelon form together with the pivot column of each nonzero row.
struct Echelon {
    m: Matrix,
    pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Ragged);
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds from integer entries; convenient for tests and fixtures.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Q::from(x)).collect())
                .collect(),
        )
        .expect("rectangular input")
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Q) -> Self {
        let data = (0..rows)
            .flat_map(|i| (0..cols).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j));
        Self {
            rows,
            cols,
            data: data.collect(),
        }
    }

    pub fn column_vector(v: Vec<Q>) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v,
        }
    }

    pub fn diagonal(d: Vec<Q>) -> Self {
        let n = d.len();
        let mut m = Self::zeros(n, n);
        for (k, x) in d.into_iter().enumerate() {
            m[(k, k)] = x;
        }
        m
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

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Q::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.conj_transpose()
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn checked_mul(&self, o: &Matrix) -> Result<Matrix, LinalgError> {
        if self.cols != o.rows {
            return Err(LinalgError::Dimension {
                left: (self.rows, self.cols),
                right: (o.rows, o.cols),
            });
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product; the row index of `a ⊗ b` is `ia·rows(b) + ib`.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        Self::from_fn(self.rows * o.rows, self.cols * o.cols, |i, j| {
            let a = &self[(i / o.rows, j / o.cols)];
            if a.is_zero() {
                Q::zero()
            } else {
                a * &o[(i % o.rows, j % o.cols)]
            }
        })
    }

    fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let x = &m[(r, j)] * &inv;
                m[(r, j)] = x;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let Echelon { m, pivots } = self.echelon();
        let free = (0..self.cols).filter(|c| !pivots.contains(c));
        free.map(|f| {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[(r, f)].clone();
            }
            v
        })
        .collect()
    }

    /// Solves `self · x = rhs` for a single column `rhs`.
    pub fn solve(&self, rhs: &[Q]) -> Result<Solution, LinalgError> {
        if rhs.len() != self.rows {
            return Err(LinalgError::Dimension {
                left: (self.rows, self.cols),
                right: (rhs.len(), 1),
            });
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = rhs[i].clone();
        }
        let Echelon { m, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return Ok(Solution::Inconsistent);
        }
        let mut particular = vec![Q::zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            particular[pc] = m[(r, self.cols)].clone();
        }
        Ok(Solution::Affine {
            particular,
            kernel: self.kernel(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Q::one();
        }
        let Echelon { m, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| m[(i, n + j)].clone()))
    }

    /// Exact positive-semidefiniteness test for a Hermitian matrix by pivoted
    /// LDL* elimination.
    pub fn hermitian_psd(&self) -> Result<bool, LinalgError> {
        if !self.is_hermitian() {
            return Err(LinalgError::NotHermitian);
        }
        let mut m = self.clone();
        let mut active: Vec<usize> = (0..m.rows).collect();
        while !active.is_empty() {
            // diagonal entries of a Hermitian matrix are real
            if active.iter().any(|&k| m[(k, k)].re.is_negative()) {
                return Ok(false);
            }
            let Some(pos) = active.iter().position(|&k| !m[(k, k)].re.is_zero()) else {
                // zero diagonal: PSD only if the remaining block vanishes
                let clear = active
                    .iter()
                    .all(|&i| active.iter().all(|&j| m[(i, j)].is_zero()));
                return Ok(clear);
            };
            let k = active.swap_remove(pos);
            let d = m[(k, k)].clone();
            for &i in &active {
                if m[(i, k)].is_zero() {
                    continue;
                }
                let f = &m[(i, k)] / &d;
                for &j in &active {
                    if m[(k, j)].is_zero() {
                        continue;
                    }
                    let s = &f * &m[(k, j)];
                    m[(i, j)] -= &s;
                }
            }
        }
        Ok(true)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, o: &Matrix) -> Matrix {
        self.checked_mul(o).expect("matrix dimensions agree")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Q]> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_list().entries(rows).finish()
    }
}

pub fn solve_linear(m: &Matrix, rhs: &Matrix) -> Result<Vec<Solution>, LinalgError> {
    if m.rows() != rhs.rows() {
        return Err(LinalgError::Dimension {
            left: (m.rows(), m.cols()),
            right: (rhs.rows(), rhs.cols()),
        });
    }
    (0..rhs.cols()).map(|j| m.solve(&rhs.column(j))).collect()
}

pub fn kernel(m: &Matrix) -> Vec<Vec<Q>> {
    m.kernel()
}

pub fn is_bijective(m: &Matrix) -> bool {
    m.is_bijective()
}

pub fn hermitian_psd(m: &Matrix) -> Result<bool, LinalgError> {
    m.hermitian_psd()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Q {
        s.parse().unwrap()
    }

    #[test]
    fn identity_solve() {
        let rhs = Matrix::column_vector(vec![Q::zero(), Q::one(), Q::zero()]);
        let sols = solve_linear(&Matrix::identity(3), &rhs).unwrap();
        assert_eq!(
            sols,
            vec![Solution::Affine {
                particular: rhs.column(0),
                kernel: vec![]
            }]
        );
    }

    #[test]
    fn zero_map_solve_has_full_kernel() {
        let sols = solve_linear(&Matrix::zeros(2, 2), &Matrix::zeros(2, 1)).unwrap();
        let Solution::Affine { particular, kernel } = &sols[0] else {
            panic!()
        };
        assert!(particular.iter().all(Q::is_zero));
        assert_eq!(kernel.len(), 2);
    }

    #[test]
    fn rank_one_complex_system() {
        // hand row reduction: row2 = -i·row1, so x1 + i·x2 = 1 with x2 free
        let m = Matrix::from_rows(vec![vec![q("1"), q("i")], vec![q("-i"), q("1")]]).unwrap();
        let sol = m.solve(&[q("1"), q("-i")]).unwrap();
        let Solution::Affine { particular, kernel } = sol else {
            panic!()
        };
        assert_eq!(particular, vec![q("1"), q("0")]);
        assert_eq!(kernel, vec![vec![q("-i"), q("1")]]);
        assert_eq!(m.mul_vec(&kernel[0]), vec![Q::zero(), Q::zero()]);
    }

    #[test]
    fn inconsistent_system() {
        let m = Matrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.solve(&[q("1"), q("2")]).unwrap(), Solution::Inconsistent);
        assert!(m.solve(&[q("1")]).is_err());
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel(&Matrix::identity(4)).is_empty());
        assert_eq!(kernel(&Matrix::zeros(1, 3)).len(), 3);
        let k = kernel(&Matrix::from_ints(&[&[1, 2, 3]]));
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn bijectivity_examples() {
        assert!(is_bijective(&Matrix::identity(2)));
        assert!(!is_bijective(&Matrix::zeros(2, 3)));
        assert!(!is_bijective(&Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 0]])));
        // det [[0,1],[1,0]] = -1
        assert!(is_bijective(&Matrix::from_ints(&[&[0, 1], &[1, 0]])));
    }

    #[test]
    fn psd_examples() {
        assert!(hermitian_psd(&Matrix::identity(3)).unwrap());
        // eigenvalues of [[1,2],[2,1]] are 3 and -1
        assert!(!hermitian_psd(&Matrix::from_ints(&[&[1, 2], &[2, 1]])).unwrap());
        assert!(hermitian_psd(&Matrix::from_ints(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 3]])).unwrap());
        assert!(!hermitian_psd(&Matrix::from_ints(&[&[0, 1], &[1, 0]])).unwrap());
        assert!(hermitian_psd(&Matrix::from_ints(&[&[1, 2], &[3, 1]])).is_err());
        let h = Matrix::from_rows(vec![vec![q("2"), q("i")], vec![q("-i"), q("2")]]).unwrap();
        assert!(hermitian_psd(&h).unwrap());
    }

    #[test]
    fn inverse_round_trip() {
        let m = Matrix::from_rows(vec![vec![q("1"), q("i")], vec![q("2"), q("1/3")]]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        assert!(Matrix::from_ints(&[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn kron_dimensions_multiply() {
        let a = Matrix::from_ints(&[&[1, 2], &[3, 4]]);
        let b = Matrix::from_ints(&[&[0, 1, 1]]);
        let k = a.kron(&b);
        assert_eq!((k.rows(), k.cols()), (2, 6));
        assert_eq!(k[(1, 4)], Q::from(4));
        assert_eq!(k[(0, 3)], Q::from(0));
    }
}
