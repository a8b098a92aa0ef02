//! Dense exact matrices over `Q(i)`.


use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::poly::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

/// Counts of positive, negative and zero entries after diagonalization.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Inertia {
    pub positives: usize,
    pub negatives: usize,
    pub zeros: usize,
}

impl Inertia {
    pub fn is_mixed(&self) -> bool {
        self.positives > 0 && self.negatives > 0
    }

    pub fn flipped(&self) -> Self {
        Self {
            positives: self.negatives,
            negatives: self.positives,
            zeros: self.zeros,
        }
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<GaussianRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Matrix whose columns are `cols` (each of equal length).
    pub fn from_columns(cols: &[Vec<GaussianRational>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
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

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.conj()).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = a * &rhs[(k, j)];
                    out[(i, j)] += &prod;
                }
            }
        }
        out
    }

    pub fn is_hermitian(&self) -> bool {
        self.rows == self.cols && *self == self.transpose().conj()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
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
            m.swap_rows(p, r);
            let inv = m[(r, c)].inv().unwrap();
            for j in 0..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in 0..m.cols {
                    let d = &f * &m[(r, j)];
                    m[(i, j)] -= &d;
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

    /// Basis of `{x : self * x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<GaussianRational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![GaussianRational::zero(); self.cols];
                v[f] = GaussianRational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&r[(row, f)];
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

    /// `row_dst += f * row_src` followed by `col_dst += conj(f) * col_src`:
    /// a congruence `E A E^H`.
    fn congruence_add(&mut self, dst: usize, src: usize, f: &GaussianRational) {
        for j in 0..self.cols {
            let d = f * &self[(src, j)];
            self[(dst, j)] += &d;
        }
        let fc = f.conj();
        for i in 0..self.rows {
            let d = &fc * &self[(i, src)];
            self[(i, dst)] += &d;
        }
    }

    /// Inertia of a Hermitian matrix by symmetric Gaussian elimination
    /// (congruence), exact throughout.
    pub fn hermitian_inertia(&self) -> Inertia {
        assert!(self.is_hermitian(), "inertia requires a Hermitian matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inertia = Inertia {
            positives: 0,
            negatives: 0,
            zeros: 0,
        };
        for k in 0..n {
            if a[(k, k)].is_zero() {
                if let Some(i) = (k + 1..n).find(|&i| !a[(i, i)].is_zero()) {
                    a.swap_rows(i, k);
                    a.swap_cols(i, k);
                } else if let Some((i, j)) = (k..n)
                    .flat_map(|i| (k..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !a[(i, j)].is_zero())
                {
                    // both diagonals vanish: adding conj(a_ji) * row j to row i
                    // makes the new diagonal 2|a_ij|^2
                    let f = a[(j, i)].conj();
                    a.congruence_add(i, j, &f);
                    a.swap_rows(i, k);
                    a.swap_cols(i, k);
                } else {
                    inertia.zeros += n - k;
                    break;
                }
            }
            let pivot = a[(k, k)].clone();
            debug_assert!(pivot.is_real() && !pivot.is_zero());
            if pivot.re.is_positive() {
                inertia.positives += 1;
            } else {
                inertia.negatives += 1;
            }
            for r in k + 1..n {
                if a[(r, k)].is_zero() {
                    continue;
                }
                let f = -(&a[(r, k)] / &pivot);
                a.congruence_add(r, k, &f);
            }
        }
        inertia
    }

    /// The real symmetric `2n x 2n` matrix `[[A, -B], [B, A]]` of a
    /// Hermitian `A + iB` acting on `R^2n`.
    pub fn realify(&self) -> Self {
        let n = self.rows;
        let mut out = Self::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..self.cols {
                let a = GaussianRational::real(self[(i, j)].re.clone());
                let b = GaussianRational::real(self[(i, j)].im.clone());
                out[(i, j)] = a.clone();
                out[(i + n, j + n)] = a;
                out[(i, j + n)] = -&b;
                out[(i + n, j)] = b;
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }
}
