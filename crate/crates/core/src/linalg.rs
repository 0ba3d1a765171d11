//! Exact dense linear algebra over ℚ(√3): row reduction, rank, nullspace,
//! affine solves and the inertia of symmetric forms.

use crate::clifford::{Coords, Multivector, Signature};
use crate::error::{Error, Result};
use crate::scalar::QS3Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<QS3Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![QS3Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = QS3Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<QS3Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[QS3Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: Vec<QS3Scalar>) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self[(r, c)].recip().expect("nonzero pivot");
            for k in c..self.cols {
                if !self[(r, k)].is_zero() {
                    self[(r, k)] = &self[(r, k)] * &inv;
                }
            }
            let pivot_row: Vec<(usize, QS3Scalar)> = (c..self.cols)
                .filter(|&k| !self[(r, k)].is_zero())
                .map(|k| (k, self[(r, k)].clone()))
                .collect();
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for (k, v) in &pivot_row {
                    let d = &f * v;
                    self[(i, *k)] -= &d;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<QS3Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![QS3Scalar::zero(); self.cols];
                v[f] = QS3Scalar::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -&m[(r, f)];
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[QS3Scalar]) -> Vec<QS3Scalar> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = QS3Scalar::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = QS3Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &QS3Scalar {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut QS3Scalar {
        &mut self.data[r * self.cols + c]
    }
}

/// Row echelon basis grown one row at a time; keeps memory at `rank × cols`.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<QS3Scalar>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the basis; returns `true` if it was independent.
    pub fn insert(&mut self, mut row: Vec<QS3Scalar>) -> bool {
        for (pc, basis_row) in &self.rows {
            if row[*pc].is_zero() {
                continue;
            }
            let f = row[*pc].clone();
            for (k, v) in basis_row.iter().enumerate() {
                if !v.is_zero() {
                    row[k] -= &(&f * v);
                }
            }
        }
        let Some(pc) = row.iter().position(|v| !v.is_zero()) else {
            return false;
        };
        let inv = row[pc].recip().expect("nonzero pivot");
        for v in row.iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        // keep the basis fully reduced in the new pivot column
        for (_, basis_row) in self.rows.iter_mut() {
            if basis_row[pc].is_zero() {
                continue;
            }
            let f = basis_row[pc].clone();
            for (k, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    basis_row[k] -= &(&f * v);
                }
            }
        }
        self.rows.push((pc, row));
        true
    }
}

/// Solution set of `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineSolution {
    Inconsistent,
    Unique(Vec<QS3Scalar>),
    Family {
        particular: Vec<QS3Scalar>,
        directions: Vec<Vec<QS3Scalar>>,
    },
}

pub fn solve_affine(a: &Matrix, b: &[QS3Scalar]) -> AffineSolution {
    assert_eq!(a.rows(), b.len());
    let n = a.cols();
    let mut aug = Matrix::zeros(a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let pivots = aug.rref();
    if pivots.contains(&n) {
        return AffineSolution::Inconsistent;
    }
    let mut particular = vec![QS3Scalar::zero(); n];
    for (r, &pc) in pivots.iter().enumerate() {
        particular[pc] = aug[(r, n)].clone();
    }
    let directions = a.nullspace();
    if directions.is_empty() {
        AffineSolution::Unique(particular)
    } else {
        AffineSolution::Family {
            particular,
            directions,
        }
    }
}

/// Inertia `(n_plus, n_minus, n_zero)` of a symmetric matrix, by symmetric
/// elimination (congruence), so only exact signs of pivots are needed.
pub fn inertia(sym: &Matrix) -> (usize, usize, usize) {
    let n = sym.rows();
    assert_eq!(n, sym.cols());
    let mut m = sym.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let (mut pos, mut neg) = (0, 0);
    while !active.is_empty() {
        let diag = active.iter().copied().find(|&i| !m[(i, i)].is_zero());
        let pivot = match diag {
            Some(p) => p,
            None => {
                // All remaining diagonal entries vanish: replace e_i by e_i + e_j
                // for an off-diagonal nonzero, making the (i, i) entry 2 m_ij.
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !m[(i, j)].is_zero());
                let Some((i, j)) = pair else { break };
                for k in 0..n {
                    let v = m[(j, k)].clone();
                    m[(i, k)] += &v;
                }
                for k in 0..n {
                    let v = m[(k, j)].clone();
                    m[(k, i)] += &v;
                }
                i
            }
        };
        let d = m[(pivot, pivot)].clone();
        match d.signum() {
            1 => pos += 1,
            -1 => neg += 1,
            _ => unreachable!(),
        }
        let inv = d.recip().expect("nonzero pivot");
        active.retain(|&i| i != pivot);
        for &i in &active {
            if m[(i, pivot)].is_zero() {
                continue;
            }
            let f = &m[(i, pivot)] * &inv;
            for &k in &active {
                let v = &f * &m[(pivot, k)];
                m[(i, k)] -= &v;
            }
            m[(i, pivot)] = QS3Scalar::zero();
        }
        for &k in &active {
            m[(pivot, k)] = QS3Scalar::zero();
        }
    }
    (pos, neg, n - pos - neg)
}

/// A linear endomorphism of the 8-dimensional carrier, stored by the
/// images of the basis blades in coordinate order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    images: Vec<Coords>,
}

impl LinearMap {
    pub fn identity() -> Self {
        Self {
            images: (0..8)
                .map(|i| {
                    let mut c: Coords = Default::default();
                    c[i] = QS3Scalar::one();
                    c
                })
                .collect(),
        }
    }

    pub fn from_images(images: [Coords; 8]) -> Self {
        Self {
            images: images.into_iter().collect(),
        }
    }

    /// `rows[i][j]` is the coefficient of blade `i` in the image of blade `j`.
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if m.rows() != 8 || m.cols() != 8 {
            return Err(Error::Invalid(format!(
                "linear map must be 8x8, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self {
            images: (0..8)
                .map(|j| std::array::from_fn(|i| m[(i, j)].clone()))
                .collect(),
        })
    }

    pub fn to_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(8, 8);
        for (j, img) in self.images.iter().enumerate() {
            for (i, v) in img.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn image(&self, j: usize) -> &Coords {
        &self.images[j]
    }

    pub fn apply_coords(&self, x: &Coords) -> Coords {
        let mut out: Coords = Default::default();
        for (xj, img) in x.iter().zip(&self.images) {
            if xj.is_zero() {
                continue;
            }
            for (o, v) in out.iter_mut().zip(img) {
                if !v.is_zero() {
                    *o += &(xj * v);
                }
            }
        }
        out
    }

    pub fn apply(&self, x: &Multivector) -> Multivector {
        Multivector::from_coords(x.sig(), self.apply_coords(x.coords()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        LinearMap {
            images: other.images.iter().map(|img| self.apply_coords(img)).collect(),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.to_matrix().rank() == 8
    }

    pub fn basis_image(&self, sig: Signature, j: usize) -> Multivector {
        Multivector::from_coords(sig, self.images[j].clone())
    }
}
