//! Small exact-rational linear algebra helpers shared across modules.
//!
//! All vectors and matrices are dense and tiny (ambient dimension <= 5),
//! so plain Gaussian elimination over `BigRational` is the right tool.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Q>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMat { rows: r, cols: c, data: rows.concat() }
    }

    pub fn from_cols(cols: &[Vec<Q>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = QMat::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Q> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = &self[(i, k)] * &other[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> QMat {
        let mut out = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Reduced row echelon form; returns the pivot column of each pivot row.
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
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i != r && !self[(i, c)].is_zero() {
                    let f = self[(i, c)].clone();
                    for j in c..self.cols {
                        let sub = &f * &self[(r, j)];
                        self[(i, j)] -= sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Solve `self * x = b` exactly. Returns `None` if inconsistent; when the
    /// system is underdetermined, free variables are set to zero.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = QMat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        // inconsistent if a pivot lands in the augmented column
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Q::one();
        }
        let pivots = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        let mut out = QMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Some(out)
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = Q;
    fn index(&self, (i, j): (usize, usize)) -> &Q {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Q], c: &Q) -> Vec<Q> {
    a.iter().map(|x| x * c).collect()
}

pub fn neg(a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn is_integral(x: &Q) -> bool {
    x.denom().is_one()
}

/// Membership of `v` in the closed cone of nonnegative rational
/// combinations of `gens`, decided exactly by Fourier-Motzkin
/// elimination on the coefficient variables.
pub fn in_rational_cone(gens: &[Vec<Q>], v: &[Q]) -> bool {
    // System: sum_i a_i g_i = v, a_i >= 0. Eliminate the equality
    // constraints first by solving for pivot variables, then check the
    // induced inequalities on the free variables by recursion.
    let n = v.len();
    let k = gens.len();
    if k == 0 {
        return is_zero_vec(v);
    }
    // Matrix with columns g_i, augmented with v.
    let mut aug = QMat::zero(n, k + 1);
    for (j, g) in gens.iter().enumerate() {
        assert_eq!(g.len(), n);
        for i in 0..n {
            aug[(i, j)] = g[i].clone();
        }
    }
    for i in 0..n {
        aug[(i, k)] = v[i].clone();
    }
    let pivots = aug.rref();
    if pivots.last() == Some(&k) {
        return false; // v not in the linear span
    }
    // a_pivot = rhs - sum_{free j} coeff * a_j ; require all a >= 0.
    // Express every variable as an affine function of the free ones and
    // run Fourier-Motzkin on "affine expression >= 0".
    let free: Vec<usize> = (0..k).filter(|j| !pivots.contains(j)).collect();
    let nf = free.len();
    // rows: one inequality per variable: c0 + sum c_j t_j >= 0
    let mut ineqs: Vec<Vec<Q>> = Vec::new();
    for var in 0..k {
        let mut row = vec![Q::zero(); nf + 1];
        if let Some(r) = pivots.iter().position(|&c| c == var) {
            row[0] = aug[(r, k)].clone();
            for (fj, &fc) in free.iter().enumerate() {
                row[1 + fj] = -aug[(r, fc)].clone();
            }
        } else {
            let fj = free.iter().position(|&fc| fc == var).unwrap();
            row[1 + fj] = Q::one();
        }
        ineqs.push(row);
    }
    fourier_motzkin_feasible(ineqs, nf)
}

/// Feasibility of a system of affine inequalities `c0 + sum c_j t_j >= 0`
/// in `nf` real variables, by Fourier-Motzkin elimination.
fn fourier_motzkin_feasible(mut ineqs: Vec<Vec<Q>>, nf: usize) -> bool {
    for var in (1..=nf).rev() {
        let mut lower = Vec::new(); // coeff > 0 rows
        let mut upper = Vec::new(); // coeff < 0 rows
        let mut rest = Vec::new();
        for row in ineqs {
            let c = row[var].clone();
            if c.is_zero() {
                rest.push(row);
            } else if c.is_positive() {
                lower.push(row);
            } else {
                upper.push(row);
            }
        }
        for lo in &lower {
            for up in &upper {
                // lo: a + p t >= 0 (p>0)  => t >= -a/p
                // up: b + q t >= 0 (q<0)  => t <= -b/q
                // combine: -a/p <= -b/q  <=>  -a*q >= -b*p (q<0 flips)
                let p = &lo[var];
                let qc = &up[var];
                let mut row = vec![Q::zero(); var];
                for j in 0..var {
                    row[j] = &lo[j] * &(-qc.clone()) + &up[j] * p;
                }
                rest.push(row);
            }
        }
        for r in &mut rest {
            r.truncate(var);
        }
        ineqs = rest;
    }
    ineqs.iter().all(|row| !row[0].is_negative())
}

/// Floor of the square root of a nonnegative rational, as a BigInt.
pub fn isqrt_floor(x: &Q) -> BigInt {
    assert!(!x.is_negative());
    let fl = x.to_integer();
    fl.sqrt()
}
