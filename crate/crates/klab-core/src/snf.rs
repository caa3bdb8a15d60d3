//! Integer Smith normal form with unimodular transforms.
//!
//! This is the single engine behind every coinvariant and torsion
//! computation in the crate: `d = u * a * v` with `u`, `v` unimodular
//! and `d` diagonal with `d[0] | d[1] | ...`.

use num::{BigInt, Integer, One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_cols_i64(cols: &[Vec<i64>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = IMat::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut out = IMat::zero(self.rows, other.cols);
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

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
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

    /// row[a] += c * row[b]
    fn add_row(&mut self, a: usize, b: usize, c: &BigInt) {
        for j in 0..self.cols {
            let add = c * &self[(b, j)];
            self[(a, j)] += add;
        }
    }

    /// col[a] += c * col[b]
    fn add_col(&mut self, a: usize, b: usize, c: &BigInt) {
        for i in 0..self.rows {
            let add = c * &self[(i, b)];
            self[(i, a)] += add;
        }
    }

    fn neg_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Smith normal form: `d = u * a * v`.
#[derive(Debug, Clone)]
pub struct Snf {
    pub u: IMat,
    pub u_inv: IMat,
    pub v: IMat,
    pub d: IMat,
    /// Nonzero diagonal entries d_0 | d_1 | ... (all positive).
    pub diag: Vec<BigInt>,
}

pub fn smith_normal_form(a: &IMat) -> Snf {
    let (rows, cols) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IMat::identity(rows);
    let mut u_inv = IMat::identity(rows);
    let mut v = IMat::identity(cols);

    let mut k = 0;
    while k < rows && k < cols {
        // find a nonzero pivot of minimal absolute value in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if !d[(i, j)].is_zero() {
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => d[(i, j)].abs() < d[(bi, bj)].abs(),
                    };
                    if better {
                        best = Some((i, j));
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        u_inv.swap_cols(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);

        // clear row and column k; restart if a smaller residue appears
        let mut dirty = true;
        while dirty {
            dirty = false;
            for i in k + 1..rows {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let qt = div_round(&d[(i, k)], &d[(k, k)]);
                let c = -qt;
                d.add_row(i, k, &c);
                u.add_row(i, k, &c);
                u_inv.add_col(k, i, &-&c);
                if !d[(i, k)].is_zero() {
                    // remainder smaller than pivot: swap it up and retry
                    d.swap_rows(k, i);
                    u.swap_rows(k, i);
                    u_inv.swap_cols(k, i);
                    dirty = true;
                }
            }
            for j in k + 1..cols {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let qt = div_round(&d[(k, j)], &d[(k, k)]);
                let c = -qt;
                d.add_col(j, k, &c);
                v.add_col(j, k, &c);
                if !d[(k, j)].is_zero() {
                    d.swap_cols(k, j);
                    v.swap_cols(k, j);
                    dirty = true;
                }
            }
        }

        // divisibility pass: pivot must divide the whole trailing block
        let mut must_retry = false;
        'scan: for i in k + 1..rows {
            for j in k + 1..cols {
                if !(&d[(i, j)] % &d[(k, k)]).is_zero() {
                    // fold row i into row k to expose the gcd
                    d.add_row(k, i, &BigInt::one());
                    u.add_row(k, i, &BigInt::one());
                    u_inv.add_col(i, k, &BigInt::from(-1));
                    must_retry = true;
                    break 'scan;
                }
            }
        }
        if must_retry {
            continue;
        }
        if d[(k, k)].is_negative() {
            d.neg_row(k);
            u.neg_row(k);
            u_inv.swap_cols(k, k); // no-op placeholder for symmetry
            for i in 0..rows {
                let vneg = -u_inv[(i, k)].clone();
                u_inv[(i, k)] = vneg;
            }
        }
        k += 1;
    }

    let diag: Vec<BigInt> = (0..usize::min(rows, cols))
        .map(|i| d[(i, i)].clone())
        .take_while(|x| !x.is_zero())
        .collect();
    debug_assert_eq!(u.mul(a).mul(&v), d);
    debug_assert_eq!(u.mul(&u_inv), IMat::identity(rows));
    Snf { u, u_inv, v, d, diag }
}

/// Division rounding toward the nearest integer, so remainders shrink.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut qt, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            qt += 1;
        } else {
            qt -= 1;
        }
    }
    qt
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_rows(rows: &[&[i64]]) -> IMat {
        let r = rows.len();
        let c = rows[0].len();
        let mut m = IMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(v);
            }
        }
        m
    }

    #[test]
    fn snf_divisibility_chain() {
        let a = from_rows(&[&[-6, 111, -36, 6], &[5, -672, 210, 74], &[0, -255, 81, 24], &[-7, 255, -81, -10]]);
        let s = smith_normal_form(&a);
        let expect: Vec<BigInt> = [1i64, 3, 21].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(s.diag, expect);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
    }

    #[test]
    fn snf_wide_and_tall() {
        let a = from_rows(&[&[2, 4, 4]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.diag, vec![BigInt::from(2)]);
        let b = from_rows(&[&[2], &[4], &[4]]);
        let s = smith_normal_form(&b);
        assert_eq!(s.diag, vec![BigInt::from(2)]);
    }

    #[test]
    fn snf_zero_matrix() {
        let a = IMat::zero(2, 3);
        let s = smith_normal_form(&a);
        assert!(s.diag.is_empty());
    }
}
