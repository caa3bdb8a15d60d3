//! Dense linear algebra over the extension field K and enumeration of
//! k-rational subspaces in reduced row echelon form.

use super::gf::{FieldCtx, Fld, KBase, KExt};

/// Row-major matrix over K.
pub type KMat = Vec<Vec<KExt>>;

pub fn krref(ctx: &FieldCtx, m: &mut KMat) -> Vec<usize> {
    let f = &ctx.kext;
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !f.is_zero(&m[i][c])) else { continue };
        m.swap(r, p);
        let inv = f.inv(&m[r][c]);
        for j in c..cols {
            m[r][j] = f.mul(&m[r][j], &inv);
        }
        for i in 0..rows {
            if i != r && !f.is_zero(&m[i][c]) {
                let factor = m[i][c].clone();
                for j in c..cols {
                    let sub = f.mul(&factor, &m[r][j]);
                    m[i][j] = f.sub(&m[i][j], &sub);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.retain(|row| row.iter().any(|x| !f.is_zero(x)));
    pivots
}

pub fn krank(ctx: &FieldCtx, m: &KMat) -> usize {
    let mut c = m.clone();
    krref(ctx, &mut c).len()
}

/// Dimension of the intersection of two row spaces inside K^n:
/// dim A + dim B - dim(A + B).
pub fn kintersect_dim(ctx: &FieldCtx, a: &KMat, b: &KMat) -> usize {
    let da = krank(ctx, a);
    let db = krank(ctx, b);
    let mut stacked = a.clone();
    stacked.extend_from_slice(b);
    let ds = krank(ctx, &stacked);
    da + db - ds
}

/// k-rational subspace of k^n, stored as canonical RREF basis rows.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subspace {
    pub n: usize,
    pub basis: Vec<Vec<KBase>>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn zero(n: usize) -> Subspace {
        Subspace { n, basis: vec![] }
    }

    pub fn full(ctx: &FieldCtx, n: usize) -> Subspace {
        let k = &ctx.kfield;
        let basis = (0..n)
            .map(|i| {
                let mut row = vec![k.zero(); n];
                row[i] = k.one();
                row
            })
            .collect();
        Subspace { n, basis }
    }

    /// Canonicalize arbitrary spanning rows into RREF; returns `None`
    /// when a row has the wrong length.
    pub fn from_rows(ctx: &FieldCtx, n: usize, rows: &[Vec<KBase>]) -> Option<Subspace> {
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        let k = &ctx.kfield;
        let mut m: Vec<Vec<KBase>> = rows.to_vec();
        // RREF over k
        let mut r = 0;
        for c in 0..n {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !k.is_zero(&m[i][c])) else { continue };
            m.swap(r, p);
            let inv = k.inv(&m[r][c]);
            for j in 0..n {
                m[r][j] = k.mul(&m[r][j], &inv);
            }
            for i in 0..m.len() {
                if i != r && !k.is_zero(&m[i][c]) {
                    let factor = m[i][c].clone();
                    for j in 0..n {
                        let sub = k.mul(&factor, &m[r][j]);
                        m[i][j] = k.sub(&m[i][j], &sub);
                    }
                }
            }
            r += 1;
        }
        m.retain(|row| row.iter().any(|x| !k.is_zero(x)));
        Some(Subspace { n, basis: m })
    }

    pub fn contains(&self, ctx: &FieldCtx, other: &Subspace) -> bool {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        let merged = Subspace::from_rows(ctx, self.n, &rows).expect("consistent sizes");
        merged.dim() == self.dim()
    }

    /// Basis rows embedded into K^n.
    pub fn embedded(&self, ctx: &FieldCtx) -> KMat {
        self.basis
            .iter()
            .map(|row| row.iter().map(|c| ctx.embed(c)).collect())
            .collect()
    }
}

fn next_combination(pivots: &mut [usize], n: usize) -> bool {
    let d = pivots.len();
    for i in (0..d).rev() {
        if pivots[i] < n - d + i {
            pivots[i] += 1;
            for j in i + 1..d {
                pivots[j] = pivots[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Every k-subspace of k^n, enumerated through RREF shapes. The count is
/// the Gaussian-binomial total, so callers must guard the dimension.
pub fn all_subspaces(ctx: &FieldCtx, n: usize) -> Vec<Subspace> {
    let k = &ctx.kfield;
    let elems = k.elements();
    let mut out = vec![Subspace::zero(n)];
    for d in 1..=n {
        let mut pivots: Vec<usize> = (0..d).collect();
        loop {
            // free entries: positions (r, c) with c > pivots[r], c not a pivot
            let free_positions: Vec<(usize, usize)> = (0..d)
                .flat_map(|r| {
                    let pr = pivots[r];
                    let piv = pivots.clone();
                    (pr + 1..n).filter(move |c| !piv.contains(c)).map(move |c| (r, c))
                })
                .collect();
            let mut assignment = vec![0usize; free_positions.len()];
            'fill: loop {
                let mut basis = vec![vec![k.zero(); n]; d];
                for r in 0..d {
                    basis[r][pivots[r]] = k.one();
                }
                for (idx, &(r, c)) in free_positions.iter().enumerate() {
                    basis[r][c] = elems[assignment[idx]].clone();
                }
                out.push(Subspace { n, basis });
                // advance the odometer over the free entries
                for i in 0..assignment.len() {
                    assignment[i] += 1;
                    if assignment[i] < elems.len() {
                        continue 'fill;
                    }
                    assignment[i] = 0;
                }
                break;
            }
            if !next_combination(&mut pivots, n) {
                break;
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Number of subspaces of k^n (Gaussian-binomial total), for guards.
pub fn subspace_count(q: u64, n: usize) -> u128 {
    let mut total: u128 = 0;
    for d in 0..=n {
        // gaussian binomial [n choose d]_q
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for i in 0..d {
            num *= (q as u128).pow((n - i) as u32) - 1;
            den *= (q as u128).pow((d - i) as u32) - 1;
        }
        total += num / den;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subspace_enumeration_f2() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let subs = all_subspaces(&ctx, 2);
        // 0, three lines, full
        assert_eq!(subs.len(), 5);
        assert_eq!(subspace_count(2, 2), 5);
        let subs3 = all_subspaces(&ctx, 3);
        assert_eq!(subs3.len() as u128, subspace_count(2, 3));
    }

    #[test]
    fn subspace_enumeration_f3() {
        let ctx = FieldCtx::new(3, 1, 1).unwrap();
        let subs = all_subspaces(&ctx, 2);
        assert_eq!(subs.len() as u128, subspace_count(3, 2));
    }

    #[test]
    fn containment_and_intersection() {
        let ctx = FieldCtx::new(2, 1, 1).unwrap();
        let full = Subspace::full(&ctx, 2);
        let line = Subspace::from_rows(&ctx, 2, &[vec![vec![1], vec![1]]]).unwrap();
        assert!(full.contains(&ctx, &line));
        assert!(!line.contains(&ctx, &full));
        let a = line.embedded(&ctx);
        let b = full.embedded(&ctx);
        assert_eq!(kintersect_dim(&ctx, &a, &b), 1);
    }

    #[test]
    fn krref_over_extension() {
        let ctx = FieldCtx::new(2, 1, 2).unwrap();
        let f = &ctx.kext;
        let y: KExt = vec![vec![0], vec![1]]; // the generator of K over k
        let one = f.one();
        let mut m: KMat = vec![vec![y.clone(), one.clone()], vec![one.clone(), y.clone()]];
        // determinant y^2 - 1 != 0, so rank 2
        let pivots = krref(&ctx, &mut m);
        assert_eq!(pivots.len(), 2);
    }
}
