//! Truncated Laurent series over the extension field K, with a Smith
//! normal form over K[[t]] that tracks the unimodular transforms. Every
//! series is known exactly below its precision horizon: inputs are
//! Laurent polynomials, and operations only cut from above.

use super::gf::{FieldCtx, Fld, KExt};
use crate::error::{KlabError, Result};

/// Exact Laurent polynomial: coefficient of t^(lo + i) at index i.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LaurentPoly {
    pub lo: i64,
    pub coeffs: Vec<KExt>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly { lo: 0, coeffs: vec![] }
    }

    pub fn monomial(ctx: &FieldCtx, c: KExt, exp: i64) -> LaurentPoly {
        if ctx.kext.is_zero(&c) {
            return LaurentPoly::zero();
        }
        LaurentPoly { lo: exp, coeffs: vec![c] }
    }

    pub fn one(ctx: &FieldCtx) -> LaurentPoly {
        LaurentPoly::monomial(ctx, ctx.kext.one(), 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn normalize(mut self, ctx: &FieldCtx) -> LaurentPoly {
        while self.coeffs.last().is_some_and(|c| ctx.kext.is_zero(c)) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| ctx.kext.is_zero(c)).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
        self
    }

    pub fn val(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.lo)
        }
    }

    pub fn add(&self, ctx: &FieldCtx, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.coeffs.len() as i64).max(other.lo + other.coeffs.len() as i64);
        let mut coeffs = vec![ctx.kext.zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.lo - lo) as usize + i] = c.clone();
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let idx = (other.lo - lo) as usize + i;
            coeffs[idx] = ctx.kext.add(&coeffs[idx], c);
        }
        LaurentPoly { lo, coeffs }.normalize(ctx)
    }

    pub fn neg(&self, ctx: &FieldCtx) -> LaurentPoly {
        let zero = ctx.kext.zero();
        LaurentPoly {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|c| ctx.kext.sub(&zero, c)).collect(),
        }
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![ctx.kext.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ctx.kext.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let add = ctx.kext.mul(a, b);
                coeffs[i + j] = ctx.kext.add(&coeffs[i + j], &add);
            }
        }
        LaurentPoly { lo: self.lo + other.lo, coeffs }.normalize(ctx)
    }

    /// Exact determinant of a matrix of Laurent polynomials by expansion.
    pub fn det(ctx: &FieldCtx, m: &[Vec<LaurentPoly>]) -> LaurentPoly {
        let n = m.len();
        if n == 0 {
            return LaurentPoly::one(ctx);
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = LaurentPoly::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<LaurentPoly>> = (1..n)
                .map(|i| (0..n).filter(|&c| c != j).map(|c| m[i][c].clone()).collect())
                .collect();
            let mut term = m[0][j].mul(ctx, &LaurentPoly::det(ctx, &minor));
            if j % 2 == 1 {
                term = term.neg(ctx);
            }
            acc = acc.add(ctx, &term);
        }
        acc
    }
}

/// Truncated series: exact below `prec`, unknown from `prec` upward.
/// Coefficients are stored for exponents in [lo, prec); everything below
/// `lo` is exactly zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncSeries {
    pub lo: i64,
    pub prec: i64,
    pub coeffs: Vec<KExt>,
}

impl TruncSeries {
    pub fn from_poly(ctx: &FieldCtx, p: &LaurentPoly, prec: i64) -> TruncSeries {
        let lo = p.val().unwrap_or(0).min(0).min(prec);
        let mut s = TruncSeries { lo, prec, coeffs: vec![ctx.kext.zero(); (prec - lo).max(0) as usize] };
        for (i, c) in p.coeffs.iter().enumerate() {
            let e = p.lo + i as i64;
            if e < prec {
                s.set(ctx, e, c.clone());
            }
        }
        s.normalized(ctx)
    }

    pub fn zero(prec: i64) -> TruncSeries {
        TruncSeries { lo: prec, prec, coeffs: vec![] }
    }

    fn set(&mut self, _ctx: &FieldCtx, e: i64, c: KExt) {
        let idx = (e - self.lo) as usize;
        self.coeffs[idx] = c;
    }

    pub fn get(&self, ctx: &FieldCtx, e: i64) -> KExt {
        if e < self.lo {
            return ctx.kext.zero();
        }
        assert!(e < self.prec, "coefficient beyond precision");
        self.coeffs[(e - self.lo) as usize].clone()
    }

    fn normalized(mut self, ctx: &FieldCtx) -> TruncSeries {
        let lead = self.coeffs.iter().take_while(|c| ctx.kext.is_zero(c)).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        self
    }

    /// Valuation: `None` when zero to precision.
    pub fn val(&self, ctx: &FieldCtx) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !ctx.kext.is_zero(c))
            .map(|i| self.lo + i as i64)
    }

    pub fn is_zero_to_prec(&self, ctx: &FieldCtx) -> bool {
        self.val(ctx).is_none()
    }

    pub fn add(&self, ctx: &FieldCtx, other: &TruncSeries) -> TruncSeries {
        let prec = self.prec.min(other.prec);
        let lo = self.lo.min(other.lo).min(prec);
        let mut coeffs = vec![ctx.kext.zero(); (prec - lo) as usize];
        for (idx, c) in coeffs.iter_mut().enumerate() {
            let e = lo + idx as i64;
            let a = if e >= self.lo && e < self.prec { self.get(ctx, e) } else { ctx.kext.zero() };
            let b = if e >= other.lo && e < other.prec { other.get(ctx, e) } else { ctx.kext.zero() };
            *c = ctx.kext.add(&a, &b);
        }
        TruncSeries { lo, prec, coeffs }.normalized(ctx)
    }

    pub fn neg(&self, ctx: &FieldCtx) -> TruncSeries {
        let zero = ctx.kext.zero();
        TruncSeries {
            lo: self.lo,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|c| ctx.kext.sub(&zero, c)).collect(),
        }
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &TruncSeries) -> TruncSeries {
        if self.is_zero_to_prec(ctx) || other.is_zero_to_prec(ctx) {
            // product known wherever either factor's zero-knowledge caps it
            let prec = (self.prec + other.lo).min(other.prec + self.lo);
            return TruncSeries::zero(prec);
        }
        let prec = (self.prec + other.lo).min(other.prec + self.lo);
        let lo = self.lo + other.lo;
        let mut coeffs = vec![ctx.kext.zero(); (prec - lo).max(0) as usize];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ctx.kext.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = self.lo + i as i64 + other.lo + j as i64;
                if e < prec {
                    let idx = (e - lo) as usize;
                    let add = ctx.kext.mul(a, b);
                    coeffs[idx] = ctx.kext.add(&coeffs[idx], &add);
                }
            }
        }
        TruncSeries { lo, prec, coeffs }.normalized(ctx)
    }

    /// Multiplicative inverse; the result is known on [-v, prec - 2v).
    pub fn inv(&self, ctx: &FieldCtx) -> Result<TruncSeries> {
        let Some(v) = self.val(ctx) else {
            return Err(KlabError::PrecisionExhausted("inverting a series that is zero to precision".into()));
        };
        let u_len = (self.prec - v) as usize; // unit part coefficients
        if u_len == 0 {
            return Err(KlabError::PrecisionExhausted("no unit part visible".into()));
        }
        let mut u = Vec::with_capacity(u_len);
        for i in 0..u_len {
            u.push(self.get(ctx, v + i as i64));
        }
        let c0_inv = ctx.kext.inv(&u[0]);
        // w = u^{-1} by the convolution recursion
        let mut w = vec![ctx.kext.zero(); u_len];
        w[0] = c0_inv.clone();
        for k in 1..u_len {
            let mut acc = ctx.kext.zero();
            for j in 0..k {
                let add = ctx.kext.mul(&w[j], &u[k - j]);
                acc = ctx.kext.add(&acc, &add);
            }
            let zero = ctx.kext.zero();
            w[k] = ctx.kext.mul(&c0_inv, &ctx.kext.sub(&zero, &acc));
        }
        Ok(TruncSeries { lo: -v, prec: self.prec - 2 * v, coeffs: w }.normalized(ctx))
    }

    /// Shift by t^k.
    pub fn shift(&self, k: i64) -> TruncSeries {
        TruncSeries { lo: self.lo + k, prec: self.prec + k, coeffs: self.coeffs.clone() }
    }

    /// Truncate knowledge down to a lower precision.
    pub fn cut(&self, ctx: &FieldCtx, prec: i64) -> TruncSeries {
        assert!(prec <= self.prec);
        let keep = ((prec - self.lo).max(0) as usize).min(self.coeffs.len());
        TruncSeries { lo: self.lo.min(prec), prec, coeffs: self.coeffs[..keep].to_vec() }.normalized(ctx)
    }

    /// Back to an exact Laurent polynomial (the visible window).
    pub fn to_poly(&self, ctx: &FieldCtx) -> LaurentPoly {
        LaurentPoly { lo: self.lo, coeffs: self.coeffs.clone() }.normalize(ctx)
    }
}

pub type SMat = Vec<Vec<TruncSeries>>;

pub fn smat_identity(ctx: &FieldCtx, n: usize, prec: i64) -> SMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        TruncSeries::from_poly(ctx, &LaurentPoly::one(ctx), prec)
                    } else {
                        TruncSeries::zero(prec)
                    }
                })
                .collect()
        })
        .collect()
}

pub fn smat_mul(ctx: &FieldCtx, a: &SMat, b: &SMat) -> SMat {
    let rows = a.len();
    let inner = b.len();
    let cols = b[0].len();
    (0..rows)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    let mut acc: Option<TruncSeries> = None;
                    for k in 0..inner {
                        let term = a[i][k].mul(ctx, &b[k][j]);
                        acc = Some(match acc {
                            None => term,
                            Some(s) => s.add(ctx, &term),
                        });
                    }
                    acc.unwrap()
                })
                .collect()
        })
        .collect()
}

/// Smith normal form over the truncated series ring:
/// `d = e * a * f` with `d` diagonal `t^{dvals}`, `e`, `f` invertible.
#[derive(Debug, Clone)]
pub struct SeriesSnf {
    pub dvals: Vec<i64>,
    pub e: SMat,
    pub e_inv: SMat,
    pub f: SMat,
}

/// Diagonalize; `expected_rank` guards against silent precision loss
/// (entries that look zero only because the window ran out).
pub fn snf_series(ctx: &FieldCtx, a: &SMat, expected_rank: usize, prec: i64) -> Result<SeriesSnf> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut d: SMat = a.clone();
    let mut e = smat_identity(ctx, rows, prec);
    let mut e_inv = smat_identity(ctx, rows, prec);
    let mut f = smat_identity(ctx, cols, prec);
    let mut dvals = Vec::new();

    for k in 0..rows.min(cols) {
        // minimal-valuation pivot in the trailing block
        let mut best: Option<(usize, usize, i64)> = None;
        for i in k..rows {
            for j in k..cols {
                if let Some(v) = d[i][j].val(ctx) {
                    if best.map_or(true, |(_, _, bv)| v < bv) {
                        best = Some((i, j, v));
                    }
                }
            }
        }
        let Some((pi, pj, v)) = best else { break };
        d.swap(k, pi);
        e.swap(k, pi);
        for row in e_inv.iter_mut() {
            row.swap(k, pi);
        }
        for row in d.iter_mut() {
            row.swap(k, pj);
        }
        for row in f.iter_mut() {
            row.swap(k, pj);
        }
        // normalize the pivot to exactly t^v: scale the row by the unit inverse
        let unit = d[k][k].shift(-v);
        let unit_inv = unit.inv(ctx)?;
        scale_row(ctx, &mut d, k, &unit_inv);
        scale_row(ctx, &mut e, k, &unit_inv);
        scale_col(ctx, &mut e_inv, k, &unit);
        // clear the rest of column k and row k
        for i in 0..rows {
            if i == k {
                continue;
            }
            if let Some(vi) = d[i][k].val(ctx) {
                debug_assert!(vi >= v);
                let factor = d[i][k].shift(-v);
                row_submul(ctx, &mut d, i, k, &factor);
                row_submul(ctx, &mut e, i, k, &factor);
                col_addmul(ctx, &mut e_inv, k, i, &factor);
            }
        }
        for j in 0..cols {
            if j == k {
                continue;
            }
            if d[k][j].val(ctx).is_some() {
                let factor = d[k][j].shift(-v);
                col_submul(ctx, &mut d, j, k, &factor);
                col_submul(ctx, &mut f, j, k, &factor);
            }
        }
        dvals.push(v);
    }
    if dvals.len() < expected_rank {
        return Err(KlabError::PrecisionExhausted(format!(
            "found {} pivots, expected {expected_rank}",
            dvals.len()
        )));
    }
    Ok(SeriesSnf { dvals, e, e_inv, f })
}

fn scale_row(ctx: &FieldCtx, m: &mut SMat, i: usize, s: &TruncSeries) {
    for c in m[i].iter_mut() {
        *c = c.mul(ctx, s);
    }
}

fn scale_col(ctx: &FieldCtx, m: &mut SMat, j: usize, s: &TruncSeries) {
    for row in m.iter_mut() {
        row[j] = row[j].mul(ctx, s);
    }
}

/// row_i -= factor * row_k
fn row_submul(ctx: &FieldCtx, m: &mut SMat, i: usize, k: usize, factor: &TruncSeries) {
    let src = m[k].clone();
    for (c, s) in m[i].iter_mut().zip(src.iter()) {
        let sub = factor.mul(ctx, s).neg(ctx);
        *c = c.add(ctx, &sub);
    }
}

/// col_j -= factor * col_k
fn col_submul(ctx: &FieldCtx, m: &mut SMat, j: usize, k: usize, factor: &TruncSeries) {
    for row in m.iter_mut() {
        let sub = factor.mul(ctx, &row[k]).neg(ctx);
        row[j] = row[j].add(ctx, &sub);
    }
}

/// col_k += factor * col_j (inverse bookkeeping for row_submul)
fn col_addmul(ctx: &FieldCtx, m: &mut SMat, k: usize, j: usize, factor: &TruncSeries) {
    for row in m.iter_mut() {
        let add = factor.mul(ctx, &row[j]);
        row[k] = row[k].add(ctx, &add);
    }
}
