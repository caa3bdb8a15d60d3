//! Shared instance families for the sweep runner and the acceptance
//! suite: dominant coweight grids, the exhaustive small lattice and
//! filtered-space families, and a deterministic seeded generator.

use num::BigRational;

use crate::filspace::gf::{FieldCtx, Fld};
use crate::filspace::laurent::LaurentPoly;
use crate::filspace::linalg::{all_subspaces, Subspace};
use crate::filspace::{FilteredSpace, LatticePoint, DEFAULT_PRECISION};

/// Deterministic splittable generator for the seeded families.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }
}

/// Dominant integer vectors with entries in [lo, hi], decreasing.
pub fn dominant_grid(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, lo: i64, hi: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let max = if cur.is_empty() { hi } else { *cur.last().unwrap() };
        for v in (lo..=max).rev() {
            cur.push(v);
            rec(n, lo, hi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, lo, hi, &mut Vec::new(), &mut out);
    out
}

/// All Laurent polynomials over F_2 with support in [lo, hi].
pub fn f2_polys(ctx: &FieldCtx, lo: i64, hi: i64) -> Vec<LaurentPoly> {
    let width = (hi - lo + 1) as usize;
    let mut out = Vec::new();
    for mask in 0..(1u32 << width) {
        let mut p = LaurentPoly::zero();
        for b in 0..width {
            if mask & (1 << b) != 0 {
                p = p.add(ctx, &LaurentPoly::monomial(ctx, ctx.kext.one(), lo + b as i64));
            }
        }
        out.push(p);
    }
    out
}

/// The exhaustive n = 2, q = 2 lattice family (upper triangular over all
/// small diagonal powers and off-diagonal polynomials) plus seeded random
/// invertible matrices with the same support.
pub fn lattice_instances(seed: u64, precision: i64, limit: Option<usize>) -> Vec<LatticePoint> {
    let ctx = FieldCtx::new(2, 1, 1).unwrap();
    let mut out = Vec::new();
    let offdiag = f2_polys(&ctx, -1, 1);
    for a in -1..=1i64 {
        for d in -1..=1i64 {
            for u in &offdiag {
                let g = vec![
                    vec![LaurentPoly::monomial(&ctx, ctx.kext.one(), -a), u.clone()],
                    vec![LaurentPoly::zero(), LaurentPoly::monomial(&ctx, ctx.kext.one(), -d)],
                ];
                out.push(LatticePoint::new(ctx.clone(), 2, precision, g).unwrap());
            }
        }
    }
    // n = 1 anchors
    for a in -2..=2i64 {
        let g = vec![vec![LaurentPoly::monomial(&ctx, ctx.kext.one(), a)]];
        out.push(LatticePoint::new(ctx.clone(), 1, precision, g).unwrap());
    }
    // seeded general matrices, kept when invertible
    let mut rng = SplitMix(seed);
    let pool = f2_polys(&ctx, -1, 1);
    for _ in 0..40 {
        let mut pick = || pool[rng.below(pool.len() as u64) as usize].clone();
        let g = vec![vec![pick(), pick()], vec![pick(), pick()]];
        if let Ok(l) = LatticePoint::new(ctx.clone(), 2, precision, g) {
            out.push(l);
        }
    }
    if let Some(l) = limit {
        out.truncate(l);
    }
    out
}

/// Convenience wrapper with the default precision.
pub fn lattice_instances_default(seed: u64, limit: Option<usize>) -> Vec<LatticePoint> {
    lattice_instances(seed, DEFAULT_PRECISION, limit)
}

/// The exhaustive n <= 2, q = 2 filtered family: trivial filtrations,
/// single-jump lines with small integer jumps, and two-step filtrations
/// over every line.
pub fn filtered_instances() -> Vec<FilteredSpace> {
    let ctx = FieldCtx::new(2, 1, 1).unwrap();
    let mut out = Vec::new();
    out.push(FilteredSpace::trivial(ctx.clone(), 1));
    out.push(FilteredSpace::trivial(ctx.clone(), 2));
    for j in -2..=2i64 {
        let full = Subspace::full(&ctx, 1).embedded(&ctx);
        out.push(
            FilteredSpace::new(ctx.clone(), 1, vec![(BigRational::from_integer(j.into()), full)])
                .unwrap(),
        );
    }
    let lines: Vec<Subspace> =
        all_subspaces(&ctx, 2).into_iter().filter(|w| w.dim() == 1).collect();
    for j1 in -1..=0i64 {
        for j2 in (j1 + 1)..=2 {
            for line in &lines {
                let full = Subspace::full(&ctx, 2).embedded(&ctx);
                out.push(
                    FilteredSpace::new(
                        ctx.clone(),
                        2,
                        vec![
                            (BigRational::from_integer(j1.into()), full),
                            (BigRational::from_integer(j2.into()), line.embedded(&ctx)),
                        ],
                    )
                    .unwrap(),
                );
            }
        }
    }
    out
}
