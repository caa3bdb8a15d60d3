//! Enumeration and invariants of sigma-conjugacy classes: the sets
//! B(G, mu) and A(G, mu), generalized variants with a central shift, the
//! Newton-image membership test, distinguished elements, the induced
//! partial order, and an independent GL_n polygon oracle.
//!
//! A class is represented purely by its Levi support together with a
//! basic class of that Levi in pi_1(M)_Gamma; no group elements are ever
//! materialized.

use std::fmt;

use num::{BigInt, One, Signed, ToPrimitive, Zero};

use crate::error::{KlabError, Result};
use crate::galois::{GroupSpec, Pi1Elt, Pi1GammaGroup};
use crate::qlin::{self, q, Q};
use crate::rootcore::{pairing, ParabolicIndex, RatVector};

/// A sigma-conjugacy class, parameterized by (Levi support, basic class).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaConjClass {
    /// Galois-stable standard Levi: the centralizer of the Newton point.
    pub levi: ParabolicIndex,
    /// Basic class in pi_1(M)_Gamma.
    pub kappa_levi: Pi1Elt,
    /// Dominant Newton point (central in the Levi, strictly regular outside).
    pub newton: RatVector,
    /// Kottwitz point in pi_1(G)_Gamma.
    pub kappa: Pi1Elt,
}

impl fmt::Display for SigmaConjClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[nu={} kappa={}]", self.newton, self.kappa)
    }
}

impl SigmaConjClass {
    pub fn is_basic(&self, rank: usize) -> bool {
        self.levi.is_full(rank)
    }
}

/// Which bounded set a `KottwitzSet` holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetKind {
    /// B(G, mu): kappa = mu^sharp, nu <= mu^diamond.
    BMu,
    /// A(G, mu): nu <= mu^diamond, kappa unconstrained.
    AMu,
    /// Generalized set with a central shift (kappa = 0 after shifting).
    Generalized,
}

/// A finite bounded subset of B(G) with its induced partial order and
/// distinguished elements.
#[derive(Debug, Clone)]
pub struct KottwitzSet {
    pub kind: SetKind,
    pub elements: Vec<SigmaConjClass>,
    /// leq[i][j] iff element i <= element j (equal kappa, dominance on nu).
    pub leq: Vec<Vec<bool>>,
    pub basic: Option<usize>,
    pub mu_ordinary: Option<usize>,
}

impl KottwitzSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn newton_points(&self) -> Vec<RatVector> {
        self.elements.iter().map(|b| b.newton.clone()).collect()
    }

    pub fn find(&self, nu: &RatVector, kappa: &Pi1Elt) -> Option<usize> {
        self.elements.iter().position(|b| &b.newton == nu && &b.kappa == kappa)
    }

    /// Hasse edges of the induced order (covering relations).
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.elements.len();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !self.leq[i][j] {
                    continue;
                }
                let covered = (0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j]);
                if !covered {
                    edges.push((i, j));
                }
            }
        }
        edges
    }
}

/// Cached invariants of a class per the module contract.
pub fn class_invariants(spec: &GroupSpec, b: &SigmaConjClass) -> (RatVector, Pi1Elt, bool) {
    let is_basic = b.is_basic(spec.datum.rank);
    debug_assert_eq!(is_basic, spec.datum.centralizer_levi(&b.newton).is_full(spec.datum.rank));
    (b.newton.clone(), b.kappa.clone(), is_basic)
}

/// Whether a dominant Galois-invariant rational coweight is a Newton point
/// of some class, decided by integral liftability through the Smith
/// presentation of pi_1(M)_Gamma at the centralizer Levi.
pub fn in_newton_image(spec: &GroupSpec, v: &RatVector) -> Result<bool> {
    if !spec.datum.is_dominant(v) {
        return Err(KlabError::NotDominant(v.to_string()));
    }
    if spec.average_coweight(v) != *v {
        return Err(KlabError::Precondition("vector is not Galois-average-invariant".into()));
    }
    let levi = spec.datum.centralizer_levi(v);
    let group = spec.pi1_coinvariants(&levi)?;
    Ok(solve_free_coords(spec, &group, v).is_some())
}

/// Rational coordinates of `v` over the slope basis of the free part;
/// `Some` only when those coordinates are integers (so `v` lifts).
fn solve_free_coords(spec: &GroupSpec, group: &Pi1GammaGroup, v: &RatVector) -> Option<Vec<BigInt>> {
    let coords = solve_free_coords_q(spec, group, v)?;
    if coords.iter().all(qlin::is_integral) {
        Some(coords.iter().map(|c| c.to_integer()).collect())
    } else {
        None
    }
}

fn solve_free_coords_q(spec: &GroupSpec, group: &Pi1GammaGroup, v: &RatVector) -> Option<Vec<Q>> {
    let basis = slope_basis(spec, group);
    let s = basis.len();
    if s == 0 {
        return if v.is_zero() { Some(vec![]) } else { None };
    }
    let mut gram = qlin::QMat::zero(s, s);
    for i in 0..s {
        for j in 0..s {
            gram[(i, j)] = spec.datum.inner(&basis[i], &basis[j]);
        }
    }
    let rhs: Vec<Q> = basis.iter().map(|u| spec.datum.inner(u, v)).collect();
    let f = gram.solve(&rhs)?;
    // verify v really is the combination (v must lie in the span)
    let mut acc = RatVector::coweight(vec![Q::zero(); spec.datum.dim]);
    for (k, u) in basis.iter().enumerate() {
        acc = acc.add(&u.scale(&f[k]));
    }
    if acc == *v {
        Some(f)
    } else {
        None
    }
}

/// Slopes of the free generators of pi_1(M)_Gamma: a basis of X_*(A_M)_Q.
fn slope_basis(spec: &GroupSpec, group: &Pi1GammaGroup) -> Vec<RatVector> {
    let s = group.free_rank();
    (0..s)
        .map(|k| {
            let mut free = vec![BigInt::zero(); s];
            free[k] = BigInt::one();
            let e = group.elt(free, vec![BigInt::zero(); group.torsion_moduli().len()]);
            spec.slope(group, &e)
        })
        .collect()
}

/// Core bounded enumeration. Produces every class whose shifted Newton
/// point satisfies `nu'' + shift_nu <= bound` and whose shifted Kottwitz
/// point matches `kappa_target` when given.
///
/// The search per Levi runs over an integer box for the free coordinates:
/// for dominant nu'' with nu'' <= bound - shift_nu, the W-invariant norm
/// bounds each dual-basis coordinate, scaled through the Gram matrix of
/// the slope basis.
fn enumerate_bounded(
    spec: &GroupSpec,
    bound: &RatVector,
    shift_nu: Option<&RatVector>,
    shift_kappa: Option<&Pi1Elt>,
    kappa_target: Option<&Pi1Elt>,
) -> Result<Vec<SigmaConjClass>> {
    let datum = &spec.datum;
    let full = ParabolicIndex::full(datum.rank);
    let pi_g = spec.pi1_coinvariants(&full)?;
    let zero_shift = RatVector::coweight(vec![Q::zero(); datum.dim]);
    let shift_nu = shift_nu.unwrap_or(&zero_shift);
    let inner_bound = bound.sub(shift_nu);
    if !datum.is_dominant(&inner_bound) {
        return Err(KlabError::Precondition(format!(
            "shifted bound {inner_bound} is not dominant"
        )));
    }
    let radius2 = datum.inner(&inner_bound, &inner_bound);

    let mut out = Vec::new();
    for levi in spec.stable_levis() {
        let group = spec.pi1_coinvariants(&levi)?;
        let basis = slope_basis(spec, &group);
        let s = basis.len();
        // Gram matrix and box bounds for the free coordinates
        let mut gram = qlin::QMat::zero(s, s);
        for i in 0..s {
            for j in 0..s {
                gram[(i, j)] = datum.inner(&basis[i], &basis[j]);
            }
        }
        let gram_inv = if s > 0 {
            gram.inverse().expect("slope basis is nondegenerate")
        } else {
            qlin::QMat::zero(0, 0)
        };
        let outside: Vec<usize> = (0..datum.rank).filter(|i| !levi.contains(*i)).collect();
        let mut box_bounds = Vec::with_capacity(s);
        for k in 0..s {
            let b2 = &gram_inv[(k, k)] * &radius2;
            let m = qlin::isqrt_floor(&b2);
            box_bounds.push(m.to_i64().unwrap_or(i64::MAX));
        }
        let torsion_opts = group.torsion_elements();
        let mut free: Vec<i64> = box_bounds.iter().map(|b| -b).collect();
        loop {
            // slope of the free part
            let mut nu = RatVector::coweight(vec![Q::zero(); datum.dim]);
            for k in 0..s {
                nu = nu.add(&basis[k].scale(&q(free[k])));
            }
            // strict regularity outside the Levi (also makes nu dominant)
            let regular = outside.iter().all(|&i| pairing(&datum.simple_roots[i], &nu).is_positive());
            if regular && datum.dominance_leq(&nu, &inner_bound, false)? {
                for t in &torsion_opts {
                    let e = group.elt(free.iter().map(|&x| BigInt::from(x)).collect(), t.clone());
                    let mut kg = spec.pi1_map(&group, &pi_g, &e);
                    if let Some(ks) = shift_kappa {
                        kg = pi_g.add(&kg, ks);
                    }
                    if let Some(target) = kappa_target {
                        if &kg != target {
                            continue;
                        }
                    }
                    let full_nu = nu.add(shift_nu);
                    out.push(SigmaConjClass {
                        levi: levi.clone(),
                        kappa_levi: e,
                        newton: full_nu,
                        kappa: kg,
                    });
                }
            }
            // advance the odometer
            let mut k = 0;
            loop {
                if k == s {
                    break;
                }
                if free[k] < box_bounds[k] {
                    free[k] += 1;
                    break;
                }
                free[k] = -box_bounds[k];
                k += 1;
            }
            if k == s {
                break;
            }
        }
    }
    out.sort_by(|a, b| a.newton.cmp(&b.newton).then(a.kappa.cmp(&b.kappa)));
    out.dedup_by(|a, b| a.newton == b.newton && a.kappa == b.kappa && a.levi == b.levi);
    // (nu, kappa) must be injective on the enumerated set
    for w in out.windows(2) {
        assert!(
            !(w[0].newton == w[1].newton && w[0].kappa == w[1].kappa),
            "(nu, kappa) failed to separate classes: enumeration bug"
        );
    }
    Ok(out)
}

/// Raw bounded enumeration of honest classes with a fixed Kottwitz point;
/// shared with the duality module.
pub(crate) fn enumerate_b_bounded(
    spec: &GroupSpec,
    bound: &RatVector,
    kappa_target: &Pi1Elt,
) -> Result<Vec<SigmaConjClass>> {
    enumerate_bounded(spec, bound, None, None, Some(kappa_target))
}

/// The unique class with the given dominant Newton point and Kottwitz
/// point, reconstructed through its centralizer Levi; `None` when the
/// invariants do not come from a class.
pub fn class_with_invariants(
    spec: &GroupSpec,
    nu: &RatVector,
    kappa: &Pi1Elt,
) -> Result<Option<SigmaConjClass>> {
    if !spec.datum.is_dominant(nu) {
        return Err(KlabError::NotDominant(nu.to_string()));
    }
    let levi = spec.datum.centralizer_levi(nu);
    if !spec.is_galois_stable(&levi) {
        return Ok(None);
    }
    let group = spec.pi1_coinvariants(&levi)?;
    let full = ParabolicIndex::full(spec.datum.rank);
    let pi_g = spec.pi1_coinvariants(&full)?;
    let Some(free) = solve_free_coords(spec, &group, nu) else {
        return Ok(None);
    };
    let mut found: Option<SigmaConjClass> = None;
    for t in group.torsion_elements() {
        let e = group.elt(free.clone(), t);
        let kg = spec.pi1_map(&group, &pi_g, &e);
        if &kg == kappa {
            assert!(found.is_none(), "(nu, kappa) failed to separate classes: enumeration bug");
            found = Some(SigmaConjClass {
                levi: levi.clone(),
                kappa_levi: e,
                newton: nu.clone(),
                kappa: kg,
            });
        }
    }
    Ok(found)
}

pub(crate) fn build_set(spec: &GroupSpec, kind: SetKind, elements: Vec<SigmaConjClass>) -> KottwitzSet {
    let n = elements.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = elements[i].kappa == elements[j].kappa
                && spec
                    .datum
                    .dominance_leq(&elements[i].newton, &elements[j].newton, false)
                    .unwrap_or(false);
        }
    }
    let (basic, mu_ordinary) = match kind {
        SetKind::AMu => (None, None),
        _ => {
            let central: Vec<usize> = (0..n)
                .filter(|&i| spec.datum.centralizer_levi(&elements[i].newton).is_full(spec.datum.rank))
                .collect();
            assert_eq!(central.len(), 1, "expected a unique basic element, found {}", central.len());
            let maxima: Vec<usize> =
                (0..n).filter(|&i| (0..n).all(|j| j == i || !leq[i][j])).collect();
            assert_eq!(maxima.len(), 1, "expected a unique maximal element, found {}", maxima.len());
            (Some(central[0]), Some(maxima[0]))
        }
    };
    KottwitzSet { kind, elements, leq, basic, mu_ordinary }
}

/// The Kottwitz set B(G, mu) for a dominant integral coweight.
pub fn enumerate_b_g_mu(spec: &GroupSpec, mu: &RatVector) -> Result<KottwitzSet> {
    let (mu_sharp, mu_diamond) = mu_invariants(spec, mu)?;
    let elements = enumerate_bounded(spec, &mu_diamond, None, None, Some(&mu_sharp))?;
    let set = build_set(spec, SetKind::BMu, elements);
    // basic is the unique minimum
    let b = set.basic.unwrap();
    assert!((0..set.len()).all(|j| set.leq[b][j]), "basic element is not the minimum");
    // quasi-split model: the mu-ordinary Newton point is mu^diamond
    let o = set.mu_ordinary.unwrap();
    assert_eq!(set.elements[o].newton, mu_diamond, "mu-ordinary Newton point must equal the Galois average");
    Ok(set)
}

/// A(G, mu): drops the kappa constraint.
pub fn enumerate_a_g_mu(spec: &GroupSpec, mu: &RatVector) -> Result<KottwitzSet> {
    let (_, mu_diamond) = mu_invariants(spec, mu)?;
    let elements = enumerate_bounded(spec, &mu_diamond, None, None, None)?;
    Ok(build_set(spec, SetKind::AMu, elements))
}

fn mu_invariants(spec: &GroupSpec, mu: &RatVector) -> Result<(Pi1Elt, RatVector)> {
    if !spec.datum.is_dominant(mu) {
        return Err(KlabError::NotDominant(mu.to_string()));
    }
    if !spec.datum.is_integral_coweight(mu) {
        return Err(KlabError::NotIntegral(mu.to_string()));
    }
    let full = ParabolicIndex::full(spec.datum.rank);
    let pi_g = spec.pi1_coinvariants(&full)?;
    let mu_sharp = spec.sharp(&pi_g, mu)?;
    let mu_diamond = spec.gamma_average(mu)?;
    Ok((mu_sharp, mu_diamond))
}

/// The generalized Kottwitz set B(G, 0, nu_b mu^{-1}) attached to a basic
/// class b: classes with kappa = 0 and nu <= nu_b + (-w0 mu)^diamond.
pub fn enumerate_generalized(
    spec: &GroupSpec,
    mu: &RatVector,
    basic: &SigmaConjClass,
) -> Result<KottwitzSet> {
    if !basic.is_basic(spec.datum.rank) {
        return Err(KlabError::Precondition("shift class must be basic (central Newton point)".into()));
    }
    let (_, mu_diamond) = mu_invariants(spec, mu)?;
    let star = spec.datum.star_involution(&mu_diamond);
    let bound = basic.newton.add(&star);
    let full = ParabolicIndex::full(spec.datum.rank);
    let pi_g = spec.pi1_coinvariants(&full)?;
    let elements = enumerate_bounded(spec, &bound, None, None, Some(&pi_g.zero()))?;
    let set = build_set(spec, SetKind::Generalized, elements);
    // the trivial class [1] must be present
    let zero_nu = RatVector::coweight(vec![Q::zero(); spec.datum.dim]);
    assert!(set.find(&zero_nu, &pi_g.zero()).is_some(), "generalized set must contain [1]");
    Ok(set)
}

/// N(G, mu): the common Newton-point image of A(G, mu) and B(G, mu).
pub fn n_g_mu(spec: &GroupSpec, mu: &RatVector) -> Result<Vec<RatVector>> {
    let b = enumerate_b_g_mu(spec, mu)?;
    let a = enumerate_a_g_mu(spec, mu)?;
    let mut nb: Vec<RatVector> = b.newton_points();
    nb.sort();
    nb.dedup();
    let mut na: Vec<RatVector> = a.elements.iter().map(|c| c.newton.clone()).collect();
    na.sort();
    na.dedup();
    assert_eq!(na, nb, "nu(A(G,mu)) must equal nu(B(G,mu))");
    Ok(nb)
}

/// Distinguished elements of B(G, mu): (basic, mu-ordinary).
pub fn distinguished_elements(set: &KottwitzSet) -> (usize, usize) {
    (
        set.basic.expect("set carries a basic element"),
        set.mu_ordinary.expect("set carries a mu-ordinary element"),
    )
}

/// Monotone injection B(G, mu1) -> B(G, mu2) for star(mu1) <= star(mu2):
/// each class maps to the unique class with the same Newton point.
pub fn monotone_injection(
    spec: &GroupSpec,
    mu1: &RatVector,
    mu2: &RatVector,
) -> Result<Vec<(usize, usize)>> {
    let s1 = spec.datum.star_involution(mu1);
    let s2 = spec.datum.star_involution(mu2);
    if !spec.datum.dominance_leq(&s1, &s2, true)? {
        return Err(KlabError::Precondition(format!(
            "star({mu1}) <= star({mu2}) fails"
        )));
    }
    let b1 = enumerate_b_g_mu(spec, mu1)?;
    let b2 = enumerate_b_g_mu(spec, mu2)?;
    let mut map = Vec::new();
    let mut hit = vec![false; b2.len()];
    for (i, c) in b1.elements.iter().enumerate() {
        let js: Vec<usize> = b2
            .elements
            .iter()
            .enumerate()
            .filter(|(_, d)| d.newton == c.newton)
            .map(|(j, _)| j)
            .collect();
        assert_eq!(js.len(), 1, "image class is not unique: enumeration bug");
        assert!(!hit[js[0]], "monotone map failed injectivity");
        hit[js[0]] = true;
        map.push((i, js[0]));
    }
    Ok(map)
}

/// Independent GL_n oracle: all Newton vectors lying on or below the
/// polygon of `mu` with the same endpoint and integral slope blocks,
/// enumerated exhaustively on the denominator grid.
///
/// This function must stay independent of the Levi/pi_1 machinery: it is
/// the second route of the dual-route acceptance check.
pub fn gl_polygon_oracle(n: usize, mu: &[i64]) -> Vec<Vec<Q>> {
    assert!(n >= 1 && mu.len() == n);
    assert!(mu.windows(2).all(|w| w[0] >= w[1]), "mu must be decreasing");
    let lcm: i64 = (1..=n as i64).fold(1, num::integer::lcm);
    let total: i64 = mu.iter().sum();
    let hi = mu[0] * lcm;
    let lo = mu[n - 1] * lcm;
    // partial sums of mu, scaled by lcm
    let mut mu_partial = Vec::with_capacity(n);
    let mut acc = 0i64;
    for &m in mu {
        acc += m * lcm;
        mu_partial.push(acc);
    }
    let mut results: Vec<Vec<i64>> = Vec::new();
    let mut cur: Vec<i64> = Vec::new();
    // depth-first over decreasing sequences on the grid (units of 1/lcm)
    fn rec(
        n: usize,
        lcm: i64,
        lo: i64,
        hi: i64,
        total_scaled: i64,
        mu_partial: &[i64],
        cur: &mut Vec<i64>,
        results: &mut Vec<Vec<i64>>,
    ) {
        let k = cur.len();
        if k == n {
            if cur.iter().sum::<i64>() == total_scaled && block_sums_integral(cur, lcm) {
                results.push(cur.clone());
            }
            return;
        }
        let maxv = if k == 0 { hi } else { cur[k - 1] };
        let partial: i64 = cur.iter().sum();
        for v in (lo..=maxv).rev() {
            // partial-sum dominance bound
            if partial + v > mu_partial[k] {
                continue;
            }
            // remaining entries are each <= v: can we still reach the total?
            let remaining = (n - k - 1) as i64;
            if partial + v + remaining * v < total_scaled {
                break; // v only decreases from here
            }
            cur.push(v);
            rec(n, lcm, lo, hi, total_scaled, mu_partial, cur, results);
            cur.pop();
        }
    }
    fn block_sums_integral(v: &[i64], lcm: i64) -> bool {
        let mut i = 0;
        while i < v.len() {
            let mut j = i;
            while j < v.len() && v[j] == v[i] {
                j += 1;
            }
            let block_sum = v[i] * (j - i) as i64;
            if block_sum % lcm != 0 {
                return false;
            }
            i = j;
        }
        true
    }
    rec(n, lcm, lo, hi, total * lcm, &mu_partial, &mut cur, &mut results);
    let mut out: Vec<Vec<Q>> = results
        .into_iter()
        .map(|v| v.into_iter().map(|x| Q::new(BigInt::from(x), BigInt::from(lcm))).collect())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Pushforward invariants of an M-basic class (kappa_M) to the group:
/// dominant Newton representative and the image Kottwitz point.
pub fn pushforward_invariants(
    spec: &GroupSpec,
    levi: &ParabolicIndex,
    group_m: &Pi1GammaGroup,
    kappa_m: &Pi1Elt,
) -> Result<(RatVector, Pi1Elt)> {
    debug_assert_eq!(&group_m.levi, levi);
    let slope = spec.slope(group_m, kappa_m);
    let (dom, _) = spec.datum.dominant_representative(&slope);
    let full = ParabolicIndex::full(spec.datum.rank);
    let pi_g = spec.pi1_coinvariants(&full)?;
    let kg = spec.pi1_map(group_m, &pi_g, kappa_m);
    Ok((dom, kg))
}

/// All classes of B(M) whose pushforward to B(G) equals `b`
/// (the model of "reductions of b to M").
pub fn reductions_to_levi(
    spec: &GroupSpec,
    levi: &ParabolicIndex,
    b: &SigmaConjClass,
) -> Result<Vec<(Pi1Elt, RatVector)>> {
    if !spec.is_galois_stable(levi) {
        return Err(KlabError::NotGaloisStable);
    }
    let group = spec.pi1_coinvariants(levi)?;
    let basis = slope_basis(spec, &group);
    let s = basis.len();
    let radius2 = spec.datum.inner(&b.newton, &b.newton);
    let mut gram = qlin::QMat::zero(s, s);
    for i in 0..s {
        for j in 0..s {
            gram[(i, j)] = spec.datum.inner(&basis[i], &basis[j]);
        }
    }
    let gram_inv = if s > 0 { gram.inverse().expect("nondegenerate") } else { qlin::QMat::zero(0, 0) };
    let mut box_bounds = Vec::with_capacity(s);
    for k in 0..s {
        let b2 = &gram_inv[(k, k)] * &radius2;
        box_bounds.push(qlin::isqrt_floor(&b2).to_i64().unwrap_or(0));
    }
    let torsion_opts = group.torsion_elements();
    let mut out = Vec::new();
    let mut free: Vec<i64> = box_bounds.iter().map(|b| -b).collect();
    loop {
        let mut nu = RatVector::coweight(vec![Q::zero(); spec.datum.dim]);
        for k in 0..s {
            nu = nu.add(&basis[k].scale(&q(free[k])));
        }
        let (dom, _) = spec.datum.dominant_representative(&nu);
        if dom == b.newton {
            for t in &torsion_opts {
                let e = group.elt(free.iter().map(|&x| BigInt::from(x)).collect(), t.clone());
                let (_, kg) = pushforward_invariants(spec, levi, &group, &e)?;
                if kg == b.kappa {
                    out.push((e, nu.clone()));
                }
            }
        }
        let mut k = 0;
        loop {
            if k == s {
                break;
            }
            if free[k] < box_bounds[k] {
                free[k] += 1;
                break;
            }
            free[k] = -box_bounds[k];
            k += 1;
        }
        if k == s {
            break;
        }
    }
    out.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    Ok(out)
}

/// Locate the unique class with the given invariants inside a bounded
/// enumeration; used by the duality transfer.
pub fn class_from_invariants(
    set: &KottwitzSet,
    nu: &RatVector,
    kappa: &Pi1Elt,
) -> Option<SigmaConjClass> {
    set.find(nu, kappa).map(|i| set.elements[i].clone())
}
