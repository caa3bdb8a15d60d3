//! Hodge-Newton decomposability, the fully-HND verdict, the witness
//! functional on relative simple roots, and the replay of the
//! non-fullness construction inside the generalized Kottwitz set.

use num::{One, Signed, Zero};

use crate::error::{KlabError, Result};
use crate::galois::GroupSpec;
use crate::kottwitz::{
    enumerate_b_g_mu, enumerate_generalized, reductions_to_levi, KottwitzSet, SigmaConjClass,
};
use crate::qlin::{QMat, Q};
use crate::rootcore::{pair, pairing, ParabolicIndex, RatVector};

/// Witness that a pair is Hodge-Newton decomposable: a proper stable Levi
/// containing the centralizer of the Newton point, supporting the gap
/// bound - nu inside its relative coroots.
#[derive(Debug, Clone)]
pub struct HNDecompCertificate {
    pub levi: ParabolicIndex,
    /// Coefficient per Galois orbit of simple roots, paired with the orbit.
    pub coefficients: Vec<(Vec<usize>, Q)>,
}

impl HNDecompCertificate {
    /// Reconstruct the expanded vector from the certificate.
    pub fn reconstruct(&self, spec: &GroupSpec) -> RatVector {
        let mut acc = RatVector::coweight(vec![Q::zero(); spec.datum.dim]);
        for (orbit, c) in &self.coefficients {
            for &i in orbit {
                acc = acc.add(&spec.datum.simple_coroots[i].scale(c));
            }
        }
        acc
    }
}

/// Decompose a Galois-invariant coweight over orbit-summed simple coroots.
/// Returns the per-orbit coefficients, or `None` when outside the span.
fn orbit_coroot_coefficients(spec: &GroupSpec, v: &RatVector) -> Option<Vec<(Vec<usize>, Q)>> {
    let orbits = spec.relative_simple_roots();
    if orbits.is_empty() {
        return v.is_zero().then(Vec::new);
    }
    let cols: Vec<Vec<Q>> = orbits
        .iter()
        .map(|orbit| {
            let mut acc = RatVector::coweight(vec![Q::zero(); spec.datum.dim]);
            for &i in orbit {
                acc = acc.add(&spec.datum.simple_coroots[i]);
            }
            acc.entries
        })
        .collect();
    let mat = QMat::from_cols(&cols);
    let coeff = mat.solve(&v.entries)?;
    if mat.mul_vec(&coeff) != v.entries {
        return None;
    }
    Some(orbits.into_iter().zip(coeff).collect())
}

/// The decomposability test against an arbitrary dominant bound vector
/// (the Galois average of mu for B(G, mu); the shifted bound for the
/// generalized sets). Returns the certificate at the smallest witnessing
/// Levi, or `None` when only the full group supports the gap.
pub fn hn_certificate(
    spec: &GroupSpec,
    bound: &RatVector,
    b: &SigmaConjClass,
) -> Result<Option<HNDecompCertificate>> {
    if b.is_basic(spec.datum.rank) {
        return Err(KlabError::Precondition(
            "decomposability is tested against non-basic classes".into(),
        ));
    }
    let gap = bound.sub(&b.newton);
    let coeffs = orbit_coroot_coefficients(spec, &gap).ok_or_else(|| {
        KlabError::Precondition("bound - nu is not in the coroot span: class outside the set".into())
    })?;
    if coeffs.iter().any(|(_, c)| c.is_negative()) {
        return Err(KlabError::Precondition("bound does not dominate the Newton point".into()));
    }
    // smallest admissible Levi: orbits where nu is central, plus the
    // support of the gap
    let mut levi_indices: Vec<usize> = Vec::new();
    for (orbit, c) in &coeffs {
        let central = orbit
            .iter()
            .all(|&i| pairing(&spec.datum.simple_roots[i], &b.newton).is_zero());
        if central || c.is_positive() {
            levi_indices.extend_from_slice(orbit);
        }
    }
    let levi = ParabolicIndex::new(levi_indices);
    if levi.is_full(spec.datum.rank) {
        return Ok(None);
    }
    let coefficients: Vec<(Vec<usize>, Q)> = coeffs
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    let cert = HNDecompCertificate { levi, coefficients };
    debug_assert_eq!(cert.reconstruct(spec), gap);
    Ok(Some(cert))
}

/// Decomposability of ([b], mu) for a non-basic class of B(G, mu).
pub fn is_hn_decomposable(
    spec: &GroupSpec,
    mu: &RatVector,
    b: &SigmaConjClass,
) -> Result<Option<HNDecompCertificate>> {
    let mu_diamond = spec.gamma_average(mu)?;
    hn_certificate(spec, &mu_diamond, b)
}

/// The fully Hodge-Newton decomposable verdict for B(G, mu), with the
/// list of non-decomposable classes on failure.
pub fn is_fully_hnd(spec: &GroupSpec, mu: &RatVector) -> Result<(bool, Vec<SigmaConjClass>)> {
    let set = enumerate_b_g_mu(spec, mu)?;
    let mu_diamond = spec.gamma_average(mu)?;
    fully_hnd_of_set(spec, &set, &mu_diamond)
}

/// The same verdict for any bounded set (generalized sets included),
/// against the bound vector that defines it.
pub fn fully_hnd_of_set(
    spec: &GroupSpec,
    set: &KottwitzSet,
    bound: &RatVector,
) -> Result<(bool, Vec<SigmaConjClass>)> {
    let mut failures = Vec::new();
    for c in &set.elements {
        if c.is_basic(spec.datum.rank) {
            continue;
        }
        if hn_certificate(spec, bound, c)?.is_none() {
            failures.push(c.clone());
        }
    }
    Ok((failures.is_empty(), failures))
}

/// Per relative simple root alpha: the value <star(mu), omega~_alpha>,
/// where omega~_alpha sums the fundamental weights over the orbit. The
/// fundamental weights live in the span of the simple roots, so central
/// Newton points pair to zero with every omega~.
#[derive(Debug, Clone)]
pub struct WitnessReport {
    /// (orbit, value) per relative simple root, in orbit order.
    pub values: Vec<(Vec<usize>, Q)>,
    /// Indices into `values` with value > 1.
    pub flagged: Vec<usize>,
}

/// omega~_alpha for the given orbit.
pub fn omega_tilde(spec: &GroupSpec, orbit: &[usize]) -> RatVector {
    let mut acc = RatVector::weight(vec![Q::zero(); spec.datum.dim]);
    for &i in orbit {
        acc = acc.add(&spec.datum.fundamental_weights[i]);
    }
    // Galois invariance of the orbit sum
    debug_assert_eq!(spec.apply_galois_weight(&acc), acc);
    acc
}

pub fn witness_functional(spec: &GroupSpec, mu: &RatVector) -> Result<WitnessReport> {
    if !spec.datum.is_dominant(mu) {
        return Err(KlabError::NotDominant(mu.to_string()));
    }
    let star = spec.datum.star_involution(mu);
    let mut values = Vec::new();
    let mut flagged = Vec::new();
    for (k, orbit) in spec.relative_simple_roots().into_iter().enumerate() {
        let omega = omega_tilde(spec, &orbit);
        let v = pair(&omega, &star)?;
        if v > Q::one() {
            flagged.push(k);
        }
        values.push((orbit, v));
    }
    Ok(WitnessReport { values, flagged })
}

/// Replay of the non-fullness construction for a flagged relative root:
/// builds the basic-in-M class at (beta^vee)^sharp, certifies membership
/// in the generalized set, non-decomposability there, the kappa/slope
/// identity over every reduction of b to M, and the terminal pairings.
#[derive(Debug)]
pub struct ReplayReport {
    pub orbit: Vec<usize>,
    pub witness_value: Q,
    pub constructed: SigmaConjClass,
    /// Index of the constructed class inside the generalized set.
    pub member_index: usize,
    pub non_decomposable: bool,
    /// Number of reductions of b to M over which the kappa/slope identity
    /// was verified exactly.
    pub identity_reductions_checked: usize,
    /// <star(mu) - beta^vee, omega~_alpha> = witness - 1, positive.
    pub final_pairing: Q,
    /// <-nu_b, omega~_alpha>, exactly zero for basic b.
    pub basic_pairing: Q,
}

pub fn replay_nonfull(
    spec: &GroupSpec,
    mu: &RatVector,
    b: &SigmaConjClass,
    orbit_index: usize,
) -> Result<ReplayReport> {
    if !b.is_basic(spec.datum.rank) {
        return Err(KlabError::Precondition("replay requires the basic class".into()));
    }
    let witness = witness_functional(spec, mu)?;
    if !witness.flagged.contains(&orbit_index) {
        return Err(KlabError::Precondition(format!(
            "relative root {orbit_index} is not flagged by the witness functional"
        )));
    }
    let (orbit, value) = witness.values[orbit_index].clone();
    let omega = omega_tilde(spec, &orbit);

    // M: all orbits except alpha's
    let levi = ParabolicIndex::new(
        spec.relative_simple_roots()
            .into_iter()
            .enumerate()
            .filter(|(k, _)| *k != orbit_index)
            .flat_map(|(_, o)| o),
    );
    let beta = orbit[0];
    let beta_covee = spec.datum.simple_coroots[beta].clone();
    assert_eq!(pair(&omega, &beta_covee)?, Q::one(), "normalization <beta^vee, omega~> = 1 failed");

    let pi_m = spec.pi1_coinvariants(&levi)?;
    let full = ParabolicIndex::full(spec.datum.rank);
    let pi_g = spec.pi1_coinvariants(&full)?;
    let kappa_m = spec.sharp(&pi_m, &beta_covee)?;
    let nu = spec.slope(&pi_m, &kappa_m);
    // Levi of the constructed class must be exactly M
    assert_eq!(
        spec.datum.centralizer_levi(&nu),
        levi,
        "constructed class has the wrong Levi: convention bug"
    );
    let kappa_g = spec.pi1_map(&pi_m, &pi_g, &kappa_m);
    assert_eq!(kappa_g, pi_g.zero(), "a coroot must vanish in pi_1(G)");
    let constructed =
        SigmaConjClass { levi: levi.clone(), kappa_levi: kappa_m.clone(), newton: nu.clone(), kappa: kappa_g };

    // membership in B(G, 0, nu_b mu^{-1})
    let gen = enumerate_generalized(spec, mu, b)?;
    let member_index = gen
        .find(&constructed.newton, &constructed.kappa)
        .expect("constructed class must lie in the generalized set");

    // non-decomposability relative to the generalized bound
    let bound = b.newton.add(&spec.datum.star_involution(&spec.gamma_average(mu)?));
    let non_decomposable = hn_certificate(spec, &bound, &constructed)?.is_none();
    assert!(non_decomposable, "constructed class must not be decomposable");

    // kappa/slope identity over the reductions of b to M:
    // lambda^sharp := kappa_M(b_M) - (beta^vee)^sharp must satisfy
    // slope(lambda^sharp) = nu_{b_M} - slope((beta^vee)^sharp)
    let mut checked = 0;
    for (kappa_bm, nu_bm) in reductions_to_levi(spec, &levi, b)? {
        let lambda_sharp = pi_m.sub(&kappa_bm, &kappa_m);
        let lhs = spec.slope(&pi_m, &lambda_sharp);
        let rhs = nu_bm.sub(&spec.slope(&pi_m, &kappa_m));
        assert_eq!(lhs, rhs, "kappa/slope identity failed on a reduction");
        checked += 1;
    }

    // terminal pairings
    let star = spec.datum.star_involution(mu);
    let final_pairing = pair(&omega, &star.sub(&beta_covee))?;
    assert!(final_pairing.is_positive(), "terminal pairing must be positive for a flagged root");
    assert_eq!(final_pairing, &value - Q::one());
    let basic_pairing = pair(&omega, &b.newton.neg())?;
    assert!(basic_pairing.is_zero(), "central Newton point must pair to zero");

    Ok(ReplayReport {
        orbit,
        witness_value: value,
        constructed,
        member_index,
        non_decomposable,
        identity_reductions_checked: checked,
        final_pairing,
        basic_pairing,
    })
}
