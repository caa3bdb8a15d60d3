//! Semi-infinite index sets: Sigma(mu)_{M-dom}, the Weyl-orbit lower
//! bound, the branching-based S_M(mu), the partial order along coroots
//! outside the Levi, and closure sets.
//!
//! Weight multiplicities of the dual-group module V_mu are computed by
//! the Freudenthal recursion with exact rationals; positive coroots play
//! the role of the dual group's positive roots.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{KlabError, Result};
use crate::galois::GroupSpec;
use crate::qlin::{in_rational_cone, Q};
use crate::rootcore::{pairing, BasedRootDatum, ParabolicIndex, RatVector};

/// The index-set sandwich for one (mu, M).
#[derive(Debug, Clone)]
pub struct SMuSet {
    pub levi: ParabolicIndex,
    /// W mu intersected with the M-dominant cone.
    pub lower: Vec<RatVector>,
    /// Branching value: M-dominant highest weights of V_mu restricted.
    pub value: Vec<RatVector>,
    /// Sigma(mu)_{M-dom}: M-dominant vectors dominated by mu.
    pub upper: Vec<RatVector>,
    pub max_element: RatVector,
}

/// Dual-group module context: a sub-root-system of the coroots.
struct DualSystem<'a> {
    datum: &'a BasedRootDatum,
    simple: Vec<usize>,
    positive_coroots: Vec<RatVector>,
    /// Half the sum of the positive coroots of the subsystem.
    rho_hat: RatVector,
}

impl<'a> DualSystem<'a> {
    fn full(datum: &'a BasedRootDatum) -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        DualSystem {
            datum,
            simple: (0..datum.rank).collect(),
            positive_coroots: datum.positive_coroots.clone(),
            rho_hat: datum.rho2_check.scale(&half),
        }
    }

    fn levi(datum: &'a BasedRootDatum, levi: &ParabolicIndex) -> Self {
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let pos = datum.positive_coroots_of_levi(levi);
        let rho_hat = pos
            .iter()
            .fold(RatVector::coweight(vec![Q::zero(); datum.dim]), |a, c| a.add(c))
            .scale(&half);
        DualSystem { datum, simple: levi.iter().collect(), positive_coroots: pos, rho_hat }
    }

    fn is_dominant(&self, v: &RatVector) -> bool {
        self.simple
            .iter()
            .all(|&i| !pairing(&self.datum.simple_roots[i], v).is_negative())
    }

    fn dominant_rep(&self, v: &RatVector) -> RatVector {
        let mut x = v.clone();
        loop {
            let neg = self
                .simple
                .iter()
                .find(|&&i| pairing(&self.datum.simple_roots[i], &x).is_negative());
            match neg {
                Some(&i) => x = self.datum.reflect_coweight(i, &x),
                None => return x,
            }
        }
    }

    /// Saturated weight set of the highest-weight module: closure of
    /// {mu} under the simple reflections and simple-coroot strings.
    fn weights(&self, mu: &RatVector) -> Vec<RatVector> {
        let norm = self.datum.inner(mu, mu);
        let mut seen: BTreeMap<Vec<Q>, ()> = BTreeMap::new();
        let mut stack = vec![mu.clone()];
        while let Some(v) = stack.pop() {
            if seen.contains_key(&v.entries) {
                continue;
            }
            assert!(self.datum.inner(&v, &v) <= norm, "weight escaped the shell: saturation bug");
            seen.insert(v.entries.clone(), ());
            for &i in &self.simple {
                let r = self.datum.reflect_coweight(i, &v);
                if !seen.contains_key(&r.entries) {
                    stack.push(r);
                }
            }
            for &i in &self.simple {
                if pairing(&self.datum.simple_roots[i], &v).is_positive() {
                    let s = v.sub(&self.datum.simple_coroots[i]);
                    if !seen.contains_key(&s.entries) {
                        stack.push(s);
                    }
                }
            }
        }
        seen.into_keys().map(RatVector::coweight).collect()
    }

    /// Freudenthal multiplicities; returns the full weight -> multiplicity
    /// map (W-symmetric).
    fn multiplicities(&self, mu: &RatVector) -> BTreeMap<Vec<Q>, BigInt> {
        assert!(self.is_dominant(mu));
        let weights = self.weights(mu);
        let weight_set: BTreeMap<Vec<Q>, ()> =
            weights.iter().map(|w| (w.entries.clone(), ())).collect();
        // dominant weights sorted by decreasing height (norm of mu+rho
        // decreases as we descend; use <mu - lambda, rho-hat-ish> order:
        // process in order of increasing distance from mu)
        let mut dominants: Vec<RatVector> =
            weights.iter().filter(|w| self.is_dominant(w)).cloned().collect();
        let mu_plus = mu.add(&self.rho_hat);
        let top_norm = self.datum.inner(&mu_plus, &mu_plus);
        dominants.sort_by(|a, b| {
            let na = self.datum.inner(&a.add(&self.rho_hat), &a.add(&self.rho_hat));
            let nb = self.datum.inner(&b.add(&self.rho_hat), &b.add(&self.rho_hat));
            nb.cmp(&na).then(a.entries.cmp(&b.entries))
        });
        let mut mult: BTreeMap<Vec<Q>, BigInt> = BTreeMap::new();
        for lam in &dominants {
            let lam_plus = lam.add(&self.rho_hat);
            let denom = &top_norm - self.datum.inner(&lam_plus, &lam_plus);
            if denom.is_zero() {
                // the highest weight itself
                mult.insert(lam.entries.clone(), BigInt::one());
                continue;
            }
            let mut acc = Q::zero();
            for alpha in &self.positive_coroots {
                let mut k = 1i64;
                loop {
                    let shifted = lam.add(&alpha.scale(&crate::qlin::q(k)));
                    if !weight_set.contains_key(&shifted.entries) {
                        break;
                    }
                    let rep = self.dominant_rep(&shifted);
                    let m = mult
                        .get(&rep.entries)
                        .cloned()
                        .expect("higher weight processed first");
                    acc += self.datum.inner(&shifted, alpha) * Q::from_integer(m);
                    k += 1;
                }
            }
            let val = acc * crate::qlin::q(2) / denom;
            assert!(val.is_integer() && val.is_positive(), "Freudenthal produced {val}");
            mult.insert(lam.entries.clone(), val.to_integer());
        }
        // spread over the orbits
        let mut full = BTreeMap::new();
        for w in &weights {
            let rep = self.dominant_rep(w);
            full.insert(w.entries.clone(), mult[&rep.entries].clone());
        }
        full
    }

    /// Weyl dimension formula value.
    fn weyl_dimension(&self, mu: &RatVector) -> BigInt {
        let mut num = Q::one();
        let mut den = Q::one();
        let mu_plus = mu.add(&self.rho_hat);
        for alpha in &self.positive_coroots {
            num *= self.datum.inner(&mu_plus, alpha);
            den *= self.datum.inner(&self.rho_hat, alpha);
        }
        let d = num / den;
        assert!(d.is_integer(), "Weyl dimension must be an integer");
        d.to_integer()
    }
}

/// Weight multiplicities of V_mu (dual-group highest weight module).
pub fn weight_multiplicities(
    spec: &GroupSpec,
    mu: &RatVector,
) -> Result<BTreeMap<Vec<Q>, BigInt>> {
    validate(spec, mu)?;
    Ok(DualSystem::full(&spec.datum).multiplicities(mu))
}

/// Total multiplicity mass, for the Weyl-dimension cross-check.
pub fn weyl_dimension(spec: &GroupSpec, mu: &RatVector) -> Result<BigInt> {
    validate(spec, mu)?;
    Ok(DualSystem::full(&spec.datum).weyl_dimension(mu))
}

fn validate(spec: &GroupSpec, mu: &RatVector) -> Result<()> {
    if !spec.datum.is_dominant(mu) {
        return Err(KlabError::NotDominant(mu.to_string()));
    }
    if !spec.datum.is_integral_coweight(mu) {
        return Err(KlabError::NotIntegral(mu.to_string()));
    }
    Ok(())
}

/// Sigma(mu)_{M-dom}: the M-dominant vectors whose dominant representative
/// is dominated by mu (integrally); computed as the M-dominant part of the
/// saturated weight set.
pub fn sigma_mdom(spec: &GroupSpec, mu: &RatVector, levi: &ParabolicIndex) -> Result<Vec<RatVector>> {
    validate(spec, mu)?;
    let system = DualSystem::full(&spec.datum);
    let mut out: Vec<RatVector> = system
        .weights(mu)
        .into_iter()
        .filter(|w| spec.datum.is_dominant_for(w, levi))
        .collect();
    out.sort();
    Ok(out)
}

/// W mu intersected with the M-dominant cone.
pub fn weyl_orbit_mdom(
    spec: &GroupSpec,
    mu: &RatVector,
    levi: &ParabolicIndex,
) -> Result<Vec<RatVector>> {
    validate(spec, mu)?;
    let mut orbit: Vec<RatVector> = spec
        .datum
        .weyl_group()
        .iter()
        .map(|w| w.apply_coweight(mu))
        .filter(|v| spec.datum.is_dominant_for(v, levi))
        .collect();
    orbit.sort();
    orbit.dedup();
    Ok(orbit)
}

/// lambda1 <=_P lambda2: the difference is a nonnegative rational
/// combination of the positive coroots outside the Levi.
pub fn leq_p(
    spec: &GroupSpec,
    lambda1: &RatVector,
    lambda2: &RatVector,
    levi: &ParabolicIndex,
) -> bool {
    let inside: Vec<Vec<Q>> = spec
        .datum
        .positive_coroots_of_levi(levi)
        .iter()
        .map(|c| c.entries.clone())
        .collect();
    let gens: Vec<Vec<Q>> = spec
        .datum
        .positive_coroots
        .iter()
        .filter(|c| !inside.contains(&c.entries))
        .map(|c| c.entries.clone())
        .collect();
    in_rational_cone(&gens, &lambda2.sub(lambda1).entries)
}

/// The <=_P comparison together with the closure set of lambda1 inside
/// the ambient S_M(mu) value set.
pub fn leq_p_and_closure(
    spec: &GroupSpec,
    smu: &SMuSet,
    lambda1: &RatVector,
    lambda2: &RatVector,
) -> (bool, Vec<RatVector>) {
    let leq = leq_p(spec, lambda1, lambda2, &smu.levi);
    let closure: Vec<RatVector> = smu
        .value
        .iter()
        .filter(|l| leq_p(spec, l, lambda1, &smu.levi))
        .cloned()
        .collect();
    (leq, closure)
}

/// Branching model of S_M(mu): iterated highest-weight stripping of the
/// restricted module, with the sandwich bounds enforced.
pub fn branching_s_mu(spec: &GroupSpec, mu: &RatVector, levi: &ParabolicIndex) -> Result<SMuSet> {
    validate(spec, mu)?;
    let datum = &spec.datum;
    let full_mult = DualSystem::full(datum).multiplicities(mu);
    let levi_system = DualSystem::levi(datum, levi);

    // residual character; strip the Levi module of the tallest remaining
    // M-dominant weight until nothing is left
    let mut residual = full_mult;
    let rho2_m = levi_system.rho_hat.scale(&crate::qlin::q(2));
    let mut value: Vec<RatVector> = Vec::new();
    loop {
        let mut best: Option<RatVector> = None;
        for (w, m) in &residual {
            if m.is_zero() {
                continue;
            }
            let v = RatVector::coweight(w.clone());
            if !datum.is_dominant_for(&v, levi) {
                continue;
            }
            let better = match &best {
                None => true,
                Some(b) => {
                    let hv = datum.inner(&v, &rho2_m);
                    let hb = datum.inner(b, &rho2_m);
                    hv > hb || (hv == hb && v.entries > b.entries)
                }
            };
            if better {
                best = Some(v);
            }
        }
        let Some(top) = best else { break };
        let m_top = residual[&top.entries].clone();
        assert!(m_top.is_positive(), "negative residual multiplicity: branching bug");
        let levi_char = levi_system.multiplicities(&top);
        for (w, m) in levi_char {
            let slot = residual.get_mut(&w).expect("Levi weight escaped the ambient weight set");
            *slot -= m * &m_top;
            assert!(!slot.is_negative(), "branching subtracted below zero");
        }
        value.push(top);
    }
    assert!(residual.values().all(Zero::is_zero), "branching left residue");
    value.sort();
    value.dedup();

    let lower = weyl_orbit_mdom(spec, mu, levi)?;
    let upper = sigma_mdom(spec, mu, levi)?;
    let is_subset = |a: &[RatVector], b: &[RatVector]| a.iter().all(|x| b.contains(x));
    assert!(is_subset(&lower, &value), "sandwich violated: lower not within value");
    assert!(is_subset(&value, &upper), "sandwich violated: value not within upper");

    // mu is the unique <=_P-maximal element of the value set
    let maxima: Vec<&RatVector> = value
        .iter()
        .filter(|l| value.iter().all(|o| *l == o || !leq_p(spec, l, o, levi)))
        .collect();
    assert_eq!(maxima.len(), 1, "expected a unique maximal element");
    assert_eq!(maxima[0], mu, "mu must be the maximal element");

    Ok(SMuSet { levi: levi.clone(), lower, value, upper, max_element: mu.clone() })
}

/// A coweight is minuscule when every root pairing lies in {-1, 0, 1}.
pub fn is_minuscule(spec: &GroupSpec, mu: &RatVector) -> bool {
    spec.datum.positive_roots.iter().all(|r| {
        let p = pairing(r, mu);
        p.abs() <= Q::one()
    })
}
