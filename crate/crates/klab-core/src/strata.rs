//! HN types, the HN-vector map, Newton/HN stratum dimension formulas,
//! Schubert-cell dimension, parabolic-induction data, and the
//! combinatorial weak-admissibility screen.

use num::Signed;

use crate::error::{KlabError, Result};
use crate::galois::{GroupSpec, Pi1Elt};
use crate::hodgenewton::omega_tilde;
use crate::kottwitz::n_g_mu;
use crate::qlin::{is_integral, Q};
use crate::rootcore::{pair, pairing, ParabolicIndex, RatVector, WeylElement};
use crate::semiinfinite::branching_s_mu;

/// An HN type: a standard parabolic with a strictly P-regular translate
/// of mu^{-1} (one representative per W_P-orbit on the W-orbit).
#[derive(Debug, Clone)]
pub struct HNType {
    pub parabolic: ParabolicIndex,
    /// M-dominant representative of the W_P-orbit.
    pub nu_p: RatVector,
    /// Central projection into X_*(A_P)_Q; strictly positive outside P.
    pub mu_of_nu: RatVector,
    /// Minimal-length double-coset representative with w(star mu) = nu_p.
    pub weyl_rep: WeylElement,
}

/// Enumerate Theta(G, mu): HN types over the standard parabolics defined
/// over the base field (the Galois-stable ones). The image mu(nu_P) in
/// X_*(A_P)_Q is the Galois average of the central projection; the
/// positivity test runs over the relative simple roots outside P.
pub fn theta_set(spec: &GroupSpec, mu: &RatVector) -> Result<Vec<HNType>> {
    if !spec.datum.is_dominant(mu) {
        return Err(KlabError::NotDominant(mu.to_string()));
    }
    if !spec.datum.is_integral_coweight(mu) {
        return Err(KlabError::NotIntegral(mu.to_string()));
    }
    let datum = &spec.datum;
    let mu_inv = datum.star_involution(mu);
    let stab = datum.centralizer_levi(&mu_inv);
    let mut out = Vec::new();
    for p in spec.stable_levis() {
        for w in datum.coset_reps(&p, &stab) {
            let nu_p = w.apply_coweight(&mu_inv);
            debug_assert!(datum.is_dominant_for(&nu_p, &p));
            let proj = spec.average_coweight(&datum.central_projection(&p, &nu_p));
            let strictly_regular = (0..datum.rank)
                .filter(|i| !p.contains(*i))
                .all(|i| pairing(&datum.simple_roots[i], &proj).is_positive());
            if strictly_regular {
                out.push(HNType { parabolic: p.clone(), nu_p, mu_of_nu: proj, weyl_rep: w });
            }
        }
    }
    out.sort_by(|a, b| {
        a.parabolic
            .cmp_key()
            .cmp(&b.parabolic.cmp_key())
            .then(a.nu_p.cmp(&b.nu_p))
    });
    Ok(out)
}

impl ParabolicIndex {
    fn cmp_key(&self) -> (usize, Vec<usize>) {
        (self.0.len(), self.0.iter().copied().collect())
    }
}

/// The HN vector of a type: the dominant representative of the negated
/// central projection. The open type (P = G) maps to the basic vector.
pub fn hn_vector_of_type(spec: &GroupSpec, mu: &RatVector, theta: &HNType) -> Result<RatVector> {
    let v = spec.datum.dominant_representative(&theta.mu_of_nu.neg()).0;
    // membership in N(G, mu) is part of the contract
    let n = n_g_mu(spec, mu)?;
    assert!(n.contains(&v), "HN vector {v} escaped N(G,mu): convention bug");
    Ok(v)
}

/// Which stratum a dimension is requested for.
#[derive(Debug, Clone)]
pub enum DimTarget {
    /// Newton stratum of a class with the given Newton point.
    Newton(RatVector),
    /// HN stratum of the given vector in N(G, mu).
    Hn(RatVector),
    /// The Schubert cell itself.
    Cell,
}

/// Stratum dimension data.
#[derive(Debug, Clone)]
pub struct StratumReport {
    pub target: DimTarget,
    /// The computed dimension.
    pub dimension: Q,
    /// For HN strata: the conjectural value <mu - nu, 2 rho>.
    pub conjectural: Option<Q>,
    /// Nonemptiness of non-basic HN strata is not decided; their
    /// dimensions are conditional.
    pub conditional_on_nonemptiness: bool,
    /// Parabolic-induction data of the dimension-achieving type:
    /// the Levi and the affine rank (the coset representative's length).
    pub induction: Option<(ParabolicIndex, usize)>,
}

/// dim Gr_mu = <2 rho, mu>.
pub fn cell_dimension(spec: &GroupSpec, mu: &RatVector) -> Result<Q> {
    pair(&spec.datum.rho2, mu)
}

/// Newton stratum: <mu - nu, 2 rho>; always a nonnegative integer.
pub fn newton_stratum_dimension(spec: &GroupSpec, mu: &RatVector, nu: &RatVector) -> Result<Q> {
    let d = pair(&spec.datum.rho2, &mu.sub(nu))?;
    assert!(
        !d.is_negative() && is_integral(&d),
        "Newton stratum dimension must be a nonnegative integer, got {d}"
    );
    Ok(d)
}

/// HN stratum of nu: max over contributing types of
/// <nu_P, 2 rho_M> + length(w), reported beside the conjectural value.
/// Returns `None` when no type maps to nu.
pub fn hn_stratum_dimension(
    spec: &GroupSpec,
    mu: &RatVector,
    nu: &RatVector,
) -> Result<Option<StratumReport>> {
    let types = theta_set(spec, mu)?;
    let star_nu = spec.datum.star_involution(nu);
    let mut best: Option<(Q, &HNType)> = None;
    for theta in &types {
        // contributing types: central projection lands on star(nu)
        if theta.mu_of_nu != star_nu {
            continue;
        }
        let rho2_m = spec.datum.rho2_of_levi(&theta.parabolic);
        let val = pair(&rho2_m, &theta.nu_p)? + crate::qlin::q(theta.weyl_rep.length as i64);
        best = Some(match best {
            None => (val, theta),
            Some((b, _)) if val > b => (val, theta),
            Some(b) => b,
        });
    }
    let Some((dimension, argmax)) = best else { return Ok(None) };
    let conjectural = pair(&spec.datum.rho2, &mu.sub(nu))?;
    let basic = spec.datum.centralizer_levi(nu).is_full(spec.datum.rank);
    let induction = (!argmax.parabolic.is_full(spec.datum.rank))
        .then(|| (argmax.parabolic.clone(), argmax.weyl_rep.length));
    Ok(Some(StratumReport {
        target: DimTarget::Hn(nu.clone()),
        dimension,
        conjectural: Some(conjectural),
        conditional_on_nonemptiness: !basic,
        induction,
    }))
}

/// Parabolic-induction data of a proper HN type: the Levi, the
/// double-coset representative (the affine rank is its length), and the
/// induced Levi flag type.
pub fn parabolic_induction_data(
    spec: &GroupSpec,
    theta: &HNType,
) -> Result<(ParabolicIndex, WeylElement, usize, RatVector)> {
    if theta.parabolic.is_full(spec.datum.rank) {
        return Err(KlabError::Precondition(
            "the open type P = G is not a proper parabolic induction".into(),
        ));
    }
    Ok((
        theta.parabolic.clone(),
        theta.weyl_rep.clone(),
        theta.weyl_rep.length,
        theta.nu_p.clone(),
    ))
}

/// One row of the weak-admissibility screen: a relative simple root
/// outside the parabolic and the degree of the corresponding pushed
/// rank-one object.
#[derive(Debug, Clone)]
pub struct WaDegree {
    pub orbit: Vec<usize>,
    pub degree: Q,
}

/// Degrees deg chi_*(E)_P = <chi, lambda> - <chi, nu_{b_M}> for
/// chi = omega~_alpha over the relative simple roots outside M; the
/// stratum label passes when every degree is <= 0.
pub fn wa_screen(
    spec: &GroupSpec,
    mu: &RatVector,
    b: &crate::kottwitz::SigmaConjClass,
    levi: &ParabolicIndex,
    kappa_b_m: &Pi1Elt,
    lambda: &RatVector,
) -> Result<(Vec<WaDegree>, bool)> {
    if !spec.is_galois_stable(levi) {
        return Err(KlabError::NotGaloisStable);
    }
    let pi_m = spec.pi1_coinvariants(levi)?;
    let full = ParabolicIndex::full(spec.datum.rank);
    let pi_g = spec.pi1_coinvariants(&full)?;
    // the reduction's invariants must be compatible with b
    let kg = spec.pi1_map(&pi_m, &pi_g, kappa_b_m);
    if kg != b.kappa {
        return Err(KlabError::NotInGroup(
            "kappa of the Levi class does not push to kappa(b)".into(),
        ));
    }
    // lambda must index a stratum: member of the branching model of S_M(mu)
    let smu = branching_s_mu(spec, mu, levi)?;
    if !smu.value.contains(lambda) {
        return Err(KlabError::Precondition(format!("{lambda} is not in S_M(mu)")));
    }
    let nu_bm = spec.slope(&pi_m, kappa_b_m);
    let mut rows = Vec::new();
    let mut pass = true;
    for orbit in spec.relative_simple_roots() {
        if orbit.iter().all(|i| levi.contains(*i)) {
            continue;
        }
        let chi = omega_tilde(spec, &orbit);
        let degree = pair(&chi, lambda)? - pair(&chi, &nu_bm)?;
        if degree.is_positive() {
            pass = false;
        }
        rows.push(WaDegree { orbit, degree });
    }
    Ok((rows, pass))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kottwitz::{distinguished_elements, enumerate_b_g_mu};
    use crate::qlin::{q, qr};
    use crate::rootcore::{BasedRootDatum, CartanKind, Isogeny};
    use num::Zero;

    fn gl(n: usize) -> GroupSpec {
        GroupSpec::split(
            BasedRootDatum::build(CartanKind::A { n }, Isogeny::GlStyle).unwrap(),
            format!("GL{n}"),
        )
    }

    fn cw(v: &[i64]) -> RatVector {
        RatVector::coweight_i64(v)
    }

    #[test]
    fn theta_gl2() {
        let g = gl(2);
        let types = theta_set(&g, &cw(&[1, 0])).unwrap();
        assert_eq!(types.len(), 2);
        // (B, (0,-1)) and (G, mu^{-1})
        assert_eq!(types[0].parabolic, ParabolicIndex::borel());
        assert_eq!(types[0].nu_p, cw(&[0, -1]));
        assert_eq!(types[1].parabolic, ParabolicIndex::full(1));
        // mu = 0: just the open type
        let types = theta_set(&g, &cw(&[0, 0])).unwrap();
        assert_eq!(types.len(), 1);
    }

    #[test]
    fn theta_gl3_minuscule() {
        let g = gl(3);
        let types = theta_set(&g, &cw(&[1, 0, 0])).unwrap();
        // P = G open type; P = {a1}-Levi with nu = (0,0,-1)-translates;
        // the Borel with the strictly dominant translate
        assert!(types.iter().any(|t| t.parabolic.is_full(2)));
        assert!(!types.is_empty());
        for t in &types {
            // positivity outside P
            for i in 0..2 {
                if !t.parabolic.contains(i) {
                    assert!(pairing(&g.datum.simple_roots[i], &t.mu_of_nu).is_positive());
                }
            }
        }
    }

    #[test]
    fn hn_vectors_land_in_n() {
        let g = gl(2);
        let mu = cw(&[1, 0]);
        let types = theta_set(&g, &mu).unwrap();
        let mut vectors = Vec::new();
        for t in &types {
            vectors.push(hn_vector_of_type(&g, &mu, t).unwrap());
        }
        assert!(vectors.contains(&cw(&[1, 0])));
        assert!(vectors.contains(&RatVector::coweight(vec![qr(1, 2), qr(1, 2)])));
        // the open type maps to the basic vector
        let open = types.iter().position(|t| t.parabolic.is_full(1)).unwrap();
        assert_eq!(
            hn_vector_of_type(&g, &mu, &types[open]).unwrap(),
            RatVector::coweight(vec![qr(1, 2), qr(1, 2)])
        );
    }

    #[test]
    fn dimension_examples() {
        let g = gl(2);
        let mu = cw(&[1, 0]);
        let set = enumerate_b_g_mu(&g, &mu).unwrap();
        let (b, o) = distinguished_elements(&set);
        assert_eq!(newton_stratum_dimension(&g, &mu, &set.elements[b].newton).unwrap(), q(1));
        assert_eq!(newton_stratum_dimension(&g, &mu, &set.elements[o].newton).unwrap(), q(0));
        assert_eq!(cell_dimension(&g, &mu).unwrap(), q(1));
        // ordinary HN stratum: formula 0, equal to the conjectural value
        let rep = hn_stratum_dimension(&g, &mu, &cw(&[1, 0])).unwrap().unwrap();
        assert_eq!(rep.dimension, q(0));
        assert_eq!(rep.conjectural, Some(q(0)));
        // basic HN stratum is open of full dimension
        let rep = hn_stratum_dimension(&g, &mu, &RatVector::coweight(vec![qr(1, 2), qr(1, 2)]))
            .unwrap()
            .unwrap();
        assert_eq!(rep.dimension, q(1));
        assert!(!rep.conditional_on_nonemptiness);
    }

    #[test]
    fn induction_data() {
        let g = gl(2);
        let types = theta_set(&g, &cw(&[1, 0])).unwrap();
        let closed = types.iter().find(|t| !t.parabolic.is_full(1)).unwrap();
        let (m, _, rank, _) = parabolic_induction_data(&g, closed).unwrap();
        assert_eq!(m, ParabolicIndex::borel());
        assert_eq!(rank, 0);
        let open = types.iter().find(|t| t.parabolic.is_full(1)).unwrap();
        assert!(parabolic_induction_data(&g, open).is_err());
    }

    #[test]
    fn wa_screen_examples() {
        let g = gl(2);
        let mu = cw(&[1, 0]);
        let set = enumerate_b_g_mu(&g, &mu).unwrap();
        let (_, o) = distinguished_elements(&set);
        let ord = &set.elements[o];
        let t = ParabolicIndex::borel();
        let pi_t = g.pi1_coinvariants(&t).unwrap();
        // reduction with nu = (1,0): lambda = (1,0) gives degree 0, passes
        let k10 = g.sharp(&pi_t, &cw(&[1, 0])).unwrap();
        let (rows, pass) = wa_screen(&g, &mu, ord, &t, &k10, &cw(&[1, 0])).unwrap();
        assert!(pass);
        assert!(rows[0].degree.is_zero());
        // lambda = (0,1) with nu_{b_T} = (0,1): degree 0
        let k01 = g.sharp(&pi_t, &cw(&[0, 1])).unwrap();
        let (rows, pass) = wa_screen(&g, &mu, ord, &t, &k01, &cw(&[0, 1])).unwrap();
        assert!(pass);
        assert!(rows[0].degree.is_zero());
        // lambda = (1,0) against nu_{b_T} = (0,1): degree 1, fails
        let (rows, pass) = wa_screen(&g, &mu, ord, &t, &k01, &cw(&[1, 0])).unwrap();
        assert!(!pass);
        assert_eq!(rows[0].degree, q(1));
        // incompatible reduction rejected
        let k20 = g.sharp(&pi_t, &cw(&[2, 0])).unwrap();
        assert!(wa_screen(&g, &mu, ord, &t, &k20, &cw(&[1, 0])).is_err());
    }

    #[test]
    fn wa_degree_vanishes_on_matching_central_projections() {
        // lambda = (1,0,1) and nu_{b_M} = (1/2,1/2,1) differ, but share the
        // central M-projection (1/2,1/2,1); the degree must vanish
        let g3 = gl(3);
        let mu = cw(&[2, 0, 0]);
        let set = enumerate_b_g_mu(&g3, &mu).unwrap();
        let target = RatVector::coweight(vec![q(1), qr(1, 2), qr(1, 2)]);
        let b = set.elements.iter().find(|c| c.newton == target).unwrap();
        let m = ParabolicIndex::new([0]);
        let reds = crate::kottwitz::reductions_to_levi(&g3, &m, b).unwrap();
        let (k, nu_m) = reds
            .iter()
            .find(|(_, nu)| nu == &RatVector::coweight(vec![qr(1, 2), qr(1, 2), q(1)]))
            .cloned()
            .unwrap();
        assert_ne!(nu_m, cw(&[1, 0, 1]));
        let (rows, pass) = wa_screen(&g3, &mu, b, &m, &k, &cw(&[1, 0, 1])).unwrap();
        assert!(pass);
        assert!(rows[0].degree.is_zero());
    }
}
