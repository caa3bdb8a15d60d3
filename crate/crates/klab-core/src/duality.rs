//! Twin-towers transfer between B(G) and B(J_b) for basic b.
//!
//! J_b is modeled by the same group spec plus shift data: the transfer
//! adds the central Newton point of b and its Kottwitz point. The Newton
//! sets and pi_1 coinvariants of the inner twist are identified with
//! those of the quasi-split model through this shift.

use crate::error::{KlabError, Result};
use crate::galois::{GroupSpec, Pi1Elt};
use crate::kottwitz::{
    class_with_invariants, enumerate_b_g_mu, enumerate_generalized, KottwitzSet, SetKind,
    SigmaConjClass,
};
use crate::rootcore::{ParabolicIndex, RatVector};

/// Shift data identifying B(J_b) with B(G).
#[derive(Debug, Clone)]
pub struct DualDatum {
    /// Central Newton point of the basic class b.
    pub nu_shift: RatVector,
    /// Kottwitz point of b.
    pub kappa_shift: Pi1Elt,
    /// mu^{-1} as a dominant coweight: star(mu).
    pub mu_inverse: RatVector,
    /// The class [b^{-1}] of the inner twist, in J_b coordinates.
    pub b_inverse: SigmaConjClass,
}

/// Build the dual datum for a basic class of B(G, mu).
pub fn dual_local_datum(
    spec: &GroupSpec,
    mu: &RatVector,
    b: &SigmaConjClass,
) -> Result<DualDatum> {
    if !b.is_basic(spec.datum.rank) {
        return Err(KlabError::Precondition("dual datum requires a basic class".into()));
    }
    let full = ParabolicIndex::full(spec.datum.rank);
    let pi_g = spec.pi1_coinvariants(&full)?;
    // consistency: the slope of the kappa shift is the nu shift
    debug_assert_eq!(spec.slope(&pi_g, &b.kappa), b.newton);
    // [b^{-1}]: nu = -nu(b), kappa = -kappa(b); still basic.
    let b_inv = SigmaConjClass {
        levi: full,
        kappa_levi: pi_g.neg(&b.kappa_levi),
        newton: b.newton.neg(),
        kappa: pi_g.neg(&b.kappa),
    };
    Ok(DualDatum {
        nu_shift: b.newton.clone(),
        kappa_shift: b.kappa.clone(),
        mu_inverse: spec.datum.star_involution(mu),
        b_inverse: b_inv,
    })
}

/// Transfer a class of the inner twist to a class of G: Newton points
/// shift by nu(b), Kottwitz points by kappa(b). The central shift keeps
/// the Newton point dominant and the Levi unchanged.
pub fn transfer_class(
    spec: &GroupSpec,
    datum: &DualDatum,
    class: &SigmaConjClass,
) -> Result<SigmaConjClass> {
    let full = ParabolicIndex::full(spec.datum.rank);
    let pi_g = spec.pi1_coinvariants(&full)?;
    let newton = class.newton.add(&datum.nu_shift);
    let kappa = pi_g.add(&class.kappa, &datum.kappa_shift);
    class_with_invariants(spec, &newton, &kappa)?.ok_or_else(|| {
        KlabError::NotInGroup(format!(
            "transferred invariants (nu={newton}, kappa={kappa}) are not a class"
        ))
    })
}

/// Inverse transfer into J_b coordinates. The result is a class of the
/// inner twist, so only the shift bookkeeping applies; the central shift
/// keeps the Levi and the Levi-level class unchanged.
pub fn transfer_class_inverse(
    spec: &GroupSpec,
    datum: &DualDatum,
    class: &SigmaConjClass,
) -> Result<SigmaConjClass> {
    let full = ParabolicIndex::full(spec.datum.rank);
    let pi_g = spec.pi1_coinvariants(&full)?;
    Ok(SigmaConjClass {
        levi: class.levi.clone(),
        kappa_levi: class.kappa_levi.clone(),
        newton: class.newton.sub(&datum.nu_shift),
        kappa: pi_g.sub(&class.kappa, &datum.kappa_shift),
    })
}

/// Enumerate the Kottwitz set of the inner twist J_b in its own
/// coordinates: the honest classes of the twist have Newton points in
/// the shifted image, so the scan runs in G coordinates and reports the
/// shifted invariants.
pub fn enumerate_b_jb_mu(
    spec: &GroupSpec,
    datum: &DualDatum,
    mu_twist: &RatVector,
) -> Result<KottwitzSet> {
    let full = ParabolicIndex::full(spec.datum.rank);
    let pi_g = spec.pi1_coinvariants(&full)?;
    let mu_sharp = spec.sharp(&pi_g, mu_twist)?;
    let mu_diamond = spec.gamma_average(mu_twist)?;
    let bound = mu_diamond.add(&datum.nu_shift);
    let target = pi_g.add(&mu_sharp, &datum.kappa_shift);
    let g_side = crate::kottwitz::enumerate_b_bounded(spec, &bound, &target)?;
    let elements: Vec<SigmaConjClass> = g_side
        .into_iter()
        .map(|c| SigmaConjClass {
            levi: c.levi.clone(),
            kappa_levi: c.kappa_levi.clone(),
            newton: c.newton.sub(&datum.nu_shift),
            kappa: pi_g.sub(&c.kappa, &datum.kappa_shift),
        })
        .collect();
    Ok(crate::kottwitz::build_set(spec, SetKind::BMu, elements))
}

/// B(J_b, 0, nu_{b^{-1}} mu): kappa_J = 0, nu_J <= nu_{b^{-1}} + mu^diamond,
/// enumerated in J_b coordinates.
pub fn enumerate_generalized_jb(
    spec: &GroupSpec,
    datum: &DualDatum,
    mu: &RatVector,
) -> Result<KottwitzSet> {
    let full = ParabolicIndex::full(spec.datum.rank);
    let pi_g = spec.pi1_coinvariants(&full)?;
    let mu_diamond = spec.gamma_average(mu)?;
    // in G coordinates the constraints read kappa = kappa_b, nu <= mu^diamond
    let g_side = crate::kottwitz::enumerate_b_bounded(spec, &mu_diamond, &datum.kappa_shift)?;
    let elements: Vec<SigmaConjClass> = g_side
        .into_iter()
        .map(|c| SigmaConjClass {
            levi: c.levi.clone(),
            kappa_levi: c.kappa_levi.clone(),
            newton: c.newton.sub(&datum.nu_shift),
            kappa: pi_g.sub(&c.kappa, &datum.kappa_shift),
        })
        .collect();
    Ok(crate::kottwitz::build_set(spec, SetKind::Generalized, elements))
}

/// Report of the twin-towers bijection checks.
#[derive(Debug)]
pub struct BijectionReport {
    /// (J_b-side index, G-side index) pairs for B(J_b, mu^{-1}) -> B(G, 0, nu_b mu^{-1}).
    pub first: Vec<(usize, usize)>,
    /// Pairs for B(J_b, 0, nu_{b^{-1}} mu) -> B(G, mu).
    pub second: Vec<(usize, usize)>,
    pub order_preserved: bool,
    pub basic_to_basic: bool,
    pub ordinary_to_maximal: bool,
}

/// Verify both bijections elementwise; a mismatch panics, signaling an
/// enumeration bug rather than a recoverable error.
pub fn verify_bijections(
    spec: &GroupSpec,
    mu: &RatVector,
    b: &SigmaConjClass,
) -> Result<BijectionReport> {
    let datum = dual_local_datum(spec, mu, b)?;
    let b_g_mu = enumerate_b_g_mu(spec, mu)?;
    let gen_g = enumerate_generalized(spec, mu, b)?;

    // first bijection: B(J_b, mu^{-1}) -> B(G, 0, nu_b mu^{-1})
    let jb_mu_inv = enumerate_b_jb_mu(spec, &datum, &datum.mu_inverse)?;
    assert_eq!(jb_mu_inv.len(), gen_g.len(), "twin-towers size mismatch (first bijection)");
    let mut first = Vec::new();
    for (i, c) in jb_mu_inv.elements.iter().enumerate() {
        let t = transfer_class(spec, &datum, c)?;
        let j = gen_g
            .find(&t.newton, &t.kappa)
            .expect("transferred class missing from the generalized set");
        first.push((i, j));
    }
    assert_injective(&first);

    // second bijection: B(J_b, 0, nu_{b^{-1}} mu) -> B(G, mu)
    let jb_gen = enumerate_generalized_jb(spec, &datum, mu)?;
    assert_eq!(jb_gen.len(), b_g_mu.len(), "twin-towers size mismatch (second bijection)");
    let mut second = Vec::new();
    for (i, c) in jb_gen.elements.iter().enumerate() {
        let t = transfer_class(spec, &datum, c)?;
        let j = b_g_mu.find(&t.newton, &t.kappa).expect("transferred class missing from B(G,mu)");
        second.push((i, j));
    }
    assert_injective(&second);

    // order preservation in both directions
    let mut order_preserved = true;
    for (i1, j1) in &second {
        for (i2, j2) in &second {
            if jb_gen.leq[*i1][*i2] != b_g_mu.leq[*j1][*j2] {
                order_preserved = false;
            }
        }
    }
    for (i1, j1) in &first {
        for (i2, j2) in &first {
            if jb_mu_inv.leq[*i1][*i2] != gen_g.leq[*j1][*j2] {
                order_preserved = false;
            }
        }
    }

    // round trip on every enumerated class
    for c in jb_gen.elements.iter().chain(jb_mu_inv.elements.iter()) {
        let rt = transfer_class_inverse(spec, &datum, &transfer_class(spec, &datum, c)?)?;
        assert_eq!(rt.newton, c.newton, "transfer round trip failed");
        assert_eq!(rt.kappa, c.kappa, "transfer round trip failed");
    }

    let jb_basic = jb_gen.basic.expect("generalized sets carry a basic element");
    let basic_to_basic = second.iter().any(|&(i, j)| i == jb_basic && Some(j) == b_g_mu.basic);
    let jb_max = jb_gen.mu_ordinary.expect("generalized sets carry a maximal element");
    let ordinary_to_maximal =
        second.iter().any(|&(i, j)| i == jb_max && Some(j) == b_g_mu.mu_ordinary);

    Ok(BijectionReport { first, second, order_preserved, basic_to_basic, ordinary_to_maximal })
}

fn assert_injective(pairs: &[(usize, usize)]) {
    let mut seen = std::collections::BTreeSet::new();
    for (_, j) in pairs {
        assert!(seen.insert(*j), "transfer failed injectivity");
    }
}
