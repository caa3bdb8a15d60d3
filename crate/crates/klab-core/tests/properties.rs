//! Property tests for the order-theoretic and homomorphism invariants.

use num::{BigInt, BigRational};
use proptest::prelude::*;

use klab_core::galois::GaloisAction;
use klab_core::rootcore::{BasedRootDatum, CartanKind, Isogeny, ParabolicIndex};
use klab_core::{kottwitz, semiinfinite, GroupSpec, RatVector};

fn gl(n: usize) -> GroupSpec {
    GroupSpec::split(
        BasedRootDatum::build(CartanKind::A { n }, Isogeny::GlStyle).unwrap(),
        format!("GL{n}"),
    )
}

fn twisted_a2() -> GroupSpec {
    let d = BasedRootDatum::build(CartanKind::A { n: 3 }, Isogeny::SimplyConnected).unwrap();
    GroupSpec::new(d, GaloisAction::unitary_flip(2, 3), "A2 sc galois=flip,2".into()).unwrap()
}

fn cw(v: &[i64]) -> RatVector {
    RatVector::coweight(v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
}

proptest! {
    #[test]
    fn star_involution_is_involutive(v in prop::collection::vec(-4i64..=4, 3)) {
        let g = gl(3);
        let (dom, _) = g.datum.dominant_representative(&cw(&v));
        let star = g.datum.star_involution(&dom);
        prop_assert!(g.datum.is_dominant(&star));
        prop_assert_eq!(g.datum.star_involution(&star), dom);
    }

    #[test]
    fn dominant_representative_length_is_minimal(v in prop::collection::vec(-3i64..=3, 3)) {
        let g = gl(3);
        let (dom, w) = g.datum.dominant_representative(&cw(&v));
        prop_assert_eq!(w.apply_coweight(&cw(&v)), dom.clone());
        let oracle = g
            .datum
            .weyl_group()
            .iter()
            .filter(|u| u.apply_coweight(&cw(&v)) == dom)
            .map(|u| u.length)
            .min()
            .unwrap();
        prop_assert_eq!(w.length, oracle);
    }

    #[test]
    fn dominance_is_a_partial_order(a in prop::collection::vec(-2i64..=2, 3),
                                    b in prop::collection::vec(-2i64..=2, 3),
                                    c in prop::collection::vec(-2i64..=2, 3)) {
        let g = gl(3);
        let (a, _) = g.datum.dominant_representative(&cw(&a));
        let (b, _) = g.datum.dominant_representative(&cw(&b));
        let (c, _) = g.datum.dominant_representative(&cw(&c));
        let leq = |x: &RatVector, y: &RatVector| g.datum.dominance_leq(x, y, false).unwrap();
        prop_assert!(leq(&a, &a));
        if leq(&a, &b) && leq(&b, &a) {
            prop_assert_eq!(a.clone(), b.clone());
        }
        if leq(&a, &b) && leq(&b, &c) {
            prop_assert!(leq(&a, &c));
        }
    }

    #[test]
    fn gamma_average_is_idempotent(v in prop::collection::vec(-3i64..=3, 3)) {
        let g = twisted_a2();
        let (dom, _) = g.datum.dominant_representative(&cw(&v));
        let avg = g.gamma_average(&dom).unwrap();
        prop_assert_eq!(g.gamma_average(&avg).unwrap(), avg.clone());
        // the average is Galois-invariant
        prop_assert_eq!(g.average_coweight(&avg), avg);
    }

    #[test]
    fn sharp_is_additive(a in prop::collection::vec(-3i64..=3, 2),
                         b in prop::collection::vec(-3i64..=3, 2)) {
        let g = gl(2);
        let full = ParabolicIndex::full(1);
        let pi = g.pi1_coinvariants(&full).unwrap();
        let sa = g.sharp(&pi, &cw(&a)).unwrap();
        let sb = g.sharp(&pi, &cw(&b)).unwrap();
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let ssum = g.sharp(&pi, &cw(&sum)).unwrap();
        prop_assert_eq!(pi.add(&sa, &sb), ssum);
        // slope . sharp is the central projection of the average
        let slope = g.slope(&pi, &sa);
        let direct = g.slope_of_coweight(&full, &cw(&a));
        prop_assert_eq!(slope, direct);
    }

    #[test]
    fn polygon_oracle_outputs_are_polygons(mu0 in -2i64..=2, d1 in 0i64..=2, d2 in 0i64..=2) {
        // mu = (mu0 + d1 + d2, mu0 + d2, mu0): decreasing by construction
        let mu = vec![mu0 + d1 + d2, mu0 + d2, mu0];
        let out = kottwitz::gl_polygon_oracle(3, &mu);
        let total: BigRational = mu.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).sum();
        // mu itself is a member
        prop_assert!(out.contains(&cw(&mu).entries));
        for nu in &out {
            let sum: BigRational = nu.iter().cloned().sum();
            prop_assert_eq!(&sum, &total);
            // decreasing and partial sums below mu
            let mut acc = BigRational::from_integer(BigInt::from(0));
            let mut macc = acc.clone();
            for (i, x) in nu.iter().enumerate() {
                if i + 1 < nu.len() {
                    prop_assert!(x >= &nu[i + 1]);
                }
                acc += x;
                macc += BigRational::from_integer(BigInt::from(mu[i]));
                prop_assert!(acc <= macc);
            }
        }
    }

    #[test]
    fn leq_p_is_a_partial_order(a in prop::collection::vec(-2i64..=2, 3),
                                b in prop::collection::vec(-2i64..=2, 3)) {
        let g = gl(3);
        let m = ParabolicIndex::new([0]);
        let a = cw(&a);
        let b = cw(&b);
        prop_assert!(semiinfinite::leq_p(&g, &a, &a, &m));
        if semiinfinite::leq_p(&g, &a, &b, &m) && semiinfinite::leq_p(&g, &b, &a, &m) {
            prop_assert_eq!(a, b);
        }
    }
}
