//! Sweep runner: fans the standard instance families out to a worker
//! pool and assembles one JSON record per instance, in a deterministic
//! order. Randomized families draw from an explicit seed.

use anyhow::bail;
use num::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

use klab_core::filspace::{self, Instance};
use klab_core::kottwitz;
use klab_core::rootcore::{BasedRootDatum, CartanKind, Isogeny};
use klab_core::sweeps::{dominant_grid, filtered_instances, lattice_instances};
use klab_core::{GroupSpec, RatVector};

use crate::report::q_str;

pub fn run_sweep(kind: &str, seed: u64, limit: Option<usize>) -> anyhow::Result<Vec<Value>> {
    let mut records = Vec::new();
    match kind {
        "kottwitz" => records.extend(kottwitz_sweep(limit)?),
        "lattice" => records.extend(lattice_sweep(seed, limit)?),
        "filtered" => records.extend(filtered_sweep(limit)?),
        "all" => {
            records.extend(kottwitz_sweep(limit)?);
            records.extend(lattice_sweep(seed, limit)?);
            records.extend(filtered_sweep(limit)?);
        }
        other => bail!("unknown sweep kind {other}"),
    }
    Ok(records)
}



fn kottwitz_sweep(limit: Option<usize>) -> anyhow::Result<Vec<Value>> {
    let mut jobs: Vec<(usize, Vec<i64>)> = Vec::new();
    for n in 1..=4usize {
        for mu in dominant_grid(n, -2, 2) {
            jobs.push((n, mu));
        }
    }
    if let Some(l) = limit {
        jobs.truncate(l);
    }
    let records: Vec<Value> = jobs
        .par_iter()
        .map(|(n, mu)| {
            let g = GroupSpec::split(
                BasedRootDatum::build(CartanKind::A { n: *n }, Isogeny::GlStyle).unwrap(),
                format!("GL{n}"),
            );
            let muv = RatVector::coweight_i64(mu);
            let set = kottwitz::enumerate_b_g_mu(&g, &muv).expect("dominant integral");
            let mut nus: Vec<Vec<BigRational>> =
                set.newton_points().iter().map(|v| v.entries.clone()).collect();
            nus.sort();
            let oracle = kottwitz::gl_polygon_oracle(*n, mu);
            json!({
                "family": "kottwitz",
                "group": format!("GL{n}"),
                "mu": mu,
                "size": set.len(),
                "newton_points": nus.iter().map(|v| v.iter().map(q_str).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "oracle_match": nus == oracle,
            })
        })
        .collect();
    Ok(records)
}

fn default_precision() -> i64 {
    std::env::var("KLAB_PRECISION")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(filspace::DEFAULT_PRECISION)
}





fn lattice_sweep(seed: u64, limit: Option<usize>) -> anyhow::Result<Vec<Value>> {
    let instances = lattice_instances(seed, default_precision(), limit);
    let records: Vec<Value> = instances
        .par_iter()
        .map(|l| {
            let text = filspace::print_instance(&Instance::Lattice(l.clone()));
            let cartan = filspace::cartan_invariant(l).expect("cartan");
            let hodge = filspace::hodge_type(l).expect("hodge");
            let (deg, hn) = filspace::deg_and_hn_lattice(l).expect("hn");
            let swap = filspace::swap_identity(l).expect("swap");
            let bb = filspace::bb_type_check(l).expect("bb");
            let stable = filspace::invariants_stable(l).expect("stability");
            let round_trip = {
                let reparsed = filspace::parse_instance(&text).expect("reparse");
                filspace::print_instance(&reparsed) == text
            };
            json!({
                "family": "lattice",
                "instance": text,
                "cartan": cartan.exponents,
                "hodge_type": hodge,
                "deg": deg,
                "hn_vector": hn.vector.iter().map(q_str).collect::<Vec<_>>(),
                "swap_minuscule": swap.minuscule,
                "swap_cartan_negated": swap.cartan_negated,
                "swap_deg_negated": swap.deg_negated,
                "swap_hn_negated": swap.hn_negated,
                "bb_minuscule_asserted": bb.asserted_equal,
                "precision_stable": stable,
                "round_trip": round_trip,
            })
        })
        .collect();
    Ok(records)
}



fn filtered_sweep(limit: Option<usize>) -> anyhow::Result<Vec<Value>> {
    let mut instances = filtered_instances();
    if let Some(l) = limit {
        instances.truncate(l);
    }
    let records: Vec<Value> = instances
        .par_iter()
        .map(|x| {
            let text = filspace::print_instance(&Instance::Filtered(x.clone()));
            let hn = filspace::hn_filtration(x).expect("hn");
            let submodular = filspace::check_deg_submodular(x).expect("submodular");
            let round_trip = {
                let reparsed = filspace::parse_instance(&text).expect("reparse");
                filspace::print_instance(&reparsed) == text
            };
            json!({
                "family": "filtered",
                "instance": text,
                "hn_vector": hn.vector.iter().map(q_str).collect::<Vec<_>>(),
                "total_deg": q_str(&hn.total_deg()),
                "deg_submodular": submodular,
                "round_trip": round_trip,
            })
        })
        .collect();
    Ok(records)
}
