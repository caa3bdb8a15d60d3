//! Command-line front end: group-spec parsing, dispatch to the library
//! operations, sweep running, and JSON/DOT/text report emission.

mod report;
mod spec_text;
mod sweep;

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num::BigRational;
use serde_json::{json, Value};

use klab_core::filspace::{self, Instance};
use klab_core::galois::Pi1Elt;
use klab_core::rootcore::ParabolicIndex;
use klab_core::{duality, hodgenewton, kottwitz, semiinfinite, strata};
use klab_core::{GroupSpec, RatVector};

use report::{poset_dot, q_str, vec_str, Report};
use spec_text::{parse_spec, print_spec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Parser)]
#[command(name = "klab", version, about = "Exact invariants of sigma-conjugacy classes and lattice models")]
struct Cli {
    /// Output format; DOT is available for the poset commands.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate the Kottwitz set B(G, mu) with its partial order.
    Bgmu { spec: String, mu: String },
    /// The Newton-point image N(G, mu).
    Ngmu { spec: String, mu: String },
    /// Fully Hodge-Newton decomposable verdict with failures.
    Fullhnd { spec: String, mu: String },
    /// Witness functional values over the relative simple roots.
    Witness { spec: String, mu: String },
    /// Replay the non-fullness construction for flagged roots.
    Replay {
        spec: String,
        mu: String,
        /// Relative-root orbit index; defaults to every flagged root.
        #[arg(long)]
        alpha: Option<usize>,
    },
    /// HN types of (G, mu).
    Theta { spec: String, mu: String },
    /// Stratum dimensions.
    Dims {
        spec: String,
        mu: String,
        /// basic | ordinary | cell | nu=<coweight>
        #[arg(long)]
        stratum: String,
    },
    /// The dual (twin-towers) datum of the basic class.
    Dual { spec: String, mu: String },
    /// Verify the twin-towers bijections.
    Verifydual { spec: String, mu: String },
    /// Semi-infinite index sets for a standard Levi.
    Smu {
        spec: String,
        mu: String,
        /// Comma-separated simple-root indices of the Levi (empty = torus).
        #[arg(long, default_value = "")]
        levi: String,
    },
    /// The order along coroots outside the Levi, with the closure set.
    Closure {
        spec: String,
        mu: String,
        #[arg(long, default_value = "")]
        levi: String,
        #[arg(long)]
        lambda1: String,
        #[arg(long)]
        lambda2: String,
    },
    /// Harder-Narasimhan data of a filtered-space instance file.
    Hnfil { file: PathBuf },
    /// Invariants of a lattice instance file.
    Cartan { file: PathBuf },
    /// Run the standard instance sweeps.
    Sweep {
        /// kottwitz | filtered | lattice | all
        #[arg(long, default_value = "all")]
        kind: String,
        /// Seed for the randomized instances.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Cap on the number of instances per family.
        #[arg(long)]
        limit: Option<usize>,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(output) => {
            print!("{output}");
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

fn parse_mu(s: &str) -> anyhow::Result<RatVector> {
    let entries = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            if let Some((n, d)) = t.split_once('/') {
                Ok(BigRational::new(n.parse()?, d.parse()?))
            } else {
                Ok(BigRational::from_integer(t.parse()?))
            }
        })
        .collect::<anyhow::Result<Vec<_>>>()
        .with_context(|| format!("bad coweight {s}"))?;
    Ok(RatVector::coweight(entries))
}

fn parse_levi(s: &str, rank: usize) -> anyhow::Result<ParabolicIndex> {
    if s.trim().is_empty() {
        return Ok(ParabolicIndex::borel());
    }
    let idx: Vec<usize> = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| anyhow!("bad levi index: {e}")))
        .collect::<anyhow::Result<_>>()?;
    if idx.iter().any(|&i| i >= rank) {
        bail!("levi index out of range (rank {rank})");
    }
    Ok(ParabolicIndex::new(idx))
}

fn kappa_str(k: &Pi1Elt) -> String {
    k.to_string()
}

fn class_json(spec: &GroupSpec, c: &kottwitz::SigmaConjClass) -> Value {
    json!({
        "nu": vec_str(&c.newton),
        "kappa": kappa_str(&c.kappa),
        "levi": c.levi.to_string(),
        "basic": c.is_basic(spec.datum.rank),
    })
}

fn set_json(spec: &GroupSpec, set: &kottwitz::KottwitzSet) -> Value {
    let elements: Vec<Value> = set.elements.iter().map(|c| class_json(spec, c)).collect();
    let edges: Vec<Value> = set
        .hasse_edges()
        .into_iter()
        .map(|(a, b)| json!([a, b]))
        .collect();
    json!({
        "size": set.len(),
        "elements": elements,
        "hasse_edges": edges,
        "basic_index": set.basic,
        "mu_ordinary_index": set.mu_ordinary,
    })
}

fn run(cli: Cli) -> anyhow::Result<String> {
    let format = cli.format;
    match cli.cmd {
        Cmd::Bgmu { spec, mu } => {
            let g = parse_spec(&spec)?;
            let muv = parse_mu(&mu)?;
            let set = kottwitz::enumerate_b_g_mu(&g, &muv)?;
            if format == Format::Dot {
                let labels: Vec<String> = set.elements.iter().map(|c| vec_str(&c.newton)).collect();
                return Ok(poset_dot("bgmu", &labels, &set.hasse_edges()));
            }
            let rep = Report::new(
                "bgmu",
                &[("spec", print_spec(&g)), ("mu", muv.to_string())],
                set_json(&g, &set),
                &print_spec(&g),
            );
            emit(rep, format)
        }
        Cmd::Ngmu { spec, mu } => {
            let g = parse_spec(&spec)?;
            let muv = parse_mu(&mu)?;
            let n = kottwitz::n_g_mu(&g, &muv)?;
            let rep = Report::new(
                "ngmu",
                &[("spec", print_spec(&g)), ("mu", muv.to_string())],
                json!({"newton_points": n.iter().map(vec_str).collect::<Vec<_>>()}),
                &print_spec(&g),
            );
            emit(rep, format)
        }
        Cmd::Fullhnd { spec, mu } => {
            let g = parse_spec(&spec)?;
            let muv = parse_mu(&mu)?;
            let (verdict, failures) = hodgenewton::is_fully_hnd(&g, &muv)?;
            let rep = Report::new(
                "fullhnd",
                &[("spec", print_spec(&g)), ("mu", muv.to_string())],
                json!({
                    "fully_hodge_newton_decomposable": verdict,
                    "failures": failures.iter().map(|c| vec_str(&c.newton)).collect::<Vec<_>>(),
                }),
                &print_spec(&g),
            );
            emit(rep, format)
        }
        Cmd::Witness { spec, mu } => {
            let g = parse_spec(&spec)?;
            let muv = parse_mu(&mu)?;
            let w = hodgenewton::witness_functional(&g, &muv)?;
            let values: Vec<Value> = w
                .values
                .iter()
                .map(|(orbit, v)| json!({"orbit": orbit, "value": q_str(v)}))
                .collect();
            let rep = Report::new(
                "witness",
                &[("spec", print_spec(&g)), ("mu", muv.to_string())],
                json!({"values": values, "flagged": w.flagged}),
                &print_spec(&g),
            );
            emit(rep, format)
        }
        Cmd::Replay { spec, mu, alpha } => {
            let g = parse_spec(&spec)?;
            let muv = parse_mu(&mu)?;
            let set = kottwitz::enumerate_b_g_mu(&g, &muv)?;
            let b = set.elements[set.basic.ok_or_else(|| anyhow!("no basic element"))?].clone();
            let w = hodgenewton::witness_functional(&g, &muv)?;
            let targets: Vec<usize> = match alpha {
                Some(a) => vec![a],
                None => w.flagged.clone(),
            };
            if targets.is_empty() {
                bail!("no flagged relative roots; nothing to replay");
            }
            let mut reports = Vec::new();
            for a in targets {
                let r = hodgenewton::replay_nonfull(&g, &muv, &b, a)?;
                reports.push(json!({
                    "orbit": r.orbit,
                    "witness_value": q_str(&r.witness_value),
                    "constructed_nu": vec_str(&r.constructed.newton),
                    "member_index": r.member_index,
                    "non_decomposable": r.non_decomposable,
                    "identity_reductions_checked": r.identity_reductions_checked,
                    "final_pairing": q_str(&r.final_pairing),
                    "basic_pairing": q_str(&r.basic_pairing),
                }));
            }
            let rep = Report::new(
                "replay",
                &[("spec", print_spec(&g)), ("mu", muv.to_string())],
                json!({"replays": reports}),
                &print_spec(&g),
            );
            emit(rep, format)
        }
        Cmd::Theta { spec, mu } => {
            let g = parse_spec(&spec)?;
            let muv = parse_mu(&mu)?;
            let types = strata::theta_set(&g, &muv)?;
            let mut rows = Vec::new();
            for t in &types {
                let h = strata::hn_vector_of_type(&g, &muv, t)?;
                rows.push(json!({
                    "parabolic": t.parabolic.to_string(),
                    "nu_p": vec_str(&t.nu_p),
                    "mu_of_nu": vec_str(&t.mu_of_nu),
                    "weyl_length": t.weyl_rep.length,
                    "hn_vector": vec_str(&h),
                }));
            }
            let rep = Report::new(
                "theta",
                &[("spec", print_spec(&g)), ("mu", muv.to_string())],
                json!({"size": types.len(), "types": rows}),
                &print_spec(&g),
            );
            emit(rep, format)
        }
        Cmd::Dims { spec, mu, stratum } => {
            let g = parse_spec(&spec)?;
            let muv = parse_mu(&mu)?;
            let results = match stratum.as_str() {
                "cell" => {
                    json!({"cell_dimension": q_str(&strata::cell_dimension(&g, &muv)?)})
                }
                sel => {
                    let set = kottwitz::enumerate_b_g_mu(&g, &muv)?;
                    let nu = match sel {
                        "basic" => set.elements[set.basic.unwrap()].newton.clone(),
                        "ordinary" => set.elements[set.mu_ordinary.unwrap()].newton.clone(),
                        other => {
                            let v = other
                                .strip_prefix("nu=")
                                .ok_or_else(|| anyhow!("stratum must be basic|ordinary|cell|nu=..."))?;
                            parse_mu(v)?
                        }
                    };
                    let newton_dim = strata::newton_stratum_dimension(&g, &muv, &nu)?;
                    let hn = strata::hn_stratum_dimension(&g, &muv, &nu)?;
                    json!({
                        "nu": vec_str(&nu),
                        "newton_dimension": q_str(&newton_dim),
                        "hn_dimension": hn.as_ref().map(|r| q_str(&r.dimension)),
                        "hn_conjectural": hn.as_ref().and_then(|r| r.conjectural.as_ref().map(q_str)),
                        "conditional_on_nonemptiness": hn.as_ref().map(|r| r.conditional_on_nonemptiness),
                        "induction": hn.as_ref().and_then(|r| {
                            r.induction.as_ref().map(|(m, l)| json!({"levi": m.to_string(), "affine_rank": l}))
                        }),
                    })
                }
            };
            let rep = Report::new(
                "dims",
                &[("spec", print_spec(&g)), ("mu", muv.to_string()), ("stratum", stratum)],
                results,
                &print_spec(&g),
            );
            emit(rep, format)
        }
        Cmd::Dual { spec, mu } => {
            let g = parse_spec(&spec)?;
            let muv = parse_mu(&mu)?;
            let set = kottwitz::enumerate_b_g_mu(&g, &muv)?;
            let b = set.elements[set.basic.unwrap()].clone();
            let d = duality::dual_local_datum(&g, &muv, &b)?;
            let rep = Report::new(
                "dual",
                &[("spec", print_spec(&g)), ("mu", muv.to_string())],
                json!({
                    "nu_shift": vec_str(&d.nu_shift),
                    "kappa_shift": kappa_str(&d.kappa_shift),
                    "mu_inverse": vec_str(&d.mu_inverse),
                    "b_inverse_nu": vec_str(&d.b_inverse.newton),
                }),
                &print_spec(&g),
            );
            emit(rep, format)
        }
        Cmd::Verifydual { spec, mu } => {
            let g = parse_spec(&spec)?;
            let muv = parse_mu(&mu)?;
            let set = kottwitz::enumerate_b_g_mu(&g, &muv)?;
            let b = set.elements[set.basic.unwrap()].clone();
            let r = duality::verify_bijections(&g, &muv, &b)?;
            let rep = Report::new(
                "verifydual",
                &[("spec", print_spec(&g)), ("mu", muv.to_string())],
                json!({
                    "first_bijection": r.first,
                    "second_bijection": r.second,
                    "order_preserved": r.order_preserved,
                    "basic_to_basic": r.basic_to_basic,
                    "ordinary_to_maximal": r.ordinary_to_maximal,
                }),
                &print_spec(&g),
            );
            emit(rep, format)
        }
        Cmd::Smu { spec, mu, levi } => {
            let g = parse_spec(&spec)?;
            let muv = parse_mu(&mu)?;
            let m = parse_levi(&levi, g.datum.rank)?;
            let s = semiinfinite::branching_s_mu(&g, &muv, &m)?;
            if format == Format::Dot {
                let labels: Vec<String> = s.value.iter().map(vec_str).collect();
                let edges = closure_hasse(&g, &s);
                return Ok(poset_dot("smu", &labels, &edges));
            }
            let rep = Report::new(
                "smu",
                &[("spec", print_spec(&g)), ("mu", muv.to_string()), ("levi", m.to_string())],
                json!({
                    "lower": s.lower.iter().map(vec_str).collect::<Vec<_>>(),
                    "value": s.value.iter().map(vec_str).collect::<Vec<_>>(),
                    "upper": s.upper.iter().map(vec_str).collect::<Vec<_>>(),
                    "max_element": vec_str(&s.max_element),
                    "minuscule": semiinfinite::is_minuscule(&g, &muv),
                }),
                &print_spec(&g),
            );
            emit(rep, format)
        }
        Cmd::Closure { spec, mu, levi, lambda1, lambda2 } => {
            let g = parse_spec(&spec)?;
            let muv = parse_mu(&mu)?;
            let m = parse_levi(&levi, g.datum.rank)?;
            let l1 = parse_mu(&lambda1)?;
            let l2 = parse_mu(&lambda2)?;
            let s = semiinfinite::branching_s_mu(&g, &muv, &m)?;
            let (leq, closure) = semiinfinite::leq_p_and_closure(&g, &s, &l1, &l2);
            if format == Format::Dot {
                let labels: Vec<String> = s.value.iter().map(vec_str).collect();
                let edges = closure_hasse(&g, &s);
                return Ok(poset_dot("closure", &labels, &edges));
            }
            let rep = Report::new(
                "closure",
                &[
                    ("spec", print_spec(&g)),
                    ("mu", muv.to_string()),
                    ("levi", m.to_string()),
                    ("lambda1", l1.to_string()),
                    ("lambda2", l2.to_string()),
                ],
                json!({
                    "leq_p": leq,
                    "closure_of_lambda1": closure.iter().map(vec_str).collect::<Vec<_>>(),
                }),
                &print_spec(&g),
            );
            emit(rep, format)
        }
        Cmd::Hnfil { file } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let Instance::Filtered(x) = filspace::parse_instance(&text)? else {
                bail!("expected a filtered instance");
            };
            let hn = filspace::hn_filtration(&x)?;
            let rep = Report::new(
                "hnfil",
                &[("file", file.display().to_string())],
                json!({
                    "hn_vector": hn.vector.iter().map(q_str).collect::<Vec<_>>(),
                    "flag_dimensions": hn.flag.iter().map(|w| w.dim()).collect::<Vec<_>>(),
                    "steps": hn.steps.iter().map(|(d, r)| json!({"deg": q_str(d), "rank": r})).collect::<Vec<_>>(),
                    "total_deg": q_str(&hn.total_deg()),
                }),
                &text,
            );
            emit(rep, format)
        }
        Cmd::Cartan { file } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let Instance::Lattice(mut l) = filspace::parse_instance(&text)? else {
                bail!("expected a lattice instance");
            };
            if let Ok(p) = std::env::var("KLAB_PRECISION") {
                let p: i64 = p.parse().context("KLAB_PRECISION must be an integer")?;
                l = l.with_precision(p);
            }
            let cartan = filspace::cartan_invariant(&l)?;
            let hodge = filspace::hodge_type(&l)?;
            let (deg, hn) = filspace::deg_and_hn_lattice(&l)?;
            let bb = filspace::bb_type_check(&l)?;
            let stable = filspace::invariants_stable(&l)?;
            let rep = Report::new(
                "cartan",
                &[("file", file.display().to_string())],
                json!({
                    "cartan_invariant": cartan.exponents,
                    "hodge_type": hodge,
                    "deg": deg,
                    "hn_vector": hn.vector.iter().map(q_str).collect::<Vec<_>>(),
                    "bb_asserted_equal": bb.asserted_equal,
                    "precision_stable": stable,
                    "precision": l.precision,
                }),
                &text,
            );
            emit(rep, format)
        }
        Cmd::Sweep { kind, seed, limit } => {
            let records = sweep::run_sweep(&kind, seed, limit)?;
            let rep = Report::new(
                "sweep",
                &[("kind", kind.clone()), ("seed", seed.to_string())],
                json!({"records": records}),
                &format!("{kind}:{seed}"),
            );
            emit(rep, format)
        }
    }
}

fn closure_hasse(spec: &GroupSpec, s: &semiinfinite::SMuSet) -> Vec<(usize, usize)> {
    let n = s.value.len();
    let leq = |a: usize, b: usize| semiinfinite::leq_p(spec, &s.value[a], &s.value[b], &s.levi);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || !leq(i, j) {
                continue;
            }
            let covered = (0..n).any(|k| k != i && k != j && leq(i, k) && leq(k, j));
            if !covered {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn emit(report: Report, format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json => Ok(report.to_json()),
        Format::Text => Ok(report.to_text()),
        Format::Dot => bail!("dot output is only available for the poset commands (bgmu, smu, closure)"),
    }
}
