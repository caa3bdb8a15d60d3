//! Line-oriented instance files for the sweep runner: field parameters,
//! dimension, and either a lattice matrix of Laurent polynomials or a
//! filtered-space description by jump lines. Printing is canonical, so
//! parse-print round trips are bit-exact.

use num::{BigInt, BigRational, One};

use super::gf::{FieldCtx, Fld, KBase, KExt};
use super::laurent::LaurentPoly;
use super::{FilteredSpace, LatticePoint, DEFAULT_PRECISION};
use crate::error::{KlabError, Result};
use crate::qlin::Q;

#[derive(Debug, Clone)]
pub enum Instance {
    Lattice(LatticePoint),
    Filtered(FilteredSpace),
}

fn perr(line: usize, msg: impl Into<String>) -> KlabError {
    KlabError::Parse { line, col: 1, msg: msg.into() }
}

fn parse_header(line: &str, lineno: usize) -> Result<(String, Vec<(String, String)>)> {
    let mut parts = line.split_whitespace();
    let kind = parts.next().ok_or_else(|| perr(lineno, "empty header"))?.to_string();
    let mut kv = Vec::new();
    for p in parts {
        let (k, v) = p
            .split_once('=')
            .ok_or_else(|| perr(lineno, format!("expected key=value, got {p}")))?;
        kv.push((k.to_string(), v.to_string()));
    }
    Ok((kind, kv))
}

fn get_usize(kv: &[(String, String)], key: &str, lineno: usize) -> Result<usize> {
    kv.iter()
        .find(|(k, _)| k == key)
        .ok_or_else(|| perr(lineno, format!("missing {key}=")))?
        .1
        .parse()
        .map_err(|_| perr(lineno, format!("bad value for {key}")))
}

fn parse_kbase(ctx: &FieldCtx, s: &str, lineno: usize) -> Result<KBase> {
    let parts: Vec<&str> = if ctx.e == 1 { vec![s] } else { s.split('.').collect() };
    if parts.len() != ctx.e {
        return Err(perr(lineno, format!("base-field element needs {} coordinates", ctx.e)));
    }
    let mut out = Vec::with_capacity(ctx.e);
    for p in parts {
        let v: u64 = p.parse().map_err(|_| perr(lineno, format!("bad field coordinate {p}")))?;
        if v >= ctx.p {
            return Err(perr(lineno, format!("coordinate {v} out of range mod {}", ctx.p)));
        }
        out.push(v);
    }
    Ok(out)
}

fn parse_kext(ctx: &FieldCtx, s: &str, lineno: usize) -> Result<KExt> {
    let parts: Vec<&str> = if ctx.m == 1 { vec![s] } else { s.split('|').collect() };
    if parts.len() != ctx.m {
        return Err(perr(lineno, format!("extension element needs {} coordinates", ctx.m)));
    }
    parts.into_iter().map(|p| parse_kbase(ctx, p, lineno)).collect()
}

fn print_kbase(ctx: &FieldCtx, a: &KBase) -> String {
    if ctx.e == 1 {
        a[0].to_string()
    } else {
        a.iter().map(u64::to_string).collect::<Vec<_>>().join(".")
    }
}

fn print_kext(ctx: &FieldCtx, a: &KExt) -> String {
    if ctx.m == 1 {
        print_kbase(ctx, &a[0])
    } else {
        a.iter().map(|b| print_kbase(ctx, b)).collect::<Vec<_>>().join("|")
    }
}

fn parse_laurent(ctx: &FieldCtx, s: &str, lineno: usize) -> Result<LaurentPoly> {
    let s = s.trim();
    if s == "0" {
        return Ok(LaurentPoly::zero());
    }
    let mut acc = LaurentPoly::zero();
    for term in s.split('+') {
        let term = term.trim();
        let (coeff_str, exp) = if let Some((c, e)) = term.split_once("*t^") {
            (c, e.parse::<i64>().map_err(|_| perr(lineno, format!("bad exponent in {term}")))?)
        } else if let Some(e) = term.strip_prefix("t^") {
            ("__one", e.parse::<i64>().map_err(|_| perr(lineno, format!("bad exponent in {term}")))?)
        } else if term == "t" {
            ("__one", 1)
        } else {
            (term, 0)
        };
        let c = if coeff_str == "__one" {
            ctx.kext.one()
        } else {
            parse_kext(ctx, coeff_str, lineno)?
        };
        acc = acc.add(ctx, &LaurentPoly::monomial(ctx, c, exp));
    }
    Ok(acc)
}

fn print_laurent(ctx: &FieldCtx, p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms = Vec::new();
    for (i, c) in p.coeffs.iter().enumerate() {
        if ctx.kext.is_zero(c) {
            continue;
        }
        terms.push(format!("{}*t^{}", print_kext(ctx, c), p.lo + i as i64));
    }
    terms.join("+")
}

fn parse_q(s: &str, lineno: usize) -> Result<Q> {
    let parse_int =
        |t: &str| -> Result<BigInt> { t.parse().map_err(|_| perr(lineno, format!("bad rational {s}"))) };
    if let Some((n, d)) = s.split_once('/') {
        Ok(BigRational::new(parse_int(n)?, parse_int(d)?))
    } else {
        Ok(BigRational::from_integer(parse_int(s)?))
    }
}

fn print_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse a single instance block.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| perr(1, "empty instance"))?;
    let (kind, kv) = parse_header(header, hline)?;
    let p = get_usize(&kv, "p", hline)? as u64;
    let e = get_usize(&kv, "e", hline)?;
    let m = get_usize(&kv, "m", hline)?;
    let n = get_usize(&kv, "n", hline)?;
    let ctx = FieldCtx::new(p, e, m)?;
    match kind.as_str() {
        "lattice" => {
            let prec = get_usize(&kv, "prec", hline).unwrap_or(DEFAULT_PRECISION as usize) as i64;
            let mut g = vec![vec![LaurentPoly::zero(); n]; n];
            let mut seen = vec![vec![false; n]; n];
            for (lineno, line) in lines {
                let rest = line
                    .strip_prefix("g ")
                    .ok_or_else(|| perr(lineno, "expected a g i j = ... line"))?;
                let (idx, val) = rest
                    .split_once('=')
                    .ok_or_else(|| perr(lineno, "expected ="))?;
                let mut it = idx.split_whitespace();
                let i: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| perr(lineno, "bad row index"))?;
                let j: usize = it
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| perr(lineno, "bad column index"))?;
                if i >= n || j >= n {
                    return Err(perr(lineno, "matrix index out of range"));
                }
                g[i][j] = parse_laurent(&ctx, val, lineno)?;
                seen[i][j] = true;
            }
            if seen.iter().flatten().any(|&s| !s) {
                return Err(perr(hline, "missing matrix entries"));
            }
            Ok(Instance::Lattice(LatticePoint::new(ctx, n, prec, g)?))
        }
        "filtered" => {
            let mut filtration: Vec<(Q, Vec<Vec<KExt>>)> = Vec::new();
            for (lineno, line) in lines {
                let rest = line
                    .strip_prefix("jump ")
                    .ok_or_else(|| perr(lineno, "expected a jump line"))?;
                let (jval, vecs) = rest
                    .split_once('=')
                    .ok_or_else(|| perr(lineno, "expected ="))?;
                let jump = parse_q(jval.trim(), lineno)?;
                let mut rows = Vec::new();
                for tok in vecs.split_whitespace() {
                    let entries: Vec<&str> = tok.split(',').collect();
                    if entries.len() != n {
                        return Err(perr(lineno, format!("vector needs {n} entries")));
                    }
                    let row: Vec<KExt> = entries
                        .into_iter()
                        .map(|t| parse_kext(&ctx, t, lineno))
                        .collect::<Result<_>>()?;
                    rows.push(row);
                }
                filtration.push((jump, rows));
            }
            Ok(Instance::Filtered(FilteredSpace::new(ctx, n, filtration)?))
        }
        other => Err(perr(hline, format!("unknown instance kind {other}"))),
    }
}

/// Canonical printer; parse(print(x)) reproduces x bit-exactly.
pub fn print_instance(inst: &Instance) -> String {
    let mut out = String::new();
    match inst {
        Instance::Lattice(l) => {
            out.push_str(&format!(
                "lattice p={} e={} m={} n={} prec={}\n",
                l.ctx.p, l.ctx.e, l.ctx.m, l.n, l.precision
            ));
            for i in 0..l.n {
                for j in 0..l.n {
                    out.push_str(&format!("g {i} {j} = {}\n", print_laurent(&l.ctx, &l.g[i][j])));
                }
            }
        }
        Instance::Filtered(x) => {
            out.push_str(&format!(
                "filtered p={} e={} m={} n={}\n",
                x.ctx.p, x.ctx.e, x.ctx.m, x.n
            ));
            for (jump, rows) in &x.filtration {
                let vecs: Vec<String> = rows
                    .iter()
                    .map(|row| {
                        row.iter().map(|c| print_kext(&x.ctx, c)).collect::<Vec<_>>().join(",")
                    })
                    .collect();
                out.push_str(&format!("jump {} = {}\n", print_q(jump), vecs.join(" ")));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_round_trip() {
        let text = "lattice p=2 e=1 m=1 n=2 prec=8\n\
                    g 0 0 = 1*t^-1\n\
                    g 0 1 = 1*t^0+1*t^1\n\
                    g 1 0 = 0\n\
                    g 1 1 = 1*t^0\n";
        let inst = parse_instance(text).unwrap();
        let printed = print_instance(&inst);
        assert_eq!(printed, text);
        let reparsed = parse_instance(&printed).unwrap();
        assert_eq!(print_instance(&reparsed), printed);
    }

    #[test]
    fn filtered_round_trip() {
        let text = "filtered p=2 e=1 m=1 n=2\n\
                    jump 0 = 1,0 0,1\n\
                    jump 1 = 1,1\n";
        let inst = parse_instance(text).unwrap();
        let printed = print_instance(&inst);
        assert_eq!(printed, text);
    }

    #[test]
    fn rational_jump_and_extension_field() {
        let text = "filtered p=3 e=1 m=2 n=1\n\
                    jump -1/2 = 1|2\n";
        let inst = parse_instance(text).unwrap();
        let printed = print_instance(&inst);
        assert_eq!(printed, text);
    }

    #[test]
    fn parse_errors_have_positions() {
        let bad = "lattice p=2 e=1 m=1 n=2 prec=8\ngarbage\n";
        match parse_instance(bad) {
            Err(KlabError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
