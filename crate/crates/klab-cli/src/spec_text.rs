//! Text format for group specs: a Cartan-type token, an optional isogeny
//! token, and an optional galois clause, e.g. "GL3", "C2 sc",
//! "A2 sc galois=flip,2". Parsing reports the offending column; printing
//! is canonical and round-trips.

use klab_core::galois::GaloisAction;
use klab_core::rootcore::{BasedRootDatum, CartanKind, Isogeny};
use klab_core::{GroupSpec, KlabError};

pub fn parse_spec(text: &str) -> Result<GroupSpec, KlabError> {
    let mut col = 1usize;
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    for tok in text.split_whitespace() {
        let pos = text[col - 1..].find(tok).map(|o| col + o).unwrap_or(col);
        tokens.push((pos, tok));
        col = pos + tok.len();
    }
    let err = |col: usize, msg: String| KlabError::Parse { line: 1, col, msg };
    let Some(&(tcol, type_tok)) = tokens.first() else {
        return Err(err(1, "empty group spec".into()));
    };

    let (kind, mut isogeny) = parse_type(type_tok).map_err(|m| err(tcol, m))?;
    let mut galois_clause: Option<(String, usize)> = None;
    for &(pcol, tok) in &tokens[1..] {
        match tok {
            "sc" => isogeny = Some(Isogeny::SimplyConnected),
            "ad" => isogeny = Some(Isogeny::Adjoint),
            "gl" => isogeny = Some(Isogeny::GlStyle),
            t if t.starts_with("galois=") => {
                galois_clause = Some((t["galois=".len()..].to_string(), pcol));
            }
            other => return Err(err(pcol, format!("unknown token {other}"))),
        }
    }
    let isogeny = isogeny.unwrap_or(Isogeny::SimplyConnected);
    let datum = BasedRootDatum::build(kind, isogeny)?;
    let rank = datum.rank;
    let dim = datum.dim;
    let galois = match &galois_clause {
        None => GaloisAction::identity(rank, dim),
        Some((clause, gcol)) => {
            if clause == "id" {
                GaloisAction::identity(rank, dim)
            } else if let Some(rest) = clause.strip_prefix("flip,") {
                let d: usize = rest
                    .parse()
                    .map_err(|_| err(*gcol, format!("bad galois order {rest}")))?;
                if d % 2 != 0 {
                    return Err(err(*gcol, "the flip action needs an even order".into()));
                }
                if !matches!(kind, CartanKind::A { .. }) {
                    return Err(err(*gcol, "the flip action is defined for type A".into()));
                }
                let mut a = GaloisAction::unitary_flip(rank, dim);
                a.order = d;
                a
            } else {
                return Err(err(*gcol, format!("unknown galois clause {clause}")));
            }
        }
    };
    GroupSpec::new(datum, galois, canonical_label(kind, isogeny, &galois_clause))
}

fn parse_type(tok: &str) -> Result<(CartanKind, Option<Isogeny>), String> {
    if let Some(n) = tok.strip_prefix("GL") {
        let n: usize = n.parse().map_err(|_| format!("bad GL rank in {tok}"))?;
        if n < 1 {
            return Err("GL rank must be at least 1".into());
        }
        return Ok((CartanKind::A { n }, Some(Isogeny::GlStyle)));
    }
    let (letter, rest) = tok.split_at(1);
    let n: usize = rest.parse().map_err(|_| format!("unknown type {tok}"))?;
    let kind = match letter {
        "A" => {
            if n < 1 {
                return Err(format!("type {tok} is empty"));
            }
            CartanKind::A { n: n + 1 }
        }
        "B" => {
            if n < 2 {
                return Err(format!("type {tok} is not supported (needs rank >= 2)"));
            }
            CartanKind::B(n)
        }
        "C" => {
            if n < 2 {
                return Err(format!("type {tok} is not supported (needs rank >= 2)"));
            }
            CartanKind::C(n)
        }
        "D" => {
            if n < 3 {
                return Err(format!("type {tok} is not supported (needs rank >= 3)"));
            }
            CartanKind::D(n)
        }
        "G" => {
            if n != 2 {
                return Err(format!("unknown type {tok}"));
            }
            CartanKind::G2
        }
        _ => return Err(format!("unknown type {tok}")),
    };
    Ok((kind, None))
}

fn canonical_label(
    kind: CartanKind,
    isogeny: Isogeny,
    galois: &Option<(String, usize)>,
) -> String {
    let mut s = match (kind, isogeny) {
        (CartanKind::A { n }, Isogeny::GlStyle) => format!("GL{n}"),
        (CartanKind::A { n }, iso) => format!("A{} {iso}", n - 1),
        (CartanKind::B(n), iso) => format!("B{n} {iso}"),
        (CartanKind::C(n), iso) => format!("C{n} {iso}"),
        (CartanKind::D(n), iso) => format!("D{n} {iso}"),
        (CartanKind::G2, iso) => format!("G2 {iso}"),
    };
    if let Some((clause, _)) = galois {
        if clause != "id" {
            s.push_str(&format!(" galois={clause}"));
        }
    }
    s
}

/// Canonical printing: the stored label.
pub fn print_spec(spec: &GroupSpec) -> String {
    spec.label().to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let g = parse_spec("GL2").unwrap();
        assert_eq!(g.datum.positive_roots.len(), 1);
        let g = parse_spec("A2 sc galois=flip,2").unwrap();
        assert_eq!(g.galois.order, 2);
        assert_eq!(g.relative_simple_roots().len(), 1);
        assert!(parse_spec("A0").is_err());
        assert!(parse_spec("Z9").is_err());
        let g = parse_spec("C2 sc").unwrap();
        assert_eq!(g.datum.positive_roots.len(), 4);
    }

    #[test]
    fn round_trip() {
        for text in ["GL2", "GL4", "A2 sc", "A2 sc galois=flip,2", "C2 sc", "B2 ad", "G2 sc"] {
            let g = parse_spec(text).unwrap();
            assert_eq!(print_spec(&g), text);
            let g2 = parse_spec(&print_spec(&g)).unwrap();
            assert_eq!(print_spec(&g2), text);
        }
    }

    #[test]
    fn error_positions() {
        match parse_spec("GL2 bogus") {
            Err(KlabError::Parse { col, .. }) => assert_eq!(col, 5),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
