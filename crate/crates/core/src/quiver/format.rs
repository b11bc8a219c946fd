//! Line-oriented presentation format:
//!
//! ```text
//! # optional header comments
//! field Q              (or: field F <p>)
//! vertices <n>
//! arrow <name> <src> <dst>
//! truncate <N>
//! rel <coeff> <path> [<coeff> <path>]...
//! ```
//!
//! Coefficients are signed integers or `num/den`; paths are arrow names joined
//! by `*` and composed left to right.

use num_bigint::BigInt;

use super::{Arrow, Path, PathVector, Presentation, Quiver};
use crate::error::{Error, Result};
use crate::linalg::{Field, FieldElem};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_usize(tok: &str, line: usize, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| parse_err(line, format!("expected {what}, found {tok:?}")))
}

fn parse_coeff(tok: &str, field: Field, line: usize) -> Result<FieldElem> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| parse_err(line, format!("bad coefficient {tok:?}")))?;
    if den.starts_with(['+', '-']) {
        return Err(parse_err(line, format!("bad coefficient {tok:?}")));
    }
    let den: BigInt = den
        .parse()
        .map_err(|_| parse_err(line, format!("bad coefficient {tok:?}")))?;
    field.ratio(&num, &den).map_err(|_| {
        parse_err(
            line,
            format!("coefficient {tok} has a vanishing denominator in {field}"),
        )
    })
}

struct RawRelation {
    line: usize,
    tokens: Vec<String>,
}

/// Parses a presentation file. Errors carry 1-based line numbers.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    parse_presentation_with_field(text, None)
}

/// Parses a presentation, optionally replacing the declared field. Coefficients
/// are re-read in the override field, so the override changes the algebra.
pub fn parse_presentation_with_field(
    text: &str,
    field_override: Option<Field>,
) -> Result<Presentation> {
    let mut header = Vec::new();
    let mut in_header = true;
    let mut field: Option<Field> = None;
    let mut vertices: Option<usize> = None;
    let mut truncation: Option<usize> = None;
    let mut arrows: Vec<(usize, Arrow)> = Vec::new();
    let mut raw_relations = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        if in_header && raw.starts_with('#') {
            header.push(raw.trim_end().to_string());
            continue;
        }
        in_header = false;
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let Some((&directive, args)) = tokens.split_first() else {
            continue;
        };
        match directive {
            "field" => {
                if field.is_some() {
                    return Err(parse_err(line, "duplicate field directive"));
                }
                field = Some(match args {
                    ["Q"] => Field::Rational,
                    ["F", p] => {
                        let p: u64 = p
                            .parse()
                            .map_err(|_| parse_err(line, format!("bad modulus {p:?}")))?;
                        Field::prime(p)?
                    }
                    _ => return Err(parse_err(line, "expected `field Q` or `field F <p>`")),
                });
            }
            "vertices" => {
                if vertices.is_some() {
                    return Err(parse_err(line, "duplicate vertices directive"));
                }
                let [n] = args else {
                    return Err(parse_err(line, "expected `vertices <n>`"));
                };
                vertices = Some(parse_usize(n, line, "a vertex count")?);
            }
            "arrow" => {
                let [name, s, t] = args else {
                    return Err(parse_err(line, "expected `arrow <name> <src> <dst>`"));
                };
                let s = parse_usize(s, line, "a source vertex")?;
                let t = parse_usize(t, line, "a target vertex")?;
                arrows.push((line, Arrow::new(*name, s, t)));
            }
            "truncate" => {
                if truncation.is_some() {
                    return Err(parse_err(line, "duplicate truncate directive"));
                }
                let [n] = args else {
                    return Err(parse_err(line, "expected `truncate <N>`"));
                };
                let n = parse_usize(n, line, "a truncation degree")?;
                if n < 2 {
                    return Err(parse_err(line, "truncation degree must be at least 2"));
                }
                truncation = Some(n);
            }
            "rel" => {
                if args.is_empty() || args.len() % 2 != 0 {
                    return Err(parse_err(line, "expected `rel <coeff> <path> ...` pairs"));
                }
                raw_relations.push(RawRelation {
                    line,
                    tokens: args.iter().map(|s| s.to_string()).collect(),
                });
            }
            other => return Err(parse_err(line, format!("unknown directive {other:?}"))),
        }
    }

    let end = last_line + 1;
    let declared = field.ok_or_else(|| parse_err(end, "missing field directive"))?;
    let field = field_override.unwrap_or(declared);
    let vertices = vertices.ok_or_else(|| parse_err(end, "missing vertices directive"))?;
    let truncation = truncation.ok_or_else(|| parse_err(end, "missing truncate directive"))?;

    for (line, a) in &arrows {
        if a.source >= vertices || a.target >= vertices {
            return Err(parse_err(
                *line,
                format!("arrow {} has an endpoint out of range", a.name),
            ));
        }
        if arrows.iter().filter(|(_, b)| b.name == a.name).count() > 1 {
            return Err(parse_err(*line, format!("duplicate arrow name {}", a.name)));
        }
    }
    let arrow_lines: Vec<usize> = arrows.iter().map(|(l, _)| *l).collect();
    let quiver = Quiver::new(vertices, arrows.into_iter().map(|(_, a)| a).collect())
        .map_err(|e| parse_err(arrow_lines.first().copied().unwrap_or(end), e.to_string()))?;

    let mut relations = Vec::new();
    for raw in raw_relations {
        let mut terms: Vec<(FieldElem, Path)> = Vec::new();
        for pair in raw.tokens.chunks(2) {
            let coeff = parse_coeff(&pair[0], field, raw.line)?;
            let mut idx = Vec::new();
            for name in pair[1].split('*') {
                let a = quiver
                    .arrow_index(name)
                    .ok_or_else(|| parse_err(raw.line, format!("unknown arrow {name:?}")))?;
                idx.push(a);
            }
            let path = Path::from_arrows(&quiver, idx).ok_or_else(|| Error::InvalidRelation {
                line: raw.line,
                message: format!("path {} is not composable", pair[1]),
            })?;
            if path.len() < 2 || path.len() >= truncation {
                return Err(Error::InvalidRelation {
                    line: raw.line,
                    message: format!(
                        "term {} has length {}, outside [2, {truncation})",
                        pair[1],
                        path.len()
                    ),
                });
            }
            match terms.iter_mut().find(|(_, p)| *p == path) {
                Some((c, _)) => *c = &*c + &coeff,
                None => terms.push((coeff, path)),
            }
        }
        terms.retain(|(c, _)| !c.is_zero());
        if !terms.is_empty() {
            relations.push(PathVector { terms });
        }
    }

    Ok(Presentation::new(field, quiver, relations, truncation)?.with_header(header))
}

pub(super) fn emit(p: &Presentation) -> String {
    let mut out = String::new();
    for h in &p.header {
        out.push_str(h);
        out.push('\n');
    }
    match p.field {
        Field::Rational => out.push_str("field Q\n"),
        Field::Prime(q) => out.push_str(&format!("field F {q}\n")),
    }
    out.push_str(&format!("vertices {}\n", p.quiver.vertices()));
    for a in p.quiver.arrows() {
        out.push_str(&format!("arrow {} {} {}\n", a.name, a.source, a.target));
    }
    out.push_str(&format!("truncate {}\n", p.truncation));
    for r in &p.relations {
        out.push_str("rel");
        for (c, path) in &r.terms {
            out.push_str(&format!(
                " {} {}",
                c.to_ratio_string(),
                path.name(&p.quiver)
            ));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const KRONECKER: &str = "field Q\nvertices 2\narrow a 0 1\narrow b 0 1\ntruncate 2\n";

    #[test]
    fn parses_kronecker() {
        let p = parse_presentation(KRONECKER).unwrap();
        assert_eq!(p.quiver.vertices(), 2);
        assert_eq!(p.quiver.arrows().len(), 2);
        assert!(p.relations.is_empty());
        assert_eq!(p.to_text(), KRONECKER);
    }

    #[test]
    fn rejects_short_relation_term() {
        let text = "field Q\nvertices 1\narrow x 0 0\ntruncate 4\nrel 1 x\n";
        assert!(matches!(
            parse_presentation(text),
            Err(Error::InvalidRelation { line: 5, .. })
        ));
    }

    #[test]
    fn rejects_long_relation_term() {
        let text = "field Q\nvertices 1\narrow x 0 0\ntruncate 3\nrel 1 x*x*x\n";
        assert!(matches!(
            parse_presentation(text),
            Err(Error::InvalidRelation { .. })
        ));
    }

    #[test]
    fn rejects_composite_modulus() {
        let text = "field F 6\nvertices 1\ntruncate 2\n";
        assert!(matches!(parse_presentation(text), Err(Error::BadField(_))));
    }

    #[test]
    fn rejects_non_composable_path() {
        let text = "field Q\nvertices 2\narrow a 0 1\narrow b 0 1\ntruncate 3\nrel 1 a*b\n";
        assert!(matches!(
            parse_presentation(text),
            Err(Error::InvalidRelation { line: 6, .. })
        ));
    }

    #[test]
    fn reports_line_numbers() {
        let text = "field Q\nvertices 2\narrow a 0 7\ntruncate 2\n";
        assert!(matches!(
            parse_presentation(text),
            Err(Error::Parse { line: 3, .. })
        ));
        let text = "field Q\nvertices 2\nbogus\n";
        assert!(matches!(
            parse_presentation(text),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_presentation("field Q\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn coefficients_and_header() {
        let text = "# two-cycle\nfield Q\nvertices 2\narrow a 0 1\narrow b 1 0\ntruncate 4\nrel 1/2 a*b -3 a*b*a*b\n";
        // the second term is too long for truncate 4
        assert!(parse_presentation(text).is_err());
        let text = "# two-cycle\nfield Q\nvertices 2\narrow a 0 1\narrow b 1 0\ntruncate 4\nrel 1/2 a*b\nrel -3 b*a\n";
        let p = parse_presentation(text).unwrap();
        assert_eq!(p.header, vec!["# two-cycle".to_string()]);
        assert_eq!(p.relations.len(), 2);
        assert_eq!(p.to_text(), text);
    }

    #[test]
    fn field_override_rereads_coefficients() {
        let text = "field Q\nvertices 1\narrow x 0 0\ntruncate 4\nrel 5 x*x\n";
        let p = parse_presentation_with_field(text, Some(Field::Prime(5))).unwrap();
        assert_eq!(p.field, Field::Prime(5));
        // 5 vanishes mod 5, so the relation disappears
        assert!(p.relations.is_empty());
    }
}
