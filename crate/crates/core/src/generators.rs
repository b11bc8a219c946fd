//! Presentations of the standard example families, and the Witt algebra as
//! structure constants.

use crate::error::{Error, Result};
use crate::lie::LieSC;
use crate::linalg::{vector, Field, FieldElem};

fn field_line(field: Field) -> String {
    match field {
        Field::Rational => "field Q\n".into(),
        Field::Prime(p) => format!("field F {p}\n"),
    }
}

/// Two vertices joined by two parallel arrows, `J^2 = 0`.
pub fn kronecker(field: Field) -> String {
    format!(
        "# Kronecker algebra\n{}vertices 2\narrow a 0 1\narrow b 0 1\ntruncate 2\n",
        field_line(field)
    )
}

/// `k[x]/(x^n)`.
pub fn trunc_poly(field: Field, n: usize) -> Result<String> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "truncated polynomial degree {n} is below 2"
        )));
    }
    Ok(format!(
        "# k[x]/(x^{n})\n{}vertices 1\narrow x 0 0\ntruncate {n}\n",
        field_line(field)
    ))
}

/// Cyclic quiver `a_i: i -> i+1 mod e` modulo paths of length `L`.
pub fn nakayama(field: Field, e: usize, l: usize) -> Result<String> {
    if e == 0 {
        return Err(Error::InvalidArgument(
            "a Nakayama algebra needs at least one vertex".into(),
        ));
    }
    if l < 2 {
        return Err(Error::InvalidArgument(format!(
            "Loewy length {l} is below 2"
        )));
    }
    let mut text = format!(
        "# Nakayama algebra, {e}-cycle, Loewy length {l}\n{}",
        field_line(field)
    );
    text.push_str(&format!("vertices {e}\n"));
    for i in 0..e {
        text.push_str(&format!("arrow a{i} {i} {}\n", (i + 1) % e));
    }
    text.push_str(&format!("truncate {l}\n"));
    Ok(text)
}

/// One arrow per edge of a simple digraph, `J^2 = 0`. Vertices are
/// `0..=max endpoint`.
pub fn rad_square_zero(field: Field, edges: &[(usize, usize)]) -> Result<String> {
    for (k, &(s, t)) in edges.iter().enumerate() {
        if s == t {
            return Err(Error::InvalidArgument(format!("edge {s}-{t} is a loop")));
        }
        if edges[..k].contains(&(s, t)) {
            return Err(Error::InvalidArgument(format!("edge {s}-{t} is repeated")));
        }
    }
    let vertices = edges.iter().map(|&(s, t)| s.max(t) + 1).max().unwrap_or(1);
    let mut text = format!(
        "# radical square zero\n{}vertices {vertices}\n",
        field_line(field)
    );
    for (k, (s, t)) in edges.iter().enumerate() {
        text.push_str(&format!("arrow a{k} {s} {t}\n"));
    }
    text.push_str("truncate 2\n");
    Ok(text)
}

/// Parses an edge list such as `0-1,1-2,2-0`.
pub fn parse_edge_list(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(',')
        .map(|edge| {
            let (a, b) = edge
                .trim()
                .split_once('-')
                .ok_or_else(|| Error::InvalidArgument(format!("bad edge {edge:?}")))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad vertex {x:?}")))
            };
            Ok((parse(a)?, parse(b)?))
        })
        .collect()
}

/// The derivation `x^k -> k x^(k+i)` of `F_p[x]/(x^p)`, as a matrix on the
/// monomial basis, flattened row-major.
fn witt_derivation(field: Field, p: usize, i: i64) -> Vec<FieldElem> {
    let mut m = vec![field.zero(); p * p];
    for k in 0..p as i64 {
        let target = k + i;
        if k > 0 && (0..p as i64).contains(&target) {
            m[target as usize * p + k as usize] = field.from_i64(k);
        }
    }
    m
}

fn flat_commutator(a: &[FieldElem], b: &[FieldElem], n: usize, field: Field) -> Vec<FieldElem> {
    let mut out = vec![field.zero(); n * n];
    for r in 0..n {
        for c in 0..n {
            let mut s = field.zero();
            for k in 0..n {
                s = &s + &(&(&a[r * n + k] * &b[k * n + c]) - &(&b[r * n + k] * &a[k * n + c]));
            }
            out[r * n + c] = s;
        }
    }
    out
}

/// The Witt algebra `W = Der(F_p[x]/(x^p))` on the basis `f_{-1}, ..., f_{p-2}`
/// with `f_i: x -> x^(i+1)`. Structure constants are read off from commutators
/// of the derivation matrices.
pub fn witt_lie(p: u64) -> Result<LieSC> {
    let field = Field::prime(p)?;
    if p < 3 {
        return Err(Error::InvalidArgument(
            "the Witt algebra needs p >= 3".into(),
        ));
    }
    let n = p as usize;
    let derivations: Vec<Vec<FieldElem>> = (-1..=p as i64 - 2)
        .map(|i| witt_derivation(field, n, i))
        .collect();
    // f_{t-1} sends x to x^t, so the value of a combination on x reads off its coordinates
    let coords = |v: &[FieldElem]| -> Result<Vec<FieldElem>> {
        let c: Vec<FieldElem> = (0..n).map(|t| v[t * n + 1].clone()).collect();
        let mut back = vec![field.zero(); n * n];
        for (x, d) in c.iter().zip(&derivations) {
            vector::axpy(&mut back, x, d);
        }
        if back != v {
            return Err(Error::InvalidLieAlgebra(
                "commutator leaves the span of the f_i".into(),
            ));
        }
        Ok(c)
    };
    let mut gamma = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for j in 0..n {
            gamma[i][j] = coords(&flat_commutator(&derivations[i], &derivations[j], n, field))?;
        }
    }
    LieSC::new(field, n, gamma).map(|l| l.with_label(format!("W({p})")))
}
