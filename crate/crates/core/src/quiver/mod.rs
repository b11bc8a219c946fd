//! Bound quiver presentations `kQ/(<relations> + R^N)` and the finite-dimensional
//! algebras they define.
//!
//! Paths compose left to right: `p * q` means "`p` then `q`" and is defined when
//! `target(p) = source(q)`. The trivial path `e_i` satisfies `e_i * p = p` exactly
//! when `source(p) = i`. With this convention the corner `e_i A e_j` is spanned by
//! the basis paths from `i` to `j`.

mod algebra;
mod format;
mod symmetric;

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{Field, FieldElem};

pub use algebra::{Corner, FdAlgebra, QuiverArrow, QuiverClass, QuiverData, SparseVec, Truncation};
pub use format::{parse_presentation, parse_presentation_with_field};
pub use symmetric::SymmetryDecision;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn new(name: impl Into<String>, source: usize, target: usize) -> Arrow {
        Arrow {
            name: name.into(),
            source,
            target,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Finite quiver with vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: usize, arrows: Vec<Arrow>) -> Result<Quiver> {
        if vertices == 0 {
            return Err(Error::InvalidPresentation("quiver has no vertices".into()));
        }
        let mut names = HashSet::new();
        for a in &arrows {
            if !valid_identifier(&a.name) {
                return Err(Error::InvalidPresentation(format!(
                    "bad arrow name {:?}",
                    a.name
                )));
            }
            if !names.insert(a.name.as_str()) {
                return Err(Error::InvalidPresentation(format!(
                    "duplicate arrow name {}",
                    a.name
                )));
            }
            for v in [a.source, a.target] {
                if v >= vertices {
                    return Err(Error::VertexOutOfRange(v));
                }
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Connectedness of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.vertices).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        for a in &self.arrows {
            let (x, y) = (find(&mut parent, a.source), find(&mut parent, a.target));
            parent[x] = y;
        }
        let root = find(&mut parent, 0);
        (0..self.vertices).all(|v| find(&mut parent, v) == root)
    }
}

/// A path in a quiver, as arrow indices. Trivial paths carry their vertex in
/// `source == target` and have no arrows.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(vertex: usize) -> Path {
        Path {
            source: vertex,
            target: vertex,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(quiver: &Quiver, index: usize) -> Path {
        let a = &quiver.arrows[index];
        Path {
            source: a.source,
            target: a.target,
            arrows: vec![index],
        }
    }

    /// Builds a path from arrow indices, checking composability.
    pub fn from_arrows(quiver: &Quiver, arrows: Vec<usize>) -> Option<Path> {
        let first = *arrows.first()?;
        for w in arrows.windows(2) {
            if quiver.arrows[w[0]].target != quiver.arrows[w[1]].source {
                return None;
            }
        }
        let last = *arrows.last()?;
        Some(Path {
            source: quiver.arrows[first].source,
            target: quiver.arrows[last].target,
            arrows,
        })
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` then `other`, when the endpoints match.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    pub fn name(&self, quiver: &Quiver) -> String {
        if self.is_trivial() {
            return format!("e{}", self.source);
        }
        self.arrows
            .iter()
            .map(|&a| quiver.arrows[a].name.as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    fn names<'q>(&self, quiver: &'q Quiver) -> Vec<&'q str> {
        self.arrows
            .iter()
            .map(|&a| quiver.arrows[a].name.as_str())
            .collect()
    }

    /// Canonical order: shorter first, then lexicographic by arrow names, then by
    /// vertex (only relevant for trivial paths).
    pub fn canonical_cmp(&self, other: &Path, quiver: &Quiver) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.names(quiver).cmp(&other.names(quiver)))
            .then_with(|| self.source.cmp(&other.source))
    }
}

/// Formal linear combination of paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathVector {
    pub terms: Vec<(FieldElem, Path)>,
}

/// User-facing algebra description `kQ/(<relations> + R^N)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub field: Field,
    pub quiver: Quiver,
    pub relations: Vec<PathVector>,
    pub truncation: usize,
    /// Leading `#` comment lines, kept so files re-emit unchanged.
    pub header: Vec<String>,
}

impl Presentation {
    /// Validates admissibility: every relation term has length in `[2, N)`.
    pub fn new(
        field: Field,
        quiver: Quiver,
        relations: Vec<PathVector>,
        truncation: usize,
    ) -> Result<Presentation> {
        if truncation < 2 {
            return Err(Error::InvalidPresentation(format!(
                "truncation degree {truncation} is below 2"
            )));
        }
        for (k, r) in relations.iter().enumerate() {
            for (c, p) in &r.terms {
                if c.field() != field {
                    return Err(Error::FieldMismatch(field, c.field()));
                }
                if p.len() < 2 || p.len() >= truncation {
                    return Err(Error::InvalidRelation {
                        line: 0,
                        message: format!(
                            "relation {k}: term {} has length {} outside [2, {truncation})",
                            p.name(&quiver),
                            p.len()
                        ),
                    });
                }
            }
        }
        Ok(Presentation {
            field,
            quiver,
            relations,
            truncation,
            header: Vec::new(),
        })
    }

    pub fn with_header(mut self, header: Vec<String>) -> Presentation {
        self.header = header;
        self
    }

    /// Canonical text form, see [`parse_presentation`].
    pub fn to_text(&self) -> String {
        format::emit(self)
    }

    /// SHA-256 of the canonical text, hex encoded.
    pub fn hash(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(self.to_text().as_bytes()))
    }

    pub fn build(&self) -> Result<FdAlgebra> {
        FdAlgebra::build(self)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
