use std::collections::HashMap;

use serde::Serialize;

use super::{Path, Presentation};
use crate::error::{Error, Result};
use crate::linalg::{quotient_basis, vector, Field, FieldElem, Matrix, SparseSystem, Subspace};

/// Sparse coordinate vector: `(basis index, nonzero coefficient)` pairs.
pub type SparseVec = Vec<(usize, FieldElem)>;

/// A basis element of an algebra built from a quiver: a path, recorded with its
/// endpoints (local vertex numbering) and length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisLabel {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverArrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
    /// Index of the arrow in the algebra basis.
    pub basis: usize,
}

/// Presentation data kept alongside an algebra built from a quiver: enough to
/// solve for derivations by assigning values to arrows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuiverData {
    pub arrows: Vec<QuiverArrow>,
    /// Relations split into endpoint-homogeneous components; each term is a
    /// coefficient and a word of arrow indices.
    pub relations: Vec<Vec<(FieldElem, Vec<usize>)>>,
    pub truncation: usize,
    /// Arrow word of each basis element; empty for the idempotents.
    pub paths: Vec<Vec<usize>>,
}

impl QuiverData {
    /// All composable arrow words of exactly `len` arrows.
    pub fn words_of_length(&self, len: usize) -> Vec<Vec<usize>> {
        if len == 0 {
            return Vec::new();
        }
        let mut words: Vec<Vec<usize>> = (0..self.arrows.len()).map(|a| vec![a]).collect();
        for _ in 1..len {
            let mut next = Vec::new();
            for w in &words {
                let end = self.arrows[*w.last().unwrap()].target;
                for (b, arrow) in self.arrows.iter().enumerate() {
                    if arrow.source == end {
                        let mut x = w.clone();
                        x.push(b);
                        next.push(x);
                    }
                }
            }
            words = next;
        }
        words
    }
}

/// Ext-quiver shape read off from the `Ext^1` matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuiverClass {
    pub has_loops: bool,
    pub max_parallel: usize,
    pub is_simple_digraph: bool,
}

/// Finite-dimensional split basic algebra given by structure constants on a
/// basis of paths, with its vertex idempotents and radical filtration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdAlgebra {
    field: Field,
    labels: Vec<BasisLabel>,
    /// `products[u * dim + v]` holds the coordinates of `b_u * b_v`.
    products: Vec<SparseVec>,
    idempotents: Vec<usize>,
    /// `radical_powers[m] = J^m` for `m = 0..=loewy_length`.
    radical_powers: Vec<Subspace>,
    quiver: Option<QuiverData>,
    ideal: Option<Subspace>,
}

/// `A / J^m` together with the quotient map.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub algebra: FdAlgebra,
    /// `dim(A/J^m) x dim(A)` matrix of the surjection.
    pub map: Matrix,
    /// For each basis element of the quotient, the basis index in `A` it comes from.
    pub kept: Vec<usize>,
}

/// Corner algebra `eAe` for `e` a sum of vertex idempotents.
#[derive(Debug, Clone)]
pub struct Corner {
    pub algebra: FdAlgebra,
    /// Basis index in `A` of each corner basis element.
    pub inclusion: Vec<usize>,
    /// Vertices of `A` (local numbering) spanning `e`.
    pub vertices: Vec<usize>,
}

impl FdAlgebra {
    /// Assembles and validates an algebra from structure constants.
    ///
    /// Checks associativity on every basis triple, that the listed idempotents
    /// are orthogonal and sum to one, that products respect path endpoints, and
    /// that the span of the non-trivial paths is a nilpotent ideal.
    pub fn from_structure(
        field: Field,
        labels: Vec<BasisLabel>,
        products: Vec<SparseVec>,
        idempotents: Vec<usize>,
        quiver: Option<QuiverData>,
    ) -> Result<FdAlgebra> {
        let dim = labels.len();
        if products.len() != dim * dim {
            return Err(Error::InvalidAlgebra(
                "structure constant table has the wrong size".into(),
            ));
        }
        for p in &products {
            for (w, c) in p {
                if *w >= dim || c.field() != field || c.is_zero() {
                    return Err(Error::InvalidAlgebra("malformed structure constant".into()));
                }
            }
        }
        let radical = Subspace::span(
            field,
            dim,
            labels
                .iter()
                .enumerate()
                .filter(|(_, l)| l.length > 0)
                .map(|(i, _)| vector::unit(field, dim, i)),
        );
        let mut alg = FdAlgebra {
            field,
            labels,
            products,
            idempotents,
            radical_powers: vec![Subspace::full(field, dim), radical],
            quiver,
            ideal: None,
        };
        alg.validate()?;
        alg.compute_radical_powers()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        let dim = self.dim();
        let field = self.field;
        for u in 0..dim {
            for v in 0..dim {
                let uv = self.product(u, v);
                for w in 0..dim {
                    let vw = self.product(v, w);
                    let mut left = vector::zeros(field, dim);
                    for (x, c) in uv {
                        for (y, d) in self.product(*x, w) {
                            left[*y] = &left[*y] + &(c * d);
                        }
                    }
                    let mut right = vector::zeros(field, dim);
                    for (x, c) in vw {
                        for (y, d) in self.product(u, *x) {
                            right[*y] = &right[*y] + &(c * d);
                        }
                    }
                    if left != right {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[u].name, self.labels[v].name, self.labels[w].name
                        )));
                    }
                }
            }
        }
        let one = self.one();
        for u in 0..dim {
            let b = vector::unit(field, dim, u);
            if self.mul(&one, &b) != b || self.mul(&b, &one) != b {
                return Err(Error::InvalidAlgebra(
                    "vertex idempotents do not sum to one".into(),
                ));
            }
        }
        for (i, &ei) in self.idempotents.iter().enumerate() {
            for (j, &ej) in self.idempotents.iter().enumerate() {
                let expected: SparseVec = if i == j {
                    vec![(ei, field.one())]
                } else {
                    vec![]
                };
                if *self.product(ei, ej) != expected {
                    return Err(Error::InvalidAlgebra(
                        "vertex idempotents are not orthogonal".into(),
                    ));
                }
            }
        }
        for u in 0..dim {
            for v in 0..dim {
                let (lu, lv) = (&self.labels[u], &self.labels[v]);
                let prod = self.product(u, v);
                if lu.target != lv.source {
                    if !prod.is_empty() {
                        return Err(Error::InvalidAlgebra(format!(
                            "{} * {} should vanish",
                            lu.name, lv.name
                        )));
                    }
                    continue;
                }
                for (w, _) in prod {
                    let lw = &self.labels[*w];
                    if lw.source != lu.source || lw.target != lv.target {
                        return Err(Error::InvalidAlgebra(format!(
                            "{} * {} leaves the corner",
                            lu.name, lv.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_radical_powers(&mut self) -> Result<()> {
        let dim = self.dim();
        let radical = self.radical_powers[1].clone();
        for u in 0..dim {
            for j in radical.basis() {
                let b = vector::unit(self.field, dim, u);
                if !radical.contains(&self.mul(&b, j)) || !radical.contains(&self.mul(j, &b)) {
                    return Err(Error::InvalidAlgebra("radical span is not an ideal".into()));
                }
            }
        }
        while !self.radical_powers.last().unwrap().is_zero() {
            let last = self.radical_powers.last().unwrap();
            let next = Subspace::span(
                self.field,
                dim,
                last.basis()
                    .iter()
                    .flat_map(|x| radical.basis().iter().map(move |y| (x, y)))
                    .map(|(x, y)| self.mul(x, y)),
            );
            if next == *last {
                return Err(Error::InvalidAlgebra("radical is not nilpotent".into()));
            }
            self.radical_powers.push(next);
        }
        Ok(())
    }

    /// Builds `kQ/(<relations> + R^N)`.
    ///
    /// Paths of length `< N` are enumerated in canonical order; the ideal is the
    /// closure of the relations under multiplication by arrows (products of
    /// length `>= N` vanish). The basis consists of the paths that are not
    /// leading terms of the ideal, so shorter and lexicographically smaller paths
    /// are preferred.
    pub fn build(p: &Presentation) -> Result<FdAlgebra> {
        let q = &p.quiver;
        let field = p.field;
        let n = p.truncation;

        let mut paths: Vec<Path> = (0..q.vertices()).map(Path::trivial).collect();
        let mut frontier = paths.clone();
        for _ in 1..n {
            let mut next = Vec::new();
            for path in &frontier {
                for (ai, a) in q.arrows().iter().enumerate() {
                    if a.source == path.target {
                        next.push(path.compose(&Path::arrow(q, ai)).unwrap());
                    }
                }
            }
            paths.extend(next.iter().cloned());
            frontier = next;
        }
        paths.sort_by(|a, b| a.canonical_cmp(b, q));
        let total = paths.len();
        let index: HashMap<(usize, Vec<usize>), usize> = paths
            .iter()
            .enumerate()
            .map(|(i, p)| ((p.source, p.arrows.clone()), i))
            .collect();
        // columns run in reverse canonical order so that echelon pivots are the
        // largest paths, i.e. the leading terms of the ideal
        let col = |i: usize| total - 1 - i;

        let mut ideal = Subspace::zero(field, total);
        let mut work = Vec::new();
        let mut components: Vec<Vec<(FieldElem, Vec<usize>)>> = Vec::new();
        for rel in &p.relations {
            let mut groups: Vec<((usize, usize), Vec<(FieldElem, Vec<usize>)>)> = Vec::new();
            for (c, path) in &rel.terms {
                let key = (path.source, path.target);
                match groups.iter_mut().find(|(k, _)| *k == key) {
                    Some((_, g)) => g.push((c.clone(), path.arrows.clone())),
                    None => groups.push((key, vec![(c.clone(), path.arrows.clone())])),
                }
            }
            for ((s, _), g) in groups {
                let mut v = vector::zeros(field, total);
                for (c, word) in &g {
                    let i = index[&(s, word.clone())];
                    v[col(i)] = &v[col(i)] + c;
                }
                if ideal.insert(v.clone()) {
                    work.push(v);
                }
                components.push(g);
            }
        }
        while let Some(v) = work.pop() {
            for (ai, a) in q.arrows().iter().enumerate() {
                for left in [true, false] {
                    let mut w = vector::zeros(field, total);
                    for (c, x) in v.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        let path = &paths[col(c)];
                        if path.len() + 1 >= n {
                            continue;
                        }
                        let (ok, word) = if left {
                            let mut word = vec![ai];
                            word.extend(&path.arrows);
                            (a.target == path.source, word)
                        } else {
                            let mut word = path.arrows.clone();
                            word.push(ai);
                            (path.target == a.source, word)
                        };
                        if !ok {
                            continue;
                        }
                        let src = if left { a.source } else { path.source };
                        let j = col(index[&(src, word)]);
                        w[j] = &w[j] + x;
                    }
                    if !vector::is_zero(&w) && ideal.insert(w.clone()) {
                        work.push(w);
                    }
                }
            }
        }

        let is_leading: Vec<bool> = {
            let mut flags = vec![false; total];
            for &pc in ideal.pivots() {
                flags[col(pc)] = true;
            }
            flags
        };
        let basis_paths: Vec<usize> = (0..total).filter(|&i| !is_leading[i]).collect();
        let mut basis_index = vec![usize::MAX; total];
        for (b, &i) in basis_paths.iter().enumerate() {
            basis_index[i] = b;
        }
        let normal_form = |i: usize| -> SparseVec {
            if !is_leading[i] {
                return vec![(basis_index[i], field.one())];
            }
            let r = ideal.reduce(&vector::unit(field, total, col(i)));
            let mut out: SparseVec = r
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(c, x)| (basis_index[col(c)], x))
                .collect();
            out.sort_by_key(|(b, _)| *b);
            out
        };

        let dim = basis_paths.len();
        let mut products = vec![Vec::new(); dim * dim];
        for (u, &pu) in basis_paths.iter().enumerate() {
            for (v, &pv) in basis_paths.iter().enumerate() {
                let (a, b) = (&paths[pu], &paths[pv]);
                if a.target != b.source || a.len() + b.len() >= n {
                    continue;
                }
                let prod = a.compose(b).unwrap();
                products[u * dim + v] = normal_form(index[&(prod.source, prod.arrows)]);
            }
        }
        let labels: Vec<BasisLabel> = basis_paths
            .iter()
            .map(|&i| {
                let path = &paths[i];
                BasisLabel {
                    name: path.name(q),
                    source: path.source,
                    target: path.target,
                    length: path.len(),
                }
            })
            .collect();
        let idempotents: Vec<usize> = (0..q.vertices())
            .map(|v| basis_index[index[&(v, Vec::new())]])
            .collect();
        let arrows = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| QuiverArrow {
                name: a.name.clone(),
                source: a.source,
                target: a.target,
                basis: basis_index[index[&(a.source, vec![ai])]],
            })
            .collect();
        let quiver = QuiverData {
            arrows,
            relations: components,
            truncation: n,
            paths: basis_paths
                .iter()
                .map(|&i| paths[i].arrows.clone())
                .collect(),
        };
        let mut alg =
            FdAlgebra::from_structure(field, labels, products, idempotents, Some(quiver))?;
        alg.ideal = Some(ideal);
        Ok(alg)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[BasisLabel] {
        &self.labels
    }

    /// Basis indices of the vertex idempotents, indexed by vertex.
    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// Number of simple modules.
    pub fn num_vertices(&self) -> usize {
        self.idempotents.len()
    }

    pub fn loewy_length(&self) -> usize {
        self.radical_powers.len() - 1
    }

    /// `J^m`; zero for `m >= loewy_length`.
    pub fn radical_power(&self, m: usize) -> Subspace {
        self.radical_powers
            .get(m)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.field, self.dim()))
    }

    pub fn quiver_data(&self) -> Option<&QuiverData> {
        self.quiver.as_ref()
    }

    /// Span of the relation ideal inside the truncated path space (built algebras only).
    pub fn ideal(&self) -> Option<&Subspace> {
        self.ideal.as_ref()
    }

    pub fn product(&self, u: usize, v: usize) -> &SparseVec {
        &self.products[u * self.dim() + v]
    }

    pub fn basis_vector(&self, u: usize) -> Vec<FieldElem> {
        vector::unit(self.field, self.dim(), u)
    }

    pub fn one(&self) -> Vec<FieldElem> {
        let mut one = vector::zeros(self.field, self.dim());
        for &e in &self.idempotents {
            one[e] = self.field.one();
        }
        one
    }

    pub fn mul(&self, x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
        let dim = self.dim();
        let mut out = vector::zeros(self.field, dim);
        for (u, xu) in x.iter().enumerate() {
            if xu.is_zero() {
                continue;
            }
            for (v, yv) in y.iter().enumerate() {
                if yv.is_zero() {
                    continue;
                }
                let c = xu * yv;
                for (w, s) in self.product(u, v) {
                    out[*w] = &out[*w] + &(&c * s);
                }
            }
        }
        out
    }

    pub fn commutator(&self, x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
        vector::sub(&self.mul(x, y), &self.mul(y, x))
    }

    /// Matrix of the inner derivation `[c, -]`.
    pub fn ad(&self, c: &[FieldElem]) -> Matrix {
        let columns: Vec<_> = (0..self.dim())
            .map(|u| self.commutator(c, &self.basis_vector(u)))
            .collect();
        Matrix::from_columns(self.field, self.dim(), &columns).expect("square")
    }

    /// `e_i x e_j`.
    pub fn sandwich(&self, i: usize, x: &[FieldElem], j: usize) -> Vec<FieldElem> {
        let ei = self.basis_vector(self.idempotents[i]);
        let ej = self.basis_vector(self.idempotents[j]);
        self.mul(&self.mul(&ei, x), &ej)
    }

    /// `e_i S e_j` for a subspace `S`.
    pub fn sandwich_space(&self, i: usize, s: &Subspace, j: usize) -> Subspace {
        Subspace::span(
            self.field,
            self.dim(),
            s.basis().iter().map(|x| self.sandwich(i, x, j)),
        )
    }

    /// Entry `[j][i] = dim e_i (J/J^2) e_j = dim Ext^1(S_i, S_j)`, the number of
    /// arrows `i -> j`.
    pub fn ext1_matrix(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let (j1, j2) = (self.radical_power(1), self.radical_power(2));
        let mut m = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                m[j][i] =
                    self.sandwich_space(i, &j1, j).dim() - self.sandwich_space(i, &j2, j).dim();
            }
        }
        m
    }

    /// Number of arrows `i -> j` in the Ext-quiver.
    pub fn ext1_dim(&self, i: usize, j: usize) -> usize {
        self.ext1_matrix()[j][i]
    }

    pub fn quiver_class(&self) -> QuiverClass {
        let m = self.ext1_matrix();
        let n = m.len();
        let has_loops = (0..n).any(|i| m[i][i] != 0);
        let max_parallel = m.iter().flatten().copied().max().unwrap_or(0);
        QuiverClass {
            has_loops,
            max_parallel,
            is_simple_digraph: !has_loops && max_parallel <= 1,
        }
    }

    /// Number of arrows of the Ext-quiver, `e(A)`.
    pub fn num_arrows(&self) -> usize {
        self.ext1_matrix().iter().flatten().sum()
    }

    /// Connectedness of the Ext-quiver as an undirected graph.
    pub fn is_connected(&self) -> bool {
        let m = self.ext1_matrix();
        let n = m.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if !seen[w] && (m[v][w] > 0 || m[w][v] > 0) {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Elements commuting with every element of `generators`.
    fn centralizer<'a>(
        &self,
        generators: impl IntoIterator<Item = &'a Vec<FieldElem>>,
    ) -> Subspace {
        let dim = self.dim();
        let mut sys = SparseSystem::new(self.field, dim);
        for g in generators {
            // column w of the map z -> [z, g] is [b_w, g]
            let cols: Vec<Vec<FieldElem>> = (0..dim)
                .map(|w| self.commutator(&self.basis_vector(w), g))
                .collect();
            for r in 0..dim {
                sys.add_equation((0..dim).map(|w| (w, cols[w][r].clone())));
            }
        }
        sys.kernel()
    }

    /// The center `Z(A) = HH^0(A)`.
    pub fn center(&self) -> Subspace {
        let basis: Vec<Vec<FieldElem>> = (0..self.dim()).map(|u| self.basis_vector(u)).collect();
        self.centralizer(&basis)
    }

    /// `C_A(E) = sum_i e_i A e_i`, the centralizer of the vertex idempotents.
    pub fn vertex_centralizer(&self) -> Subspace {
        let es: Vec<Vec<FieldElem>> = self
            .idempotents
            .iter()
            .map(|&e| self.basis_vector(e))
            .collect();
        self.centralizer(&es)
    }

    /// Span of the additive commutators `ab - ba`.
    pub fn commutator_space(&self) -> Subspace {
        let dim = self.dim();
        let mut s = Subspace::zero(self.field, dim);
        for u in 0..dim {
            for v in u + 1..dim {
                s.insert(self.commutator(&self.basis_vector(u), &self.basis_vector(v)));
            }
        }
        s
    }

    /// `A / J^m` and the quotient map; the identity when `m >= ll(A)`.
    pub fn truncate(&self, m: usize) -> Result<Truncation> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "truncation degree must be at least 1".into(),
            ));
        }
        let dim = self.dim();
        if m >= self.loewy_length() {
            return Ok(Truncation {
                algebra: self.clone(),
                map: Matrix::identity(self.field, dim),
                kept: (0..dim).collect(),
            });
        }
        let quo = quotient_basis(&Subspace::full(self.field, dim), &self.radical_power(m))?;
        let kept: Vec<usize> = quo
            .complement
            .iter()
            .map(|c| vector::leading(c).expect("nonzero complement vector"))
            .collect();
        let new_dim = kept.len();
        let mut products = Vec::with_capacity(new_dim * new_dim);
        for &u in &kept {
            for &v in &kept {
                let prod = self.mul(&self.basis_vector(u), &self.basis_vector(v));
                let coords = quo.project(&prod);
                products.push(
                    coords
                        .into_iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .collect(),
                );
            }
        }
        let position = |u: usize| kept.iter().position(|&k| k == u);
        let labels = kept.iter().map(|&u| self.labels[u].clone()).collect();
        let idempotents = self
            .idempotents
            .iter()
            .map(|&e| position(e).expect("idempotents survive truncation"))
            .collect();
        let quiver = self.quiver.as_ref().map(|qd| {
            if m == 1 {
                return QuiverData {
                    arrows: Vec::new(),
                    relations: Vec::new(),
                    truncation: 1,
                    paths: vec![Vec::new(); kept.len()],
                };
            }
            let arrows = qd
                .arrows
                .iter()
                .map(|a| QuiverArrow {
                    basis: position(a.basis).expect("arrows survive truncation at m >= 2"),
                    ..a.clone()
                })
                .collect();
            let relations = qd
                .relations
                .iter()
                .map(|r| {
                    r.iter()
                        .filter(|(_, w)| w.len() < m)
                        .cloned()
                        .collect::<Vec<_>>()
                })
                .filter(|r| !r.is_empty())
                .collect();
            QuiverData {
                arrows,
                relations,
                truncation: qd.truncation.min(m),
                paths: kept.iter().map(|&u| qd.paths[u].clone()).collect(),
            }
        });
        let algebra = FdAlgebra::from_structure(self.field, labels, products, idempotents, quiver)?;
        Ok(Truncation {
            algebra,
            map: quo.projection,
            kept,
        })
    }

    /// `eAe` for `e` the sum of the idempotents of `vertices`. The corner keeps
    /// the basis paths with both endpoints in the subset and is returned without
    /// quiver data.
    pub fn corner(&self, vertices: &[usize]) -> Result<Corner> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if vs.is_empty() {
            return Err(Error::EmptySubset);
        }
        if let Some(&bad) = vs.iter().find(|&&v| v >= self.num_vertices()) {
            return Err(Error::VertexOutOfRange(bad));
        }
        let local = |v: usize| vs.iter().position(|&x| x == v);
        let inclusion: Vec<usize> = (0..self.dim())
            .filter(|&u| {
                let l = &self.labels[u];
                local(l.source).is_some() && local(l.target).is_some()
            })
            .collect();
        let position = |u: usize| inclusion.iter().position(|&k| k == u);
        let n = inclusion.len();
        let mut products = Vec::with_capacity(n * n);
        for &u in &inclusion {
            for &v in &inclusion {
                let mut p = Vec::new();
                for (w, c) in self.product(u, v) {
                    let w = position(*w).ok_or_else(|| {
                        Error::InvalidAlgebra("corner is not closed under multiplication".into())
                    })?;
                    p.push((w, c.clone()));
                }
                products.push(p);
            }
        }
        let labels = inclusion
            .iter()
            .map(|&u| {
                let l = &self.labels[u];
                BasisLabel {
                    source: local(l.source).unwrap(),
                    target: local(l.target).unwrap(),
                    ..l.clone()
                }
            })
            .collect();
        let idempotents = vs
            .iter()
            .map(|&v| position(self.idempotents[v]).unwrap())
            .collect();
        let algebra = FdAlgebra::from_structure(self.field, labels, products, idempotents, None)?;
        Ok(Corner {
            algebra,
            inclusion,
            vertices: vs,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::parse_presentation;

    fn build(text: &str) -> FdAlgebra {
        parse_presentation(text).unwrap().build().unwrap()
    }

    const KRONECKER: &str = "field Q\nvertices 2\narrow a 0 1\narrow b 0 1\ntruncate 2\n";
    const TRUNC4: &str = "field Q\nvertices 1\narrow x 0 0\ntruncate 4\n";
    const NAKAYAMA_2_3: &str = "field Q\nvertices 2\narrow a 0 1\narrow b 1 0\ntruncate 3\n";

    fn names(a: &FdAlgebra) -> Vec<&str> {
        a.labels().iter().map(|l| l.name.as_str()).collect()
    }

    #[test]
    fn kronecker_basis_and_products() {
        let a = build(KRONECKER);
        assert_eq!(names(&a), ["e0", "e1", "a", "b"]);
        for u in 2..4 {
            for v in 2..4 {
                assert!(a.product(u, v).is_empty());
            }
        }
        assert_eq!(a.loewy_length(), 2);
    }

    #[test]
    fn truncated_polynomial_ring() {
        let a = build(TRUNC4);
        assert_eq!(names(&a), ["e0", "x", "x*x", "x*x*x"]);
        assert!(a.product(3, 1).is_empty());
        assert_eq!(a.product(1, 2), &vec![(3, Field::Rational.one())]);
        assert_eq!(a.loewy_length(), 4);
    }

    #[test]
    fn relation_closure() {
        let a = build("field Q\nvertices 1\narrow x 0 0\ntruncate 3\nrel 1 x*x\n");
        assert_eq!(a.dim(), 2);
        assert_eq!(a.loewy_length(), 2);
    }

    #[test]
    fn commutativity_relation() {
        // k<x,y>/(xy - yx, x^2, y^2) truncated at 4: basis 1, x, y, xy
        let a = build(
            "field Q\nvertices 1\narrow x 0 0\narrow y 0 0\ntruncate 4\nrel 1 x*y -1 y*x\nrel 1 x*x\nrel 1 y*y\n",
        );
        assert_eq!(names(&a), ["e0", "x", "y", "x*y"]);
        // y*x reduces to x*y
        assert_eq!(a.product(2, 1), &vec![(3, Field::Rational.one())]);
        assert_eq!(a.loewy_length(), 3);
    }

    #[test]
    fn ext1_examples() {
        assert_eq!(build(KRONECKER).ext1_matrix(), vec![vec![0, 0], vec![2, 0]]);
        assert_eq!(build(TRUNC4).ext1_matrix(), vec![vec![1]]);
        let tri = build("field Q\nvertices 3\narrow a 0 1\narrow b 1 2\narrow c 2 0\ntruncate 2\n");
        assert_eq!(
            tri.ext1_matrix(),
            vec![vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]
        );
    }

    #[test]
    fn quiver_classes() {
        let k = build(KRONECKER).quiver_class();
        assert_eq!(
            (k.has_loops, k.max_parallel, k.is_simple_digraph),
            (false, 2, false)
        );
        let t = build(TRUNC4).quiver_class();
        assert_eq!(
            (t.has_loops, t.max_parallel, t.is_simple_digraph),
            (true, 1, false)
        );
        let a3 =
            build("field Q\nvertices 3\narrow a 0 1\narrow b 1 2\ntruncate 3\n").quiver_class();
        assert_eq!(
            (a3.has_loops, a3.max_parallel, a3.is_simple_digraph),
            (false, 1, true)
        );
    }

    #[test]
    fn centers() {
        assert_eq!(build(TRUNC4).center().dim(), 4);
        let k = build(KRONECKER);
        let z = k.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&k.one()));
        let n = build(NAKAYAMA_2_3);
        // both socle cycles a*b and b*a are central, not only their sum
        let z = n.center();
        assert_eq!(z.dim(), 3);
        for (i, l) in n.labels().iter().enumerate() {
            assert_eq!(z.contains(&n.basis_vector(i)), l.length == 2, "{}", l.name);
        }
        assert_eq!(n.vertex_centralizer().dim(), 4);
    }

    #[test]
    fn truncation_examples() {
        let a = build(TRUNC4);
        let t1 = a.truncate(1).unwrap();
        assert_eq!(t1.algebra.dim(), 1);
        let t2 = a.truncate(2).unwrap();
        assert_eq!(names(&t2.algebra), ["e0", "x"]);
        assert!(t2.algebra.product(1, 1).is_empty());
        assert_eq!(t2.algebra.quiver_data().unwrap().truncation, 2);
        let t9 = a.truncate(9).unwrap();
        assert_eq!(t9.map, Matrix::identity(Field::Rational, 4));
    }

    #[test]
    fn truncation_composes() {
        let a = build("field Q\nvertices 2\narrow a 0 1\narrow b 1 0\ntruncate 6\n");
        for m in 1..6 {
            for m2 in 1..=m {
                let t = a.truncate(m).unwrap();
                let tt = t.algebra.truncate(m2).unwrap();
                let direct = a.truncate(m2).unwrap();
                assert_eq!(&tt.map * &t.map, direct.map);
                assert_eq!(tt.algebra, direct.algebra);
            }
        }
    }

    #[test]
    fn corner_examples() {
        let k = build(KRONECKER);
        let full = k.corner(&[0, 1]).unwrap();
        assert_eq!(full.inclusion, vec![0, 1, 2, 3]);
        assert_eq!(full.algebra.dim(), 4);
        assert_eq!(k.corner(&[0]).unwrap().algebra.dim(), 1);
        assert_eq!(k.corner(&[]).unwrap_err(), Error::EmptySubset);

        let n = build(NAKAYAMA_2_3);
        let c = n.corner(&[0]).unwrap();
        let corner_names: Vec<_> = c.algebra.labels().iter().map(|l| l.name.as_str()).collect();
        assert_eq!(corner_names, ["e0", "a*b"]);
        assert_eq!(c.algebra.loewy_length(), 2);
    }

    #[test]
    fn corners_partition_the_basis() {
        let n = build("field Q\nvertices 3\narrow a 0 1\narrow b 1 2\narrow c 2 0\ntruncate 5\n");
        let mut total = 0;
        for i in 0..3 {
            for j in 0..3 {
                let s = n.sandwich_space(i, &Subspace::full(Field::Rational, n.dim()), j);
                total += s.dim();
            }
        }
        assert_eq!(total, n.dim());
    }

    #[test]
    fn rejects_non_associative_tables() {
        let q = Field::Rational;
        let label = |name: &str, length| BasisLabel {
            name: name.into(),
            source: 0,
            target: 0,
            length,
        };
        // e, x with x*x = e is not even radical-compatible; x*x = x breaks nilpotency
        let labels = vec![label("e", 0), label("x", 1)];
        let products = vec![
            vec![(0, q.one())],
            vec![(1, q.one())],
            vec![(1, q.one())],
            vec![(1, q.one())],
        ];
        assert!(FdAlgebra::from_structure(q, labels, products, vec![0], None).is_err());
    }
}
