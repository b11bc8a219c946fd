use std::collections::BTreeMap;

use super::vector;
use super::{Field, FieldElem, Subspace};

/// Sparse row: `(column, nonzero coefficient)` pairs sorted by column.
pub type SparseRow = Vec<(usize, FieldElem)>;

/// Incremental row echelon form for large, sparse homogeneous systems.
///
/// Rows are reduced against the stored leading terms as they arrive, so only
/// independent equations are kept.
#[derive(Debug, Clone)]
pub struct SparseSystem {
    field: Field,
    cols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

/// `a - c * b` on sparse rows.
fn sub_scaled(a: &SparseRow, c: &FieldElem, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, -(c * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseSystem {
    pub fn new(field: Field, cols: usize) -> SparseSystem {
        SparseSystem {
            field,
            cols,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds an equation given as unsorted `(column, coefficient)` terms; repeated
    /// columns are summed.
    pub fn add_equation(&mut self, terms: impl IntoIterator<Item = (usize, FieldElem)>) {
        let mut acc: BTreeMap<usize, FieldElem> = BTreeMap::new();
        for (c, v) in terms {
            assert!(c < self.cols, "column {c} out of range");
            if v.is_zero() {
                continue;
            }
            let e = acc.entry(c).or_insert_with(|| self.field.zero());
            *e = &*e + &v;
        }
        let row: SparseRow = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        self.add_row(row);
    }

    fn add_row(&mut self, mut row: SparseRow) {
        while let Some((lead, coeff)) = row.first().cloned() {
            match self.rows.get(&lead) {
                Some(pivot_row) => row = sub_scaled(&row, &coeff, pivot_row),
                None => {
                    let inv = coeff.inv().unwrap();
                    let normalized = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
                    self.rows.insert(lead, normalized);
                    return;
                }
            }
        }
    }

    /// Solution space of the accumulated homogeneous system.
    pub fn kernel(&self) -> Subspace {
        // back-substitute into reduced form, largest pivot first
        let mut reduced: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&p, row) in self.rows.iter().rev() {
            let mut r = row.clone();
            loop {
                let next = r
                    .iter()
                    .skip(1)
                    .find(|(c, _)| reduced.contains_key(c))
                    .cloned();
                match next {
                    Some((c, coeff)) => r = sub_scaled(&r, &coeff, &reduced[&c]),
                    None => break,
                }
            }
            reduced.insert(p, r);
        }
        let mut basis = Vec::new();
        let free: Vec<usize> = (0..self.cols)
            .filter(|c| !reduced.contains_key(c))
            .collect();
        let mut col_index = vec![usize::MAX; self.cols];
        for (i, &f) in free.iter().enumerate() {
            col_index[f] = i;
            basis.push(vector::unit(self.field, self.cols, f));
        }
        for (&p, row) in &reduced {
            for (c, v) in row.iter().skip(1) {
                let i = col_index[*c];
                basis[i][p] = -v;
            }
        }
        Subspace::span(self.field, self.cols, basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    #[test]
    fn agrees_with_dense_kernel() {
        let q = Field::Rational;
        let rows: &[&[i64]] = &[
            &[1, 2, 0, -1, 3],
            &[0, 0, 1, 4, 1],
            &[2, 4, 1, 2, 7],
            &[0, 1, 0, 0, 0],
        ];
        let dense = Matrix::from_i64(q, rows);
        let mut sys = SparseSystem::new(q, 5);
        for r in rows {
            sys.add_equation(r.iter().enumerate().map(|(c, &x)| (c, q.from_i64(x))));
        }
        assert_eq!(sys.rank(), dense.rank());
        assert_eq!(sys.kernel(), dense.kernel());
    }

    #[test]
    fn empty_system_has_full_kernel() {
        let f = Field::prime(7).unwrap();
        let sys = SparseSystem::new(f, 3);
        assert_eq!(sys.kernel(), Subspace::full(f, 3));
    }
}
