//! Sparse exact matrices and the two linear-algebra operations everything
//! else reduces to: rank/kernel extraction and subquotient dimensions.
//!
//! Elimination is plain Gaussian elimination over the exact field, with a
//! lowest-fill pivot heuristic. No floating point anywhere.

use crate::field::{FieldSpec, Scalar};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// A sparse matrix with entries in a fixed exact field. Rows and columns
/// are 0-indexed; absent entries are zero.
#[derive(Debug, Clone)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub field: FieldSpec,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl SparseMatrix {
    pub fn new(rows: usize, cols: usize, field: FieldSpec) -> Self {
        SparseMatrix {
            rows,
            cols,
            field,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let mut m = SparseMatrix::new(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from integer triplets `(row, col, value)`.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        field: FieldSpec,
        triplets: &[(usize, usize, i64)],
    ) -> Self {
        let mut m = SparseMatrix::new(rows, cols, field);
        for &(r, c, v) in triplets {
            m.add_to(r, c, Scalar::from_i64(v, field));
        }
        m
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "entry out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: Scalar) {
        let cur = self.get(r, c);
        self.set(r, c, cur.add(&v));
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::new(self.cols, self.rows, self.field);
        for (&(r, c), v) in &self.entries {
            t.set(c, r, v.clone());
        }
        t
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = SparseMatrix::new(self.rows, other.cols, self.field);
        // Group the right factor by row for the sparse product.
        let mut right_rows: Vec<Vec<(usize, &Scalar)>> = vec![Vec::new(); other.rows];
        for (&(r, c), v) in &other.entries {
            right_rows[r].push((c, v));
        }
        for (&(r, k), a) in &self.entries {
            for &(c, b) in &right_rows[k] {
                out.add_to(r, c, a.mul(b));
            }
        }
        Ok(out)
    }

    /// Applies the matrix to a dense vector.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![self.field.zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] = out[r].add(&a.mul(&v[c]));
            }
        }
        out
    }

    fn sparse_rows(&self) -> Vec<BTreeMap<usize, Scalar>> {
        let mut rows: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            rows[r].insert(c, v.clone());
        }
        rows
    }

    /// The rank over the matrix's field.
    pub fn rank(&self) -> usize {
        eliminate(self.sparse_rows()).0.len()
    }
}

/// Row-reduces `rows`, returning `(pivot rows in REF order, pivot columns)`.
/// Pivot rows are normalized (pivot entry 1) and fully reduced against each
/// other, so the result is in reduced row-echelon form.
fn eliminate(
    mut rows: Vec<BTreeMap<usize, Scalar>>,
) -> (Vec<BTreeMap<usize, Scalar>>, Vec<usize>) {
    let mut pivots: Vec<BTreeMap<usize, Scalar>> = Vec::new();
    let mut pivot_cols: Vec<usize> = Vec::new();
    loop {
        // Choose the remaining row with the leftmost leading column,
        // breaking ties by sparsity to limit fill-in.
        let mut best: Option<(usize, usize, usize)> = None; // (col, nnz, idx)
        for (idx, row) in rows.iter().enumerate() {
            if let Some((&col, _)) = row.iter().next() {
                let key = (col, row.len(), idx);
                if best.map_or(true, |b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((col, _, idx)) = best else { break };
        let mut pivot = rows.swap_remove(idx);
        let lead = pivot.get(&col).unwrap().clone();
        if !lead.is_one() {
            let inv = lead.inv();
            for v in pivot.values_mut() {
                *v = v.mul(&inv);
            }
        }
        // Eliminate this column from every other row (previous pivots too,
        // so we end in reduced echelon form for kernel extraction).
        for row in rows.iter_mut().chain(pivots.iter_mut()) {
            if let Some(coef) = row.get(&col).cloned() {
                for (c, v) in &pivot {
                    let delta = coef.mul(v).neg();
                    let cur = row.remove(c);
                    let next = match cur {
                        Some(x) => x.add(&delta),
                        None => delta,
                    };
                    if !next.is_zero() {
                        row.insert(*c, next);
                    }
                }
            }
        }
        pivots.push(pivot);
        pivot_cols.push(col);
    }
    (pivots, pivot_cols)
}

/// Rank and an explicit kernel basis.
///
/// Returns `(rank, basis)` where `basis` is a list of dense column vectors
/// spanning `ker m`; `rank + basis.len() == m.cols` always holds and every
/// basis vector `v` satisfies `m * v = 0`.
pub fn rank_kernel(m: &SparseMatrix) -> (usize, Vec<Vec<Scalar>>) {
    let (pivots, pivot_cols) = eliminate(m.sparse_rows());
    let rank = pivots.len();
    let is_pivot: BTreeMap<usize, usize> = pivot_cols
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, i))
        .collect();
    let mut basis = Vec::with_capacity(m.cols - rank);
    for free in 0..m.cols {
        if is_pivot.contains_key(&free) {
            continue;
        }
        // Back-substitute: the free column gets 1, each pivot column the
        // negated coefficient of the free column in its reduced pivot row.
        let mut v = vec![m.field.zero(); m.cols];
        v[free] = m.field.one();
        for (&col, &row_idx) in &is_pivot {
            if let Some(coef) = pivots[row_idx].get(&free) {
                v[col] = coef.neg();
            }
        }
        basis.push(v);
    }
    (rank, basis)
}

/// Dimension of `ker(d_out) / im(d_in)` for a composable pair
/// `d_in: A -> B`, `d_out: B -> C` with `d_out . d_in = 0`.
///
/// Fails if the shapes do not compose, the fields differ, or the pair is
/// not a complex.
pub fn subquotient_dim(d_in: &SparseMatrix, d_out: &SparseMatrix) -> Result<usize> {
    if d_in.rows != d_out.cols {
        return Err(Error::Shape(format!(
            "middle term mismatch: d_in is {}x{}, d_out is {}x{}",
            d_in.rows, d_in.cols, d_out.rows, d_out.cols
        )));
    }
    if d_in.field != d_out.field {
        return Err(Error::Shape("field mismatch between maps".into()));
    }
    if !d_out.mul(d_in)?.is_zero() {
        return Err(Error::NotAComplex(
            "d_out . d_in has a nonzero entry".into(),
        ));
    }
    let kernel_dim = d_out.cols - d_out.rank();
    Ok(kernel_dim - d_in.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn identity_has_full_rank_empty_kernel() {
        let m = SparseMatrix::identity(2, rat());
        let (rank, kernel) = rank_kernel(&m);
        assert_eq!(rank, 2);
        assert!(kernel.is_empty());
    }

    #[test]
    fn zero_matrix_kernel_is_standard_basis() {
        let m = SparseMatrix::new(3, 3, rat());
        let (rank, kernel) = rank_kernel(&m);
        assert_eq!(rank, 0);
        assert_eq!(kernel.len(), 3);
        for (i, v) in kernel.iter().enumerate() {
            for (j, x) in v.iter().enumerate() {
                assert_eq!(x.is_one(), i == j);
                assert_eq!(x.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn dependent_rows_mod_five() {
        // Second row is twice the first, so rank 1 and a 2-dim kernel.
        let m = SparseMatrix::from_triplets(
            2,
            3,
            FieldSpec::Prime(5),
            &[(0, 0, 1), (0, 1, 2), (0, 2, 3), (1, 0, 2), (1, 1, 4), (1, 2, 6)],
        );
        let (rank, kernel) = rank_kernel(&m);
        assert_eq!(rank, 1);
        assert_eq!(kernel.len(), 2);
        for v in &kernel {
            assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn subquotient_of_exact_pair_is_zero() {
        // A --id--> B --0--> C is exact in the middle.
        let d_in = SparseMatrix::identity(2, rat());
        let d_out = SparseMatrix::new(3, 2, rat());
        assert_eq!(subquotient_dim(&d_in, &d_out).unwrap(), 0);
    }

    #[test]
    fn subquotient_counts_homology() {
        // 0 -> B -> 0 with B 3-dimensional: homology is all of B.
        let d_in = SparseMatrix::new(3, 0, rat());
        let d_out = SparseMatrix::new(0, 3, rat());
        assert_eq!(subquotient_dim(&d_in, &d_out).unwrap(), 3);
    }

    #[test]
    fn subquotient_rejects_non_complex() {
        let d_in = SparseMatrix::identity(2, rat());
        let d_out = SparseMatrix::identity(2, rat());
        assert!(matches!(
            subquotient_dim(&d_in, &d_out),
            Err(Error::NotAComplex(_))
        ));
    }

    #[test]
    fn subquotient_rejects_shape_mismatch() {
        let d_in = SparseMatrix::new(2, 1, rat());
        let d_out = SparseMatrix::new(1, 3, rat());
        assert!(matches!(subquotient_dim(&d_in, &d_out), Err(Error::Shape(_))));
    }

    fn arb_matrix(field: FieldSpec) -> impl Strategy<Value = SparseMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
            prop::collection::vec((-4i64..5).prop_map(|v| v), r * c).prop_map(move |vals| {
                let mut m = SparseMatrix::new(r, c, field);
                for (k, v) in vals.into_iter().enumerate() {
                    m.set(k / c, k % c, Scalar::from_i64(v, field));
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank_rationals(m in arb_matrix(FieldSpec::Rationals)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_equals_transpose_rank_mod_five(m in arb_matrix(FieldSpec::Prime(5))) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_plus_kernel_is_cols(m in arb_matrix(FieldSpec::Rationals)) {
            let (rank, kernel) = rank_kernel(&m);
            prop_assert_eq!(rank + kernel.len(), m.cols);
            for v in &kernel {
                prop_assert!(m.mul_vec(v).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn kernel_vectors_are_independent(m in arb_matrix(FieldSpec::Prime(3))) {
            let (_, kernel) = rank_kernel(&m);
            if !kernel.is_empty() {
                let mut stacked = SparseMatrix::new(m.cols, kernel.len(), m.field);
                for (j, v) in kernel.iter().enumerate() {
                    for (i, x) in v.iter().enumerate() {
                        stacked.set(i, j, x.clone());
                    }
                }
                prop_assert_eq!(stacked.rank(), kernel.len());
            }
        }
    }
}
