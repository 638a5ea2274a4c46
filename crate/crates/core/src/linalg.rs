//! Dense exact linear algebra over a [`FieldSpec`].
//!
//! Elimination pivots on the first nonzero entry in column order. With exact
//! arithmetic no magnitude pivoting is needed, and the output is deterministic.

use std::fmt;

use crate::error::{Error, Result};
use crate::fields::{FieldElement, FieldSpec};
use crate::sets::Universe;

/// Default bound on the number of vectors [`SolutionSet::enumerate`] will yield.
pub const DEFAULT_ENUMERATION_CAP: u128 = 1 << 24;

/// A column vector over one field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vector {
    spec: FieldSpec,
    components: Vec<FieldElement>,
}

impl Vector {
    pub fn new(spec: FieldSpec, components: Vec<FieldElement>) -> Result<Vector> {
        if let Some(bad) = components.iter().find(|c| c.spec() != spec) {
            return Err(Error::MixedFields {
                left: spec,
                right: bad.spec(),
            });
        }
        Ok(Vector { spec, components })
    }

    pub fn from_i64s(spec: FieldSpec, values: &[i64]) -> Vector {
        Vector {
            spec,
            components: values
                .iter()
                .map(|&v| FieldElement::from_i64(spec, v))
                .collect(),
        }
    }

    pub fn zeros(spec: FieldSpec, len: usize) -> Vector {
        Vector {
            spec,
            components: vec![spec.zero(); len],
        }
    }

    pub fn ones(spec: FieldSpec, len: usize) -> Vector {
        Vector {
            spec,
            components: vec![spec.one(); len],
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> &[FieldElement] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(FieldElement::is_zero)
    }

    /// Indices of the nonzero components.
    pub fn nonzero_indices(&self) -> Vec<usize> {
        self.components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    fn axpy(&mut self, scale: &FieldElement, other: &Vector) {
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            *a = a.sum(&scale.product(b));
        }
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A dense `rows x cols` matrix with labelled columns.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
    labels: Universe,
}

/// Output of [`ExactMatrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}

impl ExactMatrix {
    /// Builds a matrix from row-major entries. Labels default to `x1 .. xn`.
    pub fn new(
        spec: FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
        labels: Option<Universe>,
    ) -> Result<ExactMatrix> {
        if rows == 0 || cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        if let Some(bad) = entries.iter().find(|e| e.spec() != spec) {
            return Err(Error::MixedFields {
                left: spec,
                right: bad.spec(),
            });
        }
        let labels = match labels {
            Some(l) if l.len() != cols => {
                return Err(Error::ShapeMismatch {
                    expected: cols,
                    found: l.len(),
                })
            }
            Some(l) => l,
            None => Universe::with_size(cols)?,
        };
        Ok(ExactMatrix {
            spec,
            rows,
            cols,
            entries,
            labels,
        })
    }

    /// Builds a matrix from integer rows, mapping each entry into `spec`.
    pub fn from_rows(spec: FieldSpec, rows: &[Vec<i64>]) -> Result<ExactMatrix> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&v| FieldElement::from_i64(spec, v))
            .collect();
        ExactMatrix::new(spec, rows.len(), cols, entries, None)
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Result<ExactMatrix> {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    spec.one()
                } else {
                    spec.zero()
                }
            })
            .collect();
        ExactMatrix::new(spec, n, n, entries, None)
    }

    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Result<ExactMatrix> {
        ExactMatrix::new(spec, rows, cols, vec![spec.zero(); rows * cols], None)
    }

    /// Replaces the column labels.
    pub fn with_labels(mut self, labels: Universe) -> Result<ExactMatrix> {
        if labels.len() != self.cols {
            return Err(Error::ShapeMismatch {
                expected: self.cols,
                found: labels.len(),
            });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn labels(&self) -> &Universe {
        &self.labels
    }

    pub fn get(&self, row: usize, col: usize) -> &FieldElement {
        &self.entries[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[FieldElement] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vector {
        Vector {
            spec: self.spec,
            components: (0..self.rows).map(|r| self.get(r, col).clone()).collect(),
        }
    }

    pub fn is_zero_column(&self, col: usize) -> bool {
        (0..self.rows).all(|r| self.get(r, col).is_zero())
    }

    pub fn transpose(&self) -> ExactMatrix {
        let entries = (0..self.cols)
            .flat_map(|c| (0..self.rows).map(move |r| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        ExactMatrix {
            spec: self.spec,
            rows: self.cols,
            cols: self.rows,
            entries,
            labels: Universe::with_size(self.rows).expect("rows >= 1"),
        }
    }

    /// The columns at `indices`, in the given order, keeping their labels.
    pub fn column_submatrix(&self, indices: &[usize]) -> Result<ExactMatrix> {
        if indices.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let labels = Universe::new(indices.iter().map(|&c| self.labels.label(c).to_string()))?;
        let entries = (0..self.rows)
            .flat_map(|r| indices.iter().map(move |&c| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        ExactMatrix::new(self.spec, self.rows, indices.len(), entries, Some(labels))
    }

    /// Rows reordered by `order` (a permutation of row indices).
    pub fn permute_rows(&self, order: &[usize]) -> ExactMatrix {
        let entries = order
            .iter()
            .flat_map(|&r| self.row(r).iter().cloned())
            .collect();
        ExactMatrix {
            spec: self.spec,
            rows: order.len(),
            cols: self.cols,
            entries,
            labels: self.labels.clone(),
        }
    }

    /// Left-multiplies by `left` (which must have `self.rows()` columns).
    pub fn left_multiply(&self, left: &ExactMatrix) -> Result<ExactMatrix> {
        if left.spec != self.spec {
            return Err(Error::MixedFields {
                left: left.spec,
                right: self.spec,
            });
        }
        if left.cols != self.rows {
            return Err(Error::ShapeMismatch {
                expected: self.rows,
                found: left.cols,
            });
        }
        let mut entries = Vec::with_capacity(left.rows * self.cols);
        for i in 0..left.rows {
            for j in 0..self.cols {
                let mut acc = self.spec.zero();
                for k in 0..self.rows {
                    acc = acc.sum(&left.get(i, k).product(self.get(k, j)));
                }
                entries.push(acc);
            }
        }
        ExactMatrix::new(
            self.spec,
            left.rows,
            self.cols,
            entries,
            Some(self.labels.clone()),
        )
    }

    /// `A v` for a vector with one component per column.
    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.spec != self.spec {
            return Err(Error::MixedFields {
                left: self.spec,
                right: v.spec,
            });
        }
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let components = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(&v.components)
                    .fold(self.spec.zero(), |acc, (a, x)| acc.sum(&a.product(x)))
            })
            .collect();
        Ok(Vector {
            spec: self.spec,
            components,
        })
    }

    fn entry_mut(&mut self, row: usize, col: usize) -> &mut FieldElement {
        &mut self.entries[row * self.cols + col]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.entries.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// `row[target] -= factor * row[source]`
    fn subtract_row_multiple(&mut self, target: usize, source: usize, factor: &FieldElement) {
        for c in 0..self.cols {
            let delta = factor.product(self.get(source, c));
            let entry = self.entry_mut(target, c);
            *entry = entry.difference(&delta);
        }
    }

    /// Reduced row echelon form, its pivot columns and the rank.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivot_cols = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(found) = (pivot_row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(pivot_row, found);
            let scale = m.get(pivot_row, col).inv().expect("pivot is nonzero");
            for c in 0..m.cols {
                let e = m.entry_mut(pivot_row, c);
                *e = e.product(&scale);
            }
            for r in 0..m.rows {
                if r != pivot_row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    m.subtract_row_multiple(r, pivot_row, &factor);
                }
            }
            pivot_cols.push(col);
            pivot_row += 1;
        }
        let rank = pivot_cols.len();
        Rref {
            matrix: m,
            pivot_cols,
            rank,
        }
    }

    /// Maximum number of linearly independent columns.
    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Determinant by Gaussian elimination, tracking row swaps.
    pub fn determinant(&self) -> Result<FieldElement> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut m = self.clone();
        let mut det = self.spec.one();
        for col in 0..m.cols {
            let Some(found) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return Ok(self.spec.zero());
            };
            if found != col {
                m.swap_rows(col, found);
                det = det.neg();
            }
            let pivot = m.get(col, col).clone();
            det = det.product(&pivot);
            let pivot_inv = pivot.inv().expect("pivot is nonzero");
            for r in col + 1..m.rows {
                if !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).product(&pivot_inv);
                    m.subtract_row_multiple(r, col, &factor);
                }
            }
        }
        Ok(det)
    }

    /// Basis of the solution space of `A x = 0`, one vector per free column
    /// in ascending order.
    pub fn null_space_basis(&self) -> SolutionSet {
        let rref = self.rref();
        SolutionSet::Affine {
            particular: Vector::zeros(self.spec, self.cols),
            basis: kernel_from_rref(&rref.matrix, &rref.pivot_cols, self.cols),
        }
    }

    /// All solutions of `A x = 1` (the all-ones right-hand side).
    pub fn solve_ones(&self) -> SolutionSet {
        self.solve(&Vector::ones(self.spec, self.rows))
            .expect("right-hand side has matching length and field")
    }

    /// All solutions of `A x = b`.
    pub fn solve(&self, rhs: &Vector) -> Result<SolutionSet> {
        if rhs.spec != self.spec {
            return Err(Error::MixedFields {
                left: self.spec,
                right: rhs.spec,
            });
        }
        if rhs.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                found: rhs.len(),
            });
        }
        let n = self.cols;
        let mut entries = Vec::with_capacity(self.rows * (n + 1));
        for r in 0..self.rows {
            entries.extend(self.row(r).iter().cloned());
            entries.push(rhs.components[r].clone());
        }
        let augmented = ExactMatrix::new(self.spec, self.rows, n + 1, entries, None)?;
        let rref = augmented.rref();
        if rref.pivot_cols.last() == Some(&n) {
            return Ok(SolutionSet::Empty {
                spec: self.spec,
                len: n,
            });
        }
        let mut particular = Vector::zeros(self.spec, n);
        for (row, &col) in rref.pivot_cols.iter().enumerate() {
            particular.components[col] = rref.matrix.get(row, n).clone();
        }
        Ok(SolutionSet::Affine {
            particular,
            basis: kernel_from_rref(&rref.matrix, &rref.pivot_cols, n),
        })
    }

    /// Whether the columns at `indices` are linearly independent. The empty
    /// selection is independent.
    pub fn columns_independent_at(&self, indices: &[usize]) -> bool {
        if indices.is_empty() {
            return true;
        }
        if indices.len() > self.rows {
            return false;
        }
        let rows = (0..self.rows)
            .map(|r| indices.iter().map(|&c| self.get(r, c).clone()).collect())
            .collect();
        rank_of_rows(rows) == indices.len()
    }

    /// Whether the columns carrying `labels` are linearly independent.
    pub fn columns_independent<S: AsRef<str>>(&self, labels: &[S]) -> Result<bool> {
        let mut indices = labels
            .iter()
            .map(|l| self.labels.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        indices.sort_unstable();
        indices.dedup();
        Ok(self.columns_independent_at(&indices))
    }

    /// The same integer grid read over another field. Every entry must be an
    /// integer; it is reduced modulo p for prime targets.
    pub fn reinterpret(&self, target: FieldSpec) -> Result<ExactMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                e.to_integer()
                    .map(|i| FieldElement::from_bigint(target, &i))
                    .ok_or_else(|| Error::NonIntegerEntry(e.to_string()))
            })
            .collect::<Result<Vec<_>>>()?;
        ExactMatrix::new(
            target,
            self.rows,
            self.cols,
            entries,
            Some(self.labels.clone()),
        )
    }
}

/// Rank by forward elimination on a row list; no RREF or labels needed.
fn rank_of_rows(mut rows: Vec<Vec<FieldElement>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot_inv = rows[rank][col].inv().expect("pivot is nonzero");
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].product(&pivot_inv);
            let (upper, lower) = rows.split_at_mut(r);
            for (target, pivot) in lower[0][col..cols].iter_mut().zip(&upper[rank][col..cols]) {
                *target = target.difference(&factor.product(pivot));
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn kernel_from_rref(rref: &ExactMatrix, pivot_cols: &[usize], n: usize) -> Vec<Vector> {
    let spec = rref.spec;
    (0..n)
        .filter(|c| !pivot_cols.contains(c))
        .map(|free| {
            let mut v = Vector::zeros(spec, n);
            v.components[free] = spec.one();
            for (row, &pc) in pivot_cols.iter().enumerate() {
                v.components[pc] = rref.get(row, free).neg();
            }
            v
        })
        .collect()
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix over {} [{}]", self.spec, self.labels)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// The solution set of a linear system: empty, or a particular solution plus
/// a basis of the homogeneous solutions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolutionSet {
    Empty {
        spec: FieldSpec,
        len: usize,
    },
    Affine {
        particular: Vector,
        basis: Vec<Vector>,
    },
}

impl SolutionSet {
    pub fn spec(&self) -> FieldSpec {
        match self {
            SolutionSet::Empty { spec, .. } => *spec,
            SolutionSet::Affine { particular, .. } => particular.spec,
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SolutionSet::Empty { .. })
    }

    pub fn basis(&self) -> &[Vector] {
        match self {
            SolutionSet::Empty { .. } => &[],
            SolutionSet::Affine { basis, .. } => basis,
        }
    }

    pub fn particular(&self) -> Option<&Vector> {
        match self {
            SolutionSet::Empty { .. } => None,
            SolutionSet::Affine { particular, .. } => Some(particular),
        }
    }

    /// Number of solutions over a finite field, `None` over the rationals
    /// unless the set is empty or a single point.
    pub fn count(&self) -> Option<u128> {
        match self {
            SolutionSet::Empty { .. } => Some(0),
            SolutionSet::Affine { basis, .. } if basis.is_empty() => Some(1),
            SolutionSet::Affine { basis, particular } => {
                let p = u128::from(particular.spec.modulus()?);
                let k = u32::try_from(basis.len()).unwrap_or(u32::MAX);
                Some(p.checked_pow(k).unwrap_or(u128::MAX))
            }
        }
    }

    pub fn enumerate(&self) -> Result<Solutions<'_>> {
        self.enumerate_with_cap(DEFAULT_ENUMERATION_CAP)
    }

    /// Streams every solution exactly once, ordered lexicographically by the
    /// coefficient tuple over the basis (first coefficient most significant).
    pub fn enumerate_with_cap(&self, cap: u128) -> Result<Solutions<'_>> {
        let spec = self.spec();
        let Some(p) = spec.modulus() else {
            return Err(Error::InfiniteField(spec));
        };
        let count = self.count().expect("finite field");
        if count > cap {
            return Err(Error::EnumerationTooLarge { count, cap });
        }
        let (particular, basis, coefficients) = match self {
            SolutionSet::Empty { .. } => (None, &[][..], Vec::new()),
            SolutionSet::Affine { particular, basis } => {
                (Some(particular.clone()), &basis[..], vec![0; basis.len()])
            }
        };
        Ok(Solutions {
            spec,
            modulus: p,
            basis,
            coefficients,
            next: particular,
        })
    }
}

/// Iterator returned by [`SolutionSet::enumerate`].
pub struct Solutions<'a> {
    spec: FieldSpec,
    modulus: u64,
    basis: &'a [Vector],
    coefficients: Vec<u64>,
    next: Option<Vector>,
}

impl Iterator for Solutions<'_> {
    type Item = Vector;

    fn next(&mut self) -> Option<Vector> {
        let current = self.next.take()?;
        // Odometer over the coefficients, least significant last. A position
        // that wraps has had its basis vector added p times, which is zero.
        let one = self.spec.one();
        let mut successor = current.clone();
        for pos in (0..self.coefficients.len()).rev() {
            successor.axpy(&one, &self.basis[pos]);
            self.coefficients[pos] += 1;
            if self.coefficients[pos] < self.modulus {
                self.next = Some(successor);
                break;
            }
            self.coefficients[pos] = 0;
        }
        Some(current)
    }
}
