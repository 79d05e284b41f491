//! Dense exact linear algebra over [`Scalar`].
//!
//! Matrices follow the columns-as-images convention: column `j` holds the
//! coordinates of the image of the `j`-th basis vector.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{ParameterContext, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

/// Result of exact row reduction.
#[derive(Clone, Debug, PartialEq)]
pub struct RowReduction {
    pub rref: LinearMap,
    pub pivot_cols: Vec<usize>,
    pub kernel: Vec<Vec<Scalar>>,
}

pub fn zero_vector(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

pub fn basis_vector(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vector(n);
    v[i] = Scalar::one();
    v
}

pub fn add_assign(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = &*a + b;
        }
    }
}

pub fn sub_assign(acc: &mut [Scalar], v: &[Scalar]) {
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = &*a - b;
        }
    }
}

pub fn add_vectors(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = a.to_vec();
    add_assign(&mut out, b);
    out
}

pub fn sub_vectors(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = a.to_vec();
    sub_assign(&mut out, b);
    out
}

pub fn scale_vector(k: &Scalar, v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| k * x).collect()
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Parameter context shared by the non-rational scalars, if any.
pub fn common_context<'a>(items: impl IntoIterator<Item = &'a Scalar>) -> Option<Arc<ParameterContext>> {
    let mut best: Option<Arc<ParameterContext>> = None;
    for s in items {
        if let Some(c) = s.context() {
            match &best {
                Some(b) if b.len() >= c.len() => {}
                _ => best = Some(c.clone()),
            }
        }
    }
    best
}

impl LinearMap {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(LinearMap { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        LinearMap {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn diagonal(diag: Vec<Scalar>) -> Self {
        let n = diag.len();
        let mut m = Self::zero(n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    /// Builds a matrix from its rows.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(LinearMap {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = columns.len();
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch("column length differs from row count".into()));
        }
        let mut m = Self::zero(rows, cols);
        for (j, col) in columns.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                m.entries[i * cols + j] = x;
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn map_entries(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Self> {
        Ok(LinearMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_>>()?,
        })
    }

    /// Applies the map to a coordinate vector.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a map with {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self.apply_vec(v))
    }

    /// Applies the map, skipping zero coordinates. Panics on length mismatch.
    pub(crate) fn apply_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length must match column count");
        let mut out = zero_vector(self.rows);
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, slot) in out.iter_mut().enumerate() {
                let m = &self.entries[i * self.cols + j];
                if m.is_zero() {
                    continue;
                }
                let term = if x.is_one() { m.clone() } else { m * x };
                *slot = &*slot + &term;
            }
        }
        out
    }

    /// Matrix product `self * g`, i.e. apply `g` first.
    pub fn compose(&self, g: &LinearMap) -> Result<Self> {
        if self.cols != g.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, g.rows, g.cols
            )));
        }
        let cols = (0..g.cols).map(|j| self.apply_vec(&g.column(j))).collect();
        Self::from_columns(self.rows, cols)
    }

    pub fn add(&self, other: &LinearMap) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum of different shapes".into()));
        }
        Ok(LinearMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        LinearMap {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| k * x).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square map".into()));
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = self.compose(&out)?;
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    /// True if `self * other == other * self`.
    pub fn commutes_with(&self, other: &LinearMap) -> Result<bool> {
        Ok(self.compose(other)? == other.compose(self)?)
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &LinearMap) -> Self {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut m = Self::zero(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.entries[i * cols + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.entries[(self.rows + i) * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        m
    }

    /// Kronecker product with row-major basis order `i * m + j`.
    pub fn kronecker(&self, other: &LinearMap) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut m = Self::zero(rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        m.entries[(i * other.rows + k) * cols + j * other.cols + l] = a * b;
                    }
                }
            }
        }
        m
    }

    /// Exact reduced row echelon form, pivot columns and a kernel basis.
    ///
    /// Among the candidate rows for a pivot, the structurally simplest
    /// nonzero entry is chosen to keep intermediate expressions small.
    pub fn rref_and_kernel(&self) -> RowReduction {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let best = (r..a.rows)
                .filter(|&i| !a.get(i, c).is_zero())
                .min_by_key(|&i| a.get(i, c).complexity());
            let Some(p) = best else { continue };
            if p != r {
                for j in 0..a.cols {
                    a.entries.swap(p * a.cols + j, r * a.cols + j);
                }
            }
            let inv = a.get(r, c).inv();
            for j in 0..a.cols {
                let v = a.get(r, j);
                if !v.is_zero() {
                    let scaled = v * &inv;
                    a.set(r, j, scaled);
                }
            }
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..a.cols {
                    let rv = a.get(r, j);
                    if rv.is_zero() {
                        continue;
                    }
                    let updated = a.get(i, j) - &(&f * rv);
                    a.set(i, j, updated);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
        let kernel = free
            .iter()
            .map(|&f| {
                let mut v = zero_vector(a.cols);
                v[f] = Scalar::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a.get(row, f);
                }
                v
            })
            .collect();
        RowReduction {
            rref: a,
            pivot_cols: pivots,
            kernel,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref_and_kernel().pivot_cols.len()
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square map".into()));
        }
        let n = self.rows;
        let mut aug = Self::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one());
        }
        let red = aug.rref_and_kernel();
        if n > 0 && (red.pivot_cols.len() < n || red.pivot_cols[n - 1] >= n) {
            return Err(Error::Singular);
        }
        let mut inv = Self::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, red.rref.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    /// Solves `self * x = b`, returning one solution if the system is consistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let mut aug = Self::zero(self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let red = aug.rref_and_kernel();
        if red.pivot_cols.contains(&self.cols) {
            return Ok(None);
        }
        let mut x = zero_vector(self.cols);
        for (row, &pc) in red.pivot_cols.iter().enumerate() {
            x[pc] = red.rref.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn context(&self) -> Option<Arc<ParameterContext>> {
        common_context(&self.entries)
    }

    /// Re-expresses every entry over `ctx`, which must extend their contexts.
    pub fn lift(&self, ctx: &Arc<ParameterContext>) -> Result<Self> {
        self.map_entries(|x| Ok(x.lift(ctx)?))
    }

    /// Coordinate vectors of the columns, i.e. the images of the basis.
    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// A linear subspace given by an independent spanning set.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    /// Builds a subspace from independent vectors.
    pub fn new(ambient_dim: usize, basis: Vec<Vec<Scalar>>) -> Result<Self> {
        if basis.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::DimensionMismatch(
                "basis vector length differs from ambient dimension".into(),
            ));
        }
        if !basis.is_empty() && LinearMap::from_rows(basis.clone())?.rank() != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(Subspace { ambient_dim, basis })
    }

    /// The span of arbitrary vectors; dependent ones are dropped.
    pub fn spanned_by(ambient_dim: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self> {
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::DimensionMismatch(
                    "vector length differs from ambient dimension".into(),
                ));
            }
            if is_zero_vector(&v) {
                continue;
            }
            let mut trial = basis.clone();
            trial.push(v.clone());
            if LinearMap::from_rows(trial)?.rank() == basis.len() + 1 {
                basis.push(v);
            }
        }
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim).map(|i| basis_vector(ambient_dim, i)).collect(),
        }
    }

    /// Span of the standard basis vectors `start..start + len`.
    pub fn coordinate_block(ambient_dim: usize, start: usize, len: usize) -> Result<Self> {
        if start + len > ambient_dim {
            return Err(Error::DimensionMismatch("block exceeds ambient dimension".into()));
        }
        Ok(Subspace {
            ambient_dim,
            basis: (start..start + len).map(|i| basis_vector(ambient_dim, i)).collect(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Membership by rank comparison.
    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch(
                "vector length differs from ambient dimension".into(),
            ));
        }
        if is_zero_vector(v) {
            return Ok(true);
        }
        if self.basis.is_empty() {
            return Ok(false);
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Ok(LinearMap::from_rows(rows)?.rank() == self.basis.len())
    }

    /// Coordinates of `v` with respect to the basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if self.basis.is_empty() {
            return Ok(if is_zero_vector(v) { Some(Vec::new()) } else { None });
        }
        LinearMap::from_columns(self.ambient_dim, self.basis.clone())?.solve(v)
    }

    /// Standard basis vectors completing this subspace to the whole space,
    /// taken at the non-pivot coordinates of the reduced basis.
    pub fn complement_basis(&self) -> Vec<Vec<Scalar>> {
        let pivots = if self.basis.is_empty() {
            Vec::new()
        } else {
            LinearMap::from_rows(self.basis.clone())
                .expect("basis rows have equal length")
                .rref_and_kernel()
                .pivot_cols
        };
        (0..self.ambient_dim)
            .filter(|c| !pivots.contains(c))
            .map(|c| basis_vector(self.ambient_dim, c))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ParameterContext;

    fn int_rows(rows: &[&[i64]]) -> LinearMap {
        LinearMap::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Scalar::int(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_composes_to_identity() {
        let i = LinearMap::identity(2);
        assert_eq!(i.compose(&i).unwrap(), i);
    }

    #[test]
    fn composition_checks_shapes() {
        let a = LinearMap::zero(2, 3);
        let b = LinearMap::identity(2);
        assert!(matches!(a.compose(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn symbolic_involution_squares_to_identity() {
        let ctx = ParameterContext::new(&["a", "b"]).unwrap();
        let s = |t: &str| Scalar::parse(t, Some(&ctx)).unwrap();
        let alpha = LinearMap::from_rows(vec![vec![s("1"), s("2a/(b-1)")], vec![s("0"), s("-1")]]).unwrap();
        assert!(alpha.compose(&alpha).unwrap().is_identity());
    }

    #[test]
    fn symbolic_inverse_solves_by_hand() {
        let ctx = ParameterContext::new(&["a", "b"]).unwrap();
        let s = |t: &str| Scalar::parse(t, Some(&ctx)).unwrap();
        let beta = LinearMap::from_rows(vec![vec![s("1"), s("-a")], vec![s("0"), s("b")]]).unwrap();
        let inv = beta.inverse().unwrap();
        let expected = LinearMap::from_rows(vec![vec![s("1"), s("a/b")], vec![s("0"), s("1/b")]]).unwrap();
        assert_eq!(inv, expected);
        assert!(beta.compose(&inv).unwrap().is_identity());
    }

    #[test]
    fn zero_map_is_singular() {
        assert_eq!(LinearMap::zero(2, 2).inverse(), Err(Error::Singular));
        assert_eq!(LinearMap::identity(3).inverse().unwrap(), LinearMap::identity(3));
    }

    #[test]
    fn kernels() {
        assert_eq!(LinearMap::zero(3, 3).rref_and_kernel().kernel.len(), 3);
        assert!(LinearMap::identity(3).rref_and_kernel().kernel.is_empty());
        let red = int_rows(&[&[1, 1], &[1, 1]]).rref_and_kernel();
        assert_eq!(red.kernel, vec![vec![Scalar::int(-1), Scalar::int(1)]]);
        assert_eq!(red.pivot_cols, vec![0]);
    }

    #[test]
    fn complements_use_standard_vectors() {
        let e1 = Subspace::new(2, vec![basis_vector(2, 0)]).unwrap();
        assert_eq!(e1.complement_basis(), vec![basis_vector(2, 1)]);
        assert!(Subspace::whole(4).complement_basis().is_empty());
        let diag = Subspace::new(3, vec![vec![Scalar::one(), Scalar::one(), Scalar::zero()]]).unwrap();
        assert_eq!(diag.complement_basis(), vec![basis_vector(3, 1), basis_vector(3, 2)]);
    }

    #[test]
    fn dependent_basis_is_rejected() {
        let v = vec![Scalar::one(), Scalar::int(2)];
        let w = vec![Scalar::int(2), Scalar::int(4)];
        assert_eq!(Subspace::new(2, vec![v, w]), Err(Error::DependentBasis));
    }

    #[test]
    fn membership_and_coordinates() {
        let s = Subspace::new(3, vec![vec![Scalar::one(), Scalar::one(), Scalar::zero()]]).unwrap();
        let v = vec![Scalar::int(3), Scalar::int(3), Scalar::zero()];
        assert!(s.contains(&v).unwrap());
        assert_eq!(s.coordinates(&v).unwrap(), Some(vec![Scalar::int(3)]));
        assert!(!s.contains(&basis_vector(3, 0)).unwrap());
    }

    #[test]
    fn kronecker_of_identities() {
        let k = LinearMap::identity(2).kronecker(&LinearMap::identity(3));
        assert!(k.is_identity());
        let d = LinearMap::diagonal(vec![Scalar::int(2), Scalar::int(3)]);
        let k = d.kronecker(&d);
        assert_eq!(k.get(3, 3), &Scalar::int(9));
        assert_eq!(k.get(1, 1), &Scalar::int(6));
    }
}
