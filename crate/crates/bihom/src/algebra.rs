//! BiHom-algebras given by structure constants.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::linalg::{basis_vector, common_context, is_zero_vector, sub_vectors, zero_vector, LinearMap, Subspace};
use crate::parallel;
use crate::report::{render_vector, CheckReport, Witness};
use crate::scalar::{ParameterContext, Scalar};

/// Sparse rows of a structure tensor: entry `(a, b)` lists the nonzero
/// `(k, c)` with `e_a * e_b = sum c e_k`.
pub(crate) type SparseTable = Vec<Vec<(usize, Scalar)>>;

pub(crate) fn sparse_table(tensor: &[Scalar], rows: usize, out: usize) -> SparseTable {
    (0..rows)
        .map(|r| {
            (0..out)
                .filter_map(|k| {
                    let c = &tensor[r * out + k];
                    (!c.is_zero()).then(|| (k, c.clone()))
                })
                .collect()
        })
        .collect()
}

/// Contracts a sparse bilinear table against two coordinate vectors.
pub(crate) fn contract(table: &SparseTable, x: &[Scalar], y: &[Scalar], out: usize) -> Vec<Scalar> {
    let mut acc = zero_vector(out);
    let ny = y.len();
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if yj.is_zero() {
                continue;
            }
            let row = &table[i * ny + j];
            if row.is_empty() {
                continue;
            }
            let w = xi * yj;
            for (k, c) in row {
                acc[*k] = &acc[*k] + &(&w * c);
            }
        }
    }
    acc
}

pub(crate) fn lift_all(items: &[Scalar], ctx: &Option<Arc<ParameterContext>>) -> Result<Vec<Scalar>> {
    match ctx {
        None => Ok(items.to_vec()),
        Some(c) => items.iter().map(|x| Ok(x.lift(c)?)).collect(),
    }
}

pub(crate) fn check_square(name: &str, m: &LinearMap, n: usize) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{name} is {}x{}, expected {n}x{n}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

pub(crate) fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// An element of a BiHom-algebra, stored by its coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Element {
    coords: Vec<Scalar>,
}

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element { coords }
    }

    pub fn zero(dim: usize) -> Self {
        Element::new(zero_vector(dim))
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        Element::new(basis_vector(dim, i))
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vector(&self.coords)
    }
}

/// `(A, mu, alpha, beta)` with `mu(e_i, e_j) = sum_k c[i][j][k] e_k`.
#[derive(Debug, Clone)]
pub struct BiHomAlgebra {
    label: String,
    dim: usize,
    mu: Vec<Scalar>,
    alpha: LinearMap,
    beta: LinearMap,
    table: SparseTable,
    ctx: Option<Arc<ParameterContext>>,
}

impl PartialEq for BiHomAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.mu == other.mu && self.alpha == other.alpha && self.beta == other.beta
    }
}

impl BiHomAlgebra {
    /// Builds an algebra from a flat tensor indexed `(i * dim + j) * dim + k`.
    /// Rejects non-commuting twists.
    pub fn new(
        label: impl Into<String>,
        dim: usize,
        mu: Vec<Scalar>,
        alpha: LinearMap,
        beta: LinearMap,
    ) -> Result<Self> {
        if mu.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "structure tensor has {} entries, expected {}",
                mu.len(),
                dim * dim * dim
            )));
        }
        check_square("alpha", &alpha, dim)?;
        check_square("beta", &beta, dim)?;
        let ctx = common_context(mu.iter().chain(alpha.entries()).chain(beta.entries()));
        let mu = lift_all(&mu, &ctx)?;
        let (alpha, beta) = match &ctx {
            Some(c) => (alpha.lift(c)?, beta.lift(c)?),
            None => (alpha, beta),
        };
        if !alpha.commutes_with(&beta)? {
            return Err(Error::NonCommutingMaps("alpha and beta".into()));
        }
        let table = sparse_table(&mu, dim * dim, dim);
        Ok(BiHomAlgebra {
            label: label.into(),
            dim,
            mu,
            alpha,
            beta,
            table,
            ctx,
        })
    }

    /// Builds an algebra from the product of each ordered pair of basis vectors.
    pub fn from_products(
        label: impl Into<String>,
        dim: usize,
        product: impl Fn(usize, usize) -> Result<Vec<Scalar>>,
        alpha: LinearMap,
        beta: LinearMap,
    ) -> Result<Self> {
        let mut mu = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = product(i, j)?;
                if v.len() != dim {
                    return Err(Error::DimensionMismatch("product vector length".into()));
                }
                mu.extend(v);
            }
        }
        Self::new(label, dim, mu, alpha, beta)
    }

    /// An algebra with identity twists.
    pub fn untwisted(label: impl Into<String>, dim: usize, mu: Vec<Scalar>) -> Result<Self> {
        Self::new(label, dim, mu, LinearMap::identity(dim), LinearMap::identity(dim))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha(&self) -> &LinearMap {
        &self.alpha
    }

    pub fn beta(&self) -> &LinearMap {
        &self.beta
    }

    /// Flat structure tensor indexed `(i * dim + j) * dim + k`.
    pub fn tensor(&self) -> &[Scalar] {
        &self.mu
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.mu[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `mu(e_i, e_j)`.
    pub fn product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let start = (i * self.dim + j) * self.dim;
        self.mu[start..start + self.dim].to_vec()
    }

    pub fn context(&self) -> Option<&Arc<ParameterContext>> {
        self.ctx.as_ref()
    }

    /// Product of coordinate vectors. Panics on length mismatch.
    pub(crate) fn mul_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        assert!(
            x.len() == self.dim && y.len() == self.dim,
            "element length must match dimension"
        );
        contract(&self.table, x, y, self.dim)
    }

    pub(crate) fn assoc_vec(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let left = self.mul_vec(&self.mul_vec(x, y), &self.beta.apply_vec(z));
        let right = self.mul_vec(&self.alpha.apply_vec(x), &self.mul_vec(y, z));
        sub_vectors(&left, &right)
    }

    fn check_element(&self, x: &Element) -> Result<()> {
        if x.coords.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in a {}-dimensional algebra",
                x.coords.len(),
                self.dim
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(Element::new(self.mul_vec(&x.coords, &y.coords)))
    }

    /// `mu(mu(x, y), beta z) - mu(alpha x, mu(y, z))`.
    pub fn associator(&self, x: &Element, y: &Element, z: &Element) -> Result<Element> {
        self.check_element(x)?;
        self.check_element(y)?;
        self.check_element(z)?;
        Ok(Element::new(self.assoc_vec(&x.coords, &y.coords, &z.coords)))
    }

    /// Re-expresses all data over a context extending the current one.
    pub fn lift(&self, ctx: &Arc<ParameterContext>) -> Result<Self> {
        BiHomAlgebra::new(
            self.label.clone(),
            self.dim,
            self.mu.iter().map(|x| Ok(x.lift(ctx)?)).collect::<Result<_>>()?,
            self.alpha.lift(ctx)?,
            self.beta.lift(ctx)?,
        )
    }

    /// Substitutes rational values for every parameter.
    pub fn specialize(&self, point: &BTreeMap<String, BigRational>) -> Result<Self> {
        let eval = |x: &Scalar| -> Result<Scalar> { Ok(Scalar::Rat(x.eval(point)?)) };
        BiHomAlgebra::new(
            self.label.clone(),
            self.dim,
            self.mu.iter().map(eval).collect::<Result<_>>()?,
            self.alpha.map_entries(eval)?,
            self.beta.map_entries(eval)?,
        )
    }

    /// Twist commutation and multiplicativity of alpha and beta.
    pub fn validate(&self) -> CheckReport {
        let mut report = CheckReport::new("validate", "basis");
        let commute = self
            .alpha
            .compose(&self.beta)
            .and_then(|ab| Ok((ab, self.beta.compose(&self.alpha)?)));
        report.stats.tuples_examined += 1;
        if let Ok((ab, ba)) = commute {
            if ab != ba {
                report.stats.failing_tuples += 1;
                report.add_witness(Witness {
                    identity: "twists-commute".into(),
                    tuple: vec!["alpha*beta".into(), "beta*alpha".into()],
                    residual: render_vector(&sub_vectors(ab.entries(), ba.entries())),
                });
            }
        }
        for (name, map) in [
            ("alpha-multiplicative", &self.alpha),
            ("beta-multiplicative", &self.beta),
        ] {
            let n = self.dim;
            let out = parallel::search(&[n, n], |t| {
                let lhs = map.apply_vec(&self.product(t[0], t[1]));
                let rhs = self.mul_vec(&map.column(t[0]), &map.column(t[1]));
                sub_vectors(&lhs, &rhs)
            });
            report.absorb(search_report(name, out, &["e", "e"]));
        }
        report
    }

    /// Closure of `h` under mu, alpha and beta.
    pub fn is_subalgebra(&self, h: &Subspace) -> Result<CheckReport> {
        self.subspace_check("subalgebra", h, false)
    }

    /// Subalgebra closure plus absorption of products with all of A.
    pub fn is_two_sided_ideal(&self, h: &Subspace) -> Result<CheckReport> {
        self.subspace_check("two-sided-ideal", h, true)
    }

    fn subspace_check(&self, name: &str, h: &Subspace, ideal: bool) -> Result<CheckReport> {
        if h.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "subspace of a {}-dimensional space in a {}-dimensional algebra",
                h.ambient_dim(),
                self.dim
            )));
        }
        let mut report = CheckReport::new(name, "basis");
        let basis = h.basis();
        let k = basis.len();
        let membership =
            |identity: &str, dims: &[usize], labels: &[&str], f: &(dyn Fn(&[usize]) -> Vec<Scalar> + Sync)| {
                let out = parallel::search(dims, |t| {
                    let v = f(t);
                    if h.contains(&v).expect("lengths agree") {
                        zero_vector(0)
                    } else {
                        v
                    }
                });
                search_report(identity, out, labels)
            };
        report.absorb(membership("closed-under-mu", &[k, k], &["h", "h"], &|t| {
            self.mul_vec(&basis[t[0]], &basis[t[1]])
        }));
        report.absorb(membership("closed-under-alpha", &[k], &["h"], &|t| {
            self.alpha.apply_vec(&basis[t[0]])
        }));
        report.absorb(membership("closed-under-beta", &[k], &["h"], &|t| {
            self.beta.apply_vec(&basis[t[0]])
        }));
        if ideal {
            let n = self.dim;
            report.absorb(membership("left-absorbing", &[n, k], &["e", "h"], &|t| {
                self.mul_vec(&basis_vector(n, t[0]), &basis[t[1]])
            }));
            report.absorb(membership("right-absorbing", &[k, n], &["h", "e"], &|t| {
                self.mul_vec(&basis[t[0]], &basis_vector(n, t[1]))
            }));
        }
        Ok(report)
    }

    /// Short description plus a digest of the structure data.
    pub fn digest(&self) -> String {
        sha256_hex(&self.canonical_text())
    }

    fn canonical_text(&self) -> String {
        let join = |v: &[Scalar]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
        format!(
            "dim={};mu={};alpha={};beta={}",
            self.dim,
            join(&self.mu),
            join(self.alpha.entries()),
            join(self.beta.entries())
        )
    }

    /// Nonzero basis products as `(i, j, coordinates)`.
    pub fn nonzero_products(&self) -> Vec<(usize, usize, Vec<Scalar>)> {
        let n = self.dim;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let v = self.product(i, j);
                if !is_zero_vector(&v) {
                    out.push((i, j, v));
                }
            }
        }
        out
    }
}

/// Renders a coordinate vector as a combination of named basis vectors.
pub fn render_combination(v: &[Scalar], prefix: &str) -> String {
    let mut parts = Vec::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let name = format!("{prefix}{}", k + 1);
        let text = if c.is_one() {
            name
        } else if (-c).is_one() {
            format!("-{name}")
        } else {
            let text = c.to_string();
            if text.contains(' ') {
                format!("({text})*{name}")
            } else {
                format!("{text}*{name}")
            }
        };
        parts.push(text);
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = parts[0].clone();
    for p in &parts[1..] {
        if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

impl fmt::Display for BiHomAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (dim {})", self.label, self.dim)?;
        for (i, j, v) in self.nonzero_products() {
            writeln!(f, "  e{} e{} = {}", i + 1, j + 1, render_combination(&v, "e"))?;
        }
        writeln!(f, "  alpha = {}", self.alpha)?;
        write!(f, "  beta = {}", self.beta)
    }
}

/// Converts a search outcome into a report, labelling tuple slots by prefix.
pub(crate) fn search_report(identity: &str, out: parallel::SearchOutcome, prefixes: &[&str]) -> CheckReport {
    let mut report = CheckReport::new(identity, "basis");
    report.stats.tuples_examined = out.examined;
    report.stats.failing_tuples = out.failing;
    if let Some((tuple, residual)) = out.first {
        report.add_witness(Witness {
            identity: identity.into(),
            tuple: tuple
                .iter()
                .zip(prefixes)
                .map(|(i, p)| format!("{p}{}", i + 1))
                .collect(),
            residual: render_vector(&residual),
        });
    }
    report
}

/// A linear map between the carriers of two algebras.
#[derive(Debug, Clone)]
pub struct AlgebraMorphism {
    source: Arc<BiHomAlgebra>,
    target: Arc<BiHomAlgebra>,
    map: LinearMap,
}

impl AlgebraMorphism {
    pub fn new(source: Arc<BiHomAlgebra>, target: Arc<BiHomAlgebra>, map: LinearMap) -> Result<Self> {
        if map.rows() != target.dim || map.cols() != source.dim {
            return Err(Error::DimensionMismatch(format!(
                "map is {}x{}, expected {}x{}",
                map.rows(),
                map.cols(),
                target.dim,
                source.dim
            )));
        }
        let map = match target.context().or(source.context()) {
            Some(c) if map.context().is_some() => map.lift(c)?,
            _ => map,
        };
        Ok(AlgebraMorphism { source, target, map })
    }

    pub fn source(&self) -> &Arc<BiHomAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BiHomAlgebra> {
        &self.target
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    /// `f mu = mu' (f x f)`, `f alpha = alpha' f` and `f beta = beta' f`.
    pub fn check(&self) -> Result<CheckReport> {
        let (s, t, f) = (&self.source, &self.target, &self.map);
        let mut report = CheckReport::new("morphism", "basis");
        let n = s.dim;
        let out = parallel::search(&[n, n], |p| {
            let lhs = f.apply_vec(&s.product(p[0], p[1]));
            let rhs = t.mul_vec(&f.column(p[0]), &f.column(p[1]));
            sub_vectors(&lhs, &rhs)
        });
        report.absorb(search_report("multiplicative", out, &["e", "e"]));
        for (name, a, b) in [
            ("commutes-with-alpha", &s.alpha, &t.alpha),
            ("commutes-with-beta", &s.beta, &t.beta),
        ] {
            let lhs = f.compose(a)?;
            let rhs = b.compose(f)?;
            let out = parallel::search(&[n], |p| sub_vectors(&lhs.column(p[0]), &rhs.column(p[0])));
            report.absorb(search_report(name, out, &["e"]));
        }
        Ok(report)
    }

    /// Span of `(e_i, f(e_i))` inside the direct sum of source and target.
    pub fn graph_subspace(&self) -> Result<Subspace> {
        let n = self.source.dim;
        let m = self.target.dim;
        let vectors = (0..n)
            .map(|i| {
                let mut v = basis_vector(n, i);
                v.extend(self.map.column(i));
                v
            })
            .collect();
        Subspace::new(n + m, vectors)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_vec(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    /// dim 2, e1 e1 = e2, e2 e1 = e1.
    fn skew() -> BiHomAlgebra {
        BiHomAlgebra::from_products(
            "skew",
            2,
            |i, j| {
                Ok(match (i, j) {
                    (0, 0) => int_vec(&[0, 1]),
                    (1, 0) => int_vec(&[1, 0]),
                    _ => int_vec(&[0, 0]),
                })
            },
            LinearMap::identity(2),
            LinearMap::identity(2),
        )
        .unwrap()
    }

    #[test]
    fn associator_of_skew_algebra_by_hand() {
        let a = skew();
        let e1 = Element::basis(2, 0);
        assert_eq!(a.associator(&e1, &e1, &e1).unwrap(), Element::basis(2, 0));
        assert!(a.multiply(&Element::zero(2), &e1).unwrap().is_zero());
    }

    #[test]
    fn element_length_is_checked() {
        let a = skew();
        let bad = Element::zero(3);
        assert!(matches!(a.multiply(&bad, &bad), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn non_commuting_twists_are_rejected() {
        let swap = LinearMap::from_rows(vec![int_vec(&[0, 1]), int_vec(&[1, 0])]).unwrap();
        let d = LinearMap::diagonal(int_vec(&[1, 2]));
        let err = BiHomAlgebra::new("x", 2, zero_vector(8), swap, d).unwrap_err();
        assert!(matches!(err, Error::NonCommutingMaps(_)));
    }

    #[test]
    fn swap_twist_is_not_multiplicative() {
        let swap = LinearMap::from_rows(vec![int_vec(&[0, 1]), int_vec(&[1, 0])]).unwrap();
        let mut mu = zero_vector(8);
        mu[0] = Scalar::one();
        let a = BiHomAlgebra::new("x", 2, mu, swap, LinearMap::identity(2)).unwrap();
        let r = a.validate();
        assert!(!r.passed());
        let w = r.witness().unwrap();
        assert_eq!(w.identity, "alpha-multiplicative");
        assert_eq!(w.tuple, vec!["e1", "e1"]);
        assert_eq!(w.residual, vec!["0", "1"]);
    }

    #[test]
    fn trivial_subspaces_are_ideals() {
        let a = skew();
        assert!(a.is_two_sided_ideal(&Subspace::whole(2)).unwrap().passed());
        assert!(a.is_two_sided_ideal(&Subspace::zero(2)).unwrap().passed());
        let e2 = Subspace::coordinate_block(2, 1, 1).unwrap();
        assert!(!a.is_two_sided_ideal(&e2).unwrap().passed());
    }

    #[test]
    fn identity_and_zero_are_morphisms() {
        let a = Arc::new(skew());
        let id = AlgebraMorphism::new(a.clone(), a.clone(), LinearMap::identity(2)).unwrap();
        assert!(id.check().unwrap().passed());
        let zero = AlgebraMorphism::new(a.clone(), a.clone(), LinearMap::zero(2, 2)).unwrap();
        assert!(zero.check().unwrap().passed());
        assert_eq!(zero.graph_subspace().unwrap().dim(), 2);
    }

    #[test]
    fn combinations_render_readably() {
        assert_eq!(render_combination(&int_vec(&[1, -2]), "e"), "e1 - 2*e2");
        assert_eq!(render_combination(&int_vec(&[0, 0]), "e"), "0");
    }
}
