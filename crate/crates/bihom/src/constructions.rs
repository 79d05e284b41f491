//! Constructions producing new BiHom-algebras from old ones.

use crate::algebra::BiHomAlgebra;
use crate::checks::{check_alternative, check_bihom_associative, check_rota_baxter, is_regular};
use crate::error::{Error, Result};
use crate::linalg::{add_vectors, LinearMap, Subspace};
use crate::report::CheckMode;
use crate::scalar::Scalar;

fn kron_vec(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(if x.is_zero() || y.is_zero() {
                Scalar::zero()
            } else {
                x * y
            });
        }
    }
    out
}

pub(crate) fn witness_text(report: &crate::report::CheckReport) -> String {
    match report.witness() {
        Some(w) => format!("{} at ({})", w.identity, w.tuple.join(", ")),
        None => report.check_name.clone(),
    }
}

/// Reduction of the ambient space onto the complement of a subspace.
struct Reduction {
    complement: Vec<Vec<Scalar>>,
    /// Rows give coordinates along the complement basis.
    projection: LinearMap,
}

impl Reduction {
    fn new(ideal: &Subspace) -> Result<Self> {
        let n = ideal.ambient_dim();
        let complement = ideal.complement_basis();
        let q = complement.len();
        let mut columns = complement.clone();
        columns.extend(ideal.basis().iter().cloned());
        let change = LinearMap::from_columns(n, columns)?.inverse()?;
        let rows = (0..q).map(|i| change.row(i).to_vec()).collect::<Vec<_>>();
        let projection = if q == 0 {
            LinearMap::zero(0, n)
        } else {
            LinearMap::from_rows(rows)?
        };
        Ok(Reduction { complement, projection })
    }

    fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.projection.apply_vec(v)
    }
}

/// The quotient algebra together with the projection onto it.
pub fn quotient_with_projection(alg: &BiHomAlgebra, ideal: &Subspace) -> Result<(BiHomAlgebra, LinearMap)> {
    let report = alg.is_two_sided_ideal(ideal)?;
    if !report.passed() {
        return Err(Error::NotAnIdeal(witness_text(&report)));
    }
    let red = Reduction::new(ideal)?;
    let q = red.complement.len();
    let reps = &red.complement;
    let induced = |m: &LinearMap| -> Result<LinearMap> {
        let cols = reps.iter().map(|r| red.project(&m.apply_vec(r))).collect();
        LinearMap::from_columns(q, cols)
    };
    let quotient = BiHomAlgebra::from_products(
        format!("{}/I", alg.label()),
        q,
        |i, j| Ok(red.project(&alg.mul_vec(&reps[i], &reps[j]))),
        induced(alg.alpha())?,
        induced(alg.beta())?,
    )?;
    Ok((quotient, red.projection))
}

/// `A / I` with cosets represented by standard basis vectors.
pub fn quotient(alg: &BiHomAlgebra, ideal: &Subspace) -> Result<BiHomAlgebra> {
    Ok(quotient_with_projection(alg, ideal)?.0)
}

/// Block sum with componentwise product and twists.
pub fn direct_sum(a: &BiHomAlgebra, b: &BiHomAlgebra) -> Result<BiHomAlgebra> {
    let (n, m) = (a.dim(), b.dim());
    BiHomAlgebra::from_products(
        format!("{}+{}", a.label(), b.label()),
        n + m,
        |i, j| {
            let mut v = vec![Scalar::zero(); n + m];
            if i < n && j < n {
                v[..n].clone_from_slice(&a.product(i, j));
            } else if i >= n && j >= n {
                v[n..].clone_from_slice(&b.product(i - n, j - n));
            }
            Ok(v)
        },
        a.alpha().direct_sum(b.alpha()),
        a.beta().direct_sum(b.beta()),
    )
}

/// Tensor product of a BiHom-associative and a BiHom-alternative algebra,
/// basis `e_i (x) f_j` at index `i * dim(alt) + j`.
pub fn tensor_product(assoc: &BiHomAlgebra, alt: &BiHomAlgebra) -> Result<BiHomAlgebra> {
    let r = check_bihom_associative(assoc);
    if !r.passed() {
        return Err(Error::PrereqFailed(format!(
            "{} is not BiHom-associative: {}",
            assoc.label(),
            witness_text(&r)
        )));
    }
    let r = check_alternative(alt, CheckMode::Linearized)?;
    if !r.passed() {
        return Err(Error::PrereqFailed(format!(
            "{} is not BiHom-alternative: {}",
            alt.label(),
            witness_text(&r)
        )));
    }
    let m = alt.dim();
    BiHomAlgebra::from_products(
        format!("{}*{}", assoc.label(), alt.label()),
        assoc.dim() * m,
        |p, q| Ok(kron_vec(&assoc.product(p / m, q / m), &alt.product(p % m, q % m))),
        assoc.alpha().kronecker(alt.alpha()),
        assoc.beta().kronecker(alt.beta()),
    )
}

/// Checks that `f` is multiplicative for the product of `alg`.
pub(crate) fn check_multiplicative(alg: &BiHomAlgebra, f: &LinearMap, name: &str) -> Result<()> {
    crate::algebra::check_square(name, f, alg.dim())?;
    let n = alg.dim();
    for i in 0..n {
        for j in 0..n {
            let lhs = f.apply_vec(&alg.product(i, j));
            let rhs = alg.mul_vec(&f.column(i), &f.column(j));
            if lhs != rhs {
                return Err(Error::NotAMorphism(format!("{name} fails on (e{}, e{})", i + 1, j + 1)));
            }
        }
    }
    Ok(())
}

/// Fails unless every pair of the named maps commutes.
pub(crate) fn check_pairwise_commuting(maps: &[(&str, &LinearMap)]) -> Result<()> {
    for (i, (na, a)) in maps.iter().enumerate() {
        for (nb, b) in &maps[i + 1..] {
            if !a.commutes_with(b)? {
                return Err(Error::NonCommutingMaps(format!("{na} and {nb}")));
            }
        }
    }
    Ok(())
}

/// `(A, mu(alpha' x beta'), alpha alpha', beta beta')`.
pub fn yau_twist(alg: &BiHomAlgebra, alpha2: &LinearMap, beta2: &LinearMap) -> Result<BiHomAlgebra> {
    check_multiplicative(alg, alpha2, "alpha'")?;
    check_multiplicative(alg, beta2, "beta'")?;
    check_pairwise_commuting(&[
        ("alpha", alg.alpha()),
        ("beta", alg.beta()),
        ("alpha'", alpha2),
        ("beta'", beta2),
    ])?;
    BiHomAlgebra::from_products(
        format!("{}'", alg.label()),
        alg.dim(),
        |i, j| Ok(alg.mul_vec(&alpha2.column(i), &beta2.column(j))),
        alg.alpha().compose(alpha2)?,
        alg.beta().compose(beta2)?,
    )
}

/// `yau_twist(A, alpha^k, beta^k)`.
pub fn power_twist(alg: &BiHomAlgebra, k: u32) -> Result<BiHomAlgebra> {
    let twisted = yau_twist(alg, &alg.alpha().pow(k)?, &alg.beta().pow(k)?)?;
    Ok(twisted.with_label(format!("{}^({k})", alg.label())))
}

/// `mu_R(x, y) = mu(Rx, y) + mu(x, Ry)` for a weight-zero Rota-Baxter `R`.
pub fn rota_baxter_deformation(alg: &BiHomAlgebra, r: &LinearMap) -> Result<BiHomAlgebra> {
    let report = check_rota_baxter(alg, r, &Scalar::zero())?;
    if !report.passed() {
        return Err(Error::NotRotaBaxter(witness_text(&report.identity)));
    }
    if !report.commutes_alpha || !report.commutes_beta {
        return Err(Error::NonCommutingMaps("R and the twists".into()));
    }
    BiHomAlgebra::from_products(
        format!("{}_R", alg.label()),
        alg.dim(),
        |i, j| {
            let lhs = alg.mul_vec(&r.column(i), &crate::linalg::basis_vector(alg.dim(), j));
            let rhs = alg.mul_vec(&crate::linalg::basis_vector(alg.dim(), i), &r.column(j));
            Ok(add_vectors(&lhs, &rhs))
        },
        alg.alpha().clone(),
        alg.beta().clone(),
    )
}

/// `mu'(x, y) = mu(x, y) + mu(alpha^-1 beta y, beta^-1 alpha x)` on a regular
/// BiHom-associative or BiHom-alternative algebra.
pub fn plus_algebra(alg: &BiHomAlgebra) -> Result<BiHomAlgebra> {
    if !is_regular(alg) {
        return Err(Error::NotRegular(alg.label().to_string()));
    }
    if !check_bihom_associative(alg).passed() && !check_alternative(alg, CheckMode::Linearized)?.passed() {
        return Err(Error::PrereqFailed(format!(
            "{} is neither BiHom-associative nor BiHom-alternative",
            alg.label()
        )));
    }
    let ai_b = alg.alpha().inverse()?.compose(alg.beta())?;
    let bi_a = alg.beta().inverse()?.compose(alg.alpha())?;
    BiHomAlgebra::from_products(
        format!("{}+", alg.label()),
        alg.dim(),
        |i, j| {
            Ok(add_vectors(
                &alg.product(i, j),
                &alg.mul_vec(&ai_b.column(j), &bi_a.column(i)),
            ))
        },
        alg.alpha().clone(),
        alg.beta().clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checks::{check_bihom_commutative, check_bihom_jordan};

    fn int_vec(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    fn unit() -> BiHomAlgebra {
        BiHomAlgebra::untwisted("k", 1, int_vec(&[1])).unwrap()
    }

    fn skew() -> BiHomAlgebra {
        let mut mu = vec![Scalar::zero(); 8];
        mu[1] = Scalar::one();
        mu[4] = Scalar::one();
        BiHomAlgebra::untwisted("skew", 2, mu).unwrap()
    }

    #[test]
    fn sum_and_quotient_by_block() {
        let s = direct_sum(&skew(), &unit()).unwrap();
        assert_eq!(s.dim(), 3);
        assert!(s.product(0, 2).iter().all(Scalar::is_zero));
        let block = Subspace::coordinate_block(3, 2, 1).unwrap();
        assert!(s.is_two_sided_ideal(&block).unwrap().passed());
        let q = quotient(&s, &block).unwrap();
        assert_eq!(q.tensor(), skew().tensor());
    }

    #[test]
    fn trivial_quotients() {
        let a = skew();
        assert_eq!(quotient(&a, &Subspace::zero(2)).unwrap().tensor(), a.tensor());
        assert_eq!(quotient(&a, &Subspace::whole(2)).unwrap().dim(), 0);
        let e2 = Subspace::coordinate_block(2, 1, 1).unwrap();
        assert!(matches!(quotient(&a, &e2), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn tensor_with_unit_is_a_copy() {
        let a = crate::catalog::matrix2x2();
        let t = tensor_product(&unit(), &a).unwrap();
        assert_eq!(t.tensor(), a.tensor());
        assert!(matches!(tensor_product(&skew(), &a), Err(Error::PrereqFailed(_))));
    }

    #[test]
    fn identity_twist_changes_nothing() {
        let a = skew();
        let t = yau_twist(&a, &LinearMap::identity(2), &LinearMap::identity(2)).unwrap();
        assert_eq!(t.tensor(), a.tensor());
        assert_eq!(power_twist(&a, 0).unwrap().tensor(), a.tensor());
    }

    #[test]
    fn non_multiplicative_twist_is_rejected() {
        let d = LinearMap::diagonal(int_vec(&[2, 1]));
        assert!(matches!(yau_twist(&skew(), &d, &d), Err(Error::NotAMorphism(_))));
    }

    #[test]
    fn zero_operator_deforms_to_zero() {
        let a = skew();
        let d = rota_baxter_deformation(&a, &LinearMap::zero(2, 2)).unwrap();
        assert!(d.tensor().iter().all(Scalar::is_zero));
        assert!(matches!(
            rota_baxter_deformation(&a, &LinearMap::identity(2)),
            Err(Error::NotRotaBaxter(_))
        ));
    }

    #[test]
    fn plus_of_untwisted_matrices_is_symmetrized() {
        let m = crate::catalog::matrix2x2();
        let p = plus_algebra(&m).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(p.product(i, j), add_vectors(&m.product(i, j), &m.product(j, i)));
            }
        }
        assert!(check_bihom_commutative(&p).passed());
        assert!(check_bihom_jordan(&p, CheckMode::Linearized).unwrap().passed());
    }
}
