//! Constructions producing BiHom-bimodules, and split null extensions.

use std::sync::Arc;

use crate::algebra::{AlgebraMorphism, BiHomAlgebra};
use crate::bimodule::{
    check_alt_bimodule, check_jordan_bimodule, check_left_special, check_operator_commutativity, check_right_special,
    BiHomBimodule,
};
use crate::checks::{check_alternative, is_regular};
use crate::constructions::{
    check_multiplicative, check_pairwise_commuting, plus_algebra, rota_baxter_deformation, witness_text, yau_twist,
};
use crate::error::{Error, Result};
use crate::linalg::{add_vectors, basis_vector, LinearMap, Subspace};
use crate::report::{CheckMode, CheckReport};
use crate::scalar::Scalar;

/// Flattens `f(i, p)` over algebra index `i` and module index `p` into a left tensor.
fn left_tensor(n: usize, m: usize, f: impl Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(n * m * m);
    for i in 0..n {
        for p in 0..m {
            out.extend(f(&basis_vector(n, i), &basis_vector(m, p)));
        }
    }
    out
}

/// Flattens `f(p, i)` over module index `p` and algebra index `i` into a right tensor.
fn right_tensor(n: usize, m: usize, f: impl Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>) -> Vec<Scalar> {
    let mut out = Vec::with_capacity(n * m * m);
    for p in 0..m {
        for i in 0..n {
            out.extend(f(&basis_vector(m, p), &basis_vector(n, i)));
        }
    }
    out
}

fn require(report: CheckReport, what: &str) -> Result<()> {
    if report.passed() {
        Ok(())
    } else {
        Err(Error::PrereqFailed(format!("{what}: {}", witness_text(&report))))
    }
}

/// `A` acting on itself by `mu` from both sides, with `phi = alpha`, `psi = beta`.
pub fn regular_bimodule(alg: &BiHomAlgebra) -> Result<BiHomBimodule> {
    let n = alg.dim();
    let mu = alg.tensor().to_vec();
    BiHomBimodule::new(
        format!("reg({})", alg.label()),
        Arc::new(alg.clone()),
        n,
        alg.alpha().clone(),
        alg.beta().clone(),
        mu.clone(),
        mu,
    )
}

/// A two-sided ideal `I` acting on by `A`, in the coordinates of `I`'s basis.
pub fn ideal_bimodule(alg: &BiHomAlgebra, ideal: &Subspace) -> Result<BiHomBimodule> {
    let report = alg.is_two_sided_ideal(ideal)?;
    if !report.passed() {
        return Err(Error::NotAnIdeal(witness_text(&report)));
    }
    let (n, k) = (alg.dim(), ideal.dim());
    let basis = ideal.basis();
    let coords =
        |v: &[Scalar]| -> Vec<Scalar> { ideal.coordinates(v).expect("lengths agree").expect("ideal is closed") };
    let embed = |c: &[Scalar]| -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); n];
        for (ci, b) in c.iter().zip(basis) {
            if !ci.is_zero() {
                out = add_vectors(&out, &crate::linalg::scale_vector(ci, b));
            }
        }
        out
    };
    let restrict = |m: &LinearMap| -> Result<LinearMap> {
        LinearMap::from_columns(k, basis.iter().map(|b| coords(&m.apply_vec(b))).collect())
    };
    let left = left_tensor(n, k, |a, c| coords(&alg.mul_vec(a, &embed(c))));
    let right = right_tensor(n, k, |c, a| coords(&alg.mul_vec(&embed(c), a)));
    let (phi, psi) = if k == 0 {
        (LinearMap::zero(0, 0), LinearMap::zero(0, 0))
    } else {
        (restrict(alg.alpha())?, restrict(alg.beta())?)
    };
    BiHomBimodule::new(
        format!("ideal({})", alg.label()),
        Arc::new(alg.clone()),
        k,
        phi,
        psi,
        left,
        right,
    )
}

/// `B` as an `A`-bimodule through a surjective morphism `f: A -> B`.
pub fn bimodule_via_surjection(f: &AlgebraMorphism) -> Result<BiHomBimodule> {
    let report = f.check()?;
    if !report.passed() {
        return Err(Error::NotAMorphism(witness_text(&report)));
    }
    let (a, b) = (f.source(), f.target());
    if f.map().rank() != b.dim() {
        return Err(Error::NotSurjective);
    }
    let (n, m) = (a.dim(), b.dim());
    let map = f.map();
    let left = left_tensor(n, m, |x, y| b.mul_vec(&map.apply_vec(x), y));
    let right = right_tensor(n, m, |y, x| b.mul_vec(y, &map.apply_vec(x)));
    BiHomBimodule::new(
        format!("{} via {}", b.label(), a.label()),
        a.clone(),
        m,
        b.alpha().clone(),
        b.beta().clone(),
        left,
        right,
    )
}

/// Same carrier and twists, actions precomposed with `g` on the left slot
/// and `h` on the right slot.
fn precompose(v: &BiHomBimodule, label: String, g: &LinearMap, h: &LinearMap) -> Result<BiHomBimodule> {
    let (n, m) = (v.host().dim(), v.mdim());
    let left = left_tensor(n, m, |a, x| v.l(&g.apply_vec(a), x));
    let right = right_tensor(n, m, |x, a| v.r(x, &h.apply_vec(a)));
    BiHomBimodule::new(
        label,
        v.host().clone(),
        m,
        v.phi().clone(),
        v.psi().clone(),
        left,
        right,
    )
}

fn twist_power(host: &BiHomAlgebra, n: u32, m: u32) -> Result<LinearMap> {
    host.alpha().pow(n)?.compose(&host.beta().pow(m)?)
}

/// Actions precomposed with `alpha^n beta^m` on the algebra slot of both sides.
pub fn shift_bimodule(v: &BiHomBimodule, n: u32, m: u32) -> Result<BiHomBimodule> {
    require(
        check_alt_bimodule(v, CheckMode::Linearized)?,
        "not an alternative bimodule",
    )?;
    let g = twist_power(v.host(), n, m)?;
    precompose(v, format!("{}^({n},{m})", v.label()), &g, &g)
}

/// Bimodule over `yau_twist(A, alpha', beta')` with actions
/// `rho_l(alpha' (x) psi')`, `rho_r(phi' (x) beta')` and twists `phi phi'`, `psi psi'`.
pub fn twist_bimodule(
    v: &BiHomBimodule,
    alpha2: &LinearMap,
    beta2: &LinearMap,
    phi2: &LinearMap,
    psi2: &LinearMap,
) -> Result<BiHomBimodule> {
    let host = v.host();
    let (n, m) = (host.dim(), v.mdim());
    crate::algebra::check_square("phi'", phi2, m)?;
    crate::algebra::check_square("psi'", psi2, m)?;
    check_multiplicative(host, alpha2, "alpha'")?;
    check_multiplicative(host, beta2, "beta'")?;
    check_pairwise_commuting(&[
        ("alpha", host.alpha()),
        ("beta", host.beta()),
        ("alpha'", alpha2),
        ("beta'", beta2),
    ])?;
    check_pairwise_commuting(&[("phi", v.phi()), ("psi", v.psi()), ("phi'", phi2), ("psi'", psi2)])?;
    check_intertwining(v, alpha2, beta2, phi2, psi2)?;
    let twisted = Arc::new(yau_twist(host, alpha2, beta2)?);
    let left = left_tensor(n, m, |a, x| v.l(&alpha2.apply_vec(a), &psi2.apply_vec(x)));
    let right = right_tensor(n, m, |x, a| v.r(&phi2.apply_vec(x), &beta2.apply_vec(a)));
    BiHomBimodule::new(
        format!("{}'", v.label()),
        twisted,
        m,
        v.phi().compose(phi2)?,
        v.psi().compose(psi2)?,
        left,
        right,
    )
}

/// `phi' rho_l = rho_l(alpha' (x) phi')`, `psi' rho_l = rho_l(beta' (x) psi')`
/// and the mirrored conditions for `rho_r`, on every basis pair.
fn check_intertwining(
    v: &BiHomBimodule,
    alpha2: &LinearMap,
    beta2: &LinearMap,
    phi2: &LinearMap,
    psi2: &LinearMap,
) -> Result<()> {
    let (n, m) = (v.host().dim(), v.mdim());
    for i in 0..n {
        let a = basis_vector(n, i);
        for p in 0..m {
            let x = basis_vector(m, p);
            let conditions = [
                ("phi' rho_l", phi2, alpha2, true),
                ("psi' rho_l", psi2, beta2, true),
                ("phi' rho_r", phi2, alpha2, false),
                ("psi' rho_r", psi2, beta2, false),
            ];
            for (name, f, g, is_left) in conditions {
                let ok = if is_left {
                    f.apply_vec(&v.l(&a, &x)) == v.l(&g.apply_vec(&a), &f.apply_vec(&x))
                } else {
                    f.apply_vec(&v.r(&x, &a)) == v.r(&f.apply_vec(&x), &g.apply_vec(&a))
                };
                if !ok {
                    return Err(Error::IntertwiningFailed(format!("{name} at (e{}, v{})", i + 1, p + 1)));
                }
            }
        }
    }
    Ok(())
}

/// Actions `rho_l(alpha^(n+r) beta^m (x) psi^q)` and `rho_r(phi^p (x) alpha^n beta^(m+s))`
/// over `yau_twist(A, alpha^r, beta^s)`, with twists `phi^(p+1)`, `psi^(q+1)`.
pub fn twist_bimodule_powers(
    v: &BiHomBimodule,
    n: u32,
    m: u32,
    p: u32,
    q: u32,
    r: u32,
    s: u32,
) -> Result<BiHomBimodule> {
    let shifted = shift_bimodule(v, n, m)?;
    let host = v.host();
    twist_bimodule(
        &shifted,
        &host.alpha().pow(r)?,
        &host.beta().pow(s)?,
        &v.phi().pow(p)?,
        &v.psi().pow(q)?,
    )
    .map(|b| b.with_label(format!("{}^({n},{m},{p},{q},{r},{s})", v.label())))
}

/// Actions `rho_l(R (x) Id)`, `rho_r(Id (x) R)` over `rota_baxter_deformation(A, R)`.
pub fn rb_twist_bimodule(v: &BiHomBimodule, r: &LinearMap) -> Result<BiHomBimodule> {
    let host = Arc::new(rota_baxter_deformation(v.host(), r)?);
    let (n, m) = (host.dim(), v.mdim());
    let left = left_tensor(n, m, |a, x| v.l(&r.apply_vec(a), x));
    let right = right_tensor(n, m, |x, a| v.r(x, &r.apply_vec(a)));
    BiHomBimodule::new(
        format!("{}_R", v.label()),
        host,
        m,
        v.phi().clone(),
        v.psi().clone(),
        left,
        right,
    )
}

/// Actions `rho_l(alpha^n (x) Id)` and `rho_r(Id (x) beta^n)` on a Jordan bimodule.
pub fn jordan_shift_bimodule(v: &BiHomBimodule, n: u32) -> Result<BiHomBimodule> {
    require(check_jordan_bimodule(v)?, "not a Jordan bimodule")?;
    let host = v.host();
    precompose(
        v,
        format!("{}^({n})", v.label()),
        &host.alpha().pow(n)?,
        &host.beta().pow(n)?,
    )
}

fn require_classical(v: &BiHomBimodule) -> Result<()> {
    let host = v.host();
    let identity = |m: &LinearMap| m.is_identity();
    if !(identity(host.alpha()) && identity(host.beta()) && identity(v.phi()) && identity(v.psi())) {
        return Err(Error::PrereqFailed(format!(
            "{} does not have identity twists",
            v.label()
        )));
    }
    require(check_jordan_bimodule(v)?, "not a Jordan bimodule")
}

/// Deforms a Jordan bimodule with identity twists: actions `rho_l(alpha (x) psi)`,
/// `rho_r(phi (x) beta)` over `(A, mu(alpha (x) beta), alpha, beta)`.
pub fn jordan_deform_bimodule(
    v: &BiHomBimodule,
    alpha: &LinearMap,
    beta: &LinearMap,
    phi: &LinearMap,
    psi: &LinearMap,
) -> Result<BiHomBimodule> {
    deform(v, alpha, beta, phi, psi, 0)
}

/// The deformation with actions `rho_l(alpha^(n+1) (x) psi)` and `rho_r(phi (x) beta^(n+1))`.
pub fn jordan_deform_bimodule_powers(
    v: &BiHomBimodule,
    alpha: &LinearMap,
    beta: &LinearMap,
    phi: &LinearMap,
    psi: &LinearMap,
    n: u32,
) -> Result<BiHomBimodule> {
    deform(v, alpha, beta, phi, psi, n)
}

fn deform(
    v: &BiHomBimodule,
    alpha: &LinearMap,
    beta: &LinearMap,
    phi: &LinearMap,
    psi: &LinearMap,
    n: u32,
) -> Result<BiHomBimodule> {
    require_classical(v)?;
    let host = v.host();
    let m = v.mdim();
    crate::algebra::check_square("phi", phi, m)?;
    crate::algebra::check_square("psi", psi, m)?;
    check_multiplicative(host, alpha, "alpha")?;
    check_multiplicative(host, beta, "beta")?;
    check_intertwining(v, alpha, beta, phi, psi)?;
    let deformed = Arc::new(yau_twist(host, alpha, beta)?.with_label(format!("{}_ab", host.label())));
    let (left_map, right_map) = (alpha.pow(n + 1)?, beta.pow(n + 1)?);
    let dim = host.dim();
    let left = left_tensor(dim, m, |a, x| v.l(&left_map.apply_vec(a), &psi.apply_vec(x)));
    let right = right_tensor(dim, m, |x, a| v.r(&phi.apply_vec(x), &right_map.apply_vec(a)));
    let label = if n == 0 {
        format!("{}_ab", v.label())
    } else {
        format!("{}_ab^({n})", v.label())
    };
    BiHomBimodule::new(label, deformed, m, phi.clone(), psi.clone(), left, right)
}

/// The same carrier and actions over the plus algebra of the host.
pub fn over_plus(v: &BiHomBimodule) -> Result<BiHomBimodule> {
    let host = Arc::new(plus_algebra(v.host())?);
    BiHomBimodule::new(
        format!("{}+", v.label()),
        host,
        v.mdim(),
        v.phi().clone(),
        v.psi().clone(),
        v.left_tensor().to_vec(),
        v.right_tensor().to_vec(),
    )
}

/// Combines a left special action `rho_1` (the left action of `pair`) and a
/// right special action `rho_2` (its right action) into a Jordan bimodule:
/// `rho_l(x, v) = rho_1(x, v) + rho_2(psi phi^-1 v, alpha beta^-1 x)` and
/// `rho_r(v, x) = rho_1(beta alpha^-1 x, phi psi^-1 v) + rho_2(v, x)`.
pub fn special_pair_to_jordan_bimodule(pair: &BiHomBimodule) -> Result<BiHomBimodule> {
    let host = pair.host();
    if !is_regular(host) {
        return Err(Error::NotRegular(host.label().to_string()));
    }
    let (phi_inv, psi_inv) = match (pair.phi().inverse(), pair.psi().inverse()) {
        (Ok(a), Ok(b)) => (a, b),
        _ => return Err(Error::PhiPsiNotInvertible),
    };
    require(check_left_special(pair)?, "left action is not special")?;
    require(check_right_special(pair), "right action is not special")?;
    require(check_operator_commutativity(pair), "actions do not commute")?;
    let alpha_beta_inv = host.alpha().compose(&host.beta().inverse()?)?;
    let beta_alpha_inv = host.beta().compose(&host.alpha().inverse()?)?;
    let psi_phi_inv = pair.psi().compose(&phi_inv)?;
    let phi_psi_inv = pair.phi().compose(&psi_inv)?;
    let (n, m) = (host.dim(), pair.mdim());
    let left = left_tensor(n, m, |x, v| {
        add_vectors(
            &pair.l(x, v),
            &pair.r(&psi_phi_inv.apply_vec(v), &alpha_beta_inv.apply_vec(x)),
        )
    });
    let right = right_tensor(n, m, |v, x| {
        add_vectors(
            &pair.l(&beta_alpha_inv.apply_vec(x), &phi_psi_inv.apply_vec(v)),
            &pair.r(v, x),
        )
    });
    BiHomBimodule::new(
        format!("jordan({})", pair.label()),
        host.clone(),
        m,
        pair.phi().clone(),
        pair.psi().clone(),
        left,
        right,
    )
}

/// Which closure theorem a split null extension invokes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    Alternative,
    Jordan,
}

/// `A (+) V` with `mu~(a + m, b + n) = mu(a, b) + rho_l(a, n) + rho_r(m, b)`,
/// together with its canonical maps.
#[derive(Debug, Clone)]
pub struct SplitExtension {
    pub theorem: Theorem,
    pub bimodule: Arc<BiHomBimodule>,
    pub algebra: Arc<BiHomAlgebra>,
    /// `pi(a, v) = a`.
    pub projection: AlgebraMorphism,
    /// `sigma(a) = (a, 0)`.
    pub section: AlgebraMorphism,
    /// `i(V)`, the last `m` coordinates.
    pub module_ideal: Subspace,
}

/// The split null extension of the host of `v` by `v`, after checking the
/// hypotheses of the selected theorem.
pub fn split_null_extension(v: &BiHomBimodule, theorem: Theorem) -> Result<SplitExtension> {
    let host = v.host().clone();
    match theorem {
        Theorem::Alternative => {
            require(
                check_alternative(&host, CheckMode::Linearized)?,
                "host is not alternative",
            )?;
            require(
                check_alt_bimodule(v, CheckMode::Linearized)?,
                "not an alternative bimodule",
            )?;
        }
        Theorem::Jordan => require(check_jordan_bimodule(v)?, "not a Jordan bimodule")?,
    }
    let (n, m) = (host.dim(), v.mdim());
    let algebra = BiHomAlgebra::from_products(
        format!("{}+{}", host.label(), v.label()),
        n + m,
        |i, j| {
            let mut out = vec![Scalar::zero(); n + m];
            match (i < n, j < n) {
                (true, true) => out[..n].clone_from_slice(&host.product(i, j)),
                (true, false) => out[n..].clone_from_slice(&v.left_action(i, j - n)),
                (false, true) => out[n..].clone_from_slice(&v.right_action(i - n, j)),
                (false, false) => {}
            }
            Ok(out)
        },
        host.alpha().direct_sum(v.phi()),
        host.beta().direct_sum(v.psi()),
    )?;
    let algebra = Arc::new(algebra);
    let projection = LinearMap::from_columns(
        n,
        (0..n + m)
            .map(|c| {
                if c < n {
                    basis_vector(n, c)
                } else {
                    vec![Scalar::zero(); n]
                }
            })
            .collect(),
    )?;
    let section = LinearMap::from_columns(n + m, (0..n).map(|c| basis_vector(n + m, c)).collect())?;
    Ok(SplitExtension {
        theorem,
        bimodule: Arc::new(v.clone()),
        projection: AlgebraMorphism::new(algebra.clone(), host.clone(), projection)?,
        section: AlgebraMorphism::new(host, algebra.clone(), section)?,
        module_ideal: Subspace::coordinate_block(n + m, n, m)?,
        algebra,
    })
}

impl SplitExtension {
    /// The bimodule on `i(V)` with `x . v = mu~(sigma(x), i(v))` and
    /// `v . x = mu~(i(v), sigma(x))`.
    pub fn induced_bimodule(&self) -> Result<BiHomBimodule> {
        let host = self.projection.target();
        let (n, m) = (host.dim(), self.bimodule.mdim());
        let e = &self.algebra;
        let sigma = self.section.map();
        let include = |v: &[Scalar]| -> Vec<Scalar> {
            let mut out = vec![Scalar::zero(); n];
            out.extend_from_slice(v);
            out
        };
        let left = left_tensor(n, m, |x, v| e.mul_vec(&sigma.apply_vec(x), &include(v))[n..].to_vec());
        let right = right_tensor(n, m, |v, x| e.mul_vec(&include(v), &sigma.apply_vec(x))[n..].to_vec());
        let restrict = |f: &LinearMap| -> Result<LinearMap> {
            LinearMap::from_columns(m, (0..m).map(|p| f.column(n + p)[n..].to_vec()).collect())
        };
        BiHomBimodule::new(
            format!("i({})", self.bimodule.label()),
            host.clone(),
            m,
            restrict(e.alpha())?,
            restrict(e.beta())?,
            left,
            right,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bimodule::{check_assoc_bimodule, BimoduleMorphism};
    use crate::checks::{check_bihom_commutative, check_bihom_jordan};
    use crate::constructions::{direct_sum, quotient_with_projection};

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::int(x)).collect()
    }

    /// `e1 e1 = e1`, `e1 e2 = e2 e1 = e2`: the unital algebra `k[t]/t^2`.
    fn dual_numbers() -> BiHomAlgebra {
        let mut mu = vec![Scalar::zero(); 8];
        mu[0] = Scalar::one();
        mu[3] = Scalar::one();
        mu[5] = Scalar::one();
        BiHomAlgebra::untwisted("dual", 2, mu).unwrap()
    }

    fn zero_algebra(n: usize) -> BiHomAlgebra {
        BiHomAlgebra::untwisted("zero", n, vec![Scalar::zero(); n * n * n]).unwrap()
    }

    #[test]
    fn regular_bimodule_of_zero_algebra_is_zero() {
        let v = regular_bimodule(&zero_algebra(2)).unwrap();
        assert!(v.left_tensor().iter().chain(v.right_tensor()).all(Scalar::is_zero));
        assert!(check_assoc_bimodule(&v).passed());
        assert!(check_alt_bimodule(&v, CheckMode::Linearized).unwrap().passed());
        assert!(check_jordan_bimodule(&v).unwrap().passed());
    }

    #[test]
    fn ideal_block_of_a_sum_is_a_bimodule() {
        let s = direct_sum(&dual_numbers(), &dual_numbers()).unwrap();
        let block = Subspace::coordinate_block(4, 2, 2).unwrap();
        let v = ideal_bimodule(&s, &block).unwrap();
        assert_eq!(v.mdim(), 2);
        assert!(check_alt_bimodule(&v, CheckMode::Linearized).unwrap().passed());
        assert!(check_assoc_bimodule(&v).passed());
        let not_ideal = Subspace::spanned_by(4, vec![ints(&[1, 0, 1, 0])]).unwrap();
        assert!(matches!(ideal_bimodule(&s, &not_ideal), Err(Error::NotAnIdeal(_))));
    }

    #[test]
    fn identity_surjection_gives_the_regular_bimodule() {
        let a = Arc::new(dual_numbers());
        let f = AlgebraMorphism::new(a.clone(), a.clone(), LinearMap::identity(2)).unwrap();
        let v = bimodule_via_surjection(&f).unwrap();
        assert_eq!(v, regular_bimodule(&a).unwrap());
        let zero = AlgebraMorphism::new(a.clone(), a, LinearMap::zero(2, 2)).unwrap();
        assert!(matches!(bimodule_via_surjection(&zero), Err(Error::NotSurjective)));
    }

    #[test]
    fn quotient_projection_gives_an_alternative_bimodule() {
        let a = dual_numbers();
        let ideal = Subspace::coordinate_block(2, 1, 1).unwrap();
        let (q, pi) = quotient_with_projection(&a, &ideal).unwrap();
        let f = AlgebraMorphism::new(Arc::new(a), Arc::new(q), pi).unwrap();
        let v = bimodule_via_surjection(&f).unwrap();
        assert!(check_alt_bimodule(&v, CheckMode::Linearized).unwrap().passed());
    }

    #[test]
    fn zero_shift_is_the_identity() {
        let v = regular_bimodule(&dual_numbers()).unwrap();
        assert_eq!(shift_bimodule(&v, 0, 0).unwrap(), v);
        assert_eq!(jordan_shift_bimodule(&v, 0).unwrap(), v);
    }

    #[test]
    fn identity_twist_changes_nothing() {
        let v = regular_bimodule(&dual_numbers()).unwrap();
        let id = LinearMap::identity(2);
        let t = twist_bimodule(&v, &id, &id, &id, &id).unwrap();
        assert_eq!(t, v);
        assert_eq!(*t.host(), *v.host());
    }

    #[test]
    fn non_intertwining_module_maps_are_rejected() {
        let v = regular_bimodule(&dual_numbers()).unwrap();
        let id = LinearMap::identity(2);
        let scale = LinearMap::diagonal(ints(&[2, 1]));
        assert!(matches!(
            twist_bimodule(&v, &id, &id, &scale, &id),
            Err(Error::IntertwiningFailed(_))
        ));
    }

    #[test]
    fn zero_rota_baxter_operator_kills_the_actions() {
        let v = regular_bimodule(&dual_numbers()).unwrap();
        let t = rb_twist_bimodule(&v, &LinearMap::zero(2, 2)).unwrap();
        assert!(t.left_tensor().iter().chain(t.right_tensor()).all(Scalar::is_zero));
        assert!(t.host().tensor().iter().all(Scalar::is_zero));
    }

    #[test]
    fn rota_baxter_twist_matches_the_tensor_formula() {
        let v = regular_bimodule(&dual_numbers()).unwrap();
        let r = LinearMap::diagonal(ints(&[0, 1]));
        // R = diag(0, 1) is not Rota-Baxter for the unital algebra.
        assert!(matches!(rb_twist_bimodule(&v, &r), Err(Error::NotRotaBaxter(_))));
        let mut mu = vec![Scalar::zero(); 8];
        mu[1] = Scalar::one();
        let toy = BiHomAlgebra::untwisted("toy", 2, mu).unwrap();
        let v = regular_bimodule(&toy).unwrap();
        let t = rb_twist_bimodule(&v, &r).unwrap();
        for i in 0..2 {
            for p in 0..2 {
                let expected: Vec<Scalar> = (0..2)
                    .map(|q| (0..2).fold(Scalar::zero(), |acc, j| &acc + &(r.get(j, i) * &v.left_action(j, p)[q])))
                    .collect();
                assert_eq!(t.left_action(i, p), expected);
            }
        }
        assert!(check_alt_bimodule(&t, CheckMode::Linearized).unwrap().passed());
    }

    #[test]
    fn special_pair_with_identity_twists_symmetrizes() {
        let a = dual_numbers();
        let pair = over_plus(&regular_bimodule(&a).unwrap()).unwrap();
        let j = special_pair_to_jordan_bimodule(&pair).unwrap();
        for i in 0..2 {
            for p in 0..2 {
                let sym = add_vectors(&a.product(i, p), &a.product(p, i));
                assert_eq!(j.left_action(i, p), sym);
                assert_eq!(j.right_action(p, i), sym);
            }
        }
        assert!(check_jordan_bimodule(&j).unwrap().passed());
    }

    #[test]
    fn split_extension_round_trip() {
        let v = regular_bimodule(&dual_numbers()).unwrap();
        let ext = split_null_extension(&v, Theorem::Alternative).unwrap();
        assert_eq!(ext.algebra.dim(), 4);
        assert!(check_alternative(&ext.algebra, CheckMode::Linearized).unwrap().passed());
        assert!(ext.projection.check().unwrap().passed());
        assert!(ext.section.check().unwrap().passed());
        assert!(ext.projection.map().compose(ext.section.map()).unwrap().is_identity());
        assert!(ext.algebra.is_two_sided_ideal(&ext.module_ideal).unwrap().passed());
        assert_eq!(ext.induced_bimodule().unwrap(), v);
        let (q, _) = quotient_with_projection(&ext.algebra, &ext.module_ideal).unwrap();
        assert_eq!(q.tensor(), v.host().tensor());
        let jordan = split_null_extension(&v, Theorem::Jordan).unwrap();
        assert!(check_bihom_commutative(&jordan.algebra).passed());
        assert!(check_bihom_jordan(&jordan.algebra, CheckMode::Linearized)
            .unwrap()
            .passed());
    }

    #[test]
    fn distinct_shifts_are_not_isomorphic_through_the_identity() {
        // alpha = diag(1, -1) is an automorphism of the dual numbers.
        let flip = LinearMap::diagonal(ints(&[1, -1]));
        let a = yau_twist(&dual_numbers(), &flip, &LinearMap::identity(2)).unwrap();
        let v = regular_bimodule(&a).unwrap();
        let s0 = Arc::new(shift_bimodule(&v, 0, 0).unwrap());
        let s1 = Arc::new(shift_bimodule(&v, 1, 0).unwrap());
        let m = BimoduleMorphism::new(s0, s1, LinearMap::identity(2)).unwrap();
        let report = m.check();
        assert!(!report.passed());
        assert_eq!(report.witness().unwrap().identity, "left-equivariant");
    }
}
