//! BiHom-bimodules given by action tensors, and their identity checks.
//!
//! The left action is stored algebra-first, `e_i . v_p = sum_q l[(i*m+p)*m+q] v_q`,
//! and the right action module-first, `v_p . e_i = sum_q r[(p*n+i)*m+q] v_q`.

use std::fmt;
use std::sync::Arc;

use crate::algebra::{
    check_square, contract, lift_all, render_combination, sha256_hex, sparse_table, BiHomAlgebra, Element, SparseTable,
};
use crate::checks::{
    add3, check_bihom_commutative, check_bihom_jordan, plus, run_exhaustive, run_sampled, run_symbolic, AlgOps,
    GenericPoint, Identity, Slot, V, X, Y, Z,
};
use crate::error::{Error, Result};
use crate::linalg::{basis_vector, common_context, is_zero_vector, sub_vectors, LinearMap};
use crate::report::{CheckMode, CheckReport};
use crate::scalar::{ParameterContext, Scalar};

/// `(V, phi, psi, rho_l, rho_r)` over a host algebra.
#[derive(Debug, Clone)]
pub struct BiHomBimodule {
    label: String,
    host: Arc<BiHomAlgebra>,
    mdim: usize,
    phi: LinearMap,
    psi: LinearMap,
    left: Vec<Scalar>,
    right: Vec<Scalar>,
    ltable: SparseTable,
    rtable: SparseTable,
    ctx: Option<Arc<ParameterContext>>,
}

impl PartialEq for BiHomBimodule {
    fn eq(&self, other: &Self) -> bool {
        *self.host == *other.host
            && self.mdim == other.mdim
            && self.phi == other.phi
            && self.psi == other.psi
            && self.left == other.left
            && self.right == other.right
    }
}

impl BiHomBimodule {
    /// Builds a bimodule and verifies that phi and psi commute and that both
    /// actions are morphisms of BiHom-modules.
    pub fn new(
        label: impl Into<String>,
        host: Arc<BiHomAlgebra>,
        mdim: usize,
        phi: LinearMap,
        psi: LinearMap,
        left: Vec<Scalar>,
        right: Vec<Scalar>,
    ) -> Result<Self> {
        let n = host.dim();
        let m = mdim;
        for (name, t) in [("left action", &left), ("right action", &right)] {
            if t.len() != n * m * m {
                return Err(Error::DimensionMismatch(format!(
                    "{name} has {} entries, expected {}",
                    t.len(),
                    n * m * m
                )));
            }
        }
        check_square("phi", &phi, m)?;
        check_square("psi", &psi, m)?;
        let module_ctx = common_context(left.iter().chain(&right).chain(phi.entries()).chain(psi.entries()));
        let ctx = match (host.context(), module_ctx) {
            (Some(h), Some(c)) => Some(if c.len() > h.len() { c } else { h.clone() }),
            (h, c) => h.cloned().or(c),
        };
        let host = match &ctx {
            Some(c) if host.context() != Some(c) => Arc::new(host.lift(c)?),
            _ => host,
        };
        let (phi, psi) = match &ctx {
            Some(c) => (phi.lift(c)?, psi.lift(c)?),
            None => (phi, psi),
        };
        let left = lift_all(&left, &ctx)?;
        let right = lift_all(&right, &ctx)?;
        if !phi.commutes_with(&psi)? {
            return Err(Error::NonCommutingMaps("phi and psi".into()));
        }
        let out = BiHomBimodule {
            label: label.into(),
            ltable: sparse_table(&left, n * m, m),
            rtable: sparse_table(&right, m * n, m),
            host,
            mdim,
            phi,
            psi,
            left,
            right,
            ctx,
        };
        out.check_structure_maps()?;
        Ok(out)
    }

    fn check_structure_maps(&self) -> Result<()> {
        let (n, m) = (self.host.dim(), self.mdim);
        let (alpha, beta) = (self.host.alpha(), self.host.beta());
        for i in 0..n {
            let a = basis_vector(n, i);
            for p in 0..m {
                let v = basis_vector(m, p);
                let conditions = [
                    ("phi(a.v) = alpha(a).phi(v)", &self.phi, alpha, true),
                    ("psi(a.v) = beta(a).psi(v)", &self.psi, beta, true),
                    ("phi(v.a) = phi(v).alpha(a)", &self.phi, alpha, false),
                    ("psi(v.a) = psi(v).beta(a)", &self.psi, beta, false),
                ];
                for (name, f, g, is_left) in conditions {
                    let (lhs, rhs) = if is_left {
                        (f.apply_vec(&self.l(&a, &v)), self.l(&g.apply_vec(&a), &f.apply_vec(&v)))
                    } else {
                        (f.apply_vec(&self.r(&v, &a)), self.r(&f.apply_vec(&v), &g.apply_vec(&a)))
                    };
                    if lhs != rhs {
                        return Err(Error::InvalidBimodule(format!(
                            "{name} fails at (e{}, v{})",
                            i + 1,
                            p + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn host(&self) -> &Arc<BiHomAlgebra> {
        &self.host
    }

    pub fn mdim(&self) -> usize {
        self.mdim
    }

    pub fn phi(&self) -> &LinearMap {
        &self.phi
    }

    pub fn psi(&self) -> &LinearMap {
        &self.psi
    }

    /// Flat left action tensor indexed `(i * m + p) * m + q`.
    pub fn left_tensor(&self) -> &[Scalar] {
        &self.left
    }

    /// Flat right action tensor indexed `(p * n + i) * m + q`.
    pub fn right_tensor(&self) -> &[Scalar] {
        &self.right
    }

    pub fn context(&self) -> Option<&Arc<ParameterContext>> {
        self.ctx.as_ref()
    }

    /// Coordinates of `e_i . v_p`.
    pub fn left_action(&self, i: usize, p: usize) -> Vec<Scalar> {
        let start = (i * self.mdim + p) * self.mdim;
        self.left[start..start + self.mdim].to_vec()
    }

    /// Coordinates of `v_p . e_i`.
    pub fn right_action(&self, p: usize, i: usize) -> Vec<Scalar> {
        let start = (p * self.host.dim() + i) * self.mdim;
        self.right[start..start + self.mdim].to_vec()
    }

    pub(crate) fn l(&self, a: &[Scalar], v: &[Scalar]) -> Vec<Scalar> {
        contract(&self.ltable, a, v, self.mdim)
    }

    pub(crate) fn r(&self, v: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        contract(&self.rtable, v, a, self.mdim)
    }

    fn check_lengths(&self, a: &Element, v: &Element) -> Result<()> {
        if a.coords().len() != self.host.dim() || v.coords().len() != self.mdim {
            return Err(Error::DimensionMismatch("action arguments".into()));
        }
        Ok(())
    }

    pub fn act_left(&self, a: &Element, v: &Element) -> Result<Element> {
        self.check_lengths(a, v)?;
        Ok(Element::new(self.l(a.coords(), v.coords())))
    }

    pub fn act_right(&self, v: &Element, a: &Element) -> Result<Element> {
        self.check_lengths(a, v)?;
        Ok(Element::new(self.r(v.coords(), a.coords())))
    }

    /// Re-expresses all data over a context extending the current one.
    pub fn lift(&self, ctx: &Arc<ParameterContext>) -> Result<Self> {
        let lift = |xs: &[Scalar]| xs.iter().map(|x| Ok(x.lift(ctx)?)).collect::<Result<Vec<_>>>();
        BiHomBimodule::new(
            self.label.clone(),
            Arc::new(self.host.lift(ctx)?),
            self.mdim,
            self.phi.lift(ctx)?,
            self.psi.lift(ctx)?,
            lift(&self.left)?,
            lift(&self.right)?,
        )
    }

    pub fn digest(&self) -> String {
        let join = |v: &[Scalar]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(",");
        sha256_hex(&format!(
            "host={};mdim={};phi={};psi={};left={};right={}",
            self.host.digest(),
            self.mdim,
            join(self.phi.entries()),
            join(self.psi.entries()),
            join(&self.left),
            join(&self.right)
        ))
    }

    /// Nonzero actions `e_i . v_p` as `(i, p, coordinates)`.
    pub fn nonzero_left_actions(&self) -> Vec<(usize, usize, Vec<Scalar>)> {
        let mut out = Vec::new();
        for i in 0..self.host.dim() {
            for p in 0..self.mdim {
                let v = self.left_action(i, p);
                if !is_zero_vector(&v) {
                    out.push((i, p, v));
                }
            }
        }
        out
    }

    /// Nonzero actions `v_p . e_i` as `(p, i, coordinates)`.
    pub fn nonzero_right_actions(&self) -> Vec<(usize, usize, Vec<Scalar>)> {
        let mut out = Vec::new();
        for p in 0..self.mdim {
            for i in 0..self.host.dim() {
                let v = self.right_action(p, i);
                if !is_zero_vector(&v) {
                    out.push((p, i, v));
                }
            }
        }
        out
    }
}

impl fmt::Display for BiHomBimodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (dim {} over {})", self.label, self.mdim, self.host.label())?;
        for (i, p, v) in self.nonzero_left_actions() {
            writeln!(f, "  e{} . v{} = {}", i + 1, p + 1, render_combination(&v, "v"))?;
        }
        for (p, i, v) in self.nonzero_right_actions() {
            writeln!(f, "  v{} . e{} = {}", p + 1, i + 1, render_combination(&v, "v"))?;
        }
        writeln!(f, "  phi = {}", self.phi)?;
        write!(f, "  psi = {}", self.psi)
    }
}

/// Argument kinds of the module associator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    /// `(v . a) . beta(b) - phi(v) . mu(a, b)`
    Vaa,
    /// `(a . v) . beta(b) - alpha(a) . (v . b)`
    Ava,
    /// `mu(a, b) . psi(v) - alpha(a) . (b . v)`
    Aav,
}

/// An argument of the module associator.
#[derive(Debug, Clone, PartialEq)]
pub enum Operand {
    Algebra(Element),
    Module(Element),
}

/// The module BiHom-associator for the given pattern.
pub fn module_associator(
    v: &BiHomBimodule,
    pattern: Pattern,
    t1: &Operand,
    t2: &Operand,
    t3: &Operand,
) -> Result<Element> {
    let (n, m) = (v.host.dim(), v.mdim);
    let coords = |t: &Operand, want_module: bool| -> Result<Vec<Scalar>> {
        match (t, want_module) {
            (Operand::Algebra(x), false) if x.coords().len() == n => Ok(x.coords().to_vec()),
            (Operand::Module(x), true) if x.coords().len() == m => Ok(x.coords().to_vec()),
            (Operand::Algebra(_), false) | (Operand::Module(_), true) => {
                Err(Error::DimensionMismatch("associator argument".into()))
            }
            _ => Err(Error::PatternMismatch),
        }
    };
    let kinds = match pattern {
        Pattern::Vaa => [true, false, false],
        Pattern::Ava => [false, true, false],
        Pattern::Aav => [false, false, true],
    };
    let (a, b, c) = (coords(t1, kinds[0])?, coords(t2, kinds[1])?, coords(t3, kinds[2])?);
    let ops = ModOps::new(v);
    Ok(Element::new(match pattern {
        Pattern::Vaa => ops.vaa(&a, &b, &c),
        Pattern::Ava => ops.ava(&a, &b, &c),
        Pattern::Aav => ops.aav(&a, &b, &c),
    }))
}

/// Cached twist powers of a bimodule and its host.
pub(crate) struct ModOps<'a> {
    pub v: &'a BiHomBimodule,
    pub alg: AlgOps<'a>,
    phi: Vec<LinearMap>,
    psi: Vec<LinearMap>,
    psi_inv: Option<LinearMap>,
}

impl<'a> ModOps<'a> {
    pub fn new(v: &'a BiHomBimodule) -> Self {
        let powers = |m: &LinearMap| (0..=3).map(|k| m.pow(k).expect("square twist")).collect::<Vec<_>>();
        ModOps {
            v,
            alg: AlgOps::new(&v.host),
            phi: powers(&v.phi),
            psi: powers(&v.psi),
            psi_inv: v.psi.inverse().ok(),
        }
    }

    pub fn l(&self, a: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        self.v.l(a, x)
    }

    pub fn r(&self, x: &[Scalar], a: &[Scalar]) -> Vec<Scalar> {
        self.v.r(x, a)
    }

    /// `phi^i psi^j v`.
    pub fn fp(&self, i: usize, j: usize, x: &[Scalar]) -> Vec<Scalar> {
        let y = if j == 0 { x.to_vec() } else { self.psi[j].apply_vec(x) };
        if i == 0 {
            y
        } else {
            self.phi[i].apply_vec(&y)
        }
    }

    pub fn psi_inv(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.psi_inv.as_ref().expect("psi is invertible").apply_vec(x)
    }

    pub fn vaa(&self, x: &[Scalar], a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let lhs = self.r(&self.r(x, a), &self.alg.b(b));
        let rhs = self.r(&self.fp(1, 0, x), &self.alg.mu(a, b));
        sub_vectors(&lhs, &rhs)
    }

    pub fn ava(&self, a: &[Scalar], x: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let lhs = self.r(&self.l(a, x), &self.alg.b(b));
        let rhs = self.l(&self.alg.a(a), &self.r(x, b));
        sub_vectors(&lhs, &rhs)
    }

    pub fn aav(&self, a: &[Scalar], b: &[Scalar], x: &[Scalar]) -> Vec<Scalar> {
        let lhs = self.l(&self.alg.mu(a, b), &self.fp(0, 1, x));
        let rhs = self.l(&self.alg.a(a), &self.l(b, x));
        sub_vectors(&lhs, &rhs)
    }
}

type ModFamily = for<'a> fn(&'a ModOps<'a>) -> Vec<Identity<'a>>;

/// Runs a family exhaustively, on generic elements, or on samples.
fn run_module_mode(
    check_name: &str,
    v: &BiHomBimodule,
    mode: CheckMode,
    family: ModFamily,
    vars: &[(Slot, &'static str)],
) -> Result<CheckReport> {
    let (n, m) = (v.host.dim(), v.mdim);
    match mode {
        CheckMode::Linearized => {
            let ops = ModOps::new(v);
            let ids = family(&ops);
            let report = run_exhaustive(check_name, &ids, n, m);
            Ok(report)
        }
        CheckMode::DirectSymbolic => {
            let point = GenericPoint::new(v.context(), n, m, vars)?;
            let lifted = v.lift(&point.ctx)?;
            let ops = ModOps::new(&lifted);
            let ids = family(&ops);
            let report = run_symbolic(check_name, &ids, &point);
            Ok(report)
        }
        CheckMode::DirectSampled { points, seed } => {
            let ops = ModOps::new(v);
            let ids = family(&ops);
            let report = run_sampled(check_name, &ids, n, m, points, seed);
            Ok(report)
        }
    }
}

fn assoc_ids<'a>(o: &'a ModOps<'a>) -> Vec<Identity<'a>> {
    vec![
        Identity::new("right-module", &[V, X, Y], move |t| o.vaa(&t[0], &t[1], &t[2])),
        Identity::new("middle", &[X, V, Y], move |t| o.ava(&t[0], &t[1], &t[2])),
        Identity::new("left-module", &[X, Y, V], move |t| o.aav(&t[0], &t[1], &t[2])),
    ]
}

/// All three module associators vanish on every basis tuple.
pub fn check_assoc_bimodule(v: &BiHomBimodule) -> CheckReport {
    let ops = ModOps::new(v);
    let ids = assoc_ids(&ops);

    run_exhaustive("assoc-bimodule", &ids, v.host.dim(), v.mdim)
}

fn alt_mixed_ids<'a>(o: &'a ModOps<'a>) -> Vec<Identity<'a>> {
    let al = &o.alg;
    vec![
        Identity::new("middle-left", &[X, Y, V], move |t| {
            let (x, y, v) = (&t[0], &t[1], &t[2]);
            plus(o.ava(&al.b(x), &o.fp(1, 0, v), y), &o.vaa(&o.fp(0, 1, v), &al.a(x), y))
        }),
        Identity::new("middle-right", &[X, Y, V], move |t| {
            let (x, y, v) = (&t[0], &t[1], &t[2]);
            plus(o.aav(y, &al.b(x), &o.fp(1, 0, v)), &o.ava(y, &o.fp(0, 1, v), &al.a(x)))
        }),
    ]
}

fn alt_linear_ids<'a>(o: &'a ModOps<'a>) -> Vec<Identity<'a>> {
    let al = &o.alg;
    let mut ids = vec![
        Identity::new("left-module-alternative-linearized", &[X, Y, V], move |t| {
            let (x, y, v) = (&t[0], &t[1], &t[2]);
            plus(o.aav(&al.b(x), &al.a(y), v), &o.aav(&al.b(y), &al.a(x), v))
        }),
        Identity::new("right-module-alternative-linearized", &[V, X, Y], move |t| {
            let (v, x, y) = (&t[0], &t[1], &t[2]);
            plus(o.vaa(v, &al.b(x), &al.a(y)), &o.vaa(v, &al.b(y), &al.a(x)))
        }),
    ];
    ids.extend(alt_mixed_ids(o));
    ids
}

fn alt_direct_ids<'a>(o: &'a ModOps<'a>) -> Vec<Identity<'a>> {
    let al = &o.alg;
    vec![
        Identity::new("left-module-alternative", &[X, V], move |t| {
            o.aav(&al.b(&t[0]), &al.a(&t[0]), &t[1])
        }),
        Identity::new("right-module-alternative", &[V, X], move |t| {
            o.vaa(&t[0], &al.b(&t[1]), &al.a(&t[1]))
        }),
    ]
}

/// The alternative bimodule axioms. The two quadratic axioms follow `mode`;
/// the two mixed axioms are multilinear and always decided on basis tuples.
pub fn check_alt_bimodule(v: &BiHomBimodule, mode: CheckMode) -> Result<CheckReport> {
    let mut report = CheckReport::new("alt-bimodule", mode.label());
    if mode == CheckMode::Linearized {
        report.absorb(run_module_mode("alt-bimodule", v, mode, alt_linear_ids, &[])?);
    } else {
        report.absorb(run_module_mode("alt-bimodule", v, mode, alt_direct_ids, &[X, V])?);
        report.absorb(run_module_mode(
            "alt-bimodule",
            v,
            CheckMode::Linearized,
            alt_mixed_ids,
            &[],
        )?);
    }
    Ok(report)
}

fn require_jordan_host(host: &BiHomAlgebra) -> Result<()> {
    if !check_bihom_commutative(host).passed() {
        return Err(Error::PrereqFailed(format!(
            "host {} is not BiHom-commutative",
            host.label()
        )));
    }
    if !check_bihom_jordan(host, CheckMode::Linearized)?.passed() {
        return Err(Error::PrereqFailed(format!(
            "host {} is not BiHom-Jordan",
            host.label()
        )));
    }
    Ok(())
}

fn right_jordan_ids<'a>(o: &'a ModOps<'a>) -> Vec<Identity<'a>> {
    let al = &o.alg;
    vec![
        Identity::new("right-jordan-cyclic", &[X, Y, Z, V], move |t| {
            let v = &t[3];
            let w = o.fp(1, 2, v);
            let term = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| {
                let first = o.r(&o.r(&w, &al.mu(&al.ab(1, 1, x), &al.ab(2, 0, y))), &al.ab(3, 1, z));
                let second = o.r(&o.r(&w, &al.ab(2, 1, z)), &al.mu(&al.ab(2, 1, x), &al.ab(3, 0, y)));
                sub_vectors(&first, &second)
            };
            let (x, y, z) = (&t[0], &t[1], &t[2]);
            add3(term(x, y, z), &term(y, z, x), &term(z, x, y))
        }),
        Identity::new("right-jordan-cubic", &[X, Y, Z, V], move |t| {
            let (x, y, z, v) = (&t[0], &t[1], &t[2], &t[3]);
            let p2 = o.fp(0, 2, v);
            let w = o.fp(1, 2, v);
            let chain = |first: &[Scalar], last: &[Scalar]| {
                o.r(
                    &o.r(&o.r(&p2, &al.ab(1, 1, first)), &al.ab(2, 1, y)),
                    &al.ab(3, 1, last),
                )
            };
            let lhs = add3(
                chain(x, z),
                &chain(z, x),
                &o.r(
                    &o.fp(2, 2, v),
                    &al.mu(&al.mu(&al.ab(1, 1, x), &al.ab(2, 0, z)), &al.ab(3, 0, y)),
                ),
            );
            let split = |p: &[Scalar], q: &[Scalar], s: &[Scalar]| {
                o.r(&o.r(&w, &al.ab(2, 1, p)), &al.mu(&al.ab(2, 1, q), &al.ab(3, 0, s)))
            };
            let rhs = add3(split(x, y, z), &split(z, y, x), &split(y, x, z));
            sub_vectors(&lhs, &rhs)
        }),
    ]
}

fn left_jordan_ids<'a>(o: &'a ModOps<'a>) -> Vec<Identity<'a>> {
    let al = &o.alg;
    vec![
        Identity::new("left-jordan-cyclic", &[X, Y, Z, V], move |t| {
            let p3 = o.fp(3, 0, &t[3]);
            let term = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| {
                let first = o.l(&al.ab(2, 2, z), &o.l(&al.mu(&al.ab(1, 1, x), &al.ab(2, 0, y)), &p3));
                let second = o.l(&al.mu(&al.ab(1, 2, x), &al.ab(2, 1, y)), &o.l(&al.ab(2, 1, z), &p3));
                sub_vectors(&first, &second)
            };
            let (x, y, z) = (&t[0], &t[1], &t[2]);
            add3(term(x, y, z), &term(y, z, x), &term(z, x, y))
        }),
        Identity::new("left-jordan-cubic", &[X, Y, Z, V], move |t| {
            let (x, y, z, v) = (&t[0], &t[1], &t[2], &t[3]);
            let p3 = o.fp(3, 0, v);
            let u = o.psi_inv(&p3);
            let chain = |outer: &[Scalar], inner: &[Scalar]| {
                o.l(
                    &al.ab(2, 2, outer),
                    &o.l(&al.ab(2, 1, y), &o.l(&al.ab(2, 0, inner), &u)),
                )
            };
            let head = al.mu(&al.mu(&al.ab(0, 2, x), &al.ab(1, 1, z)), &al.ab(2, 1, y));
            let lhs = add3(chain(z, x), &chain(x, z), &o.l(&head, &o.fp(3, 1, v)));
            let split = |p: &[Scalar], q: &[Scalar], s: &[Scalar]| {
                o.l(&al.mu(&al.ab(1, 2, p), &al.ab(2, 1, q)), &o.l(&al.ab(2, 1, s), &p3))
            };
            let rhs = add3(split(y, z, x), &split(y, x, z), &split(x, z, y));
            sub_vectors(&lhs, &rhs)
        }),
    ]
}

/// The right Jordan module identities. Both are multilinear, so every mode
/// decides them completely; direct modes evaluate on generic or sampled elements.
pub fn check_right_jordan_module(v: &BiHomBimodule, mode: CheckMode) -> Result<CheckReport> {
    require_jordan_host(&v.host)?;
    run_module_mode("right-jordan-module", v, mode, right_jordan_ids, &[X, Y, Z, V])
}

/// The left Jordan module identities; needs an invertible psi.
pub fn check_left_jordan_module(v: &BiHomBimodule, mode: CheckMode) -> Result<CheckReport> {
    if v.psi.inverse().is_err() {
        return Err(Error::PsiNotInvertible);
    }
    require_jordan_host(&v.host)?;
    run_module_mode("left-jordan-module", v, mode, left_jordan_ids, &[X, Y, Z, V])
}

/// `phi(v).mu(beta x, alpha y) = (v.beta x).beta alpha y + (v.beta y).alpha beta x`.
pub fn check_right_special(v: &BiHomBimodule) -> CheckReport {
    let ops = ModOps::new(v);
    let o = &ops;
    let al = &o.alg;
    let ids = vec![Identity::new("right-special", &[X, Y, V], move |t| {
        let (x, y, v) = (&t[0], &t[1], &t[2]);
        let lhs = o.r(&o.fp(1, 0, v), &al.mu(&al.b(x), &al.a(y)));
        let rhs = plus(
            o.r(&o.r(v, &al.b(x)), &al.ab(1, 1, y)),
            &o.r(&o.r(v, &al.b(y)), &al.ab(1, 1, x)),
        );
        sub_vectors(&lhs, &rhs)
    })];

    run_exhaustive("right-special", &ids, v.host.dim(), v.mdim)
}

/// `mu(beta x, alpha y).psi(v) = beta alpha x.(alpha y.v) + beta alpha y.(alpha x.v)`;
/// needs an invertible psi.
pub fn check_left_special(v: &BiHomBimodule) -> Result<CheckReport> {
    if v.psi.inverse().is_err() {
        return Err(Error::PsiNotInvertible);
    }
    let ops = ModOps::new(v);
    let o = &ops;
    let al = &o.alg;
    let ids = vec![Identity::new("left-special", &[X, Y, V], move |t| {
        let (x, y, v) = (&t[0], &t[1], &t[2]);
        let lhs = o.l(&al.mu(&al.b(x), &al.a(y)), &o.fp(0, 1, v));
        let rhs = plus(
            o.l(&al.ab(1, 1, x), &o.l(&al.a(y), v)),
            &o.l(&al.ab(1, 1, y), &o.l(&al.a(x), v)),
        );
        sub_vectors(&lhs, &rhs)
    })];
    let report = run_exhaustive("left-special", &ids, v.host.dim(), v.mdim);
    Ok(report)
}

fn jordan_bimodule_ids<'a>(o: &'a ModOps<'a>) -> Vec<Identity<'a>> {
    let al = &o.alg;
    vec![
        Identity::new("left-right-symmetry", &[X, V], move |t| {
            let (x, v) = (&t[0], &t[1]);
            sub_vectors(&o.l(&al.b(x), &o.fp(1, 0, v)), &o.r(&o.fp(0, 1, v), &al.a(x)))
        }),
        Identity::new("jordan-bimodule-cyclic", &[X, Y, Z, V], move |t| {
            let w = o.fp(2, 1, &t[3]);
            let term = |x: &[Scalar], y: &[Scalar], z: &[Scalar]| {
                o.ava(&al.mu(&al.ab(0, 2, x), &al.ab(1, 1, y)), &w, &al.ab(3, 0, z))
            };
            let (x, y, z) = (&t[0], &t[1], &t[2]);
            add3(term(x, y, z), &term(y, z, x), &term(z, x, y))
        }),
        Identity::new("jordan-bimodule-cubic", &[X, Y, Z, V], move |t| {
            let (x, y, z, v) = (&t[0], &t[1], &t[2], &t[3]);
            let p2 = o.fp(0, 2, v);
            let mid = al.ab(2, 1, y);
            let first = o.vaa(&o.r(&p2, &al.ab(1, 1, x)), &mid, &al.ab(3, 0, z));
            let second = o.vaa(&o.r(&p2, &al.ab(1, 1, z)), &mid, &al.ab(3, 0, x));
            let third = o.aav(&al.mu(&al.ab(0, 2, x), &al.ab(1, 1, z)), &mid, &o.fp(3, 0, v));
            add3(first, &second, &third)
        }),
    ]
}

/// The Jordan bimodule axioms, all multilinear, on every basis tuple.
pub fn check_jordan_bimodule(v: &BiHomBimodule) -> Result<CheckReport> {
    require_jordan_host(&v.host)?;
    let ops = ModOps::new(v);
    let ids = jordan_bimodule_ids(&ops);
    let report = run_exhaustive("jordan-bimodule", &ids, v.host.dim(), v.mdim);
    Ok(report)
}

/// `rho_r(rho_l(a, v), beta b) = rho_l(alpha a, rho_r(v, b))` for the pair of
/// actions carried by `v`.
pub fn check_operator_commutativity(v: &BiHomBimodule) -> CheckReport {
    let ops = ModOps::new(v);
    let o = &ops;
    let ids = vec![Identity::new("operator-commutativity", &[X, V, Y], move |t| {
        o.ava(&t[0], &t[1], &t[2])
    })];

    run_exhaustive("operator-commutativity", &ids, v.host.dim(), v.mdim)
}

/// A linear map between two bimodules over the same host.
#[derive(Debug, Clone)]
pub struct BimoduleMorphism {
    source: Arc<BiHomBimodule>,
    target: Arc<BiHomBimodule>,
    map: LinearMap,
}

impl BimoduleMorphism {
    pub fn new(source: Arc<BiHomBimodule>, target: Arc<BiHomBimodule>, map: LinearMap) -> Result<Self> {
        if *source.host != *target.host {
            return Err(Error::DimensionMismatch("bimodules live over different hosts".into()));
        }
        if map.rows() != target.mdim || map.cols() != source.mdim {
            return Err(Error::DimensionMismatch(format!(
                "map is {}x{}, expected {}x{}",
                map.rows(),
                map.cols(),
                target.mdim,
                source.mdim
            )));
        }
        let map = match target.context().or(source.context()) {
            Some(c) if map.context().is_some() => map.lift(c)?,
            _ => map,
        };
        Ok(BimoduleMorphism { source, target, map })
    }

    pub fn source(&self) -> &Arc<BiHomBimodule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<BiHomBimodule> {
        &self.target
    }

    pub fn map(&self) -> &LinearMap {
        &self.map
    }

    /// Equivariance for both actions and both twists.
    pub fn check(&self) -> CheckReport {
        let (s, t, f) = (&*self.source, &*self.target, &self.map);
        let ids = vec![
            Identity::new("left-equivariant", &[X, V], move |a| {
                sub_vectors(&f.apply_vec(&s.l(&a[0], &a[1])), &t.l(&a[0], &f.apply_vec(&a[1])))
            }),
            Identity::new("right-equivariant", &[V, X], move |a| {
                sub_vectors(&f.apply_vec(&s.r(&a[0], &a[1])), &t.r(&f.apply_vec(&a[0]), &a[1]))
            }),
            Identity::new("commutes-with-phi", &[V], move |a| {
                sub_vectors(
                    &f.apply_vec(&s.phi.apply_vec(&a[0])),
                    &t.phi.apply_vec(&f.apply_vec(&a[0])),
                )
            }),
            Identity::new("commutes-with-psi", &[V], move |a| {
                sub_vectors(
                    &f.apply_vec(&s.psi.apply_vec(&a[0])),
                    &t.psi.apply_vec(&f.apply_vec(&a[0])),
                )
            }),
        ];

        run_exhaustive("bimodule-morphism", &ids, s.host.dim(), s.mdim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_table(dim: usize, entries: &[(usize, usize, &[i64])]) -> BiHomAlgebra {
        let mut mu = vec![Scalar::zero(); dim * dim * dim];
        for (i, j, v) in entries {
            for (k, c) in v.iter().enumerate() {
                mu[(i * dim + j) * dim + k] = Scalar::int(*c);
            }
        }
        BiHomAlgebra::untwisted("t", dim, mu).unwrap()
    }

    fn regular(a: BiHomAlgebra) -> BiHomBimodule {
        let n = a.dim();
        let mu = a.tensor().to_vec();
        let (alpha, beta) = (a.alpha().clone(), a.beta().clone());
        BiHomBimodule::new("reg", Arc::new(a), n, alpha, beta, mu.clone(), mu).unwrap()
    }

    fn zero_actions(a: BiHomAlgebra, m: usize) -> BiHomBimodule {
        let n = a.dim();
        let z = vec![Scalar::zero(); n * m * m];
        BiHomBimodule::new(
            "zero",
            Arc::new(a),
            m,
            LinearMap::identity(m),
            LinearMap::identity(m),
            z.clone(),
            z,
        )
        .unwrap()
    }

    fn skew() -> BiHomAlgebra {
        from_table(2, &[(0, 0, &[0, 1]), (1, 0, &[1, 0])])
    }

    /// The commutative algebra `e1 e1 = e1, e1 e2 = e2 e1 = e2 / 2`.
    fn idempotent_jordan() -> BiHomAlgebra {
        let mut mu = vec![Scalar::zero(); 8];
        mu[0] = Scalar::one();
        mu[3] = Scalar::ratio(1, 2);
        mu[2 * 2 + 1] = Scalar::ratio(1, 2);
        BiHomAlgebra::untwisted("j", 2, mu).unwrap()
    }

    #[test]
    fn non_associative_regular_bimodule_fails_at_first_tuple() {
        let r = check_assoc_bimodule(&regular(skew()));
        assert!(!r.passed());
        let w = r.witness().unwrap();
        assert_eq!(w.identity, "right-module");
        assert_eq!(w.tuple, vec!["v1", "e1", "e1"]);
        assert!(!check_operator_commutativity(&regular(skew())).passed());
    }

    #[test]
    fn zero_actions_pass_everything() {
        let v = zero_actions(idempotent_jordan(), 3);
        assert!(check_assoc_bimodule(&v).passed());
        assert!(check_alt_bimodule(&v, CheckMode::Linearized).unwrap().passed());
        assert!(check_alt_bimodule(&v, CheckMode::DirectSymbolic).unwrap().passed());
        assert!(check_right_jordan_module(&v, CheckMode::Linearized).unwrap().passed());
        assert!(check_left_jordan_module(&v, CheckMode::Linearized).unwrap().passed());
        assert!(check_jordan_bimodule(&v).unwrap().passed());
        assert!(check_right_special(&v).passed());
        assert!(check_left_special(&v).unwrap().passed());
        assert!(check_operator_commutativity(&v).passed());
    }

    #[test]
    fn regular_jordan_bimodule_passes_in_every_mode() {
        let v = regular(idempotent_jordan());
        assert!(check_jordan_bimodule(&v).unwrap().passed());
        for mode in [
            CheckMode::Linearized,
            CheckMode::DirectSymbolic,
            CheckMode::sampled(5, 1).unwrap(),
        ] {
            assert!(check_right_jordan_module(&v, mode).unwrap().passed());
            assert!(check_left_jordan_module(&v, mode).unwrap().passed());
        }
    }

    #[test]
    fn jordan_checks_reject_non_jordan_hosts() {
        let v = regular(skew());
        assert!(matches!(check_jordan_bimodule(&v), Err(Error::PrereqFailed(_))));
        assert!(matches!(
            check_right_jordan_module(&v, CheckMode::Linearized),
            Err(Error::PrereqFailed(_))
        ));
    }

    #[test]
    fn left_checks_need_invertible_psi() {
        let a = Arc::new(from_table(1, &[]));
        let z = vec![Scalar::zero(); 1];
        let v = BiHomBimodule::new("v", a, 1, LinearMap::identity(1), LinearMap::zero(1, 1), z.clone(), z).unwrap();
        assert!(matches!(check_left_special(&v), Err(Error::PsiNotInvertible)));
        assert!(matches!(
            check_left_jordan_module(&v, CheckMode::Linearized),
            Err(Error::PsiNotInvertible)
        ));
    }

    #[test]
    fn non_equivariant_actions_are_rejected_at_construction() {
        // alpha swaps the basis of a zero-product host; the action ignores it.
        let swap = LinearMap::from_rows(vec![
            vec![Scalar::zero(), Scalar::one()],
            vec![Scalar::one(), Scalar::zero()],
        ])
        .unwrap();
        let a = Arc::new(BiHomAlgebra::new("z", 2, vec![Scalar::zero(); 8], swap, LinearMap::identity(2)).unwrap());
        let mut left = vec![Scalar::zero(); 2];
        left[0] = Scalar::one();
        let err = BiHomBimodule::new(
            "v",
            a,
            1,
            LinearMap::identity(1),
            LinearMap::identity(1),
            left,
            vec![Scalar::zero(); 2],
        );
        assert!(matches!(err, Err(Error::InvalidBimodule(_))));
    }

    #[test]
    fn associator_patterns_check_argument_kinds() {
        let v = regular(skew());
        let a = Operand::Algebra(Element::basis(2, 0));
        let m = Operand::Module(Element::basis(2, 0));
        let out = module_associator(&v, Pattern::Vaa, &m, &a, &a).unwrap();
        assert_eq!(out.coords(), &[Scalar::one(), Scalar::zero()]);
        assert!(matches!(
            module_associator(&v, Pattern::Vaa, &a, &a, &a),
            Err(Error::PatternMismatch)
        ));
        let zero = Operand::Algebra(Element::zero(2));
        assert!(module_associator(&v, Pattern::Aav, &zero, &a, &m).unwrap().is_zero());
    }

    #[test]
    fn identity_and_zero_morphisms_pass() {
        let v = Arc::new(regular(idempotent_jordan()));
        let id = BimoduleMorphism::new(v.clone(), v.clone(), LinearMap::identity(2)).unwrap();
        assert!(id.check().passed());
        let zero = BimoduleMorphism::new(v.clone(), v, LinearMap::zero(2, 2)).unwrap();
        assert!(zero.check().passed());
    }
}
