//! Identity checks for BiHom-algebras.
//!
//! Multilinear identities are decided on every basis tuple, which is complete
//! by multilinearity. The quadratic and cubic forms are decided either through
//! their polarizations on basis tuples or directly on generic elements whose
//! coordinates are fresh parameters, or on seeded random integer elements.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::BiHomAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{add_assign, basis_vector, sub_vectors, LinearMap};
use crate::parallel;
use crate::report::{render_vector, CheckMode, CheckReport, RotaBaxterReport, Witness};
use crate::scalar::{ParameterContext, Scalar};

/// The carrier an identity argument ranges over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Slot {
    Algebra,
    Module,
}

type Residual<'a> = Box<dyn Fn(&[Vec<Scalar>]) -> Vec<Scalar> + Sync + Send + 'a>;

/// An identity `f(args) = 0` together with the names of its arguments.
pub(crate) struct Identity<'a> {
    pub name: &'static str,
    pub slots: Vec<(Slot, &'static str)>,
    pub residual: Residual<'a>,
}

impl<'a> Identity<'a> {
    pub fn new(
        name: &'static str,
        slots: &[(Slot, &'static str)],
        residual: impl Fn(&[Vec<Scalar>]) -> Vec<Scalar> + Sync + Send + 'a,
    ) -> Self {
        Identity {
            name,
            slots: slots.to_vec(),
            residual: Box::new(residual),
        }
    }
}

pub(crate) const X: (Slot, &str) = (Slot::Algebra, "x");
pub(crate) const Y: (Slot, &str) = (Slot::Algebra, "y");
pub(crate) const Z: (Slot, &str) = (Slot::Algebra, "z");
pub(crate) const W: (Slot, &str) = (Slot::Algebra, "w");
pub(crate) const V: (Slot, &str) = (Slot::Module, "v");

fn slot_dim(slot: Slot, n: usize, m: usize) -> usize {
    match slot {
        Slot::Algebra => n,
        Slot::Module => m,
    }
}

fn elapsed_us(start: Instant) -> u64 {
    start.elapsed().as_micros() as u64
}

/// Evaluates each identity on every basis tuple.
pub(crate) fn run_exhaustive(check_name: &str, ids: &[Identity<'_>], n: usize, m: usize) -> CheckReport {
    let start = Instant::now();
    let mut report = CheckReport::new(check_name, CheckMode::Linearized.label());
    for id in ids {
        let dims: Vec<usize> = id.slots.iter().map(|(s, _)| slot_dim(*s, n, m)).collect();
        let out = parallel::search(&dims, |t| {
            let args: Vec<Vec<Scalar>> = t.iter().zip(&dims).map(|(&i, &d)| basis_vector(d, i)).collect();
            (id.residual)(&args)
        });
        report.stats.tuples_examined += out.examined;
        report.stats.failing_tuples += out.failing;
        if let Some((tuple, residual)) = out.first {
            report.add_witness(Witness {
                identity: id.name.into(),
                tuple: tuple
                    .iter()
                    .zip(&id.slots)
                    .map(|(i, (s, _))| match s {
                        Slot::Algebra => format!("e{}", i + 1),
                        Slot::Module => format!("v{}", i + 1),
                    })
                    .collect(),
                residual: render_vector(&residual),
            });
        }
    }
    report.stats.elapsed_us = elapsed_us(start);
    report
}

/// Every variable an identity may use, in sampling order.
const VARIABLES: [(Slot, &str); 5] = [X, Y, Z, W, V];

/// Parameter names `x1..xn`, `y1..yn`, ... for `vars`, made fresh against `base`.
fn generic_names(
    base: Option<&Arc<ParameterContext>>,
    n: usize,
    m: usize,
    vars: &[(Slot, &'static str)],
) -> Vec<(Slot, &'static str, Vec<String>)> {
    let empty = ParameterContext::new::<&str>(&[]).expect("empty context");
    let base = base.cloned().unwrap_or(empty);
    let mut taken: Vec<String> = base.names().to_vec();
    let mut out = Vec::new();
    for &(slot, var) in vars {
        let dim = slot_dim(slot, n, m);
        let mut names = Vec::with_capacity(dim);
        for k in 0..dim {
            let probe = ParameterContext::new(&taken).expect("valid names");
            let name = probe.fresh_name(&format!("{var}{}", k + 1));
            taken.push(name.clone());
            names.push(name);
        }
        out.push((slot, var, names));
    }
    out
}

/// Context holding generic coordinates for direct checks.
pub(crate) struct GenericPoint {
    pub ctx: Arc<ParameterContext>,
    vectors: Vec<(&'static str, Vec<Scalar>)>,
}

impl GenericPoint {
    pub fn new(
        base: Option<&Arc<ParameterContext>>,
        n: usize,
        m: usize,
        vars: &[(Slot, &'static str)],
    ) -> Result<Self> {
        let names = generic_names(base, n, m, vars);
        let extra: Vec<String> = names.iter().flat_map(|(_, _, v)| v.clone()).collect();
        let ctx = match base {
            Some(b) => b.extend(&extra)?,
            None => ParameterContext::new(&extra)?,
        };
        let vectors = names
            .iter()
            .map(|(_, var, ns)| {
                Ok((
                    *var,
                    ns.iter()
                        .map(|p| Scalar::param(&ctx, p))
                        .collect::<Result<Vec<_>, _>>()?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GenericPoint { ctx, vectors })
    }

    fn vector(&self, var: &str) -> &[Scalar] {
        &self
            .vectors
            .iter()
            .find(|(v, _)| *v == var)
            .expect("generic variable")
            .1
    }
}

/// Evaluates direct identities on generic elements. The identities must be
/// built over structures lifted to `point.ctx`.
pub(crate) fn run_symbolic(check_name: &str, ids: &[Identity<'_>], point: &GenericPoint) -> CheckReport {
    let start = Instant::now();
    let mut report = CheckReport::new(check_name, CheckMode::DirectSymbolic.label());
    for id in ids {
        let args: Vec<Vec<Scalar>> = id.slots.iter().map(|(_, var)| point.vector(var).to_vec()).collect();
        let residual = (id.residual)(&args);
        report.stats.tuples_examined += 1;
        if residual.iter().any(|s| !s.is_zero()) {
            report.stats.failing_tuples += 1;
            report.add_witness(Witness {
                identity: id.name.into(),
                tuple: id.slots.iter().map(|(_, var)| format!("{var}=generic")).collect(),
                residual: render_vector(&residual),
            });
        }
    }
    report.stats.elapsed_us = elapsed_us(start);
    report
}

/// Evaluates direct identities on `points` seeded random integer elements
/// with coordinates in `-3..=3`.
pub(crate) fn run_sampled(
    check_name: &str,
    ids: &[Identity<'_>],
    n: usize,
    m: usize,
    points: usize,
    seed: u64,
) -> CheckReport {
    let start = Instant::now();
    let mode = CheckMode::DirectSampled { points, seed };
    let mut report = CheckReport::new(check_name, mode.label());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<Vec<Vec<Scalar>>> = (0..points)
        .map(|_| {
            VARIABLES
                .iter()
                .map(|(slot, _)| {
                    (0..slot_dim(*slot, n, m))
                        .map(|_| Scalar::int(rng.gen_range(-3..=3)))
                        .collect()
                })
                .collect()
        })
        .collect();
    for id in ids {
        let results = parallel::map_ordered(&samples, |sample| {
            let args: Vec<Vec<Scalar>> = id
                .slots
                .iter()
                .map(|(_, var)| {
                    let idx = VARIABLES.iter().position(|(_, v)| v == var).expect("sampled variable");
                    sample[idx].clone()
                })
                .collect();
            (id.residual)(&args)
        });
        report.stats.tuples_examined += points as u64;
        let mut first = None;
        for (k, r) in results.into_iter().enumerate() {
            if r.iter().any(|s| !s.is_zero()) {
                report.stats.failing_tuples += 1;
                first.get_or_insert((k, r));
            }
        }
        if let Some((k, residual)) = first {
            let sample = &samples[k];
            report.add_witness(Witness {
                identity: id.name.into(),
                tuple: id
                    .slots
                    .iter()
                    .map(|(_, var)| {
                        let idx = VARIABLES.iter().position(|(_, v)| v == var).expect("sampled variable");
                        format!("{var}=({})", render_vector(&sample[idx]).join(", "))
                    })
                    .collect(),
                residual: render_vector(&residual),
            });
        }
    }
    report.stats.elapsed_us = elapsed_us(start);
    report
}

/// Cached twist powers of an algebra.
pub(crate) struct AlgOps<'a> {
    pub alg: &'a BiHomAlgebra,
    alpha: Vec<LinearMap>,
    beta: Vec<LinearMap>,
}

impl<'a> AlgOps<'a> {
    pub fn new(alg: &'a BiHomAlgebra) -> Self {
        let powers = |m: &LinearMap| (0..=3).map(|k| m.pow(k).expect("square twist")).collect::<Vec<_>>();
        AlgOps {
            alg,
            alpha: powers(alg.alpha()),
            beta: powers(alg.beta()),
        }
    }

    pub fn mu(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.alg.mul_vec(x, y)
    }

    /// `alpha^i beta^j x`.
    pub fn ab(&self, i: usize, j: usize, x: &[Scalar]) -> Vec<Scalar> {
        let y = if j == 0 { x.to_vec() } else { self.beta[j].apply_vec(x) };
        if i == 0 {
            y
        } else {
            self.alpha[i].apply_vec(&y)
        }
    }

    pub fn a(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.ab(1, 0, x)
    }

    pub fn b(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.ab(0, 1, x)
    }

    pub fn assoc(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        self.alg.assoc_vec(x, y, z)
    }

    /// `as(mu(beta^2 x, alpha beta w), alpha^2 beta y, alpha^3 z)`.
    pub fn jordan_term(&self, x: &[Scalar], w: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let head = self.mu(&self.ab(0, 2, x), &self.ab(1, 1, w));
        self.assoc(&head, &self.ab(2, 1, y), &self.ab(3, 0, z))
    }
}

pub(crate) fn add3(a: Vec<Scalar>, b: &[Scalar], c: &[Scalar]) -> Vec<Scalar> {
    let mut out = a;
    add_assign(&mut out, b);
    add_assign(&mut out, c);
    out
}

pub(crate) fn plus(a: Vec<Scalar>, b: &[Scalar]) -> Vec<Scalar> {
    let mut out = a;
    add_assign(&mut out, b);
    out
}

fn associativity_ids<'a>(ops: &'a AlgOps<'a>) -> Vec<Identity<'a>> {
    vec![Identity::new("associator", &[X, Y, Z], move |t| {
        ops.assoc(&t[0], &t[1], &t[2])
    })]
}

fn left_alt_linear<'a>(ops: &'a AlgOps<'a>) -> Vec<Identity<'a>> {
    vec![Identity::new("left-alternative-linearized", &[X, Y, Z], move |t| {
        let (x, y, z) = (&t[0], &t[1], &t[2]);
        plus(ops.assoc(&ops.b(x), &ops.a(y), z), &ops.assoc(&ops.b(y), &ops.a(x), z))
    })]
}

fn left_alt_direct<'a>(ops: &'a AlgOps<'a>) -> Vec<Identity<'a>> {
    vec![Identity::new("left-alternative", &[X, Y], move |t| {
        ops.assoc(&ops.b(&t[0]), &ops.a(&t[0]), &t[1])
    })]
}

fn right_alt_linear<'a>(ops: &'a AlgOps<'a>) -> Vec<Identity<'a>> {
    vec![Identity::new("right-alternative-linearized", &[X, Y, Z], move |t| {
        let (x, y, z) = (&t[0], &t[1], &t[2]);
        plus(ops.assoc(x, &ops.b(y), &ops.a(z)), &ops.assoc(x, &ops.b(z), &ops.a(y)))
    })]
}

fn right_alt_direct<'a>(ops: &'a AlgOps<'a>) -> Vec<Identity<'a>> {
    vec![Identity::new("right-alternative", &[X, Y], move |t| {
        ops.assoc(&t[0], &ops.b(&t[1]), &ops.a(&t[1]))
    })]
}

fn commutativity_ids<'a>(ops: &'a AlgOps<'a>) -> Vec<Identity<'a>> {
    vec![Identity::new("bihom-commutativity", &[X, Y], move |t| {
        let (x, y) = (&t[0], &t[1]);
        sub_vectors(&ops.mu(&ops.b(x), &ops.a(y)), &ops.mu(&ops.b(y), &ops.a(x)))
    })]
}

fn jordan_linear<'a>(ops: &'a AlgOps<'a>) -> Vec<Identity<'a>> {
    vec![Identity::new("jordan-cyclic", &[X, W, Z, Y], move |t| {
        let (x, w, z, y) = (&t[0], &t[1], &t[2], &t[3]);
        add3(
            ops.jordan_term(x, w, y, z),
            &ops.jordan_term(w, z, y, x),
            &ops.jordan_term(z, x, y, w),
        )
    })]
}

fn jordan_direct<'a>(ops: &'a AlgOps<'a>) -> Vec<Identity<'a>> {
    vec![Identity::new("jordan", &[X, Y], move |t| {
        ops.jordan_term(&t[0], &t[0], &t[1], &t[0])
    })]
}

type Family = for<'a> fn(&'a AlgOps<'a>) -> Vec<Identity<'a>>;

/// Runs a linear family exhaustively, or a direct family in the requested mode.
fn run_mode(
    check_name: &str,
    alg: &BiHomAlgebra,
    mode: CheckMode,
    linear: Family,
    direct: Family,
) -> Result<CheckReport> {
    let n = alg.dim();
    match mode {
        CheckMode::Linearized => {
            let ops = AlgOps::new(alg);
            let ids = linear(&ops);
            let report = run_exhaustive(check_name, &ids, n, 0);
            Ok(report)
        }
        CheckMode::DirectSymbolic => {
            let point = GenericPoint::new(alg.context(), n, 0, &[X, Y])?;
            let lifted = alg.lift(&point.ctx)?;
            let ops = AlgOps::new(&lifted);
            let ids = direct(&ops);
            let report = run_symbolic(check_name, &ids, &point);
            Ok(report)
        }
        CheckMode::DirectSampled { points, seed } => {
            let ops = AlgOps::new(alg);
            let ids = direct(&ops);
            let report = run_sampled(check_name, &ids, n, 0, points, seed);
            Ok(report)
        }
    }
}

/// `as(x, y, z) = 0` on all basis triples.
pub fn check_bihom_associative(alg: &BiHomAlgebra) -> CheckReport {
    let ops = AlgOps::new(alg);
    let ids = associativity_ids(&ops);

    run_exhaustive("bihom-associative", &ids, alg.dim(), 0)
}

/// `as(beta x, alpha x, y) = 0`, or its polarization.
pub fn check_left_alternative(alg: &BiHomAlgebra, mode: CheckMode) -> Result<CheckReport> {
    run_mode("left-alternative", alg, mode, left_alt_linear, left_alt_direct)
}

/// `as(x, beta y, alpha y) = 0`, or its polarization.
pub fn check_right_alternative(alg: &BiHomAlgebra, mode: CheckMode) -> Result<CheckReport> {
    run_mode("right-alternative", alg, mode, right_alt_linear, right_alt_direct)
}

/// Both alternativity checks merged into one report.
pub fn check_alternative(alg: &BiHomAlgebra, mode: CheckMode) -> Result<CheckReport> {
    let mut report = CheckReport::new("alternative", mode.label());
    report.absorb(check_left_alternative(alg, mode)?);
    report.absorb(check_right_alternative(alg, mode)?);
    Ok(report)
}

/// `mu(beta x, alpha y) = mu(beta y, alpha x)` on all basis pairs.
pub fn check_bihom_commutative(alg: &BiHomAlgebra) -> CheckReport {
    let ops = AlgOps::new(alg);
    let ids = commutativity_ids(&ops);

    run_exhaustive("bihom-commutative", &ids, alg.dim(), 0)
}

/// The Jordan identity; requires BiHom-commutativity.
pub fn check_bihom_jordan(alg: &BiHomAlgebra, mode: CheckMode) -> Result<CheckReport> {
    let comm = check_bihom_commutative(alg);
    if !comm.passed() {
        return Err(Error::PrereqFailed(format!("{} is not BiHom-commutative", alg.label())));
    }
    run_mode("bihom-jordan", alg, mode, jordan_linear, jordan_direct)
}

/// `mu(Rx, Ry) = R(mu(Rx, y) + mu(x, Ry) + lambda mu(x, y))` on all basis
/// pairs, plus whether `R` commutes with both twists.
pub fn check_rota_baxter(alg: &BiHomAlgebra, r: &LinearMap, lambda: &Scalar) -> Result<RotaBaxterReport> {
    crate::algebra::check_square("R", r, alg.dim())?;
    let ops = AlgOps::new(alg);
    let ids = vec![Identity::new("rota-baxter", &[X, Y], |t| {
        let (x, y) = (&t[0], &t[1]);
        let (rx, ry) = (r.apply_vec(x), r.apply_vec(y));
        let lhs = ops.mu(&rx, &ry);
        let mut inner = plus(ops.mu(&rx, y), &ops.mu(x, &ry));
        if !lambda.is_zero() {
            add_assign(&mut inner, &crate::linalg::scale_vector(lambda, &ops.mu(x, y)));
        }
        sub_vectors(&lhs, &r.apply_vec(&inner))
    })];
    let mut identity = run_exhaustive("rota-baxter", &ids, alg.dim(), 0);
    identity.mode = "basis".into();
    Ok(RotaBaxterReport {
        identity,
        commutes_alpha: r.commutes_with(alg.alpha())?,
        commutes_beta: r.commutes_with(alg.beta())?,
    })
}

/// Both twists invertible and multiplicative.
pub fn is_regular(alg: &BiHomAlgebra) -> bool {
    alg.alpha().inverse().is_ok() && alg.beta().inverse().is_ok() && alg.validate().passed()
}

/// Both twists square to the identity.
pub fn is_involutive(alg: &BiHomAlgebra) -> bool {
    let sq = |m: &LinearMap| m.compose(m).map(|p| p.is_identity()).unwrap_or(false);
    sq(alg.alpha()) && sq(alg.beta())
}
