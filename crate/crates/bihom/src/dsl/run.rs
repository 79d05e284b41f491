//! Sequential execution of a parsed document.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::{AlgebraMorphism, BiHomAlgebra};
use crate::bimodule::{self, BiHomBimodule, BimoduleMorphism};
use crate::bimodule_constructions as bc;
use crate::catalog::{self, Erratum};
use crate::checks;
use crate::constructions;
use crate::error::Error;
use crate::expr::{BinOp, Expr};
use crate::linalg::{LinearMap, Subspace};
use crate::report::{CheckMode, CheckReport, Verdict, Witness};
use crate::scalar::{ParameterContext, Scalar};

use super::parse::basis_number;
use super::{Arg, Call, CheckDirective, Document, DslError, MapTarget, ModeSpec, Side, StatementKind};

/// Defaults for check directives that leave them open.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub mode: ModeSpec,
    pub seed: u64,
    pub points: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            mode: ModeSpec::Linearized,
            seed: 0,
            points: 50,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Entry {
    Construction {
        line: usize,
        name: String,
        object: String,
        dim: usize,
        digest: String,
    },
    Check {
        line: usize,
        directive: String,
        expected: Verdict,
        ok: bool,
        report: CheckReport,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub entries: Vec<Entry>,
    pub errata: Vec<Erratum>,
    pub warnings: Vec<String>,
    pub passed: bool,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn checks(&self) -> impl Iterator<Item = (&str, bool, &CheckReport)> {
        self.entries.iter().filter_map(|e| match e {
            Entry::Check {
                directive, ok, report, ..
            } => Some((directive.as_str(), *ok, report)),
            Entry::Construction { .. } => None,
        })
    }

    /// Key-sorted JSON without timing.
    pub fn to_structured(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&value).expect("value serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match e {
                Entry::Construction {
                    line,
                    name,
                    object,
                    dim,
                    digest,
                } => {
                    let _ = writeln!(out, "line {line}: {object} {name} dim={dim} digest={}", &digest[..16]);
                }
                Entry::Check {
                    line,
                    directive,
                    expected,
                    ok,
                    report,
                } => {
                    let tag = if *ok { "ok" } else { "UNEXPECTED" };
                    let want = match expected {
                        Verdict::Pass => "pass",
                        Verdict::Fail => "fail",
                    };
                    let _ = writeln!(out, "line {line}: {directive} [{tag}, expected {want}]");
                    for l in report.to_string().lines() {
                        let _ = writeln!(out, "  {l}");
                    }
                }
            }
        }
        if !self.errata.is_empty() {
            let _ = writeln!(out, "errata:");
            for e in &self.errata {
                let _ = writeln!(
                    out,
                    "  {}: {} printed {} computed {}",
                    e.subject, e.entry, e.printed, e.computed
                );
            }
        }
        for w in &self.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        let total = self.checks().count();
        let ok = self.checks().filter(|c| c.1).count();
        let _ = writeln!(
            out,
            "{ok}/{total} checks as expected: {}",
            if self.passed { "success" } else { "failure" }
        );
        out
    }
}

/// Runs with default options.
pub fn run(doc: &Document) -> Result<RunReport, DslError> {
    run_with(doc, RunOptions::default())
}

pub fn run_with(doc: &Document, opts: RunOptions) -> Result<RunReport, DslError> {
    let mut r = Runner {
        opts,
        line: 0,
        ctx: None,
        values: HashMap::new(),
        pending: Vec::new(),
        named_maps: Vec::new(),
        used_maps: BTreeSet::new(),
        report: RunReport {
            entries: Vec::new(),
            errata: Vec::new(),
            warnings: Vec::new(),
            passed: true,
        },
    };
    for s in &doc.statements {
        r.line = s.line;
        r.statement(&s.kind)?;
    }
    let open: Vec<String> = r.pending.iter().map(|p| p.name().to_string()).collect();
    for name in open {
        r.materialize(&name)?;
    }
    for (name, line) in &r.named_maps {
        if !r.used_maps.contains(name) {
            r.report
                .warnings
                .push(format!("line {line}: map `{name}` is written but never used"));
        }
    }
    let passed = r.report.checks().all(|c| c.1);
    r.report.passed = passed;
    Ok(r.report)
}

#[derive(Debug, Clone)]
enum Value {
    Algebra(Arc<BiHomAlgebra>),
    Bimodule(Arc<BiHomBimodule>),
    Map(LinearMap),
}

type Table = BTreeMap<(usize, usize), Vec<Scalar>>;

enum Pending {
    Algebra {
        line: usize,
        name: String,
        dim: usize,
        products: Table,
        alpha: Option<LinearMap>,
        beta: Option<LinearMap>,
    },
    Bimodule {
        line: usize,
        name: String,
        host: String,
        dim: usize,
        left: Table,
        right: Table,
        phi: Option<LinearMap>,
        psi: Option<LinearMap>,
    },
}

impl Pending {
    fn name(&self) -> &str {
        match self {
            Pending::Algebra { name, .. } | Pending::Bimodule { name, .. } => name,
        }
    }
}

/// A value during evaluation of a linear combination.
enum Lin {
    S(Scalar),
    V(Vec<Scalar>),
}

struct Runner {
    opts: RunOptions,
    line: usize,
    ctx: Option<Arc<ParameterContext>>,
    values: HashMap<String, Value>,
    pending: Vec<Pending>,
    named_maps: Vec<(String, usize)>,
    used_maps: BTreeSet<String>,
    report: RunReport,
}

type Res<T> = Result<T, DslError>;

impl Runner {
    fn fail(&self, message: impl Into<String>) -> DslError {
        DslError::Run {
            line: self.line,
            message: message.into(),
        }
    }

    fn op<T>(&self, r: Result<T, Error>) -> Res<T> {
        r.map_err(|e| self.fail(e.to_string()))
    }

    fn statement(&mut self, s: &StatementKind) -> Res<()> {
        match s {
            StatementKind::Params(names) => {
                let ctx = if names == &["a", "b"] {
                    catalog::ab_context()
                } else {
                    self.op(ParameterContext::new(names).map_err(Error::from))?
                };
                self.ctx = Some(ctx);
            }
            StatementKind::Algebra { name, dim } => self.pending.push(Pending::Algebra {
                line: self.line,
                name: name.clone(),
                dim: *dim,
                products: Table::new(),
                alpha: None,
                beta: None,
            }),
            StatementKind::Bimodule { name, host, dim } => {
                self.algebra(host)?;
                self.pending.push(Pending::Bimodule {
                    line: self.line,
                    name: name.clone(),
                    host: host.clone(),
                    dim: *dim,
                    left: Table::new(),
                    right: Table::new(),
                    phi: None,
                    psi: None,
                });
            }
            StatementKind::Map { target, columns } => {
                let n = columns.len();
                let cols = columns
                    .iter()
                    .map(|c| c.iter().map(|e| self.scalar(e)).collect::<Res<Vec<_>>>())
                    .collect::<Res<Vec<_>>>()?;
                let map = self.op(LinearMap::from_columns(n, cols))?;
                match target {
                    MapTarget::Named(name) => {
                        self.named_maps.push((name.clone(), self.line));
                        self.values.insert(name.clone(), Value::Map(map));
                    }
                    MapTarget::Field(owner, field) => {
                        let slot = self.pending.iter_mut().find(|p| p.name() == owner);
                        match (slot, field.as_str()) {
                            (Some(Pending::Algebra { alpha, .. }), "alpha") => *alpha = Some(map),
                            (Some(Pending::Algebra { beta, .. }), "beta") => *beta = Some(map),
                            (Some(Pending::Bimodule { phi, .. }), "phi") => *phi = Some(map),
                            (Some(Pending::Bimodule { psi, .. }), "psi") => *psi = Some(map),
                            _ => return Err(self.fail(format!("`{owner}.{field}` cannot be set here"))),
                        }
                    }
                }
            }
            StatementKind::Product {
                algebra,
                left,
                right,
                value,
            } => {
                let dim = self.pending_dim(algebra)?;
                let v = self.vector(value, 'e', dim)?;
                if let Some(Pending::Algebra { products, .. }) = self.pending.iter_mut().find(|p| p.name() == algebra) {
                    products.insert((*left, *right), v);
                }
            }
            StatementKind::Action {
                side,
                module,
                alg_index,
                mod_index,
                value,
            } => {
                let dim = self.pending_dim(module)?;
                let v = self.vector(value, 'v', dim)?;
                if let Some(Pending::Bimodule { left, right, .. }) =
                    self.pending.iter_mut().find(|p| p.name() == module)
                {
                    let table = if *side == Side::Left { left } else { right };
                    table.insert((*alg_index, *mod_index), v);
                }
            }
            StatementKind::Use { entry, name } => {
                let alg = self.op(catalog::lookup(entry))?;
                if entry == "rb_toy" {
                    self.values.insert(format!("{name}.R"), Value::Map(catalog::rb_toy().1));
                }
                self.bind(name, Value::Algebra(Arc::new(alg)));
            }
            StatementKind::Let { name, call } => {
                let value = self.construct(call)?;
                self.bind(name, value);
            }
            StatementKind::Check(d) => {
                let report = self.check(d)?;
                let expected = if d.expect_pass { Verdict::Pass } else { Verdict::Fail };
                self.report.entries.push(Entry::Check {
                    line: self.line,
                    directive: d.to_string(),
                    expected,
                    ok: report.verdict == expected,
                    report,
                });
            }
            StatementKind::Errata => self.report.errata = self.op(catalog::erratum_ledger())?,
        }
        Ok(())
    }

    fn pending_dim(&self, name: &str) -> Res<usize> {
        match self.pending.iter().find(|p| p.name() == name) {
            Some(Pending::Algebra { dim, .. } | Pending::Bimodule { dim, .. }) => Ok(*dim),
            None => Err(self.fail(format!("`{name}` is already in use"))),
        }
    }

    fn bind(&mut self, name: &str, value: Value) {
        self.summarize(self.line, name, &value);
        self.values.insert(name.to_string(), value);
    }

    fn summarize(&mut self, line: usize, name: &str, value: &Value) {
        let (object, dim, digest) = match value {
            Value::Algebra(a) => ("algebra", a.dim(), a.digest()),
            Value::Bimodule(v) => ("bimodule", v.mdim(), v.digest()),
            Value::Map(_) => return,
        };
        self.report.entries.push(Entry::Construction {
            line,
            name: name.to_string(),
            object: object.to_string(),
            dim,
            digest,
        });
    }

    /// Builds a declared object from its definition lines.
    fn materialize(&mut self, name: &str) -> Res<()> {
        let Some(idx) = self.pending.iter().position(|p| p.name() == name) else {
            return Ok(());
        };
        let p = self.pending.remove(idx);
        let outer = self.line;
        let (line, value) = match p {
            Pending::Algebra {
                line,
                name,
                dim,
                products,
                alpha,
                beta,
            } => {
                self.line = line;
                let alg = BiHomAlgebra::from_products(
                    name,
                    dim,
                    |i, j| {
                        Ok(products
                            .get(&(i, j))
                            .cloned()
                            .unwrap_or_else(|| vec![Scalar::zero(); dim]))
                    },
                    alpha.unwrap_or_else(|| LinearMap::identity(dim)),
                    beta.unwrap_or_else(|| LinearMap::identity(dim)),
                );
                (line, Value::Algebra(Arc::new(self.op(alg)?)))
            }
            Pending::Bimodule {
                line,
                name,
                host,
                dim,
                left,
                right,
                phi,
                psi,
            } => {
                self.line = line;
                let host = self.algebra(&host)?;
                let n = host.dim();
                let mut l = vec![Scalar::zero(); n * dim * dim];
                let mut r = vec![Scalar::zero(); n * dim * dim];
                for ((i, p), v) in left {
                    l[(i * dim + p) * dim..(i * dim + p + 1) * dim].clone_from_slice(&v);
                }
                for ((i, p), v) in right {
                    r[(p * n + i) * dim..(p * n + i + 1) * dim].clone_from_slice(&v);
                }
                let phi = phi.unwrap_or_else(|| LinearMap::identity(dim));
                let psi = psi.unwrap_or_else(|| LinearMap::identity(dim));
                let v = BiHomBimodule::new(name, host, dim, phi, psi, l, r);
                (line, Value::Bimodule(Arc::new(self.op(v)?)))
            }
        };
        self.summarize(line, name, &value);
        self.values.insert(name.to_string(), value);
        self.line = outer;
        Ok(())
    }

    fn lookup(&mut self, name: &str) -> Res<Value> {
        self.materialize(name)?;
        match self.values.get(name) {
            Some(v) => Ok(v.clone()),
            None => Err(self.fail(format!("`{name}` is not defined"))),
        }
    }

    fn algebra(&mut self, name: &str) -> Res<Arc<BiHomAlgebra>> {
        match self.lookup(name)? {
            Value::Algebra(a) => Ok(a),
            _ => Err(self.fail(format!("`{name}` is not an algebra"))),
        }
    }

    fn bimodule(&mut self, name: &str) -> Res<Arc<BiHomBimodule>> {
        match self.lookup(name)? {
            Value::Bimodule(v) => Ok(v),
            _ => Err(self.fail(format!("`{name}` is not a bimodule"))),
        }
    }

    fn scalar(&self, e: &Expr) -> Res<Scalar> {
        e.eval_scalar(self.ctx.as_ref())
            .map_err(|err| self.fail(format!("in `{e}`: {err}")))
    }

    fn int(&self, e: &Expr) -> Res<i64> {
        let s = self.scalar(e)?;
        s.as_rational()
            .filter(|q| q.is_integer())
            .and_then(|q| q.to_integer().to_i64())
            .ok_or_else(|| self.fail(format!("`{e}` is not an integer")))
    }

    fn count(&self, e: &Expr) -> Res<u32> {
        u32::try_from(self.int(e)?).map_err(|_| self.fail(format!("`{e}` is not a nonnegative integer")))
    }

    fn vector(&self, e: &Expr, prefix: char, dim: usize) -> Res<Vec<Scalar>> {
        match self.lin(e, prefix, dim)? {
            Lin::V(v) => Ok(v),
            Lin::S(s) if s.is_zero() => Ok(vec![Scalar::zero(); dim]),
            Lin::S(_) => Err(self.fail(format!(
                "`{e}` is a scalar, not a combination of {prefix}1..{prefix}{dim}"
            ))),
        }
    }

    fn lin(&self, e: &Expr, prefix: char, dim: usize) -> Res<Lin> {
        let not_linear = || self.fail(format!("`{e}` is not linear in {prefix}1..{prefix}{dim}"));
        let arith =
            |r: Result<Scalar, crate::scalar::ScalarError>| r.map_err(|err| self.fail(format!("in `{e}`: {err}")));
        match e {
            Expr::Ident(name) => match basis_number(name, prefix) {
                Some(k) if k <= dim => {
                    let mut v = vec![Scalar::zero(); dim];
                    v[k - 1] = Scalar::one();
                    Ok(Lin::V(v))
                }
                Some(_) => Err(self.fail(format!("`{name}` is outside {prefix}1..{prefix}{dim}"))),
                None => Ok(Lin::S(self.scalar(e)?)),
            },
            Expr::Int(_) => Ok(Lin::S(self.scalar(e)?)),
            Expr::Neg(x) => match self.lin(x, prefix, dim)? {
                Lin::S(s) => Ok(Lin::S(-s)),
                Lin::V(v) => Ok(Lin::V(v.into_iter().map(|c| -c).collect())),
            },
            Expr::Pow(..) => match self.lin_scalar_only(e, prefix, dim)? {
                Some(s) => Ok(Lin::S(s)),
                None => Err(not_linear()),
            },
            Expr::Bin(op, l, r) => {
                let (l, r) = (self.lin(l, prefix, dim)?, self.lin(r, prefix, dim)?);
                match (op, l, r) {
                    (BinOp::Add, Lin::S(a), Lin::S(b)) => Ok(Lin::S(arith(a.checked_add(&b))?)),
                    (BinOp::Sub, Lin::S(a), Lin::S(b)) => Ok(Lin::S(arith(a.checked_sub(&b))?)),
                    (BinOp::Mul, Lin::S(a), Lin::S(b)) => Ok(Lin::S(arith(a.checked_mul(&b))?)),
                    (BinOp::Div, Lin::S(a), Lin::S(b)) => Ok(Lin::S(arith(a.checked_div(&b))?)),
                    (BinOp::Add | BinOp::Sub, Lin::V(a), Lin::V(b)) => {
                        let sub = *op == BinOp::Sub;
                        let v = a
                            .iter()
                            .zip(&b)
                            .map(|(x, y)| if sub { x.checked_sub(y) } else { x.checked_add(y) });
                        Ok(Lin::V(v.map(arith).collect::<Res<_>>()?))
                    }
                    (BinOp::Mul, Lin::S(k), Lin::V(v)) | (BinOp::Mul, Lin::V(v), Lin::S(k)) => {
                        Ok(Lin::V(v.iter().map(|c| arith(k.checked_mul(c))).collect::<Res<_>>()?))
                    }
                    (BinOp::Div, Lin::V(v), Lin::S(k)) => {
                        Ok(Lin::V(v.iter().map(|c| arith(c.checked_div(&k))).collect::<Res<_>>()?))
                    }
                    (BinOp::Add | BinOp::Sub, Lin::V(v), Lin::S(s)) if s.is_zero() => Ok(Lin::V(v)),
                    (BinOp::Add, Lin::S(s), Lin::V(v)) if s.is_zero() => Ok(Lin::V(v)),
                    (BinOp::Sub, Lin::S(s), Lin::V(v)) if s.is_zero() => {
                        Ok(Lin::V(v.into_iter().map(|c| -c).collect()))
                    }
                    (BinOp::Add | BinOp::Sub, _, _) => {
                        Err(self.fail(format!("`{e}` mixes a scalar term with basis vectors")))
                    }
                    _ => Err(not_linear()),
                }
            }
        }
    }

    /// A power is only allowed on a scalar subexpression.
    fn lin_scalar_only(&self, e: &Expr, prefix: char, dim: usize) -> Res<Option<Scalar>> {
        let mut has_basis = false;
        visit_idents(e, &mut |n| {
            has_basis |= basis_number(n, prefix).is_some_and(|k| k <= dim)
        });
        if has_basis {
            Ok(None)
        } else {
            self.scalar(e).map(Some)
        }
    }

    fn map(&mut self, arg: &Arg) -> Res<LinearMap> {
        match arg {
            Arg::Name(name) => {
                self.used_maps.insert(name.clone());
                match self.lookup(name)? {
                    Value::Map(m) => Ok(m),
                    _ => Err(self.fail(format!("`{name}` is not a map"))),
                }
            }
            Arg::Field(owner, field) => {
                if let Some(Value::Map(m)) = self.values.get(&format!("{owner}.{field}")) {
                    return Ok(m.clone());
                }
                match (self.lookup(owner)?, field.as_str()) {
                    (Value::Algebra(a), "alpha") => Ok(a.alpha().clone()),
                    (Value::Algebra(a), "beta") => Ok(a.beta().clone()),
                    (Value::Bimodule(v), "phi") => Ok(v.phi().clone()),
                    (Value::Bimodule(v), "psi") => Ok(v.psi().clone()),
                    _ => Err(self.fail(format!("`{owner}.{field}` is not a map"))),
                }
            }
            Arg::Call(c) => match self.construct(c)? {
                Value::Map(m) => Ok(m),
                _ => Err(self.fail(format!("`{c}` is not a map"))),
            },
            Arg::Expr(e) => Err(self.fail(format!("`{e}` is not a map"))),
        }
    }

    fn name<'a>(&self, arg: &'a Arg) -> Res<&'a str> {
        match arg {
            Arg::Name(n) => Ok(n),
            other => Err(self.fail(format!("expected a name, found `{other}`"))),
        }
    }

    fn expr<'a>(&self, arg: &'a Arg) -> Res<&'a Expr> {
        match arg {
            Arg::Expr(e) => Ok(e),
            other => Err(self.fail(format!("expected an expression, found `{other}`"))),
        }
    }

    fn alg_arg(&mut self, arg: &Arg) -> Res<Arc<BiHomAlgebra>> {
        let n = self.name(arg)?.to_string();
        self.algebra(&n)
    }

    fn mod_arg(&mut self, arg: &Arg) -> Res<Arc<BiHomBimodule>> {
        let n = self.name(arg)?.to_string();
        self.bimodule(&n)
    }

    fn count_arg(&self, arg: &Arg) -> Res<u32> {
        self.count(self.expr(arg)?)
    }

    fn subspace(&self, arg: &Arg, ambient: usize) -> Res<Subspace> {
        let Arg::Call(Call { func, args }) = arg else {
            return Err(self.fail(format!("expected a subspace, found `{arg}`")));
        };
        match func.as_str() {
            "span" => {
                let vectors = args
                    .iter()
                    .map(|a| self.vector(self.expr(a)?, 'e', ambient))
                    .collect::<Res<Vec<_>>>()?;
                self.op(Subspace::spanned_by(ambient, vectors))
            }
            "block" => {
                let (start, len) = (self.count_arg(&args[0])? as usize, self.count_arg(&args[1])? as usize);
                if start == 0 {
                    return Err(self.fail("blocks start at 1"));
                }
                self.op(Subspace::coordinate_block(ambient, start - 1, len))
            }
            _ => Err(self.fail(format!("unknown subspace form `{func}`"))),
        }
    }

    fn theorem(&self, arg: &Arg) -> Res<bc::Theorem> {
        match self.name(arg)? {
            "alternative" => Ok(bc::Theorem::Alternative),
            "jordan" => Ok(bc::Theorem::Jordan),
            other => Err(self.fail(format!("unknown theorem selector `{other}`"))),
        }
    }

    fn maps(&mut self, args: &[Arg]) -> Res<Vec<LinearMap>> {
        args.iter().map(|a| self.map(a)).collect()
    }

    fn construct(&mut self, call: &Call) -> Res<Value> {
        let a = &call.args;
        let alg = |v: Result<BiHomAlgebra, Error>, r: &Runner| r.op(v).map(|x| Value::Algebra(Arc::new(x)));
        let bim = |v: Result<BiHomBimodule, Error>, r: &Runner| r.op(v).map(|x| Value::Bimodule(Arc::new(x)));
        match call.func.as_str() {
            "direct_sum" => {
                let (x, y) = (self.alg_arg(&a[0])?, self.alg_arg(&a[1])?);
                alg(constructions::direct_sum(&x, &y), self)
            }
            "tensor" => {
                let (x, y) = (self.alg_arg(&a[0])?, self.alg_arg(&a[1])?);
                alg(constructions::tensor_product(&x, &y), self)
            }
            "quotient" => {
                let x = self.alg_arg(&a[0])?;
                let h = self.subspace(&a[1], x.dim())?;
                alg(constructions::quotient(&x, &h), self)
            }
            "yau_twist" => {
                let x = self.alg_arg(&a[0])?;
                let m = self.maps(&a[1..])?;
                alg(constructions::yau_twist(&x, &m[0], &m[1]), self)
            }
            "power_twist" => {
                let x = self.alg_arg(&a[0])?;
                let k = self.count_arg(&a[1])?;
                alg(constructions::power_twist(&x, k), self)
            }
            "rb_deform" => {
                let x = self.alg_arg(&a[0])?;
                let r = self.map(&a[1])?;
                alg(constructions::rota_baxter_deformation(&x, &r), self)
            }
            "plus" => {
                let x = self.alg_arg(&a[0])?;
                alg(constructions::plus_algebra(&x), self)
            }
            "split_null" => {
                let v = self.mod_arg(&a[0])?;
                let t = self.theorem(&a[1])?;
                let ext = self.op(bc::split_null_extension(&v, t))?;
                Ok(Value::Algebra(ext.algebra))
            }
            "regular" => {
                let x = self.alg_arg(&a[0])?;
                bim(bc::regular_bimodule(&x), self)
            }
            "ideal" => {
                let x = self.alg_arg(&a[0])?;
                let h = self.subspace(&a[1], x.dim())?;
                bim(bc::ideal_bimodule(&x, &h), self)
            }
            "surjection" => {
                let (x, y) = (self.alg_arg(&a[0])?, self.alg_arg(&a[1])?);
                let f = self.map(&a[2])?;
                let f = self.op(AlgebraMorphism::new(x, y, f))?;
                bim(bc::bimodule_via_surjection(&f), self)
            }
            "shift" => {
                let v = self.mod_arg(&a[0])?;
                let (n, m) = (self.count_arg(&a[1])?, self.count_arg(&a[2])?);
                bim(bc::shift_bimodule(&v, n, m), self)
            }
            "twist" => {
                let v = self.mod_arg(&a[0])?;
                let m = self.maps(&a[1..])?;
                bim(bc::twist_bimodule(&v, &m[0], &m[1], &m[2], &m[3]), self)
            }
            "twist_powers" => {
                let v = self.mod_arg(&a[0])?;
                let k = a[1..].iter().map(|x| self.count_arg(x)).collect::<Res<Vec<_>>>()?;
                bim(bc::twist_bimodule_powers(&v, k[0], k[1], k[2], k[3], k[4], k[5]), self)
            }
            "rb_twist" => {
                let v = self.mod_arg(&a[0])?;
                let r = self.map(&a[1])?;
                bim(bc::rb_twist_bimodule(&v, &r), self)
            }
            "jordan_shift" => {
                let v = self.mod_arg(&a[0])?;
                let n = self.count_arg(&a[1])?;
                bim(bc::jordan_shift_bimodule(&v, n), self)
            }
            "jordan_deform" => {
                let v = self.mod_arg(&a[0])?;
                let m = self.maps(&a[1..])?;
                bim(bc::jordan_deform_bimodule(&v, &m[0], &m[1], &m[2], &m[3]), self)
            }
            "jordan_deform_powers" => {
                let v = self.mod_arg(&a[0])?;
                let m = self.maps(&a[1..5])?;
                let n = self.count_arg(&a[5])?;
                bim(
                    bc::jordan_deform_bimodule_powers(&v, &m[0], &m[1], &m[2], &m[3], n),
                    self,
                )
            }
            "over_plus" => {
                let v = self.mod_arg(&a[0])?;
                bim(bc::over_plus(&v), self)
            }
            "special_pair" => {
                let v = self.mod_arg(&a[0])?;
                bim(bc::special_pair_to_jordan_bimodule(&v), self)
            }
            "induced" => {
                let v = self.mod_arg(&a[0])?;
                let t = self.theorem(&a[1])?;
                let ext = self.op(bc::split_null_extension(&v, t))?;
                bim(ext.induced_bimodule(), self)
            }
            "auto" => {
                let x = self.alg_arg(&a[0])?;
                let tag = self.name(&a[1])?;
                self.op(catalog::automorphism(tag, &x)).map(Value::Map)
            }
            "compose" => {
                let m = self.maps(a)?;
                self.op(m[0].compose(&m[1])).map(Value::Map)
            }
            "pow" => {
                let m = self.map(&a[0])?;
                let k = self.count_arg(&a[1])?;
                self.op(m.pow(k)).map(Value::Map)
            }
            "inverse" => {
                let m = self.map(&a[0])?;
                self.op(m.inverse()).map(Value::Map)
            }
            "identity" => Ok(Value::Map(LinearMap::identity(self.count_arg(&a[0])? as usize))),
            other => Err(self.fail(format!("unknown construction `{other}`"))),
        }
    }

    fn mode(&self, d: &CheckDirective) -> Res<CheckMode> {
        match d.mode.unwrap_or(self.opts.mode) {
            ModeSpec::Linearized => Ok(CheckMode::Linearized),
            ModeSpec::Symbolic => Ok(CheckMode::DirectSymbolic),
            ModeSpec::Sampled => self.op(CheckMode::sampled(
                d.points.unwrap_or(self.opts.points),
                d.seed.unwrap_or(self.opts.seed),
            )),
        }
    }

    fn check(&mut self, d: &CheckDirective) -> Res<CheckReport> {
        let a = &d.args;
        let mode = self.mode(d)?;
        match self.lookup(&d.target)? {
            Value::Algebra(x) => {
                let report = match d.kind.as_str() {
                    "validate" => x.validate(),
                    "associative" => checks::check_bihom_associative(&x),
                    "left-alternative" => self.op(checks::check_left_alternative(&x, mode))?,
                    "right-alternative" => self.op(checks::check_right_alternative(&x, mode))?,
                    "alternative" => self.op(checks::check_alternative(&x, mode))?,
                    "commutative" => checks::check_bihom_commutative(&x),
                    "jordan" => self.op(checks::check_bihom_jordan(&x, mode))?,
                    "regular" => predicate("regular", checks::is_regular(&x)),
                    "involutive" => predicate("involutive", checks::is_involutive(&x)),
                    "rota-baxter" => {
                        let r = self.map(&a[0])?;
                        let lambda = self.scalar(self.expr(&a[1])?)?;
                        self.op(checks::check_rota_baxter(&x, &r, &lambda))?.identity
                    }
                    "subalgebra" => {
                        let h = self.subspace(&a[0], x.dim())?;
                        self.op(x.is_subalgebra(&h))?
                    }
                    "ideal" => {
                        let h = self.subspace(&a[0], x.dim())?;
                        self.op(x.is_two_sided_ideal(&h))?
                    }
                    "equals" => {
                        let y = self.alg_arg(&a[0])?;
                        let parts = [
                            ("structure constants", x.tensor(), y.tensor()),
                            ("alpha", x.alpha().entries(), y.alpha().entries()),
                            ("beta", x.beta().entries(), y.beta().entries()),
                        ];
                        self.equality(x.dim() == y.dim(), &parts)?
                    }
                    "morphism" | "graph-subalgebra" => {
                        let y = self.alg_arg(&a[0])?;
                        let f = self.map(&a[1])?;
                        let m = self.op(AlgebraMorphism::new(x.clone(), y.clone(), f))?;
                        if d.kind == "morphism" {
                            self.op(m.check())?
                        } else {
                            let sum = self.op(constructions::direct_sum(&x, &y))?;
                            let graph = self.op(m.graph_subspace())?;
                            let mut r = self.op(sum.is_subalgebra(&graph))?;
                            r.check_name = "graph-subalgebra".into();
                            r
                        }
                    }
                    other => return Err(self.fail(format!("`{other}` does not apply to an algebra"))),
                };
                Ok(report)
            }
            Value::Bimodule(v) => {
                let report = match d.kind.as_str() {
                    "assoc-bimodule" => bimodule::check_assoc_bimodule(&v),
                    "alt-bimodule" => self.op(bimodule::check_alt_bimodule(&v, mode))?,
                    "right-jordan-module" => self.op(bimodule::check_right_jordan_module(&v, mode))?,
                    "left-jordan-module" => self.op(bimodule::check_left_jordan_module(&v, mode))?,
                    "right-special" => bimodule::check_right_special(&v),
                    "left-special" => self.op(bimodule::check_left_special(&v))?,
                    "jordan-bimodule" => self.op(bimodule::check_jordan_bimodule(&v))?,
                    "operator-commutativity" => bimodule::check_operator_commutativity(&v),
                    "equals" => {
                        let w = self.mod_arg(&a[0])?;
                        let same_host = tensors_equal(v.host().tensor(), w.host().tensor());
                        let parts = [
                            ("left action", v.left_tensor(), w.left_tensor()),
                            ("right action", v.right_tensor(), w.right_tensor()),
                            ("phi", v.phi().entries(), w.phi().entries()),
                            ("psi", v.psi().entries(), w.psi().entries()),
                        ];
                        self.equality(v.mdim() == w.mdim() && same_host, &parts)?
                    }
                    "bimodule-morphism" => {
                        let w = self.mod_arg(&a[0])?;
                        let f = self.map(&a[1])?;
                        self.op(BimoduleMorphism::new(v.clone(), w, f))?.check()
                    }
                    other => return Err(self.fail(format!("`{other}` does not apply to a bimodule"))),
                };
                Ok(report)
            }
            Value::Map(_) => Err(self.fail(format!("`{}` is a map", d.target))),
        }
    }

    fn equality(&self, shapes_match: bool, parts: &[(&str, &[Scalar], &[Scalar])]) -> Res<CheckReport> {
        let mut report = CheckReport::new("equals", "exact");
        if !shapes_match {
            report.add_witness(Witness {
                identity: "shape".into(),
                tuple: Vec::new(),
                residual: Vec::new(),
            });
            return Ok(report);
        }
        for (what, x, y) in parts {
            report.stats.tuples_examined += x.len() as u64;
            for (k, (p, q)) in x.iter().zip(y.iter()).enumerate() {
                if !self.op(p.checked_eq(q).map_err(Error::from))? {
                    report.stats.failing_tuples += 1;
                    if report.witnesses.is_empty() {
                        report.add_witness(Witness {
                            identity: what.to_string(),
                            tuple: vec![k.to_string()],
                            residual: vec![p.to_string(), q.to_string()],
                        });
                    }
                }
            }
        }
        Ok(report)
    }
}

fn tensors_equal(a: &[Scalar], b: &[Scalar]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(p, q)| p.checked_eq(q).unwrap_or(false))
}

fn predicate(name: &str, holds: bool) -> CheckReport {
    let mut report = CheckReport::new(name, "exact");
    report.stats.tuples_examined = 1;
    if !holds {
        report.stats.failing_tuples = 1;
        report.add_witness(Witness {
            identity: name.into(),
            tuple: Vec::new(),
            residual: Vec::new(),
        });
    }
    report
}

fn visit_idents(e: &Expr, f: &mut dyn FnMut(&str)) {
    match e {
        Expr::Ident(n) => f(n),
        Expr::Int(_) => {}
        Expr::Neg(x) | Expr::Pow(x, _) => visit_idents(x, f),
        Expr::Bin(_, l, r) => {
            visit_idents(l, f);
            visit_idents(r, f);
        }
    }
}
