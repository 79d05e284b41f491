//! Line parser with name resolution.

use std::collections::{HashMap, HashSet};

use crate::catalog;
use crate::expr::{lex, Expr, ExprError, ExprParser, Tok, Token};

use super::{Arg, Call, CheckDirective, Document, DslError, MapTarget, ModeSpec, Side, Statement, StatementKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum Kind {
    Algebra,
    Bimodule,
    Map,
}

impl Kind {
    fn noun(self) -> &'static str {
        match self {
            Kind::Algebra => "an algebra",
            Kind::Bimodule => "a bimodule",
            Kind::Map => "a map",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(super) enum ArgKind {
    Algebra,
    Bimodule,
    Map,
    Int,
    Scalar,
    Subspace,
    Theorem,
    Tag,
}

/// Constructions usable in `let`, with their argument and result kinds.
pub(super) const FUNCTIONS: &[(&str, &[ArgKind], Kind)] = {
    use ArgKind::*;
    &[
        ("direct_sum", &[Algebra, Algebra], Kind::Algebra),
        ("tensor", &[Algebra, Algebra], Kind::Algebra),
        ("quotient", &[Algebra, Subspace], Kind::Algebra),
        ("yau_twist", &[Algebra, Map, Map], Kind::Algebra),
        ("power_twist", &[Algebra, Int], Kind::Algebra),
        ("rb_deform", &[Algebra, Map], Kind::Algebra),
        ("plus", &[Algebra], Kind::Algebra),
        ("split_null", &[Bimodule, Theorem], Kind::Algebra),
        ("regular", &[Algebra], Kind::Bimodule),
        ("ideal", &[Algebra, Subspace], Kind::Bimodule),
        ("surjection", &[Algebra, Algebra, Map], Kind::Bimodule),
        ("shift", &[Bimodule, Int, Int], Kind::Bimodule),
        ("twist", &[Bimodule, Map, Map, Map, Map], Kind::Bimodule),
        (
            "twist_powers",
            &[Bimodule, Int, Int, Int, Int, Int, Int],
            Kind::Bimodule,
        ),
        ("rb_twist", &[Bimodule, Map], Kind::Bimodule),
        ("jordan_shift", &[Bimodule, Int], Kind::Bimodule),
        ("jordan_deform", &[Bimodule, Map, Map, Map, Map], Kind::Bimodule),
        (
            "jordan_deform_powers",
            &[Bimodule, Map, Map, Map, Map, Int],
            Kind::Bimodule,
        ),
        ("over_plus", &[Bimodule], Kind::Bimodule),
        ("special_pair", &[Bimodule], Kind::Bimodule),
        ("induced", &[Bimodule, Theorem], Kind::Bimodule),
        ("auto", &[Algebra, Tag], Kind::Map),
        ("compose", &[Map, Map], Kind::Map),
        ("pow", &[Map, Int], Kind::Map),
        ("inverse", &[Map], Kind::Map),
        ("identity", &[Int], Kind::Map),
    ]
};

/// Check kinds per target, with their arguments and whether a mode applies.
pub(super) const CHECKS: &[(&str, Kind, &[ArgKind], bool)] = {
    use ArgKind::*;
    &[
        ("validate", Kind::Algebra, &[], false),
        ("associative", Kind::Algebra, &[], false),
        ("left-alternative", Kind::Algebra, &[], true),
        ("right-alternative", Kind::Algebra, &[], true),
        ("alternative", Kind::Algebra, &[], true),
        ("commutative", Kind::Algebra, &[], false),
        ("jordan", Kind::Algebra, &[], true),
        ("regular", Kind::Algebra, &[], false),
        ("involutive", Kind::Algebra, &[], false),
        ("rota-baxter", Kind::Algebra, &[Map, Scalar], false),
        ("subalgebra", Kind::Algebra, &[Subspace], false),
        ("ideal", Kind::Algebra, &[Subspace], false),
        ("equals", Kind::Algebra, &[Algebra], false),
        ("morphism", Kind::Algebra, &[Algebra, Map], false),
        ("graph-subalgebra", Kind::Algebra, &[Algebra, Map], false),
        ("assoc-bimodule", Kind::Bimodule, &[], false),
        ("alt-bimodule", Kind::Bimodule, &[], true),
        ("right-jordan-module", Kind::Bimodule, &[], true),
        ("left-jordan-module", Kind::Bimodule, &[], true),
        ("right-special", Kind::Bimodule, &[], false),
        ("left-special", Kind::Bimodule, &[], false),
        ("jordan-bimodule", Kind::Bimodule, &[], false),
        ("operator-commutativity", Kind::Bimodule, &[], false),
        ("equals", Kind::Bimodule, &[Bimodule], false),
        ("bimodule-morphism", Kind::Bimodule, &[Bimodule, Map], false),
    ]
};

pub(super) const THEOREMS: &[&str] = &["alternative", "jordan"];

#[derive(Debug, Clone)]
struct Sym {
    kind: Kind,
    dim: Option<usize>,
    /// Defined by an `algebra` or `bimodule` statement, so definition lines may follow.
    declared: bool,
    extra_fields: Vec<&'static str>,
    host: Option<String>,
}

impl Sym {
    fn new(kind: Kind, dim: Option<usize>, declared: bool) -> Self {
        Sym {
            kind,
            dim,
            declared,
            extra_fields: Vec::new(),
            host: None,
        }
    }
}

#[derive(Default)]
struct Symbols {
    params: Option<Vec<String>>,
    objects: HashMap<String, Sym>,
    sealed: HashSet<String>,
    entries: HashSet<String>,
}

impl Symbols {
    fn is_param(&self, name: &str) -> bool {
        self.params.as_ref().is_some_and(|p| p.iter().any(|n| n == name))
    }
}

/// `e3` with prefix `e` gives `Some(3)`.
pub(super) fn basis_number(name: &str, prefix: char) -> Option<usize> {
    let rest = name.strip_prefix(prefix)?;
    if rest.is_empty() || !rest.chars().all(|c| c.is_ascii_digit()) || rest.starts_with('0') {
        return None;
    }
    rest.parse().ok()
}

fn is_basis_like(name: &str) -> bool {
    basis_number(name, 'e').is_some() || basis_number(name, 'v').is_some()
}

/// Parses a document, resolving every name against earlier statements.
pub fn parse(source: &str) -> Result<Document, DslError> {
    let mut symbols = Symbols::default();
    let mut statements = Vec::new();
    for (i, text) in source.lines().enumerate() {
        let line = i + 1;
        let tokens = lex(text).map_err(|e| DslError::Syntax {
            line,
            col: e.col,
            expected: e.message,
        })?;
        if tokens.is_empty() {
            continue;
        }
        let mut lp = LineParser {
            tokens: &tokens,
            p: ExprParser::new(&tokens),
            line,
            st: &mut symbols,
        };
        let kind = lp.statement()?;
        statements.push(Statement { line, kind });
    }
    Ok(Document { statements })
}

struct LineParser<'a, 's> {
    tokens: &'a [Token],
    p: ExprParser<'a>,
    line: usize,
    st: &'s mut Symbols,
}

impl<'a, 's> LineParser<'a, 's> {
    fn syntax(&self, col: usize, expected: impl Into<String>) -> DslError {
        DslError::Syntax {
            line: self.line,
            col,
            expected: expected.into(),
        }
    }

    fn unknown(&self, col: usize, name: &str) -> DslError {
        DslError::UnknownIdentifier {
            line: self.line,
            col,
            name: name.into(),
        }
    }

    fn expr_error(&self, e: ExprError) -> DslError {
        self.syntax(e.col, e.message)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.tokens.get(self.p.position() + offset).map(|t| &t.tok)
    }

    fn ident(&mut self, expected: &str) -> Result<(String, usize), DslError> {
        let col = self.p.col();
        match self.p.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.p.advance();
                Ok((s, col))
            }
            _ => Err(self.syntax(col, format!("expected {expected}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), DslError> {
        let col = self.p.col();
        match self.p.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.p.advance();
                Ok(())
            }
            _ => Err(self.syntax(col, format!("expected `{kw}`"))),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), DslError> {
        self.p.expect(&tok).map_err(|e| self.expr_error(e))
    }

    fn end(&self) -> Result<(), DslError> {
        self.p.expect_end().map_err(|e| self.expr_error(e))
    }

    fn number(&mut self, expected: &str) -> Result<usize, DslError> {
        let col = self.p.col();
        match self.p.peek() {
            Some(Tok::Int(n)) => {
                let v = usize::try_from(n).map_err(|_| self.syntax(col, "number too large"))?;
                self.p.advance();
                Ok(v)
            }
            _ => Err(self.syntax(col, format!("expected {expected}"))),
        }
    }

    fn define(&mut self, name: &str, col: usize, sym: Sym) -> Result<(), DslError> {
        if self.st.objects.contains_key(name) || self.st.is_param(name) {
            return Err(DslError::RedefinedName {
                line: self.line,
                col,
                name: name.into(),
            });
        }
        if is_basis_like(name) {
            return Err(self.syntax(col, format!("`{name}` is a basis name; expected a different name")));
        }
        self.st.objects.insert(name.into(), sym);
        Ok(())
    }

    /// A defined object of one of `kinds`; marks it as used.
    fn object(&mut self, kinds: &[Kind]) -> Result<(String, Sym), DslError> {
        let nouns: Vec<&str> = kinds.iter().map(|k| k.noun()).collect();
        let (name, col) = self.ident(&nouns.join(" or "))?;
        let sym = match self.st.objects.get(&name) {
            Some(s) => s.clone(),
            None => return Err(self.unknown(col, &name)),
        };
        if !kinds.contains(&sym.kind) {
            return Err(self.syntax(col, format!("expected {}, found `{name}`", nouns.join(" or "))));
        }
        self.st.sealed.insert(name.clone());
        Ok((name, sym))
    }

    /// A declared object that is still open for definition lines.
    fn open_object(&mut self, kind: Kind) -> Result<(String, usize), DslError> {
        let (name, col) = self.ident(kind.noun())?;
        let sym = match self.st.objects.get(&name) {
            Some(s) => s.clone(),
            None => return Err(self.unknown(col, &name)),
        };
        if sym.kind != kind || !sym.declared {
            return Err(self.syntax(
                col,
                format!("expected {} declared in this document, found `{name}`", kind.noun()),
            ));
        }
        if self.st.sealed.contains(&name) {
            return Err(self.syntax(col, format!("definitions of `{name}` must come before its first use")));
        }
        Ok((name, sym.dim.unwrap_or(0)))
    }

    fn entry_once(&mut self, key: String, col: usize) -> Result<(), DslError> {
        if !self.st.entries.insert(key.clone()) {
            return Err(DslError::RedefinedName {
                line: self.line,
                col,
                name: key,
            });
        }
        Ok(())
    }

    fn basis_index(&mut self, prefix: char, dim: usize) -> Result<usize, DslError> {
        let (name, col) = self.ident(&format!("a basis vector {prefix}1..{prefix}{dim}"))?;
        match basis_number(&name, prefix) {
            Some(k) if k <= dim => Ok(k - 1),
            Some(_) => Err(self.unknown(col, &name)),
            None => Err(self.syntax(
                col,
                format!("expected a basis vector {prefix}1..{prefix}{dim}, found `{name}`"),
            )),
        }
    }

    /// An expression whose identifiers must satisfy `allowed`.
    fn expr(&mut self, allowed: &dyn Fn(&str) -> bool) -> Result<Expr, DslError> {
        let mut bad: Option<(String, usize)> = None;
        let result = self.p.parse_expr(&mut |name: &str, col: usize| {
            if allowed(name) {
                Ok(())
            } else {
                bad = Some((name.to_string(), col));
                Err(ExprError {
                    col,
                    message: format!("unknown identifier `{name}`"),
                })
            }
        });
        match (result, bad) {
            (_, Some((name, col))) => Err(self.unknown(col, &name)),
            (Err(e), None) => Err(self.expr_error(e)),
            (Ok(e), None) => Ok(e),
        }
    }

    fn scalar_expr(&mut self) -> Result<Expr, DslError> {
        let params = self.st.params.clone().unwrap_or_default();
        self.expr(&|n| params.iter().any(|p| p == n))
    }

    /// A linear combination of basis vectors with scalar coefficients.
    fn vector_expr(&mut self, prefix: char, dim: Option<usize>) -> Result<Expr, DslError> {
        let params = self.st.params.clone().unwrap_or_default();
        self.expr(&|n| {
            params.iter().any(|p| p == n) || basis_number(n, prefix).is_some_and(|k| dim.is_none_or(|d| k <= d))
        })
    }

    fn matrix(&mut self, dim: Option<usize>) -> Result<Vec<Vec<Expr>>, DslError> {
        let start = self.p.col();
        self.expect(Tok::LBracket)?;
        let mut columns = Vec::new();
        loop {
            self.expect(Tok::LBracket)?;
            let mut col = vec![self.scalar_expr()?];
            while self.p.eat(&Tok::Comma) {
                col.push(self.scalar_expr()?);
            }
            self.expect(Tok::RBracket)?;
            columns.push(col);
            if !self.p.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBracket)?;
        let n = dim.unwrap_or(columns.len());
        if columns.len() != n || columns.iter().any(|c| c.len() != n) {
            return Err(self.syntax(start, format!("expected a {n}x{n} matrix")));
        }
        Ok(columns)
    }

    fn statement(&mut self) -> Result<StatementKind, DslError> {
        let (head, col) = self.ident("a statement keyword")?;
        let kind = match head.as_str() {
            "params" => self.params(col)?,
            "algebra" => {
                let (name, col) = self.ident("an algebra name")?;
                self.keyword("dim")?;
                let dim = self.number("a dimension")?;
                self.define(&name, col, Sym::new(Kind::Algebra, Some(dim), true))?;
                StatementKind::Algebra { name, dim }
            }
            "bimodule" => {
                let (name, col) = self.ident("a bimodule name")?;
                self.keyword("over")?;
                let (host, _) = self.object(&[Kind::Algebra])?;
                self.keyword("dim")?;
                let dim = self.number("a dimension")?;
                self.define(
                    &name,
                    col,
                    Sym {
                        host: Some(host.clone()),
                        ..Sym::new(Kind::Bimodule, Some(dim), true)
                    },
                )?;
                StatementKind::Bimodule { name, host, dim }
            }
            "map" => self.map()?,
            "mu" => {
                let (algebra, dim) = self.open_object(Kind::Algebra)?;
                let c = self.p.col();
                let left = self.basis_index('e', dim)?;
                let right = self.basis_index('e', dim)?;
                self.entry_once(format!("mu {algebra} e{} e{}", left + 1, right + 1), c)?;
                self.expect(Tok::Eq)?;
                let value = self.vector_expr('e', Some(dim))?;
                StatementKind::Product {
                    algebra,
                    left,
                    right,
                    value,
                }
            }
            "actl" | "actr" => {
                let (module, mdim) = self.open_object(Kind::Bimodule)?;
                let host_dim = self.host_dim(&module);
                let c = self.p.col();
                let (side, alg_index, mod_index) = if head == "actl" {
                    let i = self.basis_index('e', host_dim)?;
                    (Side::Left, i, self.basis_index('v', mdim)?)
                } else {
                    let p = self.basis_index('v', mdim)?;
                    (Side::Right, self.basis_index('e', host_dim)?, p)
                };
                self.entry_once(format!("{head} {module} {alg_index} {mod_index}"), c)?;
                self.expect(Tok::Eq)?;
                let value = self.vector_expr('v', Some(mdim))?;
                StatementKind::Action {
                    side,
                    module,
                    alg_index,
                    mod_index,
                    value,
                }
            }
            "use" => {
                self.keyword("catalog")?;
                self.expect(Tok::Dot)?;
                let (mut entry, ecol) = self.ident("a catalog entry")?;
                while self.p.eat(&Tok::Dot) {
                    entry.push('.');
                    entry.push_str(&self.ident("a catalog entry")?.0);
                }
                let found = catalog::entries().into_iter().find(|e| e.name == entry);
                let Some(found) = found else {
                    return Err(self.unknown(ecol, &entry));
                };
                self.keyword("as")?;
                let (name, col) = self.ident("a name")?;
                let extra_fields = if entry == "rb_toy" { vec!["R"] } else { vec![] };
                self.define(
                    &name,
                    col,
                    Sym {
                        extra_fields,
                        ..Sym::new(Kind::Algebra, Some(found.dim), false)
                    },
                )?;
                StatementKind::Use { entry, name }
            }
            "let" => {
                let (name, col) = self.ident("a name")?;
                self.expect(Tok::Eq)?;
                let (call, kind) = self.call(None)?;
                self.define(&name, col, Sym::new(kind, None, false))?;
                StatementKind::Let { name, call }
            }
            "check" => StatementKind::Check(self.check()?),
            "errata" => StatementKind::Errata,
            _ => return Err(self.syntax(col, format!("expected a statement keyword, found `{head}`"))),
        };
        self.end()?;
        Ok(kind)
    }

    fn host_dim(&self, module: &str) -> usize {
        let host = self
            .st
            .objects
            .get(module)
            .and_then(|s| s.host.clone())
            .unwrap_or_default();
        self.st.objects.get(&host).and_then(|s| s.dim).unwrap_or(0)
    }

    fn params(&mut self, col: usize) -> Result<StatementKind, DslError> {
        if self.st.params.is_some() {
            return Err(DslError::RedefinedName {
                line: self.line,
                col,
                name: "params".into(),
            });
        }
        let mut names: Vec<String> = Vec::new();
        while self.p.peek().is_some() {
            let (name, c) = self.ident("a parameter name")?;
            if names.contains(&name) || self.st.objects.contains_key(&name) {
                return Err(DslError::RedefinedName {
                    line: self.line,
                    col: c,
                    name,
                });
            }
            if is_basis_like(&name) {
                return Err(self.syntax(c, format!("`{name}` is a basis name; expected a parameter name")));
            }
            names.push(name);
        }
        if names.is_empty() {
            return Err(self.syntax(self.p.col(), "expected a parameter name"));
        }
        self.st.params = Some(names.clone());
        Ok(StatementKind::Params(names))
    }

    fn map(&mut self) -> Result<StatementKind, DslError> {
        let (name, col) = self.ident("a map name or owner.field")?;
        if self.p.eat(&Tok::Dot) {
            let sym = match self.st.objects.get(&name) {
                Some(s) => s.clone(),
                None => return Err(self.unknown(col, &name)),
            };
            let (field, fcol) = self.ident("a twist name")?;
            let fields: &[&str] = match sym.kind {
                Kind::Algebra => &["alpha", "beta"],
                Kind::Bimodule => &["phi", "psi"],
                Kind::Map => &[],
            };
            if !fields.contains(&field.as_str()) {
                return Err(self.syntax(fcol, format!("expected one of {}", fields.join(", "))));
            }
            if !sym.declared {
                return Err(self.syntax(
                    col,
                    format!("expected an object declared in this document, found `{name}`"),
                ));
            }
            if self.st.sealed.contains(&name) {
                return Err(self.syntax(col, format!("definitions of `{name}` must come before its first use")));
            }
            self.entry_once(format!("map {name}.{field}"), col)?;
            self.expect(Tok::Eq)?;
            let columns = self.matrix(sym.dim)?;
            Ok(StatementKind::Map {
                target: MapTarget::Field(name, field),
                columns,
            })
        } else {
            self.expect(Tok::Eq)?;
            let columns = self.matrix(None)?;
            self.define(&name, col, Sym::new(Kind::Map, Some(columns.len()), false))?;
            Ok(StatementKind::Map {
                target: MapTarget::Named(name),
                columns,
            })
        }
    }

    /// `func(args)`; with `want`, the result must be of that kind.
    fn call(&mut self, want: Option<Kind>) -> Result<(Call, Kind), DslError> {
        let (func, col) = self.ident("a construction")?;
        let Some(&(_, kinds, result)) = FUNCTIONS.iter().find(|f| f.0 == func && want.is_none_or(|w| w == f.2)) else {
            return Err(self.unknown(col, &func));
        };
        self.expect(Tok::LParen)?;
        let args = self.args(kinds)?;
        self.expect(Tok::RParen)?;
        Ok((Call { func, args }, result))
    }

    fn args(&mut self, kinds: &[ArgKind]) -> Result<Vec<Arg>, DslError> {
        let mut args = Vec::new();
        for (i, &kind) in kinds.iter().enumerate() {
            if i > 0 {
                self.expect(Tok::Comma)?;
            }
            args.push(self.arg(kind)?);
        }
        Ok(args)
    }

    fn arg(&mut self, kind: ArgKind) -> Result<Arg, DslError> {
        match kind {
            ArgKind::Algebra => Ok(Arg::Name(self.object(&[Kind::Algebra])?.0)),
            ArgKind::Bimodule => Ok(Arg::Name(self.object(&[Kind::Bimodule])?.0)),
            ArgKind::Map => self.map_arg(),
            ArgKind::Int => Ok(Arg::Expr(self.expr(&|_| false)?)),
            ArgKind::Scalar => Ok(Arg::Expr(self.scalar_expr()?)),
            ArgKind::Theorem => {
                let (name, col) = self.ident("`alternative` or `jordan`")?;
                if !THEOREMS.contains(&name.as_str()) {
                    return Err(self.syntax(col, "expected `alternative` or `jordan`"));
                }
                Ok(Arg::Name(name))
            }
            ArgKind::Tag => Ok(Arg::Name(self.ident("an automorphism tag")?.0)),
            ArgKind::Subspace => {
                let (func, col) = self.ident("`span(...)` or `block(start, len)`")?;
                self.expect(Tok::LParen)?;
                let args = match func.as_str() {
                    "span" => {
                        let mut vs = vec![Arg::Expr(self.vector_expr('e', None)?)];
                        while self.p.eat(&Tok::Comma) {
                            vs.push(Arg::Expr(self.vector_expr('e', None)?));
                        }
                        vs
                    }
                    "block" => self.args(&[ArgKind::Int, ArgKind::Int])?,
                    _ => return Err(self.syntax(col, "expected `span(...)` or `block(start, len)`")),
                };
                self.expect(Tok::RParen)?;
                Ok(Arg::Call(Call { func, args }))
            }
        }
    }

    fn map_arg(&mut self) -> Result<Arg, DslError> {
        match (self.p.peek(), self.peek_at(1)) {
            (Some(Tok::Ident(_)), Some(Tok::LParen)) => Ok(Arg::Call(self.call(Some(Kind::Map))?.0)),
            (Some(Tok::Ident(_)), Some(Tok::Dot)) => {
                let (owner, sym) = self.object(&[Kind::Algebra, Kind::Bimodule])?;
                self.expect(Tok::Dot)?;
                let (field, col) = self.ident("a map field")?;
                let base: &[&str] = if sym.kind == Kind::Algebra {
                    &["alpha", "beta"]
                } else {
                    &["phi", "psi"]
                };
                if !base.contains(&field.as_str()) && !sym.extra_fields.contains(&field.as_str()) {
                    return Err(self.unknown(col, &format!("{owner}.{field}")));
                }
                Ok(Arg::Field(owner, field))
            }
            _ => Ok(Arg::Name(self.object(&[Kind::Map])?.0)),
        }
    }

    fn check(&mut self) -> Result<CheckDirective, DslError> {
        let (target, sym) = self.object(&[Kind::Algebra, Kind::Bimodule])?;
        let (mut kind, col) = self.ident("a check kind")?;
        while self.p.peek() == Some(&Tok::Minus) && matches!(self.peek_at(1), Some(Tok::Ident(_))) {
            self.p.advance();
            kind.push('-');
            kind.push_str(&self.ident("a check kind")?.0);
        }
        let Some(&(_, _, arg_kinds, _)) = CHECKS.iter().find(|c| c.0 == kind && c.1 == sym.kind) else {
            return Err(self.syntax(col, format!("expected a check for {}, found `{kind}`", sym.kind.noun())));
        };
        let args = if arg_kinds.is_empty() {
            Vec::new()
        } else {
            self.expect(Tok::LParen)?;
            let args = self.args(arg_kinds)?;
            self.expect(Tok::RParen)?;
            args
        };
        let mut d = CheckDirective {
            target,
            kind,
            args,
            mode: None,
            seed: None,
            points: None,
            expect_pass: true,
        };
        let mut seen = HashSet::new();
        while self.p.peek().is_some() {
            let (key, kcol) = self.ident("a check option")?;
            if !seen.insert(key.clone()) {
                return Err(self.syntax(kcol, format!("option `{key}` given twice")));
            }
            self.expect(Tok::Eq)?;
            match key.as_str() {
                "mode" => {
                    let (v, vcol) = self.ident("a mode")?;
                    d.mode = Some(match v.as_str() {
                        "linearized" => ModeSpec::Linearized,
                        "symbolic" => ModeSpec::Symbolic,
                        "sampled" => ModeSpec::Sampled,
                        _ => return Err(self.syntax(vcol, "expected `linearized`, `symbolic` or `sampled`")),
                    });
                }
                "seed" => d.seed = Some(self.number("a seed")? as u64),
                "points" => d.points = Some(self.number("a point count")?),
                "expect" => {
                    let (v, vcol) = self.ident("`pass` or `fail`")?;
                    d.expect_pass = match v.as_str() {
                        "pass" => true,
                        "fail" => false,
                        _ => return Err(self.syntax(vcol, "expected `pass` or `fail`")),
                    };
                }
                _ => return Err(self.syntax(kcol, "expected `mode`, `seed`, `points` or `expect`")),
            }
        }
        Ok(d)
    }
}
