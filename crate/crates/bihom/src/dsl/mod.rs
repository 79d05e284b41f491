//! A line-oriented language for defining algebras, bimodules and
//! constructions, and for running checks on them.
//!
//! ```text
//! params a b                              # parameters of the scalar field
//! algebra A dim 2                         # basis e1, e2; products default to zero
//! map A.alpha = [[1, 0], [2a/(b-1), -1]]  # i-th inner list is the image of e_i
//! mu A e2 e2 = -a^2*(b-2)/(b-1)^2 * e1 + a*e2
//! bimodule V over A dim 1                 # basis v1
//! map V.phi = [[1]]
//! actl V e1 v1 = v1                       # e1 . v1
//! actr V v1 e1 = v1                       # v1 . e1
//! map R = [[0, 0], [0, 1]]                # a named map
//! use catalog.octonions as O
//! let B = direct_sum(A, O)
//! check B left-alternative mode=linearized
//! check O associative expect=fail
//! check A morphism(A, R)
//! errata                                  # attach the erratum ledger
//! ```
//!
//! Matrices are written column by column: the i-th inner list holds the
//! coordinates of the image of the i-th basis vector. Unset twists are the
//! identity. Definition lines for an object must come before its first use.
//!
//! Check options: `mode=linearized|symbolic|sampled`, `seed=N`, `points=N`
//! and `expect=pass|fail`.

mod parse;
mod run;

use std::fmt;

use crate::expr::Expr;

pub use parse::parse;
pub use run::{run, run_with, Entry, RunOptions, RunReport};

/// The built-in document that replays every acceptance check.
pub const REPLICATE_PAPER: &str = include_str!("replicate_paper.bihom");

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DslError {
    #[error("line {line}, column {col}: {expected}")]
    Syntax { line: usize, col: usize, expected: String },
    #[error("line {line}, column {col}: unknown identifier `{name}`")]
    UnknownIdentifier { line: usize, col: usize, name: String },
    #[error("line {line}, column {col}: `{name}` is already defined")]
    RedefinedName { line: usize, col: usize, name: String },
    #[error("line {line}: {message}")]
    Run { line: usize, message: String },
}

impl DslError {
    pub fn line(&self) -> usize {
        match self {
            DslError::Syntax { line, .. }
            | DslError::UnknownIdentifier { line, .. }
            | DslError::RedefinedName { line, .. }
            | DslError::Run { line, .. } => *line,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub statements: Vec<Statement>,
}

impl Document {
    /// Equal up to source positions.
    pub fn same_structure(&self, other: &Document) -> bool {
        self.statements.len() == other.statements.len()
            && self
                .statements
                .iter()
                .zip(&other.statements)
                .all(|(a, b)| a.kind == b.kind)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    /// 1-based source line.
    pub line: usize,
    pub kind: StatementKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MapTarget {
    /// `A.alpha`, `A.beta`, `V.phi` or `V.psi` of a declared object.
    Field(String, String),
    Named(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    /// An object, a theorem selector or an automorphism tag.
    Name(String),
    /// `owner.field`.
    Field(String, String),
    Expr(Expr),
    Call(Call),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Call {
    pub func: String,
    pub args: Vec<Arg>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeSpec {
    Linearized,
    Symbolic,
    Sampled,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckDirective {
    pub target: String,
    pub kind: String,
    pub args: Vec<Arg>,
    pub mode: Option<ModeSpec>,
    pub seed: Option<u64>,
    pub points: Option<usize>,
    pub expect_pass: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StatementKind {
    Params(Vec<String>),
    Algebra {
        name: String,
        dim: usize,
    },
    Bimodule {
        name: String,
        host: String,
        dim: usize,
    },
    Map {
        target: MapTarget,
        columns: Vec<Vec<Expr>>,
    },
    /// `mu A e_i e_j = value`, 0-based indices.
    Product {
        algebra: String,
        left: usize,
        right: usize,
        value: Expr,
    },
    /// `actl V e_i v_p = value` or `actr V v_p e_i = value`, 0-based indices.
    Action {
        side: Side,
        module: String,
        alg_index: usize,
        mod_index: usize,
        value: Expr,
    },
    Use {
        entry: String,
        name: String,
    },
    Let {
        name: String,
        call: Call,
    },
    Check(CheckDirective),
    Errata,
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Name(n) => write!(f, "{n}"),
            Arg::Field(o, n) => write!(f, "{o}.{n}"),
            Arg::Expr(e) => write!(f, "{e}"),
            Arg::Call(c) => write!(f, "{c}"),
        }
    }
}

fn join_args(args: &[Arg]) -> String {
    args.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Call {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.func, join_args(&self.args))
    }
}

impl fmt::Display for ModeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeSpec::Linearized => "linearized",
            ModeSpec::Symbolic => "symbolic",
            ModeSpec::Sampled => "sampled",
        })
    }
}

impl fmt::Display for CheckDirective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "check {} {}", self.target, self.kind)?;
        if !self.args.is_empty() {
            write!(f, "({})", join_args(&self.args))?;
        }
        if let Some(m) = self.mode {
            write!(f, " mode={m}")?;
        }
        if let Some(s) = self.seed {
            write!(f, " seed={s}")?;
        }
        if let Some(p) = self.points {
            write!(f, " points={p}")?;
        }
        if !self.expect_pass {
            write!(f, " expect=fail")?;
        }
        Ok(())
    }
}

impl fmt::Display for StatementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatementKind::Params(names) => write!(f, "params {}", names.join(" ")),
            StatementKind::Algebra { name, dim } => write!(f, "algebra {name} dim {dim}"),
            StatementKind::Bimodule { name, host, dim } => write!(f, "bimodule {name} over {host} dim {dim}"),
            StatementKind::Map { target, columns } => {
                match target {
                    MapTarget::Field(o, n) => write!(f, "map {o}.{n} = [")?,
                    MapTarget::Named(n) => write!(f, "map {n} = [")?,
                }
                for (c, col) in columns.iter().enumerate() {
                    if c > 0 {
                        write!(f, ", ")?;
                    }
                    let entries: Vec<String> = col.iter().map(|e| e.to_string()).collect();
                    write!(f, "[{}]", entries.join(", "))?;
                }
                write!(f, "]")
            }
            StatementKind::Product {
                algebra,
                left,
                right,
                value,
            } => {
                write!(f, "mu {algebra} e{} e{} = {value}", left + 1, right + 1)
            }
            StatementKind::Action {
                side,
                module,
                alg_index,
                mod_index,
                value,
            } => match side {
                Side::Left => write!(f, "actl {module} e{} v{} = {value}", alg_index + 1, mod_index + 1),
                Side::Right => write!(f, "actr {module} v{} e{} = {value}", mod_index + 1, alg_index + 1),
            },
            StatementKind::Use { entry, name } => write!(f, "use catalog.{entry} as {name}"),
            StatementKind::Let { name, call } => write!(f, "let {name} = {call}"),
            StatementKind::Check(c) => write!(f, "{c}"),
            StatementKind::Errata => write!(f, "errata"),
        }
    }
}

/// Renders one statement per line.
pub fn render(doc: &Document) -> String {
    let mut out = String::new();
    for s in &doc.statements {
        out.push_str(&s.kind.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err(src: &str) -> DslError {
        parse(src).unwrap_err()
    }

    #[test]
    fn minimal_document_has_three_statements() {
        let doc = parse("algebra A dim 1\nmu A e1 e1 = e1\ncheck A associative\n").unwrap();
        assert_eq!(doc.statements.len(), 3);
        assert_eq!(doc.statements[2].line, 3);
    }

    #[test]
    fn basis_index_out_of_range_is_located() {
        let e = err("algebra A dim 2\nmu A e1 e3 = e1\n");
        assert_eq!(
            e,
            DslError::UnknownIdentifier {
                line: 2,
                col: 9,
                name: "e3".into()
            }
        );
    }

    #[test]
    fn unknown_coefficient_name_is_located() {
        let e = err("params a\nalgebra A dim 1\nmu A e1 e1 = c*e1\n");
        assert_eq!(
            e,
            DslError::UnknownIdentifier {
                line: 3,
                col: 14,
                name: "c".into()
            }
        );
    }

    #[test]
    fn names_bind_once() {
        assert!(matches!(
            err("algebra A dim 1\nalgebra A dim 2\n"),
            DslError::RedefinedName { line: 2, col: 9, .. }
        ));
        assert!(matches!(
            err("params a\nalgebra a dim 1\n"),
            DslError::RedefinedName { .. }
        ));
        assert!(matches!(
            err("algebra A dim 1\nmu A e1 e1 = e1\nmu A e1 e1 = 0\n"),
            DslError::RedefinedName { line: 3, .. }
        ));
    }

    #[test]
    fn names_are_defined_before_use() {
        assert!(matches!(
            err("check A associative\n"),
            DslError::UnknownIdentifier { line: 1, col: 7, .. }
        ));
        assert!(matches!(err("let B = plus(A)\n"), DslError::UnknownIdentifier { .. }));
    }

    #[test]
    fn definitions_close_at_first_use() {
        let e = err("algebra A dim 1\ncheck A validate\nmu A e1 e1 = e1\n");
        assert!(matches!(e, DslError::Syntax { line: 3, col: 4, .. }), "{e:?}");
    }

    #[test]
    fn syntax_errors_name_the_expectation() {
        match err("algebra A dimension 2\n") {
            DslError::Syntax { line, col, expected } => {
                assert_eq!((line, col), (1, 11));
                assert!(expected.contains("`dim`"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            err("use catalog.sedenions as S\n"),
            DslError::UnknownIdentifier { col: 13, .. }
        ));
        assert!(matches!(
            err("use catalog.octonions as O\ncheck O jordan-bimodule\n"),
            DslError::Syntax { col: 9, .. }
        ));
        assert!(matches!(err("map R = [[1, 0], [0]]\n"), DslError::Syntax { .. }));
    }

    #[test]
    fn render_reparses_to_the_same_structure() {
        let doc = parse(REPLICATE_PAPER).unwrap();
        let again = parse(&render(&doc)).unwrap();
        assert!(doc.same_structure(&again));
    }

    #[test]
    fn passing_check_succeeds() {
        let report = run(&parse("algebra A dim 1\nmu A e1 e1 = e1\ncheck A associative\n").unwrap()).unwrap();
        assert!(report.passed);
        assert_eq!(report.exit_code(), 0);
        assert_eq!(report.entries.len(), 2);
    }

    #[test]
    fn failing_check_prints_a_witness() {
        let report = run(&parse("use catalog.octonions as O\ncheck O associative\n").unwrap()).unwrap();
        assert_eq!(report.exit_code(), 1);
        let text = report.to_text();
        assert!(text.contains("UNEXPECTED"));
        assert!(text.contains("associator at (e2, e3, e5)"));
    }

    #[test]
    fn matrices_list_images_of_basis_vectors() {
        let src = "algebra A dim 2\nmu A e1 e1 = e2\nmap F = [[1, 1], [0, 1]]\nmap G = [[1, 0], [1, 1]]\n\
                   check A morphism(A, F)\ncheck A morphism(A, G) expect=fail\n";
        assert!(run(&parse(src).unwrap()).unwrap().passed);
    }

    #[test]
    fn unused_maps_are_reported() {
        let report =
            run(&parse("map R = [[1]]\nmap S = [[2]]\nalgebra A dim 1\ncheck A morphism(A, S) expect=fail\n").unwrap())
                .unwrap();
        assert_eq!(
            report.warnings,
            vec!["line 1: map `R` is written but never used".to_string()]
        );
    }

    #[test]
    fn coefficients_must_be_linear_in_the_basis() {
        let e = run(&parse("algebra A dim 1\nmu A e1 e1 = e1*e1\n").unwrap()).unwrap_err();
        assert!(matches!(e, DslError::Run { line: 2, .. }));
        let e = run(&parse("algebra A dim 1\nmu A e1 e1 = 1 + e1\n").unwrap()).unwrap_err();
        assert!(matches!(e, DslError::Run { line: 2, .. }));
    }

    #[test]
    fn operation_errors_carry_the_statement_line() {
        let src = "use catalog.octonions as O\n\nlet Q = quotient(O, span(e2))\n";
        let e = run(&parse(src).unwrap()).unwrap_err();
        assert_eq!(e.line(), 3);
    }

    #[test]
    fn bimodules_are_built_from_action_lines() {
        let src = "algebra A dim 1\nmu A e1 e1 = e1\nbimodule V over A dim 1\nactl V e1 v1 = v1\nactr V v1 e1 = v1\n\
                   check V assoc-bimodule\ncheck V alt-bimodule mode=symbolic\n";
        let report = run(&parse(src).unwrap()).unwrap();
        assert!(report.passed, "{}", report.to_text());
    }

    #[test]
    fn structured_report_is_key_sorted() {
        let report = run(&parse("algebra A dim 1\ncheck A validate\n").unwrap()).unwrap();
        let json = report.to_structured();
        let entries = json.find("\"entries\"").unwrap();
        let errata = json.find("\"errata\"").unwrap();
        let passed = json.find("\"passed\"").unwrap();
        assert!(entries < errata && errata < passed);
        assert!(!json.contains("elapsed"));
    }
}
