//! Built-in algebras: the two-parameter tables, classical seed algebras and
//! their automorphisms, plus the list of printed values that disagree with
//! recomputation.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{render_combination, BiHomAlgebra};
use crate::constructions::plus_algebra;
use crate::error::{Error, Result};
use crate::linalg::LinearMap;
use crate::scalar::{ParameterContext, Scalar};

/// How the parameters `a`, `b` of the two-parameter tables are treated.
#[derive(Debug, Clone, PartialEq)]
pub enum Params {
    /// Entries are rational functions in `a`, `b`.
    Symbolic,
    /// Entries are evaluated at the given point.
    At { a: BigRational, b: BigRational },
}

impl Params {
    pub fn at(a: i64, b: i64) -> Self {
        Params::At {
            a: BigRational::from_integer(a.into()),
            b: BigRational::from_integer(b.into()),
        }
    }
}

/// The shared context `(a, b)`.
pub fn ab_context() -> Arc<ParameterContext> {
    static CTX: OnceLock<Arc<ParameterContext>> = OnceLock::new();
    CTX.get_or_init(|| ParameterContext::new(&["a", "b"]).expect("valid names"))
        .clone()
}

fn parse(text: &str) -> Scalar {
    Scalar::parse(text, Some(&ab_context())).expect("catalog literal")
}

fn vec2(x: &str, y: &str) -> Vec<Scalar> {
    vec![parse(x), parse(y)]
}

/// A map given by the images of `e1`, `e2`.
fn map2(e1: [&str; 2], e2: [&str; 2]) -> LinearMap {
    LinearMap::from_columns(2, vec![vec2(e1[0], e1[1]), vec2(e2[0], e2[1])]).expect("2x2")
}

/// A 2-dimensional algebra from the images of the twists and the four products.
struct Table2 {
    alpha: [[&'static str; 2]; 2],
    beta: [[&'static str; 2]; 2],
    mu: [[[&'static str; 2]; 2]; 2],
}

impl Table2 {
    fn build(&self, label: &str) -> BiHomAlgebra {
        BiHomAlgebra::from_products(
            label,
            2,
            |i, j| Ok(vec2(self.mu[i][j][0], self.mu[i][j][1])),
            map2(self.alpha[0], self.alpha[1]),
            map2(self.beta[0], self.beta[1]),
        )
        .expect("catalog table")
    }
}

const E1_FIRST: Table2 = Table2 {
    alpha: [["1", "0"], ["2a/(b-1)", "-1"]],
    beta: [["1", "0"], ["-a", "b"]],
    mu: [
        [["1", "0"], ["-a", "b"]],
        [["2a/(b-1)", "-1"], ["-a^2*(b-2)/(b-1)^2", "a"]],
    ],
};

const E1_SECOND: Table2 = Table2 {
    alpha: [["1", "0"], ["b(1-a)/a", "a"]],
    beta: [["1", "0"], ["b", "1-a"]],
    mu: [[["1", "0"], ["b", "1-a"]], [["b(1-a)/a", "a"], ["0", "b/a"]]],
};

/// The 2-dimensional direct-sum table as printed, in the same notation.
const E1_PRINTED_SUM: Table2 = Table2 {
    alpha: [["2", "0"], ["(2a^2+b(b-1)(1-a))/(a(b-1))", "a-1"]],
    beta: [["2", "0"], ["-(a+b)", "b+1-a"]],
    mu: [
        [["2", "0"], ["b-a", "b+1-a"]],
        [
            ["(2a^2+b(b-1)(1-a))/(a(b-1))", "a-1"],
            ["-a^2*(b-2)/(b-1)^2", "(a^2+b)/a"],
        ],
    ],
};

fn point(a: &BigRational, b: &BigRational) -> BTreeMap<String, BigRational> {
    BTreeMap::from([("a".to_string(), a.clone()), ("b".to_string(), b.clone())])
}

fn excluded(params: &Params, bad: impl Fn(&BigRational, &BigRational) -> Option<&'static str>) -> Result<()> {
    if let Params::At { a, b } = params {
        if let Some(why) = bad(a, b) {
            return Err(Error::ParameterExcluded(why.into()));
        }
    }
    Ok(())
}

fn realize(alg: BiHomAlgebra, params: &Params) -> Result<BiHomAlgebra> {
    match params {
        Params::Symbolic => Ok(alg),
        Params::At { a, b } => alg.specialize(&point(a, b)),
    }
}

/// The two 2-dimensional algebras of the first example; the first needs
/// `b != 1`, the second `a != 0`.
pub fn example_e1_pair(params: &Params) -> Result<(BiHomAlgebra, BiHomAlgebra)> {
    excluded(params, |a, b| {
        if b.is_one() {
            Some("b = 1 in the first algebra")
        } else if a.is_zero() {
            Some("a = 0 in the second algebra")
        } else {
            None
        }
    })?;
    Ok((
        realize(E1_FIRST.build("e1.first"), params)?,
        realize(E1_SECOND.build("e1.second"), params)?,
    ))
}

/// The first algebra alone, which only needs `b != 1`.
pub fn example_e1_first(params: &Params) -> Result<BiHomAlgebra> {
    excluded(params, |_, b| b.is_one().then_some("b = 1 in the first algebra"))?;
    realize(E1_FIRST.build("e1.first"), params)
}

/// The second algebra alone, which only needs `a != 0`.
pub fn example_e1_second(params: &Params) -> Result<BiHomAlgebra> {
    excluded(params, |a, _| a.is_zero().then_some("a = 0 in the second algebra"))?;
    realize(E1_SECOND.build("e1.second"), params)
}

/// The regular BiHom-associative algebra with `b` outside `{0, 1}`.
pub fn example_e5(params: &Params) -> Result<BiHomAlgebra> {
    excluded(params, |_, b| {
        if b.is_zero() {
            Some("b = 0")
        } else if b.is_one() {
            Some("b = 1")
        } else {
            None
        }
    })?;
    realize(E1_FIRST.build("e5"), params)
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::int(x)).collect()
}

type Quaternion = [i64; 4];

fn qmul(p: Quaternion, q: Quaternion) -> Quaternion {
    [
        p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
        p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
        p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
        p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0],
    ]
}

fn qconj(p: Quaternion) -> Quaternion {
    [p[0], -p[1], -p[2], -p[3]]
}

fn qsub(p: Quaternion, q: Quaternion) -> Quaternion {
    [p[0] - q[0], p[1] - q[1], p[2] - q[2], p[3] - q[3]]
}

fn qadd(p: Quaternion, q: Quaternion) -> Quaternion {
    [p[0] + q[0], p[1] + q[1], p[2] + q[2], p[3] + q[3]]
}

/// Cayley-Dickson doubling `(a, b)(c, d) = (ac - conj(d) b, da + b conj(c))`.
fn octonion_product(x: [i64; 8], y: [i64; 8]) -> [i64; 8] {
    let split = |v: [i64; 8]| ([v[0], v[1], v[2], v[3]], [v[4], v[5], v[6], v[7]]);
    let ((a, b), (c, d)) = (split(x), split(y));
    let lo = qsub(qmul(a, c), qmul(qconj(d), b));
    let hi = qadd(qmul(d, a), qmul(b, qconj(c)));
    [lo[0], lo[1], lo[2], lo[3], hi[0], hi[1], hi[2], hi[3]]
}

/// Octonions on the basis `1, i, j, k, l, il, jl, kl` with identity twists.
pub fn octonions() -> BiHomAlgebra {
    let unit = |i: usize| {
        let mut v = [0i64; 8];
        v[i] = 1;
        v
    };
    BiHomAlgebra::from_products(
        "octonions",
        8,
        |i, j| Ok(ints(&octonion_product(unit(i), unit(j)))),
        LinearMap::identity(8),
        LinearMap::identity(8),
    )
    .expect("octonion table")
}

/// 2x2 matrices on the unit-matrix basis `E11, E12, E21, E22`.
pub fn matrix2x2() -> BiHomAlgebra {
    BiHomAlgebra::from_products(
        "matrix2x2",
        4,
        |p, q| {
            let (a, b, c, d) = (p / 2, p % 2, q / 2, q % 2);
            let mut v = vec![Scalar::zero(); 4];
            if b == c {
                v[a * 2 + d] = Scalar::one();
            }
            Ok(v)
        },
        LinearMap::identity(4),
        LinearMap::identity(4),
    )
    .expect("matrix table")
}

/// Symmetric 2x2 matrices on `E11, E22, E12 + E21` under `(xy + yx) / 2`.
pub fn jordan_sym2() -> BiHomAlgebra {
    let h = Scalar::ratio(1, 2);
    let table = |i: usize, j: usize| -> Vec<Scalar> {
        let (lo, hi) = (i.min(j), i.max(j));
        match (lo, hi) {
            (0, 0) => ints(&[1, 0, 0]),
            (1, 1) => ints(&[0, 1, 0]),
            (0, 2) | (1, 2) => vec![Scalar::zero(), Scalar::zero(), h.clone()],
            (2, 2) => ints(&[1, 1, 0]),
            _ => ints(&[0, 0, 0]),
        }
    };
    BiHomAlgebra::from_products(
        "jordan_sym2",
        3,
        |i, j| Ok(table(i, j)),
        LinearMap::identity(3),
        LinearMap::identity(3),
    )
    .expect("jordan table")
}

/// `e1 e1 = e2` with identity twists, and the weight-zero operator `diag(0, 1)`.
pub fn rb_toy() -> (BiHomAlgebra, LinearMap) {
    let mut mu = vec![Scalar::zero(); 8];
    mu[1] = Scalar::one();
    let alg = BiHomAlgebra::untwisted("rb_toy", 2, mu).expect("toy table");
    (alg, LinearMap::diagonal(ints(&[0, 1])))
}

/// Conjugation of symmetric matrices by the rotation with cosine `c` and sine `s`.
fn sym2_rotation(c: Scalar, s: Scalar) -> LinearMap {
    let two = Scalar::int(2);
    let (cc, ss, cs) = (&c * &c, &s * &s, &c * &s);
    let cols = vec![
        vec![cc.clone(), ss.clone(), cs.clone()],
        vec![ss.clone(), cc.clone(), -&cs],
        vec![-&(&two * &cs), &two * &cs, &cc - &ss],
    ];
    LinearMap::from_columns(3, cols).expect("3x3")
}

fn permutation(images: &[usize], signs: &[i64]) -> LinearMap {
    let n = images.len();
    let cols = images
        .iter()
        .zip(signs)
        .map(|(&i, &s)| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = Scalar::int(s);
            v
        })
        .collect();
    LinearMap::from_columns(n, cols).expect("permutation")
}

/// Tags of the built-in automorphisms of each host.
pub fn automorphism_tags(host_label: &str) -> &'static [&'static str] {
    match host_label {
        "octonions" => &["id", "sign_flip", "quaternion_flip", "cycle3"],
        "matrix2x2" => &["id", "conj_diag", "conj_swap"],
        "jordan_sym2" => &["id", "conj_diag", "conj_swap", "conj_rot34", "conj_rot512"],
        _ => &["id"],
    }
}

/// A built-in automorphism of `host`, looked up by tag.
pub fn automorphism(tag: &str, host: &BiHomAlgebra) -> Result<LinearMap> {
    let n = host.dim();
    if tag == "id" {
        return Ok(LinearMap::identity(n));
    }
    let unknown = || Error::UnknownTag(format!("{tag} for {}", host.label()));
    let map = match (host.label(), tag) {
        ("octonions", "sign_flip") => LinearMap::diagonal(ints(&[1, 1, 1, 1, -1, -1, -1, -1])),
        ("octonions", "quaternion_flip") => LinearMap::diagonal(ints(&[1, 1, -1, -1, 1, 1, -1, -1])),
        ("octonions", "cycle3") => permutation(&[0, 2, 3, 1, 4, 6, 7, 5], &[1; 8]),
        ("matrix2x2", "conj_diag") => LinearMap::diagonal(ints(&[1, -1, -1, 1])),
        ("matrix2x2", "conj_swap") => permutation(&[3, 2, 1, 0], &[1; 4]),
        ("jordan_sym2", "conj_diag") => LinearMap::diagonal(ints(&[1, 1, -1])),
        ("jordan_sym2", "conj_swap") => permutation(&[1, 0, 2], &[1; 3]),
        ("jordan_sym2", "conj_rot34") => sym2_rotation(Scalar::ratio(3, 5), Scalar::ratio(4, 5)),
        ("jordan_sym2", "conj_rot512") => sym2_rotation(Scalar::ratio(5, 13), Scalar::ratio(12, 13)),
        _ => return Err(unknown()),
    };
    if map.rows() != n {
        return Err(unknown());
    }
    Ok(map)
}

/// The commuting automorphism pair used to twist each seed algebra.
pub fn automorphism_pair(host: &BiHomAlgebra) -> Result<(LinearMap, LinearMap)> {
    let (a, b) = match host.label() {
        "octonions" => ("sign_flip", "cycle3"),
        "matrix2x2" => ("conj_diag", "conj_swap"),
        "jordan_sym2" => ("conj_rot34", "conj_rot512"),
        other => return Err(Error::UnknownTag(format!("no automorphism pair for {other}"))),
    };
    Ok((automorphism(a, host)?, automorphism(b, host)?))
}

/// A catalog entry as listed by the command line.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub dim: usize,
    pub description: &'static str,
}

pub fn entries() -> Vec<CatalogEntry> {
    vec![
        CatalogEntry {
            name: "e1.first",
            dim: 2,
            description: "two-parameter BiHom-alternative table, b != 1",
        },
        CatalogEntry {
            name: "e1.second",
            dim: 2,
            description: "two-parameter BiHom-alternative table, a != 0",
        },
        CatalogEntry {
            name: "e5",
            dim: 2,
            description: "regular BiHom-associative table, b not in {0, 1}",
        },
        CatalogEntry {
            name: "octonions",
            dim: 8,
            description: "Cayley octonions, identity twists",
        },
        CatalogEntry {
            name: "matrix2x2",
            dim: 4,
            description: "2x2 matrices on unit matrices, identity twists",
        },
        CatalogEntry {
            name: "jordan_sym2",
            dim: 3,
            description: "symmetric 2x2 matrices under (xy + yx)/2, identity twists",
        },
        CatalogEntry {
            name: "rb_toy",
            dim: 2,
            description: "e1 e1 = e2 with the weight-zero Rota-Baxter operator diag(0, 1)",
        },
    ]
}

/// Looks up a catalog algebra by name, with symbolic parameters.
pub fn lookup(name: &str) -> Result<BiHomAlgebra> {
    match name {
        "e1.first" => example_e1_first(&Params::Symbolic),
        "e1.second" => example_e1_second(&Params::Symbolic),
        "e5" => example_e5(&Params::Symbolic),
        "octonions" => Ok(octonions()),
        "matrix2x2" => Ok(matrix2x2()),
        "jordan_sym2" => Ok(jordan_sym2()),
        "rb_toy" => Ok(rb_toy().0),
        other => Err(Error::UnknownCatalogEntry(other.to_string())),
    }
}

/// A printed value that disagrees with recomputation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Erratum {
    pub subject: String,
    pub entry: String,
    pub printed: String,
    pub computed: String,
}

/// Named entries of a 2-dimensional table: products, then twist images.
fn entries_of(
    products: impl Fn(usize, usize) -> Vec<Scalar>,
    alpha: &LinearMap,
    beta: &LinearMap,
) -> Vec<(String, Vec<Scalar>)> {
    let mut out = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            out.push((format!("mu(e{}, e{})", i + 1, j + 1), products(i, j)));
        }
    }
    for (name, m) in [("alpha", alpha), ("beta", beta)] {
        for j in 0..2 {
            out.push((format!("{name}(e{})", j + 1), m.column(j)));
        }
    }
    out
}

fn printed_entries(t: &Table2) -> Vec<(String, Vec<Scalar>)> {
    entries_of(
        |i, j| vec2(t.mu[i][j][0], t.mu[i][j][1]),
        &map2(t.alpha[0], t.alpha[1]),
        &map2(t.beta[0], t.beta[1]),
    )
}

fn compare_tables(
    subject: &str,
    printed: &[(String, Vec<Scalar>)],
    computed: &[(String, Vec<Scalar>)],
    out: &mut Vec<Erratum>,
) {
    for ((entry, p), (_, c)) in printed.iter().zip(computed) {
        if p != c {
            out.push(Erratum {
                subject: subject.into(),
                entry: entry.clone(),
                printed: render_combination(p, "e"),
                computed: render_combination(c, "e"),
            });
        }
    }
}

/// Every mismatch between printed tables and recomputed ones.
pub fn erratum_ledger() -> Result<Vec<Erratum>> {
    let mut out = Vec::new();
    let e5 = example_e5(&Params::Symbolic)?;
    let plus = plus_algebra(&e5)?;
    let printed_plus = Table2 {
        alpha: E1_FIRST.alpha,
        beta: E1_FIRST.beta,
        mu: [
            [["(b-1)/b", "0"], ["a(-1+1/b+4/(b-1))", "b"]],
            [
                ["a(1+1/b)", "b-1"],
                ["a^2(3b^2+11b-8)/(b-1)^2+a^2(1+b)/b", "-4a*b^2/(b-1)"],
            ],
        ],
    };
    let plus_entries = entries_of(|i, j| plus.product(i, j), plus.alpha(), plus.beta());
    compare_tables(
        "plus algebra of e5",
        &printed_entries(&printed_plus),
        &plus_entries,
        &mut out,
    );

    let printed_inverses = [
        ("alpha^-1", map2(["-1", "0"], ["2a/(b-1)", "1"]), e5.alpha().inverse()?),
        ("beta^-1", map2(["1/b", "0"], ["a/b", "1"]), e5.beta().inverse()?),
    ];
    for (name, printed, computed) in printed_inverses {
        for j in 0..2 {
            let (p, c) = (printed.column(j), computed.column(j));
            if p != c {
                out.push(Erratum {
                    subject: "inverse twists of e5".into(),
                    entry: format!("{name}(e{})", j + 1),
                    printed: render_combination(&p, "e"),
                    computed: render_combination(&c, "e"),
                });
            }
        }
    }

    let (first, second) = example_e1_pair(&Params::Symbolic)?;
    out.push(Erratum {
        subject: "direct sum of the e1 pair".into(),
        entry: "dimension".into(),
        printed: "2".into(),
        computed: (first.dim() + second.dim()).to_string(),
    });
    let entrywise = entries_of(
        |i, j| crate::linalg::add_vectors(&first.product(i, j), &second.product(i, j)),
        &first.alpha().add(second.alpha())?,
        &first.beta().add(second.beta())?,
    );
    compare_tables(
        "printed direct sum vs entrywise sum of the e1 tables",
        &printed_entries(&E1_PRINTED_SUM),
        &entrywise,
        &mut out,
    );
    Ok(out)
}
