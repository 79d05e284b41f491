use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;

use bihom::bimodule;
use bihom::bimodule_constructions as bc;
use bihom::catalog::{self, Params};
use bihom::checks;
use bihom::constructions;
use bihom::{AlgebraMorphism, BiHomAlgebra, CheckMode, Element, LinearMap, ParameterContext, Scalar, Subspace};

fn ctx() -> Arc<ParameterContext> {
    catalog::ab_context()
}

#[derive(Debug, Clone)]
enum Tree {
    Int(i64),
    A,
    B,
    Add(Box<Tree>, Box<Tree>),
    Sub(Box<Tree>, Box<Tree>),
    Mul(Box<Tree>, Box<Tree>),
    Div(Box<Tree>, Box<Tree>),
}

fn tree() -> impl Strategy<Value = Tree> {
    let leaf = prop_oneof![(-4i64..=4).prop_map(Tree::Int), Just(Tree::A), Just(Tree::B)];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Tree::Add(Box::new(x), Box::new(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Tree::Sub(Box::new(x), Box::new(y))),
            (inner.clone(), inner.clone()).prop_map(|(x, y)| Tree::Mul(Box::new(x), Box::new(y))),
            (inner.clone(), inner).prop_map(|(x, y)| Tree::Div(Box::new(x), Box::new(y))),
        ]
    })
}

/// Division by zero falls back to the numerator.
fn build(t: &Tree) -> Scalar {
    let c = ctx();
    match t {
        Tree::Int(n) => Scalar::int(*n),
        Tree::A => Scalar::param(&c, "a").unwrap(),
        Tree::B => Scalar::param(&c, "b").unwrap(),
        Tree::Add(x, y) => build(x).checked_add(&build(y)).unwrap(),
        Tree::Sub(x, y) => build(x).checked_sub(&build(y)).unwrap(),
        Tree::Mul(x, y) => build(x).checked_mul(&build(y)).unwrap(),
        Tree::Div(x, y) => {
            let (n, d) = (build(x), build(y));
            if d.is_zero() {
                n
            } else {
                n.checked_div(&d).unwrap()
            }
        }
    }
}

fn scalar() -> impl Strategy<Value = Scalar> {
    tree().prop_map(|t| build(&t))
}

/// Evaluates the tree directly in rationals, independent of normalization.
fn eval_tree(t: &Tree, a: &BigRational, b: &BigRational) -> Option<BigRational> {
    Some(match t {
        Tree::Int(n) => BigRational::from_integer((*n).into()),
        Tree::A => a.clone(),
        Tree::B => b.clone(),
        Tree::Add(x, y) => eval_tree(x, a, b)? + eval_tree(y, a, b)?,
        Tree::Sub(x, y) => eval_tree(x, a, b)? - eval_tree(y, a, b)?,
        Tree::Mul(x, y) => eval_tree(x, a, b)? * eval_tree(y, a, b)?,
        Tree::Div(x, y) => {
            if build(y).is_zero() {
                eval_tree(x, a, b)?
            } else {
                let d = eval_tree(y, a, b)?;
                if d == BigRational::from_integer(0.into()) {
                    return None;
                }
                eval_tree(x, a, b)? / d
            }
        }
    })
}

fn point(a: i64, b: i64) -> BTreeMap<String, BigRational> {
    [("a", a), ("b", b)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), BigRational::from_integer(v.into())))
        .collect()
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::int(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_associative(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert!((&x + &y) + &z == &x + (&y + &z));
    }

    #[test]
    fn multiplication_distributes(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert!(&x * (&y + &z) == &x * &y + &x * &z);
    }

    #[test]
    fn nonzero_scalars_have_inverses(x in scalar()) {
        prop_assume!(!x.is_zero());
        prop_assert!((&x * x.inv()).is_one());
    }

    #[test]
    fn equal_scalars_evaluate_equally(x in scalar(), y in scalar(), pts in prop::collection::vec((-6i64..=6, -6i64..=6), 10)) {
        prop_assume!(!y.is_zero());
        let round = (&x * &y).checked_div(&y).unwrap();
        prop_assert!(round == x);
        for (a, b) in pts {
            let p = point(a, b);
            if let (Ok(u), Ok(v)) = (round.eval(&p), x.eval(&p)) {
                prop_assert_eq!(u, v);
            }
        }
    }

    #[test]
    fn evaluation_matches_the_expression(t in tree(), pts in prop::collection::vec((-6i64..=6, -6i64..=6), 10)) {
        let x = build(&t);
        for (a, b) in pts {
            let p = point(a, b);
            let direct = eval_tree(&t, &p["a"], &p["b"]);
            if let (Ok(u), Some(v)) = (x.eval(&p), direct) {
                prop_assert_eq!(u, v);
            }
        }
    }

    #[test]
    fn normalization_is_idempotent(x in scalar()) {
        let n = ctx().len();
        let again = Scalar::from_polynomials(&ctx(), &x.numerator().lift(n), &x.denominator().lift(n)).unwrap();
        prop_assert_eq!(again.numerator().lift(n), x.numerator().lift(n));
        prop_assert_eq!(again.denominator().lift(n), x.denominator().lift(n));
        let reparsed = Scalar::parse(&x.to_string(), Some(&ctx())).unwrap();
        prop_assert_eq!(reparsed.to_string(), x.to_string());
    }

    #[test]
    fn rank_plus_nullity_is_the_width(rows in 1usize..5, cols in 1usize..6, seed in prop::collection::vec(-2i64..=2, 30)) {
        let m = LinearMap::new(rows, cols, ints(&seed[..rows * cols])).unwrap();
        let rr = m.rref_and_kernel();
        prop_assert_eq!(m.rank() + rr.kernel.len(), cols);
        for v in &rr.kernel {
            prop_assert!(m.apply(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn invertible_maps_compose_to_identity(seed in prop::collection::vec(-3i64..=3, 9)) {
        let m = LinearMap::new(3, 3, ints(&seed)).unwrap();
        prop_assume!(m.rank() == 3);
        prop_assert!(m.compose(&m.inverse().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn complements_fill_the_space(seed in prop::collection::vec(-2i64..=2, 8)) {
        let vs: Vec<Vec<Scalar>> = seed.chunks(4).map(ints).collect();
        let s = Subspace::spanned_by(4, vs).unwrap();
        let mut all = s.basis().to_vec();
        all.extend(s.complement_basis());
        prop_assert_eq!(Subspace::spanned_by(4, all).unwrap().dim(), 4);
    }

    #[test]
    fn associator_is_trilinear(
        mu in prop::collection::vec(-2i64..=2, 8),
        x in prop::collection::vec(-3i64..=3, 2),
        x2 in prop::collection::vec(-3i64..=3, 2),
        y in prop::collection::vec(-3i64..=3, 2),
        z in prop::collection::vec(-3i64..=3, 2),
        slot in 0usize..3,
    ) {
        let alg = BiHomAlgebra::untwisted("random", 2, ints(&mu)).unwrap();
        let el = |v: &[i64]| Element::new(ints(v));
        let sum: Vec<i64> = x.iter().zip(&x2).map(|(p, q)| p + q).collect();
        let args = [el(&y), el(&z), el(&y)];
        let at = |args: &[Element; 3], slot: usize, e: Element| {
            let mut a = args.clone();
            a[slot] = e;
            alg.associator(&a[0], &a[1], &a[2]).unwrap()
        };
        let whole = at(&args, slot, el(&sum));
        let parts = bihom::linalg::add_vectors(at(&args, slot, el(&x)).coords(), at(&args, slot, el(&x2)).coords());
        prop_assert_eq!(whole.coords().to_vec(), parts);
    }
}

fn rb_toy() -> Arc<BiHomAlgebra> {
    Arc::new(catalog::rb_toy().0)
}

/// Twists of the toy algebra by the automorphisms `diag(s, s^2)`.
fn twisted_toy(s: i64, t: i64) -> BiHomAlgebra {
    let d = |k: i64| LinearMap::diagonal(ints(&[k, k * k]));
    constructions::yau_twist(&rb_toy(), &d(s), &d(t)).unwrap()
}

fn matrix_twist(i: usize, j: usize) -> BiHomAlgebra {
    let m = catalog::matrix2x2();
    let tags = ["id", "conj_diag", "conj_swap"];
    let a = catalog::automorphism(tags[i], &m).unwrap();
    let b = catalog::automorphism(tags[j], &m).unwrap();
    constructions::yau_twist(&m, &a, &b).unwrap()
}

fn jordan_twist(i: u32, j: u32) -> BiHomAlgebra {
    let host = catalog::jordan_sym2();
    let (a, b) = catalog::automorphism_pair(&host).unwrap();
    constructions::yau_twist(&host, &a.pow(i).unwrap(), &b.pow(j).unwrap()).unwrap()
}

fn nonzero() -> impl Strategy<Value = i64> {
    prop_oneof![-3i64..=-1, 1i64..=3]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn associative_algebras_are_alternative(s in nonzero(), t in nonzero(), i in 0usize..3, j in 0usize..3, pick in 0usize..2, seed in any::<u64>()) {
        let alg = if pick == 0 { twisted_toy(s, t) } else { matrix_twist(i, j) };
        prop_assume!(checks::check_bihom_associative(&alg).passed());
        for mode in [CheckMode::Linearized, CheckMode::DirectSymbolic, CheckMode::sampled(10, seed).unwrap()] {
            prop_assert!(checks::check_left_alternative(&alg, mode)?.passed());
            prop_assert!(checks::check_right_alternative(&alg, mode)?.passed());
        }
    }

    #[test]
    fn graph_is_a_subalgebra_exactly_for_morphisms(s in nonzero(), t in nonzero(), m in prop::collection::vec(-2i64..=2, 4)) {
        let alg = Arc::new(twisted_toy(s, t));
        let f = LinearMap::new(2, 2, ints(&m)).unwrap();
        let mor = AlgebraMorphism::new(alg.clone(), alg.clone(), f).unwrap();
        let sum = constructions::direct_sum(&alg, &alg).unwrap();
        let graph = sum.is_subalgebra(&mor.graph_subspace().unwrap()).unwrap().passed();
        prop_assert_eq!(mor.check().unwrap().passed(), graph);
    }

    #[test]
    fn special_modules_are_jordan_modules(i in 0usize..3, j in 0usize..3) {
        let v = bc::over_plus(&bc::regular_bimodule(&matrix_twist(i, j)).unwrap()).unwrap();
        if bimodule::check_right_special(&v).passed() {
            prop_assert!(bimodule::check_right_jordan_module(&v, CheckMode::Linearized)?.passed());
        }
        if bimodule::check_left_special(&v)?.passed() {
            prop_assert!(bimodule::check_left_jordan_module(&v, CheckMode::Linearized)?.passed());
        }
    }

    #[test]
    fn plus_algebras_are_jordan(a in nonzero(), b in 2i64..6) {
        let p = constructions::plus_algebra(&catalog::example_e5(&Params::at(a, b)).unwrap()).unwrap();
        prop_assert!(checks::check_bihom_commutative(&p).passed());
        prop_assert!(checks::check_bihom_jordan(&p, CheckMode::Linearized)?.passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn shifted_and_twisted_bimodules_stay_alternative(n in 0u32..=2, m in 0u32..=2, r in 0u32..=2, s in 0u32..=2) {
        let o = catalog::octonions();
        let (alpha, beta) = catalog::automorphism_pair(&o).unwrap();
        let v = bc::regular_bimodule(&constructions::yau_twist(&o, &alpha, &beta).unwrap()).unwrap();
        let shifted = bc::shift_bimodule(&v, n, m).unwrap();
        prop_assert!(bimodule::check_alt_bimodule(&shifted, CheckMode::Linearized)?.passed());
        let twisted = bc::twist_bimodule_powers(&v, n, m, r, s, r, s).unwrap();
        prop_assert!(bimodule::check_alt_bimodule(&twisted, CheckMode::Linearized)?.passed());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn jordan_bimodules_are_jordan_modules(i in 0u32..3, j in 0u32..3, n in 0u32..3) {
        let v = bc::regular_bimodule(&jordan_twist(i, j)).unwrap();
        let v = bc::jordan_shift_bimodule(&v, n).unwrap();
        if bimodule::check_jordan_bimodule(&v)?.passed() {
            prop_assert!(bimodule::check_right_jordan_module(&v, CheckMode::Linearized)?.passed());
            prop_assert!(bimodule::check_left_jordan_module(&v, CheckMode::Linearized)?.passed());
        }
    }

    #[test]
    fn jordan_shifts_stay_jordan_under_equal_twists(i in 0u32..3, n in 0u32..3) {
        let host = catalog::jordan_sym2();
        let (a, _) = catalog::automorphism_pair(&host).unwrap();
        let g = a.pow(i).unwrap();
        let v = bc::regular_bimodule(&constructions::yau_twist(&host, &g, &g).unwrap()).unwrap();
        prop_assert!(bimodule::check_jordan_bimodule(&bc::jordan_shift_bimodule(&v, n).unwrap())?.passed());
    }
}
