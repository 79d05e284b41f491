//! One line per acceptance criterion, each with its time budget.

use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use bihom::algebra::AlgebraMorphism;
use bihom::bimodule::{
    check_alt_bimodule, check_assoc_bimodule, check_jordan_bimodule, check_left_jordan_module, check_left_special,
    check_operator_commutativity, check_right_jordan_module, check_right_special,
};
use bihom::bimodule_constructions::{
    jordan_deform_bimodule, jordan_shift_bimodule, over_plus, rb_twist_bimodule, regular_bimodule, shift_bimodule,
    special_pair_to_jordan_bimodule, split_null_extension, twist_bimodule, Theorem,
};
use bihom::catalog::{self, Params};
use bihom::checks::{
    check_bihom_associative, check_bihom_commutative, check_bihom_jordan, check_left_alternative,
    check_right_alternative, check_rota_baxter,
};
use bihom::constructions::{direct_sum, plus_algebra, quotient, rota_baxter_deformation, yau_twist};
use bihom::{BiHomAlgebra, BiHomBimodule, CheckMode, CheckReport, Error, LinearMap, Scalar};

type Outcome = Result<String, String>;

type AlgebraCheck = fn(&BiHomAlgebra, CheckMode) -> bihom::Result<CheckReport>;

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn passes(r: bihom::Result<CheckReport>, what: &str) -> Result<(), String> {
    match r {
        Ok(r) if r.passed() => Ok(()),
        Ok(r) => Err(format!("{what}: {r}")),
        Err(e) => Err(format!("{what}: {e}")),
    }
}

fn alt_both(alg: &BiHomAlgebra, what: &str) -> Result<(), String> {
    passes(
        check_left_alternative(alg, CheckMode::Linearized),
        &format!("{what} left-alternative"),
    )?;
    passes(
        check_right_alternative(alg, CheckMode::Linearized),
        &format!("{what} right-alternative"),
    )
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn e1_first_symbolic() -> Outcome {
    let a = catalog::example_e1_first(&Params::Symbolic).map_err(err)?;
    ensure(a.context().is_some(), "table is not symbolic")?;
    ensure(a.validate().passed(), "validate")?;
    passes(Ok(check_bihom_associative(&a)), "associative")?;
    alt_both(&a, "e1.first")?;
    Ok("validate, associative, both alternativity checks".into())
}

fn e1_direct_sum() -> Outcome {
    let (a, b) = catalog::example_e1_pair(&Params::Symbolic).map_err(err)?;
    let s = direct_sum(&a, &b).map_err(err)?;
    ensure(s.dim() == 4, "dimension")?;
    alt_both(&s, "direct sum")?;
    Ok("4-dim sum alternative".into())
}

fn octonions() -> Outcome {
    let o = catalog::octonions();
    let left = check_left_alternative(&o, CheckMode::Linearized).map_err(err)?;
    let right = check_right_alternative(&o, CheckMode::Linearized).map_err(err)?;
    ensure(left.passed() && right.passed(), "alternativity")?;
    ensure(
        left.stats.tuples_examined == 512 && right.stats.tuples_examined == 512,
        "not all 512 basis triples",
    )?;
    let assoc = check_bihom_associative(&o);
    ensure(
        !assoc.passed() && assoc.witness().is_some(),
        "associativity should fail with a witness",
    )?;
    let (p, q) = catalog::automorphism_pair(&o).map_err(err)?;
    let t = yau_twist(&o, &p, &q).map_err(err)?;
    ensure(!t.alpha().is_identity() && !t.beta().is_identity(), "twist is trivial")?;
    alt_both(&t, "twisted octonions")?;
    let w = assoc.witness().unwrap();
    Ok(format!("associator witness at ({})", w.tuple.join(", ")))
}

fn plus_of_e5() -> Outcome {
    let e5 = catalog::example_e5(&Params::Symbolic).map_err(err)?;
    let p = plus_algebra(&e5).map_err(err)?;
    passes(Ok(check_bihom_commutative(&p)), "commutative")?;
    let j = check_bihom_jordan(&p, CheckMode::Linearized).map_err(err)?;
    ensure(j.passed(), format!("jordan: {j}"))?;
    ensure(j.stats.tuples_examined >= 16, "fewer than 2^4 quadruples")?;
    let ledger = catalog::erratum_ledger().map_err(err)?;
    let hit = ledger
        .iter()
        .any(|e| e.entry == "mu(e1, e1)" && e.computed == "2*e1" && e.printed == "((b - 1)/b)*e1");
    ensure(hit, "erratum for mu'(e1, e1) missing")?;
    Ok(format!("{} errata recorded", ledger.len()))
}

fn same_verdict(name: &str, check: &str, modes: &[(CheckMode, bihom::Result<CheckReport>)]) -> Result<(), String> {
    let verdicts: Vec<Result<bool, String>> = modes
        .iter()
        .map(|(_, r)| match r {
            Ok(r) => Ok(r.passed()),
            Err(Error::PrereqFailed(_)) => Err("prereq".to_string()),
            Err(e) => Err(e.to_string()),
        })
        .collect();
    ensure(
        verdicts.windows(2).all(|w| w[0] == w[1]),
        format!("{name} {check}: modes disagree {verdicts:?}"),
    )
}

fn polarization() -> Outcome {
    let mut compared = 0;
    for entry in catalog::entries() {
        let alg = catalog::lookup(entry.name).map_err(err)?;
        let modes = [
            CheckMode::Linearized,
            CheckMode::DirectSymbolic,
            CheckMode::sampled(50, 2024).map_err(err)?,
        ];
        let checks: [(&str, AlgebraCheck); 3] = [
            ("left-alternative", check_left_alternative),
            ("right-alternative", check_right_alternative),
            ("jordan", check_bihom_jordan),
        ];
        for (check, f) in checks {
            let results: Vec<_> = modes.iter().map(|&m| (m, f(&alg, m))).collect();
            same_verdict(entry.name, check, &results)?;
            compared += 1;
        }
    }
    Ok(format!("{compared} check families agree across three modes"))
}

fn rota_baxter() -> Outcome {
    let (t, r) = catalog::rb_toy();
    let rb = check_rota_baxter(&t, &r, &Scalar::zero()).map_err(err)?;
    ensure(rb.passed(), "rb_toy weight 0")?;
    for entry in catalog::entries() {
        let alg = catalog::lookup(entry.name).map_err(err)?;
        let id = LinearMap::identity(alg.dim());
        ensure(
            check_rota_baxter(&alg, &id, &Scalar::int(-1)).map_err(err)?.passed(),
            format!("{} identity weight -1", entry.name),
        )?;
    }
    let d = rota_baxter_deformation(&t, &r).map_err(err)?;
    alt_both(&d, "deformed rb_toy")?;
    let v = rb_twist_bimodule(&regular_bimodule(&t).map_err(err)?, &r).map_err(err)?;
    passes(check_alt_bimodule(&v, CheckMode::Linearized), "rb twist bimodule")?;
    Ok("operator, deformation and bimodule".into())
}

fn alternative_bimodules() -> Outcome {
    let o = catalog::octonions();
    let reg = regular_bimodule(&o).map_err(err)?;
    passes(
        check_alt_bimodule(&reg, CheckMode::Linearized),
        "regular octonion bimodule",
    )?;
    let (p, q) = catalog::automorphism_pair(&o).map_err(err)?;
    let host = yau_twist(&o, &p, &q).map_err(err)?;
    let twisted_reg = regular_bimodule(&host).map_err(err)?;
    for n in 0..3 {
        for m in 0..3 {
            let s = shift_bimodule(&twisted_reg, n, m).map_err(err)?;
            passes(
                check_alt_bimodule(&s, CheckMode::Linearized),
                &format!("shift ({n}, {m})"),
            )?;
        }
    }
    let tw = twist_bimodule(&reg, &p, &q, &p, &q).map_err(err)?;
    passes(
        check_alt_bimodule(&tw, CheckMode::Linearized),
        "twist by automorphism pair",
    )?;
    let ext = split_null_extension(&reg, Theorem::Alternative).map_err(err)?;
    ensure(ext.algebra.dim() == 16, "extension dimension")?;
    alt_both(&ext.algebra, "split null extension")?;
    passes(ext.algebra.is_two_sided_ideal(&ext.module_ideal), "i(V) ideal")?;
    let back = quotient(&ext.algebra, &ext.module_ideal).map_err(err)?;
    ensure(
        back.tensor() == o.tensor(),
        "quotient does not reproduce the octonion tensor",
    )?;
    Ok("regular, 9 shifts, twist, 16-dim extension".into())
}

fn jordan_bimodules() -> Outcome {
    let j = catalog::jordan_sym2();
    let reg = regular_bimodule(&j).map_err(err)?;
    passes(check_jordan_bimodule(&reg), "regular jordan_sym2")?;
    for n in 0..3 {
        let s = jordan_shift_bimodule(&reg, n).map_err(err)?;
        passes(check_jordan_bimodule(&s), &format!("jordan shift {n}"))?;
    }
    let m = catalog::matrix2x2();
    let pair = over_plus(&regular_bimodule(&m).map_err(err)?).map_err(err)?;
    let sp = special_pair_to_jordan_bimodule(&pair).map_err(err)?;
    ensure(
        sp.host().tensor() == plus_algebra(&m).map_err(err)?.tensor(),
        "host is not plus(matrix2x2)",
    )?;
    passes(check_jordan_bimodule(&sp), "special pair of matrix2x2")?;
    let (a, b) = catalog::automorphism_pair(&j).map_err(err)?;
    let d = jordan_deform_bimodule(&reg, &a, &b, &a, &b).map_err(err)?;
    passes(check_jordan_bimodule(&d), "conjugation deformation")?;
    let ext = split_null_extension(&reg, Theorem::Jordan).map_err(err)?;
    passes(Ok(check_bihom_commutative(&ext.algebra)), "extension commutative")?;
    passes(
        check_bihom_jordan(&ext.algebra, CheckMode::Linearized),
        "extension jordan",
    )?;
    Ok("regular, 3 shifts, special pair, deformation, extension".into())
}

fn implication_corpus() -> Outcome {
    let m = catalog::matrix2x2();
    let o = catalog::octonions();
    let e5 = catalog::example_e5(&Params::Symbolic).map_err(err)?;
    let (t, _) = catalog::rb_toy();
    let (p, q) = catalog::automorphism_pair(&o).map_err(err)?;
    let ot = yau_twist(&o, &p, &q).map_err(err)?;

    let mut special_seen = 0;
    let over_plus_corpus: Vec<BiHomBimodule> = [&m, &e5, &o, &ot]
        .iter()
        .map(|a| over_plus(&regular_bimodule(a)?))
        .collect::<bihom::Result<_>>()
        .map_err(err)?;
    for v in &over_plus_corpus {
        if check_right_special(v).passed() {
            special_seen += 1;
            passes(
                check_right_jordan_module(v, CheckMode::Linearized),
                &format!("right module {}", v.label()),
            )?;
        }
        if check_left_special(v).map_err(err)?.passed() {
            special_seen += 1;
            passes(
                check_left_jordan_module(v, CheckMode::Linearized),
                &format!("left module {}", v.label()),
            )?;
        }
    }
    ensure(special_seen >= 4, "special corpus is vacuous")?;

    let mut assoc_seen = 0;
    for a in [&m, &e5, &t, &o] {
        let v = regular_bimodule(a).map_err(err)?;
        if check_assoc_bimodule(&v).passed() {
            assoc_seen += 1;
            passes(
                Ok(check_operator_commutativity(&v)),
                &format!("operators of {}", v.label()),
            )?;
        }
    }
    ensure(assoc_seen >= 3, "associative corpus is vacuous")?;

    for a in [&o, &ot, &m] {
        let v = regular_bimodule(a).map_err(err)?;
        passes(check_alt_bimodule(&v, CheckMode::Linearized), "alternative")?;
        let vp = over_plus(&v).map_err(err)?;
        ensure(
            check_right_special(&vp).passed(),
            format!("{} over plus is not right special", a.label()),
        )?;
        passes(
            check_left_special(&vp),
            &format!("{} over plus left special", a.label()),
        )?;
    }

    let oa = Arc::new(o.clone());
    let ta = Arc::new(t.clone());
    let valid = vec![
        (oa.clone(), catalog::automorphism("sign_flip", &o).map_err(err)?),
        (oa.clone(), catalog::automorphism("cycle3", &o).map_err(err)?),
        (oa.clone(), catalog::automorphism("quaternion_flip", &o).map_err(err)?),
        (ta.clone(), LinearMap::diagonal(vec![Scalar::int(3), Scalar::int(9)])),
    ];
    let mut corrupted = Vec::new();
    for (alg, f) in &valid {
        let mut g = f.clone();
        let bumped = g.get(0, 0).clone() + Scalar::one();
        g.set(0, 0, bumped);
        corrupted.push((alg.clone(), g));
    }
    let mut tally = [0, 0];
    for (set, expected) in [(&valid, true), (&corrupted, false)] {
        for (alg, f) in set {
            let mor = AlgebraMorphism::new(alg.clone(), alg.clone(), f.clone()).map_err(err)?;
            let is_mor = mor.check().map_err(err)?.passed();
            let sum = direct_sum(alg, alg).map_err(err)?;
            let graph = sum
                .is_subalgebra(&mor.graph_subspace().map_err(err)?)
                .map_err(err)?
                .passed();
            ensure(is_mor == expected, format!("{} morphism verdict", alg.label()))?;
            ensure(graph == is_mor, format!("{} graph verdict disagrees", alg.label()))?;
            tally[usize::from(!expected)] += 1;
        }
    }
    Ok(format!(
        "{special_seen} special, {assoc_seen} associative, {} valid and {} corrupted maps",
        tally[0], tally[1]
    ))
}

fn replicate_paper_cli() -> Outcome {
    let run = || -> Result<(bool, String), String> {
        let out = Command::new(env!("CARGO_BIN_EXE_bihom"))
            .args(["replicate-paper", "--format", "structured"])
            .output()
            .map_err(err)?;
        Ok((out.status.success(), String::from_utf8(out.stdout).map_err(err)?))
    };
    let (ok1, first) = run()?;
    let (ok2, second) = run()?;
    ensure(ok1 && ok2, "replicate-paper did not exit 0")?;
    ensure(first == second, "structured reports differ between runs")?;
    let value: serde_json::Value = serde_json::from_str(&first).map_err(err)?;
    ensure(value["passed"] == serde_json::Value::Bool(true), "report not passed")?;
    let errata = value["errata"].as_array().map_or(0, |a| a.len());
    ensure(errata > 0, "erratum ledger empty")?;
    let checks = value["entries"]
        .as_array()
        .map_or(0, |a| a.iter().filter(|e| e["type"] == "check").count());
    Ok(format!("{checks} checks, {errata} errata, byte-identical"))
}

type Criterion = (&'static str, fn() -> Outcome, u64);

fn main() {
    let criteria: [Criterion; 10] = [
        ("e1 first algebra, symbolic", e1_first_symbolic, 5),
        ("direct sum of the e1 pair", e1_direct_sum, 10),
        ("octonions and their twist", octonions, 4),
        ("plus algebra of e5 and errata", plus_of_e5, 10),
        ("polarization consistency", polarization, 30),
        ("Rota-Baxter suite", rota_baxter, 1),
        ("alternative bimodule suite", alternative_bimodules, 60),
        ("Jordan bimodule suite", jordan_bimodules, 120),
        ("implication corpus", implication_corpus, 120),
        ("replicate-paper CLI", replicate_paper_cli, 120),
    ];
    let mut failures = Vec::new();
    for (i, (name, f, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let line = match (&outcome, over) {
            (Ok(detail), false) => format!(
                "PASS criterion {:>2} {name}: {detail} ({:.2?} < {budget}s)",
                i + 1,
                elapsed
            ),
            (Ok(detail), true) => format!(
                "FAIL criterion {:>2} {name}: {detail} but took {:.2?}, budget {budget}s",
                i + 1,
                elapsed
            ),
            (Err(why), _) => format!("FAIL criterion {:>2} {name}: {why} ({:.2?})", i + 1, elapsed),
        };
        println!("{line}");
        if line.starts_with("FAIL") {
            failures.push(line);
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failures.len(), criteria.len());
    if !failures.is_empty() {
        std::process::exit(1);
    }
}
