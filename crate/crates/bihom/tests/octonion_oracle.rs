use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bihom::catalog;
use bihom::BiHomAlgebra;

fn table(o: &BiHomAlgebra) -> Vec<i64> {
    let n = o.dim();
    let mut t = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let c = o.structure_constant(i, j, k).as_rational().expect("rational entry");
                assert!(c.is_integer());
                t.push(c.to_integer().try_into().unwrap());
            }
        }
    }
    t
}

fn mul(t: &[i64], x: &[i64], y: &[i64]) -> Vec<i64> {
    let n = x.len();
    let mut out = vec![0; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[k] += x[i] * y[j] * t[(i * n + j) * n + k];
            }
        }
    }
    out
}

fn norm(x: &[i64]) -> i64 {
    x.iter().map(|c| c * c).sum()
}

fn basis(i: usize) -> Vec<i64> {
    let mut v = vec![0; 8];
    v[i] = 1;
    v
}

#[test]
fn first_basis_vector_is_the_unit() {
    let t = table(&catalog::octonions());
    for i in 0..8 {
        assert_eq!(mul(&t, &basis(0), &basis(i)), basis(i));
        assert_eq!(mul(&t, &basis(i), &basis(0)), basis(i));
    }
}

#[test]
fn imaginary_units_square_to_minus_one_and_anticommute() {
    let t = table(&catalog::octonions());
    for i in 1..8 {
        let sq = mul(&t, &basis(i), &basis(i));
        assert_eq!(sq, basis(0).iter().map(|c| -c).collect::<Vec<_>>());
        for j in 1..8 {
            if i != j {
                let ij = mul(&t, &basis(i), &basis(j));
                let ji: Vec<i64> = mul(&t, &basis(j), &basis(i)).iter().map(|c| -c).collect();
                assert_eq!(ij, ji, "e{} e{}", i + 1, j + 1);
                assert_eq!(norm(&ij), 1);
            }
        }
    }
}

#[test]
fn norm_is_multiplicative() {
    let t = table(&catalog::octonions());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let x: Vec<i64> = (0..8).map(|_| rng.gen_range(-5..=5)).collect();
        let y: Vec<i64> = (0..8).map(|_| rng.gen_range(-5..=5)).collect();
        assert_eq!(norm(&mul(&t, &x, &y)), norm(&x) * norm(&y));
    }
}

#[test]
fn products_are_alternative_but_not_associative() {
    let t = table(&catalog::octonions());
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut associative = true;
    for _ in 0..100 {
        let x: Vec<i64> = (0..8).map(|_| rng.gen_range(-3..=3)).collect();
        let y: Vec<i64> = (0..8).map(|_| rng.gen_range(-3..=3)).collect();
        let z: Vec<i64> = (0..8).map(|_| rng.gen_range(-3..=3)).collect();
        assert_eq!(mul(&t, &mul(&t, &x, &x), &y), mul(&t, &x, &mul(&t, &x, &y)));
        assert_eq!(mul(&t, &mul(&t, &y, &x), &x), mul(&t, &y, &mul(&t, &x, &x)));
        associative &= mul(&t, &mul(&t, &x, &y), &z) == mul(&t, &x, &mul(&t, &y, &z));
    }
    assert!(!associative);
}

#[test]
fn catalog_twists_are_automorphisms() {
    let o = catalog::octonions();
    let t = table(&o);
    for tag in catalog::automorphism_tags("octonions") {
        let f = catalog::automorphism(tag, &o).unwrap();
        let g: Vec<i64> = f
            .entries()
            .iter()
            .map(|s| s.as_rational().unwrap().to_integer().try_into().unwrap())
            .collect();
        let apply = |x: &[i64]| -> Vec<i64> { (0..8).map(|r| (0..8).map(|c| g[r * 8 + c] * x[c]).sum()).collect() };
        for i in 0..8 {
            for j in 0..8 {
                let lhs = apply(&mul(&t, &basis(i), &basis(j)));
                let rhs = mul(&t, &apply(&basis(i)), &apply(&basis(j)));
                assert_eq!(lhs, rhs, "{tag} at e{} e{}", i + 1, j + 1);
            }
        }
    }
}
