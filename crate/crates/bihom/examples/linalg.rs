//! Row reduction, kernels, inverses and subspaces over exact scalars.

use bihom::{LinearMap, Scalar, Subspace};

fn ints(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| Scalar::int(x)).collect())
        .collect()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = LinearMap::from_rows(ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]))?;
    let rr = m.rref_and_kernel();
    println!("rank {}", m.rank());
    for v in &rr.kernel {
        let shown: Vec<String> = v.iter().map(ToString::to_string).collect();
        println!("kernel vector [{}]", shown.join(", "));
    }

    let a = LinearMap::from_rows(ints(&[&[2, 1], &[1, 1]]))?;
    let inv = a.inverse()?;
    println!(
        "inverse is identity after composing: {}",
        a.compose(&inv)?.is_identity()
    );

    let s = Subspace::spanned_by(3, ints(&[&[1, 1, 0], &[2, 2, 0], &[0, 0, 1]]))?;
    println!("span has dim {}", s.dim());
    println!("contains (3, 3, 5): {}", s.contains(&ints(&[&[3, 3, 5]])[0])?);
    println!("contains (1, 0, 0): {}", s.contains(&ints(&[&[1, 0, 0]])[0])?);
    Ok(())
}
