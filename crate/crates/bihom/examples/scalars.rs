//! Exact rational and rational-function arithmetic.

use std::collections::BTreeMap;

use bihom::{ParameterContext, Scalar};
use num_rational::BigRational;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let half = Scalar::ratio(1, 2);
    let third = Scalar::ratio(1, 3);
    println!("1/2 + 1/3 = {}", half.clone() + third.clone());
    println!("1/2 / 1/3 = {}", half.checked_div(&third)?);

    let ctx = ParameterContext::new(&["a", "b"])?;
    let f = Scalar::parse("(a^2 - b^2) / (a - b)", Some(&ctx))?;
    println!("(a^2 - b^2) / (a - b) = {f}");

    let g = Scalar::parse("1 / (a + 1)", Some(&ctx))?;
    let sum = f.checked_add(&g)?;
    println!("sum = {sum}");

    let point: BTreeMap<String, BigRational> = [("a", 2), ("b", 5)]
        .into_iter()
        .map(|(k, v)| (k.to_string(), BigRational::from_integer(v.into())))
        .collect();
    println!("sum at a=2, b=5 is {}", sum.eval(&point)?);
    Ok(())
}
