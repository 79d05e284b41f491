//! The split null extension of an algebra by a bimodule.

use bihom::bimodule_constructions::{self as bc, Theorem};
use bihom::catalog;
use bihom::checks;
use bihom::constructions;
use bihom::CheckMode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v = bc::regular_bimodule(&catalog::octonions())?;
    let ext = bc::split_null_extension(&v, Theorem::Alternative)?;
    let a = &ext.algebra;
    println!("extension dim {}", a.dim());
    println!(
        "alternative: {}",
        checks::check_alternative(a, CheckMode::Linearized)?.passed()
    );
    println!(
        "module part is an ideal: {}",
        a.is_two_sided_ideal(&ext.module_ideal)?.passed()
    );
    println!("projection is a morphism: {}", ext.projection.check()?.passed());
    println!("section is a morphism: {}", ext.section.check()?.passed());
    let q = constructions::quotient(a, &ext.module_ideal)?;
    println!(
        "quotient digest matches the host: {}",
        q.digest() == catalog::octonions().digest()
    );
    let induced = ext.induced_bimodule()?;
    println!("induced bimodule digest matches: {}", induced.digest() == v.digest());
    Ok(())
}
