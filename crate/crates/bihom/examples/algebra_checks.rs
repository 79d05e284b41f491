//! Identity checks on a built-in algebra in each evaluation mode.

use bihom::catalog;
use bihom::checks;
use bihom::{CheckMode, Element};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let o = catalog::octonions();
    println!("{} dim {}", o.label(), o.dim());
    println!("{}", o.validate());
    println!("{}", checks::check_bihom_associative(&o));
    for mode in [
        CheckMode::Linearized,
        CheckMode::DirectSymbolic,
        CheckMode::sampled(20, 7)?,
    ] {
        println!("{}", checks::check_alternative(&o, mode)?);
    }

    let x = Element::basis(8, 1);
    let y = Element::basis(8, 2);
    let z = Element::basis(8, 4);
    let a = o.associator(&x, &y, &z)?;
    println!(
        "associator(e2, e3, e5) = {:?}",
        a.coords().iter().map(ToString::to_string).collect::<Vec<_>>()
    );
    Ok(())
}
