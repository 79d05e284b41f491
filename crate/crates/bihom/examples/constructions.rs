//! Building new algebras: twists, sums, tensors, quotients, plus algebras.

use bihom::catalog::{self, Params};
use bihom::checks;
use bihom::constructions;
use bihom::CheckMode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let o = catalog::octonions();
    let (alpha, beta) = catalog::automorphism_pair(&o)?;
    let twisted = constructions::yau_twist(&o, &alpha, &beta)?;
    println!(
        "twisted octonions alternative: {}",
        checks::check_alternative(&twisted, CheckMode::Linearized)?.passed()
    );
    println!("twisted octonions regular: {}", checks::is_regular(&twisted));

    let (e1, e2) = catalog::example_e1_pair(&Params::Symbolic)?;
    let sum = constructions::direct_sum(&e1, &e2)?;
    println!(
        "direct sum dim {} alternative: {}",
        sum.dim(),
        checks::check_alternative(&sum, CheckMode::Linearized)?.passed()
    );

    let m = catalog::matrix2x2();
    let t = constructions::tensor_product(&m, &o)?;
    println!("matrix (x) octonions dim {}", t.dim());

    let e5 = catalog::example_e5(&Params::Symbolic)?;
    let plus = constructions::plus_algebra(&e5)?;
    println!(
        "plus algebra commutative: {}",
        checks::check_bihom_commutative(&plus).passed()
    );
    println!(
        "plus algebra Jordan: {}",
        checks::check_bihom_jordan(&plus, CheckMode::Linearized)?.passed()
    );

    let (toy, r) = catalog::rb_toy();
    let rb = checks::check_rota_baxter(&toy, &r, &bihom::Scalar::zero())?;
    println!("Rota-Baxter of weight 0: {}", rb.passed_with_commutation());
    let deformed = constructions::rota_baxter_deformation(&toy, &r)?;
    println!(
        "deformed product alternative: {}",
        checks::check_alternative(&deformed, CheckMode::Linearized)?.passed()
    );
    Ok(())
}
