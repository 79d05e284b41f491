//! Bimodule checks on regular bimodules.

use bihom::bimodule;
use bihom::bimodule_constructions as bc;
use bihom::catalog;
use bihom::CheckMode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = bc::regular_bimodule(&catalog::matrix2x2())?;
    println!("{}", bimodule::check_assoc_bimodule(&m));
    println!("{}", bimodule::check_operator_commutativity(&m));

    let o = bc::regular_bimodule(&catalog::octonions())?;
    println!("{}", bimodule::check_alt_bimodule(&o, CheckMode::Linearized)?);
    println!("{}", bimodule::check_assoc_bimodule(&o));

    let j = bc::regular_bimodule(&catalog::jordan_sym2())?;
    println!("{}", bimodule::check_jordan_bimodule(&j)?);
    println!("{}", bimodule::check_right_jordan_module(&j, CheckMode::Linearized)?);
    println!("{}", bimodule::check_left_jordan_module(&j, CheckMode::Linearized)?);
    Ok(())
}
