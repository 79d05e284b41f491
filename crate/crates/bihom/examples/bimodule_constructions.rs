//! Shifts, twists and deformations of bimodules, and the special-pair route.

use bihom::bimodule;
use bihom::bimodule_constructions as bc;
use bihom::catalog;
use bihom::constructions;
use bihom::CheckMode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let o = catalog::octonions();
    let (alpha, beta) = catalog::automorphism_pair(&o)?;
    let v = bc::regular_bimodule(&constructions::yau_twist(&o, &alpha, &beta)?)?;
    for (n, m) in [(0, 1), (1, 1), (2, 0)] {
        let s = bc::shift_bimodule(&v, n, m)?;
        println!(
            "shift ({n}, {m}) alternative bimodule: {}",
            bimodule::check_alt_bimodule(&s, CheckMode::Linearized)?.passed()
        );
    }
    let plain = bc::regular_bimodule(&o)?;
    let tw = bc::twist_bimodule(&plain, &alpha, &beta, &alpha, &beta)?;
    println!(
        "twisted bimodule alternative: {}",
        bimodule::check_alt_bimodule(&tw, CheckMode::Linearized)?.passed()
    );

    let j = catalog::jordan_sym2();
    let (ja, jb) = catalog::automorphism_pair(&j)?;
    let vj = bc::regular_bimodule(&j)?;
    let d = bc::jordan_deform_bimodule(&vj, &ja, &jb, &ja, &jb)?;
    println!(
        "deformed Jordan bimodule: {}",
        bimodule::check_jordan_bimodule(&d)?.passed()
    );
    let skewed = bc::jordan_deform_bimodule_powers(&vj, &ja, &jb, &ja, &jb, 1)?;
    println!(
        "deformation with differing twists, power 1: {}",
        bimodule::check_jordan_bimodule(&skewed)?.passed()
    );

    let pair = bc::over_plus(&bc::regular_bimodule(&catalog::matrix2x2())?)?;
    println!("{}", bimodule::check_right_special(&pair));
    let jm = bc::special_pair_to_jordan_bimodule(&pair)?;
    println!(
        "special pair gives a Jordan bimodule: {}",
        bimodule::check_jordan_bimodule(&jm)?.passed()
    );
    Ok(())
}
