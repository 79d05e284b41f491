//! The built-in catalog and the printed values that disagree with recomputation.

use bihom::catalog;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for e in catalog::entries() {
        let alg = catalog::lookup(e.name)?;
        println!("{:<12} dim {:<2} digest {}", e.name, e.dim, &alg.digest()[..16]);
    }
    for e in catalog::erratum_ledger()? {
        println!(
            "{}: {} printed {} computed {}",
            e.subject, e.entry, e.printed, e.computed
        );
    }
    Ok(())
}
