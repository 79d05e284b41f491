//! Parsing and running a small check document.

use bihom::dsl;

const DOC: &str = "\
# A 2-dimensional algebra with e1 e1 = e2.
algebra T dim 2
mu T e1 e1 = e2
map D = [[2, 0], [0, 4]]
map B = [[1, 0], [1, 1]]
check T morphism(T, D)
check T graph-subalgebra(T, D)
check T morphism(T, B) expect=fail
check T left-alternative mode=symbolic
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let doc = dsl::parse(DOC)?;
    let report = dsl::run(&doc)?;
    print!("{}", report.to_text());
    println!("exit code {}", report.exit_code());
    Ok(())
}
