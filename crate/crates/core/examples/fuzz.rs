//! Seeded property suites, as run by `adicforge fuzz`.

use adicforge::corpus::Corpus;
use adicforge::harness::{run_suite, SUITES};

fn main() -> adicforge::Result<()> {
    let mut corpus = Corpus::new(7);
    println!("sample surjective adic morphism: {}", corpus.surjective_adic());
    println!("sample thickening: {}", corpus.thickening());

    for suite in SUITES {
        let report = run_suite(suite, 7, 5, 3)?;
        println!("{} {report}", if report.ok() { "OK  " } else { "FAIL" });
    }
    Ok(())
}
