//! Running a session script and printing both report formats.

use adicforge::session::{exit_code, parse_session, print_report, run_session, Format, Options};

const SCRIPT: &str = "\
ring A = QQ[x,y] adic (0);
ring B = QQ[x,y] / (y) adic (0);
morphism f : A -> B { x -> x, y -> y };
check surjective f;
check adic f;
compute neighbourhood f as H;
check thickening H_from @ level 2;
compute truncation H @ level 1;
";

fn main() -> adicforge::Result<()> {
    let parsed = parse_session(SCRIPT)?;
    println!("canonical form:\n{parsed}");

    let options = Options { timing: false, ..Options::default() };
    let report = run_session(SCRIPT, &options)?;
    print!("{}", print_report(&report, Format::Text));
    print!("{}", print_report(&report, Format::Json));
    println!("exit code {}", exit_code(&report));

    match parse_session("ring A = QQ[x] adic (x;\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("bad script: {e}"),
    }
    Ok(())
}
