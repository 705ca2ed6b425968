//! Reduced bases, membership, radicals and elimination.

use adicforge::groebner::{eliminate, ideal_membership, radical_membership, Budget, Ideal};
use adicforge::polyalg::{FieldSpec, PolyContext, Polynomial};

fn main() -> adicforge::Result<()> {
    let budget = Budget::default();
    let ctx = PolyContext::new(["x", "y", "z"], FieldSpec::Rationals)?;
    let twisted = Ideal::parse(&ctx, &["y - x^2", "z - x^3"])?;
    let basis: Vec<String> = twisted.reduced_basis(&budget)?.iter().map(|g| g.to_string()).collect();
    println!("reduced basis of {twisted}: {basis:?}");

    let f = Polynomial::parse(&ctx, "x*z - y^2")?;
    println!("{f} in ideal: {}", ideal_membership(&f, &twisted, &budget)?);
    println!("normal form of x^4 + z: {}", twisted.normal_form(&Polynomial::parse(&ctx, "x^4 + z")?, &budget)?);

    let implicit = eliminate(&twisted, &["y", "z"], &budget)?;
    println!("image of the curve in (y, z): {implicit}");

    let fat = Ideal::parse(&ctx, &["x^3", "y^2 - z"])?;
    let x = Polynomial::var(&ctx, 0);
    println!("x in {fat}: {}", ideal_membership(&x, &fat, &budget)?);
    println!("x in rad: {}", radical_membership(&x, &fat, &budget)?);
    println!("nilpotency exponent of x: {:?}", fat.nilpotency_exponent(&x, 10, &budget)?);

    // a tiny budget turns the computation inconclusive instead of running forever
    let tiny = Budget { max_pairs: 1, ..Budget::default() };
    let hard = Ideal::parse(&ctx, &["x^2 - y*z", "y^2 - x*z", "z^2 - x*y"])?;
    match hard.reduced_basis(&tiny) {
        Ok(b) => println!("finished anyway with {} elements", b.len()),
        Err(e) => println!("tiny budget: {e}"),
    }
    Ok(())
}
