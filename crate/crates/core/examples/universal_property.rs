//! Factoring a map into the dual numbers through the neighbourhood.

use adicforge::adic::{AdicMorphism, AdicPresentation};
use adicforge::groebner::{Budget, Ideal};
use adicforge::neighbourhood::{infinitesimal_neighbourhood, make_square_zero, verify_universal_property};
use adicforge::polyalg::FieldSpec;

fn main() -> adicforge::Result<()> {
    let budget = Budget::default();
    let line = AdicPresentation::parse(FieldSpec::Rationals, &["x"], &[], &[])?;
    let origin = AdicPresentation::parse(FieldSpec::Rationals, &["x"], &["x"], &[])?;
    let phi = AdicMorphism::parse(&line, &origin, &["x"], &budget)?;
    let nb = infinitesimal_neighbourhood(&phi, 3, &budget)?;

    // C′ = k[e]/(e^2) -> C = k
    let dual = AdicPresentation::parse(FieldSpec::Rationals, &["e"], &["e^2"], &[])?;
    let t = make_square_zero(&dual, &Ideal::parse(dual.context(), &["e"])?, &budget)?;
    let psi = AdicMorphism::parse(&line, &dual, &["e"], &budget)?;
    let psi_prime = AdicMorphism::parse(&origin, &t.small, &["0"], &budget)?;

    let rep = verify_universal_property(&nb, &t, &psi, &psi_prime, 8, &budget)?;
    println!("x -> e factors through the neighbourhood: {rep}");

    // x -> 1 + e does not lie over the origin
    let off = AdicMorphism::parse(&line, &dual, &["1 + e"], &budget)?;
    match verify_universal_property(&nb, &t, &off, &psi_prime, 8, &budget) {
        Ok(rep) => println!("x -> 1 + e: {rep}"),
        Err(e) => println!("x -> 1 + e rejected: {e}"),
    }
    Ok(())
}
