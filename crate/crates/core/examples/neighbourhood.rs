//! The infinitesimal neighbourhood of the x-axis and its checks.

use adicforge::adic::{truncate, AdicMorphism, AdicPresentation};
use adicforge::groebner::Budget;
use adicforge::neighbourhood::{
    descent_check, infinitesimal_neighbourhood, neighbourhood_base_change, neighbourhood_idempotence,
};
use adicforge::polyalg::FieldSpec;

fn main() -> adicforge::Result<()> {
    let budget = Budget::default();
    let cap = 3;
    let plane = AdicPresentation::parse(FieldSpec::Rationals, &["x", "y"], &[], &[])?;
    let axis = AdicPresentation::parse(FieldSpec::Rationals, &["x", "y"], &["y"], &[])?;
    let phi = AdicMorphism::parse(&plane, &axis, &["x", "y"], &budget)?;

    let nb = infinitesimal_neighbourhood(&phi, cap, &budget)?;
    println!("neighbourhood ring: {}", nb.hat_ring);
    println!("D = {}", nb.def_ideal_d);
    println!("{}", nb.report);
    for n in 0..=cap {
        let t = truncate(&nb.hat_ring, n);
        let basis: Vec<String> = t.quotient_ideal().reduced_basis(&budget)?.iter().map(|g| g.to_string()).collect();
        println!("  level {n}: {basis:?}");
    }

    println!("idempotence: {}", neighbourhood_idempotence(&nb.from_hat, cap, &budget)?);

    // pull back along the diagonal line x = y
    let line = AdicPresentation::parse(FieldSpec::Rationals, &["t"], &[], &[])?;
    let psi = AdicMorphism::parse(&plane, &line, &["t", "t"], &budget)?;
    println!("base change: {}", neighbourhood_base_change(&phi, &psi, cap, &budget)?);

    // descend along the thickening from the neighbourhood onto the axis
    let hat = &nb.hat_ring;
    let shifted = AdicPresentation::parse(FieldSpec::Rationals, &["x", "y"], &["x - 1"], &["y"])?;
    let chi = AdicMorphism::parse(hat, &shifted, &["x", "y"], &budget)?;
    println!("descent: {}", descent_check(&chi, &nb.from_hat, cap, &budget)?);
    Ok(())
}
