//! Adic, surjective adic, thickening and ffp on a handful of morphisms.

use adicforge::adic::{
    continuity_modulus, ffp_report, is_adic, is_surjective_adic, is_thickening, reduction_equal, AdicMorphism,
    AdicPresentation,
};
use adicforge::groebner::Budget;
use adicforge::polyalg::FieldSpec;

fn show(name: &str, phi: &AdicMorphism, budget: &Budget) -> adicforge::Result<()> {
    let cap = 3;
    println!("{name}: {} -> {}", phi.source(), phi.target());
    println!("  adic            {}", is_adic(phi, budget)?);
    println!("  surjective adic {}", is_surjective_adic(phi, cap, budget)?);
    println!("  thickening      {}", is_thickening(phi, cap, budget)?);
    println!("  ffp             {}", ffp_report(phi, cap, budget)?);
    Ok(())
}

fn main() -> adicforge::Result<()> {
    let budget = Budget::default();
    let qq = FieldSpec::Rationals;

    // cusp completed at the origin, mapped onto its residue field
    let cusp = AdicPresentation::parse(qq, &["x", "y"], &["y^2 - x^3"], &["x", "y"])?;
    let point = AdicPresentation::parse(qq, &["x", "y"], &["y^2 - x^3", "x", "y"], &[])?;
    let residue = AdicMorphism::parse(&cusp, &point, &["x", "y"], &budget)?;
    show("residue map", &residue, &budget)?;

    // k[[t]] -> k[[t]], t -> t^2 is adic but not surjective
    let series = AdicPresentation::parse(qq, &["t"], &[], &["t"])?;
    let square = AdicMorphism::parse(&series, &series, &["t^2"], &budget)?;
    show("t -> t^2", &square, &budget)?;
    println!("  modulus for m = 3: {}", continuity_modulus(&square, 3, 3, &budget)?);

    // a discrete ring into a complete one: continuous, not adic
    let line = AdicPresentation::parse(qq, &["t"], &[], &[])?;
    let into = AdicMorphism::parse(&line, &series, &["t"], &budget)?;
    show("k[t] -> k[[t]]", &into, &budget)?;

    let t = series.poly("t")?;
    let t2 = series.poly("t + t^3")?;
    println!("t and t + t^3 agree mod rad: {}", reduction_equal(&series, &t, &t2, &budget)?);
    Ok(())
}
