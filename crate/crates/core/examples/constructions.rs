//! Completed tensor products, localisation, the diagonal and locality.

use adicforge::adic::{
    completed_localisation, completed_tensor, diagonal, is_surjective_adic, locality_check, AdicMorphism,
    AdicPresentation, LocalPredicate,
};
use adicforge::groebner::Budget;
use adicforge::polyalg::FieldSpec;

fn main() -> adicforge::Result<()> {
    let budget = Budget::default();
    let qq = FieldSpec::Rationals;

    let a = AdicPresentation::parse(qq, &["x", "y"], &[], &["x"])?;
    let b = AdicPresentation::parse(qq, &["x", "y"], &["y^2 - x"], &["x"])?;
    let phi = AdicMorphism::parse(&a, &b, &["x", "y"], &budget)?;

    let a_prime = AdicPresentation::parse(qq, &["s"], &[], &["s"])?;
    let psi = AdicMorphism::parse(&a, &a_prime, &["s", "s + 1"], &budget)?;
    let sq = completed_tensor(&phi, &psi)?;
    println!("B ⊗ A′ = {}", sq.apex);
    println!("  B  -> apex: {}", sq.psi_prime);
    println!("  A′ -> apex: {}", sq.phi_prime);
    println!("  base change surjective adic: {}", is_surjective_adic(&sq.phi_prime, 3, &budget)?);

    let f = a.poly("y + 1")?;
    let (af, loc) = completed_localisation(&a, &f)?;
    println!("A_f = {af}");
    println!("  A -> A_f: {loc}");

    let (square, delta) = diagonal(&phi, &budget)?;
    println!("B ⊗_A B = {}", square.apex);
    println!("  diagonal {delta}: {}", is_surjective_adic(&delta, 3, &budget)?);

    let cover = vec![a.poly("y")?, a.poly("1 - y")?];
    for predicate in [LocalPredicate::SurjectiveAdic, LocalPredicate::Thickening] {
        let rep = locality_check(&phi, &cover, predicate, 3, &budget)?;
        println!("locality of {predicate:?} on {{y, 1 - y}}: {rep}");
    }
    Ok(())
}
