//! Sparse polynomial arithmetic over QQ and a prime field.

use adicforge::polyalg::{FieldSpec, PolyContext, Polynomial};

fn main() -> adicforge::Result<()> {
    let qq = PolyContext::new(["x", "y"], FieldSpec::Rationals)?;
    let p = Polynomial::parse(&qq, "x^2 - 2/3*x*y + y")?;
    let q = Polynomial::parse(&qq, "x - y")?;
    println!("p     = {p}");
    println!("q     = {q}");
    println!("p + q = {}", &p + &q);
    println!("p * q = {}", &p * &q);
    println!("q^3   = {}", q.pow(3));

    // x -> y + 1, y -> x
    let images = [Polynomial::parse(&qq, "y + 1")?, Polynomial::var(&qq, 0)];
    println!("p(y + 1, x) = {}", p.substitute(&images, &qq)?);

    let f7 = PolyContext::new(["t"], FieldSpec::prime(7)?)?;
    let t = Polynomial::parse(&f7, "t + 1")?;
    println!("(t + 1)^7 over GF(7) = {}", t.pow(7));
    Ok(())
}
