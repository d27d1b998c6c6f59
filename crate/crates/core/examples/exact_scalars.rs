//! Arithmetic in Q(sqrt 2, sqrt D), the field the level-7/2 constants live in.

use kacspin::exactnum::Scalar;

fn main() -> kacspin::Result<()> {
    let r2 = Scalar::sqrt2();
    let half = Scalar::frac(1, 2);
    println!("cos(pi/4) = {}", &r2 * &half);
    println!("(sqrt2/2)^2 = {}", &(&r2 * &half) * &(&r2 * &half));

    // K4 has m = 4, so D = 6(m + 8) = 72
    let s = Scalar::sqrt_of(72);
    let x = &Scalar::int(12) - &(&Scalar::int(2) * &s);
    println!("12 - 2 sqrt72 = {x}");
    println!("its inverse   = {}", x.inv()?);
    println!("x * x^-1      = {}", &x * &x.inv()?);
    Ok(())
}
