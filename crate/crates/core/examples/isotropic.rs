use kacspin::diagram::parse_gcm;
use kacspin::spinreps::{nested_commutator, transport_all, SpinRep};

fn main() -> kacspin::Result<()> {
    let g = parse_gcm("cycle3")?;
    let rho = SpinRep::build_rho(&g)?;
    let c = nested_commutator(&rho, &[0, 1, 2])?;
    println!("rho([X_1,[X_2,X_3]]) = 0: {}", c.is_zero());
    let nonzero = transport_all(&rho, 6)?.iter().all(|t| !t.operator.is_zero());
    println!("every real root of height <= 6 has a nonzero image: {nonzero}");
    Ok(())
}
