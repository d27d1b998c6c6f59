//! At levels 3/2 and 5/2 the pieces of sigma(X_i) are polynomials in sigma(X_i).
//! The tensor product with rho obeys a degree-5 identity, not a quartic.

use kacspin::diagram::parse_gcm;
use kacspin::spinreps::{mu_quartic_check, split_identities_check, SpinRep};
use kacspin::weylmod::Level;

fn main() -> kacspin::Result<()> {
    for name in ["A2", "A3", "K4"] {
        let g = parse_gcm(name)?;
        let rho = SpinRep::build_rho(&g)?;
        for level in [Level::ThreeHalves, Level::FiveHalves] {
            let s = SpinRep::build_sigma(&g, level, &rho)?;
            println!("{name} {level}: split identity failures {}", split_identities_check(&s)?.len());
        }
    }
    let g = parse_gcm("A2")?;
    let rho = SpinRep::build_rho(&g)?;
    let s = SpinRep::build_sigma(&g, Level::ThreeHalves, &rho)?;
    for m in mu_quartic_check(&s, &rho)? {
        println!(
            "A2 mu(X_{}): quartic {}  quintic mu^5 = -5mu^3 - 4mu {}  dim span(1..mu^4) = {}",
            m.generator, m.quartic_holds, m.quintic_holds, m.span_dim
        );
    }
    Ok(())
}
