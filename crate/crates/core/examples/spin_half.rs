use kacspin::diagram::parse_gcm;
use kacspin::spinreps::{verify_spin_axioms, SpinRep};

fn main() -> kacspin::Result<()> {
    for name in ["A2", "A3", "D4", "cycle3", "K4", "E10"] {
        let g = parse_gcm(name)?;
        let rho = SpinRep::build_rho(&g)?;
        let irr = rho.restrict_irreducible()?;
        println!(
            "{name:<7} dim S = {:>4}  irreducible piece {:>3}  axiom failures {}",
            rho.dim(),
            irr.dim(),
            verify_spin_axioms(&rho).len()
        );
    }
    Ok(())
}
