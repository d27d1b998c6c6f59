//! One flipped sign is enough for the checks to notice.

use kacspin::diagram::parse_gcm;
use kacspin::spinreps::{transport_all, verify_berman, SpinRep};
use kacspin::weylmod::Level;

fn main() -> kacspin::Result<()> {
    let g = parse_gcm("A3")?;
    let s = SpinRep::build_sigma(&g, Level::ThreeHalves, &SpinRep::build_rho(&g)?)?;
    let bad = s.inject_sign_flip(1, 0)?;
    let b = verify_berman(&bad, 10_000);
    println!("Berman failures after one flip: {}", b.failures.len());
    if let Some(c) = b.failures.first() {
        println!("  first: {} on {:?}", c.identity, c.operands);
    }
    let t = transport_all(&bad, 3)?;
    println!("transport mismatches: {} of {}", t.iter().filter(|t| !t.matches).count(), t.len());
    Ok(())
}
