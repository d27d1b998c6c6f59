//! On cycle3 the roots a_1 + 2 delta and a_1 have the same rho-image up to
//! sign, yet their images at level 3/2 differ.

use kacspin::diagram::parse_gcm;
use kacspin::rootsys::RootVec;
use kacspin::spinreps::{kernel_witness_pair, SpinRep};
use kacspin::weylmod::Level;

fn main() -> kacspin::Result<()> {
    let g = parse_gcm("cycle3")?;
    let rho = SpinRep::build_rho(&g)?;
    let s = SpinRep::build_sigma(&g, Level::ThreeHalves, &rho)?;
    let w = kernel_witness_pair(&s, &RootVec(vec![3, 2, 2]), &RootVec(vec![1, 0, 0]))?;
    println!("rho images agree up to sign {}: {}", w.sign, w.rho_agree);
    println!("sigma images differ: {}", !w.sigma_difference.is_zero());
    Ok(())
}
