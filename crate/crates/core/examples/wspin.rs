use kacspin::diagram::parse_gcm;
use kacspin::liftgroup::{ad_weyl_action_check, wspin_relations_check, Angle};
use kacspin::rootsys::RootVec;
use kacspin::spinreps::SpinRep;
use kacspin::weylmod::Level;

fn main() -> kacspin::Result<()> {
    for name in ["A2", "A3", "K4"] {
        let g = parse_gcm(name)?;
        let rho = SpinRep::build_rho(&g)?;
        for level in [Level::Half, Level::ThreeHalves] {
            let s = SpinRep::build_sigma(&g, level, &rho)?;
            let w = wspin_relations_check(&s)?;
            println!(
                "{name} {level}: orders {:?}, r^4 = -Id {}, failures {}",
                w.orders,
                w.r4_minus_id,
                w.failures.len()
            );
        }
    }
    let g = parse_gcm("A2")?;
    let rho = SpinRep::build_rho(&g)?;
    let bad = ad_weyl_action_check(&rho, 0, &RootVec::simple(2, 1), &Angle::pi(1, 3))?;
    println!("A2: r_1 Gamma(a_2) r_1^-1 law, {} failures", bad.len());
    Ok(())
}
