//! S_{3/2}, S_{5/2}, S_{7/2} and the Berman relations, dense where small
//! and factored (Kronecker form) on E10.

use std::time::Instant;

use kacspin::diagram::parse_gcm;
use kacspin::spinreps::{verify_berman, SpinRep, DEFAULT_DENSE_THRESHOLD};
use kacspin::weylmod::Level;

fn main() -> kacspin::Result<()> {
    for (name, levels) in [
        ("A3", &Level::ALL[1..]),
        ("K4", &Level::ALL[1..]),
        ("E10", &Level::ALL[1..3]),
    ] {
        let g = parse_gcm(name)?;
        let rho = SpinRep::build_rho(&g)?;
        for &level in levels {
            let t = Instant::now();
            let s = SpinRep::build_sigma(&g, level, &rho)?;
            let b = verify_berman(&s, DEFAULT_DENSE_THRESHOLD);
            println!(
                "{name:<4} {level}  dim {:>6}  {:?}  {} relations, {} failures  ({:.2?})",
                s.dim(),
                b.mode,
                b.relations_checked,
                b.failures.len(),
                t.elapsed()
            );
        }
    }
    Ok(())
}
