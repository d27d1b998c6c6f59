use kacspin::diagram::parse_gcm;
use kacspin::spinreps::{transport, transport_all, SpinRep};
use kacspin::rootsys::RootVec;
use kacspin::weylmod::Level;

fn main() -> kacspin::Result<()> {
    let g = parse_gcm("K4")?;
    let rho = SpinRep::build_rho(&g)?;
    let s = SpinRep::build_sigma(&g, Level::ThreeHalves, &rho)?;

    let t = transport(&s, &RootVec(vec![2, 1, 1, 0]))?;
    println!("root {} via {} from alpha_{}: sign {}, matches {}", t.root, t.word, t.index + 1, t.sign, t.matches);

    let all = transport_all(&s, 6)?;
    let bad = all.iter().filter(|t| !t.matches).count();
    println!("{} real roots of height <= 6, {} mismatches", all.len(), bad);
    Ok(())
}
