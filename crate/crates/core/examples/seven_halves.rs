use kacspin::diagram::parse_gcm;
use kacspin::exactnum::Scalar;
use kacspin::rootsys::{inner, real_roots};
use kacspin::weylmod::{Level, VModule, VOptions};

fn main() -> kacspin::Result<()> {
    for name in ["A3", "K4"] {
        let g = parse_gcm(name)?;
        let v = VModule::new(&g, Level::SevenHalves, VOptions::default())?;
        let c = v.constants().unwrap();
        println!("{name}: D = {}", c.big_d);
        println!("  p^2 = {}   pq = {}   q^2 = {}", c.p2, c.pq, c.q2);
        println!("  p^2 + 2pq + (m+2)/12 q^2 = {}", c.constraint());

        let roots = real_roots(&g, 2);
        let mut ok = true;
        for a in &roots {
            let f = v.f_alpha(a)?;
            ok &= f.mul(&f) == f.scale(&Scalar::int(4));
            for b in &roots {
                if a != b && inner(&g, a, b).abs() <= 1 {
                    ok &= v.v_pairing(a, b)? == Scalar::int(inner(&g, a, b));
                }
            }
        }
        println!("  f^2 = 4f and b(v(a),v(b)) = (a|b) on {} roots: {ok}", roots.len());
    }
    Ok(())
}
