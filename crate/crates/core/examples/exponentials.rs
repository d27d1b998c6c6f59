use kacspin::diagram::parse_gcm;
use kacspin::liftgroup::{closed_form_exp, lift_classify, max_abs_diff, numeric_expm, scaled_generator_f64, Angle};
use kacspin::spinreps::SpinRep;
use kacspin::weylmod::Level;

fn main() -> kacspin::Result<()> {
    let g = parse_gcm("A2")?;
    let rho = SpinRep::build_rho(&g)?;
    for level in Level::ALL {
        let s = SpinRep::build_sigma(&g, level, &rho)?;
        let full_turn = closed_form_exp(&s, 0, &"2pi".parse()?)?.as_scalar_identity().unwrap();
        let phi = 1.234;
        let closed = closed_form_exp(&s, 0, &Angle::Radians(phi))?.to_f64();
        let numeric = numeric_expm(&scaled_generator_f64(&s, 0, phi)?)?;
        println!(
            "{level}: exp(2pi X_1) = {full_turn} Id, {:?}, |closed - expm| = {:.1e}",
            lift_classify(&s)?,
            max_abs_diff(&closed, &numeric)
        );
    }
    let r = closed_form_exp(&SpinRep::build_sigma(&g, Level::ThreeHalves, &rho)?, 1, &Angle::pi(1, 2))?;
    println!("r_2 at level 3/2 has {} Kronecker terms", r.exact.unwrap().terms().len());
    Ok(())
}
