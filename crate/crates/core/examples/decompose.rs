//! Commutants, invariant subspaces, the S_{5/2} splitting and signatures.

use kacspin::analysis::{
    analyse, complete_reducibility_sym2, form_signature, s52_decompose, Module, DEFAULT_BUDGET,
};
use kacspin::diagram::parse_gcm;
use kacspin::spinreps::SpinRep;
use kacspin::weylmod::Level;

fn main() -> kacspin::Result<()> {
    let g = parse_gcm("K4")?;
    let rho = SpinRep::build_rho(&g)?.restrict_irreducible()?;

    let s32 = SpinRep::build_sigma(&g, Level::ThreeHalves, &rho)?;
    let a = analyse(&Module::from_rep(&s32), DEFAULT_BUDGET)?;
    println!("K4 S_3/2 (dim {}): {:?}, commutant dim {}, {:?}", s32.dim(), a.verdict, a.commutant_dim, a.division);
    let sig = form_signature(&s32, DEFAULT_BUDGET)?;
    println!("  form signature {:?}", sig.signature);

    for name in ["A2", "A3", "K4"] {
        let g = parse_gcm(name)?;
        let s52 = SpinRep::build_sigma(&g, Level::FiveHalves, &SpinRep::build_rho(&g)?)?;
        let r = s52_decompose(&s52)?;
        println!("{name} S_5/2 = {} + {} certified {}", r.psi_dim, r.complement_dim, r.certified());
    }

    let sym2 = complete_reducibility_sym2(&g, DEFAULT_BUDGET)?;
    let dims: Vec<usize> = sym2.pieces.iter().map(|p| p.dim).collect();
    println!("K4 Sym^2(h*) pieces {dims:?}, complements found {}", sym2.complete);
    Ok(())
}
