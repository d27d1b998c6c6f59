//! The cocycle and the signed-permutation Gamma matrices.

use kacspin::cocycle::{verify_cocycle, verify_gamma_axioms, CocycleTable};
use kacspin::diagram::parse_gcm;
use kacspin::rootsys::RootVec;

fn main() -> kacspin::Result<()> {
    let g = parse_gcm("A2")?;
    let t = CocycleTable::new(&g)?;
    let (a1, a2) = (RootVec::simple(2, 0), RootVec::simple(2, 1));
    println!("eps(a1,a2) = {}, eps(a2,a1) = {}", t.eps(&a1, &a2), t.eps(&a2, &a1));
    println!("Gamma(a1) =\n{}", t.gamma(&a1).materialize());

    let g12 = t.gamma(&a1).compose(&t.gamma(&a2));
    let want = t.gamma(&a1.add(&a2));
    println!("Gamma(a1)Gamma(a2) = {} Gamma(a1+a2)", if g12 == want { "+" } else { "-" });

    let e10 = parse_gcm("E10")?;
    let t10 = CocycleTable::new(&e10)?;
    let sample: Vec<RootVec> = (0..10).map(|i| RootVec::simple(10, i)).collect();
    let triples: Vec<_> = sample.windows(3).map(|w| (w[0].clone(), w[1].clone(), w[2].clone())).collect();
    let bad = verify_gamma_axioms(&e10, &t10, &sample).len() + verify_cocycle(&e10, &t10, &triples).len();
    println!("E10: spinor dim {}, {} axiom failures", t10.spinor_dim(), bad);
    Ok(())
}
