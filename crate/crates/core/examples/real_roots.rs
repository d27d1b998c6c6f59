use kacspin::diagram::parse_gcm;
use kacspin::rootsys::{apply_word, real_roots, word_to_simple, RootVec};

fn main() -> kacspin::Result<()> {
    let g = parse_gcm("K4")?;
    let roots = real_roots(&g, 6);
    println!("K4 has {} positive real roots of height <= 6", roots.len());
    for a in roots.iter().take(12) {
        let (w, i) = word_to_simple(&g, a)?;
        // the word carries alpha_i back to a
        assert_eq!(apply_word(&g, &w, &RootVec::simple(g.rank(), i))?, *a);
        println!("  {a:<12} height {}  = {w} . alpha_{}", a.height(), i + 1);
    }

    let c = parse_gcm("cycle3")?;
    let delta = RootVec(vec![1, 1, 1]);
    println!("cycle3: (delta|delta) = {}, isotropic = {}", delta.norm(&c), delta.is_isotropic(&c));
    Ok(())
}
