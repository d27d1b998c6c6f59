//! Presets, the small DSL, and what validation reports.

use kacspin::diagram::{parse_gcm, realization, validate};

fn main() -> kacspin::Result<()> {
    for spec in ["A3", "D4", "cycle3", "K4", "E10", "rank = 4; edges = 1-2, 2-3, 3-4, 4-1"] {
        let g = parse_gcm(spec)?;
        let v = validate(&g);
        let r = realization(&g)?;
        println!(
            "{spec:<40} rank {:>2}  type {:?}  det {}  dim h* = {}",
            g.rank(),
            v.type_class.unwrap(),
            v.det.unwrap(),
            r.dim
        );
    }
    println!("\nK4 as a matrix:\n{}", parse_gcm("K4")?);

    // B2 parses but nothing representation-theoretic accepts it
    let b2 = parse_gcm("B2")?;
    println!("B2 simply laced: {}  -> {}", b2.is_simply_laced(), b2.require_simply_laced().unwrap_err());
    Ok(())
}
