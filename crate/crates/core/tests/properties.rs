use proptest::prelude::*;

use kacspin::cocycle::{verify_cocycle, verify_gamma_axioms, CocycleTable};
use kacspin::diagram::parse_gcm;
use kacspin::exactnum::{KronOp, Scalar};
use kacspin::liftgroup::{closed_form_exp, r_generator, Angle};
use kacspin::rootsys::RootVec;
use kacspin::spinreps::SpinRep;
use kacspin::weylmod::Level;

const PRESETS: [&str; 5] = ["A2", "A3", "D4", "cycle3", "K4"];

fn sigma(name: &str, level: Level) -> SpinRep {
    let g = parse_gcm(name).unwrap();
    let rho = SpinRep::build_rho(&g).unwrap();
    SpinRep::build_sigma(&g, level, &rho).unwrap()
}

fn combo(r: &SpinRep, coeffs: &[i64]) -> KronOp {
    let mut acc = r.generator(0).unwrap().scale(&Scalar::int(coeffs[0]));
    for (i, c) in coeffs.iter().enumerate().skip(1) {
        acc = acc.add(&r.generator(i % r.rank()).unwrap().scale(&Scalar::int(*c)));
    }
    acc
}

fn level() -> impl Strategy<Value = Level> {
    prop_oneof![Just(Level::Half), Just(Level::ThreeHalves), Just(Level::FiveHalves)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kron_product_matches_dense(p in 0..3usize, l in level(), a in prop::collection::vec(-3i64..=3, 3), b in prop::collection::vec(-3i64..=3, 3)) {
        let r = sigma(["A2", "A3", "cycle3"][p], l);
        let (x, y) = (combo(&r, &a), combo(&r, &b));
        let dense = x.materialize().mul(&y.materialize());
        prop_assert_eq!(x.mul(&y).materialize(), dense);
        prop_assert_eq!(x.add(&y).materialize(), x.materialize().add(&y.materialize()));
        prop_assert_eq!(x.transpose().materialize(), x.materialize().transpose());
    }

    #[test]
    fn gamma_and_cocycle_relations(p in 0..PRESETS.len(), vs in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 6)) {
        let g = parse_gcm(PRESETS[p]).unwrap();
        let n = g.rank();
        let t = CocycleTable::new(&g).unwrap();
        let roots: Vec<RootVec> = vs.iter().map(|v| RootVec(v[..n].to_vec())).collect();
        prop_assert!(verify_gamma_axioms(&g, &t, &roots).is_empty());
        let triples: Vec<_> = roots.windows(3).map(|w| (w[0].clone(), w[1].clone(), w[2].clone())).collect();
        prop_assert!(verify_cocycle(&g, &t, &triples).is_empty());
    }

    #[test]
    fn one_parameter_subgroup(l in level(), i in 0..2usize, s in -8i64..=8, t in -8i64..=8) {
        // exact at multiples of π/2
        let r = sigma("A2", l);
        let a = closed_form_exp(&r, i, &Angle::pi(s, 2)).unwrap().exact.unwrap();
        let b = closed_form_exp(&r, i, &Angle::pi(t, 2)).unwrap().exact.unwrap();
        let ab = closed_form_exp(&r, i, &Angle::pi(s + t, 2)).unwrap().exact.unwrap();
        prop_assert!(a.mul(&b).equals(&ab));
    }

    #[test]
    fn subgroup_law_in_floating_point(i in 0..3usize, s in -10.0f64..10.0, t in -10.0f64..10.0) {
        let r = sigma("A3", Level::ThreeHalves);
        let e = |x: f64| closed_form_exp(&r, i, &Angle::Radians(x)).unwrap().to_f64();
        prop_assert!((e(s) * e(t) - e(s + t)).amax() < 1e-10);
    }
}

#[test]
fn r_generators_have_unit_determinant() {
    for name in ["A2", "A3", "cycle3"] {
        for l in [Level::Half, Level::ThreeHalves] {
            let r = sigma(name, l);
            for i in 0..r.rank() {
                let (fwd, inv) = r_generator(&r, i).unwrap();
                let d = fwd.materialize().det();
                assert!(d == Scalar::int(1) || d == Scalar::int(-1), "{name} {l} r_{}: det {d}", i + 1);
                assert!(fwd.mul(&inv).as_scalar_identity() == Some(Scalar::int(1)));
            }
        }
    }
}
