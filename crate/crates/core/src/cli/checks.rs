//! The verification suites behind `kacspin verify`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::cocycle::{verify_cocycle, verify_gamma_axioms, CocycleTable};
use crate::diagram::Gcm;
use crate::error::{Error, Result};
use crate::exactnum::{q, DenseMatrix, Scalar};
use crate::liftgroup::{
    ad_weyl_action_check, closed_form_exp, exp_ode_check, lift_classify, max_abs_diff, numeric_expm,
    scaled_generator_f64, wspin_relations_check, Angle, LiftClass,
};
use crate::report::{CheckReport, Counterexample};
use crate::rootsys::{inner, real_roots, RootVec};
use crate::spinreps::{
    mu_operator, mu_quartic_check, nested_commutator, skewness_check, split_identities_check, traceless_check,
    transport_all, verify_berman, verify_spin_axioms, SpinRep, SpinorSpace,
};
use crate::weylmod::{master_eq_check, Level, VModule, VOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Axioms,
    Gamma,
    Cocycle,
    Berman,
    Skew,
    Master,
    FSquare,
    Split,
    MuQuartic,
    Lift,
    Wspin,
    Transport,
    Isotropic,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::Axioms,
        Check::Gamma,
        Check::Cocycle,
        Check::Berman,
        Check::Skew,
        Check::Master,
        Check::FSquare,
        Check::Split,
        Check::MuQuartic,
        Check::Lift,
        Check::Wspin,
        Check::Transport,
        Check::Isotropic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Axioms => "axioms",
            Check::Gamma => "gamma",
            Check::Cocycle => "cocycle",
            Check::Berman => "berman",
            Check::Skew => "skew",
            Check::Master => "master",
            Check::FSquare => "f-square",
            Check::Split => "split",
            Check::MuQuartic => "mu-quartic",
            Check::Lift => "lift",
            Check::Wspin => "wspin",
            Check::Transport => "transport",
            Check::Isotropic => "isotropic",
        }
    }

    /// `--checks all` skips the μ quartic, which does not hold as stated.
    pub fn in_all(self) -> bool {
        self != Check::MuQuartic
    }

    /// Checks on the cocycle table run once, without a level.
    pub fn is_levelless(self) -> bool {
        matches!(self, Check::Gamma | Check::Cocycle)
    }

    pub fn applies(self, g: &Gcm, level: Level) -> bool {
        if level == Level::SevenHalves && !g.is_regular() {
            return false;
        }
        match self {
            Check::Axioms => level == Level::Half,
            Check::FSquare => level == Level::SevenHalves,
            Check::Split | Check::MuQuartic => matches!(level, Level::ThreeHalves | Level::FiveHalves),
            Check::Isotropic => level == Level::Half && !radical_subsets(g).is_empty(),
            _ => true,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        Check::ALL
            .into_iter()
            .find(|c| c.name() == t)
            .ok_or_else(|| Error::Parse(format!("unknown check '{s}'")))
    }
}

/// One sign flip: generator (0-based) and a basis index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fault {
    pub generator: usize,
    pub index: usize,
}

impl FromStr for Fault {
    type Err = Error;
    /// `i` or `i:k` with a 1-based generator index.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad fault '{s}', expected i or i:k"));
        let (i, k) = s.split_once(':').unwrap_or((s, "0"));
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        Ok(Fault { generator: i - 1, index: k })
    }
}

#[derive(Clone, Debug)]
pub struct CheckOptions {
    pub restricted: bool,
    pub v: VOptions,
    pub dense_threshold: usize,
    pub samples: usize,
    pub seed: u64,
    pub max_height: Option<i64>,
    pub fault: Option<Fault>,
    pub budget: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            restricted: false,
            v: VOptions::default(),
            dense_threshold: crate::spinreps::DEFAULT_DENSE_THRESHOLD,
            samples: 100,
            seed: 0,
            max_height: None,
            fault: None,
            budget: crate::analysis::DEFAULT_BUDGET,
        }
    }
}

fn spinor(g: &Gcm, o: &CheckOptions) -> Result<SpinorSpace> {
    if o.restricted {
        SpinorSpace::restricted(g)
    } else {
        SpinorSpace::full(g)
    }
}

/// The representation a suite runs on, with the fault applied to its generators.
pub fn build_rep(g: &Gcm, level: Level, o: &CheckOptions) -> Result<SpinRep> {
    let r = SpinRep::build(g, level, o.v, spinor(g, o)?)?;
    match o.fault {
        Some(f) => {
            g.check_index(f.generator)?;
            r.inject_sign_flip(f.generator, f.index)
        }
        None => Ok(r),
    }
}

fn build_v(g: &Gcm, level: Level, o: &CheckOptions) -> Result<VModule> {
    let v = VModule::new(g, level, o.v)?;
    match o.fault {
        Some(f) => v.inject_sign_flip(f.generator, f.index),
        None => Ok(v),
    }
}

fn build_table(g: &Gcm, o: &CheckOptions) -> Result<CocycleTable> {
    let t = CocycleTable::new(g)?;
    Ok(match o.fault {
        Some(f) => {
            g.check_index(f.generator)?;
            t.with_flipped_bit(f.generator, f.generator + f.index)
        }
        None => t,
    })
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> RootVec {
    RootVec((0..n).map(|_| rng.gen_range(-3..=3)).collect())
}

fn simple_roots(n: usize) -> Vec<RootVec> {
    (0..n).map(|i| RootVec::simple(n, i)).collect()
}

/// Subsets `S` with `A·1_S = 0`, connected, of size at least 2 (rank ≤ 16).
pub fn radical_subsets(g: &Gcm) -> Vec<Vec<usize>> {
    let n = g.rank();
    if n > 16 {
        return Vec::new();
    }
    (1u32..(1 << n))
        .filter(|m| m.count_ones() >= 2)
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| (0..n).all(|i| s.iter().map(|&j| g.entry(i, j)).sum::<i64>() == 0))
        .filter(|s| path_order(g, s).is_some())
        .collect()
}

/// A commutator word for `S`: the innermost letter is the smallest index and
/// every outer letter is adjacent to one already used.
pub fn path_order(g: &Gcm, s: &[usize]) -> Option<Vec<usize>> {
    let mut order = vec![s[0]];
    while order.len() < s.len() {
        let next = s.iter().find(|&&j| !order.contains(&j) && order.iter().any(|&k| g.is_edge(j, k)))?;
        order.push(*next);
    }
    order.reverse();
    Some(order)
}

fn dense_json(m: &DenseMatrix) -> serde_json::Value {
    serde_json::to_value(m.to_json()).expect("scalar json")
}

/// Runs one suite. `level` is ignored for level-free suites.
pub fn run_check(g: &Gcm, diagram: &str, check: Check, level: Level, o: &CheckOptions) -> Result<CheckReport> {
    g.require_simply_laced()?;
    if !check.is_levelless() && !check.applies(g, level) {
        return Err(Error::Unsupported(format!("check '{check}' does not apply at level {level} on {diagram}")));
    }
    let n = g.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let lvl = (!check.is_levelless()).then_some(level);
    let report = |fails: Vec<Counterexample>| CheckReport::new(check.name(), diagram, lvl, fails);
    match check {
        Check::Gamma => {
            let t = build_table(g, o)?;
            let k = (o.samples as f64).sqrt().ceil() as usize;
            let mut sample = simple_roots(n);
            sample.extend((0..k).map(|_| random_vec(&mut rng, n)));
            Ok(report(verify_gamma_axioms(g, &t, &sample)).with_details(json!({"sample": sample.len()})))
        }
        Check::Cocycle => {
            let t = build_table(g, o)?;
            let s = simple_roots(n);
            let mut triples: Vec<_> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .map(|(i, j)| (s[i].clone(), s[j].clone(), s[(i + j) % n].clone()))
                .collect();
            triples.extend((0..o.samples).map(|_| (random_vec(&mut rng, n), random_vec(&mut rng, n), random_vec(&mut rng, n))));
            Ok(report(verify_cocycle(g, &t, &triples)).with_details(json!({"triples": triples.len()})))
        }
        Check::Axioms => {
            let r = build_rep(g, level, o)?;
            Ok(report(verify_spin_axioms(&r)))
        }
        Check::Berman => {
            let r = build_rep(g, level, o)?;
            let b = verify_berman(&r, o.dense_threshold);
            Ok(report(b.failures)
                .with_details(json!({"mode": b.mode, "relations": b.relations_checked, "dim": r.dim()}))
                .experimental(r.is_experimental()))
        }
        Check::Skew => {
            let r = build_rep(g, level, o)?;
            let mut f = skewness_check(&r);
            f.extend(traceless_check(&r));
            Ok(report(f).experimental(r.is_experimental()))
        }
        Check::Master => {
            let v = build_v(g, level, o)?;
            let roots = real_roots(g, o.max_height.unwrap_or(2));
            let mut fails = Vec::new();
            let mut covered = 0;
            for a in &roots {
                for b in &roots {
                    if let Some(f) = master_eq_check(g, &v, a, b)? {
                        covered += 1;
                        fails.extend(f.into_iter().map(|m| {
                            Counterexample::new(m.identity, vec![m.alpha, m.beta], m.lhs, m.rhs)
                        }));
                    }
                }
            }
            Ok(report(fails).with_details(json!({"pairs": covered})).experimental(v.is_experimental()))
        }
        Check::FSquare => {
            let v = build_v(g, level, o)?;
            let c = v.constants().expect("level 7/2 constants");
            let mut fails = Vec::new();
            let mut scalar_eq = |name: &str, ops: Vec<String>, l: Scalar, r: Scalar| {
                if l != r {
                    fails.push(Counterexample::new(name, ops, json!(l.to_json()), json!(r.to_json())));
                }
            };
            scalar_eq("p^2 = 1/3", vec![], c.p2.clone(), Scalar::from_q(q(1, 3)));
            scalar_eq("p^2 + 2pq + ((m+2)/12) q^2 = 1", vec![], c.constraint(), Scalar::one());
            let roots = real_roots(g, o.max_height.unwrap_or(2));
            for a in &roots {
                for b in &roots {
                    let ops = vec![a.to_string(), b.to_string()];
                    if a == b {
                        scalar_eq("b(v(a),v(a)) = 4", ops, v.v_pairing(a, b)?, Scalar::int(4));
                    } else if inner(g, a, b).abs() <= 1 {
                        scalar_eq("b(v(a),v(b)) = b(a,b)", ops, v.v_pairing(a, b)?, Scalar::int(inner(g, a, b)));
                    }
                }
            }
            for a in &roots {
                let f = v.f_alpha(a)?;
                let (l, r) = (f.mul(&f), f.scale(&Scalar::int(4)));
                if l != r {
                    fails.push(Counterexample::new("f(a)^2 = 4 f(a)", vec![a.to_string()], dense_json(&l), dense_json(&r)));
                }
            }
            Ok(report(fails).with_details(json!({"D": c.big_d, "roots": roots.len()})))
        }
        Check::Split => {
            let r = build_rep(g, level, o)?;
            Ok(report(split_identities_check(&r)?).experimental(r.is_experimental()))
        }
        Check::MuQuartic => {
            let sigma = build_rep(g, level, o)?;
            let rho = SpinRep::build(g, Level::Half, o.v, sigma.spinor().clone())?;
            let d = sigma.dim() * rho.dim();
            if d > o.budget {
                return Err(Error::Budget { dim: d, budget: o.budget });
            }
            let reps = mu_quartic_check(&sigma, &rho)?;
            let mut fails = Vec::new();
            for m in &reps {
                if !m.quartic_holds {
                    let mu = mu_operator(&sigma, &rho, m.generator - 1)?;
                    let m2 = mu.mul(&mu);
                    let lhs = m2.mul(&m2);
                    let rhs = m2.scale(&Scalar::frac(-5, 2)).sub(&DenseMatrix::scalar(mu.rows(), &Scalar::frac(9, 16)));
                    fails.push(Counterexample::new(
                        "mu^4 = -5/2 mu^2 - 9/16",
                        vec![m.generator.to_string()],
                        dense_json(&lhs),
                        dense_json(&rhs),
                    ));
                }
            }
            Ok(report(fails).with_details(json!({"generators": reps})))
        }
        Check::Lift => {
            let r = build_rep(g, level, o)?;
            let mut fails = exp_ode_check(&r)?;
            let class = lift_classify(&r)?;
            if class != LiftClass::LiftsOnlyToSpin {
                fails.push(Counterexample::new("lift class", vec![], json!(class), json!(LiftClass::LiftsOnlyToSpin)));
            }
            let mut max_diff = None;
            if r.dim() <= o.budget {
                let mut worst = 0f64;
                for i in 0..n {
                    for _ in 0..5 {
                        let phi = rng.gen_range(0.0..4.0 * std::f64::consts::PI);
                        let closed = closed_form_exp(&r, i, &Angle::Radians(phi))?.to_f64();
                        let numeric = numeric_expm(&scaled_generator_f64(&r, i, phi)?)?;
                        let later = closed_form_exp(&r, i, &Angle::Radians(phi + 4.0 * std::f64::consts::PI))?.to_f64();
                        let d = max_abs_diff(&closed, &numeric).max(max_abs_diff(&closed, &later));
                        worst = worst.max(d);
                        if d > 1e-10 {
                            fails.push(Counterexample::new(
                                "closed form = expm, 4pi-periodic",
                                vec![(i + 1).to_string(), phi.to_string()],
                                json!(d),
                                json!(0.0),
                            ));
                        }
                    }
                }
                max_diff = Some(worst);
            }
            Ok(report(fails)
                .with_details(json!({"class": class, "expm_max_diff": max_diff}))
                .experimental(r.is_experimental()))
        }
        Check::Wspin => {
            let r = build_rep(g, level, o)?;
            let w = wspin_relations_check(&r)?;
            let mut fails = w.failures;
            if level == Level::Half {
                if !w.r4_minus_id {
                    fails.push(Counterexample::new("r_i^4 = -Id", vec![], json!(false), json!(true)));
                }
                let mut roots = real_roots(g, o.max_height.unwrap_or(2));
                roots.push(RootVec::zero(n));
                for i in 0..n {
                    for a in &roots {
                        fails.extend(ad_weyl_action_check(&r, i, a, &Angle::pi(1, 4))?);
                        fails.extend(ad_weyl_action_check(&r, i, a, &Angle::Radians(rng.gen_range(0.0..6.0)))?);
                    }
                }
            }
            Ok(report(fails)
                .with_details(json!({"orders": w.orders, "r4_minus_id": w.r4_minus_id}))
                .experimental(r.is_experimental()))
        }
        Check::Transport => {
            let r = build_rep(g, level, o)?;
            let ts = transport_all(&r, o.max_height.unwrap_or(4))?;
            let fails = ts
                .iter()
                .filter(|t| !t.matches)
                .map(|t| {
                    let want = r.root_operator(&t.root).map(|x| x.scale(&Scalar::int(t.sign as i64)));
                    Counterexample::new(
                        "transported operator = c tau(a)(x)Gamma(a)",
                        vec![t.root.to_string(), t.word.to_string()],
                        t.operator.to_json(),
                        want.map(|w| w.to_json()).unwrap_or_default(),
                    )
                })
                .collect();
            Ok(report(fails).with_details(json!({"roots": ts.len()})).experimental(r.is_experimental()))
        }
        Check::Isotropic => {
            let r = build_rep(g, level, o)?;
            let mut fails = Vec::new();
            let subsets = radical_subsets(g);
            for s in &subsets {
                let word = path_order(g, s).expect("connected subset");
                let c = nested_commutator(&r, &word)?;
                if !c.is_zero() {
                    let ops = vec![word.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(",")];
                    fails.push(Counterexample::new("rho(nested commutator of isotropic root) = 0", ops, c.to_json(), json!(0)));
                }
            }
            let ts = transport_all(&r, o.max_height.unwrap_or(4))?;
            for t in ts.iter().filter(|t| t.operator.is_zero()) {
                fails.push(Counterexample::new("real root image nonzero", vec![t.root.to_string()], json!(0), json!("nonzero")));
            }
            Ok(report(fails).with_details(json!({"isotropic": subsets.len(), "real_roots": ts.len()})))
        }
    }
}
