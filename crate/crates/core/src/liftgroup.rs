//! One-parameter subgroups `Σ_i(φ) = exp(φ·σ(X_i))`, the lift dichotomy
//! and the images of the spin-extended Weyl group.
//!
//! With `τ` having eigenvalue ½ on `η(s_i) = +1`, −3/2 on `η(s_i) = −1` and
//! 5/2 on the range of `f(α_i)`, the exponential splits into the closed form
//!
//! ```text
//! cos φ cos φ/2 · Id⊗Id − cos φ sin φ/2 · Id⊗Γ + sin φ sin φ/2 · η⊗Id + sin φ cos φ/2 · η⊗Γ
//!   + ¼[cos 5φ/2 − cos 3φ/2] · f⊗Id + ¼[sin 5φ/2 + sin 3φ/2] · f⊗Γ
//! ```
//!
//! which also covers level 1/2 with `η = [1]` and no f-term.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::scalar::parse_q;
use crate::exactnum::{q, qi, DenseMatrix, KronOp, RightFactor, Scalar, Q};
use crate::report::Counterexample;
use crate::rootsys::{inner, reflect, RootVec};
use crate::spinreps::SpinRep;
use crate::weylmod::Level;

/// An angle, either an exact rational multiple of π or plain radians.
#[derive(Clone, Debug, PartialEq)]
pub enum Angle {
    PiMultiple(Q),
    Radians(f64),
}

impl Angle {
    pub fn pi(k: i64, d: i64) -> Self {
        Angle::PiMultiple(q(k, d))
    }

    pub fn radians(&self) -> f64 {
        match self {
            Angle::PiMultiple(t) => t.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI,
            Angle::Radians(x) => *x,
        }
    }

    pub fn scaled(&self, k: &Q) -> Angle {
        match self {
            Angle::PiMultiple(t) => Angle::PiMultiple(t * k),
            Angle::Radians(x) => Angle::Radians(x * k.to_f64().unwrap_or(f64::NAN)),
        }
    }

    pub fn neg(&self) -> Angle {
        self.scaled(&qi(-1))
    }

    /// `(cos, sin)` exactly when the angle is a multiple of π/4.
    pub fn exact_cos_sin(&self) -> Option<(Scalar, Scalar)> {
        let Angle::PiMultiple(t) = self else { return None };
        let k4 = t * qi(4);
        if !k4.is_integer() {
            return None;
        }
        let k8 = num_bigint::BigInt::from(8);
        let k = ((k4.to_integer() % &k8) + &k8) % &k8;
        let k = k.to_i64().expect("reduced mod 8");
        let h = Scalar::sqrt2().mul_q(&q(1, 2));
        let (z, o) = (Scalar::zero(), Scalar::one());
        Some(match k {
            0 => (o, z),
            1 => (h.clone(), h),
            2 => (z, o),
            3 => (-&h, h),
            4 => (-&o, z),
            5 => (-&h, -&h),
            6 => (z, -&o),
            _ => (h.clone(), -&h),
        })
    }

    pub fn cos_sin_f64(&self) -> (f64, f64) {
        let x = self.radians();
        (x.cos(), x.sin())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::PiMultiple(_))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::PiMultiple(t) if t.is_zero() => write!(f, "0"),
            Angle::PiMultiple(t) if t.is_integer() && *t.numer() == 1.into() => write!(f, "pi"),
            Angle::PiMultiple(t) => write!(f, "{t}pi"),
            Angle::Radians(x) => write!(f, "{x}"),
        }
    }
}

impl FromStr for Angle {
    type Err = Error;

    /// Accepts `2pi`, `3/2pi`, `pi/2`, `-pi`, `0.75pi` (as radians) or plain radians.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.trim().chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        let t = t.replace('π', "pi");
        let bad = || Error::Parse(format!("bad angle '{s}'"));
        if let Some(idx) = t.find("pi") {
            let (pre, post) = (&t[..idx], &t[idx + 2..]);
            let pre = match pre {
                "" | "+" => "1".to_string(),
                "-" => "-1".to_string(),
                p => p.to_string(),
            };
            let denom = match post {
                "" => qi(1),
                p => {
                    let d = p.strip_prefix('/').ok_or_else(bad)?;
                    parse_q(d).map_err(|_| bad())?
                }
            };
            if denom.is_zero() {
                return Err(bad());
            }
            if let Ok(k) = parse_q(&pre) {
                return Ok(Angle::PiMultiple(k / denom));
            }
            let k: f64 = pre.parse().map_err(|_| bad())?;
            return Ok(Angle::Radians(k * std::f64::consts::PI / denom.to_f64().ok_or_else(bad)?));
        }
        if let Ok(k) = parse_q(&t) {
            if k.is_zero() {
                return Ok(Angle::PiMultiple(k));
            }
        }
        t.parse::<f64>().map(Angle::Radians).map_err(|_| bad())
    }
}

/// Image of a group element: exact, floating point, or both.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub exact: Option<KronOp>,
    pub float: Option<DMatrix<f64>>,
    pub provenance: String,
}

impl GroupElement {
    pub fn to_f64(&self) -> DMatrix<f64> {
        match (&self.float, &self.exact) {
            (Some(f), _) => f.clone(),
            (None, Some(e)) => e.materialize().to_f64(),
            (None, None) => DMatrix::zeros(0, 0),
        }
    }

    /// `Some(s)` if the exact part equals `s·Id`.
    pub fn as_scalar_identity(&self) -> Option<Scalar> {
        self.exact.as_ref().and_then(KronOp::as_scalar_identity)
    }
}

/// The six coefficients of the closed form at angle φ.
struct Coeffs<T> {
    id: T,
    gamma: T,
    eta: T,
    eta_gamma: T,
    f: T,
    f_gamma: T,
}

fn coeffs_exact(phi: &Angle) -> Option<Coeffs<Scalar>> {
    let (c1, s1) = phi.exact_cos_sin()?;
    let (ch, sh) = phi.scaled(&q(1, 2)).exact_cos_sin()?;
    let (c5, s5) = phi.scaled(&q(5, 2)).exact_cos_sin()?;
    let (c3, s3) = phi.scaled(&q(3, 2)).exact_cos_sin()?;
    let quarter = q(1, 4);
    Some(Coeffs {
        id: &c1 * &ch,
        gamma: -&(&c1 * &sh),
        eta: &s1 * &sh,
        eta_gamma: &s1 * &ch,
        f: (&c5 - &c3).mul_q(&quarter),
        f_gamma: (&s5 + &s3).mul_q(&quarter),
    })
}

/// Coefficients of `dΣ_i/dφ`.
fn coeffs_derivative_exact(phi: &Angle) -> Option<Coeffs<Scalar>> {
    let (c1, s1) = phi.exact_cos_sin()?;
    let (ch, sh) = phi.scaled(&q(1, 2)).exact_cos_sin()?;
    let (c5, s5) = phi.scaled(&q(5, 2)).exact_cos_sin()?;
    let (c3, s3) = phi.scaled(&q(3, 2)).exact_cos_sin()?;
    let half = q(1, 2);
    Some(Coeffs {
        id: -&(&(&s1 * &ch) + &(&c1 * &sh).mul_q(&half)),
        gamma: &(&s1 * &sh) - &(&c1 * &ch).mul_q(&half),
        eta: &(&c1 * &sh) + &(&s1 * &ch).mul_q(&half),
        eta_gamma: &(&c1 * &ch) - &(&s1 * &sh).mul_q(&half),
        f: (&s3.mul_q(&q(3, 8))) - &s5.mul_q(&q(5, 8)),
        f_gamma: &c5.mul_q(&q(5, 8)) + &c3.mul_q(&q(3, 8)),
    })
}

fn coeffs_f64(phi: f64) -> Coeffs<f64> {
    let (c1, s1, ch, sh) = (phi.cos(), phi.sin(), (phi / 2.0).cos(), (phi / 2.0).sin());
    Coeffs {
        id: c1 * ch,
        gamma: -c1 * sh,
        eta: s1 * sh,
        eta_gamma: s1 * ch,
        f: 0.25 * ((2.5 * phi).cos() - (1.5 * phi).cos()),
        f_gamma: 0.25 * ((2.5 * phi).sin() + (1.5 * phi).sin()),
    }
}

fn assemble(r: &SpinRep, i: usize, c: Coeffs<Scalar>) -> Result<KronOp> {
    let v = r.vmodule();
    let idv = DenseMatrix::identity(v.dim());
    let eta = v.eta_simple(i).clone();
    let (ids, gam) = (r.spinor().identity(), r.spinor().gamma_class(1 << i));
    let mut k = KronOp::single(c.id, idv.clone(), ids.clone())
        .add(&KronOp::single(c.gamma, idv, gam.clone()))
        .add(&KronOp::single(c.eta, eta.clone(), ids.clone()))
        .add(&KronOp::single(c.eta_gamma, eta, gam.clone()));
    if r.level() == Level::SevenHalves {
        let f = v.f_alpha(&RootVec::simple(r.rank(), i))?;
        k = k.add(&KronOp::single(c.f, f.clone(), ids)).add(&KronOp::single(c.f_gamma, f, gam));
    }
    Ok(k.simplified())
}

/// `exp(φ·σ(X_i))`, exact whenever φ is a multiple of π/2.
pub fn closed_form_exp(r: &SpinRep, i: usize, phi: &Angle) -> Result<GroupElement> {
    r.generator(i)?;
    let provenance = format!("Sigma_{}({phi})", i + 1);
    if let Some(c) = coeffs_exact(phi) {
        return Ok(GroupElement { exact: Some(assemble(r, i, c)?), float: None, provenance });
    }
    let v = r.vmodule();
    let dv = v.dim();
    let (ids, gam) = (r.spinor().identity(), r.spinor().gamma_class(1 << i));
    let c = coeffs_f64(phi.radians());
    let (idsf, gamf) = (ids.materialize().to_f64(), gam.materialize().to_f64());
    let idvf = DMatrix::<f64>::identity(dv, dv);
    let etaf = v.eta_simple(i).to_f64();
    let mut m = idvf.kronecker(&idsf) * c.id
        + idvf.kronecker(&gamf) * c.gamma
        + etaf.kronecker(&idsf) * c.eta
        + etaf.kronecker(&gamf) * c.eta_gamma;
    if r.level() == Level::SevenHalves {
        let ff = v.f_alpha(&RootVec::simple(r.rank(), i))?.to_f64();
        m += ff.kronecker(&idsf) * c.f + ff.kronecker(&gamf) * c.f_gamma;
    }
    Ok(GroupElement { exact: None, float: Some(m), provenance })
}

/// Exact `dΣ_i/dφ` at a multiple of π/2.
pub fn closed_form_derivative(r: &SpinRep, i: usize, phi: &Angle) -> Result<KronOp> {
    r.generator(i)?;
    let c = coeffs_derivative_exact(phi)
        .ok_or_else(|| Error::Unsupported(format!("no exact derivative at angle {phi}")))?;
    assemble(r, i, c)
}

/// Ties the closed forms to the generators: `σ(X_i)·Σ_i(φ) = Σ_i'(φ)` and
/// `Σ_i(φ)·σ(X_i) = Σ_i'(φ)` exactly at φ = 0, π/2, π, 3π/2, 2π.
pub fn exp_ode_check(r: &SpinRep) -> Result<Vec<Counterexample>> {
    let mut out = Vec::new();
    for i in 0..r.rank() {
        let x = r.generator(i)?;
        for k in 0..=4 {
            let phi = Angle::pi(k, 2);
            let s = closed_form_exp(r, i, &phi)?.exact.expect("exact at multiples of pi/2");
            let ds = closed_form_derivative(r, i, &phi)?;
            let ops = vec![(i + 1).to_string(), phi.to_string()];
            for (name, lhs) in [("X_i Sigma_i(phi) = Sigma_i'(phi)", x.mul(&s)), ("Sigma_i(phi) X_i = Sigma_i'(phi)", s.mul(x))] {
                if !lhs.equals(&ds) {
                    out.push(Counterexample::new(name, ops.clone(), lhs.to_json(), ds.to_json()));
                }
            }
        }
    }
    Ok(out)
}

/// Matrix exponential in double precision (scaling and squaring with Padé
/// approximants, as provided by nalgebra).
pub fn numeric_expm(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !m.is_square() {
        return Err(Error::Dimension(format!("expm of a {}x{} matrix", m.nrows(), m.ncols())));
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(m.clone().exp())
}

/// Largest entrywise difference.
pub fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    (a - b).amax()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftClass {
    LiftsToK,
    LiftsOnlyToSpin,
}

/// `exp(2π·X_i)` is `±Id` for every i; the sign must be the same for all i.
pub fn lift_classify(r: &SpinRep) -> Result<LiftClass> {
    let mut seen = None;
    for i in 0..r.rank() {
        let e = closed_form_exp(r, i, &Angle::pi(2, 1))?;
        let s = e
            .as_scalar_identity()
            .ok_or_else(|| Error::Inconsistent(format!("exp(2 pi X_{}) is not scalar", i + 1)))?;
        let class = if s.is_one() {
            LiftClass::LiftsToK
        } else if (-&s).is_one() {
            LiftClass::LiftsOnlyToSpin
        } else {
            return Err(Error::Inconsistent(format!("exp(2 pi X_{}) = {s} Id", i + 1)));
        };
        if seen.is_some_and(|c| c != class) {
            return Err(Error::Inconsistent("lift case differs between generators".into()));
        }
        seen = Some(class);
    }
    seen.ok_or_else(|| Error::Validation("empty diagram".into()))
}

/// `r_i = Σ_i(π/2)` and its inverse `Σ_i(−π/2)`.
pub fn r_generator(r: &SpinRep, i: usize) -> Result<(KronOp, KronOp)> {
    let fwd = closed_form_exp(r, i, &Angle::pi(1, 2))?.exact.expect("exact at pi/2");
    let inv = closed_form_exp(r, i, &Angle::pi(-1, 2))?.exact.expect("exact at -pi/2");
    Ok((fwd, inv))
}

#[derive(Clone, Debug, Serialize)]
pub struct WspinReport {
    /// Order of each `r_i`.
    pub orders: Vec<u32>,
    pub r4_minus_id: bool,
    pub failures: Vec<Counterexample>,
}

fn order(x: &KronOp, id: &KronOp) -> u32 {
    let mut p = x.clone();
    for k in 1..=8 {
        if p.equals(id) {
            return k;
        }
        p = p.mul(x).simplified();
    }
    0
}

/// R1: `r_i⁸ = e`; R2: `r_j⁻¹ r_i² r_j = r_i² r_j^{2n(i,j)}`; R3: braid relations
/// of length `m_{ij}` (3 on edges, 2 otherwise); plus preservation of the form.
pub fn wspin_relations_check(r: &SpinRep) -> Result<WspinReport> {
    let n = r.rank();
    let rs: Vec<(KronOp, KronOp)> = (0..n).map(|i| r_generator(r, i)).collect::<Result<_>>()?;
    let id = KronOp::identity_like(r.vmodule().dim(), &r.spinor().identity());
    let mut failures = Vec::new();
    let ops = |v: &[usize]| v.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>();
    let mut fail = |name: &str, o: Vec<String>, l: &KronOp, rr: &KronOp| {
        failures.push(Counterexample::new(name, o, l.to_json(), rr.to_json()));
    };
    let orders: Vec<u32> = rs.iter().map(|(x, _)| order(x, &id)).collect();
    let mut r4_minus_id = true;
    let form = r.form();
    for (i, (x, xi)) in rs.iter().enumerate() {
        let x8 = x.pow(8);
        if !x8.equals(&id) {
            fail("r_i^8 = e", ops(&[i]), &x8, &id);
        }
        let x4 = x.pow(4);
        let minus = id.scale(&Scalar::int(-1));
        if !x4.equals(&minus) {
            r4_minus_id = false;
        }
        if !x.mul(xi).equals(&id) {
            fail("r_i r_i^-1 = e", ops(&[i]), &x.mul(xi), &id);
        }
        let xi_gen = r.generator(i)?;
        let (a, b) = (x.mul(xi_gen), xi_gen.mul(x));
        if !a.equals(&b) {
            fail("r_i X_i = X_i r_i", ops(&[i]), &a, &b);
        }
        let conj = x.transpose().mul(&form).mul(x);
        if !conj.equals(&form) {
            fail("r_i^T B r_i = B", ops(&[i]), &conj, &form);
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (ri, rj, rj_inv) = (&rs[i].0, &rs[j].0, &rs[j].1);
            let ri2 = ri.mul(ri);
            let nij = if r.gcm().is_edge(i, j) { 1 } else { 0 };
            let lhs = rj_inv.mul(&ri2).mul(rj);
            let rhs = ri2.mul(&rj.pow(2 * nij));
            let rhs = if nij == 0 { ri2.clone() } else { rhs };
            if !lhs.equals(&rhs) {
                fail("r_j^-1 r_i^2 r_j = r_i^2 r_j^(2n(i,j))", ops(&[i, j]), &lhs, &rhs);
            }
            if i < j {
                let m = if r.gcm().is_edge(i, j) { 3 } else { 2 };
                let mut lhs = id.clone();
                let mut rhs = id.clone();
                for k in 0..m {
                    lhs = lhs.mul(if k % 2 == 0 { ri } else { rj });
                    rhs = rhs.mul(if k % 2 == 0 { rj } else { ri });
                }
                if !lhs.equals(&rhs) {
                    fail("braid relation of length m_ij", ops(&[i, j]), &lhs, &rhs);
                }
            }
        }
    }
    Ok(WspinReport { orders, r4_minus_id, failures })
}

/// `r_i Γ(α) r_i⁻¹ = ε(α_i, α)Γ(s_i α)` for odd `(α|α_i)` and `Γ(α)` for even,
/// plus the general-angle law `cos φ·Γ(α) + sin φ·Γ(α_i)Γ(α)` (odd pairing).
pub fn ad_weyl_action_check(r: &SpinRep, i: usize, a: &RootVec, phi: &Angle) -> Result<Vec<Counterexample>> {
    if r.level() != Level::Half {
        return Err(Error::Unsupported("the Gamma conjugation law is stated at level 1/2".into()));
    }
    let g = r.gcm();
    let t = r.spinor().table();
    let ai = RootVec::simple(g.rank(), i);
    let gamma = |x: &RootVec| KronOp::single(Scalar::one(), DenseMatrix::identity(1), r.spinor().gamma(x));
    let (ri, ri_inv) = r_generator(r, i)?;
    let ga = gamma(a);
    let lhs = ri.mul(&ga).mul(&ri_inv);
    let odd = inner(g, a, &ai).rem_euclid(2) == 1;
    let rhs = if odd { gamma(&reflect(g, i, a)?).scale(&Scalar::int(t.eps(&ai, a) as i64)) } else { ga.clone() };
    let ops = vec![(i + 1).to_string(), a.to_string()];
    let mut out = Vec::new();
    if !lhs.equals(&rhs) {
        out.push(Counterexample::new("r_i Gamma(a) r_i^-1", ops.clone(), lhs.to_json(), rhs.to_json()));
    }
    if odd {
        // Σ_i(2φ) = cos φ + sin φ·Γ(α_i) conjugates Γ(α) to cos 2φ·Γ(α) + sin 2φ·Γ(α_i)Γ(α)
        let s = closed_form_exp(r, i, &phi.scaled(&qi(2)))?;
        let si = closed_form_exp(r, i, &phi.scaled(&qi(-2)))?;
        let gi_ga = gamma(&ai).mul(&ga);
        let two = phi.scaled(&qi(2));
        match (&s.exact, &si.exact, two.exact_cos_sin()) {
            (Some(x), Some(xi), Some((c, sn))) => {
                let l = x.mul(&ga).mul(xi);
                let want = ga.scale(&c).add(&gi_ga.scale(&sn));
                if !l.equals(&want) {
                    out.push(Counterexample::new("general-angle conjugation", ops, l.to_json(), want.to_json()));
                }
            }
            _ => {
                let (c, sn) = two.cos_sin_f64();
                let l = s.to_f64() * ga.materialize().to_f64() * si.to_f64();
                let want = ga.materialize().to_f64() * c + gi_ga.materialize().to_f64() * sn;
                let d = max_abs_diff(&l, &want);
                if d > 1e-10 {
                    out.push(Counterexample::new("general-angle conjugation", ops, d.into(), 0.0.into()));
                }
            }
        }
    }
    Ok(out)
}

/// Dense float image of `φ·X_i`, the input of the expm oracle.
pub fn scaled_generator_f64(r: &SpinRep, i: usize, phi: f64) -> Result<DMatrix<f64>> {
    Ok(r.generator(i)?.materialize().to_f64() * phi)
}

/// Right factor used by the closed form, exposed for examples.
pub fn gamma_factor(r: &SpinRep, i: usize) -> RightFactor {
    r.spinor().gamma_class(1 << i)
}
