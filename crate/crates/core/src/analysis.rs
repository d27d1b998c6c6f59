//! Commutants, invariant subspaces and irreducibility certificates.
//!
//! A verdict is only ever given with a certificate:
//! * `Irreducible`: the commutant is one-dimensional.
//! * `IrreducibleOverReals`: the commutant `E` is a real division algebra
//!   (every traceless element squares to a negative scalar) and the
//!   algebra generated by the image has dimension `d²/dim E` modulo a prime,
//!   so it is all of `End_E(V)`.
//! * `Reducible`: an exactly verified proper invariant subspace.
//!
//! Anything else is `Inconclusive`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::diagram::Gcm;
use crate::error::{Error, Result};
use crate::exactnum::forms::{signature, Signature};
use crate::exactnum::sparse::{reduce_q, small_divisors, Echelon, ModMatrix, ModSpan};
use crate::exactnum::{DenseMatrix, KronOp, Scalar, Q};
use crate::spinreps::SpinRep;
use crate::weylmod::{Level, SymModule, VModule};

pub const DEFAULT_BUDGET: usize = 512;
/// Largest dimension for which the density certificate is attempted.
pub const DENSITY_LIMIT: usize = 128;

/// Generators as dense matrices together with an invariant form.
#[derive(Clone, Debug)]
pub struct Module {
    pub gens: Vec<DenseMatrix>,
    pub form: DenseMatrix,
}

impl Module {
    pub fn new(gens: Vec<DenseMatrix>, form: DenseMatrix) -> Result<Self> {
        let d = form.rows();
        if gens.iter().any(|g| g.rows() != d || g.cols() != d) || !form.is_square() {
            return Err(Error::Dimension("module generators and form".into()));
        }
        Ok(Module { gens, form })
    }

    pub fn from_rep(r: &SpinRep) -> Self {
        Module { gens: r.dense_generators(), form: r.form().materialize() }
    }

    pub fn dim(&self) -> usize {
        self.form.rows()
    }

    pub fn direct_sum(&self, o: &Module) -> Result<Module> {
        if self.gens.len() != o.gens.len() {
            return Err(Error::Dimension("direct sum of modules with different generator counts".into()));
        }
        let block = |a: &DenseMatrix, b: &DenseMatrix| {
            let (m, n) = (a.rows(), b.rows());
            DenseMatrix::from_fn(m + n, m + n, |i, j| match (i < m, j < m) {
                (true, true) => a[(i, j)].clone(),
                (false, false) => b[(i - m, j - m)].clone(),
                _ => Scalar::zero(),
            })
        };
        let gens = self.gens.iter().zip(&o.gens).map(|(a, b)| block(a, b)).collect();
        Ok(Module { gens, form: block(&self.form, &o.form) })
    }

    /// Whether the column span of `basis` is invariant under every generator.
    pub fn is_invariant(&self, basis: &DenseMatrix) -> bool {
        let r = basis.rank();
        self.gens.iter().all(|g| {
            let img = g.mul(basis);
            let both = DenseMatrix::from_fn(basis.rows(), basis.cols() * 2, |i, j| {
                if j < basis.cols() {
                    basis[(i, j)].clone()
                } else {
                    img[(i, j - basis.cols())].clone()
                }
            });
            both.rank() == r
        })
    }

    /// The action on an invariant subspace in the given basis.
    pub fn restrict(&self, basis: &DenseMatrix) -> Result<Module> {
        let gens = self
            .gens
            .iter()
            .map(|g| basis.solve_columns(&g.mul(basis)))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::Inconsistent("subspace is not invariant".into()))?;
        let form = basis.transpose().mul(&self.form).mul(basis);
        Ok(Module { gens, form })
    }
}

#[derive(Clone, Debug)]
pub struct Commutant {
    pub dim: usize,
    pub basis: Vec<DenseMatrix>,
}

fn check_budget(d: usize, budget: usize) -> Result<()> {
    if d > budget {
        return Err(Error::Budget { dim: d, budget });
    }
    Ok(())
}

/// Solves `[X, C] = 0` for every generator exactly.
pub fn commutant(m: &Module, budget: usize) -> Result<Commutant> {
    let d = m.dim();
    check_budget(d, budget)?;
    let mut ech = Echelon::new(d * d);
    for x in &m.gens {
        let rows: Vec<Vec<(usize, Scalar)>> =
            (0..d).map(|r| (0..d).filter(|&k| !x[(r, k)].is_zero()).map(|k| (k, x[(r, k)].clone())).collect()).collect();
        let cols: Vec<Vec<(usize, Scalar)>> =
            (0..d).map(|c| (0..d).filter(|&k| !x[(k, c)].is_zero()).map(|k| (k, x[(k, c)].clone())).collect()).collect();
        for r in 0..d {
            for c in 0..d {
                let mut eq: std::collections::BTreeMap<usize, Scalar> = Default::default();
                for (k, v) in &rows[r] {
                    *eq.entry(k * d + c).or_default() += v;
                }
                for (k, v) in &cols[c] {
                    *eq.entry(r * d + k).or_default() -= v;
                }
                ech.insert(eq.into_iter().collect());
            }
        }
    }
    let basis: Vec<DenseMatrix> = ech
        .kernel_basis()
        .into_iter()
        .map(|v| DenseMatrix::from_fn(d, d, |i, j| v[i * d + j].clone()))
        .collect();
    Ok(Commutant { dim: basis.len(), basis })
}

pub fn commutant_dim(r: &SpinRep, budget: usize) -> Result<Commutant> {
    check_budget(r.dim(), budget)?;
    commutant(&Module::from_rep(r), budget)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DivisionKind {
    Real,
    Complex,
    Quaternion,
    Other(usize),
}

/// Certifies that the commutant is a real division algebra: its traceless
/// part `U` satisfies `uv + vu = −2g(u,v)·Id` with `g` positive definite.
pub fn division_certificate(c: &Commutant) -> Option<DivisionKind> {
    let d = c.basis.first()?.rows();
    let dq = Scalar::int(d as i64);
    let mut traceless: Vec<DenseMatrix> = Vec::new();
    let mut span = Echelon::new(d * d);
    span.insert(DenseMatrix::identity(d).entries().iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect());
    for b in &c.basis {
        let t = &b.trace() / &dq;
        let u = b.sub(&DenseMatrix::scalar(d, &t));
        let row = u.entries().iter().cloned().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        if span.insert(row) {
            traceless.push(u);
        }
    }
    let k = traceless.len();
    let mut g = DenseMatrix::zeros(k, k);
    for a in 0..k {
        for b in a..k {
            let s = traceless[a].anticommutator(&traceless[b]).is_scalar_multiple_of_identity()?;
            let v = s.mul_q(&crate::exactnum::q(-1, 2));
            g[(a, b)] = v.clone();
            g[(b, a)] = v;
        }
    }
    if k > 0 {
        let sig = signature(&g).ok()?;
        if sig.pos != k {
            return None;
        }
    }
    Some(match k + 1 {
        1 => DivisionKind::Real,
        2 => DivisionKind::Complex,
        4 => DivisionKind::Quaternion,
        e => DivisionKind::Other(e),
    })
}

fn to_mod(m: &DenseMatrix) -> Option<ModMatrix> {
    let data = m.entries().iter().map(|x| x.as_rational().and_then(reduce_q)).collect::<Option<Vec<_>>>()?;
    Some(ModMatrix { n: m.rows(), data })
}

/// Dimension modulo `2^61 − 1` of the unital algebra generated by the
/// module; a lower bound for the rational dimension.
pub fn algebra_dim_mod_p(m: &Module, stop_at: usize) -> Option<usize> {
    let d = m.dim();
    let gens: Vec<ModMatrix> = m.gens.iter().map(to_mod).collect::<Option<_>>()?;
    let mut span = ModSpan::new(d * d);
    let id = ModMatrix::identity(d);
    span.insert(id.data.clone());
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in &gens {
            let y = g.mul(&x);
            if span.insert(y.data.clone()) {
                if span.dim() >= stop_at {
                    return Some(span.dim());
                }
                queue.push(y);
            }
        }
    }
    Some(span.dim())
}

/// Cyclic submodule generated by `v`, as column vectors.
pub fn spin_up(m: &Module, v: &[Scalar]) -> Vec<Vec<Scalar>> {
    let d = m.dim();
    let mut ech = Echelon::new(d);
    let mut out = Vec::new();
    let mut queue = vec![v.to_vec()];
    while let Some(w) = queue.pop() {
        if ech.insert(w.iter().cloned().enumerate().filter(|(_, x)| !x.is_zero()).collect()) {
            for g in &m.gens {
                queue.push(g.mul_vec(&w));
            }
            out.push(w);
            if out.len() == d {
                break;
            }
        }
    }
    out
}

/// Polynomial `p` (monic, low degree first) with `p(C)v = 0` of least degree.
fn krylov_poly(c: &DenseMatrix, v: &[Scalar]) -> Option<Vec<Q>> {
    let d = c.rows();
    let mut cols: Vec<Vec<Scalar>> = vec![v.to_vec()];
    loop {
        let next = c.mul_vec(cols.last().unwrap());
        let k = DenseMatrix::from_columns(d, &cols);
        let with = DenseMatrix::from_columns(d, &[cols.clone(), vec![next.clone()]].concat());
        if with.rank() == cols.len() {
            let nb = DenseMatrix::from_columns(d, &[next]);
            let sol = k.solve_columns(&nb).ok()?;
            let mut p: Vec<Q> = (0..cols.len()).map(|j| sol[(j, 0)].as_rational().map(|x| -x.clone())).collect::<Option<_>>()?;
            p.push(Q::one());
            return Some(p);
        }
        cols.push(next);
        if cols.len() > d {
            return None;
        }
    }
}

fn eval(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

/// Rational roots of a rational polynomial by the rational root theorem.
pub fn rational_roots(p: &[Q]) -> Vec<Q> {
    let lcm = p.iter().fold(BigInt::one(), |l, c| num_integer::lcm(l, c.denom().clone()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Q::from(lcm.clone())).to_integer()).collect();
    let mut out = Vec::new();
    let low = ints.iter().position(|x| !x.is_zero());
    let Some(low) = low else { return out };
    if low > 0 {
        out.push(Q::zero());
    }
    let lead = ints.last().unwrap();
    let (Some(us), Some(ws)) = (small_divisors(&ints[low], 1 << 40), small_divisors(lead, 1 << 40)) else {
        return out;
    };
    for &u in &us {
        for &w in &ws {
            for s in [1i64, -1] {
                let x = Q::new(BigInt::from(u) * s, BigInt::from(w));
                if !out.contains(&x) && eval(p, &x).is_zero() {
                    out.push(x);
                }
            }
        }
    }
    out
}

/// A proper invariant subspace from a rational eigenspace of a commutant element.
fn eigen_split(c: &Commutant) -> Option<DenseMatrix> {
    let d = c.basis.first()?.rows();
    let mut candidates: Vec<DenseMatrix> = c.basis.clone();
    let mut mix = DenseMatrix::zeros(d, d);
    for (k, b) in c.basis.iter().enumerate() {
        mix.add_scaled(&Scalar::int(k as i64 * 7 + 3), b);
    }
    candidates.push(mix);
    let seeds: Vec<Vec<Scalar>> = vec![
        (0..d).map(|i| Scalar::int((i == 0) as i64)).collect(),
        (0..d).map(|i| Scalar::int((i as i64 * 37 + 11) % 23 - 11)).collect(),
    ];
    for x in candidates {
        if x.is_scalar_multiple_of_identity().is_some() || !x.is_rational() {
            continue;
        }
        for v in &seeds {
            let Some(p) = krylov_poly(&x, v) else { continue };
            for lam in rational_roots(&p) {
                let k = x.sub(&DenseMatrix::scalar(d, &Scalar::from_q(lam))).kernel_basis();
                if !k.is_empty() && k.len() < d {
                    return Some(DenseMatrix::from_columns(d, &k));
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Irreducible,
    IrreducibleOverReals,
    Reducible,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct Analysis {
    pub verdict: Verdict,
    pub commutant_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub division: Option<DivisionKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra_dim: Option<usize>,
    #[serde(skip)]
    pub subspace: Option<DenseMatrix>,
}

/// One round of the search on a module: commutant, seeds, eigen-splits and
/// the division/density certificate.
pub fn analyse(m: &Module, budget: usize) -> Result<Analysis> {
    let d = m.dim();
    let c = commutant(m, budget)?;
    let base = Analysis { verdict: Verdict::Inconclusive, commutant_dim: c.dim, division: None, algebra_dim: None, subspace: None };
    if c.dim == 1 {
        return Ok(Analysis { verdict: Verdict::Irreducible, ..base });
    }
    for k in 0..d.min(8) {
        let e: Vec<Scalar> = (0..d).map(|i| Scalar::int((i == k) as i64)).collect();
        let w = spin_up(m, &e);
        if w.len() < d {
            return Ok(Analysis { verdict: Verdict::Reducible, subspace: Some(DenseMatrix::from_columns(d, &w)), ..base });
        }
    }
    if let Some(w) = eigen_split(&c) {
        return Ok(Analysis { verdict: Verdict::Reducible, subspace: Some(w), ..base });
    }
    let division = division_certificate(&c);
    if division.is_some() && d <= DENSITY_LIMIT && (d * d) % c.dim == 0 {
        let want = d * d / c.dim;
        let got = algebra_dim_mod_p(m, want);
        if got == Some(want) {
            return Ok(Analysis { verdict: Verdict::IrreducibleOverReals, division, algebra_dim: got, ..base });
        }
        return Ok(Analysis { division, algebra_dim: got, ..base });
    }
    Ok(Analysis { division, ..base })
}

#[derive(Clone, Debug, Serialize)]
pub struct Piece {
    pub dim: usize,
    pub verdict: Verdict,
    pub commutant_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub division: Option<DivisionKind>,
    /// Columns spanning the piece in the coordinates of the module.
    #[serde(serialize_with = "ser_basis")]
    pub basis: DenseMatrix,
}

fn ser_basis<S: serde::Serializer>(b: &DenseMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    b.to_json().serialize(s)
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub dim: usize,
    pub commutant_dim: usize,
    pub verdict: Verdict,
    /// Whether every split came with an invariant orthogonal complement.
    pub complete: bool,
    pub pieces: Vec<Piece>,
}

fn orthogonal_complement(form: &DenseMatrix, w: &DenseMatrix) -> Option<DenseMatrix> {
    let gw = w.transpose().mul(form).mul(w);
    if gw.rank() != w.cols() {
        return None;
    }
    let k = w.transpose().mul(form).kernel_basis();
    Some(DenseMatrix::from_columns(form.rows(), &k))
}

fn decompose_into(m: &Module, ambient: &DenseMatrix, budget: usize, pieces: &mut Vec<Piece>) -> Result<bool> {
    let a = analyse(m, budget)?;
    let Some(w) = a.subspace.clone() else {
        pieces.push(Piece {
            dim: m.dim(),
            verdict: a.verdict,
            commutant_dim: a.commutant_dim,
            division: a.division,
            basis: ambient.clone(),
        });
        return Ok(true);
    };
    if !m.is_invariant(&w) {
        return Err(Error::Inconsistent("found subspace is not invariant".into()));
    }
    match orthogonal_complement(&m.form, &w) {
        Some(c) if m.is_invariant(&c) => {
            let ok1 = decompose_into(&m.restrict(&w)?, &ambient.mul(&w), budget, pieces)?;
            let ok2 = decompose_into(&m.restrict(&c)?, &ambient.mul(&c), budget, pieces)?;
            Ok(ok1 && ok2)
        }
        _ => {
            let sub = analyse(&m.restrict(&w)?, budget)?;
            pieces.push(Piece {
                dim: w.cols(),
                verdict: sub.verdict,
                commutant_dim: sub.commutant_dim,
                division: sub.division,
                basis: ambient.mul(&w),
            });
            Ok(false)
        }
    }
}

/// Recursive search; every reported piece is invariant by construction and
/// re-checked against the original generators.
pub fn invariant_subspace_search(m: &Module, budget: usize) -> Result<DecompositionReport> {
    let d = m.dim();
    check_budget(d, budget)?;
    let top = analyse(m, budget)?;
    let mut pieces = Vec::new();
    let complete = decompose_into(m, &DenseMatrix::identity(d), budget, &mut pieces)?;
    for p in &pieces {
        if !m.is_invariant(&p.basis) {
            return Err(Error::Inconsistent("reported piece is not invariant".into()));
        }
    }
    let verdict = if pieces.len() > 1 || top.verdict == Verdict::Reducible { Verdict::Reducible } else { top.verdict };
    Ok(DecompositionReport { dim: d, commutant_dim: top.commutant_dim, verdict, complete, pieces })
}

#[derive(Clone, Debug, Serialize)]
pub struct S52Report {
    pub dim: usize,
    pub psi_dim: usize,
    pub complement_dim: usize,
    /// `(Ψ|Ψ)`, which equals `dim h*`.
    pub psi_norm: String,
    pub tau_psi_is_half_psi: bool,
    pub intertwines_with_rho: bool,
    pub complement_invariant: bool,
    pub orthogonal: bool,
}

impl S52Report {
    pub fn certified(&self) -> bool {
        self.tau_psi_is_half_psi && self.intertwines_with_rho && self.complement_invariant && self.orthogonal
    }
}

/// `S_{5/2} = (Ψ⊗S) ⊕ (Ψ^⊥⊗S)`, certified on the V factor alone.
pub fn s52_decompose(r: &SpinRep) -> Result<S52Report> {
    if r.level() != Level::FiveHalves {
        return Err(Error::Unsupported(format!("s52 decomposition needs level 5/2, got {}", r.level())));
    }
    let v: &VModule = r.vmodule();
    let sym: &SymModule = v.sym().expect("level 5/2 has a Sym^2 factor");
    let psi = sym.psi_element()?;
    let g = sym.gram();
    let dv = sym.dim();
    let gpsi = g.transpose().mul_vec(&psi);
    let norm = crate::exactnum::forms::bilinear(g, &psi, &psi);
    let comp = DenseMatrix::from_rows(vec![gpsi.clone()])?.kernel_basis();
    let rho = SpinRep::build(r.gcm(), Level::Half, v.options(), r.spinor().clone())?;
    let half = Scalar::frac(1, 2);
    let mut tau_ok = true;
    let mut inter_ok = true;
    let mut comp_ok = true;
    for i in 0..r.rank() {
        let tau = v.tau_simple(i)?;
        let tp = tau.mul_vec(&psi);
        let hp: Vec<Scalar> = psi.iter().map(|x| x * &half).collect();
        tau_ok &= tp == hp;
        let coeff = &crate::exactnum::forms::bilinear(g, &psi, &tp) / &norm;
        let induced = KronOp::single(coeff, DenseMatrix::identity(1), r.spinor().gamma_class(1 << i));
        inter_ok &= induced.equals(rho.generator(i)?);
        for u in &comp {
            let tu = tau.mul_vec(u);
            comp_ok &= gpsi.iter().zip(&tu).fold(Scalar::zero(), |s, (a, b)| &s + &(a * b)).is_zero();
        }
    }
    let orthogonal = comp.iter().all(|u| crate::exactnum::forms::bilinear(g, &psi, u).is_zero()) && !norm.is_zero();
    let ds = r.spinor().dim();
    Ok(S52Report {
        dim: r.dim(),
        psi_dim: ds,
        complement_dim: (dv - 1) * ds,
        psi_norm: norm.to_string(),
        tau_psi_is_half_psi: tau_ok,
        intertwines_with_rho: inter_ok,
        complement_invariant: comp_ok && comp.len() == dv - 1,
        orthogonal,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FormSignature {
    pub signature: Signature,
    pub tensor_rule: Signature,
    pub agree: bool,
}

/// Signature of the contravariant form, computed on the full matrix and
/// compared with the product of the factor signatures.
pub fn form_signature(r: &SpinRep, budget: usize) -> Result<FormSignature> {
    check_budget(r.dim(), budget)?;
    let gv = r.vmodule().gram();
    let gs = r.spinor().gram().materialize();
    let full = signature(&gv.kron(&gs))?;
    let rule = signature(&gv)?.tensor(signature(&gs)?);
    Ok(FormSignature { signature: full, tensor_rule: rule, agree: full == rule })
}

/// `Sym²(h*)` as a W(A)-module through the level-5/2 τ operators: every
/// submodule found must come with an invariant complement.
pub fn complete_reducibility_sym2(g: &Gcm, budget: usize) -> Result<DecompositionReport> {
    let v = VModule::new(g, Level::FiveHalves, Default::default())?;
    let gens = (0..g.rank()).map(|i| v.tau_simple(i)).collect::<Result<Vec<_>>>()?;
    invariant_subspace_search(&Module::new(gens, v.gram())?, budget)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_gcm;

    fn rep(name: &str, level: Level) -> SpinRep {
        let g = parse_gcm(name).unwrap();
        SpinRep::build_sigma(&g, level, &SpinRep::build_rho(&g).unwrap()).unwrap()
    }

    #[test]
    fn zero_rep_commutant() {
        let m = Module::new(vec![DenseMatrix::zeros(3, 3)], DenseMatrix::identity(3)).unwrap();
        assert_eq!(commutant(&m, 10).unwrap().dim, 9);
        assert!(matches!(commutant(&m, 2), Err(Error::Budget { .. })));
    }

    #[test]
    fn roots_of_polynomials() {
        // (x - 1/2)(x + 3) x = x^3 + 5/2 x^2 - 3/2 x
        let p = vec![Q::zero(), crate::exactnum::q(-3, 2), crate::exactnum::q(5, 2), Q::one()];
        let mut r = rational_roots(&p);
        r.sort();
        assert_eq!(r, vec![crate::exactnum::qi(-3), Q::zero(), crate::exactnum::q(1, 2)]);
    }

    #[test]
    fn restricted_rho_is_irreducible() {
        for name in ["A1", "A2", "A3", "K4"] {
            let r = SpinRep::build_rho(&parse_gcm(name).unwrap()).unwrap().restrict_irreducible().unwrap();
            let a = analyse(&Module::from_rep(&r), DEFAULT_BUDGET).unwrap();
            assert!(matches!(a.verdict, Verdict::Irreducible | Verdict::IrreducibleOverReals), "{name} {a:?}");
        }
    }

    #[test]
    fn direct_sum_is_reducible() {
        let r = SpinRep::build_rho(&parse_gcm("A2").unwrap()).unwrap().restrict_irreducible().unwrap();
        let m = Module::from_rep(&r);
        let s = m.direct_sum(&m).unwrap();
        let rep = invariant_subspace_search(&s, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.verdict, Verdict::Reducible);
        assert!(rep.pieces.len() >= 2);
        assert_eq!(rep.pieces.iter().map(|p| p.dim).sum::<usize>(), s.dim());
    }

    #[test]
    fn k4_three_halves_restricted() {
        let r = rep("K4", Level::ThreeHalves).restrict_irreducible().unwrap();
        let a = analyse(&Module::from_rep(&r), DEFAULT_BUDGET).unwrap();
        assert!(matches!(a.verdict, Verdict::Irreducible | Verdict::IrreducibleOverReals), "{a:?}");
        let sig = form_signature(&r, DEFAULT_BUDGET).unwrap();
        let ds = r.spinor().dim();
        assert_eq!((sig.signature.pos, sig.signature.neg), (3 * ds, ds));
        assert!(sig.agree);
    }

    #[test]
    fn s52_splits() {
        for name in ["A2", "A3", "K4"] {
            let r = rep(name, Level::FiveHalves);
            let s = s52_decompose(&r).unwrap();
            assert!(s.certified(), "{name} {s:?}");
        }
        assert!(s52_decompose(&rep("A2", Level::ThreeHalves)).is_err());
    }

    #[test]
    fn a2_five_halves_search_finds_psi_piece() {
        let r = rep("A2", Level::FiveHalves).restrict_irreducible().unwrap();
        let m = Module::from_rep(&r);
        let rep = invariant_subspace_search(&m, DEFAULT_BUDGET).unwrap();
        assert_eq!(rep.verdict, Verdict::Reducible);
        assert!(rep.pieces.iter().any(|p| p.dim == r.spinor().dim()));
    }

    #[test]
    fn sym2_completely_reducible_k4() {
        let rep = complete_reducibility_sym2(&parse_gcm("K4").unwrap(), DEFAULT_BUDGET).unwrap();
        assert!(rep.complete);
        assert_eq!(rep.pieces.iter().map(|p| p.dim).sum::<usize>(), 10);
    }
}
