//! The spin representations `ρ = S_{1/2}` and `σ = S_{k+1/2}` of k(A), with
//! their verification suites.
//!
//! Every generator is a single Kronecker term `τ(α_i) ⊗ Γ(α_i)`. Level 1/2 is
//! the special case with a one-dimensional V factor and `τ = [½]`, which keeps
//! transport and the closed-form exponentials uniform across levels.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::cocycle::CocycleTable;
use crate::diagram::Gcm;
use crate::error::{Error, Result};
use crate::exactnum::{DenseMatrix, KronOp, RightFactor, Scalar};
use crate::report::Counterexample;
use crate::rootsys::{inner, real_roots, reflect, word_to_simple, RootVec, WeylWord};
use crate::weylmod::{Level, VModule, VOptions};

/// Minimal left ideal of the twisted group algebra, spanned by
/// `Γ(β)v₀` over coset representatives β.
///
/// `v₀` is the joint +1 eigenvector through `e_0` of a maximal family of
/// commuting right multiplications `R_c` with `R_c² = +Id`. The commutant of
/// the left action on the result is spanned by right multiplications that
/// square to −Id, so it is a real division algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Restriction {
    chosen: Vec<u32>,
    basis: Vec<Vec<i64>>,
    coset: Vec<usize>,
}

impl Restriction {
    pub fn new(t: &CocycleTable) -> Self {
        let full = t.spinor_dim() as u32;
        let mut chosen: Vec<u32> = Vec::new();
        let mut span: HashSet<u32> = HashSet::from([0]);
        for c in 1..full {
            if t.eps_class(c, c) != 1 || span.contains(&c) {
                continue;
            }
            if chosen.iter().any(|&d| t.eps_class(c, d) * t.eps_class(d, c) != 1) {
                continue;
            }
            chosen.push(c);
            let more: Vec<u32> = span.iter().map(|&x| x ^ c).collect();
            span.extend(more);
        }
        let mut v0 = vec![0i64; full as usize];
        v0[0] = 1;
        for &c in &chosen {
            let r = t.right_mult(c);
            let mut w = v0.clone();
            for (b, &x) in v0.iter().enumerate() {
                if x != 0 {
                    w[b ^ c as usize] += r.sign(b as u32) as i64 * x;
                }
            }
            v0 = w;
        }
        let mut coset = vec![usize::MAX; full as usize];
        let mut basis = Vec::new();
        for x in 0..full {
            if coset[x as usize] != usize::MAX {
                continue;
            }
            let g = t.gamma_class(x);
            let mut b = vec![0i64; full as usize];
            for (y, &v) in v0.iter().enumerate() {
                if v != 0 {
                    b[y ^ x as usize] = g.sign(y as u32) as i64 * v;
                }
            }
            for (y, &v) in b.iter().enumerate() {
                if v != 0 {
                    coset[y] = basis.len();
                }
            }
            basis.push(b);
        }
        Restriction { chosen, basis, coset }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Classes of the right multiplications fixed to +1.
    pub fn fixed_classes(&self) -> &[u32] {
        &self.chosen
    }

    /// Basis vectors as columns of a `2ⁿ × dim` matrix.
    pub fn basis_matrix(&self) -> DenseMatrix {
        let full = self.coset.len();
        DenseMatrix::from_fn(full, self.dim(), |r, c| Scalar::int(self.basis[c][r]))
    }

    /// All basis vectors have the same squared norm and disjoint supports.
    pub fn norm(&self) -> i64 {
        self.basis[0].iter().map(|x| x * x).sum()
    }

    pub fn gamma_matrix(&self, t: &CocycleTable, class: u32) -> DenseMatrix {
        let g = t.gamma_class(class);
        let mut m = DenseMatrix::zeros(self.dim(), self.dim());
        for (j, b) in self.basis.iter().enumerate() {
            let x = b.iter().position(|&v| v != 0).expect("nonzero basis vector");
            let y = x ^ class as usize;
            let img = g.sign(x as u32) as i64 * b[x];
            let k = self.coset[y];
            m[(k, j)] = Scalar::int(img / self.basis[k][y]);
        }
        m
    }
}

/// The S factor: the full 2ⁿ-dimensional Γ-module or its restriction.
#[derive(Clone, Debug)]
pub struct SpinorSpace {
    table: CocycleTable,
    restriction: Option<Restriction>,
}

impl SpinorSpace {
    pub fn full(g: &Gcm) -> Result<Self> {
        Ok(SpinorSpace { table: CocycleTable::new(g)?, restriction: None })
    }

    pub fn restricted(g: &Gcm) -> Result<Self> {
        let table = CocycleTable::new(g)?;
        let restriction = Some(Restriction::new(&table));
        Ok(SpinorSpace { table, restriction })
    }

    pub fn table(&self) -> &CocycleTable {
        &self.table
    }

    pub fn restriction(&self) -> Option<&Restriction> {
        self.restriction.as_ref()
    }

    pub fn is_restricted(&self) -> bool {
        self.restriction.is_some()
    }

    pub fn dim(&self) -> usize {
        self.restriction.as_ref().map_or(self.table.spinor_dim(), Restriction::dim)
    }

    pub fn gamma_class(&self, class: u32) -> RightFactor {
        match &self.restriction {
            None => RightFactor::Gamma(self.table.gamma_class(class)),
            Some(r) => RightFactor::Dense(r.gamma_matrix(&self.table, class)),
        }
    }

    pub fn gamma(&self, a: &RootVec) -> RightFactor {
        self.gamma_class(a.class())
    }

    pub fn identity(&self) -> RightFactor {
        self.gamma_class(0)
    }

    /// Invariant inner product on S (standard on the full module).
    pub fn gram(&self) -> RightFactor {
        match &self.restriction {
            None => self.identity(),
            Some(r) => RightFactor::Dense(DenseMatrix::scalar(r.dim(), &Scalar::int(r.norm()))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpinRep {
    gcm: Gcm,
    v: VModule,
    s: SpinorSpace,
    gens: Vec<KronOp>,
    injected: bool,
}

impl SpinRep {
    /// `ρ(X_i) = ½Γ(α_i)` on the full 2ⁿ-dimensional module.
    pub fn build_rho(g: &Gcm) -> Result<Self> {
        Self::build(g, Level::Half, VOptions::default(), SpinorSpace::full(g)?)
    }

    pub fn build(g: &Gcm, level: Level, opts: VOptions, s: SpinorSpace) -> Result<Self> {
        let v = VModule::new(g, level, opts)?;
        let gens = (0..g.rank())
            .map(|i| Ok(KronOp::single(Scalar::one(), v.tau_simple(i)?, s.gamma_class(1 << i))))
            .collect::<Result<Vec<_>>>()?;
        Ok(SpinRep { gcm: g.clone(), v, s, gens, injected: false })
    }

    /// `σ(X_i) = τ(α_i) ⊗ 2ρ(X_i)` over the spinor module of `rho`.
    pub fn build_sigma(g: &Gcm, level: Level, rho: &SpinRep) -> Result<Self> {
        Self::build_sigma_with(g, level, rho, VOptions::default())
    }

    pub fn build_sigma_with(g: &Gcm, level: Level, rho: &SpinRep, opts: VOptions) -> Result<Self> {
        if rho.level() != Level::Half {
            return Err(Error::Unsupported("build_sigma expects a level-1/2 representation".into()));
        }
        Self::build(g, level, opts, rho.s.clone())
    }

    /// The same representation over the irreducible S_{1/2}.
    pub fn restrict_irreducible(&self) -> Result<Self> {
        if self.s.is_restricted() {
            return Ok(self.clone());
        }
        Self::build(&self.gcm, self.level(), self.v.options(), SpinorSpace::restricted(&self.gcm)?)
    }

    pub fn gcm(&self) -> &Gcm {
        &self.gcm
    }

    pub fn rank(&self) -> usize {
        self.gcm.rank()
    }

    pub fn level(&self) -> Level {
        self.v.level()
    }

    pub fn vmodule(&self) -> &VModule {
        &self.v
    }

    pub fn spinor(&self) -> &SpinorSpace {
        &self.s
    }

    pub fn dim(&self) -> usize {
        self.v.dim() * self.s.dim()
    }

    pub fn field_d(&self) -> Option<u64> {
        self.v.field_d()
    }

    pub fn is_experimental(&self) -> bool {
        self.v.is_experimental()
    }

    pub fn is_fault_injected(&self) -> bool {
        self.injected
    }

    pub fn generator(&self, i: usize) -> Result<&KronOp> {
        self.gens.get(i).ok_or(Error::IndexOutOfRange { index: i + 1, n: self.rank() })
    }

    pub fn generators(&self) -> &[KronOp] {
        &self.gens
    }

    pub fn dense_generators(&self) -> Vec<DenseMatrix> {
        self.gens.par_iter().map(KronOp::materialize).collect()
    }

    /// `τ(a) ⊗ Γ(a)`, the normalized image attached to a real root.
    pub fn root_operator(&self, a: &RootVec) -> Result<KronOp> {
        Ok(KronOp::single(Scalar::one(), self.v.tau(a)?, self.s.gamma(a)))
    }

    /// `Σ_j(±π/2) = (1/√2)·η(s_j) ⊗ (Id ± Γ(α_j))`.
    pub fn r_letter(&self, j: usize, inverse: bool) -> KronOp {
        let c = Scalar::sqrt2().mul_q(&crate::exactnum::q(1, 2));
        let eta = self.v.eta_simple(j).clone();
        let id = KronOp::single(c.clone(), eta.clone(), self.s.identity());
        let gamma = KronOp::single(if inverse { -&c } else { c }, eta, self.s.gamma_class(1 << j));
        id.add(&gamma)
    }

    /// Contravariant form `(·|·)_V ⊗ (·|·)_S`.
    pub fn form(&self) -> KronOp {
        KronOp::single(Scalar::one(), self.v.gram(), self.s.gram())
    }

    /// Returns a copy with one sign of generator `i` flipped.
    pub fn inject_sign_flip(&self, i: usize, basis_index: usize) -> Result<Self> {
        let mut out = self.clone();
        let g = self.generator(i)?;
        out.gens[i] = g.with_flipped_right_sign(basis_index % self.s.dim());
        out.injected = true;
        Ok(out)
    }

    pub fn with_generators(&self, gens: Vec<KronOp>) -> Result<Self> {
        if gens.len() != self.rank() || gens.iter().any(|x| x.dim() != self.dim()) {
            return Err(Error::Dimension("replacement generators".into()));
        }
        let mut out = self.clone();
        out.gens = gens;
        out.injected = true;
        Ok(out)
    }

    pub fn summary(&self) -> RepSummary {
        RepSummary {
            level: self.level(),
            rank: self.rank(),
            dim: self.dim(),
            dim_v: self.v.dim(),
            dim_s: self.s.dim(),
            restricted: self.s.is_restricted(),
            field_d: self.field_d(),
            experimental: self.is_experimental(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RepSummary {
    pub level: Level,
    pub rank: usize,
    pub dim: usize,
    pub dim_v: usize,
    pub dim_s: usize,
    pub restricted: bool,
    pub field_d: Option<u64>,
    pub experimental: bool,
}

fn kj(k: &KronOp) -> serde_json::Value {
    k.to_json()
}

fn fail(identity: &str, ops: Vec<String>, l: &KronOp, r: &KronOp) -> Counterexample {
    Counterexample::new(identity, ops, kj(l), kj(r))
}

/// `ρ(X_i)² = −¼Id`, anticommutation on edges, commutation off edges.
pub fn verify_spin_axioms(r: &SpinRep) -> Vec<Counterexample> {
    let n = r.rank();
    let quarter = Scalar::frac(-1, 4);
    let mut out: Vec<Counterexample> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let g = &r.gens[i];
            let sq = g.mul(g);
            let id = KronOp::identity_like(g.left_dim(), &r.s.identity()).scale(&quarter);
            (!sq.equals(&id)).then(|| fail("X_i^2 = -1/4 Id", vec![(i + 1).to_string()], &sq, &id))
        })
        .collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let more: Vec<Counterexample> = pairs.par_iter().flat_map_iter(|&(i, j)| {
        let (a, b) = (&r.gens[i], &r.gens[j]);
        let ops = vec![(i + 1).to_string(), (j + 1).to_string()];
        let zero = KronOp::zero(a.left_dim(), a.right_dim());
        if r.gcm.is_edge(i, j) {
            let ac = a.anticommutator(b);
            (!ac.is_zero()).then(|| fail("{X_i, X_j} = 0 on edges", ops, &ac, &zero))
        } else {
            let c = a.commutator(b);
            (!c.is_zero()).then(|| fail("[X_i, X_j] = 0 off edges", ops, &c, &zero))
        }
    }).collect();
    out.extend(more);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BermanMode {
    Dense,
    Factored,
    Both,
}

#[derive(Clone, Debug, Serialize)]
pub struct BermanReport {
    pub mode: BermanMode,
    pub relations_checked: usize,
    pub failures: Vec<Counterexample>,
}

pub const DEFAULT_DENSE_THRESHOLD: usize = 10_000;

fn berman_pairs(g: &Gcm) -> Vec<(usize, usize)> {
    let n = g.rank();
    (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect()
}

/// Simply-laced Berman relations: `[X_i,[X_i,X_j]] = −X_j` on edges and
/// `[X_i,X_j] = 0` otherwise. Below `dense_threshold` the dense computation
/// runs as well and must agree with the factored one.
pub fn verify_berman(r: &SpinRep, dense_threshold: usize) -> BermanReport {
    let pairs = berman_pairs(&r.gcm);
    let factored: Vec<Counterexample> = pairs
        .par_iter()
        .flat_map_iter(|&(i, j)| {
            let (a, b) = (&r.gens[i], &r.gens[j]);
            let ops = vec![(i + 1).to_string(), (j + 1).to_string()];
            if r.gcm.is_edge(i, j) {
                let lhs = a.commutator(&a.commutator(b));
                let rhs = b.scale(&Scalar::int(-1));
                (!lhs.equals(&rhs)).then(|| fail("[X_i,[X_i,X_j]] = -X_j", ops, &lhs, &rhs))
            } else if i < j {
                let lhs = a.commutator(b);
                (!lhs.is_zero()).then(|| fail("[X_i,X_j] = 0", ops, &lhs, &KronOp::zero(a.left_dim(), a.right_dim())))
            } else {
                None
            }
        })
        .collect();
    let checked = pairs.iter().filter(|&&(i, j)| r.gcm.is_edge(i, j) || i < j).count();
    if r.dim() >= dense_threshold {
        return BermanReport { mode: BermanMode::Factored, relations_checked: checked, failures: factored };
    }
    let dense = r.dense_generators();
    let dense_failed: Vec<(usize, usize)> = pairs
        .par_iter()
        .filter(|&&(i, j)| {
            let (a, b) = (&dense[i], &dense[j]);
            if r.gcm.is_edge(i, j) {
                a.commutator(&a.commutator(b)) != b.neg()
            } else {
                i < j && !a.commutator(b).is_zero()
            }
        })
        .copied()
        .collect();
    let mut failures = factored;
    let factored_failed: Vec<(usize, usize)> = failures
        .iter()
        .map(|c| (c.operands[0].parse::<usize>().unwrap() - 1, c.operands[1].parse::<usize>().unwrap() - 1))
        .collect();
    if dense_failed != factored_failed {
        failures.push(Counterexample::new(
            "dense and factored verification agree",
            vec![],
            serde_json::json!(dense_failed),
            serde_json::json!(factored_failed),
        ));
    }
    BermanReport { mode: BermanMode::Both, relations_checked: checked, failures }
}

/// `[X_{w1},[X_{w2},[…,X_{wk}]…]]` with 0-based letters.
pub fn nested_commutator(r: &SpinRep, word: &[usize]) -> Result<KronOp> {
    let (&last, rest) = word.split_last().ok_or_else(|| Error::Validation("empty commutator word".into()))?;
    let mut acc = r.generator(last)?.clone();
    for &i in rest.iter().rev() {
        acc = r.generator(i)?.commutator(&acc);
    }
    Ok(acc)
}

#[derive(Clone, Debug)]
pub struct Transport {
    pub root: RootVec,
    pub word: WeylWord,
    pub index: usize,
    pub operator: KronOp,
    /// Product of cocycle signs along the descent word.
    pub sign: i8,
    /// Whether `operator = sign·τ(a)⊗Γ(a)` holds exactly.
    pub matches: bool,
}

/// `c = Π ε(α_{j}, β)` over the steps `β ↦ s_j β` with odd `(β|α_j)`,
/// applied from the innermost letter outwards starting at `α_i`.
pub fn transport_sign(g: &Gcm, t: &CocycleTable, word: &WeylWord, i: usize) -> Result<i8> {
    let mut beta = RootVec::simple(g.rank(), i);
    let mut c = 1i8;
    for &j in word.letters().iter().rev() {
        let aj = RootVec::simple(g.rank(), j);
        if inner(g, &beta, &aj).rem_euclid(2) == 1 {
            c *= t.eps(&aj, &beta);
        }
        beta = reflect(g, j, &beta)?;
    }
    Ok(c)
}

/// Conjugates `σ(X_i)` along the descent word of `a` by the exact
/// r-letters and compares with the predicted `c·τ(a)⊗Γ(a)`.
pub fn transport(r: &SpinRep, a: &RootVec) -> Result<Transport> {
    let (word, i) = word_to_simple(&r.gcm, a)?;
    let mut op = r.generator(i)?.clone();
    for &j in word.letters().iter().rev() {
        op = r.r_letter(j, false).mul(&op).mul(&r.r_letter(j, true)).simplified();
    }
    let sign = transport_sign(&r.gcm, r.s.table(), &word, i)?;
    let expected = r.root_operator(a)?.scale(&Scalar::int(sign as i64));
    let matches = op.equals(&expected);
    Ok(Transport { root: a.clone(), word, index: i, operator: op, sign, matches })
}

/// Transport of every positive real root up to the height bound.
pub fn transport_all(r: &SpinRep, max_height: i64) -> Result<Vec<Transport>> {
    real_roots(&r.gcm, max_height).par_iter().map(|a| transport(r, a)).collect()
}

fn require_split_level(r: &SpinRep) -> Result<()> {
    match r.level() {
        Level::ThreeHalves | Level::FiveHalves => Ok(()),
        l => Err(Error::Unsupported(format!("split identities need level 3/2 or 5/2, got {l}"))),
    }
}

/// Recovers `Id⊗ρ(X_i)`, `η(s_i)⊗Id` and `Id⊗Id` as polynomials in `σ(X_i)`,
/// and checks `σ(X_i)² = (η(s_i) − 5/4)⊗Id`.
pub fn split_identities_check(r: &SpinRep) -> Result<Vec<Counterexample>> {
    require_split_level(r)?;
    let f = Scalar::frac;
    let out = (0..r.rank())
        .into_par_iter()
        .flat_map_iter(|i| {
            let s = &r.gens[i];
            let (dv, id_s, gam) = (s.left_dim(), r.s.identity(), r.s.gamma_class(1 << i));
            let eta = r.v.eta_simple(i).clone();
            let s2 = s.mul(s);
            let s3 = s2.mul(s);
            let s4 = s2.mul(&s2);
            let idv = DenseMatrix::identity(dv);
            let cases = [
                (
                    "Id(x)rho(X_i) = 2/3 s^3 + 7/6 s",
                    s3.scale(&f(2, 3)).add(&s.scale(&f(7, 6))),
                    KronOp::single(f(1, 2), idv.clone(), gam),
                ),
                (
                    "eta(s_i)(x)Id = -20/9 s^4 - 41/9 s^2",
                    s4.scale(&f(-20, 9)).add(&s2.scale(&f(-41, 9))),
                    KronOp::single(Scalar::one(), eta.clone(), id_s.clone()),
                ),
                (
                    "Id(x)Id = -16/9 s^4 - 40/9 s^2",
                    s4.scale(&f(-16, 9)).add(&s2.scale(&f(-40, 9))),
                    KronOp::single(Scalar::one(), idv.clone(), id_s.clone()),
                ),
                (
                    "s^2 = (eta(s_i) - 5/4)(x)Id",
                    s2.clone(),
                    KronOp::single(Scalar::one(), eta.sub(&DenseMatrix::scalar(dv, &f(5, 4))), id_s),
                ),
            ];
            cases
                .into_iter()
                .filter(|(_, l, rh)| !l.equals(rh))
                .map(|(name, l, rh)| fail(name, vec![(i + 1).to_string()], &l, &rh))
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct MuReport {
    pub generator: usize,
    /// `μ⁴ = −(5/2)μ² − 9/16`.
    pub quartic_holds: bool,
    /// `μ⁵ = −5μ³ − 4μ`, the minimal polynomial of μ.
    pub quintic_holds: bool,
    pub span_dim: usize,
    pub sigma_outside_span: bool,
}

/// `μ(X_i) = σ(X_i)⊗Id + Id⊗ρ(X_i)` on `S_{k+1/2} ⊗ S_{1/2}`, dense.
pub fn mu_operator(sigma: &SpinRep, rho: &SpinRep, i: usize) -> Result<DenseMatrix> {
    let s = sigma.generator(i)?.materialize();
    let p = rho.generator(i)?.materialize();
    let (ds, dp) = (s.rows(), p.rows());
    Ok(s.kron(&DenseMatrix::identity(dp)).add(&DenseMatrix::identity(ds).kron(&p)))
}

pub fn mu_quartic_check(sigma: &SpinRep, rho: &SpinRep) -> Result<Vec<MuReport>> {
    require_split_level(sigma)?;
    if rho.level() != Level::Half {
        return Err(Error::Unsupported("second factor must be level 1/2".into()));
    }
    (0..sigma.rank())
        .map(|i| {
            let mu = mu_operator(sigma, rho, i)?;
            let d = mu.rows();
            let id = DenseMatrix::identity(d);
            let m2 = mu.mul(&mu);
            let m3 = m2.mul(&mu);
            let m4 = m2.mul(&m2);
            let m5 = m4.mul(&mu);
            let quartic = m4 == m2.scale(&Scalar::frac(-5, 2)).sub(&DenseMatrix::scalar(d, &Scalar::frac(9, 16)));
            let quintic = m5 == m3.scale(&Scalar::int(-5)).sub(&mu.scale(&Scalar::int(4)));
            let flat = |m: &DenseMatrix| m.entries().to_vec();
            let powers = [flat(&id), flat(&mu), flat(&m2), flat(&m3), flat(&m4)];
            let span = DenseMatrix::from_columns(d * d, &powers);
            let span_dim = span.rank();
            let sigma_id = sigma.generator(i)?.materialize().kron(&DenseMatrix::identity(rho.dim()));
            let mut with = powers.to_vec();
            with.push(flat(&sigma_id));
            let outside = DenseMatrix::from_columns(d * d, &with).rank() > span_dim;
            Ok(MuReport { generator: i + 1, quartic_holds: quartic, quintic_holds: quintic, span_dim, sigma_outside_span: outside })
        })
        .collect()
}

/// `⟨X u, v⟩ + ⟨u, X v⟩ = 0` for the contravariant form.
pub fn skewness_check(r: &SpinRep) -> Vec<Counterexample> {
    let form = r.form();
    r.gens
        .par_iter()
        .enumerate()
        .filter_map(|(i, x)| {
            let lhs = x.transpose().mul(&form).add(&form.mul(x));
            (!lhs.is_zero()).then(|| {
                fail("X^T B + B X = 0", vec![(i + 1).to_string()], &lhs, &KronOp::zero(x.left_dim(), x.right_dim()))
            })
        })
        .collect()
}

pub fn traceless_check(r: &SpinRep) -> Vec<Counterexample> {
    r.gens
        .iter()
        .enumerate()
        .filter_map(|(i, x)| {
            let t = x.trace();
            (!t.is_zero()).then(|| {
                Counterexample::new("tr X_i = 0", vec![(i + 1).to_string()], serde_json::json!(t.to_json()), serde_json::json!(0))
            })
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct KernelWitness {
    pub alpha: RootVec,
    pub beta: RootVec,
    /// `s` with `s·ρ(x_α) = ρ(x_β)`.
    pub sign: i8,
    pub rho_agree: bool,
    /// `σ(x_α) − s·σ(x_β)`, nonzero for a valid witness.
    pub sigma_difference: KronOp,
}

impl KernelWitness {
    pub fn is_valid(&self) -> bool {
        self.rho_agree && !self.sigma_difference.is_zero()
    }
}

/// Builds the witness for an explicit pair with `α − β ∈ 2Q`.
pub fn kernel_witness_pair(sigma: &SpinRep, alpha: &RootVec, beta: &RootVec) -> Result<KernelWitness> {
    if !alpha.sub(beta).in_2q() || alpha == beta {
        return Err(Error::Validation(format!("{alpha} - {beta} is not a nonzero element of 2Q")));
    }
    let g = sigma.gcm();
    let rho = SpinRep::build(g, Level::Half, VOptions::default(), sigma.spinor().clone())?;
    let (ra, rb) = (transport(&rho, alpha)?.operator, transport(&rho, beta)?.operator);
    let sign = if ra.equals(&rb) {
        1
    } else if ra.scale(&Scalar::int(-1)).equals(&rb) {
        -1
    } else {
        return Ok(KernelWitness {
            alpha: alpha.clone(),
            beta: beta.clone(),
            sign: 0,
            rho_agree: false,
            sigma_difference: KronOp::zero(sigma.vmodule().dim(), sigma.spinor().dim()),
        });
    };
    let (sa, sb) = (transport(sigma, alpha)?.operator, transport(sigma, beta)?.operator);
    let diff = sa.sub(&sb.scale(&Scalar::int(sign as i64)));
    Ok(KernelWitness { alpha: alpha.clone(), beta: beta.clone(), sign, rho_agree: true, sigma_difference: diff })
}

/// Scans positive real roots up to the height bound for the first valid pair.
pub fn kernel_witness(sigma: &SpinRep, max_height: i64) -> Result<KernelWitness> {
    let roots = real_roots(sigma.gcm(), max_height);
    for a in &roots {
        for b in &roots {
            if a.height() > b.height() && a.sub(b).in_2q() {
                let w = kernel_witness_pair(sigma, a, b)?;
                if w.is_valid() {
                    return Ok(w);
                }
            }
        }
    }
    Err(Error::NotFound(format!("no kernel witness among real roots of height <= {max_height}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_gcm;

    fn gcm(s: &str) -> Gcm {
        parse_gcm(s).unwrap()
    }

    #[test]
    fn rho_axioms() {
        for name in ["A2", "A3", "D4", "cycle3", "K4"] {
            let r = SpinRep::build_rho(&gcm(name)).unwrap();
            assert!(verify_spin_axioms(&r).is_empty(), "{name}");
        }
        let two_a1 = Gcm::from_edges(2, &[]).unwrap();
        assert!(verify_spin_axioms(&SpinRep::build_rho(&two_a1).unwrap()).is_empty());
    }

    #[test]
    fn dimensions() {
        let g = gcm("K4");
        let rho = SpinRep::build_rho(&g).unwrap();
        assert_eq!(SpinRep::build_sigma(&g, Level::ThreeHalves, &rho).unwrap().dim(), 64);
        assert_eq!(SpinRep::build_sigma(&g, Level::FiveHalves, &rho).unwrap().dim(), 160);
        let s = SpinRep::build_sigma(&g, Level::SevenHalves, &rho).unwrap();
        assert_eq!((s.dim(), s.field_d()), (320, Some(72)));
    }

    #[test]
    fn restriction_is_invariant_and_orthogonal() {
        for name in ["A1", "A2", "A3", "K4", "cycle3"] {
            let g = gcm(name);
            let t = CocycleTable::new(&g).unwrap();
            let r = Restriction::new(&t);
            let b = r.basis_matrix();
            assert_eq!(b.rank(), r.dim());
            assert!(b.transpose().mul(&b).is_scalar_multiple_of_identity().is_some());
            for i in 0..g.rank() {
                let gi = t.gamma_simple(i).materialize();
                assert_eq!(gi.mul(&b), b.mul(&r.gamma_matrix(&t, 1 << i)), "{name}");
            }
        }
        let a1 = gcm("A1");
        assert_eq!(Restriction::new(&CocycleTable::new(&a1).unwrap()).dim(), 2);
        let rho = SpinRep::build_rho(&gcm("A2")).unwrap().restrict_irreducible().unwrap();
        assert!(rho.dim() <= 4);
        assert!(verify_spin_axioms(&rho).is_empty());
    }

    #[test]
    fn berman_small() {
        let g = gcm("A3");
        let rho = SpinRep::build_rho(&g).unwrap();
        for level in [Level::Half, Level::ThreeHalves, Level::FiveHalves, Level::SevenHalves] {
            let s = SpinRep::build_sigma(&g, level, &rho).unwrap();
            let rep = verify_berman(&s, DEFAULT_DENSE_THRESHOLD);
            assert_eq!(rep.mode, BermanMode::Both);
            assert!(rep.failures.is_empty(), "{level}");
        }
        let bad = SpinRep::build_sigma(&g, Level::ThreeHalves, &rho).unwrap().inject_sign_flip(0, 3).unwrap();
        assert!(!verify_berman(&bad, DEFAULT_DENSE_THRESHOLD).failures.is_empty());
        assert!(!verify_berman(&bad, 0).failures.is_empty());
    }

    #[test]
    fn nested_commutators() {
        let a2 = gcm("A2");
        let rho = SpinRep::build_rho(&a2).unwrap();
        let c = nested_commutator(&rho, &[0, 1]).unwrap();
        let t = rho.spinor().table();
        let g12 = KronOp::single(Scalar::one(), DenseMatrix::identity(1), RightFactor::Gamma(t.gamma_class(0b11)));
        assert!(c.scale(&Scalar::int(2)).equals(&g12) || c.scale(&Scalar::int(-2)).equals(&g12));
        let c3 = gcm("cycle3");
        let rho = SpinRep::build_rho(&c3).unwrap();
        assert!(nested_commutator(&rho, &[0, 1, 2]).unwrap().is_zero());
        assert!(nested_commutator(&rho, &[]).is_err());
        let s = SpinRep::build_sigma(&a2, Level::ThreeHalves, &SpinRep::build_rho(&a2).unwrap()).unwrap();
        let c = nested_commutator(&s, &[0, 1]).unwrap();
        let rho = SpinRep::build_rho(&a2).unwrap();
        let rc = nested_commutator(&rho, &[0, 1]).unwrap();
        let tau = s.vmodule().tau(&"1,1".parse().unwrap()).unwrap();
        let want = KronOp::single(Scalar::int(2), tau, rc.terms()[0].right.clone()).scale(&rc.terms()[0].left[(0, 0)]);
        assert!(c.equals(&want));
    }

    #[test]
    fn transport_a2() {
        let a2 = gcm("A2");
        let s = SpinRep::build_sigma(&a2, Level::ThreeHalves, &SpinRep::build_rho(&a2).unwrap()).unwrap();
        let t = transport(&s, &"1,1".parse().unwrap()).unwrap();
        assert_eq!(t.sign, -1);
        assert!(t.matches);
        let t = transport(&s, &RootVec::simple(2, 0)).unwrap();
        assert_eq!((t.sign, t.matches, t.word.len()), (1, true, 0));
    }

    #[test]
    fn transport_all_levels_k4() {
        let g = gcm("K4");
        let rho = SpinRep::build_rho(&g).unwrap();
        for level in Level::ALL {
            let s = SpinRep::build_sigma(&g, level, &rho).unwrap();
            for t in transport_all(&s, 4).unwrap() {
                assert!(t.matches, "{level} {}", t.root);
            }
        }
    }

    #[test]
    fn split_identities() {
        for name in ["A2", "K4"] {
            let g = gcm(name);
            let rho = SpinRep::build_rho(&g).unwrap();
            for level in [Level::ThreeHalves, Level::FiveHalves] {
                let s = SpinRep::build_sigma(&g, level, &rho).unwrap();
                assert!(split_identities_check(&s).unwrap().is_empty());
            }
        }
    }

    #[test]
    fn mu_identities_a2() {
        let g = gcm("A2");
        let rho = SpinRep::build_rho(&g).unwrap();
        let s = SpinRep::build_sigma(&g, Level::ThreeHalves, &rho).unwrap();
        for m in mu_quartic_check(&s, &rho).unwrap() {
            assert!(!m.quartic_holds);
            assert!(m.quintic_holds);
            assert_eq!(m.span_dim, 5);
        }
    }

    #[test]
    fn skew_and_traceless() {
        let g = gcm("K4");
        let rho = SpinRep::build_rho(&g).unwrap();
        for level in Level::ALL {
            let s = SpinRep::build_sigma(&g, level, &rho).unwrap();
            assert!(skewness_check(&s).is_empty(), "{level}");
            assert!(traceless_check(&s).is_empty());
            let r = s.restrict_irreducible().unwrap();
            assert!(skewness_check(&r).is_empty());
        }
    }

    #[test]
    fn witness_cycle3() {
        let g = gcm("cycle3");
        let s = SpinRep::build_sigma(&g, Level::ThreeHalves, &SpinRep::build_rho(&g).unwrap()).unwrap();
        let w = kernel_witness_pair(&s, &"3,2,2".parse().unwrap(), &RootVec::simple(3, 0)).unwrap();
        assert!(w.is_valid());
        assert!(kernel_witness(&s, 7).unwrap().is_valid());
    }
}
