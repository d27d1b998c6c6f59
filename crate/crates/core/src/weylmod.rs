//! The W(A)-modules `h*`, `Sym²(h*)`, `Sym³(h*)` and the τ operators built
//! on them.
//!
//! `Symᵏ` is modelled as homogeneous polynomials of degree k in the basis
//! vectors of `h*`; monomials are sorted index multisets in lexicographic
//! order. The form on monomials is `b(v₁⋯v_k, u₁⋯u_k) = (1/k!) Σ_σ Π b(v_σ(t), u_t)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::diagram::{realization, Gcm};
use crate::error::{Error, Result};
use crate::exactnum::forms::bilinear;
use crate::exactnum::{q, qi, DenseMatrix, Scalar, Q};
use crate::rootsys::{inner, RootVec, WeylWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Level {
    #[serde(rename = "1/2")]
    Half,
    #[serde(rename = "3/2")]
    ThreeHalves,
    #[serde(rename = "5/2")]
    FiveHalves,
    #[serde(rename = "7/2")]
    SevenHalves,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::Half, Level::ThreeHalves, Level::FiveHalves, Level::SevenHalves];

    /// Degree of the symmetric power carrying the W(A)-factor.
    pub fn degree(self) -> usize {
        match self {
            Level::Half => 0,
            Level::ThreeHalves => 1,
            Level::FiveHalves => 2,
            Level::SevenHalves => 3,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Level::Half => "1/2",
            Level::ThreeHalves => "3/2",
            Level::FiveHalves => "5/2",
            Level::SevenHalves => "7/2",
        };
        write!(f, "{s}")
    }
}

impl FromStr for Level {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "1/2" => Ok(Level::Half),
            "3/2" => Ok(Level::ThreeHalves),
            "5/2" => Ok(Level::FiveHalves),
            "7/2" => Ok(Level::SevenHalves),
            other => Err(Error::Parse(format!("unknown level '{other}' (expected 1/2, 3/2, 5/2 or 7/2)"))),
        }
    }
}

/// Which space the symmetric powers are taken of, for singular diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Carrier {
    /// The full realization `h*` (nondegenerate form).
    #[default]
    FullDual,
    /// `span(Π)` with the Cartan matrix as (possibly degenerate) form.
    RootSpan,
}

#[derive(Clone, Debug)]
pub struct SymModule {
    k: usize,
    m: usize,
    n: usize,
    base_gram: DenseMatrix,
    base_gram_inv: Option<DenseMatrix>,
    basis: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    gram: DenseMatrix,
}

fn multisets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(m, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, k, 0, &mut Vec::new(), &mut out);
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

impl SymModule {
    pub fn new(g: &Gcm, k: usize, carrier: Carrier) -> Result<Self> {
        g.require_simply_laced()?;
        if !(1..=3).contains(&k) {
            return Err(Error::Unsupported(format!("Sym^{k} is not implemented")));
        }
        let base_gram = match carrier {
            Carrier::FullDual => realization(g)?.gram,
            Carrier::RootSpan => g.cartan(),
        };
        Ok(Self::from_gram(g.rank(), base_gram, k))
    }

    /// Symmetric power of `(ℚ^m, G)`; the first `n` basis vectors are the
    /// simple roots.
    pub fn from_gram(n: usize, base_gram: DenseMatrix, k: usize) -> Self {
        let m = base_gram.rows();
        let basis = multisets(m, k);
        let index = basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
        let perms = permutations(k);
        let kf = Scalar::from_q(q(1, factorial(k)));
        let gram = DenseMatrix::from_fn(basis.len(), basis.len(), |a, b| {
            let (i, j) = (&basis[a], &basis[b]);
            let mut s = Scalar::zero();
            for p in &perms {
                let mut t = Scalar::one();
                for (x, &pi) in p.iter().enumerate() {
                    t = &t * &base_gram[(i[pi], j[x])];
                    if t.is_zero() {
                        break;
                    }
                }
                s += &t;
            }
            &s * &kf
        });
        let base_gram_inv = base_gram.inverse().ok();
        SymModule { k, m, n, base_gram, base_gram_inv, basis, index, gram }
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn base_dim(&self) -> usize {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    pub fn gram(&self) -> &DenseMatrix {
        &self.gram
    }

    pub fn base_gram(&self) -> &DenseMatrix {
        &self.base_gram
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.base_gram_inv.is_some()
    }

    pub fn embed_root(&self, a: &RootVec) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.m];
        for (i, &c) in a.coords().iter().enumerate().take(self.n) {
            v[i] = Scalar::int(c);
        }
        v
    }

    /// Symmetric product `v₁·v₂⋯v_k` of vectors in the base space.
    pub fn product(&self, vs: &[&[Scalar]]) -> Vec<Scalar> {
        assert_eq!(vs.len(), self.k, "need exactly k factors");
        let mut out = vec![Scalar::zero(); self.dim()];
        let supports: Vec<Vec<usize>> =
            vs.iter().map(|v| (0..self.m).filter(|&i| !v[i].is_zero()).collect()).collect();
        let mut idx = vec![0usize; self.k];
        fn rec(
            me: &SymModule,
            vs: &[&[Scalar]],
            sup: &[Vec<usize>],
            t: usize,
            idx: &mut Vec<usize>,
            coeff: Scalar,
            out: &mut [Scalar],
        ) {
            if t == vs.len() {
                let mut key = idx.clone();
                key.sort_unstable();
                out[me.index[&key]] += &coeff;
                return;
            }
            for &i in &sup[t] {
                idx[t] = i;
                rec(me, vs, sup, t + 1, idx, &coeff * &vs[t][i], out);
            }
        }
        rec(self, vs, &supports, 0, &mut idx, Scalar::one(), &mut out);
        out
    }

    pub fn power(&self, v: &[Scalar]) -> Vec<Scalar> {
        let f: Vec<&[Scalar]> = (0..self.k).map(|_| v).collect();
        self.product(&f)
    }

    /// Action on `Symᵏ` induced by a linear map of the base space.
    pub fn induced(&self, g1: &DenseMatrix) -> DenseMatrix {
        let cols: Vec<Vec<Scalar>> = (0..self.m).map(|c| g1.column(c)).collect();
        let images: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .map(|mono| {
                let f: Vec<&[Scalar]> = mono.iter().map(|&i| cols[i].as_slice()).collect();
                self.product(&f)
            })
            .collect();
        DenseMatrix::from_columns(self.dim(), &images)
    }

    /// `s_α` on the base space: `λ ↦ λ − (λ|α)α`.
    pub fn base_reflection(&self, a: &RootVec) -> DenseMatrix {
        let av = self.embed_root(a);
        let ga = self.base_gram.mul_vec(&av);
        DenseMatrix::from_fn(self.m, self.m, |r, c| {
            let d = if r == c { Scalar::one() } else { Scalar::zero() };
            &d - &(&av[r] * &ga[c])
        })
    }

    pub fn eta_reflection(&self, a: &RootVec) -> DenseMatrix {
        let r = self.base_reflection(a);
        if self.k == 1 {
            r
        } else {
            self.induced(&r)
        }
    }

    pub fn eta_simple(&self, i: usize) -> DenseMatrix {
        self.eta_reflection(&RootVec::simple(self.n, i))
    }

    pub fn eta(&self, w: &WeylWord) -> Result<DenseMatrix> {
        let mut m = DenseMatrix::identity(self.dim());
        for &i in w.letters() {
            if i >= self.n {
                return Err(Error::IndexOutOfRange { index: i + 1, n: self.n });
            }
            m = m.mul(&self.eta_simple(i));
        }
        Ok(m)
    }

    pub fn form(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        bilinear(&self.gram, u, v)
    }

    fn inv(&self) -> Result<&DenseMatrix> {
        self.base_gram_inv
            .as_ref()
            .ok_or_else(|| Error::Unsupported("the form on h* is degenerate".into()))
    }

    /// `ψ(a) = ½ Σ ω^{kl} a·e_k·e_l` in `Sym³`.
    pub fn psi(&self, a: &[Scalar]) -> Result<Vec<Scalar>> {
        if self.k != 3 {
            return Err(Error::Unsupported("psi lives in Sym^3".into()));
        }
        let w = self.inv()?;
        let mut out = vec![Scalar::zero(); self.dim()];
        let half = Scalar::frac(1, 2);
        for k in 0..self.m {
            for l in 0..self.m {
                let c = &w[(k, l)];
                if c.is_zero() {
                    continue;
                }
                for (i, ai) in a.iter().enumerate() {
                    if ai.is_zero() {
                        continue;
                    }
                    let mut key = vec![i, k, l];
                    key.sort_unstable();
                    out[self.index[&key]] += &(&(c * ai) * &half);
                }
            }
        }
        Ok(out)
    }

    /// The invariant element `Ψ = Σ ω^{kl} e_k e_l` of `Sym²`.
    pub fn psi_element(&self) -> Result<Vec<Scalar>> {
        if self.k != 2 {
            return Err(Error::Unsupported("Psi lives in Sym^2".into()));
        }
        let w = self.inv()?;
        let mut out = vec![Scalar::zero(); self.dim()];
        for k in 0..self.m {
            for l in 0..self.m {
                let mut key = vec![k, l];
                key.sort_unstable();
                out[self.index[&key]] += &w[(k, l)];
            }
        }
        Ok(out)
    }

    /// Joint (−1)-eigenspace of η(s_i) and η(s_j): the sign-isotypic part
    /// for the dihedral subgroup ⟨s_i, s_j⟩.
    pub fn sign_component(&self, i: usize, j: usize) -> Vec<Vec<Scalar>> {
        let id = DenseMatrix::identity(self.dim());
        let a = self.eta_simple(i).add(&id);
        let b = self.eta_simple(j).add(&id);
        let stacked = DenseMatrix::from_fn(2 * self.dim(), self.dim(), |r, c| {
            if r < self.dim() {
                a[(r, c)].clone()
            } else {
                b[(r - self.dim(), c)].clone()
            }
        });
        stacked.kernel_basis()
    }
}

/// Branch `±` of the level-7/2 constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// The three products `p², pq, q²` that determine `f(α)`, all in ℚ(√D).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SevenHalvesConstants {
    pub m: usize,
    pub big_d: u64,
    pub p2: Scalar,
    pub pq: Scalar,
    pub q2: Scalar,
}

impl SevenHalvesConstants {
    /// `p_ε = ε/√3`, `q_{±,ε} = −ε(12 ∓ 2√D)/((m+2)√3)`, `D = 6(m+8)`.
    /// The ε-dependence cancels in every product.
    pub fn new(m: usize, branch: Sign, eps: Sign) -> Self {
        let big_d = 6 * (m as u64 + 8);
        let sqrt_d = Scalar::sqrt_of(big_d);
        let e2 = Scalar::int(eps.value() * eps.value());
        // 12 ∓ 2√D
        let t = &Scalar::int(12) - &sqrt_d.mul_q(&qi(2 * branch.value()));
        let mp2 = qi(m as i64 + 2);
        let p2 = Scalar::frac(1, 3);
        let pq = (&t * &e2).mul_q(&(-(Q::from(qi(1)) / (qi(3) * &mp2))));
        let q2 = (&t * &t).mul_q(&(Q::from(qi(1)) / (qi(3) * &mp2 * &mp2)));
        SevenHalvesConstants { m, big_d, p2, pq, q2 }
    }

    /// `p² + 2pq + ((m+2)/12) q²`, which must equal 1.
    pub fn constraint(&self) -> Scalar {
        let c = q(self.m as i64 + 2, 12);
        &(&self.p2 + &self.pq.mul_q(&qi(2))) + &self.q2.mul_q(&c)
    }
}

/// Options for the W(A)-factor of a spin representation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VOptions {
    pub carrier: Carrier,
    pub branch: Sign,
    pub eps: Sign,
}

/// The W(A)-factor `V` of `S_{k+1/2} = V ⊗ S` together with τ.
#[derive(Clone, Debug)]
pub struct VModule {
    level: Level,
    n: usize,
    sym: Option<SymModule>,
    consts: Option<SevenHalvesConstants>,
    etas: Vec<DenseMatrix>,
    singular: bool,
    opts: VOptions,
    fault: Option<(usize, usize)>,
}

impl VModule {
    pub fn new(g: &Gcm, level: Level, opts: VOptions) -> Result<Self> {
        g.require_simply_laced()?;
        let singular = !g.is_regular();
        if level == Level::SevenHalves && singular {
            return Err(Error::Unsupported("level 7/2 needs a regular Cartan matrix".into()));
        }
        let sym = match level.degree() {
            0 => None,
            k => Some(SymModule::new(g, k, opts.carrier)?),
        };
        let consts = (level == Level::SevenHalves)
            .then(|| SevenHalvesConstants::new(sym.as_ref().unwrap().base_dim(), opts.branch, opts.eps));
        let etas = (0..g.rank())
            .map(|i| match &sym {
                None => DenseMatrix::identity(1),
                Some(s) => s.eta_simple(i),
            })
            .collect();
        Ok(VModule { level, n: g.rank(), sym, consts, etas, singular, opts, fault: None })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn options(&self) -> VOptions {
        self.opts
    }

    /// Results on singular diagrams are experimental (carrier choice).
    pub fn is_experimental(&self) -> bool {
        self.singular && self.sym.is_some()
    }

    pub fn sym(&self) -> Option<&SymModule> {
        self.sym.as_ref()
    }

    pub fn constants(&self) -> Option<&SevenHalvesConstants> {
        self.consts.as_ref()
    }

    /// `D = 6(m+8)` for level 7/2.
    pub fn field_d(&self) -> Option<u64> {
        self.consts.as_ref().map(|c| c.big_d)
    }

    pub fn dim(&self) -> usize {
        self.sym.as_ref().map_or(1, SymModule::dim)
    }

    /// Invariant form on V (`[1]` for the trivial factor).
    pub fn gram(&self) -> DenseMatrix {
        self.sym.as_ref().map_or_else(|| DenseMatrix::identity(1), |s| s.gram().clone())
    }

    pub fn eta_simple(&self, i: usize) -> &DenseMatrix {
        &self.etas[i]
    }

    pub fn eta_reflection(&self, a: &RootVec) -> DenseMatrix {
        match &self.sym {
            None => DenseMatrix::identity(1),
            Some(s) => s.eta_reflection(a),
        }
    }

    pub fn eta(&self, w: &WeylWord) -> Result<DenseMatrix> {
        match &self.sym {
            None => Ok(DenseMatrix::identity(1)),
            Some(s) => s.eta(w),
        }
    }

    /// `v(α) = p·ααα + q·ψ(α)` is never formed; `f(α) = v b(v,·)` is
    /// assembled from p², pq, q².
    pub fn f_alpha(&self, a: &RootVec) -> Result<DenseMatrix> {
        self.f_clean(a).map(|m| self.apply_fault(a, m))
    }

    fn f_clean(&self, a: &RootVec) -> Result<DenseMatrix> {
        let (Some(s), Some(c)) = (&self.sym, &self.consts) else {
            return Err(Error::Unsupported("f(alpha) exists only at level 7/2".into()));
        };
        let av = s.embed_root(a);
        let aaa = s.power(&av);
        let psi = s.psi(&av)?;
        let g = s.gram();
        let row = |v: &[Scalar]| g.transpose().mul_vec(v);
        let (raaa, rpsi) = (row(&aaa), row(&psi));
        let outer = |u: &[Scalar], w: &[Scalar]| DenseMatrix::from_fn(u.len(), w.len(), |i, j| &u[i] * &w[j]);
        let mut f = outer(&aaa, &raaa).scale(&c.p2);
        f.add_assign(&outer(&aaa, &rpsi).add(&outer(&psi, &raaa)).scale(&c.pq));
        f.add_assign(&outer(&psi, &rpsi).scale(&c.q2));
        Ok(f)
    }

    /// `b(v(α), v(β))` computed from the same three products.
    pub fn v_pairing(&self, a: &RootVec, b: &RootVec) -> Result<Scalar> {
        let (Some(s), Some(c)) = (&self.sym, &self.consts) else {
            return Err(Error::Unsupported("v(alpha) exists only at level 7/2".into()));
        };
        let (av, bv) = (s.embed_root(a), s.embed_root(b));
        let (aaa, bbb) = (s.power(&av), s.power(&bv));
        let (pa, pb) = (s.psi(&av)?, s.psi(&bv)?);
        let mut out = s.form(&aaa, &bbb).mul(&c.p2);
        out += &(&s.form(&aaa, &pb) + &s.form(&pa, &bbb)).mul(&c.pq);
        out += &s.form(&pa, &pb).mul(&c.q2);
        Ok(out)
    }

    /// Copy whose `τ(α_i)` and `f(α_i)` have one row negated (negative
    /// controls). The row is the first nonzero one at or after `row`.
    pub fn inject_sign_flip(&self, i: usize, row: usize) -> Result<Self> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i + 1, n: self.n });
        }
        let mut out = self.clone();
        out.fault = Some((i, row % self.dim()));
        Ok(out)
    }

    pub fn is_fault_injected(&self) -> bool {
        self.fault.is_some()
    }

    fn apply_fault(&self, a: &RootVec, mut m: DenseMatrix) -> DenseMatrix {
        let Some((i, row)) = self.fault else { return m };
        if *a != RootVec::simple(self.n, i) {
            return m;
        }
        let d = m.rows();
        if let Some(r) = (0..d).map(|k| (row + k) % d).find(|&r| m.row(r).iter().any(|x| !x.is_zero())) {
            for c in 0..m.cols() {
                m[(r, c)] = -&m[(r, c)];
            }
        }
        m
    }

    pub fn tau(&self, a: &RootVec) -> Result<DenseMatrix> {
        self.tau_clean(a).map(|m| self.apply_fault(a, m))
    }

    fn tau_clean(&self, a: &RootVec) -> Result<DenseMatrix> {
        let half = Scalar::frac(1, 2);
        match self.level {
            Level::Half => Ok(DenseMatrix::scalar(1, &half)),
            Level::ThreeHalves | Level::FiveHalves => {
                Ok(self.eta_reflection(a).sub(&DenseMatrix::scalar(self.dim(), &half)))
            }
            Level::SevenHalves => {
                let t = self.eta_reflection(a).sub(&DenseMatrix::scalar(self.dim(), &half));
                Ok(t.add(&self.f_clean(a)?))
            }
        }
    }

    pub fn tau_simple(&self, i: usize) -> Result<DenseMatrix> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange { index: i + 1, n: self.n });
        }
        self.tau(&RootVec::simple(self.n, i))
    }
}

trait ScalarMul {
    fn mul(&self, o: &Scalar) -> Scalar;
}

impl ScalarMul for Scalar {
    fn mul(&self, o: &Scalar) -> Scalar {
        self * o
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MasterEqFailure {
    pub identity: String,
    pub alpha: String,
    pub beta: String,
    pub lhs: serde_json::Value,
    pub rhs: serde_json::Value,
}

/// Evaluates `[τ(α),τ(β)] = 0` if `(α|β) = 0` and `{τ(α),τ(β)} = τ(α±β)`
/// if `(α|β) = ∓1`. Returns `None` when the pair is not covered.
pub fn master_eq_check(g: &Gcm, v: &VModule, a: &RootVec, b: &RootVec) -> Result<Option<Vec<MasterEqFailure>>> {
    let p = inner(g, a, b);
    let (ta, tb) = (v.tau(a)?, v.tau(b)?);
    let mk = |name: &str, l: &DenseMatrix, r: &DenseMatrix| MasterEqFailure {
        identity: name.into(),
        alpha: a.to_string(),
        beta: b.to_string(),
        lhs: serde_json::to_value(l.to_json()).unwrap(),
        rhs: serde_json::to_value(r.to_json()).unwrap(),
    };
    let out = match p {
        0 => {
            let c = ta.commutator(&tb);
            let z = DenseMatrix::zeros(c.rows(), c.cols());
            if c.is_zero() { vec![] } else { vec![mk("[tau(a),tau(b)] = 0", &c, &z)] }
        }
        -1 | 1 => {
            let target = if p == -1 { a.add(b) } else { a.sub(b) };
            let ac = ta.anticommutator(&tb);
            let t = v.tau(&target)?;
            if ac == t { vec![] } else { vec![mk("{tau(a),tau(b)} = tau(a -+ b)", &ac, &t)] }
        }
        _ => return Ok(None),
    };
    Ok(Some(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_gcm;
    use crate::rootsys::real_roots;

    fn gcm(s: &str) -> Gcm {
        parse_gcm(s).unwrap()
    }

    #[test]
    fn eta_on_h_star_a2() {
        let s = SymModule::new(&gcm("A2"), 1, Carrier::FullDual).unwrap();
        assert_eq!(s.eta_simple(0), DenseMatrix::from_i64(&[vec![-1, 1], vec![0, 1]]));
        assert!(s.eta(&WeylWord::default()).unwrap().is_identity());
    }

    #[test]
    fn dimensions() {
        let g = gcm("K4");
        assert_eq!(SymModule::new(&g, 2, Carrier::FullDual).unwrap().dim(), 10);
        assert_eq!(SymModule::new(&g, 3, Carrier::FullDual).unwrap().dim(), 20);
        assert_eq!(SymModule::new(&gcm("E10"), 2, Carrier::FullDual).unwrap().dim(), 55);
    }

    #[test]
    fn eta_is_orthogonal() {
        let g = gcm("K4");
        for k in 1..=3 {
            let s = SymModule::new(&g, k, Carrier::FullDual).unwrap();
            let e = s.eta(&WeylWord(vec![0, 2, 1, 3, 1])).unwrap();
            assert_eq!(e.transpose().mul(s.gram()).mul(&e), *s.gram());
        }
    }

    #[test]
    fn psi_scalar_products() {
        let g = gcm("K4");
        let s = SymModule::new(&g, 3, Carrier::FullDual).unwrap();
        let m = s.base_dim() as i64;
        let roots = real_roots(&g, 3);
        for a in &roots {
            for b in &roots {
                let (av, bv) = (s.embed_root(a), s.embed_root(b));
                let bab = Scalar::int(inner(&g, a, b));
                let (pa, pb) = (s.psi(&av).unwrap(), s.psi(&bv).unwrap());
                assert_eq!(s.form(&pa, &pb), bab.mul_q(&q(m + 2, 12)));
                assert_eq!(s.form(&s.power(&av), &pb), bab);
                let sa = s.eta_reflection(a);
                let sb = s.base_reflection(a).mul_vec(&bv);
                assert_eq!(sa.mul_vec(&pb), s.psi(&sb).unwrap());
            }
        }
    }

    #[test]
    fn psi_element_is_invariant() {
        for name in ["A2", "K4"] {
            let g = gcm(name);
            let s = SymModule::new(&g, 2, Carrier::FullDual).unwrap();
            let psi = s.psi_element().unwrap();
            assert_eq!(s.form(&psi, &psi), Scalar::int(g.rank() as i64));
            for i in 0..g.rank() {
                assert_eq!(s.eta_simple(i).mul_vec(&psi), psi);
            }
        }
    }

    #[test]
    fn tau_three_halves_a2() {
        let v = VModule::new(&gcm("A2"), Level::ThreeHalves, VOptions::default()).unwrap();
        let t = v.tau_simple(0).unwrap();
        let want = DenseMatrix::from_rows(vec![
            vec![Scalar::frac(-3, 2), Scalar::one()],
            vec![Scalar::zero(), Scalar::frac(1, 2)],
        ])
        .unwrap();
        assert_eq!(t, want);
    }

    #[test]
    fn seven_halves_constants() {
        for m in [3usize, 4, 10] {
            for br in [Sign::Plus, Sign::Minus] {
                let c = SevenHalvesConstants::new(m, br, Sign::Plus);
                assert!(c.constraint().is_one());
                assert_eq!(c, SevenHalvesConstants::new(m, br, Sign::Minus));
            }
        }
        let c = SevenHalvesConstants::new(4, Sign::Plus, Sign::Plus);
        assert!(c.pq.radicand().is_none());
        assert!(!c.pq.is_rational());
    }

    #[test]
    fn f_alpha_identities_k4() {
        let g = gcm("K4");
        let v = VModule::new(&g, Level::SevenHalves, VOptions::default()).unwrap();
        assert_eq!(v.field_d(), Some(72));
        let a = RootVec::simple(4, 0);
        let f = v.f_alpha(&a).unwrap();
        assert_eq!(f.mul(&f), f.scale(&Scalar::int(4)));
        let eta = v.eta_reflection(&a);
        assert_eq!(eta.mul(&f), f.neg());
        assert_eq!(f.mul(&eta), f.neg());
        let b = RootVec::simple(4, 1);
        assert_eq!(v.v_pairing(&a, &b).unwrap(), Scalar::int(-1));
    }

    #[test]
    fn sign_census() {
        let g = gcm("A3");
        let s3 = SymModule::new(&g, 3, Carrier::FullDual).unwrap();
        let s2 = SymModule::new(&g, 2, Carrier::FullDual).unwrap();
        for &(i, j) in g.edges() {
            let comp = s3.sign_component(i, j);
            assert_eq!(comp.len(), 1);
            let (ai, aj) = (s3.embed_root(&RootVec::simple(3, i)), s3.embed_root(&RootVec::simple(3, j)));
            let sum: Vec<Scalar> = ai.iter().zip(&aj).map(|(x, y)| x + y).collect();
            let w = s3.product(&[&ai, &aj, &sum]);
            let stacked = DenseMatrix::from_columns(w.len(), &[comp[0].clone(), w]);
            assert_eq!(stacked.rank(), 1);
            assert!(s2.sign_component(i, j).is_empty());
        }
    }

    #[test]
    fn master_equations() {
        let g = gcm("A3");
        let v = VModule::new(&g, Level::ThreeHalves, VOptions::default()).unwrap();
        let r = master_eq_check(&g, &v, &RootVec::simple(3, 0), &RootVec::simple(3, 2)).unwrap();
        assert_eq!(r.map(|x| x.len()), Some(0));
        let a2 = gcm("A2");
        let v = VModule::new(&a2, Level::FiveHalves, VOptions::default()).unwrap();
        let r = master_eq_check(&a2, &v, &RootVec::simple(2, 0), &RootVec::simple(2, 1)).unwrap();
        assert_eq!(r.map(|x| x.len()), Some(0));
        let k4 = gcm("K4");
        let v = VModule::new(&k4, Level::SevenHalves, VOptions::default()).unwrap();
        for a in real_roots(&k4, 3) {
            for b in real_roots(&k4, 3) {
                if let Some(f) = master_eq_check(&k4, &v, &a, &b).unwrap() {
                    assert!(f.is_empty(), "{a} {b}");
                }
            }
        }
    }

    #[test]
    fn seven_halves_rejects_singular() {
        assert!(matches!(
            VModule::new(&gcm("cycle3"), Level::SevenHalves, VOptions::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn injected_tau_breaks_master_equations() {
        let g = gcm("A3");
        let v = VModule::new(&g, Level::ThreeHalves, VOptions::default()).unwrap();
        let bad = v.inject_sign_flip(0, 0).unwrap();
        let (a1, a2) = (RootVec::simple(3, 0), RootVec::simple(3, 1));
        assert!(master_eq_check(&g, &v, &a1, &a2).unwrap().unwrap().is_empty());
        assert!(!master_eq_check(&g, &bad, &a1, &a2).unwrap().unwrap().is_empty());
        assert_eq!(bad.tau(&a2).unwrap(), v.tau(&a2).unwrap());
    }

}
