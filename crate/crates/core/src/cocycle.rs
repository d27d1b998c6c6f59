//! The standard 2-cocycle on the root lattice and the Γ-matrices it defines
//! on the twisted group algebra of `Q/2Q`.
//!
//! Basis vectors `e_β̄` are indexed by bitmasks `β̄ ∈ (ℤ/2)ⁿ`, and
//! `Γ(α) e_β̄ = ε(α, β) e_{ᾱ⊕β̄}`.

use serde::{Deserialize, Serialize};

use crate::diagram::Gcm;
use crate::error::{Error, Result};
use crate::exactnum::{DenseMatrix, Scalar};
use crate::report::Counterexample;
use crate::rootsys::{inner, RootVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTable {
    n: usize,
    // bits[i] has bit j set iff ε̲(α_i, α_j) is odd
    bits: Vec<u32>,
}

impl CocycleTable {
    pub fn new(g: &Gcm) -> Result<Self> {
        g.require_simply_laced()?;
        let n = g.rank();
        if n > 24 {
            return Err(Error::Unsupported(format!("rank {n} is too large for 2^n spinors")));
        }
        let mut bits = vec![0u32; n];
        for (i, b) in bits.iter_mut().enumerate() {
            for j in 0..n {
                let e = match i.cmp(&j) {
                    std::cmp::Ordering::Less => g.entry(i, j),
                    std::cmp::Ordering::Equal => g.entry(i, i) / 2,
                    std::cmp::Ordering::Greater => 0,
                };
                if e.rem_euclid(2) == 1 {
                    *b |= 1 << j;
                }
            }
        }
        Ok(CocycleTable { n, bits })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn spinor_dim(&self) -> usize {
        1 << self.n
    }

    /// ε̲(α_i, α_j) mod 2.
    pub fn entry(&self, i: usize, j: usize) -> u8 {
        ((self.bits[i] >> j) & 1) as u8
    }

    /// ε̲(a, b) mod 2 for classes mod 2Q.
    pub fn eps_bit(&self, a: u32, b: u32) -> u32 {
        let mut s = 0;
        let mut m = a;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            s ^= (self.bits[i] & b).count_ones() & 1;
            m &= m - 1;
        }
        s
    }

    pub fn eps_class(&self, a: u32, b: u32) -> i8 {
        if self.eps_bit(a, b) == 0 {
            1
        } else {
            -1
        }
    }

    pub fn eps(&self, a: &RootVec, b: &RootVec) -> i8 {
        self.eps_class(a.class(), b.class())
    }

    pub fn gamma_class(&self, a: u32) -> GammaOp {
        let signs = (0..self.spinor_dim() as u32).map(|b| self.eps_class(a, b)).collect();
        GammaOp { n: self.n, class: a, signs }
    }

    pub fn gamma(&self, a: &RootVec) -> GammaOp {
        self.gamma_class(a.class())
    }

    pub fn gamma_simple(&self, i: usize) -> GammaOp {
        self.gamma_class(1 << i)
    }

    /// Copy with `ε̲(α_i, α_j)` toggled; breaks the table (negative controls).
    pub fn with_flipped_bit(&self, i: usize, j: usize) -> Self {
        let mut out = self.clone();
        out.bits[i % self.n] ^= 1 << (j % self.n);
        out
    }

    /// Right multiplication `e_β ↦ ε(β, γ) e_{β⊕γ}`; commutes with every Γ(α).
    pub fn right_mult(&self, c: u32) -> GammaOp {
        let signs = (0..self.spinor_dim() as u32).map(|b| self.eps_class(b, c)).collect();
        GammaOp { n: self.n, class: c, signs }
    }
}

/// Signed shift `e_β ↦ signs[β]·e_{class⊕β}` on `(ℤ/2)ⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GammaOp {
    n: usize,
    class: u32,
    signs: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaJson {
    pub class: String,
    pub signs: Vec<i8>,
}

impl GammaOp {
    pub fn identity(n: usize) -> Self {
        GammaOp { n, class: 0, signs: vec![1; 1 << n] }
    }

    pub fn from_parts(n: usize, class: u32, signs: Vec<i8>) -> Result<Self> {
        if signs.len() != 1 << n || class >> n != 0 || signs.iter().any(|s| s.abs() != 1) {
            return Err(Error::Dimension("malformed GammaOp".into()));
        }
        Ok(GammaOp { n, class, signs })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        1 << self.n
    }

    pub fn class(&self) -> u32 {
        self.class
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign(&self, b: u32) -> i8 {
        self.signs[b as usize]
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &GammaOp) -> GammaOp {
        assert_eq!(self.n, other.n, "GammaOp rank mismatch");
        let signs = (0..self.dim() as u32)
            .map(|b| other.signs[b as usize] * self.signs[(b ^ other.class) as usize])
            .collect();
        GammaOp { n: self.n, class: self.class ^ other.class, signs }
    }

    pub fn transpose(&self) -> GammaOp {
        let signs = (0..self.dim() as u32).map(|g| self.signs[(g ^ self.class) as usize]).collect();
        GammaOp { n: self.n, class: self.class, signs }
    }

    pub fn neg(&self) -> GammaOp {
        GammaOp { n: self.n, class: self.class, signs: self.signs.iter().map(|s| -s).collect() }
    }

    /// `Some(±1)` when the operator is `±Id`.
    pub fn as_sign_identity(&self) -> Option<i8> {
        if self.class != 0 {
            return None;
        }
        let s = self.signs[0];
        self.signs.iter().all(|&x| x == s).then_some(s)
    }

    /// Splits off the sign at `e_0` so that `self = s·normalized` with
    /// `normalized.sign(0) = +1`.
    pub fn normalized(&self) -> (i8, GammaOp) {
        let s = self.signs[0];
        if s == 1 {
            (1, self.clone())
        } else {
            (-1, self.neg())
        }
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); v.len()];
        for (b, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let t = b ^ self.class as usize;
            out[t] = if self.signs[b] == 1 { x.clone() } else { -x };
        }
        out
    }

    pub fn materialize(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.dim(), self.dim());
        for b in 0..self.dim() {
            m[(b ^ self.class as usize, b)] = Scalar::int(self.signs[b] as i64);
        }
        m
    }

    /// Flips the sign of a single basis image; used for negative controls.
    pub fn with_flipped_sign(&self, b: usize) -> GammaOp {
        let mut g = self.clone();
        g.signs[b] = -g.signs[b];
        g
    }

    pub fn to_json(&self) -> GammaJson {
        let class = (0..self.n).map(|i| if (self.class >> i) & 1 == 1 { '1' } else { '0' }).collect();
        GammaJson { class, signs: self.signs.clone() }
    }

    pub fn from_json(j: &GammaJson) -> Result<Self> {
        let n = j.class.len();
        let mut class = 0u32;
        for (i, ch) in j.class.chars().enumerate() {
            match ch {
                '1' => class |= 1 << i,
                '0' => {}
                _ => return Err(Error::Parse(format!("bad class bitstring '{}'", j.class))),
            }
        }
        Self::from_parts(n, class, j.signs.clone())
    }
}

/// Checks the defining Γ-matrix identities on all pairs of the sample.
pub fn verify_gamma_axioms(g: &Gcm, t: &CocycleTable, sample: &[RootVec]) -> Vec<Counterexample> {
    let mut out = Vec::new();
    let n = t.rank();
    let id = GammaOp::identity(n);
    let gj = |x: &GammaOp| serde_json::to_value(x.to_json()).unwrap();
    let signed = |s: i64, x: &GammaOp| if s == 1 { x.clone() } else { x.neg() };
    let zero = RootVec::zero(n);
    if t.gamma(&zero) != id {
        out.push(Counterexample {
            identity: "Gamma(0) = Id".into(),
            operands: vec![],
            lhs: gj(&t.gamma(&zero)),
            rhs: gj(&id),
        });
    }
    for a in sample {
        let ga = t.gamma(a);
        let sq = ga.compose(&ga);
        let want = signed(if (a.norm(g) / 2).rem_euclid(2) == 0 { 1 } else { -1 }, &id);
        if sq != want {
            out.push(Counterexample {
                identity: "Gamma(a)^2 = (-1)^((a|a)/2) Id".into(),
                operands: vec![a.to_string()],
                lhs: gj(&sq),
                rhs: gj(&want),
            });
        }
        let neg = t.gamma(&a.scale(-1));
        if neg != ga {
            out.push(Counterexample {
                identity: "Gamma(-a) = Gamma(a)".into(),
                operands: vec![a.to_string()],
                lhs: gj(&neg),
                rhs: gj(&ga),
            });
        }
        for b in sample {
            let gb = t.gamma(b);
            let ab = ga.compose(&gb);
            let ba = gb.compose(&ga);
            let p = inner(g, a, b);
            let want = signed(if p.rem_euclid(2) == 0 { 1 } else { -1 }, &ba);
            if ab != want {
                out.push(Counterexample {
                    identity: "Gamma(a)Gamma(b) = (-1)^(a|b) Gamma(b)Gamma(a)".into(),
                    operands: vec![a.to_string(), b.to_string()],
                    lhs: gj(&ab),
                    rhs: gj(&want),
                });
            }
            let want = signed(t.eps(a, b) as i64, &t.gamma(&a.add(b)));
            if ab != want {
                out.push(Counterexample {
                    identity: "Gamma(a)Gamma(b) = eps(a,b) Gamma(a+b)".into(),
                    operands: vec![a.to_string(), b.to_string()],
                    lhs: gj(&ab),
                    rhs: gj(&want),
                });
            }
            if t.gamma(&a.add(b)) != t.gamma(&a.sub(b)) || t.gamma(&a.add(&b.scale(2))) != ga {
                out.push(Counterexample {
                    identity: "Gamma(a+b) = Gamma(a-b), Gamma(a+2b) = Gamma(a)".into(),
                    operands: vec![a.to_string(), b.to_string()],
                    lhs: gj(&t.gamma(&a.add(b))),
                    rhs: gj(&t.gamma(&a.sub(b))),
                });
            }
        }
    }
    out
}

/// Checks ε(a,b)ε(b,a) = (−1)^(a|b), bilinearity and the cocycle identity.
pub fn verify_cocycle(g: &Gcm, t: &CocycleTable, triples: &[(RootVec, RootVec, RootVec)]) -> Vec<Counterexample> {
    let mut out = Vec::new();
    let fail = |name: &str, ops: [&RootVec; 3], l: i64, r: i64| Counterexample {
        identity: name.into(),
        operands: ops.iter().map(|x| x.to_string()).collect(),
        lhs: l.into(),
        rhs: r.into(),
    };
    for (a, b, c) in triples {
        let e = |x: &RootVec, y: &RootVec| t.eps(x, y) as i64;
        let sym = e(a, b) * e(b, a);
        let want = if inner(g, a, b).rem_euclid(2) == 0 { 1 } else { -1 };
        if sym != want {
            out.push(fail("eps(a,b)eps(b,a) = (-1)^(a|b)", [a, b, c], sym, want));
        }
        if e(&a.add(b), c) != e(a, c) * e(b, c) || e(a, &b.add(c)) != e(a, b) * e(a, c) {
            out.push(fail("eps bilinear", [a, b, c], e(&a.add(b), c), e(a, c) * e(b, c)));
        }
        let l = e(a, b) * e(&a.add(b), c);
        let r = e(a, &b.add(c)) * e(b, c);
        if l != r {
            out.push(fail("eps(a,b)eps(a+b,c) = eps(a,b+c)eps(b,c)", [a, b, c], l, r));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_gcm;
    use crate::rootsys::real_roots;

    #[test]
    fn a1_gamma_matrix() {
        let g = parse_gcm("A1").unwrap();
        let t = CocycleTable::new(&g).unwrap();
        assert_eq!(t.gamma_simple(0).materialize(), DenseMatrix::from_i64(&[vec![0, -1], vec![1, 0]]));
    }

    #[test]
    fn a2_cocycle_values() {
        let g = parse_gcm("A2").unwrap();
        let t = CocycleTable::new(&g).unwrap();
        let (a1, a2) = (RootVec::simple(2, 0), RootVec::simple(2, 1));
        assert_eq!(t.eps(&a1, &a2), -1);
        assert_eq!(t.eps(&a2, &a1), 1);
        assert_eq!(t.eps(&a1, &a1), -1);
        assert_eq!(t.eps(&a1, &RootVec::zero(2)), 1);
        let (g1, g2) = (t.gamma(&a1), t.gamma(&a2));
        assert_eq!(g1.compose(&g2), g2.compose(&g1).neg());
    }

    #[test]
    fn twice_a_root_gives_identity() {
        let g = parse_gcm("D4").unwrap();
        let t = CocycleTable::new(&g).unwrap();
        assert_eq!(t.gamma(&RootVec::simple(4, 2).scale(2)), GammaOp::identity(4));
    }

    #[test]
    fn real_root_gammas_are_skew() {
        let g = parse_gcm("K4").unwrap();
        let t = CocycleTable::new(&g).unwrap();
        for r in real_roots(&g, 5) {
            let m = t.gamma(&r).materialize();
            assert_eq!(m.transpose(), m.neg());
            assert_eq!(t.gamma(&r).transpose(), t.gamma(&r).neg());
        }
    }

    #[test]
    fn axioms_on_small_samples() {
        let g = parse_gcm("A2").unwrap();
        let t = CocycleTable::new(&g).unwrap();
        assert!(verify_gamma_axioms(&g, &t, &real_roots(&g, 2)).is_empty());
        let c3 = parse_gcm("cycle3").unwrap();
        let t3 = CocycleTable::new(&c3).unwrap();
        let mut sample = real_roots(&c3, 4);
        let delta: RootVec = "1,1,1".parse().unwrap();
        sample.push(delta.clone());
        assert!(verify_gamma_axioms(&c3, &t3, &sample).is_empty());
        let gd = t3.gamma(&delta);
        for i in 0..3 {
            let gi = t3.gamma_simple(i);
            assert_eq!(gd.compose(&gi), gi.compose(&gd));
        }
    }

    #[test]
    fn right_multiplication_commutes_with_left() {
        let g = parse_gcm("K4").unwrap();
        let t = CocycleTable::new(&g).unwrap();
        for c in 0..16 {
            let r = t.right_mult(c);
            for i in 0..4 {
                let l = t.gamma_simple(i);
                assert_eq!(r.compose(&l), l.compose(&r));
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let g = parse_gcm("A3").unwrap();
        let t = CocycleTable::new(&g).unwrap();
        let x = t.gamma(&"1,1,0".parse().unwrap());
        assert_eq!(x.to_json().class, "110");
        assert_eq!(GammaOp::from_json(&x.to_json()).unwrap(), x);
    }
}
