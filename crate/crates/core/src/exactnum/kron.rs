//! Formal sums `Σ c_k · L_k ⊗ R_k` with the right factor either a signed
//! shift (`GammaOp`) or a dense matrix.

use std::collections::{HashMap, HashSet};

use super::matrix::DenseMatrix;
use super::scalar::Scalar;
use crate::cocycle::GammaOp;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RightFactor {
    Gamma(GammaOp),
    Dense(DenseMatrix),
}

impl RightFactor {
    pub fn dim(&self) -> usize {
        match self {
            RightFactor::Gamma(g) => g.dim(),
            RightFactor::Dense(d) => d.rows(),
        }
    }

    pub fn materialize(&self) -> DenseMatrix {
        match self {
            RightFactor::Gamma(g) => g.materialize(),
            RightFactor::Dense(d) => d.clone(),
        }
    }

    pub fn compose(&self, o: &RightFactor) -> RightFactor {
        match (self, o) {
            (RightFactor::Gamma(a), RightFactor::Gamma(b)) => RightFactor::Gamma(a.compose(b)),
            _ => RightFactor::Dense(self.materialize().mul(&o.materialize())),
        }
    }

    pub fn transpose(&self) -> RightFactor {
        match self {
            RightFactor::Gamma(g) => RightFactor::Gamma(g.transpose()),
            RightFactor::Dense(d) => RightFactor::Dense(d.transpose()),
        }
    }

    pub fn trace(&self) -> Scalar {
        match self {
            RightFactor::Gamma(g) if g.class() == 0 => Scalar::int(g.signs().iter().map(|&s| s as i64).sum()),
            RightFactor::Gamma(_) => Scalar::zero(),
            RightFactor::Dense(d) => d.trace(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KronTerm {
    pub coeff: Scalar,
    pub left: DenseMatrix,
    pub right: RightFactor,
}

#[derive(Clone, Debug)]
pub struct KronOp {
    left_dim: usize,
    right_dim: usize,
    terms: Vec<KronTerm>,
}

impl KronOp {
    pub fn zero(left_dim: usize, right_dim: usize) -> Self {
        KronOp { left_dim, right_dim, terms: Vec::new() }
    }

    pub fn single(coeff: Scalar, left: DenseMatrix, right: RightFactor) -> Self {
        assert!(left.is_square(), "left factor must be square");
        KronOp { left_dim: left.rows(), right_dim: right.dim(), terms: vec![KronTerm { coeff, left, right }] }
    }

    pub fn identity_like(left_dim: usize, right: &RightFactor) -> Self {
        let id = match right {
            RightFactor::Gamma(g) => RightFactor::Gamma(GammaOp::identity(g.rank())),
            RightFactor::Dense(d) => RightFactor::Dense(DenseMatrix::identity(d.rows())),
        };
        Self::single(Scalar::one(), DenseMatrix::identity(left_dim), id)
    }

    pub fn left_dim(&self) -> usize {
        self.left_dim
    }

    pub fn right_dim(&self) -> usize {
        self.right_dim
    }

    pub fn dim(&self) -> usize {
        self.left_dim * self.right_dim
    }

    pub fn terms(&self) -> &[KronTerm] {
        &self.terms
    }

    fn check(&self, o: &KronOp) -> Result<()> {
        if self.left_dim != o.left_dim || self.right_dim != o.right_dim {
            return Err(Error::Dimension(format!(
                "KronOp {}⊗{} vs {}⊗{}",
                self.left_dim, self.right_dim, o.left_dim, o.right_dim
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &KronOp) -> Result<KronOp> {
        self.check(o)?;
        let mut terms = self.terms.clone();
        terms.extend(o.terms.iter().cloned());
        Ok(KronOp { terms, ..*self }.simplified())
    }

    pub fn add(&self, o: &KronOp) -> KronOp {
        self.try_add(o).expect("KronOp dimension mismatch")
    }

    pub fn sub(&self, o: &KronOp) -> KronOp {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> KronOp {
        let terms = self
            .terms
            .iter()
            .map(|t| KronTerm { coeff: &t.coeff * s, left: t.left.clone(), right: t.right.clone() })
            .collect();
        KronOp { terms, ..*self }
    }

    pub fn try_mul(&self, o: &KronOp) -> Result<KronOp> {
        self.check(o)?;
        let mut terms = Vec::with_capacity(self.terms.len() * o.terms.len());
        for a in &self.terms {
            for b in &o.terms {
                let coeff = &a.coeff * &b.coeff;
                if coeff.is_zero() {
                    continue;
                }
                terms.push(KronTerm { coeff, left: a.left.mul(&b.left), right: a.right.compose(&b.right) });
            }
        }
        Ok(KronOp { terms, ..*self }.simplified())
    }

    pub fn mul(&self, o: &KronOp) -> KronOp {
        self.try_mul(o).expect("KronOp dimension mismatch")
    }

    pub fn pow(&self, k: u32) -> KronOp {
        let first = self.terms.first().map(|t| t.right.clone());
        let mut out = match first {
            Some(r) => KronOp::identity_like(self.left_dim, &r),
            None => return self.clone(),
        };
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// `[A⊗B, C⊗D] = AC⊗BD − CA⊗DB`, summed over terms.
    pub fn commutator(&self, o: &KronOp) -> KronOp {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &KronOp) -> KronOp {
        self.mul(o).add(&o.mul(self))
    }

    pub fn transpose(&self) -> KronOp {
        let terms = self
            .terms
            .iter()
            .map(|t| KronTerm { coeff: t.coeff.clone(), left: t.left.transpose(), right: t.right.transpose() })
            .collect();
        KronOp { terms, ..*self }
    }

    pub fn trace(&self) -> Scalar {
        let mut s = Scalar::zero();
        for t in &self.terms {
            s += &(&t.coeff * &(&t.left.trace() * &t.right.trace()));
        }
        s
    }

    pub fn materialize(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.dim(), self.dim());
        for t in &self.terms {
            m.add_scaled(&t.coeff, &t.left.kron(&t.right.materialize()));
        }
        m
    }

    /// Folds coefficients into the left factors and merges terms whose right
    /// factors agree up to sign.
    pub fn simplified(&self) -> KronOp {
        let mut gamma: Vec<(GammaOp, DenseMatrix)> = Vec::new();
        let mut index: HashMap<GammaOp, usize> = HashMap::new();
        let mut dense: Vec<(DenseMatrix, DenseMatrix)> = Vec::new();
        for t in &self.terms {
            if t.coeff.is_zero() {
                continue;
            }
            match &t.right {
                RightFactor::Gamma(g) => {
                    let (s, norm) = g.normalized();
                    let c = if s == 1 { t.coeff.clone() } else { -&t.coeff };
                    match index.get(&norm) {
                        Some(&k) => gamma[k].1.add_scaled(&c, &t.left),
                        None => {
                            index.insert(norm.clone(), gamma.len());
                            gamma.push((norm, t.left.scale(&c)));
                        }
                    }
                }
                RightFactor::Dense(d) => match dense.iter_mut().find(|(r, _)| r == d) {
                    Some((_, l)) => l.add_scaled(&t.coeff, &t.left),
                    None => dense.push((d.clone(), t.left.scale(&t.coeff))),
                },
            }
        }
        let mut terms: Vec<KronTerm> = gamma
            .into_iter()
            .filter(|(_, l)| !l.is_zero())
            .map(|(g, l)| KronTerm { coeff: Scalar::one(), left: l, right: RightFactor::Gamma(g) })
            .collect();
        terms.extend(
            dense
                .into_iter()
                .filter(|(r, l)| !l.is_zero() && !r.is_zero())
                .map(|(r, l)| KronTerm { coeff: Scalar::one(), left: l, right: RightFactor::Dense(r) }),
        );
        KronOp { terms, ..*self }
    }

    /// Exact zero test without materializing the tensor product when every
    /// right factor is a signed shift: shifts with different classes have
    /// disjoint supports, and within one class `Σ L_k ⊗ D_k P` vanishes iff
    /// `Σ_k s_k(β) L_k = 0` for every basis index `β`.
    pub fn is_zero(&self) -> bool {
        let s = self.simplified();
        let all_gamma = s.terms.iter().all(|t| matches!(t.right, RightFactor::Gamma(_)));
        if !all_gamma {
            return s.materialize().is_zero();
        }
        let mut by_class: HashMap<u32, Vec<(&GammaOp, &DenseMatrix)>> = HashMap::new();
        for t in &s.terms {
            if let RightFactor::Gamma(g) = &t.right {
                by_class.entry(g.class()).or_default().push((g, &t.left));
            }
        }
        for group in by_class.values() {
            let mut patterns: HashSet<Vec<i8>> = HashSet::new();
            for b in 0..group[0].0.dim() as u32 {
                patterns.insert(group.iter().map(|(g, _)| g.sign(b)).collect());
            }
            for p in patterns {
                let mut acc = DenseMatrix::zeros(s.left_dim, s.left_dim);
                for (sign, (_, l)) in p.iter().zip(group) {
                    acc.add_scaled(&Scalar::int(*sign as i64), l);
                }
                if !acc.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn equals(&self, o: &KronOp) -> bool {
        self.check(o).is_ok() && self.sub(o).is_zero()
    }

    /// `Some(s)` if the operator equals `s·Id`.
    pub fn as_scalar_identity(&self) -> Option<Scalar> {
        let s = self.simplified();
        if s.terms.is_empty() {
            return Some(Scalar::zero());
        }
        let first = &s.terms[0];
        let c = first.left[(0, 0)].clone();
        let id = KronOp::identity_like(self.left_dim, &first.right).scale(&c);
        self.equals(&id).then_some(c)
    }

    /// `[{coeff, left, right}]` with `right` either a Γ record or a matrix.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .simplified()
            .terms
            .iter()
            .map(|t| {
                let right = match &t.right {
                    RightFactor::Gamma(g) => serde_json::json!({ "gamma": g.to_json() }),
                    RightFactor::Dense(d) => serde_json::json!({ "matrix": d.to_json() }),
                };
                serde_json::json!({ "coeff": t.coeff.to_json(), "left": t.left.to_json(), "right": right })
            })
            .collect();
        serde_json::Value::Array(terms)
    }

    /// Replaces the Γ factor of the first term by one with a single sign
    /// flipped (negative controls).
    pub fn with_flipped_right_sign(&self, b: usize) -> KronOp {
        let mut out = self.clone();
        if let Some(t) = out.terms.first_mut() {
            t.right = match &t.right {
                RightFactor::Gamma(g) => RightFactor::Gamma(g.with_flipped_sign(b)),
                RightFactor::Dense(d) => {
                    let mut d = d.clone();
                    let (r, c) = (0..d.rows())
                        .flat_map(|i| (0..d.cols()).map(move |j| (i, j)))
                        .find(|&(i, j)| !d[(i, j)].is_zero())
                        .unwrap_or((0, 0));
                    d[(r, c)] = -&d[(r, c)];
                    RightFactor::Dense(d)
                }
            };
        }
        out
    }

    /// Negates one entry of the left factor of the first term.
    pub fn with_flipped_left_entry(&self, row: usize, col: usize) -> KronOp {
        let mut out = self.clone();
        if let Some(t) = out.terms.first_mut() {
            t.left[(row, col)] = -&t.left[(row, col)];
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::CocycleTable;
    use crate::diagram::parse_gcm;

    fn dense(rows: &[Vec<i64>]) -> DenseMatrix {
        DenseMatrix::from_i64(rows)
    }

    #[test]
    fn cross_factors_commute() {
        let a = dense(&[vec![1, 2], vec![3, 4]]);
        let b = dense(&[vec![0, 1], vec![5, -2]]);
        let x = KronOp::single(Scalar::one(), a, RightFactor::Dense(DenseMatrix::identity(2)));
        let y = KronOp::single(Scalar::one(), DenseMatrix::identity(2), RightFactor::Dense(b));
        assert!(x.commutator(&y).is_zero());
    }

    #[test]
    fn commutator_matches_dense() {
        let t = CocycleTable::new(&parse_gcm("A2").unwrap()).unwrap();
        let a = KronOp::single(Scalar::frac(1, 2), dense(&[vec![1, 2], vec![0, -1]]), RightFactor::Gamma(t.gamma_simple(0)));
        let b = KronOp::single(Scalar::int(3), dense(&[vec![0, 1], vec![1, 1]]), RightFactor::Gamma(t.gamma_simple(1)));
        let c = a.commutator(&b);
        assert!(c.terms().len() <= 2);
        assert_eq!(c.materialize(), a.materialize().commutator(&b.materialize()));
        assert!(!c.is_zero());
    }

    #[test]
    fn same_class_different_signs() {
        let t = CocycleTable::new(&parse_gcm("A2").unwrap()).unwrap();
        let g = t.gamma_simple(0);
        let r = t.right_mult(1);
        let x = KronOp::single(Scalar::one(), DenseMatrix::identity(1), RightFactor::Gamma(g.clone()));
        let y = KronOp::single(Scalar::one(), DenseMatrix::identity(1), RightFactor::Gamma(r));
        let diff = x.sub(&y);
        assert_eq!(diff.is_zero(), diff.materialize().is_zero());
    }
}
