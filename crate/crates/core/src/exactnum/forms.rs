//! Signatures of rational symmetric forms.

use super::matrix::DenseMatrix;
use super::scalar::{Q, Scalar};
use crate::error::{Error, Result};
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub pos: usize,
    pub neg: usize,
    pub zero: usize,
}

impl Signature {
    /// Signature of the tensor product of two forms.
    pub fn tensor(self, o: Signature) -> Signature {
        Signature {
            pos: self.pos * o.pos + self.neg * o.neg,
            neg: self.pos * o.neg + self.neg * o.pos,
            zero: (self.pos + self.neg + self.zero) * (o.pos + o.neg + o.zero)
                - (self.pos + self.neg) * (o.pos + o.neg),
        }
    }

    pub fn scaled(self, k: usize) -> Signature {
        Signature { pos: self.pos * k, neg: self.neg * k, zero: self.zero * k }
    }
}

/// Exact LDLᵀ by symmetric congruence. When every remaining diagonal entry
/// vanishes but an off-diagonal one does not, row/column `j` is added to `i`
/// first, which produces a nonzero pivot `2·a_ij`.
pub fn signature(m: &DenseMatrix) -> Result<Signature> {
    if !m.is_square() {
        return Err(Error::Dimension("signature of non-square matrix".into()));
    }
    let n = m.rows();
    let mut a: Vec<Vec<Q>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let x = m[(i, j)]
                .as_rational()
                .ok_or_else(|| Error::Unsupported("signature needs a rational form".into()))?;
            if m[(j, i)] != m[(i, j)] {
                return Err(Error::Dimension("form is not symmetric".into()));
            }
            row.push(x.clone());
        }
        a.push(row);
    }
    let mut active: Vec<usize> = (0..n).collect();
    let mut sig = Signature { pos: 0, neg: 0, zero: 0 };
    while !active.is_empty() {
        let piv = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match piv {
            Some(p) => p,
            None => {
                let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j))).find(|&(i, j)| i != j && !a[i][j].is_zero());
                match pair {
                    None => {
                        sig.zero += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        // e_i <- e_i + e_j
                        for k in 0..n {
                            let v = a[j][k].clone();
                            a[i][k] += v;
                        }
                        for k in 0..n {
                            let v = a[k][j].clone();
                            a[k][i] += v;
                        }
                        i
                    }
                }
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            sig.pos += 1;
        } else {
            sig.neg += 1;
        }
        active.retain(|&i| i != p);
        let prow = a[p].clone();
        for &i in &active {
            if prow[i].is_zero() {
                continue;
            }
            let f = &prow[i] / &d;
            for &j in &active {
                if !prow[j].is_zero() {
                    let v = &f * &prow[j];
                    a[i][j] -= v;
                }
            }
        }
    }
    Ok(sig)
}

/// Gram matrix `Bᵀ G B` of a form restricted to the column span of `B`.
pub fn restrict_form(g: &DenseMatrix, b: &DenseMatrix) -> DenseMatrix {
    b.transpose().mul(&g.mul(b))
}

pub fn bilinear(g: &DenseMatrix, u: &[Scalar], v: &[Scalar]) -> Scalar {
    let gv = g.mul_vec(v);
    let mut acc = Scalar::zero();
    for (a, b) in u.iter().zip(&gv) {
        if !a.is_zero() && !b.is_zero() {
            acc.add_mul(a, b);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_cartan_has_signature_three_one() {
        let mut rows = vec![vec![-1i64; 4]; 4];
        for (i, r) in rows.iter_mut().enumerate() {
            r[i] = 2;
        }
        let s = signature(&DenseMatrix::from_i64(&rows)).unwrap();
        assert_eq!(s, Signature { pos: 3, neg: 1, zero: 0 });
    }

    #[test]
    fn hyperbolic_plane_needs_off_diagonal_pivot() {
        let s = signature(&DenseMatrix::from_i64(&[vec![0, 1], vec![1, 0]])).unwrap();
        assert_eq!(s, Signature { pos: 1, neg: 1, zero: 0 });
    }

    #[test]
    fn affine_cartan_is_semidefinite() {
        let m = DenseMatrix::from_i64(&[vec![2, -1, -1], vec![-1, 2, -1], vec![-1, -1, 2]]);
        assert_eq!(signature(&m).unwrap(), Signature { pos: 2, neg: 0, zero: 1 });
    }

    #[test]
    fn tensor_rule() {
        let a = Signature { pos: 3, neg: 1, zero: 0 };
        let b = Signature { pos: 8, neg: 0, zero: 0 };
        assert_eq!(a.tensor(b), Signature { pos: 24, neg: 8, zero: 0 });
    }
}
