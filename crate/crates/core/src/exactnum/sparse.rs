//! Sparse exact elimination for large homogeneous systems (commutants) and
//! dense rank modulo a prime (density certificates).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::scalar::{Scalar, Q};

/// Nonzero entries sorted by column.
pub type SparseRow = Vec<(usize, Scalar)>;

/// `a − s·b` on sorted sparse rows.
fn sub_scaled(a: &SparseRow, s: &Scalar, b: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |x| x.0);
        let cb = b.get(j).map_or(usize::MAX, |x| x.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, -&(s * &b[j].1)));
            j += 1;
        } else {
            let v = &a[i].1 - &(s * &b[j].1);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row echelon form built one equation at a time. Pivot rows are scaled to
/// a leading 1 and only reduced below their pivot.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn nullity(&self) -> usize {
        self.ncols - self.rank()
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        row.retain(|(_, v)| !v.is_zero());
        row.sort_by_key(|x| x.0);
        while let Some((lead, c)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => row = sub_scaled(&row, &c, p),
                None => {
                    let inv = c.inv().expect("nonzero pivot");
                    let row = row.into_iter().map(|(k, v)| (k, &v * &inv)).collect();
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
        false
    }

    /// Basis of the solution space of the inserted homogeneous system, one
    /// vector per free column with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Scalar::zero(); self.ncols];
                x[f] = Scalar::one();
                for (&p, row) in self.pivots.iter().rev() {
                    let mut s = Scalar::zero();
                    for (c, v) in row.iter().skip(1) {
                        if !x[*c].is_zero() {
                            s += &(v * &x[*c]);
                        }
                    }
                    x[p] = -&s;
                }
                x
            })
            .collect()
    }
}

pub const MOD_P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn invmod(a: u64) -> u64 {
    powmod(a, MOD_P - 2)
}

fn bigint_mod(x: &BigInt) -> u64 {
    let p = BigInt::from(MOD_P);
    let r = x.mod_floor(&p);
    r.to_u64().expect("reduced")
}

/// Reduction of a rational modulo `MOD_P`; `None` if the denominator vanishes.
pub fn reduce_q(x: &Q) -> Option<u64> {
    let d = bigint_mod(x.denom());
    if d == 0 {
        return None;
    }
    let n = bigint_mod(x.numer());
    Some(mulmod(n, invmod(d)))
}

/// Row echelon basis over `F_p` for dense vectors, used to grow spans.
#[derive(Clone, Debug)]
pub struct ModSpan {
    len: usize,
    rows: Vec<(usize, Vec<u64>)>,
}

impl ModSpan {
    pub fn new(len: usize) -> Self {
        ModSpan { len, rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds a vector; returns whether the span grew.
    pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.len);
        for (p, r) in &self.rows {
            let c = v[*p];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(r) {
                    *x = (*x + MOD_P - mulmod(c, *y)) % MOD_P;
                }
            }
        }
        let Some(p) = v.iter().position(|&x| x != 0) else { return false };
        let inv = invmod(v[p]);
        for x in v.iter_mut() {
            *x = mulmod(*x, inv);
        }
        for (_, r) in self.rows.iter_mut() {
            let c = r[p];
            if c != 0 {
                for (x, y) in r.iter_mut().zip(&v) {
                    *x = (*x + MOD_P - mulmod(c, *y)) % MOD_P;
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Dense square matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    pub n: usize,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        ModMatrix { n, data }
    }

    pub fn mul(&self, o: &ModMatrix) -> ModMatrix {
        let n = self.n;
        let mut data = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = o.data[k * n + j];
                    if b != 0 {
                        let t = &mut data[i * n + j];
                        *t = (*t + mulmod(a, b)) % MOD_P;
                    }
                }
            }
        }
        ModMatrix { n, data }
    }
}

/// Integer root candidates helper: all positive divisors of `|x|` when
/// `|x|` is small enough for trial division.
pub fn small_divisors(x: &BigInt, limit: u64) -> Option<Vec<u64>> {
    let v = x.abs().to_u64()?;
    if v == 0 || v > limit {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(d);
            if d * d != v {
                out.push(v / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Some(out)
}
