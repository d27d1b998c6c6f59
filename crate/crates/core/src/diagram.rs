//! Generalized Cartan matrices: presets, a small text DSL, validation and
//! realizations.
//!
//! ```text
//! rank = 4
//! edges = 1-2, 2-3, 3-4, 4-1, 1-3, 2-4
//! ```
//!
//! Node indices are 1-based in text and 0-based everywhere else.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::forms::{signature, Signature};
use crate::exactnum::{DenseMatrix, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Gcm {
    n: usize,
    a: Vec<Vec<i64>>,
    simply_laced: bool,
    edges: BTreeSet<(usize, usize)>,
}

impl Gcm {
    /// Builds a GCM from a raw integer matrix, rejecting anything that
    /// violates the defining conditions.
    pub fn from_matrix(a: Vec<Vec<i64>>) -> Result<Gcm> {
        let v = matrix_violations(&a);
        if !v.is_empty() {
            return Err(Error::Validation(v.join("; ")));
        }
        Ok(Self::build(a))
    }

    fn build(a: Vec<Vec<i64>>) -> Gcm {
        let n = a.len();
        let mut edges = BTreeSet::new();
        let mut simply_laced = true;
        for i in 0..n {
            for j in 0..n {
                if i != j && a[i][j] != 0 {
                    if i < j {
                        edges.insert((i, j));
                    }
                    if a[i][j] != -1 {
                        simply_laced = false;
                    }
                }
            }
        }
        Gcm { n, a, simply_laced, edges }
    }

    /// Simply-laced GCM of a graph on `n` nodes (0-based edge list).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Gcm> {
        if n == 0 {
            return Err(Error::Validation("rank must be positive".into()));
        }
        let mut a = vec![vec![0i64; n]; n];
        let mut seen = BTreeSet::new();
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::Validation(format!(
                    "edge {}-{} out of range 1..={n}",
                    i + 1,
                    j + 1
                )));
            }
            if i == j {
                return Err(Error::Validation(format!("self-loop at node {}", i + 1)));
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::Validation(format!("duplicate edge {}-{}", i + 1, j + 1)));
            }
            a[i][j] = -1;
            a[j][i] = -1;
        }
        Ok(Self::build(a))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn is_simply_laced(&self) -> bool {
        self.simply_laced
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.a[i][j] != 0
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.n {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index: i + 1, n: self.n })
        }
    }

    pub fn require_simply_laced(&self) -> Result<()> {
        if self.simply_laced {
            Ok(())
        } else {
            Err(Error::Unsupported("diagram is not simply-laced".into()))
        }
    }

    pub fn cartan(&self) -> DenseMatrix {
        DenseMatrix::from_i64(&self.a)
    }

    /// Rank of the Cartan matrix over ℚ.
    pub fn matrix_rank(&self) -> usize {
        self.cartan().rank()
    }

    pub fn is_regular(&self) -> bool {
        self.matrix_rank() == self.n
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in 0..self.n {
                if !seen[j] && self.is_edge(i, j) {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|x| x)
    }

    /// Canonical DSL text; only simply-laced matrices have one.
    pub fn render(&self) -> Result<String> {
        self.require_simply_laced()?;
        let e: Vec<String> = self.edges.iter().map(|(i, j)| format!("{}-{}", i + 1, j + 1)).collect();
        Ok(format!("rank = {}\nedges = {}", self.n, e.join(", ")))
    }
}

impl fmt::Display for Gcm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.a {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:>2}")).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

fn matrix_violations(a: &[Vec<i64>]) -> Vec<String> {
    let n = a.len();
    let mut v = Vec::new();
    if n == 0 {
        v.push("empty matrix".to_string());
        return v;
    }
    if a.iter().any(|r| r.len() != n) {
        v.push("matrix is not square".to_string());
        return v;
    }
    for i in 0..n {
        if a[i][i] != 2 {
            v.push(format!("a[{0}][{0}] = {1}, expected 2", i + 1, a[i][i]));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            if a[i][j] > 0 {
                v.push(format!("a[{}][{}] = {} is positive", i + 1, j + 1, a[i][j]));
            }
            if (a[i][j] == 0) != (a[j][i] == 0) {
                v.push(format!("zero pattern not symmetric at ({}, {})", i + 1, j + 1));
            }
        }
    }
    v
}

fn chain(n: usize) -> Vec<(usize, usize)> {
    (1..n).map(|i| (i - 1, i)).collect()
}

/// Preset names, case-insensitive: `An`, `Dn`, `E6`..`E10`, `cycle<k>`,
/// `K<k>`, plus the non-simply-laced `Bn`, `Cn`, `F4`, `G2` (which parse
/// but are rejected by every representation-theoretic operation).
pub fn preset(name: &str) -> Result<Gcm> {
    let lower = name.trim().to_ascii_lowercase();
    let split = lower.find(|c: char| c.is_ascii_digit()).unwrap_or(lower.len());
    let (head, tail) = lower.split_at(split);
    let unknown = || Error::Parse(format!("unknown preset '{name}'"));
    let k: usize = tail.parse().map_err(|_| unknown())?;
    if k == 0 {
        return Err(unknown());
    }
    match head {
        "a" => Gcm::from_edges(k, &chain(k)),
        "d" if k >= 3 => {
            let mut e = chain(k - 1);
            e.push((k - 3, k - 1));
            Gcm::from_edges(k, &e)
        }
        "e" if (6..=10).contains(&k) => {
            // Bourbaki labels: 1-3-4-5-...-k with 2 attached to 4
            let mut e = vec![(0, 2), (1, 3)];
            e.extend((2..k - 1).map(|i| (i, i + 1)));
            Gcm::from_edges(k, &e)
        }
        "cycle" if k >= 3 => {
            let mut e = chain(k);
            e.push((k - 1, 0));
            Gcm::from_edges(k, &e)
        }
        "k" => {
            let e: Vec<_> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
            Gcm::from_edges(k, &e)
        }
        "b" | "c" if k >= 2 => {
            let mut a = vec![vec![0i64; k]; k];
            for i in 0..k {
                a[i][i] = 2;
                if i + 1 < k {
                    a[i][i + 1] = -1;
                    a[i + 1][i] = -1;
                }
            }
            if head == "b" {
                a[k - 1][k - 2] = -2;
            } else {
                a[k - 2][k - 1] = -2;
            }
            Gcm::from_matrix(a)
        }
        "g" if k == 2 => Gcm::from_matrix(vec![vec![2, -1], vec![-3, 2]]),
        "f" if k == 4 => Gcm::from_matrix(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -2, 0],
            vec![0, -1, 2, -1],
            vec![0, 0, -1, 2],
        ]),
        _ => Err(unknown()),
    }
}

/// Parses a preset name or a DSL block.
pub fn parse_gcm(text: &str) -> Result<Gcm> {
    let t = text.trim();
    if !t.contains('=') {
        return preset(t);
    }
    let mut rank: Option<usize> = None;
    let mut edges: Option<Vec<(usize, usize)>> = None;
    for line in t.split(['\n', ';']) {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected 'key = value', got '{line}'")))?;
        match key.trim().to_ascii_lowercase().as_str() {
            "rank" => {
                if rank.is_some() {
                    return Err(Error::Parse("rank given twice".into()));
                }
                let r: usize = value
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad rank '{}'", value.trim())))?;
                rank = Some(r);
            }
            "edges" => {
                if edges.is_some() {
                    return Err(Error::Parse("edges given twice".into()));
                }
                let mut e = Vec::new();
                for tok in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    let (i, j) = tok
                        .split_once('-')
                        .ok_or_else(|| Error::Parse(format!("bad edge '{tok}'")))?;
                    let p = |s: &str| -> Result<usize> {
                        s.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad edge '{tok}'")))
                    };
                    let (i, j) = (p(i)?, p(j)?);
                    if i == 0 || j == 0 {
                        return Err(Error::Validation(format!("edge '{tok}': indices are 1-based")));
                    }
                    e.push((i - 1, j - 1));
                }
                edges = Some(e);
            }
            other => return Err(Error::Parse(format!("unknown key '{other}'"))),
        }
    }
    let rank = rank.ok_or_else(|| Error::Parse("missing 'rank'".into()))?;
    Gcm::from_edges(rank, &edges.unwrap_or_default())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeClass {
    Finite,
    Affine,
    Indefinite,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
    pub indecomposable: bool,
    pub type_class: Option<TypeClass>,
    pub det: Option<String>,
    pub signature: Option<Signature>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Symmetrization `B` with `A = D·B`, `D` positive diagonal, if one exists.
fn symmetrize(a: &[Vec<i64>]) -> Option<DenseMatrix> {
    let n = a.len();
    let mut d: Vec<Option<Scalar>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Scalar::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                // d_i b_ij = a_ij, d_j b_ji = a_ji, b_ij = b_ji
                let dj = &d[i].clone().unwrap() * &Scalar::frac(a[j][i], a[i][j]);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(x) if *x != dj => return None,
                    _ => {}
                }
            }
        }
    }
    let d: Vec<Scalar> = d.into_iter().map(Option::unwrap).collect();
    Some(DenseMatrix::from_fn(n, n, |i, j| &Scalar::int(a[i][j]) / &d[i]))
}

pub fn validate(g: &Gcm) -> ValidationReport {
    validate_matrix(&g.a)
}

pub fn validate_matrix(a: &[Vec<i64>]) -> ValidationReport {
    let violations = matrix_violations(a);
    if !violations.is_empty() {
        return ValidationReport { violations, indecomposable: false, type_class: None, det: None, signature: None };
    }
    let g = Gcm::build(a.to_vec());
    let det = g.cartan().det();
    let sym = symmetrize(a);
    let sig = sym.as_ref().and_then(|b| signature(b).ok());
    let type_class = sig.map(|s| {
        if s.neg > 0 {
            TypeClass::Indefinite
        } else if s.zero > 0 {
            TypeClass::Affine
        } else {
            TypeClass::Finite
        }
    });
    ValidationReport {
        violations,
        indecomposable: g.is_connected(),
        type_class,
        det: Some(det.to_string()),
        signature: sig,
    }
}

/// A realization of the Cartan matrix: `h*` with basis
/// `α_1..α_n, λ_1..λ_{n-l}` and the invariant form on it.
#[derive(Clone, Debug)]
pub struct Realization {
    pub dim: usize,
    pub n: usize,
    pub gram: DenseMatrix,
    /// Coordinates of the simple roots in the basis above.
    pub simple_roots: Vec<Vec<Scalar>>,
    /// Coroots as functionals on `h*`, in dual-basis coordinates.
    pub simple_coroots: Vec<Vec<Scalar>>,
}

impl Realization {
    pub fn is_regular(&self) -> bool {
        self.dim == self.n
    }

    /// Embeds a root lattice vector into `h*`.
    pub fn embed(&self, coords: &[i64]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        for (i, &c) in coords.iter().enumerate() {
            v[i] = Scalar::int(c);
        }
        v
    }
}

pub fn realization(g: &Gcm) -> Result<Realization> {
    g.require_simply_laced()?;
    let n = g.n;
    let cartan = g.cartan();
    // greedy row basis; for symmetric A the matching principal minor is invertible
    let mut basis_rows: Vec<usize> = Vec::new();
    for i in 0..n {
        let mut trial = basis_rows.clone();
        trial.push(i);
        let sub = cartan.submatrix(&trial, &(0..n).collect::<Vec<_>>());
        if sub.rank() == trial.len() {
            basis_rows = trial;
        }
    }
    let extra: Vec<usize> = (0..n).filter(|i| !basis_rows.contains(i)).collect();
    let d = n + extra.len();
    let gram = DenseMatrix::from_fn(d, d, |i, j| {
        if i < n && j < n {
            Scalar::int(g.a[i][j])
        } else if i < n && j >= n {
            Scalar::int((extra[j - n] == i) as i64)
        } else if i >= n && j < n {
            Scalar::int((extra[i - n] == j) as i64)
        } else {
            Scalar::zero()
        }
    });
    if gram.rank() != d {
        return Err(Error::Inconsistent("realization gram is degenerate".into()));
    }
    let simple_roots = (0..n)
        .map(|i| (0..d).map(|k| Scalar::int((k == i) as i64)).collect())
        .collect();
    let simple_coroots = (0..n).map(|i| gram.column(i)).collect();
    Ok(Realization { dim: d, n, gram, simple_roots, simple_coroots })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_preset() {
        let g = parse_gcm("A2").unwrap();
        assert_eq!(g.matrix(), &[vec![2, -1], vec![-1, 2]]);
    }

    #[test]
    fn k4_from_dsl_matches_preset() {
        let g = parse_gcm("rank=4\nedges=1-2,2-3,3-4,4-1,1-3,2-4").unwrap();
        assert_eq!(g, parse_gcm("k4").unwrap());
        assert!(g.matrix().iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == if i == j { 2 } else { -1 })));
    }

    #[test]
    fn dsl_errors() {
        assert!(matches!(parse_gcm("rank=2\nedges=1-1"), Err(Error::Validation(_))));
        assert!(matches!(parse_gcm("rank=2\nedges=1-3"), Err(Error::Validation(_))));
        assert!(matches!(parse_gcm("rank=3\nedges=1-2,2-1"), Err(Error::Validation(_))));
        assert!(matches!(parse_gcm("rank=x"), Err(Error::Parse(_))));
        assert!(matches!(parse_gcm("Q7"), Err(Error::Parse(_))));
    }

    #[test]
    fn presets_have_expected_shapes() {
        let e8 = preset("E8").unwrap();
        assert_eq!(e8.edges().len(), 7);
        assert_eq!(e8.cartan().det(), Scalar::one());
        assert_eq!(preset("E9").unwrap().cartan().det(), Scalar::zero());
        assert_eq!(preset("E10").unwrap().cartan().det(), Scalar::int(-1));
        assert_eq!(preset("D4").unwrap().cartan().det(), Scalar::int(4));
        assert!(!preset("B2").unwrap().is_simply_laced());
    }

    #[test]
    fn validation_classes() {
        let r = validate(&parse_gcm("A2").unwrap());
        assert!(r.is_valid() && r.indecomposable);
        assert_eq!(r.type_class, Some(TypeClass::Finite));
        let r = validate(&parse_gcm("cycle3").unwrap());
        assert_eq!(r.type_class, Some(TypeClass::Affine));
        assert_eq!(r.det.as_deref(), Some("0"));
        assert_eq!(validate(&parse_gcm("K4").unwrap()).type_class, Some(TypeClass::Indefinite));
        assert_eq!(validate(&parse_gcm("B3").unwrap()).type_class, Some(TypeClass::Finite));
        let bad = validate_matrix(&[vec![2, 1], vec![0, 2]]);
        assert_eq!(bad.violations.len(), 3);
    }

    #[test]
    fn singular_realization_is_nondegenerate() {
        let g = parse_gcm("cycle3").unwrap();
        let r = realization(&g).unwrap();
        assert_eq!(r.dim, 4);
        assert_eq!(r.gram.rank(), 4);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(r.gram[(i, j)], Scalar::int(g.entry(i, j)));
            }
        }
        let k4 = realization(&parse_gcm("K4").unwrap()).unwrap();
        assert_eq!(k4.dim, 4);
        assert_eq!(k4.gram, parse_gcm("K4").unwrap().cartan());
    }

    #[test]
    fn coroots_pair_to_cartan_entries() {
        let g = parse_gcm("E9").unwrap();
        let r = realization(&g).unwrap();
        for i in 0..g.rank() {
            for j in 0..g.rank() {
                let pairing: Scalar = r.simple_roots[j]
                    .iter()
                    .zip(&r.simple_coroots[i])
                    .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b));
                assert_eq!(pairing, Scalar::int(g.entry(i, j)));
            }
        }
    }
}
