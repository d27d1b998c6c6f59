//! Root lattice vectors, simple reflections and real-root enumeration.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::diagram::Gcm;
use crate::error::{Error, Result};

/// Element of the root lattice in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVec(pub Vec<i64>);

impl RootVec {
    pub fn zero(n: usize) -> Self {
        RootVec(vec![0; n])
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVec(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&x| x >= 0)
    }

    pub fn norm(&self, g: &Gcm) -> i64 {
        inner(g, self, self)
    }

    pub fn is_real(&self, g: &Gcm) -> bool {
        self.norm(g) == 2
    }

    pub fn is_isotropic(&self, g: &Gcm) -> bool {
        !self.is_zero() && self.norm(g) == 0
    }

    /// Bitmask of the coordinates mod 2 (bit `i` = coordinate `i`).
    pub fn class(&self) -> u32 {
        self.0
            .iter()
            .enumerate()
            .fold(0, |m, (i, &c)| if c.rem_euclid(2) == 1 { m | (1 << i) } else { m })
    }

    pub fn add(&self, o: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, o: &RootVec) -> RootVec {
        RootVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> RootVec {
        RootVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn in_2q(&self) -> bool {
        self.0.iter().all(|c| c % 2 == 0)
    }
}

impl fmt::Display for RootVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl FromStr for RootVec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v: std::result::Result<Vec<i64>, _> = s.split(',').map(|t| t.trim().parse::<i64>()).collect();
        v.map(RootVec).map_err(|_| Error::Parse(format!("bad root vector '{s}'")))
    }
}

/// A word `[w_1, …, w_k]` (0-based letters) standing for `s_{w_1} ∘ … ∘ s_{w_k}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn reversed(&self) -> WeylWord {
        WeylWord(self.0.iter().rev().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", s.join(","))
    }
}

fn check_len(g: &Gcm, a: &RootVec) -> Result<()> {
    if a.len() != g.rank() {
        return Err(Error::Dimension(format!("root vector of length {} for rank {}", a.len(), g.rank())));
    }
    Ok(())
}

pub fn inner(g: &Gcm, a: &RootVec, b: &RootVec) -> i64 {
    let n = g.rank();
    let mut s = 0;
    for i in 0..n {
        if a.0[i] == 0 {
            continue;
        }
        for j in 0..n {
            s += a.0[i] * g.entry(i, j) * b.0[j];
        }
    }
    s
}

/// `(a|α_i)`, which for simply-laced diagrams is `a(α_i^∨)`.
pub fn pair_simple(g: &Gcm, a: &RootVec, i: usize) -> i64 {
    (0..g.rank()).map(|j| g.entry(i, j) * a.0[j]).sum()
}

pub fn reflect(g: &Gcm, i: usize, a: &RootVec) -> Result<RootVec> {
    g.check_index(i)?;
    check_len(g, a)?;
    let mut out = a.clone();
    out.0[i] -= pair_simple(g, a, i);
    Ok(out)
}

pub fn apply_word(g: &Gcm, w: &WeylWord, a: &RootVec) -> Result<RootVec> {
    let mut v = a.clone();
    for &i in w.0.iter().rev() {
        v = reflect(g, i, &v)?;
    }
    Ok(v)
}

/// Positive real roots up to the height bound, sorted by height and then by
/// descending coordinates (so simple roots come out as α_1, α_2, …).
pub fn real_roots(g: &Gcm, max_height: i64) -> Vec<RootVec> {
    let n = g.rank();
    let mut seen: HashSet<RootVec> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let s = RootVec::simple(n, i);
        seen.insert(s.clone());
        queue.push_back(s);
    }
    while let Some(r) = queue.pop_front() {
        for j in 0..n {
            let p = pair_simple(g, &r, j);
            if p == 0 {
                continue;
            }
            let mut t = r.clone();
            t.0[j] -= p;
            if t.is_positive() && t.height() <= max_height && !seen.contains(&t) {
                seen.insert(t.clone());
                queue.push_back(t);
            }
        }
    }
    let mut out: Vec<RootVec> = seen.into_iter().filter(|r| r.height() <= max_height).collect();
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.0.cmp(&a.0)));
    out
}

pub fn real_root_set(g: &Gcm, max_height: i64) -> BTreeSet<RootVec> {
    real_roots(g, max_height).into_iter().collect()
}

/// Descent to a simple root: returns `(w, i)` with `apply_word(w, α_i) = a`.
pub fn word_to_simple(g: &Gcm, a: &RootVec) -> Result<(WeylWord, usize)> {
    check_len(g, a)?;
    if !a.is_positive() || a.norm(g) != 2 {
        return Err(Error::NotPositiveRealRoot(a.to_string()));
    }
    let mut cur = a.clone();
    let mut letters = Vec::new();
    while cur.height() > 1 {
        let j = (0..g.rank())
            .find(|&j| pair_simple(g, &cur, j) > 0)
            .ok_or_else(|| Error::NotPositiveRealRoot(a.to_string()))?;
        cur = reflect(g, j, &cur)?;
        if !cur.is_positive() {
            return Err(Error::NotPositiveRealRoot(a.to_string()));
        }
        letters.push(j);
    }
    let i = cur.0.iter().position(|&x| x == 1).expect("height-one positive vector");
    // s_{j_k}⋯s_{j_1} a = α_i, hence a = s_{j_1}⋯s_{j_k} α_i
    Ok((WeylWord(letters), i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_gcm;

    fn rv(s: &str) -> RootVec {
        s.parse().unwrap()
    }

    #[test]
    fn reflections() {
        let a2 = parse_gcm("A2").unwrap();
        assert_eq!(reflect(&a2, 0, &rv("0,1")).unwrap(), rv("1,1"));
        assert_eq!(reflect(&a2, 1, &rv("0,1")).unwrap(), rv("0,-1"));
        let k4 = parse_gcm("K4").unwrap();
        assert_eq!(reflect(&k4, 1, &rv("1,0,1,0")).unwrap(), rv("1,2,1,0"));
        assert!(reflect(&k4, 4, &rv("1,0,1,0")).is_err());
    }

    #[test]
    fn words() {
        let a2 = parse_gcm("A2").unwrap();
        assert_eq!(apply_word(&a2, &WeylWord(vec![0, 1]), &rv("1,0")).unwrap(), rv("0,1"));
        assert_eq!(apply_word(&a2, &WeylWord(vec![]), &rv("3,5")).unwrap(), rv("3,5"));
        assert_eq!(apply_word(&a2, &WeylWord(vec![1, 1]), &rv("3,5")).unwrap(), rv("3,5"));
    }

    #[test]
    fn root_enumeration() {
        let a2 = parse_gcm("A2").unwrap();
        assert_eq!(real_roots(&a2, 2), vec![rv("1,0"), rv("0,1"), rv("1,1")]);
        let c3 = parse_gcm("cycle3").unwrap();
        let r = real_root_set(&c3, 3);
        for s in ["1,1,0", "0,1,1", "1,0,1"] {
            assert!(r.contains(&rv(s)));
        }
        assert!(!r.contains(&rv("1,1,1")));
        assert_eq!(real_roots(&parse_gcm("K4").unwrap(), 1).len(), 4);
        assert_eq!(real_roots(&parse_gcm("E8").unwrap(), 100).len(), 120);
        assert_eq!(real_roots(&parse_gcm("D4").unwrap(), 100).len(), 12);
    }

    #[test]
    fn descent() {
        let a2 = parse_gcm("A2").unwrap();
        assert_eq!(word_to_simple(&a2, &rv("1,1")).unwrap(), (WeylWord(vec![0]), 1));
        assert_eq!(word_to_simple(&a2, &rv("0,1")).unwrap(), (WeylWord(vec![]), 1));
        let c3 = parse_gcm("cycle3").unwrap();
        let a = rv("3,2,2");
        let (w, i) = word_to_simple(&c3, &a).unwrap();
        assert_eq!(apply_word(&c3, &w, &RootVec::simple(3, i)).unwrap(), a);
        assert!(word_to_simple(&c3, &rv("1,1,1")).is_err());
    }

    #[test]
    fn delta_is_orthogonal_to_simple_roots() {
        let c3 = parse_gcm("cycle3").unwrap();
        for i in 0..3 {
            assert_eq!(inner(&c3, &rv("1,1,1"), &RootVec::simple(3, i)), 0);
        }
        assert_eq!(inner(&parse_gcm("A2").unwrap(), &rv("1,0"), &rv("0,1")), -1);
    }
}
