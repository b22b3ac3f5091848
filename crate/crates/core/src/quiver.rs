//! Simply-laced Cartan data, orientations, root-lattice vectors and Weyl
//! group words.
//!
//! Vertices are labelled `1..=n`. Preset numbering:
//!
//! * `A2`, `A3`, `A4`: the path `1 - 2 - ... - n`;
//! * `D4`: the trivalent vertex is `2`, with leaves `1`, `3`, `4`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// A vector in `Z^I`, used both for dimension vectors and for
/// root-lattice weights written in the basis of simple roots.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn zero(n: usize) -> Self {
        WeightVector(vec![0; n])
    }

    /// The simple root `alpha_i` (1-based label).
    pub fn simple(n: usize, i: Vertex) -> Self {
        let mut v = vec![0; n];
        v[i - 1] = 1;
        WeightVector(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Coordinate at a 1-based vertex label.
    pub fn at(&self, i: Vertex) -> i64 {
        self.0[i - 1]
    }

    pub fn scaled(&self, k: i64) -> Self {
        WeightVector(self.0.iter().map(|x| x * k).collect())
    }

    /// Letter content of a word.
    pub fn of_word(n: usize, word: &[Vertex]) -> Self {
        let mut v = vec![0; n];
        for &i in word {
            v[i - 1] += 1;
        }
        WeightVector(v)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &WeightVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Add for &WeightVector {
    type Output = WeightVector;
    fn add(self, o: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &WeightVector {
    type Output = WeightVector;
    fn sub(self, o: &WeightVector) -> WeightVector {
        WeightVector(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &WeightVector {
    type Output = WeightVector;
    fn neg(self) -> WeightVector {
        WeightVector(self.0.iter().map(|a| -a).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanDatum {
    pub name: String,
    /// Unordered edges `{i, j}` with `i < j`, 1-based.
    pub edges: Vec<(Vertex, Vertex)>,
    /// Symmetric Cartan matrix, row-major, 0-based indices.
    pub matrix: Vec<Vec<i64>>,
}

impl CartanDatum {
    /// Builds a datum from a graph and checks it is loop-free and of
    /// finite type.
    pub fn from_graph(name: &str, n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut matrix = vec![vec![0i64; n]; n];
        for i in 0..n {
            matrix[i][i] = 2;
        }
        let mut es = Vec::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidArgument(format!("edge loop at {a}")));
            }
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::BadVertex(a.max(b)));
            }
            matrix[a - 1][b - 1] -= 1;
            matrix[b - 1][a - 1] -= 1;
            es.push((a.min(b), a.max(b)));
        }
        es.sort();
        let d = CartanDatum { name: name.to_string(), edges: es, matrix };
        if !d.is_finite_type() {
            return Err(Error::InvalidArgument(format!("{name} is not of finite type")));
        }
        Ok(d)
    }

    /// Datum of a shipped preset file.
    pub fn preset(name: &str) -> Result<Self> {
        crate::presets::Preset::load(name)?.datum()
    }

    pub fn rank(&self) -> usize {
        self.matrix.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.rank()
    }

    /// Cartan entry `a_ij` for 1-based labels.
    pub fn a(&self, i: Vertex, j: Vertex) -> i64 {
        self.matrix[i - 1][j - 1]
    }

    pub fn adjacent(&self, i: Vertex, j: Vertex) -> bool {
        i != j && self.a(i, j) != 0
    }

    /// All leading principal minors positive.
    pub fn is_finite_type(&self) -> bool {
        let n = self.rank();
        let m: Vec<Vec<BigRational>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
            .collect();
        (1..=n).all(|k| {
            let sub: Vec<Vec<BigRational>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
            det(sub).is_positive()
        })
    }

    pub fn check_vertex(&self, i: Vertex) -> Result<()> {
        if i == 0 || i > self.rank() {
            Err(Error::BadVertex(i))
        } else {
            Ok(())
        }
    }

    /// The Cartan pairing `(nu, mu) = sum nu_i a_ij mu_j`.
    pub fn pairing(&self, nu: &WeightVector, mu: &WeightVector) -> Result<i64> {
        let n = self.rank();
        if nu.rank() != n || mu.rank() != n {
            return Err(Error::DatumMismatch);
        }
        Ok(self.pair(nu, mu))
    }

    /// Unchecked pairing for internal hot paths.
    pub(crate) fn pair(&self, nu: &WeightVector, mu: &WeightVector) -> i64 {
        let mut s = 0;
        for (i, row) in self.matrix.iter().enumerate() {
            if nu.0[i] == 0 {
                continue;
            }
            let r: i64 = row.iter().zip(&mu.0).map(|(a, m)| a * m).sum();
            s += nu.0[i] * r;
        }
        s
    }

    /// `(alpha_i, nu)`.
    pub(crate) fn pair_simple(&self, i: Vertex, nu: &WeightVector) -> i64 {
        self.matrix[i - 1].iter().zip(&nu.0).map(|(a, m)| a * m).sum()
    }

    /// The simple reflection `s_i(nu) = nu - (alpha_i, nu) alpha_i`.
    pub fn reflect(&self, i: Vertex, nu: &WeightVector) -> WeightVector {
        let c = self.pair_simple(i, nu);
        let mut out = nu.clone();
        out.0[i - 1] -= c;
        out
    }

    pub fn simple_root(&self, i: Vertex) -> WeightVector {
        WeightVector::simple(self.rank(), i)
    }

    /// Positive roots, sorted by height then lexicographically.
    pub fn positive_roots(&self) -> Vec<WeightVector> {
        let mut seen: BTreeSet<WeightVector> = BTreeSet::new();
        let mut queue: VecDeque<WeightVector> = self.vertices().map(|i| self.simple_root(i)).collect();
        while let Some(r) = queue.pop_front() {
            if !r.is_nonnegative() || !seen.insert(r.clone()) {
                continue;
            }
            for i in self.vertices() {
                let s = self.reflect(i, &r);
                if s.is_nonnegative() && !s.is_zero() && !seen.contains(&s) {
                    queue.push_back(s);
                }
            }
        }
        let mut v: Vec<_> = seen.into_iter().collect();
        v.sort_by(|a, b| a.height().cmp(&b.height()).then(a.cmp(b)));
        v
    }

    /// Acts by `s_{i_1} ... s_{i_l}` on `nu` (rightmost letter first).
    pub fn weyl_act(&self, word: &WeylWord, nu: &WeightVector) -> WeightVector {
        let mut v = nu.clone();
        for &i in word.letters.iter().rev() {
            v = self.reflect(i, &v);
        }
        v
    }

    /// A canonical key for the Weyl element represented by a word: the
    /// images of all simple roots.
    pub fn element_key(&self, word: &[Vertex]) -> Vec<WeightVector> {
        let w = WeylWord::new(word.to_vec());
        self.vertices().map(|i| self.weyl_act(&w, &self.simple_root(i))).collect()
    }

    /// All Weyl group elements, each with its shortlex-minimal reduced word,
    /// in breadth-first (length, then shortlex) order.
    pub fn weyl_elements(&self) -> Vec<WeylWord> {
        let mut seen: HashMap<Vec<WeightVector>, ()> = HashMap::new();
        let mut out = Vec::new();
        let mut frontier = vec![Vec::<Vertex>::new()];
        seen.insert(self.element_key(&[]), ());
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for w in frontier {
                out.push(WeylWord::new(w.clone()));
                for i in self.vertices() {
                    let mut w2 = w.clone();
                    w2.push(i);
                    let key = self.element_key(&w2);
                    if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                        e.insert(());
                        next.push(w2);
                    }
                }
            }
            next.sort();
            frontier = next;
        }
        out
    }

    /// Length of the Weyl element represented by `word`: the number of
    /// positive roots it sends to negative roots.
    pub fn element_length(&self, word: &[Vertex]) -> usize {
        let w = WeylWord::new(word.to_vec());
        self.positive_roots()
            .iter()
            .filter(|r| !self.weyl_act(&w, r).is_nonnegative())
            .count()
    }

    pub fn is_reduced(&self, word: &WeylWord) -> bool {
        word.letters.len() == self.element_length(&word.letters)
    }

    /// `beta_p = s_{i_1} ... s_{i_(p-1)} (alpha_{i_p})`.
    pub fn inversion_sequence(&self, word: &WeylWord) -> Result<Vec<WeightVector>> {
        for &i in &word.letters {
            self.check_vertex(i)?;
        }
        let mut out = Vec::with_capacity(word.len());
        for p in 0..word.len() {
            let prefix = WeylWord::new(word.letters[..p].to_vec());
            let beta = self.weyl_act(&prefix, &self.simple_root(word.letters[p]));
            if !beta.is_nonnegative() {
                return Err(Error::NotReduced(word.letters.clone()));
            }
            out.push(beta);
        }
        Ok(out)
    }

    /// All reduced words of the element represented by `word`.
    pub fn reduced_words(&self, word: &WeylWord) -> Vec<WeylWord> {
        let target = self.element_key(&word.letters);
        let len = self.element_length(&word.letters);
        let mut out = Vec::new();
        let mut stack: Vec<Vec<Vertex>> = vec![Vec::new()];
        while let Some(w) = stack.pop() {
            if w.len() == len {
                if self.element_key(&w) == target {
                    out.push(WeylWord::new(w));
                }
                continue;
            }
            for i in self.vertices() {
                let mut w2 = w.clone();
                w2.push(i);
                // prefix must be reduced and a prefix of some reduced word of target:
                // l(prefix^-1 target) = len - |prefix|
                if self.element_length(&w2) != w2.len() {
                    continue;
                }
                let mut rest: Vec<Vertex> = w2.iter().rev().copied().collect();
                rest.extend_from_slice(&word.letters);
                if self.element_length(&rest) == len - w2.len() {
                    stack.push(w2);
                }
            }
        }
        out.sort();
        out
    }

    /// A reduced word for the longest element: the lexicographically
    /// smallest one found by greedy extension.
    pub fn longest_word(&self) -> WeylWord {
        let n_pos = self.positive_roots().len();
        let mut w: Vec<Vertex> = Vec::new();
        while w.len() < n_pos {
            let i = self
                .vertices()
                .find(|&i| {
                    let mut w2 = w.clone();
                    w2.push(i);
                    self.element_length(&w2) == w2.len()
                })
                .expect("longest element not reached");
            w.push(i);
        }
        WeylWord::new(w)
    }
}

fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut d = BigRational::from_integer(1.into());
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for r in c + 1..n {
            let f = &m[r][c] / &m[c][c];
            for k in c..n {
                let t = &f * &m[c][k];
                m[r][k] -= t;
            }
        }
    }
    d
}

/// An oriented arrow `src -> dst`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub src: Vertex,
    pub dst: Vertex,
}

impl Arrow {
    pub fn reversed(self) -> Arrow {
        Arrow { src: self.dst, dst: self.src }
    }

    /// Label used in module JSON, e.g. `"1>2"`.
    pub fn label(&self) -> String {
        format!("{}>{}", self.src, self.dst)
    }

    pub fn parse(s: &str) -> Result<Arrow> {
        let (a, b) = s
            .split_once('>')
            .ok_or_else(|| Error::InvalidArgument(format!("bad arrow label {s:?}")))?;
        let p = |x: &str| x.trim().parse::<Vertex>().map_err(|e| Error::InvalidArgument(e.to_string()));
        Ok(Arrow { src: p(a)?, dst: p(b)? })
    }
}

/// A choice of orientation `Omega` of the diagram's edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orientation {
    pub omega: Vec<Arrow>,
}

impl Orientation {
    /// Orients every edge from the smaller to the larger label.
    pub fn standard(d: &CartanDatum) -> Self {
        Orientation {
            omega: d.edges.iter().map(|&(a, b)| Arrow { src: a, dst: b }).collect(),
        }
    }

    pub fn from_pairs(d: &CartanDatum, pairs: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut want: BTreeSet<(Vertex, Vertex)> = d.edges.iter().copied().collect();
        let mut omega = Vec::new();
        for &(s, t) in pairs {
            if !want.remove(&(s.min(t), s.max(t))) {
                return Err(Error::InvalidArgument(format!("({s},{t}) is not an unused edge")));
            }
            omega.push(Arrow { src: s, dst: t });
        }
        if !want.is_empty() {
            return Err(Error::InvalidArgument("orientation misses edges".into()));
        }
        Ok(Orientation { omega })
    }

    /// `H = Omega` followed by `Omega-bar`, in that order.
    pub fn all_arrows(&self) -> Vec<Arrow> {
        let mut h = self.omega.clone();
        h.extend(self.omega.iter().map(|a| a.reversed()));
        h
    }

    /// `epsilon(h) = +1` on `Omega`, `-1` on its reverse.
    pub fn sign(&self, h: Arrow) -> i64 {
        if self.omega.contains(&h) {
            1
        } else {
            -1
        }
    }
}

/// A word in the simple reflections.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylWord {
    pub letters: Vec<Vertex>,
}

impl WeylWord {
    pub fn new(letters: Vec<Vertex>) -> Self {
        WeylWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Parses `"1,2,1"`.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(WeylWord::new(Vec::new()));
        }
        s.split(',')
            .map(|x| x.trim().parse::<Vertex>().map_err(|e| Error::InvalidArgument(e.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(WeylWord::new)
    }
}

impl fmt::Debug for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.letters)
    }
}

impl fmt::Display for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// Enumerates the nonnegative integer vectors `c` with `sum c_p beta_p = nu`,
/// in lexicographic order.
pub fn kostant_solutions(roots: &[WeightVector], nu: &WeightVector) -> Vec<Vec<u32>> {
    fn rec(roots: &[WeightVector], p: usize, rest: &WeightVector, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if p == roots.len() {
            if rest.is_zero() {
                out.push(cur.clone());
            }
            return;
        }
        let r = &roots[p];
        let max = r
            .0
            .iter()
            .zip(&rest.0)
            .filter(|(a, _)| **a > 0)
            .map(|(a, b)| b / a)
            .min()
            .unwrap_or(0)
            .max(0);
        for k in 0..=max {
            cur.push(k as u32);
            let next = rest - &r.scaled(k);
            rec(roots, p + 1, &next, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if !nu.is_nonnegative() {
        return out;
    }
    rec(roots, 0, nu, &mut Vec::new(), &mut out);
    out
}

/// All weights `nu >= 0` of height exactly `h`.
pub fn weights_of_height(n: usize, h: i64) -> Vec<WeightVector> {
    fn rec(n: usize, h: i64, cur: &mut Vec<i64>, out: &mut Vec<WeightVector>) {
        if cur.len() == n - 1 {
            cur.push(h);
            out.push(WeightVector(cur.clone()));
            cur.pop();
            return;
        }
        for k in 0..=h {
            cur.push(k);
            rec(n, h - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, h, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Groups the positive roots by height, for display.
pub fn roots_by_height(d: &CartanDatum) -> BTreeMap<i64, Vec<WeightVector>> {
    let mut m: BTreeMap<i64, Vec<WeightVector>> = BTreeMap::new();
    for r in d.positive_roots() {
        m.entry(r.height()).or_default().push(r);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> CartanDatum {
        CartanDatum::preset("A2").unwrap()
    }

    fn w(v: &[usize]) -> WeylWord {
        WeylWord::new(v.to_vec())
    }

    #[test]
    fn pairing_examples() {
        let d = a2();
        let a1 = d.simple_root(1);
        let a2v = d.simple_root(2);
        assert_eq!(d.pairing(&a1, &a1).unwrap(), 2);
        assert_eq!(d.pairing(&a1, &a2v).unwrap(), -1);
        assert_eq!(d.pairing(&WeightVector(vec![2, 1]), &a2v).unwrap(), 0);
        assert_eq!(d.pairing(&WeightVector(vec![1, 0, 0]), &a1), Err(Error::DatumMismatch));
    }

    #[test]
    fn presets_are_finite_type() {
        for p in ["A2", "A3", "A4", "D4"] {
            let d = CartanDatum::preset(p).unwrap();
            assert!(d.is_finite_type());
            for i in d.vertices() {
                assert_eq!(d.a(i, i), 2);
                for j in d.vertices() {
                    assert_eq!(d.a(i, j), d.a(j, i));
                }
            }
        }
        assert!(CartanDatum::from_graph("loop", 2, &[(1, 1)]).is_err());
        // affine A2 is rejected
        assert!(CartanDatum::from_graph("A2~", 3, &[(1, 2), (2, 3), (1, 3)]).is_err());
        assert!(matches!(CartanDatum::preset("E9"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn weyl_group_orders() {
        let order = |p: &str| CartanDatum::preset(p).unwrap().weyl_elements().len();
        assert_eq!(order("A2"), 6);
        assert_eq!(order("A3"), 24);
        assert_eq!(order("A4"), 120);
        assert_eq!(order("D4"), 192);
        assert_eq!(CartanDatum::preset("D4").unwrap().positive_roots().len(), 12);
    }

    #[test]
    fn reducedness() {
        let d = a2();
        assert!(d.is_reduced(&w(&[1, 2, 1])));
        assert!(!d.is_reduced(&w(&[1, 1])));
        assert!(!d.is_reduced(&w(&[1, 2, 1, 2])));
        assert!(d.is_reduced(&w(&[])));
    }

    #[test]
    fn inversion_sequences() {
        let d = a2();
        let seq = d.inversion_sequence(&w(&[1, 2, 1])).unwrap();
        assert_eq!(seq, vec![WeightVector(vec![1, 0]), WeightVector(vec![1, 1]), WeightVector(vec![0, 1])]);
        assert!(matches!(d.inversion_sequence(&w(&[1, 1])), Err(Error::NotReduced(_))));

        let d3 = CartanDatum::preset("A3").unwrap();
        let seq = d3.inversion_sequence(&w(&[1, 2, 3, 1, 2, 1])).unwrap();
        assert_eq!(seq[0], d3.simple_root(1));
        let got: BTreeSet<_> = seq.iter().cloned().collect();
        let all: BTreeSet<_> = d3.positive_roots().into_iter().collect();
        assert_eq!(got, all);
        let total = seq.iter().fold(WeightVector::zero(3), |a, b| &a + b);
        assert_eq!(total, WeightVector(vec![3, 4, 3]));
    }

    #[test]
    fn inversion_sets_agree_across_reduced_words() {
        for p in ["A2", "A3"] {
            let d = CartanDatum::preset(p).unwrap();
            for e in d.weyl_elements() {
                let words = d.reduced_words(&e);
                assert!(!words.is_empty());
                let reference: BTreeSet<_> = d.inversion_sequence(&e).unwrap().into_iter().collect();
                for rw in &words {
                    let s: BTreeSet<_> = d.inversion_sequence(rw).unwrap().into_iter().collect();
                    assert_eq!(s, reference, "{p} {rw:?}");
                }
            }
        }
        let d3 = CartanDatum::preset("A3").unwrap();
        assert_eq!(d3.reduced_words(&d3.longest_word()).len(), 16);
    }

    #[test]
    fn kostant_counts() {
        let d = a2();
        let roots = d.inversion_sequence(&w(&[1, 2, 1])).unwrap();
        assert_eq!(kostant_solutions(&roots, &WeightVector(vec![1, 1])), vec![vec![0, 1, 0], vec![1, 0, 1]]);
        assert_eq!(kostant_solutions(&roots, &WeightVector(vec![2, 1])), vec![vec![1, 1, 0], vec![2, 0, 1]]);
        assert_eq!(kostant_solutions(&roots, &WeightVector(vec![0, 0])), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn json_roundtrip() {
        let d = CartanDatum::preset("D4").unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<CartanDatum>(&s).unwrap(), d);
        let o = Orientation::standard(&d);
        let s = serde_json::to_string(&o).unwrap();
        assert_eq!(serde_json::from_str::<Orientation>(&s).unwrap(), o);
        let ww = w(&[1, 2, 1]);
        assert_eq!(serde_json::from_str::<WeylWord>(&serde_json::to_string(&ww).unwrap()).unwrap(), ww);
    }

    #[test]
    fn orientation_partitions_doubled_arrows() {
        let d = CartanDatum::preset("A3").unwrap();
        let o = Orientation::from_pairs(&d, &[(2, 1), (2, 3)]).unwrap();
        let h = o.all_arrows();
        assert_eq!(h.len(), 4);
        for a in &o.omega {
            assert!(!o.omega.contains(&a.reversed()));
            assert_eq!(o.sign(*a), 1);
            assert_eq!(o.sign(a.reversed()), -1);
        }
        assert!(Orientation::from_pairs(&d, &[(1, 2)]).is_err());
    }

    proptest! {
        #[test]
        fn form_positive_definite(preset in prop::sample::select(vec!["A2", "A3", "A4", "D4"]),
                                  v in prop::collection::vec(-5i64..=5, 4)) {
            let d = CartanDatum::preset(preset).unwrap();
            let nu = WeightVector(v[..d.rank()].to_vec());
            if !nu.is_zero() {
                prop_assert!(d.pairing(&nu, &nu).unwrap() > 0);
            }
        }

        #[test]
        fn weyl_action_preserves_form(letters in prop::collection::vec(1usize..=3, 0..8),
                                      a in prop::collection::vec(-3i64..=3, 3),
                                      b in prop::collection::vec(-3i64..=3, 3)) {
            let d = CartanDatum::preset("A3").unwrap();
            let ww = WeylWord::new(letters);
            let (x, y) = (WeightVector(a), WeightVector(b));
            prop_assert_eq!(d.pair(&d.weyl_act(&ww, &x), &d.weyl_act(&ww, &y)), d.pair(&x, &y));
        }
    }
}
