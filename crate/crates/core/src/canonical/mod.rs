//! Canonical and dual canonical bases, crystal labels and `B(w)`.
//!
//! Labels are PBW exponent vectors for one fixed reduced word `i0` of the
//! longest element. The canonical element `b(c)` is the bar-invariant
//! element `L(c) + sum_(c' > c) kappa_(c'c) L(c')` with `kappa` in `qZ[q]`;
//! crystal operators act on labels by applying the Kashiwara operator to
//! `L(c)` and reading the result modulo `q L(inf)`.

pub mod pbw;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::quiver::{kostant_solutions, weights_of_height, CartanDatum, Vertex, WeightVector, WeylWord};
use crate::uqfull::UqFull;
use crate::uqminus::kashiwara;
use crate::uqminus::{CoeffRepr, UqMinus, WordElement};

pub use pbw::{exponent_factorial, Exponents, PbwAlgebra, PbwElement};

/// A crystal label: PBW exponents relative to the fixed word `i0`.
pub type Label = Exponents;

/// Per-weight data of the canonical basis.
#[derive(Clone, Debug)]
pub struct CanonicalTable {
    pub weight: WeightVector,
    /// Labels in increasing lexicographic order.
    pub indices: Vec<Label>,
    /// `(L(c), L(c))`; the PBW basis is orthogonal.
    pub norms: Vec<RatFunc>,
    /// `kappa[r][s]`: coefficient of `L(indices[r])` in `b(indices[s])`.
    pub kappa: Vec<Vec<LaurentPoly>>,
    /// `dual[r][s]`: coefficient of `L(indices[r])` in `b^up(indices[s])`.
    pub dual: Vec<Vec<RatFunc>>,
}

impl CanonicalTable {
    pub fn position(&self, c: &[u32]) -> Option<usize> {
        self.indices.binary_search_by(|x| x.as_slice().cmp(c)).ok()
    }
}

/// An element of the dual canonical basis expansion: coefficients on
/// `b^up(label)` within one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualElement {
    pub weight: WeightVector,
    pub coords: BTreeMap<String, LaurentPoly>,
}

impl DualElement {
    pub fn basis(weight: WeightVector, label: &[u32]) -> Self {
        let mut coords = BTreeMap::new();
        coords.insert(label_key(label), LaurentPoly::one());
        DualElement { weight, coords }
    }

    pub fn zero(weight: WeightVector) -> Self {
        DualElement { weight, coords: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Label, &LaurentPoly)> {
        self.coords.iter().map(|(k, v)| (parse_label(k), v))
    }

    pub fn coeff(&self, label: &[u32]) -> LaurentPoly {
        self.coords.get(&label_key(label)).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn add_term(&mut self, label: &[u32], c: &LaurentPoly) {
        let k = label_key(label);
        let s = match self.coords.get(&k) {
            Some(x) => x + c,
            None => c.clone(),
        };
        if s.is_zero() {
            self.coords.remove(&k);
        } else {
            self.coords.insert(k, s);
        }
    }

    pub fn add(&self, o: &DualElement) -> DualElement {
        let mut out = self.clone();
        for (l, c) in o.terms() {
            out.add_term(&l, c);
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> DualElement {
        let mut out = DualElement::zero(self.weight.clone());
        for (l, x) in self.terms() {
            out.add_term(&l, &(x * c));
        }
        out
    }

    pub fn shift(&self, k: i64) -> DualElement {
        self.scale(&LaurentPoly::monomial(k, 1))
    }

    /// `Some((label, m))` when the element is `q^m b^up(label)`.
    pub fn as_single(&self) -> Option<(Label, i64)> {
        if self.coords.len() != 1 {
            return None;
        }
        let (k, v) = self.coords.iter().next().unwrap();
        let (e, c) = v.as_monomial()?;
        if !c.is_one() {
            return None;
        }
        Some((parse_label(k), e))
    }
}

pub fn label_key(c: &[u32]) -> String {
    c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_label(s: &str) -> Label {
    if s.is_empty() {
        return Vec::new();
    }
    s.split(',').map(|x| x.parse().expect("label key")).collect()
}

#[derive(Clone, Copy, Hash, PartialEq, Eq, Debug)]
enum Op {
    E,
    F,
    EStar,
    FStar,
}

/// Which way a Saito reflection is applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// The canonical basis engine for one datum and one word `i0`.
pub struct CanonicalBasis {
    uq: Arc<UqMinus>,
    full: UqFull,
    pbw: PbwAlgebra,
    tables: Mutex<HashMap<WeightVector, Arc<CanonicalTable>>>,
    crystal: Mutex<HashMap<(Op, Vertex, Label), Option<Label>>>,
    star_labels: Mutex<HashMap<Label, Label>>,
    products: Mutex<HashMap<(Label, Label), DualElement>>,
}

impl CanonicalBasis {
    /// Uses the lexicographically smallest reduced word of `w_0` as `i0`.
    pub fn new(datum: CartanDatum) -> Result<Self> {
        let w = datum.longest_word();
        Self::with_word(datum, &w)
    }

    pub fn with_word(datum: CartanDatum, i0: &WeylWord) -> Result<Self> {
        let uq = Arc::new(UqMinus::new(datum));
        let full = UqFull::new(uq.clone());
        let pbw = PbwAlgebra::new(&full, i0)?;
        Ok(CanonicalBasis {
            uq,
            full,
            pbw,
            tables: Mutex::new(HashMap::new()),
            crystal: Mutex::new(HashMap::new()),
            star_labels: Mutex::new(HashMap::new()),
            products: Mutex::new(HashMap::new()),
        })
    }

    /// Uses the datum and the word `i0` of a shipped preset.
    pub fn preset(name: &str) -> Result<Self> {
        let p = crate::presets::Preset::load(name)?;
        Self::with_word(p.datum()?, &p.i0())
    }

    pub fn datum(&self) -> &CartanDatum {
        self.pbw.datum()
    }

    pub fn uqminus(&self) -> &UqMinus {
        &self.uq
    }

    pub fn uqfull(&self) -> &UqFull {
        &self.full
    }

    pub fn pbw(&self) -> &PbwAlgebra {
        &self.pbw
    }

    pub fn word(&self) -> &WeylWord {
        self.pbw.word()
    }

    pub fn rank(&self) -> usize {
        self.datum().rank()
    }

    pub fn weight_of(&self, c: &[u32]) -> WeightVector {
        self.pbw.weight_of(c)
    }

    /// All labels of weight `nu`, lexicographically increasing.
    pub fn labels(&self, nu: &WeightVector) -> Vec<Label> {
        self.pbw.indices(nu)
    }

    /// All labels with weight height at most `h`.
    pub fn labels_up_to(&self, h: i64) -> Vec<Label> {
        let mut out = Vec::new();
        for k in 0..=h {
            for nu in weights_of_height(self.rank(), k) {
                out.extend(self.labels(&nu));
            }
        }
        out.sort();
        out
    }

    pub fn zero_label(&self) -> Label {
        vec![0; self.pbw.len()]
    }

    /// PBW indices of weight `nu` for an arbitrary reduced word.
    pub fn pbw_indices(&self, word: &WeylWord, nu: &WeightVector) -> Result<Vec<Exponents>> {
        let betas = self.datum().inversion_sequence(word)?;
        let mut v = kostant_solutions(&betas, nu);
        v.sort();
        Ok(v)
    }

    pub fn table(&self, nu: &WeightVector) -> Result<Arc<CanonicalTable>> {
        if let Some(t) = self.tables.lock().unwrap().get(nu) {
            return Ok(t.clone());
        }
        let t = Arc::new(self.build_table(nu)?);
        Ok(self.tables.lock().unwrap().entry(nu.clone()).or_insert(t).clone())
    }

    fn build_table(&self, nu: &WeightVector) -> Result<CanonicalTable> {
        let idx = self.labels(nu);
        let m = idx.len();
        // rho[r][s]: coefficient of L(idx[r]) in bar(L(idx[s]))
        let mut rho = vec![vec![RatFunc::zero(); m]; m];
        for (s, c) in idx.iter().enumerate() {
            let b = self.pbw.bar(&self.pbw.pbw_basis_element(c));
            for (c2, v) in self.pbw.l_coords(&b) {
                let r = idx.binary_search(&c2).map_err(|_| Error::Convention("bar left the weight space".into()))?;
                rho[r][s] = v;
            }
        }
        for s in 0..m {
            if !rho[s][s].is_one() || (0..s).any(|r| !rho[r][s].is_zero()) {
                return Err(Error::Convention(format!("bar transition at {nu:?} is not unitriangular")));
            }
        }
        let mut kappa = vec![vec![LaurentPoly::zero(); m]; m];
        for s in 0..m {
            kappa[s][s] = LaurentPoly::one();
            for r in s + 1..m {
                let mut acc = RatFunc::zero();
                for t in s..r {
                    if !rho[r][t].is_zero() && !kappa[t][s].is_zero() {
                        acc = &acc + &(&rho[r][t] * &RatFunc::from(kappa[t][s].bar()));
                    }
                }
                let acc = acc.to_laurent().ok_or_else(|| {
                    Error::Convention(format!("non-Laurent correction at {nu:?} for {:?}", idx[s]))
                })?;
                if !(&acc + &acc.bar()).is_zero() {
                    return Err(Error::Convention(format!("correction at {nu:?} is not antisymmetric")));
                }
                // the positive-degree part solves k - bar(k) = acc
                let k = LaurentPoly::from_terms(acc.terms().filter(|(e, _)| *e > 0).map(|(e, c)| (e, c.clone())));
                kappa[r][s] = k;
            }
        }
        let norms: Vec<RatFunc> = idx.iter().map(|c| self.pbw.l_norm(c)).collect();
        // inverse of the unitriangular kappa
        let mut kinv = vec![vec![LaurentPoly::zero(); m]; m];
        for s in 0..m {
            kinv[s][s] = LaurentPoly::one();
            for r in s + 1..m {
                let mut acc = LaurentPoly::zero();
                for t in s..r {
                    if !kappa[r][t].is_zero() && !kinv[t][s].is_zero() {
                        acc -= &(&kappa[r][t] * &kinv[t][s]);
                    }
                }
                kinv[r][s] = acc;
            }
        }
        // b^up(c_s) = sum_r kinv[s][r] / n_r L(c_r)
        let mut dual = vec![vec![RatFunc::zero(); m]; m];
        for s in 0..m {
            for r in 0..m {
                if !kinv[s][r].is_zero() {
                    dual[r][s] = RatFunc::from(&kinv[s][r]).checked_div(&norms[r])?;
                }
            }
        }
        Ok(CanonicalTable { weight: nu.clone(), indices: idx, norms, kappa, dual })
    }

    /// `b(c)` in PBW coordinates.
    pub fn canonical_element(&self, c: &[u32]) -> Result<PbwElement> {
        let nu = self.weight_of(c);
        let t = self.table(&nu)?;
        let s = t.position(c).ok_or_else(|| Error::InvalidArgument(format!("bad label {c:?}")))?;
        let coords: BTreeMap<Exponents, RatFunc> = (0..t.indices.len())
            .filter(|&r| !t.kappa[r][s].is_zero())
            .map(|r| (t.indices[r].clone(), RatFunc::from(&t.kappa[r][s])))
            .collect();
        Ok(self.pbw.from_l_coords(&nu, &coords))
    }

    /// `b^up(c)` in PBW coordinates.
    pub fn dual_canonical_element(&self, c: &[u32]) -> Result<PbwElement> {
        let nu = self.weight_of(c);
        let t = self.table(&nu)?;
        let s = t.position(c).ok_or_else(|| Error::InvalidArgument(format!("bad label {c:?}")))?;
        let coords: BTreeMap<Exponents, RatFunc> = (0..t.indices.len())
            .filter(|&r| !t.dual[r][s].is_zero())
            .map(|r| (t.indices[r].clone(), t.dual[r][s].clone()))
            .collect();
        Ok(self.pbw.from_l_coords(&nu, &coords))
    }

    /// `b(c)` as a word element (low heights only).
    pub fn canonical_word_element(&self, c: &[u32]) -> Result<WordElement> {
        self.pbw.to_word_element(&self.uq, &self.canonical_element(c)?)
    }

    pub fn dual_word_element(&self, c: &[u32]) -> Result<WordElement> {
        self.pbw.to_word_element(&self.uq, &self.dual_canonical_element(c)?)
    }

    /// Reads `x` modulo `q L(inf)`: returns the label whose `L`-coordinate
    /// is `1 mod q` and the remainder `x - L(c)`, which lies in `q L(inf)`.
    pub fn identify(&self, x: &PbwElement) -> Result<(Label, PbwElement)> {
        let coords = self.pbw.l_coords(x);
        let mut found = None;
        for (c, v) in &coords {
            if !v.is_regular_at_zero() {
                return Err(Error::NotLattice(format!("coordinate {v} at {c:?}")));
            }
            let v0 = v.value_at_zero().expect("regular");
            if v0.is_one() {
                if found.is_some() {
                    return Err(Error::NotCongruent("several unit coordinates".into()));
                }
                found = Some(c.clone());
            } else if !v0.is_zero() {
                return Err(Error::NotCongruent(format!("coordinate {v} at {c:?}")));
            }
        }
        let c = found.ok_or_else(|| Error::NotCongruent("no unit coordinate".into()))?;
        let rem = x.sub(&self.pbw.pbw_basis_element(&c));
        Ok((c, rem))
    }

    /// [`Self::identify`] for word elements.
    pub fn identify_word(&self, x: &WordElement) -> Result<(Label, PbwElement)> {
        self.identify(&self.pbw.from_word_element(&self.uq, x)?)
    }

    /// `x` modulo `q L(inf)`: `None` if it lies in `q L(inf)`.
    fn reduce_mod_q(&self, x: &PbwElement) -> Result<Option<Label>> {
        let coords = self.pbw.l_coords(x);
        if coords.values().all(|v| v.is_regular_at_zero() && v.value_at_zero().is_some_and(|z| z.is_zero())) {
            return Ok(None);
        }
        Ok(Some(self.identify(x)?.0))
    }

    /// The label of `*b(c)`.
    pub fn star_label(&self, c: &[u32]) -> Result<Label> {
        if let Some(s) = self.star_labels.lock().unwrap().get(c) {
            return Ok(s.clone());
        }
        let s = self.identify(&self.pbw.star(&self.pbw.pbw_basis_element(c)))?.0;
        self.star_labels.lock().unwrap().insert(c.to_vec(), s.clone());
        Ok(s)
    }

    fn crystal_op(&self, op: Op, i: Vertex, c: &[u32]) -> Result<Option<Label>> {
        self.datum().check_vertex(i)?;
        let key = (op, i, c.to_vec());
        if let Some(r) = self.crystal.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let r = match op {
            Op::E | Op::F => {
                let x = self.pbw.pbw_basis_element(c);
                if op == Op::E && x.weight().at(i) == 0 {
                    None
                } else {
                    let y = if op == Op::E {
                        kashiwara::e_tilde(&self.pbw, i, &x)?
                    } else {
                        kashiwara::f_tilde(&self.pbw, i, &x)?
                    };
                    self.reduce_mod_q(&y)?
                }
            }
            Op::EStar | Op::FStar => {
                let s = self.star_label(c)?;
                let inner = if op == Op::EStar { Op::E } else { Op::F };
                match self.crystal_op(inner, i, &s)? {
                    Some(t) => Some(self.star_label(&t)?),
                    None => None,
                }
            }
        };
        self.crystal.lock().unwrap().insert(key, r.clone());
        Ok(r)
    }

    /// `e~_i b`, `None` for zero.
    pub fn e_tilde(&self, i: Vertex, c: &[u32]) -> Result<Option<Label>> {
        self.crystal_op(Op::E, i, c)
    }

    pub fn f_tilde(&self, i: Vertex, c: &[u32]) -> Result<Label> {
        self.crystal_op(Op::F, i, c)?.ok_or_else(|| Error::Convention("f~ gave zero".into()))
    }

    pub fn e_tilde_star(&self, i: Vertex, c: &[u32]) -> Result<Option<Label>> {
        self.crystal_op(Op::EStar, i, c)
    }

    pub fn f_tilde_star(&self, i: Vertex, c: &[u32]) -> Result<Label> {
        self.crystal_op(Op::FStar, i, c)?.ok_or_else(|| Error::Convention("f~* gave zero".into()))
    }

    fn count(&self, op: Op, i: Vertex, c: &[u32]) -> Result<u32> {
        let mut n = 0;
        let mut cur = c.to_vec();
        while let Some(next) = self.crystal_op(op, i, &cur)? {
            cur = next;
            n += 1;
        }
        Ok(n)
    }

    pub fn epsilon(&self, i: Vertex, c: &[u32]) -> Result<u32> {
        self.count(Op::E, i, c)
    }

    pub fn epsilon_star(&self, i: Vertex, c: &[u32]) -> Result<u32> {
        self.count(Op::EStar, i, c)
    }

    /// `phi_i(b) = epsilon_i(b) - (alpha_i, nu)` for `b` of weight `-nu`.
    pub fn phi(&self, i: Vertex, c: &[u32]) -> Result<i64> {
        Ok(self.epsilon(i, c)? as i64 - self.datum().pair_simple(i, &self.weight_of(c)))
    }

    pub fn phi_star(&self, i: Vertex, c: &[u32]) -> Result<i64> {
        Ok(self.epsilon_star(i, c)? as i64 - self.datum().pair_simple(i, &self.weight_of(c)))
    }

    fn repeat(&self, op: Op, i: Vertex, n: i64, c: Label) -> Result<Label> {
        let mut cur = c;
        for _ in 0..n {
            cur = self
                .crystal_op(op, i, &cur)?
                .ok_or_else(|| Error::Convention("crystal operator gave zero inside a reflection".into()))?;
        }
        Ok(cur)
    }

    /// Saito reflection `Lambda_i(b) = f~*_i^phi_i(b) e~_i^eps_i(b) b`
    /// (forward, needs `eps*_i(b) = 0`) or its inverse
    /// `f~_i^phi*_i(b) e~*_i^eps*_i(b) b` (needs `eps_i(b) = 0`).
    pub fn saito_reflection(&self, i: Vertex, c: &[u32], dir: Direction) -> Result<Label> {
        match dir {
            Direction::Forward => {
                let es = self.epsilon_star(i, c)?;
                if es != 0 {
                    return Err(Error::Precondition(format!("epsilon*_{i} = {es}, expected 0")));
                }
                let e = self.epsilon(i, c)? as i64;
                let p = self.phi(i, c)?;
                let b1 = self.repeat(Op::E, i, e, c.to_vec())?;
                self.repeat(Op::FStar, i, p, b1)
            }
            Direction::Inverse => {
                let e = self.epsilon(i, c)?;
                if e != 0 {
                    return Err(Error::Precondition(format!("epsilon_{i} = {e}, expected 0")));
                }
                let es = self.epsilon_star(i, c)? as i64;
                let p = self.phi_star(i, c)?;
                let b1 = self.repeat(Op::EStar, i, es, c.to_vec())?;
                self.repeat(Op::F, i, p, b1)
            }
        }
    }

    /// Root vectors of `word`, moved into the PBW engine.
    fn word_roots(&self, word: &WeylWord) -> Result<Vec<PbwElement>> {
        self.full.root_vectors(word)?.iter().map(|r| self.pbw.from_word_element(&self.uq, r)).collect()
    }

    fn word_pbw_from_roots(&self, roots: &[PbwElement], c: &[u32]) -> Result<PbwElement> {
        let mut x = self.pbw.unit();
        for (p, &n) in c.iter().enumerate() {
            if n > 0 {
                let mut pw = self.pbw.unit();
                for _ in 0..n {
                    pw = self.pbw.mul(&pw, &roots[p]);
                }
                let f = exponent_factorial(&[n]);
                x = self.pbw.mul(&x, &pw.scale(&RatFunc::one().checked_div(&f)?));
            }
        }
        Ok(x)
    }

    /// `L(c)` for the PBW basis of an arbitrary reduced `word` (a prefix
    /// of a longest word or a longest word itself).
    pub fn word_pbw_element(&self, word: &WeylWord, c: &[u32]) -> Result<PbwElement> {
        if c.len() != word.len() {
            return Err(Error::Shape(format!("{} exponents for a word of length {}", c.len(), word.len())));
        }
        self.word_pbw_from_roots(&self.word_roots(word)?, c)
    }

    /// Crystal label of `L(c)` for the PBW basis of `word`.
    pub fn word_label(&self, word: &WeylWord, c: &[u32]) -> Result<Label> {
        Ok(self.identify(&self.word_pbw_element(word, c)?)?.0)
    }

    /// `B(w)` up to the height: labels of `L(c)` for the word's own PBW
    /// basis, read modulo `q L(inf)`.
    pub fn bw_members_pbw(&self, word: &WeylWord, height: i64) -> Result<BTreeSet<Label>> {
        let d = self.datum();
        let betas = d.inversion_sequence(word)?;
        let roots = self.word_roots(word)?;
        let mut out = BTreeSet::new();
        for h in 0..=height {
            for nu in weights_of_height(d.rank(), h) {
                for c in kostant_solutions(&betas, &nu) {
                    out.insert(self.identify(&self.word_pbw_from_roots(&roots, &c)?)?.0);
                }
            }
        }
        Ok(out)
    }

    /// `B(w)` up to the height from crystal data alone: for `w = s_i w'`,
    /// the members of weight `nu` are `f~_i^n Lambda_i(b')` with `b'` in
    /// `B(w')` of weight `s_i(nu - n alpha_i)`.
    pub fn bw_members_crystal(&self, word: &WeylWord, height: i64) -> Result<BTreeSet<Label>> {
        let d = self.datum();
        if !d.is_reduced(word) {
            return Err(Error::NotReduced(word.letters.clone()));
        }
        let mut memo = HashMap::new();
        let mut out = BTreeSet::new();
        for h in 0..=height {
            for nu in weights_of_height(d.rank(), h) {
                out.extend(self.bw_at(&word.letters, &nu, &mut memo)?);
            }
        }
        Ok(out)
    }

    fn bw_at(
        &self,
        letters: &[Vertex],
        nu: &WeightVector,
        memo: &mut HashMap<(Vec<Vertex>, WeightVector), BTreeSet<Label>>,
    ) -> Result<BTreeSet<Label>> {
        if !nu.is_nonnegative() {
            return Ok(BTreeSet::new());
        }
        if letters.is_empty() {
            let mut s = BTreeSet::new();
            if nu.is_zero() {
                s.insert(self.zero_label());
            }
            return Ok(s);
        }
        let key = (letters.to_vec(), nu.clone());
        if let Some(s) = memo.get(&key) {
            return Ok(s.clone());
        }
        let d = self.datum();
        let i = letters[0];
        let mut out = BTreeSet::new();
        for n in 0..=nu.at(i) {
            let mut base = nu.clone();
            base.0[i - 1] -= n;
            let pre = d.reflect(i, &base);
            for b in self.bw_at(&letters[1..], &pre, memo)? {
                let b0 = self.saito_reflection(i, &b, Direction::Forward)?;
                out.insert(self.repeat(Op::F, i, n, b0)?);
            }
        }
        memo.insert(key, out.clone());
        Ok(out)
    }

    /// Membership of one label in `B(w)`, following the same
    /// characterization backwards: for `w = s_i w'`, `b` lies in `B(w)`
    /// iff `Lambda_i^-1(e~_i^max b)` lies in `B(w')`.
    pub fn bw_contains(&self, word: &WeylWord, c: &[u32]) -> Result<bool> {
        if !self.datum().is_reduced(word) {
            return Err(Error::NotReduced(word.letters.clone()));
        }
        let mut cur = c.to_vec();
        for &i in &word.letters {
            let e = self.epsilon(i, &cur)? as i64;
            let top = self.repeat(Op::E, i, e, cur)?;
            cur = self.saito_reflection(i, &top, Direction::Inverse)?;
        }
        Ok(cur.iter().all(|&x| x == 0))
    }

    /// All labels `b'` up to the height with `eps_i(b') >= eps_i(b)` for
    /// every `i`.
    pub fn epsilon_bound_set(&self, c: &[u32], height: i64) -> Result<BTreeSet<Label>> {
        let vs: Vec<Vertex> = self.datum().vertices().collect();
        let eb: Vec<u32> = vs.iter().map(|&i| self.epsilon(i, c)).collect::<Result<_>>()?;
        let mut out = BTreeSet::new();
        for b in self.labels_up_to(height) {
            let mut ok = true;
            for (k, &i) in vs.iter().enumerate() {
                if self.epsilon(i, &b)? < eb[k] {
                    ok = false;
                    break;
                }
            }
            if ok {
                out.insert(b);
            }
        }
        Ok(out)
    }

    /// `(x, b(c))` for every label of the weight of `x`, as a dual
    /// expansion `x = sum (x, b) b^up`.
    pub fn dual_expand(&self, x: &PbwElement) -> Result<DualElement> {
        let nu = x.weight().clone();
        let mut out = DualElement::zero(nu.clone());
        if x.is_zero() {
            return Ok(out);
        }
        let t = self.table(&nu)?;
        let lc = self.pbw.l_coords(x);
        let m = t.indices.len();
        let coords: Vec<RatFunc> = t.indices.iter().map(|c| lc.get(c).cloned().unwrap_or_default()).collect();
        for s in 0..m {
            let mut acc = RatFunc::zero();
            for r in 0..m {
                if !coords[r].is_zero() && !t.kappa[r][s].is_zero() {
                    acc = &acc + &(&(&coords[r] * &RatFunc::from(&t.kappa[r][s])) * &t.norms[r]);
                }
            }
            let v = acc.to_laurent().ok_or_else(|| {
                Error::NotDualCanonical(format!("non-Laurent coefficient on {:?}", t.indices[s]))
            })?;
            out.add_term(&t.indices[s], &v);
        }
        Ok(out)
    }

    pub fn dual_to_pbw(&self, x: &DualElement) -> Result<PbwElement> {
        let mut out = PbwElement::zero(x.weight.clone());
        for (l, c) in x.terms() {
            out = out.add(&self.dual_canonical_element(&l)?.scale(&RatFunc::from(c)));
        }
        Ok(out)
    }

    /// `b1^up b2^up` expanded in the dual canonical basis (memoized).
    pub fn dual_basis_product(&self, b1: &[u32], b2: &[u32]) -> Result<DualElement> {
        let key = (b1.to_vec(), b2.to_vec());
        if let Some(x) = self.products.lock().unwrap().get(&key) {
            return Ok(x.clone());
        }
        let p = self.pbw.mul(&self.dual_canonical_element(b1)?, &self.dual_canonical_element(b2)?);
        let r = self.dual_expand(&p)?;
        self.products.lock().unwrap().insert(key, r.clone());
        Ok(r)
    }

    /// Product of dual elements through the basis structure constants.
    pub fn dual_product(&self, x: &DualElement, y: &DualElement) -> Result<DualElement> {
        let mut out = DualElement::zero(&x.weight + &y.weight);
        for (l1, c1) in x.terms() {
            for (l2, c2) in y.terms() {
                let p = self.dual_basis_product(&l1, &l2)?;
                out = out.add(&p.scale(&(c1 * c2)));
            }
        }
        Ok(out)
    }

    /// `r^(b1,b2)_(b3)` for every `b3` of the product weight, from the
    /// expansion of `b1^up b2^up` in the dual canonical basis.
    pub fn structure_constants(&self, b1: &[u32], b2: &[u32]) -> Result<BTreeMap<Label, LaurentPoly>> {
        let p = self.dual_basis_product(b1, b2)?;
        Ok(p.terms().map(|(l, c)| (l, c.clone())).collect())
    }

    /// The same constants by pairing the twisted coproduct of each `b3`
    /// (word model) with `b1^up (x) b2^up`.
    pub fn structure_constants_coproduct(&self, b1: &[u32], b2: &[u32]) -> Result<BTreeMap<Label, LaurentPoly>> {
        let y = self.dual_word_element(b1)?;
        let z = self.dual_word_element(b2)?;
        let nu = &self.weight_of(b1) + &self.weight_of(b2);
        let mut out = BTreeMap::new();
        for b3 in self.labels(&nu) {
            let r = self.uq.twisted_coproduct(&self.canonical_word_element(&b3)?);
            let v = self.uq.tensor_pairing(&r, &y, &z)?;
            if !v.is_zero() {
                let l = v.to_laurent().ok_or_else(|| Error::Convention(format!("non-Laurent constant at {b3:?}")))?;
                out.insert(b3, l);
            }
        }
        Ok(out)
    }

    /// The basis table for one weight in its JSON file form.
    pub fn basis_table_json(&self, type_name: &str, nu: &WeightVector) -> Result<BasisTableFile> {
        let t = self.table(nu)?;
        let m = t.indices.len();
        let mut gram = vec![vec![CoeffRepr::from_coeff(&RatFunc::zero()); m]; m];
        for (r, n) in t.norms.iter().enumerate() {
            gram[r][r] = CoeffRepr::from_coeff(n);
        }
        let transition = (0..m).map(|s| (0..m).map(|r| t.kappa[r][s].clone()).collect()).collect();
        let canonical = t.indices.iter().map(|c| self.canonical_word_element(c)).collect::<Result<_>>()?;
        Ok(BasisTableFile {
            type_name: type_name.to_string(),
            word: self.word().letters.clone(),
            weight: nu.clone(),
            labels: t.indices.clone(),
            pbw_gram: gram,
            transition,
            canonical,
        })
    }
}

/// One weight space of the basis table. `pbw_gram[r][s] = (L(c_r), L(c_s))`;
/// `transition[s][r]` is the coefficient of `L(c_r)` in `b(c_s)`;
/// `canonical[s]` is `b(c_s)` as a word element.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisTableFile {
    #[serde(rename = "type")]
    pub type_name: String,
    pub word: Vec<Vertex>,
    pub weight: WeightVector,
    pub labels: Vec<Label>,
    pub pbw_gram: Vec<Vec<CoeffRepr>>,
    pub transition: Vec<Vec<LaurentPoly>>,
    pub canonical: Vec<WordElement>,
}

#[cfg(test)]
mod tests;
