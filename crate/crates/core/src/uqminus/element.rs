use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::{quantum_factorial, LaurentPoly, RatFunc};
use crate::quiver::{Vertex, WeightVector};

pub type Word = Vec<Vertex>;

/// A weight-homogeneous linear combination of words in the generators
/// `f_i`. Two elements are equal in `U_q^-` when they pair equally with
/// every word; see [`super::UqMinus::equals`]. The derived `PartialEq`
/// is formal (coefficient-wise) equality.
#[derive(Clone, PartialEq, Eq)]
pub struct WordElement {
    weight: WeightVector,
    terms: BTreeMap<Word, RatFunc>,
}

impl WordElement {
    pub fn zero(weight: WeightVector) -> Self {
        WordElement { weight, terms: BTreeMap::new() }
    }

    /// The unit `1` (empty word) in rank `n`.
    pub fn unit(n: usize) -> Self {
        Self::from_word(n, Vec::new(), RatFunc::one())
    }

    /// The generator `f_i`.
    pub fn generator(n: usize, i: Vertex) -> Self {
        Self::from_word(n, vec![i], RatFunc::one())
    }

    pub fn from_word(n: usize, word: Word, coeff: RatFunc) -> Self {
        let weight = WeightVector::of_word(n, &word);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        WordElement { weight, terms }
    }

    /// Builds from explicit terms; every word must have letter content
    /// `weight`.
    pub fn from_terms(weight: WeightVector, terms: impl IntoIterator<Item = (Word, RatFunc)>) -> Result<Self> {
        let n = weight.rank();
        let mut out = WordElement::zero(weight);
        for (w, c) in terms {
            if w.iter().any(|&i| i == 0 || i > n) {
                return Err(Error::BadVertex(*w.iter().find(|&&i| i == 0 || i > n).unwrap()));
            }
            if WeightVector::of_word(n, &w) != out.weight {
                return Err(Error::InvalidArgument(format!("word {w:?} has the wrong weight")));
            }
            out.add_term(w, &c);
        }
        Ok(out)
    }

    /// `f_i^(n) = f_i^n / [n]!`.
    pub fn divided_power(rank: usize, i: Vertex, n: u32) -> Self {
        let fact = quantum_factorial(n as i64).expect("nonnegative");
        let c = RatFunc::one().checked_div(&fact.into()).expect("[n]! is nonzero");
        Self::from_word(rank, vec![i; n as usize], c)
    }

    pub fn weight(&self) -> &WeightVector {
        &self.weight
    }

    pub fn rank(&self) -> usize {
        self.weight.rank()
    }

    pub fn terms(&self) -> &BTreeMap<Word, RatFunc> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No terms at all (formally zero). Zero in `U_q^-` is weaker; see
    /// [`super::UqMinus::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &[Vertex]) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, w: Word, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &WordElement) -> WordElement {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        assert_eq!(self.weight, other.weight, "adding elements of different weight");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &WordElement) -> WordElement {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> WordElement {
        if c.is_zero() {
            return WordElement::zero(self.weight.clone());
        }
        WordElement {
            weight: self.weight.clone(),
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> WordElement {
        WordElement {
            weight: self.weight.clone(),
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x.shift(k))).collect(),
        }
    }

    /// Free-algebra product: bilinear concatenation of words.
    pub fn concat(&self, other: &WordElement) -> WordElement {
        let weight = &self.weight + &other.weight;
        let mut out = WordElement::zero(weight);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, &(a * b));
            }
        }
        out
    }

    /// The anti-involution `*` fixing every `f_i`: reverses each word.
    pub fn star(&self) -> WordElement {
        let mut out = WordElement::zero(self.weight.clone());
        for (w, c) in &self.terms {
            let mut r = w.clone();
            r.reverse();
            out.add_term(r, c);
        }
        out
    }

    /// Applies the bar involution to every coefficient (the words are
    /// bar-invariant since `bar(f_i) = f_i`).
    pub fn bar(&self) -> WordElement {
        WordElement {
            weight: self.weight.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.bar())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> WordElement {
        let mut out = WordElement::unit(self.rank());
        for _ in 0..n {
            out = out.concat(self);
        }
        out
    }
}

impl fmt::Debug for WordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let s: Vec<String> = w.iter().map(|i| i.to_string()).collect();
                format!("({c})*[{}]", s.join(","))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A Laurent coefficient serializes as its exponent map; anything else
/// as `{"num": .., "den": ..}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffRepr {
    Rat(RatFunc),
    Laurent(LaurentPoly),
}

impl CoeffRepr {
    pub fn from_coeff(c: &RatFunc) -> Self {
        match c.to_laurent() {
            Some(l) => CoeffRepr::Laurent(l),
            None => CoeffRepr::Rat(c.clone()),
        }
    }

    pub fn into_coeff(self) -> RatFunc {
        match self {
            CoeffRepr::Rat(r) => r,
            CoeffRepr::Laurent(l) => l.into(),
        }
    }
}

impl fmt::Display for CoeffRepr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRepr::Rat(r) => write!(f, "{r}"),
            CoeffRepr::Laurent(l) => write!(f, "{l}"),
        }
    }
}

pub(crate) fn word_key(w: &[Vertex]) -> String {
    w.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

pub(crate) fn parse_word_key(s: &str) -> Result<Word> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.parse::<Vertex>().map_err(|e| Error::InvalidArgument(e.to_string())))
        .collect()
}

#[derive(Serialize, Deserialize)]
struct WordElementRepr {
    weight: WeightVector,
    terms: BTreeMap<String, CoeffRepr>,
}

impl Serialize for WordElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WordElementRepr {
            weight: self.weight.clone(),
            terms: self.terms.iter().map(|(w, c)| (word_key(w), CoeffRepr::from_coeff(c))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WordElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = WordElementRepr::deserialize(d)?;
        let mut terms = Vec::new();
        for (k, c) in r.terms {
            terms.push((parse_word_key(&k).map_err(D::Error::custom)?, c.into_coeff()));
        }
        WordElement::from_terms(r.weight, terms).map_err(D::Error::custom)
    }
}

/// An element of `U_q^- (x) U_q^-`, as a combination of pairs of words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElement {
    weight: WeightVector,
    terms: BTreeMap<(Word, Word), RatFunc>,
}

impl TensorElement {
    pub fn zero(weight: WeightVector) -> Self {
        TensorElement { weight, terms: BTreeMap::new() }
    }

    pub(crate) fn add_term(&mut self, l: Word, r: Word, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        let key = (l, r);
        let s = match self.terms.get(&key) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if s.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, s);
        }
    }

    /// Total weight (left weight plus right weight of every term).
    pub fn weight(&self) -> &WeightVector {
        &self.weight
    }

    pub fn terms(&self) -> &BTreeMap<(Word, Word), RatFunc> {
        &self.terms
    }

    pub fn coeff(&self, l: &[Vertex], r: &[Vertex]) -> RatFunc {
        self.terms.get(&(l.to_vec(), r.to_vec())).cloned().unwrap_or_default()
    }

    /// The bihomogeneous component with the given left weight, as a map
    /// from pairs of words.
    pub fn component(&self, left: &WeightVector) -> TensorElement {
        let n = self.weight.rank();
        TensorElement {
            weight: self.weight.clone(),
            terms: self
                .terms
                .iter()
                .filter(|((l, _), _)| WeightVector::of_word(n, l) == *left)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }
}
