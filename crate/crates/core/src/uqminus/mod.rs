//! `U_q^-` realised on the free algebra of words in the `f_i`, modulo the
//! radical of the Kashiwara form.
//!
//! The form is computed on words by
//! `(f_i u, w) = (u, e'_i w)` with
//! `e'_i(f_j y) = delta_ij y + q^-(alpha_i, alpha_j) f_j e'_i(y)`, and
//! elements are compared by pairing against a maximal nondegenerate set
//! of words ([`UqMinus::weight_basis`]). No rewriting to a normal form
//! is ever done.

mod element;
pub mod kashiwara;

pub use element::{CoeffRepr, TensorElement, Word, WordElement};
#[allow(unused_imports)]
pub(crate) use element::{parse_word_key, word_key};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::linalg::{self, Matrix};
use crate::quiver::{kostant_solutions, CartanDatum, Vertex, WeightVector};

pub const DEFAULT_HEIGHT_BOUND: usize = 12;

/// Words of one weight together with their Gram matrix.
pub struct WeightSpace {
    pub weight: WeightVector,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    gram: Vec<Vec<LaurentPoly>>,
    basis: Vec<usize>,
    basis_gram_inv: Matrix<RatFunc>,
}

impl WeightSpace {
    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_words(&self) -> Vec<Word> {
        self.basis.iter().map(|&i| self.words[i].clone()).collect()
    }

    pub fn word_index(&self, w: &[Vertex]) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn gram_entry(&self, u: usize, w: usize) -> &LaurentPoly {
        &self.gram[u][w]
    }
}

/// Computation context for one Cartan datum: owns the per-weight Gram
/// caches.
pub struct UqMinus {
    datum: CartanDatum,
    height_bound: usize,
    spaces: Mutex<HashMap<WeightVector, Arc<WeightSpace>>>,
}

impl UqMinus {
    pub fn new(datum: CartanDatum) -> Self {
        Self::with_height_bound(datum, DEFAULT_HEIGHT_BOUND)
    }

    pub fn with_height_bound(datum: CartanDatum, height_bound: usize) -> Self {
        UqMinus { datum, height_bound, spaces: Mutex::new(HashMap::new()) }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn height_bound(&self) -> usize {
        self.height_bound
    }

    pub fn generator(&self, i: Vertex) -> WordElement {
        WordElement::generator(self.rank(), i)
    }

    pub fn unit(&self) -> WordElement {
        WordElement::unit(self.rank())
    }

    pub fn divided_power(&self, i: Vertex, n: u32) -> WordElement {
        WordElement::divided_power(self.rank(), i, n)
    }

    /// Element from a single word with coefficient 1.
    pub fn word(&self, w: &[Vertex]) -> WordElement {
        WordElement::from_word(self.rank(), w.to_vec(), RatFunc::one())
    }

    pub fn concat_product(&self, x: &WordElement, y: &WordElement) -> WordElement {
        x.concat(y)
    }

    pub fn space(&self, nu: &WeightVector) -> Result<Arc<WeightSpace>> {
        if nu.rank() != self.rank() {
            return Err(Error::DatumMismatch);
        }
        if !nu.is_nonnegative() {
            return Err(Error::InvalidArgument(format!("weight {nu:?} is not in the positive cone")));
        }
        if nu.height() as usize > self.height_bound {
            return Err(Error::HeightBound(nu.0.clone(), self.height_bound));
        }
        if let Some(s) = self.spaces.lock().unwrap().get(nu) {
            return Ok(s.clone());
        }
        let built = Arc::new(self.build_space(nu)?);
        let mut guard = self.spaces.lock().unwrap();
        Ok(guard.entry(nu.clone()).or_insert(built).clone())
    }

    fn build_space(&self, nu: &WeightVector) -> Result<WeightSpace> {
        let words = words_of_content(nu);
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let n = words.len();
        let mut gram = vec![vec![LaurentPoly::zero(); n]; n];
        if nu.is_zero() {
            gram[0][0] = LaurentPoly::one();
        } else {
            let mut subs: HashMap<Vertex, Arc<WeightSpace>> = HashMap::new();
            for i in self.datum.vertices() {
                if nu.at(i) > 0 {
                    subs.insert(i, self.space(&(nu - &self.datum.simple_root(i)))?);
                }
            }
            for (a, u) in words.iter().enumerate() {
                let i = u[0];
                let sub = &subs[&i];
                let ua = sub.index[&u[1..]];
                for (b, w) in words.iter().enumerate() {
                    if b < a {
                        gram[a][b] = gram[b][a].clone();
                        continue;
                    }
                    let mut acc = LaurentPoly::zero();
                    let mut prefix = WeightVector::zero(self.rank());
                    for (p, &j) in w.iter().enumerate() {
                        if j == i {
                            let mut rest = w[..p].to_vec();
                            rest.extend_from_slice(&w[p + 1..]);
                            let e = -self.datum.pair_simple(i, &prefix);
                            let g = &sub.gram[ua][sub.index[&rest]];
                            if !g.is_zero() {
                                acc += &g.shift(e);
                            }
                        }
                        prefix.0[j - 1] += 1;
                    }
                    gram[a][b] = acc;
                }
            }
        }
        let expected = kostant_solutions(&self.datum.positive_roots(), nu).len();
        let basis = select_basis(&gram, expected)
            .ok_or_else(|| Error::Convention(format!("Gram rank at {nu:?} below the PBW count {expected}")))?;
        let bg: Matrix<RatFunc> = basis
            .iter()
            .map(|&r| basis.iter().map(|&c| RatFunc::from(&gram[r][c])).collect())
            .collect();
        let basis_gram_inv = linalg::inverse(&bg).ok_or_else(|| Error::Convention("singular basis Gram".into()))?;
        Ok(WeightSpace { weight: nu.clone(), words, index, gram, basis, basis_gram_inv })
    }

    /// A set of words spanning the weight space modulo the radical, with
    /// nonsingular Gram matrix.
    pub fn weight_basis(&self, nu: &WeightVector) -> Result<Vec<Word>> {
        Ok(self.space(nu)?.basis_words())
    }

    /// `(u, w)` for two words.
    pub fn word_pairing(&self, u: &[Vertex], w: &[Vertex]) -> Result<LaurentPoly> {
        let n = self.rank();
        let wu = WeightVector::of_word(n, u);
        if wu != WeightVector::of_word(n, w) {
            return Ok(LaurentPoly::zero());
        }
        let s = self.space(&wu)?;
        Ok(s.gram[s.index[u]][s.index[w]].clone())
    }

    /// The Kashiwara form `(x, y)`; zero for different weights.
    pub fn pairing(&self, x: &WordElement, y: &WordElement) -> Result<RatFunc> {
        if x.weight() != y.weight() || x.is_empty() || y.is_empty() {
            return Ok(RatFunc::zero());
        }
        let s = self.space(x.weight())?;
        let mut acc = RatFunc::zero();
        for (u, a) in x.terms() {
            let ru = &s.gram[s.index[u]];
            let mut inner = RatFunc::zero();
            for (w, b) in y.terms() {
                let g = &ru[s.index[w]];
                if !g.is_zero() {
                    inner = &inner + &(b * &RatFunc::from(g));
                }
            }
            acc = &acc + &(a * &inner);
        }
        Ok(acc)
    }

    /// `((x, w_j))_j` for the basis words `w_j` of the weight.
    pub fn pairing_vector(&self, x: &WordElement) -> Result<Vec<RatFunc>> {
        let s = self.space(x.weight())?;
        let mut v = vec![RatFunc::zero(); s.dim()];
        for (u, a) in x.terms() {
            let ru = &s.gram[s.index[u]];
            for (j, &b) in s.basis.iter().enumerate() {
                let g = &ru[b];
                if !g.is_zero() {
                    v[j] = &v[j] + &(a * &RatFunc::from(g));
                }
            }
        }
        Ok(v)
    }

    pub fn is_zero(&self, x: &WordElement) -> Result<bool> {
        if x.is_empty() {
            return Ok(true);
        }
        Ok(self.pairing_vector(x)?.iter().all(|c| c.is_zero()))
    }

    /// Equality in `U_q^-`.
    pub fn equals(&self, x: &WordElement, y: &WordElement) -> Result<bool> {
        if x.weight() != y.weight() {
            return Ok(self.is_zero(x)? && self.is_zero(y)?);
        }
        self.is_zero(&x.sub(y))
    }

    /// Coordinates `a` with `x = sum_j a_j w_j` modulo the radical, over the
    /// basis words of the weight.
    pub fn normal_coordinates(&self, x: &WordElement) -> Result<Vec<RatFunc>> {
        let s = self.space(x.weight())?;
        let v = self.pairing_vector(x)?;
        Ok(mat_vec(&s.basis_gram_inv, &v))
    }

    pub fn from_normal_coordinates(&self, nu: &WeightVector, coords: &[RatFunc]) -> Result<WordElement> {
        let s = self.space(nu)?;
        if coords.len() != s.dim() {
            return Err(Error::Shape(format!("expected {} coordinates", s.dim())));
        }
        WordElement::from_terms(
            nu.clone(),
            s.basis.iter().zip(coords).map(|(&b, c)| (s.words[b].clone(), c.clone())),
        )
    }

    /// Rewrites `x` over the basis words only.
    pub fn reduce(&self, x: &WordElement) -> Result<WordElement> {
        let c = self.normal_coordinates(x)?;
        self.from_normal_coordinates(x.weight(), &c)
    }

    /// The twisted coproduct `r`, computed word by word: each word splits
    /// over subsets of its letters, with exponent
    /// `-sum (alpha_{left letter}, alpha_{earlier right letter})`.
    pub fn twisted_coproduct(&self, x: &WordElement) -> TensorElement {
        let n = self.rank();
        let mut out = TensorElement::zero(x.weight().clone());
        for (w, c) in x.terms() {
            let len = w.len();
            for mask in 0u64..(1u64 << len) {
                let mut left = Vec::new();
                let mut right = Vec::new();
                let mut right_wt = WeightVector::zero(n);
                let mut e = 0i64;
                for (p, &j) in w.iter().enumerate() {
                    if mask >> p & 1 == 1 {
                        e -= self.datum.pair_simple(j, &right_wt);
                        left.push(j);
                    } else {
                        right.push(j);
                        right_wt.0[j - 1] += 1;
                    }
                }
                out.add_term(left, right, &c.shift(e));
            }
        }
        out
    }

    /// `(t, y (x) z) = sum t_{u,v} (u, y)(v, z)`.
    pub fn tensor_pairing(&self, t: &TensorElement, y: &WordElement, z: &WordElement) -> Result<RatFunc> {
        let n = self.rank();
        let mut acc = RatFunc::zero();
        for ((l, r), c) in t.terms() {
            if WeightVector::of_word(n, l) != *y.weight() || WeightVector::of_word(n, r) != *z.weight() {
                continue;
            }
            let a = self.pairing(&self.word(l), y)?;
            if a.is_zero() {
                continue;
            }
            let b = self.pairing(&self.word(r), z)?;
            acc = &acc + &(&(c * &a) * &b);
        }
        Ok(acc)
    }

    /// `e'_i(x)`: the `f_i (x) -` component of `r(x)`.
    pub fn eprime(&self, i: Vertex, x: &WordElement) -> WordElement {
        let n = self.rank();
        let mut wt = x.weight().clone();
        if wt.at(i) == 0 {
            wt.0[i - 1] -= 1;
            return WordElement::zero(wt);
        }
        wt.0[i - 1] -= 1;
        let mut out = WordElement::zero(wt);
        for (w, c) in x.terms() {
            let mut prefix = WeightVector::zero(n);
            for (p, &j) in w.iter().enumerate() {
                if j == i {
                    let mut rest = w[..p].to_vec();
                    rest.extend_from_slice(&w[p + 1..]);
                    out.add_term(rest, &c.shift(-self.datum.pair_simple(i, &prefix)));
                }
                prefix.0[j - 1] += 1;
            }
        }
        out
    }

    pub fn star(&self, x: &WordElement) -> WordElement {
        x.star()
    }
}

pub(crate) fn mat_vec(m: &Matrix<RatFunc>, v: &[RatFunc]) -> Vec<RatFunc> {
    m.iter()
        .map(|row| {
            row.iter().zip(v).fold(RatFunc::zero(), |acc, (a, b)| {
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    &acc + &(a * b)
                }
            })
        })
        .collect()
}

/// All words with the given letter content, in lexicographic order.
pub fn words_of_content(nu: &WeightVector) -> Vec<Word> {
    fn rec(rest: &mut Vec<i64>, cur: &mut Word, out: &mut Vec<Word>) {
        if rest.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            if rest[i] > 0 {
                rest[i] -= 1;
                cur.push(i + 1);
                rec(rest, cur, out);
                cur.pop();
                rest[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut nu.0.clone(), &mut Vec::new(), &mut out);
    out
}

const PRIME: u64 = 2_305_843_009_213_693_951; // 2^61 - 1

/// Picks rows of the Gram matrix that are independent after evaluation at
/// `q = t` mod a prime. Independence there implies independence over
/// `Q(q)`; the count is compared with the PBW count, which bounds the rank.
fn select_basis(gram: &[Vec<LaurentPoly>], expected: usize) -> Option<Vec<usize>> {
    for t in [1_000_003u64, 7_919, 104_729, 15_485_863] {
        let m: Vec<Vec<u64>> = gram.iter().map(|r| r.iter().map(|x| x.eval_mod(t, PRIME)).collect()).collect();
        let rows = linalg::independent_rows_mod(&m, PRIME);
        if rows.len() == expected {
            return Some(rows);
        }
    }
    None
}
