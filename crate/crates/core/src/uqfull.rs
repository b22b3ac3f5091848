//! The whole algebra `U_q` in triangular normal form `F-word . K^lambda .
//! E-word`, enough to evaluate the braid operators `T_i` and produce root
//! vectors and PBW monomials inside `U_q^-`.
//!
//! Relations used for straightening:
//! `e_i f_j - f_j e_i = delta_ij (K_i - K_i^-1)/(q - q^-1)`,
//! `K_i e_j K_i^-1 = q^(a_ij) e_j`, `K_i f_j K_i^-1 = q^-(a_ij) f_j`.
//! The F and E parts are kept as free words and compared modulo the
//! radical of the form (the Serre ideal), on each side separately.
//!
//! Braid operator on generators, for `j` adjacent to `i`:
//! `T_i(e_i) = -f_i K_i`, `T_i(f_i) = -K_i^-1 e_i`, `T_i(K_mu) = K_(s_i mu)`,
//! `T_i(e_j) = e_i e_j - q^-1 e_j e_i`, `T_i(f_j) = f_j f_i - q f_i f_j`;
//! generators at non-adjacent `j != i` are fixed.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::quiver::{CartanDatum, Vertex, WeightVector, WeylWord};
use crate::uqminus::{UqMinus, Word, WordElement};

/// `(F-word, K-exponents, E-word)`.
pub type TriMono = (Word, Vec<i64>, Word);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TriangularElement {
    rank: usize,
    terms: BTreeMap<TriMono, RatFunc>,
}

/// A generator of `U_q`: `E(i)`, `F(i)` or `K(i, n)` for `K_i^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    E(Vertex),
    F(Vertex),
    K(Vertex, i64),
}

impl TriangularElement {
    pub fn zero(rank: usize) -> Self {
        TriangularElement { rank, terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::mono(rank, (Vec::new(), vec![0; rank], Vec::new()), RatFunc::one())
    }

    pub fn mono(rank: usize, m: TriMono, c: RatFunc) -> Self {
        let mut out = Self::zero(rank);
        out.add_term(m, &c);
        out
    }

    pub fn generator(rank: usize, g: Generator) -> Self {
        let k0 = vec![0; rank];
        match g {
            Generator::E(i) => Self::mono(rank, (vec![], k0, vec![i]), RatFunc::one()),
            Generator::F(i) => Self::mono(rank, (vec![i], k0, vec![]), RatFunc::one()),
            Generator::K(i, n) => {
                let mut k = k0;
                k[i - 1] = n;
                Self::mono(rank, (vec![], k, vec![]), RatFunc::one())
            }
        }
    }

    pub fn from_word_element(x: &WordElement) -> Self {
        let rank = x.rank();
        let mut out = Self::zero(rank);
        for (w, c) in x.terms() {
            out.add_term((w.clone(), vec![0; rank], Vec::new()), c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<TriMono, RatFunc> {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: TriMono, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        let s = match self.terms.get(&m) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if s.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, s);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&RatFunc::from_int(-1)))
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        let mut out = Self::zero(self.rank);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), &(x * c));
        }
        out
    }

    /// True when no term has a K or E factor.
    pub fn is_negative_part(&self) -> bool {
        self.terms.keys().all(|(_, k, e)| e.is_empty() && k.iter().all(|&x| x == 0))
    }
}

fn q_minus_q_inv_inv() -> RatFunc {
    let d: RatFunc = LaurentPoly::from_terms([(1i64, 1i64), (-1, -1)]).into();
    RatFunc::one().checked_div(&d).expect("nonzero")
}

/// Context for computations in `U_q`.
pub struct UqFull {
    uq: Arc<UqMinus>,
    ef_cache: Mutex<HashMap<(Word, Word), TriangularElement>>,
    braid_cache: Mutex<HashMap<(Vertex, bool, Generator), TriangularElement>>,
    root_cache: Mutex<HashMap<Vec<Vertex>, Vec<WordElement>>>,
}

impl std::hash::Hash for Generator {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        match *self {
            Generator::E(i) => (0u8, i, 0i64).hash(h),
            Generator::F(i) => (1u8, i, 0i64).hash(h),
            Generator::K(i, n) => (2u8, i, n).hash(h),
        }
    }
}

impl UqFull {
    pub fn new(uq: Arc<UqMinus>) -> Self {
        UqFull {
            uq,
            ef_cache: Mutex::new(HashMap::new()),
            braid_cache: Mutex::new(HashMap::new()),
            root_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn uqminus(&self) -> &UqMinus {
        &self.uq
    }

    pub fn datum(&self) -> &CartanDatum {
        self.uq.datum()
    }

    fn rank(&self) -> usize {
        self.uq.rank()
    }

    fn kpair(&self, lambda: &[i64], mu: &WeightVector) -> i64 {
        self.datum().pairing(&WeightVector(lambda.to_vec()), mu).expect("same rank")
    }

    pub fn gen(&self, g: Generator) -> TriangularElement {
        TriangularElement::generator(self.rank(), g)
    }

    /// Normal form of an ordered product of generators.
    pub fn normal_form(&self, gens: &[Generator]) -> TriangularElement {
        let mut acc = TriangularElement::one(self.rank());
        for &g in gens {
            acc = self.mul(&acc, &self.gen(g));
        }
        acc
    }

    /// `E-word . F-word` in normal form.
    fn ef(&self, e: &[Vertex], f: &[Vertex]) -> TriangularElement {
        let n = self.rank();
        if e.is_empty() || f.is_empty() {
            return TriangularElement::mono(n, (f.to_vec(), vec![0; n], e.to_vec()), RatFunc::one());
        }
        let key = (e.to_vec(), f.to_vec());
        if let Some(x) = self.ef_cache.lock().unwrap().get(&key) {
            return x.clone();
        }
        let (e0, i) = (&e[..e.len() - 1], e[e.len() - 1]);
        let mut out = TriangularElement::zero(n);
        // E0 . (F e_i)
        for ((f2, k2, e2), c) in self.ef(e0, f).terms {
            let mut e3 = e2;
            e3.push(i);
            out.add_term((f2, k2, e3), &c);
        }
        // E0 . F_{without p} (q^-s K_i - q^s K_i^-1)/(q - q^-1)
        let inv = q_minus_q_inv_inv();
        let mut suffix = WeightVector::zero(n);
        for p in (0..f.len()).rev() {
            if f[p] == i {
                let s = self.datum().pair_simple(i, &suffix);
                let mut rest = f[..p].to_vec();
                rest.extend_from_slice(&f[p + 1..]);
                let inner = self.ef(e0, &rest);
                for (sign, kexp) in [(1i64, 1i64), (-1, -1)] {
                    let coef = RatFunc::from_int(sign).shift(-kexp * s);
                    for ((f2, k2, e2), c) in &inner.terms {
                        // e2 . K_i^kexp = q^-(wt e2, kexp alpha_i) K_i^kexp e2
                        let mut lam = vec![0; n];
                        lam[i - 1] = kexp;
                        let wt = WeightVector::of_word(n, e2);
                        let tw = -self.kpair(&lam, &wt);
                        let mut k3 = k2.clone();
                        k3[i - 1] += kexp;
                        out.add_term((f2.clone(), k3, e2.clone()), &(&(c * &coef) * &inv).shift(tw));
                    }
                }
            }
            suffix.0[f[p] - 1] += 1;
        }
        self.ef_cache.lock().unwrap().insert(key, out.clone());
        out
    }

    fn mul_mono(&self, a: &TriMono, b: &TriMono) -> TriangularElement {
        let n = self.rank();
        let (f1, k1, e1) = a;
        let (f2, k2, e2) = b;
        let mut out = TriangularElement::zero(n);
        for ((fp, kp, ep), d) in self.ef(e1, f2).terms {
            let wf = WeightVector::of_word(n, &fp);
            let we = WeightVector::of_word(n, &ep);
            let tw = -self.kpair(k1, &wf) - self.kpair(k2, &we);
            let mut f = f1.clone();
            f.extend_from_slice(&fp);
            let k: Vec<i64> = (0..n).map(|t| k1[t] + kp[t] + k2[t]).collect();
            let mut e = ep;
            e.extend_from_slice(e2);
            out.add_term((f, k, e), &d.shift(tw));
        }
        out
    }

    pub fn mul(&self, x: &TriangularElement, y: &TriangularElement) -> TriangularElement {
        let mut out = TriangularElement::zero(self.rank());
        for (a, c) in &x.terms {
            for (b, d) in &y.terms {
                let cd = c * d;
                for (m, e) in self.mul_mono(a, b).terms {
                    out.add_term(m, &(&e * &cd));
                }
            }
        }
        out
    }

    /// Rewrites the F and E parts of every term over the basis words of
    /// their weights. Two elements are equal iff their reductions agree.
    pub fn reduce(&self, x: &TriangularElement) -> Result<TriangularElement> {
        let n = self.rank();
        // group by (K, wt F, wt E)
        type Group = BTreeMap<(Vec<i64>, Vec<i64>, Vec<i64>), Vec<(Word, Word, RatFunc)>>;
        let mut groups: Group = BTreeMap::new();
        for ((f, k, e), c) in &x.terms {
            let wf = WeightVector::of_word(n, f).0;
            let we = WeightVector::of_word(n, e).0;
            groups.entry((k.clone(), wf, we)).or_default().push((f.clone(), e.clone(), c.clone()));
        }
        let mut out = TriangularElement::zero(n);
        for ((k, wf, we), ts) in groups {
            let sf = self.uq.space(&WeightVector(wf.clone()))?;
            let se = self.uq.space(&WeightVector(we.clone()))?;
            let bf = sf.basis_words();
            let be = se.basis_words();
            let mut coeff = vec![vec![RatFunc::zero(); be.len()]; bf.len()];
            let mut fcache: HashMap<Word, Vec<RatFunc>> = HashMap::new();
            let mut ecache: HashMap<Word, Vec<RatFunc>> = HashMap::new();
            for (f, e, c) in ts {
                let af = match fcache.get(&f) {
                    Some(v) => v.clone(),
                    None => {
                        let v = self.uq.normal_coordinates(&self.uq.word(&f))?;
                        fcache.insert(f.clone(), v.clone());
                        v
                    }
                };
                let ae = match ecache.get(&e) {
                    Some(v) => v.clone(),
                    None => {
                        let v = self.uq.normal_coordinates(&self.uq.word(&e))?;
                        ecache.insert(e.clone(), v.clone());
                        v
                    }
                };
                for (u, a) in af.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let ca = &c * a;
                    for (v, b) in ae.iter().enumerate() {
                        if !b.is_zero() {
                            coeff[u][v] = &coeff[u][v] + &(&ca * b);
                        }
                    }
                }
            }
            for (u, row) in coeff.into_iter().enumerate() {
                for (v, c) in row.into_iter().enumerate() {
                    out.add_term((bf[u].clone(), k.clone(), be[v].clone()), &c);
                }
            }
        }
        Ok(out)
    }

    pub fn equals(&self, x: &TriangularElement, y: &TriangularElement) -> Result<bool> {
        Ok(self.reduce(&x.sub(y))?.is_empty())
    }

    /// Projects to `U_q^-`; fails if a K or E part survives reduction.
    pub fn to_word_element(&self, x: &TriangularElement, weight: &WeightVector) -> Result<WordElement> {
        let r = self.reduce(x)?;
        if !r.is_negative_part() {
            return Err(Error::Convention("element has a nonzero K or E part".into()));
        }
        WordElement::from_terms(weight.clone(), r.terms.into_iter().map(|((f, _, _), c)| (f, c)))
    }

    fn braid_gen(&self, i: Vertex, inverse: bool, g: Generator) -> TriangularElement {
        let key = (i, inverse, g);
        if let Some(x) = self.braid_cache.lock().unwrap().get(&key) {
            return x.clone();
        }
        let n = self.rank();
        let d = self.datum();
        let neg = RatFunc::from_int(-1);
        let out = match g {
            Generator::K(j, m) => {
                // K_j^m -> K_(s_i alpha_j)^m, the same for T_i and its inverse
                let s = d.reflect(i, &d.simple_root(j));
                TriangularElement::mono(n, (vec![], s.0.iter().map(|x| x * m).collect(), vec![]), RatFunc::one())
            }
            Generator::E(j) if j == i => {
                if !inverse {
                    self.normal_form(&[Generator::F(i), Generator::K(i, 1)]).scale(&neg)
                } else {
                    self.normal_form(&[Generator::K(i, -1), Generator::F(i)]).scale(&neg)
                }
            }
            Generator::F(j) if j == i => {
                if !inverse {
                    self.normal_form(&[Generator::K(i, -1), Generator::E(i)]).scale(&neg)
                } else {
                    self.normal_form(&[Generator::E(i), Generator::K(i, 1)]).scale(&neg)
                }
            }
            Generator::E(j) if d.adjacent(i, j) => {
                let (a, b) = if !inverse { (i, j) } else { (j, i) };
                self.normal_form(&[Generator::E(a), Generator::E(b)])
                    .sub(&self.normal_form(&[Generator::E(b), Generator::E(a)]).scale(&RatFunc::q_pow(-1)))
            }
            Generator::F(j) if d.adjacent(i, j) => {
                let (a, b) = if !inverse { (j, i) } else { (i, j) };
                self.normal_form(&[Generator::F(a), Generator::F(b)])
                    .sub(&self.normal_form(&[Generator::F(b), Generator::F(a)]).scale(&RatFunc::q_pow(1)))
            }
            _ => self.gen(g),
        };
        self.braid_cache.lock().unwrap().insert(key, out.clone());
        out
    }

    fn braid_any(&self, i: Vertex, inverse: bool, x: &TriangularElement) -> Result<TriangularElement> {
        let n = self.rank();
        let mut out = TriangularElement::zero(n);
        for ((f, k, e), c) in &x.terms {
            let mut acc = TriangularElement::mono(n, (vec![], vec![0; n], vec![]), c.clone());
            for &j in f {
                acc = self.mul(&acc, &self.braid_gen(i, inverse, Generator::F(j)));
            }
            for (j0, &m) in k.iter().enumerate() {
                if m != 0 {
                    acc = self.mul(&acc, &self.braid_gen(i, inverse, Generator::K(j0 + 1, m)));
                }
            }
            for &j in e {
                acc = self.mul(&acc, &self.braid_gen(i, inverse, Generator::E(j)));
            }
            out = out.add(&acc);
        }
        self.reduce(&out)
    }

    /// `T_i(x)`.
    pub fn braid_auto(&self, i: Vertex, x: &TriangularElement) -> Result<TriangularElement> {
        self.datum().check_vertex(i)?;
        self.braid_any(i, false, x)
    }

    /// `T_i^-1(x)`.
    pub fn braid_auto_inverse(&self, i: Vertex, x: &TriangularElement) -> Result<TriangularElement> {
        self.datum().check_vertex(i)?;
        self.braid_any(i, true, x)
    }

    /// Checks `T_i^-1 T_i = 1` and the braid relations of the `T_i` on
    /// every generator; returns a description of each failure.
    pub fn braid_violations(&self) -> Result<Vec<String>> {
        let d = self.datum().clone();
        let n = d.rank();
        let mut gens = Vec::new();
        for i in 1..=n {
            gens.extend([Generator::E(i), Generator::F(i), Generator::K(i, 1)]);
        }
        let mut bad = Vec::new();
        for g in gens {
            let x = self.gen(g);
            for i in 1..=n {
                let y = self.braid_auto_inverse(i, &self.braid_auto(i, &x)?)?;
                if !self.equals(&x, &y)? {
                    bad.push(format!("T_{i}^-1 T_{i} on {g:?}"));
                }
                for j in i + 1..=n {
                    let (lhs, rhs) = if d.adjacent(i, j) {
                        (
                            self.braid_auto(i, &self.braid_auto(j, &self.braid_auto(i, &x)?)?)?,
                            self.braid_auto(j, &self.braid_auto(i, &self.braid_auto(j, &x)?)?)?,
                        )
                    } else {
                        (self.braid_auto(i, &self.braid_auto(j, &x)?)?, self.braid_auto(j, &self.braid_auto(i, &x)?)?)
                    };
                    if !self.equals(&lhs, &rhs)? {
                        bad.push(format!("braid relation {i},{j} on {g:?}"));
                    }
                }
            }
        }
        Ok(bad)
    }

    /// Root vectors `T_(i_1) ... T_(i_(p-1)) (f_(i_p))` for a reduced word.
    pub fn root_vectors(&self, word: &WeylWord) -> Result<Vec<WordElement>> {
        let d = self.datum();
        let betas = d.inversion_sequence(word)?;
        if let Some(v) = self.root_cache.lock().unwrap().get(&word.letters) {
            return Ok(v.clone());
        }
        let mut out = Vec::new();
        for p in 0..word.len() {
            let mut x = self.gen(Generator::F(word.letters[p]));
            for k in (0..p).rev() {
                x = self.braid_auto(word.letters[k], &x)?;
            }
            let w = self.to_word_element(&x, &betas[p]).map_err(|_| {
                Error::Convention(format!("root vector {} of {} is not in the negative part", p + 1, word))
            })?;
            out.push(w);
        }
        self.root_cache.lock().unwrap().insert(word.letters.clone(), out.clone());
        Ok(out)
    }

    /// `L(c)`: the ordered product of divided powers of the root vectors,
    /// as a word element.
    pub fn pbw_element(&self, word: &WeylWord, c: &[u32]) -> Result<WordElement> {
        let roots = self.root_vectors(word)?;
        if c.len() != roots.len() {
            return Err(Error::Shape(format!("exponent vector of length {} for a word of length {}", c.len(), roots.len())));
        }
        let mut acc = self.uq.unit();
        for (r, &n) in roots.iter().zip(c) {
            if n > 0 {
                let fact: RatFunc = crate::laurent::quantum_factorial(n as i64)?.into();
                acc = acc.concat(&r.pow(n).scale(&RatFunc::one().checked_div(&fact)?));
                if acc.len() > 64 {
                    acc = self.uq.reduce(&acc)?;
                }
            }
        }
        Ok(acc)
    }
}
