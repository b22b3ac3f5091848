//! Quantum seeds whose variables are dual canonical basis elements, and
//! their mutation through exact division in the dual canonical basis.

mod verify;

use serde::{Deserialize, Serialize};

use crate::canonical::{label_key, CanonicalBasis, DualElement, Label};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, RatFunc};
use crate::linalg::{self, Solution};
use crate::quiver::WeylWord;

pub use verify::{verify_conjecture, ExchangeRecord, MonomialRecord, VerifyConfig, VerifyReport};

/// A seed `(Y, B, lambda)`. Every variable is exactly `b^up(labels[k])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumSeed {
    pub word: WeylWord,
    pub labels: Vec<Label>,
    /// Module tags carried along for cross-referencing.
    pub tags: Vec<String>,
    pub frozen: Vec<bool>,
    /// Full square exchange matrix; only mutable columns are meaningful.
    b: Vec<Vec<i64>>,
    /// `Y_k Y_l = q^lambda[k][l] Y_l Y_k`.
    pub lambda: Vec<Vec<i64>>,
    pub history: Vec<usize>,
}

/// Data of one executed mutation:
/// `Y_k* Y_k = q^exponent (q^-1 Y_T' + Y_T'')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exchange {
    pub k: usize,
    pub old: Label,
    pub new: Label,
    pub t_prime: Label,
    pub t_double_prime: Label,
    pub exponent: i64,
    /// Normalizing exponents of the two exchange monomials.
    pub t_prime_q_power: i64,
    pub t_double_prime_q_power: i64,
}

/// Outcome of normalizing a cluster monomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterMonomialReport {
    pub exponents: Vec<u32>,
    /// `m` with `q^m Y^c = b^up(label)`.
    pub q_power: i64,
    pub label: Label,
}

/// `k+ = min { p > k : i_p = i_k }`, or `len` when absent.
fn next_occurrence(word: &WeylWord) -> Vec<usize> {
    let l = &word.letters;
    (0..l.len()).map(|k| (k + 1..l.len()).find(|&p| l[p] == l[k]).unwrap_or(l.len())).collect()
}

/// Exchange matrix of the standard initial seed of a reduced word.
pub fn initial_exchange_matrix(cb: &CanonicalBasis, word: &WeylWord) -> Vec<Vec<i64>> {
    let d = cb.datum();
    let n = word.len();
    let plus = next_occurrence(word);
    let letter = |p: usize| word.letters[p];
    let mut b = vec![vec![0i64; n]; n];
    for p in 0..n {
        for k in 0..n {
            let a = d.a(letter(p), letter(k));
            b[p][k] = if p == plus[k] && plus[k] < n {
                1
            } else if k == plus[p] && plus[p] < n {
                -1
            } else if k < p && p < plus[k] && plus[k] < plus[p] {
                a
            } else if p < k && k < plus[p] && plus[p] < plus[k] {
                -a
            } else {
                0
            };
        }
    }
    b
}

impl QuantumSeed {
    /// Standard initial seed of a reduced word: `Y_k = b^up(c_k)` with
    /// `c_k` the 0/1 vector on `{p <= k : i_p = i_k}`.
    pub fn initial(cb: &CanonicalBasis, word: &WeylWord) -> Result<Self> {
        if !cb.datum().is_reduced(word) {
            return Err(Error::NotReduced(word.letters.clone()));
        }
        let n = word.len();
        let plus = next_occurrence(word);
        let mut labels = Vec::new();
        for k in 0..n {
            let c: Vec<u32> = (0..n).map(|p| u32::from(p <= k && word.letters[p] == word.letters[k])).collect();
            labels.push(cb.word_label(word, &c)?);
        }
        let tags = (1..=n).map(|k| format!("V{k}")).collect();
        Self::build(cb, word.clone(), labels, tags, plus.iter().map(|&p| p == n).collect(), initial_exchange_matrix(cb, word))
    }

    /// Builds and validates a seed from explicit data.
    pub fn build(
        cb: &CanonicalBasis,
        word: WeylWord,
        labels: Vec<Label>,
        tags: Vec<String>,
        frozen: Vec<bool>,
        b: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let n = labels.len();
        if tags.len() != n || frozen.len() != n || b.len() != n || b.iter().any(|r| r.len() != n) {
            return Err(Error::Shape("seed data of inconsistent sizes".into()));
        }
        let lambda = commutation_matrix(cb, &labels)?;
        let s = QuantumSeed { word, labels, tags, frozen, b, lambda, history: Vec::new() };
        s.check_exchange_matrix()?;
        Ok(s)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn mutable(&self) -> Vec<usize> {
        (0..self.len()).filter(|&k| !self.frozen[k]).collect()
    }

    pub fn b(&self, p: usize, k: usize) -> i64 {
        self.b[p][k]
    }

    /// The rectangular exchange matrix: all rows, mutable columns.
    pub fn exchange_matrix(&self) -> Vec<Vec<i64>> {
        let cols = self.mutable();
        self.b.iter().map(|r| cols.iter().map(|&k| r[k]).collect()).collect()
    }

    pub fn variable(&self, cb: &CanonicalBasis, k: usize) -> DualElement {
        DualElement::basis(cb.weight_of(&self.labels[k]), &self.labels[k])
    }

    /// Unordered cluster, used to identify seeds.
    pub fn key(&self) -> Vec<String> {
        let mut v: Vec<String> = self.labels.iter().map(|l| label_key(l)).collect();
        v.sort();
        v
    }

    /// Antisymmetry on the mutable part and compatibility with `lambda`:
    /// `sum_p b_pk lambda_pj = 0` for mutable `k` and `j != k`, with a
    /// common nonzero diagonal value.
    fn check_exchange_matrix(&self) -> Result<()> {
        let m = self.mutable();
        for &k in &m {
            for &j in &m {
                if self.b[k][j] != -self.b[j][k] {
                    return Err(Error::SeedValidation(format!("B not antisymmetric at ({k},{j})")));
                }
            }
        }
        let mut diag = None;
        for &k in &m {
            for j in 0..self.len() {
                let s: i64 = (0..self.len()).map(|p| self.b[p][k] * self.lambda[p][j]).sum();
                if j != k && s != 0 {
                    return Err(Error::SeedValidation(format!("B and lambda incompatible at ({k},{j})")));
                }
                if j == k {
                    if s == 0 || diag.is_some_and(|d| d != s) {
                        return Err(Error::SeedValidation(format!("B and lambda incompatible at ({k},{k})")));
                    }
                    diag = Some(s);
                }
            }
        }
        Ok(())
    }

    /// Mutates at `k`, returning the new seed and the exchange relation
    /// found. A non-dual-canonical outcome is reported as an error.
    pub fn mutate(&self, cb: &CanonicalBasis, k: usize) -> Result<(QuantumSeed, Exchange)> {
        if k >= self.len() {
            return Err(Error::InvalidArgument(format!("no variable {k}")));
        }
        if self.frozen[k] {
            return Err(Error::Frozen(k));
        }
        let n = self.len();
        let pos: Vec<u32> = (0..n).map(|p| self.b[p][k].max(0) as u32).collect();
        let neg: Vec<u32> = (0..n).map(|p| (-self.b[p][k]).max(0) as u32).collect();
        let mp = self.cluster_monomial(cb, &pos, None)?;
        let mn = self.cluster_monomial(cb, &neg, None)?;
        let yk = self.variable(cb, k);
        let wt = |l: &Label| cb.weight_of(l);
        if wt(&mp.label) != wt(&mn.label) {
            return Err(Error::SeedValidation(format!("exchange monomials at {k} have different weights")));
        }
        // Try each placement of q^-1; the one where division lands on a
        // single basis element fixes which monomial is T'.
        let mut found = None;
        for (tp, tpp) in [(&mp, &mn), (&mn, &mp)] {
            let mut r = DualElement::basis(wt(&tp.label), &tp.label).shift(-1);
            r.add_term(&tpp.label, &LaurentPoly::one());
            let z = match divide_right(cb, &r, &yk) {
                Ok(z) => z,
                Err(Error::NoSolution) => continue,
                Err(e) => return Err(e),
            };
            if let Some((label, m)) = z.as_single() {
                // z = q^m b, so b Y_k = q^-m (q^-1 Y_T' + Y_T'')
                found = Some((label, -m, tp.clone(), tpp.clone()));
                break;
            }
        }
        let (new, exponent, tp, tpp) = found.ok_or_else(|| {
            Error::NotDualCanonical(format!("exchange quotient at {k} is not a single dual canonical element"))
        })?;
        let mut labels = self.labels.clone();
        labels[k] = new.clone();
        let mut tags = self.tags.clone();
        tags[k] = match tags[k].strip_suffix('*') {
            Some(s) => s.to_string(),
            None => format!("{}*", tags[k]),
        };
        let b = mutate_matrix(&self.b, k);
        let lambda = commutation_matrix(cb, &labels)?;
        // lambda'_{kj} = -lambda_{kj} + sum_i [b_ik]_+ lambda_ij
        for j in (0..n).filter(|&j| j != k) {
            let expect = -self.lambda[k][j] + (0..n).map(|i| self.b[i][k].max(0) * self.lambda[i][j]).sum::<i64>();
            if lambda[k][j] != expect {
                return Err(Error::SeedValidation(format!(
                    "commutation of the new variable with {j} is {}, mutation rule gives {expect}",
                    lambda[k][j]
                )));
            }
        }
        let mut history = self.history.clone();
        history.push(k);
        let s = QuantumSeed { word: self.word.clone(), labels, tags, frozen: self.frozen.clone(), b, lambda, history };
        s.check_exchange_matrix()?;
        let ex = Exchange {
            k,
            old: self.labels[k].clone(),
            new,
            t_prime: tp.label,
            t_double_prime: tpp.label,
            exponent,
            t_prime_q_power: tp.q_power,
            t_double_prime_q_power: tpp.q_power,
        };
        Ok((s, ex))
    }

    /// `Y_1^c_1 ... Y_l^c_l` in index order, normalized to a single dual
    /// canonical element. Products above `height_bound` are refused.
    pub fn cluster_monomial(
        &self,
        cb: &CanonicalBasis,
        exponents: &[u32],
        height_bound: Option<i64>,
    ) -> Result<ClusterMonomialReport> {
        if exponents.len() != self.len() {
            return Err(Error::Shape(format!("{} exponents for {} variables", exponents.len(), self.len())));
        }
        let mut weight = crate::quiver::WeightVector::zero(cb.rank());
        for (k, &e) in exponents.iter().enumerate() {
            weight = &weight + &cb.weight_of(&self.labels[k]).scaled(e as i64);
        }
        if let Some(h) = height_bound {
            if weight.height() > h {
                return Err(Error::HeightBound(weight.0.clone(), h as usize));
            }
        }
        let mut acc = DualElement::basis(crate::quiver::WeightVector::zero(cb.rank()), &cb.zero_label());
        for (k, &e) in exponents.iter().enumerate() {
            let y = self.variable(cb, k);
            for _ in 0..e {
                acc = match acc.as_single() {
                    Some((l, m)) => cb.dual_basis_product(&l, &self.labels[k])?.shift(m),
                    None => cb.dual_product(&acc, &y)?,
                };
            }
        }
        let (label, m) = acc.as_single().ok_or_else(|| {
            Error::NotDualCanonical(format!("monomial {exponents:?} has {} dual canonical terms", acc.coords.len()))
        })?;
        Ok(ClusterMonomialReport { exponents: exponents.to_vec(), q_power: -m, label })
    }
}

/// `b'_ij = -b_ij` if `k` in `{i, j}`, else
/// `b_ij + (|b_ik| b_kj + b_ik |b_kj|) / 2`.
pub fn mutate_matrix(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = b.len();
    let mut out = b.to_vec();
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
            };
        }
    }
    out
}

fn commutation_matrix(cb: &CanonicalBasis, labels: &[Label]) -> Result<Vec<Vec<i64>>> {
    let n = labels.len();
    let mut lam = vec![vec![0i64; n]; n];
    for k in 0..n {
        for l in k + 1..n {
            let y1 = DualElement::basis(cb.weight_of(&labels[k]), &labels[k]);
            let y2 = DualElement::basis(cb.weight_of(&labels[l]), &labels[l]);
            let v = quasi_commutation(cb, &y1, &y2)
                .map_err(|_| Error::SeedValidation(format!("variables {k} and {l} do not quasi-commute")))?;
            lam[k][l] = v;
            lam[l][k] = -v;
        }
    }
    Ok(lam)
}

/// The integer `lambda` with `y1 y2 = q^lambda y2 y1`.
pub fn quasi_commutation(cb: &CanonicalBasis, y1: &DualElement, y2: &DualElement) -> Result<i64> {
    let a = cb.dual_product(y1, y2)?;
    let b = cb.dual_product(y2, y1)?;
    if a.is_zero() || b.is_zero() {
        return Err(Error::NotQuasiCommuting);
    }
    let (l, ca) = a.terms().next().map(|(l, c)| (l, c.clone())).unwrap();
    let cb_ = b.coeff(&l);
    let (ea, xa) = ca.as_monomial().ok_or(Error::NotQuasiCommuting)?;
    let (eb, xb) = cb_.as_monomial().ok_or(Error::NotQuasiCommuting)?;
    if xa != xb {
        return Err(Error::NotQuasiCommuting);
    }
    let lam = ea - eb;
    if b.shift(lam) != a {
        return Err(Error::NotQuasiCommuting);
    }
    Ok(lam)
}

/// The unique `z` with `z y = r`.
pub fn divide_right(cb: &CanonicalBasis, r: &DualElement, y: &DualElement) -> Result<DualElement> {
    let nu = &r.weight - &y.weight;
    if !nu.is_nonnegative() {
        return Err(Error::NoSolution);
    }
    let cands = cb.labels(&nu);
    let targets = cb.labels(&r.weight);
    let mut cols = Vec::new();
    for c in &cands {
        cols.push(cb.dual_product(&DualElement::basis(nu.clone(), c), y)?);
    }
    let a: Vec<Vec<RatFunc>> = targets
        .iter()
        .map(|t| cols.iter().map(|p| RatFunc::from(&p.coeff(t))).collect())
        .collect();
    let rhs: Vec<RatFunc> = targets.iter().map(|t| RatFunc::from(&r.coeff(t))).collect();
    let x = match linalg::solve(&a, &rhs) {
        Solution::Unique(x) => x,
        Solution::None => return Err(Error::NoSolution),
        Solution::Many(..) => return Err(Error::NonUnique),
    };
    let mut z = DualElement::zero(nu);
    for (c, v) in cands.iter().zip(&x) {
        let v = v.to_laurent().ok_or_else(|| Error::NotDualCanonical(format!("non-Laurent quotient on {c:?}")))?;
        z.add_term(c, &v);
    }
    Ok(z)
}
