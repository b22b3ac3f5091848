//! Maximal rigid collections and their mutation through minimal
//! approximations.

use serde::{Deserialize, Serialize};

use super::{compose, flatten, Hom, ModuleFile, PreprojModule, QMat, Q};
use crate::error::{Error, Result};
use crate::linalg;
use crate::quiver::{CartanDatum, Orientation, WeightVector, WeylWord};

#[derive(Clone, Debug, PartialEq)]
pub struct Summand {
    pub label: String,
    pub module: PreprojModule,
    pub frozen: bool,
}

/// Serialized summand inside a preset file.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SummandFile {
    pub label: String,
    pub frozen: bool,
    pub module: ModuleFile,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RigidCollection {
    datum: CartanDatum,
    orientation: Orientation,
    summands: Vec<Summand>,
}

impl RigidCollection {
    /// Checks that the summands are indecomposable modules, pairwise
    /// non-isomorphic, and that their sum is rigid.
    pub fn new(datum: &CartanDatum, orientation: &Orientation, summands: Vec<Summand>) -> Result<Self> {
        for s in &summands {
            if !s.module.is_module() {
                return Err(Error::NotModule(s.label.clone()));
            }
            if !s.module.is_indecomposable()? {
                return Err(Error::InvalidArgument(format!("summand {} is decomposable", s.label)));
            }
        }
        for (a, x) in summands.iter().enumerate() {
            for y in &summands[a + 1..] {
                if x.module.is_isomorphic(&y.module)? {
                    return Err(Error::InvalidArgument(format!("{} and {} are isomorphic", x.label, y.label)));
                }
            }
        }
        let c = RigidCollection { datum: datum.clone(), orientation: orientation.clone(), summands };
        if !c.total()?.is_rigid()? {
            return Err(Error::InvalidArgument("collection is not rigid".into()));
        }
        Ok(c)
    }

    pub fn from_files(datum: &CartanDatum, orientation: &Orientation, files: &[SummandFile]) -> Result<Self> {
        let summands = files
            .iter()
            .map(|f| {
                Ok(Summand {
                    label: f.label.clone(),
                    frozen: f.frozen,
                    module: PreprojModule::from_file(datum, orientation, &f.module)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(datum, orientation, summands)
    }

    pub fn to_files(&self) -> Vec<SummandFile> {
        self.summands
            .iter()
            .map(|s| SummandFile { label: s.label.clone(), frozen: s.frozen, module: s.module.to_file() })
            .collect()
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn total(&self) -> Result<PreprojModule> {
        PreprojModule::direct_sum_all(&self.datum, &self.orientation, self.summands.iter().map(|s| &s.module))
    }

    /// Index of the summand isomorphic to `m`, if any.
    pub fn position(&self, m: &PreprojModule) -> Result<Option<usize>> {
        for (k, s) in self.summands.iter().enumerate() {
            if s.module.is_isomorphic(m)? {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    /// Same summands up to isomorphism, ignoring order and labels.
    pub fn same_up_to_iso(&self, o: &RigidCollection) -> Result<bool> {
        if self.len() != o.len() {
            return Ok(false);
        }
        for s in &self.summands {
            if o.position(&s.module)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Outcome of one mutation: the new collection, the two middle terms of
/// the exchange sequences `0 -> T_k -> T' -> T_k* -> 0` and
/// `0 -> T_k* -> T'' -> T_k -> 0`, and their multiplicities over the
/// summands of the old collection.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub collection: RigidCollection,
    pub complement: PreprojModule,
    pub t_prime: PreprojModule,
    pub t_double_prime: PreprojModule,
    pub t_prime_mult: Vec<usize>,
    pub t_double_prime_mult: Vec<usize>,
}

fn rad_maps(t: &RigidCollection, from: usize, to: usize) -> Result<Vec<Hom>> {
    let (x, y) = (&t.summands[from].module, &t.summands[to].module);
    if from == to {
        x.radical_endomorphisms()
    } else {
        x.hom_basis(y)
    }
}

/// Greedily picks members of `cands` independent modulo `span`.
fn pick_top(cands: Vec<Hom>, span: Vec<Vec<Q>>) -> Vec<Hom> {
    let mut rows = span;
    let mut base = if rows.is_empty() { 0 } else { linalg::rank(&rows) };
    let mut out = Vec::new();
    for h in cands {
        rows.push(flatten(&h));
        let r = linalg::rank(&rows);
        if r > base {
            base = r;
            out.push(h);
        } else {
            rows.pop();
        }
    }
    out
}

/// Replaces the summand `k` by the cokernel of its minimal left
/// approximation by the other summands, and validates both exchange
/// sequences.
pub fn mutate_rigid(t: &RigidCollection, k: usize) -> Result<Mutation> {
    let sk = t.summands.get(k).ok_or_else(|| Error::InvalidArgument(format!("no summand {k}")))?;
    if sk.frozen {
        return Err(Error::Frozen(k));
    }
    let tk = &sk.module;
    let others: Vec<usize> = (0..t.len()).filter(|&j| j != k).collect();
    let datum = &t.datum;
    let orient = &t.orientation;

    // left approximation tk -> T'
    let mut left: Vec<(usize, Hom)> = Vec::new();
    for &j in &others {
        let mut span = Vec::new();
        for &l in &others {
            let hs = tk.hom_basis(&t.summands[l].module)?;
            for g in rad_maps(t, l, j)? {
                for h in &hs {
                    span.push(flatten(&compose(&g, h)));
                }
            }
        }
        let cands = tk.hom_basis(&t.summands[j].module)?;
        left.extend(pick_top(cands, span).into_iter().map(|h| (j, h)));
    }
    let t_prime = PreprojModule::direct_sum_all(datum, orient, left.iter().map(|(j, _)| &t.summands[*j].module))?;
    let f: Vec<QMat> = datum
        .vertices()
        .map(|i| {
            let blocks: Vec<QMat> = left.iter().map(|(_, h)| h[i - 1].clone()).collect();
            QMat::vstack(&blocks, tk.dim().at(i) as usize)
        })
        .collect();
    if f.iter().zip(tk.dim().0.iter()).any(|(m, &d)| m.rank() != d as usize) {
        return Err(Error::ExchangeValidation("left approximation is not injective".into()));
    }
    let complement = t_prime.cokernel_of(&f)?;
    if complement.is_zero_module() || !complement.is_indecomposable()? {
        return Err(Error::NoComplement);
    }
    for &j in &others {
        if complement.is_isomorphic(&t.summands[j].module)? {
            return Err(Error::NoComplement);
        }
    }
    let e = tk.ext1_dim(&complement)?;
    if e != 1 {
        return Err(Error::ExchangeValidation(format!("dim Ext1(T_k, T_k*) = {e}")));
    }

    // right approximation T'' -> tk
    let mut right: Vec<(usize, Hom)> = Vec::new();
    for &j in &others {
        let mut span = Vec::new();
        for &l in &others {
            let hs = t.summands[l].module.hom_basis(tk)?;
            for g in rad_maps(t, j, l)? {
                for h in &hs {
                    span.push(flatten(&compose(h, &g)));
                }
            }
        }
        let cands = t.summands[j].module.hom_basis(tk)?;
        right.extend(pick_top(cands, span).into_iter().map(|h| (j, h)));
    }
    let t_double_prime =
        PreprojModule::direct_sum_all(datum, orient, right.iter().map(|(j, _)| &t.summands[*j].module))?;
    let g: Vec<QMat> = datum
        .vertices()
        .map(|i| {
            let blocks: Vec<QMat> = right.iter().map(|(_, h)| h[i - 1].clone()).collect();
            QMat::hstack(&blocks, tk.dim().at(i) as usize)
        })
        .collect();
    if g.iter().zip(tk.dim().0.iter()).any(|(m, &d)| m.rank() != d as usize) {
        return Err(Error::ExchangeValidation("right approximation is not surjective".into()));
    }
    let kernel = t_double_prime.kernel_of(&g)?;
    if !kernel.is_isomorphic(&complement)? {
        return Err(Error::ExchangeValidation("kernel of the right approximation is not T_k*".into()));
    }
    let expect = &(tk.dim() + complement.dim());
    if t_prime.dim() != expect || t_double_prime.dim() != expect {
        return Err(Error::ExchangeValidation("middle terms have the wrong dimension".into()));
    }

    let mult = |v: &[(usize, Hom)]| {
        let mut m = vec![0usize; t.len()];
        for (j, _) in v {
            m[*j] += 1;
        }
        m
    };
    let label = match sk.label.strip_suffix('*') {
        Some(s) => s.to_string(),
        None => format!("{}*", sk.label),
    };
    let mut summands = t.summands.clone();
    summands[k] = Summand { label, module: complement.clone(), frozen: false };
    let collection = RigidCollection::new(datum, orient, summands)
        .map_err(|e| Error::ExchangeValidation(format!("mutated collection invalid: {e}")))?;
    Ok(Mutation {
        collection,
        complement,
        t_prime,
        t_double_prime,
        t_prime_mult: mult(&left),
        t_double_prime_mult: mult(&right),
    })
}

/// For `w = w0`: no indecomposable `X` outside `add(T)` has
/// `Ext1(T + X, X) = 0`, over all dimension vectors below `bound`.
pub fn maximal_rigid_check(
    t: &RigidCollection,
    word: &WeylWord,
    bound: &WeightVector,
    entries: &[i64],
) -> Result<bool> {
    if word.len() != t.datum.positive_roots().len() || !t.datum.is_reduced(word) {
        return Err(Error::UnsupportedCw);
    }
    let total = t.total()?;
    if !total.is_rigid()? {
        return Ok(false);
    }
    for x in super::indecomposables(&t.datum, &t.orientation, bound, entries)? {
        if t.position(&x)?.is_some() {
            continue;
        }
        if total.direct_sum(&x)?.ext1_dim(&x)? == 0 {
            return Ok(false);
        }
    }
    Ok(true)
}
