//! Exhaustive invariant checks over bounded heights. Each returns the list
//! of violations found, empty when everything holds.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canonical::{label_key, CanonicalBasis, Label};
use crate::error::Result;
use crate::quiver::{WeightVector, WeylWord};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub invariant: String,
    pub witness: String,
}

impl Violation {
    pub fn new(invariant: &str, witness: impl Into<String>) -> Self {
        Violation { invariant: invariant.to_string(), witness: witness.into() }
    }
}

/// Nonzero weights carrying labels, by height then lexicographically.
pub fn weights_up_to(cb: &CanonicalBasis, height: i64) -> Vec<WeightVector> {
    let set: BTreeSet<(i64, Vec<i64>)> =
        cb.labels_up_to(height).iter().map(|c| cb.weight_of(c)).filter(|w| !w.is_zero()).map(|w| (w.height(), w.0)).collect();
    set.into_iter().map(|(_, w)| WeightVector(w)).collect()
}

fn flatten(parts: Vec<Result<Vec<Violation>>>) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Braid relations, root vectors of `i0` inside `U_q^-`, exact PBW
/// orthogonality with the closed norm formula, and `b(c) = L(c) mod qL`.
pub fn convention_gate(cb: &CanonicalBasis, height: i64) -> Result<Vec<Violation>> {
    let mut out: Vec<Violation> =
        cb.uqfull().braid_violations()?.into_iter().map(|w| Violation::new("braid relations", w)).collect();
    if let Err(e) = cb.uqfull().root_vectors(cb.word()) {
        out.push(Violation::new("root vectors in U_q^-", e.to_string()));
        return Ok(out);
    }
    let per_weight: Vec<Result<Vec<Violation>>> =
        weights_up_to(cb, height).par_iter().map(|nu| pbw_orthogonality(cb, nu)).collect();
    out.extend(flatten(per_weight)?);
    let labels = cb.labels_up_to(height);
    let cong: Vec<Result<Vec<Violation>>> = labels
        .par_iter()
        .map(|c| {
            let b = cb.canonical_element(c)?;
            Ok(match cb.identify(&b) {
                Ok((l, _)) if &l == c => vec![],
                Ok((l, _)) => vec![Violation::new("b(c) = L(c) mod qL", format!("{} identifies as {}", label_key(c), label_key(&l)))],
                Err(e) => vec![Violation::new("b(c) = L(c) mod qL", format!("{}: {e}", label_key(c)))],
            })
        })
        .collect();
    out.extend(flatten(cong)?);
    Ok(out)
}

/// Word-level pairing of the PBW elements of one weight.
fn pbw_orthogonality(cb: &CanonicalBasis, nu: &WeightVector) -> Result<Vec<Violation>> {
    let labels = cb.labels(nu);
    let word = cb.word();
    let elems: Vec<_> = labels.iter().map(|c| cb.uqfull().pbw_element(word, c)).collect::<Result<_>>()?;
    let uq = cb.uqminus();
    let mut out = Vec::new();
    for (r, a) in elems.iter().enumerate() {
        for (s, b) in elems.iter().enumerate().skip(r) {
            let p = uq.pairing(a, b)?;
            if r != s && !p.is_zero() {
                out.push(Violation::new(
                    "PBW orthogonality",
                    format!("({}, {}) = {p}", label_key(&labels[r]), label_key(&labels[s])),
                ));
            }
            if r == s && p != cb.pbw().l_norm(&labels[r]) {
                out.push(Violation::new("PBW norm formula", format!("{}: {p}", label_key(&labels[r]))));
            }
        }
    }
    Ok(out)
}

/// Bar invariance, unitriangularity with off-diagonal entries in `qZ[q]`,
/// and `(b, b') - delta` of positive valuation, at one weight.
pub fn table_integrity(cb: &CanonicalBasis, nu: &WeightVector) -> Result<Vec<Violation>> {
    let t = cb.table(nu)?;
    let m = t.indices.len();
    let mut out = Vec::new();
    let mut elems = Vec::new();
    for (s, c) in t.indices.iter().enumerate() {
        let b = cb.canonical_element(c)?;
        if cb.pbw().l_coords(&cb.pbw().bar(&b)) != cb.pbw().l_coords(&b) {
            out.push(Violation::new("bar invariance", label_key(c)));
        }
        for r in 0..m {
            let k = &t.kappa[r][s];
            let ok = match r.cmp(&s) {
                std::cmp::Ordering::Equal => k.is_one(),
                std::cmp::Ordering::Less => k.is_zero(),
                std::cmp::Ordering::Greater => k.valuation().map_or(true, |v| v >= 1),
            };
            if !ok {
                out.push(Violation::new(
                    "unitriangular transition",
                    format!("L({}) in b({}): {k}", label_key(&t.indices[r]), label_key(c)),
                ));
            }
        }
        elems.push(b);
    }
    for r in 0..m {
        for s in r..m {
            let mut p = cb.pbw().pairing(&elems[r], &elems[s]);
            if r == s {
                p = &p - &crate::laurent::RatFunc::one();
            }
            if p.valuation().is_some_and(|v| v <= 0) {
                out.push(Violation::new(
                    "near orthonormality",
                    format!("({}, {}) - delta = {p}", label_key(&t.indices[r]), label_key(&t.indices[s])),
                ));
            }
        }
    }
    Ok(out)
}

pub fn canonical_integrity(cb: &CanonicalBasis, height: i64) -> Result<Vec<Violation>> {
    let parts: Vec<Result<Vec<Violation>>> =
        weights_up_to(cb, height).par_iter().map(|nu| table_integrity(cb, nu)).collect();
    flatten(parts)
}

/// `B(w)` from PBW monomials against the crystal recursion.
pub fn bw_route_agreement(cb: &CanonicalBasis, word: &WeylWord, height: i64) -> Result<Vec<Violation>> {
    let a = cb.bw_members_pbw(word, height)?;
    let b = cb.bw_members_crystal(word, height)?;
    let mut out = Vec::new();
    for c in a.symmetric_difference(&b) {
        let side = if a.contains(c) { "pbw only" } else { "crystal only" };
        out.push(Violation::new("B(w) routes agree", format!("w = {word}: {} {side}", label_key(c))));
    }
    Ok(out)
}

pub fn bw_routes_all(cb: &CanonicalBasis, height: i64) -> Result<Vec<Violation>> {
    let ws = cb.datum().weyl_elements();
    let parts: Vec<Result<Vec<Violation>>> = ws.par_iter().map(|w| bw_route_agreement(cb, w, height)).collect();
    flatten(parts)
}

/// Structure constants via the coproduct against the PBW product, for all
/// pairs with total height at most `height`.
pub fn structure_constant_routes(cb: &CanonicalBasis, height: i64) -> Result<Vec<Violation>> {
    let labels = cb.labels_up_to(height);
    let pairs: Vec<(Label, Label)> = labels
        .iter()
        .flat_map(|a| labels.iter().map(move |b| (a.clone(), b.clone())))
        .filter(|(a, b)| cb.weight_of(a).height() + cb.weight_of(b).height() <= height)
        .collect();
    let parts: Vec<Result<Vec<Violation>>> = pairs
        .par_iter()
        .map(|(a, b)| {
            let x = cb.structure_constants(a, b)?;
            let y = cb.structure_constants_coproduct(a, b)?;
            Ok(if x == y {
                vec![]
            } else {
                vec![Violation::new("structure constant routes", format!("{} * {}", label_key(a), label_key(b)))]
            })
        })
        .collect();
    flatten(parts)
}

/// Reflexivity of `epsilon_bound_set` for every label, and for `b(f_i)`
/// with `i` the first letter of `i0` the set is exactly `eps_i >= 1`.
pub fn epsilon_bound_checks(cb: &CanonicalBasis, height: i64) -> Result<Vec<Violation>> {
    let labels = cb.labels_up_to(height);
    let parts: Vec<Result<Vec<Violation>>> = labels
        .par_iter()
        .map(|c| {
            Ok(if cb.epsilon_bound_set(c, height)?.contains(c) {
                vec![]
            } else {
                vec![Violation::new("epsilon bound reflexive", label_key(c))]
            })
        })
        .collect();
    let mut out = flatten(parts)?;
    let i = cb.word().letters[0];
    let f = cb.f_tilde(i, &cb.zero_label())?;
    let got = cb.epsilon_bound_set(&f, height)?;
    let mut want = BTreeSet::new();
    for b in labels {
        if cb.epsilon(i, &b)? >= 1 {
            want.insert(b);
        }
    }
    for c in got.symmetric_difference(&want) {
        out.push(Violation::new("epsilon cut of b(f_i)", label_key(c)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_heights_are_clean() {
        let cb = CanonicalBasis::preset("A2").unwrap();
        assert_eq!(convention_gate(&cb, 4).unwrap(), vec![]);
        assert_eq!(canonical_integrity(&cb, 4).unwrap(), vec![]);
        assert_eq!(bw_routes_all(&cb, 4).unwrap(), vec![]);
        assert_eq!(structure_constant_routes(&cb, 3).unwrap(), vec![]);
        assert_eq!(epsilon_bound_checks(&cb, 4).unwrap(), vec![]);
        assert_eq!(weights_up_to(&cb, 2).len(), 5);
    }
}
