//! Brute-force classification at representation-finite desk scale.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{PreprojModule, QMat};
use crate::error::{Error, Result};
use crate::quiver::{CartanDatum, Orientation, WeightVector};

fn check_supported(datum: &CartanDatum) -> Result<()> {
    let n = datum.rank();
    let path = datum.edges.len() + 1 == n && datum.vertices().all(|i| datum.vertices().filter(|&j| datum.adjacent(i, j)).count() <= 2);
    if !(2..=4).contains(&n) || !path {
        return Err(Error::UnsupportedType(datum.name.clone()));
    }
    Ok(())
}

/// Cheap isomorphism invariant used to bucket candidates.
fn invariant(m: &PreprojModule) -> Result<(usize, Vec<usize>, Vec<usize>)> {
    let tops = m.datum().vertices().map(|i| m.top_dim(i)).collect();
    let ranks = m.arrows().values().map(QMat::rank).collect();
    Ok((m.hom_dim(m)?, tops, ranks))
}

/// One module per isomorphism class of dimension `dim`, found by running
/// over all matrices with entries in `entries`. Classes are listed in the
/// order their first representative is met.
pub fn enumerate_modules(
    datum: &CartanDatum,
    orientation: &Orientation,
    dim: &WeightVector,
    entries: &[i64],
) -> Result<Vec<PreprojModule>> {
    check_supported(datum)?;
    if dim.rank() != datum.rank() || !dim.is_nonnegative() {
        return Err(Error::Shape(format!("bad dimension vector {dim:?}")));
    }
    if entries.is_empty() {
        return Err(Error::InvalidArgument("empty entry set".into()));
    }
    let arrows = orientation.all_arrows();
    let shapes: Vec<(usize, usize)> =
        arrows.iter().map(|h| (dim.at(h.dst) as usize, dim.at(h.src) as usize)).collect();
    let slots: usize = shapes.iter().map(|(r, c)| r * c).sum();
    let mut digits = vec![0usize; slots];
    let mut classes: Vec<PreprojModule> = Vec::new();
    let mut buckets: BTreeMap<(usize, Vec<usize>, Vec<usize>), Vec<usize>> = BTreeMap::new();
    loop {
        let mut map = BTreeMap::new();
        let mut k = 0;
        for (h, &(r, c)) in arrows.iter().zip(&shapes) {
            let data: Vec<i64> = digits[k..k + r * c].iter().map(|&d| entries[d]).collect();
            k += r * c;
            map.insert(*h, QMat::from_ints(r, c, &data));
        }
        let m = PreprojModule::new(datum, orientation, dim.clone(), map)?;
        if m.is_module() {
            let key = invariant(&m)?;
            let bucket = buckets.entry(key).or_default();
            let mut seen = false;
            for &idx in bucket.iter() {
                if classes[idx].is_isomorphic(&m)? {
                    seen = true;
                    break;
                }
            }
            if !seen {
                bucket.push(classes.len());
                classes.push(m);
            }
        }
        // mixed-radix increment
        let mut p = 0;
        loop {
            if p == slots {
                return Ok(classes);
            }
            digits[p] += 1;
            if digits[p] < entries.len() {
                break;
            }
            digits[p] = 0;
            p += 1;
        }
    }
}

/// All nonzero dimension vectors below `bound`, in lexicographic order.
pub fn dims_below(bound: &WeightVector) -> Vec<WeightVector> {
    let mut out = vec![Vec::new()];
    for &b in &bound.0 {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i64>| {
                (0..=b).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out.into_iter().map(WeightVector).filter(|w| !w.is_zero()).collect()
}

/// Indecomposable classes with dimension vector below `bound`. Dimension
/// vectors are processed concurrently; output order is deterministic.
pub fn indecomposables(
    datum: &CartanDatum,
    orientation: &Orientation,
    bound: &WeightVector,
    entries: &[i64],
) -> Result<Vec<PreprojModule>> {
    let dims = dims_below(bound);
    let per_dim: Vec<Result<Vec<PreprojModule>>> = dims
        .par_iter()
        .map(|d| {
            let mut keep = Vec::new();
            for m in enumerate_modules(datum, orientation, d, entries)? {
                if m.is_indecomposable()? {
                    keep.push(m);
                }
            }
            Ok(keep)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_dim {
        out.extend(r?);
    }
    Ok(out)
}

/// Necessary condition for `n` to lie in the orbit closure of `m`:
/// `hom(X, m) <= hom(X, n)` and `hom(m, X) <= hom(n, X)` for every test
/// module `X`. On these representation-finite presets with all
/// indecomposables as tests it is also sufficient.
pub fn hom_order_le(m: &PreprojModule, n: &PreprojModule, tests: &[PreprojModule]) -> Result<bool> {
    if m.dim() != n.dim() {
        return Ok(false);
    }
    for x in tests {
        if x.hom_dim(m)? > x.hom_dim(n)? || m.hom_dim(x)? > n.hom_dim(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Irreducible components of the nilpotent variety of dimension
/// `point.dim()` whose closure contains `point`, each represented by its
/// rigid (open-orbit) module.
pub fn component_closures_containing(
    point: &PreprojModule,
    tests: &[PreprojModule],
    entries: &[i64],
) -> Result<Vec<PreprojModule>> {
    let mut out = Vec::new();
    for m in enumerate_modules(point.datum(), point.orientation(), point.dim(), entries)? {
        if m.is_open_orbit()? && hom_order_le(&m, point, tests)? {
            out.push(m);
        }
    }
    Ok(out)
}
