//! Finite-dimensional nilpotent modules over the preprojective algebra of
//! a Dynkin quiver, stored as rational matrices on the doubled quiver.

mod enumerate;
mod matrix;
mod mutation;

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::canonical::{CanonicalBasis, Label};
use crate::error::{Error, Result};
use crate::quiver::{Arrow, CartanDatum, Orientation, Vertex, WeightVector};

pub use enumerate::{component_closures_containing, dims_below, enumerate_modules, hom_order_le, indecomposables};
pub use matrix::{parse_rat, rat_to_string, QMat, Q};
pub use mutation::{maximal_rigid_check, mutate_rigid, Mutation, RigidCollection, Summand, SummandFile};

/// A graded map `M -> N`, one block per vertex (index `i - 1`).
pub type Hom = Vec<QMat>;

/// Seeds for the randomized isomorphism test. Fixed so that runs repeat.
const ISO_SEED: u64 = 0x5eed_0001;
const ISO_TRIES: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct PreprojModule {
    datum: CartanDatum,
    orientation: Orientation,
    dim: WeightVector,
    arrows: BTreeMap<Arrow, QMat>,
}

/// Serialized form: `{"dim": [..], "arrows": {"1>2": [["1"]]}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub dim: Vec<i64>,
    pub arrows: BTreeMap<String, Vec<Vec<String>>>,
}

impl PreprojModule {
    /// Builds a representation of the doubled quiver. Arrows not listed
    /// are zero. Does not check the module relations; see [`is_module`].
    ///
    /// [`is_module`]: PreprojModule::is_module
    pub fn new(
        datum: &CartanDatum,
        orientation: &Orientation,
        dim: WeightVector,
        arrows: BTreeMap<Arrow, QMat>,
    ) -> Result<Self> {
        if dim.rank() != datum.rank() || !dim.is_nonnegative() {
            return Err(Error::Shape(format!("bad dimension vector {dim:?}")));
        }
        let all = orientation.all_arrows();
        let mut full = BTreeMap::new();
        for h in &all {
            let (r, c) = (dim.at(h.dst) as usize, dim.at(h.src) as usize);
            let m = match arrows.get(h) {
                Some(m) if m.rows == r && m.cols == c => m.clone(),
                Some(m) => {
                    return Err(Error::Shape(format!(
                        "arrow {} is {}x{}, expected {r}x{c}",
                        h.label(),
                        m.rows,
                        m.cols
                    )))
                }
                None => QMat::zeros(r, c),
            };
            full.insert(*h, m);
        }
        if let Some(h) = arrows.keys().find(|h| !all.contains(h)) {
            return Err(Error::Shape(format!("{} is not an arrow of the double quiver", h.label())));
        }
        Ok(PreprojModule { datum: datum.clone(), orientation: orientation.clone(), dim, arrows: full })
    }

    /// Convenience constructor from integer entries, row-major.
    pub fn from_ints(
        datum: &CartanDatum,
        orientation: &Orientation,
        dim: &[i64],
        arrows: &[((Vertex, Vertex), Vec<i64>)],
    ) -> Result<Self> {
        let dim = WeightVector(dim.to_vec());
        let mut map = BTreeMap::new();
        for ((s, t), data) in arrows {
            let (r, c) = (dim.0[t - 1] as usize, dim.0[s - 1] as usize);
            if data.len() != r * c {
                return Err(Error::Shape(format!("arrow {s}>{t} needs {} entries", r * c)));
            }
            map.insert(Arrow { src: *s, dst: *t }, QMat::from_ints(r, c, data));
        }
        Self::new(datum, orientation, dim, map)
    }

    pub fn zero(datum: &CartanDatum, orientation: &Orientation) -> Self {
        Self::new(datum, orientation, WeightVector::zero(datum.rank()), BTreeMap::new()).unwrap()
    }

    pub fn simple(datum: &CartanDatum, orientation: &Orientation, i: Vertex) -> Result<Self> {
        datum.check_vertex(i)?;
        Self::new(datum, orientation, WeightVector::simple(datum.rank(), i), BTreeMap::new())
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn orientation(&self) -> &Orientation {
        &self.orientation
    }

    pub fn dim(&self) -> &WeightVector {
        &self.dim
    }

    fn d(&self, i: Vertex) -> usize {
        self.dim.at(i) as usize
    }

    pub fn total_dim(&self) -> usize {
        self.dim.0.iter().map(|&x| x as usize).sum()
    }

    pub fn arrow(&self, h: Arrow) -> &QMat {
        &self.arrows[&h]
    }

    pub fn arrows(&self) -> &BTreeMap<Arrow, QMat> {
        &self.arrows
    }

    pub fn is_zero_module(&self) -> bool {
        self.dim.is_zero()
    }

    fn same_quiver(&self, o: &PreprojModule) -> Result<()> {
        if self.datum != o.datum || self.orientation != o.orientation {
            return Err(Error::DatumMismatch);
        }
        Ok(())
    }

    /// `mu_i = sum_{h : dst(h) = i} eps(h) B_h B_hbar`, per vertex.
    pub fn moment_residual(&self) -> Vec<QMat> {
        self.datum
            .vertices()
            .map(|i| {
                let mut acc = QMat::zeros(self.d(i), self.d(i));
                for (h, b) in &self.arrows {
                    if h.dst == i {
                        let p = b.mul(&self.arrows[&h.reversed()]);
                        let s = Q::from_integer(self.orientation.sign(*h).into());
                        acc = acc.add(&p.scale(&s));
                    }
                }
                acc
            })
            .collect()
    }

    /// Every long enough path acts by zero.
    pub fn is_nilpotent(&self) -> bool {
        let n = self.datum.rank();
        let mut spaces: Vec<Vec<Vec<Q>>> =
            (1..=n).map(|i| (0..self.d(i)).map(|k| matrix::unit(self.d(i), k)).collect()).collect();
        for _ in 0..=self.total_dim() {
            if spaces.iter().all(|s| s.is_empty()) {
                return true;
            }
            let mut next: Vec<Vec<Vec<Q>>> = vec![Vec::new(); n];
            for (h, b) in &self.arrows {
                for v in &spaces[h.src - 1] {
                    let w = b.mul(&QMat::from_columns(v.len(), std::slice::from_ref(v)));
                    next[h.dst - 1].push(w.column(0));
                }
            }
            spaces = next
                .into_iter()
                .enumerate()
                .map(|(k, cols)| QMat::from_columns(self.d(k + 1), &cols).column_basis())
                .collect();
        }
        spaces.iter().all(|s| s.is_empty())
    }

    pub fn is_module(&self) -> bool {
        self.moment_residual().iter().all(QMat::is_zero) && self.is_nilpotent()
    }

    pub fn direct_sum(&self, o: &PreprojModule) -> Result<Self> {
        self.same_quiver(o)?;
        let dim = &self.dim + &o.dim;
        let arrows = self.arrows.iter().map(|(h, b)| (*h, b.block_diag(&o.arrows[h]))).collect();
        Self::new(&self.datum, &self.orientation, dim, arrows)
    }

    pub fn direct_sum_all<'a>(
        datum: &CartanDatum,
        orientation: &Orientation,
        parts: impl IntoIterator<Item = &'a PreprojModule>,
    ) -> Result<Self> {
        let mut acc = Self::zero(datum, orientation);
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// Offsets of the blocks of a graded map `self -> n` in its flattened
    /// coordinate vector.
    fn hom_layout(&self, n: &PreprojModule) -> (Vec<usize>, usize) {
        let mut off = Vec::new();
        let mut k = 0;
        for i in self.datum.vertices() {
            off.push(k);
            k += n.d(i) * self.d(i);
        }
        (off, k)
    }

    fn unflatten(&self, n: &PreprojModule, v: &[Q]) -> Hom {
        let (off, _) = self.hom_layout(n);
        self.datum
            .vertices()
            .map(|i| {
                let (r, c) = (n.d(i), self.d(i));
                let rows: Vec<Vec<Q>> = (0..r).map(|a| v[off[i - 1] + a * c..off[i - 1] + (a + 1) * c].to_vec()).collect();
                QMat::from_rows(r, c, &rows).unwrap()
            })
            .collect()
    }

    /// Basis of `Hom(self, n)`: solutions of `phi_t B_h = B'_h phi_s`.
    pub fn hom_basis(&self, n: &PreprojModule) -> Result<Vec<Hom>> {
        self.same_quiver(n)?;
        let (off, nvars) = self.hom_layout(n);
        if nvars == 0 {
            return Ok(Vec::new());
        }
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for (h, bm) in &self.arrows {
            let bn = &n.arrows[h];
            let (s, t) = (h.src, h.dst);
            let (ms, nt, mt, ns) = (self.d(s), n.d(t), self.d(t), n.d(s));
            for r in 0..nt {
                for c in 0..ms {
                    let mut row = vec![Q::zero(); nvars];
                    for k in 0..mt {
                        let x = bm.get(k, c);
                        if !x.is_zero() {
                            row[off[t - 1] + r * mt + k] += x;
                        }
                    }
                    for k in 0..ns {
                        let x = bn.get(r, k);
                        if !x.is_zero() {
                            row[off[s - 1] + k * ms + c] -= x;
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let basis = if rows.is_empty() {
            (0..nvars).map(|k| matrix::unit(nvars, k)).collect()
        } else {
            crate::linalg::nullspace(&rows, nvars)
        };
        Ok(basis.iter().map(|v| self.unflatten(n, v)).collect())
    }

    pub fn hom_dim(&self, n: &PreprojModule) -> Result<usize> {
        Ok(self.hom_basis(n)?.len())
    }

    /// `dim Ext^1(M, N) = hom(M, N) + hom(N, M) - (dim M, dim N)`.
    pub fn ext1_dim(&self, n: &PreprojModule) -> Result<usize> {
        let e = self.hom_dim(n)? as i64 + n.hom_dim(self)? as i64 - self.datum.pair(&self.dim, &n.dim);
        if e < 0 {
            return Err(Error::NotModule(format!("negative Ext dimension {e}")));
        }
        Ok(e as usize)
    }

    pub fn is_rigid(&self) -> Result<bool> {
        Ok(self.ext1_dim(self)? == 0)
    }

    /// `dim E_V = sum over Omega of d_src d_dst`.
    pub fn lagrangian_dim(&self) -> usize {
        self.orientation.omega.iter().map(|h| self.d(h.src) * self.d(h.dst)).sum()
    }

    /// Orbit dimension `dim G_V - dim Aut(M)`.
    pub fn orbit_dim(&self) -> Result<usize> {
        let g: usize = self.datum.vertices().map(|i| self.d(i) * self.d(i)).sum();
        Ok(g - self.hom_dim(self)?)
    }

    pub fn is_open_orbit(&self) -> Result<bool> {
        Ok(self.orbit_dim()? == self.lagrangian_dim())
    }

    /// Trace form `tr(x y)` on a basis of the endomorphism algebra. Its
    /// radical is the Jacobson radical (characteristic zero).
    fn trace_form(&self, basis: &[Hom]) -> Vec<Vec<Q>> {
        basis
            .iter()
            .map(|x| {
                basis
                    .iter()
                    .map(|y| x.iter().zip(y).map(|(a, b)| a.mul(b).trace()).fold(Q::zero(), |s, t| s + t))
                    .collect()
            })
            .collect()
    }

    /// Basis of the radical of `End(self)`.
    pub fn radical_endomorphisms(&self) -> Result<Vec<Hom>> {
        let basis = self.hom_basis(self)?;
        if basis.is_empty() {
            return Ok(Vec::new());
        }
        let g = self.trace_form(&basis);
        let null = crate::linalg::nullspace(&g, basis.len());
        Ok(null.iter().map(|c| combine(&basis, c)).collect())
    }

    /// Nonzero with `End / rad End` one-dimensional.
    pub fn is_indecomposable(&self) -> Result<bool> {
        if self.is_zero_module() {
            return Ok(false);
        }
        let basis = self.hom_basis(self)?;
        Ok(crate::linalg::rank(&self.trace_form(&basis)) == 1)
    }

    /// Searches for an invertible intertwiner among random combinations
    /// of a basis of `Hom(self, n)`, with a fixed seed schedule.
    pub fn is_isomorphic(&self, n: &PreprojModule) -> Result<bool> {
        self.same_quiver(n)?;
        if self.dim != n.dim {
            return Ok(false);
        }
        let basis = self.hom_basis(n)?;
        if basis.len() != self.hom_dim(self)? || basis.len() != n.hom_dim(n)? {
            return Ok(false);
        }
        if self.is_zero_module() {
            return Ok(true);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(ISO_SEED);
        for _ in 0..ISO_TRIES {
            let c: Vec<Q> = basis.iter().map(|_| Q::from_integer(rng.gen_range(-64i64..=64).into())).collect();
            let phi = combine(&basis, &c);
            if phi.iter().all(|b| b.rank() == b.rows) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Dimension of the cokernel of the incoming arrows at `i`, i.e. the
    /// multiplicity of `S_i` in the top.
    pub fn top_dim(&self, i: Vertex) -> usize {
        self.d(i) - self.incoming_image(i).len()
    }

    fn incoming_image(&self, i: Vertex) -> Vec<Vec<Q>> {
        let blocks: Vec<QMat> = self.arrows.iter().filter(|(h, _)| h.dst == i).map(|(_, b)| b.clone()).collect();
        QMat::hstack(&blocks, self.d(i)).column_basis()
    }

    /// The kernel of the projection onto the `i`-part of the top.
    pub fn radical_at(&self, i: Vertex) -> Result<Self> {
        let img = self.incoming_image(i);
        let n = self.d(i);
        let sub: Vec<QMat> = self
            .datum
            .vertices()
            .map(|j| if j == i { QMat::from_columns(n, &img) } else { QMat::identity(self.d(j)) })
            .collect();
        self.submodule(&sub)
    }

    /// Restriction to the graded subspace spanned by the columns of
    /// `sub[i]`, which must be independent and stable under all arrows.
    pub fn submodule(&self, sub: &[QMat]) -> Result<Self> {
        let dim = WeightVector(sub.iter().map(|m| m.cols as i64).collect());
        let lefts: Vec<QMat> = sub
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Q>> = (0..m.cols).map(|c| m.column(c)).collect();
                let (_, inv) = matrix::complete_basis(&cols, m.rows);
                matrix::row_slice(&inv, 0, m.cols)
            })
            .collect();
        let mut arrows = BTreeMap::new();
        for (h, b) in &self.arrows {
            let image = b.mul(&sub[h.src - 1]);
            let coords = lefts[h.dst - 1].mul(&image);
            if sub[h.dst - 1].mul(&coords) != image {
                return Err(Error::NotModule(format!("subspace not stable under {}", h.label())));
            }
            arrows.insert(*h, coords);
        }
        Self::new(&self.datum, &self.orientation, dim, arrows)
    }

    /// Quotient by the image of `f: a -> self`.
    pub fn cokernel_of(&self, f: &[QMat]) -> Result<Self> {
        let mut sections = Vec::new();
        let mut projections = Vec::new();
        for i in self.datum.vertices() {
            let n = self.d(i);
            let img = f[i - 1].column_basis();
            let (added, inv) = matrix::complete_basis(&img, n);
            sections.push(QMat::from_columns(n, &added));
            projections.push(matrix::row_slice(&inv, img.len(), n));
        }
        let dim = WeightVector(sections.iter().map(|s| s.cols as i64).collect());
        let arrows = self
            .arrows
            .iter()
            .map(|(h, b)| (*h, projections[h.dst - 1].mul(&b.mul(&sections[h.src - 1]))))
            .collect();
        Self::new(&self.datum, &self.orientation, dim, arrows)
    }

    /// Kernel of `g: self -> b`, as a submodule.
    pub fn kernel_of(&self, g: &[QMat]) -> Result<Self> {
        let sub: Vec<QMat> =
            self.datum.vertices().map(|i| QMat::from_columns(self.d(i), &g[i - 1].kernel())).collect();
        self.submodule(&sub)
    }

    /// Crystal label in `B(infinity)` via the top recursion
    /// `M -> rad_i M`, `b(M) = f_i^c b(rad_i M)` with `c` the `i`-top.
    pub fn crystal_label(&self, cb: &CanonicalBasis) -> Result<Label> {
        if self.is_zero_module() {
            return Ok(cb.zero_label());
        }
        let i = self
            .datum
            .vertices()
            .find(|&i| self.top_dim(i) > 0)
            .ok_or_else(|| Error::NotModule("nonzero module with zero top".into()))?;
        let c = self.top_dim(i);
        let mut b = self.radical_at(i)?.crystal_label(cb)?;
        for _ in 0..c {
            b = cb.f_tilde(i, &b)?;
        }
        Ok(b)
    }

    pub fn to_file(&self) -> ModuleFile {
        ModuleFile {
            dim: self.dim.0.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|(h, b)| (h.label(), b.to_rows().iter().map(|r| r.iter().map(rat_to_string).collect()).collect()))
                .collect(),
        }
    }

    pub fn from_file(datum: &CartanDatum, orientation: &Orientation, f: &ModuleFile) -> Result<Self> {
        let dim = WeightVector(f.dim.clone());
        if dim.rank() != datum.rank() || !dim.is_nonnegative() {
            return Err(Error::Shape(format!("bad dimension vector {:?}", f.dim)));
        }
        let mut arrows = BTreeMap::new();
        for (label, rows) in &f.arrows {
            let h = Arrow::parse(label)?;
            datum.check_vertex(h.src)?;
            datum.check_vertex(h.dst)?;
            let data: Option<Vec<Vec<Q>>> =
                rows.iter().map(|r| r.iter().map(|s| parse_rat(s)).collect()).collect();
            let data = data.ok_or_else(|| Error::InvalidArgument(format!("bad rational in arrow {label}")))?;
            let (r, c) = (dim.at(h.dst) as usize, dim.at(h.src) as usize);
            let m = QMat::from_rows(r, c, &data)
                .ok_or_else(|| Error::Shape(format!("arrow {label} must be {r}x{c}")))?;
            arrows.insert(h, m);
        }
        Self::new(datum, orientation, dim, arrows)
    }
}

pub(crate) fn combine(basis: &[Hom], c: &[Q]) -> Hom {
    let mut acc: Hom = basis[0].iter().map(|b| QMat::zeros(b.rows, b.cols)).collect();
    for (b, x) in basis.iter().zip(c) {
        if x.is_zero() {
            continue;
        }
        for (a, m) in acc.iter_mut().zip(b) {
            *a = a.add(&m.scale(x));
        }
    }
    acc
}

pub(crate) fn compose(g: &Hom, f: &Hom) -> Hom {
    g.iter().zip(f).map(|(a, b)| a.mul(b)).collect()
}

pub(crate) fn flatten(h: &Hom) -> Vec<Q> {
    h.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

#[cfg(test)]
mod tests;
