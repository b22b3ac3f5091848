//! Small dense rational matrices with explicit shapes, so that empty
//! blocks still know their dimensions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::linalg;

pub type Q = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    e: Vec<Q>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, e: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: &[Vec<Q>]) -> Option<Self> {
        if data.len() != rows || data.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(QMat { rows, cols, e: data.iter().flatten().cloned().collect() })
    }

    pub fn from_ints(rows: usize, cols: usize, data: &[i64]) -> Self {
        assert_eq!(data.len(), rows * cols);
        QMat { rows, cols, e: data.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect() }
    }

    /// Matrix whose columns are `cols` (each of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            for (r, x) in v.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.e[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.e[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[Q] {
        &self.e
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        (0..self.rows).map(|r| self.e[r * self.cols..(r + 1) * self.cols].to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, o: &QMat) -> QMat {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut m = Self::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let v = m.get(r, c) + a * b;
                        m.set(r, c, v);
                    }
                }
            }
        }
        m
    }

    pub fn add(&self, o: &QMat) -> QMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        QMat { rows: self.rows, cols: self.cols, e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, s: &Q) -> QMat {
        QMat { rows: self.rows, cols: self.cols, e: self.e.iter().map(|a| a * s).collect() }
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).fold(Q::zero(), |a, b| a + b)
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        linalg::rank(&self.to_rows())
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, o: &QMat) -> QMat {
        let mut m = Self::zeros(self.rows + o.rows, self.cols + o.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, o);
        m
    }

    pub fn paste(&mut self, r0: usize, c0: usize, o: &QMat) {
        for r in 0..o.rows {
            for c in 0..o.cols {
                self.set(r0 + r, c0 + c, o.get(r, c).clone());
            }
        }
    }

    pub fn vstack(blocks: &[QMat], cols: usize) -> QMat {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(rows, cols);
        let mut r0 = 0;
        for b in blocks {
            m.paste(r0, 0, b);
            r0 += b.rows;
        }
        m
    }

    pub fn hstack(blocks: &[QMat], rows: usize) -> QMat {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            m.paste(0, c0, b);
            c0 += b.cols;
        }
        m
    }

    /// Basis of the column space, as a list of columns.
    pub fn column_basis(&self) -> Vec<Vec<Q>> {
        let mut out: Vec<Vec<Q>> = Vec::new();
        for c in 0..self.cols {
            let v = self.column(c);
            let mut trial = out.clone();
            trial.push(v.clone());
            if linalg::rank(&trial) == trial.len() {
                out.push(v);
            }
        }
        out
    }

    /// Basis of the kernel, as columns.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        if self.rows == 0 {
            return (0..self.cols).map(|i| unit(self.cols, i)).collect();
        }
        linalg::nullspace(&self.to_rows(), self.cols)
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

/// Extends the independent columns `span` of `Q^n` to a basis with unit
/// vectors. Returns the added columns and the inverse of `[span | added]`,
/// whose first rows give coordinates along `span` and whose last rows
/// project onto the complement.
pub fn complete_basis(span: &[Vec<Q>], n: usize) -> (Vec<Vec<Q>>, QMat) {
    let mut all: Vec<Vec<Q>> = span.to_vec();
    let mut added = Vec::new();
    for i in 0..n {
        if all.len() == n {
            break;
        }
        let u = unit(n, i);
        let mut trial = all.clone();
        trial.push(u.clone());
        if linalg::rank(&trial) == trial.len() {
            all.push(u.clone());
            added.push(u);
        }
    }
    let inv = if n == 0 {
        QMat::zeros(0, 0)
    } else {
        let m = QMat::from_columns(n, &all);
        let inv = linalg::inverse(&m.to_rows()).expect("completed basis is invertible");
        QMat::from_rows(n, n, &inv).unwrap()
    };
    (added, inv)
}

/// Rows `from..to` of `m`.
pub fn row_slice(m: &QMat, from: usize, to: usize) -> QMat {
    let rows: Vec<Vec<Q>> = m.to_rows()[from..to].to_vec();
    QMat::from_rows(to - from, m.cols, &rows).unwrap()
}

pub fn rat_to_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(a.trim().parse().ok()?, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}
