//! Kashiwara operators on explicit elements.
//!
//! Every `x` of `U_q^-` decomposes uniquely as `x = sum_n f_i^(n) x_n`
//! with `e'_i(x_n) = 0`. Since `e'_i f_i^(n) = q^-(n-1) f_i^(n-1)` on such
//! products, the top piece is `x_N = q^(N(N-1)/2) e'_i^N x` where `N` is
//! the largest `n` with `e'_i^n x != 0`; subtracting and repeating gives
//! the rest. `e~_i` and `f~_i` then shift every `n` by -1 and +1.

use crate::error::{Error, Result};
use crate::laurent::RatFunc;
use crate::quiver::Vertex;

/// What the operators need from a realization of `U_q^-`.
pub trait CrystalAlgebra {
    type Elem: Clone;

    fn eprime(&self, i: Vertex, x: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, x: &Self::Elem) -> Result<bool>;
    /// `f_i^(n) x`.
    fn divided_power_mul(&self, i: Vertex, n: u32, x: &Self::Elem) -> Result<Self::Elem>;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, x: &Self::Elem, c: &RatFunc) -> Self::Elem;
    fn zero_like(&self, x: &Self::Elem, i: Vertex, shift: i64) -> Self::Elem;
}

/// The pieces `(n, x_n)` of `x = sum f_i^(n) x_n`, with zero pieces
/// dropped, in decreasing `n`.
pub fn decompose<A: CrystalAlgebra>(alg: &A, i: Vertex, x: &A::Elem) -> Result<Vec<(u32, A::Elem)>> {
    let mut out = Vec::new();
    let mut rest = x.clone();
    while !alg.is_zero(&rest)? {
        let mut powers = vec![rest.clone()];
        loop {
            let next = alg.eprime(i, powers.last().unwrap())?;
            if alg.is_zero(&next)? {
                break;
            }
            powers.push(next);
        }
        let n = (powers.len() - 1) as u32;
        let top = alg.scale(powers.last().unwrap(), &RatFunc::q_pow((n as i64) * (n as i64 - 1) / 2));
        rest = alg.sub(&rest, &alg.divided_power_mul(i, n, &top)?)?;
        out.push((n, top));
    }
    Ok(out)
}

/// `epsilon_i(x)`: the top `n` of the decomposition.
pub fn epsilon<A: CrystalAlgebra>(alg: &A, i: Vertex, x: &A::Elem) -> Result<u32> {
    if alg.is_zero(x)? {
        return Err(Error::ZeroElement);
    }
    let mut n = 0;
    let mut cur = x.clone();
    loop {
        cur = alg.eprime(i, &cur)?;
        if alg.is_zero(&cur)? {
            return Ok(n);
        }
        n += 1;
    }
}

/// `e~_i(x)`; the `n = 0` piece is dropped.
pub fn e_tilde<A: CrystalAlgebra>(alg: &A, i: Vertex, x: &A::Elem) -> Result<A::Elem> {
    if alg.is_zero(x)? {
        return Err(Error::ZeroElement);
    }
    let mut acc = alg.zero_like(x, i, -1);
    for (n, piece) in decompose(alg, i, x)? {
        if n > 0 {
            acc = alg.add(&acc, &alg.divided_power_mul(i, n - 1, &piece)?)?;
        }
    }
    Ok(acc)
}

/// `f~_i(x)`.
pub fn f_tilde<A: CrystalAlgebra>(alg: &A, i: Vertex, x: &A::Elem) -> Result<A::Elem> {
    let mut acc = alg.zero_like(x, i, 1);
    for (n, piece) in decompose(alg, i, x)? {
        acc = alg.add(&acc, &alg.divided_power_mul(i, n + 1, &piece)?)?;
    }
    Ok(acc)
}

impl CrystalAlgebra for super::UqMinus {
    type Elem = super::WordElement;

    fn eprime(&self, i: Vertex, x: &Self::Elem) -> Result<Self::Elem> {
        Ok(super::UqMinus::eprime(self, i, x))
    }

    fn is_zero(&self, x: &Self::Elem) -> Result<bool> {
        super::UqMinus::is_zero(self, x)
    }

    fn divided_power_mul(&self, i: Vertex, n: u32, x: &Self::Elem) -> Result<Self::Elem> {
        // keep elements small: rewrite over basis words after each product
        self.reduce(&self.divided_power(i, n).concat(x))
    }

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        self.reduce(&x.sub(y))
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        Ok(x.add(y))
    }

    fn scale(&self, x: &Self::Elem, c: &RatFunc) -> Self::Elem {
        x.scale(c)
    }

    fn zero_like(&self, x: &Self::Elem, i: Vertex, shift: i64) -> Self::Elem {
        let mut w = x.weight().clone();
        w.0[i - 1] += shift;
        super::WordElement::zero(w)
    }
}
