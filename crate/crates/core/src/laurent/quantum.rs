//! Balanced quantum integers, factorials and Gaussian binomials.

use super::LaurentPoly;
use crate::error::{Error, Result};

/// `[n] = (q^n - q^-n) / (q - q^-1) = q^(n-1) + q^(n-3) + ... + q^(1-n)`.
pub fn quantum_int(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeArgument(n));
    }
    Ok(LaurentPoly::from_terms((0..n).map(|k| (n - 1 - 2 * k, 1))))
}

/// `[n]! = [n][n-1]...[1]`, with `[0]! = 1`.
pub fn quantum_factorial(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeArgument(n));
    }
    let mut out = LaurentPoly::one();
    for k in 1..=n {
        out = &out * &quantum_int(k)?;
    }
    Ok(out)
}

/// Gaussian binomial `[n choose k]`, computed by the recursion
/// `[n, k] = q^-k [n-1, k] + q^(n-k) [n-1, k-1]`.
pub fn quantum_binomial(n: i64, k: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeArgument(n));
    }
    if k < 0 {
        return Err(Error::NegativeArgument(k));
    }
    if k > n {
        return Err(Error::InvalidArgument(format!("binomial index {k} exceeds {n}")));
    }
    let n = n as usize;
    let mut row = vec![LaurentPoly::one()];
    for m in 1..=n {
        let mut next = vec![LaurentPoly::one(); m + 1];
        for j in 1..m {
            next[j] = &row[j].shift(-(j as i64)) + &row[j - 1].shift((m - j) as i64);
        }
        row = next;
    }
    Ok(row.swap_remove(k as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::RatFunc;

    #[test]
    fn small_values() {
        assert_eq!(quantum_int(2).unwrap(), LaurentPoly::from_terms([(1, 1), (-1, 1)]));
        assert_eq!(quantum_factorial(1).unwrap(), LaurentPoly::one());
        assert_eq!(quantum_factorial(0).unwrap(), LaurentPoly::one());
        assert!(quantum_int(0).unwrap().is_zero());
        assert_eq!(quantum_binomial(2, 1).unwrap(), quantum_int(2).unwrap());
    }

    #[test]
    fn negative_arguments_rejected() {
        assert!(quantum_int(-1).is_err());
        assert!(quantum_factorial(-2).is_err());
        assert!(quantum_binomial(-1, 0).is_err());
        assert!(quantum_binomial(3, -1).is_err());
    }

    #[test]
    fn quantum_int_matches_defining_quotient() {
        let q = LaurentPoly::q();
        let qi = LaurentPoly::monomial(-1, 1);
        let den = RatFunc::from(&q - &qi);
        for n in 0..12 {
            let num = RatFunc::from(&LaurentPoly::monomial(n, 1) - &LaurentPoly::monomial(-n, 1));
            assert_eq!(num.checked_div(&den).unwrap().to_laurent().unwrap(), quantum_int(n).unwrap());
        }
    }

    #[test]
    fn quantum_int_bar_invariant() {
        for n in 0..=50 {
            assert!(quantum_int(n).unwrap().is_bar_invariant());
        }
    }

    #[test]
    fn binomial_matches_factorial_quotient_and_is_positive() {
        for n in 0..=20 {
            let fact_n = RatFunc::from(quantum_factorial(n).unwrap());
            for k in 0..=n {
                let b = quantum_binomial(n, k).unwrap();
                assert!(b.is_nonnegative(), "[{n} {k}] = {b}");
                if n <= 12 {
                    let den = RatFunc::from(
                        &quantum_factorial(k).unwrap() * &quantum_factorial(n - k).unwrap(),
                    );
                    let oracle = fact_n.checked_div(&den).unwrap();
                    assert_eq!(oracle.to_laurent(), Some(b));
                }
            }
        }
    }
}
