use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{MultiPoly, SeriesTruncation};
use crate::error::{domain, invariant, Result};

/// Coefficient list of the Gaussian binomial `[n k]_q`; empty (the zero
/// polynomial) unless `0 <= k <= n`.
pub fn qbinom_coeffs(n: i64, k: i64) -> Vec<BigInt> {
    if n < 0 || k < 0 || k > n {
        return Vec::new();
    }
    let (n, k) = (n as usize, k.min(n - k) as usize);
    // row[j] holds [i j] while sweeping i = 0..=n.
    let mut row: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for i in 1..=n {
        let top = i.min(k);
        let mut next = Vec::with_capacity(top + 1);
        for j in 0..=top {
            // [i j] = [i-1 j-1] + q^j [i-1 j]
            let mut cell = if j > 0 {
                row[j - 1].clone()
            } else {
                Vec::new()
            };
            if j < row.len() && j < i {
                let shifted = &row[j];
                if cell.len() < shifted.len() + j {
                    cell.resize(shifted.len() + j, BigInt::zero());
                }
                for (d, c) in shifted.iter().enumerate() {
                    cell[d + j] += c;
                }
            }
            next.push(cell);
        }
        row = next;
    }
    row.swap_remove(k)
}

/// The Gaussian binomial `[n k]_q`, zero outside `0 <= k <= n`.
pub fn qbinom(n: i64, k: i64) -> MultiPoly {
    MultiPoly::from_q_coeffs(qbinom_coeffs(n, k))
}

/// `[n]_q! = [1]_q [2]_q ... [n]_q`.
pub fn q_factorial(n: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::one()];
    for i in 2..=n {
        let mut next = vec![BigInt::zero(); acc.len() + i - 1];
        for (d, c) in acc.iter().enumerate() {
            for slot in &mut next[d..d + i] {
                *slot += c;
            }
        }
        acc = next;
    }
    acc
}

/// `(z; q^s)_k = (1 - z)(1 - z q^s)...(1 - z q^{s(k-1)})`, or the infinite
/// product when `k` is `None`, truncated at `trunc`.
pub fn poch_truncated(
    z: &MultiPoly,
    k: Option<usize>,
    s: usize,
    trunc: SeriesTruncation,
) -> Result<MultiPoly> {
    let dz = monomial_q_degree(z)?;
    if k.is_none() && dz <= 0 {
        return domain("infinite q-Pochhammer symbol needs a base of positive q-degree");
    }
    let n = trunc.n();
    let mut acc = MultiPoly::one();
    let mut i = 0usize;
    while k.is_none_or(|k| i < k) {
        let e = (s * i) as i64;
        if dz + e > n {
            break;
        }
        let factor = MultiPoly::one() - z.shift(e, 0, 0);
        acc = acc.mul_truncated(&factor, n);
        i += 1;
    }
    Ok(acc.truncate(n))
}

/// `1 / (z; q^s)_k` expanded as `∑_l [l+k-1 l]_{q^s} z^l`, truncated.
pub fn inv_poch_truncated(
    z: &MultiPoly,
    k: usize,
    s: usize,
    trunc: SeriesTruncation,
) -> Result<MultiPoly> {
    if k == 0 {
        return Ok(MultiPoly::one());
    }
    let dz = monomial_q_degree(z)?;
    if dz <= 0 {
        return domain("inverse q-Pochhammer symbol needs a base of positive q-degree");
    }
    let n = trunc.n();
    let mut out = MultiPoly::zero();
    let mut zl = MultiPoly::one();
    let mut l = 0i64;
    while l * dz <= n {
        let coeff = qbinom(l + k as i64 - 1, l).dilate(s as i64);
        out += coeff.mul_truncated(&zl, n);
        zl = zl.mul_truncated(z, n);
        l += 1;
    }
    Ok(out)
}

pub(super) fn div_exact(num: &[BigInt], den: &[BigInt]) -> Result<Vec<BigInt>> {
    let lead = den.last().filter(|l| !l.is_zero());
    let Some(lead) = lead else {
        return invariant("division by the zero polynomial");
    };
    if num.len() < den.len() {
        return if num.iter().all(Zero::is_zero) {
            Ok(Vec::new())
        } else {
            invariant("inexact division")
        };
    }
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - den.len() + 1];
    for i in (0..quot.len()).rev() {
        let top = &rem[i + den.len() - 1];
        if top.is_zero() {
            continue;
        }
        if !(top % lead).is_zero() {
            return invariant("inexact division");
        }
        let f = top / lead;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &f * d;
        }
        quot[i] = f;
    }
    if rem.iter().any(|x| !x.is_zero()) {
        return invariant("inexact division");
    }
    Ok(quot)
}

/// Exact quotient of univariate polynomials in `q` with non-negative
/// exponents. Fails if the division leaves a remainder.
pub fn q_quotient(num: &MultiPoly, den: &MultiPoly) -> Result<MultiPoly> {
    if !(num.is_univariate() && den.is_univariate() && num.is_polynomial() && den.is_polynomial()) {
        return domain("q_quotient expects polynomials in q alone");
    }
    Ok(MultiPoly::from_q_coeffs(div_exact(
        &num.q_coeffs(),
        &den.q_coeffs(),
    )?))
}

fn monomial_q_degree(z: &MultiPoly) -> Result<i64> {
    match z.terms().next() {
        Some((e, _)) if z.is_monomial() => Ok(e.0),
        _ => domain(format!("expected a monomial base, got {z}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn gaussian_binomials() {
        assert_eq!(qbinom_coeffs(2, 1), ints(&[1, 1]));
        assert_eq!(qbinom_coeffs(4, 2), ints(&[1, 1, 2, 1, 1]));
        assert_eq!(qbinom_coeffs(0, 0), ints(&[1]));
        assert!(qbinom(3, -1).is_zero());
        assert!(qbinom(3, 4).is_zero());
        assert!(qbinom(-1, 0).is_zero());
        assert_eq!(qbinom(7, 3), qbinom(7, 4));
    }

    #[test]
    fn factorials_give_binomials() {
        assert_eq!(q_factorial(0), ints(&[1]));
        assert_eq!(q_factorial(3), ints(&[1, 2, 2, 1]));
        let f4 = MultiPoly::from_q_coeffs(q_factorial(4));
        let f2 = MultiPoly::from_q_coeffs(q_factorial(2));
        assert_eq!(&(&f2 * &f2) * &qbinom(4, 2), f4);
    }

    #[test]
    fn exact_quotient() {
        let f5 = MultiPoly::from_q_coeffs(q_factorial(5));
        let f2 = MultiPoly::from_q_coeffs(q_factorial(2));
        let f3 = MultiPoly::from_q_coeffs(q_factorial(3));
        assert_eq!(q_quotient(&f5, &(&f2 * &f3)).unwrap(), qbinom(5, 2));
        assert!(q_quotient(&f3, &MultiPoly::from_q_coeffs([1, 0, 1])).is_err());
    }

    #[test]
    fn pochhammer() {
        let t = SeriesTruncation::new(40);
        let cq = MultiPoly::monomial(1, 1, 0, 1);
        let want = (MultiPoly::one() - cq.clone()) * (MultiPoly::one() - cq.shift(1, 0, 0));
        assert_eq!(poch_truncated(&cq, Some(2), 1, t).unwrap(), want);
        assert_eq!(
            poch_truncated(&MultiPoly::q_pow(1), Some(0), 1, t).unwrap(),
            MultiPoly::one()
        );
        assert!(poch_truncated(&MultiPoly::monomial(1, 0, 1, 0), None, 1, t).is_err());
        // Euler: (q;q)_inf = 1 - q - q^2 + q^5 + q^7 - ...
        let euler =
            poch_truncated(&MultiPoly::q_pow(1), None, 1, SeriesTruncation::new(7)).unwrap();
        assert_eq!(euler, MultiPoly::from_q_coeffs([1, -1, -1, 0, 0, 1, 0, 1]));
    }

    #[test]
    fn inverse_pochhammer_is_an_inverse() {
        let t = SeriesTruncation::new(24);
        for s in 1..=3 {
            for k in 0..=4 {
                let z = MultiPoly::monomial(1, s as i64, 0, 1);
                let inv = inv_poch_truncated(&z, k, s, t).unwrap();
                let fwd = poch_truncated(&z, Some(k), s, t).unwrap();
                assert_eq!(inv.mul_truncated(&fwd, 24), MultiPoly::one(), "s={s} k={k}");
            }
        }
    }
}
