use super::qbinom::{div_exact, inv_poch_truncated, poch_truncated, q_factorial, qbinom};
use super::{MultiPoly, SeriesTruncation};
use crate::error::{domain, Result};
use crate::partition::RemainderVector;
use itertools::Itertools;

fn check_s(s: usize) -> Result<i64> {
    if s == 0 {
        return domain("the modulus s must be positive");
    }
    Ok(s as i64)
}

fn binom2(m: usize) -> i64 {
    (m * m.saturating_sub(1) / 2) as i64
}

/// `C Q^k / (CQ; Q)_k` for `k = 1..`, truncated at `max_q`.
fn column_series(s: usize, max_q: i64) -> Result<Vec<MultiPoly>> {
    let big_s = s as i64;
    let cq = MultiPoly::monomial(1, big_s, 0, 1);
    let trunc = SeriesTruncation::new(max_q.max(0) as usize);
    (1..)
        .take_while(|&k| big_s * k <= max_q)
        .map(|k| {
            Ok(inv_poch_truncated(&cq, k as usize, s, trunc)?
                .shift(big_s * k, 0, 1)
                .truncate(max_q))
        })
        .collect()
}

/// `R^{i-m} + ∑_k C Q^k/(CQ;Q)_k R^{max(i-m, k-m)}`, truncated at `budget`.
fn tail(i: usize, m: usize, columns: &[MultiPoly], budget: i64) -> MultiPoly {
    let mut out = MultiPoly::monomial(1, 0, (i - m) as u32, 0);
    for (idx, col) in columns.iter().enumerate() {
        let k = idx + 1;
        if col.min_q_degree().is_some_and(|d| d > budget) {
            break;
        }
        let r = (i - m).max(k.saturating_sub(m)) as u32;
        out += col.shift(0, r, 0).truncate(budget);
    }
    out
}

/// Generating function of partitions with empty remainder sequence modulo
/// `s`, weighted by `R^{r_s} C^{c_s} q^{|λ|}`.
pub fn gf_empty(s: usize, trunc: SeriesTruncation) -> Result<MultiPoly> {
    let big_s = check_s(s)?;
    let n = trunc.n();
    let mut out = MultiPoly::one();
    for (idx, col) in column_series(s, n)?.into_iter().enumerate() {
        let k = idx as u32 + 1;
        debug_assert!(big_s * i64::from(k) <= n);
        out += col.shift(0, k, 0);
    }
    Ok(out)
}

/// Generating function of partitions with remainder sequence `rv`, as a
/// single sum over the row of the last remainder.
pub fn gf_sum_form(s: usize, rv: &RemainderVector, trunc: SeriesTruncation) -> Result<MultiPoly> {
    let big_s = check_s(s)?;
    rv.check_modulus(s)?;
    let m = rv.len();
    if m == 0 {
        return gf_empty(s, trunc);
    }
    let n = trunc.n();
    let base = rv.size() as i64 + big_s * (binom2(m) - rv.wmaj() as i64);
    if base > n {
        return Ok(MultiPoly::zero());
    }
    let columns = column_series(s, n - base)?;
    let mut out = MultiPoly::zero();
    for i in m.. {
        let deg = base + big_s * (i - m) as i64;
        if deg > n {
            break;
        }
        let budget = n - deg;
        let gauss = qbinom(i as i64 - 1, m as i64 - 1)
            .dilate(big_s)
            .truncate(budget);
        out += gauss
            .mul_truncated(&tail(i, m, &columns, budget), budget)
            .shift(deg, 0, 0);
    }
    Ok(out)
}

/// The 0/1 vector `d(ρ, γ)`: `d_j = 0` exactly when `j > 1`,
/// `ρ_{j-1} >= ρ_j` and `γ_j = γ_{j-1} + 1`.
pub fn d_vector(rv: &RemainderVector, gamma: &[usize]) -> Vec<u8> {
    let rho = rv.entries();
    (0..gamma.len())
        .map(|j| u8::from(!(j > 0 && rho[j - 1] >= rho[j] && gamma[j] == gamma[j - 1] + 1)))
        .collect()
}

/// All strictly increasing `γ_1 < ... < γ_m = last` of positive integers.
pub fn position_sequences_ending_at(m: usize, last: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if last == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    if last < m {
        return Vec::new();
    }
    (1..last)
        .combinations(m - 1)
        .map(|mut g| {
            g.push(last);
            g
        })
        .collect()
}

/// Generating function of partitions with remainder sequence `rv`, summed
/// over every row-position sequence with the `d`-vector weighting.
pub fn gf_position_form(
    s: usize,
    rv: &RemainderVector,
    trunc: SeriesTruncation,
) -> Result<MultiPoly> {
    let big_s = check_s(s)?;
    rv.check_modulus(s)?;
    let m = rv.len();
    if m == 0 {
        return gf_empty(s, trunc);
    }
    let n = trunc.n();
    let rho = rv.size() as i64;
    if rho > n {
        return Ok(MultiPoly::zero());
    }
    let columns = column_series(s, n - rho)?;
    let mut out = MultiPoly::zero();
    let top = m + ((n - rho) / big_s) as usize;
    for last in m..=top {
        for gamma in position_sequences_ending_at(m, last) {
            let dot: usize = d_vector(rv, &gamma)
                .iter()
                .zip(&gamma)
                .map(|(&d, &g)| usize::from(d) * (g - 1))
                .sum();
            let deg = rho + big_s * dot as i64;
            if deg > n {
                continue;
            }
            out += tail(last, m, &columns, n - deg).shift(deg, 0, 0);
        }
    }
    Ok(out)
}

/// Generating function in `q` of partitions with remainder sequence `rv`,
/// `r_s = r` and `c_s = c`.
pub fn gf_closed(s: usize, rv: &RemainderVector, r: usize, c: usize) -> Result<MultiPoly> {
    let big_s = check_s(s)?;
    rv.check_modulus(s)?;
    let m = rv.len() as i64;
    let (r, c) = (r as i64, c as i64);
    let body = if c == 0 {
        // Coefficient of R^r in 1/(RQ;Q)_m, which is 1 for m = r = 0.
        if m == 0 {
            if r == 0 {
                MultiPoly::one()
            } else {
                MultiPoly::zero()
            }
        } else {
            qbinom(r + m - 1, r)
        }
    } else {
        qbinom(r + m - 1, m - 1) * qbinom(r + c + m - 2, c)
            + (qbinom(r + m, m) * qbinom(r + c + m - 2, c - 1)).shift(m - 1, 0, 0)
    };
    finish(big_s, rv, r + c, body)
}

/// [`gf_closed`] written with `Q`-factorials, where the symmetry in `r` and
/// `c` is visible. Computed by exact polynomial division.
pub fn gf_symmetric(s: usize, rv: &RemainderVector, r: usize, c: usize) -> Result<MultiPoly> {
    let big_s = check_s(s)?;
    rv.check_modulus(s)?;
    let m = rv.len();
    let body = if m == 0 && r == 0 && c == 0 {
        MultiPoly::one()
    } else {
        let mut body = MultiPoly::zero();
        if m >= 1 {
            body += factorial_ratio(r + c + m - 1, &[r, c, m - 1])?;
        }
        if r >= 1 && c >= 1 {
            body += factorial_ratio(r + c + m - 2, &[r - 1, c - 1, m])?.shift(m as i64 - 1, 0, 0);
        }
        body
    };
    finish(big_s, rv, (r + c) as i64, body)
}

/// `[n]! / ([a]! [b]! ...)` by exact long division.
fn factorial_ratio(n: usize, below: &[usize]) -> Result<MultiPoly> {
    let mut num = q_factorial(n);
    for &k in below {
        num = div_exact(&num, &q_factorial(k))?;
    }
    Ok(MultiPoly::from_q_coeffs(num))
}

/// Multiplies `body(Q)` by `q^{|ρ|} Q^{-wmaj + C(m,2) + r + c}` and checks
/// the result is a polynomial.
fn finish(big_s: i64, rv: &RemainderVector, r_plus_c: i64, body: MultiPoly) -> Result<MultiPoly> {
    let m = rv.len();
    let q_exp = binom2(m) + r_plus_c - rv.wmaj() as i64;
    body.shift(q_exp, 0, 0)
        .dilate(big_s)
        .shift(rv.size() as i64, 0, 0)
        .into_polynomial()
}

/// `(Q;Q)_∞ / ((q;q)_∞ (tQ;Q)_∞)` with `Q = q^s`, truncated in `q` at
/// `trunc` and in `t` at `max_t_degree`. The variable `t` occupies the `R`
/// slot.
pub fn bf_product(s: usize, trunc: SeriesTruncation, max_t_degree: usize) -> Result<MultiPoly> {
    let big_s = check_s(s)?;
    let n = trunc.n();
    let numerator = poch_truncated(&MultiPoly::q_pow(big_s), None, s, trunc)?;
    let partitions = inv_poch_truncated(&MultiPoly::q_pow(1), trunc.max_q_degree, 1, trunc)?;
    let t_part = inv_poch_truncated(
        &MultiPoly::monomial(1, big_s, 1, 0),
        trunc.max_q_degree / s,
        s,
        trunc,
    )?
    .truncate_r(max_t_degree as u32);
    Ok(numerator
        .mul_truncated(&partitions, n)
        .mul_truncated(&t_part, n)
        .truncate_r(max_t_degree as u32))
}
