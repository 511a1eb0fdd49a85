//! Rational reconstruction of a truncated power series.
//!
//! A denominator `Q = 1 + q_1 x + ... + q_d x^d` is found from the linear
//! recurrence the coefficients must satisfy beyond the numerator degree (a
//! Hankel-type system), solved exactly. Every available coefficient takes part
//! in the consistency check, and the numerator degree is capped so that at least
//! two equations beyond the unknown count remain even at the largest `d`.

use num::{One, Zero};

use super::{Poly, RatFn, Q};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FitOutcome {
    Fitted(RatFn),
    /// No rational function with the permitted degrees reproduces the data.
    NoFit,
}

impl FitOutcome {
    pub fn fitted(self) -> Option<RatFn> {
        match self {
            FitOutcome::Fitted(f) => Some(f),
            FitOutcome::NoFit => None,
        }
    }
}

/// Find the rational function with smallest denominator degree `<= max_den_degree`
/// whose expansion reproduces all of `coeffs`.
pub fn fit_rational(coeffs: &[Q], max_den_degree: usize) -> Result<FitOutcome> {
    let n = coeffs.len();
    if n < 2 * max_den_degree + 2 {
        return Err(Error::InsufficientData(format!(
            "{n} coefficients supplied, at least {} needed for denominator degree {max_den_degree}",
            2 * max_den_degree + 2
        )));
    }
    // numerator degree: leaves exactly two spare equations when d = max_den_degree
    let num_deg = n - 3 - max_den_degree;
    let c = |k: isize| -> Q {
        if k < 0 {
            Q::zero()
        } else {
            coeffs[k as usize].clone()
        }
    };
    for d in 0..=max_den_degree {
        // rows: k = num_deg+1 .. n-1;  sum_{j=1..d} q_j c_{k-j} = -c_k
        let rows: Vec<Vec<Q>> = (num_deg + 1..n)
            .map(|k| {
                let mut row: Vec<Q> = (1..=d).map(|j| c(k as isize - j as isize)).collect();
                row.push(-c(k as isize));
                row
            })
            .collect();
        let Some(sol) = solve_consistent(rows, d) else {
            continue;
        };
        let mut den = vec![Q::one()];
        den.extend(sol);
        let den = Poly::new(den);
        let series = Poly::new(coeffs[..=num_deg].to_vec());
        let prod = &series * &den;
        let num = Poly::new(prod.coeffs().iter().take(num_deg + 1).cloned().collect());
        return Ok(FitOutcome::Fitted(RatFn::new(num, den)?));
    }
    Ok(FitOutcome::NoFit)
}

/// Exact Gaussian elimination on an augmented system with `unknowns` columns.
/// Returns a solution (free variables set to zero) if the system is consistent.
fn solve_consistent(mut rows: Vec<Vec<Q>>, unknowns: usize) -> Option<Vec<Q>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for j in col..=unknowns {
                    let t = &f * &rows[r][j];
                    rows[i][j] -= t;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut sol = vec![Q::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = rows[i][unknowns].clone();
    }
    Some(sol)
}
