//! Local densities, convergence factors and the Tamagawa number of a split
//! flag variety `P\G` over the function field of a curve.
//!
//! Every place is treated as good, and the rational points are taken to be
//! dense in the adelic points, so `tau` is the volume of all of `V(A_F)`.

use num::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::cone_lq::alpha_star;
use crate::curve_zeta::CurveZeta;
use crate::eisenstein::{local_c, WeightLine};
use crate::error::{Error, Result};
use crate::rational_fn::{q_int, q_pow, q_string, q_to_f64, ScaledLimit, Q};
use crate::root_system::{ParabolicDatum, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalFactors {
    pub q_p: u64,
    #[serde(with = "q_string")]
    pub d_p: Q,
    #[serde(with = "q_string")]
    pub lambda_p: Q,
    #[serde(with = "q_string")]
    pub mu_p: Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TamagawaMode {
    Closed,
    Truncated(u32),
}

/// Truncated Euler product: `coeff * (log q)^logq_pow`, with `tail` bounding
/// the relative error contributed by the omitted places.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TruncatedTau {
    pub coeff: f64,
    pub logq_pow: i64,
    pub max_degree: u32,
    pub tail: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum TamagawaValue {
    Closed(ScaledLimit),
    Truncated(TruncatedTau),
}

fn check_prime_power(q_p: u64) -> Result<()> {
    if crate::curve_zeta::prime_power(q_p).is_none() {
        return Err(Error::Domain(format!("{q_p} is not a prime power")));
    }
    Ok(())
}

fn datum(rs: &RootSystem, levi: &[usize]) -> Result<ParabolicDatum> {
    let pd = rs.parabolic_datum(levi)?;
    if pd.t == 0 {
        return Err(Error::Config(
            "parabolic equals the whole group: the variety is a point".into(),
        ));
    }
    Ok(pd)
}

/// `#V(F_{q_p}) / q_p^{dim V}` from the Poincaré polynomial.
pub fn local_density(rs: &RootSystem, levi: &[usize], q_p: u64) -> Result<Q> {
    check_prime_power(q_p)?;
    let pd = rs.parabolic_datum(levi)?;
    let qp = q_int(q_p as i64);
    Ok(rs.poincare_polynomial(levi)?.eval(&qp) / q_pow(&qp, pd.dim_v as i64))
}

/// `c_p(w_Delta, lambda) / c_p(w_I, lambda)` at `lambda = rho`, approached along `rho + u rho`.
pub fn local_volume(q_p: u64, rs: &RootSystem, levi: &[usize]) -> Result<Q> {
    check_prime_power(q_p)?;
    let pd = rs.parabolic_datum(levi)?;
    let all: Vec<usize> = (0..rs.rank()).collect();
    let line = WeightLine::through_rho(rs, rs.rho());
    let top = local_c(rs, &rs.longest_element(&all)?, &line, q_p)?;
    let bottom = local_c(rs, &rs.longest_element(&pd.levi)?, &line, q_p)?;
    let (order, value) = top.checked_div(&bottom)?.order_at(&Q::one())?;
    if order != 0 {
        return Err(Error::Domain(format!(
            "local c-ratio has order {order} at rho"
        )));
    }
    Ok(value)
}

/// `(1 - q_p^{-1})^{-t}`.
pub fn convergence_factor(q_p: u64, t: usize) -> Q {
    let inv = Q::one() - q_int(q_p as i64).recip();
    q_pow(&inv, -(t as i64))
}

pub fn local_factors(rs: &RootSystem, levi: &[usize], q_p: u64) -> Result<LocalFactors> {
    let pd = rs.parabolic_datum(levi)?;
    Ok(LocalFactors {
        q_p,
        d_p: local_density(rs, levi, q_p)?,
        lambda_p: convergence_factor(q_p, pd.t),
        mu_p: local_volume(q_p, rs, levi)?,
    })
}

/// `lambda_p^{-1} d_p - 1`.
fn local_excess(rs: &RootSystem, levi: &[usize], t: usize, q_p: &Q, dim: usize) -> Result<Q> {
    let poincare = rs.poincare_polynomial(levi)?;
    let lam_inv = q_pow(&(Q::one() - q_p.recip()), t as i64);
    Ok(lam_inv * poincare.eval(q_p) / q_pow(q_p, dim as i64) - Q::one())
}

/// `max |lambda_p^{-1} d_p - 1| * q_p^2` over the given residue field sizes.
pub fn convergence_constant(rs: &RootSystem, levi: &[usize], q_ps: &[u64]) -> Result<f64> {
    let pd = datum(rs, levi)?;
    let mut worst = 0.0f64;
    for &q_p in q_ps {
        check_prime_power(q_p)?;
        let qp = q_int(q_p as i64);
        let excess = local_excess(rs, levi, pd.t, &qp, pd.dim_v)?;
        worst = worst.max(q_to_f64(&(excess.abs() * &qp * &qp)));
    }
    Ok(worst)
}

/// `lim_{s->1} (s-1)^t L(s, Pic V) * q^{(1-g) dim V}`.
fn leading_part(curve: &CurveZeta, pd: &ParabolicDatum) -> ScaledLimit {
    let norm = q_pow(
        &q_int(curve.q() as i64),
        (1 - curve.genus() as i64) * pd.dim_v as i64,
    );
    curve.curve_residue().pow(pd.t as u32).scale(&norm)
}

/// The regularized Euler product `prod_p lambda_p^{-1} mu_p` in closed form:
/// one factor `zeta_C(e) / zeta_C(e + 1)` per root of the unipotent radical,
/// with `e = <rho, alpha^vee>`, the `t` simple ones contributing `1 / zeta_C(2)`.
pub fn euler_product(curve: &CurveZeta, rs: &RootSystem, levi: &[usize]) -> Result<Q> {
    let pd = datum(rs, levi)?;
    let in_levi = rs.positive_roots_in(&pd.levi);
    let rho = rs.rho();
    let mut acc = Q::one();
    for (k, coroot) in rs.positive_coroots().iter().enumerate() {
        if in_levi.contains(&k) {
            continue;
        }
        let e = RootSystem::pair(&rho, coroot);
        acc *= if e == 1 {
            curve.zeta_at(2)?.recip()
        } else {
            curve.zeta_at(e)? / curve.zeta_at(e + 1)?
        };
    }
    Ok(acc)
}

pub fn tamagawa_number(
    curve: &CurveZeta,
    rs: &RootSystem,
    levi: &[usize],
    mode: TamagawaMode,
) -> Result<TamagawaValue> {
    match mode {
        TamagawaMode::Closed => Ok(TamagawaValue::Closed(tamagawa_closed(curve, rs, levi)?)),
        TamagawaMode::Truncated(d) => Ok(TamagawaValue::Truncated(tamagawa_truncated(
            curve, rs, levi, d,
        )?)),
    }
}

pub fn tamagawa_closed(curve: &CurveZeta, rs: &RootSystem, levi: &[usize]) -> Result<ScaledLimit> {
    let pd = datum(rs, levi)?;
    Ok(leading_part(curve, &pd).scale(&euler_product(curve, rs, levi)?))
}

/// Euler product over places of degree at most `max_degree`, built from
/// Poincaré point counts and the place table only.
pub fn tamagawa_truncated(
    curve: &CurveZeta,
    rs: &RootSystem,
    levi: &[usize],
    max_degree: u32,
) -> Result<TruncatedTau> {
    if max_degree < 3 {
        return Err(Error::Domain(format!(
            "truncation degree {max_degree} is below 3"
        )));
    }
    let pd = datum(rs, levi)?;
    let places = curve.places(max_degree)?;
    let q = q_int(curve.q() as i64);
    let excess: Vec<Q> = (1..=max_degree)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&d| local_excess(rs, &pd.levi, pd.t, &q_pow(&q, d as i64), pd.dim_v))
        .collect::<Result<_>>()?;

    let mut log_sum = 0.0f64;
    for (e, &count) in excess.iter().zip(&places) {
        log_sum += count as f64 * q_to_f64(e).ln_1p();
    }

    // |excess| at degree d is about C q^{-2d}; the number of places of degree d is at most ~ q^d / d.
    let qf = curve.q() as f64;
    let from = (max_degree / 2).max(1);
    let c = (from..=max_degree)
        .map(|d| q_to_f64(&excess[d as usize - 1]).abs() * qf.powi(2 * d as i32))
        .fold(0.0f64, f64::max);
    let weil = 1.0 + 2.0 * curve.genus() as f64 * qf.powf(-0.5 * (max_degree + 1) as f64);
    let tail = 2.0 * c * weil * qf.powi(-(max_degree as i32 + 1))
        / ((max_degree + 1) as f64 * (1.0 - 1.0 / qf));

    let lead = leading_part(curve, &pd);
    Ok(TruncatedTau {
        coeff: q_to_f64(&lead.coeff) * log_sum.exp(),
        logq_pow: lead.logq_pow,
        max_degree,
        tail: tail.exp_m1(),
    })
}

/// `theta* = alpha* beta tau` with `beta = 1`.
pub fn theta_star(curve: &CurveZeta, rs: &RootSystem, levi: &[usize]) -> Result<ScaledLimit> {
    let pd = datum(rs, levi)?;
    Ok(tamagawa_closed(curve, rs, levi)?.scale(&alpha_star(&pd)))
}

/// `beta(V) = #H^1(F, Pic V)`, trivial for split varieties.
pub fn beta(_pd: &ParabolicDatum) -> Q {
    Q::one()
}

/// Relative distance between a truncated and a closed value of `tau`.
pub fn relative_error(truncated: &TruncatedTau, closed: &ScaledLimit) -> Result<f64> {
    if truncated.logq_pow != closed.logq_pow {
        return Err(Error::Domain("log q powers disagree".into()));
    }
    let exact = closed.coeff.to_f64().unwrap_or(f64::NAN);
    if exact.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(((truncated.coeff - exact) / exact).abs())
}
