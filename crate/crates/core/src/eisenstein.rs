//! Intertwining c-functions along integral lines of weights.
//!
//! A line is `lambda(u) = base + u * direction`; for each positive root the
//! exponent `<lambda(u), alpha^vee>` is affine in `u` with integer coefficients,
//! so with `y = q^{-u}` every zeta value on the line is a rational function of
//! `y`. At `u = 0` we have `1 - y ~ u log q`, which is what lets
//! [`RatFn::s_limit`] turn the regularized limits into [`ScaledLimit`]s.

use num::One;
use serde::Serialize;

use crate::curve_zeta::CurveZeta;
use crate::error::{Error, Result};
use crate::rational_fn::{q_int, q_pow, Poly, RatFn, ScaledLimit, Q};
use crate::root_system::{ParabolicDatum, RootSystem, WeylElt};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightLine {
    pub base: Vec<i64>,
    pub direction: Vec<i64>,
}

impl WeightLine {
    pub fn new(base: Vec<i64>, direction: Vec<i64>) -> Self {
        WeightLine { base, direction }
    }

    /// `rho + u * direction`.
    pub fn through_rho(rs: &RootSystem, direction: Vec<i64>) -> Self {
        WeightLine::new(rs.rho(), direction)
    }

    /// `(<base, gamma^vee>, <direction, gamma^vee>)`.
    pub fn exponent(&self, coroot: &[i64]) -> (i64, i64) {
        (
            RootSystem::pair(&self.base, coroot),
            RootSystem::pair(&self.direction, coroot),
        )
    }

    /// The image line `w . lambda(u)`.
    pub fn act(&self, rs: &RootSystem, w: &WeylElt) -> WeightLine {
        WeightLine::new(
            w.act_on_weight(rs, &self.base),
            w.act_on_weight(rs, &self.direction),
        )
    }
}

fn inverted_exponents(rs: &RootSystem, w: &WeylElt, line: &WeightLine) -> Result<Vec<(i64, i64)>> {
    rs.inverted_roots(w)
        .into_iter()
        .map(|k| {
            let e = line.exponent(&rs.positive_coroots()[k]);
            if e == (0, 0) {
                Err(Error::DegenerateExponent(rs.positive_roots()[k].clone()))
            } else {
                Ok(e)
            }
        })
        .collect()
}

/// Local factor at a place with residue field of size `q_p`:
/// `prod_{alpha > 0, w alpha < 0} (1 - q_p^{-(e_alpha + 1)}) / (1 - q_p^{-e_alpha})`.
pub fn local_c(rs: &RootSystem, w: &WeylElt, line: &WeightLine, q_p: u64) -> Result<RatFn> {
    let qp = q_int(q_p as i64);
    // (1 - t/q_p) / (1 - t) evaluated at t = q_p^{-b} y^d
    let factor = RatFn::from_poly(Poly::one_minus(qp.recip(), 1))
        .checked_div(&RatFn::from_poly(Poly::one_minus(Q::one(), 1)))?;
    inverted_exponents(rs, w, line)?
        .into_iter()
        .try_fold(RatFn::one(), |acc, (b, d)| {
            Ok(&acc * &factor.substitute_monomial(&q_pow(&qp, -b), d))
        })
}

/// Global c-function `q^{(1-g) l(w)} prod_{alpha > 0, w alpha < 0} zeta_C(e_alpha) / zeta_C(e_alpha + 1)`.
pub fn global_c(
    curve: &CurveZeta,
    rs: &RootSystem,
    w: &WeylElt,
    line: &WeightLine,
) -> Result<RatFn> {
    let exps = inverted_exponents(rs, w, line)?;
    let norm = q_pow(
        &q_int(curve.q() as i64),
        (1 - curve.genus() as i64) * exps.len() as i64,
    );
    exps.into_iter()
        .try_fold(RatFn::constant(norm), |acc, (b, d)| {
            let ratio = curve
                .zeta_on_line(b, d)
                .checked_div(&curve.zeta_on_line(b + 1, d))?;
            Ok(&acc * &ratio)
        })
}

/// `C_J = lim_{lambda -> rho} (prod_{alpha in J} <alpha^vee, lambda - rho>) c(w_J, lambda)`,
/// approached along `rho + u * direction`.
pub fn c_constant(
    curve: &CurveZeta,
    rs: &RootSystem,
    subset: &[usize],
    direction: &[i64],
) -> Result<ScaledLimit> {
    if direction.len() != rs.rank() {
        return Err(Error::Domain("direction has the wrong rank".into()));
    }
    if let Some(&j) = subset
        .iter()
        .find(|&&j| j >= rs.rank() || direction[j] <= 0)
    {
        return Err(Error::Domain(format!(
            "direction is not generic for simple root {}",
            j + 1
        )));
    }
    let w = rs.longest_element(subset)?;
    let line = WeightLine::through_rho(rs, direction.to_vec());
    let c = global_c(curve, rs, &w, &line)?;
    let lim = c.s_limit(subset.len() as i64, curve.q())?;
    let pairing: i64 = subset.iter().map(|&j| direction[j]).product();
    Ok(lim.scale(&q_int(pairing)))
}

fn check_datum(pd: &ParabolicDatum) -> Result<()> {
    if pd.t == 0 {
        return Err(Error::Config(
            "parabolic equals the whole group: the variety is a point".into(),
        ));
    }
    Ok(())
}

/// `prod_{alpha in Delta - I} <alpha^vee, 2 rho_P>^{-1} * C_G / C_P`.
pub fn theorem_lhs(curve: &CurveZeta, rs: &RootSystem, levi: &[usize]) -> Result<ScaledLimit> {
    theorem_lhs_along(curve, rs, levi, &rs.rho())
}

/// As [`theorem_lhs`], with both constants approached along `direction`.
pub fn theorem_lhs_along(
    curve: &CurveZeta,
    rs: &RootSystem,
    levi: &[usize],
    direction: &[i64],
) -> Result<ScaledLimit> {
    let pd = rs.parabolic_datum(levi)?;
    check_datum(&pd)?;
    let all: Vec<usize> = (0..rs.rank()).collect();
    let cg = c_constant(curve, rs, &all, direction)?;
    let cp = c_constant(curve, rs, &pd.levi, direction)?;
    Ok(cg.div(&cp)?.scale(&pd.alpha_pairing_product()))
}

/// `prod a_alpha^{-1} * c(w_Delta, lambda) / c(w_I, lambda)` on the line
/// `lambda = rho + (s - 1) lambda_{P_0}`, as a function of `x = q^{-(s-1)}`.
/// Its pole at `x = 1` has order `t` and its `s_limit` equals [`theorem_lhs`].
pub fn eisenstein_side(curve: &CurveZeta, rs: &RootSystem, levi: &[usize]) -> Result<RatFn> {
    let pd = rs.parabolic_datum(levi)?;
    check_datum(&pd)?;
    let line = WeightLine::through_rho(rs, pd.lambda_p0.clone());
    let all: Vec<usize> = (0..rs.rank()).collect();
    let top = global_c(curve, rs, &rs.longest_element(&all)?, &line)?;
    let bottom = global_c(curve, rs, &rs.longest_element(&pd.levi)?, &line)?;
    Ok(top.checked_div(&bottom)?.scale(&pd.alpha_pairing_product()))
}

/// Pole order at `y = 1`, zero where regular.
pub fn pole_order(f: &RatFn) -> Result<i64> {
    f.pole_order_at(&Q::one())
}
