//! Exact univariate rational functions over the rationals.
//!
//! The working variable is `x = q^{-(s-1)}`, so the point `s = 1` sits at
//! `x = 1` for every `q` and `1 - x = (s - 1) log q + O((s - 1)^2)`. Limits of
//! the form `lim_{s->1} (s-1)^k f(x)` therefore come out as a rational number
//! times a power of `log q`, carried by [`ScaledLimit`].

mod fit;
mod poly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use fit::{fit_rational, FitOutcome};
pub use poly::{q_frac, q_int, q_pow, Poly, Q};

/// A quotient of coprime polynomials with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFn::zero();
        }
        let g = Poly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading().expect("nonzero denominator").recip();
        RatFn {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn zero() -> Self {
        RatFn::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFn::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        RatFn::from_poly(Poly::constant(c))
    }

    /// The variable itself.
    pub fn x() -> Self {
        RatFn::from_poly(Poly::monomial(Q::one(), 1))
    }

    /// `1 / (1 - c x^k)`
    pub fn geometric(c: Q, k: usize) -> Self {
        RatFn::normalized(Poly::one(), Poly::one_minus(c, k))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn checked_div(&self, rhs: &RatFn) -> Result<RatFn> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn::normalized(
            &self.num * &rhs.den,
            &self.den * &rhs.num,
        ))
    }

    pub fn recip(&self) -> Result<RatFn> {
        RatFn::one().checked_div(self)
    }

    pub fn pow(&self, k: u32) -> RatFn {
        RatFn {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    pub fn scale(&self, c: &Q) -> RatFn {
        RatFn::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn eval(&self, x: &Q) -> Result<Q> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }

    /// `f(1/x)`
    pub fn invert_variable(&self) -> RatFn {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        RatFn::normalized(
            self.num.reversed().shift_up(dd),
            self.den.reversed().shift_up(dn),
        )
    }

    /// `f(c * x^m)` for an integer exponent `m` of either sign.
    pub fn substitute_monomial(&self, c: &Q, m: i64) -> RatFn {
        let fm = RatFn::normalized(
            self.num.compose_monomial(c, m.unsigned_abs() as usize),
            self.den.compose_monomial(c, m.unsigned_abs() as usize),
        );
        if m < 0 {
            fm.invert_variable()
        } else {
            fm
        }
    }

    /// `f(x) = leading * (x - c)^order * (1 + O(x - c))`.
    pub fn order_at(&self, c: &Q) -> Result<(i64, Q)> {
        if self.is_zero() {
            return Err(Error::ZeroFunction);
        }
        let (kn, rn) = strip_root(&self.num, c);
        let (kd, rd) = strip_root(&self.den, c);
        Ok((kn as i64 - kd as i64, rn.eval(c) / rd.eval(c)))
    }

    /// Pole order at `c` (zero when `f` is regular there).
    pub fn pole_order_at(&self, c: &Q) -> Result<i64> {
        Ok((-self.order_at(c)?.0).max(0))
    }

    /// `lim_{s->1} (s-1)^k f(q^{-(s-1)})`.
    ///
    /// Near `x = 1` we have `1 - x ~ (s-1) log q`, so a pole of exact order `k`
    /// with `f ~ L (1-x)^{-k}` yields `L (log q)^{-k}`.
    pub fn s_limit(&self, k: i64, q: u64) -> Result<ScaledLimit> {
        if q < 2 {
            return Err(Error::Domain(format!("q = {q} must be at least 2")));
        }
        if self.is_zero() {
            return Ok(ScaledLimit::zero());
        }
        let (order, lead) = self.order_at(&Q::one())?;
        let pole = -order;
        if pole > k {
            return Err(Error::PoleTooHigh { order: pole, k });
        }
        if pole < k {
            return Ok(ScaledLimit::zero());
        }
        // (x-1)^{-k} = (-1)^k (1-x)^{-k}
        let sign = if k.rem_euclid(2) == 0 {
            Q::one()
        } else {
            -Q::one()
        };
        Ok(ScaledLimit::new(lead * sign, -k))
    }

    /// The first `n + 1` Taylor coefficients at `x = 0`.
    pub fn series_coeffs(&self, n: usize) -> Result<Vec<Q>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return Err(Error::PoleAtZero);
        }
        let inv = d0.recip();
        let mut out: Vec<Q> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.num.coeff(k);
            for j in 1..=k.min(self.den.degree().unwrap_or(0)) {
                acc -= self.den.coeff(j) * &out[k - j];
            }
            out.push(acc * &inv);
        }
        Ok(out)
    }
}

/// Divide out `(x - c)` as often as possible.
fn strip_root(p: &Poly, c: &Q) -> (usize, Poly) {
    let lin = Poly::new(vec![-c.clone(), Q::one()]);
    let mut p = p.clone();
    let mut k = 0;
    loop {
        let (qt, r) = p.div_rem(&lin);
        if !r.is_zero() {
            return (k, p);
        }
        p = qt;
        k += 1;
    }
}

impl Add for &RatFn {
    type Output = RatFn;
    fn add(self, rhs: &RatFn) -> RatFn {
        RatFn::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RatFn {
    type Output = RatFn;
    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;
    fn mul(self, rhs: &RatFn) -> RatFn {
        RatFn::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;
    fn neg(self) -> RatFn {
        RatFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// A value `coeff * (log q)^logq_pow`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ScaledLimit {
    pub coeff: Q,
    pub logq_pow: i64,
}

impl ScaledLimit {
    pub fn new(coeff: Q, logq_pow: i64) -> Self {
        if coeff.is_zero() {
            ScaledLimit::zero()
        } else {
            ScaledLimit { coeff, logq_pow }
        }
    }

    pub fn zero() -> Self {
        ScaledLimit {
            coeff: Q::zero(),
            logq_pow: 0,
        }
    }

    pub fn rational(c: Q) -> Self {
        ScaledLimit::new(c, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn mul(&self, rhs: &ScaledLimit) -> ScaledLimit {
        ScaledLimit::new(&self.coeff * &rhs.coeff, self.logq_pow + rhs.logq_pow)
    }

    pub fn div(&self, rhs: &ScaledLimit) -> Result<ScaledLimit> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(ScaledLimit::new(
            &self.coeff / &rhs.coeff,
            self.logq_pow - rhs.logq_pow,
        ))
    }

    pub fn scale(&self, c: &Q) -> ScaledLimit {
        ScaledLimit::new(&self.coeff * c, self.logq_pow)
    }

    pub fn pow(&self, k: u32) -> ScaledLimit {
        ScaledLimit::new(
            num::pow(self.coeff.clone(), k as usize),
            self.logq_pow * k as i64,
        )
    }

    /// Numeric value for a given `q`.
    pub fn to_f64(&self, q: u64) -> f64 {
        q_to_f64(&self.coeff) * (q as f64).ln().powi(self.logq_pow as i32)
    }
}

impl fmt::Display for ScaledLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.logq_pow == 0 {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{} * (log q)^{}", self.coeff, self.logq_pow)
        }
    }
}

pub fn q_to_f64(c: &Q) -> f64 {
    use num::ToPrimitive;
    c.to_f64().unwrap_or_else(|| {
        // numerator or denominator too large for a direct conversion
        let shift = c.numer().bits().max(c.denom().bits()).saturating_sub(1000);
        let n = (c.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (c.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

pub fn format_q(c: &Q) -> String {
    c.to_string()
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Domain(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

#[derive(Serialize, Deserialize)]
struct RatFnRepr {
    num: Vec<String>,
    den: Vec<String>,
}

/// Serde adapter writing a rational as a `"p/q"` string.
pub mod q_string {
    use super::{format_q, parse_q, Q};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(c))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        use serde::de::Error as _;
        let raw = String::deserialize(d)?;
        parse_q(&raw).map_err(D::Error::custom)
    }
}

impl Serialize for RatFn {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFnRepr {
            num: self.num.coeffs().iter().map(format_q).collect(),
            den: self.den.coeffs().iter().map(format_q).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFn {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = RatFnRepr::deserialize(d)?;
        let parse = |v: &[String]| -> std::result::Result<Poly, D::Error> {
            v.iter()
                .map(|c| parse_q(c).map_err(D::Error::custom))
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(Poly::new)
        };
        RatFn::new(parse(&repr.num)?, parse(&repr.den)?).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct ScaledLimitRepr {
    coeff: String,
    logq_pow: i64,
}

impl Serialize for ScaledLimit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ScaledLimitRepr {
            coeff: format_q(&self.coeff),
            logq_pow: self.logq_pow,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ScaledLimit {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ScaledLimitRepr::deserialize(d)?;
        let coeff = parse_q(&repr.coeff).map_err(D::Error::custom)?;
        Ok(ScaledLimit::new(coeff, repr.logq_pow))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn one_minus(c: Q, k: usize) -> RatFn {
        RatFn::from_poly(Poly::one_minus(c, k))
    }

    #[test]
    fn arithmetic_examples() {
        let g = RatFn::geometric(q_int(1), 1);
        assert_eq!(&g * &one_minus(q_int(1), 1), RatFn::one());

        let h = RatFn::geometric(q_int(-1), 1);
        let expect = RatFn::new(Poly::from_ints(&[2]), Poly::from_ints(&[1, 0, -1])).unwrap();
        assert_eq!(&g + &h, expect);

        let a = &g * &RatFn::geometric(q_int(2), 1);
        assert_eq!(a.checked_div(&g).unwrap(), RatFn::geometric(q_int(2), 1));
        assert_eq!(g.checked_div(&RatFn::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_form() {
        let f = RatFn::new(Poly::from_ints(&[2, 2]), Poly::from_ints(&[4, 0, -4])).unwrap();
        assert_eq!(f.den().leading(), Some(&Q::one()));
        assert_eq!(f, RatFn::geometric(q_int(1), 1).scale(&q_frac(1, 2)));
        assert!(RatFn::new(Poly::one(), Poly::zero()).is_err());
    }

    #[test]
    fn order_at_examples() {
        let f = RatFn::geometric(q_int(1), 1).pow(2);
        assert_eq!(f.order_at(&q_int(1)).unwrap(), (-2, q_int(1)));
        let g = one_minus(q_int(1), 1);
        assert_eq!(g.order_at(&q_int(1)).unwrap(), (1, q_int(-1)));
        let h = &RatFn::geometric(q_int(1), 1) * &RatFn::geometric(q_int(2), 1);
        assert_eq!(h.order_at(&q_int(1)).unwrap(), (-1, q_int(1)));
        assert_eq!(RatFn::zero().order_at(&q_int(1)), Err(Error::ZeroFunction));
    }

    #[test]
    fn s_limit_examples() {
        let f = RatFn::geometric(q_int(1), 1);
        assert_eq!(f.s_limit(1, 2).unwrap(), ScaledLimit::new(q_int(1), -1));
        assert_eq!(
            RatFn::one().s_limit(0, 2).unwrap(),
            ScaledLimit::new(q_int(1), 0)
        );
        let g = &f * &RatFn::geometric(q_frac(1, 2), 1);
        assert_eq!(g.s_limit(1, 2).unwrap(), ScaledLimit::new(q_int(2), -1));
        // pole order below k gives the canonical zero
        assert_eq!(f.s_limit(2, 2).unwrap(), ScaledLimit::zero());
        assert_eq!(
            f.pow(2).s_limit(1, 2),
            Err(Error::PoleTooHigh { order: 2, k: 1 })
        );
    }

    #[test]
    fn series_examples() {
        let f = &RatFn::geometric(q_int(1), 1) * &RatFn::geometric(q_int(2), 1);
        assert_eq!(f.series_coeffs(3).unwrap(), [1, 3, 7, 15].map(q_int));
        assert_eq!(
            RatFn::geometric(q_int(1), 1).series_coeffs(2).unwrap(),
            [1, 1, 1].map(q_int)
        );
        let h = RatFn::new(Poly::from_ints(&[1, 1]), Poly::from_ints(&[1, 0, -1])).unwrap();
        assert_eq!(h.series_coeffs(2).unwrap(), [1, 1, 1].map(q_int));
        let p = RatFn::x().recip().unwrap();
        assert_eq!(p.series_coeffs(2), Err(Error::PoleAtZero));
    }

    #[test]
    fn substitution_with_negative_exponent() {
        // 1/(1 - t) at t = 2 y^{-1}  ->  y / (y - 2)
        let f = RatFn::geometric(q_int(1), 1).substitute_monomial(&q_int(2), -1);
        let expect = RatFn::new(Poly::from_ints(&[0, 1]), Poly::from_ints(&[-2, 1])).unwrap();
        assert_eq!(f, expect);
    }

    #[test]
    fn json_shape() {
        let f = RatFn::geometric(q_frac(1, 2), 1);
        let v = serde_json::to_value(&f).unwrap();
        assert_eq!(v, serde_json::json!({"num": ["-2"], "den": ["-2", "1"]}));
        let back: RatFn = serde_json::from_value(v).unwrap();
        assert_eq!(back, f);
        let s = ScaledLimit::new(q_frac(3, 4), -1);
        assert_eq!(
            serde_json::to_string(&s).unwrap(),
            r#"{"coeff":"3/4","logq_pow":-1}"#
        );
    }

    fn small_ratfn() -> impl Strategy<Value = RatFn> {
        (
            prop::collection::vec(-4i64..=4, 1..4),
            prop::collection::vec(-3i64..=3, 0..3),
        )
            .prop_filter_map("nonzero numerator", |(n, d)| {
                let num = Poly::from_ints(&n);
                let mut den = vec![1];
                den.extend(d);
                (!num.is_zero()).then(|| RatFn::new(num, Poly::from_ints(&den)).unwrap())
            })
    }

    proptest! {
        #[test]
        fn s_limit_is_linear(f in small_ratfn(), a in -5i64..=5, b in 1i64..=4) {
            let c = q_frac(a, b);
            let k = f.pole_order_at(&Q::one()).unwrap();
            let lhs = f.scale(&c).s_limit(k, 3).unwrap();
            prop_assert_eq!(lhs, f.s_limit(k, 3).unwrap().scale(&c));
        }

        #[test]
        fn s_limit_is_multiplicative(f in small_ratfn(), g in small_ratfn()) {
            let j = f.pole_order_at(&Q::one()).unwrap();
            let k = g.pole_order_at(&Q::one()).unwrap();
            let (jo, _) = f.order_at(&Q::one()).unwrap();
            let (ko, _) = g.order_at(&Q::one()).unwrap();
            // exact pole orders only
            prop_assume!(jo == -j && ko == -k);
            let prod = (&f * &g).s_limit(j + k, 2).unwrap();
            prop_assert_eq!(prod, f.s_limit(j, 2).unwrap().mul(&g.s_limit(k, 2).unwrap()));
        }

        #[test]
        fn series_then_fit_round_trips(f in small_ratfn()) {
            let dd = f.den().degree().unwrap();
            prop_assume!(!f.den().coeff(0).is_zero());
            let big_d = dd.max(f.num().degree().unwrap()).max(1);
            let coeffs = f.series_coeffs(2 * big_d + 2).unwrap();
            prop_assert_eq!(fit_rational(&coeffs, big_d).unwrap(), FitOutcome::Fitted(f));
        }
    }
}
