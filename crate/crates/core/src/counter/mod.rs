//! Rational points of bounded height on `P^n`, `P^1 x P^1` and the full flag
//! variety of `SL_3` over `F_q(t)`, and the empirical residues they give.
//!
//! A point is a coprime tuple of polynomials whose first nonzero coordinate is
//! monic; its height is `q^d` with `d` the largest coordinate degree.

mod field;
mod poly;

use std::collections::{BTreeMap, HashSet};

use num::{Integer, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use field::{Elt, Fq, MAX_FIELD_SIZE};
pub use poly::{monic_irreducibles, FqPoly};

use crate::error::{Error, Result};
use crate::rational_fn::{fit_rational, q_int, q_pow, q_to_f64, FitOutcome, RatFn, ScaledLimit, Q};
use crate::root_system::ParabolicDatum;

pub const DEFAULT_WORK_CAP: u32 = 36;
pub const WORK_CAP_ENV: &str = "FLAGZETA_WORKCAP";

/// Exponent `b` of the largest admissible scan, about `2^b` tuples.
/// Read from `FLAGZETA_WORKCAP` when set (expert use only).
pub fn work_cap() -> u32 {
    std::env::var(WORK_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_WORK_CAP)
}

/// Rejects `(n + 1)(D + 1) log2 q` above the work cap.
pub fn check_work(n: usize, q: u64, max_degree: u32) -> Result<()> {
    let bits = (n + 1) as f64 * (max_degree + 1) as f64 * (q as f64).log2();
    let cap = work_cap();
    if bits > cap as f64 + 1e-9 {
        return Err(Error::WorkCap {
            needed: bits.ceil() as u32,
            cap,
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    pub coords: Vec<FqPoly>,
}

impl ProjPoint {
    /// Normalizes a coprime tuple; `None` for the zero tuple or a common factor.
    pub fn canonical(coords: Vec<FqPoly>, f: &Fq) -> Option<ProjPoint> {
        let lead = coords.iter().find(|c| !c.is_zero())?.leading();
        if FqPoly::gcd_all(&coords, f) != FqPoly::one() {
            return None;
        }
        let s = f.inv(lead);
        Some(ProjPoint {
            coords: coords.iter().map(|c| c.scale(s, f)).collect(),
        })
    }

    /// `d` with `H(x) = q^d`.
    pub fn height_degree(&self) -> u32 {
        self.coords
            .iter()
            .filter_map(|c| c.degree())
            .max()
            .unwrap_or(0) as u32
    }

    pub fn is_canonical(&self, f: &Fq) -> bool {
        match self.coords.iter().find(|c| !c.is_zero()) {
            Some(first) => first.is_monic() && FqPoly::gcd_all(&self.coords, f) == FqPoly::one(),
            None => false,
        }
    }

    /// Whether `sum_i p_i l_i = 0`, checked one coefficient at a time.
    pub fn is_incident(&self, other: &ProjPoint, f: &Fq) -> bool {
        let top = self.height_degree() + other.height_degree();
        (0..=top as usize).all(|k| {
            let mut acc: Elt = 0;
            for (a, b) in self.coords.iter().zip(&other.coords) {
                let (a, b) = (a.coeffs(), b.coeffs());
                if a.is_empty() || b.is_empty() {
                    continue;
                }
                let lo = k.saturating_sub(b.len() - 1);
                for j in lo..a.len().min(k + 1) {
                    acc = f.add(acc, f.mul(a[j], b[k - j]));
                }
            }
            acc == 0
        })
    }

    /// `sum_i p_i l_i`.
    pub fn pairing(&self, other: &ProjPoint, f: &Fq) -> FqPoly {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(FqPoly::zero(), |acc, (a, b)| acc.add(&a.mul(b, f), f))
    }
}

/// `log_q` of the height computed place by place: `-min_i v_pi(x_i) deg pi`
/// summed over finite places, plus `max_i deg x_i` at infinity.
pub fn height_via_places(point: &ProjPoint, f: &Fq) -> i64 {
    let nonzero: Vec<&FqPoly> = point.coords.iter().filter(|c| !c.is_zero()).collect();
    let top = nonzero.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    let mut finite = 0i64;
    for pi in monic_irreducibles(f, top) {
        let valuation = |c: &FqPoly| {
            let mut c = c.clone();
            let mut v = 0i64;
            while pi.divides(&c, f) {
                c = c.div_rem(&pi, f).0;
                v += 1;
            }
            v
        };
        let min_v = nonzero.iter().map(|c| valuation(c)).min().unwrap_or(0);
        finite -= min_v * pi.degree().unwrap() as i64;
    }
    finite + top as i64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub degrees: Vec<u32>,
    pub count: u64,
}

/// Counts `N(d_1, ..., d_r)` over a box `d_i <= max_degrees[i]`, optionally
/// cut down to `sum d_i <= total_degree`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountTable {
    pub variety: String,
    pub q: u64,
    pub rank: usize,
    pub max_degrees: Vec<u32>,
    pub total_degree: Option<u32>,
    #[serde(with = "rows")]
    pub counts: BTreeMap<Vec<u32>, u64>,
}

mod rows {
    use super::CountRow;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(
        counts: &BTreeMap<Vec<u32>, u64>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let v: Vec<CountRow> = counts
            .iter()
            .map(|(d, &c)| CountRow {
                degrees: d.clone(),
                count: c,
            })
            .collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<Vec<u32>, u64>, D::Error> {
        let v = Vec::<CountRow>::deserialize(d)?;
        Ok(v.into_iter().map(|r| (r.degrees, r.count)).collect())
    }
}

impl CountTable {
    pub fn get(&self, degrees: &[u32]) -> u64 {
        self.counts.get(degrees).copied().unwrap_or(0)
    }

    pub fn in_range(&self, degrees: &[u32]) -> bool {
        degrees.len() == self.rank
            && degrees.iter().zip(&self.max_degrees).all(|(d, m)| d <= m)
            && self
                .total_degree
                .is_none_or(|t| degrees.iter().sum::<u32>() <= t)
    }

    /// Largest anticanonical weight `k` such that every multidegree of weight
    /// `k` lies inside the table.
    pub fn complete_weight(&self, weights: &[i64]) -> Result<u32> {
        if weights.len() != self.rank || weights.iter().any(|&a| a <= 0) {
            return Err(Error::Config(format!(
                "weights {weights:?} do not match a table of rank {}",
                self.rank
            )));
        }
        let mut bound = weights
            .iter()
            .zip(&self.max_degrees)
            .map(|(&a, &d)| a as u64 * (d as u64 + 1))
            .min()
            .unwrap();
        if let Some(t) = self.total_degree {
            let a_min = *weights.iter().min().unwrap() as u64;
            bound = bound.min(a_min * (t as u64 + 1));
        }
        Ok((bound - 1) as u32)
    }

    /// `N~_k`: number of points of anticanonical height `q^k`, `0 <= k <= k_max`.
    pub fn anticanonical_counts(&self, weights: &[i64]) -> Result<Vec<u64>> {
        let k_max = self.complete_weight(weights)? as usize;
        let mut out = vec![0u64; k_max + 1];
        for (d, &c) in &self.counts {
            let k: i64 = d.iter().zip(weights).map(|(&d, &a)| d as i64 * a).sum();
            if (k as usize) <= k_max {
                out[k as usize] += c;
            }
        }
        Ok(out)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        let header: Vec<String> = (1..=self.rank).map(|i| format!("d{i}")).collect();
        s.push_str(&header.join(","));
        s.push_str(",count\n");
        for (d, c) in &self.counts {
            let cells: Vec<String> = d.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("{},{}\n", cells.join(","), c));
        }
        s
    }

    /// `max_d N(d) / q^{d (n + 1)}` for a rank-one table of `P^n`.
    pub fn growth_constant(&self, n: usize) -> f64 {
        self.counts
            .iter()
            .map(|(d, &c)| c as f64 / (self.q as f64).powi(d[0] as i32 * (n as i32 + 1)))
            .fold(0.0, f64::max)
    }
}

/// Polynomials of degree at most `D` indexed by their base-`q` code.
struct CodeTables {
    q: u64,
    degree: Vec<i8>,
    /// `#(F_q[t] / g)^*` for nonzero `g`.
    units: Vec<u64>,
}

impl CodeTables {
    fn new(f: &Fq, max_degree: u32) -> Self {
        let q = f.size() as u64;
        let size = q.pow(max_degree + 1) as usize;
        let degree: Vec<i8> = (0..size)
            .map(|c| {
                FqPoly::from_code(c as u64, f.size())
                    .degree()
                    .map_or(-1, |d| d as i8)
            })
            .collect();

        // sieve over monic multiples of each irreducible
        let mut monic_units = vec![0u64; size];
        for code in 1..size {
            if FqPoly::from_code(code as u64, f.size()).is_monic() {
                monic_units[code] = q.pow(degree[code] as u32);
            }
        }
        for pi in monic_irreducibles(f, max_degree as usize) {
            let e = pi.degree().unwrap() as u32;
            let norm = q.pow(e);
            for h_deg in 0..=(max_degree - e) {
                let lo = q.pow(h_deg);
                for h_code in lo..2 * lo {
                    let h = FqPoly::from_code(h_code, f.size());
                    let m = pi.mul(&h, f).code(f.size()) as usize;
                    monic_units[m] = monic_units[m] / norm * (norm - 1);
                }
            }
        }
        let units = (0..size)
            .map(|code| {
                if code == 0 {
                    0
                } else {
                    let m = FqPoly::from_code(code as u64, f.size()).monic(f);
                    monic_units[m.code(f.size()) as usize]
                }
            })
            .collect();
        CodeTables { q, degree, units }
    }

    fn is_canonical_lead(&self, code: u64) -> bool {
        // leading base-q digit equals 1
        let d = self.degree[code as usize];
        d >= 0 && code / self.q.pow(d as u32) == 1
    }
}

/// Adds, for each `d` in `0..=D`, the number of `x_n` of degree at most `d`
/// completing the leading coordinates to a coprime tuple.
fn add_completions(
    acc: &mut [u128],
    t: &CodeTables,
    top: i8,
    gcd_deg: i8,
    units: u64,
    weight: u128,
) {
    let q = t.q as u128;
    let start = top.max(0) as usize;
    for (d, slot) in acc.iter_mut().enumerate().skip(start) {
        let n = if gcd_deg < 0 {
            q - 1
        } else if gcd_deg == 0 {
            q.pow(d as u32 + 1)
        } else {
            q.pow(d as u32 + 1 - gcd_deg as u32) * units as u128
        };
        *slot += weight * n;
    }
}

/// `N(d)` for `P^n(F_q(t))`, `0 <= d <= D`.
///
/// Exact: the first `n` coordinates are enumerated (first nonzero monic),
/// and the last coordinate is counted by its residue class modulo their gcd.
pub fn enumerate_projective(n: usize, q: u64, max_degree: u32) -> Result<CountTable> {
    if n == 0 {
        return Err(Error::Config(
            "projective dimension must be positive".into(),
        ));
    }
    check_work(n, q, max_degree)?;
    let f = Fq::new(q)?;
    let tables = CodeTables::new(&f, max_degree);
    let size = q.pow(max_degree + 1);
    let len = max_degree as usize + 1;

    // the zero leading tuple
    let mut total = vec![0u128; len];
    add_completions(&mut total, &tables, -1, -1, 0, 1);

    let partials: Vec<Vec<u128>> = (0..size)
        .into_par_iter()
        .filter(|&c0| n > 1 || tables.is_canonical_lead(c0))
        .map(|c0| {
            let mut acc = vec![0u128; len];
            let weight = (q - 1) as u128;
            if n == 1 {
                let d = tables.degree[c0 as usize];
                add_completions(&mut acc, &tables, d, d, tables.units[c0 as usize], weight);
                return acc;
            }
            let p0 = FqPoly::from_code(c0, f.size());
            let mut rest = vec![0u64; n - 1];
            loop {
                let lead = std::iter::once(c0)
                    .chain(rest.iter().copied())
                    .find(|&c| c != 0);
                if lead.is_some_and(|c| tables.is_canonical_lead(c)) {
                    let polys: Vec<FqPoly> = rest
                        .iter()
                        .map(|&c| FqPoly::from_code(c, f.size()))
                        .collect();
                    let g = polys.iter().fold(p0.clone(), |g, p| FqPoly::gcd(&g, p, &f));
                    let top = rest
                        .iter()
                        .map(|&c| tables.degree[c as usize])
                        .chain(std::iter::once(tables.degree[c0 as usize]))
                        .max()
                        .unwrap();
                    let gc = g.code(f.size()) as usize;
                    add_completions(
                        &mut acc,
                        &tables,
                        top,
                        tables.degree[gc],
                        tables.units[gc],
                        weight,
                    );
                }
                // odometer
                let mut i = 0;
                while i < rest.len() {
                    rest[i] += 1;
                    if rest[i] < size {
                        break;
                    }
                    rest[i] = 0;
                    i += 1;
                }
                if i == rest.len() {
                    break;
                }
            }
            acc
        })
        .collect();
    for p in partials {
        for (t, v) in total.iter_mut().zip(p) {
            *t += v;
        }
    }

    let mut counts = BTreeMap::new();
    let mut below = 0u128;
    for (d, &m) in total.iter().enumerate() {
        let points = m / (q as u128 - 1);
        let n_d = points - below;
        below = points;
        counts.insert(
            vec![d as u32],
            u64::try_from(n_d).map_err(|_| Error::Overflow("point count".into()))?,
        );
    }
    Ok(CountTable {
        variety: format!("P{n}"),
        q,
        rank: 1,
        max_degrees: vec![max_degree],
        total_degree: None,
        counts,
    })
}

/// Raw scan statistics alongside the canonical points found.
#[derive(Clone, Debug)]
pub struct ScanResult {
    pub points: Vec<ProjPoint>,
    /// All nonzero tuples visited.
    pub raw_tuples: u64,
    /// Nonzero tuples with gcd 1.
    pub coprime_tuples: u64,
}

/// Exhaustive scan of every `(n+1)`-tuple of degree at most `D`; kept for
/// cross-checks and for the point lists of the flag variety.
pub fn scan_projective(n: usize, q: u64, max_degree: u32) -> Result<ScanResult> {
    check_work(n, q, max_degree)?;
    let f = Fq::new(q)?;
    let size = q.pow(max_degree + 1);
    let polys: Vec<FqPoly> = (0..size).map(|c| FqPoly::from_code(c, f.size())).collect();

    let blocks: Vec<(Vec<ProjPoint>, u64, u64)> = (0..size)
        .into_par_iter()
        .map(|c0| {
            let mut points = Vec::new();
            let (mut raw, mut coprime) = (0u64, 0u64);
            let mut rest = vec![0u64; n];
            loop {
                let coords: Vec<FqPoly> = std::iter::once(c0)
                    .chain(rest.iter().copied())
                    .map(|c| polys[c as usize].clone())
                    .collect();
                if coords.iter().any(|c| !c.is_zero()) {
                    raw += 1;
                    if FqPoly::gcd_all(&coords, &f) == FqPoly::one() {
                        coprime += 1;
                        let p = ProjPoint { coords };
                        if p.is_canonical(&f) {
                            points.push(p);
                        }
                    }
                }
                let mut i = 0;
                while i < rest.len() {
                    rest[i] += 1;
                    if rest[i] < size {
                        break;
                    }
                    rest[i] = 0;
                    i += 1;
                }
                if i == rest.len() {
                    break;
                }
            }
            (points, raw, coprime)
        })
        .collect();

    let mut out = ScanResult {
        points: Vec::new(),
        raw_tuples: 0,
        coprime_tuples: 0,
    };
    for (p, r, c) in blocks {
        out.points.extend(p);
        out.raw_tuples += r;
        out.coprime_tuples += c;
    }
    out.points.sort();
    Ok(out)
}

/// Rank-one table from a list of points.
pub fn table_from_points(points: &[ProjPoint], n: usize, q: u64, max_degree: u32) -> CountTable {
    let mut counts: BTreeMap<Vec<u32>, u64> = (0..=max_degree).map(|d| (vec![d], 0)).collect();
    for p in points {
        *counts.entry(vec![p.height_degree()]).or_insert(0) += 1;
    }
    CountTable {
        variety: format!("P{n}"),
        q,
        rank: 1,
        max_degrees: vec![max_degree],
        total_degree: None,
        counts,
    }
}

/// `N(d_1, d_2) = N_{P^1}(d_1) N_{P^1}(d_2)`.
pub fn enumerate_p1xp1(q: u64, d1: u32, d2: u32) -> Result<CountTable> {
    check_work(1, q, d1)?;
    check_work(1, q, d2)?;
    let p1 = enumerate_projective(1, q, d1.max(d2))?;
    let mut counts = BTreeMap::new();
    for a in 0..=d1 {
        for b in 0..=d2 {
            counts.insert(vec![a, b], p1.get(&[a]) * p1.get(&[b]));
        }
    }
    Ok(CountTable {
        variety: "P1xP1".into(),
        q,
        rank: 2,
        max_degrees: vec![d1, d2],
        total_degree: None,
        counts,
    })
}

fn flag_table(q: u64, d1: u32, d2: u32, total: Option<u32>) -> Result<CountTable> {
    check_work(2, q, d1)?;
    check_work(2, q, d2)?;
    let f = Fq::new(q)?;
    let points = scan_projective(2, q, d1.max(d2))?.points;
    let mut table = CountTable {
        variety: "FL3".into(),
        q,
        rank: 2,
        max_degrees: vec![d1, d2],
        total_degree: total,
        counts: BTreeMap::new(),
    };
    let mut shells: Vec<Vec<&ProjPoint>> = vec![Vec::new(); d1.max(d2) as usize + 1];
    for p in &points {
        shells[p.height_degree() as usize].push(p);
    }
    let left: Vec<(u32, &ProjPoint)> = shells[..=d1 as usize]
        .iter()
        .enumerate()
        .flat_map(|(a, s)| s.iter().map(move |&p| (a as u32, p)))
        .collect();
    let rows: Vec<(u32, Vec<u64>)> = left
        .par_iter()
        .map(|&(a, p)| {
            let top = total.map_or(d2, |t| d2.min(t - a));
            let row = (0..=top)
                .map(|b| {
                    shells[b as usize]
                        .iter()
                        .filter(|l| p.is_incident(l, &f))
                        .count() as u64
                })
                .collect();
            (a, row)
        })
        .collect();
    for a in 0..=d1 {
        for b in 0..=d2 {
            if table.in_range(&[a, b]) {
                table.counts.insert(vec![a, b], 0);
            }
        }
    }
    for (a, row) in rows {
        for (b, v) in row.into_iter().enumerate() {
            *table
                .counts
                .get_mut(&vec![a, b as u32])
                .expect("cell inside the box") += v;
        }
    }
    Ok(table)
}

/// Incident pairs `(p, l)` in `P^2 x (P^2)^*` with `H(p) = q^{d_1}`, `H(l) = q^{d_2}`,
/// over the box `d_1 <= D1`, `d_2 <= D2`.
pub fn enumerate_flag_sl3(q: u64, d1: u32, d2: u32) -> Result<CountTable> {
    flag_table(q, d1, d2, None)
}

/// As [`enumerate_flag_sl3`] over the triangle `d_1 + d_2 <= total`.
pub fn enumerate_flag_sl3_total(q: u64, total: u32) -> Result<CountTable> {
    flag_table(q, total, total, Some(total))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmpiricalResidue {
    /// From an exact rational fit of the height zeta series, when one exists.
    pub exact: Option<ScaledLimit>,
    /// Finite-difference estimate of the coefficient of `(log q)^{-t}`.
    pub estimate: f64,
    pub logq_pow: i64,
    /// Number of complete anticanonical coefficients used.
    pub coefficients: usize,
    #[serde(skip)]
    pub fitted: Option<RatFn>,
}

/// Leading coefficient of `Z(s) = sum_k N~_k q^{-ks}` at `s = 1`.
///
/// In `x = q^{-(s-1)}` the series is `sum_k N~_k q^{-k} x^k`; an exact fit
/// gives the limit directly; the estimate averages the last two `(t-1)`-th
/// differences of the coefficients in `z = x^g`, `g` the gcd of the weights.
pub fn empirical_residue(
    table: &CountTable,
    pd: &ParabolicDatum,
    q: u64,
) -> Result<EmpiricalResidue> {
    if table.q != q {
        return Err(Error::Config(format!(
            "table was computed over F_{}, not F_{q}",
            table.q
        )));
    }
    let t = pd.t;
    let weights = &pd.anticanonical_coords;
    let n_k = table.anticanonical_counts(weights)?;
    let g = weights.iter().fold(0i64, |acc, &a| acc.gcd(&a)) as usize;
    let z_terms = (n_k.len() - 1) / g + 1;
    if z_terms < t + 3 {
        return Err(Error::InsufficientData(format!(
            "{z_terms} coefficients, need at least {}",
            t + 3
        )));
    }

    let qq = q_int(q as i64);
    let coeffs: Vec<Q> = n_k
        .iter()
        .enumerate()
        .map(|(k, &c)| Q::from_integer(c.into()) * q_pow(&qq, -(k as i64)))
        .collect();

    let max_den = (coeffs.len() - 2) / 2;
    let (exact, fitted) = match fit_rational(&coeffs, max_den) {
        Ok(FitOutcome::Fitted(r)) => match r.s_limit(t as i64, q) {
            Ok(lim) if !lim.is_zero() => (Some(lim), Some(r)),
            _ => (None, Some(r)),
        },
        _ => (None, None),
    };

    // (t-1)-th backward difference of f_m = c_{g m} at the last index
    let mut diffs: Vec<Q> = (0..z_terms).map(|m| coeffs[g * m].clone()).collect();
    for _ in 1..t {
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // mean of the last two differences, which cancels a pole at z = -1
    let tail = &diffs[diffs.len().saturating_sub(2)..];
    let mean = tail.iter().fold(Q::zero(), |acc, d| acc + d) / q_int(tail.len() as i64);
    let estimate = q_to_f64(&mean) / (g as f64).powi(t as i32);

    Ok(EmpiricalResidue {
        exact,
        estimate,
        logq_pow: -(t as i64),
        coefficients: coeffs.len(),
        fitted,
    })
}

/// Relative distance of an estimate from a predicted coefficient.
pub fn relative_gap(estimate: f64, predicted: &ScaledLimit) -> f64 {
    let p = predicted.coeff.to_f64().unwrap_or(f64::NAN);
    ((estimate - p) / p).abs()
}

/// Every canonical point occurs once and is coprime.
pub fn check_canonical_points(points: &[ProjPoint], q: u64) -> Result<bool> {
    let f = Fq::new(q)?;
    let mut seen = HashSet::new();
    Ok(points
        .iter()
        .all(|p| p.is_canonical(&f) && seen.insert(p.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_system::RootSystem;

    #[test]
    fn p1_small_counts() {
        let t = enumerate_projective(1, 2, 3).unwrap();
        assert_eq!(t.get(&[0]), 3);
        assert_eq!(t.get(&[1]), 6);
        assert_eq!(enumerate_projective(2, 2, 1).unwrap().get(&[0]), 7);
        assert_eq!(enumerate_projective(1, 3, 2).unwrap().get(&[0]), 4);
    }

    #[test]
    fn p1_degree_one_points_by_hand() {
        let f = Fq::new(2).unwrap();
        let scan = scan_projective(1, 2, 1).unwrap();
        let deg1: Vec<String> = scan
            .points
            .iter()
            .filter(|p| p.height_degree() == 1)
            .map(|p| format!("({}:{})", p.coords[0], p.coords[1]))
            .collect();
        let mut expect = vec![
            "(1:t)",
            "(1:t + 1)",
            "(t:1)",
            "(t + 1:1)",
            "(t:t + 1)",
            "(t + 1:t)",
        ];
        let mut got: Vec<&str> = deg1.iter().map(|s| s.as_str()).collect();
        got.sort();
        expect.sort();
        assert_eq!(got, expect);
        assert!(scan.points.iter().all(|p| p.is_canonical(&f)));
    }

    #[test]
    fn fast_matches_scan() {
        for (n, q, d) in [
            (1, 2, 5),
            (1, 3, 3),
            (1, 4, 2),
            (2, 2, 2),
            (2, 3, 1),
            (3, 2, 1),
            (1, 5, 2),
        ] {
            let fast = enumerate_projective(n, q, d).unwrap();
            let scan = scan_projective(n, q, d).unwrap();
            assert_eq!(
                fast,
                table_from_points(&scan.points, n, q, d),
                "n={n} q={q} d={d}"
            );
            assert_eq!(scan.coprime_tuples, (q - 1) * scan.points.len() as u64);
            assert!(check_canonical_points(&scan.points, q).unwrap());
        }
    }

    #[test]
    fn closed_form_counts() {
        // N(d) = q^{2d-1} (q^2 - 1) on P^1
        for q in [2u64, 3, 4, 5] {
            let t = enumerate_projective(1, q, 5).unwrap();
            for d in 1..=5u32 {
                assert_eq!(t.get(&[d]), q.pow(2 * d - 1) * (q * q - 1));
            }
        }
    }

    #[test]
    fn work_cap_is_enforced() {
        assert!(matches!(
            enumerate_projective(1, 2, 40),
            Err(Error::WorkCap { .. })
        ));
        assert!(check_work(1, 3, 10).is_ok());
    }

    #[test]
    fn p1xp1_factorizes() {
        let t = enumerate_p1xp1(2, 2, 2).unwrap();
        assert_eq!(t.get(&[0, 0]), 9);
        assert_eq!(t.get(&[1, 0]), 18);
    }

    #[test]
    fn incidence_agrees_with_pairing() {
        let f = Fq::new(3).unwrap();
        let pts = scan_projective(2, 3, 1).unwrap().points;
        for p in pts.iter().step_by(7) {
            for l in pts.iter().step_by(5) {
                assert_eq!(p.is_incident(l, &f), p.pairing(l, &f).is_zero());
            }
        }
    }

    #[test]
    fn flag_base_and_symmetry() {
        let t = enumerate_flag_sl3(2, 2, 2).unwrap();
        assert_eq!(t.get(&[0, 0]), 21);
        for a in 0..=2 {
            for b in 0..=2 {
                assert_eq!(t.get(&[a, b]), t.get(&[b, a]));
            }
        }
        let tri = enumerate_flag_sl3_total(2, 2).unwrap();
        assert_eq!(tri.get(&[1, 1]), t.get(&[1, 1]));
        assert!(!tri.counts.contains_key(&vec![2, 2]));
    }

    #[test]
    fn residue_of_p1() {
        let rs = RootSystem::new("A1".parse().unwrap()).unwrap();
        let pd = rs.parabolic_datum(&[]).unwrap();
        let t = enumerate_projective(1, 2, 10).unwrap();
        let r = empirical_residue(&t, &pd, 2).unwrap();
        assert_eq!(
            r.exact,
            Some(ScaledLimit::new(Q::new(3.into(), 4.into()), -1))
        );
        assert!((r.estimate - 0.75).abs() < 1e-12);
    }

    #[test]
    fn residue_needs_data() {
        let rs = RootSystem::new("A1".parse().unwrap()).unwrap();
        let pd = rs.parabolic_datum(&[]).unwrap();
        let t = enumerate_projective(1, 2, 1).unwrap();
        assert!(matches!(
            empirical_residue(&t, &pd, 2),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn csv_layout() {
        let t = enumerate_projective(1, 2, 2).unwrap();
        assert_eq!(t.to_csv(), "d1,count\n0,3\n1,6\n2,24\n");
    }
}
