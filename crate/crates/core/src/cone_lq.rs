//! Lattice-point generating functions of dual cones along a ray, and `alpha*`.
//!
//! For a unimodular cone with generators `m_i` and an interior point
//! `a = sum a_i m_i`, the dual lattice points are `sum k_i m_i^*` with
//! `k_i >= 0`, so `sum_y x^{<y, a>} = prod_i 1/(1 - x^{a_i})`. With
//! `x = q^{-(s-1)}` the pole at `s = 1` has order `rank` and
//! `(log q)^rank lim (s-1)^rank` of the sum is `prod 1/a_i`.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::rational_fn::{q_int, q_pow, q_to_f64, RatFn, Q};
use crate::root_system::ParabolicDatum;

pub const BRUTEFORCE_CAP: i64 = 40;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeCone {
    rank: usize,
    generators: Vec<Vec<i64>>,
    unimodular: bool,
}

impl LatticeCone {
    /// Non-simplicial generator sets are accepted but never unimodular, so
    /// every operation rejects them.
    pub fn new(generators: Vec<Vec<i64>>) -> Result<Self> {
        let rank = generators.first().map_or(0, Vec::len);
        if rank == 0 || generators.iter().any(|g| g.len() != rank) {
            return Err(Error::Domain(
                "generators must share a positive dimension".into(),
            ));
        }
        if generators.len() < rank || matrix_rank(&generators) < rank {
            return Err(Error::Domain("cone has empty interior".into()));
        }
        let unimodular = generators.len() == rank && {
            let d = determinant(&generators);
            d == Q::one() || d == -Q::one()
        };
        Ok(LatticeCone {
            rank,
            generators,
            unimodular,
        })
    }

    /// The standard orthant, i.e. the effective cone of a flag variety in the
    /// fundamental-weight basis.
    pub fn orthant(rank: usize) -> Self {
        let generators = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        LatticeCone {
            rank,
            generators,
            unimodular: true,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn is_unimodular(&self) -> bool {
        self.unimodular
    }

    fn check(&self, a: &[i64]) -> Result<()> {
        if !self.unimodular {
            return Err(Error::NonUnimodular);
        }
        if a.len() != self.generators.len() || a.iter().any(|&c| c <= 0) {
            return Err(Error::BoundaryPoint);
        }
        Ok(())
    }

    /// Ambient coordinates of `sum a_i m_i`.
    fn ambient(&self, a: &[i64]) -> Vec<i64> {
        (0..self.rank)
            .map(|j| {
                a.iter()
                    .zip(&self.generators)
                    .map(|(ai, g)| ai * g[j])
                    .sum()
            })
            .collect()
    }
}

/// `L_q((s-1) a)` as a function of `x = q^{-(s-1)}`: `prod_i 1/(1 - x^{a_i})`,
/// with `a` given in generator coordinates.
pub fn lq_line(cone: &LatticeCone, a: &[i64], q: u64) -> Result<RatFn> {
    cone.check(a)?;
    if q < 2 {
        return Err(Error::Domain(format!("q = {q} must be at least 2")));
    }
    Ok(a.iter().fold(RatFn::one(), |acc, &ai| {
        &acc * &RatFn::geometric(Q::one(), ai as usize)
    }))
}

/// Truncated lattice sum `sum_{y in C^vee, <y,a> <= cap} q^{-s0 <y,a>}` by
/// direct enumeration of dual lattice points.
pub fn lq_bruteforce(cone: &LatticeCone, a: &[i64], q: u64, s0: i64, cap: i64) -> Result<Q> {
    cone.check(a)?;
    if cap > BRUTEFORCE_CAP || cap < 0 {
        return Err(Error::Domain(format!(
            "cap {cap} outside 0..={BRUTEFORCE_CAP}"
        )));
    }
    if s0 <= 1 {
        return Err(Error::Domain(format!("s0 = {s0} must exceed 1")));
    }
    let point = cone.ambient(a);
    // a box containing {y in C^vee : <y, a> <= cap}: y = M^{-T} k with 0 <= k_i <= cap
    let inv = inverse(&cone.generators);
    let bound = (0..cone.rank)
        .map(|j| {
            (0..cone.rank)
                .map(|i| q_to_f64(&inv[j][i]).abs())
                .sum::<f64>()
        })
        .fold(0.0, f64::max);
    let b = (bound * cap as f64).ceil() as i64;

    let x = q_pow(&q_int(q as i64), -s0);
    let mut total = Q::zero();
    let mut y = vec![-b; cone.rank];
    loop {
        let inside = cone
            .generators
            .iter()
            .all(|g| g.iter().zip(&y).map(|(u, v)| u * v).sum::<i64>() >= 0);
        if inside {
            let level: i64 = point.iter().zip(&y).map(|(u, v)| u * v).sum();
            if level <= cap {
                total += q_pow(&x, level);
            }
        }
        // odometer over the box
        let mut k = 0;
        loop {
            if k == cone.rank {
                return Ok(total);
            }
            y[k] += 1;
            if y[k] <= b {
                break;
            }
            y[k] = -b;
            k += 1;
        }
    }
}

/// Upper bound on the part of the lattice sum beyond `cap`, using that at most
/// `C(k + n - 1, n - 1)` dual points have `<y, a> = k` when every `a_i >= 1`.
pub fn lq_tail_bound(rank: usize, q: u64, s0: i64, cap: i64) -> f64 {
    let ratio = (q as f64).powf(-(s0 as f64));
    let mut total = 0.0;
    let mut k = cap + 1;
    loop {
        let term = binomial_f64(k as usize + rank - 1, rank - 1) * ratio.powi(k as i32);
        total += term;
        if term < 1e-30 * total.max(1e-300) || k > cap + 2000 {
            return total;
        }
        k += 1;
    }
}

fn binomial_f64(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// The effective cone of a flag variety: the orthant on `(varpi_alpha)_{alpha in Delta - I}`.
pub fn effective_cone(pd: &ParabolicDatum) -> LatticeCone {
    LatticeCone::orthant(pd.t)
}

/// `alpha*(V) = prod <alpha^vee, lambda_P> / prod <alpha^vee, 2 rho_P>` over `Delta - I`.
pub fn alpha_star(pd: &ParabolicDatum) -> Q {
    pd.complement
        .iter()
        .zip(&pd.anticanonical_coords)
        .fold(Q::one(), |acc, (&i, &a)| {
            acc * q_int(pd.lambda_p0[i]) / q_int(a)
        })
}

/// `alpha*` from its definition `(log q)^t lim (s-1)^t L_q((s-1) omega^{-1})`.
pub fn alpha_star_from_lq(pd: &ParabolicDatum, q: u64) -> Result<Q> {
    let cone = effective_cone(pd);
    let lq = lq_line(&cone, &pd.anticanonical_coords, q)?;
    let lim = lq.s_limit(pd.t as i64, q)?;
    debug_assert_eq!(lim.logq_pow, -(pd.t as i64));
    Ok(lim.coeff)
}

/// `chi_C(a) = prod 1/a_i` for a unimodular cone, `a` in generator coordinates.
pub fn chi_value(cone: &LatticeCone, a: &[i64]) -> Result<Q> {
    cone.check(a)?;
    Ok(a.iter().fold(Q::one(), |acc, &ai| acc / q_int(ai)))
}

fn to_q(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter()
        .map(|r| r.iter().map(|&c| q_int(c)).collect())
        .collect()
}

fn matrix_rank(m: &[Vec<i64>]) -> usize {
    let mut a = to_q(m);
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..a.len() {
            let f = &a[i][c] / &a[r][c];
            for j in c..cols {
                let t = &f * &a[r][j];
                a[i][j] -= t;
            }
        }
        r += 1;
    }
    r
}

fn determinant(m: &[Vec<i64>]) -> Q {
    let mut a = to_q(m);
    let n = a.len();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

/// Inverse of the matrix whose rows are the generators, transposed, so that
/// `y = result * k` solves `<y, m_i> = k_i`.
fn inverse(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let n = m.len();
    // system: sum_j m[i][j] y_j = k_i  ->  y = m^{-1} k
    let mut a: Vec<Vec<Q>> = to_q(m)
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero()).expect("invertible");
        a.swap(p, c);
        let inv = a[c][c].recip();
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..2 * n {
                    let t = &f * &a[c][j];
                    a[i][j] -= t;
                }
            }
        }
    }
    a.into_iter().map(|row| row[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational_fn::q_frac;
    use crate::root_system::RootSystem;

    fn datum(group: &str, levi: &[usize]) -> ParabolicDatum {
        RootSystem::new(group.parse().unwrap())
            .unwrap()
            .parabolic_datum(levi)
            .unwrap()
    }

    #[test]
    fn lq_line_examples() {
        let c1 = LatticeCone::orthant(1);
        let f = lq_line(&c1, &[2], 2).unwrap();
        assert_eq!(f, RatFn::geometric(Q::one(), 2));
        assert_eq!(f.pole_order_at(&Q::one()).unwrap(), 1);
        // the unshifted L_q(s a) is the same function at x/q
        assert_eq!(
            f.substitute_monomial(&q_frac(1, 2), 1),
            RatFn::geometric(q_frac(1, 4), 2)
        );

        let c2 = LatticeCone::orthant(2);
        let g = lq_line(&c2, &[2, 3], 2).unwrap();
        assert_eq!(g.pole_order_at(&Q::one()).unwrap(), 2);
        assert_eq!(
            g.substitute_monomial(&q_frac(1, 2), 1),
            &RatFn::geometric(q_frac(1, 4), 2) * &RatFn::geometric(q_frac(1, 8), 3)
        );
    }

    #[test]
    fn lq_line_series_matches_lattice_count() {
        // coefficient of x^k counts (k1, k2) >= 0 with 2 k1 + 3 k2 = k
        let g = lq_line(&LatticeCone::orthant(2), &[2, 3], 2).unwrap();
        let series = g.series_coeffs(12).unwrap();
        for (k, c) in series.iter().enumerate() {
            let count = (0..=k)
                .filter(|k1| 2 * k1 <= k && (k - 2 * k1) % 3 == 0)
                .count();
            assert_eq!(*c, q_int(count as i64));
        }
    }

    #[test]
    fn lq_line_rejects_bad_input() {
        let c = LatticeCone::orthant(2);
        assert_eq!(lq_line(&c, &[1, 0], 2), Err(Error::BoundaryPoint));
        let skew = LatticeCone::new(vec![vec![1, 0], vec![1, 2]]).unwrap();
        assert!(!skew.is_unimodular());
        assert_eq!(lq_line(&skew, &[1, 1], 2), Err(Error::NonUnimodular));
        assert_eq!(chi_value(&skew, &[1, 1]), Err(Error::NonUnimodular));
    }

    #[test]
    fn bruteforce_geometric_example() {
        let c = LatticeCone::orthant(1);
        let s = lq_bruteforce(&c, &[1], 2, 2, 10).unwrap();
        let expect = (Q::one() - q_pow(&q_frac(1, 4), 11)) / q_frac(3, 4);
        assert_eq!(s, expect);
        assert_eq!(lq_bruteforce(&c, &[0], 2, 2, 10), Err(Error::BoundaryPoint));
        assert!(lq_bruteforce(&c, &[1], 2, 2, 41).is_err());
    }

    #[test]
    fn bruteforce_agrees_with_closed_form() {
        let cases: Vec<(LatticeCone, Vec<i64>)> = vec![
            (LatticeCone::orthant(1), vec![3]),
            (LatticeCone::orthant(2), vec![2, 3]),
            (LatticeCone::orthant(3), vec![1, 2, 2]),
            // a unimodular cone that is not the orthant
            (
                LatticeCone::new(vec![vec![1, 1], vec![0, 1]]).unwrap(),
                vec![2, 1],
            ),
        ];
        for (cone, a) in &cases {
            for q in [2u64, 3] {
                for s0 in [2i64, 3] {
                    let cap = 12;
                    let brute = q_to_f64(&lq_bruteforce(cone, a, q, s0, cap).unwrap());
                    let x = q_pow(&q_int(q as i64), -s0);
                    let closed = q_to_f64(&lq_line(cone, a, q).unwrap().eval(&x).unwrap());
                    let tail = lq_tail_bound(cone.rank(), q, s0, cap);
                    assert!(closed >= brute - 1e-15);
                    assert!(closed - brute <= tail + 1e-15, "{closed} {brute} {tail}");
                }
            }
        }
    }

    #[test]
    fn alpha_star_examples() {
        assert_eq!(alpha_star(&datum("A2", &[1])), q_frac(1, 3));
        assert_eq!(alpha_star(&datum("A1", &[])), q_frac(1, 2));
        assert_eq!(alpha_star(&datum("A2", &[])), q_frac(1, 4));
    }

    #[test]
    fn chi_examples() {
        assert_eq!(
            chi_value(&LatticeCone::orthant(2), &[2, 3]).unwrap(),
            q_frac(1, 6)
        );
        for n in 1..6 {
            assert_eq!(
                chi_value(&LatticeCone::orthant(1), &[n + 1]).unwrap(),
                q_frac(1, n + 1)
            );
        }
    }

    #[test]
    fn three_routes_to_alpha_star_agree() {
        for group in ["A1", "A2", "A3", "B2", "G2", "A1xA1", "C3"] {
            let r = RootSystem::new(group.parse().unwrap()).unwrap();
            let n = r.rank();
            for mask in 0..(1u32 << n) - 1 {
                let levi: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                let pd = r.parabolic_datum(&levi).unwrap();
                let a = alpha_star(&pd);
                let chi = chi_value(&effective_cone(&pd), &pd.anticanonical_coords).unwrap();
                assert_eq!(a, chi);
                for q in [2, 3, 5] {
                    assert_eq!(alpha_star_from_lq(&pd, q).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn lq_line_lives_in_x_only() {
        // the line function carries no q: it is periodic in Im(s) through x alone
        let c = LatticeCone::orthant(2);
        assert_eq!(
            lq_line(&c, &[2, 2], 2).unwrap(),
            lq_line(&c, &[2, 2], 7).unwrap()
        );
    }
}
