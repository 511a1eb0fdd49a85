use std::collections::BTreeMap;

use flagzeta_core::counter::{
    check_canonical_points, enumerate_flag_sl3, enumerate_p1xp1, enumerate_projective,
    height_via_places, scan_projective, table_from_points, CountTable, Fq, FqPoly, ProjPoint,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// gcd over Z/p with plain integer vectors, lowest degree first.
fn gcd_mod_p(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    let trim = |mut v: Vec<i64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    };
    let inv = |x: i64| (1..p).find(|y| x * y % p == 1).unwrap();
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let lb = inv(*b.last().unwrap());
        while a.len() >= b.len() {
            let c = a.last().unwrap() * lb % p;
            let shift = a.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                a[shift + i] = ((a[shift + i] - c * bi) % p + p) % p;
            }
            a = trim(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a
}

fn as_ints(p: &FqPoly) -> Vec<i64> {
    p.coeffs().iter().map(|&c| c as i64).collect()
}

#[test]
fn scanned_points_are_coprime_by_an_independent_gcd() {
    for (n, q, d) in [(1, 3, 3), (2, 2, 2), (2, 3, 1), (1, 5, 2)] {
        for point in scan_projective(n, q, d).unwrap().points {
            let g = point
                .coords
                .iter()
                .fold(Vec::new(), |g, c| gcd_mod_p(&g, &as_ints(c), q as i64));
            assert_eq!(g.len(), 1, "{point:?}");
        }
    }
}

#[test]
fn canonical_points_are_unique() {
    for (n, q, d) in [(1, 2, 5), (2, 2, 2), (1, 4, 2), (3, 2, 1)] {
        let scan = scan_projective(n, q, d).unwrap();
        assert!(check_canonical_points(&scan.points, q).unwrap());
        assert_eq!(scan.coprime_tuples, (q - 1) * scan.points.len() as u64);
        assert!(scan.raw_tuples >= scan.coprime_tuples);
    }
}

#[test]
fn height_product_formula_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut checked = 0;
    while checked < 20 {
        let q = [2u64, 3, 4][rng.gen_range(0..3)];
        let f = Fq::new(q).unwrap();
        let coords: Vec<FqPoly> = (0..3)
            .map(|_| {
                let deg = rng.gen_range(0..5);
                FqPoly::new((0..=deg).map(|_| rng.gen_range(0..q as u16)).collect())
            })
            .collect();
        let Some(point) = ProjPoint::canonical(coords.clone(), &f) else {
            // a common factor shows up as a finite contribution
            if coords.iter().any(|c| !c.is_zero()) {
                let p = ProjPoint { coords };
                let g = FqPoly::gcd_all(&p.coords, &f);
                let top = p.height_degree() as i64;
                assert_eq!(height_via_places(&p, &f), top - g.degree().unwrap() as i64);
            }
            continue;
        };
        assert_eq!(height_via_places(&point, &f), point.height_degree() as i64);
        checked += 1;
    }
}

#[test]
fn growth_is_bounded_by_serre() {
    for (n, q, d) in [(1usize, 2u64, 10u32), (1, 3, 8), (2, 2, 5), (3, 2, 3)] {
        let t = enumerate_projective(n, q, d).unwrap();
        let c = t.growth_constant(n);
        assert!(c.is_finite() && c > 0.0);
        let ratio = |k: u32| t.get(&[k]) as f64 / (q as f64).powi((k * (n as u32 + 1)) as i32);
        // the ratio settles from degree one on
        assert!((ratio(d) - ratio(d - 1)).abs() < 1e-12);
        assert!((0..=d).all(|k| ratio(k) <= c));
    }
}

#[test]
fn counts_do_not_depend_on_the_thread_pool() {
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| {
                (
                    enumerate_projective(2, 2, 4).unwrap(),
                    enumerate_flag_sl3(2, 2, 2).unwrap(),
                )
            })
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn p1xp1_matches_a_direct_product_scan() {
    let points = scan_projective(1, 3, 2).unwrap().points;
    let mut direct: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for a in &points {
        for b in &points {
            *direct
                .entry(vec![a.height_degree(), b.height_degree()])
                .or_insert(0) += 1;
        }
    }
    assert_eq!(enumerate_p1xp1(3, 2, 2).unwrap().counts, direct);
}

#[test]
fn flag_counts_match_a_recount() {
    for (q, d) in [(2u64, 2u32), (3, 1)] {
        let f = Fq::new(q).unwrap();
        let points = scan_projective(2, q, d).unwrap().points;
        let table = enumerate_flag_sl3(q, d, d).unwrap();
        let mut direct: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
        for p in &points {
            for l in &points {
                let entry = direct
                    .entry(vec![p.height_degree(), l.height_degree()])
                    .or_insert(0);
                if p.pairing(l, &f).is_zero() {
                    *entry += 1;
                }
            }
        }
        assert_eq!(table.counts, direct, "q={q}");
        // (1 + q)(1 + q + q^2) flags over the constant field
        let qq = q;
        assert_eq!(table.get(&[0, 0]), (1 + qq) * (1 + qq + qq * qq));
    }
}

#[test]
fn count_table_json_round_trip() {
    let t = enumerate_flag_sl3(2, 1, 1).unwrap();
    let text = serde_json::to_string(&t).unwrap();
    assert!(text.contains("\"degrees\":[1,0]"));
    let back: CountTable = serde_json::from_str(&text).unwrap();
    assert_eq!(back, t);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn fast_count_agrees_with_exhaustive_scan(
        (n, q, d) in prop_oneof![
            (Just(1usize), prop::sample::select(vec![2u64, 3, 4, 5, 7]), 0u32..=3),
            (Just(2usize), prop::sample::select(vec![2u64, 3]), 0u32..=1),
            (Just(3usize), Just(2u64), 0u32..=1),
        ]
    ) {
        let fast = enumerate_projective(n, q, d).unwrap();
        let scan = scan_projective(n, q, d).unwrap();
        prop_assert_eq!(fast, table_from_points(&scan.points, n, q, d));
    }
}
