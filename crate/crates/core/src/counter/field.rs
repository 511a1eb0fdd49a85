//! Finite fields `F_q` as lookup tables.
//!
//! Elements are indices `0..q`; for `q = p^k` the index is the base-`p`
//! expansion of the coordinate vector over `F_p`, so `0` is zero and `1` is one.

use crate::curve_zeta::prime_power;
use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u64 = 256;

pub type Elt = u16;

#[derive(Clone, Debug)]
pub struct Fq {
    q: usize,
    p: usize,
    add: Vec<Elt>,
    mul: Vec<Elt>,
    neg: Vec<Elt>,
    inv: Vec<Elt>,
}

fn poly_mod_p(a: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    // modulus is monic
    let mut r = a.to_vec();
    let m = modulus.len() - 1;
    while r.len() > m {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let shift = r.len() - m;
            for (i, &c) in modulus[..m].iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
        }
    }
    r
}

fn is_irreducible_mod_p(modulus: &[usize], p: usize) -> bool {
    // irreducible iff no monic factor of degree 1..=deg/2
    let k = modulus.len() - 1;
    for d in 1..=k / 2 {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut f: Vec<usize> = (0..d).map(|i| code / p.pow(i as u32) % p).collect();
            f.push(1);
            if poly_mod_p(modulus, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn irreducible_modulus(p: usize, k: usize) -> Vec<usize> {
    let count = p.pow(k as u32);
    (0..count)
        .map(|code| {
            let mut f: Vec<usize> = (0..k).map(|i| code / p.pow(i as u32) % p).collect();
            f.push(1);
            f
        })
        .find(|f| is_irreducible_mod_p(f, p))
        .expect("irreducible polynomials exist in every degree")
}

impl Fq {
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) =
            prime_power(q).ok_or_else(|| Error::Domain(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_SIZE {
            return Err(Error::Domain(format!(
                "field size {q} exceeds {MAX_FIELD_SIZE}"
            )));
        }
        let (q, p, k) = (q as usize, p as usize, k as usize);
        let digits = |x: usize| -> Vec<usize> { (0..k).map(|i| x / p.pow(i as u32) % p).collect() };
        let index = |v: &[usize]| -> usize {
            v.iter()
                .enumerate()
                .map(|(i, &c)| c * p.pow(i as u32))
                .sum()
        };
        let modulus = irreducible_modulus(p, k);

        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = index(&sum) as Elt;
                let mut prod = vec![0usize; 2 * k - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut red = poly_mod_p(&prod, &modulus, p);
                red.resize(k, 0);
                mul[a * q + b] = index(&red) as Elt;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as Elt)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as Elt
                }
            })
            .collect();
        Ok(Fq {
            q,
            p,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn add(&self, a: Elt, b: Elt) -> Elt {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elt, b: Elt) -> Elt {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elt) -> Elt {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero element.
    #[inline]
    pub fn inv(&self, a: Elt) -> Elt {
        debug_assert!(a != 0);
        self.inv[a as usize]
    }
}
