//! Polynomials over `F_q`, coefficients lowest degree first, no trailing zeros.

use std::fmt;

use super::field::{Elt, Fq};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FqPoly(Vec<Elt>);

impl FqPoly {
    pub fn new(mut coeffs: Vec<Elt>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FqPoly(coeffs)
    }

    pub fn zero() -> Self {
        FqPoly(Vec::new())
    }

    pub fn one() -> Self {
        FqPoly(vec![1])
    }

    /// The polynomial whose coefficients are the base-`q` digits of `code`.
    pub fn from_code(mut code: u64, q: usize) -> Self {
        let mut c = Vec::new();
        while code > 0 {
            c.push((code % q as u64) as Elt);
            code /= q as u64;
        }
        FqPoly(c)
    }

    pub fn code(&self, q: usize) -> u64 {
        self.0
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * q as u64 + c as u64)
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn leading(&self) -> Elt {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, rhs: &FqPoly, f: &Fq) -> FqPoly {
        let n = self.0.len().max(rhs.0.len());
        let get = |v: &[Elt], i: usize| v.get(i).copied().unwrap_or(0);
        FqPoly::new(
            (0..n)
                .map(|i| f.add(get(&self.0, i), get(&rhs.0, i)))
                .collect(),
        )
    }

    pub fn scale(&self, c: Elt, f: &Fq) -> FqPoly {
        FqPoly::new(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, rhs: &FqPoly, f: &Fq) -> FqPoly {
        if self.is_zero() || rhs.is_zero() {
            return FqPoly::zero();
        }
        let mut out = vec![0; self.0.len() + rhs.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.0.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        FqPoly::new(out)
    }

    pub fn monic(&self, f: &Fq) -> FqPoly {
        if self.is_zero() {
            return FqPoly::zero();
        }
        self.scale(f.inv(self.leading()), f)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &FqPoly, f: &Fq) -> (FqPoly, FqPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = f.inv(divisor.leading());
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (FqPoly::zero(), self.clone());
        }
        let mut quot = vec![0; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = f.mul(rem[k + dd], lead_inv);
            quot[k] = c;
            if c != 0 {
                for (i, &b) in divisor.0.iter().enumerate() {
                    rem[k + i] = f.sub(rem[k + i], f.mul(c, b));
                }
            }
        }
        rem.truncate(dd);
        (FqPoly::new(quot), FqPoly::new(rem))
    }

    pub fn rem(&self, divisor: &FqPoly, f: &Fq) -> FqPoly {
        self.div_rem(divisor, f).1
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(a: &FqPoly, b: &FqPoly, f: &Fq) -> FqPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a FqPoly>, f: &Fq) -> FqPoly {
        polys
            .into_iter()
            .fold(FqPoly::zero(), |g, p| FqPoly::gcd(&g, p, f))
    }

    pub fn divides(&self, other: &FqPoly, f: &Fq) -> bool {
        other.rem(self, f).is_zero()
    }
}

impl fmt::Debug for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (k, c) {
                (0, _) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "{c}*t")?,
                (_, 1) => write!(f, "t^{k}")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Monic irreducible polynomials of degree `1..=max_degree`, by degree then code.
pub fn monic_irreducibles(f: &Fq, max_degree: usize) -> Vec<FqPoly> {
    let q = f.size() as u64;
    let mut found: Vec<FqPoly> = Vec::new();
    for d in 1..=max_degree {
        let lo = q.pow(d as u32);
        for code in lo..2 * lo {
            let p = FqPoly::from_code(code, f.size());
            let reducible = found
                .iter()
                .take_while(|g| 2 * g.degree().unwrap() <= d)
                .any(|g| g.divides(&p, f));
            if !reducible {
                found.push(p);
            }
        }
    }
    found
}
