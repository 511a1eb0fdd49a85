//! Root data of split semisimple simply connected groups and their parabolics.
//!
//! Roots are integer vectors in the simple-root basis, coroots in the
//! simple-coroot basis and weights in the fundamental-weight basis, so every
//! pairing `<lambda, alpha^vee>` is an exact integer. The Cartan matrix follows
//! the convention `cartan[i][j] = <alpha_j, alpha_i^vee>`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num::One;

use crate::error::{Error, Result};
use crate::rational_fn::{Poly, Q};

pub const WEYL_GROUP_CAP: usize = 100_000;
pub const MAX_RANK: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::G => 'G',
        }
    }

    fn cartan(self, n: usize) -> Result<Vec<Vec<i64>>> {
        let min = match self {
            Family::A => 1,
            Family::B | Family::C => 2,
            Family::D => 4,
            Family::G => 2,
        };
        if n < min || (self == Family::G && n != 2) {
            return Err(Error::Config(format!(
                "unsupported rank {n} for type {}",
                self.letter()
            )));
        }
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        match self {
            Family::A | Family::B | Family::C => {
                for i in 0..n - 1 {
                    a[i][i + 1] = -1;
                    a[i + 1][i] = -1;
                }
                // alpha_n is short in B_n and long in C_n
                if self == Family::B {
                    a[n - 1][n - 2] = -2;
                } else if self == Family::C {
                    a[n - 2][n - 1] = -2;
                }
            }
            Family::D => {
                for i in 0..n - 2 {
                    a[i][i + 1] = -1;
                    a[i + 1][i] = -1;
                }
                a[n - 3][n - 1] = -1;
                a[n - 1][n - 3] = -1;
            }
            Family::G => {
                // alpha_1 short, alpha_2 long
                a[0][1] = -3;
                a[1][0] = -1;
            }
        }
        Ok(a)
    }
}

/// A product of simple factors, e.g. `A2`, `B2`, `A1xA1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSpec(pub Vec<(Family, usize)>);

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("cannot parse group {s:?}"));
        let factors = s
            .split(['x', 'X', '*'])
            .map(|part| {
                let part = part.trim();
                let mut chars = part.chars();
                let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
                    Some('A') => Family::A,
                    Some('B') => Family::B,
                    Some('C') => Family::C,
                    Some('D') => Family::D,
                    Some('G') => Family::G,
                    _ => return Err(bad()),
                };
                let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
                Ok((family, rank))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupSpec(factors))
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(fam, n)| format!("{}{n}", fam.letter()))
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    spec: GroupSpec,
    cartan: Vec<Vec<i64>>,
    /// Positive roots ordered by height, simple roots first.
    positive_roots: Vec<Vec<i64>>,
    /// `positive_coroots[k]` is the coroot of `positive_roots[k]`.
    positive_coroots: Vec<Vec<i64>>,
}

pub fn build_root_system(factors: &[(Family, usize)]) -> Result<RootSystem> {
    RootSystem::new(GroupSpec(factors.to_vec()))
}

impl RootSystem {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        if spec.0.is_empty() {
            return Err(Error::Config("empty group".into()));
        }
        let rank: usize = spec.0.iter().map(|f| f.1).sum();
        if rank > MAX_RANK {
            return Err(Error::Config(format!(
                "total rank {rank} exceeds {MAX_RANK}"
            )));
        }
        let mut cartan = vec![vec![0i64; rank]; rank];
        let mut offset = 0;
        for &(family, n) in &spec.0 {
            let block = family.cartan(n)?;
            for i in 0..n {
                for j in 0..n {
                    cartan[offset + i][offset + j] = block[i][j];
                }
            }
            offset += n;
        }

        // orbit of (simple root, simple coroot) pairs under simple reflections
        let unit = |i: usize| {
            let mut v = vec![0i64; rank];
            v[i] = 1;
            v
        };
        let mut roots: BTreeMap<Vec<i64>, Vec<i64>> = BTreeMap::new();
        let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> =
            (0..rank).map(|i| (unit(i), unit(i))).collect();
        while let Some((root, coroot)) = queue.pop_front() {
            if roots.contains_key(&root) {
                continue;
            }
            for i in 0..rank {
                let pair: i64 = (0..rank).map(|j| cartan[i][j] * root[j]).sum();
                let mut r = root.clone();
                r[i] -= pair;
                let copair: i64 = (0..rank).map(|j| coroot[j] * cartan[j][i]).sum();
                let mut c = coroot.clone();
                c[i] -= copair;
                if !roots.contains_key(&r) {
                    queue.push_back((r, c));
                }
            }
            roots.insert(root, coroot);
        }

        let mut positive: Vec<(Vec<i64>, Vec<i64>)> = roots
            .into_iter()
            .filter(|(r, _)| r.iter().all(|&c| c >= 0))
            .collect();
        positive.sort_by(|a, b| {
            let ha: i64 = a.0.iter().sum();
            let hb: i64 = b.0.iter().sum();
            ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
        });
        let (positive_roots, positive_coroots) = positive.into_iter().unzip();
        Ok(RootSystem {
            spec,
            cartan,
            positive_roots,
            positive_coroots,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    pub fn simple_coroot(&self, i: usize) -> Vec<i64> {
        self.simple_root(i)
    }

    /// `varpi_i` in the weight basis.
    pub fn fundamental_weight(&self, i: usize) -> Vec<i64> {
        self.simple_root(i)
    }

    /// Weight-basis coordinates of a root given in the simple-root basis.
    pub fn root_to_weight(&self, root: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.cartan[i][j] * root[j]).sum())
            .collect()
    }

    /// `<lambda, gamma^vee>` for a weight and a coroot in the simple-coroot basis.
    pub fn pair(weight: &[i64], coroot: &[i64]) -> i64 {
        weight.iter().zip(coroot).map(|(a, b)| a * b).sum()
    }

    /// `rho`, the half-sum of positive roots, equal to the sum of fundamental weights.
    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank()]
    }

    /// Apply `s_i` to a weight.
    pub fn reflect_weight(&self, i: usize, weight: &[i64]) -> Vec<i64> {
        let li = weight[i];
        weight
            .iter()
            .enumerate()
            .map(|(k, &w)| w - li * self.cartan[k][i])
            .collect()
    }

    fn reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m = vec![vec![0i64; n]; n];
        for j in 0..n {
            // column j is s_i(alpha_j) = alpha_j - <alpha_j, alpha_i^vee> alpha_i
            m[j][j] += 1;
            m[i][j] -= self.cartan[i][j];
        }
        m
    }

    fn identity(&self) -> WeylElt {
        let n = self.rank();
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        WeylElt {
            word: Vec::new(),
            matrix: m,
        }
    }

    /// `w s_i`
    pub fn right_multiply(&self, w: &WeylElt, i: usize) -> WeylElt {
        let mut word = w.word.clone();
        word.push(i);
        WeylElt {
            word,
            matrix: mat_mul(&w.matrix, &self.reflection_matrix(i)),
        }
    }

    /// `a b`; the word is the concatenation and is reduced iff lengths add.
    pub fn multiply(&self, a: &WeylElt, b: &WeylElt) -> WeylElt {
        let mut word = a.word.clone();
        word.extend_from_slice(&b.word);
        WeylElt {
            word,
            matrix: mat_mul(&a.matrix, &b.matrix),
        }
    }

    pub fn element_from_word(&self, word: &[usize]) -> Result<WeylElt> {
        word.iter().try_fold(self.identity(), |w, &i| {
            if i >= self.rank() {
                Err(Error::Config(format!(
                    "simple reflection {} out of range",
                    i + 1
                )))
            } else {
                Ok(self.right_multiply(&w, i))
            }
        })
    }

    /// Breadth-first closure of the subgroup generated by the given simple
    /// reflections. Elements come out sorted by length with reduced words.
    pub fn subgroup(&self, generators: &[usize]) -> Result<Vec<WeylElt>> {
        let mut seen: HashMap<Vec<Vec<i64>>, ()> = HashMap::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([self.identity()]);
        seen.insert(self.identity().matrix, ());
        while let Some(w) = queue.pop_front() {
            for &i in generators {
                let next = self.right_multiply(&w, i);
                if !seen.contains_key(&next.matrix) {
                    if seen.len() >= WEYL_GROUP_CAP {
                        return Err(Error::WeylGroupTooLarge {
                            cap: WEYL_GROUP_CAP,
                        });
                    }
                    seen.insert(next.matrix.clone(), ());
                    queue.push_back(next);
                }
            }
            out.push(w);
        }
        Ok(out)
    }

    pub fn weyl_group(&self) -> Result<Vec<WeylElt>> {
        let all: Vec<usize> = (0..self.rank()).collect();
        self.subgroup(&all)
    }

    /// The longest element of the parabolic subgroup `W_J`.
    pub fn longest_element(&self, j: &[usize]) -> Result<WeylElt> {
        let group = self.subgroup(j)?;
        Ok(group
            .into_iter()
            .max_by_key(|w| w.length())
            .expect("subgroup contains the identity"))
    }

    /// Indices into [`RootSystem::positive_roots`] of `{alpha > 0 : w alpha < 0}`.
    pub fn inverted_roots(&self, w: &WeylElt) -> Vec<usize> {
        self.positive_roots
            .iter()
            .enumerate()
            .filter(|(_, r)| w.act_on_root(r).iter().all(|&c| c <= 0))
            .map(|(k, _)| k)
            .collect()
    }

    /// Length computed from the action, independent of the stored word.
    pub fn length(&self, w: &WeylElt) -> usize {
        self.inverted_roots(w).len()
    }

    /// Indices of positive roots supported on `subset`.
    pub fn positive_roots_in(&self, subset: &[usize]) -> Vec<usize> {
        self.positive_roots
            .iter()
            .enumerate()
            .filter(|(_, r)| {
                r.iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || subset.contains(&i))
            })
            .map(|(k, _)| k)
            .collect()
    }

    pub fn is_simple(&self, root_index: usize) -> bool {
        self.positive_roots[root_index].iter().sum::<i64>() == 1
    }

    fn check_subset(&self, subset: &[usize]) -> Result<Vec<usize>> {
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&bad) = s.iter().find(|&&i| i >= self.rank()) {
            return Err(Error::Config(format!(
                "simple root index {} out of range 1..={}",
                bad + 1,
                self.rank()
            )));
        }
        Ok(s)
    }

    pub fn parabolic_datum(&self, levi: &[usize]) -> Result<ParabolicDatum> {
        let levi = self.check_subset(levi)?;
        let complement: Vec<usize> = (0..self.rank()).filter(|i| !levi.contains(i)).collect();
        let in_levi = self.positive_roots_in(&levi);
        let mut two_rho = vec![0i64; self.rank()];
        let mut dim_v = 0;
        for (k, root) in self.positive_roots.iter().enumerate() {
            if in_levi.contains(&k) {
                continue;
            }
            dim_v += 1;
            for (acc, c) in two_rho.iter_mut().zip(self.root_to_weight(root)) {
                *acc += c;
            }
        }
        let anticanonical_coords = complement.iter().map(|&i| two_rho[i]).collect();
        Ok(ParabolicDatum {
            levi,
            complement: complement.clone(),
            two_rho_p: two_rho,
            picard_basis: complement
                .iter()
                .map(|&i| self.fundamental_weight(i))
                .collect(),
            anticanonical_coords,
            dim_v,
            t: complement.len(),
            lambda_p0: vec![1; self.rank()],
        })
    }

    /// `sum_{w in W} x^{l(w)} / sum_{w in W_I} x^{l(w)}`, the point-count
    /// polynomial of `P\G`.
    pub fn poincare_polynomial(&self, levi: &[usize]) -> Result<Poly> {
        let levi = self.check_subset(levi)?;
        let whole = length_polynomial(&self.weyl_group()?);
        let part = length_polynomial(&self.subgroup(&levi)?);
        let (quot, rem) = whole.div_rem(&part);
        debug_assert!(rem.is_zero());
        Ok(quot)
    }
}

fn length_polynomial(group: &[WeylElt]) -> Poly {
    let max = group.iter().map(|w| w.length()).max().unwrap_or(0);
    let mut coeffs = vec![0i64; max + 1];
    for w in group {
        coeffs[w.length()] += 1;
    }
    Poly::from_ints(&coeffs)
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// A Weyl group element: a reduced word and its action on the root lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElt {
    word: Vec<usize>,
    matrix: Vec<Vec<i64>>,
}

impl WeylElt {
    /// Simple-reflection indices (0-based), leftmost factor first.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Length of the stored word; equal to the length for words produced by
    /// [`RootSystem::subgroup`].
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn act_on_root(&self, root: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(root).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn act_on_weight(&self, rs: &RootSystem, weight: &[i64]) -> Vec<i64> {
        self.word
            .iter()
            .rev()
            .fold(weight.to_vec(), |acc, &i| rs.reflect_weight(i, &acc))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicDatum {
    /// `I`, the simple roots of the Levi factor (0-based).
    pub levi: Vec<usize>,
    /// `Delta - I`, indexing the Picard basis.
    pub complement: Vec<usize>,
    /// `2 rho_P` in the weight basis.
    pub two_rho_p: Vec<i64>,
    pub picard_basis: Vec<Vec<i64>>,
    /// `a_alpha = <alpha^vee, 2 rho_P>` for `alpha` in `Delta - I`.
    pub anticanonical_coords: Vec<i64>,
    pub dim_v: usize,
    /// Rank of the Picard group.
    pub t: usize,
    pub lambda_p0: Vec<i64>,
}

impl ParabolicDatum {
    pub fn alpha_pairing_product(&self) -> Q {
        let p: i64 = self.anticanonical_coords.iter().product();
        Q::one() / crate::rational_fn::q_int(p)
    }
}
