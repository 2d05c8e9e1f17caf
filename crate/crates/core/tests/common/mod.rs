//! Independent oracles and fixture access shared by the integration tests.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::path::PathBuf;

use gluing_core::project::{self, ProjectSpec};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

pub fn fixture(name: &str) -> ProjectSpec {
    project::load(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// A group element in a faithful concrete representation.
pub trait Element: Clone + Ord {
    fn compose(&self, other: &Self) -> Self;
    fn one(&self) -> Self;
}

/// Signed permutation: `x_i -> sign[i] * x_{perm[i]}`. Plain permutations
/// have every sign positive.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Signed {
    pub perm: Vec<usize>,
    pub sign: Vec<i8>,
}

impl Signed {
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(i, j);
        Signed { perm, sign: vec![1; n] }
    }

    pub fn flip(n: usize, i: usize) -> Self {
        let mut sign = vec![1; n];
        sign[i] = -1;
        Signed { perm: (0..n).collect(), sign }
    }
}

impl Element for Signed {
    fn compose(&self, o: &Self) -> Self {
        // (self * o)(x_i) = self(o(x_i)).
        let n = self.perm.len();
        let perm = (0..n).map(|i| self.perm[o.perm[i]]).collect();
        let sign = (0..n).map(|i| o.sign[i] * self.sign[o.perm[i]]).collect();
        Signed { perm, sign }
    }

    fn one(&self) -> Self {
        let n = self.perm.len();
        Signed { perm: (0..n).collect(), sign: vec![1; n] }
    }
}

/// Affine map `x -> sign * x + shift` on `Z/m`, with the sign kept formally
/// so that `m = 2` stays faithful.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Affine {
    pub m: i64,
    pub sign: i64,
    pub shift: i64,
}

impl Element for Affine {
    fn compose(&self, o: &Self) -> Self {
        Affine { m: self.m, sign: self.sign * o.sign, shift: (self.sign * o.shift + self.shift).rem_euclid(self.m) }
    }

    fn one(&self) -> Self {
        Affine { m: self.m, sign: 1, shift: 0 }
    }
}

pub fn dihedral_generators(m: i64) -> Vec<Affine> {
    vec![Affine { m, sign: -1, shift: 0 }, Affine { m, sign: -1, shift: 1 }]
}

/// Generators of `A_n` acting on `n + 1` points.
pub fn type_a_generators(n: usize) -> Vec<Signed> {
    (0..n).map(|i| Signed::transposition(n + 1, i, i + 1)).collect()
}

/// Generators of `B_n` as signed permutations, the last one a sign change.
pub fn type_b_generators(n: usize) -> Vec<Signed> {
    let mut g: Vec<Signed> = (0..n - 1).map(|i| Signed::transposition(n, i, i + 1)).collect();
    g.push(Signed::flip(n, n - 1));
    g
}

pub fn closure<E: Element>(gens: &[E]) -> BTreeSet<E> {
    let one = gens[0].one();
    let mut seen = BTreeSet::from([one.clone()]);
    let mut queue = VecDeque::from([one]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn evaluate<E: Element>(gens: &[E], word: &[usize]) -> E {
    word.iter().fold(gens[0].one(), |acc, &s| acc.compose(&gens[s]))
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    // Laplace expansion along the first row; fine for the small sizes used.
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..].iter().map(|r| [&r[..j], &r[j + 1..]].concat()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Abelian invariants from determinantal divisors: `d_k` is the gcd of all
/// `k x k` minors and the invariant factors are `d_k / d_{k-1}`. Returns
/// the free rank and the torsion factors above 1.
pub fn abelian_invariants(rows: &[Vec<i64>], cols: usize) -> (usize, Vec<u128>) {
    let m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut divisors = vec![1i128];
    for k in 1..=cols.min(m.len()) {
        let mut g = 0;
        for rs in subsets(m.len(), k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    let rank = divisors.len() - 1;
    let torsion = (1..divisors.len()).map(|k| (divisors[k] / divisors[k - 1]) as u128).filter(|&d| d > 1).collect();
    (cols - rank, torsion)
}
