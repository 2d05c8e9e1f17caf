use std::fmt;

use serde::Serialize;

use super::presentation::Presentation;
use super::CogError;

/// A finitely generated abelian group `Z^free_rank x Z/d1 x ... x Z/dk` with
/// `1 < d1 | d2 | ... | dk`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<u128>,
}

impl fmt::Display for Abelianization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn relation_matrix(p: &Presentation) -> Vec<Vec<i64>> {
    p.relators().iter().map(|r| (0..p.generator_count()).map(|g| r.exponent_sum(g)).collect()).collect()
}

pub fn abelianization(p: &Presentation) -> Result<Abelianization, CogError> {
    let m = relation_matrix(p);
    let invariants = smith_invariants(&m, p.generator_count())?;
    let free_rank = p.generator_count() - invariants.len();
    let torsion = invariants.into_iter().filter(|&d| d > 1).collect();
    Ok(Abelianization { free_rank, torsion })
}

/// Nonzero diagonal entries of the Smith normal form of an integer matrix
/// with `cols` columns, in divisibility order.
pub fn smith_invariants(m: &[Vec<i64>], cols: usize) -> Result<Vec<u128>, CogError> {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = a.len();
    let mut out = Vec::new();
    let ovf = || CogError::Overflow;
    let mut t = 0;
    while t < rows.min(cols) {
        // Pivot: least nonzero absolute value in the remaining block.
        let Some((pr, pc)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| (a[i][j].unsigned_abs(), i, j))
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t] / a[t][t];
            if q != 0 {
                for j in t..cols {
                    a[i][j] = a[i][j].checked_sub(q.checked_mul(a[t][j]).ok_or_else(ovf)?).ok_or_else(ovf)?;
                }
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / a[t][t];
            if q != 0 {
                for row in a.iter_mut().skip(t) {
                    row[j] = row[j].checked_sub(q.checked_mul(row[t]).ok_or_else(ovf)?).ok_or_else(ovf)?;
                }
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // Enforce divisibility: fold an offending row into the pivot row.
        let p = a[t][t];
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
            for j in t..cols {
                a[t][j] = a[t][j].checked_add(a[i][j]).ok_or_else(ovf)?;
            }
            continue;
        }
        out.push(p.unsigned_abs());
        t += 1;
    }
    Ok(out)
}

/// Rank over the rationals.
pub fn rank(m: &[Vec<i64>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    match smith_invariants(m, cols) {
        Ok(v) => v.len(),
        // Fall back to floating point elimination on overflow.
        Err(_) => {
            let mat = nalgebra::DMatrix::from_fn(m.len(), cols, |i, j| m[i][j] as f64);
            mat.rank(1e-9)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab(text: &str) -> String {
        abelianization(&Presentation::parse_text(text).unwrap()).unwrap().to_string()
    }

    #[test]
    fn examples() {
        assert_eq!(ab("generators: a, b\n[a,b]"), "Z^2");
        assert_eq!(ab("generators: s, t\ns^2\nt^2\n(s t)^3"), "Z/2");
        assert_eq!(ab("generators: a\na^4\na^6"), "Z/2");
        assert_eq!(ab("generators: a, b\na^2\nb^3"), "Z/6");
        assert_eq!(ab("generators: a, b\na^2\nb^4"), "Z/2 x Z/4");
        assert_eq!(ab("generators: a\na"), "0");
        assert_eq!(ab("generators: a, b, c\na^2"), "Z^2 x Z/2");
    }

    /// `d_k` = gcd of all k x k minors; invariants are `d_k / d_{k-1}`.
    fn determinantal_invariants(m: &[Vec<i64>], cols: usize) -> Vec<u128> {
        fn det(m: &[Vec<i128>]) -> i128 {
            let n = m.len();
            if n == 0 {
                return 1;
            }
            (0..n)
                .map(|j| {
                    let minor: Vec<Vec<i128>> = m[1..]
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                        .collect();
                    let s = if j % 2 == 0 { 1 } else { -1 };
                    s * m[0][j] * det(&minor)
                })
                .sum()
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            (0u32..1 << n)
                .filter(|b| b.count_ones() as usize == k)
                .map(|b| (0..n).filter(|i| b >> i & 1 == 1).collect())
                .collect()
        }
        fn gcd(a: u128, b: u128) -> u128 {
            if b == 0 {
                a
            } else {
                gcd(b, a % b)
            }
        }
        let mut out = Vec::new();
        let mut prev = 1u128;
        for k in 1..=m.len().min(cols) {
            let mut d = 0u128;
            for rs in subsets(m.len(), k) {
                for cs in subsets(cols, k) {
                    let sub: Vec<Vec<i128>> =
                        rs.iter().map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect()).collect();
                    d = gcd(d, det(&sub).unsigned_abs());
                }
            }
            if d == 0 {
                break;
            }
            out.push(d / prev);
            prev = d;
        }
        out
    }

    #[test]
    fn oracle_agrees_on_fixed_matrices() {
        let ms: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
            vec![vec![2, 0], vec![0, 3]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]],
        ];
        for m in ms {
            let cols = m[0].len();
            assert_eq!(smith_invariants(&m, cols).unwrap(), determinantal_invariants(&m, cols));
        }
    }

    proptest! {
        #[test]
        fn snf_matches_determinantal_divisors(m in proptest::collection::vec(proptest::collection::vec(-6i64..=6, 3), 0..4)) {
            prop_assert_eq!(smith_invariants(&m, 3).unwrap(), determinantal_invariants(&m, 3));
        }

        #[test]
        fn invariants_divide(m in proptest::collection::vec(proptest::collection::vec(-20i64..=20, 4), 0..5)) {
            let inv = smith_invariants(&m, 4).unwrap();
            for w in inv.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            prop_assert_eq!(inv.len(), rank(&m));
        }
    }
}
