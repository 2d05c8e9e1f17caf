use std::fmt;

use super::{CoxeterSystem, GenSet, Order};

/// Irreducible finite Coxeter types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiniteType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    H3,
    H4,
    I2(u32),
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

impl FiniteType {
    pub fn order(self) -> u128 {
        match self {
            FiniteType::A(n) => factorial(n + 1),
            FiniteType::B(n) => (1u128 << n) * factorial(n),
            FiniteType::D(n) => (1u128 << (n - 1)) * factorial(n),
            FiniteType::E(6) => 51_840,
            FiniteType::E(7) => 2_903_040,
            FiniteType::E(8) => 696_729_600,
            FiniteType::E(n) => unreachable!("no finite type E{n}"),
            FiniteType::F4 => 1152,
            FiniteType::H3 => 120,
            FiniteType::H4 => 14_400,
            FiniteType::I2(m) => 2 * m as u128,
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::A(n) => write!(f, "A{n}"),
            FiniteType::B(n) => write!(f, "B{n}"),
            FiniteType::D(n) => write!(f, "D{n}"),
            FiniteType::E(n) => write!(f, "E{n}"),
            FiniteType::F4 => f.write_str("F4"),
            FiniteType::H3 => f.write_str("H3"),
            FiniteType::H4 => f.write_str("H4"),
            FiniteType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

/// Off-diagonal label in the Coxeter diagram: `None` when the generators
/// commute (no edge), `Some(0)` for infinity.
fn edge(sys: &CoxeterSystem, s: usize, t: usize) -> Option<u32> {
    match sys.m(s, t) {
        Order::Finite(2) => None,
        Order::Finite(m) => Some(m),
        Order::Infinite => Some(0),
    }
}

fn components(sys: &CoxeterSystem, t: GenSet) -> Vec<Vec<usize>> {
    let mut seen = GenSet::EMPTY;
    let mut out = Vec::new();
    for start in t.iter() {
        if seen.contains(start) {
            continue;
        }
        let mut comp = vec![start];
        seen.insert(start);
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for u in t.iter() {
                if !seen.contains(u) && edge(sys, v, u).is_some() {
                    seen.insert(u);
                    comp.push(u);
                }
            }
            k += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub(crate) fn classify(sys: &CoxeterSystem, t: GenSet) -> Option<Vec<FiniteType>> {
    components(sys, t).iter().map(|c| classify_component(sys, c)).collect()
}

fn classify_component(sys: &CoxeterSystem, comp: &[usize]) -> Option<FiniteType> {
    let n = comp.len();
    match n {
        1 => return Some(FiniteType::A(1)),
        2 => {
            return match edge(sys, comp[0], comp[1])? {
                0 => None,
                3 => Some(FiniteType::A(2)),
                4 => Some(FiniteType::B(2)),
                m => Some(FiniteType::I2(m)),
            }
        }
        _ => {}
    }
    // Adjacency inside the component, with labels.
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); n];
    let mut edge_count = 0;
    for a in 0..n {
        for b in a + 1..n {
            if let Some(m) = edge(sys, comp[a], comp[b]) {
                if m == 0 || m >= 6 {
                    return None;
                }
                adj[a].push((b, m));
                adj[b].push((a, m));
                edge_count += 1;
            }
        }
    }
    // Connected with n - 1 edges means a tree.
    if edge_count != n - 1 {
        return None;
    }
    let heavy: Vec<(usize, usize, u32)> = (0..n)
        .flat_map(|a| adj[a].iter().filter(move |&&(b, m)| a < b && m > 3).map(move |&(b, m)| (a, b, m)))
        .collect();
    let branch: Vec<usize> = (0..n).filter(|&v| adj[v].len() >= 3).collect();
    if branch.len() > 1 || adj.iter().any(|a| a.len() > 3) {
        return None;
    }

    if let Some(&centre) = branch.first() {
        if !heavy.is_empty() {
            return None;
        }
        let mut arms: Vec<usize> = adj[centre].iter().map(|&(b, _)| arm_length(&adj, centre, b)).collect();
        arms.sort_unstable();
        return match arms.as_slice() {
            [1, 1, _] => Some(FiniteType::D(n)),
            [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Some(FiniteType::E(n)),
            _ => None,
        };
    }

    // A path. Order the vertices from one end.
    let path = path_order(&adj);
    let labels: Vec<u32> =
        path.windows(2).map(|w| adj[w[0]].iter().find(|&&(b, _)| b == w[1]).expect("path edge").1).collect();
    match heavy.as_slice() {
        [] => Some(FiniteType::A(n)),
        [(_, _, 4)] => {
            let pos = labels.iter().position(|&m| m == 4).expect("heavy edge on path");
            if pos == 0 || pos == labels.len() - 1 {
                Some(FiniteType::B(n))
            } else if n == 4 && pos == 1 {
                Some(FiniteType::F4)
            } else {
                None
            }
        }
        [(_, _, 5)] => {
            let pos = labels.iter().position(|&m| m == 5).expect("heavy edge on path");
            let at_end = pos == 0 || pos == labels.len() - 1;
            match (at_end, n) {
                (true, 3) => Some(FiniteType::H3),
                (true, 4) => Some(FiniteType::H4),
                _ => None,
            }
        }
        _ => None,
    }
}

/// Number of vertices on the arm starting at `first`, leaving `centre`.
fn arm_length(adj: &[Vec<(usize, u32)>], centre: usize, first: usize) -> usize {
    let (mut prev, mut cur, mut len) = (centre, first, 1);
    loop {
        let next: Vec<usize> = adj[cur].iter().map(|&(b, _)| b).filter(|&b| b != prev).collect();
        match next.as_slice() {
            [nx] => {
                prev = cur;
                cur = *nx;
                len += 1;
            }
            _ => return len,
        }
    }
}

fn path_order(adj: &[Vec<(usize, u32)>]) -> Vec<usize> {
    let start = (0..adj.len()).find(|&v| adj[v].len() == 1).expect("a path has an end");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&(nx, _)) = adj[cur].iter().find(|&&(b, _)| b != prev) {
        order.push(nx);
        prev = cur;
        cur = nx;
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::CoxeterMatrix;
    use proptest::prelude::*;

    fn sys_from_edges(n: usize, edges: &[(usize, usize, u32)]) -> CoxeterSystem {
        let mut m = CoxeterMatrix::uniform(n, Order::Finite(2));
        for &(a, b, l) in edges {
            m.set(a, b, Order::from_code(l));
        }
        CoxeterSystem::with_default_labels(m)
    }

    fn types(sys: &CoxeterSystem) -> Option<Vec<FiniteType>> {
        sys.finite_type(sys.all_generators())
    }

    #[test]
    fn classical_families() {
        let a4 = sys_from_edges(4, &[(0, 1, 3), (1, 2, 3), (2, 3, 3)]);
        assert_eq!(types(&a4), Some(vec![FiniteType::A(4)]));
        let b3 = sys_from_edges(3, &[(0, 1, 4), (1, 2, 3)]);
        assert_eq!(types(&b3), Some(vec![FiniteType::B(3)]));
        let d4 = sys_from_edges(4, &[(0, 1, 3), (0, 2, 3), (0, 3, 3)]);
        assert_eq!(types(&d4), Some(vec![FiniteType::D(4)]));
        assert_eq!(FiniteType::D(4).order(), 192);
    }

    #[test]
    fn exceptional_types() {
        let e6 = sys_from_edges(6, &[(0, 1, 3), (1, 2, 3), (2, 3, 3), (3, 4, 3), (2, 5, 3)]);
        assert_eq!(types(&e6), Some(vec![FiniteType::E(6)]));
        let f4 = sys_from_edges(4, &[(0, 1, 3), (1, 2, 4), (2, 3, 3)]);
        assert_eq!(types(&f4), Some(vec![FiniteType::F4]));
        let h3 = sys_from_edges(3, &[(0, 1, 5), (1, 2, 3)]);
        assert_eq!(types(&h3), Some(vec![FiniteType::H3]));
        let h4 = sys_from_edges(4, &[(2, 3, 5), (1, 2, 3), (0, 1, 3)]);
        assert_eq!(types(&h4), Some(vec![FiniteType::H4]));
        assert_eq!(types(&h4).unwrap()[0].order(), 14_400);
    }

    #[test]
    fn affine_and_hyperbolic_rejected() {
        // Affine B3 tilde-C2 (4,4), affine A2 triangle, hyperbolic (5 in the middle).
        assert_eq!(types(&sys_from_edges(3, &[(0, 1, 4), (1, 2, 4)])), None);
        assert_eq!(types(&sys_from_edges(3, &[(0, 1, 3), (1, 2, 3), (0, 2, 3)])), None);
        assert_eq!(types(&sys_from_edges(4, &[(0, 1, 3), (1, 2, 5), (2, 3, 3)])), None);
        assert_eq!(types(&sys_from_edges(3, &[(0, 1, 6), (1, 2, 3)])), None);
        // Affine D4: four arms of length one.
        assert_eq!(types(&sys_from_edges(5, &[(0, 1, 3), (0, 2, 3), (0, 3, 3), (0, 4, 3)])), None);
        // Affine E6: arms 2,2,2.
        let e6t = sys_from_edges(7, &[(0, 1, 3), (1, 2, 3), (0, 3, 3), (3, 4, 3), (0, 5, 3), (5, 6, 3)]);
        assert_eq!(types(&e6t), None);
        assert_eq!(types(&sys_from_edges(2, &[(0, 1, 0)])), None);
    }

    #[test]
    fn reducible_subsets() {
        let sys = sys_from_edges(4, &[(0, 1, 5), (2, 3, 3)]);
        let t = types(&sys).unwrap();
        assert_eq!(t, vec![FiniteType::I2(5), FiniteType::A(2)]);
        assert_eq!(sys.parabolic_order(sys.all_generators()), Some(60));
    }

    fn random_system(n: usize) -> impl Strategy<Value = CoxeterSystem> {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(
            prop_oneof![Just(2u32), Just(2), Just(3), Just(3), Just(4), Just(5), Just(6), Just(0)],
            pairs,
        )
        .prop_map(move |labels| {
            let mut m = CoxeterMatrix::uniform(n, Order::Finite(2));
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    m.set(a, b, Order::from_code(labels[k]));
                    k += 1;
                }
            }
            CoxeterSystem::with_default_labels(m)
        })
    }

    proptest! {
        #[test]
        fn spherical_iff_gram_positive_definite(sys in (1usize..=4).prop_flat_map(random_system)) {
            for t in sys.all_generators().subsets().filter(|t| !t.is_empty()) {
                let g = sys.gram_matrix(t);
                let min = g.symmetric_eigen().eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
                prop_assert_eq!(sys.is_spherical(t), min > 1e-9, "T = {:?}, min eigenvalue {}", t, min);
            }
        }
    }
}
