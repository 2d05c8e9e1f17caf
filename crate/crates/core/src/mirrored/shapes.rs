//! Small stratified complexes used as chambers in examples and tests.

use super::{MirroredComplex, StratifiedComplex, Stratum};

fn build(strata: Vec<Stratum>, faces: &[(&str, &str)]) -> StratifiedComplex {
    let faces: Vec<(String, String)> = faces.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect();
    StratifiedComplex::from_ids(strata, &faces).expect("built-in shape is valid")
}

fn mirrored(complex: StratifiedComplex, mirrors: &[(&str, &[&str])]) -> MirroredComplex {
    let m: Vec<(String, Vec<String>)> =
        mirrors.iter().map(|(l, ids)| (l.to_string(), ids.iter().map(|s| s.to_string()).collect())).collect();
    MirroredComplex::from_ids(complex, &m).expect("built-in mirror structure is valid")
}

/// A single point.
pub fn point() -> StratifiedComplex {
    build(vec![Stratum::new("X", 0, 0)], &[])
}

/// The interval `[p0, p1]`.
pub fn interval_complex() -> StratifiedComplex {
    build(
        vec![Stratum::new("X", 1, 0), Stratum::new("p0", 0, 1), Stratum::new("p1", 0, 1)],
        &[("p0", "X"), ("p1", "X")],
    )
}

/// The interval with mirror `s` at `p0` and `t` at `p1`, each only if
/// requested. Generators are always `s, t`.
pub fn interval(left: bool, right: bool) -> MirroredComplex {
    let l: &[&str] = if left { &["p0"] } else { &[] };
    let r: &[&str] = if right { &["p1"] } else { &[] };
    mirrored(interval_complex(), &[("s", l), ("t", r)])
}

/// A chamber `X` with a single boundary stratum `C`, the mirror `s`. Its
/// double is two chambers glued along `C`.
pub fn collar() -> MirroredComplex {
    let c = build(vec![Stratum::new("X", 1, 0), Stratum::new("C", 0, 1)], &[("C", "X")]);
    mirrored(c, &[("s", &["C"])])
}

/// The square as a cell complex: face `F`, edges `e0..e3` (bottom, right,
/// top, left) and vertices `v0..v3`, where `v_i` is the corner shared by
/// `e_{i-1}` and `e_i`.
pub fn square() -> StratifiedComplex {
    let mut strata = vec![Stratum::new("F", 2, 0)];
    strata.extend((0..4).map(|i| Stratum::new(format!("e{i}"), 1, 1)));
    strata.extend((0..4).map(|i| Stratum::new(format!("v{i}"), 0, 2)));
    let mut faces = Vec::new();
    for i in 0..4 {
        faces.push((format!("e{i}"), "F".to_string()));
        faces.push((format!("v{i}"), format!("e{i}")));
        faces.push((format!("v{i}"), format!("e{}", (i + 3) % 4)));
    }
    StratifiedComplex::from_ids(strata, &faces).expect("square is valid")
}

/// The square with mirrors `s = e0` and `t = e3` meeting at the corner `v0`.
pub fn square_adjacent_mirrors() -> MirroredComplex {
    mirrored(square(), &[("s", &["e0"]), ("t", &["e3"])])
}

/// The square with disjoint mirrors `s = e0` and `t = e2`.
pub fn square_opposite_mirrors() -> MirroredComplex {
    mirrored(square(), &[("s", &["e0"]), ("t", &["e2"])])
}

/// The square with the single mirror `s = e0`.
pub fn square_one_mirror() -> MirroredComplex {
    mirrored(square(), &[("s", &["e0"])])
}

/// The cube `[0,1]^d` with its faces as strata. A face is written as a string
/// over `0`, `1`, `*`, with `*` marking the free coordinates.
pub fn cube(d: usize) -> StratifiedComplex {
    let count = 3usize.pow(d as u32);
    let code = |mut k: usize| -> Vec<u8> {
        (0..d)
            .map(|_| {
                let c = b"01*"[k % 3];
                k /= 3;
                c
            })
            .collect()
    };
    let codes: Vec<Vec<u8>> = (0..count).map(code).collect();
    // Faces sorted by codimension so the chamber comes first.
    let mut order: Vec<usize> = (0..count).collect();
    order.sort_by_key(|&k| (codes[k].iter().filter(|&&c| c != b'*').count(), k));
    let strata: Vec<Stratum> = order
        .iter()
        .map(|&k| {
            let codim = codes[k].iter().filter(|&&c| c != b'*').count();
            Stratum::new(String::from_utf8(codes[k].clone()).unwrap(), d - codim, codim)
        })
        .collect();
    let mut faces = Vec::new();
    for (i, &a) in order.iter().enumerate() {
        for (j, &b) in order.iter().enumerate() {
            // a is a facet of b when it fixes exactly one more coordinate.
            let fixed = codes[a].iter().zip(&codes[b]).filter(|&(x, y)| x != y).count();
            let refines = codes[a].iter().zip(&codes[b]).all(|(x, y)| x == y || *y == b'*');
            if fixed == 1 && refines {
                faces.push((i, j));
            }
        }
    }
    StratifiedComplex::new(strata, faces).expect("cube is valid")
}

/// The cube `[0,1]^d` with mirrors `s_i = {x_i = 0}`, all meeting at the
/// origin.
pub fn cube_corner_mirrors(d: usize) -> MirroredComplex {
    let c = cube(d);
    let labels = (0..d).map(|i| format!("s{i}")).collect();
    let mirrors = (0..d)
        .map(|i| {
            let id: String = (0..d).map(|j| if i == j { '0' } else { '*' }).collect();
            vec![c.index_of(&id).unwrap()]
        })
        .collect();
    MirroredComplex::new(c, labels, mirrors).expect("cube mirrors are valid")
}

/// A two-dimensional sector: chamber `X`, boundary walls `B1`, `B2` and
/// their corner `C`, with mirrors `s = B1` and `t = B2`. This is the
/// smallest chamber whose `D_3` basic construction is a hexagon.
pub fn sector() -> MirroredComplex {
    let c = build(
        vec![Stratum::new("X", 2, 0), Stratum::new("B1", 1, 1), Stratum::new("B2", 1, 1), Stratum::new("C", 0, 2)],
        &[("B1", "X"), ("B2", "X"), ("C", "B1"), ("C", "B2")],
    );
    mirrored(c, &[("s", &["B1"]), ("t", &["B2"])])
}
