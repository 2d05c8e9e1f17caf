use super::*;
use crate::coxeter::{CoxeterMatrix, Order, DEFAULT_BALL_CAP};
use crate::mirrored::shapes;
use proptest::prelude::*;

fn dihedral(m: Order) -> CoxeterSystem {
    CoxeterSystem::dihedral(m)
}

fn z2() -> CoxeterSystem {
    CoxeterSystem::new(CoxeterMatrix::from_codes(&[vec![1]]).unwrap(), vec!["s".into()]).unwrap()
}

fn counts_by_type(u: &GluedComplex) -> Vec<(String, usize)> {
    (0..u.types().len()).map(|t| (u.types()[t].id.clone(), u.count_of_type(t))).collect()
}

#[test]
fn double_has_two_chambers() {
    let u = build_u(&z2(), &shapes::square_one_mirror(), None, 100).unwrap();
    assert_eq!(u.chamber_cells().count(), 2);
    assert_eq!(u.f_vector(), vec![6, 7, 2]);
    assert_eq!(u.euler_characteristic().unwrap(), 1);
    let g = ChamberGraph::build(&u).unwrap();
    assert_eq!((g.node_count(), g.edge_count()), (2, 1));
}

#[test]
fn d3_hexagon() {
    let sys = dihedral(Order::Finite(3));
    let u = build_u(&sys, &shapes::square_adjacent_mirrors(), None, 100).unwrap();
    assert_eq!(u.chamber_cells().count(), 6);
    let v0 = u.type_index("v0").unwrap();
    assert_eq!(u.count_of_type(v0), 1);
    assert_eq!(u.f_vector(), vec![13, 18, 6]);
    assert_eq!(u.euler_characteristic().unwrap(), 1);

    let g = ChamberGraph::build(&u).unwrap();
    assert_eq!((g.node_count(), g.edge_count()), (6, 6));
    assert!((0..6).all(|n| g.degree(n) == 2));
    assert!(g.is_connected());
    // Around each chamber the two walls have different types.
    for n in 0..6 {
        let types: Vec<String> = g.edges().into_iter().filter(|e| e.a == n || e.b == n).map(|e| e.ty).collect();
        assert_eq!(types.len(), 2);
        assert_ne!(types[0], types[1]);
    }
    let dot = g.to_dot(|w| sys.format_word(w));
    assert!(dot.contains("type=\"e0\""));
    assert!(dot.contains("type=\"e3\""));
}

#[test]
fn infinite_dihedral_line() {
    let sys = dihedral(Order::Infinite);
    let u = build_u(&sys, &shapes::interval(true, true), Some(3), 100).unwrap();
    assert_eq!(u.chamber_cells().count(), 7);
    assert!(!u.is_full());
    assert!(matches!(u.euler_characteristic(), Err(ConstructionError::Truncated(3))));
    let g = ChamberGraph::build(&u).unwrap();
    assert_eq!((g.node_count(), g.edge_count()), (7, 6));
    let ends: Vec<usize> = (0..7).filter(|&n| g.degree(n) == 1).collect();
    assert_eq!(ends.len(), 2);
    // Walking the path, wall types alternate.
    let mut prev = ends[0];
    let mut cur = g.neighbours(prev)[0];
    let mut last_ty = g.edges().into_iter().find(|e| (e.a, e.b) == (prev.min(cur), prev.max(cur))).unwrap().ty;
    while g.degree(cur) == 2 {
        let next = g.neighbours(cur).into_iter().find(|&n| n != prev).unwrap();
        let ty = g.edges().into_iter().find(|e| (e.a, e.b) == (cur.min(next), cur.max(next))).unwrap().ty;
        assert_ne!(ty, last_ty);
        last_ty = ty;
        prev = cur;
        cur = next;
    }
    // Only the two end chambers have a neighbour outside the ball.
    let incomplete: Vec<usize> = u.chamber_cells().filter(|&c| !u.cell(c).complete).collect();
    assert_eq!(incomplete.len(), 2);
}

#[test]
fn point_doubling() {
    let mx = crate::mirrored::MirroredComplex::trivial(shapes::point(), vec!["s".into()]).unwrap();
    let u = build_u(&z2(), &mx, None, 100).unwrap();
    assert_eq!(u.euler_characteristic().unwrap(), 2);
}

#[test]
fn build_u_rejects_bad_input() {
    let err = build_u(&dihedral(Order::Infinite), &shapes::square_adjacent_mirrors(), Some(2), 100).unwrap_err();
    assert!(matches!(err, ConstructionError::NotWFinite { .. }));
    let c = crate::mirrored::StratifiedComplex::from_ids(
        vec![
            crate::mirrored::Stratum::new("X", 2, 0),
            crate::mirrored::Stratum::new("e", 1, 1),
            crate::mirrored::Stratum::new("v", 0, 2),
        ],
        &[("e".into(), "X".into()), ("v".into(), "e".into())],
    )
    .unwrap();
    let mx = crate::mirrored::MirroredComplex::natural(c).unwrap();
    let sys = CoxeterSystem::new(CoxeterMatrix::from_codes(&[vec![1]]).unwrap(), vec!["e".into()]).unwrap();
    assert!(matches!(build_u(&sys, &mx, None, 100), Err(ConstructionError::NotNice(_))));
    assert!(matches!(build_u(&z2(), &mx, None, 100), Err(ConstructionError::Mirrored(_))));
    let tri = CoxeterSystem::with_default_labels(CoxeterMatrix::uniform(3, Order::Finite(3)));
    let mx = shapes::cube_corner_mirrors(3);
    let tri = CoxeterSystem::new(tri.matrix().clone(), mx.labels().to_vec()).unwrap();
    // Every pair commutes up to order 3, but the corner carries all three.
    assert!(matches!(build_u(&tri, &mx, Some(2), 1000), Err(ConstructionError::NotWFinite { .. })));
}

#[test]
fn davis_examples() {
    let s = davis_complex(&z2(), None, 100).unwrap();
    assert_eq!(s.f_vector(), vec![2, 1]);

    let d3 = dihedral(Order::Finite(3));
    let s = davis_complex(&d3, None, 100).unwrap();
    assert_eq!(s.f_vector(), vec![6, 6, 1]);
    let top = s.type_index("{s,t}").unwrap();
    let two_cell = s.cells_of_type(top).next().unwrap();
    assert_eq!(s.faces_of(two_cell).filter(|&f| s.cell(f).dim == 0).count(), 6);
    let report = verify_sigma_properties(&s, &d3).unwrap();
    assert!(report.passed(), "{report:?}");

    let tri = CoxeterSystem::with_default_labels(CoxeterMatrix::uniform(3, Order::Finite(3)));
    let s = davis_complex(&tri, Some(2), 100).unwrap();
    assert_eq!(s.f_vector()[0], 10);
    let report = verify_sigma_properties(&s, &tri).unwrap();
    assert!(report.passed(), "{report:?}");
}

#[test]
fn davis_radius_three_interior_links() {
    let tri = CoxeterSystem::with_default_labels(CoxeterMatrix::uniform(3, Order::Finite(3)));
    let s = davis_complex(&tri, Some(3), 1000).unwrap();
    let report = verify_sigma_properties(&s, &tri).unwrap();
    let links = report.check("vertex_links").unwrap();
    assert!(links.passed);
    assert!(links.checked >= 1);
    assert!(report.passed(), "{report:?}");
}

#[test]
fn corrupted_sigma_fails_link_check() {
    let d3 = dihedral(Order::Finite(3));
    let s = davis_complex(&d3, None, 100).unwrap();
    let edge_ty = s.type_index("{s}").unwrap();
    let victim = s.cells_of_type(edge_ty).next().unwrap();
    let endpoints: Vec<String> = s.faces_of(victim).map(|f| d3.format_word(&s.cell(f).rep)).collect();
    let broken = s.remove_cell(victim);
    let report = verify_sigma_properties(&broken, &d3).unwrap();
    let links = report.check("vertex_links").unwrap();
    assert!(!links.passed);
    assert!(links.witnesses.iter().any(|w| endpoints.contains(w)), "{links:?}");
}

#[test]
fn quotient_examples() {
    // Regular representation of D3: the quotient is U itself.
    let d3 = dihedral(Order::Finite(3));
    let u = build_u(&d3, &shapes::square_adjacent_mirrors(), None, 100).unwrap();
    let reg = PermutationAction::regular(&d3, 100).unwrap();
    let (q, report) = quotient_complex(&u, &d3, &reg).unwrap();
    assert_eq!(counts_by_type(&q), counts_by_type(&u));
    assert_eq!(q.faces().len(), u.faces().len());
    assert_eq!(report.group_order, 6);
    assert!(report.free_on_cells);
    assert_eq!(report.torsion_freeness, "unchecked");

    // Infinite dihedral onto Z/2 x Z/2.
    let dinf = dihedral(Order::Infinite);
    let u = build_u(&dinf, &shapes::interval(true, true), Some(3), 100).unwrap();
    let ab = PermutationAction::new(&dinf, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
    let (q, report) = quotient_complex(&u, &dinf, &ab).unwrap();
    assert_eq!(report.chambers, 4);
    let g = ChamberGraph::build(&q).unwrap();
    assert_eq!((g.node_count(), g.edge_count()), (4, 4));
    assert!((0..4).all(|n| g.degree(n) == 2));
    assert!(g.is_connected());
    assert_eq!(q.euler_characteristic().unwrap(), 0);

    let short = build_u(&dinf, &shapes::interval(true, true), Some(1), 100).unwrap();
    assert!(matches!(quotient_complex(&short, &dinf, &ab), Err(ConstructionError::InsufficientRadius { .. })));

    // Two non-commuting transpositions violate (st)^2 = 1.
    let d2 = dihedral(Order::Finite(2));
    let err = PermutationAction::new(&d2, vec![vec![1, 0, 2], vec![0, 2, 1]]).unwrap_err();
    assert!(matches!(err, ConstructionError::NotAnAction(_)));
}

#[test]
fn orbifold_euler_characteristic_matches() {
    let d3 = dihedral(Order::Finite(3));
    let mx = shapes::square_adjacent_mirrors();
    let chi = orbifold_euler_characteristic(&d3, &mx).unwrap();
    let u = build_u(&d3, &mx, None, 100).unwrap();
    assert_eq!(Ratio::from_integer(u.euler_characteristic().unwrap() as i128), chi * 6);

    let dinf = dihedral(Order::Infinite);
    let chi = orbifold_euler_characteristic(&dinf, &shapes::interval(true, true)).unwrap();
    assert_eq!(chi, Ratio::from_integer(0));
}

#[test]
fn json_round_trip() {
    let d3 = dihedral(Order::Finite(3));
    for c in
        [build_u(&d3, &shapes::square_adjacent_mirrors(), None, 100).unwrap(), davis_complex(&d3, None, 100).unwrap()]
    {
        let back = GluedComplexJson::parse(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }
    assert!(GluedComplexJson::parse("{}").is_err());
}

fn finite_systems() -> Vec<CoxeterSystem> {
    vec![
        dihedral(Order::Finite(3)),
        dihedral(Order::Finite(4)),
        dihedral(Order::Finite(2)),
        CoxeterSystem::new(CoxeterMatrix::linear(&[3, 3]), vec!["s0".into(), "s1".into(), "s2".into()]).unwrap(),
        CoxeterSystem::new(CoxeterMatrix::linear(&[4, 3]), vec!["s0".into(), "s1".into(), "s2".into()]).unwrap(),
    ]
}

fn mirrored_for(sys: &CoxeterSystem) -> Vec<crate::mirrored::MirroredComplex> {
    let labels = sys.labels().to_vec();
    let mut out = Vec::new();
    let cube = shapes::cube(sys.rank());
    let corner = shapes::cube_corner_mirrors(sys.rank());
    out.push(
        crate::mirrored::MirroredComplex::new(
            corner.complex().clone(),
            labels.clone(),
            (0..sys.rank()).map(|s| corner.mirror(s).to_vec()).collect(),
        )
        .unwrap(),
    );
    out.push(crate::mirrored::MirroredComplex::trivial(cube, labels).unwrap());
    out
}

#[test]
fn cell_counts_match_coset_counts() {
    for sys in finite_systems() {
        let order = sys.parabolic_order(sys.all_generators()).unwrap() as usize;
        for mx in mirrored_for(&sys) {
            let u = build_u(&sys, &mx, None, DEFAULT_BALL_CAP).unwrap();
            for (ty, t) in u.types().iter().enumerate() {
                let sub = sys.parabolic_order(t.mirror_set).unwrap() as usize;
                assert_eq!(u.count_of_type(ty), order / sub, "{} over {}", t.id, sys.labels().join(""));
            }
        }
    }
}

#[test]
fn trivial_mirrors_give_disjoint_copies() {
    for sys in finite_systems() {
        let order = sys.parabolic_order(sys.all_generators()).unwrap() as i64;
        let mx = crate::mirrored::MirroredComplex::trivial(shapes::cube(2), sys.labels().to_vec()).unwrap();
        let u = build_u(&sys, &mx, None, DEFAULT_BALL_CAP).unwrap();
        assert_eq!(u.len() as i64, order * 9);
        assert_eq!(u.euler_characteristic().unwrap(), order);
        assert_eq!(ChamberGraph::build(&u).unwrap().edge_count(), 0);
    }
}

#[test]
fn chamber_graph_is_vertex_transitive() {
    for sys in finite_systems() {
        let mx = &mirrored_for(&sys)[0];
        let u = build_u(&sys, mx, None, DEFAULT_BALL_CAP).unwrap();
        let g = ChamberGraph::build(&u).unwrap();
        let chambers = g.chambers().to_vec();
        let pos: HashMap<&Word, usize> = chambers.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let edges: std::collections::BTreeSet<(usize, usize, String)> =
            g.edges().into_iter().map(|e| (e.a, e.b, e.ty)).collect();
        // Left multiplication by each element is a type-preserving
        // automorphism, and the orbit of the identity chamber is everything.
        let mut orbit = std::collections::BTreeSet::new();
        for h in &chambers {
            let img: Vec<usize> = chambers.iter().map(|w| pos[&sys.multiply(h, w).unwrap()]).collect();
            orbit.insert(img[pos[&Word::identity()]]);
            for (a, b, ty) in &edges {
                let (x, y) = (img[*a].min(img[*b]), img[*a].max(img[*b]));
                assert!(edges.contains(&(x, y, ty.clone())));
            }
        }
        assert_eq!(orbit.len(), chambers.len());
    }
}

#[test]
fn doubling_formula_on_corpus() {
    let complexes = vec![shapes::square(), shapes::cube(2), shapes::cube(3), shapes::interval_complex()];
    for x in complexes {
        for m in x.of_codim(1).collect::<Vec<_>>() {
            let mx = crate::mirrored::MirroredComplex::new(x.clone(), vec!["s".into()], vec![vec![m]]).unwrap();
            let u = build_u(&z2(), &mx, None, 10).unwrap();
            let closure = x.closure_of(&[m]);
            let chi_m: i64 = closure.iter().map(|&i| if x.dim(i) % 2 == 0 { 1 } else { -1 }).sum();
            assert_eq!(u.euler_characteristic().unwrap(), 2 * x.euler_characteristic() - chi_m);
        }
    }
}

#[test]
fn quotient_chi_matches_orbifold_chi() {
    // D4 on the square, quotient by the trivial kernel of the regular action.
    let sys = dihedral(Order::Finite(4));
    let mx = shapes::square_adjacent_mirrors();
    let u = build_u(&sys, &mx, None, 100).unwrap();
    let chi = orbifold_euler_characteristic(&sys, &mx).unwrap();
    let reg = PermutationAction::regular(&sys, 100).unwrap();
    let (q, rep) = quotient_complex(&u, &sys, &reg).unwrap();
    assert!(rep.free_on_cells);
    assert_eq!(Ratio::from_integer(q.euler_characteristic().unwrap() as i128), chi * rep.group_order as i128);
}

proptest! {
    #[test]
    fn ball_cell_counts(r in 0usize..4) {
        // In the infinite dihedral group every interval cell count is
        // bounded by the ball, with equality for chambers.
        let sys = dihedral(Order::Infinite);
        let u = build_u(&sys, &shapes::interval(true, true), Some(r), 100).unwrap();
        prop_assert_eq!(u.chamber_cells().count(), 2 * r + 1);
        for (ty, t) in u.types().iter().enumerate() {
            prop_assert!(u.count_of_type(ty) <= 2 * r + 1, "{}", t.id);
        }
    }

    #[test]
    fn quotient_of_free_action_scales_orbifold_chi(m in 2u32..7) {
        let sys = dihedral(Order::Finite(m));
        let mx = shapes::square_adjacent_mirrors();
        let u = build_u(&sys, &mx, None, 100).unwrap();
        let chi = orbifold_euler_characteristic(&sys, &mx).unwrap();
        prop_assert_eq!(Ratio::from_integer(u.euler_characteristic().unwrap() as i128), chi * (2 * m as i128));
    }
}
