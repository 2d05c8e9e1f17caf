use std::collections::BTreeSet;

use super::*;
use crate::cog::{
    from_gluing, symmetric3, CheckStatus, ComplexOfGroups, Decision, FreeWord, GroupAssignment, GroupMap, LocalGroup,
};
use crate::construction::{build_u, ChamberGraph, GluedComplex};
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, Order, Word};
use crate::mirrored::shapes;

fn names(n: &[&str]) -> Vec<String> {
    n.iter().map(|s| s.to_string()).collect()
}

fn free(n: &[&str]) -> LocalGroup {
    LocalGroup::free_abelian(names(n)).unwrap()
}

fn map(images: &[&str], target: &LocalGroup) -> GroupMap {
    GroupMap::parse(&names(images), target).unwrap()
}

fn centered(g: LocalGroup, center: &[&str]) -> LocalGroup {
    let c = center.iter().map(|s| g.parse(s).unwrap()).collect();
    g.with_center(c).unwrap()
}

fn double_u() -> GluedComplex {
    let sys = CoxeterSystem::new(CoxeterMatrix::from_codes(&[vec![1]]).unwrap(), names(&["s"])).unwrap();
    build_u(&sys, &shapes::collar(), None, 10).unwrap()
}

fn hexagon_u() -> GluedComplex {
    build_u(&CoxeterSystem::dihedral(Order::Finite(3)), &shapes::sector(), None, 100).unwrap()
}

/// Chambers `Z^3 = <a, b, x>` glued along `Z^2 = <a, b>`, both central.
fn double() -> (GluedComplex, ComplexOfGroups, ChamberGraph) {
    let u = double_u();
    let x = free(&["a", "b", "x"]);
    let mut a = GroupAssignment::default();
    a.maps.insert(("C".into(), "X".into()), map(&["a", "b"], &x));
    a.groups.insert("X".into(), x);
    a.groups.insert("C".into(), centered(free(&["a", "b"]), &["a", "b"]));
    let cog = from_gluing(&u, &a).unwrap();
    let g = ChamberGraph::build(&u).unwrap();
    (u, cog, g)
}

/// Pieces `Z^4 = <a1, u, a2, w>`; a `B1` wall keeps `<a1, u, w>` with
/// central loop `w`, a `B2` wall keeps `<a2, w, u>` with central loop `u`,
/// and the corner keeps `<u, w>`.
fn hexagon() -> (GluedComplex, ComplexOfGroups, ChamberGraph) {
    let u = hexagon_u();
    let x = free(&["a1", "u", "a2", "w"]);
    let b1 = free(&["a1", "u", "w"]);
    let b2 = free(&["a2", "w", "u"]);
    let c = free(&["u", "w"]);
    let mut a = GroupAssignment::default();
    a.maps.insert(("B1".into(), "X".into()), map(&["a1", "u", "w"], &x));
    a.maps.insert(("B2".into(), "X".into()), map(&["a2", "w", "u"], &x));
    a.maps.insert(("C".into(), "B1".into()), map(&["u", "w"], &b1));
    a.maps.insert(("C".into(), "B2".into()), map(&["u", "w"], &b2));
    a.maps.insert(("C".into(), "X".into()), map(&["u", "w"], &x));
    a.groups.insert("X".into(), x);
    a.groups.insert("B1".into(), centered(b1, &["w"]));
    a.groups.insert("B2".into(), centered(b2, &["u"]));
    a.groups.insert("C".into(), c);
    let cog = from_gluing(&u, &a).unwrap();
    let g = ChamberGraph::build(&u).unwrap();
    (u, cog, g)
}

fn identity_chamber(g: &ChamberGraph) -> usize {
    g.chambers().iter().position(Word::is_empty).unwrap()
}

#[test]
fn double_has_rank_two() {
    let (u, cog, g) = double();
    let r = twist_group_report(&u, &cog, &g).unwrap();
    assert!(r.tree && r.rank_exact);
    assert_eq!((r.rank_lower, r.rank_upper), (2, 2));
    assert_eq!(r.generators.len(), 4);
    assert!(r.generators.iter().all(|t| !t.trivial && t.homomorphism == CheckStatus::Pass));
    assert_eq!(r.generators[0].exponents, Some(vec![1, 0]));
    assert_eq!(r.relations.len(), 2);
    assert_eq!(r.relations[0].generators, [0, 1]);
    assert_eq!(r.commutation, CheckStatus::Pass);
    let s = r.summary();
    assert!(s.starts_with(BANNER));
    assert!(s.contains("A(M): finite, not computed"));
    assert!(r.to_json().contains("\"rank_upper\": 2"));
}

#[test]
fn opposite_twists_compose_to_global_conjugation() {
    let (u, cog, g) = double();
    let a = FreeWord::gen(0);
    let bs = all_blocks(&g, "C").unwrap();
    let t0 = twist_automorphism(&u, &cog, &bs[0], &a).unwrap();
    let t1 = twist_automorphism(&u, &cog, &bs[1], &a).unwrap();
    assert_eq!(t0.actions, [VertexAction::Conjugate, VertexAction::Identity, VertexAction::Boundary]);
    let full = Block { edge_type: "C".into(), side: 0, chambers: BTreeSet::from([0, 1]) };
    let whole = twist_automorphism(&u, &cog, &full, &a).unwrap();
    assert!(whole.inner && whole.is_homomorphism());
    assert_eq!(composite_agrees(&cog, &[&t0, &t1], &whole), Decision::Yes);
    assert_eq!(commute(&cog, &t0, &t1), Decision::Yes);
}

#[test]
fn identity_element_gives_identity_assignment() {
    let (u, cog, g) = double();
    let b = blocks(&g, "C", 0).unwrap();
    let t = twist_automorphism(&u, &cog, &b, &FreeWord::identity()).unwrap();
    assert!(t.identity && !t.inner);
    assert!(t.actions.iter().all(|&a| a == VertexAction::Identity));
    assert!(t.is_homomorphism());
}

#[test]
fn hexagon_block_and_homomorphism() {
    let (u, cog, g) = hexagon();
    let v = identity_chamber(&g);
    let b = blocks(&g, "B1", v).unwrap();
    let chambers: Vec<String> = b
        .chambers
        .iter()
        .map(|&i| crate::cog::vertex_name(&u, u.find(u.type_index("X").unwrap(), &g.chambers()[i]).unwrap()))
        .collect();
    assert_eq!(chambers, ["X:e", "X:t"]);
    let w = FreeWord::gen(2);
    let t = twist_automorphism(&u, &cog, &b, &w).unwrap();
    assert!(t.is_homomorphism(), "{:?}", t.homomorphism);
    assert!(!t.inner && b.is_proper(&g));
    assert_eq!(t.base_wall, "B1:e");
    let conj: Vec<&str> = (0..u.len())
        .filter(|&c| t.actions[c] == VertexAction::Conjugate)
        .map(|c| cog.scwol().vertices()[c].as_str())
        .collect();
    assert_eq!(conj, ["X:e", "X:t", "B2:e"]);
    assert!(t.homomorphism.checked > 0);
}

#[test]
fn hexagon_report_gives_bounds() {
    let (u, cog, g) = hexagon();
    let r = twist_group_report(&u, &cog, &g).unwrap();
    assert!(!r.tree && !r.rank_exact);
    assert_eq!((r.rank_lower, r.rank_upper), (1, 4));
    assert_eq!(r.generators.len(), 6);
    assert!(r.generators.iter().all(|t| t.homomorphism == CheckStatus::Pass));
    assert_eq!(r.relations.len(), 2);
    assert!(r.edge_types.iter().all(|e| e.blocks.len() == 3 && e.center_rank == 1));
    assert_eq!(r.commutation, CheckStatus::Pass);
}

#[test]
fn loop_that_does_not_transport_fails() {
    // The loop of a B1 wall maps to x, which no B2 wall group reaches.
    let u = hexagon_u();
    let x = free(&["x", "y"]);
    let mut a = GroupAssignment::default();
    a.maps.insert(("B1".into(), "X".into()), map(&["x"], &x));
    a.maps.insert(("B2".into(), "X".into()), map(&["y"], &x));
    a.groups.insert("X".into(), x);
    a.groups.insert("B1".into(), free(&["w"]));
    a.groups.insert("B2".into(), free(&["w"]));
    a.groups.insert("C".into(), LocalGroup::trivial());
    let cog = from_gluing(&u, &a).unwrap();
    let g = ChamberGraph::build(&u).unwrap();
    let b = blocks(&g, "B1", identity_chamber(&g)).unwrap();
    let t = twist_automorphism(&u, &cog, &b, &FreeWord::gen(0)).unwrap();
    assert_eq!(t.homomorphism.status, CheckStatus::Fail);
    assert!(!t.is_homomorphism());
}

#[test]
fn trivial_centers_give_rank_zero() {
    let u = hexagon_u();
    let mut a = GroupAssignment::default();
    for t in ["X", "B1", "B2", "C"] {
        a.groups.insert(t.into(), LocalGroup::trivial());
    }
    let cog = from_gluing(&u, &a).unwrap();
    let g = ChamberGraph::build(&u).unwrap();
    let r = twist_group_report(&u, &cog, &g).unwrap();
    assert_eq!((r.rank_lower, r.rank_upper), (0, 0));
    assert!(r.generators.is_empty() && r.relations.is_empty());
}

#[test]
fn non_central_element_is_rejected() {
    let u = double_u();
    let mut a = GroupAssignment::default();
    a.maps.insert(("C".into(), "X".into()), GroupMap::identity(2));
    a.groups.insert("X".into(), symmetric3());
    a.groups.insert("C".into(), symmetric3());
    let cog = from_gluing(&u, &a).unwrap();
    let g = ChamberGraph::build(&u).unwrap();
    let b = blocks(&g, "C", 0).unwrap();
    assert_eq!(twist_automorphism(&u, &cog, &b, &FreeWord::gen(0)).unwrap_err(), TwistError::NotCentral);
    // S3 has trivial center, so nothing is declared and the rank is zero.
    let r = twist_group_report(&u, &cog, &g).unwrap();
    assert_eq!(r.rank_upper, 0);
}

#[test]
fn invalid_inputs() {
    let (u, cog, g) = double();
    let bad = Block { edge_type: "C".into(), side: 0, chambers: BTreeSet::from([1]) };
    assert!(matches!(twist_automorphism(&u, &cog, &bad, &FreeWord::gen(0)), Err(TwistError::InvalidBlock(_))));
    let b = blocks(&g, "C", 0).unwrap();
    assert!(matches!(twist_automorphism(&u, &cog, &b, &FreeWord::gen(5)), Err(TwistError::InvalidBlock(_))));
    let (hu, _, _) = hexagon();
    assert_eq!(twist_automorphism(&hu, &cog, &b, &FreeWord::gen(0)).unwrap_err(), TwistError::NotFromGluing);
}

#[test]
fn integer_preimages() {
    use super::automorphism::solve_integer;
    assert_eq!(solve_integer(&[vec![2, 0], vec![0, 3]], &[4, -3]), Ok(Some(vec![2, -1])));
    assert_eq!(solve_integer(&[vec![2, 0]], &[3, 0]), Ok(None));
    assert_eq!(solve_integer(&[vec![1, 1], vec![1, -1]], &[3, 1]), Ok(Some(vec![2, 1])));
    assert_eq!(solve_integer(&[vec![1, 1], vec![1, -1]], &[1, 0]), Ok(None));
}
