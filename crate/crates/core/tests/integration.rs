mod common;

use std::fs;

use proptest::prelude::*;

use common::{abelian_invariants, evaluate, fixture, fixture_path};
use gluing_core::cog::{
    abelianization, from_gluing, pi1_presentation, relation_matrix, tietze_simplify, FreeWord, Presentation,
};
use gluing_core::construction::{build_u, ChamberGraph};
use gluing_core::coxeter::{CoxeterMatrix, CoxeterSystem, Order, Word};
use gluing_core::mirrored::{shapes, MirroredComplex};
use gluing_core::project;

#[test]
fn every_fixture_loads() {
    let mut count = 0;
    for entry in fs::read_dir(fixture_path("")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "json") {
            project::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            count += 1;
        }
    }
    assert!(count >= 8);
}

#[test]
fn hexagon_chamber_graph_is_the_cayley_graph() {
    let hex = fixture("hexagon.json");
    let u = build_u(&hex.system, hex.mirrored().unwrap(), None, 100).unwrap();
    let g = ChamberGraph::build(&u).unwrap();
    assert_eq!(g.node_count(), 6);
    assert_eq!(g.edge_count(), 6);
    assert!(g.is_connected());
}

#[test]
fn double_fundamental_group_abelianizes_to_free_rank_four() {
    let double = fixture("double.json");
    let u = build_u(&double.system, double.mirrored().unwrap(), None, 10).unwrap();
    let cog = from_gluing(&u, double.assignment().unwrap()).unwrap();
    let tree = cog.scwol().default_spanning_tree().unwrap();
    let ab = abelianization(&pi1_presentation(&cog, &tree).unwrap()).unwrap();
    assert_eq!((ab.free_rank, ab.torsion.len()), (4, 0));
}

fn chi(mx: &MirroredComplex, strata: &[usize]) -> i64 {
    let c = mx.complex();
    c.closure_of(strata).iter().map(|&x| if c.dim(x).is_multiple_of(2) { 1 } else { -1 }).sum()
}

fn presentation_from(gens: usize, relators: &[Vec<(usize, i64)>]) -> Presentation {
    let names = (0..gens).map(|i| format!("g{i}")).collect();
    Presentation::new(names, relators.iter().map(|r| FreeWord::from_powers(r)).collect()).unwrap()
}

fn relators(gens: usize) -> impl Strategy<Value = Vec<Vec<(usize, i64)>>> {
    prop::collection::vec(prop::collection::vec((0..gens, -4i64..=4), 1..5), 0..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dihedral_word_problem_matches_affine_model(
        m in 2u32..10,
        u in prop::collection::vec(0usize..2, 0..12),
        v in prop::collection::vec(0usize..2, 0..12),
    ) {
        let sys = CoxeterSystem::dihedral(Order::Finite(m));
        let gens = common::dihedral_generators(m as i64);
        let ours = sys.equal(&Word::new(u.clone()), &Word::new(v.clone())).unwrap();
        prop_assert_eq!(ours, evaluate(&gens, &u) == evaluate(&gens, &v));
    }

    #[test]
    fn b4_word_problem_matches_signed_permutations(
        u in prop::collection::vec(0usize..4, 0..10),
        v in prop::collection::vec(0usize..4, 0..10),
    ) {
        let sys = CoxeterSystem::with_default_labels(CoxeterMatrix::linear(&[3, 3, 4]));
        let gens = common::type_b_generators(4);
        let ours = sys.equal(&Word::new(u.clone()), &Word::new(v.clone())).unwrap();
        prop_assert_eq!(ours, evaluate(&gens, &u) == evaluate(&gens, &v));
    }

    #[test]
    fn abelianization_matches_determinantal_divisors(gens in 1usize..4, rels in relators(3)) {
        let rels: Vec<_> = rels.into_iter().map(|r| r.into_iter().map(|(g, e)| (g % gens, e)).collect()).collect();
        let p = presentation_from(gens, &rels);
        let ab = abelianization(&p).unwrap();
        let (rank, torsion) = abelian_invariants(&relation_matrix(&p), gens);
        prop_assert_eq!(ab.free_rank, rank);
        prop_assert_eq!(ab.torsion, torsion);
    }

    #[test]
    fn tietze_keeps_the_abelianization(gens in 1usize..4, rels in relators(3)) {
        let rels: Vec<_> = rels.into_iter().map(|r| r.into_iter().map(|(g, e)| (g % gens, e)).collect()).collect();
        let p = presentation_from(gens, &rels);
        let s = tietze_simplify(&p, 1000);
        prop_assert!(s.generator_count() <= p.generator_count());
        prop_assert_eq!(abelianization(&p).unwrap(), abelianization(&s).unwrap());
    }

    #[test]
    fn presentation_text_round_trips(gens in 1usize..4, rels in relators(3)) {
        let rels: Vec<_> = rels.into_iter().map(|r| r.into_iter().map(|(g, e)| (g % gens, e)).collect()).collect();
        let p = presentation_from(gens, &rels);
        let q = Presentation::parse_text(&p.to_text()).unwrap();
        prop_assert_eq!(q.generators(), p.generators());
        prop_assert_eq!(relation_matrix(&q), relation_matrix(&p));
    }

    #[test]
    fn doubles_of_the_cube_obey_the_euler_formula(mask in 1u32..64) {
        let a1 = CoxeterSystem::new(CoxeterMatrix::from_codes(&[vec![1]]).unwrap(), vec!["s".into()]).unwrap();
        let faces = ["0**", "1**", "*0*", "*1*", "**0", "**1"];
        let ids: Vec<String> = faces.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, f)| f.to_string()).collect();
        let mx = MirroredComplex::from_ids(shapes::cube(3), &[("s".into(), ids)]).unwrap();
        let u = build_u(&a1, &mx, None, 10).unwrap();
        let all: Vec<usize> = (0..mx.complex().len()).collect();
        prop_assert_eq!(u.euler_characteristic().unwrap(), 2 * chi(&mx, &all) - chi(&mx, mx.mirror(0)));
    }
}
