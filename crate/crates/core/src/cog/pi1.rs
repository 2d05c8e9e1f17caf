use super::complex::ComplexOfGroups;
use super::presentation::Presentation;
use super::word::FreeWord;
use super::CogError;

/// The fundamental group of a complex of groups relative to a spanning tree.
///
/// Generators are `v{vertex}_g{index}` for the local group generators,
/// followed by `e{edge}` for every edge. Relators, in order:
/// the local group relators; `a^-1 h a psi_a(h)^-1` for each edge `a` and
/// generator `h` of `G_{i(a)}`; `c^-1 b a g_{a,b}` for each composable pair
/// with composite `c = ab`; and `a` for each tree edge.
pub fn pi1_presentation(cog: &ComplexOfGroups, tree: &[usize]) -> Result<Presentation, CogError> {
    let s = cog.scwol();
    s.check_spanning_tree(tree)?;
    let mut names = Vec::new();
    let mut offset = Vec::with_capacity(s.vertex_count());
    for v in 0..s.vertex_count() {
        offset.push(names.len());
        for i in 0..cog.group(v).generator_count() {
            names.push(format!("v{v}_g{i}"));
        }
    }
    let edge_base = names.len();
    for a in 0..s.edge_count() {
        names.push(format!("e{a}"));
    }
    let lift = |v: usize, w: &FreeWord| w.map_generators(|g| offset[v] + g);
    let edge = |a: usize| FreeWord::gen(edge_base + a);

    let mut relators = Vec::new();
    for v in 0..s.vertex_count() {
        relators.extend(cog.group(v).relators().iter().map(|r| lift(v, r)));
    }
    for a in 0..s.edge_count() {
        let e = s.edge(a);
        for h in 0..cog.group(e.source).generator_count() {
            let h_word = lift(e.source, &FreeWord::gen(h));
            let image = lift(e.target, &cog.map(a).apply(&FreeWord::gen(h)));
            relators.push(h_word.conjugate_by(&edge(a)).mul(&image.inverse()));
        }
    }
    for (a, b) in s.composable_pairs() {
        let c = s.compose(a, b);
        let g = lift(s.edge(a).target, &cog.twist(a, b));
        relators.push(edge(c).inverse().mul(&edge(b)).mul(&edge(a)).mul(&g));
    }
    let mut tree: Vec<usize> = tree.to_vec();
    tree.sort_unstable();
    relators.extend(tree.iter().map(|&a| edge(a)));
    Presentation::new(names, relators)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::cog::abelian::abelianization;
    use crate::cog::group::{cyclic, LocalGroup};
    use crate::cog::hom::GroupMap;
    use crate::cog::scwol::{Scwol, ScwolEdge};
    use crate::cog::tietze::tietze_simplify;

    fn names(n: &[&str]) -> Vec<String> {
        n.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_vertex_gives_the_local_group() {
        let s = Scwol::new(names(&["v"]), vec![], BTreeMap::new()).unwrap();
        let cog = ComplexOfGroups::simple(s, vec![cyclic("c", 3)], vec![]).unwrap();
        let p = pi1_presentation(&cog, &[]).unwrap();
        assert_eq!(p.generators(), ["v0_g0"]);
        assert_eq!(abelianization(&p).unwrap().to_string(), "Z/3");
    }

    #[test]
    fn circle_has_infinite_cyclic_fundamental_group() {
        let e = ScwolEdge { source: 0, target: 1 };
        let s = Scwol::new(names(&["p", "q"]), vec![e, e], BTreeMap::new()).unwrap();
        let cog = ComplexOfGroups::simple(
            s,
            vec![LocalGroup::trivial(), LocalGroup::trivial()],
            vec![GroupMap::trivial(0); 2],
        )
        .unwrap();
        let p = tietze_simplify(&pi1_presentation(&cog, &[0]).unwrap(), 100);
        assert_eq!(p.to_text(), "generators: e1\n");
    }

    #[test]
    fn tree_is_checked() {
        let e = ScwolEdge { source: 0, target: 1 };
        let s = Scwol::new(names(&["p", "q"]), vec![e, e], BTreeMap::new()).unwrap();
        let cog = ComplexOfGroups::simple(
            s,
            vec![LocalGroup::trivial(), LocalGroup::trivial()],
            vec![GroupMap::trivial(0); 2],
        )
        .unwrap();
        assert!(matches!(pi1_presentation(&cog, &[0, 1]), Err(CogError::NotSpanningTree(_))));
        assert!(matches!(pi1_presentation(&cog, &[]), Err(CogError::NotSpanningTree(_))));
    }
}
