use std::collections::HashSet;

use super::presentation::Presentation;
use super::word::FreeWord;

#[derive(Clone, Debug)]
pub struct TietzeOptions {
    /// Maximum number of generator eliminations.
    pub budget: usize,
    /// Generators that must survive.
    pub keep: Vec<String>,
    /// An elimination is skipped if it would push the total relator length
    /// past this bound.
    pub max_total_length: usize,
}

impl Default for TietzeOptions {
    fn default() -> Self {
        TietzeOptions { budget: 10_000, keep: Vec::new(), max_total_length: 1_000_000 }
    }
}

#[derive(Clone, Debug)]
pub struct Simplification {
    pub presentation: Presentation,
    /// Image of each original generator as a word in the new generators.
    pub images: Vec<FreeWord>,
    pub eliminations: usize,
}

pub fn tietze_simplify(p: &Presentation, budget: usize) -> Presentation {
    tietze_simplify_with(p, &TietzeOptions { budget, ..TietzeOptions::default() }).presentation
}

/// Canonical key of a cyclic word up to rotation and inversion.
fn cyclic_key(r: &FreeWord) -> FreeWord {
    let inv = r.inverse();
    r.rotations().chain(inv.rotations()).min().unwrap_or_default()
}

fn normalise(rels: Vec<FreeWord>) -> Vec<FreeWord> {
    let mut seen = HashSet::new();
    rels.into_iter().map(|r| r.cyclic_reduce()).filter(|r| !r.is_empty() && seen.insert(cyclic_key(r))).collect()
}

/// Eliminates generators that occur exactly once in some relator, later
/// generators first, and drops trivial and duplicate relators. The result
/// presents an isomorphic group.
pub fn tietze_simplify_with(p: &Presentation, opts: &TietzeOptions) -> Simplification {
    let n = p.generator_count();
    let keep: Vec<bool> = p.generators().iter().map(|g| opts.keep.contains(g)).collect();
    let mut alive = vec![true; n];
    let mut images: Vec<FreeWord> = (0..n).map(FreeWord::gen).collect();
    let mut rels = normalise(p.relators().to_vec());
    let mut eliminations = 0;

    while eliminations < opts.budget {
        let total: usize = rels.iter().map(FreeWord::len).sum();
        let mut order: Vec<usize> = (0..rels.len()).collect();
        order.sort_by_key(|&i| (rels[i].len(), i));
        let pick = order.iter().find_map(|&ri| {
            let r = &rels[ri];
            let x = (0..n).rev().find(|&g| alive[g] && !keep[g] && r.occurrences(g) == 1)?;
            let growth = rels.iter().map(|s| s.occurrences(x)).sum::<usize>() * r.len();
            (total + growth <= opts.max_total_length).then_some((ri, x))
        });
        let Some((ri, x)) = pick else { break };

        // Rotate so that x is the last letter: r ~ w x^e, hence x = w^-e.
        let r = rels.swap_remove(ri);
        let pos = r.letters().iter().position(|l| l.gen == x).expect("occurs once");
        let mut rotated = r.letters()[pos + 1..].to_vec();
        rotated.extend_from_slice(&r.letters()[..pos]);
        let w = FreeWord::from_letters(rotated);
        let expr = if r.letters()[pos].inverse { w } else { w.inverse() };

        let subst: Vec<FreeWord> = (0..n).map(|g| if g == x { expr.clone() } else { FreeWord::gen(g) }).collect();
        rels = normalise(rels.iter().map(|s| s.substitute(&subst)).collect());
        for img in images.iter_mut() {
            *img = img.substitute(&subst);
        }
        alive[x] = false;
        eliminations += 1;
    }

    let mut renumber = vec![usize::MAX; n];
    let mut names = Vec::new();
    for g in (0..n).filter(|&g| alive[g]) {
        renumber[g] = names.len();
        names.push(p.generators()[g].clone());
    }
    let rename = |w: &FreeWord| w.map_generators(|g| renumber[g]);
    let presentation =
        Presentation::new(names, rels.iter().map(rename).collect()).expect("surviving generators are declared");
    Simplification { presentation, images: images.iter().map(rename).collect(), eliminations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cog::abelian::abelianization;
    use crate::cog::word::Letter;
    use proptest::prelude::*;

    fn pres(text: &str) -> Presentation {
        Presentation::parse_text(text).unwrap()
    }

    #[test]
    fn kills_defined_generator() {
        let s = tietze_simplify(&pres("generators: a, b\na"), 100);
        assert_eq!(s.to_text(), "generators: b\n");
    }

    #[test]
    fn minimal_presentations_are_unchanged() {
        for text in ["generators: a, b\n[a,b]", "generators: s, t\ns^2\nt^2\n(s t)^3"] {
            let p = pres(text);
            assert_eq!(tietze_simplify(&p, 100), p);
        }
    }

    #[test]
    fn substitution_and_images() {
        let p = pres("generators: a, b, c\nc = a b\nc^2");
        let s = tietze_simplify_with(&p, &TietzeOptions::default());
        assert_eq!(s.presentation.generators(), ["a", "b"]);
        assert_eq!(s.presentation.format_word(&s.presentation.relators()[0]), "a b a b");
        assert_eq!(s.presentation.format_word(&s.images[2]), "a b");
    }

    #[test]
    fn keep_and_budget() {
        let p = pres("generators: a, b\na\nb");
        let opts = TietzeOptions { keep: vec!["a".into()], ..TietzeOptions::default() };
        assert_eq!(tietze_simplify_with(&p, &opts).presentation.generators(), ["a"]);
        assert_eq!(tietze_simplify(&p, 1).generator_count(), 1);
        assert_eq!(tietze_simplify(&p, 0).generator_count(), 2);
    }

    fn presentation_strategy() -> impl Strategy<Value = Presentation> {
        let word = proptest::collection::vec((0usize..4, any::<bool>()), 0..7)
            .prop_map(|v| FreeWord::from_letters(v.into_iter().map(|(g, i)| Letter::new(g, i)).collect()));
        proptest::collection::vec(word, 0..5)
            .prop_map(|rels| Presentation::new(vec!["a".into(), "b".into(), "c".into(), "d".into()], rels).unwrap())
    }

    proptest! {
        #[test]
        fn preserves_abelianization(p in presentation_strategy()) {
            let s = tietze_simplify(&p, 100);
            prop_assert_eq!(abelianization(&s).unwrap(), abelianization(&p).unwrap());
        }

        #[test]
        fn images_satisfy_relators(p in presentation_strategy()) {
            // Every original relator, rewritten, is a consequence of the new
            // relators; abelianised that means it lies in their row span.
            let s = tietze_simplify_with(&p, &TietzeOptions::default());
            for r in p.relators() {
                let img = r.substitute(&s.images);
                let mut q = s.presentation.relators().to_vec();
                q.push(img);
                let with = Presentation::new(s.presentation.generators().to_vec(), q).unwrap();
                prop_assert_eq!(abelianization(&with).unwrap(), abelianization(&s.presentation).unwrap());
            }
        }
    }
}
