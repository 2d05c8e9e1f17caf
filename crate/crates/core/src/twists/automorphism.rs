use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::cog::{
    vertex_name, Backend, CheckStatus, ComplexOfGroups, ConditionReport, Decision, FreeWord, Letter, Tally,
};
use crate::construction::{ChamberGraph, GluedComplex};

use super::blocks::Block;
use super::TwistError;

/// How a twist acts on one local group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexAction {
    Identity,
    Conjugate,
    /// A cell lying in chambers on both sides of the block. The twist is the
    /// identity here, which is consistent only if the conjugating element
    /// centralises the image of this group in every adjacent block chamber.
    Boundary,
}

/// A twist as vertex-wise data: conjugation by `c` on the cells inside the
/// block, the identity elsewhere.
#[derive(Clone, Debug, Serialize)]
pub struct TwistAutomorphism {
    pub block: Block,
    /// The wall whose group contains `c`.
    pub base_wall: String,
    pub element: String,
    pub actions: Vec<VertexAction>,
    /// The local representative of `c` at each conjugated vertex.
    #[serde(skip)]
    pub local: Vec<Option<FreeWord>>,
    /// Agreement of the vertex-wise maps along every scwol edge.
    pub homomorphism: ConditionReport,
    /// Every vertex is conjugated, so the twist is inner.
    pub inner: bool,
    pub identity: bool,
}

/// Chamber index of each cell of `u` that is a chamber.
pub(crate) fn chamber_nodes(u: &GluedComplex, g: &ChamberGraph) -> Vec<Option<usize>> {
    let mut out = vec![None; u.len()];
    for c in u.chamber_cells() {
        out[c] = g.chambers().iter().position(|w| *w == u.cell(c).rep);
    }
    out
}

pub(crate) fn check_matches(u: &GluedComplex, cog: &ComplexOfGroups) -> Result<(), TwistError> {
    let names = cog.scwol().vertices();
    if names.len() != u.len() || (0..u.len()).any(|c| names[c] != vertex_name(u, c)) {
        return Err(TwistError::NotFromGluing);
    }
    Ok(())
}

/// The chambers containing each cell.
fn chambers_above(u: &GluedComplex, nodes: &[Option<usize>]) -> Vec<BTreeSet<usize>> {
    (0..u.len())
        .map(|c| {
            let mut s: BTreeSet<usize> = u.cofaces_of(c).filter_map(|d| nodes[d]).collect();
            s.extend(nodes[c]);
            s
        })
        .collect()
}

/// Integer solution `k` of `sum k_i v_i = t`, or `None` when there is none.
/// `Err` on overflow.
pub(crate) fn solve_integer(vs: &[Vec<i64>], t: &[i64]) -> Result<Option<Vec<i64>>, ()> {
    let n = t.len();
    let m = vs.len();
    let mut rows: Vec<Vec<i64>> = vs
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut r = v.clone();
            r.extend((0..m).map(|j| i64::from(i == j)));
            r
        })
        .collect();
    let mut echelon: Vec<(usize, Vec<i64>)> = Vec::new();
    for col in 0..n {
        loop {
            let live: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            let Some(&p) = live.iter().min_by_key(|&&i| rows[i][col].unsigned_abs()) else {
                break;
            };
            if live.len() == 1 {
                echelon.push((col, rows.swap_remove(p)));
                break;
            }
            let pivot = rows[p].clone();
            for &i in &live {
                if i != p {
                    let q = rows[i][col].div_euclid(pivot[col]);
                    for (x, y) in rows[i].iter_mut().zip(&pivot) {
                        *x = x.checked_sub(q.checked_mul(*y).ok_or(())?).ok_or(())?;
                    }
                }
            }
        }
    }
    let mut x: Vec<i64> = t.to_vec();
    x.extend(std::iter::repeat_n(0, m));
    for (col, row) in &echelon {
        if x[*col] % row[*col] != 0 {
            return Ok(None);
        }
        let q = x[*col] / row[*col];
        for (a, b) in x.iter_mut().zip(row) {
            *a = a.checked_sub(q.checked_mul(*b).ok_or(())?).ok_or(())?;
        }
    }
    if x[..n].iter().any(|&a| a != 0) {
        return Ok(None);
    }
    Ok(Some(x[n..].iter().map(|&a| -a).collect()))
}

/// A word `h` in the source of edge `a` with `psi_a(h) = target`.
fn preimage(cog: &ComplexOfGroups, a: usize, target: &FreeWord) -> Decision2 {
    let e = cog.scwol().edge(a);
    let (src, tgt) = (cog.group(e.source), cog.group(e.target));
    let map = cog.map(a);
    if let Backend::FreeAbelian(_) = tgt.backend() {
        let vs: Vec<Vec<i64>> = map.images().iter().map(|w| tgt.abelian_coordinates(w).expect("abelian")).collect();
        let t = tgt.abelian_coordinates(target).expect("abelian");
        return match solve_integer(&vs, &t) {
            Ok(Some(k)) => Decision2::Found(FreeWord::from_powers(&k.iter().copied().enumerate().collect::<Vec<_>>())),
            Ok(None) => Decision2::None,
            Err(()) => Decision2::Unknown,
        };
    }
    if let Backend::Finite(g) = src.backend() {
        let mut undecided = false;
        for p in g.elements() {
            let w = g.word_of(p).expect("element").clone();
            match tgt.equal(&map.apply(&w), target) {
                Decision::Yes => return Decision2::Found(w),
                Decision::Unknown => undecided = true,
                Decision::No => {}
            }
        }
        return if undecided { Decision2::Unknown } else { Decision2::None };
    }
    // Short words only; failure proves nothing.
    let letters: Vec<Letter> =
        (0..src.generator_count()).flat_map(|g| [Letter::new(g, false), Letter::new(g, true)]).collect();
    let mut words = vec![FreeWord::identity()];
    for l in &letters {
        words.push(FreeWord::from_letters(vec![*l]));
        for m in &letters {
            words.push(FreeWord::from_letters(vec![*l, *m]).free_reduce());
        }
    }
    words
        .into_iter()
        .find(|w| tgt.equal(&map.apply(w), target) == Decision::Yes)
        .map_or(Decision2::Unknown, Decision2::Found)
}

enum Decision2 {
    Found(FreeWord),
    None,
    Unknown,
}

fn wall_of_type(u: &GluedComplex, chamber_cell: usize, ty: &str) -> Vec<usize> {
    u.faces_of(chamber_cell)
        .filter(|&f| {
            let t = &u.types()[u.cell(f).ty];
            t.codim == 1 && t.id == ty
        })
        .collect()
}

/// The twist by `c` around the block. `c` is a word in the group of a wall
/// of the block's type on the side chamber, preferring a wall that leaves
/// the block.
pub fn twist_automorphism(
    u: &GluedComplex,
    cog: &ComplexOfGroups,
    block: &Block,
    c: &FreeWord,
) -> Result<TwistAutomorphism, TwistError> {
    check_matches(u, cog)?;
    let g = ChamberGraph::build(u)?;
    if block.chambers.is_empty()
        || block.chambers.iter().any(|&x| x >= g.node_count())
        || !block.chambers.contains(&block.side)
    {
        return Err(TwistError::InvalidBlock("chamber out of range or side not in block".into()));
    }
    let nodes = chamber_nodes(u, &g);
    let side_cell = (0..u.len()).find(|&x| nodes[x] == Some(block.side)).expect("every chamber has a cell");
    let above = chambers_above(u, &nodes);
    let walls = wall_of_type(u, side_cell, &block.edge_type);
    let leaves = |w: &usize| above[*w].iter().any(|x| !block.chambers.contains(x));
    let base = *walls
        .iter()
        .find(|w| leaves(w))
        .or(walls.first())
        .ok_or_else(|| TwistError::InvalidBlock(format!("side chamber has no wall of type {}", block.edge_type)))?;
    let base_group = cog.group(base);
    if c.max_generator().is_some_and(|m| m >= base_group.generator_count()) {
        return Err(TwistError::InvalidBlock("element uses an undeclared generator".into()));
    }

    let mut hom = Tally::new("homomorphism");
    // Centrality of c in its own group.
    for h in 0..base_group.generator_count() {
        let d = base_group.is_identity(&c.commutator(&FreeWord::gen(h)));
        if d == Decision::No {
            return Err(TwistError::NotCentral);
        }
        hom.record(d, || format!("{} commutes with generator {}", base_group.format(c), base_group.names()[h]));
    }

    let identity = base_group.is_identity(c) == Decision::Yes;
    let n = u.len();
    let actions: Vec<VertexAction> = (0..n)
        .map(|x| {
            let inside = above[x].iter().filter(|y| block.chambers.contains(y)).count();
            if identity || inside == 0 {
                VertexAction::Identity
            } else if inside == above[x].len() {
                VertexAction::Conjugate
            } else {
                VertexAction::Boundary
            }
        })
        .collect();

    // Carry c to every conjugated vertex along scwol edges.
    let scwol = cog.scwol();
    let mut local: Vec<Option<FreeWord>> = vec![None; n];
    let mut queue = VecDeque::new();
    if !identity {
        for a in scwol.outgoing(base) {
            let t = scwol.edge(a).target;
            if actions[t] == VertexAction::Conjugate && local[t].is_none() {
                local[t] = Some(cog.map(a).apply(c));
                queue.push_back(t);
            }
        }
        if actions[base] == VertexAction::Conjugate {
            local[base] = Some(c.clone());
            queue.push_back(base);
        }
    }
    while let Some(x) = queue.pop_front() {
        let cx = local[x].clone().expect("assigned");
        for a in scwol.outgoing(x) {
            let t = scwol.edge(a).target;
            if actions[t] == VertexAction::Conjugate && local[t].is_none() {
                local[t] = Some(cog.map(a).apply(&cx));
                queue.push_back(t);
            }
        }
        for a in scwol.incoming(x) {
            let s = scwol.edge(a).source;
            if actions[s] == VertexAction::Conjugate && local[s].is_none() {
                if let Decision2::Found(w) = preimage(cog, a, &cx) {
                    local[s] = Some(w);
                    queue.push_back(s);
                }
            }
        }
    }
    let names = scwol.vertices();
    for x in 0..n {
        if actions[x] == VertexAction::Conjugate && local[x].is_none() {
            // Decide whether the element is missing for good.
            let proven = scwol.outgoing(x).any(|a| {
                let t = scwol.edge(a).target;
                local[t].as_ref().is_some_and(|ct| matches!(preimage(cog, a, ct), Decision2::None))
            });
            let d = if proven { Decision::No } else { Decision::Unknown };
            hom.record(d, || format!("no representative of the twisting element at {}", names[x]));
        }
    }

    for a in 0..scwol.edge_count() {
        let e = scwol.edge(a);
        let (s, t) = (e.source, e.target);
        let (gs, gt) = (cog.group(s), cog.group(t));
        let psi = cog.map(a);
        let what = |detail: &str| format!("edge {} -> {}: {detail}", names[s], names[t]);
        match (actions[s], actions[t]) {
            (VertexAction::Conjugate, VertexAction::Conjugate) => {
                if let (Some(cs), Some(ct)) = (&local[s], &local[t]) {
                    hom.record(gt.equal(&psi.apply(cs), ct), || what("representatives disagree"));
                }
            }
            (VertexAction::Conjugate, _) => {
                if let Some(cs) = &local[s] {
                    for h in 0..gs.generator_count() {
                        let d = gs.is_identity(&cs.commutator(&FreeWord::gen(h)));
                        hom.record(d, || what(&format!("{} does not centralise {}", gs.format(cs), gs.names()[h])));
                    }
                }
            }
            (_, VertexAction::Conjugate) => {
                if let Some(ct) = &local[t] {
                    for h in 0..gs.generator_count() {
                        let img = psi.apply(&FreeWord::gen(h));
                        let d = gt.is_identity(&ct.commutator(&img));
                        hom.record(d, || {
                            what(&format!("{} does not centralise the image of {}", gt.format(ct), gs.names()[h]))
                        });
                    }
                }
            }
            _ => {}
        }
    }

    let homomorphism = hom.finish();
    let inner = !identity && actions.iter().all(|&x| x == VertexAction::Conjugate);
    Ok(TwistAutomorphism {
        block: block.clone(),
        base_wall: names[base].clone(),
        element: base_group.format(c),
        actions,
        local,
        homomorphism,
        inner,
        identity,
    })
}

impl TwistAutomorphism {
    pub fn is_homomorphism(&self) -> bool {
        self.homomorphism.status == CheckStatus::Pass
    }
}

/// Whether two twists commute vertex-wise: where both conjugate, their
/// local elements must commute.
pub fn commute(cog: &ComplexOfGroups, x: &TwistAutomorphism, y: &TwistAutomorphism) -> Decision {
    let mut d = Decision::Yes;
    for v in 0..x.actions.len() {
        if let (Some(a), Some(b)) = (&x.local[v], &y.local[v]) {
            d = d.and(cog.group(v).is_identity(&a.commutator(b)));
        }
    }
    d
}

/// Whether applying every twist in `parts` agrees with `whole` on the
/// generators of every vertex group.
pub fn composite_agrees(cog: &ComplexOfGroups, parts: &[&TwistAutomorphism], whole: &TwistAutomorphism) -> Decision {
    let mut d = Decision::Yes;
    for v in 0..whole.actions.len() {
        let g = cog.group(v);
        let mut x = FreeWord::identity();
        for p in parts {
            if let Some(c) = &p.local[v] {
                x = x.mul(c);
            }
        }
        let y = whole.local[v].clone().unwrap_or_else(FreeWord::identity);
        let diff = x.inverse().mul(&y);
        for h in 0..g.generator_count() {
            d = d.and(g.is_identity(&diff.commutator(&FreeWord::gen(h))));
        }
    }
    d
}
