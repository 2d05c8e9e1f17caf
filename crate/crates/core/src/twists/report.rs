use std::fmt::Write as _;

use serde::Serialize;

use crate::cog::{rank, Backend, CheckStatus, ComplexOfGroups, Decision, LocalGroup};
use crate::construction::{ChamberGraph, GluedComplex};

use super::automorphism::{check_matches, commute, twist_automorphism, TwistAutomorphism};
use super::blocks::{all_blocks, edge_types, is_tree, Block};
use super::TwistError;

pub const BANNER: &str = "1 → T(M) → Out(π₁(M)) → A(M) → 1";

#[derive(Clone, Debug, Serialize)]
pub struct EdgeTypeEntry {
    pub edge_type: String,
    pub center: Vec<String>,
    /// Rank of the subgroup the declared center generates.
    pub center_rank: usize,
    /// `pass` when centrality was checked, `undecidable` for formal groups.
    pub center_status: CheckStatus,
    pub blocks: Vec<Block>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistGenerator {
    pub edge_type: String,
    pub block: Block,
    pub element: String,
    /// Exponents of the element when the wall group is free abelian.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponents: Option<Vec<i64>>,
    /// The block is the whole chamber set, so the twist is inner.
    pub trivial: bool,
    pub homomorphism: CheckStatus,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

/// The product of the listed generators is inner.
#[derive(Clone, Debug, Serialize)]
pub struct Relation {
    pub edge_type: String,
    pub element: String,
    pub generators: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistReport {
    pub edge_types: Vec<EdgeTypeEntry>,
    pub generators: Vec<TwistGenerator>,
    pub relations: Vec<Relation>,
    pub tree: bool,
    pub rank_lower: usize,
    pub rank_upper: usize,
    pub rank_exact: bool,
    /// Pairwise commutation of the generators' local elements.
    pub commutation: CheckStatus,
    pub banner: String,
    pub quotient: String,
}

fn center_rank(g: &LocalGroup) -> usize {
    match g.backend() {
        Backend::Finite(_) => 0,
        Backend::FreeAbelian(_) => {
            let rows: Vec<Vec<i64>> = g.center().iter().filter_map(|c| g.abelian_coordinates(c)).collect();
            if rows.is_empty() {
                0
            } else {
                rank(&rows)
            }
        }
        // Declared generators are taken to be independent.
        Backend::Formal(_) => g.center().len(),
    }
}

fn wall_cell(u: &GluedComplex, ty: &str) -> Option<usize> {
    (0..u.len()).find(|&c| {
        let t = &u.types()[u.cell(c).ty];
        t.codim == 1 && t.id == ty
    })
}

/// Lists the twists of a gluing, the relations among them, and bounds on
/// the rank of `T(M)`.
pub fn twist_group_report(
    u: &GluedComplex,
    cog: &ComplexOfGroups,
    g: &ChamberGraph,
) -> Result<TwistReport, TwistError> {
    check_matches(u, cog)?;
    let mut entries = Vec::new();
    let mut generators = Vec::new();
    let mut relations = Vec::new();
    let mut data: Vec<TwistAutomorphism> = Vec::new();
    let mut upper = 0;
    let mut proper_verified = false;
    for ty in edge_types(g) {
        let Some(wall) = wall_cell(u, &ty) else {
            continue;
        };
        let group = cog.group(wall);
        let bs = all_blocks(g, &ty)?;
        let r = center_rank(group);
        upper += r * (bs.len() - 1);
        for c in group.center() {
            let mut ids = Vec::new();
            for b in &bs {
                let t = twist_automorphism(u, cog, b, c)?;
                let trivial = !b.is_proper(g) || t.inner;
                if !trivial && t.is_homomorphism() && !t.identity {
                    proper_verified = true;
                }
                ids.push(generators.len());
                generators.push(TwistGenerator {
                    edge_type: ty.clone(),
                    block: b.clone(),
                    element: group.format(c),
                    exponents: group.abelian_coordinates(c),
                    trivial,
                    homomorphism: t.homomorphism.status,
                    failures: t.homomorphism.failures.clone(),
                });
                data.push(t);
            }
            relations.push(Relation { edge_type: ty.clone(), element: group.format(c), generators: ids });
        }
        entries.push(EdgeTypeEntry {
            edge_type: ty,
            center: group.center().iter().map(|c| group.format(c)).collect(),
            center_rank: r,
            center_status: group.center_status().into(),
            blocks: bs,
        });
    }

    let mut comm = Decision::Yes;
    for i in 0..data.len() {
        for j in i + 1..data.len() {
            comm = comm.and(commute(cog, &data[i], &data[j]));
        }
    }

    let tree = is_tree(g);
    let lower = if tree { upper } else { usize::from(proper_verified).min(upper) };
    Ok(TwistReport {
        edge_types: entries,
        generators,
        relations,
        tree,
        rank_lower: lower,
        rank_upper: upper,
        rank_exact: tree,
        commutation: comm.into(),
        banner: BANNER.to_string(),
        quotient: "A(M): finite, not computed".to_string(),
    })
}

impl TwistReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        writeln!(s, "{}", self.banner).unwrap();
        writeln!(s, "{}", self.quotient).unwrap();
        if self.rank_exact {
            writeln!(s, "T(M) is free abelian of rank {}", self.rank_lower).unwrap();
        } else {
            writeln!(s, "T(M) is free abelian of rank between {} and {}", self.rank_lower, self.rank_upper).unwrap();
        }
        for e in &self.edge_types {
            writeln!(
                s,
                "edge type {}: center [{}], rank {}, {} blocks",
                e.edge_type,
                e.center.join(", "),
                e.center_rank,
                e.blocks.len()
            )
            .unwrap();
        }
        for (i, t) in self.generators.iter().enumerate() {
            let chambers: Vec<String> = t.block.chambers.iter().map(usize::to_string).collect();
            let note = if t.trivial { " (inner)" } else { "" };
            writeln!(
                s,
                "  t{i}: {} by {} on chambers {{{}}}, homomorphism {:?}{note}",
                t.edge_type,
                t.element,
                chambers.join(","),
                t.homomorphism
            )
            .unwrap();
        }
        for r in &self.relations {
            let ids: Vec<String> = r.generators.iter().map(|i| format!("t{i}")).collect();
            writeln!(s, "  relation: {} is inner", ids.join(" + ")).unwrap();
        }
        writeln!(s, "commutation: {:?}", self.commutation).unwrap();
        s
    }
}
