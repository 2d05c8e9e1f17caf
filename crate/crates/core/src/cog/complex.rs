use std::collections::BTreeMap;

use serde::Serialize;

use super::group::{Decision, LocalGroup};
use super::hom::GroupMap;
use super::scwol::Scwol;
use super::word::FreeWord;
use super::CogError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Undecidable,
}

impl From<Decision> for CheckStatus {
    fn from(d: Decision) -> Self {
        match d {
            Decision::Yes => CheckStatus::Pass,
            Decision::No => CheckStatus::Fail,
            Decision::Unknown => CheckStatus::Undecidable,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub name: String,
    pub status: CheckStatus,
    /// Instances that failed, or could not be decided.
    pub failures: Vec<String>,
    pub undecided: Vec<String>,
    pub checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub conditions: Vec<ConditionReport>,
}

impl ValidationReport {
    pub fn condition(&self, name: &str) -> Option<&ConditionReport> {
        self.conditions.iter().find(|c| c.name == name)
    }

    /// No condition failed.
    pub fn passed(&self) -> bool {
        self.conditions.iter().all(|c| c.status != CheckStatus::Fail)
    }

    /// Every condition passed outright.
    pub fn fully_verified(&self) -> bool {
        self.conditions.iter().all(|c| c.status == CheckStatus::Pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serialisable")
    }
}

pub(crate) struct Tally {
    name: &'static str,
    failures: Vec<String>,
    undecided: Vec<String>,
    checked: usize,
}

impl Tally {
    pub(crate) fn new(name: &'static str) -> Self {
        Tally { name, failures: Vec::new(), undecided: Vec::new(), checked: 0 }
    }

    pub(crate) fn record(&mut self, d: Decision, what: impl FnOnce() -> String) {
        self.checked += 1;
        match d {
            Decision::Yes => {}
            Decision::No => self.failures.push(what()),
            Decision::Unknown => self.undecided.push(what()),
        }
    }

    pub(crate) fn finish(mut self) -> ConditionReport {
        self.failures.dedup();
        self.undecided.dedup();
        let status = if !self.failures.is_empty() {
            CheckStatus::Fail
        } else if !self.undecided.is_empty() {
            CheckStatus::Undecidable
        } else {
            CheckStatus::Pass
        };
        ConditionReport {
            name: self.name.into(),
            status,
            failures: self.failures,
            undecided: self.undecided,
            checked: self.checked,
        }
    }
}

/// Local groups, edge monomorphisms and twisting elements over a scwol.
#[derive(Clone, Debug)]
pub struct ComplexOfGroups {
    scwol: Scwol,
    groups: Vec<LocalGroup>,
    maps: Vec<GroupMap>,
    /// Nontrivial `g_{a,b}`, as words in `G_{t(a)}`.
    twists: BTreeMap<(usize, usize), FreeWord>,
}

impl ComplexOfGroups {
    /// Checks shapes only; use [`Self::validate`] for the group conditions.
    pub fn new(
        scwol: Scwol,
        groups: Vec<LocalGroup>,
        maps: Vec<GroupMap>,
        twists: BTreeMap<(usize, usize), FreeWord>,
    ) -> Result<Self, CogError> {
        if groups.len() != scwol.vertex_count() {
            return Err(CogError::Invalid(format!("{} groups for {} vertices", groups.len(), scwol.vertex_count())));
        }
        if maps.len() != scwol.edge_count() {
            return Err(CogError::Invalid(format!("{} maps for {} edges", maps.len(), scwol.edge_count())));
        }
        for (a, map) in maps.iter().enumerate() {
            let e = scwol.edge(a);
            map.check_shape(&groups[e.source], &groups[e.target])
                .map_err(|m| CogError::Invalid(format!("map on edge e{a}: {m}")))?;
        }
        let mut kept = BTreeMap::new();
        for (&(a, b), g) in &twists {
            if !scwol.composites().contains_key(&(a, b)) {
                return Err(CogError::Invalid(format!("twisting element on non-composable pair (e{a}, e{b})")));
            }
            let target = &groups[scwol.edge(a).target];
            if g.max_generator().is_some_and(|x| x >= target.generator_count()) {
                return Err(CogError::Invalid(format!(
                    "twisting element on (e{a}, e{b}) uses an undeclared generator"
                )));
            }
            let g = g.free_reduce();
            if !g.is_empty() {
                kept.insert((a, b), g);
            }
        }
        Ok(ComplexOfGroups { scwol, groups, maps, twists: kept })
    }

    /// A simple complex of groups: all twisting elements trivial.
    pub fn simple(scwol: Scwol, groups: Vec<LocalGroup>, maps: Vec<GroupMap>) -> Result<Self, CogError> {
        ComplexOfGroups::new(scwol, groups, maps, BTreeMap::new())
    }

    pub fn scwol(&self) -> &Scwol {
        &self.scwol
    }

    pub fn group(&self, v: usize) -> &LocalGroup {
        &self.groups[v]
    }

    pub fn groups(&self) -> &[LocalGroup] {
        &self.groups
    }

    pub fn map(&self, a: usize) -> &GroupMap {
        &self.maps[a]
    }

    /// `g_{a,b}`, the identity unless set.
    pub fn twist(&self, a: usize, b: usize) -> FreeWord {
        self.twists.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn twists(&self) -> &BTreeMap<(usize, usize), FreeWord> {
        &self.twists
    }

    /// True iff every twisting element is the identity. Elements of formal
    /// groups that are not syntactically trivial count as nontrivial.
    pub fn is_simple(&self) -> bool {
        self.twists.iter().all(|(&(a, _), g)| self.groups[self.scwol.edge(a).target].is_identity(g) == Decision::Yes)
    }

    fn edge_label(&self, a: usize) -> String {
        let e = self.scwol.edge(a);
        format!("e{a} ({} -> {})", self.scwol.vertices()[e.source], self.scwol.vertices()[e.target])
    }

    /// Checks every edge map and the compatibility conditions on composable
    /// pairs and triples, reporting each as pass, fail or undecidable.
    ///
    /// With `psi_a(h) = a^-1 h a` the conditions are
    /// `g_{a,b} psi_{ab}(h) g_{a,b}^-1 = psi_a(psi_b(h))` on generators `h`,
    /// and `psi_a(g_{b,c}) g_{a,bc} = g_{a,b} g_{ab,c}`.
    pub fn validate(&self) -> ValidationReport {
        let s = &self.scwol;
        let mut hom = Tally::new("psi_homomorphism");
        let mut inj = Tally::new("psi_injective");
        for a in 0..s.edge_count() {
            let e = s.edge(a);
            let (src, tgt) = (&self.groups[e.source], &self.groups[e.target]);
            let (d, bad) = self.maps[a].is_homomorphism(src, tgt);
            hom.record(d, || match bad {
                Some(r) => format!("{}: relator {} is not sent to 1", self.edge_label(a), src.format(&r)),
                None => self.edge_label(a),
            });
            inj.record(self.maps[a].is_injective(src, tgt), || self.edge_label(a));
        }

        let mut conj = Tally::new("conjugation_compatibility");
        for (a, b) in s.composable_pairs() {
            let c = s.compose(a, b);
            let src = &self.groups[s.edge(b).source];
            let tgt = &self.groups[s.edge(a).target];
            let g = self.twist(a, b);
            let mut status = Decision::Yes;
            let mut first_bad = None;
            for h in 0..src.generator_count() {
                let h = FreeWord::gen(h);
                let lhs = g.mul(&self.maps[c].apply(&h)).mul(&g.inverse());
                let rhs = self.maps[a].apply(&self.maps[b].apply(&h));
                let d = tgt.equal(&lhs, &rhs);
                if d == Decision::No && first_bad.is_none() {
                    first_bad = Some(src.format(&h));
                }
                status = status.and(d);
            }
            conj.record(status, || {
                let mut m = format!("pair (e{a}, e{b}) with composite e{c}");
                if let Some(h) = first_bad {
                    m.push_str(&format!(", generator {h}"));
                }
                m
            });
        }

        let mut cocycle = Tally::new("cocycle");
        for (a, b, c) in s.composable_triples() {
            let tgt = &self.groups[s.edge(a).target];
            let bc = s.compose(b, c);
            let ab = s.compose(a, b);
            let lhs = self.maps[a].apply(&self.twist(b, c)).mul(&self.twist(a, bc));
            let rhs = self.twist(a, b).mul(&self.twist(ab, c));
            cocycle.record(tgt.equal(&lhs, &rhs), || format!("triple (e{a}, e{b}, e{c})"));
        }

        ValidationReport { conditions: vec![hom.finish(), inj.finish(), conj.finish(), cocycle.finish()] }
    }
}
