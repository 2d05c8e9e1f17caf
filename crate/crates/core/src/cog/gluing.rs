use std::collections::{BTreeMap, BTreeSet};

use crate::construction::GluedComplex;

use super::complex::ComplexOfGroups;
use super::group::{Decision, LocalGroup};
use super::hom::GroupMap;
use super::scwol::Scwol;
use super::CogError;

/// Group data for a gluing: a local group per stratum type and a map per
/// face relation `(lower, upper)` between types.
///
/// Maps may be omitted when the lower group is trivial, or when the relation
/// factors through intermediate types whose maps are given; the missing map
/// is then the composite.
#[derive(Clone, Debug, Default)]
pub struct GroupAssignment {
    pub groups: BTreeMap<String, LocalGroup>,
    pub maps: BTreeMap<(String, String), GroupMap>,
}

/// Vertex name of a cell: its type id and coset representative, e.g. `X:s.t`
/// or `X:e` for the identity.
pub fn vertex_name(u: &GluedComplex, cell: usize) -> String {
    let c = u.cell(cell);
    let word = if c.rep.is_empty() {
        "e".to_string()
    } else {
        c.rep.letters().iter().map(|&s| u.generators()[s].as_str()).collect::<Vec<_>>().join(".")
    };
    format!("{}:{word}", u.types()[c.ty].id)
}

struct Resolver<'a> {
    u: &'a GluedComplex,
    a: &'a GroupAssignment,
    below: BTreeSet<(usize, usize)>,
    memo: BTreeMap<(usize, usize), Option<GroupMap>>,
}

impl Resolver<'_> {
    fn group(&self, ty: usize) -> &LocalGroup {
        &self.a.groups[&self.u.types()[ty].id]
    }

    fn resolve(&mut self, l: usize, h: usize) -> Option<GroupMap> {
        if let Some(m) = self.memo.get(&(l, h)) {
            return m.clone();
        }
        let key = (self.u.types()[l].id.clone(), self.u.types()[h].id.clone());
        let found = if let Some(m) = self.a.maps.get(&key) {
            Some(m.clone())
        } else if self.group(l).generator_count() == 0 {
            Some(GroupMap::trivial(0))
        } else {
            let mids: Vec<usize> =
                self.below.iter().filter(|&&(x, m)| x == l && self.below.contains(&(m, h))).map(|&(_, m)| m).collect();
            mids.into_iter().find_map(|m| {
                let lower = self.resolve(l, m)?;
                let upper = self.resolve(m, h)?;
                Some(upper.after(&lower))
            })
        };
        self.memo.insert((l, h), found.clone());
        found
    }
}

/// The simple complex of groups over the scwol of the cell poset of `u`.
///
/// Every cell of type `T` gets the group assigned to `T`, and every face
/// relation the map between the two types. All twisting elements are
/// trivial. Maps are checked to be injective homomorphisms where decidable.
pub fn from_gluing(u: &GluedComplex, assignment: &GroupAssignment) -> Result<ComplexOfGroups, CogError> {
    let used: BTreeSet<usize> = u.cells().iter().map(|c| c.ty).collect();
    for &ty in &used {
        let id = &u.types()[ty].id;
        if !assignment.groups.contains_key(id) {
            return Err(CogError::MissingAssignment(id.clone()));
        }
    }
    let below: BTreeSet<(usize, usize)> = u.faces().iter().map(|&(l, h)| (u.cell(l).ty, u.cell(h).ty)).collect();
    let mut resolver = Resolver { u, a: assignment, below: below.clone(), memo: BTreeMap::new() };
    let mut type_maps = BTreeMap::new();
    for &(l, h) in &below {
        let (lid, hid) = (u.types()[l].id.clone(), u.types()[h].id.clone());
        let map =
            resolver.resolve(l, h).ok_or_else(|| CogError::MissingMap { lower: lid.clone(), upper: hid.clone() })?;
        let (src, tgt) = (resolver.group(l), resolver.group(h));
        map.check_shape(src, tgt).map_err(|m| CogError::Invalid(format!("map {lid:?} -> {hid:?}: {m}")))?;
        if map.is_homomorphism(src, tgt).0 == Decision::No {
            return Err(CogError::NotHomomorphism { lower: lid, upper: hid });
        }
        if map.is_injective(src, tgt) == Decision::No {
            return Err(CogError::NotInjective { lower: lid, upper: hid });
        }
        type_maps.insert((l, h), map);
    }

    let names = (0..u.len()).map(|c| vertex_name(u, c)).collect();
    let scwol = Scwol::from_poset(names, u.faces())?;
    let groups = u.cells().iter().map(|c| resolver.group(c.ty).clone()).collect();
    let maps = scwol.edges().iter().map(|e| type_maps[&(u.cell(e.source).ty, u.cell(e.target).ty)].clone()).collect();
    ComplexOfGroups::simple(scwol, groups, maps)
}
