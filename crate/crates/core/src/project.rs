//! Project files: one JSON document describing a Coxeter system, a mirrored
//! complex and the optional data later commands need.
//!
//! Loading is eager. Every cross-reference is resolved and every component
//! is built, so a [`ProjectSpec`] is ready for any command whose inputs it
//! carries. Errors carry a JSON pointer into the offending document.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_path_to_error::Segment;
use thiserror::Error;

use crate::cog::{
    try_cyclic, ComplexOfGroups, FiniteGroup, FreeWord, GroupAssignment, GroupMap, LocalGroup, Presentation, Scwol,
    ScwolEdge,
};
use crate::complex::SimplicialComplex;
use crate::construction::PermutationAction;
use crate::coxeter::{CoxeterError, CoxeterMatrix, CoxeterSystem, DEFAULT_BALL_CAP};
use crate::curvature::{EdgeLength, ExplicitLinks, FanPoint, FanTriangle, MetricNerve};
use crate::mirrored::{MirroredComplex, MirroredSpec};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ProjectError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
    #[error("dangling reference at {pointer}: {name:?} is not defined")]
    DanglingReference { pointer: String, name: String },
    #[error("project has no {0} section")]
    Missing(&'static str),
}

fn schema(pointer: impl Into<String>, message: impl ToString) -> ProjectError {
    ProjectError::Schema { pointer: pointer.into(), message: message.to_string() }
}

fn dangling(pointer: impl Into<String>, name: &str) -> ProjectError {
    ProjectError::DanglingReference { pointer: pointer.into(), name: name.to_string() }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectFile {
    pub version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub coxeter: CoxeterSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mirrored: Option<MirroredSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groups: Option<GroupsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex_of_groups: Option<CogSpec>,
    /// Generator images of a permutation action, for `quotient`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<Vec<Vec<usize>>>,
    /// Piecewise spherical links keyed by vertex name, for `check-npc`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub links: Option<BTreeMap<String, LinkSpec>>,
    /// A group presentation in the text format, for `pi1` and `abelianize`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanSpec>,
    #[serde(default)]
    pub caps: Caps,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoxeterSpec {
    pub generators: Vec<String>,
    /// `0` encodes infinity.
    pub matrix: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Trivial,
    Cyclic {
        generator: String,
        order: usize,
        #[serde(default)]
        center: Vec<String>,
    },
    FreeAbelian {
        generators: Vec<String>,
        #[serde(default)]
        center: Vec<String>,
    },
    Finite {
        generators: Vec<String>,
        permutations: Vec<Vec<usize>>,
        #[serde(default)]
        center: Vec<String>,
    },
    Formal {
        generators: Vec<String>,
        #[serde(default)]
        relators: Vec<String>,
        #[serde(default)]
        center: Vec<String>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub lower: String,
    pub upper: String,
    pub images: Vec<String>,
}

/// Groups per stratum type, for gluings.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupsSpec {
    pub types: BTreeMap<String, GroupSpec>,
    #[serde(default)]
    pub maps: Vec<MapSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexSpec {
    pub name: String,
    pub group: GroupSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeSpec {
    pub source: String,
    pub target: String,
    pub images: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwistingSpec {
    /// Edge indices `(a, b)` with `t(b) = i(a)`.
    pub pair: (usize, usize),
    pub element: String,
}

/// An explicit complex of groups. Composites default to the unique edge
/// with the right endpoints.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CogSpec {
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub composites: Option<Vec<(usize, usize, usize)>>,
    #[serde(default)]
    pub twisting: Vec<TwistingSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeLengthSpec {
    pub edge: (usize, usize),
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coxeter: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radians: Option<f64>,
}

/// A link as maximal simplices; unlisted edges have length `pi/2`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkSpec {
    pub labels: Vec<String>,
    pub simplices: Vec<Vec<usize>>,
    #[serde(default)]
    pub lengths: Vec<EdgeLengthSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSpec {
    pub triangles: Vec<FanTriangle>,
    pub gamma: Vec<FanPoint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Caps {
    /// Word-length radius for `ball`, `glue` and friends; `None` means the
    /// whole group, which must be finite.
    pub radius: Option<usize>,
    pub max_elements: usize,
    pub sigma_radius: usize,
    pub tietze_budget: usize,
    pub spanning_tree_cap: usize,
    pub tolerance: f64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            radius: None,
            max_elements: DEFAULT_BALL_CAP,
            sigma_radius: 3,
            tietze_budget: 10_000,
            spanning_tree_cap: 1000,
            tolerance: crate::curvature::TOLERANCE,
        }
    }
}

/// A loaded and cross-checked project.
#[derive(Clone, Debug)]
pub struct ProjectSpec {
    pub name: Option<String>,
    pub system: CoxeterSystem,
    pub mirrored: Option<MirroredComplex>,
    pub assignment: Option<GroupAssignment>,
    pub complex_of_groups: Option<ComplexOfGroups>,
    pub action: Option<PermutationAction>,
    pub links: Option<ExplicitLinks>,
    pub presentation: Option<Presentation>,
    pub fan: Option<FanSpec>,
    pub caps: Caps,
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

/// Reads and validates a project file.
pub fn load(path: impl AsRef<Path>) -> Result<ProjectSpec, ProjectError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ProjectError::Io { path: path.display().to_string(), message: e.to_string() })?;
    load_str(&text)
}

pub fn parse_file(text: &str) -> Result<ProjectFile, ProjectError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| schema(pointer_of(e.path()), e.inner()))
}

pub fn load_str(text: &str) -> Result<ProjectSpec, ProjectError> {
    ProjectSpec::from_file(parse_file(text)?)
}

fn words(g: &LocalGroup, texts: &[String], at: &str) -> Result<Vec<FreeWord>, ProjectError> {
    texts.iter().enumerate().map(|(i, t)| g.parse(t).map_err(|e| schema(format!("{at}/{i}"), e))).collect()
}

fn build_group(def: &GroupSpec, at: &str) -> Result<LocalGroup, ProjectError> {
    let fail = |e: crate::cog::CogError| schema(at, e);
    let (g, center) = match def {
        GroupSpec::Trivial => return Ok(LocalGroup::trivial()),
        GroupSpec::Cyclic { generator, order, center } => {
            if *order == 0 {
                return Err(schema(format!("{at}/order"), "order must be positive"));
            }
            if *order > crate::cog::MAX_FINITE_ORDER {
                return Err(schema(format!("{at}/order"), "order exceeds the finite group cap"));
            }
            (try_cyclic(generator, *order).map_err(fail)?, center)
        }
        GroupSpec::FreeAbelian { generators, center } => {
            (LocalGroup::free_abelian(generators.clone()).map_err(fail)?, center)
        }
        GroupSpec::Finite { generators, permutations, center } => {
            let degree = permutations.first().map_or(0, Vec::len);
            let fg = FiniteGroup::from_permutations(degree, permutations.clone())
                .map_err(|e| schema(format!("{at}/permutations"), e))?;
            (LocalGroup::finite(generators.clone(), fg).map_err(fail)?, center)
        }
        GroupSpec::Formal { generators, relators, center } => {
            let names = LocalGroup::free_abelian(generators.clone()).map_err(fail)?;
            let rels = words(&names, relators, &format!("{at}/relators"))?;
            (LocalGroup::formal(generators.clone(), rels).map_err(fail)?, center)
        }
    };
    let c = words(&g, center, &format!("{at}/center"))?;
    g.with_center(c).map_err(|e| schema(format!("{at}/center"), e))
}

fn build_system(c: &CoxeterSpec) -> Result<CoxeterSystem, ProjectError> {
    let m = CoxeterMatrix::from_codes(&c.matrix).map_err(|e| {
        let at = match &e {
            CoxeterError::BadEntry { i, j, .. } | CoxeterError::NotSymmetric { i, j } => {
                format!("/coxeter/matrix/{i}/{j}")
            }
            CoxeterError::BadDiagonal { i, .. } => format!("/coxeter/matrix/{i}/{i}"),
            CoxeterError::Ragged { row, .. } => format!("/coxeter/matrix/{row}"),
            _ => "/coxeter/matrix".to_string(),
        };
        schema(at, e)
    })?;
    CoxeterSystem::new(m, c.generators.clone()).map_err(|e| schema("/coxeter/generators", e))
}

fn build_mirrored(def: &MirroredSpec, sys: &CoxeterSystem) -> Result<MirroredComplex, ProjectError> {
    let ids: BTreeSet<&str> = def.strata.iter().map(|s| s.id.as_str()).collect();
    for (k, (lo, up)) in def.faces.iter().enumerate() {
        for (side, id) in [(0, lo), (1, up)] {
            if !ids.contains(id.as_str()) {
                return Err(dangling(format!("/mirrored/faces/{k}/{side}"), id));
            }
        }
    }
    for (k, (label, strata)) in def.mirrors.iter().flatten().enumerate() {
        if !sys.labels().contains(label) {
            return Err(dangling(format!("/mirrored/mirrors/{k}/0"), label));
        }
        for (j, id) in strata.iter().enumerate() {
            if !ids.contains(id.as_str()) {
                return Err(dangling(format!("/mirrored/mirrors/{k}/1/{j}"), id));
            }
        }
    }
    let mx = def.build().map_err(|e| schema("/mirrored", e))?;
    mx.check_system(sys).map_err(|e| schema("/mirrored/mirrors", e))?;
    Ok(mx)
}

fn build_assignment(def: &GroupsSpec, mx: &MirroredComplex) -> Result<GroupAssignment, ProjectError> {
    let ids: BTreeSet<&str> = (0..mx.complex().len()).map(|i| mx.complex().id(i)).collect();
    let mut a = GroupAssignment::default();
    for (ty, g) in &def.types {
        let at = format!("/groups/types/{}", ty.replace('~', "~0").replace('/', "~1"));
        if !ids.contains(ty.as_str()) {
            return Err(dangling(at, ty));
        }
        a.groups.insert(ty.clone(), build_group(g, &at)?);
    }
    if let Some(missing) = ids.iter().find(|id| !a.groups.contains_key(**id)) {
        return Err(schema("/groups/types", format!("stratum {missing:?} has no group")));
    }
    for (k, m) in def.maps.iter().enumerate() {
        let at = format!("/groups/maps/{k}");
        let (Some(lo), Some(up)) = (a.groups.get(&m.lower), a.groups.get(&m.upper)) else {
            let name = if a.groups.contains_key(&m.lower) { &m.upper } else { &m.lower };
            return Err(dangling(at, name));
        };
        if m.images.len() != lo.generator_count() {
            return Err(schema(
                format!("{at}/images"),
                format!("{} images for {} generators", m.images.len(), lo.generator_count()),
            ));
        }
        let map = GroupMap::parse(&m.images, up).map_err(|e| schema(format!("{at}/images"), e))?;
        a.maps.insert((m.lower.clone(), m.upper.clone()), map);
    }
    Ok(a)
}

fn build_cog(def: &CogSpec) -> Result<ComplexOfGroups, ProjectError> {
    let names: Vec<String> = def.vertices.iter().map(|v| v.name.clone()).collect();
    let index: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
    if index.len() != names.len() {
        return Err(schema("/complex_of_groups/vertices", "duplicate vertex name"));
    }
    let groups: Vec<LocalGroup> = def
        .vertices
        .iter()
        .enumerate()
        .map(|(i, v)| build_group(&v.group, &format!("/complex_of_groups/vertices/{i}/group")))
        .collect::<Result<_, _>>()?;
    let mut edges = Vec::new();
    let mut maps = Vec::new();
    for (k, e) in def.edges.iter().enumerate() {
        let at = format!("/complex_of_groups/edges/{k}");
        let s = *index.get(e.source.as_str()).ok_or_else(|| dangling(format!("{at}/source"), &e.source))?;
        let t = *index.get(e.target.as_str()).ok_or_else(|| dangling(format!("{at}/target"), &e.target))?;
        if e.images.len() != groups[s].generator_count() {
            return Err(schema(
                format!("{at}/images"),
                format!("{} images for {} generators", e.images.len(), groups[s].generator_count()),
            ));
        }
        maps.push(GroupMap::parse(&e.images, &groups[t]).map_err(|err| schema(format!("{at}/images"), err))?);
        edges.push(ScwolEdge { source: s, target: t });
    }
    let composites: BTreeMap<(usize, usize), usize> = match &def.composites {
        Some(list) => list.iter().map(|&(a, b, c)| ((a, b), c)).collect(),
        None => {
            let mut out = BTreeMap::new();
            for (a, ea) in edges.iter().enumerate() {
                for (b, eb) in edges.iter().enumerate() {
                    if eb.target != ea.source {
                        continue;
                    }
                    let found: Vec<usize> = (0..edges.len())
                        .filter(|&c| edges[c].source == eb.source && edges[c].target == ea.target)
                        .collect();
                    if found.len() != 1 {
                        return Err(schema(
                            "/complex_of_groups/composites",
                            format!("composite of edges ({a}, {b}) is not determined; list composites explicitly"),
                        ));
                    }
                    out.insert((a, b), found[0]);
                }
            }
            out
        }
    };
    let scwol = Scwol::new(names, edges.clone(), composites).map_err(|e| schema("/complex_of_groups/edges", e))?;
    let mut twists = BTreeMap::new();
    for (k, t) in def.twisting.iter().enumerate() {
        let at = format!("/complex_of_groups/twisting/{k}");
        let (a, _) = t.pair;
        if a >= edges.len() || t.pair.1 >= edges.len() {
            return Err(schema(format!("{at}/pair"), "edge index out of range"));
        }
        let g = &groups[edges[a].target];
        twists.insert(t.pair, g.parse(&t.element).map_err(|e| schema(format!("{at}/element"), e))?);
    }
    ComplexOfGroups::new(scwol, groups, maps, twists).map_err(|e| schema("/complex_of_groups", e))
}

fn build_link(def: &LinkSpec, at: &str) -> Result<MetricNerve, ProjectError> {
    let c = SimplicialComplex::from_maximal(def.labels.clone(), def.simplices.clone())
        .map_err(|e| schema(format!("{at}/simplices"), e))?;
    let mut lengths: BTreeMap<(usize, usize), EdgeLength> = BTreeMap::new();
    for e in c.edges() {
        lengths.insert(e, EdgeLength::Radians(PI / 2.0));
    }
    for (k, l) in def.lengths.iter().enumerate() {
        let (a, b) = (l.edge.0.min(l.edge.1), l.edge.0.max(l.edge.1));
        let value = match (l.coxeter, l.radians) {
            (Some(m), None) => EdgeLength::Coxeter(m),
            (None, Some(r)) => EdgeLength::Radians(r),
            _ => return Err(schema(format!("{at}/lengths/{k}"), "give exactly one of coxeter, radians")),
        };
        if lengths.insert((a, b), value).is_none() {
            return Err(schema(format!("{at}/lengths/{k}/edge"), "not an edge of the link"));
        }
    }
    MetricNerve::new(c, lengths).map_err(|e| schema(format!("{at}/lengths"), e))
}

impl ProjectSpec {
    pub fn from_file(f: ProjectFile) -> Result<Self, ProjectError> {
        if f.version != SCHEMA_VERSION {
            return Err(schema("/version", format!("unsupported version {}, expected {SCHEMA_VERSION}", f.version)));
        }
        let system = build_system(&f.coxeter)?;
        let mirrored = f.mirrored.as_ref().map(|m| build_mirrored(m, &system)).transpose()?;
        let assignment = match (&f.groups, &mirrored) {
            (Some(g), Some(mx)) => Some(build_assignment(g, mx)?),
            (Some(_), None) => return Err(schema("/groups", "group assignment needs a mirrored complex")),
            _ => None,
        };
        let complex_of_groups = f.complex_of_groups.as_ref().map(build_cog).transpose()?;
        let action = f
            .action
            .map(|images| PermutationAction::new(&system, images).map_err(|e| schema("/action", e)))
            .transpose()?;
        let links = f
            .links
            .as_ref()
            .map(|ls| {
                ls.iter()
                    .map(|(name, l)| Ok((name.clone(), build_link(l, &format!("/links/{name}"))?)))
                    .collect::<Result<BTreeMap<_, _>, ProjectError>>()
                    .map(|links| ExplicitLinks { links })
            })
            .transpose()?;
        let presentation = f
            .presentation
            .as_deref()
            .map(|t| Presentation::parse_text(t).map_err(|e| schema("/presentation", e)))
            .transpose()?;
        let caps = f.caps;
        if !(caps.tolerance > 0.0 && caps.tolerance < 1.0) {
            return Err(schema("/caps/tolerance", "tolerance must lie in (0, 1)"));
        }
        Ok(ProjectSpec {
            name: f.name,
            system,
            mirrored,
            assignment,
            complex_of_groups,
            action,
            links,
            presentation,
            fan: f.fan,
            caps,
        })
    }

    pub fn mirrored(&self) -> Result<&MirroredComplex, ProjectError> {
        self.mirrored.as_ref().ok_or(ProjectError::Missing("mirrored"))
    }

    pub fn assignment(&self) -> Result<&GroupAssignment, ProjectError> {
        self.assignment.as_ref().ok_or(ProjectError::Missing("groups"))
    }

    pub fn action(&self) -> Result<&PermutationAction, ProjectError> {
        self.action.as_ref().ok_or(ProjectError::Missing("action"))
    }

    pub fn presentation(&self) -> Result<&Presentation, ProjectError> {
        self.presentation.as_ref().ok_or(ProjectError::Missing("presentation"))
    }

    pub fn fan(&self) -> Result<&FanSpec, ProjectError> {
        self.fan.as_ref().ok_or(ProjectError::Missing("fan"))
    }
}
