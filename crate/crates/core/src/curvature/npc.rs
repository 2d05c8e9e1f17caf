use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::cog::ComplexOfGroups;
use crate::construction::GluedComplex;
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, GenSet};

use super::development::local_development;
use super::metric::{metric_flag_violation, MetricNerve};

/// Supplies the piecewise spherical link of each vertex of a complex of
/// groups. An `Err` marks the vertex as undecidable.
pub trait LinkProvider {
    fn link(&self, cog: &ComplexOfGroups, v: usize) -> Result<MetricNerve, String>;
}

/// Links given explicitly, keyed by vertex name.
#[derive(Clone, Debug, Default)]
pub struct ExplicitLinks {
    pub links: BTreeMap<String, MetricNerve>,
}

impl LinkProvider for ExplicitLinks {
    fn link(&self, cog: &ComplexOfGroups, v: usize) -> Result<MetricNerve, String> {
        let name = &cog.scwol().vertices()[v];
        self.links.get(name).cloned().ok_or_else(|| format!("no link supplied for {name}"))
    }
}

/// The Coxeter parabolic `(W_T, T)` as a system of its own.
pub fn parabolic_system(sys: &CoxeterSystem, t: GenSet) -> CoxeterSystem {
    let gens: Vec<usize> = t.iter().collect();
    let mut m = CoxeterMatrix::uniform(gens.len(), crate::coxeter::Order::Infinite);
    for (i, &s) in gens.iter().enumerate() {
        for (j, &u) in gens.iter().enumerate().skip(i + 1) {
            m.set(i, j, sys.m(s, u));
        }
    }
    let labels = gens.iter().map(|&s| sys.label(s).to_string()).collect();
    CoxeterSystem::new(m, labels).expect("restriction of a valid system")
}

/// Links of a Coxeter-derived gluing: a cell with mirror set `T` gets the
/// nerve of `(W_T, T)` with lengths `pi - pi/m`.
#[derive(Clone, Debug)]
pub struct CoxeterNerveLinks {
    links: BTreeMap<String, MetricNerve>,
}

impl CoxeterNerveLinks {
    pub fn for_gluing(sys: &CoxeterSystem, u: &GluedComplex) -> Self {
        let links = (0..u.len())
            .map(|c| {
                let t = u.types()[u.cell(c).ty].mirror_set;
                (crate::cog::vertex_name(u, c), MetricNerve::from_coxeter(&parabolic_system(sys, t)))
            })
            .collect();
        CoxeterNerveLinks { links }
    }
}

impl LinkProvider for CoxeterNerveLinks {
    fn link(&self, cog: &ComplexOfGroups, v: usize) -> Result<MetricNerve, String> {
        ExplicitLinks { links: self.links.clone() }.link(cog, v)
    }
}

/// Links of the lifted vertices in their local developments, every edge of
/// length `pi/2`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DevelopmentLinks;

impl LinkProvider for DevelopmentLinks {
    fn link(&self, cog: &ComplexOfGroups, v: usize) -> Result<MetricNerve, String> {
        let d = local_development(cog, v).map_err(|e| e.to_string())?;
        MetricNerve::uniform(d.link(), PI / 2.0).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Developable,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkStatus {
    MetricFlag,
    NotMetricFlag,
    Undecidable,
}

#[derive(Clone, Debug, Serialize)]
pub struct VertexCheck {
    pub vertex: String,
    pub status: LinkStatus,
    /// Labels of a pairwise-joined, positive definite set spanning no simplex.
    pub witness: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub link_vertices: usize,
    /// Whether every definiteness decision used the exact classification.
    pub exact: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NpcReport {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub vertices: Vec<VertexCheck>,
}

impl NpcReport {
    pub fn failing(&self) -> impl Iterator<Item = &VertexCheck> {
        self.vertices.iter().filter(|c| c.status != LinkStatus::MetricFlag)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn check_vertex(name: String, link: Result<MetricNerve, String>) -> VertexCheck {
    let undecidable = |reason: String, n: usize| VertexCheck {
        vertex: name.clone(),
        status: LinkStatus::Undecidable,
        witness: Vec::new(),
        reason: Some(reason),
        link_vertices: n,
        exact: false,
    };
    let mn = match link {
        Ok(mn) => mn,
        Err(reason) => return undecidable(reason, 0),
    };
    let n = mn.complex().vertex_count();
    match metric_flag_violation(&mn) {
        // Short edges put the link outside the range the test applies to.
        Err(e) => undecidable(e.to_string(), n),
        Ok(found) => VertexCheck {
            status: if found.is_some() { LinkStatus::NotMetricFlag } else { LinkStatus::MetricFlag },
            witness: found.unwrap_or_default().iter().map(|&v| mn.complex().labels()[v].clone()).collect(),
            vertex: name,
            reason: None,
            link_vertices: n,
            exact: mn.is_exact(),
        },
    }
}

/// Checks that every supplied link is metric flag. A pass certifies
/// nonpositive curvature, hence developability; any failure only leaves
/// the question open.
pub fn check_nonpositive_curvature(cog: &ComplexOfGroups, provider: &dyn LinkProvider) -> NpcReport {
    let report = cog.validate();
    let note = (!report.passed()).then(|| "complex of groups failed validation".to_string());
    let vertices: Vec<VertexCheck> = (0..cog.scwol().vertex_count())
        .map(|v| check_vertex(cog.scwol().vertices()[v].clone(), provider.link(cog, v)))
        .collect();
    let all = note.is_none() && vertices.iter().all(|c| c.status == LinkStatus::MetricFlag);
    NpcReport { verdict: if all { Verdict::Developable } else { Verdict::Unknown }, note, vertices }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cog::{from_gluing, GroupAssignment, GroupMap, LocalGroup, Scwol};
    use crate::complex::SimplicialComplex;
    use crate::construction::build_u;
    use crate::coxeter::Order;
    use crate::mirrored::shapes;

    fn hexagon() -> (CoxeterSystem, GluedComplex, ComplexOfGroups) {
        let sys = CoxeterSystem::dihedral(Order::Finite(3));
        let u = build_u(&sys, &shapes::sector(), None, 100).unwrap();
        let mut a = GroupAssignment::default();
        for t in ["X", "B1", "B2", "C"] {
            a.groups.insert(t.into(), LocalGroup::trivial());
        }
        let cog = from_gluing(&u, &a).unwrap();
        (sys, u, cog)
    }

    fn point() -> ComplexOfGroups {
        let scwol = Scwol::from_poset(vec!["p".into()], &[]).unwrap();
        ComplexOfGroups::simple(scwol, vec![LocalGroup::trivial()], Vec::<GroupMap>::new()).unwrap()
    }

    #[test]
    fn hexagon_is_developable() {
        let (sys, u, cog) = hexagon();
        let r = check_nonpositive_curvature(&cog, &CoxeterNerveLinks::for_gluing(&sys, &u));
        assert_eq!(r.verdict, Verdict::Developable);
        assert!(r.vertices.iter().all(|c| c.exact));
        let corner = r.vertices.iter().find(|c| c.vertex == "C:e").unwrap();
        assert_eq!(corner.link_vertices, 2);
        assert_eq!(check_nonpositive_curvature(&cog, &DevelopmentLinks).verdict, Verdict::Developable);
    }

    #[test]
    fn planted_empty_triangle_is_unknown() {
        let labels: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let tri = SimplicialComplex::from_maximal(labels, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let links =
            ExplicitLinks { links: BTreeMap::from([("p".to_string(), MetricNerve::uniform(tri, PI / 2.0).unwrap())]) };
        let r = check_nonpositive_curvature(&point(), &links);
        assert_eq!(r.verdict, Verdict::Unknown);
        assert_eq!(r.vertices[0].status, LinkStatus::NotMetricFlag);
        assert_eq!(r.vertices[0].witness, ["a", "b", "c"]);
        assert!(r.to_json().contains("\"UNKNOWN\""));
    }

    #[test]
    fn single_vertex_is_vacuously_developable() {
        let r = check_nonpositive_curvature(&point(), &DevelopmentLinks);
        assert_eq!(r.verdict, Verdict::Developable);
        assert_eq!(r.vertices[0].link_vertices, 0);
    }

    #[test]
    fn missing_link_is_undecidable() {
        let r = check_nonpositive_curvature(&point(), &ExplicitLinks::default());
        assert_eq!(r.verdict, Verdict::Unknown);
        assert_eq!(r.vertices[0].status, LinkStatus::Undecidable);
    }

    #[test]
    fn parabolic_restriction() {
        let sys = CoxeterSystem::with_default_labels(CoxeterMatrix::linear(&[3, 4]));
        let p = parabolic_system(&sys, GenSet::singleton(1).with(2));
        assert_eq!(p.rank(), 2);
        assert_eq!(p.m(0, 1), Order::Finite(4));
        assert_eq!(p.labels(), &sys.labels()[1..]);
    }
}
