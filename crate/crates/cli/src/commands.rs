use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use serde_json::json;

use gluing_core::cog::{
    abelianization, from_gluing, pi1_presentation, tietze_simplify_with, ComplexOfGroups, Presentation, TietzeOptions,
};
use gluing_core::construction::{
    build_u, davis_complex, orbifold_euler_characteristic, quotient_complex, verify_sigma_properties, ChamberGraph,
    GluedComplex,
};
use gluing_core::curvature::{
    check_nonpositive_curvature, develop_gallery, CoxeterNerveLinks, DevelopmentLinks, LinkProvider, Verdict,
};
use gluing_core::project::{self, Caps, ProjectSpec};
use gluing_core::twists::twist_group_report;

use crate::LinkSource;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Nerve,
    Ball,
    Glue,
    Sigma,
    Chambers,
    Euler,
    Quotient,
    CogValidate,
    Pi1,
    Abelianize,
    CheckNpc,
    Twists,
    Develop,
}

impl Command {
    fn name(self) -> String {
        self.to_possible_value().expect("no skipped variants").get_name().to_string()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Overrides {
    pub radius: Option<usize>,
    pub max_elements: Option<usize>,
    pub sigma_radius: Option<usize>,
    pub tietze_budget: Option<usize>,
    pub links: LinkSource,
}

impl Overrides {
    fn apply(&self, caps: &mut Caps) {
        if self.radius.is_some() {
            caps.radius = self.radius;
        }
        caps.max_elements = self.max_elements.unwrap_or(caps.max_elements);
        caps.sigma_radius = self.sigma_radius.unwrap_or(caps.sigma_radius);
        caps.tietze_budget = self.tietze_budget.unwrap_or(caps.tietze_budget);
    }
}

/// Files to write and a line of summary per fact.
struct Outcome {
    artifacts: Vec<(String, String)>,
    summary: Vec<String>,
    ok: bool,
}

impl Outcome {
    fn new(ok: bool) -> Self {
        Outcome { artifacts: Vec::new(), summary: Vec::new(), ok }
    }

    fn file(mut self, command: Command, ext: &str, contents: String) -> Self {
        self.artifacts.push((format!("{}.{ext}", command.name()), contents));
        self
    }

    fn line(mut self, s: impl Into<String>) -> Self {
        self.summary.push(s.into());
        self
    }
}

fn json_text(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

/// Loads the project, runs one command and writes its artifacts. `Ok(false)`
/// is a logical failure; `Err` is an input error.
pub fn execute(command: Command, project_path: &Path, out: &Path, overrides: &Overrides) -> Result<bool> {
    let mut proj = project::load(project_path)?;
    overrides.apply(&mut proj.caps);
    let outcome = run(command, &proj, overrides.links)?;
    fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
    for (name, contents) in &outcome.artifacts {
        let path = out.join(name);
        fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
        log::info!("wrote {}", path.display());
    }
    for line in &outcome.summary {
        println!("{line}");
    }
    Ok(outcome.ok)
}

fn gluing(proj: &ProjectSpec) -> Result<GluedComplex> {
    Ok(build_u(&proj.system, proj.mirrored()?, proj.caps.radius, proj.caps.max_elements)?)
}

fn complex_of_groups(proj: &ProjectSpec) -> Result<(Option<GluedComplex>, ComplexOfGroups)> {
    if let Some(cog) = &proj.complex_of_groups {
        return Ok((None, cog.clone()));
    }
    let u = gluing(proj)?;
    let cog = from_gluing(&u, proj.assignment()?)?;
    Ok((Some(u), cog))
}

fn simplify(p: &Presentation, caps: &Caps) -> Presentation {
    let opts = TietzeOptions { budget: caps.tietze_budget, ..TietzeOptions::default() };
    tietze_simplify_with(p, &opts).presentation
}

fn fundamental_group(proj: &ProjectSpec) -> Result<Presentation> {
    let (_, cog) = complex_of_groups(proj)?;
    let tree = cog.scwol().default_spanning_tree()?;
    Ok(simplify(&pi1_presentation(&cog, &tree)?, &proj.caps))
}

fn run(command: Command, proj: &ProjectSpec, links: LinkSource) -> Result<Outcome> {
    let sys = &proj.system;
    let caps = &proj.caps;
    Ok(match command {
        Command::Nerve => {
            let n = sys.nerve();
            Outcome::new(true).line(format!("nerve: {} vertices, f-vector {:?}", n.vertex_count(), n.f_vector())).file(
                command,
                "json",
                json_text(&n),
            )
        }
        Command::Ball => {
            let ball = sys.enumerate_ball(caps.radius, caps.max_elements)?;
            let elements: Vec<String> = ball.elements().iter().map(|w| sys.format_word(w)).collect();
            let doc = json!({
                "radius": ball.radius(),
                "complete": ball.is_complete(),
                "size": ball.len(),
                "elements": elements,
            });
            Outcome::new(true)
                .line(format!(
                    "ball: {} elements{}",
                    ball.len(),
                    if ball.is_complete() { " (whole group)" } else { "" }
                ))
                .file(command, "json", json_text(&doc))
        }
        Command::Glue => {
            let u = gluing(proj)?;
            let chambers = u.chamber_cells().count();
            Outcome::new(true)
                .line(format!("chambers: {chambers}"))
                .line(format!("cells: {}, f-vector {:?}", u.len(), u.f_vector()))
                .file(command, "json", u.to_json() + "\n")
        }
        Command::Sigma => {
            let sigma = davis_complex(sys, Some(caps.sigma_radius), caps.max_elements)?;
            let report = verify_sigma_properties(&sigma, sys)?;
            let mut o = Outcome::new(report.passed()).line(format!("sigma: {} cells", sigma.len()));
            for c in &report.checks {
                o = o.line(format!("  {}: {} ({} checked)", c.name, if c.passed { "pass" } else { "FAIL" }, c.checked));
            }
            o.file(command, "json", json_text(&report))
        }
        Command::Chambers => {
            let u = gluing(proj)?;
            let g = ChamberGraph::build(&u)?;
            let edges: Vec<_> =
                g.edges().iter().map(|e| json!({"a": e.a, "b": e.b, "type": e.ty, "generator": e.generator})).collect();
            let chambers: Vec<String> = g.chambers().iter().map(|w| sys.format_word(w)).collect();
            let doc = json!({"chambers": chambers, "edges": edges, "connected": g.is_connected()});
            Outcome::new(true)
                .line(format!("chamber graph: {} chambers, {} walls", g.node_count(), g.edge_count()))
                .file(command, "json", json_text(&doc))
                .file(command, "dot", g.to_dot(|w| sys.format_word(w)))
        }
        Command::Euler => {
            let mx = proj.mirrored()?;
            let u = gluing(proj)?;
            let chi = u.euler_characteristic()?;
            let orb = orbifold_euler_characteristic(sys, mx)?;
            let doc = json!({
                "chambers": u.chamber_cells().count(),
                "euler_characteristic": chi,
                "chamber_euler_characteristic": mx.complex().euler_characteristic(),
                "orbifold_euler_characteristic": orb.to_string(),
            });
            Outcome::new(true)
                .line(format!("euler characteristic: {chi}"))
                .line(format!("orbifold euler characteristic: {orb}"))
                .file(command, "json", json_text(&doc))
        }
        Command::Quotient => {
            let u = gluing(proj)?;
            let (q, report) = quotient_complex(&u, sys, proj.action()?)?;
            Outcome::new(true)
                .line(format!("quotient: {} chambers, {} cells", report.chambers, q.len()))
                .line(format!("free on cells: {}", report.free_on_cells))
                .file(command, "json", q.to_json() + "\n")
                .file(command, "report.json", json_text(&report))
        }
        Command::CogValidate => {
            let (_, cog) = complex_of_groups(proj)?;
            let report = cog.validate();
            let mut o = Outcome::new(report.passed());
            for c in &report.conditions {
                o = o.line(format!("{}: {:?} ({} checked)", c.name, c.status, c.checked));
                for f in &c.failures {
                    o = o.line(format!("  failed: {f}"));
                }
            }
            o.file(command, "json", report.to_json() + "\n")
        }
        Command::Pi1 => {
            let p = fundamental_group(proj)?;
            Outcome::new(true)
                .line(format!("pi1: {} generators, {} relators", p.generator_count(), p.relators().len()))
                .file(command, "txt", p.to_text())
        }
        Command::Abelianize => {
            let p = match proj.presentation() {
                Ok(p) => simplify(p, caps),
                Err(_) => fundamental_group(proj)?,
            };
            let ab = abelianization(&p)?;
            Outcome::new(true).line(format!("abelianization: {ab}")).file(command, "txt", format!("{ab}\n"))
        }
        Command::CheckNpc => {
            let (u, cog) = complex_of_groups(proj)?;
            let coxeter_links;
            let provider: &dyn LinkProvider = match (links, &proj.links, &u) {
                (LinkSource::Development, _, _) => &DevelopmentLinks,
                (LinkSource::Auto, Some(l), _) => l,
                (LinkSource::Auto, None, Some(u)) => {
                    coxeter_links = CoxeterNerveLinks::for_gluing(sys, u);
                    &coxeter_links
                }
                (LinkSource::Auto, None, None) => bail!("explicit complex of groups needs a links section"),
            };
            let report = check_nonpositive_curvature(&cog, provider);
            let verdict = serde_json::to_value(report.verdict)?.as_str().unwrap_or_default().to_string();
            let mut o = Outcome::new(report.verdict == Verdict::Developable).line(format!("verdict: {verdict}"));
            for c in report.failing() {
                o = o.line(format!("  {}: {:?} witness [{}]", c.vertex, c.status, c.witness.join(", ")));
            }
            o.file(command, "json", report.to_json() + "\n")
        }
        Command::Twists => {
            let u = gluing(proj)?;
            let cog = from_gluing(&u, proj.assignment()?)?;
            let g = ChamberGraph::build(&u)?;
            let report = twist_group_report(&u, &cog, &g)?;
            let summary = report.summary();
            let mut o = Outcome::new(true);
            for l in summary.lines() {
                o = o.line(l);
            }
            o.file(command, "json", report.to_json() + "\n").file(command, "txt", summary)
        }
        Command::Develop => {
            let fan = proj.fan()?;
            let report = develop_gallery(&fan.triangles, &fan.gamma)?;
            let ok = report.max_residual <= caps.tolerance;
            Outcome::new(ok)
                .line(format!("total angle: {:.12}", report.total_angle))
                .line(format!("injective: {}", report.injective))
                .line(format!("max residual: {:.3e}", report.max_residual))
                .file(command, "json", report.to_json() + "\n")
        }
    })
}
