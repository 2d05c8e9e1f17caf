use std::fmt;

use serde::{Deserialize, Serialize};

use super::word::FreeWord;
use super::CogError;

/// A finite presentation `<generators | relators>`.
///
/// Text format: an optional run of `#` comment lines, then a line
/// `generators: a, b, c`, then one relator per line. A line `u = v` stands
/// for the relator `u v^-1`. Blank lines and `#` comments are ignored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<FreeWord>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationJson {
    generators: Vec<String>,
    relators: Vec<String>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<FreeWord>) -> Result<Self, CogError> {
        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() || g == "1" || !g.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
                return Err(CogError::Presentation(format!("bad generator name {g:?}")));
            }
            if generators[..i].contains(g) {
                return Err(CogError::Presentation(format!("duplicate generator {g:?}")));
            }
        }
        if relators.iter().any(|r| r.max_generator().is_some_and(|g| g >= generators.len())) {
            return Err(CogError::Presentation("relator uses an undeclared generator".into()));
        }
        Ok(Presentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn format_word(&self, w: &FreeWord) -> String {
        w.format(&self.generators)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("generators: {}\n", self.generators.join(", "));
        for r in &self.relators {
            out.push_str(&self.format_word(r));
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, CogError> {
        let mut lines =
            text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).enumerate().filter(|(_, l)| !l.is_empty());
        let (_, header) = lines.next().ok_or_else(|| CogError::Presentation("missing generators line".into()))?;
        let gens = header
            .strip_prefix("generators:")
            .ok_or_else(|| CogError::Presentation("first line must start with \"generators:\"".into()))?;
        let generators: Vec<String> = gens.split(',').map(|g| g.trim().to_string()).filter(|g| !g.is_empty()).collect();
        let mut relators = Vec::new();
        for (n, line) in lines {
            let at = |e: super::WordParseError| CogError::Presentation(format!("line {}: {e}", n + 1));
            let r = match line.split_once('=') {
                Some((lhs, rhs)) => {
                    let l = FreeWord::parse(lhs, &generators).map_err(at)?;
                    let r = FreeWord::parse(rhs, &generators).map_err(at)?;
                    l.mul(&r.inverse())
                }
                None => FreeWord::parse(line, &generators).map_err(at)?,
            };
            relators.push(r);
        }
        Presentation::new(generators, relators)
    }

    pub fn to_json(&self) -> String {
        let json = PresentationJson {
            generators: self.generators.clone(),
            relators: self.relators.iter().map(|r| self.format_word(r)).collect(),
        };
        serde_json::to_string_pretty(&json).expect("serialisable")
    }

    pub fn from_json(text: &str) -> Result<Self, CogError> {
        let json: PresentationJson = serde_json::from_str(text).map_err(|e| CogError::Presentation(e.to_string()))?;
        let relators =
            json.relators.iter().map(|r| FreeWord::parse(r, &json.generators)).collect::<Result<Vec<_>, _>>()?;
        Presentation::new(json.generators, relators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}
