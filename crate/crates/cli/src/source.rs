use std::fs;
use std::path::Path;

use subshift::graphspeedup::{Presentation, SftPresentation, SoficPresentation};
use subshift::shiftspaces::{fixed_point_prefix, mechanical_prefix, Substitution, SturmianSpec};
use subshift::speedup::JumpFunction;
use subshift::words::{Alphabet, OrbitSegment};

use crate::CliError;

/// Where orbit segments come from.
#[derive(Debug, Clone)]
pub enum ShiftSource {
    Substitution { name: String, sub: Substitution },
    Sturmian(SturmianSpec),
    Presentation { name: String, graph: Presentation },
}

pub fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))
}

fn first_keyword(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
}

impl ShiftSource {
    pub fn resolve(spec: &str) -> Result<Self, CliError> {
        match spec {
            "fibonacci" => {
                return Ok(ShiftSource::Substitution { name: spec.into(), sub: Substitution::fibonacci() })
            }
            "thue-morse" => {
                return Ok(ShiftSource::Substitution { name: spec.into(), sub: Substitution::thue_morse() })
            }
            "golden-mean" => {
                return Ok(ShiftSource::Presentation {
                    name: spec.into(),
                    graph: Presentation::Sft(SftPresentation::golden_mean()),
                })
            }
            "even" => {
                return Ok(ShiftSource::Presentation {
                    name: spec.into(),
                    graph: Presentation::Sofic(SoficPresentation::even_shift()),
                })
            }
            _ => {}
        }
        if spec.starts_with("sturmian:") {
            return Ok(ShiftSource::Sturmian(SturmianSpec::parse(spec)?));
        }
        if !Path::new(spec).exists() {
            return Err(CliError::Usage(format!(
                "unknown shift `{spec}` (expected fibonacci, thue-morse, golden-mean, even, sturmian:..., or a file)"
            )));
        }
        let text = read(spec)?;
        let name = spec.to_string();
        match first_keyword(&text) {
            Some("vertex") | Some("edge") => {
                Ok(ShiftSource::Presentation { name, graph: Presentation::parse(&text)? })
            }
            _ => Ok(ShiftSource::Substitution { name, sub: Substitution::parse(&text)? }),
        }
    }

    pub fn name(&self) -> String {
        match self {
            ShiftSource::Substitution { name, .. } | ShiftSource::Presentation { name, .. } => name.clone(),
            ShiftSource::Sturmian(s) => {
                let q: Vec<String> = s.partial_quotients().iter().map(u64::to_string).collect();
                format!("sturmian:{}@{}", q.join(","), s.intercept())
            }
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            ShiftSource::Substitution { sub, .. } => sub.alphabet().clone(),
            ShiftSource::Sturmian(_) => Alphabet::binary(),
            ShiftSource::Presentation { graph, .. } => graph.labels().clone(),
        }
    }

    /// A segment of `length` letters: a fixed-point prefix, a mechanical word,
    /// or a seeded random walk on the presentation.
    pub fn segment(&self, length: usize, seed: u64, seed_symbol: Option<&str>) -> Result<OrbitSegment, CliError> {
        Ok(match self {
            ShiftSource::Substitution { sub, .. } => {
                let letter = match seed_symbol {
                    Some(s) => sub.alphabet().letter(s)?,
                    None => sub.default_seed().ok_or_else(|| {
                        CliError::Usage("substitution has no self-prolongable letter; pass --seed-symbol".into())
                    })?,
                };
                fixed_point_prefix(sub, letter, length)?
            }
            ShiftSource::Sturmian(spec) => mechanical_prefix(spec, length)?,
            ShiftSource::Presentation { graph, .. } => graph.random_walk(length, seed)?,
        })
    }

    pub fn substitution(&self) -> Option<&Substitution> {
        match self {
            ShiftSource::Substitution { sub, .. } => Some(sub),
            _ => None,
        }
    }

    pub fn presentation(&self) -> Option<&Presentation> {
        match self {
            ShiftSource::Presentation { graph, .. } => Some(graph),
            _ => None,
        }
    }
}

/// A jump given as a file, as `first-return:<radius>`, or inline with `;`
/// separating lines (`constant 2`, `K 0;0 1;1 2`).
pub fn resolve_jump(spec: &str, segment: &OrbitSegment) -> Result<JumpFunction, CliError> {
    if let Some(r) = spec.strip_prefix("first-return:") {
        let radius = r
            .parse()
            .map_err(|_| CliError::Usage(format!("bad first-return radius `{r}`")))?;
        return Ok(JumpFunction::first_return(segment, radius)?);
    }
    let text = if Path::new(spec).is_file() { read(spec)? } else { spec.replace(';', "\n") };
    Ok(JumpFunction::parse(&text, segment.alphabet())?)
}
