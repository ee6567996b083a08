//! Distribution specs given on the command line.
//!
//! ```text
//! nb
//! uniform
//! lognormal M s
//! mixture w:M:s,w:M:s,...
//! ```

use benford::{LogNormalParams, MixtureParams};

use crate::error::CliError;

#[derive(Debug, Clone)]
pub enum DistSpec {
    Nb,
    /// Uniform on `[1, b)`.
    Uniform,
    LogNormal(LogNormalParams),
    Mixture(MixtureParams),
}

impl DistSpec {
    pub fn parse(tokens: &[String]) -> Result<Self, CliError> {
        let usage = |msg: &str| {
            CliError::Usage(format!(
                "{msg}; expected nb | uniform | lognormal M s | mixture w:M:s,...",
            ))
        };
        let (head, rest) = tokens
            .split_first()
            .ok_or_else(|| usage("missing distribution"))?;
        match (head.as_str(), rest) {
            ("nb", []) => Ok(DistSpec::Nb),
            ("uniform", []) => Ok(DistSpec::Uniform),
            ("lognormal", [m, s]) => Ok(DistSpec::LogNormal(LogNormalParams::new(
                number(m, "M")?,
                number(s, "s")?,
            )?)),
            ("mixture", [spec]) => Ok(DistSpec::Mixture(parse_mixture(spec)?)),
            _ => Err(usage(&format!(
                "cannot parse distribution '{}'",
                tokens.join(" ")
            ))),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            DistSpec::Nb => "nb".into(),
            DistSpec::Uniform => "uniform".into(),
            DistSpec::LogNormal(p) => format!("lognormal {} {}", p.location(), p.scale()),
            DistSpec::Mixture(m) => {
                let parts: Vec<String> = m
                    .components()
                    .iter()
                    .map(|(w, p)| format!("{w}:{}:{}", p.location(), p.scale()))
                    .collect();
                format!("mixture {}", parts.join(","))
            }
        }
    }
}

fn number(text: &str, what: &str) -> Result<f64, CliError> {
    text.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{what}: '{text}' is not a number")))
}

fn parse_mixture(spec: &str) -> Result<MixtureParams, CliError> {
    let mut components = Vec::new();
    for part in spec.split(',') {
        let fields: Vec<&str> = part.split(':').collect();
        let [w, m, s] = fields[..] else {
            return Err(CliError::Usage(format!(
                "mixture component '{part}' is not w:M:s"
            )));
        };
        components.push((
            number(w, "weight")?,
            LogNormalParams::new(number(m, "M")?, number(s, "s")?)?,
        ));
    }
    Ok(MixtureParams::new(components)?)
}
