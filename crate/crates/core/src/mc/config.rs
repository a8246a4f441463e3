//! Scenario files.
//!
//! ```text
//! # small Gaussian sample
//! [normal-n9]
//! generator = normal(3, 2)
//! n = 9
//! target = mean
//! methods = gaussian, general
//! replications = 20000
//! ```
//!
//! One scenario per `[name]` section; a file without any header holds a
//! single scenario named `default`. Keys: `generator`, `generator2`,
//! `n`/`n1`, `n2`, `alpha`, `replications`/`reps`, `target`, `methods`,
//! `ratio_mode`. Generator parameters accept plain numbers or `sqrt(x)`.

use std::fmt;

use super::{parse_target, Generator, MethodTag, ScenarioConfig, DEFAULT_REPLICATIONS};
use crate::onesample::Target;
use crate::twosample::RatioNormalization;

#[derive(Debug, Clone, PartialEq)]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ConfigError {}

fn err(line: usize, message: impl Into<String>) -> ConfigError {
    ConfigError {
        line,
        message: message.into(),
    }
}

#[derive(Default)]
struct Draft {
    name: String,
    line: usize,
    generator: Option<Generator>,
    generator2: Option<Generator>,
    n1: Option<usize>,
    n2: Option<usize>,
    alpha: Option<f64>,
    replications: Option<usize>,
    target: Option<Target>,
    methods: Option<Vec<MethodTag>>,
    ratio_mode: Option<RatioNormalization>,
    touched: bool,
}

impl Draft {
    fn new(name: &str, line: usize) -> Self {
        Draft {
            name: name.to_string(),
            line,
            ..Default::default()
        }
    }

    fn finish(self) -> Result<ScenarioConfig, ConfigError> {
        let line = self.line;
        let generator = self
            .generator
            .ok_or_else(|| err(line, format!("scenario {}: missing generator", self.name)))?;
        let n1 = self
            .n1
            .ok_or_else(|| err(line, format!("scenario {}: missing n", self.name)))?;
        let target = self
            .target
            .ok_or_else(|| err(line, format!("scenario {}: missing target", self.name)))?;
        let methods = self.methods.unwrap_or_else(|| match target {
            Target::MeanDiff => vec![MethodTag::Gaussian, MethodTag::Welch, MethodTag::General],
            _ => vec![MethodTag::Gaussian, MethodTag::General],
        });
        let cfg = ScenarioConfig {
            name: self.name,
            generator,
            generator2: self.generator2,
            n1,
            n2: self.n2,
            alpha: self.alpha.unwrap_or(0.05),
            replications: self.replications.unwrap_or(DEFAULT_REPLICATIONS),
            target,
            methods,
            ratio_mode: self.ratio_mode.unwrap_or_default(),
        };
        cfg.validate()
            .map_err(|e| err(line, format!("scenario {}: {e}", cfg.name)))?;
        Ok(cfg)
    }
}

pub fn parse_scenarios(text: &str) -> Result<Vec<ScenarioConfig>, ConfigError> {
    let mut out = Vec::new();
    let mut draft = Draft::new("default", 1);
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .map(str::trim)
                .filter(|n| !n.is_empty())
                .ok_or_else(|| err(lineno, format!("malformed section header {line:?}")))?;
            let previous = std::mem::replace(&mut draft, Draft::new(name, lineno));
            if previous.touched || previous.name != "default" {
                out.push(previous.finish()?);
            }
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| err(lineno, format!("expected key = value, got {line:?}")))?;
        draft.touched = true;
        let bad = |what: &str| err(lineno, format!("invalid {what} {value:?}"));
        match key {
            "generator" => draft.generator = Some(parse_generator(value).map_err(|m| err(lineno, m))?),
            "generator2" => {
                draft.generator2 = Some(parse_generator(value).map_err(|m| err(lineno, m))?)
            }
            "n" | "n1" => draft.n1 = Some(value.parse().map_err(|_| bad("sample size"))?),
            "n2" => draft.n2 = Some(value.parse().map_err(|_| bad("sample size"))?),
            "alpha" => draft.alpha = Some(value.parse().map_err(|_| bad("alpha"))?),
            "replications" | "reps" => {
                draft.replications = Some(value.parse().map_err(|_| bad("replication count"))?)
            }
            "target" => draft.target = Some(parse_target(value).map_err(|e| err(lineno, e.to_string()))?),
            "methods" => {
                let methods = value
                    .split(',')
                    .map(|m| m.trim().parse::<MethodTag>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| err(lineno, e.to_string()))?;
                draft.methods = Some(methods);
            }
            "ratio_mode" | "ratio-mode" => {
                draft.ratio_mode = Some(value.parse().map_err(|e: crate::Error| err(lineno, e.to_string()))?)
            }
            other => return Err(err(lineno, format!("unknown key {other:?}"))),
        }
    }
    if draft.touched || draft.name != "default" {
        out.push(draft.finish()?);
    }
    if out.is_empty() {
        return Err(err(1, "no scenarios defined"));
    }
    Ok(out)
}

fn parse_number(token: &str) -> Result<f64, String> {
    let token = token.trim();
    let parsed = match token.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
        Some(inner) => inner.trim().parse::<f64>().map(f64::sqrt),
        None => token.parse::<f64>(),
    };
    parsed
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| format!("invalid number {token:?}"))
}

fn parse_generator(spec: &str) -> Result<Generator, String> {
    let (name, args) = spec
        .split_once('(')
        .and_then(|(n, rest)| rest.trim_end().strip_suffix(')').map(|a| (n.trim(), a)))
        .ok_or_else(|| format!("malformed generator {spec:?}; expected name(args)"))?;
    // split on commas outside of sqrt(...)
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0usize, 0usize);
    for (i, c) in args.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                parts.push(&args[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&args[start..]);
    let two = |parts: &[&str]| -> Result<(f64, f64), String> {
        match parts {
            [a, b] => Ok((parse_number(a)?, parse_number(b)?)),
            _ => Err(format!("generator {name} takes two parameters")),
        }
    };
    let generator = match name {
        "normal" => {
            let (mean, sd) = two(&parts)?;
            Generator::Normal { mean, sd }
        }
        "lognormal" => {
            let (mu, sigma) = two(&parts)?;
            Generator::LogNormal { mu, sigma }
        }
        "gamma" => {
            let (shape, scale) = two(&parts)?;
            Generator::Gamma { shape, scale }
        }
        "dataset" => Generator::FixedDataset(args.trim().to_string()),
        other => return Err(format!("unknown generator {other:?}")),
    };
    generator.validate().map_err(|e| e.to_string())?;
    Ok(generator)
}
