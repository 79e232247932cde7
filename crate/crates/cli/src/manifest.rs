// SPDX-License-Identifier: Apache-2.0

//! Run manifests.
//!
//! ```text
//! # comment
//! [run]
//! seed = 3735928559
//! tolerance = 1e-9
//!
//! [family.3]
//! k = 1.5
//! checks = homomorphism, skew
//! samples = 50
//! ```
//!
//! Keys in `[run]`: `seed`, `tolerance`. Keys in `[family.N]`: `k`, `l`, `p`,
//! `kappa`, `lambda` (a parameter generator name or `none`), `checks` (`all`
//! or a comma list) and `samples`. Unknown keys, repeated keys and repeated
//! sections are errors.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use superheis_core::families::{FamilyParams, StandardGenerators};
use superheis_core::Generator;

pub const DEFAULT_SEED: u64 = 3_735_928_559;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_SAMPLES: usize = 50;

/// The manifest run when none is given.
pub const DEFAULT_MANIFEST: &str = include_str!("../manifests/default.ini");

/// Check names, declared in report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Berezin,
    Bracket,
    Closure,
    Equivariance,
    Homomorphism,
    Shs,
    Skew,
    Unitarity,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Berezin,
        Check::Bracket,
        Check::Closure,
        Check::Equivariance,
        Check::Homomorphism,
        Check::Shs,
        Check::Skew,
        Check::Unitarity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Berezin => "berezin",
            Check::Bracket => "bracket",
            Check::Closure => "closure",
            Check::Equivariance => "equivariance",
            Check::Homomorphism => "homomorphism",
            Check::Shs => "shs",
            Check::Skew => "skew",
            Check::Unitarity => "unitarity",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyBlock {
    pub params: FamilyParams,
    pub checks: Vec<Check>,
    pub samples: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Manifest {
    pub seed: u64,
    pub tolerance: f64,
    pub families: BTreeMap<u8, FamilyBlock>,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ManifestError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn syntax(line: usize, message: impl Into<String>) -> ManifestError {
    ManifestError::Syntax { line, message: message.into() }
}

enum Section {
    Run,
    Family(u8),
}

fn parse_number<T: FromStr>(line: usize, key: &str, value: &str) -> Result<T, ManifestError> {
    value
        .parse()
        .map_err(|_| syntax(line, format!("invalid value `{value}` for `{key}`")))
}

fn parse_generator(line: usize, key: &str, value: &str) -> Result<Option<Generator>, ManifestError> {
    let s = StandardGenerators::get();
    match value {
        "none" | "0" => Ok(None),
        "kappa" => Ok(Some(s.kappa)),
        "lambda" => Ok(Some(s.lambda)),
        _ => Err(syntax(
            line,
            format!("`{key}` must be `kappa`, `lambda` or `none`, got `{value}`"),
        )),
    }
}

fn parse_checks(line: usize, value: &str) -> Result<Vec<Check>, ManifestError> {
    if value == "all" {
        return Ok(Check::ALL.to_vec());
    }
    let mut out = Vec::new();
    for item in value.split(',').map(str::trim) {
        let c: Check = item.parse().map_err(|e: String| syntax(line, e))?;
        if out.contains(&c) {
            return Err(syntax(line, format!("check `{c}` listed twice")));
        }
        out.push(c);
    }
    out.sort();
    Ok(out)
}

/// Parses and validates a manifest.
pub fn parse_manifest(text: &str) -> Result<Manifest, ManifestError> {
    let mut seed = DEFAULT_SEED;
    let mut tolerance = DEFAULT_TOLERANCE;
    let mut families: BTreeMap<u8, (usize, FamilyBlock)> = BTreeMap::new();
    let mut seen_run = false;
    let mut section: Option<Section> = None;
    let mut keys: Vec<String> = Vec::new();

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| syntax(line, "unterminated section header"))?
                .trim();
            keys.clear();
            if name == "run" {
                if seen_run {
                    return Err(syntax(line, "duplicate section [run]"));
                }
                seen_run = true;
                section = Some(Section::Run);
            } else if let Some(id) = name.strip_prefix("family.") {
                let id: u8 = id
                    .parse()
                    .ok()
                    .filter(|i| (1..=7).contains(i))
                    .ok_or_else(|| syntax(line, format!("family id must be 1..7, got `{id}`")))?;
                if families.contains_key(&id) {
                    return Err(syntax(line, format!("duplicate section [family.{id}]")));
                }
                let block = FamilyBlock {
                    params: FamilyParams::default_for(id),
                    checks: Check::ALL.to_vec(),
                    samples: DEFAULT_SAMPLES,
                };
                families.insert(id, (line, block));
                section = Some(Section::Family(id));
            } else {
                return Err(syntax(line, format!("unknown section [{name}]")));
            }
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| syntax(line, "expected `key = value`"))?;
        if value.is_empty() {
            return Err(syntax(line, format!("missing value for `{key}`")));
        }
        if keys.iter().any(|k| k == key) {
            return Err(syntax(line, format!("duplicate key `{key}`")));
        }
        keys.push(key.to_string());
        match &section {
            None => return Err(syntax(line, "key outside of a section")),
            Some(Section::Run) => match key {
                "seed" => seed = parse_number(line, key, value)?,
                "tolerance" => {
                    tolerance = parse_number(line, key, value)?;
                    if !(tolerance.is_finite() && tolerance > 0.0) {
                        return Err(syntax(line, "tolerance must be positive"));
                    }
                }
                _ => return Err(syntax(line, format!("unknown key `{key}` in [run]"))),
            },
            Some(Section::Family(id)) => {
                let block = &mut families.get_mut(id).expect("section registered").1;
                match key {
                    "k" => block.params.k = parse_number(line, key, value)?,
                    "l" => block.params.l = parse_number(line, key, value)?,
                    "p" => block.params.p = parse_number(line, key, value)?,
                    "kappa" => block.params.kappa = parse_generator(line, key, value)?,
                    "lambda" => block.params.lambda = parse_generator(line, key, value)?,
                    "checks" => block.checks = parse_checks(line, value)?,
                    "samples" => {
                        block.samples = parse_number(line, key, value)?;
                        if block.samples == 0 {
                            return Err(syntax(line, "samples must be at least 1"));
                        }
                    }
                    _ => return Err(syntax(line, format!("unknown key `{key}` in [family.{id}]"))),
                }
            }
        }
    }

    if families.is_empty() {
        return Err(ManifestError::Invalid("manifest has no family blocks".into()));
    }
    let mut out = BTreeMap::new();
    for (id, (line, block)) in families {
        block
            .params
            .validate()
            .map_err(|e| match e {
                superheis_core::Error::InvalidParams(m) => syntax(line, m),
                other => syntax(line, other.to_string()),
            })?;
        out.insert(id, block);
    }
    Ok(Manifest { seed, tolerance, families: out })
}
