//! Textual forms of the clustering options, shared by the command line and
//! configuration files.
//!
//! | option    | forms                                          |
//! |-----------|------------------------------------------------|
//! | method    | `sre`, `pddp`, `kmeans`                        |
//! | selector  | `min-count:N`, `min-df:N`, `top-mi:N`          |
//! | weighting | `raw`, `trim:N`, `tfidf`                       |
//! | cut       | `zero`, `sweep:N`                              |
//! | stop      | `leaves:K`, `ncut:T`, `min-size:M`             |

use std::fmt;
use std::str::FromStr;

use bicut_core::text::{FeatureSelector, WeightingScheme};
use bicut_core::{CutStrategy, StopRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, clap::ValueEnum)]
pub enum Method {
    Sre,
    Pddp,
    Kmeans,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Sre => "sre",
            Method::Pddp => "pddp",
            Method::Kmeans => "kmeans",
        })
    }
}

fn keyed<T: FromStr>(s: &str, key: &str) -> Option<Result<T, String>> {
    let rest = s.strip_prefix(key)?.strip_prefix(':')?;
    Some(
        rest.parse()
            .map_err(|_| format!("invalid value {rest:?} in {s:?}")),
    )
}

pub fn parse_selector(s: &str) -> Result<FeatureSelector, String> {
    None.or_else(|| keyed(s, "min-count").map(|r| r.map(FeatureSelector::MinCount)))
        .or_else(|| keyed(s, "min-df").map(|r| r.map(FeatureSelector::MinDocFreq)))
        .or_else(|| keyed(s, "top-mi").map(|r| r.map(FeatureSelector::TopMutualInformation)))
        .unwrap_or_else(|| {
            Err(format!(
                "unknown selector {s:?} (expected min-count:N, min-df:N or top-mi:N)"
            ))
        })
}

pub fn parse_weighting(s: &str) -> Result<WeightingScheme, String> {
    match s {
        "raw" => Ok(WeightingScheme::RawCount),
        "tfidf" => Ok(WeightingScheme::TfIdf),
        _ => keyed(s, "trim")
            .map(|r| r.map(WeightingScheme::Trimmed))
            .unwrap_or_else(|| {
                Err(format!(
                    "unknown weighting {s:?} (expected raw, trim:N or tfidf)"
                ))
            }),
    }
}

pub fn parse_cut(s: &str) -> Result<CutStrategy, String> {
    if s == "zero" {
        return Ok(CutStrategy::ZeroSplit);
    }
    keyed(s, "sweep")
        .map(|r| r.map(|candidates| CutStrategy::SweepNcut { candidates }))
        .unwrap_or_else(|| {
            Err(format!(
                "unknown cut strategy {s:?} (expected zero or sweep:N)"
            ))
        })
}

pub fn parse_stop(s: &str) -> Result<StopRule, String> {
    None.or_else(|| keyed(s, "leaves").map(|r| r.map(StopRule::TargetLeaves)))
        .or_else(|| keyed(s, "ncut").map(|r| r.map(StopRule::NcutThreshold)))
        .or_else(|| keyed(s, "min-size").map(|r| r.map(StopRule::MinSize)))
        .unwrap_or_else(|| {
            Err(format!(
                "unknown stop rule {s:?} (expected leaves:K, ncut:T or min-size:M)"
            ))
        })
}
