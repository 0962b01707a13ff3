//! Run configuration as read from JSON and command-line flags.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Weights,
    Orbit,
    Levi,
    Cone,
    Domains,
    Verify,
}

impl Op {
    pub const ALL: [Op; 6] = [Op::Weights, Op::Orbit, Op::Levi, Op::Cone, Op::Domains, Op::Verify];

    pub fn parse(s: &str) -> Result<Op, CliError> {
        match s.trim() {
            "weights" => Ok(Op::Weights),
            "orbit" => Ok(Op::Orbit),
            "levi" => Ok(Op::Levi),
            "cone" => Ok(Op::Cone),
            "domains" => Ok(Op::Domains),
            "verify" => Ok(Op::Verify),
            "all" => Err(CliError::Config("`all` must be the only entry of ops".into())),
            other => Err(CliError::Config(format!("unknown op `{other}`"))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Op::Weights => "weights",
            Op::Orbit => "orbit",
            Op::Levi => "levi",
            Op::Cone => "cone",
            Op::Domains => "domains",
            Op::Verify => "verify",
        }
    }
}

/// `[re, im]`.
pub type Complex = [f64; 2];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineInvolution {
    pub name: String,
    /// `linear` or `antilinear`.
    pub linearity: String,
    /// Rows of the matrix in the algebra basis.
    pub matrix: Vec<Vec<Complex>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineAlgebra {
    pub labels: Vec<String>,
    /// `structure[i][j]` = coordinates of `[e_i, e_j]`.
    pub structure: Vec<Vec<Vec<Complex>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineCase {
    pub algebra: InlineAlgebra,
    pub theta: InlineInvolution,
    pub sigma1: InlineInvolution,
    pub sigma2: InlineInvolution,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CaseRef {
    Named(String),
    Inline(Box<InlineCase>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineCartan {
    /// Columns of a basis of `c` in the algebra basis.
    pub basis: Vec<Vec<Complex>>,
    pub nu: Vec<Complex>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CartanRef {
    /// `"fundamental"`.
    Keyword(String),
    /// Index into the standard menu of a catalog case.
    Menu(usize),
    Inline(InlineCartan),
}

impl Default for CartanRef {
    fn default() -> Self {
        CartanRef::Keyword("fundamental".into())
    }
}

impl CartanRef {
    pub fn parse_flag(s: &str) -> Result<Self, CliError> {
        match s {
            "fundamental" => Ok(CartanRef::default()),
            _ => s.parse().map(CartanRef::Menu).map_err(|_| CliError::Config(format!("--cartan expects `fundamental` or a menu index, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<CaseRef>,
    #[serde(default)]
    pub cartan: CartanRef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ops: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub tol_overrides: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))
    }

    /// Selected ops, sorted; missing selects all of them.
    pub fn ops(&self) -> Result<Vec<Op>, CliError> {
        let Some(list) = &self.ops else {
            return Ok(Op::ALL.to_vec());
        };
        if list.is_empty() {
            return Err(CliError::Config("invariant `ops nonempty` violated".into()));
        }
        if list.len() == 1 && list[0].trim() == "all" {
            return Ok(Op::ALL.to_vec());
        }
        let mut ops = list.iter().map(|s| Op::parse(s)).collect::<Result<Vec<_>, _>>()?;
        ops.sort();
        ops.dedup();
        Ok(ops)
    }
}

pub fn parse_csv_f64(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| CliError::Config(format!("`{x}` is not a number"))))
        .collect()
}

pub fn parse_tol(s: &str) -> Result<(String, f64), CliError> {
    let (k, v) = s.split_once('=').ok_or_else(|| CliError::Config(format!("--tol expects KEY=VAL, got `{s}`")))?;
    let v = v.trim().parse::<f64>().map_err(|_| CliError::Config(format!("tolerance `{k}` has a non-numeric value")))?;
    Ok((k.trim().to_string(), v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_named_and_menu() {
        let c = RunConfig::from_json(r#"{"case":"sl2:s11-s11:k=1","cartan":1,"eta":[0.3],"ops":["cone","levi"]}"#).unwrap();
        assert_eq!(c.case, Some(CaseRef::Named("sl2:s11-s11:k=1".into())));
        assert_eq!(c.cartan, CartanRef::Menu(1));
        assert_eq!(c.ops().unwrap(), vec![Op::Levi, Op::Cone]);
    }

    #[test]
    fn defaults_and_errors() {
        let c = RunConfig::from_json(r#"{"case":"sl2:s11-theta:k=1"}"#).unwrap();
        assert_eq!(c.cartan, CartanRef::default());
        assert_eq!(c.ops().unwrap(), Op::ALL.to_vec());
        assert!(RunConfig::from_json(r#"{"case":"x","bogus":1}"#).is_err());
        let c = RunConfig { ops: Some(vec![]), ..Default::default() };
        assert!(c.ops().is_err());
        assert!(parse_tol("inertia=1e-6").is_ok());
        assert!(parse_tol("inertia").is_err());
        assert_eq!(parse_csv_f64("0.1, -2").unwrap(), vec![0.1, -2.0]);
    }
}
