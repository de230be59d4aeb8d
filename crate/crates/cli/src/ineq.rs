//! The `.ineq` text format: one `key=value` per line, `#` starts a comment.

use std::fmt::Write as _;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};
use symbell::fwsolver::{FWConfig, VisibilityResult};
use symbell::{BoundMode, ReducedVector, ScenarioParams};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    Exact,
    Heuristic,
}

impl Certification {
    fn as_str(self) -> &'static str {
        match self {
            Certification::Exact => "EXACT",
            Certification::Heuristic => "HEURISTIC",
        }
    }
}

impl FromStr for Certification {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "EXACT" => Ok(Certification::Exact),
            "HEURISTIC" => Ok(Certification::Heuristic),
            other => bail!("unknown certification {other:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Provenance {
    pub seed: u64,
    pub config_hash: String,
    pub tool_version: String,
}

/// A symmetric Bell inequality `Σ_j w_j f_j E_j ≤ L` in reduced coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct InequalityFile {
    pub format_version: u32,
    pub parties: usize,
    pub inputs: usize,
    pub coeffs: Vec<BigInt>,
    pub local_bound: BigInt,
    pub quantum_value: f64,
    pub quantum_symbolic: String,
    pub visibility: f64,
    pub visibility_exact: String,
    pub visibility_fraction: Option<BigRational>,
    pub certified: Certification,
    pub facet: bool,
    pub converged: bool,
    pub provenance: Provenance,
}

/// Shortest-round-trip is not enough for readers who diff by eye; print
/// exactly 17 significant digits.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn config_hash(config: &FWConfig) -> String {
    use sha2::{Digest, Sha256};
    hex::encode(Sha256::digest(format!("{config:?}").as_bytes()))
}

impl InequalityFile {
    pub fn from_result(result: &VisibilityResult, config: &FWConfig) -> Self {
        let c = &result.certificate;
        let params = c.coeffs.params();
        InequalityFile {
            format_version: FORMAT_VERSION,
            parties: params.parties(),
            inputs: params.inputs(),
            coeffs: c.coeffs.entries().to_vec(),
            local_bound: c.local_bound.clone(),
            quantum_value: c.quantum_value,
            quantum_symbolic: c.quantum_symbolic.clone(),
            visibility: c.visibility,
            visibility_exact: c.visibility_exact.clone(),
            visibility_fraction: c.visibility_fraction.clone(),
            certified: match c.bound_mode {
                BoundMode::Exact => Certification::Exact,
                BoundMode::HeuristicLower => Certification::Heuristic,
            },
            facet: c.is_facet,
            converged: result.converged,
            provenance: Provenance {
                seed: config.seed,
                config_hash: config_hash(config),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
            },
        }
    }

    pub fn params(&self) -> Result<ScenarioParams> {
        Ok(ScenarioParams::new(self.parties, self.inputs)?)
    }

    pub fn functional(&self) -> Result<ReducedVector<BigInt>> {
        Ok(ReducedVector::new(self.params()?, self.coeffs.clone())?)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(s, "# symmetric Bell inequality: sum_j w_j f_j E_j <= L");
        let _ = writeln!(s, "format_version={}", self.format_version);
        let _ = writeln!(s, "N={}", self.parties);
        let _ = writeln!(s, "m={}", self.inputs);
        let _ = writeln!(s, "coeffs={}", coeffs.join(" "));
        let _ = writeln!(s, "L={}", self.local_bound);
        let _ = writeln!(s, "Q={}", fmt_f64(self.quantum_value));
        let _ = writeln!(s, "Q_symbolic={}", self.quantum_symbolic);
        let _ = writeln!(s, "v={}", fmt_f64(self.visibility));
        let _ = writeln!(s, "v_exact={}", self.visibility_exact);
        if let Some(fr) = &self.visibility_fraction {
            let _ = writeln!(s, "v_fraction={fr}");
        }
        let _ = writeln!(s, "certified={}", self.certified.as_str());
        let _ = writeln!(s, "facet={}", self.facet);
        let _ = writeln!(s, "converged={}", self.converged);
        let _ = writeln!(s, "seed={}", self.provenance.seed);
        let _ = writeln!(s, "config_hash={}", self.provenance.config_hash);
        let _ = writeln!(s, "tool_version={}", self.provenance.tool_version);
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut fields = std::collections::BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| anyhow!("line {}: expected key=value", lineno + 1))?;
            if fields.insert(key.trim(), value.trim()).is_some() {
                bail!("line {}: duplicate key {}", lineno + 1, key.trim());
            }
        }
        let get = |key: &str| -> Result<&str> {
            fields
                .get(key)
                .copied()
                .ok_or_else(|| anyhow!("missing key {key}"))
        };
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T>
        where
            T::Err: std::error::Error + Send + Sync + 'static,
        {
            v.parse()
                .with_context(|| format!("invalid value for {key}: {v:?}"))
        }

        let format_version: u32 = num("format_version", get("format_version")?)?;
        if format_version != FORMAT_VERSION {
            bail!("unsupported format_version {format_version}");
        }
        let coeffs = get("coeffs")?
            .split_whitespace()
            .map(|c| num::<BigInt>("coeffs", c))
            .collect::<Result<Vec<_>>>()?;
        let file = InequalityFile {
            format_version,
            parties: num("N", get("N")?)?,
            inputs: num("m", get("m")?)?,
            coeffs,
            local_bound: num("L", get("L")?)?,
            quantum_value: num("Q", get("Q")?)?,
            quantum_symbolic: get("Q_symbolic")?.to_string(),
            visibility: num("v", get("v")?)?,
            visibility_exact: get("v_exact")?.to_string(),
            visibility_fraction: fields
                .get("v_fraction")
                .map(|v| num::<BigRational>("v_fraction", v))
                .transpose()?,
            certified: get("certified")?.parse()?,
            facet: num("facet", get("facet")?)?,
            converged: num("converged", get("converged")?)?,
            provenance: Provenance {
                seed: num("seed", get("seed")?)?,
                config_hash: get("config_hash")?.to_string(),
                tool_version: get("tool_version")?.to_string(),
            },
        };
        if file.coeffs.len() != file.params()?.dim() {
            bail!(
                "expected {} coefficients for m={}, found {}",
                file.params()?.dim(),
                file.inputs,
                file.coeffs.len()
            );
        }
        Ok(file)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "format_version": self.format_version,
            "N": self.parties,
            "m": self.inputs,
            "coeffs": self.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "L": self.local_bound.to_string(),
            "Q": self.quantum_value,
            "Q_symbolic": self.quantum_symbolic,
            "v": self.visibility,
            "v_exact": self.visibility_exact,
            "v_fraction": self.visibility_fraction.as_ref().map(|f| f.to_string()),
            "certified": self.certified.as_str(),
            "facet": self.facet,
            "converged": self.converged,
            "provenance": {
                "seed": self.provenance.seed,
                "config_hash": self.provenance.config_hash,
                "tool_version": self.provenance.tool_version,
            },
        })
    }
}
