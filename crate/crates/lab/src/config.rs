//! User-defined L-functions from TOML, and the name registry.
//!
//! ```toml
//! name = "L3"
//! coefficients = [[1, 1.0, 0.0], [9, 2.0, 0.0]]   # [n, re, im], or "zeta" / "chi4"
//! pole_order_k = 0
//! coeff_growth = [3.0, 0.0]                        # |a(n)| <= C n^eps
//!
//! [fe]
//! Q = 3.0
//! omega = [1.0, 0.0]
//! factors = [[0.5, 0.0, 0.0]]                      # [lambda, mu_re, mu_im]
//! ```

use std::path::Path;

use serde::Deserialize;

use selberg_core::lfunction::{builtin_catalog, CoeffGrowth, Coefficients, FunctionalEquationData, GammaFactor};
use selberg_core::{c64, LFunctionSpec};

use crate::error::LabError;

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LFunctionConfig {
    pub name: String,
    pub coefficients: CoefficientSource,
    #[serde(default)]
    pub pole_order_k: u32,
    pub fe: Option<FeConfig>,
    pub coeff_growth: [f64; 2],
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CoefficientSource {
    Builtin(String),
    Terms(Vec<[f64; 3]>),
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FeConfig {
    #[serde(rename = "Q")]
    pub q: f64,
    pub omega: [f64; 2],
    #[serde(default)]
    pub factors: Vec<[f64; 3]>,
}

impl LFunctionConfig {
    pub fn parse(text: &str) -> Result<Self, LabError> {
        toml::from_str(text).map_err(|e| LabError::config(format!("bad L-function config: {e}")))
    }

    pub fn build(&self) -> Result<LFunctionSpec, LabError> {
        if self.name.is_empty() || self.name.contains([':', '=', '(', ')']) {
            return Err(LabError::config(format!("invalid L-function name {:?}", self.name)));
        }
        let fe = match &self.fe {
            None => None,
            Some(fe) => {
                let factors = fe
                    .factors
                    .iter()
                    .map(|f| GammaFactor::new(f[0], c64(f[1], f[2])))
                    .collect::<Result<Vec<_>, _>>()?;
                Some(FunctionalEquationData::new(fe.q, c64(fe.omega[0], fe.omega[1]), factors)?)
            }
        };
        let growth = CoeffGrowth { c: self.coeff_growth[0], eps: self.coeff_growth[1] };
        match &self.coefficients {
            CoefficientSource::Builtin(kind) => {
                let coeffs = match kind.as_str() {
                    "zeta" => Coefficients::Zeta,
                    "chi4" => Coefficients::DirichletMod4,
                    other => return Err(LabError::config(format!("unknown built-in coefficient source {other:?}"))),
                };
                Ok(LFunctionSpec::new(&self.name, coeffs, self.pole_order_k, fe, growth)?)
            }
            CoefficientSource::Terms(terms) => {
                if self.pole_order_k != 0 {
                    return Err(LabError::config("Dirichlet polynomials have pole_order_k = 0"));
                }
                let mut pairs = Vec::with_capacity(terms.len());
                for t in terms {
                    if !(t[0] >= 1.0 && t[0].fract() == 0.0 && t[0] <= 1e6) {
                        return Err(LabError::config(format!("coefficient index {} is not a positive integer", t[0])));
                    }
                    pairs.push((t[0] as u64, c64(t[1], t[2])));
                }
                Ok(LFunctionSpec::dirichlet_polynomial(&self.name, &pairs, fe, growth)?)
            }
        }
    }
}

/// Catalog entries plus user-defined functions, addressed by name.
#[derive(Debug, Clone)]
pub struct Registry {
    entries: Vec<LFunctionSpec>,
}

impl Default for Registry {
    fn default() -> Self {
        Registry { entries: builtin_catalog() }
    }
}

impl Registry {
    pub fn insert(&mut self, l: LFunctionSpec) -> Result<(), LabError> {
        if self.index_of(l.name()).is_some() {
            return Err(LabError::config(format!("L-function {:?} is already defined", l.name())));
        }
        self.entries.push(l);
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<String, LabError> {
        let text = std::fs::read_to_string(path).map_err(|e| LabError::config(format!("cannot read {}: {e}", path.display())))?;
        let l = LFunctionConfig::parse(&text)?.build()?;
        let name = l.name().to_string();
        self.insert(l)?;
        Ok(name)
    }

    /// A name, or a path to a TOML file which is loaded on first use.
    pub fn resolve(&mut self, reference: &str) -> Result<String, LabError> {
        if self.index_of(reference).is_some() {
            return Ok(reference.to_string());
        }
        if reference.ends_with(".toml") {
            return self.load_file(Path::new(reference));
        }
        Err(LabError::config(format!("unknown L-function {reference:?}")))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|l| l.name() == name)
    }

    pub fn get(&self, name: &str) -> Result<&LFunctionSpec, LabError> {
        self.index_of(name).map(|i| &self.entries[i]).ok_or_else(|| LabError::config(format!("unknown L-function {name:?}")))
    }

    pub fn by_index(&self, i: usize) -> &LFunctionSpec {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[LFunctionSpec] {
        &self.entries
    }
}
