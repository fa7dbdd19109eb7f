//! TOML scenario files.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gen::gen_test_matrices;
use crate::growth::{
    BadSetRule, ColemanModel, GrowthScenario, ModulePresentation, StructuredFactor, TorsionFactor,
};
use crate::iwasawa::{IwasawaPoly, Var};
use crate::logmatrix::{DieudonneInput, IndexTag};
use crate::padic::{check_prime, Rational, ResidueRing, DEFAULT_PRECISION};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub schema_version: u32,
    pub prime: u32,
    pub g: usize,
    #[serde(default = "default_precision")]
    pub precision: u32,
    /// Values with valuation `>= tau` are reported as zero; defaults to
    /// half the precision.
    #[serde(default)]
    pub tau: Option<i64>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
    pub matrices: MatricesConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub convergence: ConvergenceConfig,
    #[serde(default)]
    pub conjugacy: ConjugacyConfig,
    #[serde(default)]
    pub coinvariants: CoinvariantsConfig,
    #[serde(default)]
    pub growth: Option<GrowthConfig>,
}

fn default_precision() -> u32 {
    DEFAULT_PRECISION
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatricesConfig {
    #[serde(default)]
    pub c_p: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub c_pc: Option<Vec<Vec<i64>>>,
    /// Draw both matrices from the seed instead.
    #[serde(default)]
    pub generate: Option<GenerateConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenerateConfig {
    #[serde(default)]
    pub block_anti_diagonal: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub r_max: u32,
    pub s_max: u32,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig { r_max: 2, s_max: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvergenceConfig {
    pub n_max: u32,
    pub max_degree: usize,
}

impl Default for ConvergenceConfig {
    fn default() -> Self {
        ConvergenceConfig { n_max: 4, max_degree: 4 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjugacyConfig {
    /// Number of seeded block-diagonal changes of basis.
    pub samples: usize,
}

impl Default for ConjugacyConfig {
    fn default() -> Self {
        ConjugacyConfig { samples: 4 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct CoinvariantsConfig {
    #[serde(default = "default_coinvariant_n")]
    pub n_max: u32,
    #[serde(default)]
    pub modules: Vec<ModuleConfig>,
}

fn default_coinvariant_n() -> u32 {
    3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleConfig {
    pub name: String,
    #[serde(default)]
    pub free_rank: u32,
    #[serde(default)]
    pub torsion: Vec<TorsionConfig>,
}

/// Either a product of tagged factors (`"X"`, `"Y"`, `"cyclo_x:k"`,
/// `"omega_y:m"`, ...) or a polynomial as `[i, j, c]` triples in `X, Y`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionConfig {
    #[serde(default)]
    pub tags: Option<Vec<String>>,
    #[serde(default)]
    pub poly: Option<Vec<[i64; 3]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthConfig {
    #[serde(default = "default_n0")]
    pub n0: u32,
    #[serde(default = "default_growth_n")]
    pub n_max: u32,
    #[serde(default)]
    pub bound_0: u64,
    #[serde(default)]
    pub block_mode: bool,
    /// Rational string such as `"1/2"`; used when no block data applies.
    #[serde(default)]
    pub minor_valuation: Option<String>,
    pub default_model: ColemanModel,
    /// Keyed by index label: `I0`, `I1`, `I_p0xI_pc1`, `I_p1xI_pc0`.
    #[serde(default)]
    pub models: BTreeMap<String, ColemanModel>,
    #[serde(default)]
    pub bad_set: Vec<BadSetRule>,
    pub fine: ModuleConfig,
}

fn default_n0() -> u32 {
    1
}

fn default_growth_n() -> u32 {
    6
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig =
            toml::from_str(text).map_err(|e| Error::Invalid(format!("config: {e}")))?;
        cfg.check()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        let mut cfg = Self::from_toml(&text)?;
        if let (Some(out), Some(dir)) = (&cfg.out_dir, path.parent()) {
            if out.is_relative() {
                cfg.out_dir = Some(dir.join(out));
            }
        }
        Ok(cfg)
    }

    pub fn check(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Invalid(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        check_prime(self.prime)?;
        if self.g == 0 || self.g > 4 {
            return Err(Error::Shape(format!("g = {} outside 1..=4", self.g)));
        }
        if self.precision == 0 {
            return Err(Error::BadPrecision(0));
        }
        let m = &self.matrices;
        match (&m.c_p, &m.c_pc, &m.generate) {
            (Some(_), Some(_), None) | (None, None, Some(_)) => {}
            _ => {
                return Err(Error::Invalid(
                    "[matrices] needs either both c_p and c_pc or a generate table".into(),
                ))
            }
        }
        if self.grid.r_max == 0 || self.grid.s_max == 0 {
            return Err(Error::Invalid("grid bounds must be at least 1".into()));
        }
        if self.convergence.n_max < 2 {
            return Err(Error::Invalid("convergence.n_max must be at least 2".into()));
        }
        for m in &self.coinvariants.modules {
            self.module(m)?;
        }
        if self.growth.is_some() {
            self.growth_scenario()?;
        }
        Ok(())
    }

    pub fn tau(&self) -> i64 {
        self.tau.unwrap_or(self.precision as i64 / 2)
    }

    pub fn ring(&self) -> Result<Arc<ResidueRing>> {
        ResidueRing::shared(self.prime, self.precision)
    }

    pub fn input(&self) -> Result<DieudonneInput> {
        let m = &self.matrices;
        if let Some(gen) = &m.generate {
            let (cp, cpc) = gen_test_matrices(self.ring()?, self.g, self.seed, gen.block_anti_diagonal)?;
            return DieudonneInput::from_matrices(self.g, cp, cpc);
        }
        let (Some(cp), Some(cpc)) = (&m.c_p, &m.c_pc) else {
            return Err(Error::Invalid("missing matrices".into()));
        };
        DieudonneInput::new(self.prime, self.g, self.precision, cp, cpc)
    }

    pub fn module(&self, m: &ModuleConfig) -> Result<ModulePresentation> {
        let ring = self.ring()?;
        let torsion = m
            .torsion
            .iter()
            .map(|t| torsion_factor(&ring, t))
            .collect::<Result<Vec<_>>>()?;
        ModulePresentation::new(ring, m.free_rank, torsion)
    }

    pub fn growth_scenario(&self) -> Result<Option<GrowthScenario>> {
        let Some(gc) = &self.growth else {
            return Ok(None);
        };
        let mut models = BTreeMap::new();
        for (k, v) in &gc.models {
            models.insert(parse_tag(k)?, *v);
        }
        let minor_valuation = gc.minor_valuation.as_deref().map(parse_rational).transpose()?;
        Ok(Some(GrowthScenario {
            prime: self.prime,
            g: self.g,
            models,
            default_model: gc.default_model,
            minor_valuation,
            bad_set: gc.bad_set.clone(),
            n0: gc.n0,
            fine: self.module(&gc.fine)?,
            block_mode: gc.block_mode,
            bound_0: gc.bound_0 as u128,
            tau: self.tau(),
        }))
    }
}

fn parse_tag(s: &str) -> Result<IndexTag> {
    [IndexTag::I0, IndexTag::I1, IndexTag::Mix01, IndexTag::Mix10]
        .into_iter()
        .find(|t| t.to_string() == s)
        .ok_or_else(|| Error::Invalid(format!("unknown index label {s:?}")))
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Invalid(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse().map_err(|_| bad())?, d.trim().parse().map_err(|_| bad())?),
        None => (s.trim().parse().map_err(|_| bad())?, 1),
    };
    if d == 0 {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

fn parse_factor(s: &str) -> Result<StructuredFactor> {
    let bad = || Error::Invalid(format!("bad factor tag {s:?}"));
    let var = |v: &str| match v {
        "x" | "X" => Ok(Var::X),
        "y" | "Y" => Ok(Var::Y),
        _ => Err(bad()),
    };
    if let Ok(v) = var(s) {
        return Ok(StructuredFactor::Var(v));
    }
    let (head, k) = s.split_once(':').ok_or_else(bad)?;
    let k: u32 = k.parse().map_err(|_| bad())?;
    let (kind, v) = head.split_once('_').ok_or_else(bad)?;
    let v = var(v)?;
    match kind {
        "cyclo" if k >= 1 => Ok(StructuredFactor::Cyclo(v, k)),
        "omega" => Ok(StructuredFactor::Omega(v, k)),
        _ => Err(bad()),
    }
}

fn torsion_factor(ring: &Arc<ResidueRing>, t: &TorsionConfig) -> Result<TorsionFactor> {
    match (&t.tags, &t.poly) {
        (Some(tags), None) => Ok(TorsionFactor::Tagged(
            tags.iter().map(|s| parse_factor(s)).collect::<Result<_>>()?,
        )),
        (None, Some(terms)) => {
            let terms: Vec<(usize, usize, i64)> = terms
                .iter()
                .map(|[i, j, c]| {
                    if *i < 0 || *j < 0 {
                        Err(Error::Invalid("negative exponent in torsion polynomial".into()))
                    } else {
                        Ok((*i as usize, *j as usize, *c))
                    }
                })
                .collect::<Result<_>>()?;
            let f = IwasawaPoly::from_x_i64(ring.clone(), &terms);
            if f.is_zero() {
                return Err(Error::Invalid("torsion polynomial is zero".into()));
            }
            Ok(TorsionFactor::Untagged(f))
        }
        _ => Err(Error::Invalid("torsion factor needs exactly one of tags, poly".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
schema_version = 1
prime = 3
g = 1
precision = 32
seed = 5

[matrices]
c_p = [[0, 1], [-1, 0]]
c_pc = [[0, 1], [-1, 0]]

[growth]
block_mode = true
default_model = { a = 0, b = 1, c = 1 }
bad_set = [{ kind = "diagonal", offset = 0, count = { constant = 1 } }]
fine = { name = "fine", torsion = [{ tags = ["X"] }] }

[growth.models]
I1 = { a = 1, b = 0, c = 0 }
"#;

    #[test]
    fn parses_sample() {
        let cfg = ScenarioConfig::from_toml(SAMPLE).unwrap();
        assert_eq!(cfg.tau(), 16);
        let d = cfg.input().unwrap();
        assert_eq!(d.g, 1);
        let sc = cfg.growth_scenario().unwrap().unwrap();
        assert_eq!(sc.model_for(IndexTag::I1).a, 1);
        assert_eq!(sc.model_for(IndexTag::I0).b, 1);
        assert_eq!(sc.bad_count(2, 2), 1);
    }

    #[test]
    fn rejects_bad_configs() {
        let bumped = SAMPLE.replace("schema_version = 1", "schema_version = 2");
        assert!(ScenarioConfig::from_toml(&bumped).is_err());
        let no_mats = SAMPLE.replace("c_pc = [[0, 1], [-1, 0]]", "");
        assert!(ScenarioConfig::from_toml(&no_mats).is_err());
        let bad_tag = SAMPLE.replace("tags = [\"X\"]", "tags = [\"Z\"]");
        assert!(ScenarioConfig::from_toml(&bad_tag).is_err());
        let bad_prime = SAMPLE.replace("prime = 3", "prime = 4");
        assert!(ScenarioConfig::from_toml(&bad_prime).is_err());
    }

    #[test]
    fn factor_tags() {
        assert_eq!(parse_factor("cyclo_x:2").unwrap(), StructuredFactor::Cyclo(Var::X, 2));
        assert_eq!(parse_factor("omega_y:0").unwrap(), StructuredFactor::Omega(Var::Y, 0));
        assert_eq!(parse_factor("Y").unwrap(), StructuredFactor::Var(Var::Y));
        assert!(parse_factor("cyclo_x:0").is_err());
        assert_eq!(parse_rational("3/6").unwrap(), Rational::new(1, 2));
    }
}
