//! Run configuration, the JSON prior grammar and dataset loading.

use std::path::{Path, PathBuf};

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::consistency::{PriorFamily, TestKind};
use crate::error::{Error, Result};
use crate::mc::McConfig;
use crate::model::{self, equicorrelation_info, ModelSpec, SuffStats};
use crate::priors::{
    make_hyper_g, make_point_mass, make_zellner_siow, AdaptiveGPrior, ConjugatePrior, FatTailedTPrior, PriorScale,
    SemiConjugatePrior, VariancePrior,
};

pub const DEFAULT_SEED: u64 = 20240601;

const FAMILIES: &str = "conjugate, semi-conjugate, hyper-g, zellner-siow, point-mass, fat-t, adaptive-g";

fn default_seed() -> u64 {
    DEFAULT_SEED
}

fn default_points() -> usize {
    McConfig::default().n_points
}

/// Variance prior inv-χ²(s², ν). ν = 0 is the objective prior; when ν > 0 and
/// s² is omitted, s² = 1.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarianceSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
}

impl VarianceSpec {
    pub fn build(&self) -> Result<VariancePrior> {
        let nu = self.nu.unwrap_or(0.0);
        let s2 = self.s2.unwrap_or(if nu > 0.0 { 1.0 } else { 0.0 });
        VariancePrior::new(s2, nu).map_err(|e| Error::Config(e.to_string()))
    }
}

/// One prior in the JSON grammar, e.g. `{"family":"conjugate","omega":"g:5.0","s2":1.0,"nu":0}`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PriorSpec {
    pub family: String,
    /// `identity`, `g:<value>` or a path to a CSV matrix.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
    /// Hyper-g shape.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    /// Zellner-Siow scale; defaults to the sample size.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Point-mass location.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu_t: Option<f64>,
}

impl PriorSpec {
    pub fn family(name: &str) -> Self {
        Self { family: name.to_string(), ..Default::default() }
    }

    fn variance(&self) -> Result<VariancePrior> {
        VarianceSpec { s2: self.s2, nu: self.nu }.build()
    }

    fn scale(&self, default: &str, base_dir: &Path) -> Result<PriorScale> {
        parse_omega(self.omega.as_deref().unwrap_or(default), base_dir)
    }

    fn require(&self, v: Option<f64>, name: &str) -> Result<f64> {
        v.ok_or_else(|| Error::Config(format!("family {} needs \"{name}\"", self.family)))
    }

    /// Resolve into a library prior. `n` is the sample size (Zellner-Siow default).
    pub fn build(&self, n: usize, base_dir: &Path) -> Result<PriorFamily> {
        let v = self.variance()?;
        let cfg = |e: Error| match e {
            Error::Domain(m) | Error::InvalidPrior(m) => Error::Config(m),
            e => e,
        };
        Ok(match self.family.as_str() {
            "conjugate" => PriorFamily::Conjugate(ConjugatePrior { scale: self.scale("identity", base_dir)?, variance: v }),
            "semi-conjugate" | "independence" => {
                PriorFamily::SemiConjugate(SemiConjugatePrior { scale: self.scale("identity", base_dir)?, variance: v })
            }
            "hyper-g" => {
                let a = self.require(self.a, "a")?;
                PriorFamily::Mixture(make_hyper_g(a).map_err(cfg)?.with_variance(v).with_base(self.scale("g:1", base_dir)?))
            }
            "zellner-siow" => PriorFamily::Mixture(
                make_zellner_siow(self.n.unwrap_or(n))
                    .map_err(cfg)?
                    .with_variance(v)
                    .with_base(self.scale("g:1", base_dir)?),
            ),
            "point-mass" => {
                let g0 = self.require(self.g0, "g0")?;
                PriorFamily::Mixture(make_point_mass(g0).map_err(cfg)?.with_variance(v).with_base(self.scale("g:1", base_dir)?))
            }
            "fat-t" => PriorFamily::FatTail(
                FatTailedTPrior::new(self.tau.unwrap_or(1.0), self.nu_t.unwrap_or(1.0), v).map_err(cfg)?,
            ),
            "adaptive-g" | "adaptive" => PriorFamily::Adaptive(AdaptiveGPrior { variance: v }),
            other => {
                return Err(Error::Config(format!("unknown prior family {other:?}; expected one of {FAMILIES}")))
            }
        })
    }
}

/// `identity`, `g:<value>` or a CSV matrix path (relative paths resolve against `base_dir`).
pub fn parse_omega(s: &str, base_dir: &Path) -> Result<PriorScale> {
    let s = s.trim();
    if s == "identity" {
        return Ok(PriorScale::Identity);
    }
    if let Some(g) = s.strip_prefix("g:") {
        let g: f64 = g.trim().parse().map_err(|_| Error::Config(format!("bad g-prior scale {s:?}")))?;
        return Ok(PriorScale::GPrior(g));
    }
    Ok(PriorScale::Matrix(read_matrix(&base_dir.join(s))?))
}

/// Numeric CSV matrix; a non-numeric first row is treated as a header.
pub fn read_matrix(path: &Path) -> Result<DMatrix<f64>> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
        let parsed: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        match parsed {
            Ok(r) => rows.push(r),
            Err(_) if i == 0 => continue,
            Err(_) => return Err(Error::Data(format!("{}: non-numeric entry on line {}", path.display(), i + 1))),
        }
    }
    let ncol = rows.first().map_or(0, Vec::len);
    if rows.is_empty() || ncol == 0 || rows.iter().any(|r| r.len() != ncol) {
        return Err(Error::Data(format!("{}: expected a non-empty rectangular matrix", path.display())));
    }
    Ok(DMatrix::from_row_iterator(rows.len(), ncol, rows.into_iter().flatten()))
}

/// Dataset given as `y,x1,...,xK` columns; the first row must be the header.
pub fn read_dataset(path: &Path) -> Result<(DVector<f64>, DMatrix<f64>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
    let headers = rdr.headers().map_err(|e| Error::Data(e.to_string()))?.clone();
    if headers.len() < 2 || &headers[0] != "y" {
        return Err(Error::Data(format!("{}: header must be y,x1,...,xK", path.display())));
    }
    let k = headers.len() - 1;
    let mut y = Vec::new();
    let mut x = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
        if rec.len() != k + 1 {
            return Err(Error::Data(format!("{}: record {} has {} fields, expected {}", path.display(), i + 2, rec.len(), k + 1)));
        }
        let vals: std::result::Result<Vec<f64>, _> = rec.iter().map(str::parse::<f64>).collect();
        let vals = vals.map_err(|_| Error::Data(format!("{}: non-numeric value in record {}", path.display(), i + 2)))?;
        y.push(vals[0]);
        x.extend_from_slice(&vals[1..]);
    }
    if y.is_empty() {
        return Err(Error::Data(format!("{}: no records", path.display())));
    }
    Ok((DVector::from_vec(y.clone()), DMatrix::from_row_slice(y.len(), k, &x)))
}

/// Synthetic univariate location data parameterised by its sufficient statistics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Synthetic {
    pub n: usize,
    #[serde(default)]
    pub rho: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta_hat: Option<f64>,
    /// Defaults to n - 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_y2: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CsvDataset {
    pub path: PathBuf,
    /// `equicorrelation:<rho>` or a path to an n×n CSV matrix.
    pub sigma: String,
    /// `coef:i,j,...` (1-based columns of X) or a path to an r1×K CSV matrix; default `coef:1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restriction: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Dataset {
    Synthetic(Synthetic),
    Csv(CsvDataset),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunMode {
    #[default]
    Value,
    Limit,
}

/// Everything `bf` needs; round-trips through JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub dataset: Dataset,
    #[serde(default = "default_test")]
    pub test: TestKind,
    #[serde(default)]
    pub prior0: VarianceSpec,
    pub prior1: PriorSpec,
    #[serde(default)]
    pub mode: RunMode,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_points")]
    pub n_points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn default_test() -> TestKind {
    TestKind::Precise
}

impl RunConfig {
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn mc(&self) -> McConfig {
        McConfig { n_points: self.n_points, seed: self.seed, target_se: None }
    }
}

/// Sufficient statistics for the configured dataset.
pub fn load_stats(ds: &Dataset, base_dir: &Path) -> Result<SuffStats> {
    match ds {
        Dataset::Synthetic(s) => {
            let s_y2 = s.s_y2.unwrap_or(s.n as f64 - 1.0);
            let res = match (s.t, s.theta_hat) {
                (Some(t), None) => SuffStats::univariate_from_t(s.n, s.rho, t, s_y2),
                (None, Some(th)) => SuffStats::univariate_from_theta(s.n, s.rho, th, s_y2),
                _ => return Err(Error::Config("synthetic dataset needs exactly one of \"t\" and \"theta_hat\"".into())),
            };
            res.map_err(|e| match e {
                Error::Domain(m) | Error::OutOfRange(m) => Error::Config(m),
                e => e,
            })
        }
        Dataset::Csv(c) => {
            let (y, x) = read_dataset(&base_dir.join(&c.path))?;
            let n = y.len();
            let sigma = match c.sigma.trim().strip_prefix("equicorrelation:") {
                Some(r) => {
                    let rho: f64 = r.trim().parse().map_err(|_| Error::Config(format!("bad Σ spec {:?}", c.sigma)))?;
                    model::equicorrelation(n, rho)?
                }
                None => read_matrix(&base_dir.join(c.sigma.trim()))?,
            };
            let r = parse_restriction(c.restriction.as_deref().unwrap_or("coef:1"), x.ncols(), base_dir)?;
            let spec = ModelSpec::new(y, x, r, sigma)?;
            let rep = model::reparametrize(&spec)?;
            model::sufficient_stats(&spec, &rep)
        }
    }
}

fn parse_restriction(s: &str, k: usize, base_dir: &Path) -> Result<DMatrix<f64>> {
    if let Some(list) = s.trim().strip_prefix("coef:") {
        let idx: std::result::Result<Vec<usize>, _> = list.split(',').map(|v| v.trim().parse::<usize>()).collect();
        let idx = idx.map_err(|_| Error::Config(format!("bad restriction {s:?}")))?;
        let mut r = DMatrix::zeros(idx.len(), k);
        for (row, &j) in idx.iter().enumerate() {
            if j == 0 || j > k {
                return Err(Error::Config(format!("restriction column {j} outside 1..={k}")));
            }
            r[(row, j - 1)] = 1.0;
        }
        return Ok(r);
    }
    read_matrix(&base_dir.join(s.trim()))
}

/// Information block used by the auditor for a univariate or balanced configuration.
pub fn audit_info(r1: usize, n: usize, rho: f64) -> DMatrix<f64> {
    DMatrix::identity(r1, r1) * equicorrelation_info(n, rho)
}
