//! Config-driven scenario execution and output files.

use std::f64::consts::{PI, SQRT_2};
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{l1_coherence, negativity, CMatrix, C64};
use crate::jc::{
    initial_state, reduced_states, thermal_weights, truncated_coherent, JcEvolver, ScenarioCase,
    ATOM,
};
use crate::nonclassicality::{
    extrapolate_total, total_nonclassicality, BeamSplitter, DEFAULT_EXTRAPOLATION_RATIO,
    MAX_CASCADE_LAYERS,
};
use crate::oracle;

/// Evolved states must pass the density checks at this tolerance.
pub const VALIDATION_TOL: f64 = 1e-10;

/// Largest accepted field truncation; the splitter acts on `d²` dimensions.
pub const MAX_FIELD_DIM: usize = 8;

pub const TOL_CASE_A: f64 = 1e-9;
pub const TOL_CASE_B: f64 = 1e-9;
pub const TOL_REDUCED: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseKind {
    A,
    B,
    C,
    D,
}

impl CaseKind {
    fn parse(s: &str) -> Option<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Some(CaseKind::A),
            "B" => Some(CaseKind::B),
            "C" => Some(CaseKind::C),
            "D" => Some(CaseKind::D),
            _ => None,
        }
    }

    fn default_field_dim(self) -> usize {
        match self {
            CaseKind::A => 2,
            _ => 3,
        }
    }
}

/// Every config key as optional; file values and CLI flags both land here.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigOverrides {
    pub case: Option<String>,
    pub field_dim: Option<usize>,
    pub mean_photon: Option<f64>,
    pub alpha: Option<f64>,
    pub t_max: Option<f64>,
    pub n_points: Option<usize>,
    pub layers: Option<usize>,
    pub oracle_compare: Option<bool>,
    pub oracle_case_b_frequency: Option<f64>,
    pub output_prefix: Option<PathBuf>,
}

impl ConfigOverrides {
    /// Values set in `other` win.
    pub fn merge(self, other: ConfigOverrides) -> Self {
        Self {
            case: other.case.or(self.case),
            field_dim: other.field_dim.or(self.field_dim),
            mean_photon: other.mean_photon.or(self.mean_photon),
            alpha: other.alpha.or(self.alpha),
            t_max: other.t_max.or(self.t_max),
            n_points: other.n_points.or(self.n_points),
            layers: other.layers.or(self.layers),
            oracle_compare: other.oracle_compare.or(self.oracle_compare),
            oracle_case_b_frequency: other.oracle_case_b_frequency.or(self.oracle_case_b_frequency),
            output_prefix: other.output_prefix.or(self.output_prefix),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioConfig {
    pub case: CaseKind,
    pub field_dim: usize,
    pub mean_photon: Option<f64>,
    pub alpha: Option<f64>,
    pub t_max: f64,
    pub n_points: usize,
    pub layers: usize,
    pub oracle_compare: bool,
    pub oracle_case_b_frequency: f64,
    pub output_prefix: PathBuf,
}

fn config_err(field: &str, message: impl Into<String>) -> Error {
    Error::Config {
        field: field.to_string(),
        message: message.into(),
    }
}

impl ScenarioConfig {
    pub fn from_overrides(raw: ConfigOverrides) -> Result<Self> {
        let case_text = raw.case.ok_or_else(|| config_err("case", "required (one of A, B, C, D)"))?;
        let case = CaseKind::parse(&case_text)
            .ok_or_else(|| config_err("case", format!("expected one of A, B, C, D, got {case_text:?}")))?;

        let mean_photon = match (case, raw.mean_photon) {
            (CaseKind::C, None) => return Err(config_err("mean_photon", "required for case C")),
            (CaseKind::C, Some(m)) if !(m > 0.0 && m.is_finite()) => {
                return Err(config_err("mean_photon", format!("must be positive, got {m}")))
            }
            (CaseKind::C, m) => m,
            (_, Some(_)) => return Err(config_err("mean_photon", "only valid for case C")),
            (_, None) => None,
        };
        let alpha = match (case, raw.alpha) {
            (CaseKind::D, None) => return Err(config_err("alpha", "required for case D")),
            (CaseKind::D, Some(a)) if !a.is_finite() => {
                return Err(config_err("alpha", format!("must be finite, got {a}")))
            }
            (CaseKind::D, a) => a,
            (_, Some(_)) => return Err(config_err("alpha", "only valid for case D")),
            (_, None) => None,
        };

        let field_dim = raw.field_dim.unwrap_or(case.default_field_dim());
        let min_dim = case.default_field_dim();
        if field_dim < min_dim || field_dim > MAX_FIELD_DIM {
            return Err(config_err(
                "field_dim",
                format!("case {case:?} needs {min_dim} <= field_dim <= {MAX_FIELD_DIM}, got {field_dim}"),
            ));
        }

        let t_max = raw.t_max.unwrap_or(2.0 * PI);
        if !(t_max > 0.0 && t_max.is_finite()) {
            return Err(config_err("t_max", format!("must be positive, got {t_max}")));
        }
        let n_points = raw.n_points.unwrap_or(401);
        if n_points < 2 {
            return Err(config_err("n_points", format!("must be at least 2, got {n_points}")));
        }
        let layers = raw.layers.unwrap_or(2);
        if layers == 0 || layers > MAX_CASCADE_LAYERS {
            return Err(config_err(
                "layers",
                format!("must lie in 1..={MAX_CASCADE_LAYERS}, got {layers}"),
            ));
        }
        let oracle_case_b_frequency = raw.oracle_case_b_frequency.unwrap_or(SQRT_2);
        if !(oracle_case_b_frequency > 0.0 && oracle_case_b_frequency.is_finite()) {
            return Err(config_err(
                "oracle_case_b_frequency",
                format!("must be positive, got {oracle_case_b_frequency}"),
            ));
        }
        let output_prefix = raw
            .output_prefix
            .unwrap_or_else(|| PathBuf::from(format!("case_{}", format!("{case:?}").to_lowercase())));

        Ok(Self {
            case,
            field_dim,
            mean_photon,
            alpha,
            t_max,
            n_points,
            layers,
            oracle_compare: raw.oracle_compare.unwrap_or(false),
            oracle_case_b_frequency,
            output_prefix,
        })
    }

    pub fn scenario_case(&self) -> ScenarioCase {
        match self.case {
            CaseKind::A => ScenarioCase::A,
            CaseKind::B => ScenarioCase::B,
            CaseKind::C => ScenarioCase::C {
                mean_photon: self.mean_photon.unwrap_or_default(),
            },
            CaseKind::D => ScenarioCase::D {
                alpha: C64::new(self.alpha.unwrap_or_default(), 0.0),
            },
        }
    }

    pub fn time_grid(&self) -> Vec<f64> {
        let last = (self.n_points - 1) as f64;
        (0..self.n_points)
            .map(|k| self.t_max * k as f64 / last)
            .collect()
    }
}

/// Parse a JSON object of config keys, filling defaults and rejecting unknown keys.
pub fn parse_overrides(text: &str) -> Result<ConfigOverrides> {
    serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let field = msg
            .split('`')
            .nth(1)
            .filter(|_| msg.starts_with("unknown field") || msg.starts_with("missing field"))
            .unwrap_or("<document>")
            .to_string();
        Error::Config { field, message: msg }
    })
}

pub fn parse_config(text: &str) -> Result<ScenarioConfig> {
    ScenarioConfig::from_overrides(parse_overrides(text)?)
}

#[derive(Clone, Debug)]
pub struct TimeSeriesRow {
    pub t: f64,
    pub n_c: f64,
    pub n_f: f64,
    pub n_a: f64,
    /// Branch potentials of the field cascade, layer by layer.
    pub field_layers: Vec<Vec<f64>>,
    pub atom_layers: Vec<Vec<f64>>,
    /// `N_tot^(1) ..= N_tot^(L)`.
    pub totals: Vec<f64>,
    pub n_tot_inf: Option<f64>,
    pub coh_a: f64,
    pub coh_f: f64,
    pub rho_f: CMatrix,
    pub rho_a: CMatrix,
}

impl TimeSeriesRow {
    fn sums(layers: &[Vec<f64>]) -> Vec<f64> {
        layers.iter().skip(1).map(|l| l.iter().sum()).collect()
    }

    /// Summed residual potential of the field cascade for layers `2..=L`.
    pub fn field_residuals(&self) -> Vec<f64> {
        Self::sums(&self.field_layers)
    }

    pub fn atom_residuals(&self) -> Vec<f64> {
        Self::sums(&self.atom_layers)
    }
}

pub fn run_scenario(cfg: &ScenarioConfig) -> Result<Vec<TimeSeriesRow>> {
    let evolver = JcEvolver::new(cfg.field_dim)?;
    let rho0 = initial_state(cfg.scenario_case(), cfg.field_dim)?;
    let field_bs = BeamSplitter::new(cfg.field_dim)?;
    let atom_bs = BeamSplitter::new(2)?;

    cfg.time_grid()
        .into_iter()
        .map(|t| {
            let rho = evolver.evolve(&rho0, t)?;
            let diag = rho.diagnostics(VALIDATION_TOL);
            if !diag.is_valid() {
                return Err(Error::Validation {
                    t,
                    message: format!("{diag:?}"),
                });
            }
            let (rho_f, rho_a) = reduced_states(&rho)?;
            let n_c = negativity(&rho, ATOM)?;
            let field = field_bs.cascade(&rho_f, cfg.layers)?;
            let atom = atom_bs.cascade(&rho_a, cfg.layers)?;
            let totals = (1..=cfg.layers)
                .map(|l| total_nonclassicality(n_c, &field, &atom, l))
                .collect::<Result<Vec<_>>>()?;
            let (n_f, n_a) = (field.layer_sums[0], atom.layer_sums[0]);
            let n_tot_inf = match cfg.case {
                CaseKind::A => Some(extrapolate_total(n_c, n_f, n_a, DEFAULT_EXTRAPOLATION_RATIO)?),
                _ => None,
            };
            Ok(TimeSeriesRow {
                t,
                n_c,
                n_f,
                n_a,
                coh_a: l1_coherence(&rho_a),
                coh_f: l1_coherence(&rho_f),
                field_layers: field.layers,
                atom_layers: atom.layers,
                totals,
                n_tot_inf,
                rho_f: rho_f.into_matrix(),
                rho_a: rho_a.into_matrix(),
            })
        })
        .collect()
}

pub fn csv_header(layers: usize) -> Vec<String> {
    let mut cols: Vec<String> = ["T", "N_c", "N_f", "N_a"].iter().map(|s| s.to_string()).collect();
    cols.extend((2..=layers).map(|l| format!("res_f_{l}")));
    cols.extend((2..=layers).map(|l| format!("res_a_{l}")));
    cols.extend((1..=layers).map(|l| format!("N_tot_{l}")));
    cols.extend(["N_tot_inf", "coh_a", "coh_f"].iter().map(|s| s.to_string()));
    cols
}

/// Values of one row in header order; `None` is the empty `N_tot_inf` cell.
pub fn row_values(row: &TimeSeriesRow) -> Vec<Option<f64>> {
    let mut v = vec![Some(row.t), Some(row.n_c), Some(row.n_f), Some(row.n_a)];
    v.extend(row.field_residuals().into_iter().map(Some));
    v.extend(row.atom_residuals().into_iter().map(Some));
    v.extend(row.totals.iter().copied().map(Some));
    v.push(row.n_tot_inf);
    v.push(Some(row.coh_a));
    v.push(Some(row.coh_f));
    v
}

/// 15 significant digits in scientific notation.
pub fn format_number(x: f64) -> String {
    // avoid "-0e0"
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.14e}")
}

pub fn render_csv(rows: &[TimeSeriesRow], cfg: &ScenarioConfig) -> String {
    let mut out = csv_header(cfg.layers).join(",");
    out.push('\n');
    for row in rows {
        let cells: Vec<String> = row_values(row)
            .into_iter()
            .map(|v| v.map(format_number).unwrap_or_default())
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColumnExtrema {
    pub name: String,
    pub min: f64,
    pub t_at_min: f64,
    pub max: f64,
    pub t_at_max: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayerMinimum {
    pub layer: usize,
    pub min: f64,
    pub t_at_min: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub config: ScenarioConfig,
    pub rows: usize,
    pub columns: Vec<ColumnExtrema>,
    pub min_n_tot: Vec<LayerMinimum>,
    pub runtime_seconds: f64,
}

pub fn summarize(rows: &[TimeSeriesRow], cfg: &ScenarioConfig, runtime: Duration) -> Summary {
    let header = csv_header(cfg.layers);
    let values: Vec<Vec<Option<f64>>> = rows.iter().map(row_values).collect();
    let columns = header
        .iter()
        .enumerate()
        .skip(1)
        .filter_map(|(k, name)| {
            let mut best: Option<ColumnExtrema> = None;
            for (row, vals) in rows.iter().zip(&values) {
                let Some(v) = vals[k] else { continue };
                let e = best.get_or_insert(ColumnExtrema {
                    name: name.clone(),
                    min: v,
                    t_at_min: row.t,
                    max: v,
                    t_at_max: row.t,
                });
                if v < e.min {
                    e.min = v;
                    e.t_at_min = row.t;
                }
                if v > e.max {
                    e.max = v;
                    e.t_at_max = row.t;
                }
            }
            best
        })
        .collect();
    let min_n_tot = (0..cfg.layers)
        .filter_map(|l| {
            rows.iter()
                .map(|r| (r.totals[l], r.t))
                .min_by(|a, b| a.0.total_cmp(&b.0))
                .map(|(min, t_at_min)| LayerMinimum {
                    layer: l + 1,
                    min,
                    t_at_min,
                })
        })
        .collect();
    Summary {
        config: cfg.clone(),
        rows: rows.len(),
        columns,
        min_n_tot,
        runtime_seconds: runtime.as_secs_f64(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonEntry {
    pub quantity: String,
    pub max_abs_error: f64,
    pub t_at_max: f64,
    pub tolerance: f64,
    pub flagged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub case: CaseKind,
    pub entries: Vec<ComparisonEntry>,
    /// Quantities with no closed form to compare against.
    pub engine_only: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unavailable: Option<String>,
}

impl ComparisonReport {
    pub fn any_flagged(&self) -> bool {
        self.entries.iter().any(|e| e.flagged)
    }

    pub fn entry(&self, quantity: &str) -> Option<&ComparisonEntry> {
        self.entries.iter().find(|e| e.quantity == quantity)
    }
}

struct Tracker {
    quantity: String,
    tolerance: f64,
    worst: f64,
    t_at: f64,
    note: Option<String>,
}

impl Tracker {
    fn new(quantity: impl Into<String>, tolerance: f64) -> Self {
        Self {
            quantity: quantity.into(),
            tolerance,
            worst: 0.0,
            t_at: 0.0,
            note: None,
        }
    }

    fn observe(&mut self, t: f64, err: f64) {
        if err > self.worst || err.is_nan() {
            self.worst = err;
            self.t_at = t;
        }
    }

    fn finish(self) -> ComparisonEntry {
        ComparisonEntry {
            flagged: self.worst.is_nan() || self.worst > self.tolerance,
            quantity: self.quantity,
            max_abs_error: self.worst,
            t_at_max: self.t_at,
            tolerance: self.tolerance,
            note: self.note,
        }
    }
}

/// Entrywise max-abs difference; the smaller matrix is zero-padded.
fn matrix_error(engine: &CMatrix, oracle: &CMatrix) -> f64 {
    let n = engine.nrows().max(oracle.nrows());
    let get = |m: &CMatrix, r: usize, c: usize| {
        if r < m.nrows() && c < m.ncols() {
            m[(r, c)]
        } else {
            C64::new(0.0, 0.0)
        }
    };
    let mut worst = 0.0_f64;
    for r in 0..n {
        for c in 0..n {
            worst = worst.max((get(engine, r, c) - get(oracle, r, c)).norm());
        }
    }
    worst
}

fn residual_names(cfg: &ScenarioConfig, from: usize) -> Vec<String> {
    let mut names: Vec<String> = (from..=cfg.layers).map(|l| format!("res_f_{l}")).collect();
    names.extend((from..=cfg.layers).map(|l| format!("res_a_{l}")));
    names
}

fn total_names(cfg: &ScenarioConfig, from: usize) -> Vec<String> {
    (from..=cfg.layers).map(|l| format!("N_tot_{l}")).collect()
}

/// Max-abs error of every engine quantity that has a closed form for this case.
pub fn compare_with_oracle(rows: &[TimeSeriesRow], cfg: &ScenarioConfig) -> ComparisonReport {
    match cfg.case {
        CaseKind::A => compare_case_a(rows, cfg),
        CaseKind::B => compare_case_b(rows, cfg),
        CaseKind::C | CaseKind::D => compare_reduced(rows, cfg),
    }
}

fn compare_case_a(rows: &[TimeSeriesRow], cfg: &ScenarioConfig) -> ComparisonReport {
    let names = ["N_c", "N_f", "N_a", "N_tot_1", "N_tot_inf", "rho_f", "rho_a"];
    let mut trackers: Vec<Tracker> = names.iter().map(|n| Tracker::new(*n, TOL_CASE_A)).collect();
    let mut residual = vec![Tracker::new("N_f1", TOL_CASE_A), Tracker::new("N_a1", TOL_CASE_A)];
    let mut tot2 = Tracker::new("N_tot_2", TOL_CASE_A);

    for row in rows {
        let o = oracle::case_a(row.t);
        let (of, oa) = oracle::case_a_reduced(row.t);
        let errs = [
            (row.n_c - o.n_c).abs(),
            (row.n_f - o.n_f).abs(),
            (row.n_a - o.n_a).abs(),
            (row.totals[0] - o.n_tot1).abs(),
            (row.n_tot_inf.unwrap_or(f64::NAN) - o.n_tot_inf).abs(),
            matrix_error(&row.rho_f, &of),
            matrix_error(&row.rho_a, &oa),
        ];
        for (tr, e) in trackers.iter_mut().zip(errs) {
            tr.observe(row.t, e);
        }
        if cfg.layers >= 2 {
            for (tr, (branches, expected)) in residual.iter_mut().zip([
                (&row.field_layers[1], o.n_f1),
                (&row.atom_layers[1], o.n_a1),
            ]) {
                for &b in branches {
                    tr.observe(row.t, (b - expected).abs());
                }
            }
            tot2.observe(row.t, (row.totals[1] - o.n_tot2).abs());
        }
    }

    let mut entries: Vec<ComparisonEntry> = trackers.into_iter().map(Tracker::finish).collect();
    if cfg.layers >= 2 {
        entries.extend(residual.into_iter().map(Tracker::finish));
        entries.push(tot2.finish());
    }
    let mut engine_only = residual_names(cfg, 3);
    engine_only.extend(total_names(cfg, 3));
    engine_only.extend(["coh_a".to_string(), "coh_f".to_string()]);
    ComparisonReport {
        case: CaseKind::A,
        entries,
        engine_only,
        unavailable: None,
    }
}

fn compare_case_b(rows: &[TimeSeriesRow], cfg: &ScenarioConfig) -> ComparisonReport {
    let freq = cfg.oracle_case_b_frequency;
    let note = ((freq - oracle::CASE_B_PRINTED_FREQUENCY).abs() < 1e-9).then(|| {
        "as-printed closed form at frequency sqrt(3); the engine's two-excitation doublet rotates at sqrt(2)"
            .to_string()
    });
    let mut n_c = Tracker::new("N_c", TOL_CASE_B);
    let mut n_a = Tracker::new("N_a", TOL_CASE_B);
    for row in rows {
        // frequency was validated positive by the config
        let Ok(o) = oracle::case_b(row.t, freq) else { continue };
        n_c.observe(row.t, (row.n_c - o.n_c).abs());
        n_a.observe(row.t, (row.n_a - o.n_a).abs());
    }
    n_c.note = note.clone();
    n_a.note = note;
    let mut engine_only = vec!["N_f".to_string()];
    engine_only.extend(residual_names(cfg, 2));
    engine_only.extend(total_names(cfg, 1));
    engine_only.extend(["coh_a".to_string(), "coh_f".to_string()]);
    ComparisonReport {
        case: CaseKind::B,
        entries: vec![n_c.finish(), n_a.finish()],
        engine_only,
        unavailable: None,
    }
}

fn compare_reduced(rows: &[TimeSeriesRow], cfg: &ScenarioConfig) -> ComparisonReport {
    let mut engine_only = vec!["N_c".to_string(), "N_f".to_string(), "N_a".to_string()];
    engine_only.extend(residual_names(cfg, 2));
    engine_only.extend(total_names(cfg, 1));
    let mut report = ComparisonReport {
        case: cfg.case,
        entries: Vec::new(),
        engine_only,
        unavailable: None,
    };
    if cfg.field_dim != 3 {
        report.unavailable = Some(format!(
            "reduced-state closed forms assume field_dim = 3, got {}",
            cfg.field_dim
        ));
        return report;
    }

    // Oracle weights come from the same truncation the engine starts from.
    let weights = match cfg.scenario_case() {
        ScenarioCase::C { mean_photon } => thermal_weights(mean_photon, 3).map(|w| (w[0], w[1])),
        ScenarioCase::D { alpha } => {
            truncated_coherent(alpha, 3).map(|tc| (tc.state.amplitudes()[0].re, tc.state.amplitudes()[1].re))
        }
        _ => unreachable!("reduced comparison only for thermal and coherent fields"),
    };
    let (w0, w1) = match weights {
        Ok(w) => w,
        Err(e) => {
            report.unavailable = Some(e.to_string());
            return report;
        }
    };

    let mut atom = Tracker::new("rho_a", TOL_REDUCED);
    let mut field = Tracker::new("rho_f", TOL_REDUCED);
    for row in rows {
        let pair = match cfg.case {
            CaseKind::C => oracle::case_c_reduced(row.t, w0, w1),
            _ => oracle::case_d_reduced(row.t, w0, w1),
        };
        let Ok((oa, of)) = pair else { continue };
        atom.observe(row.t, matrix_error(&row.rho_a, &oa));
        field.observe(row.t, matrix_error(&row.rho_f, &of));
    }
    report.entries = vec![atom.finish(), field.finish()];
    report
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputFiles {
    pub csv: PathBuf,
    pub summary: PathBuf,
    pub oracle: Option<PathBuf>,
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `<prefix>.csv`, `<prefix>.summary.json` and, when requested,
/// `<prefix>.oracle.json`.
pub fn write_outputs(rows: &[TimeSeriesRow], cfg: &ScenarioConfig, runtime: Duration) -> Result<OutputFiles> {
    if rows.is_empty() {
        return Err(Error::Shape("no rows to write".into()));
    }
    if let Some(parent) = cfg.output_prefix.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|source| Error::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }

    let csv = with_suffix(&cfg.output_prefix, ".csv");
    write_file(&csv, &render_csv(rows, cfg))?;

    let summary = with_suffix(&cfg.output_prefix, ".summary.json");
    let json = serde_json::to_string_pretty(&summarize(rows, cfg, runtime)).expect("summary serializes");
    write_file(&summary, &(json + "\n"))?;

    let oracle = if cfg.oracle_compare {
        let path = with_suffix(&cfg.output_prefix, ".oracle.json");
        let json =
            serde_json::to_string_pretty(&compare_with_oracle(rows, cfg)).expect("report serializes");
        write_file(&path, &(json + "\n"))?;
        Some(path)
    } else {
        None
    };
    Ok(OutputFiles { csv, summary, oracle })
}

/// Process exit code for a failed run.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config { .. } | Error::InvalidParameter { .. } => 2,
        Error::Io { .. } => 4,
        _ => 3,
    }
}
