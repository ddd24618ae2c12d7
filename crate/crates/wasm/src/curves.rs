//! Plain-Rust curve builders behind the browser bindings.

use jaynes_core::hilbert::{DensityOperator, ModeLayout};
use jaynes_core::nonclassicality::BeamSplitter;
use jaynes_core::runner::{run_scenario, ConfigOverrides, ScenarioConfig};
use jaynes_core::{Error, Result};

/// Column-major time series for one scenario run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Curves {
    pub t: Vec<f64>,
    pub n_c: Vec<f64>,
    pub n_f: Vec<f64>,
    pub n_a: Vec<f64>,
    /// `N_tot` at the deepest requested layer.
    pub n_tot: Vec<f64>,
    pub coh_a: Vec<f64>,
}

/// `param` is the mean photon number for case C, the coherent amplitude for D,
/// and ignored otherwise.
pub fn scenario(case: &str, param: f64, t_max: f64, n_points: usize, layers: usize) -> Result<Curves> {
    let kind = case.trim().to_ascii_uppercase();
    let mut o = ConfigOverrides {
        case: Some(kind.clone()),
        t_max: Some(t_max),
        n_points: Some(n_points),
        layers: Some(layers),
        ..Default::default()
    };
    match kind.as_str() {
        "C" => o.mean_photon = Some(param),
        "D" => o.alpha = Some(param),
        _ => {}
    }
    let rows = run_scenario(&ScenarioConfig::from_overrides(o)?)?;

    let mut c = Curves::default();
    for row in rows {
        c.t.push(row.t);
        c.n_c.push(row.n_c);
        c.n_f.push(row.n_f);
        c.n_a.push(row.n_a);
        c.n_tot.push(*row.totals.last().expect("layers >= 1"));
        c.coh_a.push(row.coh_a);
    }
    Ok(c)
}

/// Summed branch potential per cascade layer for a Fock-diagonal input.
pub fn cascade_profile(weights: &[f64], layers: usize) -> Result<Vec<f64>> {
    let rho = fock_mixture(weights)?;
    let report = BeamSplitter::new(rho.dim())?.cascade(&rho, layers)?;
    Ok(report.layer_sums)
}

/// Entanglement potential of `Σ w_n |n⟩⟨n|`; weights are normalized first.
pub fn mixture_potential(weights: &[f64]) -> Result<f64> {
    let rho = fock_mixture(weights)?;
    BeamSplitter::new(rho.dim())?.potential(&rho)
}

fn fock_mixture(weights: &[f64]) -> Result<DensityOperator> {
    let mut w: Vec<f64> = weights.to_vec();
    if w.len() < 2 {
        w.resize(2, 0.0);
    }
    let total: f64 = w.iter().sum();
    if w.iter().any(|x| !(x.is_finite() && *x >= 0.0)) || total <= 0.0 {
        return Err(Error::InvalidDensity(format!("weights {weights:?}")));
    }
    w.iter_mut().for_each(|x| *x /= total);
    DensityOperator::from_diagonal(ModeLayout::single("f", w.len())?, &w)
}
