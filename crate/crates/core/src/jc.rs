//! Resonant Jaynes-Cummings engine in the interaction picture.
//!
//! Time is the dimensionless `T = λt` and the generator is
//! `H = σ₊a + σ₋a†` on the layout `(f:d, a:2)`, with `|1_a⟩` the excited
//! level. The free part of the Hamiltonian is a local phase and is dropped.

use log::warn;

use crate::error::{Error, Result};
use crate::hilbert::{
    annihilation, kron, CMatrix, CVector, DensityOperator, HermitianEigen, ModeLayout,
    StateVector, C64,
};

pub const FIELD: &str = "f";
pub const ATOM: &str = "a";

/// Fraction of the coherent-state norm that may be dropped before warning.
pub const COHERENT_TAIL_WARN: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JcParams {
    pub field_dim: usize,
    /// Free frequency; kept for completeness, it does not enter any reported quantity.
    pub omega: f64,
}

impl JcParams {
    pub fn new(field_dim: usize) -> Result<Self> {
        if field_dim < 2 {
            return Err(Error::InvalidDimension { dim: field_dim });
        }
        Ok(Self {
            field_dim,
            omega: 0.0,
        })
    }
}

/// The four initial states studied: the atom starts excited except in case B.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ScenarioCase {
    /// `|0_f⟩|1_a⟩`
    A,
    /// `|2_f⟩|0_a⟩`
    B,
    /// thermal field ⊗ `|1_a⟩`
    C { mean_photon: f64 },
    /// coherent field ⊗ `|1_a⟩`
    D { alpha: C64 },
}

impl ScenarioCase {
    pub fn letter(&self) -> char {
        match self {
            ScenarioCase::A => 'A',
            ScenarioCase::B => 'B',
            ScenarioCase::C { .. } => 'C',
            ScenarioCase::D { .. } => 'D',
        }
    }

    pub fn min_field_dim(&self) -> usize {
        match self {
            ScenarioCase::A => 2,
            _ => 3,
        }
    }
}

pub fn atom_field_layout(field_dim: usize) -> Result<ModeLayout> {
    ModeLayout::new([(FIELD, field_dim), (ATOM, 2)])
}

/// `σ₊a + σ₋a†` with field-first ordering: `⟨(n-1)_f,1_a|H|n_f,0_a⟩ = √n`.
pub fn interaction_hamiltonian(field_dim: usize) -> Result<CMatrix> {
    let a = annihilation(field_dim)?;
    let mut sigma_plus = CMatrix::zeros(2, 2);
    sigma_plus[(1, 0)] = C64::new(1.0, 0.0);
    let term = kron(&a, &sigma_plus);
    Ok(&term + term.adjoint())
}

/// `N_f ⊗ I + I ⊗ |1_a⟩⟨1_a|`.
pub fn excitation_operator(field_dim: usize) -> Result<CMatrix> {
    let n = crate::hilbert::number_operator(field_dim)?;
    let mut excited = CMatrix::zeros(2, 2);
    excited[(1, 1)] = C64::new(1.0, 0.0);
    Ok(kron(&n, &CMatrix::identity(2, 2)) + kron(&CMatrix::identity(field_dim, field_dim), &excited))
}

/// Cached spectral decomposition of the interaction Hamiltonian for one field truncation.
#[derive(Clone, Debug)]
pub struct JcEvolver {
    layout: ModeLayout,
    eigen: HermitianEigen,
}

impl JcEvolver {
    pub fn new(field_dim: usize) -> Result<Self> {
        let h = interaction_hamiltonian(field_dim)?;
        Ok(Self {
            layout: atom_field_layout(field_dim)?,
            eigen: HermitianEigen::new(&h)?,
        })
    }

    pub fn field_dim(&self) -> usize {
        self.layout.subsystems()[0].dim
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn propagator(&self, t: f64) -> CMatrix {
        self.eigen.propagator(t)
    }

    pub fn evolve(&self, rho0: &DensityOperator, t: f64) -> Result<DensityOperator> {
        if rho0.layout() != &self.layout {
            return Err(Error::LayoutMismatch {
                expected: self.layout.to_string(),
                found: rho0.layout().to_string(),
            });
        }
        rho0.conjugate(&self.propagator(t))
    }

    pub fn evolve_state(&self, psi: &StateVector, t: f64) -> Result<StateVector> {
        if psi.layout() != &self.layout {
            return Err(Error::LayoutMismatch {
                expected: self.layout.to_string(),
                found: psi.layout().to_string(),
            });
        }
        let amps = self.propagator(t) * psi.amplitudes();
        StateVector::normalized(self.layout.clone(), amps)
    }
}

/// `U(T) ρ0 U(T)†` with `U(T) = exp(-i T H)`.
pub fn evolve(rho0: &DensityOperator, t: f64) -> Result<DensityOperator> {
    let field_dim = rho0.layout().dim_of(FIELD)?;
    JcEvolver::new(field_dim)?.evolve(rho0, t)
}

/// Closed-form rotation inside the doublet `{|(n-1)_f,1_a⟩, |n_f,0_a⟩}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DoubletRotation {
    pub excitations: usize,
    /// Amplitude left on `|(n-1)_f,1_a⟩`: `cos(√n T)`.
    pub stay: C64,
    /// Amplitude transferred to `|n_f,0_a⟩`: `-i sin(√n T)`.
    pub transfer: C64,
}

impl DoubletRotation {
    /// Flat basis indices (excited member, ground member) on `(f:d, a:2)`.
    pub fn indices(&self) -> (usize, usize) {
        (2 * (self.excitations - 1) + 1, 2 * self.excitations)
    }

    /// 2×2 propagator on (excited member, ground member).
    pub fn matrix(&self) -> [[C64; 2]; 2] {
        [[self.stay, self.transfer], [self.transfer, self.stay]]
    }
}

pub fn sector_evolution(excitations: usize, t: f64, field_dim: usize) -> Result<DoubletRotation> {
    if excitations == 0 || excitations >= field_dim {
        return Err(Error::param(
            "excitations",
            format!("{excitations} outside 1..={}", field_dim.saturating_sub(1)),
        ));
    }
    let theta = (excitations as f64).sqrt() * t;
    Ok(DoubletRotation {
        excitations,
        stay: C64::new(theta.cos(), 0.0),
        transfer: C64::new(0.0, -theta.sin()),
    })
}

/// Thermal weights `⟨n⟩ⁿ/(⟨n⟩+1)ⁿ⁺¹` on levels `0..d-1`, top level empty, renormalized.
pub fn thermal_weights(mean_photon: f64, field_dim: usize) -> Result<Vec<f64>> {
    if !(mean_photon > 0.0 && mean_photon.is_finite()) {
        return Err(Error::param("mean_photon", format!("must be positive, got {mean_photon}")));
    }
    if field_dim < 2 {
        return Err(Error::InvalidDimension { dim: field_dim });
    }
    let mut w: Vec<f64> = (0..field_dim)
        .map(|n| {
            if n + 1 == field_dim {
                0.0
            } else {
                mean_photon.powi(n as i32) / (mean_photon + 1.0).powi(n as i32 + 1)
            }
        })
        .collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|p| *p /= total);
    Ok(w)
}

pub fn truncated_thermal(mean_photon: f64, field_dim: usize) -> Result<DensityOperator> {
    let w = thermal_weights(mean_photon, field_dim)?;
    DensityOperator::from_diagonal(ModeLayout::single(FIELD, field_dim)?, &w)
}

#[derive(Clone, Debug)]
pub struct TruncatedCoherent {
    pub state: StateVector,
    /// Norm weight of the untruncated state outside the kept levels.
    pub tail_loss: f64,
}

/// `e^{-|α|²/2} αⁿ/√n!` on levels `0..d-1`, top level zero, renormalized.
pub fn truncated_coherent(alpha: C64, field_dim: usize) -> Result<TruncatedCoherent> {
    if field_dim < 2 {
        return Err(Error::InvalidDimension { dim: field_dim });
    }
    let prefactor = (-alpha.norm_sqr() / 2.0).exp();
    let mut amps = CVector::zeros(field_dim);
    let mut term = C64::new(prefactor, 0.0);
    for n in 0..field_dim - 1 {
        if n > 0 {
            term *= alpha / (n as f64).sqrt();
        }
        amps[n] = term;
    }
    let tail_loss = (1.0 - amps.norm_squared()).max(0.0);
    if tail_loss > COHERENT_TAIL_WARN {
        warn!(
            "coherent state |α|={} truncated to {field_dim} levels drops {tail_loss:.3e} of its norm",
            alpha.norm()
        );
    }
    let state = StateVector::normalized(ModeLayout::single(FIELD, field_dim)?, amps)?;
    Ok(TruncatedCoherent { state, tail_loss })
}

fn excited_atom() -> Result<DensityOperator> {
    DensityOperator::from_diagonal(ModeLayout::single(ATOM, 2)?, &[0.0, 1.0])
}

pub fn initial_state(case: ScenarioCase, field_dim: usize) -> Result<DensityOperator> {
    if field_dim < case.min_field_dim() {
        return Err(Error::param(
            "field_dim",
            format!(
                "case {} needs at least {} field levels, got {field_dim}",
                case.letter(),
                case.min_field_dim()
            ),
        ));
    }
    let layout = atom_field_layout(field_dim)?;
    match case {
        ScenarioCase::A => Ok(DensityOperator::from_pure(&StateVector::basis(layout, &[0, 1])?)),
        ScenarioCase::B => Ok(DensityOperator::from_pure(&StateVector::basis(layout, &[2, 0])?)),
        ScenarioCase::C { mean_photon } => {
            truncated_thermal(mean_photon, field_dim)?.tensor(&excited_atom()?)
        }
        ScenarioCase::D { alpha } => {
            let field = DensityOperator::from_pure(&truncated_coherent(alpha, field_dim)?.state);
            field.tensor(&excited_atom()?)
        }
    }
}

/// `(ρ_f, ρ_a)` from an atom-field state.
pub fn reduced_states(rho: &DensityOperator) -> Result<(DensityOperator, DensityOperator)> {
    let labels: Vec<&str> = rho.layout().labels().collect();
    if labels != [FIELD, ATOM] || rho.layout().dim_of(ATOM)? != 2 {
        return Err(Error::LayoutMismatch {
            expected: format!("({FIELD}:d, {ATOM}:2)"),
            found: rho.layout().to_string(),
        });
    }
    Ok((rho.partial_trace(&[FIELD])?, rho.partial_trace(&[ATOM])?))
}
