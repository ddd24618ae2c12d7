//! Single-mode nonclassicality through balanced beam splitters.
//!
//! The entanglement potential of a single-mode state is the negativity of the
//! two-mode state produced when it meets vacuum at a 50:50 beam splitter. The
//! reduced outputs of that splitter still carry residual nonclassicality,
//! which a cascade of further splitter layers keeps depleting.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use crate::error::{Error, Result};
use crate::hilbert::{
    annihilation, kron, negativity, CMatrix, DensityOperator, HermitianEigen, ModeLayout, C64,
};

/// Two branches per layer, each depleted by roughly one fifth.
pub const DEFAULT_EXTRAPOLATION_RATIO: f64 = 0.4;

pub const DEFAULT_DEPLETION_FLOOR: f64 = 1e-3;

/// Cascades deeper than this are refused (`2^(L-1)` nodes in the last layer).
pub const MAX_CASCADE_LAYERS: usize = 14;

/// `exp(-i π/4 (a†b + ab†))` on `mode ⊗ auxiliary`, both truncated to `d` levels.
pub fn beam_splitter_unitary(d: usize) -> Result<CMatrix> {
    let a = annihilation(d)?;
    let id = CMatrix::identity(d, d);
    let hop = kron(&a.adjoint(), &id) * kron(&id, &a);
    let generator = &hop + hop.adjoint();
    Ok(HermitianEigen::new(&generator)?.propagator(FRAC_PI_4))
}

/// Two-level beam splitter on `|00⟩,|01⟩,|10⟩,|11⟩`, identity on `|11⟩`.
pub fn qubit_beam_splitter() -> CMatrix {
    let r = C64::new(FRAC_1_SQRT_2, 0.0);
    let t = C64::new(0.0, -FRAC_1_SQRT_2);
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    CMatrix::from_row_slice(
        4,
        4,
        &[
            one, zero, zero, zero, //
            zero, r, t, zero, //
            zero, t, r, zero, //
            zero, zero, zero, one,
        ],
    )
}

fn auxiliary_label(label: &str) -> String {
    format!("{label}0")
}

fn single_mode(rho: &DensityOperator) -> Result<(&str, usize)> {
    match rho.layout().subsystems() {
        [only] => Ok((only.label.as_str(), only.dim)),
        _ => Err(Error::LayoutMismatch {
            expected: "a single mode".into(),
            found: rho.layout().to_string(),
        }),
    }
}

/// A balanced beam splitter for one mode dimension, fed with a vacuum ancilla
/// of the same dimension.
#[derive(Clone, Debug)]
pub struct BeamSplitter {
    dim: usize,
    unitary: CMatrix,
}

impl BeamSplitter {
    pub fn new(dim: usize) -> Result<Self> {
        let unitary = if dim == 2 {
            qubit_beam_splitter()
        } else {
            beam_splitter_unitary(dim)?
        };
        Ok(Self { dim, unitary })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unitary(&self) -> &CMatrix {
        &self.unitary
    }

    fn check(&self, rho: &DensityOperator) -> Result<String> {
        let (label, dim) = single_mode(rho)?;
        if dim != self.dim {
            return Err(Error::LayoutMismatch {
                expected: format!("single mode of dim {}", self.dim),
                found: rho.layout().to_string(),
            });
        }
        Ok(label.to_string())
    }

    /// `U (ρ ⊗ |0⟩⟨0|) U†` over `(label, label0)`.
    pub fn output(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        let label = self.check(rho)?;
        let mut vac = vec![0.0; self.dim];
        vac[0] = 1.0;
        let ancilla =
            DensityOperator::from_diagonal(ModeLayout::single(auxiliary_label(&label), self.dim)?, &vac)?;
        rho.tensor(&ancilla)?.conjugate(&self.unitary)
    }

    pub fn potential(&self, rho: &DensityOperator) -> Result<f64> {
        let label = self.check(rho)?;
        negativity(&self.output(rho)?, &auxiliary_label(&label))
    }

    /// Reduced single-mode outputs `(ρ', ρ0')`, both relabelled to the input label.
    pub fn split(&self, rho: &DensityOperator) -> Result<(DensityOperator, DensityOperator)> {
        let label = self.check(rho)?;
        let aux = auxiliary_label(&label);
        let out = self.output(rho)?;
        let through = out.partial_trace(&[label.as_str()])?;
        let reflected = out.partial_trace(&[aux.as_str()])?.relabel(&[label.as_str()])?;
        Ok((through, reflected))
    }

    pub fn cascade(&self, rho: &DensityOperator, layers: usize) -> Result<CascadeReport> {
        if layers == 0 {
            return Err(Error::param("layers", "cascade needs at least one layer"));
        }
        if layers > MAX_CASCADE_LAYERS {
            return Err(Error::LayerOverflow {
                requested: layers,
                max: MAX_CASCADE_LAYERS,
            });
        }
        let label = self.check(rho)?;

        let mut nodes = vec![vec![BranchNode {
            depth: 1,
            potential: self.potential(rho)?,
            state: rho.clone(),
        }]];
        for depth in 2..=layers {
            let parents = nodes.last().expect("at least one layer");
            let mut next = Vec::with_capacity(parents.len() * 2);
            for parent in parents {
                let (through, reflected) = self.split(&parent.state)?;
                for state in [through, reflected] {
                    next.push(BranchNode {
                        depth,
                        potential: self.potential(&state)?,
                        state,
                    });
                }
            }
            nodes.push(next);
        }
        Ok(CascadeReport::from_nodes(label, nodes))
    }
}

/// Output state of a balanced beam splitter fed with `rho` and vacuum.
pub fn bs_output(rho: &DensityOperator) -> Result<DensityOperator> {
    let (_, dim) = single_mode(rho)?;
    BeamSplitter::new(dim)?.output(rho)
}

pub fn entanglement_potential(rho: &DensityOperator) -> Result<f64> {
    let (_, dim) = single_mode(rho)?;
    BeamSplitter::new(dim)?.potential(rho)
}

pub fn cascade(rho: &DensityOperator, layers: usize) -> Result<CascadeReport> {
    let (_, dim) = single_mode(rho)?;
    BeamSplitter::new(dim)?.cascade(rho, layers)
}

#[derive(Clone, Debug)]
pub struct BranchNode {
    /// Layer index, starting at 1.
    pub depth: usize,
    pub state: DensityOperator,
    pub potential: f64,
}

/// Per-layer potentials of a beam-splitter cascade. The children of node `i`
/// in layer `n` are nodes `2i` and `2i + 1` in layer `n + 1`.
#[derive(Clone, Debug)]
pub struct CascadeReport {
    pub subsystem: String,
    pub nodes: Vec<Vec<BranchNode>>,
    pub layers: Vec<Vec<f64>>,
    pub layer_sums: Vec<f64>,
    /// `layer_sums[n] / layer_sums[n-1]`, `None` where the parent sum is zero.
    pub depletion_ratios: Vec<Option<f64>>,
}

impl CascadeReport {
    fn from_nodes(subsystem: String, nodes: Vec<Vec<BranchNode>>) -> Self {
        let layers: Vec<Vec<f64>> = nodes
            .iter()
            .map(|l| l.iter().map(|n| n.potential).collect())
            .collect();
        let layer_sums: Vec<f64> = layers.iter().map(|l| l.iter().sum()).collect();
        let depletion_ratios = layer_sums
            .windows(2)
            .map(|w| (w[0] > 0.0).then(|| w[1] / w[0]))
            .collect();
        Self {
            subsystem,
            nodes,
            layers,
            layer_sums,
            depletion_ratios,
        }
    }

    pub fn depth(&self) -> usize {
        self.layers.len()
    }

    /// Largest spread between branch potentials within any single layer.
    pub fn branch_asymmetry(&self) -> f64 {
        self.layers
            .iter()
            .map(|l| {
                let max = l.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                let min = l.iter().copied().fold(f64::INFINITY, f64::min);
                max - min
            })
            .fold(0.0, f64::max)
    }
}

/// `N_c` plus every branch potential of both cascades through layer `l`.
pub fn total_nonclassicality(
    correlation: f64,
    field: &CascadeReport,
    atom: &CascadeReport,
    l: usize,
) -> Result<f64> {
    let available = field.depth().min(atom.depth());
    if l == 0 || l > available {
        return Err(Error::InsufficientLayers {
            requested: l,
            available,
        });
    }
    let local: f64 = field.layer_sums[..l]
        .iter()
        .chain(&atom.layer_sums[..l])
        .sum();
    Ok(correlation + local)
}

/// Geometric-series estimate `N_c + (N_f + N_a) / (1 - ratio)`.
pub fn extrapolate_total(correlation: f64, field: f64, atom: f64, ratio: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&ratio) {
        return Err(Error::param("ratio", format!("must lie in [0, 1), got {ratio}")));
    }
    Ok(correlation + (field + atom) / (1.0 - ratio))
}

/// Child/parent potential ratio for every branch whose parent exceeds `floor`.
pub fn depletion_ratios(report: &CascadeReport, floor: f64) -> Vec<f64> {
    report
        .layers
        .windows(2)
        .flat_map(|w| {
            let (parents, children) = (&w[0], &w[1]);
            children
                .iter()
                .enumerate()
                .filter_map(move |(i, &child)| {
                    let parent = parents[i / 2];
                    (parent > floor).then(|| child / parent)
                })
        })
        .collect()
}
