//! Dense operators over labelled composite Hilbert spaces.
//!
//! A [`ModeLayout`] fixes the tensor-product basis: subsystems are listed in
//! order and the leftmost one varies slowest, so for a layout `(f:3, a:2)` the
//! basis index of `|n_f, m_a⟩` is `2n + m`.

use std::collections::HashSet;
use std::fmt;

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Eigenvalues above `-NEGATIVITY_THRESHOLD` are treated as zero by [`negativity`].
pub const NEGATIVITY_THRESHOLD: f64 = 1e-12;

/// Maximum Hermiticity deviation accepted by [`hermitian_eigenvalues`].
pub const HERMITIAN_TOL: f64 = 1e-10;

const DENSITY_HERMITIAN_TOL: f64 = 1e-12;
const DENSITY_TRACE_TOL: f64 = 1e-12;
const DENSITY_EIGEN_FLOOR: f64 = -1e-10;
const STATE_NORM_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subsystem {
    pub label: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModeLayout {
    subsystems: Vec<Subsystem>,
}

impl ModeLayout {
    pub fn new<I, S>(subsystems: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, usize)>,
        S: Into<String>,
    {
        let subsystems: Vec<Subsystem> = subsystems
            .into_iter()
            .map(|(label, dim)| Subsystem {
                label: label.into(),
                dim,
            })
            .collect();
        if subsystems.is_empty() {
            return Err(Error::Shape("layout needs at least one subsystem".into()));
        }
        let mut seen = HashSet::new();
        for s in &subsystems {
            if s.dim < 2 {
                return Err(Error::InvalidDimension { dim: s.dim });
            }
            if !seen.insert(s.label.as_str()) {
                return Err(Error::DuplicateLabel(s.label.clone()));
            }
        }
        Ok(Self { subsystems })
    }

    pub fn single(label: impl Into<String>, dim: usize) -> Result<Self> {
        Self::new([(label.into(), dim)])
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn len(&self) -> usize {
        self.subsystems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsystems.is_empty()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.subsystems.iter().map(|s| s.label.as_str())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subsystems.iter().map(|s| s.dim).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.subsystems.iter().map(|s| s.dim).product()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.subsystems
            .iter()
            .position(|s| s.label == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.subsystems[self.position(label)?].dim)
    }

    /// Layout of `self ⊗ other`.
    pub fn concat(&self, other: &ModeLayout) -> Result<Self> {
        Self::new(
            self.subsystems
                .iter()
                .chain(&other.subsystems)
                .map(|s| (s.label.clone(), s.dim)),
        )
    }

    /// Split a flat basis index into per-subsystem digits.
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.subsystems.len()];
        for (k, s) in self.subsystems.iter().enumerate().rev() {
            out[k] = index % s.dim;
            index /= s.dim;
        }
        out
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.subsystems)
            .fold(0, |acc, (&d, s)| acc * s.dim + d)
    }
}

impl fmt::Display for ModeLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, s) in self.subsystems.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", s.label, s.dim)?;
        }
        write!(f, ")")
    }
}

/// Real eigenvalues in ascending order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    eigenvalues: Vec<f64>,
}

impl Spectrum {
    pub fn from_unsorted(mut eigenvalues: Vec<f64>) -> Self {
        eigenvalues.sort_by(f64::total_cmp);
        Self { eigenvalues }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn sum(&self) -> f64 {
        self.eigenvalues.iter().sum()
    }

    /// Sum of |λ| over eigenvalues below `-threshold`.
    pub fn negative_mass(&self, threshold: f64) -> f64 {
        self.eigenvalues
            .iter()
            .filter(|&&l| l < -threshold)
            .map(|l| -l)
            .sum()
    }
}

/// Eigen-decomposition `H = V diag(λ) V†` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn new(m: &CMatrix) -> Result<Self> {
        let sym = hermitian_part(m)?;
        let eig = SymmetricEigen::new(sym);
        Ok(Self {
            values: eig.eigenvalues.iter().copied().collect(),
            vectors: eig.eigenvectors,
        })
    }

    /// `exp(-i t H)`.
    pub fn propagator(&self, t: f64) -> CMatrix {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for (k, &lambda) in self.values.iter().enumerate() {
            let phase = C64::from_polar(1.0, -lambda * t);
            for r in 0..n {
                scaled[(r, k)] *= phase;
            }
        }
        scaled * self.vectors.adjoint()
    }
}

fn hermitian_part(m: &CMatrix) -> Result<CMatrix> {
    if !m.is_square() {
        return Err(Error::Shape(format!(
            "expected a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let deviation = hermiticity_deviation(m);
    if deviation > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation });
    }
    Ok((m + m.adjoint()).scale(0.5))
}

pub fn hermiticity_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for r in 0..n {
        for c in r..n {
            worst = worst.max((m[(r, c)] - m[(c, r)].conj()).norm());
        }
    }
    worst
}

/// Truncated bosonic annihilation operator on `d` Fock levels.
pub fn annihilation(d: usize) -> Result<CMatrix> {
    if d < 2 {
        return Err(Error::InvalidDimension { dim: d });
    }
    let mut a = CMatrix::zeros(d, d);
    for n in 1..d {
        a[(n - 1, n)] = C64::new((n as f64).sqrt(), 0.0);
    }
    Ok(a)
}

/// `a†a` on `d` Fock levels.
pub fn number_operator(d: usize) -> Result<CMatrix> {
    if d < 2 {
        return Err(Error::InvalidDimension { dim: d });
    }
    Ok(CMatrix::from_diagonal(&CVector::from_iterator(
        d,
        (0..d).map(|n| C64::new(n as f64, 0.0)),
    )))
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// A tensor factor: either an operator or a ket.
#[derive(Clone, Debug, PartialEq)]
pub enum Operand {
    Matrix(CMatrix),
    Vector(CVector),
}

/// Kronecker product of an ordered list of factors, all matrices or all vectors.
pub fn tensor(factors: &[Operand]) -> Result<Operand> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::Shape("tensor of an empty list".into()))?;
    rest.iter().try_fold(first.clone(), |acc, f| match (acc, f) {
        (Operand::Matrix(a), Operand::Matrix(b)) => {
            if !a.is_square() || !b.is_square() {
                return Err(Error::Shape("tensor factors must be square".into()));
            }
            Ok(Operand::Matrix(a.kronecker(b)))
        }
        (Operand::Vector(a), Operand::Vector(b)) => Ok(Operand::Vector(a.kronecker(b))),
        _ => Err(Error::MixedOperands),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    layout: ModeLayout,
    amplitudes: CVector,
}

impl StateVector {
    pub fn new(layout: ModeLayout, amplitudes: CVector) -> Result<Self> {
        check_len(&layout, amplitudes.len())?;
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > STATE_NORM_TOL {
            return Err(Error::InvalidState { norm });
        }
        Ok(Self { layout, amplitudes })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(layout: ModeLayout, amplitudes: CVector) -> Result<Self> {
        check_len(&layout, amplitudes.len())?;
        let norm = amplitudes.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState { norm });
        }
        Ok(Self {
            layout,
            amplitudes: amplitudes.unscale(norm),
        })
    }

    /// Computational basis ket with the given per-subsystem levels.
    pub fn basis(layout: ModeLayout, levels: &[usize]) -> Result<Self> {
        if levels.len() != layout.len() {
            return Err(Error::Shape(format!(
                "{} levels given for layout {}",
                levels.len(),
                layout
            )));
        }
        for (&l, s) in levels.iter().zip(layout.subsystems()) {
            if l >= s.dim {
                return Err(Error::Shape(format!(
                    "level {l} out of range for `{}` (dim {})",
                    s.label, s.dim
                )));
            }
        }
        let mut amps = CVector::zeros(layout.total_dim());
        amps[layout.index(levels)] = C64::new(1.0, 0.0);
        Ok(Self {
            layout,
            amplitudes: amps,
        })
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }

    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        Ok(Self {
            layout: self.layout.concat(&other.layout)?,
            amplitudes: self.amplitudes.kronecker(&other.amplitudes),
        })
    }
}

fn check_len(layout: &ModeLayout, n: usize) -> Result<()> {
    if n != layout.total_dim() {
        return Err(Error::Shape(format!(
            "length {n} does not match layout {layout} (dim {})",
            layout.total_dim()
        )));
    }
    Ok(())
}

/// Hermitian, unit-trace, positive-semidefinite operator over a [`ModeLayout`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    layout: ModeLayout,
    matrix: CMatrix,
}

impl DensityOperator {
    /// Validates the matrix against the density-operator invariants.
    pub fn new(layout: ModeLayout, matrix: CMatrix) -> Result<Self> {
        let n = layout.total_dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::Shape(format!(
                "{}x{} matrix for layout {layout} (dim {n})",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        let herm = hermiticity_deviation(&matrix);
        if herm > DENSITY_HERMITIAN_TOL {
            return Err(Error::InvalidDensity(format!(
                "Hermiticity deviation {herm:.3e}"
            )));
        }
        let trace = matrix.trace();
        if (trace - C64::new(1.0, 0.0)).norm() > DENSITY_TRACE_TOL {
            return Err(Error::InvalidDensity(format!("trace {trace}")));
        }
        let min = hermitian_eigenvalues(&matrix)?.min();
        if min < DENSITY_EIGEN_FLOOR {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
        Ok(Self { layout, matrix })
    }

    pub(crate) fn from_parts(layout: ModeLayout, matrix: CMatrix) -> Self {
        debug_assert_eq!(matrix.nrows(), layout.total_dim());
        Self { layout, matrix }
    }

    pub fn from_pure(state: &StateVector) -> Self {
        let psi = state.amplitudes();
        Self::from_parts(state.layout().clone(), psi * psi.adjoint())
    }

    /// Diagonal operator from real weights summing to one.
    pub fn from_diagonal(layout: ModeLayout, weights: &[f64]) -> Result<Self> {
        check_len(&layout, weights.len())?;
        let diag = CVector::from_iterator(weights.len(), weights.iter().map(|&w| C64::new(w, 0.0)));
        Self::new(layout, CMatrix::from_diagonal(&diag))
    }

    pub fn maximally_mixed(layout: ModeLayout) -> Self {
        let n = layout.total_dim();
        Self::from_parts(layout, CMatrix::identity(n, n).unscale(n as f64))
    }

    pub fn layout(&self) -> &ModeLayout {
        &self.layout
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn tensor(&self, other: &DensityOperator) -> Result<Self> {
        Ok(Self::from_parts(
            self.layout.concat(&other.layout)?,
            self.matrix.kronecker(&other.matrix),
        ))
    }

    /// `U ρ U†` for a unitary `U` of matching size.
    pub fn conjugate(&self, unitary: &CMatrix) -> Result<Self> {
        if unitary.nrows() != self.dim() || unitary.ncols() != self.dim() {
            return Err(Error::Shape(format!(
                "{}x{} unitary for dimension {}",
                unitary.nrows(),
                unitary.ncols(),
                self.dim()
            )));
        }
        Ok(Self::from_parts(
            self.layout.clone(),
            unitary * &self.matrix * unitary.adjoint(),
        ))
    }

    /// Same matrix under new subsystem labels (dimensions must match).
    pub fn relabel<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        if labels.len() != self.layout.len() {
            return Err(Error::Shape(format!(
                "{} labels for layout {}",
                labels.len(),
                self.layout
            )));
        }
        let layout = ModeLayout::new(
            labels
                .iter()
                .zip(self.layout.subsystems())
                .map(|(l, s)| (l.as_ref().to_string(), s.dim)),
        )?;
        Ok(Self::from_parts(layout, self.matrix.clone()))
    }

    pub fn expectation(&self, op: &CMatrix) -> C64 {
        (&self.matrix * op).trace()
    }

    pub fn partial_trace(&self, keep: &[&str]) -> Result<Self> {
        partial_trace(self, keep)
    }

    pub fn partial_transpose(&self, label: &str) -> Result<CMatrix> {
        partial_transpose(self, label)
    }

    pub fn diagnostics(&self, tol: f64) -> DensityDiagnostics {
        validate_density(&self.matrix, tol)
    }
}

/// Reduced operator on the `keep` subsystems, in their original order.
pub fn partial_trace(rho: &DensityOperator, keep: &[&str]) -> Result<DensityOperator> {
    let layout = rho.layout();
    if keep.is_empty() {
        return Err(Error::Shape("partial trace must keep at least one subsystem".into()));
    }
    let mut kept_mask = vec![false; layout.len()];
    for label in keep {
        kept_mask[layout.position(label)?] = true;
    }
    let kept = ModeLayout::new(
        layout
            .subsystems()
            .iter()
            .zip(&kept_mask)
            .filter(|(_, &k)| k)
            .map(|(s, _)| (s.label.clone(), s.dim)),
    )?;
    if kept.len() == layout.len() {
        return Ok(rho.clone());
    }

    let n = layout.total_dim();
    let split: Vec<(usize, usize)> = (0..n)
        .map(|i| {
            let digits = layout.digits(i);
            let (mut k, mut t) = (0usize, 0usize);
            for ((d, s), &keep_it) in digits.iter().zip(layout.subsystems()).zip(&kept_mask) {
                if keep_it {
                    k = k * s.dim + d;
                } else {
                    t = t * s.dim + d;
                }
            }
            (k, t)
        })
        .collect();

    let m = kept.total_dim();
    let mut out = CMatrix::zeros(m, m);
    let src = rho.matrix();
    for r in 0..n {
        let (kr, tr) = split[r];
        for c in 0..n {
            let (kc, tc) = split[c];
            if tr == tc {
                out[(kr, kc)] += src[(r, c)];
            }
        }
    }
    Ok(DensityOperator::from_parts(kept, out))
}

/// Transpose on the indices of `label` only.
pub fn partial_transpose(rho: &DensityOperator, label: &str) -> Result<CMatrix> {
    let layout = rho.layout();
    let pos = layout.position(label)?;
    let n = layout.total_dim();
    let digits: Vec<Vec<usize>> = (0..n).map(|i| layout.digits(i)).collect();
    let src = rho.matrix();
    let mut out = CMatrix::zeros(n, n);
    let mut rd = vec![0; layout.len()];
    let mut cd = vec![0; layout.len()];
    for r in 0..n {
        for c in 0..n {
            rd.copy_from_slice(&digits[r]);
            cd.copy_from_slice(&digits[c]);
            std::mem::swap(&mut rd[pos], &mut cd[pos]);
            out[(layout.index(&rd), layout.index(&cd))] = src[(r, c)];
        }
    }
    Ok(out)
}

pub fn hermitian_eigenvalues(m: &CMatrix) -> Result<Spectrum> {
    let sym = hermitian_part(m)?;
    let values = sym.symmetric_eigenvalues();
    Ok(Spectrum::from_unsorted(values.iter().copied().collect()))
}

/// Sum of |λ| over the negative eigenvalues of the partial transpose on `label`.
pub fn negativity(rho: &DensityOperator, label: &str) -> Result<f64> {
    let pt = partial_transpose(rho, label)?;
    Ok(hermitian_eigenvalues(&pt)?.negative_mass(NEGATIVITY_THRESHOLD))
}

/// l1-norm of the off-diagonal part in the computational basis.
pub fn l1_coherence(rho: &DensityOperator) -> f64 {
    let m = rho.matrix();
    let n = m.nrows();
    let mut total = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                total += m[(r, c)].norm();
            }
        }
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityDiagnostics {
    pub hermiticity_deviation: f64,
    pub trace_deviation: f64,
    /// Smallest eigenvalue of the Hermitian part.
    pub min_eigenvalue: f64,
    pub tol: f64,
}

impl DensityDiagnostics {
    pub fn is_valid(&self) -> bool {
        self.hermiticity_deviation <= self.tol
            && self.trace_deviation <= self.tol
            && self.min_eigenvalue >= -self.tol
    }
}

/// Reports how far `m` is from a valid density matrix. Never fails.
pub fn validate_density(m: &CMatrix, tol: f64) -> DensityDiagnostics {
    if !m.is_square() {
        return DensityDiagnostics {
            hermiticity_deviation: f64::INFINITY,
            trace_deviation: f64::INFINITY,
            min_eigenvalue: f64::NEG_INFINITY,
            tol,
        };
    }
    let hermiticity_deviation = hermiticity_deviation(m);
    let trace_deviation = (m.trace() - C64::new(1.0, 0.0)).norm();
    let sym = (m + m.adjoint()).scale(0.5);
    let min_eigenvalue = sym
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    DensityDiagnostics {
        hermiticity_deviation,
        trace_deviation,
        min_eigenvalue,
        tol,
    }
}
