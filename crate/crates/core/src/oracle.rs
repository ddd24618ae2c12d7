//! Closed-form reference values for the four initial states.
//!
//! These are straight transcriptions of known analytic results and never call
//! into the numerical engine. Negativities are clamped at zero to absorb
//! roundoff where the exact value vanishes.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use crate::error::{Error, Result};
use crate::hilbert::{CMatrix, C64};
use crate::nonclassicality::DEFAULT_EXTRAPOLATION_RATIO;

/// Rabi frequency of the two-excitation doublet.
pub const CASE_B_FREQUENCY: f64 = SQRT_2;

/// Frequency printed alongside the Fock-state closed forms; kept selectable.
pub const CASE_B_PRINTED_FREQUENCY: f64 = 1.732_050_807_568_877_2;

const WEIGHT_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleRecord {
    pub t: f64,
    pub n_c: f64,
    pub n_f: f64,
    pub n_a: f64,
    pub n_f1: f64,
    pub n_a1: f64,
    pub n_tot1: f64,
    pub n_tot2: f64,
    pub n_tot_inf: f64,
    pub chi: f64,
    pub xi: f64,
}

/// `χ(T) = ¼√(3 + cos 4T)`
pub fn chi(t: f64) -> f64 {
    0.25 * (3.0 + (4.0 * t).cos()).sqrt()
}

/// `ξ(T) = √(11 + 4cos 2T + cos 4T)`
pub fn xi(t: f64) -> f64 {
    (11.0 + 4.0 * (2.0 * t).cos() + (4.0 * t).cos()).sqrt()
}

fn correlation(t: f64) -> f64 {
    0.5 * (2.0 * t).sin().abs()
}

fn field_potential(t: f64) -> f64 {
    (-0.25 * (1.0 + (2.0 * t).cos() - (3.0 + (4.0 * t).cos()).sqrt())).max(0.0)
}

fn field_residual(t: f64) -> f64 {
    (-(3.0 + (2.0 * t).cos() - xi(t)) / 8.0).max(0.0)
}

/// Vacuum field, excited atom.
pub fn case_a(t: f64) -> OracleRecord {
    let n_c = correlation(t);
    let n_f = field_potential(t);
    let n_a = field_potential(t + FRAC_PI_2);
    let n_f1 = field_residual(t);
    let n_a1 = field_residual(t + FRAC_PI_2);
    let n_tot1 = n_c + n_f + n_a;
    OracleRecord {
        t,
        n_c,
        n_f,
        n_a,
        n_f1,
        n_a1,
        n_tot1,
        n_tot2: n_tot1 + 2.0 * n_f1 + 2.0 * n_a1,
        n_tot_inf: n_c + (n_f + n_a) / (1.0 - DEFAULT_EXTRAPOLATION_RATIO),
        chi: chi(t),
        xi: xi(t),
    }
}

/// Eigenvalues of the partially transposed splitter output for `ρ_f(T)`:
/// `[sin²T/2, sin²T/2, cos²T/2 + χ, cos²T/2 − χ]`.
pub fn case_a_field_pt_eigenvalues(t: f64) -> [f64; 4] {
    let s2 = t.sin().powi(2) / 2.0;
    let c2 = t.cos().powi(2) / 2.0;
    [s2, s2, c2 + chi(t), c2 - chi(t)]
}

/// Same for the first residual layer:
/// `[sin²T/4, sin²T/4, (3 + cos 2T + ξ)/8, (3 + cos 2T − ξ)/8]`.
pub fn case_a_residual_pt_eigenvalues(t: f64) -> [f64; 4] {
    let s = t.sin().powi(2) / 4.0;
    let base = 3.0 + (2.0 * t).cos();
    [s, s, (base + xi(t)) / 8.0, (base - xi(t)) / 8.0]
}

fn diag(values: &[f64]) -> CMatrix {
    let mut m = CMatrix::zeros(values.len(), values.len());
    for (k, &v) in values.iter().enumerate() {
        m[(k, k)] = C64::new(v, 0.0);
    }
    m
}

/// `(ρ_f, ρ_a)` for the vacuum/excited case.
pub fn case_a_reduced(t: f64) -> (CMatrix, CMatrix) {
    let (s2, c2) = (t.sin().powi(2), t.cos().powi(2));
    (diag(&[c2, s2]), diag(&[s2, c2]))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CaseBRecord {
    pub t: f64,
    pub n_c: f64,
    pub n_a: f64,
}

/// `|2_f⟩|0_a⟩` correlation and atom potential at doublet frequency `omega_b`.
pub fn case_b(t: f64, omega_b: f64) -> Result<CaseBRecord> {
    if !(omega_b > 0.0 && omega_b.is_finite()) {
        return Err(Error::param("omega_b", format!("must be positive, got {omega_b}")));
    }
    let w = omega_b * t;
    Ok(CaseBRecord {
        t,
        n_c: correlation(w),
        n_a: field_potential(w),
    })
}

fn check_weights(name: &'static str, a: f64, b: f64) -> Result<()> {
    if a < 0.0 || b < 0.0 || ((a + b) - 1.0).abs() > WEIGHT_TOL {
        return Err(Error::param(name, format!("need non-negative weights summing to 1, got {a} and {b}")));
    }
    Ok(())
}

/// `(ρ_a 2×2, ρ_f 3×3)` for a thermal field truncated to `p0|0⟩⟨0| + p1|1⟩⟨1|`.
pub fn case_c_reduced(t: f64, p0: f64, p1: f64) -> Result<(CMatrix, CMatrix)> {
    check_weights("p0/p1", p0, p1)?;
    let (s1, c1) = (t.sin().powi(2), t.cos().powi(2));
    let r = SQRT_2 * t;
    let (s2, c2) = (r.sin().powi(2), r.cos().powi(2));
    let atom = diag(&[p0 * s1 + p1 * s2, p0 * c1 + p1 * c2]);
    let field = diag(&[p0 * c1, p0 * s1 + p1 * c2, p1 * s2]);
    Ok((atom, field))
}

/// `(ρ_a 2×2, ρ_f 3×3)` for a coherent field truncated to `c0|0⟩ + c1|1⟩`.
pub fn case_d_reduced(t: f64, c0: f64, c1: f64) -> Result<(CMatrix, CMatrix)> {
    check_weights("c0/c1", c0 * c0, c1 * c1)?;
    Ok(case_d_reduced_unnormalized(t, c0, c1))
}

/// As [`case_d_reduced`] without the normalization check.
pub fn case_d_reduced_unnormalized(t: f64, c0: f64, c1: f64) -> (CMatrix, CMatrix) {
    let (s, c) = t.sin_cos();
    let r = SQRT_2 * t;
    let (sr, cr) = r.sin_cos();
    let (p0, p1) = (c0 * c0, c1 * c1);

    let mut atom = diag(&[p0 * s * s + p1 * sr * sr, p0 * c * c + p1 * cr * cr]);
    // i c0 c1 cos(√2T) sin T |1_a⟩⟨0_a| + h.c.
    let coh = C64::new(0.0, c0 * c1 * cr * s);
    atom[(1, 0)] = coh;
    atom[(0, 1)] = coh.conj();

    let mut field = diag(&[p0 * c * c, p0 * s * s + p1 * cr * cr, p1 * sr * sr]);
    let f01 = C64::new(c0 * c1 * c * cr, 0.0);
    let f12 = C64::new(c0 * c1 * s * sr, 0.0);
    field[(0, 1)] = f01;
    field[(1, 0)] = f01.conj();
    field[(1, 2)] = f12;
    field[(2, 1)] = f12.conj();
    (atom, field)
}
