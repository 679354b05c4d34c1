//! Eigenstates of the Bogoliubov-transformed ladder operator
//! cosh(r) B + e^{i phi} sinh(r) B+ and their quadrature statistics.
//!
//! Solver strategy: at phi = 0 the matrix is real tridiagonal with
//! superdiagonal C_N = cosh(r) F_N and subdiagonal S_N = sinh(r) F_N. It is
//! diagonally similar (weights tanh(r)^{N/2}) to the symmetric tridiagonal
//! with off-diagonals sqrt(C_N S_N), whose eigenvalues a QL sweep delivers.
//! Eigenvectors in the original basis come from the three-term recurrence
//! x_{N+1} = (alpha x_N - S_N x_{N-1})/C_{N+1}, x_0 = 1, with inverse
//! iteration as a fallback when the recurrence loses accuracy. The direct
//! tanh^{N/2} unscaling is avoided on purpose: it underflows long before the
//! recurrence has any trouble. Nonzero phi is an exact similarity away from
//! the phi = 0 problem and is applied as a phase rotation afterwards.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::{LadderSpec, OperatorMatrix};
use crate::error::{Error, Result};
use crate::linalg::{symmetric_tridiagonal_eigenvalues, tridiagonal_inverse_iteration};

use std::f64::consts::TAU;

/// Squeeze amplitude r >= 0 and phase phi, stored normalized to [0, 2 pi).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SqueezeParams {
    r: f64,
    phi: f64,
}

impl SqueezeParams {
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !r.is_finite() || r < 0.0 {
            return Err(Error::InvalidSqueezeAmplitude(r));
        }
        if !phi.is_finite() {
            return Err(Error::InvalidSqueezePhase(phi));
        }
        Ok(Self {
            r,
            phi: phi.rem_euclid(TAU),
        })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// r = 0 leaves the transformed operator nilpotent; eigensolve rejects it.
    pub fn is_degenerate(&self) -> bool {
        self.r == 0.0
    }
}

/// Residual and identity-check tolerances used across the solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Largest accepted eigenpair residual, relative to the Frobenius norm.
    pub eigen_residual: f64,
    /// Entrywise tolerance for exact operator identities.
    pub identity: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            eigen_residual: 1e-9,
            identity: 1e-12,
        }
    }
}

/// Tridiagonal matrix of the transformed operator in the Fock basis.
///
/// Superdiagonal entries C_N = cosh(r) F_N are phase-free; the phase sits
/// entirely on the subdiagonal S_N = e^{i phi} sinh(r) F_N.
#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovMatrix {
    n_s: usize,
    params: SqueezeParams,
    sup: Vec<f64>,
    sub_mag: Vec<f64>,
}

impl BogoliubovMatrix {
    pub fn new(spec: &LadderSpec, params: SqueezeParams) -> Self {
        let (ch, sh) = (params.r.cosh(), params.r.sinh());
        let sup = (1..=spec.pair_states()).map(|n| ch * spec.f(n)).collect();
        let sub_mag = (1..=spec.pair_states()).map(|n| sh * spec.f(n)).collect();
        Self {
            n_s: spec.pair_states(),
            params,
            sup,
            sub_mag,
        }
    }

    pub fn pair_states(&self) -> usize {
        self.n_s
    }

    pub fn dim(&self) -> usize {
        self.n_s + 1
    }

    pub fn params(&self) -> SqueezeParams {
        self.params
    }

    /// C_N for N = 1..=n_s.
    pub fn superdiagonal(&self) -> Vec<Complex64> {
        self.sup.iter().map(|&c| Complex64::new(c, 0.0)).collect()
    }

    /// S_N = e^{i phi} sinh(r) F_N for N = 1..=n_s.
    pub fn subdiagonal(&self) -> Vec<Complex64> {
        let phase = Complex64::from_polar(1.0, self.params.phi);
        self.sub_mag.iter().map(|&s| phase * s).collect()
    }

    pub fn to_operator_matrix(&self) -> OperatorMatrix {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        let sub = self.subdiagonal();
        for n in 1..=self.n_s {
            m[(n - 1, n)] = Complex64::new(self.sup[n - 1], 0.0);
            m[(n, n - 1)] = sub[n - 1];
        }
        OperatorMatrix::from_matrix(m).expect("square by construction")
    }

    /// Frobenius norm; the reference scale for residual tolerances.
    pub fn frobenius_norm(&self) -> f64 {
        self.sup
            .iter()
            .chain(self.sub_mag.iter())
            .map(|v| v * v)
            .sum::<f64>()
            .sqrt()
    }
}

/// Normalized eigenstate of a Bogoliubov matrix.
///
/// `index` is the position under the canonical eigenvalue ordering
/// (ascending real part, ties by ascending imaginary part). Amplitudes carry
/// unit Euclidean norm, which is the physical norm in the orthonormal Fock
/// basis, and are gauge-fixed so the vacuum amplitude is real positive.
#[derive(Debug, Clone, PartialEq)]
pub struct SqueezedState {
    n_s: usize,
    params: SqueezeParams,
    index: usize,
    alpha: Complex64,
    amplitudes: DVector<Complex64>,
    d: f64,
}

impl SqueezedState {
    pub fn pair_states(&self) -> usize {
        self.n_s
    }

    pub fn params(&self) -> SqueezeParams {
        self.params
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Expectation value of the deviation operator, d = sum |x_N|^2 2N/n_s.
    pub fn d_value(&self) -> f64 {
        self.d
    }
}

/// All eigenpairs with default tolerances. See [`eigensolve_with`].
pub fn eigensolve(m: &BogoliubovMatrix) -> Result<Vec<SqueezedState>> {
    eigensolve_with(m, &Tolerances::default())
}

/// All n_s + 1 eigenpairs of the Bogoliubov matrix, canonically ordered.
///
/// Every returned eigenpair satisfies ||M x - alpha x|| <= eigen_residual
/// times the Frobenius norm of M; otherwise this errors rather than handing
/// back a vector it cannot vouch for. r = 0 is rejected as degenerate.
pub fn eigensolve_with(m: &BogoliubovMatrix, tol: &Tolerances) -> Result<Vec<SqueezedState>> {
    if m.params.is_degenerate() {
        return Err(Error::DegenerateSqueeze);
    }
    let real_pairs = solve_phase_zero(m, tol)?;
    let scale = m.frobenius_norm();

    let mut states: Vec<SqueezedState> = real_pairs
        .into_iter()
        .enumerate()
        .map(|(index, (alpha, x))| {
            let amplitudes =
                DVector::from_iterator(x.len(), x.iter().map(|&v| Complex64::new(v, 0.0)));
            let d = deviation_expectation(m.n_s, &amplitudes);
            SqueezedState {
                n_s: m.n_s,
                params: SqueezeParams {
                    r: m.params.r,
                    phi: 0.0,
                },
                index,
                alpha: Complex64::new(alpha, 0.0),
                amplitudes,
                d,
            }
        })
        .collect();

    if m.params.phi != 0.0 {
        states = phase_rotate(&states, m.params.phi)?;
        // the rotation is an exact similarity; verify rather than trust
        let sub = m.subdiagonal();
        let sup = m.superdiagonal();
        for s in &states {
            let r = complex_residual(&sup, &sub, s.alpha, &s.amplitudes);
            if r.is_nan() || r > tol.eigen_residual * scale {
                return Err(Error::ResidualTooLarge {
                    index: s.index,
                    residual: r,
                    tolerance: tol.eigen_residual * scale,
                });
            }
        }
    }
    Ok(states)
}

/// phi = 0 fast path: eigenvalues of the symmetrized problem.
///
/// Returns the eigenvalues of the matrix itself (ascending) and the scale
/// sqrt(sinh 2r); eigenvalues divided by the scale are the r-independent
/// spectrum of the chi quadrature.
pub fn solve_symmetrized(m: &BogoliubovMatrix) -> Result<(Vec<f64>, f64)> {
    if m.params.phi != 0.0 {
        return Err(Error::PhaseNotZero(m.params.phi));
    }
    if m.params.is_degenerate() {
        return Err(Error::DegenerateSqueeze);
    }
    let t: Vec<f64> = m
        .sup
        .iter()
        .zip(&m.sub_mag)
        .map(|(&c, &s)| (c * s).sqrt())
        .collect();
    let eigenvalues = symmetric_tridiagonal_eigenvalues(&vec![0.0; m.dim()], &t)?;
    Ok((eigenvalues, (2.0 * m.params.r).sinh().sqrt()))
}

/// Map eigenpairs to squeeze phase `old phi + phi`: alpha -> e^{i phi/2} alpha
/// and x_N -> e^{i N phi/2} x_N, then reorder canonically.
///
/// The rotation uses phi as given (not mod 2 pi), so a full 2 pi turn lands on
/// the negated eigenvalues: each state maps onto its mirror partner, leaving
/// the spectrum set unchanged.
pub fn phase_rotate(states: &[SqueezedState], phi: f64) -> Result<Vec<SqueezedState>> {
    if !phi.is_finite() {
        return Err(Error::InvalidSqueezePhase(phi));
    }
    let half = Complex64::from_polar(1.0, phi / 2.0);
    let mut rotated: Vec<SqueezedState> = states
        .iter()
        .map(|s| {
            let amplitudes = DVector::from_iterator(
                s.amplitudes.len(),
                s.amplitudes
                    .iter()
                    .enumerate()
                    .map(|(n, &v)| v * Complex64::from_polar(1.0, n as f64 * phi / 2.0)),
            );
            let params = SqueezeParams::new(s.params.r, s.params.phi + phi)
                .expect("finite phase, validated amplitude");
            SqueezedState {
                n_s: s.n_s,
                params,
                index: 0,
                alpha: s.alpha * half,
                amplitudes,
                d: s.d,
            }
        })
        .collect();
    rotated.sort_by(|a, b| {
        a.alpha
            .re
            .total_cmp(&b.alpha.re)
            .then(a.alpha.im.total_cmp(&b.alpha.im))
    });
    for (index, s) in rotated.iter_mut().enumerate() {
        s.index = index;
    }
    Ok(rotated)
}

/// x+ op x for the state's amplitude vector.
pub fn expectation(state: &SqueezedState, op: &OperatorMatrix) -> Result<Complex64> {
    op.expectation(state.amplitudes())
}

/// (var_chi, var_pi) of the state, computed from the quadrature operators.
pub fn quadrature_variances(state: &SqueezedState) -> (f64, f64) {
    let spec = LadderSpec::new(state.n_s).expect("state carries a valid n_s");
    quadrature_variances_of(&spec, &state.amplitudes).expect("dimensions match by construction")
}

/// (var_chi, var_pi) for an arbitrary nonzero coefficient vector.
///
/// Variances come from applying the quadrature matrices, never from the
/// analytic e^{-2r}(1-d)/2 shortcut; the analytic forms stay in the tests as
/// oracles. Tiny negative roundoff is clamped to zero.
pub fn quadrature_variances_of(spec: &LadderSpec, x: &DVector<Complex64>) -> Result<(f64, f64)> {
    check_dim(spec, x)?;
    let nrm2 = x.norm_squared();
    let chi_x = apply_chi(spec, x);
    let pi_x = apply_pi(spec, x);
    let mean_chi = x.dotc(&chi_x).re / nrm2;
    let mean_pi = x.dotc(&pi_x).re / nrm2;
    let var_chi = chi_x.norm_squared() / nrm2 - mean_chi * mean_chi;
    let var_pi = pi_x.norm_squared() / nrm2 - mean_pi * mean_pi;
    Ok((var_chi.max(0.0), var_pi.max(0.0)))
}

/// (uncertainty product, state-dependent bound) for the state.
pub fn uncertainty_product(state: &SqueezedState) -> (f64, f64) {
    let spec = LadderSpec::new(state.n_s).expect("state carries a valid n_s");
    uncertainty_product_of(&spec, &state.amplitudes).expect("dimensions match by construction")
}

/// (sqrt(var_chi var_pi), |<[chi, pi]>|/2) for an arbitrary nonzero vector.
///
/// The bound is evaluated from the commutator expectation itself, which
/// equals (1-d)/2 on states with d <= 1.
pub fn uncertainty_product_of(spec: &LadderSpec, x: &DVector<Complex64>) -> Result<(f64, f64)> {
    check_dim(spec, x)?;
    let (var_chi, var_pi) = quadrature_variances_of(spec, x)?;
    let nrm2 = x.norm_squared();
    let chi_x = apply_chi(spec, x);
    let pi_x = apply_pi(spec, x);
    // <[chi, pi]> = (chi x)+(pi x) - conj(...) = 2i Im((chi x)+(pi x))
    let cross = chi_x.dotc(&pi_x);
    let bound = cross.im.abs() / nrm2;
    Ok(((var_chi * var_pi).sqrt(), bound))
}

/// Variances (e^{-2r}/2, e^{+2r}/2) of an elementary bosonic squeezed state.
pub fn bosonic_reference(r: f64) -> (f64, f64) {
    ((-2.0 * r).exp() / 2.0, (2.0 * r).exp() / 2.0)
}

fn check_dim(spec: &LadderSpec, x: &DVector<Complex64>) -> Result<()> {
    if spec.dim() != x.len() {
        return Err(Error::DimensionMismatch {
            left: spec.dim(),
            right: x.len(),
        });
    }
    Ok(())
}

fn apply_chi(spec: &LadderSpec, x: &DVector<Complex64>) -> DVector<Complex64> {
    let dim = spec.dim();
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    DVector::from_fn(dim, |n, _| {
        let mut v = Complex64::ZERO;
        if n > 0 {
            v += x[n - 1] * (spec.f(n) * inv);
        }
        if n + 1 < dim {
            v += x[n + 1] * (spec.f(n + 1) * inv);
        }
        v
    })
}

fn apply_pi(spec: &LadderSpec, x: &DVector<Complex64>) -> DVector<Complex64> {
    let dim = spec.dim();
    let inv = std::f64::consts::FRAC_1_SQRT_2;
    let i = Complex64::new(0.0, 1.0);
    DVector::from_fn(dim, |n, _| {
        let mut v = Complex64::ZERO;
        if n > 0 {
            v += x[n - 1] * (spec.f(n) * inv);
        }
        if n + 1 < dim {
            v -= x[n + 1] * (spec.f(n + 1) * inv);
        }
        v * i
    })
}

fn deviation_expectation(n_s: usize, x: &DVector<Complex64>) -> f64 {
    x.iter()
        .enumerate()
        .map(|(n, v)| v.norm_sqr() * 2.0 * n as f64 / n_s as f64)
        .sum()
}

/// Residual of the recurrence-or-iteration eigenvector below which no polish
/// is attempted; chosen well under the contract tolerance so polished pairs
/// keep the downstream variance identities at the 1e-9 level.
const POLISH_TRIGGER: f64 = 1e-13;

fn solve_phase_zero(m: &BogoliubovMatrix, tol: &Tolerances) -> Result<Vec<(f64, Vec<f64>)>> {
    let c = &m.sup;
    let s = &m.sub_mag;
    let t: Vec<f64> = c
        .iter()
        .zip(s)
        .map(|(&ci, &si)| (ci * si).sqrt())
        .collect();
    let eigenvalues = symmetric_tridiagonal_eigenvalues(&vec![0.0; m.dim()], &t)?;
    let scale = m.frobenius_norm();

    let mut out = Vec::with_capacity(m.dim());
    for (index, &alpha) in eigenvalues.iter().enumerate() {
        let mut x = match recurrence_vector(c, s, alpha) {
            Some(x) => x,
            None => normalized_ones(m.dim()),
        };
        let mut residual = residual_phase_zero(c, s, alpha, &x);
        if residual > POLISH_TRIGGER * scale {
            for sweeps in [2usize, 3] {
                let seed = x.clone();
                let refined = tridiagonal_inverse_iteration(s, &vec![0.0; m.dim()], c, alpha, &seed, sweeps);
                let refined_residual = residual_phase_zero(c, s, alpha, &refined);
                if refined_residual < residual {
                    x = refined;
                    residual = refined_residual;
                }
                if residual <= POLISH_TRIGGER * scale {
                    break;
                }
            }
        }
        if residual.is_nan() || residual > tol.eigen_residual * scale {
            return Err(Error::ResidualTooLarge {
                index,
                residual,
                tolerance: tol.eigen_residual * scale,
            });
        }
        // gauge: vacuum amplitude strictly positive (it never vanishes on an
        // eigenvector; x_0 = 0 would force x = 0 through the recurrence)
        if x[0] < 0.0 {
            for v in x.iter_mut() {
                *v = -*v;
            }
        }
        out.push((alpha, x));
    }
    Ok(out)
}

/// Forward three-term recurrence for the eigenvector at eigenvalue alpha.
/// Rescales on the fly to dodge overflow; returns None if it degenerates.
fn recurrence_vector(c: &[f64], s: &[f64], alpha: f64) -> Option<Vec<f64>> {
    let dim = c.len() + 1;
    let mut x = vec![0.0f64; dim];
    x[0] = 1.0;
    if dim > 1 {
        x[1] = alpha / c[0];
    }
    for n in 1..dim - 1 {
        let next = (alpha * x[n] - s[n - 1] * x[n - 1]) / c[n];
        if !next.is_finite() {
            return None;
        }
        x[n + 1] = next;
        if next.abs() > 1e140 {
            let inv = 1.0 / next.abs();
            for v in x[..=n + 1].iter_mut() {
                *v *= inv;
            }
        }
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    if !norm.is_finite() || norm == 0.0 {
        return None;
    }
    for v in x.iter_mut() {
        *v /= norm;
    }
    Some(x)
}

fn normalized_ones(dim: usize) -> Vec<f64> {
    vec![1.0 / (dim as f64).sqrt(); dim]
}

fn residual_phase_zero(c: &[f64], s: &[f64], alpha: f64, x: &[f64]) -> f64 {
    let dim = x.len();
    let mut acc = 0.0f64;
    for n in 0..dim {
        let mut v = -alpha * x[n];
        if n > 0 {
            v += s[n - 1] * x[n - 1];
        }
        if n + 1 < dim {
            v += c[n] * x[n + 1];
        }
        acc += v * v;
    }
    acc.sqrt()
}

fn complex_residual(
    sup: &[Complex64],
    sub: &[Complex64],
    alpha: Complex64,
    x: &DVector<Complex64>,
) -> f64 {
    let dim = x.len();
    let mut acc = 0.0f64;
    for n in 0..dim {
        let mut v = -alpha * x[n];
        if n > 0 {
            v += sub[n - 1] * x[n - 1];
        }
        if n + 1 < dim {
            v += sup[n] * x[n + 1];
        }
        acc += v.norm_sqr();
    }
    acc.sqrt()
}
