//! Ladder algebra of a fermion-pair composite boson truncated at `n_s` pairs.
//!
//! The Fock basis is |0>, |1>, ..., |n_s>, indexed ascending. All operator
//! matrices follow that convention: entry (row, col) = <row| op |col>.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Ladder coefficient F_N = sqrt(N (1 - (N-1)/n_s)).
///
/// Defined for 1 <= N <= n_s + 1; F_{n_s+1} = 0 encodes Pauli blocking.
pub fn f_coefficient(n: usize, n_s: usize) -> Result<f64> {
    if n_s < 1 {
        return Err(Error::PairCount(n_s));
    }
    if n < 1 || n > n_s + 1 {
        return Err(Error::LadderIndex {
            n,
            n_s,
            min: 1,
            max: n_s + 1,
        });
    }
    let nf = n as f64;
    let ns = n_s as f64;
    // at N = n_s + 1 the factor under the root is exactly 0
    Ok((nf * (1.0 - (nf - 1.0) / ns)).max(0.0).sqrt())
}

/// Normalization chi_N of the N-pair Fock state, chi_N = n_s! / (n_s^N (n_s-N)!).
///
/// Evaluated as the telescoping product prod_{k=1}^{N} F_k^2 / k, which stays
/// in range where the factorial form overflows (n_s! overflows f64 near n_s = 171
/// and u64 already at 21).
pub fn chi_normalization(n: usize, n_s: usize) -> Result<f64> {
    if n_s < 1 {
        return Err(Error::PairCount(n_s));
    }
    if n > n_s {
        return Err(Error::LadderIndex {
            n,
            n_s,
            min: 0,
            max: n_s,
        });
    }
    let mut chi = 1.0;
    for k in 1..=n {
        chi *= f_coefficient(k, n_s)?.powi(2) / k as f64;
    }
    Ok(chi)
}

/// Table of chi_N for N = 0..=n_s.
#[derive(Debug, Clone, PartialEq)]
pub struct FockNormalization {
    chi: Vec<f64>,
}

impl FockNormalization {
    pub fn chi(&self, n: usize) -> Option<f64> {
        self.chi.get(n).copied()
    }

    pub fn values(&self) -> &[f64] {
        &self.chi
    }
}

/// Precomputed ladder coefficients for a fixed number of pair states.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderSpec {
    n_s: usize,
    f: Vec<f64>,
}

impl LadderSpec {
    pub fn new(n_s: usize) -> Result<Self> {
        if n_s < 1 {
            return Err(Error::PairCount(n_s));
        }
        let f = (1..=n_s)
            .map(|n| f_coefficient(n, n_s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { n_s, f })
    }

    pub fn pair_states(&self) -> usize {
        self.n_s
    }

    /// Dimension of the truncated Fock space, n_s + 1.
    pub fn dim(&self) -> usize {
        self.n_s + 1
    }

    /// F_n, extended by 0 outside 1..=n_s so ladder edges need no special cases.
    pub fn f(&self, n: usize) -> f64 {
        if n >= 1 && n <= self.n_s {
            self.f[n - 1]
        } else {
            0.0
        }
    }

    pub fn fock_normalization(&self) -> FockNormalization {
        let mut chi = Vec::with_capacity(self.dim());
        let mut value = 1.0;
        chi.push(value);
        for k in 1..=self.n_s {
            value *= self.f(k).powi(2) / k as f64;
            chi.push(value);
        }
        FockNormalization { chi }
    }

    /// B: superdiagonal matrix with <N-1| B |N> = F_N.
    pub fn annihilation_matrix(&self) -> OperatorMatrix {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for n in 1..=self.n_s {
            m[(n - 1, n)] = Complex64::new(self.f(n), 0.0);
        }
        OperatorMatrix { mat: m }
    }

    /// B+: subdiagonal matrix with <N+1| B+ |N> = F_{N+1}; adjoint of B.
    pub fn creation_matrix(&self) -> OperatorMatrix {
        self.annihilation_matrix().adjoint()
    }

    /// D: diagonal deviation operator from [B, B+] = I - D, entries 2N/n_s.
    pub fn deviation_matrix(&self) -> OperatorMatrix {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for n in 0..dim {
            m[(n, n)] = Complex64::new(2.0 * n as f64 / self.n_s as f64, 0.0);
        }
        OperatorMatrix { mat: m }
    }

    /// chi quadrature (B + B+)/sqrt(2); real symmetric tridiagonal, zero diagonal.
    pub fn chi_quadrature_matrix(&self) -> OperatorMatrix {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for n in 1..=self.n_s {
            let v = Complex64::new(self.f(n) / 2f64.sqrt(), 0.0);
            m[(n - 1, n)] = v;
            m[(n, n - 1)] = v;
        }
        OperatorMatrix { mat: m }
    }

    /// pi quadrature (B - B+)/(sqrt(2) i); Hermitian with imaginary off-diagonals.
    pub fn pi_quadrature_matrix(&self) -> OperatorMatrix {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for n in 1..=self.n_s {
            // 1/(sqrt(2) i) = -i/sqrt(2)
            let v = Complex64::new(0.0, -self.f(n) / 2f64.sqrt());
            m[(n - 1, n)] = v;
            m[(n, n - 1)] = -v;
        }
        OperatorMatrix { mat: m }
    }
}

/// Dense complex operator on the truncated Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    mat: DMatrix<Complex64>,
}

impl OperatorMatrix {
    pub fn from_matrix(mat: DMatrix<Complex64>) -> Result<Self> {
        if mat.nrows() != mat.ncols() {
            return Err(Error::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        Ok(Self { mat })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: DMatrix::identity(dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn as_matrix(&self) -> &DMatrix<Complex64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.mat
    }

    pub fn adjoint(&self) -> Self {
        Self {
            mat: self.mat.adjoint(),
        }
    }

    pub fn apply(&self, x: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        self.check_dim(x.len())?;
        Ok(&self.mat * x)
    }

    /// x+ M x for a unit-norm coefficient vector x.
    pub fn expectation(&self, x: &DVector<Complex64>) -> Result<Complex64> {
        self.check_dim(x.len())?;
        Ok(x.dotc(&(&self.mat * x)))
    }

    /// [self, other] = self other - other self.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.check_dim(other.dim())?;
        Ok(Self {
            mat: &self.mat * &other.mat - &other.mat * &self.mat,
        })
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.mat - &other.mat)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    fn check_dim(&self, len: usize) -> Result<()> {
        if self.dim() != len {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: len,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn f_coefficient_examples() {
        assert_abs_diff_eq!(f_coefficient(1, 5).unwrap(), 1.0, epsilon = 0.0);
        // Pauli blocking just above the top rung
        assert_abs_diff_eq!(f_coefficient(3, 2).unwrap(), 0.0, epsilon = 0.0);
        assert_abs_diff_eq!(f_coefficient(2, 2).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            f_coefficient(3, 4).unwrap(),
            (3.0f64 * (1.0 - 2.0 / 4.0)).sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn f_coefficient_domain() {
        assert!(f_coefficient(0, 5).is_err());
        assert!(f_coefficient(7, 5).is_err());
        assert!(f_coefficient(1, 0).is_err());
    }

    #[test]
    fn f_positive_inside_ladder() {
        for n_s in 1..=64 {
            for n in 1..=n_s {
                assert!(f_coefficient(n, n_s).unwrap() > 0.0, "n={n} n_s={n_s}");
            }
            assert_eq!(f_coefficient(n_s + 1, n_s).unwrap(), 0.0);
        }
    }

    #[test]
    fn chi_examples() {
        assert_eq!(chi_normalization(0, 4).unwrap(), 1.0);
        assert_abs_diff_eq!(chi_normalization(2, 2).unwrap(), 0.5, epsilon = 1e-15);
        // n_s!/(n_s^N (n_s-N)!) at N=2, n_s=4: 24/(16*2) = 0.75
        assert_abs_diff_eq!(chi_normalization(2, 4).unwrap(), 0.75, epsilon = 1e-15);
        assert!(chi_normalization(3, 2).is_err());
    }

    #[test]
    fn chi_matches_factorial_form_small() {
        fn fact(n: usize) -> f64 {
            (1..=n).map(|k| k as f64).product()
        }
        for n_s in 1..=20 {
            for n in 0..=n_s {
                let direct = fact(n_s) / ((n_s as f64).powi(n as i32) * fact(n_s - n));
                let tele = chi_normalization(n, n_s).unwrap();
                assert_abs_diff_eq!(tele, direct, epsilon = 1e-12 * direct.max(1e-300));
            }
        }
    }

    #[test]
    fn chi_decreasing_and_bounded() {
        // near n_s = 21 the factorial form would overflow u64; the telescoping
        // product must stay finite and inside (0, 1]
        for n_s in [2usize, 21, 64, 200] {
            let spec = LadderSpec::new(n_s).unwrap();
            let table = spec.fock_normalization();
            let chi = table.values();
            assert_eq!(chi.len(), n_s + 1);
            for (n, &value) in chi.iter().enumerate() {
                assert!(value > 0.0 && value <= 1.0, "chi[{n}]={value} n_s={n_s}");
            }
            for n in 1..n_s {
                assert!(chi[n + 1] < chi[n], "not decreasing at n={n}, n_s={n_s}");
            }
        }
    }

    #[test]
    fn fock_normalization_agrees_with_direct() {
        let spec = LadderSpec::new(33).unwrap();
        let table = spec.fock_normalization();
        for n in 0..=33 {
            assert_abs_diff_eq!(
                table.chi(n).unwrap(),
                chi_normalization(n, 33).unwrap(),
                epsilon = 1e-15
            );
        }
        assert!(table.chi(34).is_none());
    }

    #[test]
    fn annihilation_matrix_structure() {
        let spec = LadderSpec::new(1).unwrap();
        let b = spec.annihilation_matrix();
        assert_eq!(b.dim(), 2);
        assert_eq!(b.as_matrix()[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(b.as_matrix()[(1, 0)], Complex64::new(0.0, 0.0));

        let spec = LadderSpec::new(3).unwrap();
        let b = spec.annihilation_matrix();
        // <1| B |2> = F_2 = sqrt(2 (1 - 1/3)) = sqrt(4/3)
        assert_abs_diff_eq!(
            b.as_matrix()[(1, 2)].re,
            (4.0f64 / 3.0).sqrt(),
            epsilon = 1e-15
        );
        // B annihilates the vacuum
        let mut vac = DVector::from_element(4, Complex64::ZERO);
        vac[0] = Complex64::ONE;
        let out = b.apply(&vac).unwrap();
        assert!(out.norm() == 0.0);
    }

    #[test]
    fn creation_is_adjoint_and_blocks_at_top() {
        for n_s in 1..=10 {
            let spec = LadderSpec::new(n_s).unwrap();
            let b = spec.annihilation_matrix();
            let bd = spec.creation_matrix();
            assert_eq!(bd.max_abs_diff(&b.adjoint()), 0.0);
        }
        // B+ |n_s> = 0
        let spec = LadderSpec::new(2).unwrap();
        let bd = spec.creation_matrix();
        let mut top = DVector::from_element(3, Complex64::ZERO);
        top[2] = Complex64::ONE;
        assert_eq!(bd.apply(&top).unwrap().norm(), 0.0);
        // B+ |1> = F_2 |2>
        let mut one = DVector::from_element(3, Complex64::ZERO);
        one[1] = Complex64::ONE;
        let out = bd.apply(&one).unwrap();
        assert_abs_diff_eq!(out[2].re, f_coefficient(2, 2).unwrap(), epsilon = 1e-15);
        assert_abs_diff_eq!(out.norm(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn deviation_matrix_diagonal() {
        let spec = LadderSpec::new(4).unwrap();
        let d = spec.deviation_matrix();
        let expect = [0.0, 0.5, 1.0, 1.5, 2.0];
        for (n, want) in expect.iter().enumerate() {
            assert_abs_diff_eq!(d.as_matrix()[(n, n)].re, want, epsilon = 1e-15);
        }
    }

    #[test]
    fn commutation_rules_hold() {
        for n_s in 1..=10 {
            let spec = LadderSpec::new(n_s).unwrap();
            let b = spec.annihilation_matrix();
            let bd = spec.creation_matrix();
            let d = spec.deviation_matrix();
            let dim = spec.dim();

            // [B, B+] = I - D, including the Pauli-blocked last row
            let lhs = b.commutator(&bd).unwrap();
            let rhs = OperatorMatrix::from_matrix(
                OperatorMatrix::identity(dim).as_matrix() - d.as_matrix(),
            )
            .unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-14, "n_s={n_s}");

            // [D, B+] = (2/n_s) B+
            let lhs = d.commutator(&bd).unwrap();
            let rhs = OperatorMatrix::from_matrix(
                bd.as_matrix() * Complex64::new(2.0 / n_s as f64, 0.0),
            )
            .unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-14, "n_s={n_s}");

            // [D, B] = -(2/n_s) B
            let lhs = d.commutator(&b).unwrap();
            let rhs = OperatorMatrix::from_matrix(
                b.as_matrix() * Complex64::new(-2.0 / n_s as f64, 0.0),
            )
            .unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-14, "n_s={n_s}");
        }
    }

    #[test]
    fn quadratures_hermitian_and_commutator() {
        for n_s in 1..=10 {
            let spec = LadderSpec::new(n_s).unwrap();
            let chi = spec.chi_quadrature_matrix();
            let pi = spec.pi_quadrature_matrix();
            assert_eq!(chi.max_abs_diff(&chi.adjoint()), 0.0);
            assert_eq!(pi.max_abs_diff(&pi.adjoint()), 0.0);

            // [chi, pi] = i (I - D)
            let lhs = chi.commutator(&pi).unwrap();
            let i = Complex64::new(0.0, 1.0);
            let rhs = OperatorMatrix::from_matrix(
                (OperatorMatrix::identity(spec.dim()).as_matrix()
                    - spec.deviation_matrix().as_matrix())
                    * i,
            )
            .unwrap();
            assert!(lhs.max_abs_diff(&rhs) < 1e-14, "n_s={n_s}");
        }
    }

    #[test]
    fn chi_quadrature_small_matrix() {
        let spec = LadderSpec::new(1).unwrap();
        let chi = spec.chi_quadrature_matrix();
        let s = 1.0 / 2f64.sqrt();
        assert_abs_diff_eq!(chi.as_matrix()[(0, 1)].re, s, epsilon = 1e-15);
        assert_abs_diff_eq!(chi.as_matrix()[(1, 0)].re, s, epsilon = 1e-15);
        assert_eq!(chi.as_matrix()[(0, 0)], Complex64::ZERO);
    }

    #[test]
    fn expectation_and_dimension_checks() {
        let spec = LadderSpec::new(3).unwrap();
        let d = spec.deviation_matrix();
        let id = OperatorMatrix::identity(4);
        let mut x = DVector::from_element(4, Complex64::ZERO);
        x[0] = Complex64::ONE;
        assert_eq!(id.expectation(&x).unwrap(), Complex64::ONE);
        assert_eq!(d.expectation(&x).unwrap(), Complex64::ZERO);

        let wrong = DVector::from_element(3, Complex64::ZERO);
        assert!(matches!(
            d.expectation(&wrong),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
