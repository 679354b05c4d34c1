//! Exact fermionic oracle for the coboson ladder.
//!
//! Everything here is built from first principles on the full two-species
//! fermionic Fock space: modes are Jordan-Wigner ordered bits, operators are
//! sparse matrices assembled from elementary creation operators, and the
//! composite creator is the literal sum (1/sqrt(n_s)) sum_k e^{i theta_k}
//! a_k+ b_k+. None of it reuses the truncated ladder matrices, so agreement
//! between the two routes is evidence, not bookkeeping.
//!
//! The space has dimension 4^n_s, which caps n_s at [`MAX_PAIR_STATES`].

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::OperatorMatrix;
use crate::error::{Error, Result};

/// Largest supported number of pair states; 4^8 = 65536 basis states.
pub const MAX_PAIR_STATES: usize = 8;

/// Two-species fermionic Fock space over 2 n_s modes.
///
/// Basis states are bitstrings: bit k (k < n_s) is the a-fermion of slot k,
/// bit n_s + k the b-fermion. Jordan-Wigner strings count occupied modes
/// below the acted-on one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FermionSpace {
    n_s: usize,
}

impl FermionSpace {
    pub fn new(n_s: usize) -> Result<Self> {
        if n_s == 0 {
            return Err(Error::PairCount(n_s));
        }
        if n_s > MAX_PAIR_STATES {
            return Err(Error::OracleTooLarge {
                n_s,
                max: MAX_PAIR_STATES,
            });
        }
        Ok(Self { n_s })
    }

    pub fn pair_states(&self) -> usize {
        self.n_s
    }

    pub fn modes(&self) -> usize {
        2 * self.n_s
    }

    pub fn dim(&self) -> usize {
        1 << (2 * self.n_s)
    }

    pub fn mode_a(&self, k: usize) -> usize {
        k
    }

    pub fn mode_b(&self, k: usize) -> usize {
        self.n_s + k
    }

    pub fn vacuum(&self) -> DVector<Complex64> {
        let mut v = DVector::from_element(self.dim(), Complex64::ZERO);
        v[0] = Complex64::ONE;
        v
    }

    pub fn creation(&self, mode: usize) -> Result<SparseOperator> {
        if mode >= self.modes() {
            return Err(Error::ModeOutOfRange {
                mode,
                modes: self.modes(),
            });
        }
        let bit = 1usize << mode;
        let mut entries = Vec::with_capacity(self.dim() / 2);
        for bits in 0..self.dim() {
            if bits & bit == 0 {
                entries.push((bits | bit, bits, Complex64::new(jw_sign(bits, mode), 0.0)));
            }
        }
        Ok(SparseOperator::from_entries(self.dim(), entries))
    }

    pub fn annihilation(&self, mode: usize) -> Result<SparseOperator> {
        Ok(self.creation(mode)?.adjoint())
    }
}

fn jw_sign(bits: usize, mode: usize) -> f64 {
    let below = bits & ((1usize << mode) - 1);
    if below.count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Sparse matrix in coordinate form, entries sorted by (row, col) with
/// duplicates merged and exact zeros dropped; all operations deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    entries: Vec<(usize, usize, Complex64)>,
}

impl SparseOperator {
    pub fn from_entries(dim: usize, mut entries: Vec<(usize, usize, Complex64)>) -> Self {
        entries.sort_by_key(|e| (e.0, e.1));
        let mut merged: Vec<(usize, usize, Complex64)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 += v,
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| e.2 != Complex64::ZERO);
        Self {
            dim,
            entries: merged,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: Vec::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim,
            entries: (0..dim).map(|i| (i, i, Complex64::ONE)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, Complex64)] {
        &self.entries
    }

    pub fn apply(&self, x: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: x.len(),
            });
        }
        let mut y = DVector::from_element(self.dim, Complex64::ZERO);
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
        Ok(y)
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut prods = Vec::new();
        for &(r, c, v) in &self.entries {
            for &(_, c2, v2) in other.row_slice(c) {
                prods.push((r, c2, v * v2));
            }
        }
        Ok(Self::from_entries(self.dim, prods))
    }

    pub fn adjoint(&self) -> Self {
        let swapped = self
            .entries
            .iter()
            .map(|&(r, c, v)| (c, r, v.conj()))
            .collect();
        Self::from_entries(self.dim, swapped)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut all = self.entries.clone();
        all.extend_from_slice(&other.entries);
        Ok(Self::from_entries(self.dim, all))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-Complex64::ONE))
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self::from_entries(
            self.dim,
            self.entries.iter().map(|&(r, c, v)| (r, c, v * z)).collect(),
        )
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    /// Largest entry magnitude of self - other.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        Ok(self
            .sub(other)?
            .entries
            .iter()
            .map(|e| e.2.norm())
            .fold(0.0, f64::max))
    }

    fn row_slice(&self, row: usize) -> &[(usize, usize, Complex64)] {
        let start = self.entries.partition_point(|e| e.0 < row);
        let end = self.entries.partition_point(|e| e.0 <= row);
        &self.entries[start..end]
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }
}

/// The composite creation operator (1/sqrt(n_s)) sum_k e^{i theta_k} a_k+ b_k+.
#[derive(Debug, Clone)]
pub struct CompositeCreator {
    space: FermionSpace,
    thetas: Vec<f64>,
    op: SparseOperator,
}

impl CompositeCreator {
    pub fn new(space: FermionSpace, thetas: &[f64]) -> Result<Self> {
        if thetas.len() != space.pair_states() {
            return Err(Error::PhaseCountMismatch {
                expected: space.pair_states(),
                got: thetas.len(),
            });
        }
        let mut op = SparseOperator::zero(space.dim());
        for (k, &theta) in thetas.iter().enumerate() {
            let pair = space
                .creation(space.mode_a(k))
                .expect("slot mode in range")
                .matmul(&space.creation(space.mode_b(k)).expect("slot mode in range"))
                .expect("same space");
            op = op
                .add(&pair.scale(Complex64::from_polar(1.0, theta)))
                .expect("same space");
        }
        op = op.scale(Complex64::new(1.0 / (space.pair_states() as f64).sqrt(), 0.0));
        Ok(Self {
            space,
            thetas: thetas.to_vec(),
            op,
        })
    }

    /// Equal internal phases; the plain-vanilla creator.
    pub fn uniform(space: FermionSpace) -> Self {
        Self::new(space, &vec![0.0; space.pair_states()]).expect("phase count matches")
    }

    pub fn space(&self) -> FermionSpace {
        self.space
    }

    pub fn thetas(&self) -> &[f64] {
        &self.thetas
    }

    pub fn operator(&self) -> &SparseOperator {
        &self.op
    }

    pub fn annihilation_operator(&self) -> SparseOperator {
        self.op.adjoint()
    }
}

/// Normalized N-pair state (B+)^N |vac> / ||...||.
///
/// Normalization divides by the norm the oracle itself computes, so the
/// ladder-side normalization constants never leak in here.
pub fn oracle_fock_state(creator: &CompositeCreator, n: usize) -> Result<DVector<Complex64>> {
    let n_s = creator.space().pair_states();
    if n > n_s {
        return Err(Error::LadderIndex {
            n,
            n_s,
            min: 0,
            max: n_s,
        });
    }
    let mut v = creator.space().vacuum();
    for _ in 0..n {
        v = creator.operator().apply(&v)?;
    }
    let norm = v.norm();
    Ok(v / Complex64::new(norm, 0.0))
}

/// Deviation operator D = (total fermion number)/n_s, composed from the
/// elementary mode operators rather than written down as a diagonal.
pub fn oracle_d_operator(space: FermionSpace) -> SparseOperator {
    let mut acc = SparseOperator::zero(space.dim());
    for mode in 0..space.modes() {
        let c = space.creation(mode).expect("mode in range");
        let number = c
            .matmul(&space.annihilation(mode).expect("mode in range"))
            .expect("same space");
        acc = acc.add(&number).expect("same space");
    }
    acc.scale(Complex64::new(1.0 / space.pair_states() as f64, 0.0))
}

/// Matrix elements <f_m| op |f_n> of a full-space operator between the
/// normalized pair states, as an (n_s + 1)-dimensional dense matrix.
pub fn project_to_coboson_sector(
    op: &SparseOperator,
    creator: &CompositeCreator,
) -> Result<OperatorMatrix> {
    let space = creator.space();
    if op.dim() != space.dim() {
        return Err(Error::DimensionMismatch {
            left: op.dim(),
            right: space.dim(),
        });
    }
    let basis: Vec<DVector<Complex64>> = (0..=space.pair_states())
        .map(|n| oracle_fock_state(creator, n))
        .collect::<Result<_>>()?;
    let dim = basis.len();
    let mut m = DMatrix::zeros(dim, dim);
    for (col, ket) in basis.iter().enumerate() {
        let image = op.apply(ket)?;
        for (row, bra) in basis.iter().enumerate() {
            m[(row, col)] = bra.dotc(&image);
        }
    }
    OperatorMatrix::from_matrix(m)
}
