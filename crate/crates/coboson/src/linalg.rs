//! Bandwidth-1 linear algebra: QL eigenvalues for symmetric tridiagonal
//! matrices and inverse iteration backed by a pivoting tridiagonal solve.

use nalgebra::ComplexField;

use crate::error::{Error, Result};

const MAX_QL_SWEEPS: usize = 64;

/// All eigenvalues of the symmetric tridiagonal matrix with the given diagonal
/// and off-diagonal (`off.len() == diag.len() - 1`), ascending. Implicit-shift
/// QL, eigenvalues only, O(n^2).
pub fn symmetric_tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    assert_eq!(
        off.len(),
        n.saturating_sub(1),
        "off-diagonal length must be n-1"
    );
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut d = diag.to_vec();
    // e[i] couples rows i and i+1; trailing slot is workspace
    let mut e = vec![0.0f64; n];
    e[..n - 1].copy_from_slice(off);

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            // locate the first negligible coupling at or after l
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd + f64::MIN_POSITIVE {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                return Err(Error::EigenConvergence);
            }

            // Wilkinson shift from the leading 2x2
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));

            let mut s = 1.0f64;
            let mut c = 1.0f64;
            let mut p = 0.0f64;
            let mut deflated_early = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated_early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                let t = (d[i] - g) * s + 2.0 * c * b;
                p = s * t;
                d[i + 1] = g + p;
                g = c * t - b;
            }
            if deflated_early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.partial_cmp(b).expect("eigenvalues are finite"));
    Ok(d)
}

/// Solve (T - shift I) y = rhs in place for tridiagonal T given by
/// `sub`/`diag`/`sup`. Gaussian elimination with partial pivoting (one fill-in
/// band). Pivots smaller than `pivot_floor` are replaced by it, which is what
/// inverse iteration wants when the shift is an eigenvalue.
pub fn tridiagonal_solve_shifted<T>(
    sub: &[T],
    diag: &[T],
    sup: &[T],
    shift: T,
    rhs: &mut [T],
    pivot_floor: f64,
) where
    T: ComplexField<RealField = f64> + Copy,
{
    let n = diag.len();
    assert_eq!(sub.len(), n.saturating_sub(1));
    assert_eq!(sup.len(), n.saturating_sub(1));
    assert_eq!(rhs.len(), n);
    if n == 0 {
        return;
    }

    let dl = sub.to_vec();
    let mut d: Vec<T> = diag.iter().map(|&v| v - shift).collect();
    let mut du = sup.to_vec();
    let mut du2 = vec![T::zero(); n.saturating_sub(2)];

    let floor = |v: T| -> T {
        if v.modulus() < pivot_floor {
            T::from_real(pivot_floor)
        } else {
            v
        }
    };

    for i in 0..n - 1 {
        if dl[i].modulus() <= d[i].modulus() {
            // no interchange
            d[i] = floor(d[i]);
            let m = dl[i] / d[i];
            d[i + 1] -= m * du[i];
            let r = rhs[i];
            rhs[i + 1] -= m * r;
        } else {
            // interchange rows i and i+1
            let m = d[i] / dl[i];
            d[i] = dl[i];
            let t = d[i + 1];
            d[i + 1] = du[i] - m * t;
            du[i] = t;
            if i + 2 < n {
                du2[i] = du[i + 1];
                du[i + 1] = -m * du2[i];
            }
            rhs.swap(i, i + 1);
            let r = rhs[i];
            rhs[i + 1] -= m * r;
        }
    }

    d[n - 1] = floor(d[n - 1]);
    rhs[n - 1] /= d[n - 1];
    if n >= 2 {
        d[n - 2] = floor(d[n - 2]);
        let r = rhs[n - 1];
        rhs[n - 2] = (rhs[n - 2] - du[n - 2] * r) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        d[i] = floor(d[i]);
        let r1 = rhs[i + 1];
        let r2 = rhs[i + 2];
        rhs[i] = (rhs[i] - du[i] * r1 - du2[i] * r2) / d[i];
    }
}

/// Inverse iteration for the eigenvector of a tridiagonal matrix at an
/// (already converged) eigenvalue `shift`. Returns a unit vector.
pub fn tridiagonal_inverse_iteration<T>(
    sub: &[T],
    diag: &[T],
    sup: &[T],
    shift: T,
    seed: &[T],
    sweeps: usize,
) -> Vec<T>
where
    T: ComplexField<RealField = f64> + Copy,
{
    let n = diag.len();
    assert_eq!(seed.len(), n);
    let scale = diag
        .iter()
        .chain(sub.iter())
        .chain(sup.iter())
        .map(|v| v.modulus())
        .fold(shift.modulus(), f64::max)
        .max(1.0);
    let pivot_floor = f64::EPSILON * scale;

    let mut x = seed.to_vec();
    normalize(&mut x);
    for _ in 0..sweeps {
        tridiagonal_solve_shifted(sub, diag, sup, shift, &mut x, pivot_floor);
        if !normalize(&mut x) {
            // solver blew up; restart from a flat seed
            x = vec![T::one(); n];
            normalize(&mut x);
        }
    }
    x
}

fn normalize<T>(x: &mut [T]) -> bool
where
    T: ComplexField<RealField = f64> + Copy,
{
    let norm = x.iter().map(|v| v.modulus_squared()).sum::<f64>().sqrt();
    if norm.is_finite() && norm > 0.0 {
        for v in x.iter_mut() {
            *v /= T::from_real(norm);
        }
        true
    } else {
        false
    }
}
