//! Dense complex linear algebra used by the kernel and spectral modules.
//!
//! Thin wrappers over nalgebra: Hermitian eigenvalues, general complex
//! eigenvalues through the Schur form, singular values, and a power
//! iteration for the largest singular value of big sections.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<f64>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let eig = m
        .clone()
        .try_symmetric_eigen(f64::EPSILON, 10_000)
        .ok_or(Error::EigensolverFailure { n })?;
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Smallest eigenvalue of the Hermitian part (m + m^H)/2.
pub fn min_eig_hermitian_part(m: &DMatrix<Complex64>) -> Result<f64> {
    let h = (m + m.adjoint()).scale(0.5);
    let vals = hermitian_eigenvalues(&h)?;
    Ok(vals.first().copied().unwrap_or(0.0))
}

/// Eigenvalues of a general complex matrix, sorted by (re, im).
pub fn general_eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    if n == 0 {
        return Ok(Vec::new());
    }
    let schur = nalgebra::linalg::Schur::try_new(m.clone(), f64::EPSILON, 100_000)
        .ok_or(Error::EigensolverFailure { n })?;
    let vals = schur
        .eigenvalues()
        .ok_or(Error::EigensolverFailure { n })?;
    let mut vals: Vec<Complex64> = vals.iter().copied().collect();
    sort_complex(&mut vals);
    Ok(vals)
}

pub fn sort_complex(vals: &mut [Complex64]) {
    vals.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// All singular values, descending.
pub fn singular_values(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut sv: Vec<f64> = m.clone().singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

pub fn smallest_singular_value(m: &DMatrix<Complex64>) -> f64 {
    singular_values(m).last().copied().unwrap_or(0.0)
}

/// Size threshold below which the operator norm goes through a full SVD.
const SVD_CUTOFF: usize = 160;

/// Largest singular value. Exact SVD on small sections, deterministic
/// power iteration on A^H A for large ones.
pub fn operator_norm(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows().max(m.ncols());
    if n == 0 {
        return 0.0;
    }
    if n <= SVD_CUTOFF {
        return singular_values(m).first().copied().unwrap_or(0.0);
    }
    let cols = m.ncols();
    let mut v = nalgebra::DVector::from_fn(cols, |i, _| {
        Complex64::from_polar(1.0 + (i as f64) / (cols as f64), 0.59 * i as f64)
    });
    v /= Complex64::new(v.norm(), 0.0);
    let mut sigma = 0.0f64;
    for _ in 0..5000 {
        let av = m * &v;
        let z = m.adjoint() * av;
        let zn = z.norm();
        if zn == 0.0 {
            return 0.0;
        }
        let next = zn.sqrt();
        let done = (next - sigma).abs() <= 1e-12 * next.max(1.0);
        sigma = next;
        v = z / Complex64::new(zn, 0.0);
        if done {
            break;
        }
    }
    sigma
}

/// Symmetric Hausdorff distance between finite point sets in C.
pub fn hausdorff(a: &[Complex64], b: &[Complex64]) -> f64 {
    fn one_sided(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter()
            .map(|x| {
                b.iter()
                    .map(|y| (x - y).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    }
    if a.is_empty() || b.is_empty() {
        return if a.is_empty() && b.is_empty() {
            0.0
        } else {
            f64::INFINITY
        };
    }
    one_sided(a, b).max(one_sided(b, a))
}
