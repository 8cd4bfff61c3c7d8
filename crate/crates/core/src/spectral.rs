//! Spectral toolkit: closed-form spectra for one-variable symbols,
//! finite-section eigenvalue approximation of the kernel family, Weyl
//! singular-sequence residuals, windowed resolvents, and the
//! cross-representation invariance comparison.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::cms::{apply_a, tensor_inner, TensorTP};
use crate::error::{Error, Result};
use crate::freq::{Frequency, FrequencyWindow};
use crate::gladyshev::build_kernel;
use crate::grid::HermiteBasis;
use crate::linalg;
use crate::symbol::APSymbol;

/// Absolute Hermiticity tolerance used when classifying kernels.
const HERMITIAN_TOL: f64 = 1e-10;

/// Relative floor on the smallest singular value below which a shifted
/// kernel counts as numerically singular.
pub const RESOLVENT_THRESHOLD_REL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralKind {
    Point,
    ContinuousWitness,
    FiniteSection,
}

impl SpectralKind {
    pub fn label(self) -> &'static str {
        match self {
            SpectralKind::Point => "point",
            SpectralKind::ContinuousWitness => "continuous-witness",
            SpectralKind::FiniteSection => "finite-section",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpectralValue {
    pub value: Complex64,
    pub kind: SpectralKind,
    /// Window or grid provenance for this value.
    pub info: String,
}

#[derive(Debug, Clone)]
pub struct SpectrumReport {
    pub symbol_id: String,
    pub method: String,
    pub values: Vec<SpectralValue>,
    pub notes: Vec<String>,
}

impl SpectrumReport {
    pub fn complex_values(&self) -> Vec<Complex64> {
        self.values.iter().map(|v| v.value).collect()
    }
}

/// Spectrum of a Fourier multiplier g(D): every grid sample g(xi) is an
/// eigenvalue with eigenfunction e_xi; tail limits that the grid does
/// not attain are reported as continuous-spectrum witnesses.
pub fn multiplier_spectrum(a: &APSymbol, xi_grid: &[Vec<f64>]) -> Result<SpectrumReport> {
    if !a.is_multiplier() {
        return Err(Error::Hypothesis(
            "multiplier_spectrum needs an x-independent symbol (Lambda(a) = {0})".into(),
        ));
    }
    let g = a.bohr_fourier(&Frequency::zero(a.gens().count()));
    let mut values = Vec::with_capacity(xi_grid.len());
    for xi in xi_grid {
        values.push(SpectralValue {
            value: g.eval(xi)?,
            kind: SpectralKind::Point,
            info: format!("xi={xi:?}"),
        });
    }
    // probe tail limits along each signed axis direction
    let d = a.gens().dim();
    let samples: Vec<Complex64> = values.iter().map(|v| v.value).collect();
    let mut witnesses = Vec::new();
    for axis in 0..d {
        for sign in [-1.0, 1.0] {
            let probe = |r: f64| -> Option<Complex64> {
                let mut xi = vec![0.0; d];
                xi[axis] = sign * r;
                g.eval(&xi).ok()
            };
            let (Some(v1), Some(v2)) = (probe(1e5), probe(1e7)) else {
                continue;
            };
            if (v1 - v2).norm() <= 1e-6 * (1.0 + v2.norm()) {
                let attained = samples.iter().any(|s| (s - v2).norm() <= 1e-9);
                let already = witnesses
                    .iter()
                    .any(|w: &SpectralValue| (w.value - v2).norm() <= 1e-9);
                if !attained && !already {
                    witnesses.push(SpectralValue {
                        value: v2,
                        kind: SpectralKind::ContinuousWitness,
                        info: format!("tail limit, axis {axis} sign {sign}"),
                    });
                }
            }
        }
    }
    values.extend(witnesses);
    Ok(SpectrumReport {
        symbol_id: String::new(),
        method: "multiplier".into(),
        values,
        notes: vec![
            "sigma = closure of the range; point spectrum = range; continuous = closure minus range"
                .into(),
        ],
    })
}

/// Spectrum of a multiplication operator a(x): sampled range, flagged
/// essential. The samples witness spectrum membership, not eigenvalues.
pub fn multiplication_spectrum(a: &APSymbol, x_grid: &[Vec<f64>]) -> Result<SpectrumReport> {
    if !a.is_x_only() {
        return Err(Error::Hypothesis(
            "multiplication_spectrum needs coefficients constant in xi".into(),
        ));
    }
    let d = a.gens().dim();
    let xi0 = vec![0.0; d];
    let mut values = Vec::with_capacity(x_grid.len());
    let (mut re_lo, mut re_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut im_lo, mut im_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for x in x_grid {
        let v = a.evaluate(x, &xi0)?;
        re_lo = re_lo.min(v.re);
        re_hi = re_hi.max(v.re);
        im_lo = im_lo.min(v.im);
        im_hi = im_hi.max(v.im);
        values.push(SpectralValue {
            value: v,
            kind: SpectralKind::ContinuousWitness,
            info: format!("x={x:?}"),
        });
    }
    Ok(SpectrumReport {
        symbol_id: String::new(),
        method: "multiplication".into(),
        values,
        notes: vec![
            "sigma = sigma_ess = closure of the range".into(),
            format!("range hull: re in [{re_lo}, {re_hi}], im in [{im_lo}, {im_hi}]"),
        ],
    })
}

/// Eigenvalues of the finite section U(a)(xi) on the window. Hermitian
/// kernels go through the symmetric solver; anything else is labeled
/// advisory because truncation can pollute.
pub fn finite_section_spectrum(
    a: &APSymbol,
    w: &FrequencyWindow,
    xi: &[f64],
) -> Result<SpectrumReport> {
    let k = build_kernel(a, xi, w)?;
    let n = k.dim();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            dev = dev.max((k.entries()[(i, j)] - k.entries()[(j, i)].conj()).norm());
        }
    }
    let info = format!("window {n} points, xi={xi:?}");
    let mut notes = Vec::new();
    let values = if dev <= HERMITIAN_TOL {
        linalg::hermitian_eigenvalues(k.entries())?
            .into_iter()
            .map(|v| SpectralValue {
                value: Complex64::new(v, 0.0),
                kind: SpectralKind::FiniteSection,
                info: info.clone(),
            })
            .collect()
    } else {
        notes.push(
            "advisory: non-Hermitian finite section; truncation may pollute the spectrum".into(),
        );
        linalg::general_eigenvalues(k.entries())?
            .into_iter()
            .map(|v| SpectralValue {
                value: v,
                kind: SpectralKind::FiniteSection,
                info: info.clone(),
            })
            .collect()
    };
    Ok(SpectrumReport {
        symbol_id: String::new(),
        method: "finite-section".into(),
        values,
        notes,
    })
}

#[derive(Debug, Clone)]
pub struct WeylSequenceResult {
    pub xi0: Vec<f64>,
    /// s = a_0(xi0), the certified essential spectrum candidate.
    pub s: Complex64,
    pub residuals: Vec<(Vec<f64>, f64)>,
}

/// Weyl residual r_j = ||(a(x,D) - s) e_{xi_j}||_B by the exact finite
/// sum r_j^2 = |a_0(xi_j) - s|^2 + sum_{lambda != 0} |a_lambda(xi_j)|^2.
///
/// Requires the hypothesis a(x, xi0) = M(a(., xi0)): every nonzero
/// frequency coefficient must vanish at xi0.
pub fn weyl_residual(
    a: &APSymbol,
    xi0: &[f64],
    xi_seq: &[Vec<f64>],
) -> Result<WeylSequenceResult> {
    let r = a.gens().count();
    let zero = Frequency::zero(r);
    for (lam, coeff) in a.terms() {
        if *lam != zero {
            let v = coeff.eval(xi0)?;
            if v.norm() > 1e-12 {
                return Err(Error::Hypothesis(format!(
                    "a_lambda(xi0) = {v} != 0 for lambda = {lam}; a(x, xi0) is not constant in x"
                )));
            }
        }
    }
    let a0 = a.bohr_fourier(&zero);
    let s = a0.eval(xi0)?;
    let mut residuals = Vec::with_capacity(xi_seq.len());
    for xi in xi_seq {
        let mut acc = (a0.eval(xi)? - s).norm_sqr();
        for (lam, coeff) in a.terms() {
            if *lam != zero {
                acc += coeff.eval(xi)?.norm_sqr();
            }
        }
        residuals.push((xi.clone(), acc.sqrt()));
    }
    Ok(WeylSequenceResult {
        xi0: xi0.to_vec(),
        s,
        residuals,
    })
}

#[derive(Debug, Clone, Copy)]
pub struct ResolventReport {
    pub solvable: bool,
    pub sigma_min: f64,
    pub inv_norm: f64,
    pub threshold: f64,
}

/// Smallest singular value of U(a)(xi) - s on the window; the windowed
/// stand-in for resolvent existence.
pub fn resolvent_window(
    a: &APSymbol,
    s: Complex64,
    w: &FrequencyWindow,
    xi: &[f64],
) -> Result<ResolventReport> {
    let k = build_kernel(a, xi, w)?;
    let n = k.dim();
    let shifted = k.entries() - DMatrix::from_diagonal_element(n, n, s);
    let sv = linalg::singular_values(&shifted);
    let sigma_min = sv.last().copied().unwrap_or(0.0);
    let sigma_max_unshifted = linalg::operator_norm(k.entries());
    let threshold = RESOLVENT_THRESHOLD_REL * sigma_max_unshifted.max(1e-300);
    Ok(ResolventReport {
        solvable: sigma_min > threshold,
        sigma_min,
        inv_norm: if sigma_min > 0.0 {
            1.0 / sigma_min
        } else {
            f64::INFINITY
        },
        threshold,
    })
}

#[derive(Debug, Clone)]
pub struct InvarianceReport {
    pub kernel_zero: Vec<f64>,
    pub kernel_union: Vec<f64>,
    pub rayleigh_ritz: Vec<f64>,
    pub hausdorff_kernel_vs_union: f64,
    pub hausdorff_kernel_vs_tensor: f64,
}

/// Compare three finite spectral pictures of one Hermitian symbol of
/// nonpositive order: the section of U(a)(0), the union of sections of
/// U(a)(xi) over the grid, and Rayleigh--Ritz values of the tensor
/// action compressed to span{e_mu (x) phi_n}.
pub fn invariance_check(
    a: &APSymbol,
    w: &FrequencyWindow,
    xi_grid: &[Vec<f64>],
    basis: &HermiteBasis,
    mu_window: &FrequencyWindow,
) -> Result<InvarianceReport> {
    if a.class().m > 0.0 {
        return Err(Error::OrderPositive { m: a.class().m });
    }
    let k0 = build_kernel(a, &vec![0.0; a.gens().dim()], w)?;
    let n = k0.dim();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            dev = dev.max((k0.entries()[(i, j)] - k0.entries()[(j, i)].conj()).norm());
        }
    }
    if dev > HERMITIAN_TOL {
        return Err(Error::Hypothesis(format!(
            "invariance check is restricted to Hermitian symbols; kernel deviates by {dev:.3e}"
        )));
    }
    let kernel_zero = linalg::hermitian_eigenvalues(k0.entries())?;
    let mut kernel_union = Vec::new();
    for xi in xi_grid {
        let k = build_kernel(a, xi, w)?;
        kernel_union.extend(linalg::hermitian_eigenvalues(k.entries())?);
    }
    kernel_union.sort_by(f64::total_cmp);
    let rayleigh_ritz = rayleigh_ritz_values(a, basis, mu_window)?;
    let to_c = |v: &[f64]| -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    };
    Ok(InvarianceReport {
        hausdorff_kernel_vs_union: linalg::hausdorff(&to_c(&kernel_zero), &to_c(&kernel_union)),
        hausdorff_kernel_vs_tensor: linalg::hausdorff(&to_c(&kernel_zero), &to_c(&rayleigh_ritz)),
        kernel_zero,
        kernel_union,
        rayleigh_ritz,
    })
}

/// Rayleigh--Ritz values of A(a) on the span of e_mu (x) phi_n.
pub fn rayleigh_ritz_values(
    a: &APSymbol,
    basis: &HermiteBasis,
    mu_window: &FrequencyWindow,
) -> Result<Vec<f64>> {
    let gens = a.gens().clone();
    let mut elements = Vec::new();
    for mu in mu_window.iter() {
        for n in 0..basis.count() {
            elements.push(TensorTP::simple(
                gens.clone(),
                mu.clone(),
                basis.function(n).clone(),
            ));
        }
    }
    let images: Vec<TensorTP> = elements
        .iter()
        .map(|u| apply_a(a, u))
        .collect::<Result<_>>()?;
    let dim = elements.len();
    let mut m = DMatrix::from_element(dim, dim, Complex64::ZERO);
    for (j, au) in images.iter().enumerate() {
        for (i, b) in elements.iter().enumerate() {
            m[(i, j)] = tensor_inner(au, b)?;
        }
    }
    // compression of a Hermitian operator: symmetrize away roundoff
    let h = (&m + m.adjoint()).scale(0.5);
    linalg::hermitian_eigenvalues(&h)
}
