//! Uniform periodic grids on [0, L)^d with DFT plumbing.
//!
//! Grid functions discretize Schwartz-class factors; multipliers act by
//! transforming, scaling the bin at its continuous frequency k/L, and
//! transforming back.

use std::sync::Arc;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub dim: usize,
    /// Box side length L.
    pub len: f64,
    /// Points per axis N.
    pub n: usize,
}

impl GridSpec {
    pub fn new(dim: usize, len: f64, n: usize) -> Self {
        assert!(dim >= 1 && n >= 2 && len > 0.0);
        Self { dim, len, n }
    }

    pub fn d1(len: f64, n: usize) -> Self {
        Self::new(1, len, n)
    }

    pub fn spacing(&self) -> f64 {
        self.len / self.n as f64
    }

    pub fn total_points(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    /// Cell volume element for discrete L^2 sums.
    pub fn cell(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Spatial point of a flat index.
    pub fn point(&self, mut flat: usize) -> Vec<f64> {
        let mut idx = vec![0usize; self.dim];
        for j in (0..self.dim).rev() {
            idx[j] = flat % self.n;
            flat /= self.n;
        }
        idx.iter().map(|&i| i as f64 * self.spacing()).collect()
    }

    /// Continuous frequency (k~ / L per axis) of a flat spectral index.
    pub fn frequency(&self, mut flat: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        for j in (0..self.dim).rev() {
            let k = flat % self.n;
            flat /= self.n;
            let signed = if k <= self.n / 2 {
                k as i64
            } else {
                k as i64 - self.n as i64
            };
            out[j] = signed as f64 / self.len;
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct GridFn {
    spec: GridSpec,
    values: Vec<Complex64>,
}

impl GridFn {
    pub fn zeros(spec: GridSpec) -> Self {
        Self {
            spec,
            values: vec![Complex64::ZERO; spec.total_points()],
        }
    }

    pub fn from_values(spec: GridSpec, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != spec.total_points() {
            return Err(Error::GridMismatch(format!(
                "expected {} values, got {}",
                spec.total_points(),
                values.len()
            )));
        }
        Ok(Self { spec, values })
    }

    pub fn from_fn<F>(spec: GridSpec, f: F) -> Self
    where
        F: Fn(&[f64]) -> Complex64,
    {
        let values = (0..spec.total_points())
            .map(|i| f(&spec.point(i)))
            .collect();
        Self { spec, values }
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn l2_norm(&self) -> f64 {
        (self.spec.cell() * self.values.iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt()
    }

    /// Discrete L^2 inner product (f, g) = h^d sum f conj(g).
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check(other)?;
        let s: Complex64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b.conj())
            .sum();
        Ok(s * self.spec.cell())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            spec: self.spec,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn add_assign(&mut self, other: &Self) -> Result<()> {
        self.check(other)?;
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += b;
        }
        Ok(())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            spec: self.spec,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            spec: self.spec,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// Pointwise multiply by a function of the spatial point.
    pub fn modulate<F>(&self, f: F) -> Self
    where
        F: Fn(&[f64]) -> Complex64,
    {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(i, v)| v * f(&self.spec.point(i)))
            .collect();
        Self {
            spec: self.spec,
            values,
        }
    }

    /// Unnormalized forward DFT.
    pub fn dft(&self) -> Vec<Complex64> {
        let mut spectrum = self.values.clone();
        for axis in 0..self.spec.dim {
            fft_axis(&mut spectrum, self.spec, axis, false);
        }
        spectrum
    }

    /// Inverse of `dft` (scaled by N^-d).
    pub fn from_spectrum(spec: GridSpec, mut spectrum: Vec<Complex64>) -> Result<Self> {
        if spectrum.len() != spec.total_points() {
            return Err(Error::GridMismatch(format!(
                "expected {} spectral values, got {}",
                spec.total_points(),
                spectrum.len()
            )));
        }
        for axis in 0..spec.dim {
            fft_axis(&mut spectrum, spec, axis, true);
        }
        let scale = 1.0 / spec.total_points() as f64;
        for v in &mut spectrum {
            *v *= scale;
        }
        Ok(Self {
            spec,
            values: spectrum,
        })
    }

    /// Apply a Fourier multiplier g: bin k picks up g(k~/L).
    pub fn apply_multiplier<F>(&self, g: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> Result<Complex64>,
    {
        let mut spectrum = self.dft();
        for (i, v) in spectrum.iter_mut().enumerate() {
            *v *= g(&self.spec.frequency(i))?;
        }
        Self::from_spectrum(self.spec, spectrum)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.spec == other.spec {
            Ok(())
        } else {
            Err(Error::GridMismatch(format!(
                "{:?} vs {:?}",
                self.spec, other.spec
            )))
        }
    }
}

fn fft_axis(values: &mut [Complex64], spec: GridSpec, axis: usize, inverse: bool) {
    let n = spec.n;
    let d = spec.dim;
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(n)
    } else {
        planner.plan_fft_forward(n)
    };
    // stride of the axis in row-major layout
    let stride = n.pow((d - 1 - axis) as u32);
    let lines = values.len() / n;
    let mut scratch = vec![Complex64::ZERO; n];
    for line in 0..lines {
        // base index of this line: split line index around the axis
        let outer = line / stride;
        let inner = line % stride;
        let base = outer * stride * n + inner;
        for k in 0..n {
            scratch[k] = values[base + k * stride];
        }
        fft.process(&mut scratch);
        for k in 0..n {
            values[base + k * stride] = scratch[k];
        }
    }
}

/// Shared planner-free helper: e_freq(x) sampled on the grid.
pub fn character_grid(spec: GridSpec, freq_embedded: &[f64]) -> GridFn {
    GridFn::from_fn(spec, |x| {
        let phase: f64 = freq_embedded.iter().zip(x).map(|(l, xj)| l * xj).sum();
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase)
    })
}

/// Hermite function basis scaled to sit well inside the box.
///
/// phi_k are analytically normalized; on a box whose edges see values
/// below roundoff the discrete Gram comes out near the identity without
/// re-orthonormalization. In several dimensions the basis is the tensor
/// product enumerated by graded multi-indices.
#[derive(Debug, Clone)]
pub struct HermiteBasis {
    spec: GridSpec,
    width: f64,
    functions: Vec<Arc<GridFn>>,
}

/// Default Hermite width; keeps 32 modes below 1e-12 at the edges of an
/// L = 16 box.
pub const HERMITE_WIDTH_DEFAULT: f64 = 0.6;

impl HermiteBasis {
    pub fn new(count: usize, spec: GridSpec, width: f64) -> Self {
        assert!(count >= 1);
        let center = spec.len / 2.0;
        let indices = graded_indices(spec.dim, count);
        // 1-d tables up to the largest order used
        let max_order = indices
            .iter()
            .flat_map(|m| m.iter().copied())
            .max()
            .unwrap_or(0);
        let axis_tables: Vec<Vec<f64>> = {
            // values of phi_k((t - c)/w)/sqrt(w) on the 1-d grid
            let n = spec.n;
            let h = spec.spacing();
            let mut tables = vec![vec![0.0f64; n]; max_order as usize + 1];
            for i in 0..n {
                let t = (i as f64 * h - center) / width;
                let phi = hermite_values(t, max_order as usize);
                for (k, v) in phi.iter().enumerate() {
                    tables[k][i] = v / width.sqrt();
                }
            }
            tables
        };
        let functions = indices
            .into_iter()
            .map(|m| {
                let values = (0..spec.total_points())
                    .map(|flat| {
                        let mut f = flat;
                        let mut prod = 1.0;
                        for j in (0..spec.dim).rev() {
                            let i = f % spec.n;
                            f /= spec.n;
                            prod *= axis_tables[m[j] as usize][i];
                        }
                        Complex64::new(prod, 0.0)
                    })
                    .collect();
                Arc::new(GridFn {
                    spec,
                    values,
                })
            })
            .collect();
        Self {
            spec,
            width,
            functions,
        }
    }

    pub fn count(&self) -> usize {
        self.functions.len()
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn function(&self, k: usize) -> &GridFn {
        &self.functions[k]
    }

    /// Discrete Gram matrix of the basis.
    pub fn gram(&self) -> nalgebra::DMatrix<Complex64> {
        let n = self.count();
        nalgebra::DMatrix::from_fn(n, n, |i, j| {
            self.functions[i].inner(&self.functions[j]).expect("same grid")
        })
    }
}

/// phi_0..phi_max at a point, by the normalized recurrence
/// phi_{k+1} = sqrt(2/(k+1)) t phi_k - sqrt(k/(k+1)) phi_{k-1}.
fn hermite_values(t: f64, max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(max + 1);
    let phi0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * t * t).exp();
    out.push(phi0);
    if max == 0 {
        return out;
    }
    out.push(std::f64::consts::SQRT_2 * t * phi0);
    for k in 1..max {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * t * out[k]
            - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

/// First `count` multi-indices in graded (total degree, then lex) order.
fn graded_indices(d: usize, count: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::with_capacity(count);
    let mut degree = 0u32;
    while out.len() < count {
        let mut stack = vec![(vec![], degree)];
        let mut level = Vec::new();
        while let Some((prefix, rest)) = stack.pop() {
            if prefix.len() == d - 1 {
                let mut m = prefix.clone();
                m.push(rest);
                level.push(m);
            } else {
                for v in (0..=rest).rev() {
                    let mut p = prefix.clone();
                    p.push(v);
                    stack.push((p, rest - v));
                }
            }
        }
        level.sort();
        for m in level {
            if out.len() < count {
                out.push(m);
            }
        }
        degree += 1;
    }
    out
}
