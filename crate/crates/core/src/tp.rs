//! Trigonometric polynomials with exact frequency bookkeeping.
//!
//! A `TPFunction` stores the Bohr--Fourier coefficients of
//! f(x) = sum_lambda c_lambda e^{2 pi i lambda . x} keyed by exact
//! frequencies. Mean value, inner products and Sobolev norms reduce to
//! finite coefficient sums; the box-average quadrature lives here as the
//! independent oracle for the exact mean.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::freq::{Frequency, GeneratorSet, LatticeBasis, Rational};

#[derive(Debug, Clone)]
pub struct TPFunction {
    gens: Arc<GeneratorSet>,
    coeffs: BTreeMap<Frequency, Complex64>,
}

impl TPFunction {
    pub fn new(gens: Arc<GeneratorSet>, coeffs: BTreeMap<Frequency, Complex64>) -> Self {
        let mut f = Self { gens, coeffs };
        f.prune();
        f
    }

    pub fn zero(gens: Arc<GeneratorSet>) -> Self {
        Self {
            gens,
            coeffs: BTreeMap::new(),
        }
    }

    /// The character amp * e_freq.
    pub fn character(gens: Arc<GeneratorSet>, freq: Frequency, amp: Complex64) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(freq, amp);
        Self::new(gens, coeffs)
    }

    pub fn constant(gens: Arc<GeneratorSet>, c: Complex64) -> Self {
        let r = gens.count();
        Self::character(gens, Frequency::zero(r), c)
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| *c != Complex64::ZERO);
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn coeffs(&self) -> &BTreeMap<Frequency, Complex64> {
        &self.coeffs
    }

    pub fn coeff(&self, f: &Frequency) -> Complex64 {
        self.coeffs.get(f).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn support(&self) -> Vec<Frequency> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_gens(other)?;
        let mut coeffs = self.coeffs.clone();
        for (f, c) in &other.coeffs {
            *coeffs.entry(f.clone()).or_insert(Complex64::ZERO) += c;
        }
        Ok(Self::new(self.gens.clone(), coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_gens(other)?;
        let mut coeffs = self.coeffs.clone();
        for (f, c) in &other.coeffs {
            *coeffs.entry(f.clone()).or_insert(Complex64::ZERO) -= c;
        }
        Ok(Self::new(self.gens.clone(), coeffs))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let coeffs = self.coeffs.iter().map(|(f, v)| (f.clone(), v * c)).collect();
        Self::new(self.gens.clone(), coeffs)
    }

    /// Complex conjugate: coefficients conj(c_{-lambda}).
    pub fn conj(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(f, c)| (-f, c.conj()))
            .collect();
        Self::new(self.gens.clone(), coeffs)
    }

    /// Pointwise product; coefficient convolution is exact.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_gens(other)?;
        let mut coeffs: BTreeMap<Frequency, Complex64> = BTreeMap::new();
        for (f1, c1) in &self.coeffs {
            for (f2, c2) in &other.coeffs {
                *coeffs.entry(f1 + f2).or_insert(Complex64::ZERO) += c1 * c2;
            }
        }
        Ok(Self::new(self.gens.clone(), coeffs))
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<Complex64> {
        let mut acc = Complex64::ZERO;
        for (f, c) in &self.coeffs {
            let lam = self.gens.embed(f)?;
            let phase: f64 = lam.iter().zip(x).map(|(l, xj)| l * xj).sum();
            acc += c * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase);
        }
        Ok(acc)
    }

    /// M(f): the zero-frequency coefficient, exact by orthogonality.
    pub fn mean_value_exact(&self) -> Complex64 {
        self.coeff(&Frequency::zero(self.gens.count()))
    }

    /// (f, g)_B = sum_lambda f_lambda conj(g_lambda).
    pub fn b_inner(&self, other: &Self) -> Result<Complex64> {
        self.check_gens(other)?;
        let mut acc = Complex64::ZERO;
        for (f, c) in &self.coeffs {
            acc += c * other.coeff(f).conj();
        }
        Ok(acc)
    }

    pub fn b_norm(&self) -> f64 {
        self.coeffs
            .values()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// l^1 mass of the coefficients.
    pub fn coeff_mass(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).sum()
    }

    /// Sobolev--Besicovitch norm (sum <lambda>^{2s} |c_lambda|^2)^{1/2}.
    pub fn sobolev_norm(&self, s: f64) -> Result<f64> {
        let mut acc = 0.0;
        for (f, c) in &self.coeffs {
            let lam = self.gens.embed(f)?;
            let w = japanese_bracket(&lam).powf(2.0 * s);
            acc += w * c.norm_sqr();
        }
        Ok(acc.sqrt())
    }

    /// Bochner--Fejer approximant: coefficients damped by the product
    /// Fejer kernel over a Z-basis of the module spanned by the support.
    pub fn bochner_fejer(&self, n: u32) -> Self {
        assert!(n >= 1, "Fejer order must be positive");
        let support = self.support();
        let basis = LatticeBasis::from_frequencies(&support);
        let coeffs = self
            .coeffs
            .iter()
            .map(|(f, c)| {
                let m = basis
                    .decompose(f)
                    .expect("support frequency must lie in its own lattice");
                let k = fejer_kernel_value(&m, n);
                (f.clone(), c * crate::freq::rational_to_f64(k))
            })
            .collect();
        Self::new(self.gens.clone(), coeffs)
    }

    /// Kernel factors K_n(lambda) for every support frequency, exact.
    pub fn fejer_factors(&self, n: u32) -> Vec<(Frequency, Rational)> {
        let support = self.support();
        let basis = LatticeBasis::from_frequencies(&support);
        support
            .into_iter()
            .map(|f| {
                let m = basis.decompose(&f).expect("support in own lattice");
                let k = fejer_kernel_value(&m, n);
                (f, k)
            })
            .collect()
    }

    fn check_gens(&self, other: &Self) -> Result<()> {
        if self.gens == other.gens {
            Ok(())
        } else {
            Err(Error::GeneratorMismatch)
        }
    }
}

/// Product Fejer kernel K_n(sum m_i beta_i) = prod_i max(0, 1 - |m_i|/n),
/// kept rational so kernel identities can be asserted exactly.
pub fn fejer_kernel_value(m: &[i64], n: u32) -> Rational {
    let n = i64::from(n);
    let mut k = Rational::from_integer(1);
    for &mi in m {
        let f = Rational::from_integer(1) - Ratio::new(mi.abs(), n);
        if f <= Rational::zero() {
            return Rational::zero();
        }
        k *= f;
    }
    k
}

pub fn japanese_bracket(v: &[f64]) -> f64 {
    (1.0 + v.iter().map(|x| x * x).sum::<f64>()).sqrt()
}

/// 8-point Gauss--Legendre rule on [-1, 1].
const GL_NODES: [f64; 8] = [
    -0.9602898564975363,
    -0.7966664774136267,
    -0.5255324099163290,
    -0.1834346424956498,
    0.1834346424956498,
    0.5255324099163290,
    0.7966664774136267,
    0.9602898564975363,
];
const GL_WEIGHTS: [f64; 8] = [
    0.1012285362903763,
    0.2223810344533745,
    0.3137066458778873,
    0.3626837833783620,
    0.3626837833783620,
    0.3137066458778873,
    0.2223810344533745,
    0.1012285362903763,
];

pub fn default_panels(t: f64) -> usize {
    ((2.0 * t).ceil() as usize).max(4)
}

/// Box average T^{-d} int_{s+K_T} f over the cube K_T by composite
/// Gauss--Legendre quadrature; the numerical oracle for `mean_value_exact`.
pub fn mean_value_box<F>(
    f: F,
    t: f64,
    s: &[f64],
    panels: usize,
    budget: u128,
) -> Result<Complex64>
where
    F: Fn(&[f64]) -> Complex64,
{
    assert!(t > 0.0, "box side must be positive");
    let d = s.len();
    let nodes_total = (8u128 * panels as u128).pow(d as u32);
    if nodes_total > budget {
        return Err(Error::NodeBudget {
            needed: nodes_total,
            budget,
        });
    }
    // 1-d nodes and weights on [0, T]
    let h = t / panels as f64;
    let mut nodes = Vec::with_capacity(8 * panels);
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for k in 0..8 {
            nodes.push((mid + 0.5 * h * GL_NODES[k], 0.5 * h * GL_WEIGHTS[k]));
        }
    }
    let mut acc = Complex64::ZERO;
    let mut idx = vec![0usize; d];
    let mut x = vec![0.0f64; d];
    loop {
        let mut w = 1.0;
        for j in 0..d {
            let (xj, wj) = nodes[idx[j]];
            x[j] = s[j] + xj;
            w *= wj;
        }
        acc += f(&x) * w;
        let mut k = 0;
        loop {
            if k == d {
                return Ok(acc / t.powi(d as i32));
            }
            idx[k] += 1;
            if idx[k] < nodes.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
