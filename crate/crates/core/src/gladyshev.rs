//! The kernel-family representation: windowed matrices
//! U(a)(xi)_{lambda, lambda'} = a_{lambda' - lambda}(xi - lambda'),
//! weighted finite-section operator norms, positivity tests, the
//! nonpositive-order isometry sweep, and the operator-valued Fourier
//! multiplier U(a)(D) acting on vector-valued grid functions.

use std::collections::{BTreeMap, BTreeSet};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::freq::{Frequency, FrequencyWindow};
use crate::grid::{GridFn, GridSpec};
use crate::linalg;
use crate::symbol::APSymbol;
use crate::tp::japanese_bracket;

/// Hermiticity / positive-semidefiniteness default tolerance.
pub const POSITIVITY_TOL_DEFAULT: f64 = 1e-10;

/// Default cap on vector-field components produced by the multiplier.
pub const COMPONENT_CAP_DEFAULT: usize = 4096;

#[derive(Debug, Clone)]
pub struct KernelMatrix {
    window: FrequencyWindow,
    xi: Vec<f64>,
    entries: DMatrix<Complex64>,
    band: BTreeSet<Frequency>,
}

impl KernelMatrix {
    pub fn window(&self) -> &FrequencyWindow {
        &self.window
    }

    pub fn xi(&self) -> &[f64] {
        &self.xi
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// Frequency differences lambda' - lambda carrying a nonzero entry.
    pub fn band(&self) -> &BTreeSet<Frequency> {
        &self.band
    }

    pub fn dim(&self) -> usize {
        self.window.len()
    }

    /// Restrict to a subwindow (rows and columns present in `w`).
    pub fn restrict(&self, w: &FrequencyWindow) -> Result<Self> {
        let idx: Vec<usize> = w
            .iter()
            .map(|f| {
                self.window
                    .position(f)
                    .ok_or_else(|| Error::GridMismatch(format!("{f} missing from window")))
            })
            .collect::<Result<_>>()?;
        let n = idx.len();
        let entries = DMatrix::from_fn(n, n, |i, j| self.entries[(idx[i], idx[j])]);
        let mut band = BTreeSet::new();
        for (i, li) in w.iter().enumerate() {
            for (j, lj) in w.iter().enumerate() {
                if entries[(i, j)] != Complex64::ZERO {
                    band.insert(lj - li);
                }
            }
        }
        Ok(Self {
            window: w.clone(),
            xi: self.xi.clone(),
            entries,
            band,
        })
    }
}

/// Assemble U(a)(xi) on the window: exact frequency-difference matching,
/// entry (lambda, lambda') = a_{lambda'-lambda}(xi - lambda').
pub fn build_kernel(a: &APSymbol, xi: &[f64], w: &FrequencyWindow) -> Result<KernelMatrix> {
    if a.gens() != w.gens() {
        return Err(Error::GeneratorMismatch);
    }
    if xi.len() != a.gens().dim() {
        return Err(Error::DimensionMismatch {
            expected: a.gens().dim(),
            got: xi.len(),
        });
    }
    let n = w.len();
    let elements = w.elements();
    // column argument xi - lambda', shared across rows
    let col_args: Vec<Vec<f64>> = elements
        .iter()
        .map(|lam| {
            let e = a.gens().embed(lam)?;
            Ok(xi.iter().zip(&e).map(|(x, l)| x - l).collect())
        })
        .collect::<Result<_>>()?;
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![Complex64::ZERO; n];
            for j in 0..n {
                let diff = &elements[j] - &elements[i];
                if let Some(coeff) = a.terms().get(&diff) {
                    row[j] = coeff.eval(&col_args[j])?;
                }
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;
    let entries = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let mut band = BTreeSet::new();
    for i in 0..n {
        for j in 0..n {
            if entries[(i, j)] != Complex64::ZERO {
                band.insert(&elements[j] - &elements[i]);
            }
        }
    }
    Ok(KernelMatrix {
        window: w.clone(),
        xi: xi.to_vec(),
        entries,
        band,
    })
}

/// Diagonal weights <lambda>^s over a window.
pub fn window_weights(w: &FrequencyWindow, s: f64) -> Result<Vec<f64>> {
    w.iter()
        .map(|f| {
            let e = w.gens().embed(f)?;
            Ok(japanese_bracket(&e).powf(s))
        })
        .collect()
}

/// Finite-section norm of U(a)(xi): l^2_s -> l^2_{s-m}, the largest
/// singular value of D_{s-m} K D_s^{-1}.
pub fn weighted_norm(k: &KernelMatrix, s: f64, m: f64) -> Result<f64> {
    let n = k.dim();
    if n == 0 {
        return Ok(0.0);
    }
    let wr = window_weights(&k.window, s - m)?;
    let wc = window_weights(&k.window, s)?;
    let scaled = DMatrix::from_fn(n, n, |i, j| {
        k.entries[(i, j)] * Complex64::new(wr[i] / wc[j], 0.0)
    });
    Ok(linalg::operator_norm(&scaled))
}

#[derive(Debug, Clone, Copy)]
pub struct PositivityReport {
    pub hermitian: bool,
    pub psd: bool,
    pub min_eig: f64,
}

/// Hermiticity to absolute tolerance on the max entry; positive
/// semidefiniteness of the Hermitian part relative to the spectral norm.
pub fn positivity_check(k: &KernelMatrix, tol: f64) -> Result<PositivityReport> {
    let n = k.dim();
    if n == 0 {
        return Ok(PositivityReport {
            hermitian: true,
            psd: true,
            min_eig: 0.0,
        });
    }
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            dev = dev.max((k.entries[(i, j)] - k.entries[(j, i)].conj()).norm());
        }
    }
    let hermitian = dev <= tol;
    let min_eig = linalg::min_eig_hermitian_part(&k.entries)?;
    let scale = linalg::operator_norm(&k.entries).max(1e-300);
    let psd = hermitian && min_eig >= -tol * scale;
    Ok(PositivityReport {
        hermitian,
        psd,
        min_eig,
    })
}

/// Finite-section operator norms ||U(a)(xi)||_{L(l^2)} along a list of xi.
/// Rejects symbols of positive order, where the isometry fails.
pub fn isometry_sweep(
    a: &APSymbol,
    xi_list: &[Vec<f64>],
    w: &FrequencyWindow,
) -> Result<Vec<f64>> {
    if a.class().m > 0.0 {
        return Err(Error::OrderPositive { m: a.class().m });
    }
    xi_list
        .iter()
        .map(|xi| weighted_norm(&build_kernel(a, xi, w)?, 0.0, 0.0))
        .collect()
}

/// A finitely supported map from frequencies to grid functions,
/// discretizing S(R^d, l^2_f).
#[derive(Debug, Clone)]
pub struct VectorField {
    spec: GridSpec,
    components: BTreeMap<Frequency, GridFn>,
}

impl VectorField {
    pub fn new(spec: GridSpec) -> Self {
        Self {
            spec,
            components: BTreeMap::new(),
        }
    }

    pub fn single(spec: GridSpec, freq: Frequency, f: GridFn) -> Result<Self> {
        if f.spec() != spec {
            return Err(Error::GridMismatch("component grid differs".into()));
        }
        let mut components = BTreeMap::new();
        components.insert(freq, f);
        Ok(Self { spec, components })
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn components(&self) -> &BTreeMap<Frequency, GridFn> {
        &self.components
    }

    pub fn insert(&mut self, freq: Frequency, f: GridFn) -> Result<()> {
        if f.spec() != self.spec {
            return Err(Error::GridMismatch("component grid differs".into()));
        }
        match self.components.entry(freq) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&f)?;
            }
        }
        Ok(())
    }

    pub fn support(&self) -> Vec<Frequency> {
        self.components.keys().cloned().collect()
    }

    /// Discrete L^2(l^2) norm: (sum_lambda ||F_lambda||^2)^{1/2}.
    pub fn norm(&self) -> f64 {
        self.components
            .values()
            .map(|f| {
                let n = f.l2_norm();
                n * n
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        let mut acc = Complex64::ZERO;
        for (f, c) in &self.components {
            if let Some(o) = other.components.get(f) {
                acc += c.inner(o)?;
            }
        }
        Ok(acc)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (f, c) in &other.components {
            out.insert(f.clone(), c.scale(Complex64::new(-1.0, 0.0)))?;
        }
        Ok(out)
    }
}

/// The Fourier multiplier with operator-valued symbol: componentwise,
/// (U(a)(D) F)_lambda = sum_{lambda'} IDFT[ a_{lambda'-lambda}(xi - lambda') DFT F_{lambda'} ].
pub fn apply_uad(a: &APSymbol, field: &VectorField, cap: usize) -> Result<VectorField> {
    let spec = field.spec();
    let mut spectra: BTreeMap<Frequency, Vec<Complex64>> = BTreeMap::new();
    for (lam_in, comp) in field.components() {
        let fhat = comp.dft();
        let lam_in_embed = a.gens().embed(lam_in)?;
        for (nu, coeff) in a.terms() {
            let lam_out = lam_in - nu;
            if !spectra.contains_key(&lam_out) && spectra.len() >= cap {
                return Err(Error::ComponentCapExceeded {
                    requested: spectra.len() + 1,
                    cap,
                });
            }
            let acc = spectra
                .entry(lam_out)
                .or_insert_with(|| vec![Complex64::ZERO; spec.total_points()]);
            for (i, v) in fhat.iter().enumerate() {
                if v.norm_sqr() == 0.0 {
                    continue;
                }
                let xi = spec.frequency(i);
                let arg: Vec<f64> = xi
                    .iter()
                    .zip(&lam_in_embed)
                    .map(|(x, l)| x - l)
                    .collect();
                acc[i] += coeff.eval(&arg)? * v;
            }
        }
    }
    let mut out = VectorField::new(spec);
    for (f, spectrum) in spectra {
        out.insert(f, GridFn::from_spectrum(spec, spectrum)?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::CoeffFn;
    use crate::freq::{window_enumerate, GeneratorSet, Rational};
    use crate::symbol::SymbolClassParams;
    use crate::tp::TPFunction;
    use std::collections::BTreeMap as Map;
    use std::sync::Arc;

    fn gens1() -> Arc<GeneratorSet> {
        GeneratorSet::line(&[1.0]).unwrap()
    }

    fn int_window(radius: i64) -> FrequencyWindow {
        window_enumerate(&gens1(), Rational::from_integer(radius), 1, 100_000).unwrap()
    }

    fn cos_symbol(g: &str, m: f64) -> APSymbol {
        let gens = gens1();
        let coeff = CoeffFn::parse(g, 1)
            .unwrap()
            .scale(Complex64::new(0.5, 0.0));
        let mut terms = Map::new();
        terms.insert(Frequency::from_ints(&[1]), coeff.clone());
        terms.insert(Frequency::from_ints(&[-1]), coeff);
        APSymbol::new(gens, terms, SymbolClassParams::order(m)).unwrap()
    }

    #[test]
    fn kernel_of_identity_symbol() {
        let a = APSymbol::identity(gens1());
        for xi in [0.0, 0.37, -2.0] {
            let k = build_kernel(&a, &[xi], &int_window(4)).unwrap();
            let n = k.dim();
            for i in 0..n {
                for j in 0..n {
                    let want = if i == j { Complex64::ONE } else { Complex64::ZERO };
                    assert_eq!(k.entries()[(i, j)], want);
                }
            }
        }
    }

    #[test]
    fn kernel_of_multiplier_is_diagonal() {
        let gens = gens1();
        let a = APSymbol::multiplier(
            gens.clone(),
            CoeffFn::parse("jbracket(xi)^(-1)", 1).unwrap(),
            SymbolClassParams::order(-1.0),
        )
        .unwrap();
        let w = int_window(3);
        let k = build_kernel(&a, &[0.0], &w).unwrap();
        for (i, lam) in w.iter().enumerate() {
            let l = gens.embed(lam).unwrap()[0];
            let want = (1.0 + l * l).powf(-0.5);
            assert!((k.entries()[(i, i)].re - want).abs() < 1e-15);
            for (j, _) in w.iter().enumerate() {
                if i != j {
                    assert_eq!(k.entries()[(i, j)], Complex64::ZERO);
                }
            }
        }
        assert_eq!(k.band().len(), 1);
    }

    #[test]
    fn kernel_of_modulated_symbol_on_subdiagonal() {
        // a = e_1(x) g(xi): entries g(xi - lambda') exactly on lambda' - lambda = 1
        let gens = gens1();
        let g = CoeffFn::parse("jbracket(xi)^(-2)", 1).unwrap();
        let a = APSymbol::modulated(
            gens.clone(),
            Frequency::from_ints(&[1]),
            g.clone(),
            SymbolClassParams::order(-2.0),
        )
        .unwrap();
        let w = int_window(2);
        let xi = 0.4;
        let k = build_kernel(&a, &[xi], &w).unwrap();
        // hand oracle on the 5-window
        for (i, li) in w.iter().enumerate() {
            for (j, lj) in w.iter().enumerate() {
                let diff = lj - li;
                let want = if diff == Frequency::from_ints(&[1]) {
                    let lp = gens.embed(lj).unwrap()[0];
                    g.eval(&[xi - lp]).unwrap()
                } else {
                    Complex64::ZERO
                };
                assert!((k.entries()[(i, j)] - want).norm() < 1e-15);
            }
        }
        assert_eq!(k.band().iter().collect::<Vec<_>>(), vec![&Frequency::from_ints(&[1])]);
    }

    #[test]
    fn weighted_norm_of_identity() {
        let a = APSymbol::identity(gens1());
        let k = build_kernel(&a, &[0.0], &int_window(4)).unwrap();
        for s in [-1.0, 0.0, 2.0] {
            assert!((weighted_norm(&k, s, 0.0).unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn weighted_norm_of_diagonal_matches_sup() {
        let gens = gens1();
        let a = APSymbol::multiplier(
            gens.clone(),
            CoeffFn::parse("jbracket(xi)^(-1)", 1).unwrap(),
            SymbolClassParams::order(-1.0),
        )
        .unwrap();
        let w = int_window(5);
        let k = build_kernel(&a, &[0.0], &w).unwrap();
        // diagonal SVD oracle: max |g(-lambda)| over the window
        let want = w
            .iter()
            .map(|f| {
                let l = gens.embed(f).unwrap()[0];
                (1.0 + l * l).powf(-0.5)
            })
            .fold(0.0f64, f64::max);
        let got = weighted_norm(&k, 0.0, 0.0).unwrap();
        assert!((got - want).abs() < 1e-12);
    }

    #[test]
    fn homomorphism_with_band_padding() {
        let a = cos_symbol("jbracket(xi)^(-1)", -1.0);
        let b = cos_symbol("1/(2+xi^2)", 0.0);
        let ab = a.compose(&b).unwrap();
        let w = int_window(3);
        let wpad = w.pad(&a.frequencies(), 100_000).unwrap();
        for xi in [0.0, 0.7] {
            let ka = build_kernel(&a, &[xi], &wpad).unwrap();
            let kb = build_kernel(&b, &[xi], &wpad).unwrap();
            let kab = build_kernel(&ab, &[xi], &wpad).unwrap();
            let prod = ka.entries() * kb.entries();
            // compare restricted to the unpadded window
            for (i, li) in wpad.iter().enumerate() {
                for (j, lj) in wpad.iter().enumerate() {
                    if w.contains(li) && w.contains(lj) {
                        let d = (prod[(i, j)] - kab.entries()[(i, j)]).norm();
                        let scale = kab.entries()[(i, j)].norm().max(1.0);
                        assert!(d / scale < 1e-12, "xi={xi} i={i} j={j} d={d}");
                    }
                }
            }
        }
    }

    #[test]
    fn adjoint_kernel_is_hermitian_transpose() {
        let a = cos_symbol("exp(i*xi)*jbracket(xi)^(-1)", 0.0);
        let ad = a.adjoint();
        let w = int_window(3);
        for xi in [0.0, -1.3] {
            let k = build_kernel(&a, &[xi], &w).unwrap();
            let kd = build_kernel(&ad, &[xi], &w).unwrap();
            let n = k.dim();
            for i in 0..n {
                for j in 0..n {
                    let d = (kd.entries()[(i, j)] - k.entries()[(j, i)].conj()).norm();
                    assert!(d < 1e-12);
                }
            }
        }
    }

    #[test]
    fn translation_covariance() {
        let a = cos_symbol("jbracket(xi)^(-2)", -2.0);
        let w = int_window(2);
        // dyadic data keeps both argument paths bit-identical
        let xi0 = 0.5;
        let t = a.translate(&[xi0]);
        for xi in [0.0, 1.25] {
            let lhs = build_kernel(&t, &[xi], &w).unwrap();
            let rhs = build_kernel(&a, &[xi + xi0], &w).unwrap();
            let n = lhs.dim();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(lhs.entries()[(i, j)], rhs.entries()[(i, j)]);
                }
            }
        }
        // general offsets agree to rounding
        let t = a.translate(&[0.6]);
        let lhs = build_kernel(&t, &[1.1], &w).unwrap();
        let rhs = build_kernel(&a, &[1.7], &w).unwrap();
        for i in 0..w.len() {
            for j in 0..w.len() {
                assert!((lhs.entries()[(i, j)] - rhs.entries()[(i, j)]).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn positivity_of_gram_symbol() {
        let b = cos_symbol("exp(i*xi)/(2+xi^2)", 0.0);
        let a = b.adjoint().compose(&b).unwrap();
        let w = int_window(3);
        for xi in [0.0, 0.5, -2.0] {
            let k = build_kernel(&a, &[xi], &w).unwrap();
            let rep = positivity_check(&k, POSITIVITY_TOL_DEFAULT).unwrap();
            assert!(rep.hermitian, "xi={xi}");
            assert!(rep.psd, "xi={xi} min_eig={}", rep.min_eig);
        }
    }

    #[test]
    fn positivity_identity_kernel() {
        let a = APSymbol::identity(gens1());
        let k = build_kernel(&a, &[0.0], &int_window(3)).unwrap();
        let rep = positivity_check(&k, POSITIVITY_TOL_DEFAULT).unwrap();
        assert!(rep.psd && (rep.min_eig - 1.0).abs() < 1e-12);
    }

    #[test]
    fn character_symbol_kernel_not_hermitian() {
        let a = APSymbol::modulated(
            gens1(),
            Frequency::from_ints(&[1]),
            CoeffFn::one(1),
            SymbolClassParams::order(0.0),
        )
        .unwrap();
        let k = build_kernel(&a, &[0.0], &int_window(2)).unwrap();
        let rep = positivity_check(&k, POSITIVITY_TOL_DEFAULT).unwrap();
        assert!(!rep.hermitian && !rep.psd);
    }

    #[test]
    fn isometry_of_identity_is_flat() {
        let a = APSymbol::identity(gens1());
        let xis: Vec<Vec<f64>> = [0.0, 0.3, 1.0, 2.0].iter().map(|&x| vec![x]).collect();
        let norms = isometry_sweep(&a, &xis, &int_window(4)).unwrap();
        for v in norms {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn isometry_rejects_positive_order() {
        let a = APSymbol::multiplier(
            gens1(),
            CoeffFn::parse("jbracket(xi)", 1).unwrap(),
            SymbolClassParams::order(1.0),
        )
        .unwrap();
        let err = isometry_sweep(&a, &[vec![0.0]], &int_window(2)).unwrap_err();
        assert!(matches!(err, Error::OrderPositive { .. }));
    }

    #[test]
    fn isometry_deviation_shrinks_with_radius() {
        let gens = gens1();
        let a = APSymbol::multiplier(
            gens,
            CoeffFn::parse("jbracket(xi)^(-1)", 1).unwrap(),
            SymbolClassParams::order(-1.0),
        )
        .unwrap();
        let xis: Vec<Vec<f64>> = [0.0, 0.3, 1.0, 2.0].iter().map(|&x| vec![x]).collect();
        let mut devs = Vec::new();
        for radius in [4, 8, 16] {
            let norms = isometry_sweep(&a, &xis, &int_window(radius)).unwrap();
            let dev = norms
                .iter()
                .map(|v| (v - norms[0]).abs())
                .fold(0.0f64, f64::max);
            devs.push(dev);
        }
        assert!(devs[2] <= devs[1] + 1e-12 && devs[1] <= devs[0] + 1e-12, "{devs:?}");
        assert!(devs[2] < 0.05);
    }

    #[test]
    fn character_consistency_with_kernel_form() {
        // (a(x,D) f, g)_B = (U(a)(0) F_B R f, F_B R g)_{l^2}
        let gens = gens1();
        let a = cos_symbol("exp(i*xi)*jbracket(xi)^(-1)", -1.0);
        let w = int_window(6);
        let f = TPFunction::new(
            gens.clone(),
            [
                (Frequency::from_ints(&[-1]), Complex64::new(0.3, 0.4)),
                (Frequency::from_ints(&[2]), Complex64::new(-1.0, 0.2)),
            ]
            .into_iter()
            .collect(),
        );
        let g = TPFunction::new(
            gens.clone(),
            [
                (Frequency::from_ints(&[0]), Complex64::new(0.5, -0.1)),
                (Frequency::from_ints(&[3]), Complex64::new(0.0, 1.0)),
                (Frequency::from_ints(&[1]), Complex64::new(0.7, 0.0)),
            ]
            .into_iter()
            .collect(),
        );
        let lhs = a.apply_to_tp(&f).unwrap().b_inner(&g).unwrap();
        let k = build_kernel(&a, &[0.0], &w).unwrap();
        // F_B R f has coefficient f_{-lambda} at lambda
        let n = w.len();
        let zf: Vec<Complex64> = w.iter().map(|lam| f.coeff(&-lam)).collect();
        let zg: Vec<Complex64> = w.iter().map(|lam| g.coeff(&-lam)).collect();
        let mut rhs = Complex64::ZERO;
        for i in 0..n {
            let mut kz = Complex64::ZERO;
            for j in 0..n {
                kz += k.entries()[(i, j)] * zf[j];
            }
            rhs += kz * zg[i].conj();
        }
        assert!((lhs - rhs).norm() < 1e-12, "lhs={lhs} rhs={rhs}");
    }

    #[test]
    fn multiplier_field_action() {
        // single-band DFT oracle: component mu becomes g(xi - mu) as a multiplier
        let gens = gens1();
        let spec = GridSpec::d1(16.0, 128);
        let a = APSymbol::multiplier(
            gens.clone(),
            CoeffFn::parse("jbracket(xi)^(-1)", 1).unwrap(),
            SymbolClassParams::order(-1.0),
        )
        .unwrap();
        let mu = Frequency::from_ints(&[1]);
        let phi = GridFn::from_fn(spec, |x| {
            Complex64::new((-0.5 * (x[0] - 8.0).powi(2)).exp(), 0.0)
        });
        let field = VectorField::single(spec, mu.clone(), phi.clone()).unwrap();
        let out = apply_uad(&a, &field, COMPONENT_CAP_DEFAULT).unwrap();
        assert_eq!(out.support(), vec![mu.clone()]);
        let oracle = phi
            .apply_multiplier(|xi| {
                let t = xi[0] - 1.0;
                Ok(Complex64::new((1.0 + t * t).powf(-0.5), 0.0))
            })
            .unwrap();
        let d = out.components()[&mu].sub(&oracle).unwrap().l2_norm();
        assert!(d < 1e-12);
    }

    #[test]
    fn identity_field_action() {
        let spec = GridSpec::d1(8.0, 32);
        let a = APSymbol::identity(gens1());
        let f = GridFn::from_fn(spec, |x| Complex64::new(x[0].cos(), 0.2));
        let field = VectorField::single(spec, Frequency::from_ints(&[2]), f.clone()).unwrap();
        let out = apply_uad(&a, &field, 16).unwrap();
        let d = out.components()[&Frequency::from_ints(&[2])]
            .sub(&f)
            .unwrap()
            .l2_norm();
        assert!(d < 1e-12);
        // zero field stays zero
        let zf = VectorField::new(spec);
        assert_eq!(apply_uad(&a, &zf, 16).unwrap().norm(), 0.0);
    }

    #[test]
    fn restrict_keeps_entries() {
        let a = cos_symbol("jbracket(xi)^(-1)", -1.0);
        let big = int_window(4);
        let small = int_window(2);
        let k = build_kernel(&a, &[0.2], &big).unwrap();
        let r = k.restrict(&small).unwrap();
        let direct = build_kernel(&a, &[0.2], &small).unwrap();
        for i in 0..small.len() {
            for j in 0..small.len() {
                assert_eq!(r.entries()[(i, j)], direct.entries()[(i, j)]);
            }
        }
    }
}
