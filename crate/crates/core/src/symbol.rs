//! Almost-periodic symbols a(x, xi) = sum_lambda a_lambda(xi) e_lambda(x)
//! with finitely many terms, and the exact symbol algebra on them:
//! character action, formal adjoint, composition and translation all
//! follow closed formulas because the x-dependence is a trigonometric
//! polynomial.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::CoeffFn;
use crate::freq::{Frequency, GeneratorSet};
use crate::tp::{japanese_bracket, TPFunction};

/// Order and Hormander-class parameters (m, rho, delta, optional m0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolClassParams {
    pub m: f64,
    pub rho: f64,
    pub delta: f64,
    pub m0: Option<f64>,
}

impl SymbolClassParams {
    pub fn new(m: f64, rho: f64, delta: f64, m0: Option<f64>) -> Result<Self> {
        let p = Self { m, rho, delta, m0 };
        p.validate()?;
        Ok(p)
    }

    pub fn order(m: f64) -> Self {
        Self {
            m,
            rho: 1.0,
            delta: 0.0,
            m0: None,
        }
    }

    /// Enforces 0 < rho <= 1, 0 <= delta < 1, delta <= rho, and m0 <= m.
    pub fn validate(&self) -> Result<()> {
        if !(self.rho > 0.0 && self.rho <= 1.0) {
            return Err(Error::ClassParams(format!(
                "rho = {} violates 0 < rho <= 1",
                self.rho
            )));
        }
        if !(self.delta >= 0.0 && self.delta < 1.0) {
            return Err(Error::ClassParams(format!(
                "delta = {} violates 0 <= delta < 1",
                self.delta
            )));
        }
        if self.delta > self.rho {
            return Err(Error::ClassParams(format!(
                "delta = {} exceeds rho = {}",
                self.delta, self.rho
            )));
        }
        if let Some(m0) = self.m0 {
            if m0 > self.m {
                return Err(Error::ClassParams(format!(
                    "hypoelliptic lower order m0 = {m0} exceeds m = {}",
                    self.m
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct APSymbol {
    gens: Arc<GeneratorSet>,
    terms: BTreeMap<Frequency, CoeffFn>,
    class: SymbolClassParams,
}

impl APSymbol {
    pub fn new(
        gens: Arc<GeneratorSet>,
        terms: BTreeMap<Frequency, CoeffFn>,
        class: SymbolClassParams,
    ) -> Result<Self> {
        class.validate()?;
        let r = gens.count();
        let d = gens.dim();
        for (f, c) in &terms {
            if f.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    got: f.len(),
                });
            }
            if c.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: c.dim(),
                });
            }
        }
        let mut s = Self { gens, terms, class };
        s.terms.retain(|_, c| !c.is_structurally_zero());
        Ok(s)
    }

    /// The identity symbol a = 1.
    pub fn identity(gens: Arc<GeneratorSet>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(
            Frequency::zero(gens.count()),
            CoeffFn::one(gens.dim()),
        );
        Self {
            gens,
            terms,
            class: SymbolClassParams::order(0.0),
        }
    }

    /// x-independent symbol g(xi) (a Fourier multiplier).
    pub fn multiplier(gens: Arc<GeneratorSet>, g: CoeffFn, class: SymbolClassParams) -> Result<Self> {
        let mut terms = BTreeMap::new();
        terms.insert(Frequency::zero(gens.count()), g);
        Self::new(gens, terms, class)
    }

    /// The character symbol e_freq(x) g(xi).
    pub fn modulated(
        gens: Arc<GeneratorSet>,
        freq: Frequency,
        g: CoeffFn,
        class: SymbolClassParams,
    ) -> Result<Self> {
        let mut terms = BTreeMap::new();
        terms.insert(freq, g);
        Self::new(gens, terms, class)
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn class(&self) -> SymbolClassParams {
        self.class
    }

    pub fn terms(&self) -> &BTreeMap<Frequency, CoeffFn> {
        &self.terms
    }

    /// Lambda(a): the frequency support.
    pub fn frequencies(&self) -> Vec<Frequency> {
        self.terms.keys().cloned().collect()
    }

    /// Bohr--Fourier coefficient a_lambda, the zero function off support.
    pub fn bohr_fourier(&self, lam: &Frequency) -> CoeffFn {
        self.terms
            .get(lam)
            .cloned()
            .unwrap_or_else(|| CoeffFn::zero(self.gens.dim()))
    }

    pub fn is_multiplier(&self) -> bool {
        self.terms
            .keys()
            .all(|f| f.is_zero())
    }

    /// True when every coefficient is constant in xi (pure multiplication
    /// operator).
    pub fn is_x_only(&self) -> bool {
        self.terms.values().all(CoeffFn::is_constant_in_xi)
    }

    /// a(x, xi) = sum_lambda a_lambda(xi) e^{2 pi i lambda . x}.
    pub fn evaluate(&self, x: &[f64], xi: &[f64]) -> Result<Complex64> {
        if x.len() != self.gens.dim() || xi.len() != self.gens.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.gens.dim(),
                got: x.len().max(xi.len()),
            });
        }
        let mut acc = Complex64::ZERO;
        for (f, c) in &self.terms {
            let lam = self.gens.embed(f)?;
            let phase: f64 = lam.iter().zip(x).map(|(l, xj)| l * xj).sum();
            acc += c.eval(xi)? * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase);
        }
        Ok(acc)
    }

    /// Exact character action: (a(x,D) f)^_mu = sum_{nu+eta=mu} a_nu(eta) f_eta.
    pub fn apply_to_tp(&self, f: &TPFunction) -> Result<TPFunction> {
        if self.gens != *f.gens() {
            return Err(Error::GeneratorMismatch);
        }
        let mut out: BTreeMap<Frequency, Complex64> = BTreeMap::new();
        for (eta, feta) in f.coeffs() {
            let xi = self.gens.embed(eta)?;
            for (nu, coeff) in &self.terms {
                let val = coeff.eval(&xi)?;
                if val != Complex64::ZERO {
                    *out.entry(nu + eta).or_insert(Complex64::ZERO) += val * feta;
                }
            }
        }
        Ok(TPFunction::new(self.gens.clone(), out))
    }

    /// Formal adjoint: a+_mu(eta) = conj(a_{-mu}(eta + mu)).
    pub fn adjoint(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(lam, coeff)| {
                let mu = -lam;
                let shift = self
                    .gens
                    .embed(&mu)
                    .expect("stored frequency embeds");
                (mu, coeff.shift(&shift).conjugate())
            })
            .collect();
        Self {
            gens: self.gens.clone(),
            terms,
            class: self.class,
        }
    }

    /// Symbol product: (a o0 b)_mu(eta) = sum_{nu+nu'=mu} a_nu(eta + nu') b_nu'(eta).
    /// The order adds; rho and delta take the weaker of the operands.
    pub fn compose(&self, b: &Self) -> Result<Self> {
        if self.gens != b.gens {
            return Err(Error::GeneratorMismatch);
        }
        let mut terms: BTreeMap<Frequency, CoeffFn> = BTreeMap::new();
        for (nu, ca) in &self.terms {
            for (nu2, cb) in &b.terms {
                let shift = self.gens.embed(nu2)?;
                let prod = ca.shift(&shift).mul(cb);
                let mu = nu + nu2;
                let entry = terms
                    .entry(mu)
                    .or_insert_with(|| CoeffFn::zero(self.gens.dim()));
                *entry = entry.add(&prod);
            }
        }
        let class = SymbolClassParams {
            m: self.class.m + b.class.m,
            rho: self.class.rho.min(b.class.rho),
            delta: self.class.delta.max(b.class.delta),
            m0: None,
        };
        Self::new(self.gens.clone(), terms, class)
    }

    /// Termwise sum. The class takes the larger order and the weaker
    /// regularity parameters.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.gens != other.gens {
            return Err(Error::GeneratorMismatch);
        }
        let mut terms = self.terms.clone();
        for (f, c) in &other.terms {
            match terms.entry(f.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().add(c);
                    e.insert(sum);
                }
            }
        }
        let class = SymbolClassParams {
            m: self.class.m.max(other.class.m),
            rho: self.class.rho.min(other.class.rho),
            delta: self.class.delta.max(other.class.delta),
            m0: None,
        };
        Self::new(self.gens.clone(), terms, class)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(f, g)| (f.clone(), g.scale(c)))
            .collect();
        Self {
            gens: self.gens.clone(),
            terms,
            class: self.class,
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-Complex64::ONE))
    }

    /// (a + a+)/2, always selfadjoint.
    pub fn hermitian_part(&self) -> Self {
        self.add(&self.adjoint())
            .expect("same generator set")
            .scale(Complex64::new(0.5, 0.0))
    }

    /// Argument translation a_lambda(.) -> a_lambda(. + xi0).
    pub fn translate(&self, xi0: &[f64]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(f, c)| (f.clone(), c.shift(xi0)))
            .collect();
        Self {
            gens: self.gens.clone(),
            terms,
            class: self.class,
        }
    }

    /// Grid estimate (a lower bound) of the Hormander seminorm
    /// sup <xi>^{-m+rho|alpha|-delta|beta|} |d_xi^alpha d_x^beta a|.
    ///
    /// d_x^beta acts exactly as multiplication of a_lambda by
    /// (2 pi i lambda)^beta; d_xi^alpha is symbolic.
    pub fn seminorm_estimate(
        &self,
        alpha: &[u32],
        beta: &[u32],
        xi_grid: &[Vec<f64>],
        x_grid: &[Vec<f64>],
    ) -> Result<f64> {
        let d = self.gens.dim();
        if alpha.len() != d || beta.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: alpha.len().max(beta.len()),
            });
        }
        let derived = self.derived_terms(alpha, beta)?;
        let mut best: f64 = 0.0;
        let aa: i32 = alpha.iter().sum::<u32>() as i32;
        let bb: i32 = beta.iter().sum::<u32>() as i32;
        let weight_exp = -self.class.m + self.class.rho * aa as f64 - self.class.delta * bb as f64;
        for xi in xi_grid {
            let w = japanese_bracket(xi).powf(weight_exp);
            for x in x_grid {
                let mut acc = Complex64::ZERO;
                for (lam_embed, coeff) in &derived {
                    let phase: f64 = lam_embed.iter().zip(x).map(|(l, xj)| l * xj).sum();
                    acc += coeff.eval(xi)?
                        * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase);
                }
                best = best.max(w * acc.norm());
            }
        }
        Ok(best)
    }

    /// Formal hypoellipticity scan on the grids: a lower-bound constant
    /// for |a| >= C <xi>^{m0} at |xi| >= R and the derivative ratio
    /// constants, with any violating grid points as witnesses.
    pub fn hypoellipticity_check(
        &self,
        r_cut: f64,
        max_order: u32,
        xi_grid: &[Vec<f64>],
        x_grid: &[Vec<f64>],
    ) -> Result<HypoellipticityReport> {
        let m0 = self.class.m0.ok_or_else(|| {
            Error::Hypothesis("hypoellipticity check needs m0 in the class parameters".into())
        })?;
        let mut c_lower = f64::INFINITY;
        let mut witnesses = Vec::new();
        let far: Vec<&Vec<f64>> = xi_grid
            .iter()
            .filter(|xi| xi.iter().map(|v| v * v).sum::<f64>().sqrt() >= r_cut)
            .collect();
        if far.is_empty() {
            return Err(Error::Hypothesis(format!(
                "no grid point satisfies |xi| >= {r_cut}"
            )));
        }
        for xi in &far {
            for x in x_grid {
                let v = self.evaluate(x, xi)?.norm();
                let ratio = v / japanese_bracket(xi).powf(m0);
                if ratio < c_lower {
                    c_lower = ratio;
                }
                if ratio < HYPO_FLOOR {
                    witnesses.push(HypoWitness {
                        x: x.clone(),
                        xi: (*xi).clone(),
                        alpha: vec![0; self.gens.dim()],
                        beta: vec![0; self.gens.dim()],
                        value: ratio,
                    });
                }
            }
        }
        // derivative ratio constants up to total order max_order
        let mut ratio_constants = Vec::new();
        for (alpha, beta) in multi_index_pairs(self.gens.dim(), max_order) {
            if alpha.iter().all(|&k| k == 0) && beta.iter().all(|&k| k == 0) {
                continue;
            }
            let derived = self.derived_terms(&alpha, &beta)?;
            let aa: i32 = alpha.iter().sum::<u32>() as i32;
            let bb: i32 = beta.iter().sum::<u32>() as i32;
            let wexp = self.class.rho * aa as f64 - self.class.delta * bb as f64;
            let mut cbest: f64 = 0.0;
            for xi in &far {
                let w = japanese_bracket(xi).powf(wexp);
                for x in x_grid {
                    let denom = self.evaluate(x, xi)?.norm();
                    let mut acc = Complex64::ZERO;
                    for (lam_embed, coeff) in &derived {
                        let phase: f64 = lam_embed.iter().zip(x.iter()).map(|(l, xj)| l * xj).sum();
                        acc += coeff.eval(xi)?
                            * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase);
                    }
                    if denom < HYPO_FLOOR * japanese_bracket(xi).powf(m0) {
                        witnesses.push(HypoWitness {
                            x: x.clone(),
                            xi: (*xi).clone(),
                            alpha: alpha.clone(),
                            beta: beta.clone(),
                            value: denom,
                        });
                        continue;
                    }
                    cbest = cbest.max(w * acc.norm() / denom);
                }
            }
            ratio_constants.push(((alpha, beta), cbest));
        }
        let ok = witnesses.is_empty() && c_lower > HYPO_FLOOR;
        Ok(HypoellipticityReport {
            ok,
            c: if c_lower.is_finite() { c_lower } else { 0.0 },
            ratio_constants,
            witnesses,
        })
    }

    /// Terms of d_xi^alpha d_x^beta a as (embedded frequency, coefficient).
    fn derived_terms(&self, alpha: &[u32], beta: &[u32]) -> Result<Vec<(Vec<f64>, CoeffFn)>> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (f, c) in &self.terms {
            let lam = self.gens.embed(f)?;
            let mut factor = Complex64::ONE;
            for (j, &bj) in beta.iter().enumerate() {
                let two_pi_i_lam = Complex64::new(0.0, 2.0 * std::f64::consts::PI * lam[j]);
                factor *= two_pi_i_lam.powu(bj);
            }
            let dc = c.derivative_multi(alpha)?.scale(factor);
            out.push((lam, dc));
        }
        Ok(out)
    }
}

const HYPO_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct HypoWitness {
    pub x: Vec<f64>,
    pub xi: Vec<f64>,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub value: f64,
}

#[derive(Debug, Clone)]
pub struct HypoellipticityReport {
    pub ok: bool,
    /// Best lower-bound constant found for |a| >= C <xi>^{m0}.
    pub c: f64,
    pub ratio_constants: Vec<((Vec<u32>, Vec<u32>), f64)>,
    pub witnesses: Vec<HypoWitness>,
}

/// All pairs of multi-indices (alpha, beta) with |alpha| + |beta| <= max_order.
fn multi_index_pairs(d: usize, max_order: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    let singles = multi_indices(d, max_order);
    let mut out = Vec::new();
    for a in &singles {
        let ta: u32 = a.iter().sum();
        for b in &singles {
            let tb: u32 = b.iter().sum();
            if ta + tb <= max_order {
                out.push((a.clone(), b.clone()));
            }
        }
    }
    out
}

fn multi_indices(d: usize, max_total: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; d]];
    let mut frontier = out.clone();
    for _ in 0..max_total {
        let mut next = Vec::new();
        for m in &frontier {
            for j in 0..d {
                let mut n = m.clone();
                n[j] += 1;
                if !out.contains(&n) {
                    out.push(n.clone());
                    next.push(n);
                }
            }
        }
        frontier = next;
    }
    out.retain(|m| m.iter().sum::<u32>() <= max_total);
    out
}

/// Uniform grid of scalar points a, a+step, ..., capped at b, as 1-vectors.
pub fn grid_1d(a: f64, b: f64, step: f64) -> Vec<Vec<f64>> {
    assert!(step > 0.0);
    let mut out = Vec::new();
    let mut x = a;
    while x <= b + 1e-12 {
        out.push(vec![x]);
        x += step;
    }
    out
}
