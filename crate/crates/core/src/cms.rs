//! The tensor representation on B^2 (x) L^2: elements are finite sums
//! u(x, y) = sum_mu e_mu(x) f_mu(y) with grid-discretized factors, the
//! action (A u)(x, y) = (a_x(y, D) u(x, .))(y) expanded exactly over the
//! symbol's frequencies, and the unitary map Q onto vector fields.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::freq::{Frequency, GeneratorSet};
use crate::gladyshev::{apply_uad, VectorField, COMPONENT_CAP_DEFAULT};
use crate::grid::{GridFn, GridSpec, HermiteBasis};
use crate::symbol::APSymbol;

#[derive(Debug, Clone)]
pub struct TensorTP {
    gens: Arc<GeneratorSet>,
    spec: GridSpec,
    terms: BTreeMap<Frequency, GridFn>,
}

impl TensorTP {
    pub fn new(gens: Arc<GeneratorSet>, spec: GridSpec) -> Self {
        Self {
            gens,
            spec,
            terms: BTreeMap::new(),
        }
    }

    /// The simple tensor e_freq (x) f.
    pub fn simple(gens: Arc<GeneratorSet>, freq: Frequency, f: GridFn) -> Self {
        let spec = f.spec();
        let mut terms = BTreeMap::new();
        terms.insert(freq, f);
        Self { gens, spec, terms }
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn terms(&self) -> &BTreeMap<Frequency, GridFn> {
        &self.terms
    }

    pub fn insert(&mut self, freq: Frequency, f: GridFn) -> Result<()> {
        if f.spec() != self.spec {
            return Err(Error::GridMismatch("tensor factor grid differs".into()));
        }
        match self.terms.entry(freq) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign(&f)?;
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (f, g) in &other.terms {
            out.insert(f.clone(), g.clone())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(f, g)| (f.clone(), g.scale(c)))
            .collect();
        Self {
            gens: self.gens.clone(),
            spec: self.spec,
            terms,
        }
    }

    /// ||u||^2 = sum_mu ||f_mu||^2 by character orthonormality in x.
    pub fn norm(&self) -> f64 {
        self.terms
            .values()
            .map(|f| {
                let n = f.l2_norm();
                n * n
            })
            .sum::<f64>()
            .sqrt()
    }
}

/// (u, v) = sum_mu (f_mu, g_mu)_{L^2}; the mean in x collapses.
pub fn tensor_inner(u: &TensorTP, v: &TensorTP) -> Result<Complex64> {
    if u.gens != v.gens {
        return Err(Error::GeneratorMismatch);
    }
    if u.spec != v.spec {
        return Err(Error::GridMismatch("tensor grids differ".into()));
    }
    let mut acc = Complex64::ZERO;
    for (f, a) in &u.terms {
        if let Some(b) = v.terms.get(f) {
            acc += a.inner(b)?;
        }
    }
    Ok(acc)
}

/// A(a)(e_mu (x) f) = sum_lambda e_{mu+lambda} (x) [e_lambda(y) (a_lambda(D) f)(y)],
/// extended linearly over the terms.
pub fn apply_a(a: &APSymbol, u: &TensorTP) -> Result<TensorTP> {
    if a.gens() != &u.gens {
        return Err(Error::GeneratorMismatch);
    }
    let mut out = TensorTP::new(u.gens.clone(), u.spec);
    for (mu, f) in &u.terms {
        for (lam, coeff) in a.terms() {
            let mult = f.apply_multiplier(|xi| coeff.eval(xi))?;
            let lam_embed = a.gens().embed(lam)?;
            let modulated = mult.modulate(|y| {
                let phase: f64 = lam_embed.iter().zip(y).map(|(l, yj)| l * yj).sum();
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * phase)
            });
            out.insert(mu + lam, modulated)?;
        }
    }
    Ok(out)
}

/// Q(e_mu (x) f) = f(x) e_{-mu}(x) at component -mu, extended linearly.
pub fn q_map(u: &TensorTP) -> Result<VectorField> {
    let mut out = VectorField::new(u.spec);
    for (mu, f) in &u.terms {
        let mu_embed = u.gens.embed(mu)?;
        let modulated = f.modulate(|x| {
            let phase: f64 = mu_embed.iter().zip(x).map(|(l, xj)| l * xj).sum();
            Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * phase)
        });
        out.insert(-mu, modulated)?;
    }
    Ok(out)
}

/// || Q A(a) u - U(a)(D) Q u || for u = e_mu (x) phi_n: the discrete
/// residual of the unitary equivalence, defined for m <= 0.
pub fn equivalence_residual(
    a: &APSymbol,
    mu: &Frequency,
    n: usize,
    basis: &HermiteBasis,
) -> Result<f64> {
    if a.class().m > 0.0 {
        return Err(Error::OrderPositive { m: a.class().m });
    }
    let u = TensorTP::simple(a.gens().clone(), mu.clone(), basis.function(n).clone());
    let lhs = q_map(&apply_a(a, &u)?)?;
    let rhs = apply_uad(a, &q_map(&u)?, COMPONENT_CAP_DEFAULT)?;
    Ok(lhs.sub(&rhs)?.norm())
}

/// Max pairing defect |(A u, v) - (u, A(a+) v)| over seeded random
/// tensors drawn from the basis and the frequency pool.
pub fn adjoint_residual_a<R: Rng>(
    a: &APSymbol,
    basis: &HermiteBasis,
    freq_pool: &[Frequency],
    trials: usize,
    rng: &mut R,
) -> Result<f64> {
    let ad = a.adjoint();
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let u = random_tensor(a.gens(), basis, freq_pool, rng)?;
        let v = random_tensor(a.gens(), basis, freq_pool, rng)?;
        let lhs = tensor_inner(&apply_a(a, &u)?, &v)?;
        let rhs = tensor_inner(&u, &apply_a(&ad, &v)?)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// Random tensor with two or three terms: smooth decaying factors built
/// from the Hermite basis keep discretization error near roundoff.
pub fn random_tensor<R: Rng>(
    gens: &Arc<GeneratorSet>,
    basis: &HermiteBasis,
    freq_pool: &[Frequency],
    rng: &mut R,
) -> Result<TensorTP> {
    let mut u = TensorTP::new(gens.clone(), basis.spec());
    let nterms = rng.random_range(2..=3usize);
    for _ in 0..nterms {
        let freq = freq_pool[rng.random_range(0..freq_pool.len())].clone();
        let mut f = GridFn::zeros(basis.spec());
        for _ in 0..2 {
            let mode = rng.random_range(0..basis.count());
            let c = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            f.add_assign(&basis.function(mode).scale(c))?;
        }
        u.insert(freq, f)?;
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::CoeffFn;
    use crate::freq::Rational;
    use crate::gladyshev::{build_kernel, weighted_norm, window_weights};
    use crate::grid::HERMITE_WIDTH_DEFAULT;
    use crate::symbol::SymbolClassParams;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeMap as Map;

    fn gens1() -> Arc<GeneratorSet> {
        GeneratorSet::line(&[1.0]).unwrap()
    }

    fn spec() -> GridSpec {
        GridSpec::d1(16.0, 256)
    }

    fn basis() -> HermiteBasis {
        HermiteBasis::new(12, spec(), HERMITE_WIDTH_DEFAULT)
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
    fn identity_action_is_identity() {
        let a = APSymbol::identity(gens1());
        let b = basis();
        let u = TensorTP::simple(gens1(), Frequency::from_ints(&[1]), b.function(2).clone());
        let au = apply_a(&a, &u).unwrap();
        let d = tensor_inner(&au, &u).unwrap();
        assert!((d - Complex64::ONE).norm() < 1e-10);
        assert!((au.norm() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn multiplier_action_leaves_frequencies() {
        let a = APSymbol::multiplier(
            gens1(),
            CoeffFn::parse("jbracket(xi)^(-1)", 1).unwrap(),
            SymbolClassParams::order(-1.0),
        )
        .unwrap();
        let b = basis();
        let mu = Frequency::from_ints(&[2]);
        let u = TensorTP::simple(gens1(), mu.clone(), b.function(0).clone());
        let au = apply_a(&a, &u).unwrap();
        assert_eq!(au.terms().keys().collect::<Vec<_>>(), vec![&mu]);
        // oracle: g(D) phi_0 as a plain grid multiplier
        let want = b
            .function(0)
            .apply_multiplier(|xi| Ok(Complex64::new((1.0 + xi[0] * xi[0]).powf(-0.5), 0.0)))
            .unwrap();
        let diff = au.terms()[&mu].sub(&want).unwrap().l2_norm();
        assert!(diff < 1e-12);
    }

    #[test]
    fn pure_character_shifts_and_modulates() {
        // a = e_1(x): e_mu (x) f -> e_{mu+1}(x) (x) e_1(y) f(y)
        let a = APSymbol::modulated(
            gens1(),
            Frequency::from_ints(&[1]),
            CoeffFn::one(1),
            SymbolClassParams::order(0.0),
        )
        .unwrap();
        let b = basis();
        let mu = Frequency::from_ints(&[0]);
        let u = TensorTP::simple(gens1(), mu, b.function(1).clone());
        let au = apply_a(&a, &u).unwrap();
        let shifted = Frequency::from_ints(&[1]);
        assert_eq!(au.terms().keys().collect::<Vec<_>>(), vec![&shifted]);
        let want = b.function(1).modulate(|y| {
            Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * y[0])
        });
        let diff = au.terms()[&shifted].sub(&want).unwrap().l2_norm();
        assert!(diff < 1e-12);
    }

    #[test]
    fn q_map_of_basis_tensor() {
        let b = basis();
        let lam = Frequency::from_ints(&[2]);
        let u = TensorTP::simple(gens1(), lam.clone(), b.function(3).clone());
        let field = q_map(&u).unwrap();
        assert_eq!(field.support(), vec![-&lam]);
        let comp = &field.components()[&-&lam];
        let want = b.function(3).modulate(|x| {
            Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * 2.0 * x[0])
        });
        assert!(comp.sub(&want).unwrap().l2_norm() < 1e-12);
        // zero tensor maps to the zero field
        let z = TensorTP::new(gens1(), spec());
        assert_eq!(q_map(&z).unwrap().norm(), 0.0);
    }

    #[test]
    fn q_preserves_norms_and_inner_products() {
        let b = basis();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pool: Vec<Frequency> = (-2..=2).map(|k| Frequency::from_ints(&[k])).collect();
        for _ in 0..5 {
            let u = random_tensor(&gens1(), &b, &pool, &mut rng).unwrap();
            let v = random_tensor(&gens1(), &b, &pool, &mut rng).unwrap();
            let qu = q_map(&u).unwrap();
            let qv = q_map(&v).unwrap();
            assert!((u.norm() - qu.norm()).abs() < 1e-10);
            let ti = tensor_inner(&u, &v).unwrap();
            let qi = qu.inner(&qv).unwrap();
            assert!((ti - qi).norm() < 1e-10);
        }
    }

    #[test]
    fn tensor_inner_orthonormal_modes() {
        let b = basis();
        let lam = Frequency::from_ints(&[1]);
        for m in 0..3 {
            for n in 0..3 {
                let u = TensorTP::simple(gens1(), lam.clone(), b.function(m).clone());
                let v = TensorTP::simple(gens1(), lam.clone(), b.function(n).clone());
                let want = if m == n { 1.0 } else { 0.0 };
                let got = tensor_inner(&u, &v).unwrap();
                assert!((got - Complex64::new(want, 0.0)).norm() < 1e-8);
            }
        }
        // disjoint frequencies are exactly orthogonal
        let u = TensorTP::simple(gens1(), Frequency::from_ints(&[0]), b.function(0).clone());
        let v = TensorTP::simple(gens1(), Frequency::from_ints(&[1]), b.function(0).clone());
        assert_eq!(tensor_inner(&u, &v).unwrap(), Complex64::ZERO);
    }

    #[test]
    fn equivalence_residual_identity_is_zero() {
        let a = APSymbol::identity(gens1());
        let b = basis();
        let r = equivalence_residual(&a, &Frequency::from_ints(&[0]), 0, &b).unwrap();
        assert!(r < 1e-13, "r={r}");
    }

    #[test]
    fn equivalence_residual_multiplier() {
        let a = APSymbol::multiplier(
            gens1(),
            CoeffFn::parse("jbracket(xi)^(-1)", 1).unwrap(),
            SymbolClassParams::order(-1.0),
        )
        .unwrap();
        let b = basis();
        let r = equivalence_residual(&a, &Frequency::from_ints(&[0]), 0, &b).unwrap();
        assert!(r <= 1e-6, "r={r}");
    }

    #[test]
    fn equivalence_residual_cos_symbol() {
        let a = cos_symbol("jbracket(xi)^(-2)", -2.0);
        let b = basis();
        for n in 0..3 {
            let r = equivalence_residual(&a, &Frequency::from_ints(&[1]), n, &b).unwrap();
            assert!(r <= 1e-6, "n={n} r={r}");
        }
    }

    #[test]
    fn equivalence_rejects_positive_order() {
        let a = APSymbol::multiplier(
            gens1(),
            CoeffFn::parse("jbracket(xi)", 1).unwrap(),
            SymbolClassParams::order(1.0),
        )
        .unwrap();
        let b = basis();
        let err = equivalence_residual(&a, &Frequency::from_ints(&[0]), 0, &b).unwrap_err();
        assert!(matches!(err, Error::OrderPositive { .. }));
    }

    #[test]
    fn adjoint_pairing_residuals() {
        let b = basis();
        let pool: Vec<Frequency> = (-1..=1).map(|k| Frequency::from_ints(&[k])).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        // identity: exact
        let one = APSymbol::identity(gens1());
        let r = adjoint_residual_a(&one, &b, &pool, 3, &mut rng).unwrap();
        assert!(r < 1e-12, "identity r={r}");
        // real multiplier: selfadjoint
        let g = APSymbol::multiplier(
            gens1(),
            CoeffFn::parse("jbracket(xi)^(-1)", 1).unwrap(),
            SymbolClassParams::order(-1.0),
        )
        .unwrap();
        let r = adjoint_residual_a(&g, &b, &pool, 5, &mut rng).unwrap();
        assert!(r < 1e-10, "multiplier r={r}");
        // modulated symbol
        let m = APSymbol::modulated(
            gens1(),
            Frequency::from_ints(&[1]),
            CoeffFn::parse("jbracket(xi)^(-1)", 1).unwrap(),
            SymbolClassParams::order(-1.0),
        )
        .unwrap();
        let r = adjoint_residual_a(&m, &b, &pool, 5, &mut rng).unwrap();
        assert!(r <= 1e-8, "modulated r={r}");
    }

    #[test]
    fn composition_on_tensors() {
        let a = cos_symbol("jbracket(xi)^(-1)", -1.0);
        let bb = cos_symbol("1/(2+xi^2)", 0.0);
        let ab = a.compose(&bb).unwrap();
        let b = basis();
        let pool: Vec<Frequency> = (-1..=1).map(|k| Frequency::from_ints(&[k])).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..4 {
            let u = random_tensor(&gens1(), &b, &pool, &mut rng).unwrap();
            let lhs = apply_a(&ab, &u).unwrap();
            let rhs = apply_a(&a, &apply_a(&bb, &u).unwrap()).unwrap();
            let mut keys: Vec<Frequency> = lhs.terms().keys().cloned().collect();
            keys.extend(rhs.terms().keys().cloned());
            keys.dedup();
            let mut worst = 0.0f64;
            for k in keys {
                let zero = GridFn::zeros(u.spec());
                let l = lhs.terms().get(&k).unwrap_or(&zero);
                let r = rhs.terms().get(&k).unwrap_or(&zero);
                worst = worst.max(l.sub(r).unwrap().l2_norm());
            }
            assert!(worst <= 1e-8, "worst={worst}");
        }
    }

    #[test]
    fn positivity_transfer() {
        let bsym = cos_symbol("exp(i*xi)/(2+xi^2)", 0.0);
        let a = bsym.adjoint().compose(&bsym).unwrap();
        let b = basis();
        let pool: Vec<Frequency> = (-1..=1).map(|k| Frequency::from_ints(&[k])).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..5 {
            let u = random_tensor(&gens1(), &b, &pool, &mut rng).unwrap();
            let q = tensor_inner(&apply_a(&a, &u).unwrap(), &u).unwrap();
            let nn = u.norm() * u.norm();
            assert!(q.re >= -1e-8 * nn, "q={q} norm2={nn}");
            assert!(q.im.abs() <= 1e-8 * nn.max(1.0));
        }
    }

    #[test]
    fn bounded_extension_against_finite_section_norm() {
        // ||A(a) u|| <= finite-section ||a(y,D)|| * ||u|| * (1 + 1e-6)
        // for order-zero symbols whose coefficients peak on window points.
        let gens = gens1();
        let b = basis();
        let pool: Vec<Frequency> = (-1..=1).map(|k| Frequency::from_ints(&[k])).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for gtext in ["jbracket(xi)^(-1)", "1/(1+xi^2)", "exp(0-(xi/4)^2)"] {
            let a = cos_symbol(gtext, 0.0);
            let w = crate::freq::window_enumerate(
                &gens,
                Rational::from_integer(16),
                1,
                100_000,
            )
            .unwrap();
            let wpad = w.pad(&a.frequencies(), 100_000).unwrap();
            let k = build_kernel(&a, &[0.0], &wpad).unwrap();
            let fs_norm = weighted_norm(&k, 0.0, 0.0).unwrap();
            // weights are available for the padded window; sanity: all 1 at s=0
            assert!(window_weights(&wpad, 0.0).unwrap().iter().all(|&x| x == 1.0));
            for _ in 0..3 {
                let u = random_tensor(&gens, &b, &pool, &mut rng).unwrap();
                let au = apply_a(&a, &u).unwrap();
                assert!(
                    au.norm() <= fs_norm * u.norm() * (1.0 + 1e-6),
                    "{gtext}: ||Au||={} fs={fs_norm} ||u||={}",
                    au.norm(),
                    u.norm()
                );
            }
        }
    }
}
