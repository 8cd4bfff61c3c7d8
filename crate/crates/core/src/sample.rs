//! Seeded symbol families shared by the verification suites.
//!
//! Coefficients are drawn from a bounded vocabulary (Japanese-bracket
//! powers, cosines, rational and Gaussian envelopes) so every sampled
//! symbol sits in order m <= 0 and the kernel machinery stays bounded.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use crate::expr::CoeffFn;
use crate::freq::{Frequency, GeneratorSet};
use crate::symbol::{APSymbol, SymbolClassParams};

/// Default generator set of the verification suites: {1, sqrt 2} on the line.
pub fn default_gens() -> Arc<GeneratorSet> {
    GeneratorSet::line(&[1.0, std::f64::consts::SQRT_2]).expect("valid generators")
}

const COEFF_VOCABULARY: [&str; 6] = [
    "jbracket(xi)^(-1)",
    "jbracket(xi)^(-2)",
    "cos(2*pi*xi)",
    "1/(2+xi^2)",
    "exp(0 - (xi/3)^2)",
    "exp(i*xi) * jbracket(xi)^(-1)",
];

/// Random trig-poly symbol over the given generators: one to three
/// frequencies with |integer coordinates| <= 1, coefficients from the
/// vocabulary with random complex amplitude. Order 0, rho = 1, delta = 0.
pub fn random_symbol<R: Rng>(gens: &Arc<GeneratorSet>, rng: &mut R) -> APSymbol {
    let r = gens.count();
    let dim = gens.dim();
    let mut terms: BTreeMap<Frequency, CoeffFn> = BTreeMap::new();
    let nterms = rng.random_range(1..=3usize);
    for _ in 0..nterms {
        let coords: Vec<i64> = (0..r).map(|_| rng.random_range(-1..=1i64)).collect();
        let freq = Frequency::from_ints(&coords);
        let text = COEFF_VOCABULARY[rng.random_range(0..COEFF_VOCABULARY.len())];
        let amp = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let coeff = CoeffFn::parse(text, dim)
            .expect("vocabulary parses")
            .scale(amp);
        match terms.entry(freq) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                e.insert(sum);
            }
        }
    }
    APSymbol::new(gens.clone(), terms, SymbolClassParams::order(0.0)).expect("valid symbol")
}

/// cos(2 pi x) g(xi) as a two-term symbol.
pub fn cosine_symbol(gens: &Arc<GeneratorSet>, g_text: &str, m: f64) -> APSymbol {
    let r = gens.count();
    let coeff = CoeffFn::parse(g_text, gens.dim())
        .expect("coefficient parses")
        .scale(Complex64::new(0.5, 0.0));
    let mut one = vec![0i64; r];
    one[0] = 1;
    let mut neg = vec![0i64; r];
    neg[0] = -1;
    let mut terms = BTreeMap::new();
    terms.insert(Frequency::from_ints(&one), coeff.clone());
    terms.insert(Frequency::from_ints(&neg), coeff);
    APSymbol::new(gens.clone(), terms, SymbolClassParams::order(m)).expect("valid symbol")
}

pub fn multiplier_symbol(gens: &Arc<GeneratorSet>, g_text: &str, m: f64) -> APSymbol {
    APSymbol::multiplier(
        gens.clone(),
        CoeffFn::parse(g_text, gens.dim()).expect("coefficient parses"),
        SymbolClassParams::order(m),
    )
    .expect("valid symbol")
}

/// The nonpositive-order symbols tracked by the isometry regression:
/// the multiplier <xi>^-1 and cos(2 pi x) <xi>^-2.
pub fn isometry_regression_symbols(gens: &Arc<GeneratorSet>) -> Vec<APSymbol> {
    vec![
        multiplier_symbol(gens, "jbracket(xi)^(-1)", -1.0),
        cosine_symbol(gens, "jbracket(xi)^(-2)", -2.0),
    ]
}

/// Hermitian order-zero symbols tracked by the spectral invariance
/// regression. Their coefficients oscillate with period one, so the
/// spectral range is already explored at small xi and both the kernel
/// windows and the low Hermite modes see the same spectrum.
pub fn invariance_regression_symbols(gens: &Arc<GeneratorSet>) -> Vec<APSymbol> {
    let base = multiplier_symbol(gens, "0.6 + 0.12*cos(2*pi*xi)", 0.0);
    let coupled = base
        .add(&cosine_symbol(gens, "0.12", 0.0))
        .expect("same generators");
    vec![base, coupled]
}
