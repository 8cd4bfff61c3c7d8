//! Exact arithmetic for frequencies in a finitely generated Q-module.
//!
//! A frequency is a vector of rationals over a user-declared set of
//! generators in R^d. Keeping the coordinates exact makes frequency
//! matching in kernel assembly sound; the generators carry all the
//! irrational content and are only used when a frequency is embedded
//! into R^d as a double-precision vector.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// Default cap on enumerated window sizes.
pub const WINDOW_CAP_DEFAULT: usize = 200_000;

/// Budget for the Q-independence probe scan.
const PROBE_BUDGET: u128 = 4_000_000;

/// Declared generators of the frequency module.
///
/// The user asserts that the generators are linearly independent over Q;
/// `check_independence` scans small integer relations as a sanity probe.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    dim: usize,
    generators: Vec<Vec<f64>>,
}

impl GeneratorSet {
    pub fn new(dim: usize, generators: Vec<Vec<f64>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::ClassParams("generator set must be nonempty".into()));
        }
        for g in &generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: g.len(),
                });
            }
        }
        Ok(Self { dim, generators })
    }

    /// One-dimensional generator set from scalar values.
    pub fn line(values: &[f64]) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::new(1, values.iter().map(|&v| vec![v]).collect())?))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators r.
    pub fn count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, i: usize) -> &[f64] {
        &self.generators[i]
    }

    /// Scan integer relations sum c_i g_i with |c_i| <= denom_bound.
    ///
    /// A probe, not a proof: a relation whose embedded norm falls below
    /// `tol` times the coefficient mass is reported as a hard error.
    pub fn check_independence(&self, denom_bound: i64, tol: f64) -> Result<()> {
        let r = self.count() as u32;
        let span = 2 * denom_bound as u128 + 1;
        let combos = span.pow(r);
        if combos > PROBE_BUDGET {
            return Err(Error::ProbeBudget {
                combinations: combos,
                budget: PROBE_BUDGET,
            });
        }
        let gen_scale: f64 = self
            .generators
            .iter()
            .flat_map(|g| g.iter().map(|v| v.abs()))
            .fold(0.0, f64::max)
            .max(1.0);
        let mut coeffs = vec![-denom_bound; self.count()];
        loop {
            if coeffs.iter().any(|&c| c != 0) {
                let mut v = vec![0.0; self.dim];
                for (c, g) in coeffs.iter().zip(&self.generators) {
                    for (vi, gi) in v.iter_mut().zip(g) {
                        *vi += *c as f64 * gi;
                    }
                }
                let norm = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
                let mass: f64 = coeffs.iter().map(|c| c.abs() as f64).sum();
                if norm <= tol * mass * gen_scale {
                    return Err(Error::RationalRelation {
                        relation: coeffs.clone(),
                        norm,
                    });
                }
            }
            // odometer increment
            let mut k = 0;
            loop {
                if k == coeffs.len() {
                    return Ok(());
                }
                coeffs[k] += 1;
                if coeffs[k] <= denom_bound {
                    break;
                }
                coeffs[k] = -denom_bound;
                k += 1;
            }
        }
    }

    /// Embed a frequency as sum_i coeffs_i * generators_i in R^d.
    pub fn embed(&self, f: &Frequency) -> Result<Vec<f64>> {
        if f.coeffs.len() != self.count() {
            return Err(Error::DimensionMismatch {
                expected: self.count(),
                got: f.coeffs.len(),
            });
        }
        let mut v = vec![0.0; self.dim];
        for (c, g) in f.coeffs.iter().zip(&self.generators) {
            let cf = rational_to_f64(*c);
            if cf != 0.0 {
                for (vi, gi) in v.iter_mut().zip(g) {
                    *vi += cf * gi;
                }
            }
        }
        Ok(v)
    }
}

pub fn rational_to_f64(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// A point of the frequency module: exact rational coordinates over the
/// generators, lexicographically ordered for deterministic layouts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Frequency {
    coeffs: Vec<Rational>,
}

impl Frequency {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Self { coeffs }
    }

    pub fn zero(r: usize) -> Self {
        Self {
            coeffs: vec![Rational::zero(); r],
        }
    }

    /// Frequency from integer coordinates.
    pub fn from_ints(c: &[i64]) -> Self {
        Self {
            coeffs: c.iter().map(|&n| Rational::from_integer(n)).collect(),
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

impl fmt::Display for Frequency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Frequency {
    type Output = Frequency;
    fn add(self, rhs: &Frequency) -> Frequency {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "frequency rank mismatch");
        Frequency {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Frequency {
    type Output = Frequency;
    fn sub(self, rhs: &Frequency) -> Frequency {
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "frequency rank mismatch");
        Frequency {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Frequency {
    type Output = Frequency;
    fn neg(self) -> Frequency {
        Frequency {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

/// Finite, sorted, duplicate-free index set of frequencies.
#[derive(Debug, Clone)]
pub struct FrequencyWindow {
    gens: Arc<GeneratorSet>,
    elements: Vec<Frequency>,
}

impl FrequencyWindow {
    pub fn from_frequencies(gens: Arc<GeneratorSet>, freqs: Vec<Frequency>) -> Self {
        let set: BTreeSet<Frequency> = freqs.into_iter().collect();
        Self {
            gens,
            elements: set.into_iter().collect(),
        }
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Frequency] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Frequency> {
        self.elements.iter()
    }

    pub fn contains(&self, f: &Frequency) -> bool {
        self.elements.binary_search(f).is_ok()
    }

    pub fn position(&self, f: &Frequency) -> Option<usize> {
        self.elements.binary_search(f).ok()
    }

    /// Union with self translated by every given frequency. This is the
    /// band padding used so that finite sections compose exactly.
    pub fn pad(&self, band: &[Frequency], cap: usize) -> Result<Self> {
        let mut set: BTreeSet<Frequency> = self.elements.iter().cloned().collect();
        for b in band {
            for e in &self.elements {
                set.insert(e + b);
                if set.len() > cap {
                    return Err(Error::WindowCapExceeded {
                        requested: set.len() as u128,
                        cap,
                    });
                }
            }
        }
        Ok(Self {
            gens: self.gens.clone(),
            elements: set.into_iter().collect(),
        })
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut set: BTreeSet<Frequency> = self.elements.iter().cloned().collect();
        set.extend(other.elements.iter().cloned());
        Self {
            gens: self.gens.clone(),
            elements: set.into_iter().collect(),
        }
    }
}

/// Enumerate every frequency whose coordinates q satisfy |q| <= coeff_bound
/// and denom(q) | denom_bound, sorted canonically. Contains zero.
pub fn window_enumerate(
    gens: &Arc<GeneratorSet>,
    coeff_bound: Rational,
    denom_bound: i64,
    cap: usize,
) -> Result<FrequencyWindow> {
    assert!(coeff_bound > Rational::zero(), "coeff_bound must be positive");
    assert!(denom_bound >= 1, "denom_bound must be a positive integer");
    let r = gens.count();
    // per-coordinate candidates k/denom_bound with |k| <= coeff_bound * denom_bound
    let kmax_rat = coeff_bound * Rational::from_integer(denom_bound);
    let kmax = kmax_rat.floor().to_integer();
    let per_axis: Vec<Rational> = (-kmax..=kmax)
        .map(|k| Rational::new(k, denom_bound))
        .collect();
    let total = (per_axis.len() as u128).pow(r as u32);
    if total > cap as u128 {
        return Err(Error::WindowCapExceeded {
            requested: total,
            cap,
        });
    }
    let mut elements = Vec::with_capacity(total as usize);
    let mut idx = vec![0usize; r];
    loop {
        elements.push(Frequency::new(idx.iter().map(|&i| per_axis[i]).collect()));
        let mut k = 0;
        loop {
            if k == r {
                elements.sort();
                return Ok(FrequencyWindow {
                    gens: gens.clone(),
                    elements,
                });
            }
            idx[k] += 1;
            if idx[k] < per_axis.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// All sums of at most `depth` elements of freqs and their negatives,
/// always including the empty sum zero.
pub fn module_closure(
    gens: &Arc<GeneratorSet>,
    freqs: &[Frequency],
    depth: usize,
    cap: usize,
) -> Result<FrequencyWindow> {
    let r = gens.count();
    for f in freqs {
        if f.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                got: f.len(),
            });
        }
    }
    let mut steps: Vec<Frequency> = freqs.to_vec();
    steps.extend(freqs.iter().map(|f| -f));
    let mut set: BTreeSet<Frequency> = BTreeSet::new();
    set.insert(Frequency::zero(r));
    for _ in 0..depth {
        let snapshot: Vec<Frequency> = set.iter().cloned().collect();
        for s in &snapshot {
            for f in &steps {
                set.insert(s + f);
                if set.len() > cap {
                    return Err(Error::WindowCapExceeded {
                        requested: set.len() as u128,
                        cap,
                    });
                }
            }
        }
    }
    Ok(FrequencyWindow {
        gens: gens.clone(),
        elements: set.into_iter().collect(),
    })
}

/// Z-basis of the integer lattice spanned by the given frequencies,
/// as echelon rows over a common denominator.
///
/// Used by the product Fejer kernel: every input frequency decomposes
/// with integer coordinates in this basis.
#[derive(Debug, Clone)]
pub struct LatticeBasis {
    denom: i64,
    rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    rank_r: usize,
}

impl LatticeBasis {
    pub fn from_frequencies(freqs: &[Frequency]) -> Self {
        let r = freqs.first().map_or(0, Frequency::len);
        let mut denom: i64 = 1;
        for f in freqs {
            for c in f.coeffs() {
                denom = lcm(denom, *c.denom());
            }
        }
        let ints: Vec<Vec<i64>> = freqs
            .iter()
            .map(|f| {
                f.coeffs()
                    .iter()
                    .map(|c| c.numer() * (denom / c.denom()))
                    .collect()
            })
            .collect();
        let (rows, pivots) = echelon_basis(ints, r);
        Self {
            denom,
            rows,
            pivots,
            rank_r: r,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Basis vectors as frequencies.
    pub fn vectors(&self) -> Vec<Frequency> {
        self.rows
            .iter()
            .map(|row| Frequency::new(row.iter().map(|&n| Rational::new(n, self.denom)).collect()))
            .collect()
    }

    /// Integer coordinates of `f` in the basis, or None if f is outside
    /// the lattice.
    pub fn decompose(&self, f: &Frequency) -> Option<Vec<i64>> {
        if f.len() != self.rank_r {
            return None;
        }
        // bring f over the basis denominator; fail if it does not divide
        let mut target: Vec<i64> = Vec::with_capacity(self.rank_r);
        for c in f.coeffs() {
            if self.denom % c.denom() != 0 {
                return None;
            }
            target.push(c.numer() * (self.denom / c.denom()));
        }
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let q = target[p];
            if q % row[p] != 0 {
                return None;
            }
            let m = q / row[p];
            for (t, v) in target.iter_mut().zip(row) {
                *t -= m * v;
            }
            coords.push(m);
        }
        if target.iter().all(|&t| t == 0) {
            Some(coords)
        } else {
            None
        }
    }
}

fn lcm(a: i64, b: i64) -> i64 {
    num_integer_lcm(a.abs(), b.abs())
}

fn num_integer_lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return a.max(b).max(1);
    }
    a / gcd(a, b) * b
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a.abs()
}

/// Integer row echelon form via Euclidean column sweeps. Returns the
/// nonzero rows and their pivot columns.
fn echelon_basis(mut rows: Vec<Vec<i64>>, ncols: usize) -> (Vec<Vec<i64>>, Vec<usize>) {
    rows.retain(|r| r.iter().any(|&v| v != 0));
    let mut pivots = Vec::new();
    let mut head = 0usize;
    for col in 0..ncols {
        loop {
            // row with smallest nonzero |entry| in this column at or below head
            let mut best: Option<usize> = None;
            for (i, row) in rows.iter().enumerate().skip(head) {
                if row[col] != 0 && best.is_none_or(|b| row[col].abs() < rows[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            rows.swap(head, b);
            let mut reduced_all = true;
            for i in head + 1..rows.len() {
                if rows[i][col] != 0 {
                    let q = rows[i][col].div_euclid(rows[head][col]);
                    for c in 0..ncols {
                        rows[i][c] -= q * rows[head][c];
                    }
                    if rows[i][col] != 0 {
                        reduced_all = false;
                    }
                }
            }
            if reduced_all {
                if rows[head][col] < 0 {
                    for c in 0..ncols {
                        rows[head][c] = -rows[head][c];
                    }
                }
                pivots.push(col);
                head += 1;
                break;
            }
        }
        if head == rows.len() {
            break;
        }
    }
    rows.truncate(head);
    (rows, pivots)
}
