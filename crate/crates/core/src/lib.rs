//! Calculus of almost-periodic pseudodifferential operators with
//! trigonometric-polynomial symbols: exact symbol algebra, the kernel
//! and tensor representations, and a desk-scale spectral toolkit.

pub mod cms;
pub mod error;
pub mod export;
pub mod expr;
pub mod freq;
pub mod gladyshev;
pub mod grid;
pub mod linalg;
pub mod sample;
pub mod spectral;
pub mod symbol;
pub mod tp;

pub use error::{Error, Result};
pub use expr::CoeffFn;
pub use freq::{Frequency, FrequencyWindow, GeneratorSet, Rational};
pub use symbol::{APSymbol, SymbolClassParams};
pub use tp::TPFunction;
