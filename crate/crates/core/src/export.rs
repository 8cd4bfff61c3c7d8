//! Deterministic CSV emission for kernel matrices, spectra and tensors.
//! Frequencies print as exact rational coordinate tuples; complex
//! entries print as quoted "re,im" cells.

use std::fmt::Write as _;

use crate::cms::TensorTP;
use crate::gladyshev::{KernelMatrix, VectorField};
use crate::spectral::SpectrumReport;

fn complex_cell(v: num_complex::Complex64) -> String {
    format!("\"{},{}\"", v.re, v.im)
}

pub fn kernel_to_csv(k: &KernelMatrix) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# xi = {:?}", k.xi());
    let header: Vec<String> = std::iter::once("freq".to_string())
        .chain(k.window().iter().map(|f| format!("\"{f}\"")))
        .collect();
    let _ = writeln!(out, "{}", header.join(","));
    for (i, row_f) in k.window().iter().enumerate() {
        let mut cells = vec![format!("\"{row_f}\"")];
        for j in 0..k.dim() {
            cells.push(complex_cell(k.entries()[(i, j)]));
        }
        let _ = writeln!(out, "{}", cells.join(","));
    }
    out
}

pub fn spectrum_to_csv(rep: &SpectrumReport, window: &str) -> String {
    let mut out = String::new();
    for note in &rep.notes {
        let _ = writeln!(out, "# {note}");
    }
    let _ = writeln!(out, "value_re,value_im,kind,window_radius,info");
    for v in &rep.values {
        let _ = writeln!(
            out,
            "{},{},{},{},\"{}\"",
            v.value.re,
            v.value.im,
            v.kind.label(),
            window,
            v.info
        );
    }
    out
}

pub fn tensor_to_csv(u: &TensorTP) -> String {
    let mut out = String::new();
    let spec = u.spec();
    let _ = writeln!(out, "# grid L = {}, N = {}, dim = {}", spec.len, spec.n, spec.dim);
    for (f, g) in u.terms() {
        let _ = writeln!(out, "# frequency {f}");
        let _ = writeln!(out, "re,im");
        for v in g.values() {
            let _ = writeln!(out, "{},{}", v.re, v.im);
        }
    }
    out
}

pub fn vector_field_to_csv(field: &VectorField) -> String {
    let mut out = String::new();
    let spec = field.spec();
    let _ = writeln!(out, "# grid L = {}, N = {}, dim = {}", spec.len, spec.n, spec.dim);
    for (f, g) in field.components() {
        let _ = writeln!(out, "# component {f}");
        let _ = writeln!(out, "re,im");
        for v in g.values() {
            let _ = writeln!(out, "{},{}", v.re, v.im);
        }
    }
    out
}
