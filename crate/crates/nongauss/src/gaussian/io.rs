//! Plain-text import/export of correlation matrices.
//!
//! Format: a header line `N=<modes>`, then the `N` rows of `C`, then the `N`
//! rows of `F`, row-major, entries as `re+imi` tokens at `%.17g` precision
//! (exact f64 round-trip), separated by single spaces.

use super::CorrelationMatrix;
use crate::textfmt::{fmt_complex17, parse_complex};
use crate::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::path::Path;

pub fn write_correlation(gamma: &CorrelationMatrix) -> String {
    let n = gamma.n_modes();
    let mut out = String::new();
    out.push_str(&format!("N={n}\n"));
    for block in [gamma.c(), gamma.f()] {
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| fmt_complex17(block[(i, j)])).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn read_correlation(text: &str) -> Result<CorrelationMatrix> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty correlation-matrix file".into()))?;
    let n: usize = header
        .trim()
        .strip_prefix("N=")
        .ok_or_else(|| Error::Parse(format!("expected header `N=<int>`, got `{header}`")))?
        .parse()
        .map_err(|_| Error::Parse(format!("bad mode count in header `{header}`")))?;
    if n == 0 {
        return Err(Error::Parse("mode count must be positive".into()));
    }
    let mut read_block = |name: &str| -> Result<DMatrix<Complex64>> {
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing row {i} of {name}")))?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != n {
                return Err(Error::Parse(format!(
                    "row {i} of {name} has {} entries, expected {n}",
                    tokens.len()
                )));
            }
            for (j, tok) in tokens.iter().enumerate() {
                m[(i, j)] = parse_complex(tok)?;
            }
        }
        Ok(m)
    };
    let c = read_block("C")?;
    let f = read_block("F")?;
    if lines.next().is_some() {
        return Err(Error::Parse("trailing data after the F block".into()));
    }
    CorrelationMatrix::new(c, f)
}

pub fn write_correlation_file(gamma: &CorrelationMatrix, path: &Path) -> Result<()> {
    std::fs::write(path, write_correlation(gamma))?;
    Ok(())
}

pub fn read_correlation_file(path: &Path) -> Result<CorrelationMatrix> {
    let text = std::fs::read_to_string(path)?;
    read_correlation(&text)
}
