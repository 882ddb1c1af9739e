//! The full tensor cochain complex of a Leibniz algebra.

use crate::bimodule::Bimodule;
use crate::error::{Error, Result};

use super::{build_slice, full_labels, tuple_rank, ComplexSlice, LodayTerms};

/// Slices of degree `0..=max_degree` of the Loday complex of `module`'s
/// algebra with coefficients in `module`.
pub fn loday_slices(module: &Bimodule, max_degree: usize) -> Result<Vec<ComplexSlice>> {
    module.algebra.require_leibniz()?;
    if let Some(v) = module.check().first() {
        return Err(Error::BadModule(format!(
            "axiom {:?} fails at triple ({}, {}, {})",
            v.axiom, v.x, v.y, v.m
        )));
    }
    let terms = LodayTerms::new(&module.algebra, module);
    let dim = module.algebra.dim();
    let dim_m = module.dim_m;
    let mut slices = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        let labels = full_labels(dim, dim_m, n);
        let rows = dim.pow(n as u32 + 1) * dim_m;
        let slice = build_slice(&terms, n, labels, rows, |tuple, t| {
            Some(tuple_rank(dim, tuple) * dim_m + t)
        });
        slices.push(slice);
    }
    Ok(slices)
}
