//! Subsets and complex functions on a group, convolution, and the counting
//! quantities built from it.
//!
//! Convolution follows the non-Abelian convention
//! `(f * g)(y) = Σ_{uv = y} f(u) g(v)`. Every routine here is `O(n²)` or
//! better; outputs are computed per target element with a fixed summation
//! order, so parallel evaluation gives bit-identical results.

mod function;
mod subset;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

pub use function::{GroupFunction, GroupFunctionFile, BALANCE_TOLERANCE};
pub use subset::{Subset, SubsetFile};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

fn check_order(g: &FiniteGroup, found: usize) -> Result<()> {
    if g.order() == found {
        Ok(())
    } else {
        Err(Error::OrderMismatch {
            expected: g.order(),
            found,
        })
    }
}

/// `(f * h)(y) = Σ_u f(u) h(u⁻¹y)`
pub fn convolve(g: &FiniteGroup, f: &GroupFunction, h: &GroupFunction) -> Result<GroupFunction> {
    check_order(g, f.order())?;
    check_order(g, h.order())?;
    let (fv, hv) = (f.values(), h.values());
    let support: Vec<usize> = (0..g.order())
        .filter(|&u| fv[u] != Complex64::new(0.0, 0.0))
        .collect();
    let values: Vec<Complex64> = (0..g.order())
        .into_par_iter()
        .map(|y| {
            support
                .iter()
                .map(|&u| fv[u] * hv[g.mult(g.inv(u), y)])
                .sum()
        })
        .collect();
    GroupFunction::new(values)
}

/// Exact convolution of two characteristic functions:
/// `out[y] = #{(a, b) ∈ A × B : ab = y}`.
pub fn convolve_sets(g: &FiniteGroup, a: &Subset, b: &Subset) -> Result<Vec<u64>> {
    check_order(g, a.order())?;
    check_order(g, b.order())?;
    let mut out = vec![0u64; g.order()];
    for x in a.iter() {
        for y in b.iter() {
            out[g.mult(x, y)] += 1;
        }
    }
    Ok(out)
}

/// `#{(a, b, c) ∈ A × B × C : ab = c}`, computed as `⟨A * B, C⟩`.
pub fn count_triples(g: &FiniteGroup, a: &Subset, b: &Subset, c: &Subset) -> Result<u64> {
    check_order(g, c.order())?;
    let conv = convolve_sets(g, a, b)?;
    Ok(c.iter().map(|y| conv[y]).sum())
}

/// `Σ_y |Σ_x f(x) conj(f(yx))|²`.
///
/// Expanding the square gives the sum of `f(a) conj(f(b)) conj(f(c)) f(d)`
/// over all quadruples with `ab⁻¹ = cd⁻¹`, so the result is real and
/// non-negative.
pub fn count_quadruples(g: &FiniteGroup, f: &GroupFunction) -> Result<f64> {
    check_order(g, f.order())?;
    let v = f.values();
    let per_y: Vec<f64> = (0..g.order())
        .into_par_iter()
        .map(|y| {
            let inner: Complex64 = (0..g.order())
                .map(|x| v[x] * v[g.mult(y, x)].conj())
                .sum();
            inner.norm_sqr()
        })
        .collect();
    Ok(per_y.iter().sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuasirandomnessReport {
    /// `count_quadruples(f) / n³`
    pub constant: f64,
    pub balanced: bool,
    pub bounded: bool,
    /// Set when `f` violates the zero-sum or modulus-one preconditions; the
    /// constant is still computed.
    pub warning: bool,
}

/// The smallest `c` for which `f` is `c`-quasirandom.
pub fn quasirandomness_constant(g: &FiniteGroup, f: &GroupFunction) -> Result<QuasirandomnessReport> {
    let n = g.order() as f64;
    let q = count_quadruples(g, f)?;
    let balanced = f.sums_to_zero();
    let bounded = f.max_modulus() <= 1.0 + 1e-12;
    Ok(QuasirandomnessReport {
        constant: q / (n * n * n),
        balanced,
        bounded,
        warning: !(balanced && bounded),
    })
}

/// `|A ∩ xB|`
pub fn translate_intersection(g: &FiniteGroup, a: &Subset, b: &Subset, x: usize) -> Result<usize> {
    check_order(g, a.order())?;
    check_order(g, b.order())?;
    g.check(x)?;
    Ok(b.iter().filter(|&y| a.contains(g.mult(x, y))).count())
}
