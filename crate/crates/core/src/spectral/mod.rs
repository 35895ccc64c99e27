//! Spectra of bipartite Cayley graphs.
//!
//! For a subset `A` of a group of order `n`, the bipartite Cayley graph has
//! an edge from `x` (left copy) to `y` (right copy) whenever `y·x⁻¹ ∈ A`.
//! Its adjacency operator is `f ↦ A * f`. Singular values are obtained from
//! the Gram matrix with entries `#{y : yx⁻¹ ∈ A, yx'⁻¹ ∈ A}`.
//!
//! The graph is `|A|`-regular, so the constant function is a singular vector
//! with value `|A|` and its orthogonal complement (the zero-sum functions) is
//! invariant. The eigensolver therefore runs on the Gram matrix with the
//! constant direction deflated, `Gram − (|A|²/n)·J`, whose spectrum is the
//! zero-sum spectrum plus a single zero for the constant vector.

mod jacobi;

use serde::Serialize;

pub use jacobi::{jacobi_eigen, SymmetricEigen};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::setfun::Subset;

pub const DEFAULT_SPECTRAL_CAP: usize = 1200;
pub const DEFAULT_MAX_SWEEPS: usize = 50;
/// Off-diagonal threshold of the eigensolver, relative to the matrix norm.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;
/// Default clustering tolerance relative to `λ₁`.
pub const DEFAULT_RELATIVE_TOLERANCE: f64 = 1e-6;
pub const TOLERANCE_FLOOR: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub struct SpectralOptions {
    pub cap: usize,
    /// Clustering tolerance τ; `None` means `max(1e-6·|A|, 1e-9)`.
    pub tolerance: Option<f64>,
    pub max_sweeps: usize,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            cap: DEFAULT_SPECTRAL_CAP,
            tolerance: None,
            max_sweeps: DEFAULT_MAX_SWEEPS,
        }
    }
}

/// Integer Gram matrix of the bipartite Cayley graph, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gram {
    pub n: usize,
    pub entries: Vec<u64>,
}

impl Gram {
    pub fn get(&self, x: usize, y: usize) -> u64 {
        self.entries[x * self.n + y]
    }
}

fn check_cap(g: &FiniteGroup, cap: usize) -> Result<()> {
    if g.order() > cap {
        Err(Error::CapExceeded {
            what: "spectral computation: group order",
            size: g.order(),
            cap,
        })
    } else {
        Ok(())
    }
}

fn check_subset(g: &FiniteGroup, a: &Subset) -> Result<()> {
    if a.order() != g.order() {
        Err(Error::OrderMismatch {
            expected: g.order(),
            found: a.order(),
        })
    } else {
        Ok(())
    }
}

/// Gram matrix `(x, x') ↦ #{y : yx⁻¹ ∈ A and yx'⁻¹ ∈ A}`.
///
/// Writing `y = ax`, the entry is `#{a ∈ A : a·xx'⁻¹ ∈ A}`, a function of
/// `xx'⁻¹` alone, which is tabulated once.
pub fn bipartite_cayley_gram(g: &FiniteGroup, a: &Subset) -> Result<Gram> {
    bipartite_cayley_gram_capped(g, a, DEFAULT_SPECTRAL_CAP)
}

pub fn bipartite_cayley_gram_capped(g: &FiniteGroup, a: &Subset, cap: usize) -> Result<Gram> {
    check_cap(g, cap)?;
    check_subset(g, a)?;
    let n = g.order();
    let overlap: Vec<u64> = (0..n)
        .map(|h| a.iter().filter(|&s| a.contains(g.mult(s, h))).count() as u64)
        .collect();
    let mut entries = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            entries.push(overlap[g.mult(x, g.inv(y))]);
        }
    }
    Ok(Gram { n, entries })
}

/// Number of closed walks `x → y → x' → y' → x` of length four starting on
/// the left side, counted through common neighbours of right-side pairs.
///
/// Two right vertices `y, y'` share the left neighbours `x = a⁻¹y` with
/// `a ∈ A ∩ (y'y⁻¹)⁻¹A`, so the count is `n · Σ_h |A ∩ h⁻¹A|²`.
pub fn count_four_cycles(g: &FiniteGroup, a: &Subset) -> Result<u128> {
    check_subset(g, a)?;
    let n = g.order();
    let mut total: u128 = 0;
    for h in 0..n {
        let common = a.iter().filter(|&s| a.contains(g.mult(h, s))).count() as u128;
        total += common * common;
    }
    Ok(total * n as u128)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cluster {
    pub value: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralReport {
    pub group: String,
    pub order: usize,
    pub subset_size: usize,
    /// All `n` singular values, descending.
    pub singular_values: Vec<f64>,
    pub clusters: Vec<Cluster>,
    pub lambda1: f64,
    /// Largest singular value on zero-sum inputs.
    pub lambda2: f64,
    /// Multiplicity of `lambda2` within the zero-sum spectrum.
    pub lambda2_multiplicity: usize,
    pub sum_sq: f64,
    pub sum_4: f64,
    /// Directly counted labelled 4-cycles starting on the left side.
    pub four_cycles: u128,
    pub tolerance: f64,
    pub sweeps: usize,
}

struct Decomposition {
    eigen: SymmetricEigen,
    /// Index (into `eigen.values`) of the deflated constant direction.
    constant_index: usize,
    /// Zero-sum singular values, descending, with their eigen indices.
    nontrivial: Vec<(f64, usize)>,
    tolerance: f64,
}

fn decompose(g: &FiniteGroup, a: &Subset, opts: &SpectralOptions) -> Result<Decomposition> {
    let gram = bipartite_cayley_gram_capped(g, a, opts.cap)?;
    let n = g.order();
    let size = a.len() as f64;
    let shift = size * size / n as f64;
    let matrix: Vec<f64> = gram.entries.iter().map(|&v| v as f64 - shift).collect();
    let eigen = jacobi_eigen(matrix, n, opts.max_sweeps, OFF_DIAGONAL_TOLERANCE)?;
    let constant_index = (0..n)
        .min_by(|&i, &j| eigen.values[i].abs().total_cmp(&eigen.values[j].abs()))
        .expect("group is non-empty");
    let snap = 1e-10 * (size * size).max(1.0);
    let nontrivial = (0..n)
        .filter(|&i| i != constant_index)
        .map(|i| {
            let mu = eigen.values[i];
            let mu = if mu.abs() <= snap { 0.0 } else { mu.max(0.0) };
            (mu.sqrt(), i)
        })
        .collect();
    let tolerance = opts
        .tolerance
        .unwrap_or((DEFAULT_RELATIVE_TOLERANCE * size).max(TOLERANCE_FLOOR));
    if !(tolerance > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "clustering tolerance must be positive, got {tolerance}"
        )));
    }
    Ok(Decomposition {
        eigen,
        constant_index,
        nontrivial,
        tolerance,
    })
}

/// Groups descending values whose consecutive gaps are at most `tol`.
fn cluster(values: &[f64], tol: f64) -> Vec<Cluster> {
    let mut out: Vec<Cluster> = Vec::new();
    let mut prev = f64::NAN;
    for &v in values {
        match out.last_mut() {
            Some(c) if prev - v <= tol => c.multiplicity += 1,
            _ => out.push(Cluster {
                value: v,
                multiplicity: 1,
            }),
        }
        prev = v;
    }
    out
}

pub fn spectral_report(g: &FiniteGroup, a: &Subset, opts: &SpectralOptions) -> Result<SpectralReport> {
    let d = decompose(g, a, opts)?;
    let size = a.len() as f64;
    let mut singular: Vec<f64> = d.nontrivial.iter().map(|&(s, _)| s).collect();
    singular.push(size);
    singular.sort_by(|x, y| y.total_cmp(x));
    let nontrivial: Vec<f64> = d.nontrivial.iter().map(|&(s, _)| s).collect();
    let lambda2 = nontrivial.first().copied().unwrap_or(0.0);
    let lambda2_multiplicity = cluster(&nontrivial, d.tolerance)
        .first()
        .map_or(0, |c| c.multiplicity);
    Ok(SpectralReport {
        group: g.descriptor().to_string(),
        order: g.order(),
        subset_size: a.len(),
        clusters: cluster(&singular, d.tolerance),
        lambda1: singular[0],
        lambda2,
        lambda2_multiplicity,
        sum_sq: singular.iter().map(|s| s * s).sum(),
        sum_4: singular.iter().map(|s| s.powi(4)).sum(),
        four_cycles: count_four_cycles(g, a)?,
        singular_values: singular,
        tolerance: d.tolerance,
        sweeps: d.eigen.sweeps,
    })
}

/// Orthonormal basis of the zero-sum functions attaining `λ₂`, as a
/// `(λ₂, basis)` pair; `None` when `λ₂` is within tolerance of zero.
pub fn top_nontrivial_eigenspace(
    g: &FiniteGroup,
    a: &Subset,
    opts: &SpectralOptions,
) -> Result<Option<(f64, Vec<Vec<f64>>)>> {
    let d = decompose(g, a, opts)?;
    let Some(&(top, _)) = d.nontrivial.first() else {
        return Ok(None);
    };
    if top <= d.tolerance {
        return Ok(None);
    }
    let mut basis = Vec::new();
    let mut prev = top;
    for &(s, i) in &d.nontrivial {
        if prev - s > d.tolerance {
            break;
        }
        debug_assert_ne!(i, d.constant_index);
        basis.push(d.eigen.vector(i).to_vec());
        prev = s;
    }
    Ok(Some((top, basis)))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralGapReport {
    pub group: String,
    pub subset_size: usize,
    pub k: usize,
    pub lambda1: f64,
    pub lambda2: f64,
    /// `sqrt(|A|·n/k)`
    pub bound: f64,
    pub pass: bool,
    pub multiplicity: usize,
    /// `multiplicity ≥ k`, checked only when `λ₂` exceeds the tolerance.
    pub multiplicity_ok: Option<bool>,
}

/// Checks `λ₂ ≤ sqrt(|A|·n/k)` for a group whose nontrivial representations
/// all have dimension at least `k`, together with the multiplicity of the
/// top zero-sum singular value.
pub fn verify_spectral_gap_bound(
    g: &FiniteGroup,
    a: &Subset,
    k: usize,
    opts: &SpectralOptions,
) -> Result<SpectralGapReport> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let rep = spectral_report(g, a, opts)?;
    Ok(gap_report(&rep, k))
}

pub fn gap_report(rep: &SpectralReport, k: usize) -> SpectralGapReport {
    let bound = (rep.subset_size as f64 * rep.order as f64 / k as f64).sqrt();
    let multiplicity_ok = if rep.lambda2 > rep.tolerance {
        Some(rep.lambda2_multiplicity >= k)
    } else {
        None
    };
    SpectralGapReport {
        group: rep.group.clone(),
        subset_size: rep.subset_size,
        k,
        lambda1: rep.lambda1,
        lambda2: rep.lambda2,
        bound,
        pass: rep.lambda2 <= bound * (1.0 + 1e-9),
        multiplicity: rep.lambda2_multiplicity,
        multiplicity_ok,
    }
}
