//! Verification harness for the quantitative bounds relating set sizes,
//! the minimal representation degree `k` and product counts.
//!
//! Every check returns a [`BoundReport`] made of clauses. A clause whose
//! hypothesis does not hold for the given inputs is reported as
//! [`ClauseStatus::NotApplicable`] instead of failing, so random sweeps
//! never produce vacuous failures.

use std::time::Instant;

use num_complex::Complex64;
use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::irreps::{self, CharacterTable, DEFAULT_CHARTAB_CAP};
use crate::rng::{self, derive_seed};
use crate::setfun::{convolve_sets, count_triples, quasirandomness_constant, GroupFunction, Subset};
use crate::spectral::{self, DEFAULT_SPECTRAL_CAP};

/// Relative slack allowed on the bound side of every inequality.
pub const RELATIVE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClauseStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, Serialize)]
pub struct Clause {
    pub name: String,
    pub status: ClauseStatus,
    pub predicted: f64,
    pub observed: f64,
}

impl Clause {
    fn new(name: impl Into<String>, applicable: bool, holds: bool, predicted: f64, observed: f64) -> Self {
        let status = match (applicable, holds) {
            (false, _) => ClauseStatus::NotApplicable,
            (true, true) => ClauseStatus::Pass,
            (true, false) => ClauseStatus::Fail,
        };
        Clause { name: name.into(), status, predicted, observed }
    }
}

/// Where the value of `k` came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum KSource {
    /// Minimal nontrivial degree read off the computed character table.
    Computed,
    /// The closed-form lower bound `(q − 1)/2` for PSL₂(q).
    Formula,
    /// Given by the caller.
    Supplied,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundInputs {
    pub group: String,
    pub order: usize,
    pub set_sizes: Vec<usize>,
    pub k: usize,
    pub k_source: KSource,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub t: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub statement: String,
    pub inputs: BoundInputs,
    pub clauses: Vec<Clause>,
    /// No applicable clause failed.
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

impl BoundReport {
    fn finish(statement: &str, inputs: BoundInputs, clauses: Vec<Clause>, start: Instant) -> Self {
        let pass = clauses.iter().all(|c| c.status != ClauseStatus::Fail);
        BoundReport {
            statement: statement.to_string(),
            inputs,
            clauses,
            pass,
            runtime_ms: Some(start.elapsed().as_secs_f64() * 1e3),
        }
    }

    pub fn without_runtime(mut self) -> Self {
        self.runtime_ms = None;
        self
    }
}

/// `(q − 1)/2` for PSL₂(q); `None` for other groups.
pub fn formula_k(g: &FiniteGroup) -> Option<usize> {
    g.psl2_q().map(|q| (q as usize - 1) / 2)
}

/// The `k` used when the caller does not supply one: the closed form for
/// PSL₂(q), otherwise the minimal degree from the character table.
pub fn default_k(g: &FiniteGroup) -> Result<(usize, KSource)> {
    if let Some(k) = formula_k(g) {
        return Ok((k, KSource::Formula));
    }
    if g.order() > DEFAULT_CHARTAB_CAP {
        return Err(Error::CapExceeded {
            what: "group order for computing k",
            size: g.order(),
            cap: DEFAULT_CHARTAB_CAP,
        });
    }
    Ok((irreps::min_nontrivial_irrep_dim(g)?, KSource::Computed))
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidArgument("k must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Triple-count bounds for `T = #{(a, b, c) ∈ A × B × C : ab = c}`:
///
/// * `existence`: if `|A||B||C| > n³/k` then `T ≥ 1`;
/// * `lower-bound`: if `|A||B||C| ≥ n³/(η²k)` then `T ≥ (1 − η)|A||B||C|/n`;
/// * `deviation`: always `|T − |A||B||C|/n| ≤ sqrt(|A||B||C|·n/k)`.
#[allow(clippy::too_many_arguments)]
pub fn verify_triple_bound(
    g: &FiniteGroup,
    a: &Subset,
    b: &Subset,
    c: &Subset,
    k: usize,
    k_source: KSource,
    eta: f64,
) -> Result<BoundReport> {
    check_k(k)?;
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::InvalidArgument(format!("eta must lie in (0, 1], got {eta}")));
    }
    let start = Instant::now();
    let t = count_triples(g, a, b, c)? as f64;
    let n = g.order() as f64;
    let kf = k as f64;
    let prod = a.len() as f64 * b.len() as f64 * c.len() as f64;
    let n3 = n * n * n;

    let existence = Clause::new("existence", prod > n3 / kf, t >= 1.0, 1.0, t);
    let lower = (1.0 - eta) * prod / n;
    let lower_bound = Clause::new(
        "lower-bound",
        prod >= n3 / (eta * eta * kf),
        t >= lower * (1.0 - RELATIVE_SLACK),
        lower,
        t,
    );
    let dev_bound = (prod * n / kf).sqrt();
    let deviation = (t - prod / n).abs();
    let dev = Clause::new("deviation", true, deviation <= dev_bound * (1.0 + RELATIVE_SLACK), dev_bound, deviation);

    let inputs = BoundInputs {
        group: g.descriptor().to_string(),
        order: g.order(),
        set_sizes: vec![a.len(), b.len(), c.len()],
        k,
        k_source,
        eta: Some(eta),
        delta: None,
        t: Vec::new(),
    };
    Ok(BoundReport::finish("triple-count", inputs, vec![existence, lower_bound, dev], start))
}

/// The set of `x` with `|A ∩ xB| ≤ (1 − δ)·r·s·n`, where `r` and `s` are
/// the densities of `A` and `B`, together with the bound `|bad| ≤ t·n` for
/// every `t` with `r·s·t ≥ 1/(δ²k)`.
///
/// The smallest admissible `t` is always checked; `extra_t` adds more.
#[allow(clippy::too_many_arguments)]
pub fn bad_translate_set(
    g: &FiniteGroup,
    a: &Subset,
    b: &Subset,
    delta: f64,
    k: usize,
    k_source: KSource,
    extra_t: &[f64],
) -> Result<(Subset, BoundReport)> {
    check_k(k)?;
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidArgument(format!("delta must lie in (0, 1], got {delta}")));
    }
    let start = Instant::now();
    let n = g.order();
    // |A ∩ xB| = (A * B⁻¹)(x)
    let counts = convolve_sets(g, a, &b.inverse(g))?;
    let threshold = bad_threshold(a.len(), b.len(), n, delta);
    let bad = Subset::from_fn(n, |x| counts[x] as f64 <= threshold);

    let (r, s) = (a.density(), b.density());
    let need = 1.0 / (delta * delta * k as f64);
    let mut ts: Vec<f64> = Vec::new();
    if r * s > 0.0 {
        ts.push(need / (r * s));
    }
    ts.extend(extra_t.iter().copied());
    let mut clauses = Vec::new();
    if ts.is_empty() {
        clauses.push(Clause::new("bad-set-size", false, true, f64::NAN, bad.len() as f64));
    }
    for &t in &ts {
        let applicable = r * s * t >= need * (1.0 - RELATIVE_SLACK);
        let predicted = t * n as f64;
        let observed = bad.len() as f64;
        clauses.push(Clause::new(
            format!("bad-set-size(t={t:.6})"),
            applicable,
            observed <= predicted * (1.0 + RELATIVE_SLACK),
            predicted,
            observed,
        ));
    }
    let inputs = BoundInputs {
        group: g.descriptor().to_string(),
        order: n,
        set_sizes: vec![a.len(), b.len()],
        k,
        k_source,
        eta: None,
        delta: Some(delta),
        t: ts,
    };
    Ok((bad, BoundReport::finish("bad-translates", inputs, clauses, start)))
}

/// `(1 − δ)·|A|·|B|/n`, the cut-off on `|A ∩ xB|` for a bad translate.
pub fn bad_threshold(a_len: usize, b_len: usize, n: usize, delta: f64) -> f64 {
    (1.0 - delta) * a_len as f64 * b_len as f64 / n as f64
}

/// Runs `trials` independent triple-bound checks with sets of uniformly
/// drawn densities in `density_range`; trial `i` uses the stream
/// `derive_seed(seed, i)`.
pub fn triple_trials(
    g: &FiniteGroup,
    k: usize,
    k_source: KSource,
    eta: f64,
    density_range: (f64, f64),
    trials: usize,
    seed: u64,
) -> Result<Vec<BoundReport>> {
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut r = rng::seeded(derive_seed(seed, i as u64));
            let draw = |r: &mut rng::Rng| {
                let d = r.gen_range(density_range.0..=density_range.1);
                rng::random_subset(g.order(), d, r)
            };
            let a = draw(&mut r);
            let b = draw(&mut r);
            let c = draw(&mut r);
            verify_triple_bound(g, &a, &b, &c, k, k_source, eta)
        })
        .collect()
}

/// Bad-translate checks on random `(A, B, δ)` with densities in
/// `density_range` and `δ` uniform in `[0.1, 0.9]`.
pub fn bad_set_trials(
    g: &FiniteGroup,
    k: usize,
    k_source: KSource,
    density_range: (f64, f64),
    trials: usize,
    seed: u64,
) -> Result<Vec<BoundReport>> {
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut r = rng::seeded(derive_seed(seed, i as u64));
            let da = r.gen_range(density_range.0..=density_range.1);
            let a = rng::random_subset(g.order(), da, &mut r);
            let db = r.gen_range(density_range.0..=density_range.1);
            let b = rng::random_subset(g.order(), db, &mut r);
            let delta = r.gen_range(0.1..=0.9);
            bad_translate_set(g, &a, &b, delta, k, k_source, &[1.0]).map(|(_, rep)| rep)
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct FourCycleSample {
    pub subset_size: usize,
    pub four_cycles: u128,
    /// `|A|⁴ + n²|A|²/k`
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct EquivalenceReport {
    pub group: String,
    pub order: usize,
    pub k: usize,
    pub k_source: KSource,
    pub four_cycle_samples: Vec<FourCycleSample>,
    /// Quasirandomness constants of random balanced functions bounded by 1.
    pub random_function_constants: Vec<f64>,
    /// Constant of a nontrivial degree-one character, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linear_character_constant: Option<f64>,
    pub pass: bool,
}

/// Cross-metric report: 4-cycle counts of random Cayley graphs against
/// `|A|⁴ + n²|A|²/k`, quasirandomness constants of random balanced
/// functions, and the constant of a nontrivial linear character.
pub fn equivalence_report(
    g: &FiniteGroup,
    samples: usize,
    seed: u64,
    k: Option<(usize, KSource)>,
) -> Result<EquivalenceReport> {
    let n = g.order();
    if n > DEFAULT_SPECTRAL_CAP {
        return Err(Error::CapExceeded { what: "group order for equivalence report", size: n, cap: DEFAULT_SPECTRAL_CAP });
    }
    let table: Option<CharacterTable> = if n <= DEFAULT_CHARTAB_CAP {
        Some(irreps::character_table(g)?)
    } else {
        None
    };
    let (k, k_source) = match k {
        Some(pair) => pair,
        None => match &table {
            Some(t) => (t.min_nontrivial_dim().unwrap_or(1), KSource::Computed),
            None => default_k(g)?,
        },
    };
    check_k(k)?;

    let four_cycle_samples = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut r = rng::seeded(derive_seed(seed, i as u64));
            let d = r.gen_range(0.05..=0.95);
            let a = rng::random_subset(n, d, &mut r);
            let four_cycles = spectral::count_four_cycles(g, &a)?;
            let s = a.len() as f64;
            let nf = n as f64;
            let bound = s.powi(4) + nf * nf * s * s / k as f64;
            Ok(FourCycleSample {
                subset_size: a.len(),
                four_cycles,
                bound,
                pass: four_cycles as f64 <= bound * (1.0 + RELATIVE_SLACK),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let random_function_constants = (0..samples)
        .into_par_iter()
        .map(|i| {
            let mut r = rng::seeded(derive_seed(seed ^ 0x5eed_f00d, i as u64));
            let f = random_balanced_function(n, &mut r)?;
            Ok(quasirandomness_constant(g, &f)?.constant)
        })
        .collect::<Result<Vec<_>>>()?;

    let linear_character_constant = match &table {
        Some(t) => match t.nontrivial_linear_character() {
            Some(i) => {
                let f = GroupFunction::new((0..n).map(|x| t.value_at(i, x)).collect())?;
                Some(quasirandomness_constant(g, &f)?.constant)
            }
            None => None,
        },
        None => None,
    };

    let pass = four_cycle_samples.iter().all(|s| s.pass);
    Ok(EquivalenceReport {
        group: g.descriptor().to_string(),
        order: n,
        k,
        k_source,
        four_cycle_samples,
        random_function_constants,
        linear_character_constant,
        pass,
    })
}

/// Random function with values in the unit disk, mean removed and rescaled
/// so that the largest modulus is at most one.
pub fn random_balanced_function(n: usize, r: &mut rng::Rng) -> Result<GroupFunction> {
    let raw: Vec<Complex64> = (0..n)
        .map(|_| Complex64::from_polar(r.gen_range(0.0..1.0f64).sqrt(), r.gen_range(0.0..std::f64::consts::TAU)))
        .collect();
    let mean = raw.iter().sum::<Complex64>() / n as f64;
    let centred: Vec<Complex64> = raw.iter().map(|v| v - mean).collect();
    let max = centred.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let scale = if max > 1.0 { 1.0 / max } else { 1.0 };
    GroupFunction::new(centred.iter().map(|v| v * scale).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(d: &str) -> FiniteGroup {
        FiniteGroup::from_descriptor(d).unwrap()
    }

    fn status(rep: &BoundReport, name: &str) -> ClauseStatus {
        rep.clauses.iter().find(|c| c.name.starts_with(name)).unwrap().status
    }

    #[test]
    fn full_sets_give_n_squared_triples() {
        let grp = g("psl2:5");
        let full = Subset::full(60);
        let rep = verify_triple_bound(&grp, &full, &full, &full, 60, KSource::Supplied, 0.5).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.clauses[0].observed, 3600.0);
        assert_eq!(status(&rep, "existence"), ClauseStatus::Pass);
        assert_eq!(status(&rep, "lower-bound"), ClauseStatus::Pass);
    }

    #[test]
    fn dense_sets_in_psl2_7_contain_a_triple() {
        let grp = g("psl2:7");
        let mut r = rng::seeded(3);
        // |A||B||C| > n³/3 needs densities with product above 1/3
        let a = rng::random_subset(168, 0.72, &mut r);
        let b = rng::random_subset(168, 0.72, &mut r);
        let c = rng::random_subset(168, 0.72, &mut r);
        let rep = verify_triple_bound(&grp, &a, &b, &c, 3, KSource::Formula, 0.9).unwrap();
        assert_eq!(status(&rep, "existence"), ClauseStatus::Pass);
        assert!(rep.pass);
    }

    #[test]
    fn sparse_sets_make_existence_not_applicable() {
        let grp = g("psl2:7");
        let a = Subset::from_indices(168, &[1, 2]).unwrap();
        let rep = verify_triple_bound(&grp, &a, &a, &a, 3, KSource::Formula, 0.5).unwrap();
        assert_eq!(status(&rep, "existence"), ClauseStatus::NotApplicable);
        assert_eq!(status(&rep, "lower-bound"), ClauseStatus::NotApplicable);
        assert_ne!(status(&rep, "deviation"), ClauseStatus::NotApplicable);
    }

    #[test]
    fn deviation_holds_on_random_triples() {
        let grp = g("psl2:13");
        let reps = triple_trials(&grp, 6, KSource::Formula, 0.5, (0.7, 0.7), 4, 11).unwrap();
        assert!(reps.iter().all(|r| r.pass));
    }

    #[test]
    fn argument_validation() {
        let grp = g("cyclic:3");
        let s = Subset::full(3);
        assert!(verify_triple_bound(&grp, &s, &s, &s, 0, KSource::Supplied, 0.5).is_err());
        assert!(verify_triple_bound(&grp, &s, &s, &s, 1, KSource::Supplied, 0.0).is_err());
        assert!(bad_translate_set(&grp, &s, &s, 1.5, 1, KSource::Supplied, &[]).is_err());
    }

    #[test]
    fn bad_set_of_full_sets_is_empty() {
        let grp = g("psl2:7");
        let full = Subset::full(168);
        let (bad, rep) = bad_translate_set(&grp, &full, &full, 0.3, 3, KSource::Formula, &[]).unwrap();
        assert!(bad.is_empty());
        assert!(rep.pass);
    }

    #[test]
    fn empty_set_makes_every_translate_bad() {
        let grp = g("psl2:7");
        let a = Subset::full(168);
        let b = Subset::empty(168);
        let (bad, rep) = bad_translate_set(&grp, &a, &b, 0.5, 3, KSource::Formula, &[1.0]).unwrap();
        assert_eq!(bad.len(), 168);
        assert!(rep.clauses.iter().all(|c| c.status == ClauseStatus::NotApplicable));
    }

    #[test]
    fn bad_set_matches_direct_intersections() {
        let grp = g("psl2:7");
        let mut r = rng::seeded(17);
        let a = rng::random_subset(168, 0.8, &mut r);
        let b = rng::random_subset(168, 0.8, &mut r);
        let (bad, rep) = bad_translate_set(&grp, &a, &b, 0.5, 3, KSource::Formula, &[]).unwrap();
        let cut = bad_threshold(a.len(), b.len(), 168, 0.5);
        for x in 0..168 {
            let direct = b.iter().filter(|&y| a.contains(grp.mult(x, y))).count();
            assert_eq!(bad.contains(x), direct as f64 <= cut);
        }
        assert!(rep.pass);
    }

    #[test]
    fn linear_character_of_cyclic_group_is_not_quasirandom() {
        let rep = equivalence_report(&g("cyclic:16"), 3, 5, None).unwrap();
        assert_eq!(rep.k, 1);
        let c = rep.linear_character_constant.unwrap();
        assert!((c - 1.0).abs() < 1e-9);
    }

    #[test]
    fn four_cycle_excess_bound_on_psl2_7() {
        let rep = equivalence_report(&g("psl2:7"), 6, 9, None).unwrap();
        assert_eq!(rep.k, 3);
        assert!(rep.pass);
        assert!(rep.linear_character_constant.is_none());
        assert!(rep.random_function_constants.iter().all(|&c| c.is_finite() && c >= 0.0));
    }

    #[test]
    fn zero_function_has_zero_constant() {
        let grp = g("cyclic:5");
        let rep = quasirandomness_constant(&grp, &GroupFunction::zero(5)).unwrap();
        assert_eq!(rep.constant, 0.0);
    }

    #[test]
    fn default_k_sources() {
        assert_eq!(default_k(&g("psl2:13")).unwrap(), (6, KSource::Formula));
        assert_eq!(default_k(&g("alt:5")).unwrap(), (3, KSource::Computed));
    }
}
