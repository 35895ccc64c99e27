//! Simultaneous product constraints `w(x₁, …, x_m) ∈ A_w` solved by a
//! greedy variable-by-variable search.
//!
//! Every constraint is a word in the letters `x_i^{±1}`. Variables are fixed
//! in the order `x₁, x₂, …`; fixing `x_h` peels its occurrences off both
//! ends of each word, turning `x_h^ε w ∈ S` into `w ∈ x_h^{-ε} S` and
//! `w x_h^ε ∈ S` into `w ∈ S x_h^{-ε}`. Constraints whose residual words
//! coincide are intersected. A candidate for `x_h` is accepted when every
//! merged residual set keeps at least `(1 − 2^{-r})` times the product of
//! the densities it was formed from, `r` being the number of variables
//! still free. With two variables left the search switches to an
//! exhaustive scan.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::rng;
use crate::setfun::Subset;

/// Default number of fallback candidates tried per level.
pub const DEFAULT_BACKTRACK_DEPTH: usize = 2;
/// Largest `m` accepted for the forward-products pattern (`2^m − 1` sets).
pub const MAX_FORWARD_VARIABLES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pattern {
    /// One set per nonempty `F ⊆ [m]`, constraining the product of the
    /// `x_i`, `i ∈ F`, in increasing order.
    ForwardProducts,
    /// `x_i x_j ∈ A_ij` for `i < j`.
    Pairs,
    /// `x_i x_j⁻¹ ∈ A_ij` for `i < j`.
    PairsInverse,
    CustomWords,
}

/// A letter `x_var` or `x_var⁻¹`; `var` is zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub var: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(var: usize, inverse: bool) -> Self {
        Letter { var, inverse }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}{}", self.var + 1, if self.inverse { "^-1" } else { "" })
    }
}

impl FromStr for Letter {
    type Err = Error;

    /// Parses `x3` or `x3^-1` (one-based index).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidSystem(format!("bad letter `{s}`, expected x<i> or x<i>^-1"));
        let body = s.trim().strip_prefix('x').ok_or_else(bad)?;
        let (num, inverse) = match body.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (body, false),
        };
        let i: usize = num.parse().map_err(|_| bad())?;
        if i == 0 {
            return Err(bad());
        }
        Ok(Letter::new(i - 1, inverse))
    }
}

pub fn format_word(word: &[Letter]) -> String {
    word.iter().map(Letter::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub label: String,
    pub word: Vec<Letter>,
    pub set: Subset,
}

#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    order: usize,
    m: usize,
    pattern: Pattern,
    constraints: Vec<Constraint>,
    /// Constraint index of each nonempty `F`, as a bitmask, for the
    /// forward-products pattern.
    forward: BTreeMap<u32, usize>,
}

fn mask_label(mask: u32) -> String {
    (0..32)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn check_set(g: &FiniteGroup, set: &Subset) -> Result<()> {
    if set.order() != g.order() {
        return Err(Error::OrderMismatch { expected: g.order(), found: set.order() });
    }
    Ok(())
}

impl ConstraintSystem {
    /// Sets indexed by bitmasks of `F`; missing masks mean the whole group.
    pub fn forward_products(g: &FiniteGroup, m: usize, sets: BTreeMap<u32, Subset>) -> Result<Self> {
        if !(2..=MAX_FORWARD_VARIABLES).contains(&m) {
            return Err(Error::InvalidSystem(format!(
                "forward-products needs 2 ≤ m ≤ {MAX_FORWARD_VARIABLES}, got {m}"
            )));
        }
        let full = (1u32 << m) - 1;
        if let Some(&bad) = sets.keys().find(|&&k| k == 0 || k & !full != 0) {
            return Err(Error::InvalidSystem(format!("index set {bad:#b} is outside [1, {m}]")));
        }
        let mut constraints = Vec::new();
        let mut forward = BTreeMap::new();
        for mask in 1..=full {
            let set = match sets.get(&mask) {
                Some(s) => {
                    check_set(g, s)?;
                    s.clone()
                }
                None => Subset::full(g.order()),
            };
            let word = (0..m).filter(|i| mask >> i & 1 == 1).map(|i| Letter::new(i, false)).collect();
            forward.insert(mask, constraints.len());
            constraints.push(Constraint { label: mask_label(mask), word, set });
        }
        Ok(ConstraintSystem { order: g.order(), m, pattern: Pattern::ForwardProducts, constraints, forward })
    }

    /// `x_i x_j ∈ A_ij` (or `x_i x_j⁻¹` when `inverse`) for one-based pairs
    /// `i < j`; missing pairs mean the whole group.
    pub fn pairs(
        g: &FiniteGroup,
        m: usize,
        sets: BTreeMap<(usize, usize), Subset>,
        inverse: bool,
    ) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidSystem(format!("need at least two variables, got {m}")));
        }
        if let Some(&(i, j)) = sets.keys().find(|&&(i, j)| !(1 <= i && i < j && j <= m)) {
            return Err(Error::InvalidSystem(format!("pair ({i},{j}) is not 1 ≤ i < j ≤ {m}")));
        }
        let mut constraints = Vec::new();
        for i in 1..=m {
            for j in i + 1..=m {
                let set = match sets.get(&(i, j)) {
                    Some(s) => {
                        check_set(g, s)?;
                        s.clone()
                    }
                    None => Subset::full(g.order()),
                };
                let word = vec![Letter::new(i - 1, false), Letter::new(j - 1, inverse)];
                constraints.push(Constraint { label: format!("{i},{j}"), word, set });
            }
        }
        let pattern = if inverse { Pattern::PairsInverse } else { Pattern::Pairs };
        Ok(ConstraintSystem { order: g.order(), m, pattern, constraints, forward: BTreeMap::new() })
    }

    /// Arbitrary words, accepted only if every variable sits at an end of
    /// each word that contains it once the earlier variables are peeled off.
    pub fn custom(g: &FiniteGroup, m: usize, words: Vec<(Vec<Letter>, Subset)>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidSystem(format!("need at least two variables, got {m}")));
        }
        let mut constraints = Vec::new();
        for (word, set) in words {
            check_set(g, &set)?;
            if word.is_empty() {
                return Err(Error::InvalidSystem("empty word".into()));
            }
            if let Some(l) = word.iter().find(|l| l.var >= m) {
                return Err(Error::InvalidSystem(format!("letter {l} exceeds m = {m}")));
            }
            constraints.push(Constraint { label: format_word(&word), word, set });
        }
        let words: Vec<&[Letter]> = constraints.iter().map(|c| c.word.as_slice()).collect();
        check_admissible(m, &words)?;
        Ok(ConstraintSystem { order: g.order(), m, pattern: Pattern::CustomWords, constraints, forward: BTreeMap::new() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn pattern(&self) -> Pattern {
        self.pattern
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Density of `A_F` for the forward-products pattern.
    pub fn forward_density(&self, mask: u32) -> Option<f64> {
        self.forward.get(&mask).map(|&i| self.constraints[i].set.density())
    }

    /// Whether `witness` satisfies every constraint exactly.
    pub fn is_satisfied_by(&self, g: &FiniteGroup, witness: &[usize]) -> bool {
        witness.len() == self.m
            && self.constraints.iter().all(|c| c.set.contains(evaluate(g, &c.word, witness)))
    }
}

/// Value of `word` at the assignment `values`.
pub fn evaluate(g: &FiniteGroup, word: &[Letter], values: &[usize]) -> usize {
    word.iter().fold(g.identity(), |acc, l| {
        let v = values[l.var];
        g.mult(acc, if l.inverse { g.inv(v) } else { v })
    })
}

fn check_admissible(m: usize, words: &[&[Letter]]) -> Result<()> {
    for w in words {
        let mut rest: &[Letter] = w;
        for h in 0..m {
            while rest.first().is_some_and(|l| l.var == h) {
                rest = &rest[1..];
            }
            while rest.last().is_some_and(|l| l.var == h) {
                rest = &rest[..rest.len() - 1];
            }
            if rest.iter().any(|l| l.var == h) {
                return Err(Error::InvalidSystem(format!(
                    "in `{}`, x{} is not at either end once x1..x{} are fixed",
                    format_word(w),
                    h + 1,
                    h
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct Residual {
    word: Vec<Letter>,
    set: Subset,
}

struct Reduced {
    residuals: Vec<Residual>,
    /// Smallest `density / ((1 − 2^{-r}) · Π member densities)`.
    ratio: f64,
}

fn merge(residuals: impl IntoIterator<Item = (Vec<Letter>, Subset, f64)>, factor: f64) -> Option<Reduced> {
    let mut map: BTreeMap<Vec<Letter>, (Subset, f64)> = BTreeMap::new();
    for (word, set, density) in residuals {
        match map.get_mut(&word) {
            Some((s, d)) => {
                *s = s.intersection(&set);
                *d *= density;
            }
            None => {
                map.insert(word, (set, density));
            }
        }
    }
    let mut ratio = f64::INFINITY;
    let mut out = Vec::with_capacity(map.len());
    for (word, (set, product)) in map {
        if set.is_empty() {
            return None;
        }
        let needed = factor * product;
        if needed > 0.0 {
            ratio = ratio.min(set.density() / needed);
        }
        out.push(Residual { word, set });
    }
    Some(Reduced { residuals: out, ratio })
}

/// Fixes variable `h` to `x` in every residual. Returns `None` when a
/// constraint that no longer involves any variable fails, or a residual set
/// becomes empty.
fn reduce(g: &FiniteGroup, residuals: &[Residual], h: usize, x: usize, factor: f64) -> Option<Reduced> {
    let xi = g.inv(x);
    let n = g.order();
    let mut out = Vec::with_capacity(residuals.len());
    for r in residuals {
        let mut lo = 0;
        let mut hi = r.word.len();
        let mut left = g.identity();
        let mut right = g.identity();
        while lo < hi && r.word[lo].var == h {
            let step = if r.word[lo].inverse { x } else { xi };
            left = g.mult(step, left);
            lo += 1;
        }
        while hi > lo && r.word[hi - 1].var == h {
            let step = if r.word[hi - 1].inverse { x } else { xi };
            right = g.mult(right, step);
            hi -= 1;
        }
        let density = r.set.density();
        if lo == 0 && hi == r.word.len() {
            out.push((r.word.clone(), r.set.clone(), density));
            continue;
        }
        if lo == hi {
            // e ∈ L S R  ⟺  L⁻¹ R⁻¹ ∈ S
            if !r.set.contains(g.mult(g.inv(left), g.inv(right))) {
                return None;
            }
            continue;
        }
        let mut set = r.set.clone();
        if set.len() != n {
            if left != g.identity() {
                set = set.left_translate(g, left);
            }
            if right != g.identity() {
                set = set.right_translate(g, right);
            }
        }
        out.push((r.word[lo..hi].to_vec(), set, density));
    }
    merge(out, factor)
}

/// Residual constraints after fixing `x₁ = x`, or `None` if `x` already
/// violates a constraint or empties a residual set.
pub fn fix_first_variable(g: &FiniteGroup, sys: &ConstraintSystem, x: usize) -> Option<Vec<Constraint>> {
    let initial = merge(
        sys.constraints.iter().map(|c| (c.word.clone(), c.set.clone(), c.set.density())),
        1.0,
    )?;
    let reduced = reduce(g, &initial.residuals, 0, x, 1.0)?;
    Some(
        reduced
            .residuals
            .into_iter()
            .map(|r| Constraint { label: format_word(&r.word), word: r.word, set: r.set })
            .collect(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    Solved,
    Exhausted,
    /// Solved, but some level had no candidate meeting the density
    /// threshold, or a below-threshold fallback was used.
    DensityWarningSolved,
    /// No witness found, and some level had no candidate meeting the
    /// density threshold.
    DensityWarningExhausted,
}

impl SolveStatus {
    pub fn is_solved(self) -> bool {
        matches!(self, SolveStatus::Solved | SolveStatus::DensityWarningSolved)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceStep {
    /// One-based index of the variable being fixed.
    pub variable: usize,
    /// `greedy` or `scan`.
    pub mode: &'static str,
    /// Candidates evaluated at this visit.
    pub examined: usize,
    /// Candidates meeting the threshold (greedy) or consistent so far (scan)
    /// among those examined.
    pub passing: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_factor: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chosen: Option<usize>,
    pub fallback: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveOutcome {
    pub status: SolveStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    pub trace: Vec<TraceStep>,
}

struct Search<'a> {
    g: &'a FiniteGroup,
    m: usize,
    depth: usize,
    rng: rng::Rng,
    trace: Vec<TraceStep>,
    warning: bool,
}

impl Search<'_> {
    fn shuffled(&mut self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.g.order()).collect();
        order.shuffle(&mut self.rng);
        order
    }

    fn run(&mut self, h: usize, residuals: &[Residual], witness: &mut [usize]) -> bool {
        let remaining = self.m - h;
        if remaining <= 2 {
            return self.scan(h, residuals, witness);
        }
        let factor = 1.0 - 0.5f64.powi(remaining as i32);
        let order = self.shuffled();
        let mut examined = 0;
        let mut first = None;
        for &x in &order {
            examined += 1;
            if let Some(r) = reduce(self.g, residuals, h, x, factor) {
                if r.ratio >= 1.0 {
                    first = Some((x, r));
                    break;
                }
            }
        }
        let step = self.trace.len();
        self.trace.push(TraceStep {
            variable: h + 1,
            mode: "greedy",
            examined,
            passing: usize::from(first.is_some()),
            threshold_factor: Some(factor),
            chosen: None,
            fallback: false,
        });
        if first.is_none() {
            self.warning = true;
        }
        let mut tried = Vec::new();
        if let Some((x, r)) = first {
            tried.push(x);
            witness[h] = x;
            self.trace[step].chosen = Some(x);
            if self.run(h + 1, &r.residuals, witness) {
                return true;
            }
        }
        if self.depth == 0 {
            return false;
        }
        // rank every candidate by its worst residual ratio, best first,
        // breaking ties by position in the seeded order
        let g = self.g;
        let mut ranked: Vec<(f64, usize, usize)> = order
            .par_iter()
            .enumerate()
            .filter_map(|(pos, &x)| reduce(g, residuals, h, x, factor).map(|r| (r.ratio, pos, x)))
            .collect();
        ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let fallbacks: Vec<(f64, usize)> = ranked
            .into_iter()
            .filter(|t| !tried.contains(&t.2))
            .take(self.depth)
            .map(|t| (t.0, t.2))
            .collect();
        for (ratio, x) in fallbacks {
            if ratio < 1.0 {
                self.warning = true;
            }
            let Some(r) = reduce(g, residuals, h, x, factor) else { continue };
            witness[h] = x;
            self.trace.push(TraceStep {
                variable: h + 1,
                mode: "greedy",
                examined: 0,
                passing: usize::from(ratio >= 1.0),
                threshold_factor: Some(factor),
                chosen: Some(x),
                fallback: true,
            });
            if self.run(h + 1, &r.residuals, witness) {
                return true;
            }
        }
        false
    }

    /// Exhaustive search over the last one or two variables.
    fn scan(&mut self, h: usize, residuals: &[Residual], witness: &mut [usize]) -> bool {
        let order = self.shuffled();
        let step = self.trace.len();
        self.trace.push(TraceStep {
            variable: h + 1,
            mode: "scan",
            examined: 0,
            passing: 0,
            threshold_factor: None,
            chosen: None,
            fallback: false,
        });
        if h + 1 == self.m {
            for &y in &order {
                self.trace[step].examined += 1;
                witness[h] = y;
                if residuals.iter().all(|r| r.set.contains(evaluate(self.g, &r.word, witness))) {
                    self.trace[step].passing += 1;
                    self.trace[step].chosen = Some(y);
                    return true;
                }
            }
            return false;
        }
        let last_order = self.shuffled();
        for &x in &order {
            self.trace[step].examined += 1;
            let Some(r) = reduce(self.g, residuals, h, x, 1.0) else { continue };
            self.trace[step].passing += 1;
            witness[h] = x;
            for &y in &last_order {
                witness[h + 1] = y;
                if r.residuals.iter().all(|c| c.set.contains(evaluate(self.g, &c.word, witness))) {
                    self.trace[step].chosen = Some(x);
                    self.trace.push(TraceStep {
                        variable: h + 2,
                        mode: "scan",
                        examined: 0,
                        passing: 1,
                        threshold_factor: None,
                        chosen: Some(y),
                        fallback: false,
                    });
                    return true;
                }
            }
        }
        false
    }
}

/// Greedy search for `(x₁, …, x_m)` satisfying every constraint.
///
/// Candidates at each level are visited in an order drawn from `seed`; the
/// first one meeting the density threshold is taken, and if its subtree
/// fails up to `backtrack_depth` further candidates are tried in order of
/// their worst residual ratio. Any returned witness has been re-verified
/// against the original constraints.
pub fn solve(g: &FiniteGroup, sys: &ConstraintSystem, seed: u64, backtrack_depth: usize) -> Result<SolveOutcome> {
    if sys.order != g.order() {
        return Err(Error::OrderMismatch { expected: g.order(), found: sys.order });
    }
    let exhausted = SolveOutcome { status: SolveStatus::Exhausted, witness: None, trace: Vec::new() };
    if sys.constraints.iter().any(|c| c.set.is_empty()) {
        return Ok(exhausted);
    }
    let Some(initial) = merge(
        sys.constraints.iter().map(|c| (c.word.clone(), c.set.clone(), c.set.density())),
        1.0,
    ) else {
        return Ok(exhausted);
    };
    let mut search = Search {
        g,
        m: sys.m,
        depth: backtrack_depth,
        rng: rng::seeded(seed),
        trace: Vec::new(),
        warning: false,
    };
    let mut witness = vec![g.identity(); sys.m];
    let found = search.run(0, &initial.residuals, &mut witness);
    let status = match (found, search.warning) {
        (true, false) => SolveStatus::Solved,
        (true, true) => SolveStatus::DensityWarningSolved,
        (false, false) => SolveStatus::Exhausted,
        (false, true) => SolveStatus::DensityWarningExhausted,
    };
    if found && !sys.is_satisfied_by(g, &witness) {
        return Err(Error::Internal(format!("witness {witness:?} fails re-verification")));
    }
    Ok(SolveOutcome { status, witness: found.then_some(witness), trace: search.trace })
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityFailure {
    pub h: usize,
    pub e: Vec<usize>,
    pub product: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DensityReport {
    pub m: usize,
    pub k: usize,
    pub threshold: f64,
    pub conditions: usize,
    pub pass: bool,
    pub failing: Vec<DensityFailure>,
    /// Smallest `product / threshold` over all `(h, E)`.
    pub worst_margin: f64,
}

/// Checks that for every `h < m` and nonempty `E ⊆ {h+1, …, m}` the
/// product of `p_F` over `F = U ∪ V`, `U ⊆ {1, …, h−1}`,
/// `V ∈ {{h}, E, {h} ∪ E}`, is at least `2^{3m}/k`.
pub fn check_density_condition(sys: &ConstraintSystem, k: usize) -> Result<DensityReport> {
    let threshold = 2f64.powi(3 * sys.m as i32) / k as f64;
    density_condition(sys, k, threshold)
}

/// The `m = 3` form with the constant `16/k`: the four products
/// `p₁p₂p₁₂`, `p₁p₃p₁₃`, `p₁p₂₃p₁₂₃` and `p₂p₃p₂₃p₁₂p₁₃p₁₂₃`.
pub fn check_density_condition_m3(sys: &ConstraintSystem, k: usize) -> Result<DensityReport> {
    if sys.m != 3 {
        return Err(Error::InvalidSystem(format!("the 16/k form needs m = 3, got {}", sys.m)));
    }
    density_condition(sys, k, 16.0 / k as f64)
}

fn density_condition(sys: &ConstraintSystem, k: usize, threshold: f64) -> Result<DensityReport> {
    if sys.pattern != Pattern::ForwardProducts {
        return Err(Error::InvalidSystem("the density condition applies to forward-products systems".into()));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let m = sys.m;
    let p = |mask: u32| sys.forward_density(mask).unwrap_or(1.0);
    let mut failing = Vec::new();
    let mut worst = f64::INFINITY;
    let mut conditions = 0;
    for h in 1..m {
        let hbit = 1u32 << (h - 1);
        let below = hbit - 1; // {1, …, h−1}
        let above_shift = h as u32; // bits for {h+1, …, m}
        for e_bits in 1u32..(1 << (m - h)) {
            let e = e_bits << above_shift;
            let mut product = 1.0;
            let mut u = below;
            loop {
                // enumerate every subset U of `below`
                for v in [hbit, e, hbit | e] {
                    product *= p(u | v);
                }
                if u == 0 {
                    break;
                }
                u = (u - 1) & below;
            }
            conditions += 1;
            worst = worst.min(product / threshold);
            if product < threshold {
                let e_list = (0..m).filter(|i| e >> i & 1 == 1).map(|i| i + 1).collect();
                failing.push(DensityFailure { h, e: e_list, product });
            }
        }
    }
    Ok(DensityReport { m, k, threshold, conditions, pass: failing.is_empty(), failing, worst_margin: worst })
}

#[derive(Debug, Clone, Serialize)]
pub struct PairwiseOutcome {
    pub outcome: SolveOutcome,
    pub min_density: f64,
    /// `4·k^{-1/(2m−3)}`
    pub threshold: f64,
    /// Whether every `A_ij` has density above the threshold.
    pub condition_held: bool,
}

/// Solves `x_i x_j ∈ A_ij` (or `x_i x_j⁻¹ ∈ A_ij`) for all `i < j`, and
/// reports whether every density exceeds `4·k^{-1/(2m−3)}`.
#[allow(clippy::too_many_arguments)]
pub fn solve_pairwise(
    g: &FiniteGroup,
    m: usize,
    sets: BTreeMap<(usize, usize), Subset>,
    inverse: bool,
    k: usize,
    seed: u64,
    backtrack_depth: usize,
) -> Result<PairwiseOutcome> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let sys = ConstraintSystem::pairs(g, m, sets, inverse)?;
    let min_density = sys.constraints.iter().map(|c| c.set.density()).fold(1.0, f64::min);
    let threshold = pairwise_threshold(m, k);
    let outcome = solve(g, &sys, seed, backtrack_depth)?;
    Ok(PairwiseOutcome { outcome, min_density, threshold, condition_held: min_density > threshold })
}

pub fn pairwise_threshold(m: usize, k: usize) -> f64 {
    4.0 * (k as f64).powf(-1.0 / (2.0 * m as f64 - 3.0))
}

/// JSON form of a constraint system.
///
/// `sets` maps comma-joined ascending one-based indices (`"1,3"`) to element
/// lists; custom systems list `constraints` with words like
/// `["x2", "x3^-1"]` instead.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SystemFile {
    pub group: String,
    pub m: usize,
    pub pattern: Pattern,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sets: BTreeMap<String, Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub constraints: Vec<WordConstraintFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WordConstraintFile {
    pub word: Vec<String>,
    pub elements: Vec<usize>,
}

fn parse_index_set(key: &str, m: usize) -> Result<Vec<usize>> {
    let idx: Vec<usize> = key
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::InvalidSystem(format!("bad index set `{key}`")))?;
    if idx.is_empty() || idx.windows(2).any(|w| w[0] >= w[1]) || idx[0] == 0 || *idx.last().unwrap_or(&0) > m {
        return Err(Error::InvalidSystem(format!("index set `{key}` must be ascending within 1..={m}")));
    }
    Ok(idx)
}

impl SystemFile {
    pub fn to_system(&self, g: &FiniteGroup) -> Result<ConstraintSystem> {
        let subset = |elems: &[usize]| Subset::from_indices(g.order(), elems);
        match self.pattern {
            Pattern::ForwardProducts => {
                let mut sets = BTreeMap::new();
                for (key, elems) in &self.sets {
                    let mask = parse_index_set(key, self.m)?.iter().fold(0u32, |acc, &i| acc | 1 << (i - 1));
                    sets.insert(mask, subset(elems)?);
                }
                ConstraintSystem::forward_products(g, self.m, sets)
            }
            Pattern::Pairs | Pattern::PairsInverse => {
                let mut sets = BTreeMap::new();
                for (key, elems) in &self.sets {
                    let idx = parse_index_set(key, self.m)?;
                    if idx.len() != 2 {
                        return Err(Error::InvalidSystem(format!("pair key `{key}` needs two indices")));
                    }
                    sets.insert((idx[0], idx[1]), subset(elems)?);
                }
                ConstraintSystem::pairs(g, self.m, sets, self.pattern == Pattern::PairsInverse)
            }
            Pattern::CustomWords => {
                let words = self
                    .constraints
                    .iter()
                    .map(|c| {
                        let word = c.word.iter().map(|s| s.parse()).collect::<Result<Vec<Letter>>>()?;
                        Ok((word, subset(&c.elements)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                ConstraintSystem::custom(g, self.m, words)
            }
        }
    }
}
