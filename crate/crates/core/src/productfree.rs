//! Product-free sets: checking, classical constructions and exact search.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{is_prime, FiniteGroup, GroupKind};
use crate::setfun::Subset;

/// Largest group order accepted by [`max_product_free_exact`].
pub const EXACT_SEARCH_CAP: usize = 28;
/// Default clustering radius for [`representation_product_free`].
pub const DEFAULT_DELTA: f64 = 0.05;

/// No `x, y ∈ A` with `xy ∈ A`.
pub fn is_product_free(g: &FiniteGroup, a: &Subset) -> bool {
    let elems = a.to_indices();
    elems.iter().all(|&x| elems.iter().all(|&y| !a.contains(g.mult(x, y))))
}

/// No `x, y, z ∈ Y` (not necessarily distinct) with `x + y = z`.
pub fn is_sum_free(y: &[i64]) -> bool {
    let set: std::collections::BTreeSet<i64> = y.iter().copied().collect();
    set.iter().all(|&a| set.iter().all(|&b| !set.contains(&(a + b))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Erdos,
    Coset,
    Exact,
    Representation,
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub size: usize,
    /// Group element indices, or integers for the sum-free construction.
    pub elements: Vec<i64>,
    /// Set only after an exhaustive product-free (or sum-free) check.
    pub verified: bool,
    /// Exact search: the witness is a maximum product-free set.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes_explored: Option<u64>,
    /// Sum-free construction: the prime and the multiplier used.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub multiplier: Option<u64>,
    /// Coset construction: order of the subgroup.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup_size: Option<usize>,
    /// Representation construction: number of elements with small trace.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub candidates: Option<usize>,
}

impl SearchResult {
    fn new(method: Method, group: Option<&FiniteGroup>, elements: Vec<i64>, verified: bool) -> Self {
        SearchResult {
            method,
            group: group.map(|g| g.descriptor().to_string()),
            size: elements.len(),
            elements,
            verified,
            optimal: None,
            nodes_explored: None,
            prime: None,
            multiplier: None,
            subgroup_size: None,
            candidates: None,
        }
    }

    fn from_subset(method: Method, g: &FiniteGroup, s: &Subset) -> Self {
        let elements = s.iter().map(|x| x as i64).collect();
        SearchResult::new(method, Some(g), elements, is_product_free(g, s))
    }

    /// The witness as a subset of a group of the given order.
    pub fn subset(&self, order: usize) -> Result<Subset> {
        let idx: Vec<usize> = self
            .elements
            .iter()
            .map(|&e| usize::try_from(e).map_err(|_| Error::InvalidArgument(format!("negative element {e}"))))
            .collect::<Result<_>>()?;
        Subset::from_indices(order, &idx)
    }
}

/// Sum-free subset of at least a third of `x`: multiply by the first `r`
/// modulo a prime `p > 3·max|x|` that sends at least `|X|/3` elements into
/// the middle third `[p/3, 2p/3]`, and keep their preimages.
pub fn erdos_sum_free(x: &[i64]) -> Result<SearchResult> {
    let mut xs: Vec<i64> = x.to_vec();
    xs.sort_unstable();
    xs.dedup();
    if xs.is_empty() {
        return Err(Error::InvalidArgument("the integer set is empty".into()));
    }
    if xs.contains(&0) {
        return Err(Error::InvalidArgument("the integer set contains 0".into()));
    }
    let max = xs.iter().map(|v| v.unsigned_abs()).max().unwrap_or(1);
    let mut p = 3 * max + 1;
    while !is_prime(p) {
        p += 1;
    }
    let middle = |y: u64| 3 * y >= p && 3 * y <= 2 * p;
    let residue = |r: u64, v: i64| ((r as i128 * v as i128).rem_euclid(p as i128)) as u64;
    for r in 1..p {
        let count = xs.iter().filter(|&&v| middle(residue(r, v))).count();
        if 3 * count >= xs.len() {
            let y: Vec<i64> = xs.iter().copied().filter(|&v| middle(residue(r, v))).collect();
            let verified = is_sum_free(&y);
            let mut res = SearchResult::new(Method::Erdos, None, y, verified);
            res.prime = Some(p);
            res.multiplier = Some(r);
            return Ok(res);
        }
    }
    Err(Error::Internal("no multiplier reached a third of the set".into()))
}

/// A nontrivial left coset `gH` of the subgroup generated by `generators`,
/// with `g` the least element outside `H`.
pub fn coset_product_free(g: &FiniteGroup, generators: &[usize]) -> Result<SearchResult> {
    let h = g.subgroup_closure(generators)?;
    let Some(x) = (0..g.order()).find(|&x| !h.contains(x)) else {
        return Err(Error::InvalidArgument("the generators generate the whole group".into()));
    };
    let coset = h.left_translate(g, x);
    let mut res = SearchResult::from_subset(Method::Coset, g, &coset);
    res.subgroup_size = Some(h.len());
    Ok(res)
}

struct Exact {
    n: usize,
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
    /// Bitmask of the square roots of each element.
    roots: Vec<u32>,
    best: u32,
    nodes: u64,
}

impl Exact {
    /// Elements that can no longer be added once `i` joins `set`.
    fn blocked_by(&self, set: u32, i: usize) -> u32 {
        let mut b = self.roots[i] | 1 << i;
        for a in (0..self.n).filter(|&a| set >> a & 1 == 1 || a == i) {
            let t = &self.table;
            for z in [
                t[i][a],
                t[a][i],
                t[i][self.inv[a]],
                t[a][self.inv[i]],
                t[self.inv[i]][a],
                t[self.inv[a]][i],
            ] {
                b |= 1 << z;
            }
        }
        b
    }

    fn search(&mut self, i: usize, set: u32, forbidden: u32) {
        self.nodes += 1;
        if set.count_ones() > self.best.count_ones() {
            self.best = set;
        }
        if i == self.n {
            return;
        }
        let rest = !0u32 << i & ((1u64 << self.n) - 1) as u32;
        let available = rest & !forbidden;
        if set.count_ones() + available.count_ones() <= self.best.count_ones() {
            return;
        }
        if forbidden >> i & 1 == 0 {
            let block = self.blocked_by(set, i);
            self.search(i + 1, set | 1 << i, forbidden | block);
        }
        self.search(i + 1, set, forbidden);
    }
}

/// Maximum product-free subset by branch and bound over elements in index
/// order, including before excluding.
pub fn max_product_free_exact(g: &FiniteGroup) -> Result<SearchResult> {
    let n = g.order();
    if n > EXACT_SEARCH_CAP {
        return Err(Error::CapExceeded { what: "group order for exact search", size: n, cap: EXACT_SEARCH_CAP });
    }
    let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| g.mult(a, b)).collect()).collect();
    let mut roots = vec![0u32; n];
    for z in 0..n {
        roots[table[z][z]] |= 1 << z;
    }
    let mut ex = Exact { n, table, inv: (0..n).map(|a| g.inv(a)).collect(), roots, best: 0, nodes: 0 };
    ex.search(0, 0, 1 << g.identity());
    let s = Subset::from_fn(n, |x| ex.best >> x & 1 == 1);
    let mut res = SearchResult::from_subset(Method::Exact, g, &s);
    res.optimal = Some(true);
    res.nodes_explored = Some(ex.nodes);
    Ok(res)
}

/// Unit eigenvector of the permutation matrix of `perm` (acting by
/// `e_i ↦ e_{perm(i)}`) on the cycle through its smallest moved point,
/// for the eigenvalue of least real part on that cycle.
fn cycle_eigenpair(perm: &[usize]) -> Option<(Vec<Complex64>, Complex64)> {
    let start = (0..perm.len()).find(|&i| perm[i] != i)?;
    let mut cycle = vec![start];
    let mut c = perm[start];
    while c != start {
        cycle.push(c);
        c = perm[c];
    }
    let len = cycle.len();
    let angle = 2.0 * std::f64::consts::PI * (len / 2) as f64 / len as f64;
    let omega = Complex64::from_polar(1.0, angle);
    let mut v = vec![Complex64::new(0.0, 0.0); perm.len()];
    let scale = 1.0 / (len as f64).sqrt();
    for (t, &ct) in cycle.iter().enumerate() {
        v[ct] = Complex64::from_polar(scale, -angle * t as f64);
    }
    Some((v, omega))
}

fn distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt()
}

/// Product-free set from the standard representation of Sym(d) or Alt(d)
/// on the zero-sum subspace of `ℂ^d` (dimension `k = d − 1`).
///
/// Takes the elements whose trace `fix(α) − 1` is at most `k/2`, attaches
/// to each a unit eigenvector with eigenvalue of real part below `1/2`, and
/// groups the (vector, eigenvalue) pairs so that members of a group are
/// pairwise within `2δ` in the vector and `δ` in the eigenvalue. The
/// largest group is returned and checked for product-freeness.
pub fn representation_product_free(g: &FiniteGroup, delta: f64) -> Result<SearchResult> {
    if !matches!(g.kind(), GroupKind::Symmetric | GroupKind::Alternating) {
        return Err(Error::InvalidArgument(format!(
            "`{}` is not a symmetric or alternating group",
            g.descriptor()
        )));
    }
    if !(delta > 0.0 && delta < 0.1) {
        return Err(Error::InvalidArgument(format!("delta must lie in (0, 0.1), got {delta}")));
    }
    let degree = g.degree().unwrap_or(0);
    let k = degree.saturating_sub(1) as f64;
    let mut pairs = Vec::new();
    for x in 0..g.order() {
        let Some(perm) = g.permutation(x) else { continue };
        let trace = perm.iter().enumerate().filter(|&(i, &p)| i == p).count() as f64 - 1.0;
        if trace <= k / 2.0 {
            if let Some((v, lambda)) = cycle_eigenpair(&perm) {
                pairs.push((x, v, lambda));
            }
        }
    }
    let candidates = pairs.len();
    let mut assigned = vec![false; pairs.len()];
    let mut best: Vec<usize> = Vec::new();
    for seed in 0..pairs.len() {
        if assigned[seed] {
            continue;
        }
        let mut cluster = vec![seed];
        assigned[seed] = true;
        for j in seed + 1..pairs.len() {
            if assigned[j] {
                continue;
            }
            let close = cluster.iter().all(|&c| {
                distance(&pairs[c].1, &pairs[j].1) <= 2.0 * delta && (pairs[c].2 - pairs[j].2).norm() <= delta
            });
            if close {
                cluster.push(j);
                assigned[j] = true;
            }
        }
        if cluster.len() > best.len() {
            best = cluster;
        }
    }
    let y = Subset::from_indices(g.order(), &best.iter().map(|&i| pairs[i].0).collect::<Vec<_>>())?;
    let mut res = SearchResult::from_subset(Method::Representation, g, &y);
    res.candidates = Some(candidates);
    Ok(res)
}
