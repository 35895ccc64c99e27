//! Finite groups with a canonical element indexing.
//!
//! A [`FiniteGroup`] of order `n` names its elements `0..n`. Structured
//! groups (cyclic, dihedral, symmetric, alternating, PSL₂(q), direct
//! products) compute products from their structure; below a configurable
//! cap the full Cayley table is cached as well. Groups can also be read from
//! an explicit Cayley table, which is validated on load.

mod classes;
mod perm;
mod psl2;

use std::fmt;
use std::str::FromStr;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::rng;

pub use classes::{ConjugacyClasses, DEFAULT_CLASS_CAP};

use perm::PermGroup;
use psl2::Psl2;

/// Largest order any constructor accepts.
pub const MAX_ORDER: usize = 1 << 26;
/// Default cap on the order for which the Cayley table is cached.
pub const DEFAULT_TABLE_CAP: usize = 4096;
/// Associativity of a loaded table is checked exhaustively up to this order.
pub const EXHAUSTIVE_CHECK_ORDER: usize = 512;
/// Random triples checked for larger loaded tables.
pub const RANDOM_ASSOCIATIVITY_TRIPLES: usize = 100_000;

const MAX_PSL2_Q: u64 = 251;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    Cyclic,
    Dihedral,
    Symmetric,
    Alternating,
    Psl2,
    DirectProduct,
    Table,
}

/// Textual group description, e.g. `psl2:7`, `sym:4` or `cyclic:2*dihedral:5`.
///
/// Products are written with `*` and associate to the left; parentheses
/// group explicitly. `table:PATH` loads a Cayley-table file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Descriptor {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Psl2(u64),
    Product(Box<Descriptor>, Box<Descriptor>),
    Table(String),
}

impl FromStr for Descriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_descriptor(s.trim(), s)
    }
}

fn parse_descriptor(s: &str, whole: &str) -> Result<Descriptor> {
    if s.is_empty() {
        return Err(Error::descriptor(whole, "empty descriptor"));
    }
    if let Some(pos) = top_level_split(s, whole)? {
        let left = parse_descriptor(s[..pos].trim(), whole)?;
        let right = parse_descriptor(s[pos + 1..].trim(), whole)?;
        return Ok(Descriptor::Product(Box::new(left), Box::new(right)));
    }
    if s.starts_with('(') && s.ends_with(')') {
        return parse_descriptor(s[1..s.len() - 1].trim(), whole);
    }
    let (kind, arg) = s
        .split_once(':')
        .ok_or_else(|| Error::descriptor(whole, format!("expected KIND:ARG, found `{s}`")))?;
    if kind == "table" {
        if arg.is_empty() {
            return Err(Error::descriptor(whole, "table path is empty"));
        }
        return Ok(Descriptor::Table(arg.to_string()));
    }
    let value: u64 = arg
        .parse()
        .map_err(|_| Error::descriptor(whole, format!("`{arg}` is not a non-negative integer")))?;
    let v = value as usize;
    match kind {
        "cyclic" => Ok(Descriptor::Cyclic(v)),
        "dihedral" => Ok(Descriptor::Dihedral(v)),
        "sym" => Ok(Descriptor::Symmetric(v)),
        "alt" => Ok(Descriptor::Alternating(v)),
        "psl2" => Ok(Descriptor::Psl2(value)),
        other => Err(Error::descriptor(whole, format!("unknown group kind `{other}`"))),
    }
}

/// Position of the last `*` outside parentheses, if any.
fn top_level_split(s: &str, whole: &str) -> Result<Option<usize>> {
    let mut depth = 0i32;
    let mut split = None;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::descriptor(whole, "unbalanced parentheses"));
                }
            }
            '*' if depth == 0 => split = Some(i),
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::descriptor(whole, "unbalanced parentheses"));
    }
    Ok(split)
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Cyclic(n) => write!(f, "cyclic:{n}"),
            Descriptor::Dihedral(n) => write!(f, "dihedral:{n}"),
            Descriptor::Symmetric(n) => write!(f, "sym:{n}"),
            Descriptor::Alternating(n) => write!(f, "alt:{n}"),
            Descriptor::Psl2(q) => write!(f, "psl2:{q}"),
            Descriptor::Table(p) => write!(f, "table:{p}"),
            Descriptor::Product(a, b) => match **b {
                Descriptor::Product(..) => write!(f, "{a}*({b})"),
                _ => write!(f, "{a}*{b}"),
            },
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct GroupOptions {
    /// Cache the full Cayley table when the order is at most this.
    pub table_cap: usize,
}

impl Default for GroupOptions {
    fn default() -> Self {
        GroupOptions {
            table_cap: DEFAULT_TABLE_CAP,
        }
    }
}

#[derive(Debug, Clone)]
enum Repr {
    Cyclic,
    Dihedral { rotations: usize },
    Perm(PermGroup),
    Psl2(Psl2),
    Product(Box<FiniteGroup>, Box<FiniteGroup>),
    /// Products always come from `table`.
    Table,
}

/// An immutable finite group of order `n` with elements `0..n`.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    descriptor: String,
    kind: GroupKind,
    order: usize,
    identity: usize,
    repr: Repr,
    inverses: Vec<u32>,
    table: Option<Vec<u32>>,
}

impl FiniteGroup {
    /// Builds a group from a descriptor string with default options.
    pub fn from_descriptor(descriptor: &str) -> Result<Self> {
        let d: Descriptor = descriptor.parse()?;
        Self::build(&d, &GroupOptions::default())
    }

    pub fn build(descriptor: &Descriptor, options: &GroupOptions) -> Result<Self> {
        let label = descriptor.to_string();
        let (kind, repr, order) = match descriptor {
            Descriptor::Cyclic(n) => {
                check_range(&label, *n, 1, MAX_ORDER)?;
                (GroupKind::Cyclic, Repr::Cyclic, *n)
            }
            Descriptor::Dihedral(n) => {
                check_range(&label, *n, 3, MAX_ORDER / 2)?;
                (
                    GroupKind::Dihedral,
                    Repr::Dihedral { rotations: *n },
                    2 * n,
                )
            }
            Descriptor::Symmetric(n) => {
                check_range(&label, *n, 2, perm::MAX_DEGREE)?;
                let g = PermGroup::symmetric(*n);
                let order = g.order();
                (GroupKind::Symmetric, Repr::Perm(g), order)
            }
            Descriptor::Alternating(n) => {
                check_range(&label, *n, 3, perm::MAX_DEGREE)?;
                let g = PermGroup::alternating(*n);
                let order = g.order();
                (GroupKind::Alternating, Repr::Perm(g), order)
            }
            Descriptor::Psl2(q) => {
                if *q < 5 || !is_prime(*q) {
                    return Err(Error::descriptor(&label, "q must be an odd prime >= 5"));
                }
                if *q > MAX_PSL2_Q {
                    return Err(Error::descriptor(
                        &label,
                        format!("q must be at most {MAX_PSL2_Q}"),
                    ));
                }
                let g = Psl2::new(*q as u32);
                let order = g.order();
                (GroupKind::Psl2, Repr::Psl2(g), order)
            }
            Descriptor::Product(a, b) => {
                let ga = Self::build(a, options)?;
                let gb = Self::build(b, options)?;
                let order = ga
                    .order
                    .checked_mul(gb.order)
                    .filter(|&o| o <= MAX_ORDER)
                    .ok_or_else(|| Error::descriptor(&label, "product order too large"))?;
                (
                    GroupKind::DirectProduct,
                    Repr::Product(Box::new(ga), Box::new(gb)),
                    order,
                )
            }
            Descriptor::Table(path) => {
                let text = std::fs::read_to_string(path)?;
                let rows = parse_cayley_table(&text)?;
                return Self::from_table(&label, rows);
            }
        };
        let mut g = FiniteGroup {
            descriptor: label,
            kind,
            order,
            identity: 0,
            repr,
            inverses: Vec::new(),
            table: None,
        };
        g.identity = g.structured_identity();
        g.inverses = (0..order).map(|x| g.structured_inv(x) as u32).collect();
        if order <= options.table_cap {
            let mut table = Vec::with_capacity(order * order);
            for a in 0..order {
                for b in 0..order {
                    table.push(g.structured_mult(a, b) as u32);
                }
            }
            g.table = Some(table);
        }
        Ok(g)
    }

    /// Builds a group from explicit Cayley-table rows (`rows[i][j] = i·j`).
    ///
    /// The table must be a Latin square with a two-sided identity, and must
    /// be associative: exhaustively for orders up to
    /// [`EXHAUSTIVE_CHECK_ORDER`], on random triples beyond that.
    pub fn from_table(label: &str, rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::MalformedTable(format!("order {n} too large")));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::MalformedTable(format!(
                        "entry {v} in row {i} out of range"
                    )));
                }
                table.push(v as u32);
            }
        }
        let at = |a: usize, b: usize| table[a * n + b] as usize;
        // Latin square
        let mut seen = vec![0usize; n];
        for i in 0..n {
            for j in 0..n {
                let v = at(i, j);
                if seen[v] == 2 * i + 1 {
                    return Err(Error::MalformedTable(format!("row {i} repeats {v}")));
                }
                seen[v] = 2 * i + 1;
            }
        }
        seen.iter_mut().for_each(|s| *s = 0);
        for j in 0..n {
            for i in 0..n {
                let v = at(i, j);
                if seen[v] == 2 * j + 2 {
                    return Err(Error::MalformedTable(format!("column {j} repeats {v}")));
                }
                seen[v] = 2 * j + 2;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or_else(|| Error::MalformedTable("no identity element".into()))?;
        let mut inverses = vec![0u32; n];
        for x in 0..n {
            let y = (0..n)
                .find(|&y| at(x, y) == identity)
                .ok_or_else(|| Error::MalformedTable(format!("element {x} has no inverse")))?;
            if at(y, x) != identity {
                return Err(Error::MalformedTable(format!(
                    "element {x} has no two-sided inverse"
                )));
            }
            inverses[x] = y as u32;
        }
        let assoc_fail = |a: usize, b: usize, c: usize| at(at(a, b), c) != at(a, at(b, c));
        if n <= EXHAUSTIVE_CHECK_ORDER {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if assoc_fail(a, b, c) {
                            return Err(Error::MalformedTable(format!(
                                "not associative at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut r = rng::seeded(0);
            for _ in 0..RANDOM_ASSOCIATIVITY_TRIPLES {
                let (a, b, c) = (r.gen_range(0..n), r.gen_range(0..n), r.gen_range(0..n));
                if assoc_fail(a, b, c) {
                    return Err(Error::MalformedTable(format!(
                        "not associative at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        Ok(FiniteGroup {
            descriptor: label.to_string(),
            kind: GroupKind::Table,
            order: n,
            identity,
            repr: Repr::Table,
            inverses,
            table: Some(table),
        })
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    #[inline]
    pub fn mult(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order + b] as usize,
            None => self.structured_mult(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    /// Range-checked product.
    pub fn element_mult(&self, a: usize, b: usize) -> Result<usize> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mult(a, b))
    }

    /// Range-checked inverse.
    pub fn element_inv(&self, a: usize) -> Result<usize> {
        self.check(a)?;
        Ok(self.inv(a))
    }

    pub fn check(&self, a: usize) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                index: a,
                order: self.order,
            })
        }
    }

    /// `g x g⁻¹`
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mult(self.mult(g, x), self.inv(g))
    }

    pub fn pow(&self, x: usize, e: usize) -> usize {
        let mut acc = self.identity;
        for _ in 0..e {
            acc = self.mult(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mult(y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        let mut orders: Vec<usize> = (0..self.order).map(|x| self.element_order(x)).collect();
        orders.sort_unstable();
        orders.dedup();
        orders.into_iter().fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mult(a, b) == self.mult(b, a)))
    }

    /// Permutation images of `x` for symmetric and alternating groups.
    pub fn permutation(&self, x: usize) -> Option<Vec<usize>> {
        match &self.repr {
            Repr::Perm(p) => Some(p.images(x).iter().map(|&i| i as usize).collect()),
            _ => None,
        }
    }

    /// Number of points permuted by a symmetric or alternating group.
    pub fn degree(&self) -> Option<usize> {
        match &self.repr {
            Repr::Perm(p) => Some(p.degree()),
            _ => None,
        }
    }

    /// Canonical matrix representative `[a, b, c, d]` of a PSL₂ element.
    pub fn psl2_matrix(&self, x: usize) -> Option<[u32; 4]> {
        match &self.repr {
            Repr::Psl2(p) => Some(p.matrix(x)),
            _ => None,
        }
    }

    /// Field size of a PSL₂ group.
    pub fn psl2_q(&self) -> Option<u32> {
        match &self.repr {
            Repr::Psl2(p) => Some(p.q()),
            _ => None,
        }
    }

    /// Index of the PSL₂ element represented by the matrix (either sign).
    pub fn psl2_index(&self, m: [u32; 4]) -> Option<usize> {
        match &self.repr {
            Repr::Psl2(p) => Some(p.index_of(m)),
            _ => None,
        }
    }

    /// Checks the group axioms: identity and inverse laws, the Latin-square
    /// property and associativity (exhaustive up to
    /// [`EXHAUSTIVE_CHECK_ORDER`], otherwise `random_triples` seeded samples).
    pub fn validate(&self, random_triples: usize, seed: u64) -> Result<()> {
        let n = self.order;
        let e = self.identity;
        for x in 0..n {
            if self.mult(e, x) != x || self.mult(x, e) != x {
                return Err(Error::Internal(format!("identity law fails at {x}")));
            }
            if self.mult(x, self.inv(x)) != e || self.mult(self.inv(x), x) != e {
                return Err(Error::Internal(format!("inverse law fails at {x}")));
            }
        }
        if n <= EXHAUSTIVE_CHECK_ORDER {
            let mut seen = vec![usize::MAX; n];
            for a in 0..n {
                for b in 0..n {
                    let v = self.mult(a, b);
                    if seen[v] == a {
                        return Err(Error::Internal(format!("row {a} is not a permutation")));
                    }
                    seen[v] = a;
                }
            }
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mult(a, b);
                    for c in 0..n {
                        if self.mult(ab, c) != self.mult(a, self.mult(b, c)) {
                            return Err(Error::Internal(format!(
                                "associativity fails at ({a}, {b}, {c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut r = rng::seeded(seed);
            for _ in 0..random_triples {
                let (a, b, c) = (r.gen_range(0..n), r.gen_range(0..n), r.gen_range(0..n));
                if self.mult(self.mult(a, b), c) != self.mult(a, self.mult(b, c)) {
                    return Err(Error::Internal(format!(
                        "associativity fails at ({a}, {b}, {c})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Cayley-table export: the order on the first line, then one line per
    /// row with `mult(i, j)` for `j = 0..n` separated by single spaces.
    pub fn export_cayley_table(&self) -> String {
        let n = self.order;
        let mut out = String::with_capacity(n * n * 4 + 16);
        out.push_str(&n.to_string());
        out.push('\n');
        for a in 0..n {
            for b in 0..n {
                if b > 0 {
                    out.push(' ');
                }
                out.push_str(&self.mult(a, b).to_string());
            }
            out.push('\n');
        }
        out
    }

    fn structured_identity(&self) -> usize {
        match &self.repr {
            Repr::Cyclic | Repr::Dihedral { .. } | Repr::Perm(_) => 0,
            Repr::Psl2(p) => p.index_of([1, 0, 0, 1]),
            Repr::Product(a, b) => a.identity * b.order + b.identity,
            Repr::Table => unreachable!("table groups set their identity on load"),
        }
    }

    fn structured_mult(&self, x: usize, y: usize) -> usize {
        match &self.repr {
            Repr::Cyclic => {
                let s = x + y;
                if s >= self.order {
                    s - self.order
                } else {
                    s
                }
            }
            Repr::Dihedral { rotations: n } => {
                // index = flip * n + rotation, element r^rotation s^flip
                let (r1, f1) = (x % n, x / n);
                let (r2, f2) = (y % n, y / n);
                let r = if f1 == 0 { (r1 + r2) % n } else { (r1 + n - r2) % n };
                (f1 ^ f2) * n + r
            }
            Repr::Perm(p) => p.mult(x, y),
            Repr::Psl2(p) => p.mult(x, y),
            Repr::Product(a, b) => {
                let m = b.order;
                a.mult(x / m, y / m) * m + b.mult(x % m, y % m)
            }
            Repr::Table => unreachable!("table groups always carry their table"),
        }
    }

    fn structured_inv(&self, x: usize) -> usize {
        match &self.repr {
            Repr::Cyclic => (self.order - x) % self.order,
            Repr::Dihedral { rotations: n } => {
                if x < *n {
                    (n - x) % n
                } else {
                    x
                }
            }
            Repr::Perm(p) => p.inv(x),
            Repr::Psl2(p) => p.inv(x),
            Repr::Product(a, b) => {
                let m = b.order;
                a.inv(x / m) * m + b.inv(x % m)
            }
            Repr::Table => unreachable!("table groups set their inverses on load"),
        }
    }
}

/// Parses a Cayley-table file: the order `n` on the first line followed by
/// `n` lines of `n` whitespace-separated indices.
pub fn parse_cayley_table(text: &str) -> Result<Vec<Vec<usize>>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::MalformedTable("empty file".into()))?
        .trim()
        .parse()
        .map_err(|_| Error::MalformedTable("first line must be the order".into()))?;
    let mut rows = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::MalformedTable(format!("bad entry `{t}` in row {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::MalformedTable(format!(
            "expected {n} rows, found {}",
            rows.len()
        )));
    }
    Ok(rows)
}

fn check_range(label: &str, v: usize, lo: usize, hi: usize) -> Result<()> {
    if v < lo || v > hi {
        Err(Error::descriptor(
            label,
            format!("parameter {v} outside supported range {lo}..={hi}"),
        ))
    } else {
        Ok(())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}
