//! Complex character tables by the Burnside–Dixon method.
//!
//! Class multiplication coefficients are diagonalised simultaneously over a
//! prime field ℤ/ℓ with ℓ ≡ 1 (mod exponent), which yields the characters
//! modulo ℓ; each value is then lifted to ℂ through the eigenvalue
//! multiplicities of the cyclic subgroup generated by a class
//! representative.

mod modular;

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{is_prime, FiniteGroup, GroupKind};
use modular::{charpoly, inv_mod, nullspace, pow_mod, roots, rref, root_of_unity, sub_mod};

/// Default cap on the group order for character-table computation.
pub const DEFAULT_CHARTAB_CAP: usize = 5000;
/// Cap on the number of conjugacy classes.
pub const MAX_CLASSES: usize = 40;
/// Upper limit of the search for a suitable prime modulus.
pub const MODULUS_SEARCH_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub group: String,
    pub order: usize,
    pub class_representatives: Vec<usize>,
    pub class_sizes: Vec<usize>,
    pub element_orders: Vec<usize>,
    /// Class index of every group element.
    pub class_of: Vec<usize>,
    /// Degrees of the irreducible characters, trivial character first.
    pub dims: Vec<usize>,
    /// `values[i][j]` is character `i` on class `j`.
    pub values: Vec<Vec<Complex64>>,
    pub modulus: u64,
    /// Largest deviation in the row and column orthogonality relations.
    pub orthogonality_residual: f64,
}

impl CharacterTable {
    pub fn num_classes(&self) -> usize {
        self.class_sizes.len()
    }

    /// Character `i` evaluated at group element `x`.
    pub fn value_at(&self, i: usize, x: usize) -> Complex64 {
        self.values[i][self.class_of[x]]
    }

    /// Smallest degree of a nontrivial irreducible character, if any.
    pub fn min_nontrivial_dim(&self) -> Option<usize> {
        self.dims.iter().skip(1).copied().min()
    }

    /// Index of a nontrivial degree-one character, if the group has one.
    pub fn nontrivial_linear_character(&self) -> Option<usize> {
        (1..self.dims.len()).find(|&i| self.dims[i] == 1)
    }
}

#[derive(Serialize)]
struct CharacterTableJson<'a> {
    group: &'a str,
    order: usize,
    modulus: u64,
    class_representatives: &'a [usize],
    class_sizes: &'a [usize],
    element_orders: &'a [usize],
    dims: &'a [usize],
    re: Vec<Vec<f64>>,
    im: Vec<Vec<f64>>,
    orthogonality_residual: f64,
}

impl Serialize for CharacterTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let part = |f: fn(&Complex64) -> f64| -> Vec<Vec<f64>> {
            self.values.iter().map(|row| row.iter().map(f).collect()).collect()
        };
        CharacterTableJson {
            group: &self.group,
            order: self.order,
            modulus: self.modulus,
            class_representatives: &self.class_representatives,
            class_sizes: &self.class_sizes,
            element_orders: &self.element_orders,
            dims: &self.dims,
            re: part(|z| z.re),
            im: part(|z| z.im),
            orthogonality_residual: self.orthogonality_residual,
        }
        .serialize(s)
    }
}

/// Smallest prime `ℓ = 1 + t·e` with `ℓ > 2√n`.
fn find_modulus(exponent: u64, order: u64) -> Result<u64> {
    let floor = 2.0 * (order as f64).sqrt();
    let mut l = 1 + exponent;
    while l < MODULUS_SEARCH_LIMIT {
        if (l as f64) > floor && is_prime(l) {
            return Ok(l);
        }
        l += exponent;
    }
    Err(Error::NoModulus(MODULUS_SEARCH_LIMIT))
}

pub fn character_table(g: &FiniteGroup) -> Result<CharacterTable> {
    character_table_capped(g, DEFAULT_CHARTAB_CAP)
}

pub fn character_table_capped(g: &FiniteGroup, cap: usize) -> Result<CharacterTable> {
    let n = g.order();
    if n > cap {
        return Err(Error::CapExceeded { what: "group order for character table", size: n, cap });
    }
    let classes = g.conjugacy_classes_capped(cap)?;
    let r = classes.len();
    if r > MAX_CLASSES {
        return Err(Error::CapExceeded { what: "number of conjugacy classes", size: r, cap: MAX_CLASSES });
    }
    let reps = classes.representatives();
    let sizes = classes.sizes();
    let class_of = &classes.class_of;
    let e = g.exponent() as u64;
    let p = find_modulus(e, n as u64)?;
    let id_class = class_of[g.identity()];

    // coeff[j][k][l] = #{(x, y) ∈ C_j × C_k : x y = z_l}
    let mut coeff = vec![vec![vec![0u64; r]; r]; r];
    for (j, class) in classes.classes.iter().enumerate() {
        for &x in class {
            let xi = g.inv(x);
            for (l, &z) in reps.iter().enumerate() {
                coeff[j][class_of[g.mult(xi, z)]][l] += 1;
            }
        }
    }

    let spaces = split_eigenspaces(&coeff, id_class, p)?;
    if spaces.len() != r {
        return Err(Error::CharacterTable(format!(
            "found {} common eigenvectors for {r} classes",
            spaces.len()
        )));
    }

    let inverse_class: Vec<usize> = reps.iter().map(|&x| class_of[g.inv(x)]).collect();
    let element_orders: Vec<usize> = reps.iter().map(|&x| g.element_order(x)).collect();
    let z = root_of_unity(e, p);

    let mut rows: Vec<(usize, Vec<u64>, Vec<Complex64>)> = Vec::with_capacity(r);
    for w in spaces {
        let w0 = w[id_class];
        if w0 == 0 {
            return Err(Error::CharacterTable("eigenvector vanishes at the identity".into()));
        }
        let inv0 = inv_mod(w0, p);
        let omega: Vec<u64> = w.iter().map(|&v| v * inv0 % p).collect();
        let mut s = 0u64;
        for j in 0..r {
            let term = omega[j] * omega[inverse_class[j]] % p * inv_mod(sizes[j] as u64 % p, p) % p;
            s = (s + term) % p;
        }
        if s == 0 {
            return Err(Error::CharacterTable("degenerate norm for a class eigenvector".into()));
        }
        let d_sq = (n as u64 % p) * inv_mod(s, p) % p;
        let dim = (1..=(n as f64).sqrt() as u64 + 1)
            .find(|&d| d * d <= n as u64 && d * d % p == d_sq)
            .ok_or_else(|| Error::CharacterTable("no admissible degree for a character".into()))?;
        let chi_mod: Vec<u64> = (0..r)
            .map(|j| dim * omega[j] % p * inv_mod(sizes[j] as u64 % p, p) % p)
            .collect();
        let mut chi = Vec::with_capacity(r);
        for (j, &x) in reps.iter().enumerate() {
            chi.push(lift_value(g, x, element_orders[j], &chi_mod, class_of, dim, z, e, p)?);
        }
        rows.push((dim as usize, omega, chi));
    }

    rows.sort_by(|a, b| {
        let a_triv = a.1.iter().zip(&sizes).all(|(&w, &s)| w == s as u64 % p);
        let b_triv = b.1.iter().zip(&sizes).all(|(&w, &s)| w == s as u64 % p);
        b_triv.cmp(&a_triv).then(a.0.cmp(&b.0)).then_with(|| a.1.cmp(&b.1))
    });

    let dims: Vec<usize> = rows.iter().map(|r| r.0).collect();
    let values: Vec<Vec<Complex64>> = rows.into_iter().map(|r| r.2).collect();
    let dim_sq: usize = dims.iter().map(|d| d * d).sum();
    if dim_sq != n {
        return Err(Error::CharacterTable(format!(
            "squared degrees sum to {dim_sq}, expected {n}"
        )));
    }
    let residual = orthogonality_residual(&values, &sizes, n);
    if residual > 1e-6 * n as f64 {
        return Err(Error::CharacterTable(format!("orthogonality residual {residual:.3e}")));
    }

    Ok(CharacterTable {
        group: g.descriptor().to_string(),
        order: n,
        class_representatives: reps,
        class_sizes: sizes,
        element_orders,
        class_of: classes.class_of.clone(),
        dims,
        values,
        modulus: p,
        orthogonality_residual: residual,
    })
}

/// Common eigenvectors of all class matrices `M_j[k][l] = coeff[j][k][l]`,
/// acting on column vectors.
fn split_eigenspaces(coeff: &[Vec<Vec<u64>>], id_class: usize, p: u64) -> Result<Vec<Vec<u64>>> {
    let r = coeff.len();
    let identity: Vec<Vec<u64>> =
        (0..r).map(|i| (0..r).map(|j| u64::from(i == j)).collect()).collect();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![identity];
    for (j, m) in coeff.iter().enumerate() {
        if j == id_class {
            continue;
        }
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(spaces.len());
        for mut basis in spaces {
            if basis.len() == 1 {
                next.push(basis);
                continue;
            }
            let pivots = rref(&mut basis, p);
            let d = basis.len();
            // images of the basis vectors, expressed in basis coordinates
            let images: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| (0..r).map(|k| (0..r).map(|l| m[k][l] * b[l] % p).sum::<u64>() % p).collect())
                .collect();
            let restricted: Vec<Vec<u64>> =
                (0..d).map(|row| (0..d).map(|col| images[col][pivots[row]]).collect()).collect();
            let eigenvalues = roots(&charpoly(&restricted, p), p);
            let mut found = 0;
            for lambda in eigenvalues {
                let shifted: Vec<Vec<u64>> = restricted
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(c, &v)| if i == c { sub_mod(v, lambda, p) } else { v })
                            .collect()
                    })
                    .collect();
                let coords = nullspace(&shifted, p);
                found += coords.len();
                let sub: Vec<Vec<u64>> = coords
                    .iter()
                    .map(|c| {
                        (0..r)
                            .map(|k| c.iter().zip(&basis).map(|(ci, b)| ci * b[k] % p).sum::<u64>() % p)
                            .collect()
                    })
                    .collect();
                next.push(sub);
            }
            if found != d {
                return Err(Error::CharacterTable(
                    "class matrix is not diagonalisable over the chosen field".into(),
                ));
            }
        }
        spaces = next;
    }
    if spaces.iter().any(|s| s.len() != 1) {
        return Err(Error::CharacterTable("class matrices do not separate all characters".into()));
    }
    Ok(spaces.into_iter().map(|mut s| s.pop().unwrap_or_default()).collect())
}

#[allow(clippy::too_many_arguments)]
fn lift_value(
    g: &FiniteGroup,
    x: usize,
    o: usize,
    chi_mod: &[u64],
    class_of: &[usize],
    dim: u64,
    z: u64,
    e: u64,
    p: u64,
) -> Result<Complex64> {
    let zo = pow_mod(z, e / o as u64, p);
    let zo_inv = inv_mod(zo, p);
    let inv_o = inv_mod(o as u64 % p, p);
    let powers: Vec<u64> = {
        let mut acc = g.identity();
        (0..o)
            .map(|_| {
                let v = chi_mod[class_of[acc]];
                acc = g.mult(acc, x);
                v
            })
            .collect()
    };
    let mut value = Complex64::new(0.0, 0.0);
    let mut total = 0u64;
    for s in 0..o as u64 {
        let step = pow_mod(zo_inv, s, p);
        let mut twiddle = 1u64;
        let mut acc = 0u64;
        for &v in &powers {
            acc = (acc + v * twiddle) % p;
            twiddle = twiddle * step % p;
        }
        let m = acc * inv_o % p;
        if m > dim {
            return Err(Error::CharacterTable(format!(
                "eigenvalue multiplicity {m} exceeds degree {dim}"
            )));
        }
        total += m;
        if m > 0 {
            let angle = 2.0 * PI * s as f64 / o as f64;
            value += Complex64::from_polar(m as f64, angle);
        }
    }
    if total != dim {
        return Err(Error::CharacterTable("eigenvalue multiplicities do not add up".into()));
    }
    let snap = |v: f64| {
        let r = v.round();
        if (v - r).abs() < 1e-9 { r + 0.0 } else { v }
    };
    Ok(Complex64::new(snap(value.re), snap(value.im)))
}

fn orthogonality_residual(values: &[Vec<Complex64>], sizes: &[usize], n: usize) -> f64 {
    let r = sizes.len();
    let mut worst = 0.0f64;
    for a in 0..values.len() {
        for b in a..values.len() {
            let ip: Complex64 =
                (0..r).map(|j| values[a][j] * values[b][j].conj() * sizes[j] as f64).sum();
            let target = if a == b { n as f64 } else { 0.0 };
            worst = worst.max((ip - target).norm());
        }
    }
    for j in 0..r {
        for k in j..r {
            let ip: Complex64 = values.iter().map(|row| row[j] * row[k].conj()).sum();
            let target = if j == k { n as f64 / sizes[j] as f64 } else { 0.0 };
            worst = worst.max((ip - target).norm() * sizes[j] as f64);
        }
    }
    worst
}

/// Smallest degree of a nontrivial irreducible complex representation.
pub fn min_nontrivial_irrep_dim(g: &FiniteGroup) -> Result<usize> {
    character_table(g)?
        .min_nontrivial_dim()
        .ok_or_else(|| Error::InvalidArgument("the trivial group has no nontrivial representation".into()))
}

/// Lower bound used to compare against the computed minimal degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepBoundContext {
    /// `k ≥ (q − 1)/2` for PSL₂(q).
    Psl2,
    /// `k ≥ √(ln n)/2` for a nonabelian simple group.
    Simple,
}

#[derive(Debug, Clone, Serialize)]
pub struct RepBoundReport {
    pub group: String,
    pub context: RepBoundContext,
    pub k: usize,
    pub bound: f64,
    pub pass: bool,
}

pub fn verify_rep_bounds(g: &FiniteGroup, context: RepBoundContext) -> Result<RepBoundReport> {
    let bound = match context {
        RepBoundContext::Psl2 => {
            let q = g.psl2_q().ok_or_else(|| {
                Error::InvalidArgument(format!("`{}` is not a PSL2 group", g.descriptor()))
            })?;
            (q as f64 - 1.0) / 2.0
        }
        RepBoundContext::Simple => (g.order() as f64).ln().sqrt() / 2.0,
    };
    let k = min_nontrivial_irrep_dim(g)?;
    Ok(RepBoundReport {
        group: g.descriptor().to_string(),
        context,
        k,
        bound,
        pass: k as f64 >= bound,
    })
}

/// Closed-form minimal nontrivial degree where one is known: `(q + 1)/2`
/// or `(q − 1)/2` for PSL₂(q) as `q ≡ 1` or `3 (mod 4)`, 1 for Sym(n) (the sign), `n − 1` for Alt(n) with `n ≥ 7`.
pub fn known_min_dim(g: &FiniteGroup) -> Option<usize> {
    match g.kind() {
        GroupKind::Psl2 => g
            .psl2_q()
            .map(|q| if q % 4 == 1 { (q as usize + 1) / 2 } else { (q as usize - 1) / 2 }),
        GroupKind::Symmetric => g.degree().filter(|&d| d >= 3).map(|_| 1),
        GroupKind::Alternating => match g.degree()? {
            5 => Some(3),
            6 => Some(5),
            d if d >= 7 => Some(d - 1),
            _ => None,
        },
        _ => None,
    }
}
