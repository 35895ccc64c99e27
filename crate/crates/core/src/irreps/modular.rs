//! Linear algebra over the prime field ℤ/p for moduli below 2³¹.

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "zero has no inverse");
    pow_mod(a, p - 2, p)
}

pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    (a + p - b % p) % p
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of multiplicative order exactly `e` modulo the prime `p`,
/// where `e` divides `p - 1`.
pub(crate) fn root_of_unity(e: u64, p: u64) -> u64 {
    let factors = prime_factors(e);
    for a in 2..p {
        let z = pow_mod(a, (p - 1) / e, p);
        if factors.iter().all(|&f| pow_mod(z, e / f, p) != 1) {
            return z;
        }
    }
    1 // only reachable for e = 1
}

/// Reduces `rows` to reduced row echelon form in place and returns the
/// pivot column of each nonzero row (zero rows are dropped).
pub(crate) fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = sub_mod(rows[i][j], f * rows[r][j] % p, p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : M x = 0}` for a square or rectangular matrix given by rows.
pub(crate) fn nullspace(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let cols = m.first().map_or(0, Vec::len);
    let mut rows = m.to_vec();
    let pivots = rref(&mut rows, p);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &pc) in rows.iter().zip(&pivots) {
            v[pc] = sub_mod(0, row[free], p);
        }
        basis.push(v);
    }
    basis
}

/// Characteristic polynomial `det(xI − M)`, coefficients from the constant
/// term upwards, via reduction to Hessenberg form.
pub(crate) fn charpoly(m: &[Vec<u64>], p: u64) -> Vec<u64> {
    let d = m.len();
    let mut h: Vec<Vec<u64>> = m.to_vec();
    for j in 0..d.saturating_sub(2) {
        let Some(i) = (j + 1..d).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let inv = inv_mod(h[j + 1][j], p);
        for i2 in j + 2..d {
            let u = h[i2][j] * inv % p;
            if u == 0 {
                continue;
            }
            for c in 0..d {
                h[i2][c] = sub_mod(h[i2][c], u * h[j + 1][c] % p, p);
            }
            for row in h.iter_mut() {
                row[j + 1] = (row[j + 1] + u * row[i2]) % p;
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for mm in 1..=d {
        let prev = &polys[mm - 1];
        // (x - h_mm) * prev
        let mut pm = vec![0u64; mm + 1];
        for (k, &c) in prev.iter().enumerate() {
            pm[k + 1] = (pm[k + 1] + c) % p;
            pm[k] = sub_mod(pm[k], c * h[mm - 1][mm - 1] % p, p);
        }
        let mut t = 1u64;
        for i in (1..mm).rev() {
            t = t * h[i][i - 1] % p;
            let coef = h[i - 1][mm - 1] * t % p;
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[i - 1].iter().enumerate() {
                pm[k] = sub_mod(pm[k], coef * c % p, p);
            }
        }
        polys.push(pm);
    }
    polys.pop().unwrap_or_else(|| vec![1])
}

/// All roots in ℤ/p, by exhaustive evaluation.
pub(crate) fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| poly.iter().rev().fold(0u64, |acc, &c| (acc * x + c) % p) == 0)
        .collect()
}
