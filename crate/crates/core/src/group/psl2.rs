//! PSL₂(q) for an odd prime q.
//!
//! Each element is a ±pair of determinant-one 2×2 matrices over ℤ/q. The pair
//! is represented by the member whose first nonzero entry, read in row-major
//! order, lies in `1..=(q-1)/2`. Elements are indexed by the lexicographic
//! order of these representatives, so the index of a representative is its
//! position in a sorted key list.

#[derive(Debug, Clone)]
pub(crate) struct Psl2 {
    q: u32,
    /// Row-major entries `[a, b, c, d]` of each representative.
    mats: Vec<[u32; 4]>,
    /// Sorted packed keys, parallel to `mats`.
    keys: Vec<u64>,
}

impl Psl2 {
    pub(crate) fn new(q: u32) -> Self {
        let half = (q - 1) / 2;
        let expected = q as usize * (q as usize * q as usize - 1) / 2;
        let mut mats = Vec::with_capacity(expected);
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    // first nonzero entry must be in 1..=half
                    let lead = [a, b, c].into_iter().find(|&x| x != 0);
                    if let Some(l) = lead {
                        if l > half {
                            continue;
                        }
                    }
                    if a != 0 {
                        // d = (1 + bc) / a
                        let d = mul(add(1, mul(b, c, q), q), inv_mod(a, q), q);
                        mats.push([a, b, c, d]);
                    } else {
                        // a = 0 forces -bc = 1, so d is free
                        if mul(b, c, q) != q - 1 {
                            continue;
                        }
                        for d in 0..q {
                            mats.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        debug_assert_eq!(mats.len(), expected);
        let keys = mats.iter().map(|m| pack(m, q)).collect::<Vec<_>>();
        debug_assert!(keys.windows(2).all(|w| w[0] < w[1]));
        Psl2 { q, mats, keys }
    }

    pub(crate) fn q(&self) -> u32 {
        self.q
    }

    pub(crate) fn order(&self) -> usize {
        self.mats.len()
    }

    pub(crate) fn matrix(&self, idx: usize) -> [u32; 4] {
        self.mats[idx]
    }

    pub(crate) fn index_of(&self, m: [u32; 4]) -> usize {
        let m = canonicalize(m, self.q);
        self.keys
            .binary_search(&pack(&m, self.q))
            .expect("canonical representative of a determinant-one matrix")
    }

    pub(crate) fn mult(&self, x: usize, y: usize) -> usize {
        self.index_of(mat_mul(self.mats[x], self.mats[y], self.q))
    }

    pub(crate) fn inv(&self, x: usize) -> usize {
        let [a, b, c, d] = self.mats[x];
        let q = self.q;
        self.index_of([d, neg(b, q), neg(c, q), a])
    }
}

pub(crate) fn mat_mul(x: [u32; 4], y: [u32; 4], q: u32) -> [u32; 4] {
    let q64 = q as u64;
    let e = |i: usize, j: usize, k: usize, l: usize| {
        ((x[i] as u64 * y[j] as u64 + x[k] as u64 * y[l] as u64) % q64) as u32
    };
    [e(0, 0, 1, 2), e(0, 1, 1, 3), e(2, 0, 3, 2), e(2, 1, 3, 3)]
}

pub(crate) fn canonicalize(m: [u32; 4], q: u32) -> [u32; 4] {
    let half = (q - 1) / 2;
    match m.iter().find(|&&x| x != 0) {
        Some(&l) if l > half => m.map(|x| neg(x, q)),
        _ => m,
    }
}

fn pack(m: &[u32; 4], q: u32) -> u64 {
    let q = q as u64;
    ((m[0] as u64 * q + m[1] as u64) * q + m[2] as u64) * q + m[3] as u64
}

fn add(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 + b as u64) % q as u64) as u32
}

fn mul(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 * b as u64) % q as u64) as u32
}

fn neg(a: u32, q: u32) -> u32 {
    if a == 0 {
        0
    } else {
        q - a
    }
}

fn inv_mod(a: u32, q: u32) -> u32 {
    // q is prime
    let mut result = 1u64;
    let mut base = a as u64 % q as u64;
    let mut e = q as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % q as u64;
        }
        base = base * base % q as u64;
        e >>= 1;
    }
    result as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_formula() {
        for q in [5u32, 7, 11, 13] {
            let g = Psl2::new(q);
            assert_eq!(g.order(), (q * (q * q - 1) / 2) as usize);
        }
    }

    #[test]
    fn identity_representative() {
        let g = Psl2::new(7);
        let e = g.index_of([1, 0, 0, 1]);
        assert_eq!(g.matrix(e), [1, 0, 0, 1]);
        assert_eq!(g.index_of([6, 0, 0, 6]), e);
    }

    #[test]
    fn representatives_are_canonical_with_unit_determinant() {
        let q = 11;
        let g = Psl2::new(q);
        for i in 0..g.order() {
            let m = g.matrix(i);
            assert_eq!(canonicalize(m, q), m);
            let det = (m[0] as i64 * m[3] as i64 - m[1] as i64 * m[2] as i64).rem_euclid(q as i64);
            assert_eq!(det, 1);
        }
    }
}
