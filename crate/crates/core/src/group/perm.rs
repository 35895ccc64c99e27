//! Symmetric and alternating groups on at most eight points.
//!
//! Permutations are stored as image arrays (`p[i]` is the image of `i`) and
//! indexed by their lexicographic rank among the permutations of the group.
//! The product `ab` is the composition `a ∘ b`, i.e. `b` is applied first.

pub(crate) const MAX_DEGREE: usize = 8;

#[derive(Debug, Clone)]
pub(crate) struct PermGroup {
    degree: usize,
    /// `images[idx * degree + i]` is the image of point `i` under element `idx`.
    images: Vec<u8>,
    /// Maps the lexicographic rank in the full symmetric group to the element
    /// index, or `u32::MAX` for permutations outside the group.
    rank_to_index: Vec<u32>,
    factorials: [usize; MAX_DEGREE + 1],
}

impl PermGroup {
    pub(crate) fn symmetric(degree: usize) -> Self {
        Self::build(degree, false)
    }

    pub(crate) fn alternating(degree: usize) -> Self {
        Self::build(degree, true)
    }

    fn build(degree: usize, even_only: bool) -> Self {
        let mut factorials = [1usize; MAX_DEGREE + 1];
        for i in 1..=MAX_DEGREE {
            factorials[i] = factorials[i - 1] * i;
        }
        let total = factorials[degree];
        let mut images = Vec::with_capacity(total * degree);
        let mut rank_to_index = vec![u32::MAX; total];
        let mut perm: Vec<u8> = (0..degree as u8).collect();
        let mut rank = 0usize;
        let mut count = 0u32;
        loop {
            if !even_only || is_even(&perm) {
                images.extend_from_slice(&perm);
                rank_to_index[rank] = count;
                count += 1;
            }
            rank += 1;
            if !next_permutation(&mut perm) {
                break;
            }
        }
        PermGroup {
            degree,
            images,
            rank_to_index,
            factorials,
        }
    }

    pub(crate) fn degree(&self) -> usize {
        self.degree
    }

    pub(crate) fn order(&self) -> usize {
        self.images.len() / self.degree
    }

    pub(crate) fn images(&self, idx: usize) -> &[u8] {
        &self.images[idx * self.degree..(idx + 1) * self.degree]
    }

    fn lex_rank(&self, p: &[u8]) -> usize {
        let d = self.degree;
        let mut rank = 0;
        for i in 0..d {
            let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
            rank += smaller * self.factorials[d - 1 - i];
        }
        rank
    }

    pub(crate) fn index_of(&self, p: &[u8]) -> usize {
        let idx = self.rank_to_index[self.lex_rank(p)];
        debug_assert!(idx != u32::MAX, "permutation outside the group");
        idx as usize
    }

    pub(crate) fn mult(&self, a: usize, b: usize) -> usize {
        let (pa, pb) = (self.images(a), self.images(b));
        let mut c = [0u8; MAX_DEGREE];
        for i in 0..self.degree {
            c[i] = pa[pb[i] as usize];
        }
        self.index_of(&c[..self.degree])
    }

    pub(crate) fn inv(&self, a: usize) -> usize {
        let pa = self.images(a);
        let mut c = [0u8; MAX_DEGREE];
        for i in 0..self.degree {
            c[pa[i] as usize] = i as u8;
        }
        self.index_of(&c[..self.degree])
    }
}

fn is_even(p: &[u8]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn next_permutation(p: &mut [u8]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(PermGroup::symmetric(4).order(), 24);
        assert_eq!(PermGroup::alternating(5).order(), 60);
        assert_eq!(PermGroup::alternating(3).order(), 3);
    }

    #[test]
    fn identity_is_index_zero_and_rank_roundtrips() {
        let g = PermGroup::symmetric(5);
        assert_eq!(g.images(0), &[0, 1, 2, 3, 4]);
        for idx in 0..g.order() {
            assert_eq!(g.index_of(g.images(idx)), idx);
        }
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let g = PermGroup::symmetric(3);
        // (0 1) and (1 2) as image arrays
        let a = g.index_of(&[1, 0, 2]);
        let b = g.index_of(&[0, 2, 1]);
        let ab = g.mult(a, b);
        // a(b(0)) = 1, a(b(1)) = a(2) = 2, a(b(2)) = a(1) = 0
        assert_eq!(g.images(ab), &[1, 2, 0]);
    }
}
