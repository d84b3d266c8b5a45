//! Permutations and the two homomorphisms used by the equivariance axioms.
//!
//! A permutation of degree `k` is stored as its image sequence over `0..k`.
//! Composition follows the right-action convention of symmetric
//! multicategories: `(f·σ)·σ' = f·(σσ')` where `σσ'` applies `σ'` first.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::KernelError;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    image: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm {
            image: (0..degree).collect(),
        }
    }

    /// Builds a permutation from a 0-based image sequence.
    pub fn from_image(image: Vec<usize>) -> Result<Perm, KernelError> {
        let mut seen = vec![false; image.len()];
        for &i in &image {
            if i >= image.len() || seen[i] {
                return Err(KernelError::NotAPermutation(image));
            }
            seen[i] = true;
        }
        Ok(Perm { image })
    }

    /// Builds a permutation from a 1-based image sequence, the notation used in
    /// presentation files.
    pub fn from_one_based(image: &[usize]) -> Result<Perm, KernelError> {
        if image.contains(&0) {
            return Err(KernelError::NotAPermutation(image.to_vec()));
        }
        Perm::from_image(image.iter().map(|i| i - 1).collect())
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Perm {
        let mut image: Vec<usize> = (0..degree).collect();
        image.swap(a, b);
        Perm { image }
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Perm {
        let mut image = vec![0; self.image.len()];
        for (i, &j) in self.image.iter().enumerate() {
            image[j] = i;
        }
        Perm { image }
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Result<Perm, KernelError> {
        if self.degree() != other.degree() {
            return Err(KernelError::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Perm {
            image: other.image.iter().map(|&i| self.image[i]).collect(),
        })
    }

    /// Rearranges `items` so that position `j` of the result holds
    /// `items[self(j)]`. This is how the action reorders a source list:
    /// `s(f·σ)_j = s(f)_{σ(j)}`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        debug_assert_eq!(items.len(), self.degree());
        self.image.iter().map(|&i| items[i].clone()).collect()
    }

    /// The block permutation induced by `self` on blocks of sizes `arities`
    /// (listed in the original block order). Position `j` of the result lies in
    /// block `self(i)` of the original arrangement, with relative order kept.
    pub fn block(&self, arities: &[usize]) -> Result<Perm, KernelError> {
        if arities.len() != self.degree() {
            return Err(KernelError::DegreeMismatch {
                left: self.degree(),
                right: arities.len(),
            });
        }
        let mut offsets = Vec::with_capacity(arities.len());
        let mut acc = 0;
        for &m in arities {
            offsets.push(acc);
            acc += m;
        }
        let mut image = Vec::with_capacity(acc);
        for &b in &self.image {
            image.extend(offsets[b]..offsets[b] + arities[b]);
        }
        Ok(Perm { image })
    }

    /// Block-diagonal juxtaposition `σ_1 ⊕ … ⊕ σ_k`.
    pub fn juxtapose(parts: &[Perm]) -> Perm {
        let mut image = Vec::with_capacity(parts.iter().map(Perm::degree).sum());
        let mut offset = 0;
        for p in parts {
            image.extend(p.image.iter().map(|&i| i + offset));
            offset += p.degree();
        }
        Perm { image }
    }

    /// All permutations of the given degree in lexicographic image order.
    pub fn all(degree: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..degree).collect();
        loop {
            out.push(Perm { image: current.clone() });
            // next lexicographic permutation
            let Some(i) = (1..current.len()).rev().find(|&i| current[i - 1] < current[i]) else {
                break;
            };
            let j = (i..current.len())
                .rev()
                .find(|&j| current[j] > current[i - 1])
                .expect("pivot successor exists");
            current.swap(i - 1, j);
            current[i..].reverse();
        }
        out
    }

    pub fn random<R: rand::Rng + ?Sized>(degree: usize, rng: &mut R) -> Perm {
        use rand::seq::SliceRandom;
        let mut image: Vec<usize> = (0..degree).collect();
        image.shuffle(rng);
        Perm { image }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (n, i) in self.image.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "]")
    }
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = KernelError;

    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        Perm::from_one_based(&v)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.image.iter().map(|i| i + 1).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    // Index-chasing oracle: σσ' sends i to σ(σ'(i)).
    fn compose_oracle(a: &[usize], b: &[usize]) -> Vec<usize> {
        (0..a.len()).map(|i| a[b[i]]).collect()
    }

    // Brute-force block relabelling: list (block, offset) pairs in the new
    // order and look up their old global index.
    fn block_oracle(sigma: &[usize], arities: &[usize]) -> Vec<usize> {
        let mut old = Vec::new();
        for (b, &m) in arities.iter().enumerate() {
            for t in 0..m {
                old.push((b, t));
            }
        }
        let mut out = Vec::new();
        for &b in sigma {
            for t in 0..arities[b] {
                out.push(old.iter().position(|&x| x == (b, t)).unwrap());
            }
        }
        out
    }

    #[test]
    fn identity_is_neutral() {
        let s = Perm::from_image(vec![2, 0, 1]).unwrap();
        assert_eq!(Perm::identity(3).compose(&s).unwrap(), s);
        assert_eq!(s.compose(&Perm::identity(3)).unwrap(), s);
    }

    #[test]
    fn transposition_is_involution() {
        let t = Perm::transposition(4, 1, 3);
        assert!(t.compose(&t).unwrap().is_identity());
    }

    #[test]
    fn compose_matches_oracle_degree_five() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let a = Perm::random(5, &mut rng);
            let b = Perm::random(5, &mut rng);
            assert_eq!(a.compose(&b).unwrap().image(), compose_oracle(a.image(), b.image()));
        }
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        assert!(Perm::identity(2).compose(&Perm::identity(3)).is_err());
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_image(vec![0, 0]).is_err());
        assert!(Perm::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn block_of_identity_is_identity() {
        assert!(Perm::identity(3).block(&[2, 0, 4]).unwrap().is_identity());
    }

    #[test]
    fn block_swap_two_one() {
        // block {1,2} moves after block {3}: 1-based image [3,1,2]
        let swap = Perm::transposition(2, 0, 1);
        let b = swap.block(&[2, 1]).unwrap();
        assert_eq!(b.image(), &[2, 0, 1]);
        assert_eq!(b.image(), block_oracle(&[1, 0], &[2, 1]).as_slice());
    }

    #[test]
    fn block_is_homomorphism_with_transported_arities() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        use rand::Rng;
        for _ in 0..300 {
            let k = rng.gen_range(0..5);
            let s = Perm::random(k, &mut rng);
            let t = Perm::random(k, &mut rng);
            let m: Vec<usize> = (0..k).map(|_| rng.gen_range(0..4)).collect();
            let lhs = s.compose(&t).unwrap().block(&m).unwrap();
            let m_s = s.permute(&m);
            let rhs = s.block(&m).unwrap().compose(&t.block(&m_s).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(lhs.image(), block_oracle(lhs_sigma(&s, &t).as_slice(), &m).as_slice());
        }
        fn lhs_sigma(s: &Perm, t: &Perm) -> Vec<usize> {
            compose_oracle(s.image(), t.image())
        }
    }

    #[test]
    fn juxtapose_cases() {
        assert!(Perm::juxtapose(&[Perm::identity(2), Perm::identity(3)]).is_identity());
        let s = Perm::from_image(vec![1, 2, 0]).unwrap();
        assert_eq!(Perm::juxtapose(std::slice::from_ref(&s)), s);
        let t = Perm::transposition(2, 0, 1);
        let j = Perm::juxtapose(&[t.clone(), t]);
        assert_eq!(j.image(), &[1, 0, 3, 2]);
    }

    #[test]
    fn all_enumerates_factorial() {
        assert_eq!(Perm::all(0).len(), 1);
        assert_eq!(Perm::all(4).len(), 24);
        let mut v = Perm::all(4);
        v.dedup();
        assert_eq!(v.len(), 24);
    }

    proptest::proptest! {
        #[test]
        fn inverse_cancels(image in proptest::sample::subsequence((0..6usize).collect::<Vec<_>>(), 6).prop_shuffle()) {
            let p = Perm::from_image(image).unwrap();
            proptest::prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        }
    }
    use proptest::strategy::Strategy;
}
