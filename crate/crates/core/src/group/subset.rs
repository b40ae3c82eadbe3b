use std::cmp::Ordering;
use std::fmt;

use super::{Elem, FiniteGroup, GroupAutomorphism};

/// A subset of a finite group stored as a dense bitset.
///
/// The ordering is the integer order of the bitmask with element 0 as the
/// least significant bit; that is the tie-break used by every search.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    n: usize,
    words: Vec<u64>,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        Subset { n, words: vec![0; n.div_ceil(64).max(1)] }
    }

    pub fn full(n: usize) -> Self {
        Self::from_elems(n, 0..n as Elem)
    }

    pub fn from_elems(n: usize, elems: impl IntoIterator<Item = Elem>) -> Self {
        let mut s = Self::empty(n);
        for x in elems {
            s.insert(x);
        }
        s
    }

    /// Subset whose members are the set bits of `mask` (requires `n ≤ 64`).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n <= 64);
        let mut s = Self::empty(n);
        s.words[0] = mask;
        s
    }

    /// The bitmask, when the universe fits in 64 bits.
    pub fn mask(&self) -> Option<u64> {
        (self.n <= 64).then(|| self.words[0])
    }

    /// Size of the universe the subset lives in.
    pub fn universe(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        let x = x as usize;
        x < self.n && self.words[x / 64] >> (x % 64) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: Elem) {
        let x = x as usize;
        assert!(x < self.n, "element {x} outside universe {}", self.n);
        self.words[x / 64] |= 1 << (x % 64);
    }

    #[inline]
    pub fn remove(&mut self, x: Elem) {
        let x = x as usize;
        if x < self.n {
            self.words[x / 64] &= !(1 << (x % 64));
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing index order.
    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros();
                w &= w - 1;
                Some(i as Elem * 64 + b)
            })
        })
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        s
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        s
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        s
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn with(&self, x: Elem) -> Subset {
        let mut s = self.clone();
        s.insert(x);
        s
    }

    pub fn without(&self, x: Elem) -> Subset {
        let mut s = self.clone();
        s.remove(x);
        s
    }

    /// `{x⁻¹ | x ∈ A}`.
    pub fn inverse(&self, g: &FiniteGroup) -> Subset {
        Subset::from_elems(self.n, self.iter().map(|x| g.inv(x)))
    }

    /// `{α(x) | x ∈ A}`.
    pub fn image(&self, alpha: &GroupAutomorphism) -> Subset {
        Subset::from_elems(self.n, self.iter().map(|x| alpha.apply(x)))
    }

    /// `{c·x | x ∈ A}`.
    pub fn left_mul(&self, g: &FiniteGroup, c: Elem) -> Subset {
        Subset::from_elems(self.n, self.iter().map(|x| g.mul(c, x)))
    }

    /// `{x·c | x ∈ A}`.
    pub fn right_mul(&self, g: &FiniteGroup, c: Elem) -> Subset {
        Subset::from_elems(self.n, self.iter().map(|x| g.mul(x, c)))
    }

    pub fn is_inverse_closed(&self, g: &FiniteGroup) -> bool {
        self.inverse(g) == *self
    }

    /// `{x ∈ A | o(x) = k}`.
    pub fn order_filter(&self, g: &FiniteGroup, k: u32) -> Subset {
        Subset::from_elems(self.n, self.iter().filter(|&x| g.element_order(x) == k))
    }

    /// Renders as `{1,a,b^2}` using the group's element names.
    pub fn display<'a>(&'a self, g: &'a FiniteGroup) -> impl fmt::Display + 'a {
        DisplaySubset { set: self, group: g }
    }

    /// Element names, in index order.
    pub fn names(&self, g: &FiniteGroup) -> Vec<String> {
        self.iter().map(|x| g.name(x).to_string()).collect()
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words.iter().rev().cmp(other.words.iter().rev())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

struct DisplaySubset<'a> {
    set: &'a Subset,
    group: &'a FiniteGroup,
}

impl fmt::Display for DisplaySubset<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.set.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.group.name(x))?;
        }
        write!(f, "}}")
    }
}
