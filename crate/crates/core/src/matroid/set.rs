use std::cmp::Ordering;
use std::fmt;

/// Maximum supported ground-set size.
pub const MAX_GROUND: usize = 63;

/// A subset of the ground set `{1..d}`, stored as a bitmask (bit `e` is element `e`).
///
/// Sets order lexicographically by their ascending element lists, so
/// `{1,2} < {1,3} < {2,3}`. This is the canonical order used for bases.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The full ground set `{1..d}`.
    pub fn full(d: usize) -> Self {
        assert!(d <= MAX_GROUND, "ground set too large: {d}");
        ElementSet(((1u64 << d) - 1) << 1)
    }

    pub fn singleton(e: usize) -> Self {
        assert!((1..=MAX_GROUND).contains(&e), "element out of range: {e}");
        ElementSet(1 << e)
    }

    pub fn contains(self, e: usize) -> bool {
        e <= MAX_GROUND && self.0 & (1 << e) != 0
    }

    pub fn insert(&mut self, e: usize) {
        *self = self.with(e);
    }

    pub fn remove(&mut self, e: usize) {
        *self = self.without(e);
    }

    pub fn with(self, e: usize) -> Self {
        self | ElementSet::singleton(e)
    }

    pub fn without(self, e: usize) -> Self {
        ElementSet(self.0 & !(1 << e))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: ElementSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: ElementSet) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn union(self, other: ElementSet) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn difference(self, other: ElementSet) -> Self {
        ElementSet(self.0 & !other.0)
    }

    /// Largest element, if any.
    pub fn max(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(63 - self.0.leading_zeros() as usize)
        }
    }

    /// Elements in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(e)
        })
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Applies an element relabeling; `f` must be injective on the set.
    pub fn map(self, mut f: impl FnMut(usize) -> usize) -> Self {
        self.iter().map(&mut f).collect()
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl std::ops::BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}
