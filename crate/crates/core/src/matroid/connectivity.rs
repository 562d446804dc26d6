use super::{ElementSet, Matroid};

impl Matroid {
    /// `rk(X) = max |B ∩ X|` over all bases.
    pub fn rank_of_subset(&self, x: ElementSet) -> usize {
        self.bases()
            .iter()
            .map(|b| b.intersection(x).len())
            .max()
            .unwrap_or(0)
    }

    /// `λ(X) = rk(X) + rk(E − X) − rk(M)`.
    pub fn connectivity_lambda(&self, x: ElementSet) -> usize {
        let rest = self.ground().difference(x);
        self.rank_of_subset(x) + self.rank_of_subset(rest) - self.rank()
    }

    /// A `k`-separation `(X, E−X)` for some `k < n`, if one exists.
    pub fn find_separation(&self, n: usize) -> Option<(usize, ElementSet)> {
        let d = self.ground_size();
        for bits in 0u64..(1u64 << d) {
            let x = ElementSet::from_bits(bits << 1);
            let side = x.len().min(d - x.len());
            let lambda = self.connectivity_lambda(x);
            // smallest k with λ(X) < k is λ(X) + 1
            let k = lambda + 1;
            if k < n && side >= k {
                return Some((k, x));
            }
        }
        None
    }

    /// True iff there is no `k`-separation for any `k < n`.
    pub fn is_n_connected(&self, n: usize) -> bool {
        assert!(n >= 2, "n-connectivity is defined for n >= 2");
        self.find_separation(n).is_none()
    }
}
