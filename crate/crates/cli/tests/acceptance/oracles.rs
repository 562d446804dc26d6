//! Test-side checks that do not go through the library's own algorithms.

use std::collections::BTreeSet;

/// Decides whether `sets` is the basis family of a matroid on `{1..d}` from
/// the independence axioms: the down-closure must satisfy augmentation and
/// its maximal members must be exactly `sets`.
pub fn is_basis_family(d: usize, sets: &[Vec<usize>]) -> bool {
    if sets.is_empty() || sets.iter().flatten().any(|&e| e == 0 || e > d) {
        return false;
    }
    let masks: BTreeSet<u64> = sets.iter().map(|s| s.iter().fold(0u64, |m, &e| m | 1 << (e - 1))).collect();
    let mut independent: BTreeSet<u64> = BTreeSet::new();
    for &b in &masks {
        // every submask of b
        let mut sub = b;
        loop {
            independent.insert(sub);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & b;
        }
    }
    let ind: Vec<u64> = independent.iter().copied().collect();
    for &i in &ind {
        for &j in &ind {
            if i.count_ones() < j.count_ones() {
                let extra = j & !i;
                let augments = (0..d).any(|e| extra >> e & 1 == 1 && independent.contains(&(i | 1 << e)));
                if !augments {
                    return false;
                }
            }
        }
    }
    let maximal: BTreeSet<u64> = ind
        .iter()
        .copied()
        .filter(|&i| (0..d).all(|e| i >> e & 1 == 1 || !independent.contains(&(i | 1 << e))))
        .collect();
    maximal == masks
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
