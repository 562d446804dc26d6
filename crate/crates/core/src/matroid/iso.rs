use std::collections::HashSet;

use rayon::prelude::*;

use super::{ElementSet, Matroid};

/// Cheap isomorphism invariant: ground size, rank, basis count and the sorted
/// sequence of per-element basis degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Invariant {
    pub ground_size: usize,
    pub rank: usize,
    pub num_bases: usize,
    pub degrees: Vec<usize>,
}

pub fn canonical_invariant(m: &Matroid) -> Invariant {
    let mut degrees = element_degrees(m);
    degrees.sort_unstable();
    Invariant {
        ground_size: m.ground_size(),
        rank: m.rank(),
        num_bases: m.num_bases(),
        degrees,
    }
}

/// `degrees[e-1]` = number of bases containing `e`.
fn element_degrees(m: &Matroid) -> Vec<usize> {
    (1..=m.ground_size())
        .map(|e| m.bases().iter().filter(|b| b.contains(e)).count())
        .collect()
}

fn pair_degrees(m: &Matroid) -> Vec<Vec<usize>> {
    let d = m.ground_size();
    let mut table = vec![vec![0; d + 1]; d + 1];
    for b in m.bases() {
        let elems = b.to_vec();
        for &a in &elems {
            for &c in &elems {
                table[a][c] += 1;
            }
        }
    }
    table
}

/// Finds a bijection `perm` (with `perm[e-1]` the image of `e`) carrying the
/// bases of `m1` onto the bases of `m2`.
pub fn is_isomorphic(m1: &Matroid, m2: &Matroid) -> Option<Vec<usize>> {
    if canonical_invariant(m1) != canonical_invariant(m2) {
        return None;
    }
    let d = m1.ground_size();
    let deg1 = element_degrees(m1);
    let deg2 = element_degrees(m2);
    let pair1 = pair_degrees(m1);
    let pair2 = pair_degrees(m2);
    let target: HashSet<ElementSet> = m2.bases().iter().copied().collect();

    let mut perm = vec![0usize; d];
    let mut used = vec![false; d + 1];
    fn search(
        e: usize,
        d: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        ctx: &(&[usize], &[usize], &[Vec<usize>], &[Vec<usize>]),
        m1: &Matroid,
        target: &HashSet<ElementSet>,
    ) -> bool {
        if e > d {
            return m1
                .bases()
                .iter()
                .all(|b| target.contains(&b.map(|x| perm[x - 1])));
        }
        let (deg1, deg2, pair1, pair2) = *ctx;
        for img in 1..=d {
            if used[img] || deg1[e - 1] != deg2[img - 1] {
                continue;
            }
            if pair1[e][e] != pair2[img][img] {
                continue;
            }
            let consistent = (1..e).all(|a| pair1[a][e] == pair2[perm[a - 1]][img]);
            if !consistent {
                continue;
            }
            perm[e - 1] = img;
            used[img] = true;
            if search(e + 1, d, perm, used, ctx, m1, target) {
                return true;
            }
            used[img] = false;
        }
        false
    }
    let ctx = (&deg1[..], &deg2[..], &pair1[..], &pair2[..]);
    if search(1, d, &mut perm, &mut used, &ctx, m1, &target) {
        Some(perm)
    } else {
        None
    }
}

fn corank(m: &Matroid) -> usize {
    m.ground_size() - m.rank()
}

/// True iff some sequence of single-element deletions and contractions of
/// `m` is isomorphic to `target`.
pub fn has_minor(m: &Matroid, target: &Matroid) -> bool {
    if m.ground_size() < target.ground_size()
        || m.rank() < target.rank()
        || corank(m) < corank(target)
    {
        return false;
    }
    let want = canonical_invariant(target);
    let mut level: HashSet<Matroid> = HashSet::from([m.clone()]);
    for _ in target.ground_size()..m.ground_size() {
        let mut candidates: Vec<Matroid> = level
            .par_iter()
            .flat_map_iter(|x| {
                let mut out = Vec::new();
                for e in 1..=x.ground_size() {
                    for minor in [x.delete(e), x.contract(e)] {
                        let minor = minor.expect("element in range");
                        if minor.rank() >= target.rank() && corank(&minor) >= corank(target) {
                            out.push(minor);
                        }
                    }
                }
                out
            })
            .collect();
        candidates.sort_by(|a, b| a.bases().cmp(b.bases()));
        level = candidates.into_iter().collect();
        if level.is_empty() {
            return false;
        }
    }
    level
        .par_iter()
        .any(|x| canonical_invariant(x) == want && is_isomorphic(x, target).is_some())
}
