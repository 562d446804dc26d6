use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_matroids::exchange::default_order;
use toric_matroids::gb::ideals_equal;
use toric_matroids::lift::dual_transfer;
use toric_matroids::oracle::{bases_matrix, toric_gb};
use toric_matroids::{ElementSet, Matroid, MatroidError};

use crate::oracles::is_basis_family;
use crate::suite::{suite, uniform};

fn lists(m: &Matroid) -> Vec<Vec<usize>> {
    m.bases().iter().map(|b| b.to_vec()).collect()
}

fn accepts(d: usize, sets: &[Vec<usize>], expect: &Matroid, what: &str) {
    assert!(is_basis_family(d, sets), "independent oracle rejects {what}");
    let got = Matroid::new(d, sets).unwrap_or_else(|e| panic!("validate_matroid rejects {what}: {e}"));
    assert_eq!(&got, expect, "{what} is not canonicalized to itself");
}

/// The error names sets that are really present and really fail.
fn witness_is_concrete(d: usize, sets: &[Vec<usize>], err: &MatroidError) -> bool {
    let family: BTreeSet<BTreeSet<usize>> = sets.iter().map(|s| s.iter().copied().collect()).collect();
    let set = |v: &[usize]| v.iter().copied().collect::<BTreeSet<usize>>();
    match err {
        MatroidError::EmptyBases => sets.is_empty(),
        MatroidError::UnequalCardinality { first, second } => {
            family.contains(&set(first)) && family.contains(&set(second)) && first.len() != second.len()
        }
        MatroidError::ExchangeFails { b, b_prime, x } => {
            let (b, bp) = (set(b), set(b_prime));
            family.contains(&b)
                && family.contains(&bp)
                && b.contains(x)
                && !bp.contains(x)
                && bp.difference(&b).all(|y| {
                    let mut t = b.clone();
                    t.remove(x);
                    t.insert(*y);
                    !family.contains(&t)
                })
        }
        MatroidError::ElementOutOfRange { element, d: dd } => {
            *dd == d && (*element == 0 || *element > d) && sets.iter().flatten().any(|e| e == element)
        }
        MatroidError::GroundTooLarge(_) | MatroidError::Parse(_) => false,
    }
}

fn mutate(m: &Matroid, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let d = m.ground_size();
    let r = m.rank();
    let mut sets = lists(m);
    let random_subset = |rng: &mut ChaCha8Rng, k: usize| -> Vec<usize> {
        let mut all: Vec<usize> = (1..=d).collect();
        all.shuffle(rng);
        let mut s: Vec<usize> = all.into_iter().take(k).collect();
        s.sort_unstable();
        s
    };
    match rng.gen_range(0..5) {
        0 if sets.len() > 1 => {
            let i = rng.gen_range(0..sets.len());
            sets.remove(i);
        }
        1 if r < d => sets.push(random_subset(rng, r)),
        2 if r > 0 && r < d => {
            let i = rng.gen_range(0..sets.len());
            let outside: Vec<usize> = (1..=d).filter(|e| !sets[i].contains(e)).collect();
            let pos = rng.gen_range(0..r);
            sets[i][pos] = *outside.choose(rng).expect("r < d");
            sets[i].sort_unstable();
        }
        3 if d > 0 => {
            let k = (0..=d).filter(|&k| k != r).collect::<Vec<_>>();
            let k = *k.choose(rng).expect("d > 0");
            sets.push(random_subset(rng, k));
        }
        _ => {
            let i = rng.gen_range(0..sets.len());
            sets[i].push(d + 1);
        }
    }
    sets.sort();
    sets.dedup();
    sets
}

pub fn axioms() -> String {
    assert!(is_basis_family(3, &[vec![1, 2], vec![1, 3], vec![2, 3]]));
    assert!(!is_basis_family(4, &[vec![1, 2], vec![3, 4]]));
    assert!(!is_basis_family(3, &[vec![1, 2], vec![3]]));

    let base = suite(7);
    let mut accepted = 0;
    for (name, m) in &base {
        let d = m.ground_size();
        let mut family: Vec<(String, Matroid)> = vec![(name.clone(), m.clone()), (format!("{name}*"), m.dual())];
        for e in 1..=d {
            family.push((format!("{name}\\{e}"), m.delete(e).unwrap()));
            family.push((format!("{name}/{e}"), m.contract(e).unwrap()));
        }
        for (what, n) in &family {
            accepts(n.ground_size(), &lists(n), n, what);
            accepted += 1;
        }
    }
    for (i, (na, a)) in base.iter().enumerate() {
        for (nb, b) in base.iter().skip(i) {
            if a.ground_size() + b.ground_size() > 8 || a.num_bases() * b.num_bases() > 400 {
                continue;
            }
            let s = a.direct_sum(b).unwrap();
            accepts(s.ground_size(), &lists(&s), &s, &format!("{na}+{nb}"));
            accepted += 1;
        }
    }

    let mut rejected = 0;
    let mut valid_mutants = 0;
    for (k, (name, m)) in base.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + k as u64);
        let mut count = 0;
        let mut tries = 0;
        while count < 100 {
            tries += 1;
            assert!(tries < 20_000, "{name}: could not produce 100 invalid mutations");
            let sets = mutate(m, &mut rng);
            let d = m.ground_size();
            let truth = is_basis_family(d, &sets);
            match Matroid::new(d, &sets) {
                Ok(got) => {
                    assert!(truth, "{name}: validate_matroid accepts non-matroid {sets:?}");
                    assert_eq!(got.num_bases(), sets.len());
                    valid_mutants += 1;
                }
                Err(e) => {
                    assert!(!truth, "{name}: validate_matroid rejects matroid {sets:?}: {e}");
                    assert!(witness_is_concrete(d, &sets, &e), "{name}: witness {e} does not check out on {sets:?}");
                    count += 1;
                }
            }
        }
        rejected += count;
    }
    format!("{accepted} accepted, {rejected} mutations rejected with witnesses, {valid_mutants} valid mutants accepted")
}

pub fn duality() -> String {
    let ms = suite(7);
    for (name, m) in &ms {
        let order = default_order(m);
        let gb = toric_gb(&bases_matrix(m), &order).unwrap();
        let dual = m.dual();
        let dual_order = default_order(&dual);
        let truth = toric_gb(&bases_matrix(&dual), &dual_order).unwrap();
        assert!(
            ideals_equal(&dual_transfer(&gb, m), &truth, &dual_order).unwrap(),
            "{name}: transferred ideal differs from the dual's"
        );
    }
    let mut subsets = 0;
    for (name, m) in ms.iter().filter(|(_, m)| m.ground_size() <= 6) {
        let dual = m.dual();
        for bits in 0..1u64 << m.ground_size() {
            let x = ElementSet::from_bits(bits << 1);
            assert_eq!(
                m.connectivity_lambda(x),
                dual.connectivity_lambda(x),
                "{name}: lambda differs on {x:?}"
            );
            subsets += 1;
        }
    }
    format!("{} ideals transferred, lambda equal on {subsets} subsets", ms.len())
}

pub fn connectivity() -> String {
    assert!(uniform(2, 4).is_n_connected(3), "U24 should be 3-connected");
    assert!(toric_matroids::catalog::mk4().is_n_connected(3), "M(K4) should be 3-connected");
    let ms = suite(4);
    let mut pairs = 0;
    for (na, a) in &ms {
        for (nb, b) in &ms {
            let s = a.direct_sum(b).unwrap();
            assert!(!s.is_n_connected(2), "{na}+{nb} reported 2-connected");
            pairs += 1;
        }
    }
    format!("{pairs} direct sums disconnected")
}
