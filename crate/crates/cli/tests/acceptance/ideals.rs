use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_matroids::catalog::{cycle_edges, graphic, mk4};
use toric_matroids::exchange::{check_white_gb, check_white_generation, default_white_orders};
use toric_matroids::gb::{ideals_equal, is_groebner};
use toric_matroids::lift::{
    classify_split, lift_series_extension, series_ext_order, series_extension_generators, to_anchored,
};
use toric_matroids::oracle::{anchored_bases_matrix, bases_matrix, series_ext_matrix, toric_gb};
use toric_matroids::{BinomialSet, Matroid, MonomialOrder, VariableId};

use crate::oracles::binomial;
use crate::suite::{dedupe, suite, uniform};

/// Every minor of `m` on at most `max_d` elements, up to isomorphism.
fn small_minors(m: &Matroid, max_d: usize) -> Vec<Matroid> {
    let mut frontier = vec![m.clone()];
    let mut found = Vec::new();
    while let Some(cur) = frontier.pop() {
        if cur.ground_size() <= max_d {
            found.push(cur.clone());
        }
        if cur.ground_size() == 0 {
            continue;
        }
        let next = dedupe((1..=cur.ground_size()).flat_map(|e| [cur.delete(e).unwrap(), cur.contract(e).unwrap()]));
        frontier.extend(next);
        if frontier.len() > 64 {
            frontier = dedupe(frontier);
        }
    }
    dedupe(found)
}

pub fn white_instances() -> String {
    let mut ms = vec![uniform(2, 4), uniform(2, 5), uniform(3, 5), uniform(3, 6), mk4()];
    let mut sources: Vec<Matroid> = suite(7).into_iter().map(|(_, m)| m).collect();
    sources.extend((3..=5).map(|n| graphic(&cycle_edges(n)).unwrap()));
    let small = dedupe(sources.iter().flat_map(|m| small_minors(m, 5)));
    let n_small = small.len();
    ms.extend(small);
    for m in &ms {
        assert!(check_white_generation(m).unwrap(), "exchange binomials do not generate for {m:?}");
        let orders = default_white_orders(m);
        let found = check_white_gb(m, &orders).unwrap();
        assert!(found.is_some(), "no order found for {m:?}");
    }
    format!("5 named instances and {n_small} matroids on <= 5 elements")
}

fn anchored_vars(n: usize) -> Vec<VariableId> {
    (1..=n).map(|j| VariableId::x(1, j)).collect()
}

pub fn series_lifting() -> String {
    // fixed instance: U(2,4) at 4 with the three matching quadrics
    let am = uniform(2, 4).anchor(4).unwrap();
    let mat = anchored_bases_matrix(&am);
    let f = toric_gb(&mat, &mat.default_order()).unwrap();
    assert_eq!(lift_series_extension(&f, am.gamma(), am.num_bases()).unwrap().len(), 7);
    for gamma in 0..6 {
        let empty = BinomialSet::empty(Default::default());
        assert_eq!(
            lift_series_extension(&empty, gamma, gamma).unwrap().len(),
            binomial(gamma, 2)
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cases = 0;
    for (name, m) in suite(6) {
        for c in 1..=m.ground_size() {
            if m.is_coloop(c) {
                continue;
            }
            let am = m.anchor(c).unwrap();
            let (n, gamma) = (am.num_bases(), am.gamma());
            let mat = anchored_bases_matrix(&am);
            let ext = series_ext_matrix(&am).unwrap();
            let truth_order = ext.default_order();
            let truth = toric_gb(&ext, &truth_order).unwrap();
            let random: BTreeMap<VariableId, u64> =
                anchored_vars(n).into_iter().map(|v| (v, rng.gen_range(0..6))).collect();
            let omegas = [BTreeMap::new(), random];
            for omega in &omegas {
                let base = MonomialOrder::degrevlex(anchored_vars(n)).with_weight(omega);
                let f = toric_gb(&mat, &base).unwrap();
                let lifted = lift_series_extension(&f, gamma, n).unwrap();
                let order = series_ext_order(&base, gamma);
                assert!(is_groebner(&lifted, &order).unwrap(), "{name} at {c}: lift is not a Gröbner basis");
                assert!(
                    ideals_equal(&lifted, &truth, &truth_order).unwrap(),
                    "{name} at {c}: lift does not generate the extension's ideal"
                );
                let bound: usize = f.iter().map(|b| 1usize << classify_split(b, gamma).unwrap().u()).sum();
                assert!(lifted.len() <= bound + binomial(gamma, 2), "{name} at {c}: too many lifted elements");
                cases += 1;
            }
        }
    }
    format!("{cases} (matroid, anchor, weight) cases; U24 at 4 gives 7")
}

pub fn coloop_anchor() -> String {
    let mut cases = 0;
    let bases: Vec<Matroid> = suite(5).into_iter().map(|(_, m)| m).collect();
    let with_coloops: Vec<Matroid> = bases
        .iter()
        .filter(|m| m.ground_size() <= 4)
        .map(|m| m.direct_sum(&uniform(1, 1)).unwrap())
        .chain(bases.iter().cloned())
        .collect();
    for m in &with_coloops {
        for c in (1..=m.ground_size()).filter(|&c| m.is_coloop(c)) {
            let order = MonomialOrder::degrevlex(anchored_vars(m.num_bases()));
            let f = toric_gb(&bases_matrix(m), &order).unwrap();
            let am = m.anchor(c).unwrap();
            let built = series_extension_generators(m, c, &f, Some(&order)).unwrap();
            assert!(built.generators.same_elements(&f.rename(to_anchored(&am))), "{m:?} at coloop {c}");
            assert!(built.verify().unwrap().generates, "{m:?} at coloop {c}: does not verify");
            cases += 1;
        }
    }
    format!("{cases} coloop anchors")
}
