//! Symmetric exchange binomials and per-instance checks of White's conjectures.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::gb::{self, Binomial, BinomialSet, MonomialOrder, VariableId};
use crate::matroid::Matroid;
use crate::oracle::{self, OracleError};

/// `B_k = B_i − x + y` and `B_l = B_j − y + x`; indices are 1-based canonical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExchangeWitness {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub x: usize,
    pub y: usize,
}

impl ExchangeWitness {
    /// The witness read from `B_j`'s side.
    pub fn mirrored(self) -> ExchangeWitness {
        ExchangeWitness {
            i: self.j,
            j: self.i,
            k: self.l,
            l: self.k,
            x: self.y,
            y: self.x,
        }
    }

    pub fn binomial(self) -> Option<Binomial> {
        let v = |a: usize| VariableId::x(1, a);
        Binomial::from_vars([v(self.i), v(self.j)], [v(self.k), v(self.l)])
    }
}

#[derive(Debug, Clone)]
pub struct ExchangeSet {
    pub binomials: BinomialSet,
    pub witnesses: Vec<ExchangeWitness>,
}

impl ExchangeSet {
    pub fn witnesses_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            witnesses: &'a [ExchangeWitness],
        }
        serde_json::to_string(&Doc {
            witnesses: &self.witnesses,
        })
        .expect("witness serialization cannot fail")
    }
}

/// Basis variables `x1_1..x1_n` in canonical basis order.
pub fn basis_variables(m: &Matroid) -> Vec<VariableId> {
    (1..=m.num_bases()).map(|j| VariableId::x(1, j)).collect()
}

/// Degrevlex over the canonical basis ranking.
pub fn default_order(m: &Matroid) -> MonomialOrder {
    MonomialOrder::degrevlex(basis_variables(m))
}

/// All binomials `x_i x_j − x_k x_l` arising from symmetric exchanges, with
/// their witnesses (trivial exchanges returning the same pair included).
pub fn symmetric_exchange_set(m: &Matroid) -> ExchangeSet {
    let bases = m.bases();
    let n = bases.len();
    let mut witnesses = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let (bi, bj) = (bases[i], bases[j]);
            for x in bi.difference(bj).iter() {
                for y in bj.difference(bi).iter() {
                    let k = m.basis_index(bi.without(x).with(y));
                    let l = m.basis_index(bj.without(y).with(x));
                    if let (Some(k), Some(l)) = (k, l) {
                        witnesses.push(ExchangeWitness {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            l: l + 1,
                            x,
                            y,
                        });
                    }
                }
            }
        }
    }
    let ambient = basis_variables(m).into_iter().collect();
    let mut binomials = BinomialSet::empty(ambient);
    for w in &witnesses {
        if let Some(b) = w.binomial() {
            binomials.insert(b).expect("basis variables are ambient");
        }
    }
    ExchangeSet {
        binomials: binomials.canonicalized(),
        witnesses,
    }
}

/// Whether the symmetric exchange binomials generate the toric ideal.
pub fn check_white_generation(m: &Matroid) -> Result<bool, OracleError> {
    let order = default_order(m);
    let exchange = symmetric_exchange_set(m).binomials;
    let truth = oracle::toric_gb(&oracle::bases_matrix(m), &order)?;
    Ok(gb::ideals_equal(&exchange, &truth, &order)?)
}

/// Number of relabelled balanced-sum orders appended by [`default_white_orders`].
pub const RELABELLED_ORDERS: usize = 256;

/// Degrevlex and lex over the canonical basis ranking and over its reverse,
/// followed by balanced-sum weight orders (see [`balanced_sum_order`]) for the
/// identity labelling and for [`RELABELLED_ORDERS`] seeded relabellings.
pub fn default_white_orders(m: &Matroid) -> Vec<MonomialOrder> {
    let fwd = basis_variables(m);
    let rev: Vec<VariableId> = fwd.iter().rev().copied().collect();
    let mut orders = vec![
        MonomialOrder::degrevlex(fwd.clone()),
        MonomialOrder::degrevlex(rev.clone()),
        MonomialOrder::lex(fwd),
        MonomialOrder::lex(rev),
    ];
    let d = m.ground_size();
    let mut label: Vec<u64> = (1..=d as u64).collect();
    orders.push(balanced_sum_order(m, &label));
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..RELABELLED_ORDERS {
        label.shuffle(&mut rng);
        orders.push(balanced_sum_order(m, &label));
    }
    orders
}

/// Weight `x_B ↦ (Σ_{e∈B} label[e−1])²`, then degrevlex over the canonical
/// ranking. Among pairs of bases with the same multiset union it prefers
/// the pair whose label sums are farthest apart as the initial term.
pub fn balanced_sum_order(m: &Matroid, label: &[u64]) -> MonomialOrder {
    let weight: BTreeMap<VariableId, u64> = m
        .bases()
        .iter()
        .enumerate()
        .map(|(j, b)| {
            let s: u64 = b.iter().map(|e| label[e - 1]).sum();
            (VariableId::x(1, j + 1), s * s)
        })
        .collect();
    MonomialOrder::degrevlex(basis_variables(m)).with_weight(&weight)
}

/// First order of `orders` under which the symmetric exchange binomials form
/// a Gröbner basis of the toric ideal. `None` is inconclusive, not a
/// counterexample.
pub fn check_white_gb(m: &Matroid, orders: &[MonomialOrder]) -> Result<Option<MonomialOrder>, OracleError> {
    if orders.is_empty() {
        return Ok(None);
    }
    let exchange = symmetric_exchange_set(m).binomials;
    let truth = oracle::toric_gb(&oracle::bases_matrix(m), &default_order(m))?;
    let test = |order: &MonomialOrder| -> Result<bool, OracleError> {
        if !gb::is_groebner(&exchange, order)? {
            return Ok(false);
        }
        Ok(gb::ideals_equal(&exchange, &truth, order)?)
    };
    let batch = rayon::current_num_threads().max(1);
    for chunk in orders.chunks(batch) {
        let outcomes: Vec<Result<bool, OracleError>> = chunk.par_iter().map(test).collect();
        for (order, ok) in chunk.iter().zip(outcomes) {
            if ok? {
                return Ok(Some(order.clone()));
            }
        }
    }
    Ok(None)
}

/// Every element is a difference of two degree-2 monomials.
pub fn is_quadratic(set: &BinomialSet) -> bool {
    set.iter()
        .all(|b| b.lead().degree() == 2 && b.trail().degree() == 2)
}
