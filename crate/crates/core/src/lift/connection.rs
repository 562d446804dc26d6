use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::series::{dual_renaming, lift_series_extension, series_ext_order};
use super::{to_anchored, BasisMap, Construction, LiftError};
use crate::gb::{restrict_to_vars, Binomial, BinomialSet, Monomial, MonomialOrder, VariableId};
use crate::matroid::{validate_matroid, AnchoredMatroid, ElementSet, Matroid};

/// Basis counts of the two anchored factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConnectionIndex {
    pub n1: usize,
    pub gamma1: usize,
    pub n2: usize,
    pub gamma2: usize,
}

/// `Ntilde` keeps every `z2_j_k` (`j ≤ γ1`, `k ≤ n2`); `N` only `k > γ2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftMode {
    N,
    Ntilde,
}

/// Allowed `(j, k)` index lists, one pair per block `z<i>`.
#[derive(Debug, Clone)]
struct Blocks(Vec<(Vec<usize>, Vec<usize>)>);

impl Blocks {
    fn allowed_j(&self, block: u8) -> Option<&[usize]> {
        self.0.get(block as usize - 1).map(|b| b.0.as_slice())
    }

    fn allowed_k(&self, block: u8) -> Option<&[usize]> {
        self.0.get(block as usize - 1).map(|b| b.1.as_slice())
    }

    /// Sorted by block, then `j` ascending, then `k` descending.
    fn variables(&self) -> Vec<VariableId> {
        let mut out = Vec::new();
        for (i, (js, ks)) in self.0.iter().enumerate() {
            for &j in js {
                for &k in ks.iter().rev() {
                    out.push(VariableId::z(i as u8 + 1, j, k));
                }
            }
        }
        out
    }
}

impl ConnectionIndex {
    pub fn new(am1: &AnchoredMatroid, am2: &AnchoredMatroid) -> Self {
        ConnectionIndex {
            n1: am1.num_bases(),
            gamma1: am1.gamma(),
            n2: am2.num_bases(),
            gamma2: am2.gamma(),
        }
    }

    fn blocks(&self, mode: LiftMode) -> Blocks {
        let k2_from = match mode {
            LiftMode::N => self.gamma2 + 1,
            LiftMode::Ntilde => 1,
        };
        Blocks(vec![
            ((1..=self.n1).collect(), (1..=self.gamma2).collect()),
            ((1..=self.gamma1).collect(), (k2_from..=self.n2).collect()),
        ])
    }

    /// The `z` variables of the given mode.
    pub fn kept(&self, mode: LiftMode) -> BTreeSet<VariableId> {
        self.blocks(mode).variables().into_iter().collect()
    }
}

/// `(block, index)` of every factor of `m`, with multiplicity, sorted.
fn slots(m: &Monomial) -> Result<Vec<(u8, usize)>, LiftError> {
    m.expanded()
        .into_iter()
        .map(|v| match v {
            VariableId::Basis { block, index } => Ok((block, index as usize)),
            other => Err(LiftError::BlockMismatch(format!("{other} is not a basis variable"))),
        })
        .collect()
}

/// Matches the lead's indices with the trail's within each block, both sorted.
fn paired(g: &Binomial) -> Result<Vec<(u8, usize, usize)>, LiftError> {
    let lead = slots(g.lead())?;
    let trail = slots(g.trail())?;
    let count = |s: &[(u8, usize)]| {
        let mut c = BTreeMap::new();
        for &(b, _) in s {
            *c.entry(b).or_insert(0usize) += 1;
        }
        c
    };
    if count(&lead) != count(&trail) {
        return Err(LiftError::BlockMismatch(format!("{g} is not homogeneous in the block grading")));
    }
    Ok(lead.iter().zip(&trail).map(|(&(b, l), &(_, t))| (b, l, t)).collect())
}

/// Every choice of one entry from each list.
fn choices(lists: &[&[usize]]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(lists.len())];
    for list in lists {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |&x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

enum Side {
    Left,
    Right,
}

fn lift_one(g: &Binomial, blocks: &Blocks, side: &Side) -> Result<Vec<Binomial>, LiftError> {
    let pairs = paired(g)?;
    let inside = |b: u8, idx: usize| {
        let allowed = match side {
            Side::Left => blocks.allowed_j(b),
            Side::Right => blocks.allowed_k(b),
        };
        allowed.is_some_and(|a| a.contains(&idx))
    };
    if !pairs.iter().all(|&(b, l, t)| inside(b, l) && inside(b, t)) {
        return Ok(Vec::new());
    }
    let free: Vec<&[usize]> = pairs
        .iter()
        .map(|&(b, _, _)| match side {
            Side::Left => blocks.allowed_k(b).unwrap_or(&[]),
            Side::Right => blocks.allowed_j(b).unwrap_or(&[]),
        })
        .collect();
    let z = |b: u8, fixed: usize, other: usize| match side {
        Side::Left => VariableId::z(b, fixed, other),
        Side::Right => VariableId::z(b, other, fixed),
    };
    Ok(choices(&free)
        .into_iter()
        .filter_map(|pick| {
            let lead = pairs.iter().zip(&pick).map(|(&(b, l, _), &o)| z(b, l, o));
            let trail = pairs.iter().zip(&pick).map(|(&(b, _, t), &o)| z(b, t, o));
            Binomial::from_vars(lead, trail)
        })
        .collect())
}

fn quadrics(blocks: &Blocks) -> Vec<Binomial> {
    let mut out = Vec::new();
    for (i, (js, ks)) in blocks.0.iter().enumerate() {
        let b = i as u8 + 1;
        for (p, &j1) in js.iter().enumerate() {
            for &j2 in &js[p + 1..] {
                for (q, &k1) in ks.iter().enumerate() {
                    for &k2 in &ks[q + 1..] {
                        out.extend(Binomial::from_vars(
                            [VariableId::z(b, j1, k2), VariableId::z(b, j2, k1)],
                            [VariableId::z(b, j1, k1), VariableId::z(b, j2, k2)],
                        ));
                    }
                }
            }
        }
    }
    out
}

/// `Lift(G1) ∪ Lift(G2) ∪ Quad` over the allowed blocks. Elements of either
/// factor touching a disallowed index are skipped.
fn fiber_product(g1: &BinomialSet, g2: &BinomialSet, blocks: &Blocks) -> Result<BinomialSet, LiftError> {
    let lift = |set: &BinomialSet, side: Side| -> Result<Vec<Binomial>, LiftError> {
        let parts: Vec<Vec<Binomial>> = set
            .elements()
            .par_iter()
            .map(|g| lift_one(g, blocks, &side))
            .collect::<Result<_, _>>()?;
        Ok(parts.into_iter().flatten().collect())
    };
    let left = lift(g1, Side::Left)?;
    let right = lift(g2, Side::Right)?;
    let ambient = blocks.variables().into_iter().collect();
    Ok(BinomialSet::new(
        ambient,
        left.into_iter().chain(right).chain(quadrics(blocks)),
    )?)
}

/// Weight rows of `o1` pulled back along `z<i>_j_k ↦ x<i>_j`, then those of
/// `o2` along `z<i>_j_k ↦ x<i>_k`, then lex over `(i, j ↑, k ↓)`.
fn fiber_order(o1: &MonomialOrder, o2: &MonomialOrder, blocks: &Blocks) -> MonomialOrder {
    let vars = blocks.variables();
    let mut order = MonomialOrder::lex(vars.clone());
    let pull = |row: &BTreeMap<VariableId, u64>, left: bool| -> BTreeMap<VariableId, u64> {
        vars.iter()
            .filter_map(|&z| {
                let VariableId::Pair { block, j, k } = z else { unreachable!() };
                let x = VariableId::x(block, if left { j } else { k } as usize);
                row.get(&x).filter(|&&w| w > 0).map(|&w| (z, w))
            })
            .collect()
    };
    for row in o1.as_weight_rows() {
        let w = pull(&row, true);
        if !w.is_empty() {
            order = order.with_weight(&w);
        }
    }
    for row in o2.as_weight_rows() {
        let w = pull(&row, false);
        if !w.is_empty() {
            order = order.with_weight(&w);
        }
    }
    order
}

fn check_vars(set: &BinomialSet, allowed: &BTreeSet<VariableId>, what: &str) -> Result<(), LiftError> {
    match set.iter().flat_map(|b| b.vars()).find(|v| !allowed.contains(v)) {
        Some(v) => Err(LiftError::BlockMismatch(format!("{v} does not belong to {what}"))),
        None => Ok(()),
    }
}

fn block_set(n_block1: usize, n_block2: usize) -> BTreeSet<VariableId> {
    (1..=n_block1)
        .map(|j| VariableId::x(1, j))
        .chain((1..=n_block2).map(|j| VariableId::x(2, j)))
        .collect()
}

/// Generators of the connection ideal from the lifted factors: `f1t` over
/// `x1_1..x1_n1, x2_1..x2_γ1` and `f2t` over `x1_1..x1_γ2, x2_1..x2_n2`.
pub fn lift_connection(
    f1t: &BinomialSet,
    f2t: &BinomialSet,
    idx: ConnectionIndex,
    mode: LiftMode,
) -> Result<BinomialSet, LiftError> {
    check_vars(f1t, &block_set(idx.n1, idx.gamma1), "the first lifted factor")?;
    check_vars(f2t, &block_set(idx.gamma2, idx.n2), "the second lifted factor")?;
    fiber_product(f1t, f2t, &idx.blocks(mode))
}

/// Order on the connection variables built from the lifted factor orders
/// (named as in [`lift_connection`]).
pub fn connection_order(o1t: &MonomialOrder, o2t: &MonomialOrder, idx: ConnectionIndex, mode: LiftMode) -> MonomialOrder {
    fiber_order(o1t, o2t, &idx.blocks(mode))
}

/// Segre product generators over `z1_j_k`, `j ∈ k1`, `k ∈ k2`, from
/// generators over `x1_j` of each factor. Elements leaving `k1` (resp. `k2`) are dropped.
pub fn direct_sum_generators(
    f1: &BinomialSet,
    f2: &BinomialSet,
    k1: &[usize],
    k2: &[usize],
) -> Result<BinomialSet, LiftError> {
    fiber_product(f1, f2, &Blocks(vec![(k1.to_vec(), k2.to_vec())]))
}

/// `M1 ⊕ M2` (second factor shifted by `d1`) with Segre product generators
/// over `z1_j_k ↦ B_j ∪ (D_k + d1)` in canonical indices.
pub fn direct_sum(a: &Construction, b: &Construction) -> Result<Construction, LiftError> {
    let (a, b) = (a.canonical(), b.canonical());
    let matroid = a.matroid.direct_sum(&b.matroid)?;
    let blocks = Blocks(vec![(
        (1..=a.matroid.num_bases()).collect(),
        (1..=b.matroid.num_bases()).collect(),
    )]);
    let generators = fiber_product(&a.generators, &b.generators, &blocks)?;
    let order = a.order.as_ref().zip(b.order.as_ref()).map(|(o1, o2)| fiber_order(o1, o2, &blocks));
    let shift = a.matroid.ground_size();
    let map = BasisMap::new(
        blocks.variables().into_iter().map(|z| {
            let VariableId::Pair { j, k, .. } = z else { unreachable!() };
            let left = a.matroid.bases()[j as usize - 1];
            let right = b.matroid.bases()[k as usize - 1].map(|e| e + shift);
            (z, left.union(right))
        }),
        &matroid,
    );
    Ok(Construction {
        matroid,
        generators,
        map,
        order,
    })
}

fn swap_blocks(v: VariableId) -> VariableId {
    match v {
        VariableId::Basis { block: 1, index } => VariableId::x(2, index as usize),
        VariableId::Basis { block: 2, index } => VariableId::x(1, index as usize),
        other => other,
    }
}

fn degenerate(am: &AnchoredMatroid) -> bool {
    am.anchor_is_loop() || am.anchor_is_coloop()
}

/// Element labels of the second factor inside a connection: `c2 ↦ c1`, the
/// rest follow `E1` in order.
fn second_labels(d1: usize, c1: usize, c2: usize) -> impl Fn(usize) -> usize {
    move |e| match e.cmp(&c2) {
        std::cmp::Ordering::Equal => c1,
        std::cmp::Ordering::Less => d1 + e,
        std::cmp::Ordering::Greater => d1 + e - 1,
    }
}

fn in_series(b: ElementSet, d: ElementSet, c: usize, both_coloop: bool) -> Option<ElementSet> {
    (both_coloop || !(b.contains(c) && d.contains(c))).then(|| b.union(d))
}

/// `S(M1, M2)` on `E1 ∪ E2'`, where `E2'` relabels `E2` with `c2` identified with `c1`.
pub fn series_connection_bases(m1: &Matroid, c1: usize, m2: &Matroid, c2: usize) -> Result<Matroid, LiftError> {
    let (am1, am2) = (m1.anchor(c1)?, m2.anchor(c2)?);
    let both_coloop = am1.anchor_is_coloop() && am2.anchor_is_coloop();
    let rel = second_labels(m1.ground_size(), c1, c2);
    let mut bases = Vec::new();
    for &b in m1.bases() {
        for &d in m2.bases() {
            bases.extend(in_series(b, d.map(&rel), c1, both_coloop));
        }
    }
    Ok(validate_matroid(m1.ground_size() + m2.ground_size() - 1, bases)?)
}

/// Bases of `M / c` (still labelled within `E`).
fn contracted(bases: &[ElementSet], c: usize) -> Vec<ElementSet> {
    if bases.iter().all(|b| !b.contains(c)) {
        return bases.to_vec();
    }
    bases.iter().filter(|b| b.contains(c)).map(|b| b.without(c)).collect()
}

/// Bases of `M \ c` (still labelled within `E`).
fn deleted(bases: &[ElementSet], c: usize) -> Vec<ElementSet> {
    if bases.iter().all(|b| b.contains(c)) {
        return bases.iter().map(|b| b.without(c)).collect();
    }
    bases.iter().filter(|b| !b.contains(c)).copied().collect()
}

/// `P(M1, M2)` from the direct description of its bases.
pub fn parallel_connection_bases(m1: &Matroid, c1: usize, m2: &Matroid, c2: usize) -> Result<Matroid, LiftError> {
    let (am1, am2) = (m1.anchor(c1)?, m2.anchor(c2)?);
    let rel = second_labels(m1.ground_size(), c1, c2);
    let c = c1;
    let b1 = m1.bases().to_vec();
    let b2: Vec<ElementSet> = m2.bases().iter().map(|d| d.map(&rel)).collect();
    let (left, right) = if am1.anchor_is_loop() {
        (b1, contracted(&b2, c))
    } else if am1.anchor_is_coloop() {
        (deleted(&b1, c), b2)
    } else if am2.anchor_is_loop() {
        (contracted(&b1, c), b2)
    } else if am2.anchor_is_coloop() {
        (b1, deleted(&b2, c))
    } else {
        let mut bases = Vec::new();
        for &b in &b1 {
            for &d in &b2 {
                match (b.contains(c), d.contains(c)) {
                    (true, true) => bases.push(b.union(d)),
                    (false, false) => {}
                    _ => bases.push(b.union(d).without(c)),
                }
            }
        }
        return Ok(validate_matroid(m1.ground_size() + m2.ground_size() - 1, bases)?);
    };
    let bases = left.iter().flat_map(|&b| right.iter().map(move |&d| b.union(d)));
    Ok(validate_matroid(m1.ground_size() + m2.ground_size() - 1, bases)?)
}

/// Anchored generators and order of a canonical construction.
fn anchored_parts(c: &Construction, am: &AnchoredMatroid) -> (BinomialSet, Option<MonomialOrder>) {
    let ren = to_anchored(am);
    (c.generators.rename(&ren), c.order.as_ref().map(|o| o.rename(&ren)))
}

/// Series connection at `c1 ∈ E1`, `c2 ∈ E2` with generators assembled from
/// those of the factors. When both factors carry orders under which their
/// generators are Gröbner bases, the result carries the assembled order.
pub fn series_connection(a: &Construction, c1: usize, b: &Construction, c2: usize) -> Result<Construction, LiftError> {
    let (a, b) = (a.canonical(), b.canonical());
    let (am1, am2) = (a.matroid.anchor(c1)?, b.matroid.anchor(c2)?);
    let matroid = series_connection_bases(&a.matroid, c1, &b.matroid, c2)?;
    let (f1, o1) = anchored_parts(&a, &am1);
    let (f2, o2) = anchored_parts(&b, &am2);
    let rel = second_labels(a.matroid.ground_size(), c1, c2);
    let union = |j: usize, k: usize| am1.basis(j).union(am2.basis(k).map(&rel));

    if degenerate(&am1) || degenerate(&am2) {
        let both_coloop = am1.anchor_is_coloop() && am2.anchor_is_coloop();
        let mut k1 = BTreeSet::new();
        let mut k2 = BTreeSet::new();
        let mut count = 0;
        for j in 1..=am1.num_bases() {
            for k in 1..=am2.num_bases() {
                if in_series(am1.basis(j), am2.basis(k).map(&rel), c1, both_coloop).is_some() {
                    k1.insert(j);
                    k2.insert(k);
                    count += 1;
                }
            }
        }
        assert_eq!(count, k1.len() * k2.len(), "degenerate connection pairs form a product");
        let (k1, k2): (Vec<usize>, Vec<usize>) = (k1.into_iter().collect(), k2.into_iter().collect());
        let generators = direct_sum_generators(&f1, &f2, &k1, &k2)?;
        let blocks = Blocks(vec![(k1.clone(), k2.clone())]);
        let order = o1.zip(o2).map(|(o1, o2)| {
            let keep1 = k1.iter().map(|&j| VariableId::x(1, j)).collect();
            let keep2 = k2.iter().map(|&k| VariableId::x(1, k)).collect();
            fiber_order(&o1.restrict(&keep1), &o2.restrict(&keep2), &blocks)
        });
        let map = BasisMap::new(
            blocks
                .variables()
                .into_iter()
                .map(|z| {
                    let VariableId::Pair { j, k, .. } = z else { unreachable!() };
                    (z, union(j as usize, k as usize))
                }),
            &matroid,
        );
        return Ok(Construction {
            matroid,
            generators,
            map,
            order,
        });
    }

    let idx = ConnectionIndex::new(&am1, &am2);
    let f1t = lift_series_extension(&f1, idx.gamma1, idx.n1)?;
    let f2t = lift_series_extension(&f2, idx.gamma2, idx.n2)?.rename(swap_blocks);
    let generators = lift_connection(&f1t, &f2t, idx, LiftMode::N)?;
    let order = o1.zip(o2).map(|(o1, o2)| {
        let o1t = series_ext_order(&o1, idx.gamma1);
        let o2t = series_ext_order(&o2, idx.gamma2).rename(swap_blocks);
        connection_order(&o1t, &o2t, idx, LiftMode::N)
    });
    let map = BasisMap::new(
        idx.kept(LiftMode::N).into_iter().map(|z| {
            let VariableId::Pair { j, k, .. } = z else { unreachable!() };
            (z, union(j as usize, k as usize))
        }),
        &matroid,
    );
    Ok(Construction {
        matroid,
        generators,
        map,
        order,
    })
}

/// The same generators and order over the dual's canonical variables.
fn dual_construction(c: &Construction) -> Construction {
    let c = c.canonical();
    let ren = dual_renaming(&c.matroid);
    Construction::from_matroid(
        &c.matroid.dual(),
        c.generators.rename(&ren),
        c.order.as_ref().map(|o| o.rename(&ren)),
    )
}

/// `P(M1, M2) = S(M1*, M2*)*`, with the factor generators moved through the duals.
pub fn parallel_connection(a: &Construction, c1: usize, b: &Construction, c2: usize) -> Result<Construction, LiftError> {
    let s = series_connection(&dual_construction(a), c1, &dual_construction(b), c2)?;
    let matroid = s.matroid.dual();
    let direct = parallel_connection_bases(&a.matroid, c1, &b.matroid, c2)?;
    assert_eq!(matroid, direct, "dual route and direct parallel connection disagree");
    let full = matroid.ground();
    let map = BasisMap::new(s.map.iter().map(|(v, bs)| (v, full.difference(bs))), &matroid);
    Ok(Construction {
        matroid,
        generators: s.generators,
        map,
        order: s.order,
    })
}

/// `M1 ⊕₂ M2 = S(M1, M2) / c`, from the connection variables whose bases contain `c`.
pub fn two_sum(a: &Construction, c1: usize, b: &Construction, c2: usize) -> Result<Construction, LiftError> {
    if degenerate(&a.matroid.anchor(c1)?) {
        return Err(LiftError::DegenerateBasepoint(c1));
    }
    if degenerate(&b.matroid.anchor(c2)?) {
        return Err(LiftError::DegenerateBasepoint(c2));
    }
    let s = series_connection(a, c1, b, c2)?;
    let c = c1;
    let kept: BTreeSet<VariableId> = s.map.iter().filter(|(_, b)| b.contains(c)).map(|(v, _)| v).collect();
    let generators = restrict_to_vars(&s.generators, &kept);
    let order = s.order.as_ref().map(|o| o.restrict(&kept));
    let matroid = s.matroid.contract(c)?;
    let shift = |e: usize| if e > c { e - 1 } else { e };
    let map = BasisMap::new(
        s.map
            .iter()
            .filter(|(v, _)| kept.contains(v))
            .map(|(v, b)| (v, b.without(c).map(shift))),
        &matroid,
    );
    Ok(Construction {
        matroid,
        generators,
        map,
        order,
    })
}
