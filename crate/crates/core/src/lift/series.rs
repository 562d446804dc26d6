use std::collections::BTreeSet;

use rayon::prelude::*;

use super::{block_vars, to_anchored, BasisMap, Construction, LiftError};
use crate::gb::{Binomial, BinomialSet, Monomial, MonomialOrder, TieBreak, VariableId};
use crate::matroid::{validate_matroid, AnchoredMatroid, ElementSet, Matroid};

/// How the `[γ]`-slots of the two sides of a binomial are matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pairing {
    /// l-th smallest slot of the lead with the l-th smallest of the trail.
    #[default]
    Canonical,
    /// l-th smallest of the lead with the l-th largest of the trail.
    Reversed,
}

/// A binomial over `x1` variables split at `gamma`, with multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitBinomial {
    pub binomial: Binomial,
    pub low_lead: Vec<usize>,
    pub low_trail: Vec<usize>,
    pub high_lead: Vec<usize>,
    pub high_trail: Vec<usize>,
}

impl SplitBinomial {
    pub fn u(&self) -> usize {
        self.low_lead.len()
    }

    pub fn v(&self) -> usize {
        self.high_lead.len()
    }
}

fn x1_indices(m: &Monomial) -> Result<Vec<usize>, LiftError> {
    m.expanded()
        .into_iter()
        .map(|v| match v {
            VariableId::Basis { block: 1, index } => Ok(index as usize),
            other => Err(LiftError::BlockMismatch(format!("{other} is not a block-1 basis variable"))),
        })
        .collect()
}

/// Splits each side of `f` into indices `≤ gamma` and `> gamma` (ascending).
pub fn classify_split(f: &Binomial, gamma: usize) -> Result<SplitBinomial, LiftError> {
    let lead = x1_indices(f.lead())?;
    let trail = x1_indices(f.trail())?;
    let (low_lead, high_lead): (Vec<usize>, Vec<usize>) = lead.into_iter().partition(|&j| j <= gamma);
    let (low_trail, high_trail): (Vec<usize>, Vec<usize>) = trail.into_iter().partition(|&j| j <= gamma);
    if low_lead.len() != low_trail.len() || high_lead.len() != high_trail.len() {
        return Err(LiftError::UnbalancedSplit(f.clone()));
    }
    Ok(SplitBinomial {
        binomial: f.clone(),
        low_lead,
        low_trail,
        high_lead,
        high_trail,
    })
}

/// All `f^I` for `I ∈ {1,2}^u`, in the order of `I` read as a binary number.
pub fn lift_binomial(f: &Binomial, gamma: usize, pairing: Pairing) -> Result<Vec<Binomial>, LiftError> {
    let split = classify_split(f, gamma)?;
    let u = split.u();
    let mut trail_low = split.low_trail.clone();
    if pairing == Pairing::Reversed {
        trail_low.reverse();
    }
    let high = |idx: &[usize]| idx.iter().map(|&k| VariableId::x(1, k)).collect::<Vec<_>>();
    let out = (0u64..1 << u)
        .filter_map(|bits| {
            let block = |l: usize| if bits >> (u - 1 - l) & 1 == 1 { 2 } else { 1 };
            let lead = (0..u)
                .map(|l| VariableId::x(block(l), split.low_lead[l]))
                .chain(high(&split.high_lead));
            let trail = (0..u)
                .map(|l| VariableId::x(block(l), trail_low[l]))
                .chain(high(&split.high_trail));
            Binomial::from_vars(lead, trail)
        })
        .collect();
    Ok(out)
}

/// `x1_{j2} x2_{j1} − x1_{j1} x2_{j2}` for `1 ≤ j1 < j2 ≤ gamma`.
pub fn swap_quadrics(gamma: usize) -> Vec<Binomial> {
    let mut out = Vec::new();
    for j1 in 1..=gamma {
        for j2 in j1 + 1..=gamma {
            out.push(
                Binomial::from_vars(
                    [VariableId::x(1, j2), VariableId::x(2, j1)],
                    [VariableId::x(1, j1), VariableId::x(2, j2)],
                )
                .expect("distinct indices"),
            );
        }
    }
    out
}

/// The lifted set `F̃` over `x1_1..x1_n, x2_1..x2_gamma` with canonical pairing.
pub fn lift_series_extension(f: &BinomialSet, gamma: usize, n: usize) -> Result<BinomialSet, LiftError> {
    lift_series_extension_with(f, gamma, n, Pairing::Canonical)
}

pub fn lift_series_extension_with(
    f: &BinomialSet,
    gamma: usize,
    n: usize,
    pairing: Pairing,
) -> Result<BinomialSet, LiftError> {
    if gamma > n {
        return Err(LiftError::BlockMismatch(format!("gamma {gamma} exceeds n {n}")));
    }
    let x1: BTreeSet<VariableId> = block_vars(1, 1..=n).into_iter().collect();
    if let Some(v) = f.iter().flat_map(|b| b.vars()).find(|v| !x1.contains(v)) {
        return Err(LiftError::BlockMismatch(format!("{v} is not among x1_1..x1_{n}")));
    }
    let lifted: Vec<Vec<Binomial>> = f
        .elements()
        .par_iter()
        .map(|b| lift_binomial(b, gamma, pairing))
        .collect::<Result<_, _>>()?;
    let ambient = x1.into_iter().chain(block_vars(2, 1..=gamma)).collect();
    let elements = lifted.into_iter().flatten().chain(swap_quadrics(gamma));
    Ok(BinomialSet::new(ambient, elements)?)
}

/// The order under which `F̃` is claimed to be a Gröbner basis when `F` is
/// one under `base` (an order on `x1_1..x1_n`).
///
/// Every weight row of `base` is copied onto `x2_j` from `x1_j`. The
/// tie-break keeps the kind of `base` and its ranking, with `x2_j` placed
/// directly before `x1_j` (lex) or directly after it (degrevlex). Each `f^I`
/// then has the image of `f`'s initial term as its initial term, and for
/// `a` ranked above `b` in `[gamma]` the swap quadric has `x1_b x2_a` initial.
pub fn series_ext_order(base: &MonomialOrder, gamma: usize) -> MonomialOrder {
    assert!(
        base.elimination_block().is_none(),
        "base order must not carry an elimination block"
    );
    let low = |v: VariableId| match v {
        VariableId::Basis { block: 1, index } if index as usize <= gamma => Some(index as usize),
        _ => None,
    };
    let mut ranking = Vec::with_capacity(base.num_vars() + gamma);
    for &v in base.ranking() {
        match (low(v), base.tie_break()) {
            (Some(j), TieBreak::Lex) => ranking.extend([VariableId::x(2, j), v]),
            (Some(j), TieBreak::Degrevlex) => ranking.extend([v, VariableId::x(2, j)]),
            (None, _) => ranking.push(v),
        }
    }
    assert_eq!(ranking.len(), base.num_vars() + gamma, "base order must rank x1_1..x1_gamma");
    let mut order = MonomialOrder::new(base.tie_break(), ranking);
    for mut w in base.weights() {
        let copies: Vec<(VariableId, u64)> = w
            .iter()
            .filter_map(|(&v, &x)| low(v).map(|j| (VariableId::x(2, j), x)))
            .collect();
        w.extend(copies);
        order = order.with_weight(&w);
    }

    let low_ranked: Vec<usize> = base.ranking().iter().filter_map(|&v| low(v)).collect();
    for (p, &a) in low_ranked.iter().enumerate() {
        for &b in &low_ranked[p + 1..] {
            let lead = Monomial::product([VariableId::x(1, b), VariableId::x(2, a)]);
            let trail = Monomial::product([VariableId::x(1, a), VariableId::x(2, b)]);
            assert!(
                order.compare(&lead, &trail).expect("ranked").is_gt(),
                "swap quadric for ({a},{b}) has the wrong initial term"
            );
        }
    }
    order
}

/// `M +_c (d+1)`: bases `B ∪ {d+1}` and `B ∪ {c}` for `c ∉ B`, with
/// `x1_j ↦ B_j ∪ {d+1}` and `x2_j ↦ B_j ∪ {c}` in anchored numbering.
pub fn series_extension(am: &AnchoredMatroid) -> (Matroid, BasisMap) {
    let d = am.matroid().ground_size();
    let c = am.anchor();
    let mut entries: Vec<(VariableId, ElementSet)> = am
        .anchored_bases()
        .enumerate()
        .map(|(j, b)| (VariableId::x(1, j + 1), b.with(d + 1)))
        .collect();
    entries.extend(
        am.anchored_bases()
            .take(am.gamma())
            .enumerate()
            .map(|(j, b)| (VariableId::x(2, j + 1), b.with(c))),
    );
    let m = validate_matroid(d + 1, entries.iter().map(|e| e.1)).expect("series extensions are matroids");
    let map = BasisMap::new(entries, &m);
    (m, map)
}

/// Series extension at `c` with generators lifted from `f` (over canonical
/// `x1` variables of `m`). With an order under which `f` is a Gröbner basis,
/// the result carries the lifted order. A coloop anchor keeps `f` unchanged.
pub fn series_extension_generators(
    m: &Matroid,
    c: usize,
    f: &BinomialSet,
    order: Option<&MonomialOrder>,
) -> Result<Construction, LiftError> {
    let am = m.anchor(c)?;
    let (ext, map) = series_extension(&am);
    let rename = to_anchored(&am);
    let f_anch = f.rename(&rename);
    let order_anch = order.map(|o| o.rename(&rename));
    if am.anchor_is_coloop() {
        return Ok(Construction {
            matroid: ext,
            generators: f_anch,
            map,
            order: order_anch,
        });
    }
    let generators = lift_series_extension(&f_anch, am.gamma(), am.num_bases())?;
    Ok(Construction {
        matroid: ext,
        generators,
        map,
        order: order_anch.map(|o| series_ext_order(&o, am.gamma())),
    })
}

/// Canonical index bijection `i ↦ index of E∖B_i in the dual`.
fn dual_index(m: &Matroid) -> (Matroid, Vec<usize>) {
    let dual = m.dual();
    let full = m.ground();
    let idx = m
        .bases()
        .iter()
        .map(|&b| dual.basis_index(full.difference(b)).expect("complements are dual bases"))
        .collect();
    (dual, idx)
}

pub(super) fn dual_renaming(m: &Matroid) -> impl Fn(VariableId) -> VariableId {
    let (_, idx) = dual_index(m);
    move |v| match v {
        VariableId::Basis { block: 1, index } => VariableId::x(1, idx[index as usize - 1] + 1),
        other => other,
    }
}

/// Renames canonical `x1` variables of `m` along `B ↦ E∖B` onto those of the dual.
pub fn dual_transfer(set: &BinomialSet, m: &Matroid) -> BinomialSet {
    set.rename(dual_renaming(m))
}

/// `(M* +_c (d+1))*` with `x ↦ E∖(image in the series extension)`.
pub fn parallel_extension(am: &AnchoredMatroid) -> (Matroid, BasisMap) {
    let dual = am.matroid().dual();
    let am_dual = dual.anchor(am.anchor()).expect("anchor in range");
    let (ext, map) = series_extension(&am_dual);
    let p = ext.dual();
    let full = ext.ground();
    let map = BasisMap::new(map.iter().map(|(v, b)| (v, full.difference(b))), &p);
    (p, map)
}

/// Parallel extension at `c` with generators transferred through the dual.
pub fn parallel_extension_generators(
    m: &Matroid,
    c: usize,
    f: &BinomialSet,
    order: Option<&MonomialOrder>,
) -> Result<Construction, LiftError> {
    let dual = m.dual();
    let ren = dual_renaming(m);
    let f_dual = f.rename(&ren);
    let order_dual = order.map(|o| o.rename(&ren));
    let s = series_extension_generators(&dual, c, &f_dual, order_dual.as_ref())?;
    let p = s.matroid.dual();
    let full = s.matroid.ground();
    let map = BasisMap::new(s.map.iter().map(|(v, b)| (v, full.difference(b))), &p);
    Ok(Construction {
        matroid: p,
        generators: s.generators,
        map,
        order: s.order,
    })
}
