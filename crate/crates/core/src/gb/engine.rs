//! Buchberger's algorithm specialized to monic binomials.
//!
//! Reducing a monomial by `lead − trail` replaces a multiple of `lead` by the
//! same multiple of `trail`, so the normal form of a monomial is again a
//! monomial and `u − v` reduces to zero exactly when `u` and `v` share a
//! normal form. Everything below works on dense exponent vectors indexed by
//! the order's ranking.

use std::cmp::Ordering;

use rayon::prelude::*;

use super::{Binomial, BinomialSet, GbError, Monomial, MonomialOrder};

type Exps = Vec<u32>;

fn support_mask(m: &[u32]) -> u64 {
    m.iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0u64, |acc, (i, _)| acc | 1 << (i % 64))
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(&x, &y)| x.max(y)).collect()
}

fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| x == 0 || y == 0)
}

fn degree(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// `m / divisor * replacement`, assuming `divisor | m`.
fn rewrite(m: &mut [u32], divisor: &[u32], replacement: &[u32]) {
    for ((x, &d), &r) in m.iter_mut().zip(divisor).zip(replacement) {
        *x = *x - d + r;
    }
}

#[derive(Clone, Debug)]
pub(crate) struct DenseBinomial {
    pub lead: Exps,
    pub trail: Exps,
    mask: u64,
}

impl DenseBinomial {
    /// Orients `a − b` by the order; `None` when `a == b`.
    fn oriented(order: &MonomialOrder, a: Exps, b: Exps) -> Option<Self> {
        let (lead, trail) = match order.compare_dense(&a, &b) {
            Ordering::Equal => return None,
            Ordering::Greater => (a, b),
            Ordering::Less => (b, a),
        };
        let mask = support_mask(&lead);
        Some(DenseBinomial { lead, trail, mask })
    }

    fn to_binomial(&self, order: &MonomialOrder) -> Binomial {
        Binomial::new(order.from_dense(&self.lead), order.from_dense(&self.trail))
            .expect("stored binomials are non-zero")
    }
}

/// A list of oriented binomials used as a rewriting system.
pub(crate) struct Reducer<'a> {
    order: &'a MonomialOrder,
    rules: Vec<DenseBinomial>,
}

impl<'a> Reducer<'a> {
    pub fn new(order: &'a MonomialOrder, set: &BinomialSet) -> Result<Self, GbError> {
        let mut rules = Vec::with_capacity(set.len());
        for b in set.iter() {
            let a = order.to_dense(b.lead())?;
            let t = order.to_dense(b.trail())?;
            rules.extend(DenseBinomial::oriented(order, a, t));
        }
        Ok(Reducer { order, rules })
    }

    fn reduce(&self, m: &mut Exps) {
        reduce_with(m, self.rules.iter());
    }

    fn s_pair_reduces_to_zero(&self, i: usize, j: usize) -> bool {
        let (f, g) = (&self.rules[i], &self.rules[j]);
        if coprime(&f.lead, &g.lead) {
            return true;
        }
        let l = lcm(&f.lead, &g.lead);
        let mut a = l.clone();
        rewrite(&mut a, &f.lead, &f.trail);
        let mut b = l;
        rewrite(&mut b, &g.lead, &g.trail);
        self.reduce(&mut a);
        self.reduce(&mut b);
        a == b
    }

    /// First S-pair (by index) that does not reduce to zero.
    pub fn first_failing_pair(&self) -> Option<(Binomial, Binomial)> {
        let n = self.rules.len();
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        pairs
            .par_iter()
            .find_first(|&&(i, j)| !self.s_pair_reduces_to_zero(i, j))
            .map(|&(i, j)| {
                (
                    self.rules[i].to_binomial(self.order),
                    self.rules[j].to_binomial(self.order),
                )
            })
    }
}

fn reduce_with<'b>(m: &mut Exps, rules: impl Iterator<Item = &'b DenseBinomial> + Clone) {
    loop {
        let mask = support_mask(m);
        let hit = rules
            .clone()
            .find(|r| r.mask & !mask == 0 && divides(&r.lead, m));
        match hit {
            Some(r) => rewrite(m, &r.lead, &r.trail),
            None => return,
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Exps,
    degree: u32,
}

/// Buchberger with the Gebauer–Möller installation of critical pairs.
struct Buchberger<'a> {
    order: &'a MonomialOrder,
    polys: Vec<DenseBinomial>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<'a> Buchberger<'a> {
    fn new(order: &'a MonomialOrder) -> Self {
        Buchberger {
            order,
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn normal_form(&self, m: &mut Exps) {
        reduce_with(m, self.active.iter().map(|&i| &self.polys[i]));
    }

    /// Reduces `a − b` and installs it if it survives.
    fn add(&mut self, mut a: Exps, mut b: Exps) {
        self.normal_form(&mut a);
        self.normal_form(&mut b);
        let Some(h) = DenseBinomial::oriented(self.order, a, b) else {
            return;
        };
        let hi = self.polys.len();
        self.polys.push(h);
        self.update(hi);
    }

    fn update(&mut self, h: usize) {
        let hlead = self.polys[h].lead.clone();

        // candidate pairs (h, g) with their lcms
        let mut cands: Vec<(usize, Exps, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let gl = &self.polys[g].lead;
                (g, lcm(&hlead, gl), coprime(&hlead, gl))
            })
            .collect();

        // chain criterion among the new pairs
        let mut kept: Vec<(usize, Exps, bool)> = Vec::new();
        while let Some((g1, l1, cop1)) = cands.pop() {
            let dominated = cands
                .iter()
                .chain(kept.iter())
                .any(|(_, l2, _)| divides(l2, &l1));
            if cop1 || !dominated {
                kept.push((g1, l1, cop1));
            }
        }

        // drop old pairs whose lcm is a proper multiple through h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !divides(&hlead, &p.lcm) {
                return true;
            }
            let l1 = lcm(&polys[p.i].lead, &hlead);
            let l2 = lcm(&hlead, &polys[p.j].lead);
            l1 == p.lcm || l2 == p.lcm
        });

        // coprime leads need no S-pair
        kept.sort_by_key(|(g, _, _)| *g);
        for (g, l, cop) in kept {
            if !cop {
                let degree = degree(&l);
                self.pairs.push(Pair {
                    i: g,
                    j: h,
                    lcm: l,
                    degree,
                });
            }
        }

        let polys = &self.polys;
        self.active.retain(|&g| !divides(&hlead, &polys[g].lead));
        self.active.push(h);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, p)| (p.degree, p.j, p.i))
            .map(|(idx, _)| idx)?;
        Some(self.pairs.swap_remove(best))
    }

    fn run(&mut self) {
        while let Some(p) = self.next_pair() {
            let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
            let mut a = p.lcm.clone();
            rewrite(&mut a, &f.lead, &f.trail);
            let mut b = p.lcm;
            rewrite(&mut b, &g.lead, &g.trail);
            self.add(a, b);
        }
    }

    /// Minimal, fully reduced basis sorted by `(lead, trail)`.
    fn reduced(&self) -> Vec<DenseBinomial> {
        let mut leads: Vec<&DenseBinomial> = self.active.iter().map(|&i| &self.polys[i]).collect();
        leads.sort_by(|a, b| self.order.compare_dense(&a.lead, &b.lead));
        let mut minimal: Vec<DenseBinomial> = Vec::new();
        for cand in leads {
            if !minimal.iter().any(|m| divides(&m.lead, &cand.lead)) {
                minimal.push(cand.clone());
            }
        }
        let snapshot = minimal.clone();
        for g in &mut minimal {
            reduce_with(&mut g.trail, snapshot.iter());
        }
        minimal.sort_by(|a, b| {
            self.order
                .compare_dense(&a.lead, &b.lead)
                .then_with(|| self.order.compare_dense(&a.trail, &b.trail))
        });
        minimal
    }
}

pub(crate) fn reduced_basis_dense(
    generators: &[(Exps, Exps)],
    order: &MonomialOrder,
) -> Vec<DenseBinomial> {
    let mut bb = Buchberger::new(order);
    for (a, b) in generators {
        bb.add(a.clone(), b.clone());
    }
    bb.run();
    bb.reduced()
}

fn dense_pairs(set: &BinomialSet, order: &MonomialOrder) -> Result<Vec<(Exps, Exps)>, GbError> {
    set.iter()
        .map(|b| Ok((order.to_dense(b.lead())?, order.to_dense(b.trail())?)))
        .collect()
}

fn check_covers(set: &BinomialSet, order: &MonomialOrder) -> Result<(), GbError> {
    match set.ambient().iter().find(|v| !order.contains(**v)) {
        Some(&v) => Err(GbError::UnknownVariable(v)),
        None => Ok(()),
    }
}

/// The reduced Gröbner basis of the ideal generated by `set`.
pub fn buchberger(set: &BinomialSet, order: &MonomialOrder) -> Result<BinomialSet, GbError> {
    check_covers(set, order)?;
    let gens = dense_pairs(set, order)?;
    let basis = reduced_basis_dense(&gens, order);
    BinomialSet::new(
        set.ambient().clone(),
        basis.iter().map(|b| b.to_binomial(order)),
    )
}

/// S-binomial of `f` and `g` after orienting both by `order`; `None` for zero.
pub fn s_binomial(f: &Binomial, g: &Binomial, order: &MonomialOrder) -> Result<Option<Binomial>, GbError> {
    let orient = |b: &Binomial| -> Result<DenseBinomial, GbError> {
        let a = order.to_dense(b.lead())?;
        let t = order.to_dense(b.trail())?;
        Ok(DenseBinomial::oriented(order, a, t).expect("binomials are non-zero"))
    };
    let (f, g) = (orient(f)?, orient(g)?);
    let l = lcm(&f.lead, &g.lead);
    let mut a = l.clone();
    rewrite(&mut a, &f.lead, &f.trail);
    let mut b = l;
    rewrite(&mut b, &g.lead, &g.trail);
    Ok(DenseBinomial::oriented(order, a, b).map(|d| d.to_binomial(order)))
}

/// Normal form of a monomial modulo `set` (oriented by `order`).
pub fn normal_form_monomial(
    m: &Monomial,
    set: &BinomialSet,
    order: &MonomialOrder,
) -> Result<Monomial, GbError> {
    let reducer = Reducer::new(order, set)?;
    let mut d = order.to_dense(m)?;
    reducer.reduce(&mut d);
    Ok(order.from_dense(&d))
}

/// Normal form of `b` modulo `set`; `None` when it reduces to zero.
pub fn normal_form(
    b: &Binomial,
    set: &BinomialSet,
    order: &MonomialOrder,
) -> Result<Option<Binomial>, GbError> {
    let reducer = Reducer::new(order, set)?;
    let mut lead = order.to_dense(b.lead())?;
    let mut trail = order.to_dense(b.trail())?;
    reducer.reduce(&mut lead);
    reducer.reduce(&mut trail);
    Ok(DenseBinomial::oriented(order, lead, trail).map(|d| d.to_binomial(order)))
}

/// True iff every S-binomial of `set` reduces to zero modulo `set`.
pub fn is_groebner(set: &BinomialSet, order: &MonomialOrder) -> Result<bool, GbError> {
    Ok(groebner_witness(set, order)?.is_none())
}

/// The first pair whose S-binomial does not reduce to zero, if any.
pub fn groebner_witness(
    set: &BinomialSet,
    order: &MonomialOrder,
) -> Result<Option<(Binomial, Binomial)>, GbError> {
    check_covers(set, order)?;
    let oriented = set.oriented(order)?;
    Ok(Reducer::new(order, &oriented)?.first_failing_pair())
}

/// True iff `a` and `b` generate the same ideal (equal reduced Gröbner bases).
pub fn ideals_equal(a: &BinomialSet, b: &BinomialSet, order: &MonomialOrder) -> Result<bool, GbError> {
    if a.ambient() != b.ambient() {
        return Err(GbError::AmbientMismatch);
    }
    let (ga, gb) = rayon::join(|| buchberger(a, order), || buchberger(b, order));
    Ok(ga?.elements() == gb?.elements())
}

/// True iff `b` lies in the ideal of `gb`, which must be a Gröbner basis under `order`.
pub fn reduces_to_zero(b: &Binomial, gb: &BinomialSet, order: &MonomialOrder) -> Result<bool, GbError> {
    Ok(normal_form(b, gb, order)?.is_none())
}
