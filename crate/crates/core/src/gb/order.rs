use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{GbError, Monomial, VariableId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TieBreak {
    Lex,
    Degrevlex,
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieBreak::Lex => "lex",
            TieBreak::Degrevlex => "degrevlex",
        })
    }
}

/// A monomial order on an explicit ranked set of variables.
///
/// Monomials are compared by, in sequence:
/// 1. total degree in the elimination block (when one is set),
/// 2. each weight vector in turn,
/// 3. the tie-break (`lex` or `degrevlex`) over `ranking`, highest first.
///
/// All weights are non-negative, so every such order is a multiplicative
/// well-order.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    ranking: Vec<VariableId>,
    position: HashMap<VariableId, usize>,
    weights: Vec<Vec<u64>>,
    tie_break: TieBreak,
    elimination: Vec<bool>,
    has_elimination: bool,
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.spec()).unwrap_or_default())
    }
}

impl MonomialOrder {
    pub fn new(tie_break: TieBreak, ranking: Vec<VariableId>) -> Self {
        let position: HashMap<VariableId, usize> =
            ranking.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        assert_eq!(position.len(), ranking.len(), "ranking repeats a variable");
        let n = ranking.len();
        MonomialOrder {
            ranking,
            position,
            weights: Vec::new(),
            tie_break,
            elimination: vec![false; n],
            has_elimination: false,
        }
    }

    pub fn lex(ranking: Vec<VariableId>) -> Self {
        MonomialOrder::new(TieBreak::Lex, ranking)
    }

    pub fn degrevlex(ranking: Vec<VariableId>) -> Self {
        MonomialOrder::new(TieBreak::Degrevlex, ranking)
    }

    /// Appends a weight vector, compared after all previously added ones.
    /// Variables missing from `weight` get weight 0.
    pub fn with_weight(mut self, weight: &BTreeMap<VariableId, u64>) -> Self {
        let row = self
            .ranking
            .iter()
            .map(|v| weight.get(v).copied().unwrap_or(0))
            .collect();
        self.weights.push(row);
        self
    }

    /// Ranks every monomial involving `block` above every monomial without it.
    pub fn with_elimination(mut self, block: &BTreeSet<VariableId>) -> Self {
        for (i, v) in self.ranking.iter().enumerate() {
            self.elimination[i] = block.contains(v);
        }
        self.has_elimination = true;
        self
    }

    pub fn ranking(&self) -> &[VariableId] {
        &self.ranking
    }

    pub fn tie_break(&self) -> TieBreak {
        self.tie_break
    }

    pub fn num_vars(&self) -> usize {
        self.ranking.len()
    }

    pub fn contains(&self, v: VariableId) -> bool {
        self.position.contains_key(&v)
    }

    pub fn position(&self, v: VariableId) -> Option<usize> {
        self.position.get(&v).copied()
    }

    /// Weight vectors as sparse maps, in comparison order.
    pub fn weights(&self) -> Vec<BTreeMap<VariableId, u64>> {
        self.weights
            .iter()
            .map(|row| {
                self.ranking
                    .iter()
                    .zip(row)
                    .filter(|(_, &w)| w > 0)
                    .map(|(&v, &w)| (v, w))
                    .collect()
            })
            .collect()
    }

    pub fn elimination_block(&self) -> Option<BTreeSet<VariableId>> {
        self.has_elimination.then(|| {
            self.ranking
                .iter()
                .zip(&self.elimination)
                .filter(|(_, &e)| e)
                .map(|(&v, _)| v)
                .collect()
        })
    }

    pub fn to_dense(&self, m: &Monomial) -> Result<Vec<u32>, GbError> {
        let mut out = vec![0; self.ranking.len()];
        for (v, e) in m.iter() {
            let i = self.position(v).ok_or(GbError::UnknownVariable(v))?;
            out[i] = e;
        }
        Ok(out)
    }

    pub fn from_dense(&self, exps: &[u32]) -> Monomial {
        Monomial::from_pairs(
            self.ranking
                .iter()
                .zip(exps)
                .filter(|(_, &e)| e > 0)
                .map(|(&v, &e)| (v, e)),
        )
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering, GbError> {
        Ok(self.compare_dense(&self.to_dense(a)?, &self.to_dense(b)?))
    }

    pub(crate) fn compare_dense(&self, a: &[u32], b: &[u32]) -> Ordering {
        if self.has_elimination {
            let block = |m: &[u32]| -> u64 {
                m.iter()
                    .zip(&self.elimination)
                    .filter(|(_, &e)| e)
                    .map(|(&x, _)| x as u64)
                    .sum()
            };
            match block(a).cmp(&block(b)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        for row in &self.weights {
            let dot = |m: &[u32]| -> u64 { m.iter().zip(row).map(|(&x, &w)| x as u64 * w).sum() };
            match dot(a).cmp(&dot(b)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        match self.tie_break {
            TieBreak::Lex => {
                for (x, y) in a.iter().zip(b) {
                    if x != y {
                        return x.cmp(y);
                    }
                }
                Ordering::Equal
            }
            TieBreak::Degrevlex => {
                let da: u64 = a.iter().map(|&x| x as u64).sum();
                let db: u64 = b.iter().map(|&x| x as u64).sum();
                if da != db {
                    return da.cmp(&db);
                }
                for (x, y) in a.iter().zip(b).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Renames every variable; `f` must be injective on the ranking.
    pub fn rename(&self, mut f: impl FnMut(VariableId) -> VariableId) -> MonomialOrder {
        let ranking: Vec<VariableId> = self.ranking.iter().map(|&v| f(v)).collect();
        let mut out = MonomialOrder::new(self.tie_break, ranking);
        out.weights = self.weights.clone();
        out.elimination = self.elimination.clone();
        out.has_elimination = self.has_elimination;
        out
    }

    /// Non-negative weight rows that, compared in sequence, decide exactly as
    /// this order does: the elimination block row, the weight rows, then the
    /// tie-break (unit rows for lex; the degree row and then prefix sums of
    /// the ranking for degrevlex).
    pub fn as_weight_rows(&self) -> Vec<BTreeMap<VariableId, u64>> {
        let mut rows = Vec::new();
        if let Some(block) = self.elimination_block() {
            rows.push(block.into_iter().map(|v| (v, 1)).collect());
        }
        rows.extend(self.weights());
        let n = self.ranking.len();
        match self.tie_break {
            TieBreak::Lex => {
                rows.extend(self.ranking.iter().map(|&v| BTreeMap::from([(v, 1)])));
            }
            TieBreak::Degrevlex => {
                for len in (1..=n).rev() {
                    rows.push(self.ranking[..len].iter().map(|&v| (v, 1)).collect());
                }
            }
        }
        rows
    }

    /// The induced order on monomials in `vars`; comparisons between such
    /// monomials are unchanged.
    pub fn restrict(&self, vars: &BTreeSet<VariableId>) -> MonomialOrder {
        let ranking: Vec<VariableId> = self.ranking.iter().copied().filter(|v| vars.contains(v)).collect();
        let mut out = MonomialOrder::new(self.tie_break, ranking);
        for w in self.weights() {
            out = out.with_weight(&w);
        }
        if let Some(block) = self.elimination_block() {
            out = out.with_elimination(&block);
        }
        out
    }

    /// Serializable description of this order.
    pub fn spec(&self) -> OrderSpec {
        OrderSpec {
            tie_break: self.tie_break,
            ranking: self.ranking.clone(),
            weights: self.weights(),
            elimination: self.elimination_block(),
        }
    }

    pub fn from_spec(spec: &OrderSpec) -> MonomialOrder {
        let mut order = MonomialOrder::new(spec.tie_break, spec.ranking.clone());
        for w in &spec.weights {
            order = order.with_weight(w);
        }
        if let Some(block) = &spec.elimination {
            order = order.with_elimination(block);
        }
        order
    }
}

/// JSON form of a [`MonomialOrder`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSpec {
    pub tie_break: TieBreak,
    pub ranking: Vec<VariableId>,
    #[serde(default)]
    pub weights: Vec<BTreeMap<VariableId, u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elimination: Option<BTreeSet<VariableId>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> VariableId {
        VariableId::x(1, i)
    }

    #[test]
    fn weight_decides_first() {
        let order = MonomialOrder::lex(vec![x(1), x(2)])
            .with_weight(&BTreeMap::from([(x(1), 1), (x(2), 0)]));
        let a = Monomial::var(x(1));
        let b = Monomial::var(x(2));
        assert_eq!(order.compare(&a, &b).unwrap(), Ordering::Greater);
        assert_eq!(order.compare(&a, &a).unwrap(), Ordering::Equal);
    }

    #[test]
    fn degrevlex_basics() {
        let order = MonomialOrder::degrevlex(vec![x(1), x(2), x(3)]);
        let m = |v: &[usize]| Monomial::product(v.iter().map(|&i| x(i)));
        // x2^2 > x1 x3 under degrevlex
        assert_eq!(order.compare(&m(&[2, 2]), &m(&[1, 3])).unwrap(), Ordering::Greater);
        assert_eq!(order.compare(&m(&[1, 1, 1]), &m(&[1, 2])).unwrap(), Ordering::Greater);
        let lex = MonomialOrder::lex(vec![x(1), x(2), x(3)]);
        assert_eq!(lex.compare(&m(&[1, 3]), &m(&[2, 2])).unwrap(), Ordering::Greater);
    }

    #[test]
    fn unknown_variable_is_an_error() {
        let order = MonomialOrder::lex(vec![x(1)]);
        assert_eq!(
            order.compare(&Monomial::var(x(2)), &Monomial::one()),
            Err(GbError::UnknownVariable(x(2)))
        );
    }

    #[test]
    fn elimination_block_dominates() {
        let s = VariableId::s(1);
        let order = MonomialOrder::degrevlex(vec![s, x(1)])
            .with_elimination(&BTreeSet::from([s]));
        let big = Monomial::product([x(1); 5]);
        assert_eq!(order.compare(&Monomial::var(s), &big).unwrap(), Ordering::Greater);
    }

    #[test]
    fn restriction_keeps_comparisons() {
        let order = MonomialOrder::degrevlex(vec![x(1), x(2), x(3)])
            .with_weight(&BTreeMap::from([(x(2), 2), (x(3), 1)]));
        let sub = order.restrict(&BTreeSet::from([x(1), x(3)]));
        let m = |v: &[usize]| Monomial::product(v.iter().map(|&i| x(i)));
        for (a, b) in [(m(&[1, 1]), m(&[3])), (m(&[1, 3]), m(&[3, 3])), (m(&[1]), m(&[3]))] {
            assert_eq!(sub.compare(&a, &b).unwrap(), order.compare(&a, &b).unwrap());
        }
    }

    #[test]
    fn spec_round_trip() {
        let order = MonomialOrder::degrevlex(vec![x(1), x(2)])
            .with_weight(&BTreeMap::from([(x(2), 3)]));
        let json = serde_json::to_string(&order.spec()).unwrap();
        let back: OrderSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(MonomialOrder::from_spec(&back), order);
    }
}
