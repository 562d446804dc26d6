use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use super::{Binomial, GbError, Monomial, MonomialOrder, VariableId};

/// A finite, duplicate-free list of binomials over a declared variable universe.
#[derive(Clone)]
pub struct BinomialSet {
    ambient: BTreeSet<VariableId>,
    elements: Vec<Binomial>,
    // canonical forms of `elements`
    seen: HashSet<Binomial>,
}

impl PartialEq for BinomialSet {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.elements == other.elements
    }
}

impl Eq for BinomialSet {}

impl std::fmt::Debug for BinomialSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.elements).finish()
    }
}

impl BinomialSet {
    pub fn empty(ambient: BTreeSet<VariableId>) -> Self {
        BinomialSet {
            ambient,
            elements: Vec::new(),
            seen: HashSet::new(),
        }
    }

    fn from_parts(ambient: BTreeSet<VariableId>, elements: Vec<Binomial>) -> Self {
        let seen = elements.iter().map(|b| b.canonical()).collect();
        BinomialSet {
            ambient,
            elements,
            seen,
        }
    }

    /// Collects `elements`, dropping sign-duplicates. Every variable must lie in `ambient`.
    pub fn new(
        ambient: BTreeSet<VariableId>,
        elements: impl IntoIterator<Item = Binomial>,
    ) -> Result<Self, GbError> {
        let mut set = BinomialSet::empty(ambient);
        for b in elements {
            set.insert(b)?;
        }
        Ok(set)
    }

    /// Ambient set is the union of the variables of `elements`.
    pub fn from_elements(elements: impl IntoIterator<Item = Binomial>) -> Self {
        let elements: Vec<Binomial> = elements.into_iter().collect();
        let ambient = elements.iter().flat_map(|b| b.vars()).collect();
        BinomialSet::new(ambient, elements).expect("ambient covers all variables")
    }

    /// Inserts `b` unless it (or its negative) is already present. Returns
    /// whether the set changed.
    pub fn insert(&mut self, b: Binomial) -> Result<bool, GbError> {
        if let Some(v) = b.vars().find(|v| !self.ambient.contains(v)) {
            return Err(GbError::VariableOutsideAmbient(v));
        }
        if !self.seen.insert(b.canonical()) {
            log::debug!("dropping duplicate generator {b}");
            return Ok(false);
        }
        self.elements.push(b);
        Ok(true)
    }

    pub fn ambient(&self) -> &BTreeSet<VariableId> {
        &self.ambient
    }

    pub fn elements(&self) -> &[Binomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Binomial> {
        self.elements.iter()
    }

    pub fn contains(&self, b: &Binomial) -> bool {
        self.seen.contains(&b.canonical())
    }

    /// Same elements, compared as sets up to sign.
    pub fn same_elements(&self, other: &BinomialSet) -> bool {
        self.len() == other.len() && self.iter().all(|b| other.contains(b))
    }

    /// Each element oriented with its order-initial side as lead, sorted by
    /// `(lead, trail)` under the order.
    pub fn oriented(&self, order: &MonomialOrder) -> Result<BinomialSet, GbError> {
        let mut keyed = Vec::with_capacity(self.elements.len());
        for b in &self.elements {
            let lead = order.to_dense(b.lead())?;
            let trail = order.to_dense(b.trail())?;
            let (lead, trail, b) = if order.compare_dense(&lead, &trail).is_lt() {
                (trail, lead, b.swapped())
            } else {
                (lead, trail, b.clone())
            };
            keyed.push((lead, trail, b));
        }
        keyed.sort_by(|a, b| {
            order
                .compare_dense(&a.0, &b.0)
                .then_with(|| order.compare_dense(&a.1, &b.1))
        });
        Ok(BinomialSet::from_parts(
            self.ambient.clone(),
            keyed.into_iter().map(|(_, _, b)| b).collect(),
        ))
    }

    /// Default orientation and order (see [`Monomial::default_cmp`]).
    pub fn canonicalized(&self) -> BinomialSet {
        let mut elements: Vec<Binomial> = self.elements.iter().map(|b| b.canonical()).collect();
        elements.sort_by(|a, b| {
            a.lead()
                .default_cmp(b.lead())
                .then_with(|| a.trail().default_cmp(b.trail()))
        });
        BinomialSet::from_parts(self.ambient.clone(), elements)
    }

    /// Renames variables in the ambient set and in every element.
    pub fn rename(&self, mut f: impl FnMut(VariableId) -> VariableId) -> BinomialSet {
        let ambient = self.ambient.iter().map(|&v| f(v)).collect();
        BinomialSet::new(ambient, self.elements.iter().map(|b| b.rename(&mut f)))
            .expect("renaming keeps variables inside the renamed ambient")
    }

    /// Replaces the ambient set; fails if an element leaves it.
    pub fn with_ambient(&self, ambient: BTreeSet<VariableId>) -> Result<BinomialSet, GbError> {
        BinomialSet::new(ambient, self.elements.iter().cloned())
    }

    /// Union of elements and ambient sets.
    pub fn union(&self, other: &BinomialSet) -> BinomialSet {
        let ambient = self.ambient.union(&other.ambient).copied().collect();
        BinomialSet::new(ambient, self.iter().chain(other.iter()).cloned())
            .expect("union ambient covers both")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("binomial set serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<BinomialSet, GbError> {
        let doc: SetDoc = serde_json::from_str(text).map_err(|e| GbError::Parse(e.to_string()))?;
        let mut set = BinomialSet::empty(doc.ambient.into_iter().collect());
        for e in doc.elements {
            let lead = Monomial::from_pairs(e.lead);
            let trail = Monomial::from_pairs(e.trail);
            match Binomial::new(lead, trail) {
                Some(b) => {
                    set.insert(b)?;
                }
                None => log::warn!("dropping degenerate generator with equal sides"),
            }
        }
        Ok(set)
    }
}

impl Serialize for BinomialSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("ambient", &self.ambient)?;
        map.serialize_entry("elements", &self.elements)?;
        map.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SetDoc {
    ambient: Vec<VariableId>,
    elements: Vec<ElementDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ElementDoc {
    lead: BTreeMap<VariableId, u32>,
    trail: BTreeMap<VariableId, u32>,
}

/// Elements all of whose variables lie in `keep`; the ambient set becomes `keep`.
pub fn restrict_to_vars(set: &BinomialSet, keep: &BTreeSet<VariableId>) -> BinomialSet {
    let kept: HashSet<VariableId> = keep.iter().copied().collect();
    BinomialSet::from_parts(
        keep.clone(),
        set.iter()
            .filter(|b| b.vars().all(|v| kept.contains(&v)))
            .cloned()
            .collect(),
    )
}
