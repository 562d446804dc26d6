//! Matroids given by their bases on the ground set `{1..d}`.

mod connectivity;
mod iso;
mod set;

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use iso::{canonical_invariant, has_minor, is_isomorphic, Invariant};
pub use set::{ElementSet, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("the collection of bases is empty")]
    EmptyBases,
    #[error("bases {first:?} and {second:?} have different cardinalities")]
    UnequalCardinality { first: Vec<usize>, second: Vec<usize> },
    #[error("exchange axiom fails for B={b:?}, B'={b_prime:?}, x={x}")]
    ExchangeFails { b: Vec<usize>, b_prime: Vec<usize>, x: usize },
    #[error("element {element} is outside the ground set {{1..{d}}}")]
    ElementOutOfRange { element: usize, d: usize },
    #[error("ground set of size {0} exceeds the supported maximum of {max}", max = MAX_GROUND)]
    GroundTooLarge(usize),
    #[error("malformed matroid document: {0}")]
    Parse(String),
}

/// A matroid on `{1..d}` stored as its canonically ordered list of bases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matroid {
    ground_size: usize,
    bases: Vec<ElementSet>,
}

impl std::fmt::Debug for Matroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Matroid(d={}, bases=[", self.ground_size)?;
        for (i, b) in self.bases.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "])")
    }
}

/// Checks the basis axioms by brute force and returns the canonical matroid.
pub fn validate_matroid<I>(d: usize, bases: I) -> Result<Matroid, MatroidError>
where
    I: IntoIterator<Item = ElementSet>,
{
    if d > MAX_GROUND {
        return Err(MatroidError::GroundTooLarge(d));
    }
    let ground = ElementSet::full(d);
    let mut list: Vec<ElementSet> = bases.into_iter().collect();
    list.sort();
    list.dedup();
    let Some(&first) = list.first() else {
        return Err(MatroidError::EmptyBases);
    };
    for b in &list {
        if !b.is_subset(ground) {
            let element = b.difference(ground).iter().next().unwrap_or(0);
            return Err(MatroidError::ElementOutOfRange { element, d });
        }
    }
    if let Some(b) = list.iter().find(|b| b.len() != first.len()) {
        return Err(MatroidError::UnequalCardinality {
            first: first.to_vec(),
            second: b.to_vec(),
        });
    }
    if let Some((b, b_prime, x)) = exchange_violation(&list) {
        return Err(MatroidError::ExchangeFails {
            b: b.to_vec(),
            b_prime: b_prime.to_vec(),
            x,
        });
    }
    Ok(Matroid {
        ground_size: d,
        bases: list,
    })
}

/// First `(B, B', x)` in canonical order with no valid exchange partner.
fn exchange_violation(bases: &[ElementSet]) -> Option<(ElementSet, ElementSet, usize)> {
    let lookup: HashSet<ElementSet> = bases.iter().copied().collect();
    for &b in bases {
        for &b_prime in bases {
            for x in b.difference(b_prime).iter() {
                let ok = b_prime
                    .difference(b)
                    .iter()
                    .any(|y| lookup.contains(&b.without(x).with(y)));
                if !ok {
                    return Some((b, b_prime, x));
                }
            }
        }
    }
    None
}

/// Relabeling that compacts `{1..d}` after removing one element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relabeling {
    pub removed: usize,
}

impl Relabeling {
    /// Image of an old element, or `None` for the removed one.
    pub fn apply(self, e: usize) -> Option<usize> {
        match e.cmp(&self.removed) {
            std::cmp::Ordering::Less => Some(e),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(e - 1),
        }
    }

    /// Preimage of a new element.
    pub fn preimage(self, e: usize) -> usize {
        if e < self.removed {
            e
        } else {
            e + 1
        }
    }

    fn apply_set(self, s: ElementSet) -> ElementSet {
        s.iter().filter_map(|e| self.apply(e)).collect()
    }
}

/// Loops and coloops of a matroid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementClass {
    pub loops: ElementSet,
    pub coloops: ElementSet,
}

impl Matroid {
    /// Validating constructor from explicit basis lists.
    pub fn new(d: usize, bases: &[Vec<usize>]) -> Result<Self, MatroidError> {
        for b in bases {
            if let Some(&e) = b.iter().find(|&&e| e == 0 || e > d) {
                return Err(MatroidError::ElementOutOfRange { element: e, d });
            }
        }
        validate_matroid(d, bases.iter().map(|b| b.iter().copied().collect()))
    }

    /// Canonicalizes without checking the exchange axiom. Callers guarantee validity.
    pub(crate) fn from_valid(d: usize, bases: impl IntoIterator<Item = ElementSet>) -> Self {
        let mut bases: Vec<ElementSet> = bases.into_iter().collect();
        bases.sort();
        bases.dedup();
        debug_assert!(!bases.is_empty());
        Matroid {
            ground_size: d,
            bases,
        }
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn ground(&self) -> ElementSet {
        ElementSet::full(self.ground_size)
    }

    /// Bases in canonical (lexicographic) order.
    pub fn bases(&self) -> &[ElementSet] {
        &self.bases
    }

    pub fn num_bases(&self) -> usize {
        self.bases.len()
    }

    pub fn rank(&self) -> usize {
        self.bases[0].len()
    }

    /// Canonical index (0-based) of a basis.
    pub fn basis_index(&self, b: ElementSet) -> Option<usize> {
        self.bases.binary_search(&b).ok()
    }

    pub fn is_basis(&self, b: ElementSet) -> bool {
        self.basis_index(b).is_some()
    }

    fn check_element(&self, e: usize) -> Result<(), MatroidError> {
        if e == 0 || e > self.ground_size {
            Err(MatroidError::ElementOutOfRange {
                element: e,
                d: self.ground_size,
            })
        } else {
            Ok(())
        }
    }

    pub fn classify_elements(&self) -> ElementClass {
        let mut union = ElementSet::EMPTY;
        let mut inter = self.ground();
        for &b in &self.bases {
            union = union | b;
            inter = inter.intersection(b);
        }
        ElementClass {
            loops: self.ground().difference(union),
            coloops: inter,
        }
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.bases.iter().all(|b| !b.contains(e))
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.bases.iter().all(|b| b.contains(e))
    }

    pub fn dual(&self) -> Matroid {
        let ground = self.ground();
        Matroid::from_valid(
            self.ground_size,
            self.bases.iter().map(|b| ground.difference(*b)),
        )
    }

    /// Deletes `c` and compacts the ground set to `{1..d-1}` (see [`Relabeling`]).
    pub fn delete(&self, c: usize) -> Result<Matroid, MatroidError> {
        self.check_element(c)?;
        let relabel = Relabeling { removed: c };
        let kept: Vec<ElementSet> = if self.is_coloop(c) {
            self.bases.iter().map(|b| b.without(c)).collect()
        } else {
            self.bases.iter().filter(|b| !b.contains(c)).copied().collect()
        };
        Ok(Matroid::from_valid(
            self.ground_size - 1,
            kept.into_iter().map(|b| relabel.apply_set(b)),
        ))
    }

    /// `M/c = (M* \ c)*`.
    pub fn contract(&self, c: usize) -> Result<Matroid, MatroidError> {
        Ok(self.dual().delete(c)?.dual())
    }

    /// Direct sum with `other`'s elements shifted by `self.ground_size()`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, MatroidError> {
        let d = self.ground_size + other.ground_size;
        if d > MAX_GROUND {
            return Err(MatroidError::GroundTooLarge(d));
        }
        let shift = self.ground_size;
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &b in &self.bases {
            for &o in &other.bases {
                bases.push(b | o.map(|e| e + shift));
            }
        }
        Ok(Matroid::from_valid(d, bases))
    }

    /// Relabels elements by a bijection `perm[e-1]` of `{1..d}`.
    pub fn relabel(&self, perm: &[usize]) -> Matroid {
        assert_eq!(perm.len(), self.ground_size);
        Matroid::from_valid(
            self.ground_size,
            self.bases.iter().map(|b| b.map(|e| perm[e - 1])),
        )
    }

    /// Orders the bases with those avoiding `c` first (stable in canonical order).
    pub fn anchor(&self, c: usize) -> Result<AnchoredMatroid, MatroidError> {
        self.check_element(c)?;
        let (avoid, contain): (Vec<usize>, Vec<usize>) =
            (0..self.bases.len()).partition(|&j| !self.bases[j].contains(c));
        let gamma = avoid.len();
        let mut order = avoid;
        order.extend(contain);
        Ok(AnchoredMatroid {
            matroid: self.clone(),
            anchor: c,
            order,
            gamma,
        })
    }

    pub fn to_json(&self) -> String {
        let doc = MatroidDoc {
            d: self.ground_size,
            bases: self.bases.iter().map(|b| b.to_vec()).collect(),
        };
        serde_json::to_string(&doc).expect("matroid serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Matroid, MatroidError> {
        let doc: MatroidDoc =
            serde_json::from_str(text).map_err(|e| MatroidError::Parse(e.to_string()))?;
        Matroid::new(doc.d, &doc.bases)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatroidDoc {
    d: usize,
    bases: Vec<Vec<usize>>,
}

impl Serialize for Matroid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatroidDoc {
            d: self.ground_size,
            bases: self.bases.iter().map(|b| b.to_vec()).collect(),
        }
        .serialize(s)
    }
}

/// A matroid with a distinguished element whose bases are renumbered so the
/// first `gamma` avoid the anchor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchoredMatroid {
    matroid: Matroid,
    anchor: usize,
    order: Vec<usize>,
    gamma: usize,
}

impl AnchoredMatroid {
    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn num_bases(&self) -> usize {
        self.order.len()
    }

    /// Canonical indices (0-based) in anchored order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// The `j`-th basis in anchored order, 1-based.
    pub fn basis(&self, j: usize) -> ElementSet {
        self.matroid.bases[self.order[j - 1]]
    }

    /// Anchored position (1-based) of the basis with canonical index `idx` (0-based).
    pub fn position_of(&self, idx: usize) -> usize {
        self.order.iter().position(|&o| o == idx).expect("index in range") + 1
    }

    pub fn anchored_bases(&self) -> impl Iterator<Item = ElementSet> + '_ {
        self.order.iter().map(|&o| self.matroid.bases[o])
    }

    pub fn anchor_is_coloop(&self) -> bool {
        self.gamma == 0
    }

    pub fn anchor_is_loop(&self) -> bool {
        self.gamma == self.order.len()
    }
}
