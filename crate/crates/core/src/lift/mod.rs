//! Generating sets and Gröbner bases for series/parallel extensions,
//! series/parallel connections and 2-sums, lifted from the factors'.

mod connection;
mod pipeline;
mod series;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::gb::{self, Binomial, BinomialSet, GbError, MonomialOrder, VariableId};
use crate::matroid::{AnchoredMatroid, ElementSet, Matroid, MatroidError};
use crate::oracle::{self, OracleError};

pub use connection::{
    connection_order, direct_sum, direct_sum_generators, lift_connection, parallel_connection,
    parallel_connection_bases, series_connection, series_connection_bases, two_sum,
    ConnectionIndex, LiftMode,
};
pub use pipeline::{sp_extension_sequence, Step, StepKind};
pub use series::{
    classify_split, dual_transfer, lift_binomial, lift_series_extension,
    lift_series_extension_with, parallel_extension, parallel_extension_generators,
    series_ext_order, series_extension, series_extension_generators, swap_quadrics, Pairing,
    SplitBinomial,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error("binomial {0} splits unevenly across the anchor; it is not in the toric ideal")]
    UnbalancedSplit(Binomial),
    #[error("generator blocks do not match the connection index: {0}")]
    BlockMismatch(String),
    #[error("basepoint {0} is a loop or coloop of one of the factors")]
    DegenerateBasepoint(usize),
    #[error("invalid construction step: {0}")]
    BadStep(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Gb(#[from] GbError),
}

/// A bijection between variables and the bases of a matroid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisMap {
    entries: BTreeMap<VariableId, ElementSet>,
}

impl BasisMap {
    /// Panics unless `entries` maps onto the bases of `m` bijectively.
    pub fn new(entries: impl IntoIterator<Item = (VariableId, ElementSet)>, m: &Matroid) -> Self {
        let entries: BTreeMap<VariableId, ElementSet> = entries.into_iter().collect();
        let images: BTreeSet<ElementSet> = entries.values().copied().collect();
        assert_eq!(images.len(), entries.len(), "variable map is not injective");
        assert_eq!(images.len(), m.num_bases(), "variable map misses bases");
        assert!(images.iter().all(|&b| m.is_basis(b)), "variable map leaves the bases");
        BasisMap { entries }
    }

    /// `x1_j ↦ B_j` in canonical order.
    pub fn canonical(m: &Matroid) -> Self {
        BasisMap::new(
            m.bases().iter().enumerate().map(|(j, &b)| (VariableId::x(1, j + 1), b)),
            m,
        )
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VariableId, ElementSet)> + '_ {
        self.entries.iter().map(|(&v, &b)| (v, b))
    }

    pub fn variables(&self) -> BTreeSet<VariableId> {
        self.entries.keys().copied().collect()
    }

    pub fn basis(&self, v: VariableId) -> Option<ElementSet> {
        self.entries.get(&v).copied()
    }

    /// Renaming onto `x1_j` with `j` the canonical index in `m`.
    pub fn to_canonical(&self, m: &Matroid) -> HashMap<VariableId, VariableId> {
        self.iter()
            .map(|(v, b)| {
                let j = m.basis_index(b).expect("map images are bases");
                (v, VariableId::x(1, j + 1))
            })
            .collect()
    }
}

impl Serialize for BasisMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            var: VariableId,
            basis: Vec<usize>,
        }
        let list: Vec<Entry> = self
            .iter()
            .map(|(var, b)| Entry {
                var,
                basis: b.to_vec(),
            })
            .collect();
        list.serialize(s)
    }
}

/// A matroid with a claimed generating set for its toric ideal, expressed in
/// the construction's own variables.
#[derive(Debug, Clone)]
pub struct Construction {
    pub matroid: Matroid,
    pub generators: BinomialSet,
    pub map: BasisMap,
    /// Order under which `generators` is claimed to be a Gröbner basis.
    pub order: Option<MonomialOrder>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub generates: bool,
    pub groebner: bool,
}

impl Construction {
    /// A matroid with its own generators over `x1_j` in canonical order.
    pub fn from_matroid(m: &Matroid, generators: BinomialSet, order: Option<MonomialOrder>) -> Self {
        Construction {
            map: BasisMap::canonical(m),
            matroid: m.clone(),
            generators,
            order,
        }
    }

    /// Same construction renamed onto the canonical `x1_j` variables.
    pub fn canonical(&self) -> Construction {
        let ren = self.map.to_canonical(&self.matroid);
        let f = |v: VariableId| ren.get(&v).copied().unwrap_or(v);
        Construction {
            matroid: self.matroid.clone(),
            generators: self.generators.rename(f),
            map: BasisMap::canonical(&self.matroid),
            order: self.order.as_ref().map(|o| o.rename(f)),
        }
    }

    /// Checks the claims against the elimination oracle on the bases matrix
    /// of `matroid`.
    pub fn verify(&self) -> Result<Verification, LiftError> {
        let canon = self.canonical();
        let order = crate::exchange::default_order(&self.matroid);
        let truth = oracle::toric_gb(&oracle::bases_matrix(&self.matroid), &order)?;
        let gens = canon.generators.with_ambient(truth.ambient().clone())?;
        let generates = gb::ideals_equal(&gens, &truth, &order)?;
        let groebner = match &self.order {
            Some(o) => generates && gb::is_groebner(&self.generators, o)?,
            None => false,
        };
        Ok(Verification { generates, groebner })
    }

    pub fn report(&self, verified: Option<Verification>) -> Report<'_> {
        Report {
            construction: self,
            verified,
        }
    }
}

/// JSON pipeline report.
pub struct Report<'a> {
    construction: &'a Construction,
    verified: Option<Verification>,
}

impl Serialize for Report<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Verified {
            generates: bool,
            groebner: bool,
            order: Option<gb::OrderSpec>,
        }
        let c = self.construction;
        let mut map = s.serialize_map(Some(4))?;
        map.serialize_entry("matroid", &c.matroid)?;
        map.serialize_entry("generators", &c.generators)?;
        map.serialize_entry("map", &c.map)?;
        let verified = self.verified.map(|v| Verified {
            generates: v.generates,
            groebner: v.groebner,
            order: c.order.as_ref().map(|o| o.spec()),
        });
        map.serialize_entry("verified", &verified)?;
        map.end()
    }
}

/// Renames canonical `x1_{i+1}` to anchored `x1_j`.
pub fn to_anchored(am: &AnchoredMatroid) -> impl Fn(VariableId) -> VariableId + '_ {
    move |v| match v {
        VariableId::Basis { block: 1, index } => VariableId::x(1, am.position_of(index as usize - 1)),
        other => other,
    }
}

/// Renames anchored `x1_j` back to canonical `x1_{i+1}`.
pub fn from_anchored(am: &AnchoredMatroid) -> impl Fn(VariableId) -> VariableId + '_ {
    move |v| match v {
        VariableId::Basis { block: 1, index } => VariableId::x(1, am.order()[index as usize - 1] + 1),
        other => other,
    }
}

/// Anchored basis variables `x1_1..x1_n`.
pub(crate) fn block_vars(block: u8, range: impl Iterator<Item = usize>) -> Vec<VariableId> {
    range.map(|j| VariableId::x(block, j)).collect()
}
