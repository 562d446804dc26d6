//! Toric ideals of non-negative integer matrices by elimination, plus the
//! matrices attached to matroids, series extensions and series connections.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::gb::{self, Binomial, BinomialSet, GbError, Monomial, MonomialOrder, OrderSpec, VariableId};
use crate::matroid::{AnchoredMatroid, Matroid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("anchor {0} is a coloop; the series extension leaves the ideal unchanged")]
    ColoopAnchor(usize),
    #[error("anchor {0} is a loop or coloop of one of the factors")]
    DegenerateAnchor(usize),
    #[error("malformed matrix: {0}")]
    Shape(String),
    #[error(transparent)]
    Gb(#[from] GbError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowLabel {
    /// A ground-set element (global numbering).
    Element(usize),
    /// An auxiliary row such as `w1`, `w2`; `w0` is the grading row of a rank-0 matroid.
    Aux(u8),
}

impl fmt::Display for RowLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowLabel::Element(e) => write!(f, "e{e}"),
            RowLabel::Aux(w) => write!(f, "w{w}"),
        }
    }
}

impl Serialize for RowLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A non-negative integer matrix whose columns are named by variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: Vec<RowLabel>,
    columns: Vec<(VariableId, Vec<u32>)>,
}

impl IntegerMatrix {
    pub fn new(rows: Vec<RowLabel>, columns: Vec<(VariableId, Vec<u32>)>) -> Result<Self, OracleError> {
        let mut seen = BTreeSet::new();
        for (v, col) in &columns {
            if col.len() != rows.len() {
                return Err(OracleError::Shape(format!(
                    "column {v} has {} entries, expected {}",
                    col.len(),
                    rows.len()
                )));
            }
            if !seen.insert(*v) {
                return Err(OracleError::Shape(format!("column {v} appears twice")));
            }
        }
        if rows.iter().collect::<BTreeSet<_>>().len() != rows.len() {
            return Err(OracleError::Shape("repeated row label".into()));
        }
        Ok(IntegerMatrix { rows, columns })
    }

    pub fn rows(&self) -> &[RowLabel] {
        &self.rows
    }

    pub fn columns(&self) -> &[(VariableId, Vec<u32>)] {
        &self.columns
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn variables(&self) -> Vec<VariableId> {
        self.columns.iter().map(|(v, _)| *v).collect()
    }

    pub fn column(&self, v: VariableId) -> Option<&[u32]> {
        self.columns.iter().find(|(w, _)| *w == v).map(|(_, c)| c.as_slice())
    }

    /// Image of a monomial under `col ↦ ∏ s_r^{a_r,col}` as an exponent vector.
    pub fn image(&self, m: &Monomial) -> Option<Vec<u64>> {
        let mut out = vec![0u64; self.rows.len()];
        for (v, e) in m.iter() {
            let col = self.column(v)?;
            for (o, &a) in out.iter_mut().zip(col) {
                *o += a as u64 * e as u64;
            }
        }
        Some(out)
    }

    /// Whether the exponent difference of `b` lies in the kernel.
    pub fn annihilates(&self, b: &Binomial) -> bool {
        match (self.image(b.lead()), self.image(b.trail())) {
            (Some(x), Some(y)) => x == y,
            _ => false,
        }
    }

    /// Columns reordered by `perm` (new position `i` holds old column `perm[i]`).
    pub fn permute_columns(&self, perm: &[usize]) -> IntegerMatrix {
        IntegerMatrix {
            rows: self.rows.clone(),
            columns: perm.iter().map(|&i| self.columns[i].clone()).collect(),
        }
    }

    /// Keeps the listed rows and columns, in their current order.
    pub fn project(&self, rows: &BTreeSet<RowLabel>, cols: &BTreeSet<VariableId>) -> IntegerMatrix {
        let keep: Vec<usize> = (0..self.rows.len()).filter(|&i| rows.contains(&self.rows[i])).collect();
        IntegerMatrix {
            rows: keep.iter().map(|&i| self.rows[i]).collect(),
            columns: self
                .columns
                .iter()
                .filter(|(v, _)| cols.contains(v))
                .map(|(v, c)| (*v, keep.iter().map(|&i| c[i]).collect()))
                .collect(),
        }
    }

    /// Adds row `from` into row `into` and drops `from`.
    pub fn fold_rows(&self, into: RowLabel, from: RowLabel) -> Result<IntegerMatrix, OracleError> {
        let pos = |r: RowLabel| {
            self.rows
                .iter()
                .position(|&x| x == r)
                .ok_or_else(|| OracleError::Shape(format!("no row {r}")))
        };
        let (a, b) = (pos(into)?, pos(from)?);
        if a == b {
            return Err(OracleError::Shape(format!("cannot fold row {into} into itself")));
        }
        let columns = self
            .columns
            .iter()
            .map(|(v, c)| {
                let mut c = c.clone();
                c[a] += c[b];
                c.remove(b);
                (*v, c)
            })
            .collect();
        let mut rows = self.rows.clone();
        rows.remove(b);
        Ok(IntegerMatrix { rows, columns })
    }

    /// Degrevlex over the columns in matrix order.
    pub fn default_order(&self) -> MonomialOrder {
        MonomialOrder::degrevlex(self.variables())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matrix serialization cannot fail")
    }
}

impl Serialize for IntegerMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Col<'a> {
            var: VariableId,
            entries: &'a [u32],
        }
        let cols: Vec<Col> = self
            .columns
            .iter()
            .map(|(v, e)| Col { var: *v, entries: e })
            .collect();
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("rows", &self.rows)?;
        map.serialize_entry("columns", &cols)?;
        map.end()
    }
}

fn element_rows(d: usize, offset: usize) -> impl Iterator<Item = RowLabel> {
    (1..=d).map(move |e| RowLabel::Element(e + offset))
}

fn indicator(b: crate::matroid::ElementSet, d: usize) -> Vec<u32> {
    (1..=d).map(|e| b.contains(e) as u32).collect()
}

/// Grading row appended for rank 0, where the element rows are all zero.
fn grading(m: &Matroid) -> Option<RowLabel> {
    (m.rank() == 0).then_some(RowLabel::Aux(0))
}

/// The bases matrix: column `x1_j` is the indicator of the `j`-th basis in
/// canonical order. A rank-0 matroid gets an extra all-ones row so that its
/// toric ideal is the zero ideal rather than `⟨x − 1⟩`.
pub fn bases_matrix(m: &Matroid) -> IntegerMatrix {
    let d = m.ground_size();
    let g = grading(m);
    let rows = element_rows(d, 0).chain(g).collect();
    let columns = m
        .bases()
        .iter()
        .enumerate()
        .map(|(j, &b)| {
            let mut col = indicator(b, d);
            col.extend(g.map(|_| 1));
            (VariableId::x(1, j + 1), col)
        })
        .collect();
    IntegerMatrix { rows, columns }
}

/// Bases matrix with columns `x1_j` numbered in anchored order.
pub fn anchored_bases_matrix(am: &AnchoredMatroid) -> IntegerMatrix {
    let m = am.matroid();
    let d = m.ground_size();
    let g = grading(m);
    let rows = element_rows(d, 0).chain(g).collect();
    let columns = am
        .anchored_bases()
        .enumerate()
        .map(|(j, b)| {
            let mut col = indicator(b, d);
            col.extend(g.map(|_| 1));
            (VariableId::x(1, j + 1), col)
        })
        .collect();
    IntegerMatrix { rows, columns }
}

/// `(b_j; e1)` for every basis followed by `(b_j; e2)` for the `gamma`
/// bases avoiding the anchor.
pub fn series_ext_matrix(am: &AnchoredMatroid) -> Result<IntegerMatrix, OracleError> {
    if am.anchor_is_coloop() {
        return Err(OracleError::ColoopAnchor(am.anchor()));
    }
    let d = am.matroid().ground_size();
    let rows = element_rows(d, 0)
        .chain([RowLabel::Aux(1), RowLabel::Aux(2)])
        .collect();
    let mut columns = Vec::with_capacity(am.num_bases() + am.gamma());
    for (j, b) in am.anchored_bases().enumerate() {
        let mut col = indicator(b, d);
        col.extend([1, 0]);
        columns.push((VariableId::x(1, j + 1), col));
    }
    for (j, b) in am.anchored_bases().take(am.gamma()).enumerate() {
        let mut col = indicator(b, d);
        col.extend([0, 1]);
        columns.push((VariableId::x(2, j + 1), col));
    }
    Ok(IntegerMatrix { rows, columns })
}

/// Columns `z1_j_k` (`j ≤ n1`, `k ≤ γ2`) and `z2_j_k` (`j ≤ γ1`, `γ2 < k ≤ n2`),
/// each stacking `b_j` over `d_k`. Rows are `e1..e_{d1}` then `e_{d1+1}..e_{d1+d2}`,
/// so the basepoint appears twice (rows `c1` and `d1 + c2`).
pub fn connection_matrix(am1: &AnchoredMatroid, am2: &AnchoredMatroid) -> Result<IntegerMatrix, OracleError> {
    for am in [am1, am2] {
        if am.anchor_is_coloop() || am.anchor_is_loop() {
            return Err(OracleError::DegenerateAnchor(am.anchor()));
        }
    }
    let (d1, d2) = (am1.matroid().ground_size(), am2.matroid().ground_size());
    let (n1, g1) = (am1.num_bases(), am1.gamma());
    let (n2, g2) = (am2.num_bases(), am2.gamma());
    let rows = element_rows(d1, 0).chain(element_rows(d2, d1)).collect();
    let col = |j: usize, k: usize| -> Vec<u32> {
        let mut c = indicator(am1.basis(j), d1);
        c.extend(indicator(am2.basis(k), d2));
        c
    };
    let mut columns = Vec::with_capacity(n1 * g2 + g1 * (n2 - g2));
    for j in 1..=n1 {
        for k in 1..=g2 {
            columns.push((VariableId::z(1, j, k), col(j, k)));
        }
    }
    for j in 1..=g1 {
        for k in g2 + 1..=n2 {
            columns.push((VariableId::z(2, j, k), col(j, k)));
        }
    }
    Ok(IntegerMatrix { rows, columns })
}

/// Reduced Gröbner basis of the toric ideal of `matrix` under `order`, which
/// must rank exactly the column variables.
///
/// Introduces `s_r` per row, computes a Gröbner basis of
/// `⟨x_col − ∏ s_r^{a_r,col}⟩` under an order eliminating the `s` block and
/// agreeing with `order` on column monomials, then keeps the `s`-free part.
pub fn toric_gb(matrix: &IntegerMatrix, order: &MonomialOrder) -> Result<BinomialSet, OracleError> {
    let cols: BTreeSet<VariableId> = matrix.variables().into_iter().collect();
    let ranked: BTreeSet<VariableId> = order.ranking().iter().copied().collect();
    if let Some(v) = cols.difference(&ranked).next() {
        return Err(GbError::UnknownVariable(*v).into());
    }
    if let Some(v) = ranked.difference(&cols).next() {
        return Err(OracleError::Shape(format!("order ranks {v}, which is not a column")));
    }
    if order.elimination_block().is_some() {
        return Err(OracleError::Shape("column order must not carry an elimination block".into()));
    }

    let s: Vec<VariableId> = (1..=matrix.num_rows()).map(VariableId::s).collect();
    let spec = OrderSpec {
        tie_break: order.tie_break(),
        ranking: s.iter().chain(order.ranking()).copied().collect(),
        weights: order.weights(),
        elimination: Some(s.iter().copied().collect()),
    };
    let elim = MonomialOrder::from_spec(&spec);

    let ambient: BTreeSet<VariableId> = spec.ranking.iter().copied().collect();
    let gens = matrix.columns.iter().filter_map(|(v, col)| {
        let image: Monomial = s.iter().zip(col).map(|(&sv, &a)| (sv, a)).collect();
        Binomial::new(Monomial::var(*v), image)
    });
    let input = BinomialSet::new(ambient, gens)?;
    let full = gb::buchberger(&input, &elim)?;
    let kept = full
        .iter()
        .filter(|b| !b.vars().any(|v| v.is_elim()))
        .cloned();
    let out = BinomialSet::new(cols, kept)?;
    Ok(out.oriented(order)?)
}

/// Toric ideal of a matroid under degrevlex over the canonical basis ranking.
pub fn matroid_toric_gb(m: &Matroid) -> Result<BinomialSet, OracleError> {
    let mat = bases_matrix(m);
    toric_gb(&mat, &mat.default_order())
}

/// Weight map helper: `x1_j ↦ w[j-1]`.
pub fn basis_weight(w: &[u64]) -> BTreeMap<VariableId, u64> {
    w.iter()
        .enumerate()
        .map(|(j, &x)| (VariableId::x(1, j + 1), x))
        .collect()
}
