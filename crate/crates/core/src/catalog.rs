//! Uniform, graphic and the four rank-3 excluded-minor matroids.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::matroid::{has_minor, validate_matroid, ElementSet, Matroid, MatroidError, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("uniform matroid needs 0 <= r <= n <= {max}, got r={r}, n={n}", max = MAX_GROUND)]
    BadParams { r: usize, n: usize },
    #[error("unknown catalog name {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// `U_{r,n}`: every `r`-subset of `{1..n}` is a basis.
pub fn uniform(r: usize, n: usize) -> Result<Matroid, CatalogError> {
    if r > n || n > MAX_GROUND {
        return Err(CatalogError::BadParams { r, n });
    }
    let bases = k_subsets(n, r);
    Ok(Matroid::from_valid(n, bases))
}

fn k_subsets(n: usize, k: usize) -> Vec<ElementSet> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<ElementSet>) {
        if current.len() == k {
            out.push(current.iter().copied().collect());
            return;
        }
        for e in start..=n {
            if n - e + 1 < k - current.len() {
                break;
            }
            current.push(e);
            rec(e + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(1, n, k, &mut current, &mut out);
    out
}

/// Cycle matroid of a multigraph; edge `i` of `edges` is element `i + 1`.
///
/// Bases are the spanning forests, found by brute force over edge subsets of
/// the forest size.
pub fn graphic(edges: &[(usize, usize)]) -> Result<Matroid, CatalogError> {
    let m = edges.len();
    if m > MAX_GROUND {
        return Err(MatroidError::GroundTooLarge(m).into());
    }
    let vertices: Vec<usize> = {
        let mut v: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let index = |x: usize| vertices.binary_search(&x).unwrap();
    let rank = vertices.len() - components(vertices.len(), edges.iter().map(|&(a, b)| (index(a), index(b))));
    let bases: Vec<ElementSet> = k_subsets(m, rank)
        .into_iter()
        .filter(|s| {
            let chosen = s.iter().map(|e| edges[e - 1]).map(|(a, b)| (index(a), index(b)));
            components(vertices.len(), chosen) == vertices.len() - rank
        })
        .collect();
    Ok(validate_matroid(m, bases)?)
}

fn components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let next = parent[y];
            parent[y] = r;
            y = next;
        }
        r
    }
    let mut count = n;
    for (a, b) in edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            count -= 1;
        }
    }
    count
}

/// Edges of `K4` on vertices 1..4 in the order 12, 13, 14, 23, 24, 34.
pub const K4_EDGES: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

pub fn mk4() -> Matroid {
    graphic(&K4_EDGES).expect("K4 is a valid graph")
}

/// Rank-3 whirl. Spokes are 1,2,3 and rim edges 4,5,6 of the wheel with hub 0;
/// the rim triangle is added as a basis.
pub fn whirl3() -> Matroid {
    // hub 0, rim vertices 1,2,3; spokes 0-1, 0-2, 0-3; rim 1-2, 2-3, 3-1
    let wheel = graphic(&[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]).expect("wheel");
    let rim: ElementSet = [4, 5, 6].into_iter().collect();
    validate_matroid(6, wheel.bases().iter().copied().chain([rim])).expect("whirl is a matroid")
}

fn rank3_minus_lines(lines: &[[usize; 3]]) -> Matroid {
    let lines: Vec<ElementSet> = lines.iter().map(|l| l.iter().copied().collect()).collect();
    let bases = k_subsets(6, 3).into_iter().filter(|b| !lines.contains(b));
    validate_matroid(6, bases).expect("rank-3 line deletion is a matroid")
}

/// Rank 3 on six elements with the single 3-point line {1,2,3}.
pub fn p6() -> Matroid {
    rank3_minus_lines(&[[1, 2, 3]])
}

/// Rank 3 on six elements with 3-point lines {1,2,3} and {1,4,5} meeting in 1.
pub fn q6() -> Matroid {
    rank3_minus_lines(&[[1, 2, 3], [1, 4, 5]])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Named {
    MK4,
    W3,
    P6,
    Q6,
}

impl Named {
    pub const ALL: [Named; 4] = [Named::MK4, Named::W3, Named::P6, Named::Q6];

    pub fn build(self) -> Matroid {
        match self {
            Named::MK4 => mk4(),
            Named::W3 => whirl3(),
            Named::P6 => p6(),
            Named::Q6 => q6(),
        }
    }
}

impl fmt::Display for Named {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Named::MK4 => "MK4",
            Named::W3 => "W3",
            Named::P6 => "P6",
            Named::Q6 => "Q6",
        })
    }
}

impl FromStr for Named {
    type Err = CatalogError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "MK4" | "K4" => Ok(Named::MK4),
            "W3" => Ok(Named::W3),
            "P6" => Ok(Named::P6),
            "Q6" => Ok(Named::Q6),
            _ => Err(CatalogError::UnknownName(s.to_string())),
        }
    }
}

pub fn named(name: Named) -> Matroid {
    name.build()
}

/// The first excluded minor found in `m`, if any.
pub fn find_excluded_minor(m: &Matroid) -> Option<Named> {
    Named::ALL.into_iter().find(|n| has_minor(m, &n.build()))
}

/// True iff `m` has none of `M(K4)`, `W3`, `P6`, `Q6` as a minor.
pub fn excluded_minor_free(m: &Matroid) -> bool {
    find_excluded_minor(m).is_none()
}

/// Cycle graph `C_n` on vertices 1..n.
pub fn cycle_edges(n: usize) -> Vec<(usize, usize)> {
    (1..=n).map(|i| (i, i % n + 1)).collect()
}
