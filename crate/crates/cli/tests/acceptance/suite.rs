use std::collections::HashMap;

use toric_matroids::catalog::{self, Named};
use toric_matroids::exchange::default_order;
use toric_matroids::lift::Construction;
use toric_matroids::matroid::{canonical_invariant, is_isomorphic, Invariant};
use toric_matroids::oracle::matroid_toric_gb;
use toric_matroids::Matroid;

pub fn uniform(r: usize, n: usize) -> Matroid {
    catalog::uniform(r, n).expect("valid uniform parameters")
}

pub fn named() -> Vec<(String, Matroid)> {
    Named::ALL.into_iter().map(|n| (n.to_string(), n.build())).collect()
}

/// `U(r, n)` for `1 <= n <= max_n`, then the four named matroids.
pub fn suite(max_n: usize) -> Vec<(String, Matroid)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for r in 0..=n {
            out.push((format!("U{r}{n}"), uniform(r, n)));
        }
    }
    out.extend(named());
    out
}

/// One representative per isomorphism class, in first-seen order.
pub fn dedupe(ms: impl IntoIterator<Item = Matroid>) -> Vec<Matroid> {
    let mut buckets: HashMap<Invariant, Vec<Matroid>> = HashMap::new();
    let mut out = Vec::new();
    for m in ms {
        let bucket = buckets.entry(canonical_invariant(&m)).or_default();
        if bucket.iter().all(|o| is_isomorphic(o, &m).is_none()) {
            bucket.push(m.clone());
            out.push(m);
        }
    }
    out
}

pub fn with_gb(m: &Matroid) -> Construction {
    let f = matroid_toric_gb(m).expect("oracle succeeds");
    Construction::from_matroid(m, f, Some(default_order(m)))
}
