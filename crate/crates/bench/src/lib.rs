//! Fixtures shared by the benchmarks.

use toric_matroids::catalog::{self, Named};
use toric_matroids::exchange::default_order;
use toric_matroids::lift::Construction;
use toric_matroids::oracle::matroid_toric_gb;
use toric_matroids::Matroid;

/// Matroids the oracle handles in well under a second.
pub fn small_suite() -> Vec<(String, Matroid)> {
    let mut out: Vec<(String, Matroid)> = [(2, 4), (2, 5), (3, 5), (3, 6)]
        .into_iter()
        .map(|(r, n)| (format!("U{r}{n}"), catalog::uniform(r, n).expect("valid parameters")))
        .collect();
    out.extend(Named::ALL.into_iter().map(|n| (n.to_string(), n.build())));
    out
}

/// `m` with its reduced Gröbner basis under degrevlex.
pub fn with_gb(m: &Matroid) -> Construction {
    let f = matroid_toric_gb(m).expect("oracle succeeds on catalog matroids");
    Construction::from_matroid(m, f, Some(default_order(m)))
}
