#![allow(dead_code)]

use proptest::prelude::*;
use toric_matroids::catalog::{graphic, uniform};
use toric_matroids::{Binomial, Matroid, Monomial, VariableId};

pub fn x(j: usize) -> VariableId {
    VariableId::x(1, j)
}

/// Small matroids: uniform, or graphic on up to 4 vertices with up to 6 edges.
pub fn small_matroid() -> impl Strategy<Value = Matroid> {
    let uni = (1usize..=5).prop_flat_map(|n| (0..=n, Just(n))).prop_map(|(r, n)| uniform(r, n).unwrap());
    let graph = prop::collection::vec((1usize..=4, 1usize..=4), 1..=6).prop_map(|edges| graphic(&edges).unwrap());
    prop_oneof![uni, graph]
}

/// Monomial of the given degree in `x1_1..x1_nvars`.
pub fn monomial(nvars: usize, degree: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(1..=nvars, degree).prop_map(|v| Monomial::product(v.into_iter().map(x)))
}

/// Homogeneous binomial of degree 1..=3, or `None` when both sides coincide.
pub fn homogeneous_binomial(nvars: usize) -> impl Strategy<Value = Option<Binomial>> {
    (1usize..=3).prop_flat_map(move |d| (monomial(nvars, d), monomial(nvars, d))).prop_map(|(a, b)| Binomial::new(a, b))
}
