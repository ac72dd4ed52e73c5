#![allow(dead_code)]

use dtseries::local_hom::{Monomial, MonomialIdeal};
use dtseries::{BivariatePolynomial, ProductFactor, TruncatedSeries};
use proptest::prelude::*;

pub const SERIES_ORDER: usize = 5;

pub fn arb_poly() -> impl Strategy<Value = BivariatePolynomial> {
    prop::collection::vec((0u32..4, 0u32..4, -20i64..=20), 0..6)
        .prop_map(BivariatePolynomial::from_terms)
}

pub fn arb_series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec(arb_poly(), SERIES_ORDER + 1)
        .prop_map(|coeffs| TruncatedSeries::from_coeffs(coeffs, SERIES_ORDER))
}

pub fn arb_factor() -> impl Strategy<Value = ProductFactor> {
    (0u32..3, 0u32..3, 1usize..4, -5i64..=6).prop_map(|(a, b, k, e)| ProductFactor::new(a, b, k, e))
}

/// Ideals with pure powers of `w1` and `w2`, so the quotient is finite in
/// those directions.
pub fn arb_bounded_ideal() -> impl Strategy<Value = MonomialIdeal> {
    let extra = prop::collection::vec([0u32..3, 0u32..3, 0u32..3], 0..4);
    (1u32..4, 1u32..4, extra).prop_map(|(a, b, extra)| {
        let mut gens: Vec<Monomial> = vec![[a, 0, 0], [0, b, 0]];
        gens.extend(extra.into_iter().filter(|m| *m != [0, 0, 0]));
        MonomialIdeal::new(gens).unwrap()
    })
}
