//! The nested Hilbert scheme `Hilb^{n,n+1} S`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::hilb::{diamond_dims, diamond_polynomial, hilb_series, require_powers, stratum_contribution, sym_cache};
use super::types::{check_hodge_series, EngineError, HodgePolynomial};
use crate::coefficient::Coefficient;
use crate::combinatorics::nested_index_set;
use crate::series::{Monomial, TriSeries};
use crate::surface::TwistedTable;

/// `h^{p,q}(Hilb^{n,n+1} S, phi^* L_n (x) rho^* L')` up to `t^trunc`.
///
/// `table_llp` holds `h^{p,q}(S, L^j (x) L')` indexed by `j`.
pub fn nested_series(
    table_l: &TwistedTable,
    table_llp: &TwistedTable,
    trunc: u32,
) -> Result<TriSeries, EngineError> {
    require_powers(table_llp, trunc, "nested diamonds")?;
    let hilb = hilb_series(table_l, trunc)?;
    let mut terms = Vec::new();
    for j in 0..=trunc {
        for (&(p, q), &h) in &diamond_dims(table_llp.diamond(j).expect("checked")) {
            terms.push((Monomial::new(p + j, q + j, j), Coefficient::from_i64(h as i64)));
        }
    }
    let out = hilb.mul(&TriSeries::from_terms(terms, trunc));
    check_hodge_series(&out, 2, "nested series")?;
    Ok(out)
}

/// Coefficient of `t^n` of [`nested_series`].
pub fn nested_hodge(
    table_l: &TwistedTable,
    table_llp: &TwistedTable,
    n: u32,
) -> Result<HodgePolynomial, EngineError> {
    let coeff = nested_series(table_l, table_llp, n)?.coefficient_of_t(n)?;
    HodgePolynomial::from_bipolynomial(&coeff, 2 * n + 2, "nested series")
}

/// `h^{p,q}(Hilb^{n,n+1} S, ...)` as a sum over the strata indexed by pairs
/// `(lambda, j)` with `j = 0` or `a_j > 0`.
pub fn nested_via_strata(
    table_l: &TwistedTable,
    table_llp: &TwistedTable,
    n: u32,
) -> Result<HodgePolynomial, EngineError> {
    require_powers(table_l, n, "diamonds")?;
    require_powers(table_llp, n, "nested diamonds")?;
    let cache = sym_cache(table_l, n, 0);
    let residual: Vec<HodgePolynomial> = (0..=n)
        .map(|j| diamond_polynomial(table_llp.diamond(j).expect("checked")))
        .collect();
    let space_dim = 2 * n + 2;
    let index = nested_index_set(n);
    let terms: Vec<BTreeMap<(u32, u32), BigUint>> = index
        .par_iter()
        .map(|(lambda, j)| {
            let mut syms = Vec::new();
            for k in 1..=lambda.largest_part() {
                let a = lambda.multiplicity(k);
                let a = if k == *j { a - 1 } else { a };
                if a > 0 || k == *j {
                    syms.push(&cache[&(k, a)]);
                }
            }
            syms.push(&residual[*j as usize]);
            let shift = if *j == 0 {
                n - lambda.length()
            } else {
                n + 1 - lambda.length()
            };
            let mut out = BTreeMap::new();
            stratum_contribution(&syms, shift, space_dim, &mut out);
            out
        })
        .collect();
    Ok(HodgePolynomial::new(terms.into_iter().flatten(), space_dim))
}
