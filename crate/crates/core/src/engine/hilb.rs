//! Twisted Hodge numbers of symmetric powers and Hilbert schemes of points.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;

use super::types::{check_hodge_series, EngineError, HodgePolynomial};
use crate::combinatorics::{bounded_compositions, partitions, PartitionMultiplicity};
use crate::series::{Monomial, TriSeries};
use crate::surface::{SurfaceDiamond, TwistedTable};

/// Bigraded dimensions `(p, q) -> v_{p,q}`.
pub type BigradedDims = BTreeMap<(u32, u32), u64>;

pub fn diamond_dims(d: &SurfaceDiamond) -> BigradedDims {
    let mut v = BigradedDims::new();
    for p in 0..3 {
        for q in 0..3 {
            let h = d.get(p, q);
            if h > 0 {
                v.insert((p as u32, q as u32), h);
            }
        }
    }
    v
}

pub fn diamond_polynomial(d: &SurfaceDiamond) -> HodgePolynomial {
    HodgePolynomial::new(
        diamond_dims(d).into_iter().map(|(k, v)| (k, BigUint::from(v))),
        2,
    )
}

/// Fails unless `table` covers every power `0..=required`.
pub(crate) fn require_powers(
    table: &TwistedTable,
    required: u32,
    name: &'static str,
) -> Result<(), EngineError> {
    match table.max_power() {
        Some(k) if k >= required => Ok(()),
        available => Err(EngineError::InsufficientPowers {
            table: name,
            required,
            available,
        }),
    }
}

fn parity_sign(d: u32) -> i64 {
    if d.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The factor `(1 - (-1)^d m)^{-(-1)^d count}` with `d = parity_degree`, in the
/// form taken by [`TriSeries::mul_binomial_powers`].
pub(crate) fn super_factor(m: Monomial, parity_degree: u32, count: u64) -> (Monomial, i64, i64) {
    let s = parity_sign(parity_degree);
    (m, s, -s * count as i64)
}

/// `sum_n Sym^n(V) t^n` for the super symmetric algebra of `V`.
pub fn super_sym_series(v: &BigradedDims, trunc: u32) -> TriSeries {
    if trunc == 0 {
        return TriSeries::one(trunc);
    }
    let factors: Vec<_> = v
        .iter()
        .filter(|(_, &count)| count > 0)
        .map(|(&(p, q), &count)| super_factor(Monomial::new(p, q, 1), p + q, count))
        .collect();
    TriSeries::one(trunc).mul_binomial_powers(&factors)
}

/// `h^{p,q}(S^{(a)}, L_{(a)})` as the super symmetric power `Sym^a` of the diamond.
pub fn sym_power_twisted_hodge(d: &SurfaceDiamond, a: u32) -> HodgePolynomial {
    let series = super_sym_series(&diamond_dims(d), a);
    let coeff = series
        .coefficient_of_t(a)
        .expect("coefficient within truncation");
    HodgePolynomial::from_bipolynomial(&coeff, 2 * a, "symmetric power")
        .expect("super symmetric powers have nonnegative integer dimensions")
}

/// Generating series of `h^{p,q}(Hilb^n S, L_n)` up to `t^trunc`.
pub fn hilb_series(table: &TwistedTable, trunc: u32) -> Result<TriSeries, EngineError> {
    require_powers(table, trunc, "diamonds")?;
    let mut factors = Vec::new();
    for k in 1..=trunc {
        let d = table.diamond(k).expect("checked above");
        for (&(p, q), &h) in &diamond_dims(d) {
            factors.push(super_factor(Monomial::new(p + k - 1, q + k - 1, k), p + q, h));
        }
    }
    let acc = TriSeries::one(trunc).mul_binomial_powers(&factors);
    check_hodge_series(&acc, 0, "hilbert scheme series")?;
    Ok(acc)
}

/// `h^{p,q}(Hilb^n S, L_n)` read off [`hilb_series`].
pub fn hilb_hodge(table: &TwistedTable, n: u32) -> Result<HodgePolynomial, EngineError> {
    let series = hilb_series(table, n)?;
    let coeff = series.coefficient_of_t(n)?;
    HodgePolynomial::from_bipolynomial(&coeff, 2 * n, "hilbert scheme series")
}

/// Sum over bounded compositions of the products `prod_k factors[k][(i_k, j_k)]`,
/// accumulated into `out` at `(p, q)` where `sum i_k = p - shift`, `sum j_k = q - shift`.
pub(crate) fn stratum_contribution(
    factors: &[&HodgePolynomial],
    shift: u32,
    space_dim: u32,
    out: &mut BTreeMap<(u32, u32), BigUint>,
) {
    let bounds: Vec<u32> = factors.iter().map(|f| f.space_dim()).collect();
    let compositions: Vec<Vec<Vec<u32>>> = (0..=space_dim)
        .map(|p| bounded_compositions(p as i64 - shift as i64, &bounds).collect())
        .collect();
    for p in 0..=space_dim {
        let comps_i = &compositions[p as usize];
        if comps_i.is_empty() {
            continue;
        }
        for q in 0..=space_dim {
            let comps_j = &compositions[q as usize];
            let mut total = BigUint::zero();
            for ci in comps_i {
                for cj in comps_j {
                    let mut prod = BigUint::from(1u32);
                    for (k, f) in factors.iter().enumerate() {
                        let h = f.get(ci[k], cj[k]);
                        if h.is_zero() {
                            prod = BigUint::zero();
                            break;
                        }
                        prod *= h;
                    }
                    total += prod;
                }
            }
            if !total.is_zero() {
                *out.entry((p, q)).or_default() += total;
            }
        }
    }
}

type SymCache = HashMap<(u32, u32), HodgePolynomial>;

/// Every `Sym^a` of the `k`-th diamond for `k <= n`, `a <= n / k`.
pub(crate) fn sym_cache(table: &TwistedTable, n: u32, shift_k: u32) -> SymCache {
    let mut cache = SymCache::new();
    for k in 1..=n {
        let d = table.diamond(k + shift_k).expect("powers checked by caller");
        let series = super_sym_series(&diamond_dims(d), n / k);
        for a in 0..=n / k {
            let coeff = series.coefficient_of_t(a).expect("within truncation");
            cache.insert(
                (k, a),
                HodgePolynomial::from_bipolynomial(&coeff, 2 * a, "symmetric power")
                    .expect("super symmetric powers are nonnegative"),
            );
        }
    }
    cache
}

fn partition_term(
    lambda: &PartitionMultiplicity,
    cache: &SymCache,
    n: u32,
) -> BTreeMap<(u32, u32), BigUint> {
    let factors: Vec<&HodgePolynomial> = (1..=lambda.largest_part())
        .filter(|&k| lambda.multiplicity(k) > 0)
        .map(|k| &cache[&(k, lambda.multiplicity(k))])
        .collect();
    let mut out = BTreeMap::new();
    stratum_contribution(&factors, n - lambda.length(), 2 * n, &mut out);
    out
}

/// `h^{p,q}(Hilb^n S, L_n)` as a sum over partitions of `n`.
///
/// Partitions are processed in parallel on the current rayon pool and summed
/// in their canonical order, so the result does not depend on the thread count.
pub fn hilb_via_partitions(table: &TwistedTable, n: u32) -> Result<HodgePolynomial, EngineError> {
    require_powers(table, n, "diamonds")?;
    let cache = sym_cache(table, n, 0);
    let parts = partitions(n);
    let terms: Vec<BTreeMap<(u32, u32), BigUint>> = parts
        .par_iter()
        .map(|lambda| partition_term(lambda, &cache, n))
        .collect();
    Ok(HodgePolynomial::new(terms.into_iter().flatten(), 2 * n))
}
