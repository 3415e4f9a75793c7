//! Brute-force reference implementations used for cross-validation.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use thiserror::Error;

use crate::coefficient::Coefficient;
use crate::engine::BigradedDims;
use crate::series::{Monomial, TriSeries};

pub const MULTISET_MAX_DIM: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("total dimension {dim} exceeds the enumeration limit {MULTISET_MAX_DIM}")]
    TooLarge { dim: u64 },
}

/// Bigraded dimensions of `Sym^n(V)` by enumerating basis multisets: even
/// basis vectors with any multiplicity, odd ones at most once.
pub fn super_sym_multiset(v: &BigradedDims, n: u32) -> Result<BTreeMap<(u32, u32), BigUint>, OracleError> {
    let dim: u64 = v.values().sum();
    if dim > MULTISET_MAX_DIM {
        return Err(OracleError::TooLarge { dim });
    }
    let basis: Vec<(u32, u32)> = v
        .iter()
        .flat_map(|(&bideg, &count)| std::iter::repeat_n(bideg, count as usize))
        .collect();
    let mut out = BTreeMap::new();
    let mut mult = vec![0u32; basis.len()];
    enumerate(&basis, 0, n, &mut mult, &mut out);
    Ok(out)
}

fn enumerate(
    basis: &[(u32, u32)],
    idx: usize,
    remaining: u32,
    mult: &mut Vec<u32>,
    out: &mut BTreeMap<(u32, u32), BigUint>,
) {
    if idx == basis.len() {
        if remaining == 0 {
            let (mut p, mut q) = (0, 0);
            for (b, &m) in basis.iter().zip(mult.iter()) {
                p += b.0 * m;
                q += b.1 * m;
            }
            *out.entry((p, q)).or_default() += 1u32;
        }
        return;
    }
    let odd = (basis[idx].0 + basis[idx].1) % 2 == 1;
    let max = if odd { remaining.min(1) } else { remaining };
    for m in 0..=max {
        mult[idx] = m;
        enumerate(basis, idx + 1, remaining - m, mult, out);
    }
    mult[idx] = 0;
}

/// Double-loop product of two series.
pub fn naive_mul(a: &TriSeries, b: &TriSeries) -> TriSeries {
    let trunc = a.trunc().min(b.trunc());
    let mut acc: HashMap<Monomial, Coefficient> = HashMap::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let m = ma.times(*mb);
            if m.t > trunc {
                continue;
            }
            let slot = acc.entry(m).or_default();
            *slot = slot.add_ref(&ca.mul_ref(cb));
        }
    }
    TriSeries::from_terms(acc, trunc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_square_vanishes() {
        let v = BigradedDims::from([((0, 1), 1)]);
        assert!(super_sym_multiset(&v, 2).unwrap().is_empty());
    }

    #[test]
    fn two_even_generators() {
        let v = BigradedDims::from([((0, 0), 1), ((1, 1), 1)]);
        let got = super_sym_multiset(&v, 2).unwrap();
        let expected: BTreeMap<_, _> =
            [((0, 0), 1u32), ((1, 1), 1), ((2, 2), 1)].into_iter().map(|(k, v)| (k, BigUint::from(v))).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn guard() {
        let v = BigradedDims::from([((1, 1), 13)]);
        assert_eq!(super_sym_multiset(&v, 1), Err(OracleError::TooLarge { dim: 13 }));
    }

    #[test]
    fn naive_mul_identities() {
        let a = TriSeries::from_i64_terms(&[(Monomial::new(1, 0, 1), 3), (Monomial::new(0, 2, 2), -1)], 3);
        assert_eq!(naive_mul(&a, &TriSeries::one(3)), a);
        assert!(naive_mul(&TriSeries::zero(3), &a).is_empty());
    }
}
