//! Betti numbers of `Hilb^n S` and the Frölicher degeneration check.

use super::hilb::super_factor;
use super::types::EngineError;
use crate::series::{Monomial, Substitution, TriSeries};
use crate::surface::TwistedTable;

/// `sum_{n,i} b_i(Hilb^n S) x^i t^n` up to `t^trunc`.
pub fn betti_series(b: &[u64; 5], trunc: u32) -> TriSeries {
    let mut factors = Vec::new();
    for k in 1..=trunc {
        for (i, &bi) in b.iter().enumerate() {
            if bi > 0 {
                let i = i as u32;
                factors.push(super_factor(Monomial::new(i + 2 * k - 2, 0, k), i, bi));
            }
        }
    }
    TriSeries::one(trunc).mul_binomial_powers(&factors)
}

/// Compares the `(x, y) -> (z, z)` collapse of the Hodge series on the
/// trivial table with [`betti_series`]; the first disagreement is returned as
/// [`EngineError::Mismatch`].
pub fn frolicher_check(table_trivial: &TwistedTable, b: &[u64; 5], trunc: u32) -> Result<(), EngineError> {
    let collapsed = super::hilb::hilb_series(table_trivial, trunc)?.substitute(&Substitution::diagonal())?;
    let betti = betti_series(b, trunc);
    for n in 0..=trunc {
        for i in 0..=4 * n {
            let m = Monomial::new(i, 0, n);
            let (left, right) = (collapsed.coefficient(m), betti.coefficient(m));
            if left != right {
                return Err(EngineError::Mismatch {
                    check: "frolicher".to_string(),
                    n,
                    degree: i.to_string(),
                    left: left.to_string(),
                    right: right.to_string(),
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::preset;

    #[test]
    fn hopf_hilb2_betti() {
        let ds = preset("hopf").unwrap();
        let b = ds.betti_numbers().unwrap();
        let s = betti_series(&b, 2);
        let row: Vec<String> = (0..=8).map(|i| s.coefficient(Monomial::new(i, 0, 2)).to_string()).collect();
        assert_eq!(row, ["1", "1", "1", "2", "2", "2", "1", "1", "1"]);
    }

    #[test]
    fn low_orders() {
        let s = betti_series(&[1, 0, 22, 0, 1], 1);
        assert_eq!(s.to_string(), "1 + t + 22*x^2*t + x^4*t + O(t^2)");
    }

    #[test]
    fn frolicher_on_presets_and_fault() {
        for name in ["hopf", "k3", "torus"] {
            let ds = preset(name).unwrap();
            let t = ds.trivial_table(8).unwrap();
            frolicher_check(&t, &ds.betti_numbers().unwrap(), 8).unwrap();
        }
        let ds = preset("hopf").unwrap();
        let t = ds.trivial_table(4).unwrap();
        let err = frolicher_check(&t, &[1, 1, 1, 1, 1], 4).unwrap_err();
        match err {
            EngineError::Mismatch { n, degree, .. } => {
                assert_eq!(n, 1);
                assert_eq!(degree, "2");
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
