//! Hochschild homology with coefficients.
//!
//! A degree `i` class at `t^n` is stored as `y^{i + 2n} t^n`; since
//! `|i| <= 2n` the exponent is never negative.

use num_bigint::BigInt;
use num_traits::Signed;

use super::hilb::{hilb_hodge, super_factor, require_powers};
use super::types::{EngineError, GradedDims};
use crate::series::{Monomial, TriSeries};
use crate::surface::TwistedTable;

/// `dim HH_i(Hilb^n S, L_n)` as the `q - p` collapse of the Hodge numbers.
pub fn hh_dims(table: &TwistedTable, n: u32) -> Result<GradedDims, EngineError> {
    Ok(hilb_hodge(table, n)?.collapse_q_minus_p())
}

/// `Sym^*( sum_k HH_*(S, L^k) t^k )` in the offset encoding.
pub fn hh_rhs_series(table: &TwistedTable, trunc: u32) -> Result<TriSeries, EngineError> {
    require_powers(table, trunc, "diamonds")?;
    let mut factors = Vec::new();
    for k in 1..=trunc {
        let d = table.diamond(k).expect("checked");
        for i in -2i64..=2 {
            let dim: u64 = (0..3usize)
                .filter_map(|p| {
                    let q = p as i64 + i;
                    (0..3).contains(&q).then(|| d.get(p, q as usize))
                })
                .sum();
            if dim > 0 {
                let e = (i + 2 * k as i64) as u32;
                factors.push(super_factor(Monomial::new(0, e, k), i.rem_euclid(2) as u32, dim));
            }
        }
    }
    Ok(TriSeries::one(trunc).mul_binomial_powers(&factors))
}

/// Decode the `t^n` coefficient of [`hh_rhs_series`].
pub fn hh_dims_from_series(series: &TriSeries, n: u32) -> Result<GradedDims, EngineError> {
    let coeff = series.coefficient_of_t(n)?;
    let mut entries = Vec::new();
    for (&(ex, ey), c) in coeff.terms() {
        let location = format!("y^{ey} t^{n}");
        let value: BigInt = match c.to_integer() {
            Some(v) if ex == 0 => v,
            _ => {
                return Err(EngineError::IntegralityFailure {
                    context: "hochschild series".to_string(),
                    location,
                    value: c.to_string(),
                })
            }
        };
        if value.is_negative() {
            return Err(EngineError::NegativeCoefficient {
                context: "hochschild series".to_string(),
                location,
                value: value.to_string(),
            });
        }
        entries.push((ey as i64 - 2 * n as i64, value.magnitude().clone()));
    }
    Ok(GradedDims::new(entries))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::preset;

    #[test]
    fn hopf_hilb2() {
        let t = preset("hopf").unwrap().table;
        // q - p collapse of 1 + y + xy + xy^2 + x^2y + 2x^2y^2 + x^2y^3 + x^3y^2 + x^3y^3 + x^4y^3 + x^4y^4
        let expected = GradedDims::from_u64(&[(-1, 3), (0, 6), (1, 3)]);
        assert_eq!(hh_dims(&t, 2).unwrap(), expected);
        let s = hh_rhs_series(&t, 2).unwrap();
        assert_eq!(hh_dims_from_series(&s, 2).unwrap(), expected);
    }

    #[test]
    fn low_orders() {
        let t = preset("k3").unwrap().table;
        assert_eq!(hh_dims(&t, 0).unwrap(), GradedDims::from_u64(&[(0, 1)]));
        let s = hh_rhs_series(&t, 3).unwrap();
        assert_eq!(hh_dims_from_series(&s, 0).unwrap(), GradedDims::from_u64(&[(0, 1)]));
        let one = GradedDims::from_u64(&[(-2, 1), (0, 22), (2, 1)]);
        assert_eq!(hh_dims_from_series(&s, 1).unwrap(), one);
        assert_eq!(hh_dims(&t, 1).unwrap(), one);
        for n in 0..=3 {
            assert_eq!(hh_dims_from_series(&s, n).unwrap(), hh_dims(&t, n).unwrap(), "n={n}");
        }
    }
}
