//! Three routes to the generating series of `chi_{-y}(Hilb^n S, L_n)`.
//!
//! All results are series in `(y, t)`; the `x` exponent is always zero.

use super::hilb::{hilb_series, require_powers};
use super::types::EngineError;
use crate::coefficient::Coefficient;
use crate::series::{Monomial, Substitution, Target, TriSeries, Var};
use crate::surface::TwistedTable;

/// `chi(S, Omega^p (x) L^k) = sum_q (-1)^q h^{p,q}(S, L^k)`.
fn chi(table: &TwistedTable, p: usize, k: u32) -> i64 {
    let d = table.diamond(k).expect("powers checked by caller");
    (0..3)
        .map(|q| if q % 2 == 0 { d.get(p, q) as i64 } else { -(d.get(p, q) as i64) })
        .sum()
}

pub fn chi_y_product(table: &TwistedTable, trunc: u32) -> Result<TriSeries, EngineError> {
    require_powers(table, trunc, "diamonds")?;
    let mut factors = Vec::new();
    for k in 1..=trunc {
        for p in 0..3u32 {
            let c = chi(table, p as usize, k);
            if c == 0 {
                continue;
            }
            let e = if p % 2 == 0 { -c } else { c };
            factors.push((Monomial::new(0, p + k - 1, k), 1, e));
        }
    }
    Ok(TriSeries::one(trunc).mul_binomial_powers(&factors))
}

/// Exponential form; the intermediate series has rational coefficients and
/// the result is checked to be integral.
pub fn chi_y_exp(table: &TwistedTable, trunc: u32) -> Result<TriSeries, EngineError> {
    require_powers(table, trunc, "diamonds")?;
    let mut terms = Vec::new();
    for k in 1..=trunc {
        for m in 1..=trunc / k {
            for p in 0..3u32 {
                let c = chi(table, p as usize, k);
                if c == 0 {
                    continue;
                }
                let signed = if p % 2 == 0 { c } else { -c };
                terms.push((
                    Monomial::new(0, (k - 1) * m + p * m, k * m),
                    Coefficient::ratio(signed, m as i64),
                ));
            }
        }
    }
    let out = TriSeries::from_terms(terms, trunc).exp()?;
    if let Some((m, c)) = out.terms().find(|(_, c)| !c.is_integral()) {
        return Err(EngineError::IntegralityFailure {
            context: "chi_y exponential form".to_string(),
            location: m.to_string(),
            value: c.to_string(),
        });
    }
    Ok(out)
}

/// Specialise the Hodge series: `y -> -1`, then `x -> -y`.
pub fn chi_y_from_hodge(table: &TwistedTable, trunc: u32) -> Result<TriSeries, EngineError> {
    let hodge = hilb_series(table, trunc)?;
    let step = hodge.substitute(&Substitution::new(Target::var(Var::X), Target::Const(-1)))?;
    // no y is left after the first step
    let out = step.substitute(&Substitution::new(Target::neg_var(Var::Y), Target::Const(1)))?;
    Ok(out)
}
