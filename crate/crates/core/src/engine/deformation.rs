//! Cohomology of the tangent bundle of `Hilb^n S`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;

use super::hilb::{hilb_hodge, super_sym_series, BigradedDims};
use super::types::{EngineError, GradedDims};
use crate::surface::{DeformationInput, TwistedTable};

/// `h^*(S^{(m)}, O) = Sym^m` of `H^{0,*}(S)`, with degree `d` of parity `d`.
pub fn structure_sheaf_sym(h_o: &[u64; 3], m: u32) -> GradedDims {
    let v: BigradedDims = h_o
        .iter()
        .enumerate()
        .filter(|(_, &h)| h > 0)
        .map(|(d, &h)| ((d as u32, 0), h))
        .collect();
    let coeff = super_sym_series(&v, m)
        .coefficient_of_t(m)
        .expect("within truncation");
    GradedDims::new(coeff.terms().map(|(&(d, _), c)| {
        let v = c.to_integer().expect("integral");
        (d as i64, v.magnitude().clone())
    }))
}

/// `H^*(S^n, T_{S^n})^{S_n}` expanded as `H^*(S, T_S) (x) Sym^{n-1} H^{0,*}(S)`.
pub fn sn_invariant_tangent(din: &DeformationInput, n: u32) -> GradedDims {
    if n == 0 {
        return GradedDims::default();
    }
    GradedDims::from_triple(din.h_tangent).tensor(&structure_sheaf_sym(&din.h_structure, n - 1))
}

/// `q -> h^q(Hilb^n S, T)` for `q = 0..=qmax`.
///
/// `n = 1` returns `h^*(S, T_S)` and `n = 0` returns zeros.
pub fn deformation_dims(din: &DeformationInput, n: u32, qmax: u32) -> BTreeMap<u32, BigUint> {
    let graded = match n {
        0 => GradedDims::default(),
        1 => GradedDims::from_triple(din.h_tangent),
        _ => {
            let shifted = GradedDims::new(
                din.h_anticanonical
                    .iter()
                    .enumerate()
                    .map(|(i, &h)| (i as i64 + 1, BigUint::from(h))),
            );
            let extra = structure_sheaf_sym(&din.h_structure, n - 2).tensor(&shifted);
            GradedDims::new(
                sn_invariant_tangent(din, n)
                    .iter()
                    .chain(extra.iter())
                    .map(|(d, v)| (*d, v.clone())),
            )
        }
    };
    (0..=qmax).map(|q| (q, graded.get(q as i64))).collect()
}

/// The closed forms for `h^0`, `h^1`, `h^2` of the tangent bundle.
pub fn deformation_closed_forms(din: &DeformationInput, n: u32) -> Result<[BigUint; 3], EngineError> {
    if !din.connected {
        return Err(EngineError::Precondition("closed forms need a connected surface".into()));
    }
    if n < 2 {
        return Err(EngineError::Precondition(format!("closed forms need n >= 2, got {n}")));
    }
    let t = din.h_tangent.map(BigUint::from);
    let o = din.h_structure.map(BigUint::from);
    let w = din.h_anticanonical.map(BigUint::from);
    let wedge2_o1 = if o[1].is_zero() {
        BigUint::zero()
    } else {
        &o[1] * (&o[1] - 1u32) / 2u32
    };
    let h0 = t[0].clone();
    let h1 = &t[1] + &t[0] * &o[1] + &w[0];
    let h2 = &t[2] + &t[1] * &o[1] + &t[0] * &o[2] + &t[0] * &wedge2_o1 + &o[1] * &w[0] + &w[1];
    Ok([h0, h1, h2])
}

/// `q -> h^{2n-1,q}(Hilb^n S, M_n)` for `M` the anticanonical bundle, given
/// its twisted table; this is `h^q(Hilb^n S, T)`.
pub fn tangent_dims_via_hodge(
    table_anticanonical: &TwistedTable,
    n: u32,
    qmax: u32,
) -> Result<BTreeMap<u32, BigUint>, EngineError> {
    if n == 0 {
        return Ok((0..=qmax).map(|q| (q, BigUint::zero())).collect());
    }
    let h = hilb_hodge(table_anticanonical, n)?;
    Ok((0..=qmax).map(|q| (q, h.get(2 * n - 1, q))).collect())
}
