//! Runs every two-path consistency check on one dataset.

use std::fmt;

use num_bigint::BigUint;

use crate::engine::{
    chi_y_exp, chi_y_from_hodge, chi_y_product, deformation_closed_forms,
    deformation_dims, diamond_dims, frolicher_check, hh_dims, hh_dims_from_series, hh_rhs_series,
    hilb_hodge, hilb_series, hilb_via_partitions, nested_hodge, nested_series, nested_via_strata,
    super_sym_series, tangent_dims_via_hodge, EngineError,
};
use crate::oracles::{super_sym_multiset, MULTISET_MAX_DIM};
use crate::series::{Substitution, TriSeries};
use crate::surface::SurfaceDataset;

/// Nested strata sums grow quickly; the two-path check stops here.
pub const NESTED_STRATA_MAX: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        writeln!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

type CheckOutcome = Result<Result<String, String>, EngineError>;

fn record(report: &mut VerifyReport, name: &'static str, outcome: CheckOutcome) {
    let (passed, detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(d)) => (false, d),
        Err(e) => (false, e.to_string()),
    };
    report.checks.push(CheckResult { name, passed, detail });
}

fn product_vs_partition(ds: &SurfaceDataset, trunc: u32) -> CheckOutcome {
    for n in 0..=trunc {
        let a = hilb_hodge(&ds.table, n)?;
        let b = hilb_via_partitions(&ds.table, n)?;
        if a != b {
            return Ok(Err(format!("n={n}: product {a} vs partitions {b}")));
        }
    }
    Ok(Ok(format!("n <= {trunc}")))
}

fn t1_fidelity(ds: &SurfaceDataset, trunc: u32) -> CheckOutcome {
    if trunc == 0 {
        return Ok(Ok("skipped (N = 0)".into()));
    }
    let coeff = hilb_series(&ds.table, trunc)?.coefficient_of_t(1)?;
    let d = ds.table.diamond(1).expect("powers checked");
    for p in 0..3 {
        for q in 0..3 {
            let c = coeff.get(p as u32, q as u32);
            if c.to_i64() != Some(d.get(p, q) as i64) {
                return Ok(Err(format!("h^{{{p},{q}}}: series {c} vs input {}", d.get(p, q))));
            }
        }
    }
    Ok(Ok("t^1 coefficient equals the k=1 diamond".into()))
}

fn swap_symmetry(ds: &SurfaceDataset, trunc: u32) -> CheckOutcome {
    if !ds.table.diamonds().iter().all(|d| d.is_symmetric()) {
        return Ok(Ok("skipped (asymmetric input)".into()));
    }
    let s = hilb_series(&ds.table, trunc)?;
    if s.substitute(&Substitution::swap_xy())? == s {
        Ok(Ok("series invariant under x <-> y".into()))
    } else {
        Ok(Err("series changes under x <-> y".into()))
    }
}

fn chi_y_three_way(ds: &SurfaceDataset, trunc: u32) -> CheckOutcome {
    let a = chi_y_product(&ds.table, trunc)?;
    let b = chi_y_exp(&ds.table, trunc)?;
    let c = chi_y_from_hodge(&ds.table, trunc)?;
    if a != b {
        return Ok(Err(format!("product {a} vs exp {b}")));
    }
    if a != c {
        return Ok(Err(format!("product {a} vs hodge {c}")));
    }
    Ok(Ok(format!("N = {trunc}")))
}

fn frolicher(ds: &SurfaceDataset, trunc: u32) -> CheckOutcome {
    let Some(b) = ds.betti_numbers() else {
        return Ok(Ok("skipped (no diamond)".into()));
    };
    let table = ds.trivial_table(trunc).expect("diamond present");
    match frolicher_check(&table, &b, trunc) {
        Ok(()) => Ok(Ok(format!("b = {b:?}, N = {trunc}"))),
        Err(e @ EngineError::Mismatch { .. }) => Ok(Err(e.to_string())),
        Err(e) => Err(e),
    }
}

fn hochschild(ds: &SurfaceDataset, trunc: u32) -> CheckOutcome {
    let s = hh_rhs_series(&ds.table, trunc)?;
    for n in 0..=trunc {
        let a = hh_dims(&ds.table, n)?;
        let b = hh_dims_from_series(&s, n)?;
        if a != b {
            return Ok(Err(format!("n={n}: {a:?} vs {b:?}")));
        }
    }
    Ok(Ok(format!("n <= {trunc}")))
}

fn nested_two_path(ds: &SurfaceDataset, trunc: u32) -> CheckOutcome {
    let top = trunc.min(NESTED_STRATA_MAX);
    for n in 0..=top {
        let a = nested_hodge(&ds.table, ds.nested_or_main(), n)?;
        let b = nested_via_strata(&ds.table, ds.nested_or_main(), n)?;
        if a != b {
            return Ok(Err(format!("n={n}: series {a} vs strata {b}")));
        }
    }
    Ok(Ok(format!("n <= {top}")))
}

fn nested_trivial(ds: &SurfaceDataset, trunc: u32) -> CheckOutcome {
    let t = ds.trivial_table(trunc).expect("diamond present");
    let nested = nested_series(&t, &t, trunc)?;
    let e_s = TriSeries::from_terms(
        diamond_dims(ds.hodge_diamond().expect("diamond present"))
            .into_iter()
            .map(|((p, q), h)| (crate::series::Monomial::new(p, q, 0), (h as i64).into())),
        trunc,
    );
    let expected = hilb_series(&t, trunc)?
        .mul(&e_s)
        .mul_binomial_power(crate::series::Monomial::new(1, 1, 1), 1, -1);
    if nested == expected {
        Ok(Ok(format!("N = {trunc}")))
    } else {
        Ok(Err("trivial-bundle nested series differs from the factorised form".into()))
    }
}

fn super_sym_oracle(ds: &SurfaceDataset, trunc: u32) -> CheckOutcome {
    let mut checked = 0;
    for d in ds.table.diamonds().iter().take(trunc as usize + 1) {
        let v = diamond_dims(d);
        if v.values().sum::<u64>() > MULTISET_MAX_DIM {
            continue;
        }
        let top = trunc.min(4);
        let series = super_sym_series(&v, top);
        for n in 0..=top {
            let oracle = super_sym_multiset(&v, n).expect("guarded");
            let coeff = series.coefficient_of_t(n)?;
            let agree = coeff.len() == oracle.len()
                && oracle
                    .iter()
                    .all(|(&(p, q), h)| coeff.get(p, q).to_integer().map(|c| c.to_string()) == Some(h.to_string()));
            if !agree {
                return Ok(Err(format!("Sym^{n} of {v:?}")));
            }
        }
        checked += 1;
    }
    Ok(Ok(format!("{checked} diamonds enumerated")))
}

fn deformation_closed(ds: &SurfaceDataset, trunc: u32) -> CheckOutcome {
    let Some(din) = ds.deformation else {
        return Ok(Ok("skipped (no deformation data)".into()));
    };
    if !din.connected {
        return Ok(Ok("skipped (disconnected)".into()));
    }
    let top = trunc.max(3);
    for n in 2..=top {
        let dims = deformation_dims(&din, n, 2);
        let closed = deformation_closed_forms(&din, n)?;
        // the h^2 closed form carries terms that only appear once n >= 3
        let qs: &[u32] = if n >= 3 { &[0, 1, 2] } else { &[0, 1] };
        for &q in qs {
            if dims[&q] != closed[q as usize] {
                return Ok(Err(format!("n={n}, q={q}: expansion {} vs closed form {}", dims[&q], closed[q as usize])));
            }
        }
    }
    Ok(Ok(format!("2 <= n <= {top}")))
}

fn omega_trivial(ds: &SurfaceDataset, trunc: u32) -> CheckOutcome {
    if !ds.canonical_bundle_trivial() {
        return Ok(Ok("skipped (canonical bundle not trivial)".into()));
    }
    let din = ds.deformation.expect("checked");
    let top = trunc.clamp(2, 3);
    let t = ds.trivial_table(top).expect("diamond present");
    for n in 2..=top {
        let a = deformation_dims(&din, n, 3);
        let b = tangent_dims_via_hodge(&t, n, 3)?;
        if a != b {
            let fmt = |m: &std::collections::BTreeMap<u32, BigUint>| {
                m.values().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            };
            return Ok(Err(format!("n={n}: deformation ({}) vs hodge ({})", fmt(&a), fmt(&b))));
        }
    }
    Ok(Ok(format!("n = 2..{top}, q = 0..3")))
}

/// All checks up to `t^trunc`. The table must cover `trunc` powers.
pub fn verify_dataset(ds: &SurfaceDataset, trunc: u32) -> Result<VerifyReport, EngineError> {
    crate::engine::hilb_series(&ds.table, trunc)?;
    if ds.nested_table.is_some() {
        nested_series(&ds.table, ds.nested_or_main(), trunc.min(NESTED_STRATA_MAX))?;
    }
    let mut report = VerifyReport::default();
    record(&mut report, "product-vs-partition", product_vs_partition(ds, trunc));
    record(&mut report, "t1-fidelity", t1_fidelity(ds, trunc));
    record(&mut report, "xy-symmetry", swap_symmetry(ds, trunc));
    record(&mut report, "super-sym-oracle", super_sym_oracle(ds, trunc));
    record(&mut report, "chi-y-three-way", chi_y_three_way(ds, trunc));
    record(&mut report, "frolicher", frolicher(ds, trunc));
    record(&mut report, "hochschild-two-path", hochschild(ds, trunc));
    record(&mut report, "nested-two-path", nested_two_path(ds, trunc));
    record(&mut report, "nested-trivial-bundles", nested_trivial(ds, trunc));
    record(&mut report, "deformation-closed-forms", deformation_closed(ds, trunc));
    record(&mut report, "omega-trivial-deformation", omega_trivial(ds, trunc));
    Ok(report)
}
