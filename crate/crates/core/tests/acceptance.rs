//! Acceptance criteria, one line each. Runs as a plain binary (no libtest
//! harness) so the report is always printed.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use hilbhodge::coefficient::Coefficient;
use hilbhodge::engine::*;
use hilbhodge::oracles::{naive_mul, super_sym_multiset};
use hilbhodge::series::{euler_product, Monomial, Substitution, TriSeries};
use hilbhodge::surface::{preset, PRESET_NAMES};
use num_bigint::BigUint;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hilbhodge"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn golden_diamonds() -> Outcome {
    for (n, rows) in [("2", hopf_hilb2_rows()), ("3", hopf_hilb3_rows())] {
        for name in ["hopf", "inoue"] {
            let (code, text) = cli(&["hilb", "--preset", name, "-n", n, "--format", "diamond"]);
            ensure(code == 0, || format!("{name} -n {n}: exit {code}"))?;
            let got = diamond_rows(&text);
            ensure(got == rows, || format!("{name} -n {n}: got {got:?}"))?;
        }
    }
    Ok("Hilb^2 and Hilb^3 diamonds match entry by entry".into())
}

fn closed_form_product() -> Outcome {
    let trunc = 10;
    let closed = euler_product(trunc, |k| {
        let num1 = TriSeries::from_i64_terms(&[(Monomial::ONE, 1), (Monomial::new(k - 1, k, k), 1)], trunc);
        let num2 = TriSeries::from_i64_terms(&[(Monomial::ONE, 1), (Monomial::new(k + 1, k, k), 1)], trunc);
        let den1 = TriSeries::from_i64_terms(&[(Monomial::ONE, 1), (Monomial::new(k - 1, k - 1, k), -1)], trunc);
        let den2 = TriSeries::from_i64_terms(&[(Monomial::ONE, 1), (Monomial::new(k + 1, k + 1, k), -1)], trunc);
        num1.mul(&num2).mul(&den1.invert().unwrap()).mul(&den2.invert().unwrap())
    })
    .map_err(|e| e.to_string())?;
    let hilb = hilb_series(&preset("hopf").unwrap().table, trunc).map_err(|e| e.to_string())?;
    ensure(closed == hilb, || "series differ".into())?;
    Ok(format!("{} terms agree up to t^{trunc}", hilb.len()))
}

fn deformation_h1() -> Outcome {
    for (name, h1) in [("k3", 21u32), ("torus", 9), ("bielliptic_ord2", 3), ("bielliptic_ord3", 2)] {
        let din = preset(name).unwrap().deformation.unwrap();
        for n in 2..=5 {
            let got = &deformation_dims(&din, n, 1)[&1];
            ensure(*got == BigUint::from(h1), || format!("{name} n={n}: {got}"))?;
            let closed = deformation_closed_forms(&din, n).map_err(|e| e.to_string())?;
            ensure(closed[1] == BigUint::from(h1), || format!("{name} n={n}: closed form {}", closed[1]))?;
        }
    }
    Ok("k3 21, torus 9, bielliptic 3 and 2 for n = 2..5".into())
}

fn two_path_random() -> Outcome {
    let mut r = rng(0x5eed_0004);
    for i in 0..100 {
        let table = random_table(&mut r, 3, 6);
        let series = hilb_series(&table, 6).map_err(|e| e.to_string())?;
        for n in 0..=6 {
            let a = HodgePolynomial::from_bipolynomial(&series.coefficient_of_t(n).unwrap(), 2 * n, "series")
                .map_err(|e| e.to_string())?;
            let b = hilb_via_partitions(&table, n).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("table {i}, n={n}"))?;
        }
    }
    Ok("100 tables, n <= 6".into())
}

fn chi_y_three_way() -> Outcome {
    let mut tables: Vec<(String, _)> = ["hopf", "k3", "torus"]
        .iter()
        .map(|n| (n.to_string(), preset(n).unwrap().table))
        .collect();
    let mut r = rng(0x5eed_0005);
    for i in 0..20 {
        tables.push((format!("random {i}"), random_table(&mut r, 3, 12)));
    }
    for (name, t) in &tables {
        let a = chi_y_product(t, 12).map_err(|e| e.to_string())?;
        let b = chi_y_exp(t, 12).map_err(|e| format!("{name}: {e}"))?;
        let c = chi_y_from_hodge(t, 12).map_err(|e| e.to_string())?;
        ensure(a == b && a == c, || format!("{name}: paths differ"))?;
        ensure(b.all_integral(), || format!("{name}: exp path not integral"))?;
    }
    Ok(format!("{} tables, N = 12", tables.len()))
}

fn nested_consistency() -> Outcome {
    for name in PRESET_NAMES {
        let ds = preset(name).unwrap();
        let t = ds.trivial_table(8).unwrap();
        let nested = nested_series(&t, &t, 8).map_err(|e| e.to_string())?;
        let e_s = TriSeries::from_terms(
            diamond_dims(ds.hodge_diamond().unwrap())
                .into_iter()
                .map(|((p, q), h)| (Monomial::new(p, q, 0), Coefficient::from_i64(h as i64))),
            8,
        );
        let one_minus_xyt = TriSeries::from_i64_terms(&[(Monomial::ONE, 1), (Monomial::new(1, 1, 1), -1)], 8);
        let expected = hilb_series(&t, 8)
            .unwrap()
            .mul(&e_s)
            .mul(&one_minus_xyt.invert().unwrap());
        ensure(nested == expected, || format!("{name}: trivial-bundle identity fails"))?;
    }
    let mut r = rng(0x5eed_0006);
    for i in 0..10 {
        let tl = random_table(&mut r, 3, 4);
        let tlp = random_table(&mut r, 3, 4);
        for n in 0..=4 {
            let a = nested_hodge(&tl, &tlp, n).map_err(|e| e.to_string())?;
            let b = nested_via_strata(&tl, &tlp, n).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("random pair {i}, n={n}"))?;
        }
    }
    Ok("all presets n <= 8; 10 random pairs n <= 4".into())
}

fn frolicher() -> Outcome {
    for name in ["hopf", "k3"] {
        let ds = preset(name).unwrap();
        let t = ds.trivial_table(10).unwrap();
        frolicher_check(&t, &ds.betti_numbers().unwrap(), 10).map_err(|e| e.to_string())?;
        let collapsed = hilb_series(&t, 10).unwrap().substitute(&Substitution::diagonal()).unwrap();
        ensure(collapsed == betti_series(&ds.betti_numbers().unwrap(), 10), || format!("{name}: series differ"))?;
    }
    Ok("hopf and k3, N = 10".into())
}

fn hochschild() -> Outcome {
    let mut r = rng(0x5eed_0008);
    for i in 0..25 {
        let t = random_table(&mut r, 3, 6);
        let rhs = hh_rhs_series(&t, 6).map_err(|e| e.to_string())?;
        for n in 0..=6 {
            let a = hh_dims(&t, n).map_err(|e| e.to_string())?;
            let b = hh_dims_from_series(&rhs, n).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("table {i}, n={n}"))?;
        }
    }
    Ok("25 tables, n <= 6".into())
}

fn oracles() -> Outcome {
    let mut r = rng(0x5eed_0009);
    for i in 0..200 {
        let v = random_small_dims(&mut r, 6);
        let series = super_sym_series(&v, 6);
        for n in 0..=6 {
            let oracle = super_sym_multiset(&v, n).map_err(|e| e.to_string())?;
            let coeff = series.coefficient_of_t(n).unwrap();
            let from_series: Vec<((u32, u32), String)> =
                coeff.terms().map(|(k, c)| (*k, c.to_string())).collect();
            let from_oracle: Vec<((u32, u32), String)> =
                oracle.iter().map(|(k, c)| (*k, c.to_string())).collect();
            ensure(from_series == from_oracle, || format!("input {i} ({v:?}), n={n}"))?;
        }
    }
    for i in 0..500 {
        let trunc = 4;
        let a = random_series(&mut r, trunc, 12);
        let b = random_series(&mut r, trunc, 12);
        ensure(naive_mul(&a, &b) == a.mul(&b), || format!("pair {i}"))?;
    }
    Ok("200 super-sym inputs, 500 product pairs".into())
}

fn omega_trivial() -> Outcome {
    for name in ["k3", "torus"] {
        let ds = preset(name).unwrap();
        ensure(ds.canonical_bundle_trivial(), || format!("{name}: canonical bundle not flagged trivial"))?;
        let din = ds.deformation.unwrap();
        let t = ds.trivial_table(3).unwrap();
        for n in 2..=3 {
            let a = deformation_dims(&din, n, 3);
            let b = tangent_dims_via_hodge(&t, n, 3).map_err(|e| e.to_string())?;
            ensure(a == b, || format!("{name} n={n}: {a:?} vs {b:?}"))?;
        }
    }
    Ok("k3 and torus, n = 2,3, q = 0..3".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "golden Hopf/Inoue diamonds", budget: Duration::from_secs(1), run: golden_diamonds },
        Criterion { id: 2, name: "closed-form Hopf product", budget: Duration::from_secs(5), run: closed_form_product },
        Criterion { id: 3, name: "deformation dimensions", budget: Duration::from_secs(1), run: deformation_h1 },
        Criterion { id: 4, name: "product vs partition", budget: Duration::from_secs(30), run: two_path_random },
        Criterion { id: 5, name: "chi_y three-way", budget: Duration::from_secs(10), run: chi_y_three_way },
        Criterion { id: 6, name: "nested consistency", budget: Duration::from_secs(20), run: nested_consistency },
        Criterion { id: 7, name: "Frolicher/Betti", budget: Duration::from_secs(5), run: frolicher },
        Criterion { id: 8, name: "Hochschild two-path", budget: Duration::from_secs(10), run: hochschild },
        Criterion { id: 9, name: "oracle suites", budget: Duration::from_secs(10), run: oracles },
        Criterion { id: 10, name: "omega-trivial deformation", budget: Duration::from_secs(5), run: omega_trivial },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= c.budget => (true, d),
            Ok(d) => (false, format!("{d}, but over the time budget")),
            Err(e) => (false, e),
        };
        if !ok {
            failures += 1;
        }
        println!(
            "{} criterion {:>2} {}: {} [{:.3}s / {}s]",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            detail,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
