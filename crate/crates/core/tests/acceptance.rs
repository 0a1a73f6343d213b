//! Acceptance criteria, each checked against its tolerance and time limit.
//! Prints one line per criterion and exits non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{oracles, random};
use mirrorcalc::combinatorics::delta;
use mirrorcalc::divisor::{assemble_factor, divisor_equal, green_potential, quintic_normal_form, FamilyData};
use mirrorcalc::gw::{eta_product_log_derivative, extract_n1, genus0_pipeline, lambert_series};
use mirrorcalc::lattice::{
    determinant, enriques_gram, fhsv_constant, fhsv_covolume, rank1_update_det_check, PiMonomial, FHSV_K3_RANK,
};
use mirrorcalc::modular::{delta_series, eta_series, petersson_delta};
use mirrorcalc::pseries::{int, rat, ExactSeries, Rational, Variable};
use mirrorcalc::quintic::{f1_log_derivative, mirror_map, period_y0, picard_fuchs_check};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;

type Check = fn() -> Result<(), String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ac1_delta_table() -> Result<(), String> {
    let row: Vec<Rational> = (0..=3).map(|p| delta(3, p).unwrap()).collect();
    let expected = [rat(1, 120), rat(27, 120), rat(93, 120), rat(119, 120)];
    ensure(row == expected, format!("row {row:?}"))?;
    let weighted: Rational = row.iter().enumerate().map(|(p, d)| d * int(p as i64)).sum();
    ensure(weighted == rat(19, 4), format!("sum p delta = {weighted}"))
}

fn ac2_mirror_map() -> Result<(), String> {
    let small = mirror_map(2).map_err(|e| e.to_string())?;
    ensure(
        small.x_of_q == ExactSeries::from_ints(Variable::Q, 2, &[0, 1, -770]),
        format!("x(q) = {}", small.x_of_q),
    )?;
    let chart = mirror_map(50).map_err(|e| e.to_string())?;
    let id = chart
        .q_of_x
        .compose(&chart.x_of_q.clone().with_var(Variable::X))
        .map_err(|e| e.to_string())?;
    ensure(id == ExactSeries::variable(Variable::X, 50), "q(x(q)) != q at order 50")?;
    ensure(picard_fuchs_check(&period_y0(100)), "Picard-Fuchs fails at order 100")
}

fn ac3_f1_constant() -> Result<(), String> {
    let chart = mirror_map(1).map_err(|e| e.to_string())?;
    let g = f1_log_derivative(&chart).map_err(|e| e.to_string())?.g;
    ensure(g.constant_term() == &rat(50, 12), format!("G(0) = {}", g.constant_term()))
}

fn ac4_lambert_eta() -> Result<(), String> {
    let mut rng = random::rng(4);
    for i in 0..50 {
        let t = random::gw_table(&mut rng, 20);
        ensure(lambert_series(&t, 20) == eta_product_log_derivative(&t, 20), format!("table {i}"))?;
    }
    Ok(())
}

fn ac5_extraction() -> Result<(), String> {
    let mut rng = random::rng(5);
    for i in 0..50 {
        let t = random::gw_table(&mut rng, 20);
        let back = extract_n1(&lambert_series(&t, 20), &t.n0).map_err(|e| e.to_string())?;
        ensure(back.n1 == t.n1, format!("table {i}"))?;
    }
    Ok(())
}

fn ac6_genus0_anchor() -> Result<(), String> {
    let oracle = oracles::lines_on_quintic();
    let chart = mirror_map(3).map_err(|e| e.to_string())?;
    let table = genus0_pipeline(&chart, 3).map_err(|e| e.to_string())?;
    let n1 = &table.instanton_n0.ok_or("no instanton numbers")?[&1];
    ensure(*n1 == oracle && oracle == BigInt::from(2875), format!("pipeline {n1}, oracle {oracle}"))
}

fn ac7_end_to_end() -> Result<(), String> {
    let chart = mirror_map(10).map_err(|e| e.to_string())?;
    let g = f1_log_derivative(&chart).map_err(|e| e.to_string())?.g;
    let genus0 = genus0_pipeline(&chart, 10).map_err(|e| e.to_string())?;
    let table = extract_n1(&g, &genus0.n0).map_err(|e| e.to_string())?;
    ensure(eta_product_log_derivative(&table, 10) == g, "G not reproduced")
}

fn ac8_lattice() -> Result<(), String> {
    let mut rng = random::rng(8);
    for _ in 0..10 {
        let l = random::cubic_lattice(&mut rng, 4);
        let k = l.kappa().to_vec();
        let kkk = l.cubic_form(&k, &k, &k);
        ensure(l.l2_pairing(&k, &k).unwrap() == rat(1, 2) * &kkk, "pairing on kappa")?;
        let a = random::vector(&mut rng, 4);
        let ratio = l.cubic_form(&a, &k, &k) / &kkk;
        let prim: Vec<Rational> = a.iter().zip(&k).map(|(x, y)| x - &ratio * y).collect();
        ensure(
            l.l2_pairing(&prim, &prim).unwrap() == -l.cubic_form(&prim, &prim, &k),
            "pairing on primitive class",
        )?;
    }
    for i in 0..50 {
        let l = random::cubic_lattice(&mut rng, 4);
        let moved = l.change_basis(&random::unimodular(&mut rng, 4)).map_err(|e| e.to_string())?;
        ensure(
            moved.covolume().unwrap().covolume == l.covolume().unwrap().covolume,
            format!("conjugation {i}"),
        )?;
    }
    let a = enriques_gram();
    let mut h = vec![int(0); FHSV_K3_RANK];
    h[0] = int(3);
    h[1] = int(2);
    let hah = int(2 * 2 * 3 * 2);
    let cov = fhsv_covolume(&a, &h).map_err(|e| e.to_string())?.covolume;
    ensure(cov == PiMonomial::new(hah / BigInt::from(2).pow(35), -33), format!("covolume {cov}"))?;
    let c = fhsv_constant(&a, &h).map_err(|e| e.to_string())?;
    ensure(
        c == PiMonomial::new(Rational::from_integer(BigInt::from(2).pow(50)), 42),
        format!("constant {c}"),
    )
}

fn ac9_rank_one() -> Result<(), String> {
    let mut rng = random::rng(9);
    let mut checked = 0;
    while checked < 100 {
        let n = 2 + checked % 6;
        let a = random::symmetric_matrix(&mut rng, n);
        let h = random::vector(&mut rng, n);
        if determinant(&a).is_zero() {
            continue;
        }
        match rank1_update_det_check(&a, &h) {
            Ok(true) => checked += 1,
            Ok(false) => return Err(format!("instance {checked}")),
            Err(_) => continue,
        }
    }
    Ok(())
}

fn ac10_modular() -> Result<(), String> {
    let q = ExactSeries::variable(Variable::Q, 50);
    let expected = q.mul(&eta_series(50).pow(24)).map_err(|e| e.to_string())?;
    ensure(delta_series(50).map_err(|e| e.to_string())? == expected, "Delta != q eta^24")?;
    for tau in [Complex64::new(0.0, 2.0), Complex64::new(1.0, 1.0), Complex64::new(0.0, 2.5)] {
        let a = petersson_delta(tau, 60).map_err(|e| e.to_string())?.norm_sq;
        let b = petersson_delta(-Complex64::new(1.0, 0.0) / tau, 60).map_err(|e| e.to_string())?.norm_sq;
        ensure(((a - b) / a).abs() < 1e-10, format!("tau = {tau}: {a} vs {b}"))?;
    }
    Ok(())
}

fn ac11_divisor() -> Result<(), String> {
    let data = FamilyData::mirror_quintic();
    let f = assemble_factor(&data).map_err(|e| e.to_string())?;
    ensure(divisor_equal(&f, &quintic_normal_form()), "factor differs from normal form")?;
    let (_, xi, vf) = f.normalized();
    ensure(xi == rat(248, 6) && vf == rat(12, 6), format!("xi {xi}, vector field {vf}"))?;
    let v = green_potential(&data, Complex64::new(2.0, 0.0)).map_err(|e| e.to_string())?;
    let expected = 2.0 * 31f64.ln() - 248.0 * 2f64.ln();
    ensure((v - expected).abs() < 1e-12 * expected.abs(), format!("{v} vs {expected}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, Duration); 11] = [
        ("AC1 delta table", ac1_delta_table, Duration::from_millis(1)),
        ("AC2 mirror map", ac2_mirror_map, Duration::from_secs(5)),
        ("AC3 F1 normalization", ac3_f1_constant, Duration::from_secs(1)),
        ("AC4 Lambert = eta product", ac4_lambert_eta, Duration::from_secs(10)),
        ("AC5 extraction round-trip", ac5_extraction, Duration::from_secs(10)),
        ("AC6 genus-0 anchor", ac6_genus0_anchor, Duration::from_secs(30)),
        ("AC7 end-to-end quintic", ac7_end_to_end, Duration::from_secs(60)),
        ("AC8 lattice", ac8_lattice, Duration::from_secs(5)),
        ("AC9 rank-1 determinant", ac9_rank_one, Duration::from_secs(5)),
        ("AC10 modular", ac10_modular, Duration::from_secs(5)),
        ("AC11 divisor", ac11_divisor, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match result {
            Ok(()) if elapsed <= limit => "PASS".to_string(),
            Ok(()) => format!("FAIL (over time limit {limit:?})"),
            Err(msg) => format!("FAIL ({msg})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("{verdict:<6} {name} [{elapsed:.3?}]");
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
