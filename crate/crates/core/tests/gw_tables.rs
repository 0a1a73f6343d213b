mod common;

use common::{oracles, random};
use mirrorcalc::gw::{eta_product_log_derivative, extract_n1, genus0_pipeline, lambert_series, GwTable};
use mirrorcalc::pseries::int;
use mirrorcalc::quintic::{f1_log_derivative, mirror_map};
use num_bigint::BigInt;

#[test]
fn lambert_equals_eta_product_for_random_tables() {
    let mut rng = random::rng(11);
    for _ in 0..50 {
        let t = random::gw_table(&mut rng, 20);
        assert_eq!(lambert_series(&t, 20), eta_product_log_derivative(&t, 20));
    }
}

#[test]
fn extraction_recovers_random_tables() {
    let mut rng = random::rng(12);
    for _ in 0..50 {
        let t = random::gw_table(&mut rng, 20);
        let back = extract_n1(&lambert_series(&t, 20), &t.n0).unwrap();
        assert_eq!(back.n1, t.n1);
    }
}

#[test]
fn empty_table_gives_constant() {
    let s = lambert_series(&GwTable::empty(6), 6);
    assert_eq!(s.constant_term(), &mirrorcalc::gw::leading_constant());
    assert!((1..=6).all(|n| s.coeff(n) == int(0)));
}

#[test]
fn lines_on_quintic_oracle() {
    assert_eq!(oracles::lines_on_quintic(), BigInt::from(2875));
}

#[test]
fn genus0_matches_schubert_oracle() {
    let chart = mirror_map(5).unwrap();
    let t = genus0_pipeline(&chart, 5).unwrap();
    let inst = t.instanton_n0.unwrap();
    assert_eq!(inst[&1], oracles::lines_on_quintic());
    let known = [2875i64, 609250, 317206375, 242467530000, 229305888887625];
    for (d, n) in known.iter().enumerate() {
        assert_eq!(inst[&(d + 1)], BigInt::from(*n), "degree {}", d + 1);
    }
}

#[test]
fn pipeline_stable_under_order_increase() {
    let chart = mirror_map(16).unwrap();
    let low = genus0_pipeline(&chart, 6).unwrap();
    let high = genus0_pipeline(&chart, 16).unwrap();
    for d in 1..=6 {
        assert_eq!(low.n0[&d], high.n0[&d]);
    }
}

#[test]
fn quintic_end_to_end() {
    let chart = mirror_map(10).unwrap();
    let g = f1_log_derivative(&chart).unwrap().g;
    let genus0 = genus0_pipeline(&chart, 10).unwrap();
    let table = extract_n1(&g, &genus0.n0).unwrap();
    assert_eq!(eta_product_log_derivative(&table, 10), g);
}

#[test]
fn json_round_trip() {
    let mut rng = random::rng(13);
    let t = random::gw_table(&mut rng, 8);
    let text = serde_json::to_string(&t.to_json()).unwrap();
    let back = GwTable::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, t);
}
