mod common;

use common::*;
use newton_core::format::{poset_dot, poset_json, strata_json, strata_tsv};
use newton_core::kottwitz::enumerate_bgmu;
use newton_core::strata::{strata_report, DefectMode};
use newton_core::{GroupKind, Rational};
use serde_json::Value;

/// `⟨ρ, μ + ν⟩ − def/2` with `2ρ = (n−1, n−3, …, 1−n)`.
fn gl_stratum_dim(mu: &[Rational], nu: &[Rational]) -> Rational {
    let n = mu.len() as i64;
    let mut acc = q(0, 1);
    for (i, (m, v)) in mu.iter().zip(nu).enumerate() {
        acc = acc + (m.clone() + v.clone()) * q(n - 1 - 2 * i as i64, 2);
    }
    acc - q(gl_defect(nu), 2)
}

#[test]
fn gl_dimensions_match_the_formula() {
    for n in 1..=6 {
        for d in 0..=n {
            let mu = gl_mu(n, d);
            let r = strata_report(&gl(n), &mu).unwrap();
            assert_eq!(r.defect_mode, DefectMode::Direct);
            assert_eq!(r.dim_deformation_space, (d * (n - d)) as i64);
            for row in &r.rows {
                let expected = gl_stratum_dim(&mu.0, &row.newton_point.0);
                assert_eq!(q(row.dim_stratum, 1), expected, "GL{n} {}", row.newton_point);
                assert_eq!(q(row.dim_central_leaf, 1), dot_q(&two_rho(&gl(n)), &row.newton_point.0));
                assert!(row.dim_rz >= 0 && row.defect >= 0);
            }
            // the ordinary locus is open and dense, the basic one is deepest
            assert_eq!(r.rows[0].codim, 0);
            assert_eq!(r.rows.iter().map(|x| x.codim).max(), r.rows.last().map(|x| x.codim));
        }
    }
}

#[test]
fn zero_mu_gives_a_single_zero_row() {
    let r = strata_report(&gl(3), &cw("0,0,0")).unwrap();
    assert_eq!(r.rows.len(), 1);
    let row = &r.rows[0];
    assert_eq!((row.defect, row.dim_stratum, row.codim, row.dim_central_leaf, row.dim_rz), (0, 0, 0, 0, 0));
}

#[test]
fn non_split_groups_fall_back_to_poset_defects() {
    for d in [group(GroupKind::Unitary, 3), group(GroupKind::SO, 5)] {
        for mu in minuscule_coweights(&d) {
            let r = strata_report(&d, &mu).unwrap();
            if r.rows.len() > 1 || mu.0.iter().any(|x| *x != q(0, 1)) {
                assert_eq!(r.defect_mode, DefectMode::Poset, "{d} {mu}");
            }
        }
    }
}

#[test]
fn serialized_forms_agree_with_the_report() {
    let d = group(GroupKind::GSp, 4);
    let mu = cw("1,1,1");
    let r = strata_report(&d, &mu).unwrap();
    let tsv = strata_tsv(&r);
    let lines: Vec<&str> = tsv.lines().collect();
    assert_eq!(lines.len(), r.rows.len() + 1);
    let v: Value = serde_json::from_str(&strata_json(&r)).unwrap();
    assert_eq!(v["schema"], 1);
    for (row, (line, js)) in r.rows.iter().zip(lines[1..].iter().zip(v["rows"].as_array().unwrap())) {
        let cols: Vec<&str> = line.split('\t').collect();
        assert_eq!(cols[3].parse::<i64>().unwrap(), row.dim_stratum);
        assert_eq!(js["dim"].as_i64().unwrap(), row.dim_stratum);
        assert_eq!(js["dim_rz"].as_i64().unwrap(), row.dim_rz);
    }

    let p = enumerate_bgmu(&d, &mu).unwrap();
    let pj: Value = serde_json::from_str(&poset_json(&p)).unwrap();
    assert_eq!(pj["elements"].as_array().unwrap().len(), p.len());
    assert_eq!(pj["hasse"].as_array().unwrap().len(), p.hasse().len());
    let dot = poset_dot(&p);
    assert_eq!(dot.matches(" -> ").count(), p.hasse().len());
}
