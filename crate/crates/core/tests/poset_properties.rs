mod common;

use std::collections::BTreeSet;

use common::*;
use newton_core::kottwitz::{break_points, enumerate_bgmu};
use newton_core::root_datum::RationalCoweight;
use newton_core::strata::codim_stratum;
use newton_core::{GroupKind, Rational};
use proptest::prelude::*;

#[test]
fn gl_posets_are_the_polygons() {
    for n in 1..=6 {
        for d in 0..=n {
            let p = enumerate_bgmu(&gl(n), &gl_mu(n, d)).unwrap();
            let got: BTreeSet<Vec<Rational>> = p.elements().iter().map(|b| b.newton_point.0.clone()).collect();
            assert_eq!(got, polygon_oracle(n, d), "GL{n}, d={d}");
            for i in 0..p.len() {
                for j in 0..p.len() {
                    assert_eq!(p.leq(i, j), polygon_leq(&p.get(i).newton_point.0, &p.get(j).newton_point.0));
                }
            }
        }
    }
}

#[test]
fn kappa_is_constant_and_extremes_are_right() {
    let groups = [gl(4), group(GroupKind::GSp, 4), group(GroupKind::Unitary, 3), group(GroupKind::SO, 5)];
    for d in &groups {
        for mu in minuscule_coweights(d) {
            let p = enumerate_bgmu(d, &mu).unwrap();
            assert!(p.elements().iter().all(|b| &b.kottwitz_point == p.kottwitz_point()));
            assert_eq!(p.get(p.b_max()).newton_point.0, orbit_average(d.sigma_cochar_matrix(), &mu.0));
            // the basic point pairs to zero with every root
            let basic = &p.get(p.b_min()).newton_point.0;
            assert!(d.roots().iter().all(|a| dot_q(a, basic) == q(0, 1)), "{d} {mu}");
        }
    }
}

#[test]
fn projections_are_monotone() {
    for d in [gl(5), group(GroupKind::GSp, 6), group(GroupKind::Unitary, 4)] {
        for p in minuscule_coweights(&d).iter().map(|mu| enumerate_bgmu(&d, mu).unwrap()) {
            for i in 0..p.len() {
                for j in 0..p.len() {
                    if p.leq(i, j) {
                        for beta in 0..d.relative_simple_roots().len() {
                            assert!(p.pr(beta, i).unwrap() <= p.pr(beta, j).unwrap());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn codimension_is_longest_chain_to_the_top() {
    for n in 2..=6 {
        for d in 0..=n {
            let p = enumerate_bgmu(&gl(n), &gl_mu(n, d)).unwrap();
            for b in 0..p.len() {
                // a brute-force longest chain through the order relation
                fn longest(p: &newton_core::NewtonPoset, from: usize, to: usize) -> usize {
                    if from == to {
                        return 0;
                    }
                    (0..p.len())
                        .filter(|&c| c != from && p.leq(from, c) && p.leq(c, to))
                        .map(|c| 1 + longest(p, c, to))
                        .max()
                        .unwrap()
                }
                let codim = codim_stratum(&p, b).unwrap();
                assert_eq!(codim as usize, longest(&p, b, p.b_max()));
            }
        }
    }
}

fn dominant_rational(max_n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-4i64..=4, 1i64..=4), 1..=max_n).prop_map(|v| {
        let mut out: Vec<Rational> = v.into_iter().map(|(a, b)| q(a, b)).collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    })
}

fn dominant_of_len(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    proptest::collection::vec((-4i64..=4, 1i64..=4), n).prop_map(|v| {
        let mut out: Vec<Rational> = v.into_iter().map(|(a, b)| q(a, b)).collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    })
}

proptest! {
    #[test]
    fn break_points_are_slope_changes(nu in dominant_rational(8)) {
        let d = gl(nu.len());
        let mut got: Vec<usize> = break_points(&d, &RationalCoweight(nu.clone()))
            .into_iter()
            .map(|beta| gl_simple_position(&d, d.relative_simple_roots()[beta][0]))
            .collect();
        got.sort_unstable();
        prop_assert_eq!(got, gl_break_indices(&nu));
    }

    #[test]
    fn dominance_is_the_polygon_order((a, b, same_total) in (1usize..=5).prop_flat_map(|n| (dominant_of_len(n), dominant_of_len(n), any::<bool>()))) {
        let n = a.len();
        let d = gl(n);
        let total = |v: &[Rational]| v.iter().fold(q(0, 1), |acc, x| acc + x.clone());
        // a central shift keeps b dominant and can match the totals
        let b: Vec<Rational> = if same_total {
            let shift = (total(&a) - total(&b)) / q(n as i64, 1);
            b.iter().map(|x| x.clone() + shift.clone()).collect()
        } else {
            b
        };
        let got = d.dominance_leq(&RationalCoweight(b.clone()), &RationalCoweight(a.clone())).unwrap();
        prop_assert_eq!(got, polygon_leq(&b, &a));
    }
}
