use super::*;
use crate::linalg;
use crate::Rational;
use num_traits::Signed;
use proptest::prelude::*;

type Cw = RationalCoweight<Rational>;
type Wt = RationalWeight<Rational>;

fn q(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

fn cw(s: &str) -> Cw {
    Cw::parse(s).unwrap()
}

fn wt(s: &str) -> Wt {
    Wt::parse(s).unwrap()
}

fn gl(n: usize) -> RootDatum {
    build_classical(GroupKind::GL, n).unwrap()
}

fn all_builders() -> Vec<RootDatum> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(build_classical(GroupKind::GL, n).unwrap());
        out.push(build_classical(GroupKind::Unitary, n).unwrap());
    }
    for n in 2..=6 {
        out.push(build_classical(GroupKind::SL, n).unwrap());
        out.push(build_classical(GroupKind::PGL, n).unwrap());
    }
    for n in [2, 4, 6, 8, 10] {
        out.push(build_classical(GroupKind::GSp, n).unwrap());
        out.push(build_classical(GroupKind::Sp, n).unwrap());
    }
    for n in 3..=12 {
        out.push(build_classical(GroupKind::SO, n).unwrap());
    }
    out
}

#[test]
fn pairing_examples() {
    let g2 = gl(2);
    assert_eq!(g2.pair(&wt("1,-1"), &cw("1,0")).unwrap(), q(1, 1));
    let g4 = gl(4);
    assert_eq!(g4.pair(&g4.rho(), &cw("1,1,0,0")).unwrap(), q(2, 1));
    assert_eq!(g4.pair(&wt("3,1/2,7,-2"), &Cw::zero(4)).unwrap(), q(0, 1));
    assert_eq!(
        g4.pair(&wt("1,0"), &cw("1,0,0,0")),
        Err(RootDatumError::RankMismatch { expected: 4, got: 2 })
    );
}

#[test]
fn rho_examples() {
    assert_eq!(gl(2).rho::<Rational>(), wt("1/2,-1/2"));
    assert_eq!(gl(4).rho::<Rational>(), wt("3/2,1/2,-1/2,-3/2"));
    let sl2 = build_classical(GroupKind::SL, 2).unwrap();
    let rho: Wt = sl2.rho();
    assert_eq!(rho, wt("1"));
    assert_eq!(sl2.pair(&rho, &Cw::from_ints(sl2.simple_coroot(0))).unwrap(), q(1, 1));
}

#[test]
fn dominant_representative_examples() {
    let g3 = gl(3);
    let (d, w) = g3.dominant_representative(&cw("0,1/2,1/2"));
    assert_eq!(d, cw("1/2,1/2,0"));
    assert_eq!(w.apply(&cw("0,1/2,1/2")), d);

    let (d, w) = g3.dominant_representative(&cw("2,1,1"));
    assert_eq!(d, cw("2,1,1"));
    assert!(w.is_identity());
    assert!(w.word.is_empty());

    let (d, _) = gl(4).dominant_representative(&cw("0,1,1,0"));
    assert_eq!(d, cw("1,1,0,0"));
}

#[test]
fn dominance_examples() {
    let g4 = gl(4);
    assert!(g4.dominance_leq(&cw("1/2,1/2,1/2,1/2"), &cw("1,1,0,0")).unwrap());
    let a = cw("2/3,2/3,2/3,0");
    let b = cw("1,1/3,1/3,1/3");
    assert!(!g4.dominance_leq(&a, &b).unwrap());
    assert!(!g4.dominance_leq(&b, &a).unwrap());
    assert!(g4.dominance_leq(&a, &a).unwrap());
    assert!(matches!(
        g4.dominance_leq(&cw("0,1,0,0"), &a),
        Err(RootDatumError::NotDominant(_))
    ));
    // different totals are never comparable
    assert!(!g4.dominance_leq(&cw("0,0,0,0"), &cw("1,0,0,0")).unwrap());
}

#[test]
fn fundamental_weight_examples() {
    for n in 2..=6 {
        let g = gl(n);
        for i in 0..n - 1 {
            let w: Wt = g.fundamental_weight(i).unwrap();
            let expected: Vec<Rational> = (0..n)
                .map(|k| q(i64::from(k <= i), 1) - q(i as i64 + 1, n as i64))
                .collect();
            assert_eq!(w.0, expected, "GL{n} omega_{i}");
            for j in 0..n - 1 {
                let p = g.pair(&w, &Cw::from_ints(g.simple_coroot(j))).unwrap();
                assert_eq!(p, q(i64::from(i == j), 1));
            }
        }
        assert!(matches!(g.fundamental_weight::<Rational>(n), Err(RootDatumError::InvalidIndex(_))));
    }
    let sl2 = build_classical(GroupKind::SL, 2).unwrap();
    let w: Wt = sl2.fundamental_weight(0).unwrap();
    assert_eq!(w, Wt::from_ints(sl2.simple_root(0)).scale(&q(1, 2)));
}

#[test]
fn orbit_examples() {
    let g3 = gl(3);
    let orb = g3.weyl_orbit(&cw("1,0,0")).unwrap();
    let expected: BTreeSet<Cw> = ["1,0,0", "0,1,0", "0,0,1"].iter().map(|s| cw(s)).collect();
    assert_eq!(orb, expected);
    assert_eq!(g3.weyl_orbit(&cw("1/3,1/3,1/3")).unwrap().len(), 1);
    assert_eq!(gl(4).weyl_orbit(&cw("1,1,0,0")).unwrap().len(), 6);
    let group_order = gl(4).weyl_group().unwrap().len();
    assert_eq!(group_order, 24);
    assert_eq!(group_order % 6, 0);
}

#[test]
fn convex_hull_examples() {
    let g2 = gl(2);
    assert!(g2.in_convex_hull_of_orbit(&wt("0,1"), &wt("1,0")).unwrap());
    assert!(g2.in_convex_hull_of_orbit(&wt("1/2,1/2"), &wt("1,0")).unwrap());
    assert!(!g2.in_convex_hull_of_orbit(&wt("2,-1"), &wt("1,0")).unwrap());
}

#[test]
fn builder_root_counts() {
    let count = |k, n| build_classical(k, n).unwrap().roots().len();
    assert_eq!(count(GroupKind::GL, 4), 12);
    let gsp4 = build_classical(GroupKind::GSp, 4).unwrap();
    assert_eq!(gsp4.rank(), 3);
    assert_eq!(gsp4.roots().len(), 8);
    for n in 1..=6 {
        assert_eq!(count(GroupKind::GL, n), n * n - n);
    }
    for n in 2..=6 {
        assert_eq!(count(GroupKind::SL, n), n * n - n);
        assert_eq!(count(GroupKind::PGL, n), n * n - n);
    }
    for m in 1..=5 {
        assert_eq!(count(GroupKind::GSp, 2 * m), 2 * m * m);
        assert_eq!(count(GroupKind::Sp, 2 * m), 2 * m * m);
        assert_eq!(count(GroupKind::SO, 2 * m + 1), 2 * m * m);
    }
    for m in 2..=6 {
        assert_eq!(count(GroupKind::SO, 2 * m), 2 * m * (m - 1));
    }
}

#[test]
fn unitary_sigma_swaps_simple_roots() {
    let u3 = build_classical(GroupKind::Unitary, 3).unwrap();
    assert_eq!(u3.sigma_order(), 2);
    assert_eq!(u3.sigma_permutation(), &[1, 0]);
    assert_eq!(u3.relative_simple_roots(), &[vec![0, 1]]);
    assert!(!u3.is_split());
    let u4 = build_classical(GroupKind::Unitary, 4).unwrap();
    assert_eq!(u4.relative_simple_roots(), &[vec![0, 2], vec![1]]);
}

#[test]
fn bad_sizes_are_rejected() {
    for (k, n) in [
        (GroupKind::GL, 0),
        (GroupKind::SL, 1),
        (GroupKind::GSp, 3),
        (GroupKind::Sp, 5),
        (GroupKind::SO, 2),
    ] {
        assert!(matches!(build_classical(k, n), Err(RootDatumError::Unsupported(_))));
    }
    assert!("XY3".parse::<GroupSpec>().is_err());
}

#[test]
fn group_spec_parsing() {
    let s: GroupSpec = "GSp4".parse().unwrap();
    assert_eq!(s, GroupSpec::new(GroupKind::GSp, 4));
    assert_eq!(s.to_string(), "GSp4");
    let u: GroupSpec = "unitary-unramified3".parse().unwrap();
    assert_eq!(u.kind, GroupKind::Unitary);
    assert_eq!("gl_4".parse::<GroupSpec>().unwrap(), GroupSpec::new(GroupKind::GL, 4));
}

#[test]
fn invalid_data_is_rejected() {
    // <alpha, alpha^vee> = 1
    let r = RootDatum::new(None, 1, vec![vec![1], vec![-1]], vec![vec![1], vec![-1]], vec![0], None);
    assert!(matches!(r, Err(RootDatumError::Invalid(_))));
    // sigma not permuting the simple roots
    let g = gl(3);
    let bad_sigma = vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]];
    let r = RootDatum::new(
        None,
        3,
        g.roots().to_vec(),
        g.coroots().to_vec(),
        g.simple_indices().to_vec(),
        Some(bad_sigma),
    );
    assert!(r.is_err());
}

#[test]
fn reflections_permute_roots() {
    for d in all_builders().into_iter().filter(|d| d.rank() <= 6) {
        let roots: HashSet<&Vec<i64>> = d.roots().iter().collect();
        for (k, alpha) in d.roots().iter().enumerate() {
            let cov = &d.coroots()[k];
            for beta in d.roots() {
                let p: i64 = beta.iter().zip(cov).map(|(a, b)| a * b).sum();
                let img: Vec<i64> = beta.iter().zip(alpha).map(|(b, a)| b - p * a).collect();
                assert!(roots.contains(&img), "{d}: s_{alpha:?} moves {beta:?} out");
            }
        }
    }
}

#[test]
fn rho_pairs_to_one_with_simple_coroots() {
    for d in all_builders() {
        let rho: Wt = d.rho();
        for i in 0..d.num_simple() {
            let c = Cw::from_ints(d.simple_coroot(i));
            assert_eq!(d.pair(&rho, &c).unwrap(), q(1, 1), "{d}");
        }
    }
}

#[test]
fn weyl_elements_preserve_roots_and_pairing() {
    for d in [gl(3), build_classical(GroupKind::GSp, 4).unwrap(), build_classical(GroupKind::SO, 5).unwrap()] {
        let group = d.weyl_group().unwrap();
        let roots: HashSet<&Vec<i64>> = d.roots().iter().collect();
        for w in &group {
            // char_matrix is the inverse transpose
            let prod = linalg::mat_mul(&linalg::transpose(&w.char_matrix), &w.matrix);
            assert_eq!(prod, linalg::identity(d.rank()));
            for r in d.roots() {
                assert!(roots.contains(&w.apply_root(r)));
            }
            assert_eq!(d.weyl_element(&w.word).unwrap(), *w);
        }
    }
    assert_eq!(build_classical(GroupKind::SO, 5).unwrap().weyl_group().unwrap().len(), 8);
}

#[test]
fn dual_swaps_roles() {
    let so5 = build_classical(GroupKind::SO, 5).unwrap();
    let dual = so5.dual();
    assert_eq!(dual.roots(), so5.coroots());
    assert_eq!(dual.dual().roots(), so5.roots());
}

#[test]
fn json_round_trip() {
    for d in all_builders() {
        let text = serde_json::to_string(&d).unwrap();
        let back: RootDatum = serde_json::from_str(&text).unwrap();
        assert_eq!(back, d);
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
    let text = serde_json::to_string(&build_classical(GroupKind::Unitary, 3).unwrap()).unwrap();
    let tampered = text.replace("\"perm\":[1,0]", "\"perm\":[0,1]");
    assert_ne!(tampered, text);
    assert!(serde_json::from_str::<RootDatum>(&tampered).is_err());
}

#[test]
fn sigma_average_is_invariant() {
    let u4 = build_classical(GroupKind::Unitary, 4).unwrap();
    let mu = cw("1,0,0,0");
    let avg = u4.sigma_average(&mu);
    assert_eq!(avg, cw("1/2,0,0,-1/2"));
    assert!(u4.is_sigma_invariant(&avg));
}

// -- convex hull oracle -------------------------------------------------------

/// Carathéodory: a point of the hull lies in the hull of some affinely
/// independent subset; those give unique barycentric coordinates.
fn hull_oracle(points: &[Vec<Rational>], target: &[Rational]) -> bool {
    let dim = target.len();
    let n = points.len();
    fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            subsets(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    for k in 1..=(dim + 1).min(n) {
        let mut all = Vec::new();
        subsets(n, k, 0, &mut Vec::new(), &mut all);
        for s in all {
            // rows: coordinates, then the affine row
            let mut a: Vec<Vec<Rational>> = (0..dim).map(|r| s.iter().map(|&i| points[i][r].clone()).collect()).collect();
            a.push(vec![q(1, 1); k]);
            if linalg::rank(&a) < k {
                continue;
            }
            let mut b = target.to_vec();
            b.push(q(1, 1));
            if let Some(c) = linalg::solve(&a, &b) {
                if c.iter().all(|x| !x.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

fn lattice_points(rank: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-2..=2).map(move |x| {
                    let mut v = p.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}

#[test]
fn convex_hull_matches_oracle() {
    let groups = [
        gl(2),
        gl(3),
        build_classical(GroupKind::SL, 3).unwrap(),
        build_classical(GroupKind::Sp, 4).unwrap(),
        build_classical(GroupKind::GSp, 4).unwrap(),
        build_classical(GroupKind::SO, 5).unwrap(),
    ];
    for d in &groups {
        let pts = lattice_points(d.rank());
        let dominant: Vec<Wt> = pts
            .iter()
            .map(|p| Wt::from_ints(p))
            .filter(|w| d.is_dominant_weight(w))
            .collect();
        for mu in &dominant {
            let orbit: Vec<Vec<Rational>> = d.weyl_orbit_weight(mu).unwrap().into_iter().map(|w| w.0).collect();
            for p in &pts {
                let lam = Wt::from_ints(p);
                let fast = d.in_convex_hull_of_orbit(&lam, mu).unwrap();
                assert_eq!(fast, hull_oracle(&orbit, &lam.0), "{d}: {lam} in hull of W{mu}");
            }
        }
    }
}

// -- properties ------------------------------------------------------------

fn gl_dominant(n: usize, total: i64) -> impl Strategy<Value = Cw> {
    // nonincreasing vector with a fixed sum: start from random ints
    proptest::collection::vec(-6i64..=6, n).prop_map(move |mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        let s: i64 = v.iter().sum();
        let shift = q(total - s, n as i64);
        RationalCoweight(v.into_iter().map(|x| q(x, 1) + shift.clone()).collect())
    })
}

proptest! {
    #[test]
    fn dominance_is_a_partial_order(
        a in gl_dominant(4, 2),
        b in gl_dominant(4, 2),
        c in gl_dominant(4, 2),
    ) {
        let g = gl(4);
        prop_assert!(g.dominance_leq(&a, &a).unwrap());
        let ab = g.dominance_leq(&a, &b).unwrap();
        let ba = g.dominance_leq(&b, &a).unwrap();
        if ab && ba {
            prop_assert_eq!(&a, &b);
        }
        if ab && g.dominance_leq(&b, &c).unwrap() {
            prop_assert!(g.dominance_leq(&a, &c).unwrap());
        }
        // agrees with partial sums
        let mut sa = q(0, 1);
        let mut sb = q(0, 1);
        let mut sums_ok = true;
        for i in 0..4 {
            sa = sa + a.0[i].clone();
            sb = sb + b.0[i].clone();
            sums_ok &= sa <= sb;
        }
        prop_assert_eq!(ab, sums_ok);
    }

    #[test]
    fn dominant_representative_is_idempotent(v in proptest::collection::vec(-5i64..=5, 3), d in 1i64..=4) {
        for datum in [gl(3), build_classical(GroupKind::SO, 7).unwrap(), build_classical(GroupKind::GSp, 4).unwrap()] {
            let nu = RationalCoweight(v.iter().map(|&x| q(x, d)).collect());
            let (dom, w) = datum.dominant_representative(&nu);
            prop_assert!(datum.is_dominant(&dom));
            prop_assert_eq!(w.apply(&nu), dom.clone());
            let (again, w2) = datum.dominant_representative(&dom);
            prop_assert_eq!(&again, &dom);
            prop_assert!(w2.is_identity());
            prop_assert!(datum.weyl_orbit(&nu).unwrap().contains(&dom));
        }
    }
}
