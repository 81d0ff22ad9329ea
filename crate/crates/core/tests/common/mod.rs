//! Independent oracles shared by the integration tests and the acceptance
//! harness. Nothing here calls the library routine it is checking.

#![allow(dead_code)]

use std::collections::BTreeSet;

use newton_core::central_leaf::{LeafDatum, LeafSampler};
use newton_core::linalg;
use newton_core::root_datum::{RationalCoweight, RationalWeight};
use newton_core::scalar::Scalar;
use newton_core::{build_classical, GroupKind, Rational, RootDatum};
use num_traits::Signed;

pub type Cw = RationalCoweight<Rational>;
pub type Wt = RationalWeight<Rational>;
pub type Mat = Vec<Vec<i64>>;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::from_frac(n, d)
}

pub fn cw(s: &str) -> Cw {
    Cw::parse(s).unwrap()
}

pub fn group(kind: GroupKind, n: usize) -> RootDatum {
    build_classical(kind, n).unwrap()
}

pub fn gl(n: usize) -> RootDatum {
    group(GroupKind::GL, n)
}

/// `(1^d, 0^{n-d})`.
pub fn gl_mu(n: usize, d: usize) -> Cw {
    Cw::from_ints(&(0..n).map(|i| i64::from(i < d)).collect::<Vec<_>>())
}

/// Dominant coweights with entries in `{-1, 0, 1}` pairing into `{-1, 0, 1}`
/// with every root.
pub fn minuscule_coweights(d: &RootDatum) -> Vec<Cw> {
    let mut out = Vec::new();
    let rank = d.rank();
    let total = 3usize.pow(rank as u32);
    for code in 0..total {
        let mut c = code;
        let v: Vec<i64> = (0..rank)
            .map(|_| {
                let x = (c % 3) as i64 - 1;
                c /= 3;
                x
            })
            .collect();
        let dominant = d.roots().iter().enumerate().all(|(k, a)| !d.is_positive(k) || dot_i(a, &v) >= 0);
        let minuscule = d.roots().iter().all(|a| dot_i(a, &v).abs() <= 1);
        if dominant && minuscule {
            out.push(Cw::from_ints(&v));
        }
    }
    out
}

pub fn dot_i(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_q(a: &[i64], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(q(0, 1), |acc, (x, y)| acc + y.clone() * q(*x, 1))
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

pub fn mat_vec(a: &Mat, v: &[Rational]) -> Vec<Rational> {
    a.iter().map(|row| dot_q(row, v)).collect()
}

pub fn mat_order(a: &Mat) -> usize {
    let id: Mat = (0..a.len()).map(|i| (0..a.len()).map(|j| i64::from(i == j)).collect()).collect();
    let mut cur = a.clone();
    let mut k = 1;
    while cur != id {
        cur = mat_mul(&cur, a);
        k += 1;
        assert!(k < 10_000, "matrix of infinite order");
    }
    k
}

/// `Σ_{α > 0} α`.
pub fn two_rho(d: &RootDatum) -> Vec<i64> {
    let mut out = vec![0; d.rank()];
    for (k, a) in d.roots().iter().enumerate() {
        if d.is_positive(k) {
            for (o, x) in out.iter_mut().zip(a) {
                *o += x;
            }
        }
    }
    out
}

/// Average of the orbit of `v` under the finite-order matrix `m`.
pub fn orbit_average(m: &Mat, v: &[Rational]) -> Vec<Rational> {
    let order = mat_order(m);
    let mut acc = vec![q(0, 1); v.len()];
    let mut cur = v.to_vec();
    for _ in 0..order {
        for (a, c) in acc.iter_mut().zip(&cur) {
            *a = a.clone() + c.clone();
        }
        cur = mat_vec(m, &cur);
    }
    acc.into_iter().map(|x| x / q(order as i64, 1)).collect()
}

/// `⟨2ρ, μ̄⟩` with `μ̄` the Frobenius average of the dominant `μ`.
pub fn two_rho_mu_bar(d: &RootDatum, mu: &Cw) -> Rational {
    dot_q(&two_rho(d), &orbit_average(d.sigma_cochar_matrix(), &mu.0))
}

/// Root sets recomputed from `δ = w·σ` acting on cocharacters. Since
/// `⟨δ^{-i}α, λ⟩ = ⟨α, δ^i λ⟩`, partial sums only need `δ^i μ′`.
pub struct LeafOracle {
    pub nu: Vec<Rational>,
    pub order: usize,
    pub r_mu_nu: BTreeSet<Vec<i64>>,
    pub r_c: BTreeSet<Vec<i64>>,
    pub expected_size: Rational,
}

pub fn leaf_oracle(d: &RootDatum, mu_prime: &Cw, w: &Mat) -> LeafOracle {
    let delta = mat_mul(w, d.sigma_cochar_matrix());
    let order = mat_order(&delta);
    let nu = orbit_average(&delta, &mu_prime.0);
    let mut iterates = Vec::with_capacity(order);
    let mut cur = mu_prime.0.clone();
    for _ in 0..order {
        cur = mat_vec(&delta, &cur);
        iterates.push(cur.clone());
    }
    let mut r_mu_nu = BTreeSet::new();
    let mut r_c = BTreeSet::new();
    for a in d.roots() {
        if !(dot_q(a, &mu_prime.0).is_negative() && dot_q(a, &nu).is_negative()) {
            continue;
        }
        r_mu_nu.insert(a.clone());
        let mut sum = q(0, 1);
        let ok = iterates.iter().all(|it| {
            sum = sum.clone() + dot_q(a, it);
            !sum.is_positive()
        });
        if ok {
            r_c.insert(a.clone());
        }
    }
    let expected_size = -dot_q(&two_rho(d), &nu);
    LeafOracle { nu, order, r_mu_nu, r_c, expected_size }
}

pub fn root_set(d: &RootDatum, set: &[usize]) -> BTreeSet<Vec<i64>> {
    set.iter().map(|&i| d.roots()[i].clone()).collect()
}

/// Slopes of `ẇ·p^{μ′}σ` for split `GL_n`: `e_j ↦ p^{μ′_j} e_{π(j)}`, so each
/// cycle of `π` contributes its average exponent with multiplicity its length.
pub fn permutation_slopes(w: &Mat, mu_prime: &[i64]) -> Vec<Rational> {
    let n = w.len();
    let target = |j: usize| (0..n).find(|&i| w[i][j] != 0).unwrap();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            cycle.push(j);
            j = target(j);
        }
        let total: i64 = cycle.iter().map(|&j| mu_prime[j]).sum();
        out.extend(std::iter::repeat_n(q(total, cycle.len() as i64), cycle.len()));
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// All valid leaf data over `G` for every nonzero minuscule `μ`.
pub fn all_leaf_data(d: &RootDatum) -> Vec<LeafDatum<Rational>> {
    minuscule_coweights(d)
        .iter()
        .flat_map(|mu| LeafSampler::new(d, mu).unwrap().enumerate())
        .collect()
}

// -- GL_n polygons -----------------------------------------------------------

/// Concave polygons from (0,0) to (n,d) with integral break points lying on
/// or below the polygon of `(1^d, 0^{n-d})`, as descending slope vectors.
pub fn polygon_oracle(n: usize, d: usize) -> BTreeSet<Vec<Rational>> {
    #[allow(clippy::too_many_arguments)]
    fn go(n: i64, d: i64, x: i64, y: i64, last: Option<Rational>, slopes: &mut Vec<Rational>, out: &mut BTreeSet<Vec<Rational>>) {
        if x == n {
            if y == d {
                out.insert(slopes.clone());
            }
            return;
        }
        for nx in x + 1..=n {
            for ny in y..=y + (nx - x) {
                let s = q(ny - y, nx - x);
                if last.as_ref().is_some_and(|l| s >= *l) {
                    continue;
                }
                let len = slopes.len();
                slopes.extend(std::iter::repeat_n(s.clone(), (nx - x) as usize));
                let mut acc = q(0, 1);
                let below = slopes.iter().enumerate().all(|(i, v)| {
                    acc = acc.clone() + v.clone();
                    acc <= q((i as i64 + 1).min(d), 1)
                });
                if below {
                    go(n, d, nx, ny, Some(s), slopes, out);
                }
                slopes.truncate(len);
            }
        }
    }
    let mut out = BTreeSet::new();
    go(n as i64, d as i64, 0, 0, None, &mut Vec::new(), &mut out);
    out
}

/// Polygon order: equal totals, partial sums of `a` at most those of `b`.
pub fn polygon_leq(a: &[Rational], b: &[Rational]) -> bool {
    let (mut sa, mut sb) = (q(0, 1), q(0, 1));
    for (x, y) in a.iter().zip(b) {
        sa = sa + x.clone();
        sb = sb + y.clone();
        if sa > sb {
            return false;
        }
    }
    sa == sb
}

/// `J_b = Π GL_{m/r}(D_{s/r})` over slope blocks of length `m` and slope
/// `s/r` in lowest terms, so the split rank is `Σ m/r`.
pub fn gl_defect(nu: &[Rational]) -> i64 {
    let mut split_rank = 0;
    let mut i = 0;
    while i < nu.len() {
        let mut j = i;
        while j < nu.len() && nu[j] == nu[i] {
            j += 1;
        }
        let denom = nu[i].denom_i64().unwrap();
        split_rank += (j - i) as i64 / denom;
        i = j;
    }
    nu.len() as i64 - split_rank
}

/// Indices `i` (0-based) with `ν_i ≠ ν_{i+1}`.
pub fn gl_break_indices(nu: &[Rational]) -> Vec<usize> {
    (0..nu.len().saturating_sub(1)).filter(|&i| nu[i] != nu[i + 1]).collect()
}

/// Position `i` of a simple root `e_i − e_{i+1}`.
pub fn gl_simple_position(d: &RootDatum, simple: usize) -> usize {
    let a = d.simple_root(simple);
    let i = a.iter().position(|&x| x == 1).unwrap();
    assert_eq!(a.get(i + 1), Some(&-1), "not a GL simple root");
    i
}

/// Weights of `Λ^k(std) ⊗ det^{-k/n}`, the normalization whose highest
/// weight is an integral multiple of the fundamental weight.
pub fn exterior_power(n: usize, k: usize) -> Vec<Wt> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| RationalWeight((0..n).map(|j| q(i64::from(m >> j & 1 == 1), 1) - q(k as i64, n as i64)).collect()))
        .collect()
}

// -- convex hulls ------------------------------------------------------------

/// Carathéodory: a point of the hull lies in the hull of some affinely
/// independent subset, whose barycentric coordinates are then unique.
pub fn hull_oracle(points: &[Vec<Rational>], target: &[Rational]) -> bool {
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

pub fn box_points(rank: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p| {
                (-r..=r).map(move |x| {
                    let mut v = p.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out
}
