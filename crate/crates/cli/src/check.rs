//! Cross-module invariant suites behind `newton check`.

use std::collections::BTreeMap;

use newton_core::central_leaf::{
    count_lemma_bijection, expected_r_c_size, leaf_matrix, leaf_precision, root_sets, solvability_predicate, LeafSampler,
};
use newton_core::kottwitz::enumerate_bgmu;
use newton_core::root_datum::RationalCoweight;
use newton_core::scalar::Scalar;
use newton_core::strata::report_for_poset;
use newton_core::witt::{newton_slopes, GaloisRing};
use newton_core::{build_classical, GroupKind, Rational, RootDatum};

type Suite = Result<String, String>;

/// Dominant coweights in `{-1, 0, 1}^r` that pair into `{-1, 0, 1}` with
/// every root.
fn minuscule_coweights(d: &RootDatum) -> Vec<RationalCoweight<Rational>> {
    let rank = d.rank() as u32;
    (0..3usize.pow(rank))
        .map(|code| (0..rank).map(|k| (code / 3usize.pow(k) % 3) as i64 - 1).collect::<Vec<i64>>())
        .map(|v| RationalCoweight::from_ints(&v))
        .filter(|mu| d.is_dominant(mu) && d.is_minuscule_like(mu))
        .collect()
}

fn groups(max_n: usize) -> Vec<RootDatum> {
    let mut out: Vec<RootDatum> = (1..=max_n).filter_map(|n| build_classical(GroupKind::GL, n).ok()).collect();
    for (kind, n) in [(GroupKind::GSp, 4), (GroupKind::Unitary, 3), (GroupKind::SO, 5)] {
        if n <= max_n.max(3) {
            out.extend(build_classical(kind, n).ok());
        }
    }
    out
}

fn posets(max_n: usize) -> Suite {
    let mut classes = 0;
    for d in groups(max_n) {
        for mu in minuscule_coweights(&d) {
            let p = enumerate_bgmu(&d, &mu).map_err(|e| format!("{d} {mu}: {e}"))?;
            // the report re-derives dimensions and cross-checks defects
            report_for_poset(&p).map_err(|e| format!("{d} {mu}: {e}"))?;
            for b in 0..p.len() {
                let maximal = p.maximal_below(b).map_err(|e| e.to_string())?;
                if maximal.len() != p.break_points(b).len() {
                    return Err(format!("{d} {mu}: maximal elements and break points differ in number"));
                }
                for (bp, beta) in maximal {
                    if p.down_set_by_projection(b, bp, beta).map_err(|e| e.to_string())? != p.down_set(bp) {
                        return Err(format!("{d} {mu}: down-set mismatch below {}", p.get(bp).newton_point));
                    }
                }
                classes += 1;
            }
        }
    }
    Ok(format!("{classes} classes"))
}

fn leaves(max_n: usize) -> Suite {
    let mut count = 0;
    for d in groups(max_n.min(5)) {
        for mu in minuscule_coweights(&d) {
            let sampler = LeafSampler::new(&d, &mu).map_err(|e| e.to_string())?;
            for ld in sampler.enumerate() {
                let rs = root_sets(&ld);
                if Rational::from_int(rs.r_c.len() as i64) != expected_r_c_size(&ld) {
                    return Err(format!("{d} mu'={} w={:?}: counting lemma fails", ld.mu_prime(), ld.w().word));
                }
                count_lemma_bijection(&ld).map_err(|e| e.to_string())?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} leaf data"))
}

fn slopes(max_n: usize) -> Suite {
    let mut count = 0;
    for n in 1..=max_n.min(4) {
        let d = build_classical(GroupKind::GL, n).map_err(|e| e.to_string())?;
        for k in 0..=n {
            let mu = RationalCoweight::<Rational>::from_ints(&(0..n).map(|i| i64::from(i < k)).collect::<Vec<_>>());
            for ld in LeafSampler::new(&d, &mu).map_err(|e| e.to_string())?.enumerate() {
                let ring = GaloisRing::new(3, leaf_precision(&ld, 1), 1).map_err(|e| e.to_string())?;
                let a = leaf_matrix(&ld, &ring).map_err(|e| e.to_string())?;
                let got: Vec<Rational> = newton_slopes(&a).map_err(|e| e.to_string())?;
                if got != d.dominant_representative(ld.nu()).0 .0 {
                    return Err(format!("GL{n} mu'={} w={:?}: slopes differ from nu", ld.mu_prime(), ld.w().word));
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} leaf matrices"))
}

fn solver() -> Suite {
    let ring = GaloisRing::new(3, 40, 1).map_err(|e| e.to_string())?;
    let d = build_classical(GroupKind::GL, 3).map_err(|e| e.to_string())?;
    let mut supports = 0;
    for mu in minuscule_coweights(&d) {
        for ld in LeafSampler::new(&d, &mu).map_err(|e| e.to_string())?.enumerate() {
            let rs = root_sets(&ld);
            let m = rs.r_mu_nu.len();
            for mask in 0u32..(1 << m) {
                let tau: BTreeMap<usize, _> = (0..m)
                    .filter(|k| mask >> k & 1 == 1)
                    .map(|k| (rs.r_mu_nu[k], ring.teichmuller(&ring.from_int(1 + k as i64 % 2))))
                    .collect();
                let expected = tau.keys().all(|a| rs.r_c.contains(a));
                if solvability_predicate(&ld, &ring, &tau).map_err(|e| e.to_string())? != expected {
                    return Err(format!("mu'={} w={:?}: solver disagrees with R_C", ld.mu_prime(), ld.w().word));
                }
                supports += 1;
            }
        }
    }
    Ok(format!("{supports} supports over GL3"))
}

/// Runs every suite, printing one line each; true iff all pass.
pub fn run(max_n: usize, out: &mut String) -> bool {
    let suites: [(&str, Box<dyn Fn() -> Suite>); 4] = [
        ("posets", Box::new(move || posets(max_n))),
        ("leaves", Box::new(move || leaves(max_n))),
        ("slopes", Box::new(move || slopes(max_n))),
        ("solver", Box::new(solver)),
    ];
    let mut ok = true;
    for (name, f) in suites.iter() {
        match f() {
            Ok(detail) => out.push_str(&format!("ok   {name}: {detail}\n")),
            Err(detail) => {
                ok = false;
                out.push_str(&format!("FAIL {name}: {detail}\n"));
            }
        }
    }
    ok
}
