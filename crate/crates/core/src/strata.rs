//! Dimensions of Newton strata, central leaves and Rapoport-Zink spaces.
//!
//! The defect `rk G − rk J_b` is computed from slope multiplicities for
//! `GL_n` and `GSp_2n` ("direct" mode) and, for any group, from the poset as
//! `2 (ℓ[b, b_max] − ⟨ρ, μ̄ − ν⟩)` ("poset" mode). When both are available
//! they must agree.

use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use crate::kottwitz::{enumerate_bgmu, KottwitzError, KottwitzPoint, NewtonPoset, SigmaConjClass};
use crate::root_datum::{build_classical, GroupKind, GroupSpec, RationalCoweight, RootDatum};
use crate::scalar::{dot, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StrataError {
    #[error(transparent)]
    Kottwitz(#[from] KottwitzError),
    #[error("consistency failure at {class}: {reason}")]
    Consistency { class: String, reason: String },
}

fn consistency<T: Scalar>(b: &SigmaConjClass<T>, reason: impl Into<String>) -> StrataError {
    StrataError::Consistency { class: b.newton_point.to_string(), reason: reason.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DefectMode {
    Direct,
    Poset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataRow<T> {
    pub newton_point: RationalCoweight<T>,
    pub kottwitz_point: KottwitzPoint,
    pub defect: i64,
    pub dim_stratum: i64,
    pub codim: i64,
    pub dim_central_leaf: i64,
    pub dim_rz: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataReport<T> {
    pub group: String,
    pub mu: RationalCoweight<T>,
    pub dim_deformation_space: i64,
    pub defect_mode: DefectMode,
    /// In poset order (maximal class first).
    pub rows: Vec<StrataRow<T>>,
}

/// `|{α : ⟨α, μ⟩ < 0}|`, the dimension of the universal deformation space.
pub fn dim_deformation_space<T: Scalar>(datum: &RootDatum, mu: &RationalCoweight<T>) -> Result<i64, StrataError> {
    if !datum.is_minuscule_like(mu) {
        return Err(KottwitzError::NotMinuscule(mu.to_string()).into());
    }
    Ok((0..datum.roots().len()).filter(|&k| datum.pair_root(k, mu).is_negative()).count() as i64)
}

fn classical_kind(datum: &RootDatum) -> Option<GroupSpec> {
    let spec = GroupSpec::from_str(datum.name()?).ok()?;
    if !matches!(spec.kind, GroupKind::GL | GroupKind::GSp) {
        return None;
    }
    let built = build_classical(spec.kind, spec.n).ok()?;
    (built == *datum).then_some(spec)
}

/// Groups NEWTON values into `(value, multiplicity)` runs.
fn runs<T: Scalar>(values: &[T]) -> Vec<(T, i64)> {
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut out: Vec<(T, i64)> = Vec::new();
    for v in sorted {
        match out.last_mut() {
            Some((w, k)) if *w == v => *k += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

/// Number of simple isocrystals in `k` copies of slope `s`.
fn simple_count<T: Scalar>(s: &T, k: i64) -> Option<i64> {
    let h = s.denom_i64()?;
    k.is_multiple_of(&h).then(|| k / h)
}

/// Slope-multiplicity defect for `GL_n` and `GSp_2n`; `None` for other groups.
pub fn defect_direct<T: Scalar>(datum: &RootDatum, nu: &RationalCoweight<T>) -> Option<Result<i64, String>> {
    let spec = classical_kind(datum)?;
    let bad = || format!("slope multiplicities of {nu} are not integral");
    Some(match spec.kind {
        GroupKind::GL => {
            let mut split_rank = 0;
            for (s, k) in runs(&nu.0) {
                match simple_count(&s, k) {
                    Some(m) => split_rank += m,
                    None => return Some(Err(bad())),
                }
            }
            Ok(spec.n as i64 - split_rank)
        }
        GroupKind::GSp => {
            // GL_{2m} slopes (x_1..x_m, c - x_m, ..., c - x_1)
            let m = spec.n / 2;
            let c = nu.0[m].clone();
            let mut slopes: Vec<T> = nu.0[..m].to_vec();
            slopes.extend(nu.0[..m].iter().map(|x| c.clone() - x.clone()));
            let half = c * T::half();
            let mut rank = 0;
            for (s, k) in runs(&slopes) {
                let Some(cnt) = simple_count(&s, k) else { return Some(Err(bad())) };
                if s > half {
                    rank += cnt;
                } else if s == half {
                    rank += cnt / 2;
                }
            }
            Ok(m as i64 - rank)
        }
        _ => unreachable!(),
    })
}

fn half_integer<T: Scalar>(x: T, b: &SigmaConjClass<T>, what: &str) -> Result<i64, StrataError> {
    x.to_int().ok_or_else(|| consistency(b, format!("{what} = {x} is not an integer")))
}

fn rho_pair<T: Scalar>(datum: &RootDatum, nu: &RationalCoweight<T>) -> T {
    dot(&datum.rho::<T>().0, &nu.0)
}

/// `2 (ℓ[b, b_max] − ⟨ρ, μ̄ − ν⟩)`.
pub fn defect_from_poset<T: Scalar>(poset: &NewtonPoset<T>, b: usize) -> Result<i64, StrataError> {
    let class = poset.get(b);
    let ell = poset.chain_length(b, poset.b_max())? as i64;
    let gap = rho_pair(poset.datum(), &poset.mu_bar().sub(&class.newton_point));
    let d = (T::from_int(ell) - gap) * T::from_int(2);
    let d = half_integer(d, class, "poset defect")?;
    if d < 0 {
        return Err(consistency(class, format!("negative poset defect {d}")));
    }
    Ok(d)
}

/// Direct defect when available, otherwise poset mode. When both exist they
/// are required to agree.
pub fn defect<T: Scalar>(poset: &NewtonPoset<T>, b: usize) -> Result<(i64, DefectMode), StrataError> {
    let from_poset = defect_from_poset(poset, b)?;
    let class = poset.get(b);
    match defect_direct(poset.datum(), &class.newton_point) {
        None => Ok((from_poset, DefectMode::Poset)),
        Some(Err(e)) => Err(consistency(class, e)),
        Some(Ok(d)) if d == from_poset => Ok((d, DefectMode::Direct)),
        Some(Ok(d)) => Err(consistency(class, format!("direct defect {d} differs from poset defect {from_poset}"))),
    }
}

/// `⟨ρ, μ̄ + ν⟩ − def/2`.
pub fn dim_newton_stratum<T: Scalar>(datum: &RootDatum, mu_bar: &RationalCoweight<T>, b: &SigmaConjClass<T>, defect: i64) -> Result<i64, StrataError> {
    let v = rho_pair(datum, &mu_bar.add(&b.newton_point)) - T::from_frac(defect, 2);
    half_integer(v, b, "stratum dimension")
}

/// `2⟨ρ, ν⟩`.
pub fn dim_central_leaf<T: Scalar>(datum: &RootDatum, b: &SigmaConjClass<T>) -> Result<i64, StrataError> {
    half_integer(rho_pair(datum, &b.newton_point) * T::from_int(2), b, "central leaf dimension")
}

/// `⟨ρ, μ̄ − ν⟩ − def/2`.
pub fn dim_rz<T: Scalar>(datum: &RootDatum, mu_bar: &RationalCoweight<T>, b: &SigmaConjClass<T>, defect: i64) -> Result<i64, StrataError> {
    let v = rho_pair(datum, &mu_bar.sub(&b.newton_point)) - T::from_frac(defect, 2);
    half_integer(v, b, "Rapoport-Zink dimension")
}

/// `ℓ[b, b_max]`.
pub fn codim_stratum<T: Scalar>(poset: &NewtonPoset<T>, b: usize) -> Result<i64, StrataError> {
    Ok(poset.chain_length(b, poset.b_max())? as i64)
}

pub fn strata_report<T: Scalar>(datum: &RootDatum, mu: &RationalCoweight<T>) -> Result<StrataReport<T>, StrataError> {
    let poset = enumerate_bgmu(datum, mu)?;
    report_for_poset(&poset)
}

pub fn report_for_poset<T: Scalar>(poset: &NewtonPoset<T>) -> Result<StrataReport<T>, StrataError> {
    let datum = poset.datum();
    let total = dim_deformation_space(datum, poset.mu())?;
    let mut rows = Vec::with_capacity(poset.len());
    let mut mode = DefectMode::Direct;
    for (i, b) in poset.elements().iter().enumerate() {
        let (def, m) = defect(poset, i)?;
        if m == DefectMode::Poset {
            mode = DefectMode::Poset;
        }
        let row = StrataRow {
            newton_point: b.newton_point.clone(),
            kottwitz_point: b.kottwitz_point.clone(),
            defect: def,
            dim_stratum: dim_newton_stratum(datum, poset.mu_bar(), b, def)?,
            codim: codim_stratum(poset, i)?,
            dim_central_leaf: dim_central_leaf(datum, b)?,
            dim_rz: dim_rz(datum, poset.mu_bar(), b, def)?,
        };
        if row.dim_stratum + row.codim != total {
            return Err(consistency(b, "dimension and codimension do not add up"));
        }
        if row.dim_stratum != row.dim_central_leaf + row.dim_rz {
            return Err(consistency(b, "leaf dimensions do not add up"));
        }
        let entries = [row.defect, row.dim_stratum, row.codim, row.dim_central_leaf, row.dim_rz];
        if entries.iter().any(|&x| !(0..=total.max(row.defect)).contains(&x)) {
            return Err(consistency(b, "entry out of range"));
        }
        rows.push(row);
    }
    if let Some(&(hi, lo)) = poset.hasse().iter().find(|&&(hi, lo)| rows[hi].dim_stratum != rows[lo].dim_stratum + 1) {
        return Err(consistency(poset.get(lo), format!("cover to {} does not drop dimension by one", poset.get(hi).newton_point)));
    }
    Ok(StrataReport {
        group: datum.to_string(),
        mu: poset.mu().clone(),
        dim_deformation_space: total,
        defect_mode: mode,
        rows,
    })
}
