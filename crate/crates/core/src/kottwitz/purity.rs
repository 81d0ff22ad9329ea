//! Weight supports of small representations and the two conditions that
//! reduce purity for `G`-isocrystals to purity for plain isocrystals.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{pr, KottwitzError};
use crate::root_datum::{RationalCoweight, RationalWeight, RootDatum, RootDatumError, Side};
use crate::scalar::{dot, Scalar};

/// Saturated weight support `{χ : χ_dom ≤ λ, χ ≡ λ mod roots}` of the
/// irreducible representation with highest weight `λ`.
pub fn weights_of_small_irrep<T: Scalar>(
    datum: &RootDatum,
    lambda: &RationalWeight<T>,
) -> Result<BTreeSet<RationalWeight<T>>, KottwitzError> {
    if lambda.len() != datum.rank() {
        return Err(RootDatumError::RankMismatch { expected: datum.rank(), got: lambda.len() }.into());
    }
    if !lambda.is_integral() {
        return Err(KottwitzError::NonIntegral(lambda.to_string()));
    }
    if !datum.is_dominant_weight(lambda) {
        return Err(KottwitzError::NotDominant(lambda.to_string()));
    }
    // Every dominant χ < λ has a positive root α with χ + α dominant and ≤ λ,
    // so stepping down by positive roots through dominant weights reaches all.
    let positive: Vec<Vec<T>> = datum
        .positive_roots()
        .map(|k| datum.roots()[k].iter().map(|&x| T::from_int(x)).collect())
        .collect();
    let mut dominant: BTreeSet<Vec<T>> = BTreeSet::new();
    let mut queue = VecDeque::new();
    dominant.insert(lambda.0.clone());
    queue.push_back(lambda.0.clone());
    while let Some(cur) = queue.pop_front() {
        for a in &positive {
            let next: Vec<T> = cur.iter().zip(a).map(|(x, y)| x.clone() - y.clone()).collect();
            if datum.side_is_dominant(Side::Char, &next) && !dominant.contains(&next) {
                dominant.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    let mut out = BTreeSet::new();
    for d in dominant {
        for w in datum.side_orbit(Side::Char, &d)? {
            out.insert(RationalWeight(w));
        }
    }
    Ok(out)
}

/// Outcome of [`purity_representation_check`] with the data it found.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PurityReport<T> {
    pub highest_weight: RationalWeight<T>,
    /// `N` with highest weight `N·ω_β`.
    pub n: i64,
    /// Multiplicity of the highest weight, the index `i` of the break point.
    pub multiplicity: usize,
    /// Every other weight λ has `⟨Nω_β − λ, ω_β^∨⟩ > 0`.
    pub orthogonality: bool,
    /// Failed samples with a short reason.
    pub sample_failures: Vec<String>,
}

impl<T> PurityReport<T> {
    pub fn passed(&self) -> bool {
        self.orthogonality && self.sample_failures.is_empty()
    }
}

fn weyl_stable<T: Scalar>(datum: &RootDatum, counts: &BTreeMap<Vec<T>, usize>) -> bool {
    (0..datum.num_simple()).all(|i| {
        counts
            .iter()
            .all(|(w, &c)| counts.get(&datum.reflect(Side::Char, i, w)) == Some(&c))
    })
}

/// Values `⟨λ, ν⟩` over the multiset, sorted descending.
fn image_newton_point<T: Scalar>(weights: &[RationalWeight<T>], nu: &RationalCoweight<T>) -> Vec<T> {
    let mut v: Vec<T> = weights.iter().map(|w| dot(&w.0, &nu.0)).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// `pr_i` of `GL_m` at a dominant vector: height of the polygon above the chord.
fn gl_pr<T: Scalar>(x: &[T], i: usize) -> T {
    let total = x.iter().fold(T::zero(), |a, b| a + b.clone());
    let head = x[..i].iter().fold(T::zero(), |a, b| a + b.clone());
    head - total * T::from_frac(i as i64, x.len() as i64)
}

pub fn purity_report<T: Scalar>(
    datum: &RootDatum,
    beta: usize,
    weights: &[RationalWeight<T>],
    nu_samples: &[(RationalCoweight<T>, RationalCoweight<T>)],
) -> Result<PurityReport<T>, KottwitzError> {
    let orbit = datum
        .relative_simple_roots()
        .get(beta)
        .ok_or(RootDatumError::InvalidIndex(beta))?
        .clone();
    let mut counts: BTreeMap<Vec<T>, usize> = BTreeMap::new();
    for w in weights {
        if w.len() != datum.rank() {
            return Err(RootDatumError::RankMismatch { expected: datum.rank(), got: w.len() }.into());
        }
        *counts.entry(w.0.clone()).or_default() += 1;
    }
    if !weyl_stable(datum, &counts) {
        return Err(KottwitzError::NotWeylStable);
    }
    let dominant: Vec<&Vec<T>> = counts.keys().filter(|w| datum.side_is_dominant(Side::Char, w)).collect();
    let top = dominant
        .iter()
        .find(|t| dominant.iter().all(|w| datum.side_leq(Side::Char, w, t)))
        .map(|t| (*t).clone())
        .ok_or_else(|| KottwitzError::NoHighestWeight("no weight dominates all others".into()))?;
    let omega = datum.fundamental_weight::<T>(beta)?;
    let n_scalar = crate::scalar::dot_int(datum.simple_coroot(orbit[0]), &top);
    let n = n_scalar
        .to_int()
        .filter(|&n| n > 0)
        .ok_or_else(|| KottwitzError::NoHighestWeight(format!("highest weight pairs to {n_scalar}")))?;
    if omega.scale(&T::from_int(n)).0 != top {
        return Err(KottwitzError::NoHighestWeight(format!(
            "highest weight {} is not a multiple of the fundamental weight",
            RationalWeight(top)
        )));
    }
    let multiplicity = counts[&top];
    let coweight = datum.fundamental_coweight::<T>(beta)?;
    let orthogonality = counts.keys().filter(|w| **w != top).all(|w| {
        let diff: Vec<T> = top.iter().zip(w).map(|(a, b)| a.clone() - b.clone()).collect();
        dot(&diff, &coweight.0).is_positive()
    });

    let simple_beta = datum.simple_indices()[orbit[0]];
    let mut sample_failures = Vec::new();
    for (lo, hi) in nu_samples {
        for nu in [lo, hi] {
            if !datum.is_dominant(nu) {
                return Err(KottwitzError::NotDominant(nu.to_string()));
            }
        }
        if !datum.side_leq(Side::Cochar, &lo.0, &hi.0) {
            return Err(KottwitzError::Incomparable);
        }
        let x_lo = image_newton_point(weights, lo);
        let x_hi = image_newton_point(weights, hi);
        for (nu, x) in [(lo, &x_lo), (hi, &x_hi)] {
            let breaks_beta = datum.pair_root(simple_beta, nu).is_positive();
            let breaks_i = multiplicity < x.len() && x[multiplicity - 1] > x[multiplicity];
            if breaks_beta != breaks_i {
                sample_failures.push(format!("break point mismatch at {nu}"));
            }
        }
        let lhs = pr(datum, beta, lo)? < pr(datum, beta, hi)?;
        let rhs = gl_pr(&x_lo, multiplicity) < gl_pr(&x_hi, multiplicity);
        if lhs != rhs {
            sample_failures.push(format!("projection comparison mismatch for {lo} <= {hi}"));
        }
    }
    Ok(PurityReport {
        highest_weight: RationalWeight(top),
        n,
        multiplicity,
        orthogonality,
        sample_failures,
    })
}

/// True iff the weight multiset (with highest weight `N·ω_β`) satisfies the
/// orthogonality condition and both sample conditions: the image Newton
/// point breaks at the multiplicity index exactly when `ν` breaks at `β`,
/// and `pr_β` comparisons match `pr_i` comparisons of the images.
pub fn purity_representation_check<T: Scalar>(
    datum: &RootDatum,
    beta: usize,
    weights: &[RationalWeight<T>],
    nu_samples: &[(RationalCoweight<T>, RationalCoweight<T>)],
) -> Result<bool, KottwitzError> {
    Ok(purity_report(datum, beta, weights, nu_samples)?.passed())
}
