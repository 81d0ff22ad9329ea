//! The Kottwitz set `B(G, μ)` as a finite poset.
//!
//! A σ-conjugacy class is recorded by its Newton point (dominant and
//! σ-invariant) and its Kottwitz point in `π₁(G)_Γ`. A pair `(ν, κ)` occurs
//! exactly when some lift `λ ∈ X_*(T)` of `κ` has `avg_σ pr_M(λ) = ν`, where
//! `M` is the centralizer of `ν` and `pr_M` kills the roots of `M` along its
//! coroots; this is decided as an integer linear system.

mod pi1;
mod poset;
mod purity;

pub use pi1::{pi1_coinvariants, FinitelyGeneratedAbelianGroup, KottwitzPoint};
pub use poset::{enumerate_bgmu, NewtonPoset};
pub use purity::{purity_report, purity_representation_check, weights_of_small_irrep, PurityReport};

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg;
use crate::root_datum::{RationalCoweight, RootDatum, RootDatumError, Side};
use crate::scalar::{dot, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KottwitzError {
    #[error(transparent)]
    RootDatum(#[from] RootDatumError),
    #[error("coweight {0} is not integral")]
    NonIntegral(String),
    #[error("coweight {0} is not minuscule")]
    NotMinuscule(String),
    #[error("Newton point {0} is not dominant")]
    NotDominant(String),
    #[error("Newton point {0} is not fixed by the Frobenius")]
    NotSigmaInvariant(String),
    #[error("Newton point {nu} is incompatible with Kottwitz point {kappa}")]
    Incompatible { nu: String, kappa: String },
    #[error("Kottwitz point {0} does not belong to this group")]
    ForeignKottwitzPoint(String),
    #[error("class is not an element of the poset")]
    NotInPoset,
    #[error("classes are not comparable")]
    Incomparable,
    #[error("{0} is not a maximal element below the given class")]
    NotMaximalBelow(String),
    #[error("weight multiset is not stable under the Weyl group")]
    NotWeylStable,
    #[error("weight multiset has no unique highest weight of the form N·ω: {0}")]
    NoHighestWeight(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

/// An element `[b]` of `B(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SigmaConjClass<T> {
    pub newton_point: RationalCoweight<T>,
    pub kottwitz_point: KottwitzPoint,
}

impl<T: Scalar> SigmaConjClass<T> {
    /// Validates dominance, σ-invariance and compatibility of the pair.
    pub fn new(
        datum: &RootDatum,
        pi1: &FinitelyGeneratedAbelianGroup,
        newton_point: RationalCoweight<T>,
        kottwitz_point: KottwitzPoint,
    ) -> Result<Self, KottwitzError> {
        if newton_point.len() != datum.rank() {
            return Err(RootDatumError::RankMismatch { expected: datum.rank(), got: newton_point.len() }.into());
        }
        if !pi1.contains(&kottwitz_point) {
            return Err(KottwitzError::ForeignKottwitzPoint(kottwitz_point.to_string()));
        }
        if !datum.is_dominant(&newton_point) {
            return Err(KottwitzError::NotDominant(newton_point.to_string()));
        }
        if !datum.is_sigma_invariant(&newton_point) {
            return Err(KottwitzError::NotSigmaInvariant(newton_point.to_string()));
        }
        if !is_compatible(datum, pi1, &newton_point, &kottwitz_point) {
            return Err(KottwitzError::Incompatible {
                nu: newton_point.to_string(),
                kappa: kottwitz_point.to_string(),
            });
        }
        Ok(SigmaConjClass { newton_point, kottwitz_point })
    }

    /// The class containing `μ(p)`.
    pub fn of_cocharacter(datum: &RootDatum, pi1: &FinitelyGeneratedAbelianGroup, mu: &RationalCoweight<T>) -> Result<Self, KottwitzError> {
        let k = kappa(pi1, mu)?;
        let nu = datum.dominant_representative(&datum.sigma_average(mu)).0;
        SigmaConjClass::new(datum, pi1, nu, k)
    }

    /// Whether the Newton point is central (the class is basic).
    pub fn is_basic(&self, datum: &RootDatum) -> bool {
        (0..datum.roots().len()).all(|k| datum.pair_root(k, &self.newton_point).is_zero())
    }
}

/// Class of an integral coweight in `π₁(G)_Γ`.
pub fn kappa<T: Scalar>(pi1: &FinitelyGeneratedAbelianGroup, mu: &RationalCoweight<T>) -> Result<KottwitzPoint, KottwitzError> {
    let ints = mu.to_ints().ok_or_else(|| KottwitzError::NonIntegral(mu.to_string()))?;
    Ok(pi1.class_of(&ints))
}

/// `b1 ≤ b2`: dominance of Newton points and equal Kottwitz points.
pub fn leq<T: Scalar>(datum: &RootDatum, b1: &SigmaConjClass<T>, b2: &SigmaConjClass<T>) -> bool {
    b1.kottwitz_point == b2.kottwitz_point
        && datum.side_leq(Side::Cochar, &b1.newton_point.0, &b2.newton_point.0)
}

/// Relative simple roots (σ-orbit indices) `β` with `⟨β, ν⟩ > 0`.
pub fn break_points<T: Scalar>(datum: &RootDatum, nu: &RationalCoweight<T>) -> Vec<usize> {
    datum
        .relative_simple_roots()
        .iter()
        .enumerate()
        .filter(|(_, orbit)| datum.pair_root(datum.simple_indices()[orbit[0]], nu).is_positive())
        .map(|(b, _)| b)
        .collect()
}

/// `pr_β(ν) = ⟨ω_β, ν⟩` with the adjoint-normalized relative fundamental weight.
pub fn pr<T: Scalar>(datum: &RootDatum, beta: usize, nu: &RationalCoweight<T>) -> Result<T, KottwitzError> {
    let w = datum.fundamental_weight::<T>(beta)?;
    if nu.len() != datum.rank() {
        return Err(RootDatumError::RankMismatch { expected: datum.rank(), got: nu.len() }.into());
    }
    Ok(dot(&w.0, &nu.0))
}

/// Simple positions of the centralizer Levi of `nu`.
pub(crate) fn levi_positions<T: Scalar>(datum: &RootDatum, nu: &RationalCoweight<T>) -> Vec<usize> {
    let mut pos: Vec<usize> = datum
        .levi_orbits(nu)
        .into_iter()
        .flat_map(|o| datum.relative_simple_roots()[o].clone())
        .collect();
    pos.sort_unstable();
    pos
}

/// `avg_σ pr_M(v)` for the Levi with the given simple positions.
pub(crate) fn averaged_projection<T: Scalar>(datum: &RootDatum, levi: &[usize], v: &[T]) -> RationalCoweight<T> {
    datum.sigma_average(&RationalCoweight(datum.levi_projection(levi, v)))
}

fn lcm_denominators<T: Scalar>(values: &[&T]) -> Option<i64> {
    let mut l: i64 = 1;
    for x in values {
        l = l.lcm(&x.denom_i64()?);
    }
    Some(l)
}

pub(crate) fn is_compatible<T: Scalar>(
    datum: &RootDatum,
    pi1: &FinitelyGeneratedAbelianGroup,
    nu: &RationalCoweight<T>,
    kappa: &KottwitzPoint,
) -> bool {
    let levi = levi_positions(datum, nu);
    let lambda0: Vec<T> = pi1.lift(kappa).into_iter().map(T::from_int).collect();
    let nu0 = averaged_projection(datum, &levi, &lambda0);
    let rhs: Vec<T> = nu.0.iter().zip(&nu0.0).map(|(a, b)| a.clone() - b.clone()).collect();
    let others: Vec<usize> = (0..datum.num_simple()).filter(|i| !levi.contains(i)).collect();
    let cols: Vec<Vec<T>> = others
        .iter()
        .map(|&i| {
            let c: Vec<T> = datum.simple_coroot(i).iter().map(|&x| T::from_int(x)).collect();
            averaged_projection(datum, &levi, &c).0
        })
        .collect();
    if cols.is_empty() {
        return rhs.iter().all(|x| x.is_zero());
    }
    let all: Vec<&T> = cols.iter().flatten().chain(rhs.iter()).collect();
    let Some(d) = lcm_denominators(&all) else { return false };
    let to_int = |x: &T| -> Option<i128> { (x.clone() * T::from_int(d)).to_int().map(i128::from) };
    let matrix: Option<Vec<Vec<i128>>> = (0..datum.rank())
        .map(|r| cols.iter().map(|c| to_int(&c[r])).collect())
        .collect();
    let y: Option<Vec<i128>> = rhs.iter().map(to_int).collect();
    match (matrix, y) {
        (Some(m), Some(y)) => linalg::integer_solvable(&m, &y),
        _ => false,
    }
}
