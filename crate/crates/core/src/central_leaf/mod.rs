//! Local coordinates of central leaves.
//!
//! A [`LeafDatum`] is a base point `b = ẇ μ′(p)` with `δ = wσ`, whose Newton
//! point `ν` (the δ-orbit average of `μ′`) is anti-dominant and fixed by `w`.
//! The leaf is cut out of the deformation space by the root coordinates in
//! `R_C`, the roots `α` with `⟨α, μ′⟩ = −1`, `⟨α, ν⟩ < 0` and all partial
//! sums `Σ_{i=1..r} ⟨δ^{-i} α, μ′⟩ ≤ 0`.

mod solver;

pub use solver::{leaf_matrix, leaf_precision, solvability_predicate};

use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::linalg::{self, IntMatrix};
use crate::root_datum::{RationalCoweight, RootDatum, RootDatumError, WeylElement};
use crate::scalar::{dot, Scalar};
use crate::witt::WittError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeafError {
    #[error(transparent)]
    RootDatum(#[from] RootDatumError),
    #[error(transparent)]
    Witt(#[from] WittError),
    #[error("coweight {0} is not integral")]
    NonIntegral(String),
    #[error("coweight {0} is not minuscule")]
    NotMinuscule(String),
    #[error("condition 2 fails: w does not fix the Newton point {nu}")]
    NotInLeviWeylGroup { nu: String },
    #[error("condition 3 fails: the Newton point {nu} is not anti-dominant")]
    NotAntiDominant { nu: String },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid root coordinates: {0}")]
    InvalidTau(String),
    #[error("precision N = {precision} cannot certify the result; try N = {suggested}")]
    Precision { precision: u32, suggested: u32 },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafDatum<T> {
    datum: RootDatum,
    mu_prime: RationalCoweight<T>,
    w: WeylElement,
    /// `δ = w∘σ` on `X_*(T)`.
    delta: IntMatrix,
    /// `δ` as a permutation of root indices.
    delta_roots: Vec<usize>,
    order: usize,
    nu: RationalCoweight<T>,
}

impl<T: Scalar> LeafDatum<T> {
    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn mu_prime(&self) -> &RationalCoweight<T> {
        &self.mu_prime
    }

    pub fn w(&self) -> &WeylElement {
        &self.w
    }

    pub fn delta(&self) -> &IntMatrix {
        &self.delta
    }

    /// Order `N` of `δ`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Newton point (anti-dominant).
    pub fn nu(&self) -> &RationalCoweight<T> {
        &self.nu
    }

    /// Root index of `δ^k(α_i)`, any integer `k`.
    pub fn delta_root(&self, i: usize, k: i64) -> usize {
        let steps = k.rem_euclid(self.order as i64);
        (0..steps).fold(i, |j, _| self.delta_roots[j])
    }

    /// `⟨α_i, μ′⟩` as an integer.
    pub fn mu_pairing(&self, i: usize) -> i64 {
        self.datum.pair_root(i, &self.mu_prime).to_int().expect("integral μ′")
    }

    pub fn nu_pairing(&self, i: usize) -> T {
        self.datum.pair_root(i, &self.nu)
    }

    /// Whether the Frobenius acts trivially; non-split data follow the
    /// `δ = w∘σ` reading and are flagged here.
    pub fn is_split(&self) -> bool {
        self.datum.is_split()
    }

    /// The δ-orbits of `R_ν`, each starting at its least root index and
    /// listed as `α, δα, δ²α, ...`.
    pub fn r_nu_orbits(&self) -> Vec<Vec<usize>> {
        let r_nu: Vec<usize> = (0..self.datum.roots().len()).filter(|&i| self.nu_pairing(i).is_negative()).collect();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in &r_nu {
            if !seen.insert(start) {
                continue;
            }
            let mut orbit = vec![start];
            let mut cur = self.delta_roots[start];
            while cur != start {
                seen.insert(cur);
                orbit.push(cur);
                cur = self.delta_roots[cur];
            }
            out.push(orbit);
        }
        out
    }
}

/// `δ = w∘σ` on `X_*`, its order `N` and `ν = (1/N) Σ_{k=1..N} δ^k μ′`.
pub fn delta_average<T: Scalar>(
    datum: &RootDatum,
    mu_prime: &RationalCoweight<T>,
    w: &WeylElement,
) -> Result<(IntMatrix, usize, RationalCoweight<T>), LeafError> {
    let delta = linalg::mat_mul(&w.matrix, datum.sigma_cochar_matrix());
    let limit = 4 * (datum.roots().len() + 1) * datum.sigma_order().max(1);
    let order = linalg::matrix_order(&delta, limit.max(64))
        .ok_or_else(|| LeafError::Consistency("δ has no finite order".into()))?;
    let mut sum = vec![T::zero(); datum.rank()];
    let mut cur = mu_prime.0.clone();
    for _ in 0..order {
        cur = linalg::mat_vec_q(&delta, &cur);
        for (s, c) in sum.iter_mut().zip(&cur) {
            *s = s.clone() + c.clone();
        }
    }
    let n = T::from_int(order as i64);
    Ok((delta, order, RationalCoweight(sum.into_iter().map(|x| x / n.clone()).collect())))
}

/// Validates `(μ′, w)`: `μ′` integral and minuscule, `w` fixing the
/// δ-average `ν` (condition 2), `ν` anti-dominant (condition 3).
pub fn make_leaf_datum<T: Scalar>(datum: &RootDatum, mu_prime: &RationalCoweight<T>, w: &WeylElement) -> Result<LeafDatum<T>, LeafError> {
    if mu_prime.len() != datum.rank() {
        return Err(RootDatumError::RankMismatch { expected: datum.rank(), got: mu_prime.len() }.into());
    }
    if w.matrix.len() != datum.rank() {
        return Err(RootDatumError::RankMismatch { expected: datum.rank(), got: w.matrix.len() }.into());
    }
    if !mu_prime.is_integral() {
        return Err(LeafError::NonIntegral(mu_prime.to_string()));
    }
    if !datum.is_minuscule_like(mu_prime) {
        return Err(LeafError::NotMinuscule(mu_prime.to_string()));
    }
    let (delta, order, nu) = delta_average(datum, mu_prime, w)?;
    let delta_char = linalg::mat_mul(&w.char_matrix, datum.sigma_matrix());
    let delta_roots = datum
        .roots()
        .iter()
        .map(|a| datum.root_index(&linalg::mat_vec(&delta_char, a)))
        .collect::<Option<Vec<usize>>>()
        .ok_or_else(|| LeafError::Consistency("δ does not permute the roots".into()))?;
    if w.apply(&nu) != nu {
        return Err(LeafError::NotInLeviWeylGroup { nu: nu.to_string() });
    }
    if !datum.is_antidominant(&nu) {
        return Err(LeafError::NotAntiDominant { nu: nu.to_string() });
    }
    Ok(LeafDatum { datum: datum.clone(), mu_prime: mu_prime.clone(), w: w.clone(), delta, delta_roots, order, nu })
}

/// Root index sets, each sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSets {
    pub r_mu: Vec<usize>,
    pub r_nu: Vec<usize>,
    pub r_mu_nu: Vec<usize>,
    pub r_c: Vec<usize>,
}

impl RootSets {
    pub fn coordinates<'a>(datum: &'a RootDatum, set: &'a [usize]) -> impl Iterator<Item = &'a [i64]> + 'a {
        set.iter().map(|&i| datum.roots()[i].as_slice())
    }
}

/// Whether all partial sums `Σ_{i=1..r} ⟨δ^{-i} α, μ′⟩`, `r = 1..N`, are `≤ 0`.
fn partial_sums_nonpositive<T: Scalar>(ld: &LeafDatum<T>, alpha: usize) -> bool {
    let mut sum = 0;
    for i in 1..=ld.order as i64 {
        sum += ld.mu_pairing(ld.delta_root(alpha, -i));
        if sum > 0 {
            return false;
        }
    }
    true
}

pub fn root_sets<T: Scalar>(ld: &LeafDatum<T>) -> RootSets {
    let all = 0..ld.datum.roots().len();
    let r_mu: Vec<usize> = all.clone().filter(|&i| ld.mu_pairing(i) < 0).collect();
    let r_nu: Vec<usize> = all.filter(|&i| ld.nu_pairing(i).is_negative()).collect();
    let r_mu_nu: Vec<usize> = r_mu.iter().copied().filter(|i| r_nu.contains(i)).collect();
    let r_c = r_mu_nu.iter().copied().filter(|&i| partial_sums_nonpositive(ld, i)).collect();
    RootSets { r_mu, r_nu, r_mu_nu, r_c }
}

/// The bijection `Φ` on one δ-orbit of `R_ν`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPairing<T> {
    /// `α, δα, ...`.
    pub orbit: Vec<usize>,
    /// `⟨α, μ′⟩` along the orbit.
    pub mu_pairings: Vec<i64>,
    /// `(α, Φ(α))` for `α ∉ R_C` with `⟨α, μ′⟩ = −1`.
    pub pairs: Vec<(usize, usize)>,
    pub r_c_count: usize,
    /// `−Σ_{α ∈ O} ⟨α, ν⟩`.
    pub nu_sum: T,
}

/// `Φ(α) = δ^{-r}α` with `r ≥ 1` minimal such that the partial sum is positive.
fn phi<T: Scalar>(ld: &LeafDatum<T>, alpha: usize) -> Option<usize> {
    let mut sum = 0;
    for r in 1..=ld.order as i64 {
        let beta = ld.delta_root(alpha, -r);
        sum += ld.mu_pairing(beta);
        if sum > 0 {
            return Some(beta);
        }
    }
    None
}

/// `Ψ(α) = δ^{r′}α` with `r′` minimal such that `Σ_{k=0..r′} ⟨δ^k α, μ′⟩ = 0`.
fn psi<T: Scalar>(ld: &LeafDatum<T>, alpha: usize) -> Option<usize> {
    let mut sum = 0;
    for r in 0..=ld.order as i64 {
        let beta = ld.delta_root(alpha, r);
        sum += ld.mu_pairing(beta);
        if sum == 0 {
            return Some(beta);
        }
    }
    None
}

/// Builds and verifies `Φ`/`Ψ` on every δ-orbit of `R_ν`, together with the
/// orbit count `|R_C ∩ O| = −Σ_{α ∈ O} ⟨α, ν⟩`.
pub fn count_lemma_bijection<T: Scalar>(ld: &LeafDatum<T>) -> Result<Vec<OrbitPairing<T>>, LeafError> {
    let sets = root_sets(ld);
    let r_c: BTreeSet<usize> = sets.r_c.iter().copied().collect();
    let fail = |what: String| LeafError::Consistency(what);
    let mut out = Vec::new();
    for orbit in ld.r_nu_orbits() {
        let mu_pairings: Vec<i64> = orbit.iter().map(|&a| ld.mu_pairing(a)).collect();
        let excluded: Vec<usize> = orbit.iter().copied().filter(|&a| ld.mu_pairing(a) == -1 && !r_c.contains(&a)).collect();
        let plus: BTreeSet<usize> = orbit.iter().copied().filter(|&a| ld.mu_pairing(a) == 1).collect();
        let mut pairs = Vec::new();
        let mut image = BTreeSet::new();
        for &a in &excluded {
            let b = phi(ld, a).ok_or_else(|| fail(format!("Φ undefined at root {a}")))?;
            if !plus.contains(&b) || !image.insert(b) {
                return Err(fail(format!("Φ({a}) = {b} is not a new root of μ′-weight 1")));
            }
            if psi(ld, b) != Some(a) {
                return Err(fail(format!("Ψ(Φ({a})) ≠ {a}")));
            }
            pairs.push((a, b));
        }
        for &b in &plus {
            let a = psi(ld, b).ok_or_else(|| fail(format!("Ψ undefined at root {b}")))?;
            if !excluded.contains(&a) || phi(ld, a) != Some(b) {
                return Err(fail(format!("Φ(Ψ({b})) ≠ {b}")));
            }
        }
        let r_c_count = orbit.iter().filter(|a| r_c.contains(a)).count();
        let nu_sum = -orbit.iter().fold(T::zero(), |acc, &a| acc + ld.nu_pairing(a));
        let minus = mu_pairings.iter().filter(|&&m| m == -1).count();
        if r_c_count + plus.len() != minus || T::from_int(r_c_count as i64) != nu_sum {
            return Err(fail(format!("orbit count mismatch on orbit starting at root {}", orbit[0])));
        }
        out.push(OrbitPairing { orbit, mu_pairings, pairs, r_c_count, nu_sum });
    }
    Ok(out)
}

/// `−2⟨ρ, ν⟩`, the expected size of `R_C`.
pub fn expected_r_c_size<T: Scalar>(ld: &LeafDatum<T>) -> T {
    -(dot(&ld.datum.rho::<T>().0, &ld.nu.0) * T::from_int(2))
}

/// Draws valid leaf data for a fixed dominant minuscule `μ`: a random Weyl
/// conjugate `μ′` and a random `w`, twisted by `v` with `vν` anti-dominant.
pub struct LeafSampler<T> {
    datum: RootDatum,
    weyl: Vec<WeylElement>,
    by_matrix: HashMap<IntMatrix, usize>,
    orbit: Vec<RationalCoweight<T>>,
}

impl<T: Scalar> LeafSampler<T> {
    pub fn new(datum: &RootDatum, mu: &RationalCoweight<T>) -> Result<Self, LeafError> {
        if !datum.is_minuscule_like(mu) {
            return Err(LeafError::NotMinuscule(mu.to_string()));
        }
        let weyl = datum.weyl_group()?;
        let by_matrix = weyl.iter().enumerate().map(|(i, w)| (w.matrix.clone(), i)).collect();
        let orbit = datum.weyl_orbit(mu)?.into_iter().collect();
        Ok(LeafSampler { datum: datum.clone(), weyl, by_matrix, orbit })
    }

    pub fn weyl_group(&self) -> &[WeylElement] {
        &self.weyl
    }

    pub fn orbit(&self) -> &[RationalCoweight<T>] {
        &self.orbit
    }

    fn element(&self, m: &IntMatrix) -> Option<&WeylElement> {
        self.by_matrix.get(m).map(|&i| &self.weyl[i])
    }

    /// `(vμ′, v w σ(v)⁻¹)`, which has Newton point `vν`.
    pub fn twist(&self, mu_prime: &RationalCoweight<T>, w: &WeylElement, v: &WeylElement) -> Option<(RationalCoweight<T>, WeylElement)> {
        let s = self.datum.sigma_cochar_matrix();
        let s_inv = linalg::mat_pow(s, self.datum.sigma_order() - 1);
        let v_inv = self.element(&linalg::transpose(&v.char_matrix))?;
        let sigma_v_inv = linalg::mat_mul(&linalg::mat_mul(s, &v_inv.matrix), &s_inv);
        let m = linalg::mat_mul(&linalg::mat_mul(&v.matrix, &w.matrix), &sigma_v_inv);
        Some((v.apply(mu_prime), self.element(&m)?.clone()))
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<LeafDatum<T>> {
        for _ in 0..1000 {
            let mu_prime = self.orbit.choose(rng)?;
            let w = self.weyl.choose(rng)?;
            if let Ok(ld) = make_leaf_datum(&self.datum, mu_prime, w) {
                return Some(ld);
            }
            let (_, _, nu) = delta_average(&self.datum, mu_prime, w).ok()?;
            let neg = RationalCoweight(nu.0.iter().map(|x| -x.clone()).collect());
            let (_, v) = self.datum.dominant_representative(&neg);
            if let Some((m2, w2)) = self.twist(mu_prime, w, &v) {
                if let Ok(ld) = make_leaf_datum(&self.datum, &m2, &w2) {
                    return Some(ld);
                }
            }
        }
        None
    }

    /// Every valid `(μ′, w)`.
    pub fn enumerate(&self) -> Vec<LeafDatum<T>> {
        self.orbit
            .iter()
            .flat_map(|m| self.weyl.iter().filter_map(move |w| make_leaf_datum(&self.datum, m, w).ok()))
            .collect()
    }
}
