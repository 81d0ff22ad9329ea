//! Based root data with a Frobenius (diagram automorphism) action.
//!
//! Both lattices `X*(T)` and `X_*(T)` live in the same coordinate space
//! `Z^rank` and the perfect pairing is the dot product. Roots are vectors in
//! `X*(T)`, coroots in `X_*(T)`, index-aligned. The Frobenius is stored by
//! its matrix on `X*(T)`; its action on cocharacters is the inverse
//! transpose, so that the pairing is preserved.

mod classical;
mod weights;

pub use classical::{build_classical, GroupKind, GroupSpec};
pub use weights::{RationalCoweight, RationalWeight};

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, IntMatrix};
use crate::scalar::{dot_int, Scalar};

/// Weyl groups and orbits beyond this size are not materialized.
pub const WEYL_LIMIT: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootDatumError {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("invalid root datum: {0}")]
    Invalid(String),
    #[error("coweight {0} is not dominant")]
    NotDominant(String),
    #[error("index {0} out of range")]
    InvalidIndex(usize),
    #[error("orbit or group exceeds {WEYL_LIMIT} elements")]
    TooLarge,
    #[error("unsupported group: {0}")]
    Unsupported(String),
}

/// Which lattice a vector lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Side {
    Char,
    Cochar,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    /// Simple-reflection positions (into the simple-root list); the element
    /// is `s_{word[0]} s_{word[1]} ...`.
    pub word: Vec<usize>,
    /// Action on `X_*(T)`.
    pub matrix: IntMatrix,
    /// Action on `X*(T)` (inverse transpose of `matrix`).
    pub char_matrix: IntMatrix,
}

impl WeylElement {
    pub fn apply<T: Scalar>(&self, nu: &RationalCoweight<T>) -> RationalCoweight<T> {
        RationalCoweight(linalg::mat_vec_q(&self.matrix, &nu.0))
    }

    pub fn apply_weight<T: Scalar>(&self, chi: &RationalWeight<T>) -> RationalWeight<T> {
        RationalWeight(linalg::mat_vec_q(&self.char_matrix, &chi.0))
    }

    pub fn apply_root(&self, root: &[i64]) -> Vec<i64> {
        linalg::mat_vec(&self.char_matrix, root)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == linalg::identity(self.matrix.len())
    }
}

#[derive(Debug, Clone)]
pub struct RootDatum {
    name: Option<String>,
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    simple: Vec<usize>,
    sigma: IntMatrix,
    sigma_cochar: IntMatrix,
    sigma_perm: Vec<usize>,
    sigma_order: usize,
    positive: Vec<bool>,
    index: HashMap<Vec<i64>, usize>,
    orbits: Vec<Vec<usize>>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.rank == other.rank
            && self.roots == other.roots
            && self.coroots == other.coroots
            && self.simple == other.simple
            && self.sigma == other.sigma
    }
}

impl Eq for RootDatum {}

impl RootDatum {
    /// Validates and builds a datum. `sigma` is the Frobenius on `X*(T)`;
    /// pass `None` for a split group.
    pub fn new(
        name: Option<String>,
        rank: usize,
        roots: Vec<Vec<i64>>,
        coroots: Vec<Vec<i64>>,
        simple: Vec<usize>,
        sigma: Option<IntMatrix>,
    ) -> Result<Self, RootDatumError> {
        let invalid = |m: String| RootDatumError::Invalid(m);
        if rank == 0 {
            return Err(invalid("rank must be positive".into()));
        }
        if roots.len() != coroots.len() {
            return Err(invalid("roots and coroots differ in length".into()));
        }
        for v in roots.iter().chain(&coroots) {
            if v.len() != rank {
                return Err(RootDatumError::RankMismatch { expected: rank, got: v.len() });
            }
        }
        let mut index = HashMap::new();
        for (k, r) in roots.iter().enumerate() {
            if index.insert(r.clone(), k).is_some() {
                return Err(invalid(format!("duplicate root {r:?}")));
            }
        }
        for (r, c) in roots.iter().zip(&coroots) {
            let p: i64 = r.iter().zip(c).map(|(a, b)| a * b).sum();
            if p != 2 {
                return Err(invalid(format!("<{r:?}, {c:?}> = {p}, expected 2")));
            }
        }
        if simple.iter().any(|&s| s >= roots.len()) {
            return Err(invalid("simple index out of range".into()));
        }
        let sigma = sigma.unwrap_or_else(|| linalg::identity(rank));
        if sigma.len() != rank || sigma.iter().any(|r| r.len() != rank) {
            return Err(invalid("sigma has wrong shape".into()));
        }
        let sigma_order = linalg::matrix_order(&sigma, 64)
            .ok_or_else(|| invalid("sigma does not have finite order".into()))?;
        let sigma_cochar = linalg::transpose(&linalg::mat_pow(&sigma, sigma_order - 1));

        let mut datum = RootDatum {
            name,
            rank,
            roots,
            coroots,
            simple,
            sigma,
            sigma_cochar,
            sigma_perm: Vec::new(),
            sigma_order,
            positive: Vec::new(),
            index,
            orbits: Vec::new(),
        };
        datum.validate_reflections()?;
        datum.compute_positivity()?;
        datum.compute_sigma_perm()?;
        Ok(datum)
    }

    fn validate_reflections(&self) -> Result<(), RootDatumError> {
        for i in 0..self.simple.len() {
            for (k, r) in self.roots.iter().enumerate() {
                let img = self.reflect_int(Side::Char, i, r);
                let Some(&j) = self.index.get(&img) else {
                    return Err(RootDatumError::Invalid(format!(
                        "simple reflection {i} maps root {r:?} outside the root set"
                    )));
                };
                let cimg = self.reflect_int(Side::Cochar, i, &self.coroots[k]);
                if cimg != self.coroots[j] {
                    return Err(RootDatumError::Invalid(format!(
                        "simple reflection {i} breaks root/coroot alignment at {r:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn compute_positivity(&mut self) -> Result<(), RootDatumError> {
        type Q = num_rational::Ratio<i128>;
        // columns = simple roots
        let basis: Vec<Vec<Q>> = (0..self.rank)
            .map(|r| {
                self.simple
                    .iter()
                    .map(|&s| Q::from_int(self.roots[s][r]))
                    .collect()
            })
            .collect();
        let mut positive = Vec::with_capacity(self.roots.len());
        for root in &self.roots {
            let rhs: Vec<Q> = root.iter().map(|&x| Q::from_int(x)).collect();
            let coeffs = linalg::solve(&basis, &rhs).ok_or_else(|| {
                RootDatumError::Invalid(format!("root {root:?} is not in the span of the simple roots"))
            })?;
            if coeffs.iter().any(|c| !c.is_integer()) {
                return Err(RootDatumError::Invalid(format!(
                    "root {root:?} is not an integral combination of simple roots"
                )));
            }
            let pos = coeffs.iter().all(|c| *c >= Q::from_int(0));
            let neg = coeffs.iter().all(|c| *c <= Q::from_int(0));
            if pos == neg {
                return Err(RootDatumError::Invalid(format!(
                    "root {root:?} is neither positive nor negative"
                )));
            }
            positive.push(pos);
        }
        if self.simple.len() != linalg::rank(&basis) {
            return Err(RootDatumError::Invalid("simple roots are linearly dependent".into()));
        }
        self.positive = positive;
        Ok(())
    }

    fn compute_sigma_perm(&mut self) -> Result<(), RootDatumError> {
        let mut perm = Vec::with_capacity(self.simple.len());
        for &s in &self.simple {
            let img = linalg::mat_vec(&self.sigma, &self.roots[s]);
            let pos = self
                .simple
                .iter()
                .position(|&t| self.roots[t] == img)
                .ok_or_else(|| RootDatumError::Invalid("sigma does not permute the simple roots".into()))?;
            let cimg = linalg::mat_vec(&self.sigma_cochar, &self.coroots[s]);
            if cimg != self.coroots[self.simple[pos]] {
                return Err(RootDatumError::Invalid("sigma does not permute the simple coroots".into()));
            }
            perm.push(pos);
        }
        let mut seen = vec![false; perm.len()];
        let mut orbits = Vec::new();
        for start in 0..perm.len() {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                orbit.push(k);
                k = perm[k];
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        self.sigma_perm = perm;
        self.orbits = orbits;
        Ok(())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn simple_indices(&self) -> &[usize] {
        &self.simple
    }

    pub fn num_simple(&self) -> usize {
        self.simple.len()
    }

    pub fn simple_root(&self, i: usize) -> &[i64] {
        &self.roots[self.simple[i]]
    }

    pub fn simple_coroot(&self, i: usize) -> &[i64] {
        &self.coroots[self.simple[i]]
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.index.get(root).copied()
    }

    pub fn is_positive(&self, k: usize) -> bool {
        self.positive[k]
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.roots.len()).filter(|&k| self.positive[k])
    }

    /// Frobenius matrix on `X*(T)`.
    pub fn sigma_matrix(&self) -> &IntMatrix {
        &self.sigma
    }

    /// Frobenius matrix on `X_*(T)`.
    pub fn sigma_cochar_matrix(&self) -> &IntMatrix {
        &self.sigma_cochar
    }

    pub fn sigma_order(&self) -> usize {
        self.sigma_order
    }

    /// `sigma_permutation()[k]` is the position of `σ(α_k)` among the simple roots.
    pub fn sigma_permutation(&self) -> &[usize] {
        &self.sigma_perm
    }

    pub fn is_split(&self) -> bool {
        self.sigma_order == 1
    }

    /// Relative simple roots: σ-orbits of simple-root positions.
    pub fn relative_simple_roots(&self) -> &[Vec<usize>] {
        &self.orbits
    }

    /// The datum with the roles of roots and coroots exchanged.
    pub fn dual(&self) -> RootDatum {
        // σ on the new character lattice is the old cocharacter action
        RootDatum::new(
            self.name.as_ref().map(|n| format!("{n}^dual")),
            self.rank,
            self.coroots.clone(),
            self.roots.clone(),
            self.simple.clone(),
            Some(self.sigma_cochar.clone()),
        )
        .expect("dual of a valid root datum is valid")
    }

    fn check_rank(&self, len: usize) -> Result<(), RootDatumError> {
        if len == self.rank {
            Ok(())
        } else {
            Err(RootDatumError::RankMismatch { expected: self.rank, got: len })
        }
    }

    // -- reflections -------------------------------------------------------

    fn reflect_int(&self, side: Side, i: usize, v: &[i64]) -> Vec<i64> {
        let (test, step) = self.reflection_pair(side, i);
        let p: i64 = test.iter().zip(v).map(|(a, b)| a * b).sum();
        v.iter().zip(step).map(|(x, s)| x - p * s).collect()
    }

    fn reflection_pair(&self, side: Side, i: usize) -> (&[i64], &[i64]) {
        let s = self.simple[i];
        match side {
            Side::Cochar => (&self.roots[s], &self.coroots[s]),
            Side::Char => (&self.coroots[s], &self.roots[s]),
        }
    }

    pub(crate) fn reflect<T: Scalar>(&self, side: Side, i: usize, v: &[T]) -> Vec<T> {
        let (test, step) = self.reflection_pair(side, i);
        let p = dot_int(test, v);
        v.iter()
            .zip(step)
            .map(|(x, &s)| x.clone() - p.clone() * T::from_int(s))
            .collect()
    }

    pub(crate) fn side_is_dominant<T: Scalar>(&self, side: Side, v: &[T]) -> bool {
        (0..self.simple.len()).all(|i| !dot_int(self.reflection_pair(side, i).0, v).is_negative())
    }

    pub(crate) fn side_dominant_rep<T: Scalar>(&self, side: Side, v: &[T]) -> (Vec<T>, Vec<usize>) {
        let mut cur = v.to_vec();
        let mut word = Vec::new();
        while let Some(i) =
            (0..self.simple.len()).find(|&i| dot_int(self.reflection_pair(side, i).0, &cur).is_negative())
        {
            cur = self.reflect(side, i, &cur);
            word.insert(0, i);
        }
        (cur, word)
    }

    /// Is `hi - lo` a nonnegative rational combination of simple (co)roots?
    pub(crate) fn side_leq<T: Scalar>(&self, side: Side, lo: &[T], hi: &[T]) -> bool {
        let diff: Vec<T> = hi.iter().zip(lo).map(|(a, b)| a.clone() - b.clone()).collect();
        match self.simple_coefficients(side, &diff) {
            Some(c) => c.iter().all(|x| !x.is_negative()),
            None => false,
        }
    }

    /// Coefficients of `v` in the simple coroots (cocharacter side) or
    /// simple roots (character side), if `v` lies in their span.
    pub(crate) fn simple_coefficients<T: Scalar>(&self, side: Side, v: &[T]) -> Option<Vec<T>> {
        let basis: Vec<Vec<T>> = (0..self.rank)
            .map(|r| {
                (0..self.simple.len())
                    .map(|i| T::from_int(self.reflection_pair(side, i).1[r]))
                    .collect()
            })
            .collect();
        linalg::solve(&basis, v)
    }

    pub(crate) fn side_orbit<T: Scalar>(&self, side: Side, v: &[T]) -> Result<BTreeSet<Vec<T>>, RootDatumError> {
        let mut seen: BTreeSet<Vec<T>> = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(v.to_vec());
        queue.push_back(v.to_vec());
        while let Some(cur) = queue.pop_front() {
            for i in 0..self.simple.len() {
                let next = self.reflect(side, i, &cur);
                if !seen.contains(&next) {
                    if seen.len() >= WEYL_LIMIT {
                        return Err(RootDatumError::TooLarge);
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(seen)
    }

    fn reflection_matrix(&self, side: Side, i: usize) -> IntMatrix {
        let (test, step) = self.reflection_pair(side, i);
        (0..self.rank)
            .map(|r| (0..self.rank).map(|k| i64::from(r == k) - step[r] * test[k]).collect())
            .collect()
    }

    // -- public operations ---------------------------------------------------

    /// The pairing `<chi, nu>`.
    pub fn pair<T: Scalar>(&self, chi: &RationalWeight<T>, nu: &RationalCoweight<T>) -> Result<T, RootDatumError> {
        self.check_rank(chi.0.len())?;
        self.check_rank(nu.0.len())?;
        Ok(crate::scalar::dot(&chi.0, &nu.0))
    }

    /// Pairing of the root with index `k` against a coweight.
    pub fn pair_root<T: Scalar>(&self, k: usize, nu: &RationalCoweight<T>) -> T {
        dot_int(&self.roots[k], &nu.0)
    }

    /// Half the sum of the positive roots.
    pub fn rho<T: Scalar>(&self) -> RationalWeight<T> {
        let mut sum = vec![0i64; self.rank];
        for k in self.positive_roots() {
            for (s, x) in sum.iter_mut().zip(&self.roots[k]) {
                *s += x;
            }
        }
        RationalWeight(sum.into_iter().map(|x| T::from_frac(x, 2)).collect())
    }

    pub fn is_dominant<T: Scalar>(&self, nu: &RationalCoweight<T>) -> bool {
        self.side_is_dominant(Side::Cochar, &nu.0)
    }

    pub fn is_antidominant<T: Scalar>(&self, nu: &RationalCoweight<T>) -> bool {
        (0..self.simple.len()).all(|i| !dot_int(self.simple_root(i), &nu.0).is_positive())
    }

    pub fn is_dominant_weight<T: Scalar>(&self, chi: &RationalWeight<T>) -> bool {
        self.side_is_dominant(Side::Char, &chi.0)
    }

    /// The dominant element of the Weyl orbit of `nu`, with a Weyl element
    /// carrying `nu` to it.
    pub fn dominant_representative<T: Scalar>(&self, nu: &RationalCoweight<T>) -> (RationalCoweight<T>, WeylElement) {
        let (v, word) = self.side_dominant_rep(Side::Cochar, &nu.0);
        let w = self.weyl_element(&word).expect("word built from valid positions");
        (RationalCoweight(v), w)
    }

    pub fn dominant_weight_representative<T: Scalar>(&self, chi: &RationalWeight<T>) -> RationalWeight<T> {
        RationalWeight(self.side_dominant_rep(Side::Char, &chi.0).0)
    }

    /// Dominance order on dominant coweights: `nu2 - nu1` is a nonnegative
    /// combination of positive coroots. Coweights with different central
    /// parts are incomparable.
    pub fn dominance_leq<T: Scalar>(&self, nu1: &RationalCoweight<T>, nu2: &RationalCoweight<T>) -> Result<bool, RootDatumError> {
        self.check_rank(nu1.0.len())?;
        self.check_rank(nu2.0.len())?;
        for nu in [nu1, nu2] {
            if !self.is_dominant(nu) {
                return Err(RootDatumError::NotDominant(nu.to_string()));
            }
        }
        Ok(self.side_leq(Side::Cochar, &nu1.0, &nu2.0))
    }

    /// Dominance order on dominant weights.
    pub fn weight_dominance_leq<T: Scalar>(&self, lo: &RationalWeight<T>, hi: &RationalWeight<T>) -> Result<bool, RootDatumError> {
        self.check_rank(lo.0.len())?;
        self.check_rank(hi.0.len())?;
        for chi in [lo, hi] {
            if !self.is_dominant_weight(chi) {
                return Err(RootDatumError::NotDominant(chi.to_string()));
            }
        }
        Ok(self.side_leq(Side::Char, &lo.0, &hi.0))
    }

    fn fundamental<T: Scalar>(&self, side: Side, beta: usize) -> Result<Vec<T>, RootDatumError> {
        let orbit = self.orbits.get(beta).ok_or(RootDatumError::InvalidIndex(beta))?;
        let n = self.simple.len();
        // cartan[i][j] = <test_i, step_j>; the answer is sum_j c_j step_j
        let cartan: Vec<Vec<T>> = (0..n)
            .map(|i| {
                let test = self.reflection_pair(side, i).0;
                (0..n)
                    .map(|j| {
                        let step = self.reflection_pair(side, j).1;
                        T::from_int(test.iter().zip(step).map(|(a, b)| a * b).sum())
                    })
                    .collect()
            })
            .collect();
        let mut out = vec![T::zero(); self.rank];
        for &k in orbit {
            let rhs: Vec<T> = (0..n).map(|i| T::from_int(i64::from(i == k))).collect();
            let c = linalg::solve(&cartan, &rhs).expect("Cartan matrix is invertible");
            for (j, cj) in c.iter().enumerate() {
                let step = self.reflection_pair(side, j).1;
                for (o, &s) in out.iter_mut().zip(step) {
                    *o = o.clone() + cj.clone() * T::from_int(s);
                }
            }
        }
        Ok(out)
    }

    /// Adjoint-normalized relative fundamental weight of the relative simple
    /// root `beta`: pairs to 1 with each simple coroot in the orbit, to 0 with
    /// the others, and lies in the span of the roots.
    pub fn fundamental_weight<T: Scalar>(&self, beta: usize) -> Result<RationalWeight<T>, RootDatumError> {
        Ok(RationalWeight(self.fundamental(Side::Char, beta)?))
    }

    /// Fundamental coweight: the same construction on the coroot side.
    pub fn fundamental_coweight<T: Scalar>(&self, beta: usize) -> Result<RationalCoweight<T>, RootDatumError> {
        Ok(RationalCoweight(self.fundamental(Side::Cochar, beta)?))
    }

    pub fn weyl_orbit<T: Scalar>(&self, nu: &RationalCoweight<T>) -> Result<BTreeSet<RationalCoweight<T>>, RootDatumError> {
        self.check_rank(nu.0.len())?;
        Ok(self.side_orbit(Side::Cochar, &nu.0)?.into_iter().map(RationalCoweight).collect())
    }

    pub fn weyl_orbit_weight<T: Scalar>(&self, chi: &RationalWeight<T>) -> Result<BTreeSet<RationalWeight<T>>, RootDatumError> {
        self.check_rank(chi.0.len())?;
        Ok(self.side_orbit(Side::Char, &chi.0)?.into_iter().map(RationalWeight).collect())
    }

    /// Whether `lambda` lies in the convex hull of the Weyl orbit of `mu`.
    pub fn in_convex_hull_of_orbit<T: Scalar>(&self, lambda: &RationalWeight<T>, mu: &RationalWeight<T>) -> Result<bool, RootDatumError> {
        self.check_rank(lambda.0.len())?;
        self.check_rank(mu.0.len())?;
        let lam = self.side_dominant_rep(Side::Char, &lambda.0).0;
        let top = self.side_dominant_rep(Side::Char, &mu.0).0;
        Ok(self.side_leq(Side::Char, &lam, &top))
    }

    pub fn weyl_element(&self, word: &[usize]) -> Result<WeylElement, RootDatumError> {
        let mut matrix = linalg::identity(self.rank);
        let mut char_matrix = linalg::identity(self.rank);
        for &i in word {
            if i >= self.simple.len() {
                return Err(RootDatumError::InvalidIndex(i));
            }
            matrix = linalg::mat_mul(&matrix, &self.reflection_matrix(Side::Cochar, i));
            char_matrix = linalg::mat_mul(&char_matrix, &self.reflection_matrix(Side::Char, i));
        }
        Ok(WeylElement { word: word.to_vec(), matrix, char_matrix })
    }

    /// All Weyl group elements, each with a reduced-length word (BFS order).
    pub fn weyl_group(&self) -> Result<Vec<WeylElement>, RootDatumError> {
        let id = self.weyl_element(&[])?;
        let mut seen: HashSet<IntMatrix> = HashSet::new();
        seen.insert(id.matrix.clone());
        let mut out = vec![id];
        let mut head = 0;
        while head < out.len() {
            let cur = out[head].clone();
            head += 1;
            for i in 0..self.simple.len() {
                let m = linalg::mat_mul(&cur.matrix, &self.reflection_matrix(Side::Cochar, i));
                if seen.insert(m.clone()) {
                    if out.len() >= WEYL_LIMIT {
                        return Err(RootDatumError::TooLarge);
                    }
                    let mut word = cur.word.clone();
                    word.push(i);
                    let char_matrix = linalg::mat_mul(&cur.char_matrix, &self.reflection_matrix(Side::Char, i));
                    out.push(WeylElement { word, matrix: m, char_matrix });
                }
            }
        }
        Ok(out)
    }

    pub fn sigma_apply<T: Scalar>(&self, nu: &RationalCoweight<T>) -> RationalCoweight<T> {
        RationalCoweight(linalg::mat_vec_q(&self.sigma_cochar, &nu.0))
    }

    pub fn is_sigma_invariant<T: Scalar>(&self, nu: &RationalCoweight<T>) -> bool {
        self.sigma_apply(nu) == *nu
    }

    /// Average of `nu` over its Frobenius orbit.
    pub fn sigma_average<T: Scalar>(&self, nu: &RationalCoweight<T>) -> RationalCoweight<T> {
        let mut acc = vec![T::zero(); self.rank];
        let mut cur = nu.clone();
        for _ in 0..self.sigma_order {
            for (a, x) in acc.iter_mut().zip(&cur.0) {
                *a = a.clone() + x.clone();
            }
            cur = self.sigma_apply(&cur);
        }
        let n = T::from_int(self.sigma_order as i64);
        RationalCoweight(acc.into_iter().map(|a| a / n.clone()).collect())
    }

    /// Whether `<alpha, nu>` lies in {-1, 0, 1} for every root.
    pub fn is_minuscule_like<T: Scalar>(&self, nu: &RationalCoweight<T>) -> bool {
        (0..self.roots.len()).all(|k| self.pair_root(k, nu).abs() <= T::one())
    }

    /// Relative simple roots at which `<beta, nu>` vanishes.
    pub(crate) fn levi_orbits<T: Scalar>(&self, nu: &RationalCoweight<T>) -> Vec<usize> {
        (0..self.orbits.len())
            .filter(|&o| self.orbits[o].iter().all(|&k| dot_int(self.simple_root(k), &nu.0).is_zero()))
            .collect()
    }

    /// Projection of `X_*(T)_Q` onto the orthogonal of the roots of the
    /// standard Levi spanned by the given simple positions, along the span of
    /// their coroots.
    pub(crate) fn levi_projection<T: Scalar>(&self, levi_simple: &[usize], v: &[T]) -> Vec<T> {
        if levi_simple.is_empty() {
            return v.to_vec();
        }
        let m = levi_simple.len();
        let cartan: Vec<Vec<T>> = levi_simple
            .iter()
            .map(|&i| {
                levi_simple
                    .iter()
                    .map(|&j| T::from_int(self.simple_root(i).iter().zip(self.simple_coroot(j)).map(|(a, b)| a * b).sum()))
                    .collect()
            })
            .collect();
        let rhs: Vec<T> = levi_simple.iter().map(|&i| dot_int(self.simple_root(i), v)).collect();
        let c = linalg::solve(&cartan, &rhs).expect("Levi Cartan matrix is invertible");
        let mut out = v.to_vec();
        for t in 0..m {
            for (o, &s) in out.iter_mut().zip(self.simple_coroot(levi_simple[t])) {
                *o = o.clone() - c[t].clone() * T::from_int(s);
            }
        }
        out
    }
}

impl fmt::Display for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "root datum of rank {}", self.rank),
        }
    }
}

// -- serialization -----------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SigmaDoc {
    /// Permutation of the simple-root positions.
    pub perm: Vec<usize>,
    /// Matrix on `X*(T)`.
    pub matrix: IntMatrix,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct RootDatumDoc {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    pub simple_indices: Vec<usize>,
    pub sigma: SigmaDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl From<&RootDatum> for RootDatumDoc {
    fn from(d: &RootDatum) -> Self {
        RootDatumDoc {
            rank: d.rank,
            roots: d.roots.clone(),
            coroots: d.coroots.clone(),
            simple_indices: d.simple.clone(),
            sigma: SigmaDoc { perm: d.sigma_perm.clone(), matrix: d.sigma.clone() },
            name: d.name.clone(),
        }
    }
}

impl TryFrom<RootDatumDoc> for RootDatum {
    type Error = RootDatumError;

    fn try_from(doc: RootDatumDoc) -> Result<Self, Self::Error> {
        let d = RootDatum::new(doc.name, doc.rank, doc.roots, doc.coroots, doc.simple_indices, Some(doc.sigma.matrix))?;
        if d.sigma_perm != doc.sigma.perm {
            return Err(RootDatumError::Invalid("sigma permutation does not match its matrix".into()));
        }
        Ok(d)
    }
}

impl Serialize for RootDatum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RootDatumDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RootDatum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let doc = RootDatumDoc::deserialize(d)?;
        RootDatum::try_from(doc).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests;
