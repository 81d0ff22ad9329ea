use std::collections::BTreeSet;

use super::{
    averaged_projection, break_points, kappa, leq, pi1_coinvariants, pr, FinitelyGeneratedAbelianGroup, KottwitzError,
    KottwitzPoint, SigmaConjClass,
};
use crate::root_datum::{RationalCoweight, RootDatum, RootDatumError, Side};
use crate::scalar::Scalar;

/// The finite poset `B(G, μ)`.
///
/// Elements are sorted by Newton point, lexicographically descending, so the
/// maximal class comes first and the basic class last.
#[derive(Debug, Clone)]
pub struct NewtonPoset<T> {
    datum: RootDatum,
    pi1: FinitelyGeneratedAbelianGroup,
    mu: RationalCoweight<T>,
    mu_bar: RationalCoweight<T>,
    elements: Vec<SigmaConjClass<T>>,
    order: Vec<Vec<bool>>,
    hasse: Vec<(usize, usize)>,
    b_min: usize,
    b_max: usize,
}

/// Enumerates `B(G, μ)` for a dominant minuscule integral `μ`.
///
/// For every σ-stable set `J` of simple orbits (the candidate centralizer
/// Levi `M`) the Newton points with centralizer `M` are exactly
/// `avg pr_M(μ) − Σ_{O ∉ J} (t_O/|O|) avg pr_M(Σ_{i ∈ O} α_i^∨)` with integer
/// `t_O`, bounded by the distance from `μ̄` to the basic point. Candidates are
/// kept if `M` is really their centralizer and they lie below `μ̄`.
pub fn enumerate_bgmu<T: Scalar>(datum: &RootDatum, mu: &RationalCoweight<T>) -> Result<NewtonPoset<T>, KottwitzError> {
    if mu.len() != datum.rank() {
        return Err(RootDatumError::RankMismatch { expected: datum.rank(), got: mu.len() }.into());
    }
    if !mu.is_integral() {
        return Err(KottwitzError::NonIntegral(mu.to_string()));
    }
    if !datum.is_dominant(mu) {
        return Err(KottwitzError::NotDominant(mu.to_string()));
    }
    if !datum.is_minuscule_like(mu) {
        return Err(KottwitzError::NotMinuscule(mu.to_string()));
    }
    let pi1 = pi1_coinvariants(datum);
    let k = kappa(&pi1, mu)?;
    let mu_bar = datum.sigma_average(mu);
    let all_simple: Vec<usize> = (0..datum.num_simple()).collect();
    let basic = averaged_projection(datum, &all_simple, &mu.0);
    let c_basic = datum
        .simple_coefficients(Side::Cochar, &mu_bar.sub(&basic).0)
        .ok_or_else(|| KottwitzError::Consistency("basic point not below the average of mu".into()))?;

    let orbits = datum.relative_simple_roots().to_vec();
    let mut found: BTreeSet<RationalCoweight<T>> = BTreeSet::new();
    for mask in 0u64..(1u64 << orbits.len()) {
        let in_levi = |o: usize| mask >> o & 1 == 1;
        let levi: Vec<usize> = {
            let mut v: Vec<usize> = (0..orbits.len()).filter(|&o| in_levi(o)).flat_map(|o| orbits[o].clone()).collect();
            v.sort_unstable();
            v
        };
        let outside: Vec<usize> = (0..orbits.len()).filter(|&o| !in_levi(o)).collect();
        let nu0 = averaged_projection(datum, &levi, &mu.0);
        let dirs: Vec<RationalCoweight<T>> = outside
            .iter()
            .map(|&o| {
                let mut v = vec![T::zero(); datum.rank()];
                for &i in &orbits[o] {
                    for (x, &c) in v.iter_mut().zip(datum.simple_coroot(i)) {
                        *x = x.clone() + T::from_int(c);
                    }
                }
                let size = T::from_int(orbits[o].len() as i64);
                averaged_projection(datum, &levi, &v).scale(&(T::one() / size))
            })
            .collect();
        let bounds: Vec<i64> = outside
            .iter()
            .map(|&o| {
                let size = orbits[o].len() as i64;
                let c = &c_basic[orbits[o][0]];
                let mut t = 0;
                while T::from_frac(t + 1, size) <= *c {
                    t += 1;
                }
                t
            })
            .collect();
        let mut t = vec![0i64; outside.len()];
        loop {
            let mut nu = nu0.clone();
            for (d, &ti) in dirs.iter().zip(&t) {
                let step = T::from_int(ti);
                nu = nu.sub(&d.scale(&step));
            }
            let strict = outside
                .iter()
                .all(|&o| datum.pair_root(datum.simple_indices()[orbits[o][0]], &nu).is_positive());
            if strict && datum.is_dominant(&nu) && datum.side_leq(Side::Cochar, &nu.0, &mu_bar.0) {
                found.insert(nu);
            }
            // odometer over the box of t values
            let mut pos = 0;
            while pos < t.len() && t[pos] == bounds[pos] {
                t[pos] = 0;
                pos += 1;
            }
            if pos == t.len() {
                break;
            }
            t[pos] += 1;
        }
    }

    let mut elements = Vec::with_capacity(found.len());
    for nu in found.into_iter().rev() {
        let b = SigmaConjClass::new(datum, &pi1, nu, k.clone())
            .map_err(|e| KottwitzError::Consistency(format!("enumerated class rejected: {e}")))?;
        elements.push(b);
    }
    NewtonPoset::from_elements(datum.clone(), pi1, mu.clone(), mu_bar, elements)
}

impl<T: Scalar> NewtonPoset<T> {
    fn from_elements(
        datum: RootDatum,
        pi1: FinitelyGeneratedAbelianGroup,
        mu: RationalCoweight<T>,
        mu_bar: RationalCoweight<T>,
        elements: Vec<SigmaConjClass<T>>,
    ) -> Result<Self, KottwitzError> {
        let n = elements.len();
        let order: Vec<Vec<bool>> = (0..n)
            .map(|i| (0..n).map(|j| leq(&datum, &elements[i], &elements[j])).collect())
            .collect();
        let mut hasse = Vec::new();
        for hi in 0..n {
            for lo in 0..n {
                if lo != hi && order[lo][hi] && !(0..n).any(|m| m != lo && m != hi && order[lo][m] && order[m][hi]) {
                    hasse.push((hi, lo));
                }
            }
        }
        let minimal: Vec<usize> = (0..n).filter(|&i| (0..n).all(|j| j == i || !order[j][i])).collect();
        let maximal: Vec<usize> = (0..n).filter(|&i| (0..n).all(|j| j == i || !order[i][j])).collect();
        let (&[b_min], &[b_max]) = (minimal.as_slice(), maximal.as_slice()) else {
            return Err(KottwitzError::Consistency(format!(
                "expected one minimal and one maximal class, found {} and {}",
                minimal.len(),
                maximal.len()
            )));
        };
        if !elements[b_min].is_basic(&datum) {
            return Err(KottwitzError::Consistency("minimal class is not basic".into()));
        }
        if elements[b_max].newton_point != mu_bar {
            return Err(KottwitzError::Consistency("maximal class is not the class of mu".into()));
        }
        Ok(NewtonPoset { datum, pi1, mu, mu_bar, elements, order, hasse, b_min, b_max })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn pi1(&self) -> &FinitelyGeneratedAbelianGroup {
        &self.pi1
    }

    pub fn mu(&self) -> &RationalCoweight<T> {
        &self.mu
    }

    /// σ-average of `μ`, the Newton point of `b_max`.
    pub fn mu_bar(&self) -> &RationalCoweight<T> {
        &self.mu_bar
    }

    pub fn kottwitz_point(&self) -> &KottwitzPoint {
        &self.elements[self.b_max].kottwitz_point
    }

    pub fn elements(&self) -> &[SigmaConjClass<T>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, i: usize) -> &SigmaConjClass<T> {
        &self.elements[i]
    }

    pub fn index_of(&self, b: &SigmaConjClass<T>) -> Option<usize> {
        self.elements.iter().position(|e| e == b)
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.order[i][j]
    }

    /// Covering pairs `(upper, lower)`.
    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    /// Index of the basic class.
    pub fn b_min(&self) -> usize {
        self.b_min
    }

    /// Index of `[μ(p)]`.
    pub fn b_max(&self) -> usize {
        self.b_max
    }

    fn check(&self, i: usize) -> Result<(), KottwitzError> {
        if i < self.len() {
            Ok(())
        } else {
            Err(KottwitzError::NotInPoset)
        }
    }

    /// `B(G)_{≤ b}` inside the poset.
    pub fn down_set(&self, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.order[k][b]).collect()
    }

    pub fn strictly_below(&self, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&k| k != b && self.order[k][b]).collect()
    }

    pub fn break_points(&self, b: usize) -> Vec<usize> {
        break_points(&self.datum, &self.elements[b].newton_point)
    }

    pub fn pr(&self, beta: usize, b: usize) -> Result<T, KottwitzError> {
        pr(&self.datum, beta, &self.elements[b].newton_point)
    }

    /// Maximal elements of `B(G)_{< b}`, each with the break point of `b`
    /// at which it drops (the unique one where `pr_β` decreases).
    pub fn maximal_below(&self, b: usize) -> Result<Vec<(usize, usize)>, KottwitzError> {
        self.check(b)?;
        let below = self.strictly_below(b);
        let breaks = self.break_points(b);
        let mut out = Vec::new();
        for &c in &below {
            if below.iter().any(|&d| d != c && self.order[c][d]) {
                continue;
            }
            let mut drops = Vec::new();
            for &beta in &breaks {
                if self.pr(beta, c)? < self.pr(beta, b)? {
                    drops.push(beta);
                }
            }
            match drops.as_slice() {
                [beta] => out.push((c, *beta)),
                _ => {
                    return Err(KottwitzError::Consistency(format!(
                        "maximal element {} below {} drops at {} break points",
                        self.elements[c].newton_point,
                        self.elements[b].newton_point,
                        drops.len()
                    )))
                }
            }
        }
        Ok(out)
    }

    /// `{b'' < b : pr_β(b'') < pr_β(b)}` for a maximal `b' < b` attached to `β`.
    pub fn down_set_by_projection(&self, b: usize, b_prime: usize, beta: usize) -> Result<Vec<usize>, KottwitzError> {
        self.check(b)?;
        self.check(b_prime)?;
        if !self.maximal_below(b)?.contains(&(b_prime, beta)) {
            return Err(KottwitzError::NotMaximalBelow(self.elements[b_prime].newton_point.to_string()));
        }
        let top = self.pr(beta, b)?;
        let mut out = Vec::new();
        for c in self.strictly_below(b) {
            if self.pr(beta, c)? < top {
                out.push(c);
            }
        }
        Ok(out)
    }

    /// Length of a longest chain `b_lo = c_0 < c_1 < ... < c_k = b_hi`.
    pub fn chain_length(&self, lo: usize, hi: usize) -> Result<usize, KottwitzError> {
        self.check(lo)?;
        self.check(hi)?;
        if !self.order[lo][hi] {
            return Err(KottwitzError::Incomparable);
        }
        let mut memo: Vec<Option<Option<usize>>> = vec![None; self.len()];
        Ok(self.longest_down(hi, lo, &mut memo).expect("comparable classes are joined by covers"))
    }

    fn longest_down(&self, from: usize, target: usize, memo: &mut Vec<Option<Option<usize>>>) -> Option<usize> {
        if from == target {
            return Some(0);
        }
        if let Some(v) = memo[from] {
            return v;
        }
        let mut best = None;
        for &(u, l) in &self.hasse {
            if u == from && self.order[target][l] {
                if let Some(d) = self.longest_down(l, target, memo) {
                    best = best.max(Some(d + 1));
                }
            }
        }
        memo[from] = Some(best);
        best
    }
}
