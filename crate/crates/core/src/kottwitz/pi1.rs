//! `π₁(G)_Γ = X_*(T) / (coroot lattice + (σ − 1) X_*(T))` via Smith normal form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::linalg::{self, SmithForm};
use crate::root_datum::RootDatum;

/// Normal form of an element of a finitely generated abelian group
/// `Z^free ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KottwitzPoint {
    pub free: Vec<i64>,
    /// Residues in `[0, d_j)`, aligned with `moduli`.
    pub torsion: Vec<i64>,
    /// The invariant factors `d_j`.
    pub moduli: Vec<i64>,
}

impl KottwitzPoint {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|&x| x == 0)
    }
}

impl fmt::Display for KottwitzPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .free
            .iter()
            .map(|x| x.to_string())
            .chain(self.torsion.iter().zip(&self.moduli).map(|(x, d)| format!("{x} mod {d}")))
            .collect();
        match parts.len() {
            0 => f.write_str("0"),
            1 => f.write_str(&parts[0]),
            _ => write!(f, "({})", parts.join(", ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitelyGeneratedAbelianGroup {
    ambient: usize,
    free_rank: usize,
    torsion: Vec<i64>,
    /// Relations as columns, `ambient` rows.
    presentation: Vec<Vec<i128>>,
    snf: SmithForm,
    // diagonal positions with d > 1
    torsion_rows: Vec<usize>,
}

impl FinitelyGeneratedAbelianGroup {
    /// Quotient of `Z^ambient` by the span of the given relation vectors.
    pub fn quotient(ambient: usize, relations: &[Vec<i64>]) -> Self {
        let presentation: Vec<Vec<i128>> = (0..ambient)
            .map(|r| relations.iter().map(|v| i128::from(v[r])).collect())
            .collect();
        let snf = linalg::smith_normal_form(&presentation, ambient);
        let torsion_rows: Vec<usize> = (0..snf.rank()).filter(|&i| snf.diagonal[i] > 1).collect();
        let torsion = torsion_rows
            .iter()
            .map(|&i| i64::try_from(snf.diagonal[i]).expect("invariant factor fits i64"))
            .collect();
        FinitelyGeneratedAbelianGroup {
            ambient,
            free_rank: ambient - snf.rank(),
            torsion,
            presentation,
            snf,
            torsion_rows,
        }
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Invariant factors `d_1 | d_2 | ...`, each at least 2.
    pub fn torsion(&self) -> &[i64] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Relation vectors (columns of the presentation matrix).
    pub fn presentation(&self) -> &[Vec<i128>] {
        &self.presentation
    }

    pub fn zero(&self) -> KottwitzPoint {
        KottwitzPoint { free: vec![0; self.free_rank], torsion: vec![0; self.torsion.len()], moduli: self.torsion.clone() }
    }

    pub fn class_of(&self, x: &[i64]) -> KottwitzPoint {
        assert_eq!(x.len(), self.ambient, "class_of: wrong length");
        let y = |i: usize| -> i128 { self.snf.u[i].iter().zip(x).map(|(a, &b)| a * i128::from(b)).sum() };
        let torsion = self
            .torsion_rows
            .iter()
            .zip(&self.torsion)
            .map(|(&i, &d)| y(i).rem_euclid(i128::from(d)) as i64)
            .collect();
        let free = (self.snf.rank()..self.ambient)
            .map(|i| i64::try_from(y(i)).expect("free coordinate fits i64"))
            .collect();
        KottwitzPoint { free, torsion, moduli: self.torsion.clone() }
    }

    /// Some lattice vector in the given class.
    pub fn lift(&self, k: &KottwitzPoint) -> Vec<i64> {
        let mut y = vec![0i128; self.ambient];
        for (&i, &t) in self.torsion_rows.iter().zip(&k.torsion) {
            y[i] = i128::from(t);
        }
        for (j, &f) in k.free.iter().enumerate() {
            y[self.snf.rank() + j] = i128::from(f);
        }
        self.snf
            .u_inv
            .iter()
            .map(|row| i64::try_from(row.iter().zip(&y).map(|(a, b)| a * b).sum::<i128>()).expect("lift fits i64"))
            .collect()
    }

    pub fn add(&self, a: &KottwitzPoint, b: &KottwitzPoint) -> KottwitzPoint {
        KottwitzPoint {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.torsion)
                .map(|((x, y), d)| (x + y).rem_euclid(*d))
                .collect(),
            moduli: self.torsion.clone(),
        }
    }

    /// Whether `k` has the right shape and reduced residues.
    pub fn contains(&self, k: &KottwitzPoint) -> bool {
        k.free.len() == self.free_rank
            && k.moduli == self.torsion
            && k.torsion.iter().zip(&self.torsion).all(|(&t, &d)| (0..d).contains(&t))
    }
}

impl fmt::Display for FinitelyGeneratedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".into());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Relations generating the coroot lattice plus `(σ − 1) X_*(T)`.
pub(crate) fn kottwitz_relations(datum: &RootDatum) -> Vec<Vec<i64>> {
    let rank = datum.rank();
    let mut rels: Vec<Vec<i64>> = (0..datum.num_simple()).map(|i| datum.simple_coroot(i).to_vec()).collect();
    if !datum.is_split() {
        let s = datum.sigma_cochar_matrix();
        for j in 0..rank {
            let col: Vec<i64> = (0..rank).map(|r| s[r][j] - i64::from(r == j)).collect();
            if col.iter().any(|&x| x != 0) {
                rels.push(col);
            }
        }
    }
    rels
}

pub fn pi1_coinvariants(datum: &RootDatum) -> FinitelyGeneratedAbelianGroup {
    FinitelyGeneratedAbelianGroup::quotient(datum.rank(), &kottwitz_relations(datum))
}
