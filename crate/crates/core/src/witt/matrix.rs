use rand::Rng;
use serde::{Deserialize, Serialize};

use super::ring::{GaloisRing, GaloisRingElement};
use super::WittError;

/// The matrix `A` of a σ-linear map `F = Aσ` on `W(F_q)^n / p^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusMatrix {
    ring: GaloisRing,
    entries: Vec<Vec<GaloisRingElement>>,
}

/// On-disk form. Entries are coefficient arrays, constant term first. An
/// omitted `modulus` means the least irreducible one for `(p, s)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub p: u64,
    #[serde(rename = "N")]
    pub precision: u32,
    pub s: usize,
    #[serde(default)]
    pub modulus: Vec<u64>,
    pub entries: Vec<Vec<Vec<u64>>>,
}

impl FrobeniusMatrix {
    pub fn new(ring: &GaloisRing, entries: Vec<Vec<GaloisRingElement>>) -> Result<Self, WittError> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(WittError::DimensionMismatch);
        }
        if entries.iter().flatten().any(|e| e.coeffs.len() != ring.degree()) {
            return Err(WittError::InvalidParameters("entry has the wrong number of coefficients".into()));
        }
        Ok(FrobeniusMatrix { ring: ring.clone(), entries })
    }

    pub fn from_ints(ring: &GaloisRing, m: &[Vec<i64>]) -> Result<Self, WittError> {
        Self::new(ring, m.iter().map(|r| r.iter().map(|&x| ring.from_int(x)).collect()).collect())
    }

    pub fn identity(ring: &GaloisRing, n: usize) -> Self {
        let entries = (0..n)
            .map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
            .collect();
        FrobeniusMatrix { ring: ring.clone(), entries }
    }

    /// `diag(p^{e_1}, ..., p^{e_n})`.
    pub fn diag_p_powers(ring: &GaloisRing, exps: &[u32]) -> Self {
        let mut m = Self::identity(ring, exps.len());
        for (i, &e) in exps.iter().enumerate() {
            m.entries[i][i] = ring.mul_p_pow(&ring.one(), e);
        }
        m
    }

    /// Permutation matrix sending `e_j` to `e_{perm[j]}`.
    pub fn permutation(ring: &GaloisRing, perm: &[usize]) -> Self {
        let n = perm.len();
        let mut entries = vec![vec![ring.zero(); n]; n];
        for (j, &i) in perm.iter().enumerate() {
            entries[i][j] = ring.one();
        }
        FrobeniusMatrix { ring: ring.clone(), entries }
    }

    pub fn random<R: Rng + ?Sized>(ring: &GaloisRing, n: usize, rng: &mut R) -> Self {
        let entries = (0..n).map(|_| (0..n).map(|_| ring.random_element(rng)).collect()).collect();
        FrobeniusMatrix { ring: ring.clone(), entries }
    }

    /// A uniformly random element of `GL_n(W/p^N)`.
    pub fn random_invertible<R: Rng + ?Sized>(ring: &GaloisRing, n: usize, rng: &mut R) -> Self {
        loop {
            let m = Self::random(ring, n, rng);
            if ring.is_unit(&m.det()) {
                return m;
            }
        }
    }

    pub fn ring(&self) -> &GaloisRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<GaloisRingElement>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &GaloisRingElement {
        &self.entries[i][j]
    }

    fn check_compatible(&self, other: &Self) -> Result<(), WittError> {
        if self.ring != other.ring {
            return Err(WittError::RingMismatch);
        }
        if self.dim() != other.dim() {
            return Err(WittError::DimensionMismatch);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, WittError> {
        self.check_compatible(other)?;
        let n = self.dim();
        let r = &self.ring;
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).fold(r.zero(), |acc, k| r.add(&acc, &r.mul(&self.entries[i][k], &other.entries[k][j]))))
                    .collect()
            })
            .collect();
        Ok(FrobeniusMatrix { ring: r.clone(), entries })
    }

    /// Entrywise `σ^k`.
    pub fn sigma_pow(&self, k: i64) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| self.ring.sigma_pow(e, k)).collect())
            .collect();
        FrobeniusMatrix { ring: self.ring.clone(), entries }
    }

    pub fn sigma(&self) -> Self {
        self.sigma_pow(1)
    }

    /// `A σ(A) ⋯ σ^{s−1}(A)`, the matrix of the linear map `F^s`.
    pub fn linearized(&self) -> Self {
        let s = self.ring.degree();
        (1..s).fold(self.clone(), |acc, k| acc.mul(&self.sigma_pow(k as i64)).expect("same ring"))
    }

    /// Coefficients of `det(λ − A)`, constant term first (monic, length
    /// `n + 1`), by the division-free Berkowitz recursion.
    pub fn charpoly(&self) -> Vec<GaloisRingElement> {
        let r = &self.ring;
        let n = self.dim();
        let a = &self.entries;
        // highest degree first while building
        let mut poly = vec![r.one()];
        for k in 0..n {
            // t = (1, −a_kk, −R C, −R M C, ..., −R M^{k−1} C)
            let mut t = vec![r.one(), r.neg(&a[k][k])];
            let mut col: Vec<GaloisRingElement> = (0..k).map(|i| a[i][k].clone()).collect();
            for _ in 0..k {
                let rc = (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&a[k][j], &col[j])));
                t.push(r.neg(&rc));
                col = (0..k)
                    .map(|i| (0..k).fold(r.zero(), |acc, j| r.add(&acc, &r.mul(&a[i][j], &col[j]))))
                    .collect();
            }
            let next: Vec<GaloisRingElement> = (0..k + 2)
                .map(|i| {
                    (0..=k.min(i)).filter(|&j| i - j < t.len() && j < poly.len()).fold(r.zero(), |acc, j| {
                        r.add(&acc, &r.mul(&t[i - j], &poly[j]))
                    })
                })
                .collect();
            poly = next;
        }
        poly.reverse();
        poly
    }

    pub fn det(&self) -> GaloisRingElement {
        let c0 = self.charpoly().swap_remove(0);
        if self.dim() % 2 == 1 {
            self.ring.neg(&c0)
        } else {
            c0
        }
    }

    /// Gauss-Jordan inverse; fails unless `det` is a unit.
    pub fn inverse(&self) -> Result<Self, WittError> {
        let r = &self.ring;
        let n = self.dim();
        let mut a = self.entries.clone();
        let mut inv = Self::identity(r, n).entries;
        for c in 0..n {
            let pivot = (c..n).find(|&i| r.is_unit(&a[i][c])).ok_or(WittError::NotInvertible)?;
            a.swap(c, pivot);
            inv.swap(c, pivot);
            let scale = r.inv(&a[c][c])?;
            for j in 0..n {
                a[c][j] = r.mul(&a[c][j], &scale);
                inv[c][j] = r.mul(&inv[c][j], &scale);
            }
            for i in 0..n {
                if i == c || r.is_zero(&a[i][c]) {
                    continue;
                }
                let f = a[i][c].clone();
                for j in 0..n {
                    let t = r.mul(&f, &a[c][j]);
                    a[i][j] = r.sub(&a[i][j], &t);
                    let t = r.mul(&f, &inv[c][j]);
                    inv[i][j] = r.sub(&inv[i][j], &t);
                }
            }
        }
        Ok(FrobeniusMatrix { ring: r.clone(), entries: inv })
    }

    /// The matrix on `Λ²` in the basis `e_i ∧ e_j`, `i < j`, lexicographic.
    pub fn exterior_square(&self) -> Self {
        let r = &self.ring;
        let n = self.dim();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let a = &self.entries;
        let entries = pairs
            .iter()
            .map(|&(i, j)| {
                pairs
                    .iter()
                    .map(|&(k, l)| r.sub(&r.mul(&a[i][k], &a[j][l]), &r.mul(&a[i][l], &a[j][k])))
                    .collect()
            })
            .collect();
        FrobeniusMatrix { ring: r.clone(), entries }
    }

    pub fn to_file(&self) -> MatrixFile {
        MatrixFile {
            p: self.ring.p(),
            precision: self.ring.precision(),
            s: self.ring.degree(),
            modulus: self.ring.modulus().to_vec(),
            entries: self.entries.iter().map(|row| row.iter().map(|e| e.coeffs.clone()).collect()).collect(),
        }
    }

    pub fn from_file(file: &MatrixFile) -> Result<Self, WittError> {
        let ring = if file.modulus.is_empty() {
            GaloisRing::new(file.p, file.precision, file.s)?
        } else if file.modulus.len() != file.s + 1 {
            return Err(WittError::InvalidParameters("modulus degree does not match s".into()));
        } else {
            GaloisRing::with_modulus(file.p, file.precision, file.modulus.clone())?
        };
        let entries = file
            .entries
            .iter()
            .map(|row| row.iter().map(|c| ring.element(c)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(&ring, entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, WittError> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|e| WittError::Parse(e.to_string()))?;
        Self::from_file(&file)
    }
}

/// `g · A · σ(g)⁻¹`.
pub fn sigma_conjugate(g: &FrobeniusMatrix, a: &FrobeniusMatrix) -> Result<FrobeniusMatrix, WittError> {
    g.check_compatible(a)?;
    let sg_inv = g.sigma().inverse()?;
    g.mul(a)?.mul(&sg_inv)
}
