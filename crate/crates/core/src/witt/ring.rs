//! `W(F_q)/p^N` as `(Z/p^N)[X]/(f)` with `f` a monic lift of an irreducible
//! polynomial over `F_p`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::WittError;

/// A Galois ring element: coefficients of a polynomial of degree `< s`,
/// each reduced into `[0, p^N)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GaloisRingElement {
    pub coeffs: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisRing {
    p: u64,
    precision: u32,
    degree: usize,
    /// `p^N`.
    modulus_int: u64,
    /// Monic modulus, `degree + 1` coefficients, constant term first.
    modulus: Vec<u64>,
    /// `σ(X)^i` for `i < s`.
    frob_powers: Vec<GaloisRingElement>,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

// -- polynomials over F_p, constant term first, no trailing zeros ---------

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulp(a: u64, b: u64, p: u64) -> u64 {
    (a as u128 * b as u128 % p as u128) as u64
}

fn fp_inv(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = mulp(r, b, p);
        }
        b = mulp(b, b, p);
        e >>= 1;
    }
    r
}

fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let m = trim(m.to_vec());
    let lead_inv = fp_inv(*m.last().expect("nonzero modulus"), p);
    while a.len() >= m.len() {
        let shift = a.len() - m.len();
        let c = mulp(a.last().copied().unwrap_or(0), lead_inv, p);
        for (i, &mi) in m.iter().enumerate() {
            a[shift + i] = ((a[shift + i] as u128 + p as u128 - mulp(c, mi, p) as u128) % p as u128) as u64;
        }
        a = trim(a);
    }
    a
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + mulp(x, y, p) as u128) % p as u128) as u64;
        }
    }
    fp_rem(&out, m, p)
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Irreducibility over `F_p` of a monic `f` of degree `s`: no factor of degree
/// `d ≤ s/2`, tested via `gcd(f, X^{p^d} − X)`.
fn fp_irreducible(f: &[u64], p: u64) -> bool {
    let s = f.len() - 1;
    if s == 1 {
        return true;
    }
    let mut power = vec![0, 1];
    for _ in 1..=s / 2 {
        let (mut next, mut base, mut e) = (vec![1u64], power.clone(), p);
        while e > 0 {
            if e & 1 == 1 {
                next = fp_mulmod(&next, &base, f, p);
            }
            base = fp_mulmod(&base, &base, f, p);
            e >>= 1;
        }
        power = next;
        let mut diff = power.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        if fp_gcd(f, &diff, p).len() > 1 {
            return false;
        }
    }
    true
}

/// The least monic irreducible polynomial of degree `s` over `F_p`, ordered
/// lexicographically by `(c_{s-1}, ..., c_0)`.
pub fn least_irreducible(p: u64, s: usize) -> Vec<u64> {
    let total = p.pow(s as u32);
    for code in 0..total {
        let mut f = vec![0u64; s + 1];
        let mut c = code;
        for coeff in f.iter_mut().take(s) {
            *coeff = c % p;
            c /= p;
        }
        f[s] = 1;
        if (s == 1 || f[0] != 0) && fp_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl GaloisRing {
    pub fn new(p: u64, precision: u32, degree: usize) -> Result<Self, WittError> {
        if !is_prime(p) || degree == 0 {
            return Err(WittError::InvalidParameters(format!("p = {p}, s = {degree}")));
        }
        let modulus = least_irreducible(p, degree);
        Self::with_modulus(p, precision, modulus)
    }

    pub fn with_modulus(p: u64, precision: u32, modulus: Vec<u64>) -> Result<Self, WittError> {
        let bad = |why: &str| WittError::InvalidParameters(why.to_string());
        if !is_prime(p) {
            return Err(bad("p is not prime"));
        }
        if precision == 0 {
            return Err(bad("precision must be positive"));
        }
        let modulus_int = p.checked_pow(precision).ok_or_else(|| bad("p^N does not fit in 64 bits"))?;
        if modulus.len() < 2 || modulus.last() != Some(&1) {
            return Err(bad("modulus must be monic of positive degree"));
        }
        if modulus.iter().any(|&c| c >= modulus_int) {
            return Err(bad("modulus coefficients must lie in [0, p^N)"));
        }
        let reduced: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        if !fp_irreducible(&reduced, p) {
            return Err(bad("modulus is not irreducible mod p"));
        }
        let degree = modulus.len() - 1;
        if p.checked_pow(degree as u32).is_none() {
            return Err(bad("residue field size does not fit in 64 bits"));
        }
        let mut ring = GaloisRing { p, precision, degree, modulus_int, modulus, frob_powers: Vec::new() };
        ring.frob_powers = ring.compute_frobenius();
        Ok(ring)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `p^N`.
    pub fn characteristic(&self) -> u64 {
        self.modulus_int
    }

    /// Residue field size `q = p^s`.
    pub fn residue_size(&self) -> u64 {
        self.p.pow(self.degree as u32)
    }

    fn addm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.modulus_int as u128) as u64
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus_int as u128) as u64
    }

    pub fn zero(&self) -> GaloisRingElement {
        GaloisRingElement { coeffs: vec![0; self.degree] }
    }

    pub fn one(&self) -> GaloisRingElement {
        self.from_int(1)
    }

    pub fn from_int(&self, x: i64) -> GaloisRingElement {
        let m = self.modulus_int as i128;
        let mut e = self.zero();
        e.coeffs[0] = (x as i128).rem_euclid(m) as u64;
        e
    }

    /// The class of `X`.
    pub fn generator(&self) -> GaloisRingElement {
        let mut e = self.zero();
        if self.degree == 1 {
            e.coeffs[0] = (self.modulus_int - self.modulus[0]) % self.modulus_int;
        } else {
            e.coeffs[1] = 1;
        }
        e
    }

    /// Validates and reduces raw coefficients.
    pub fn element(&self, coeffs: &[u64]) -> Result<GaloisRingElement, WittError> {
        if coeffs.len() != self.degree {
            return Err(WittError::InvalidParameters(format!("expected {} coefficients, got {}", self.degree, coeffs.len())));
        }
        if coeffs.iter().any(|&c| c >= self.modulus_int) {
            return Err(WittError::InvalidParameters("coefficient out of range".into()));
        }
        Ok(GaloisRingElement { coeffs: coeffs.to_vec() })
    }

    pub fn add(&self, a: &GaloisRingElement, b: &GaloisRingElement) -> GaloisRingElement {
        GaloisRingElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| self.addm(x, y)).collect() }
    }

    pub fn neg(&self, a: &GaloisRingElement) -> GaloisRingElement {
        GaloisRingElement { coeffs: a.coeffs.iter().map(|&x| (self.modulus_int - x) % self.modulus_int).collect() }
    }

    pub fn sub(&self, a: &GaloisRingElement, b: &GaloisRingElement) -> GaloisRingElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &GaloisRingElement, b: &GaloisRingElement) -> GaloisRingElement {
        let s = self.degree;
        let mut prod = vec![0u64; 2 * s - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = self.addm(prod[i + j], self.mulm(x, y));
            }
        }
        // reduce with X^s = −Σ f_i X^i
        for k in (s..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..s {
                let t = self.mulm(c, self.modulus[i]);
                prod[k - s + i] = self.addm(prod[k - s + i], self.modulus_int - t);
            }
        }
        prod.truncate(s);
        GaloisRingElement { coeffs: prod }
    }

    pub fn scale(&self, a: &GaloisRingElement, c: i64) -> GaloisRingElement {
        self.mul(a, &self.from_int(c))
    }

    pub fn pow(&self, a: &GaloisRingElement, mut e: u128) -> GaloisRingElement {
        let mut base = a.clone();
        let mut out = self.one();
        while e > 0 {
            if e & 1 == 1 {
                out = self.mul(&out, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        out
    }

    pub fn is_zero(&self, a: &GaloisRingElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    /// Largest `k ≤ N` with `p^k | a`; `N` for zero.
    pub fn val(&self, a: &GaloisRingElement) -> u32 {
        a.coeffs
            .iter()
            .map(|&c| {
                if c == 0 {
                    return self.precision;
                }
                let mut k = 0;
                let mut c = c;
                while c % self.p == 0 {
                    c /= self.p;
                    k += 1;
                }
                k
            })
            .min()
            .unwrap_or(self.precision)
    }

    pub fn is_unit(&self, a: &GaloisRingElement) -> bool {
        self.val(a) == 0
    }

    pub fn inv(&self, a: &GaloisRingElement) -> Result<GaloisRingElement, WittError> {
        if !self.is_unit(a) {
            return Err(WittError::NotInvertible);
        }
        // inverse mod p, then Newton steps y ← y(2 − ay)
        let q = self.residue_size() as u128;
        let mut y = self.pow(a, q - 2);
        let two = self.from_int(2);
        let mut correct = 1u32;
        while correct < self.precision {
            y = self.mul(&y, &self.sub(&two, &self.mul(a, &y)));
            correct *= 2;
        }
        debug_assert_eq!(self.mul(a, &y), self.one());
        Ok(y)
    }

    /// Multiplies by `p^k`.
    pub fn mul_p_pow(&self, a: &GaloisRingElement, k: u32) -> GaloisRingElement {
        if k >= self.precision {
            return self.zero();
        }
        self.mul(a, &self.from_u64(self.p.pow(k)))
    }

    /// Exact division by `p^k` of a representative divisible by `p^k`; the
    /// top `k` digits of the result are unknown and returned as zero.
    pub fn div_p_pow(&self, a: &GaloisRingElement, k: u32) -> Option<GaloisRingElement> {
        if k == 0 {
            return Some(a.clone());
        }
        if k > self.precision {
            return None;
        }
        let d = self.p.pow(k);
        if a.coeffs.iter().any(|&c| c % d != 0) {
            return None;
        }
        Some(GaloisRingElement { coeffs: a.coeffs.iter().map(|&c| c / d).collect() })
    }

    fn evaluate_modulus(&self, y: &GaloisRingElement) -> (GaloisRingElement, GaloisRingElement) {
        // Horner for f(y) and f'(y)
        let mut f = self.zero();
        let mut df = self.zero();
        for &c in self.modulus.iter().rev() {
            df = self.add(&self.mul(&df, y), &f);
            f = self.add(&self.mul(&f, y), &self.from_u64(c));
        }
        (f, df)
    }

    fn compute_frobenius(&self) -> Vec<GaloisRingElement> {
        // σ(X): the root of f congruent to X^p, by Hensel lifting.
        let x = self.generator();
        let mut y = self.pow(&x, self.p as u128);
        for _ in 0..=self.precision {
            let (f, df) = self.evaluate_modulus(&y);
            if self.is_zero(&f) {
                break;
            }
            let step = self.mul(&f, &self.inv(&df).expect("separable modulus"));
            y = self.sub(&y, &step);
        }
        let mut powers = Vec::with_capacity(self.degree);
        let mut cur = self.one();
        for _ in 0..self.degree {
            powers.push(cur.clone());
            cur = self.mul(&cur, &y);
        }
        powers
    }

    /// The Frobenius lift.
    pub fn sigma(&self, a: &GaloisRingElement) -> GaloisRingElement {
        let mut out = self.zero();
        for (c, xp) in a.coeffs.iter().zip(&self.frob_powers) {
            if *c != 0 {
                out = self.add(&out, &self.mul(xp, &self.from_u64(*c)));
            }
        }
        out
    }

    fn from_u64(&self, c: u64) -> GaloisRingElement {
        let mut e = self.zero();
        e.coeffs[0] = c % self.modulus_int;
        e
    }

    /// `σ^k` for any integer `k` (σ has order `s`).
    pub fn sigma_pow(&self, a: &GaloisRingElement, k: i64) -> GaloisRingElement {
        let k = k.rem_euclid(self.degree as i64);
        (0..k).fold(a.clone(), |acc, _| self.sigma(&acc))
    }

    /// Teichmüller lift of the residue of `a`: `a^{q^{N-1}}`.
    pub fn teichmuller(&self, a: &GaloisRingElement) -> GaloisRingElement {
        let q = self.residue_size() as u128;
        (1..self.precision).fold(self.reduce_mod_p(a), |acc, _| self.pow(&acc, q))
    }

    fn reduce_mod_p(&self, a: &GaloisRingElement) -> GaloisRingElement {
        GaloisRingElement { coeffs: a.coeffs.iter().map(|c| c % self.p).collect() }
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> GaloisRingElement {
        GaloisRingElement { coeffs: (0..self.degree).map(|_| rng.gen_range(0..self.modulus_int)).collect() }
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> GaloisRingElement {
        loop {
            let e = self.random_element(rng);
            if self.is_unit(&e) {
                return e;
            }
        }
    }

    /// Teichmüller lift of a uniformly random nonzero residue.
    pub fn random_teichmuller_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> GaloisRingElement {
        let u = self.random_unit(rng);
        self.teichmuller(&u)
    }
}
