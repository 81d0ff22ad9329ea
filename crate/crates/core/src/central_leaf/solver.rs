//! The root-group equation system for split `GL_n`.
//!
//! With `ẇ` the permutation matrix of `w`, `b = ẇ·diag(p^{μ′})` and
//! `n = 1 + X ∈ N(W)`, the condition `u = Ad(bσ)(n)·n⁻¹` reads entrywise
//!
//! `x_α = p^{⟨δ⁻¹α, μ′⟩} σ(x_{δ⁻¹α}) − u_α − (TX)_α`,  `T = u − 1`,
//!
//! where `(TX)_α` only involves roots closer to the Levi. Level by level the
//! system is a union of cyclic δ-orbit systems, each contracting once run
//! backwards (the orbit sum of exponents is `L⟨α, ν⟩ < 0`). So the solution
//! over `W[1/p]` is unique and the system is solvable over `W` iff that
//! solution is integral.

use std::collections::{BTreeMap, HashMap};

use super::{root_sets, LeafDatum, LeafError};
use crate::root_datum::{build_classical, GroupKind};
use crate::scalar::Scalar;
use crate::witt::{FrobeniusMatrix, GaloisRing, GaloisRingElement};

/// Matrix positions `(i, j)` of the roots `e_i − e_j`, if the datum is the
/// standard split `GL_n`.
fn gl_positions<T: Scalar>(ld: &LeafDatum<T>) -> Result<Vec<(usize, usize)>, LeafError> {
    let datum = ld.datum();
    let n = datum.rank();
    let unsupported = || LeafError::Unsupported("the equation system is implemented for split GL_n only".into());
    if build_classical(GroupKind::GL, n).ok().as_ref() != Some(datum) {
        return Err(unsupported());
    }
    datum
        .roots()
        .iter()
        .map(|a| Some((a.iter().position(|&x| x == 1)?, a.iter().position(|&x| x == -1)?)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(unsupported)
}

/// `P_w · diag(p^{μ′})` over the given ring; needs `μ′ ≥ 0`.
pub fn leaf_matrix<T: Scalar>(ld: &LeafDatum<T>, ring: &GaloisRing) -> Result<FrobeniusMatrix, LeafError> {
    gl_positions(ld)?;
    let exps = ld
        .mu_prime()
        .to_ints()
        .filter(|v| v.iter().all(|&x| x >= 0))
        .ok_or_else(|| LeafError::Unsupported(format!("{} has negative entries", ld.mu_prime())))?;
    let perm = FrobeniusMatrix::from_ints(ring, &ld.w().matrix)?;
    let diag = FrobeniusMatrix::diag_p_powers(ring, &exps.iter().map(|&x| x as u32).collect::<Vec<_>>());
    Ok(perm.mul(&diag)?)
}

/// Working precision that certifies slopes of [`leaf_matrix`]:
/// `s·Σ max(μ′_i, 0) + 1`. The polygon never rises above `val det`, which
/// is `s·Σ μ′_i` for the linearized product, so only the determinant must
/// stay below `p^N`.
pub fn leaf_precision<T: Scalar>(ld: &LeafDatum<T>, s: u32) -> u32 {
    let total: i64 = ld.mu_prime().to_ints().unwrap_or_default().iter().map(|&x| x.max(0)).sum();
    s * total as u32 + 1
}

/// `p^{-D} z` with `z` known modulo `p^prec`.
#[derive(Debug, Clone)]
struct Approx {
    z: GaloisRingElement,
    prec: u32,
}

struct Ctx<'a> {
    ring: &'a GaloisRing,
    scale: u32,
}

impl Ctx<'_> {
    fn precision_error(&self) -> LeafError {
        let n = self.ring.precision();
        LeafError::Precision { precision: n, suggested: n.saturating_mul(2) }
    }

    fn exact(&self, e: &GaloisRingElement) -> Approx {
        Approx { z: self.ring.mul_p_pow(e, self.scale), prec: self.ring.precision() }
    }

    fn zero(&self) -> Approx {
        self.exact(&self.ring.zero())
    }

    fn add(&self, a: &Approx, b: &Approx) -> Approx {
        Approx { z: self.ring.add(&a.z, &b.z), prec: a.prec.min(b.prec) }
    }

    fn sub(&self, a: &Approx, b: &Approx) -> Approx {
        Approx { z: self.ring.sub(&a.z, &b.z), prec: a.prec.min(b.prec) }
    }

    fn mul_exact(&self, a: &Approx, t: &GaloisRingElement) -> Approx {
        Approx { z: self.ring.mul(&a.z, t), prec: a.prec }
    }

    fn sigma(&self, a: &Approx, k: i64) -> Approx {
        Approx { z: self.ring.sigma_pow(&a.z, k), prec: a.prec }
    }

    /// Multiplication by `p^e`.
    fn shift(&self, a: &Approx, e: i64) -> Result<Approx, LeafError> {
        if e >= 0 {
            let e = e as u32;
            return Ok(Approx { z: self.ring.mul_p_pow(&a.z, e), prec: (a.prec + e).min(self.ring.precision()) });
        }
        let k = (-e) as u32;
        if a.prec < k {
            return Err(self.precision_error());
        }
        // a denominator beyond p^D means the scale was too small
        let z = self.ring.div_p_pow(&a.z, k).ok_or_else(|| self.precision_error())?;
        Ok(Approx { z, prec: a.prec - k })
    }

    fn is_zero(&self, a: &Approx) -> bool {
        self.ring.val(&a.z) >= a.prec
    }

    fn is_integral(&self, a: &Approx) -> Result<bool, LeafError> {
        let v = self.ring.val(&a.z);
        if v < a.prec.min(self.scale) {
            Ok(false)
        } else if a.prec >= self.scale {
            Ok(true)
        } else {
            Err(self.precision_error())
        }
    }
}

fn validate_tau<T: Scalar>(
    ld: &LeafDatum<T>,
    ring: &GaloisRing,
    tau: &BTreeMap<usize, GaloisRingElement>,
) -> Result<(), LeafError> {
    let sets = root_sets(ld);
    let q = ring.residue_size() as u128;
    for (&alpha, t) in tau {
        if !sets.r_mu_nu.contains(&alpha) {
            return Err(LeafError::InvalidTau(format!("root {:?} is not in R_mu_nu", ld.datum().roots().get(alpha))));
        }
        if t.coeffs.len() != ring.degree() {
            return Err(LeafError::InvalidTau("value from a different ring".into()));
        }
        if ring.pow(t, q) != *t {
            return Err(LeafError::InvalidTau(format!("value at root {:?} is not a Teichmüller lift", ld.datum().roots()[alpha])));
        }
    }
    Ok(())
}

/// Whether `u = Ad(bσ)(n)·n⁻¹` has a solution `n ∈ N(W)`, where `u` is the
/// product of the root-group elements `u_α(τ_α)` over `R_{μ,ν}`, ordered by
/// decreasing `⟨α, ν⟩` with δ-orbits kept together. `τ` maps root indices
/// to Teichmüller values; absent roots carry `0`.
pub fn solvability_predicate<T: Scalar>(
    ld: &LeafDatum<T>,
    ring: &GaloisRing,
    tau: &BTreeMap<usize, GaloisRingElement>,
) -> Result<bool, LeafError> {
    let pos = gl_positions(ld)?;
    validate_tau(ld, ring, tau)?;
    let n = ld.datum().rank();
    let orbits = ld.r_nu_orbits();
    let longest = orbits.iter().map(Vec::len).max().unwrap_or(0) as u32;
    let ctx = Ctx { ring, scale: 2 * longest + 2 };
    if ring.precision() <= 2 * ctx.scale {
        return Err(ctx.precision_error());
    }

    // u, multiplying factors in the prescribed order
    let level = |a: usize| ld.nu_pairing(a);
    let mut ordered: Vec<(usize, usize, usize)> = Vec::new(); // (orbit, slot, root)
    for (o, orbit) in orbits.iter().enumerate() {
        for (k, &a) in orbit.iter().enumerate() {
            if tau.contains_key(&a) {
                ordered.push((o, k, a));
            }
        }
    }
    ordered.sort_by(|x, y| level(y.2).cmp(&level(x.2)).then(x.0.cmp(&y.0)).then(x.1.cmp(&y.1)));
    let mut u: Vec<Vec<GaloisRingElement>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect();
    for &(_, _, a) in &ordered {
        let (i, j) = pos[a];
        let t = &tau[&a];
        // right multiplication by 1 + t E_ij: column j += t · column i
        for row in u.iter_mut() {
            let add = ring.mul(&row[i], t);
            row[j] = ring.add(&row[j], &add);
        }
    }

    let in_r_nu: HashMap<(usize, usize), usize> =
        orbits.iter().flatten().map(|&a| (pos[a], a)).collect();
    let mut x: HashMap<usize, Approx> = HashMap::new();
    let mut levels: Vec<T> = orbits.iter().map(|o| level(o[0])).collect();
    levels.sort_unstable_by(|a, b| b.cmp(a));
    levels.dedup();

    for lv in levels {
        let mut solved_here = Vec::new();
        for orbit in orbits.iter().filter(|o| level(o[0]) == lv) {
            let len = orbit.len();
            let mut c = Vec::with_capacity(len);
            for &a in orbit {
                let (i, j) = pos[a];
                let mut acc = ctx.exact(&u[i][j]);
                for (k, t) in u[i].iter().enumerate() {
                    if k == i || ring.is_zero(t) {
                        continue;
                    }
                    if let Some(&b) = in_r_nu.get(&(k, j)) {
                        let xb = x.get(&b).ok_or_else(|| LeafError::Consistency("commutator term out of order".into()))?;
                        acc = ctx.add(&acc, &ctx.mul_exact(xb, t));
                    }
                }
                c.push(acc);
            }
            // e[j] = ⟨α_{j−1}, μ′⟩
            let e: Vec<i64> = (0..len).map(|j| ld.mu_pairing(orbit[(j + len - 1) % len])).collect();
            let total: i64 = e.iter().sum();
            if total >= 0 {
                return Err(LeafError::Consistency("orbit exponent sum is not negative".into()));
            }
            // backwards once around from x_0 = 0
            let back = |start: &Approx| -> Result<Approx, LeafError> {
                let mut cur = start.clone();
                for step in (0..len).map(|s| (len - s) % len) {
                    let t = ctx.shift(&ctx.add(&cur, &c[step]), -e[step])?;
                    cur = ctx.sigma(&t, -1);
                }
                Ok(cur)
            };
            let a0 = back(&ctx.zero())?;
            let gain = (-total) as u32;
            let mut x0 = a0.clone();
            let mut term = a0;
            let mut m = 1u32;
            while m * gain < ring.precision() {
                term = ctx.shift(&ctx.sigma(&term, -(len as i64)), gain as i64)?;
                x0 = ctx.add(&x0, &term);
                m += 1;
            }
            let mut vals = vec![x0];
            for j in 1..len {
                let next = ctx.sub(&ctx.shift(&ctx.sigma(&vals[j - 1], 1), e[j])?, &c[j]);
                vals.push(next);
            }
            let closing = ctx.sub(&ctx.shift(&ctx.sigma(&vals[len - 1], 1), e[0])?, &c[0]);
            if !ctx.is_zero(&ctx.sub(&closing, &vals[0])) {
                return Err(LeafError::Consistency("orbit system did not close up".into()));
            }
            for (&a, v) in orbit.iter().zip(vals) {
                solved_here.push(a);
                x.insert(a, v);
            }
        }
        for a in solved_here {
            if !ctx.is_integral(&x[&a])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
