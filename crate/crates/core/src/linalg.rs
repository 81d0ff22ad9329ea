//! Small dense linear algebra over exact scalars and over the integers.
//!
//! Matrices are row-major `Vec<Vec<_>>`. Everything here is sized for root
//! data of rank at most a dozen, so there is no attempt at blocking or
//! in-place tricks.

use crate::scalar::Scalar;

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn mat_vec_q<T: Scalar>(a: &IntMatrix, v: &[T]) -> Vec<T> {
    a.iter()
        .map(|row| crate::scalar::dot_int(row, v))
        .collect()
}

pub fn transpose<R: Clone>(a: &[Vec<R>]) -> Vec<Vec<R>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Multiplicative order of a square integer matrix, if it is at most `limit`.
pub fn matrix_order(a: &IntMatrix, limit: usize) -> Option<usize> {
    let id = identity(a.len());
    let mut power = a.clone();
    for k in 1..=limit {
        if power == id {
            return Some(k);
        }
        power = mat_mul(&power, a);
    }
    None
}

pub fn mat_pow(a: &IntMatrix, e: usize) -> IntMatrix {
    let mut out = identity(a.len());
    for _ in 0..e {
        out = mat_mul(&out, a);
    }
    out
}

/// Reduced row echelon form; returns the pivot columns.
fn rref<T: Scalar>(m: &mut [Vec<T>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = T::one() / m[r][c].clone();
        for x in m[r].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    let delta = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Some solution of `a x = b` (free variables set to zero), or `None`.
pub fn solve<T: Scalar>(a: &[Vec<T>], b: &[T]) -> Option<Vec<T>> {
    let n = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![T::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

pub fn rank<T: Scalar>(a: &[Vec<T>]) -> usize {
    let mut m = a.to_vec();
    rref(&mut m).len()
}

pub fn inverse<T: Scalar>(a: &[Vec<T>]) -> Option<Vec<Vec<T>>> {
    let n = a.len();
    let mut aug: Vec<Vec<T>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { T::one() } else { T::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Smith normal form `U A V = D` of an integer matrix, keeping `U` and `U⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries, each dividing the next, all positive.
    pub diagonal: Vec<i128>,
    pub u: Vec<Vec<i128>>,
    pub u_inv: Vec<Vec<i128>>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

pub fn smith_normal_form(a: &[Vec<i128>], rows: usize) -> SmithForm {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = (0..rows)
        .map(|i| (0..rows).map(|j| i128::from(i == j)).collect())
        .collect();
    let mut u_inv = u.clone();

    // row_i += q * row_t, mirrored on U and (inversely) on U⁻¹.
    fn add_row(m: &mut [Vec<i128>], u: &mut [Vec<i128>], ui: &mut [Vec<i128>], i: usize, t: usize, q: i128) {
        for j in 0..m[i].len() {
            m[i][j] += q * m[t][j];
        }
        for j in 0..u[i].len() {
            u[i][j] += q * u[t][j];
        }
        for row in ui.iter_mut() {
            row[t] -= q * row[i];
        }
    }
    fn swap_rows(m: &mut [Vec<i128>], u: &mut [Vec<i128>], ui: &mut [Vec<i128>], i: usize, j: usize) {
        m.swap(i, j);
        u.swap(i, j);
        for row in ui.iter_mut() {
            row.swap(i, j);
        }
    }

    let mut diagonal = Vec::new();
    for t in 0..rows.min(cols) {
        // smallest nonzero pivot in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        swap_rows(&mut m, &mut u, &mut u_inv, t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t] != 0 {
                    let q = m[i][t].div_euclid(m[t][t]);
                    add_row(&mut m, &mut u, &mut u_inv, i, t, -q);
                    if m[i][t] != 0 {
                        dirty = true;
                        if m[i][t].abs() < m[t][t].abs() {
                            swap_rows(&mut m, &mut u, &mut u_inv, t, i);
                        }
                    }
                }
            }
            for j in t + 1..cols {
                if m[t][j] != 0 {
                    let q = m[t][j].div_euclid(m[t][t]);
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    if m[t][j] != 0 {
                        dirty = true;
                        if m[t][j].abs() < m[t][t].abs() {
                            for row in m.iter_mut() {
                                row.swap(t, j);
                            }
                        }
                    }
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % m[t][t] != 0));
            match bad {
                Some(i) => add_row(&mut m, &mut u, &mut u_inv, t, i, 1),
                None => break,
            }
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
            for row in u_inv.iter_mut() {
                row[t] = -row[t];
            }
        }
        diagonal.push(m[t][t]);
    }

    // Canonical basis of the annihilator rows: Hermite form of rows rank.. of U.
    let r = diagonal.len();
    hermite_rows(&mut u, &mut u_inv, r);
    SmithForm { diagonal, u, u_inv }
}

/// Brings rows `start..` of `u` to row Hermite normal form with unimodular
/// row operations, mirroring them on `u_inv` so the pair stays inverse.
fn hermite_rows(u: &mut [Vec<i128>], u_inv: &mut [Vec<i128>], start: usize) {
    let rows = u.len();
    let cols = u.first().map_or(0, Vec::len);
    let mut r = start;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let Some(p) = (r..rows)
                .filter(|&i| u[i][c] != 0)
                .min_by_key(|&i| u[i][c].abs())
            else {
                break;
            };
            u.swap(r, p);
            for row in u_inv.iter_mut() {
                row.swap(r, p);
            }
            let mut done = true;
            for i in r + 1..rows {
                if u[i][c] != 0 {
                    let q = u[i][c].div_euclid(u[r][c]);
                    for j in 0..cols {
                        u[i][j] -= q * u[r][j];
                    }
                    for row in u_inv.iter_mut() {
                        row[r] += q * row[i];
                    }
                    if u[i][c] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if u[r][c] == 0 {
            continue;
        }
        if u[r][c] < 0 {
            for x in u[r].iter_mut() {
                *x = -*x;
            }
            for row in u_inv.iter_mut() {
                row[r] = -row[r];
            }
        }
        for i in start..r {
            let q = u[i][c].div_euclid(u[r][c]);
            if q != 0 {
                for j in 0..cols {
                    u[i][j] -= q * u[r][j];
                }
                for row in u_inv.iter_mut() {
                    row[r] += q * row[i];
                }
            }
        }
        r += 1;
    }
}

/// Whether `b x = y` has an integer solution.
pub fn integer_solvable(b: &[Vec<i128>], y: &[i128]) -> bool {
    let rows = y.len();
    if b.first().map_or(true, Vec::is_empty) {
        return y.iter().all(|&v| v == 0);
    }
    let snf = smith_normal_form(b, rows);
    let uy: Vec<i128> = snf
        .u
        .iter()
        .map(|row| row.iter().zip(y).map(|(a, b)| a * b).sum())
        .collect();
    uy.iter().enumerate().all(|(i, &v)| match snf.diagonal.get(i) {
        Some(&d) => v % d == 0,
        None => v == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type Q = Ratio<i64>;

    fn q(n: i64) -> Q {
        Q::from_integer(n)
    }

    fn mul128(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let cols = b.first().map_or(0, Vec::len);
        a.iter()
            .map(|row| (0..cols).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect())
            .collect()
    }

    #[test]
    fn solve_and_inverse() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let x = solve(&a, &[q(3), q(5)]).unwrap();
        assert_eq!(x, vec![Q::new(4, 5), Q::new(7, 5)]);
        let inv = inverse(&a).unwrap();
        assert_eq!(inv[0][0], Q::new(3, 5));
        assert!(solve(&[vec![q(1), q(1)], vec![q(2), q(2)]], &[q(1), q(3)]).is_none());
        assert_eq!(rank(&[vec![q(1), q(1)], vec![q(2), q(2)]]), 1);
    }

    #[test]
    fn smith_of_a2_cartan() {
        // Cartan matrix of A2: cokernel Z/3
        let a = vec![vec![2, -1], vec![-1, 2]];
        let snf = smith_normal_form(&a, 2);
        assert_eq!(snf.diagonal, vec![1, 3]);
        let id = mul128(&snf.u, &snf.u_inv);
        assert_eq!(id, vec![vec![1, 0], vec![0, 1]]);
    }

    #[test]
    fn smith_free_part_is_hermite() {
        // relations e1-e2, e2-e3 in Z^3: quotient Z via the sum functional
        let a = vec![vec![1, 0], vec![-1, 1], vec![0, -1]];
        let snf = smith_normal_form(&a, 3);
        assert_eq!(snf.diagonal, vec![1, 1]);
        assert_eq!(snf.u[2], vec![1, 1, 1]);
        let id = mul128(&snf.u, &snf.u_inv);
        assert_eq!(id, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
    }

    #[test]
    fn integer_solvability() {
        assert!(integer_solvable(&[vec![2, 0], vec![0, 3]], &[4, 9]));
        assert!(!integer_solvable(&[vec![2, 0], vec![0, 3]], &[1, 9]));
        assert!(integer_solvable(&[vec![2, 3]], &[1]));
        assert!(!integer_solvable(&[vec![2], vec![4]], &[2, 2]));
    }

    #[test]
    fn orders() {
        let swap = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(matrix_order(&swap, 10), Some(2));
        assert_eq!(matrix_order(&vec![vec![1, 1], vec![0, 1]], 10), None);
    }
}
