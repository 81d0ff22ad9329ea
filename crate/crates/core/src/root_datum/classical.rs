//! Builders for the classical root data in standard coordinates.

use std::fmt;
use std::str::FromStr;

use super::{RootDatum, RootDatumError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    GL,
    SL,
    PGL,
    /// Symplectic similitudes; the similitude coordinate comes last.
    GSp,
    Sp,
    SO,
    /// Unramified unitary group: `GL_n` data with the Frobenius acting by
    /// `-w_0` on the character lattice.
    Unitary,
}

impl GroupKind {
    fn prefix(self) -> &'static str {
        match self {
            GroupKind::GL => "GL",
            GroupKind::SL => "SL",
            GroupKind::PGL => "PGL",
            GroupKind::GSp => "GSp",
            GroupKind::Sp => "Sp",
            GroupKind::SO => "SO",
            GroupKind::Unitary => "U",
        }
    }
}

/// A classical group name with its matrix size, e.g. `GL4` or `GSp4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub n: usize,
}

impl GroupSpec {
    pub fn new(kind: GroupKind, n: usize) -> Self {
        GroupSpec { kind, n }
    }

    pub fn build(&self) -> Result<RootDatum, RootDatumError> {
        build_classical(self.kind, self.n)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.prefix(), self.n)
    }
}

impl FromStr for GroupSpec {
    type Err = RootDatumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit()).unwrap_or(s.len());
        let (name, digits) = s.split_at(split);
        let kind = match name.to_ascii_lowercase().trim_end_matches(['_', '-']) {
            "gl" => GroupKind::GL,
            "sl" => GroupKind::SL,
            "pgl" => GroupKind::PGL,
            "gsp" => GroupKind::GSp,
            "sp" => GroupKind::Sp,
            "so" => GroupKind::SO,
            "u" | "gu" | "unitary" | "unitary-unramified" => GroupKind::Unitary,
            _ => return Err(RootDatumError::Unsupported(s.to_string())),
        };
        let n = if digits.is_empty() {
            0
        } else {
            digits.parse().map_err(|_| RootDatumError::Unsupported(s.to_string()))?
        };
        Ok(GroupSpec { kind, n })
    }
}

fn unit(rank: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; rank];
    v[i] = c;
    v
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

struct Builder {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
}

impl Builder {
    fn new(rank: usize) -> Self {
        Builder { rank, roots: Vec::new(), coroots: Vec::new() }
    }

    fn push_pm(&mut self, root: Vec<i64>, coroot: Vec<i64>) {
        self.roots.push(neg(&root));
        self.coroots.push(neg(&coroot));
        self.roots.push(root);
        self.coroots.push(coroot);
    }

    fn find(&self, root: &[i64]) -> usize {
        self.roots.iter().position(|r| r == root).expect("simple root present")
    }

    fn finish(self, name: String, simple: Vec<Vec<i64>>, sigma: Option<Vec<Vec<i64>>>) -> Result<RootDatum, RootDatumError> {
        let simple = simple.iter().map(|r| self.find(r)).collect();
        RootDatum::new(Some(name), self.rank, self.roots, self.coroots, simple, sigma)
    }
}

fn type_a_standard(n: usize) -> (Builder, Vec<Vec<i64>>) {
    let mut b = Builder::new(n);
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let r = add(&unit(n, i, 1), &unit(n, j, -1));
                b.roots.push(r.clone());
                b.coroots.push(r);
            }
        }
    }
    let simple = (0..n.saturating_sub(1))
        .map(|i| add(&unit(n, i, 1), &unit(n, i + 1, -1)))
        .collect();
    (b, simple)
}

/// `A_{n-1}` in the basis where one lattice is spanned by the simple
/// (co)roots; `simply_connected` picks which one.
fn type_a_semisimple(n: usize, simply_connected: bool) -> (Builder, Vec<Vec<i64>>) {
    let r = n - 1;
    let cartan = |k: usize, l: usize| -> i64 {
        if k == l {
            2
        } else if k.abs_diff(l) == 1 {
            -1
        } else {
            0
        }
    };
    let mut b = Builder::new(r);
    for i in 0..n {
        for j in i + 1..n {
            // e_i - e_j = alpha_i + ... + alpha_{j-1}
            let indicator: Vec<i64> = (0..r).map(|l| i64::from(l >= i && l < j)).collect();
            let cartan_sum: Vec<i64> = (0..r).map(|l| (i..j).map(|k| cartan(k, l)).sum()).collect();
            if simply_connected {
                b.push_pm(cartan_sum, indicator);
            } else {
                b.push_pm(indicator, cartan_sum);
            }
        }
    }
    let simple = (0..r)
        .map(|k| {
            if simply_connected {
                (0..r).map(|l| cartan(k, l)).collect()
            } else {
                unit(r, k, 1)
            }
        })
        .collect();
    (b, simple)
}

pub fn build_classical(kind: GroupKind, n: usize) -> Result<RootDatum, RootDatumError> {
    let spec = GroupSpec { kind, n };
    let name = spec.to_string();
    let bad = || RootDatumError::Unsupported(format!("{name}: invalid size"));
    match kind {
        GroupKind::GL => {
            if n == 0 {
                return Err(bad());
            }
            let (b, simple) = type_a_standard(n);
            b.finish(name, simple, None)
        }
        GroupKind::Unitary => {
            if n == 0 {
                return Err(bad());
            }
            let (b, simple) = type_a_standard(n);
            let sigma = (0..n)
                .map(|r| (0..n).map(|k| if k == n - 1 - r { -1 } else { 0 }).collect())
                .collect();
            b.finish(name, simple, Some(sigma))
        }
        GroupKind::SL | GroupKind::PGL => {
            if n < 2 {
                return Err(bad());
            }
            let (b, simple) = type_a_semisimple(n, kind == GroupKind::SL);
            b.finish(name, simple, None)
        }
        GroupKind::GSp => {
            if n < 2 || n % 2 != 0 {
                return Err(bad());
            }
            let m = n / 2;
            let rank = m + 1;
            let sim = unit(rank, m, 1);
            let mut b = Builder::new(rank);
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        let r = add(&unit(rank, i, 1), &unit(rank, j, -1));
                        b.roots.push(r.clone());
                        b.coroots.push(r);
                    }
                }
            }
            for i in 0..m {
                for j in i + 1..m {
                    let r = add(&add(&unit(rank, i, 1), &unit(rank, j, 1)), &neg(&sim));
                    let c = add(&unit(rank, i, 1), &unit(rank, j, 1));
                    b.push_pm(r, c);
                }
            }
            for i in 0..m {
                b.push_pm(add(&unit(rank, i, 2), &neg(&sim)), unit(rank, i, 1));
            }
            let mut simple: Vec<Vec<i64>> = (0..m - 1)
                .map(|i| add(&unit(rank, i, 1), &unit(rank, i + 1, -1)))
                .collect();
            simple.push(add(&unit(rank, m - 1, 2), &neg(&sim)));
            b.finish(name, simple, None)
        }
        GroupKind::Sp | GroupKind::SO => {
            let (m, short_long) = match kind {
                GroupKind::Sp if n >= 2 && n % 2 == 0 => (n / 2, Some(2)),
                GroupKind::SO if n >= 3 && n % 2 == 1 => (n / 2, Some(1)),
                GroupKind::SO if n >= 4 => (n / 2, None),
                _ => return Err(bad()),
            };
            let mut b = Builder::new(m);
            for i in 0..m {
                for j in 0..m {
                    if i != j {
                        let r = add(&unit(m, i, 1), &unit(m, j, -1));
                        b.roots.push(r.clone());
                        b.coroots.push(r);
                    }
                }
            }
            for i in 0..m {
                for j in i + 1..m {
                    let r = add(&unit(m, i, 1), &unit(m, j, 1));
                    b.push_pm(r.clone(), r);
                }
            }
            if let Some(c) = short_long {
                // Sp: long roots 2e_i with coroots e_i; SO odd: short roots e_i with coroots 2e_i
                for i in 0..m {
                    b.push_pm(unit(m, i, c), unit(m, i, 3 - c));
                }
            }
            let mut simple: Vec<Vec<i64>> = (0..m - 1)
                .map(|i| add(&unit(m, i, 1), &unit(m, i + 1, -1)))
                .collect();
            match short_long {
                Some(c) => simple.push(unit(m, m - 1, c)),
                None => simple.push(add(&unit(m, m - 2, 1), &unit(m, m - 1, 1))),
            }
            b.finish(name, simple, None)
        }
    }
}
