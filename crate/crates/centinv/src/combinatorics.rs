//! Partitions, block pairings, invariant degree sequences, compositions and
//! the closed-form invariant counts.
//!
//! Block indices are 1-based throughout, matching the labelling of Jordan
//! blocks everywhere else in the crate.

use crate::{Error, Result};
use serde::Serialize;
use std::fmt;

/// An ordered partition `λ_1 ≥ λ_2 ≥ … ≥ λ_n ≥ 1` of `N`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("empty".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("zero part".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts must be nonincreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    /// Parse comma-separated text such as "3,2,1".
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part '{t}'")))
            })
            .collect::<Result<_>>()?;
        Partition::new(parts)
    }

    /// Number of blocks `n`.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Size of block `i` (1-based).
    pub fn part(&self, i: usize) -> usize {
        self.parts[i - 1]
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Total `N = Σ λ_i`.
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of odd parts.
    pub fn odd_count(&self) -> usize {
        self.parts.iter().filter(|&&x| x % 2 == 1).count()
    }

    /// `Σ_{k<i} λ_k`, the starting offset of block `i` in the module basis.
    pub fn offset(&self, i: usize) -> usize {
        self.parts[..i - 1].iter().sum()
    }

    /// All partitions of every `1 ≤ N ≤ max_total`, in a fixed order.
    pub fn enumerate_up_to(max_total: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        for n in 1..=max_total {
            let mut cur = Vec::new();
            gen_partitions(n, n, &mut cur, &mut out);
        }
        out
    }
}

fn gen_partitions(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rem == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for next in (1..=rem.min(max)).rev() {
        cur.push(next);
        gen_partitions(rem - next, next, cur, out);
        cur.pop();
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// Which classical group the construction lives in.
///
/// `Sp` is the skew case (`ε = -1`), `So` the symmetric case (`ε = +1`).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum EpsilonCase {
    Gl,
    Sp,
    So,
}

impl EpsilonCase {
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gl" => Ok(EpsilonCase::Gl),
            "sp" => Ok(EpsilonCase::Sp),
            "so" => Ok(EpsilonCase::So),
            other => Err(Error::InvalidCase(other.into())),
        }
    }

    /// The sign `ε` with `(u, v) = ε (v, u)`; `None` for `Gl`.
    pub fn epsilon(&self) -> Option<i64> {
        match self {
            EpsilonCase::Gl => None,
            EpsilonCase::Sp => Some(-1),
            EpsilonCase::So => Some(1),
        }
    }

    /// Is `λ` the Jordan type of a nilpotent element for this case?
    ///
    /// Blocks with `ε(-1)^{λ_i} = +1` must pair with an equal-sized partner,
    /// so for `Sp` odd parts need even multiplicity and for `So` even parts
    /// do.
    pub fn admits(&self, lambda: &Partition) -> bool {
        match self {
            EpsilonCase::Gl => true,
            EpsilonCase::Sp => lambda
                .parts()
                .iter()
                .filter(|&&x| x % 2 == 1)
                .fold(std::collections::BTreeMap::new(), |mut m, &x| {
                    *m.entry(x).or_insert(0usize) += 1;
                    m
                })
                .values()
                .all(|&c| c % 2 == 0),
            EpsilonCase::So => lambda
                .parts()
                .iter()
                .filter(|&&x| x % 2 == 0)
                .fold(std::collections::BTreeMap::new(), |mut m, &x| {
                    *m.entry(x).or_insert(0usize) += 1;
                    m
                })
                .values()
                .all(|&c| c % 2 == 0),
        }
    }
}

impl fmt::Display for EpsilonCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EpsilonCase::Gl => write!(f, "gl"),
            EpsilonCase::Sp => write!(f, "sp"),
            EpsilonCase::So => write!(f, "so"),
        }
    }
}

/// The pairing `i ↦ i'` on blocks induced by the bilinear form.
///
/// `i` is a fixed point exactly when `ε(-1)^{λ_i} = -1`; otherwise blocks of
/// equal size pair consecutively, left to right (a fixed canonical choice;
/// only `i' ∈ {i-1, i, i+1}` is forced).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Involution {
    pairing: Vec<usize>, // 1-based; pairing[i-1] = i'
}

impl Involution {
    pub fn of(&self, i: usize) -> usize {
        self.pairing[i - 1]
    }

    pub fn is_fixed(&self, i: usize) -> bool {
        self.of(i) == i
    }

    /// `l_i = 1` for fixed blocks, `2` for paired blocks.
    pub fn l(&self, i: usize) -> usize {
        if self.is_fixed(i) {
            1
        } else {
            2
        }
    }

    pub fn pairs(&self) -> &[usize] {
        &self.pairing
    }
}

/// Build the involution for `(λ, case)`, scanning left to right.
pub fn involution(lambda: &Partition, case: EpsilonCase) -> Result<Involution> {
    let eps = case
        .epsilon()
        .ok_or_else(|| Error::InvalidCase("involution needs sp or so".into()))?;
    let n = lambda.len();
    let mut pairing = vec![0usize; n];
    let mut i = 1;
    while i <= n {
        let li = lambda.part(i);
        let fixed = eps * if li.is_multiple_of(2) { 1 } else { -1 } == -1;
        if fixed {
            pairing[i - 1] = i;
            i += 1;
        } else {
            if i + 1 > n || lambda.part(i + 1) != li {
                return Err(Error::NoValidInvolution(format!(
                    "part λ_{i} = {li} has no equal partner for case {case}"
                )));
            }
            pairing[i - 1] = i + 1;
            pairing[i] = i;
            i += 2;
        }
    }
    let inv = Involution { pairing };
    debug_assert!((1..=n).all(|k| inv.of(inv.of(k)) == k));
    Ok(inv)
}

/// The degree sequence `(d_1, …, d_N)`: block 1 contributes `λ_1` ones,
/// block 2 contributes `λ_2` twos, and so on.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DegreeSequence {
    d: Vec<usize>,
}

impl DegreeSequence {
    pub fn values(&self) -> &[usize] {
        &self.d
    }

    /// `d_r` for 1-based `r`.
    pub fn degree(&self, r: usize) -> usize {
        self.d[r - 1]
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }
}

pub fn degree_sequence(lambda: &Partition) -> DegreeSequence {
    let mut d = Vec::with_capacity(lambda.total());
    for (i, &li) in lambda.parts().iter().enumerate() {
        d.extend(std::iter::repeat_n(i + 1, li));
    }
    DegreeSequence { d }
}

/// A composition `μ ≤ λ` entrywise, with its support.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Composition {
    mu: Vec<usize>,
}

impl Composition {
    pub fn entries(&self) -> &[usize] {
        &self.mu
    }

    /// `μ_i` for 1-based `i`.
    pub fn entry(&self, i: usize) -> usize {
        self.mu[i - 1]
    }

    pub fn weight(&self) -> usize {
        self.mu.iter().sum()
    }

    /// Support indices `i_1 < i_2 < …` (1-based).
    pub fn support(&self) -> Vec<usize> {
        self.mu
            .iter()
            .enumerate()
            .filter(|(_, &m)| m > 0)
            .map(|(k, _)| k + 1)
            .collect()
    }
}

/// All compositions `μ` of `λ` with `|μ| = r` and `l(μ) = d`, in
/// lexicographic order of the entry vector.
pub fn compositions(lambda: &Partition, r: usize, d: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(lambda.len());
    gen_compositions(lambda, 0, r, d, &mut cur, &mut out);
    out
}

fn gen_compositions(
    lambda: &Partition,
    idx: usize,
    rem: usize,
    nonzero_left: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Composition>,
) {
    let n = lambda.len();
    if idx == n {
        if rem == 0 && nonzero_left == 0 {
            out.push(Composition { mu: cur.clone() });
        }
        return;
    }
    // prune: not enough slots left for the remaining weight or support
    let slots = n - idx;
    if nonzero_left > slots {
        return;
    }
    let max_rest: usize = lambda.parts()[idx..].iter().sum();
    if rem > max_rest {
        return;
    }
    for v in 0..=lambda.part(idx + 1).min(rem) {
        let nz = if v > 0 { 1 } else { 0 };
        if nz > nonzero_left {
            break;
        }
        cur.push(v);
        gen_compositions(lambda, idx + 1, rem - v, nonzero_left - nz, cur, out);
        cur.pop();
    }
}

/// Is `r` selected for the case: every `r` for `Gl`, even `r` for `Sp`,
/// `r + d_r` even for `So`.
pub fn r_selected(case: EpsilonCase, r: usize, d_r: usize) -> bool {
    match case {
        EpsilonCase::Gl => true,
        EpsilonCase::Sp => r.is_multiple_of(2),
        EpsilonCase::So => (r + d_r).is_multiple_of(2),
    }
}

/// Closed-form count of invariant generators: `N`, `N/2`, or
/// `(N + #{odd parts})/2`.
pub fn invariant_count(lambda: &Partition, case: EpsilonCase) -> usize {
    let n_total = lambda.total();
    match case {
        EpsilonCase::Gl => n_total,
        EpsilonCase::Sp => n_total / 2,
        EpsilonCase::So => (n_total + lambda.odd_count()) / 2,
    }
}

/// The same count by direct enumeration of the selected `r`.
pub fn invariant_count_direct(lambda: &Partition, case: EpsilonCase) -> usize {
    let d = degree_sequence(lambda);
    (1..=lambda.total())
        .filter(|&r| r_selected(case, r, d.degree(r)))
        .count()
}
