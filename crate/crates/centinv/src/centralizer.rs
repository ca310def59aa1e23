//! The centraliser of a nilpotent matrix with Jordan type `λ`.
//!
//! The underlying module `V` has basis `e^t w_i` for `1 ≤ i ≤ n`,
//! `0 ≤ t < λ_i`. A basis map `ξ_i^{j,s}` sends `e^t w_i ↦ e^{s+t} w_j`
//! (zero once the shift overflows block `j`) and kills the other blocks.
//! The symbol is nonzero exactly when `λ_j - min(λ_i, λ_j) ≤ s < λ_j`;
//! out-of-range symbols denote zero.
//!
//! Matrices are written with columns indexing the source basis vector, so a
//! map sending `w_1 ↦ w_2` has its 1 in row 2, column 1. Under this
//! convention the Lie bracket is the ordinary matrix commutator.

use crate::combinatorics::{involution, EpsilonCase, Involution, Partition};
use crate::field::Field;
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Index `(i, j, s)` of the basis map `ξ_i^{j,s}`; blocks are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct BasisIndex {
    pub i: usize,
    pub j: usize,
    pub s: usize,
}

impl BasisIndex {
    pub fn new(i: usize, j: usize, s: usize) -> Self {
        BasisIndex { i, j, s }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "xi[{},{},{}]", self.i, self.j, self.s)
    }
}

/// Is the symbol a (nonzero) basis element for `λ`?
pub fn in_range(idx: BasisIndex, lambda: &Partition) -> bool {
    let n = lambda.len();
    if idx.i < 1 || idx.i > n || idx.j < 1 || idx.j > n {
        return false;
    }
    let li = lambda.part(idx.i);
    let lj = lambda.part(idx.j);
    idx.s < lj && idx.s + li.min(lj) >= lj
}

/// All basis indices, ordered by `(i, j, s)`.
pub fn enumerate_basis(lambda: &Partition) -> Vec<BasisIndex> {
    let n = lambda.len();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let li = lambda.part(i);
            let lj = lambda.part(j);
            for s in lj - li.min(lj)..lj {
                out.push(BasisIndex::new(i, j, s));
            }
        }
    }
    out
}

/// `dim g_e = Σ_{i,j} min(λ_i, λ_j)`.
pub fn dim_centralizer(lambda: &Partition) -> usize {
    let n = lambda.len();
    let mut d = 0;
    for i in 1..=n {
        for j in 1..=n {
            d += lambda.part(i).min(lambda.part(j));
        }
    }
    d
}

/// Integer matrix type used for the matrix realisation oracle.
pub type IMat = Vec<Vec<i64>>;

pub fn imat_zero(n: usize) -> IMat {
    vec![vec![0; n]; n]
}

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let n = a.len();
    let mut out = imat_zero(n);
    for r in 0..n {
        for k in 0..n {
            let av = a[r][k];
            if av == 0 {
                continue;
            }
            for c in 0..n {
                out[r][c] += av * b[k][c];
            }
        }
    }
    out
}

pub fn imat_sub(a: &IMat, b: &IMat) -> IMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn imat_transpose(a: &IMat) -> IMat {
    let n = a.len();
    let mut out = imat_zero(n);
    for r in 0..n {
        for c in 0..n {
            out[c][r] = a[r][c];
        }
    }
    out
}

pub fn imat_scale(a: &IMat, k: i64) -> IMat {
    a.iter()
        .map(|r| r.iter().map(|x| x * k).collect())
        .collect()
}

pub fn imat_is_zero(a: &IMat) -> bool {
    a.iter().all(|r| r.iter().all(|&x| x == 0))
}

/// Position of `e^t w_i` in the ordered module basis.
pub fn pos(lambda: &Partition, i: usize, t: usize) -> usize {
    lambda.offset(i) + t
}

/// Matrix of `ξ_i^{j,s}` (column convention). Out-of-range symbols give 0.
pub fn as_matrix(idx: BasisIndex, lambda: &Partition) -> IMat {
    let n_total = lambda.total();
    let mut m = imat_zero(n_total);
    if !in_range(idx, lambda) {
        return m;
    }
    let li = lambda.part(idx.i);
    let lj = lambda.part(idx.j);
    for t in 0..li {
        if idx.s + t < lj {
            m[pos(lambda, idx.j, idx.s + t)][pos(lambda, idx.i, t)] = 1;
        }
    }
    m
}

/// Matrix of the nilpotent `e` itself: `e^t w_i ↦ e^{t+1} w_i`.
pub fn e_matrix(lambda: &Partition) -> IMat {
    let n_total = lambda.total();
    let mut m = imat_zero(n_total);
    for i in 1..=lambda.len() {
        for t in 0..lambda.part(i) - 1 {
            m[pos(lambda, i, t + 1)][pos(lambda, i, t)] = 1;
        }
    }
    m
}

/// Composition `a ∘ b` (apply `b` first). `None` means the zero map.
///
/// The result of composing two in-range symbols is automatically in range
/// unless the shift overflows the target block.
pub fn compose(a: BasisIndex, b: BasisIndex, lambda: &Partition) -> Option<BasisIndex> {
    if a.i != b.j {
        return None;
    }
    let s = a.s + b.s;
    if s >= lambda.part(a.j) {
        return None;
    }
    let idx = BasisIndex::new(b.i, a.j, s);
    debug_assert!(in_range(idx, lambda));
    Some(idx)
}

/// Structure constants of `[a, b] = a∘b - b∘a` in the basis.
pub fn bracket(a: BasisIndex, b: BasisIndex, lambda: &Partition) -> Vec<(BasisIndex, i64)> {
    let mut acc: BTreeMap<BasisIndex, i64> = BTreeMap::new();
    if let Some(x) = compose(a, b, lambda) {
        *acc.entry(x).or_insert(0) += 1;
    }
    if let Some(x) = compose(b, a, lambda) {
        *acc.entry(x).or_insert(0) -= 1;
    }
    acc.into_iter().filter(|(_, c)| *c != 0).collect()
}

/// Express a matrix commuting with `e` in the `ξ` basis.
///
/// The coefficient of `ξ_i^{j,s}` is the matrix entry sending `w_i` into
/// `e^s w_j`; the reconstruction is then checked against the input, so a
/// matrix outside the centraliser is rejected.
pub fn matrix_to_coords(m: &IMat, lambda: &Partition) -> Result<Vec<(BasisIndex, i64)>> {
    let mut coords = Vec::new();
    for idx in enumerate_basis(lambda) {
        let c = m[pos(lambda, idx.j, idx.s)][pos(lambda, idx.i, 0)];
        if c != 0 {
            coords.push((idx, c));
        }
    }
    let mut recon = imat_zero(lambda.total());
    for (idx, c) in &coords {
        let mi = as_matrix(*idx, lambda);
        for r in 0..recon.len() {
            for cc in 0..recon.len() {
                recon[r][cc] += c * mi[r][cc];
            }
        }
    }
    if recon != *m {
        return Err(Error::NotInAlgebra(
            "matrix does not centralise e".to_string(),
        ));
    }
    Ok(coords)
}

/// Triangular decomposition by block position: `i < j`, `i = j`, `i > j`.
pub fn triangular_split(
    lambda: &Partition,
) -> (Vec<BasisIndex>, Vec<BasisIndex>, Vec<BasisIndex>) {
    let mut lower = Vec::new();
    let mut diag = Vec::new();
    let mut upper = Vec::new();
    for idx in enumerate_basis(lambda) {
        match idx.i.cmp(&idx.j) {
            std::cmp::Ordering::Less => lower.push(idx),
            std::cmp::Ordering::Equal => diag.push(idx),
            std::cmp::Ordering::Greater => upper.push(idx),
        }
    }
    (lower, diag, upper)
}

/// Index `(i, j, s)` of `ζ_i^{j,s}` or `η_i^{j,s}`, where `s` is the dual
/// shift: the underlying first term is `ξ_i^{j,λ_j-1-s}` with
/// `0 ≤ s < min(λ_i, λ_j)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct PairIndex {
    pub i: usize,
    pub j: usize,
    pub s: usize,
}

impl fmt::Display for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{},{}]", self.i, self.j, self.s)
    }
}

/// Everything that depends on the bilinear form: involution, Gram matrix,
/// sign table and the `ζ/η` spanning sets.
pub struct FormData {
    pub lambda: Partition,
    pub case: EpsilonCase,
    pub epsilon: i64,
    pub inv: Involution,
    pub gram: IMat,
}

impl FormData {
    pub fn new(lambda: &Partition, case: EpsilonCase) -> Result<Self> {
        let epsilon = case
            .epsilon()
            .ok_or_else(|| Error::InvalidCase("form data needs sp or so".into()))?;
        let inv = involution(lambda, case)?;
        let n_total = lambda.total();
        let mut gram = imat_zero(n_total);
        for i in 1..=lambda.len() {
            let ip = inv.of(i);
            let li = lambda.part(i);
            for a in 0..li {
                let b = li - 1 - a;
                let sgn = if a % 2 == 0 { 1 } else { -1 };
                gram[pos(lambda, i, a)][pos(lambda, ip, b)] = sgn * varpi(i, ip);
            }
        }
        Ok(FormData {
            lambda: lambda.clone(),
            case,
            epsilon,
            inv,
            gram,
        })
    }

    /// `ε_{i,j,s} = (-1)^{λ_j - s} ϖ_{i≤i'} ϖ_{j≤j'}` with `s` the dual shift.
    pub fn eps(&self, i: usize, j: usize, s: usize) -> i64 {
        let pow = if (self.lambda.part(j) - s).is_multiple_of(2) {
            1
        } else {
            -1
        };
        pow * varpi(i, self.inv.of(i)) * varpi(j, self.inv.of(j))
    }

    pub fn l(&self, i: usize) -> usize {
        self.inv.l(i)
    }

    /// `σ(ξ_i^{j,λ_j-1-s}) = ε_{i,j,s} ξ_{j'}^{i',λ_i-1-s}` as a signed index.
    pub fn sigma_index(&self, idx: BasisIndex) -> (BasisIndex, i64) {
        debug_assert!(in_range(idx, &self.lambda));
        let s_dual = self.lambda.part(idx.j) - 1 - idx.s;
        let sign = self.eps(idx.i, idx.j, s_dual);
        let out = BasisIndex::new(
            self.inv.of(idx.j),
            self.inv.of(idx.i),
            self.lambda.part(idx.i) - 1 - s_dual,
        );
        debug_assert!(in_range(out, &self.lambda));
        (out, sign)
    }

    /// Matrix-level `σ(X) = -J^{-1} X^T J`, using `J^{-1} = εJ`.
    pub fn sigma_matrix(&self, m: &IMat) -> IMat {
        let jt = imat_mul(&imat_mul(&self.gram, &imat_transpose(m)), &self.gram);
        imat_scale(&jt, -self.epsilon)
    }

    /// The `ξ` expansion of `ζ_i^{j,s}` (dual shift `s`), before any
    /// deduplication: `ξ_i^{j,λ_j-1-s} + ε_{i,j,s} ξ_{j'}^{i',λ_i-1-s}`.
    pub fn zeta_terms(&self, p: PairIndex) -> Vec<(BasisIndex, i64)> {
        self.pair_terms(p, 1)
    }

    /// Likewise `η_i^{j,s} = ξ_i^{j,λ_j-1-s} - ε_{i,j,s} ξ_{j'}^{i',λ_i-1-s}`.
    pub fn eta_terms(&self, p: PairIndex) -> Vec<(BasisIndex, i64)> {
        self.pair_terms(p, -1)
    }

    fn pair_terms(&self, p: PairIndex, parity: i64) -> Vec<(BasisIndex, i64)> {
        let first = BasisIndex::new(p.i, p.j, self.lambda.part(p.j) - 1 - p.s);
        let second = BasisIndex::new(
            self.inv.of(p.j),
            self.inv.of(p.i),
            self.lambda.part(p.i) - 1 - p.s,
        );
        let eps = parity * self.eps(p.i, p.j, p.s);
        let mut acc: BTreeMap<BasisIndex, i64> = BTreeMap::new();
        *acc.entry(first).or_insert(0) += 1;
        *acc.entry(second).or_insert(0) += eps;
        acc.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    /// Partner index under the relation `ζ_i^{j,s} = ε_{i,j,s} ζ_{j'}^{i',s}`.
    pub fn partner(&self, p: PairIndex) -> PairIndex {
        PairIndex {
            i: self.inv.of(p.j),
            j: self.inv.of(p.i),
            s: p.s,
        }
    }
}

/// `ϖ_{i≤j}`: `+1` if `i ≤ j`, else `-1`.
pub fn varpi(i: usize, j: usize) -> i64 {
    if i <= j {
        1
    } else {
        -1
    }
}

/// One element of the deduplicated `ζ` or `η` basis.
#[derive(Clone, Debug)]
pub struct SpanElem {
    /// Canonical pair index naming the element.
    pub idx: PairIndex,
    /// Expansion in the `ξ` basis (one or two terms).
    pub terms: Vec<(BasisIndex, i64)>,
}

/// Where a raw `ζ_i^{j,s}` (resp. `η`) symbol lands in the deduplicated
/// basis: the canonical position and the relating sign, or zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resolved {
    Zero,
    Canonical { position: usize, sign: i64 },
}

/// Deduplicated bases of the `σ`-fixed subalgebra `k_e` (the `ζ`s) and of
/// the `-1` eigenspace `p_e` (the `η`s).
pub struct ZetaEtaBasis {
    pub zeta: Vec<SpanElem>,
    pub eta: Vec<SpanElem>,
    zeta_lookup: BTreeMap<PairIndex, Resolved>,
    eta_lookup: BTreeMap<PairIndex, Resolved>,
}

impl ZetaEtaBasis {
    pub fn dims(&self) -> (usize, usize) {
        (self.zeta.len(), self.eta.len())
    }

    /// Resolve a raw `ζ_i^{j,s}` symbol.
    pub fn resolve_zeta(&self, p: PairIndex) -> Resolved {
        self.zeta_lookup[&p]
    }

    /// Resolve a raw `η_i^{j,s}` symbol.
    pub fn resolve_eta(&self, p: PairIndex) -> Resolved {
        self.eta_lookup[&p]
    }

    /// Express an element of `k_e`, given in `ξ` coordinates, over the
    /// deduplicated `ζ` basis. Fails if the element is not `σ`-fixed.
    pub fn zeta_coords(&self, xi: &[(BasisIndex, i64)]) -> Result<Vec<(usize, i64)>> {
        self.coords_of(xi, &self.zeta, "k_e")
    }

    /// Likewise for `p_e` over the `η` basis.
    pub fn eta_coords(&self, xi: &[(BasisIndex, i64)]) -> Result<Vec<(usize, i64)>> {
        self.coords_of(xi, &self.eta, "p_e")
    }

    fn coords_of(
        &self,
        xi: &[(BasisIndex, i64)],
        basis: &[SpanElem],
        label: &str,
    ) -> Result<Vec<(usize, i64)>> {
        let input: BTreeMap<BasisIndex, i64> = xi.iter().copied().collect();
        // Each in-range ξ symbol occurs in exactly one canonical element,
        // as its lexicographically first term.
        let mut out = Vec::new();
        let mut recon: BTreeMap<BasisIndex, i64> = BTreeMap::new();
        for (position, elem) in basis.iter().enumerate() {
            let lead = elem.terms[0].0;
            let lead_coeff = elem.terms[0].1;
            if let Some(&c) = input.get(&lead) {
                if c % lead_coeff != 0 {
                    return Err(Error::NotInAlgebra(format!(
                        "element not integral over the {label} basis"
                    )));
                }
                let t = c / lead_coeff;
                if t != 0 {
                    out.push((position, t));
                    for (b, k) in &elem.terms {
                        *recon.entry(*b).or_insert(0) += t * k;
                    }
                }
            }
        }
        recon.retain(|_, v| *v != 0);
        if recon != input {
            return Err(Error::NotInAlgebra(format!("element not in {label}")));
        }
        Ok(out)
    }
}

/// Build the deduplicated `ζ/η` bases. The canonical representative of the
/// orbit `{(i,j,s), (j',i',s)}` is the lexicographically smaller triple;
/// self-paired symbols collapse to `(1 ± ε)ξ` and are dropped when zero.
pub fn zeta_eta_basis(form: &FormData) -> ZetaEtaBasis {
    let lambda = &form.lambda;
    let n = lambda.len();
    let mut all = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for s in 0..lambda.part(i).min(lambda.part(j)) {
                all.push(PairIndex { i, j, s });
            }
        }
    }
    let mut zeta = Vec::new();
    let mut eta = Vec::new();
    let mut zeta_lookup = BTreeMap::new();
    let mut eta_lookup = BTreeMap::new();
    for &p in &all {
        let q = form.partner(p);
        let canon = p.min(q);
        if p != canon {
            continue; // handled from its canonical partner
        }
        let eps = form.eps(p.i, p.j, p.s);
        if p == q {
            // self-paired: ζ = (1+ε)ξ, η = (1-ε)ξ
            if eps == 1 {
                zeta_lookup.insert(p, Resolved::Canonical { position: zeta.len(), sign: 1 });
                zeta.push(SpanElem { idx: p, terms: form.zeta_terms(p) });
                eta_lookup.insert(p, Resolved::Zero);
            } else {
                eta_lookup.insert(p, Resolved::Canonical { position: eta.len(), sign: 1 });
                eta.push(SpanElem { idx: p, terms: form.eta_terms(p) });
                zeta_lookup.insert(p, Resolved::Zero);
            }
        } else {
            zeta_lookup.insert(p, Resolved::Canonical { position: zeta.len(), sign: 1 });
            zeta_lookup.insert(q, Resolved::Canonical { position: zeta.len(), sign: eps });
            zeta.push(SpanElem { idx: p, terms: form.zeta_terms(p) });
            eta_lookup.insert(p, Resolved::Canonical { position: eta.len(), sign: 1 });
            eta_lookup.insert(q, Resolved::Canonical { position: eta.len(), sign: -eps });
            eta.push(SpanElem { idx: p, terms: form.eta_terms(p) });
        }
    }
    ZetaEtaBasis {
        zeta,
        eta,
        zeta_lookup,
        eta_lookup,
    }
}

/// Evaluate a `ξ`-combination as a field-valued vector of coefficients.
pub fn combo_to_field<F: Field>(combo: &[(BasisIndex, i64)], ctx: F::Ctx) -> Vec<(BasisIndex, F)> {
    combo
        .iter()
        .map(|(b, c)| (*b, F::from_i64(ctx, *c)))
        .collect()
}

/// Oracle agreement: the closed-form structure constants equal the matrix
/// commutator re-expressed in the basis, on every basis pair.
pub fn verify_bracket_matrix_oracle(lambda: &Partition) -> bool {
    let basis = enumerate_basis(lambda);
    let mats: Vec<IMat> = basis.iter().map(|&b| as_matrix(b, lambda)).collect();
    for (a, ma) in basis.iter().zip(&mats) {
        for (b, mb) in basis.iter().zip(&mats) {
            let comm = imat_sub(&imat_mul(ma, mb), &imat_mul(mb, ma));
            match matrix_to_coords(&comm, lambda) {
                Ok(coords) => {
                    if coords != bracket(*a, *b, lambda) {
                        return false;
                    }
                }
                Err(_) => return false,
            }
        }
    }
    true
}

/// Oracle agreement: the sign-table involution equals `-J^{-1} X^T J` on
/// every basis element.
pub fn verify_sigma_matrix_oracle(form: &FormData) -> bool {
    for idx in enumerate_basis(&form.lambda) {
        let (out, sign) = form.sigma_index(idx);
        let want = imat_scale(&as_matrix(out, &form.lambda), sign);
        if form.sigma_matrix(&as_matrix(idx, &form.lambda)) != want {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn basis_counts() {
        assert_eq!(enumerate_basis(&p(&[2, 1])).len(), 5);
        assert_eq!(dim_centralizer(&p(&[2, 1])), 5);
        assert_eq!(dim_centralizer(&p(&[3, 2])), 9);
        // single block: matrix powers of e
        let b = enumerate_basis(&p(&[4]));
        assert_eq!(
            b,
            (0..4).map(|s| BasisIndex::new(1, 1, s)).collect::<Vec<_>>()
        );
        // e = 0: all of gl_2
        assert_eq!(enumerate_basis(&p(&[1, 1])).len(), 4);
    }

    #[test]
    fn matrices_commute_with_e() {
        for lambda in Partition::enumerate_up_to(8) {
            let e = e_matrix(&lambda);
            for idx in enumerate_basis(&lambda) {
                let m = as_matrix(idx, &lambda);
                assert_eq!(imat_mul(&e, &m), imat_mul(&m, &e), "λ={lambda} {idx}");
            }
        }
    }

    #[test]
    fn as_matrix_examples() {
        // λ=(1,1): ξ_1^{2,0} is the unit sending w_1 ↦ w_2 (row 2, column 1)
        let m = as_matrix(BasisIndex::new(1, 2, 0), &p(&[1, 1]));
        assert_eq!(m, vec![vec![0, 0], vec![1, 0]]);
        // λ=(N): ξ_1^{1,s} is the s-th power of the Jordan block
        let lam = p(&[4]);
        let e = e_matrix(&lam);
        let mut pow = as_matrix(BasisIndex::new(1, 1, 0), &lam);
        for s in 0..4 {
            assert_eq!(pow, as_matrix(BasisIndex::new(1, 1, s), &lam));
            pow = imat_mul(&e, &pow);
        }
        // λ=(2,1): ξ_2^{1,1} sends w_2 ↦ e w_1
        let m = as_matrix(BasisIndex::new(2, 1, 1), &p(&[2, 1]));
        let mut expect = imat_zero(3);
        expect[1][2] = 1;
        assert_eq!(m, expect);
    }

    #[test]
    fn bracket_matches_matrix_commutator() {
        for lambda in Partition::enumerate_up_to(6) {
            let basis = enumerate_basis(&lambda);
            for &a in &basis {
                for &b in &basis {
                    let ma = as_matrix(a, &lambda);
                    let mb = as_matrix(b, &lambda);
                    let comm = imat_sub(&imat_mul(&ma, &mb), &imat_mul(&mb, &ma));
                    let coords = matrix_to_coords(&comm, &lambda).unwrap();
                    assert_eq!(coords, bracket(a, b, &lambda), "λ={lambda} [{a},{b}]");
                }
            }
        }
    }

    #[test]
    fn bracket_gl2_units() {
        let lam = p(&[1, 1]);
        let got = bracket(BasisIndex::new(1, 2, 0), BasisIndex::new(2, 1, 0), &lam);
        // [w_1↦w_2, w_2↦w_1] = (w_2↦w_2) - (w_1↦w_1)
        assert_eq!(
            got,
            vec![
                (BasisIndex::new(1, 1, 0), -1),
                (BasisIndex::new(2, 2, 0), 1)
            ]
        );
    }

    #[test]
    fn bracket_single_block_abelian() {
        let lam = p(&[5]);
        for a in enumerate_basis(&lam) {
            for b in enumerate_basis(&lam) {
                assert!(bracket(a, b, &lam).is_empty());
            }
        }
    }

    #[test]
    fn bracket_alternating_and_jacobi() {
        for lambda in Partition::enumerate_up_to(5) {
            let basis = enumerate_basis(&lambda);
            for &a in &basis {
                assert!(bracket(a, a, &lambda).is_empty());
            }
            // Jacobi on all triples for small cases
            if basis.len() > 12 {
                continue;
            }
            for &a in &basis {
                for &b in &basis {
                    for &c in &basis {
                        let mut acc: BTreeMap<BasisIndex, i64> = BTreeMap::new();
                        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                            for (inner, ci) in bracket(y, z, &lambda) {
                                for (outer, co) in bracket(x, inner, &lambda) {
                                    *acc.entry(outer).or_insert(0) += ci * co;
                                }
                            }
                        }
                        acc.retain(|_, v| *v != 0);
                        assert!(acc.is_empty(), "Jacobi fails λ={lambda}");
                    }
                }
            }
        }
    }

    #[test]
    fn gram_examples() {
        // Sp λ=(2): (w, ew) = 1, (ew, w) = -1
        let form = FormData::new(&p(&[2]), EpsilonCase::Sp).unwrap();
        assert_eq!(form.gram, vec![vec![0, 1], vec![-1, 0]]);
        // So λ=(1,1): both blocks are fixed points, so the form is diagonal
        let form = FormData::new(&p(&[1, 1]), EpsilonCase::So).unwrap();
        assert_eq!(form.gram, vec![vec![1, 0], vec![0, 1]]);
        // Sp λ=(1,1): hyperbolic pairing between the two blocks
        let form = FormData::new(&p(&[1, 1]), EpsilonCase::Sp).unwrap();
        assert_eq!(form.gram, vec![vec![0, 1], vec![-1, 0]]);
    }

    fn all_valid_cases(max_total: usize) -> Vec<(Partition, EpsilonCase)> {
        let mut out = Vec::new();
        for lambda in Partition::enumerate_up_to(max_total) {
            for case in [EpsilonCase::Sp, EpsilonCase::So] {
                if case.admits(&lambda) {
                    out.push((lambda.clone(), case));
                }
            }
        }
        out
    }

    #[test]
    fn gram_invariants() {
        for (lambda, case) in all_valid_cases(8) {
            let form = FormData::new(&lambda, case).unwrap();
            let j = &form.gram;
            let n = lambda.total();
            // ε-symmetry
            assert_eq!(imat_transpose(j), imat_scale(j, form.epsilon));
            // J^2 = εI, hence nondegenerate
            let j2 = imat_mul(j, j);
            for r in 0..n {
                for c in 0..n {
                    let want = if r == c { form.epsilon } else { 0 };
                    assert_eq!(j2[r][c], want);
                }
            }
            // e-skewness: E^T J + J E = 0
            let e = e_matrix(&lambda);
            let skew = imat_sub(
                &imat_scale(&imat_mul(&imat_transpose(&e), j), -1),
                &imat_mul(j, &e),
            );
            assert!(imat_is_zero(&skew), "λ={lambda} {case}");
        }
    }

    #[test]
    fn sigma_examples() {
        let form = FormData::new(&p(&[2]), EpsilonCase::Sp).unwrap();
        // e itself is fixed
        let (idx, sign) = form.sigma_index(BasisIndex::new(1, 1, 1));
        assert_eq!((idx, sign), (BasisIndex::new(1, 1, 1), 1));
        // the identity map on the block is negated
        let (idx, sign) = form.sigma_index(BasisIndex::new(1, 1, 0));
        assert_eq!((idx, sign), (BasisIndex::new(1, 1, 0), -1));
    }

    #[test]
    fn sigma_index_agrees_with_matrix_sigma() {
        for (lambda, case) in all_valid_cases(8) {
            let form = FormData::new(&lambda, case).unwrap();
            for idx in enumerate_basis(&lambda) {
                let (out, sign) = form.sigma_index(idx);
                let want = imat_scale(&as_matrix(out, &lambda), sign);
                let got = form.sigma_matrix(&as_matrix(idx, &lambda));
                assert_eq!(got, want, "λ={lambda} {case} σ({idx})");
                // involution
                let (back, sign2) = form.sigma_index(out);
                assert_eq!((back, sign * sign2), (idx, 1));
            }
        }
    }

    #[test]
    fn sigma_is_lie_automorphism() {
        for (lambda, case) in all_valid_cases(6) {
            let form = FormData::new(&lambda, case).unwrap();
            let basis = enumerate_basis(&lambda);
            for &a in &basis {
                for &b in &basis {
                    let (sa, ca) = form.sigma_index(a);
                    let (sb, cb) = form.sigma_index(b);
                    let mut lhs: BTreeMap<BasisIndex, i64> = BTreeMap::new();
                    for (x, c) in bracket(a, b, &lambda) {
                        let (sx, cx) = form.sigma_index(x);
                        *lhs.entry(sx).or_insert(0) += c * cx;
                    }
                    lhs.retain(|_, v| *v != 0);
                    let mut rhs: BTreeMap<BasisIndex, i64> = BTreeMap::new();
                    for (x, c) in bracket(sa, sb, &lambda) {
                        *rhs.entry(x).or_insert(0) += c * ca * cb;
                    }
                    rhs.retain(|_, v| *v != 0);
                    assert_eq!(lhs, rhs, "λ={lambda} {case} σ[{a},{b}]");
                }
            }
        }
    }

    #[test]
    fn sign_table_identities() {
        for (lambda, case) in all_valid_cases(8) {
            let form = FormData::new(&lambda, case).unwrap();
            let n = lambda.len();
            for i in 1..=n {
                for j in 1..=n {
                    for s in 0..lambda.part(i).min(lambda.part(j)) {
                        let e1 = form.eps(i, j, s);
                        // symmetry under the partner swap
                        assert_eq!(e1, form.eps(form.inv.of(j), form.inv.of(i), s));
                        // defining relation against the Gram matrix:
                        // (e^{λ_j-1-s} w_j, e^s w_{j'}) = -ε_{i,j,s} (w_i, e^{λ_i-1} w_{i'})
                        let lhs = form.gram[pos(&lambda, j, lambda.part(j) - 1 - s)]
                            [pos(&lambda, form.inv.of(j), s)];
                        let rhs = -e1
                            * form.gram[pos(&lambda, i, 0)]
                                [pos(&lambda, form.inv.of(i), lambda.part(i) - 1)];
                        assert_eq!(lhs, rhs, "λ={lambda} {case} ε({i},{j},{s})");
                    }
                }
            }
        }
    }

    #[test]
    fn zeta_eta_dims_examples() {
        let form = FormData::new(&p(&[2]), EpsilonCase::Sp).unwrap();
        let zh = zeta_eta_basis(&form);
        assert_eq!(zh.dims(), (1, 1));
        // ζ_1^{1,0} = 2ξ_1^{1,1}
        assert_eq!(zh.zeta[0].terms, vec![(BasisIndex::new(1, 1, 1), 2)]);

        let form = FormData::new(&p(&[3]), EpsilonCase::So).unwrap();
        let zh = zeta_eta_basis(&form);
        assert_eq!(zh.dims(), (1, 2));
        assert_eq!(zh.zeta[0].terms, vec![(BasisIndex::new(1, 1, 1), 2)]);
        assert_eq!(zh.eta[0].terms, vec![(BasisIndex::new(1, 1, 2), 2)]);
        assert_eq!(zh.eta[1].terms, vec![(BasisIndex::new(1, 1, 0), 2)]);

        // dim p_e - dim k_e = #odd parts
        let form = FormData::new(&p(&[3, 1]), EpsilonCase::So).unwrap();
        let zh = zeta_eta_basis(&form);
        let (k, pp) = zh.dims();
        assert_eq!(pp - k, 2);
    }

    #[test]
    fn zeta_eta_structure() {
        for (lambda, case) in all_valid_cases(8) {
            let form = FormData::new(&lambda, case).unwrap();
            let zh = zeta_eta_basis(&form);
            let (k, pp) = zh.dims();
            assert_eq!(k + pp, dim_centralizer(&lambda), "λ={lambda} {case}");
            // σ eigenvalue check on every element
            for (elems, want) in [(&zh.zeta, 1i64), (&zh.eta, -1i64)] {
                for el in elems.iter() {
                    let mut image: BTreeMap<BasisIndex, i64> = BTreeMap::new();
                    for (b, c) in &el.terms {
                        let (sb, sc) = form.sigma_index(*b);
                        *image.entry(sb).or_insert(0) += c * sc;
                    }
                    image.retain(|_, v| *v != 0);
                    let expect: BTreeMap<BasisIndex, i64> =
                        el.terms.iter().map(|(b, c)| (*b, c * want)).collect();
                    assert_eq!(image, expect, "λ={lambda} {case} {:?}", el.idx);
                }
            }
        }
    }

    #[test]
    fn k_is_subalgebra_and_p_is_module() {
        for (lambda, case) in all_valid_cases(6) {
            let form = FormData::new(&lambda, case).unwrap();
            let zh = zeta_eta_basis(&form);
            let combos = |elems: &[SpanElem]| -> Vec<Vec<(BasisIndex, i64)>> {
                elems.iter().map(|e| e.terms.clone()).collect()
            };
            let zs = combos(&zh.zeta);
            let es = combos(&zh.eta);
            let br = |a: &[(BasisIndex, i64)], b: &[(BasisIndex, i64)]| {
                let mut acc: BTreeMap<BasisIndex, i64> = BTreeMap::new();
                for (x, cx) in a {
                    for (y, cy) in b {
                        for (z, cz) in bracket(*x, *y, &lambda) {
                            *acc.entry(z).or_insert(0) += cx * cy * cz;
                        }
                    }
                }
                acc.retain(|_, v| *v != 0);
                acc.into_iter().collect::<Vec<_>>()
            };
            for a in &zs {
                for b in &zs {
                    assert!(zh.zeta_coords(&br(a, b)).is_ok(), "[k,k]⊆k λ={lambda}");
                }
                for b in &es {
                    assert!(zh.eta_coords(&br(a, b)).is_ok(), "[k,p]⊆p λ={lambda}");
                }
            }
            for a in &es {
                for b in &es {
                    assert!(zh.zeta_coords(&br(a, b)).is_ok(), "[p,p]⊆k λ={lambda}");
                }
            }
        }
    }

    #[test]
    fn triangular_split_examples() {
        let (lo, h, up) = triangular_split(&p(&[2, 1]));
        assert_eq!((lo.len(), h.len(), up.len()), (1, 3, 1));
        let (lo, h, up) = triangular_split(&p(&[5]));
        assert!(lo.is_empty() && up.is_empty());
        assert_eq!(h.len(), 5);
        for lambda in Partition::enumerate_up_to(7) {
            let (_, h, _) = triangular_split(&lambda);
            assert_eq!(h.len(), lambda.total());
        }
    }

    #[test]
    fn matrix_to_coords_rejects_non_centralising() {
        let lam = p(&[2, 1]);
        let mut m = imat_zero(3);
        m[0][1] = 1; // e^t w_1 ↦ ... not commuting with e
        assert!(matrix_to_coords(&m, &lam).is_err());
    }
}
