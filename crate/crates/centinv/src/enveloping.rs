//! Degree-truncated enveloping algebra of a centraliser with PBW normal
//! form, the p-operation and p-centre, the set-partition symmetrisation map
//! `μ`, the evaluation projection `π`, the composite `β = S(π)∘μ`, and the
//! bound `p^{(dim - ind)/2}` on simple-module dimensions.

use crate::centralizer::{
    as_matrix, bracket, dim_centralizer, enumerate_basis, zeta_eta_basis, BasisIndex, FormData,
    SpanElem,
};
use crate::combinatorics::{EpsilonCase, Partition};
use crate::field::Field;
use crate::linalg::{mat_axpy, mat_mul, mat_transpose, Mat};
use crate::polyring::{Monomial, Poly};
use crate::{Error, Result};
use rand::Rng;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Variable naming one basis element of the algebra acted on.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct AVar(pub usize);

impl fmt::Display for AVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v[{}]", self.0)
    }
}

/// A finite-dimensional restricted Lie algebra of matrices with a fixed
/// ordered basis: the full centraliser for `gl`, its `σ`-fixed subalgebra
/// for `sp`/`so`.
pub struct LieAlg<F: Field> {
    pub lambda: Partition,
    pub case: EpsilonCase,
    pub labels: Vec<String>,
    pub dim: usize,
    ctx: F::Ctx,
    /// `[e_a, e_b] = Σ c_k e_k` as sparse rows of (index, coefficient).
    sc: Vec<Vec<Vec<(usize, F)>>>,
    /// Matrix of each basis element.
    mats: Vec<Mat<F>>,
    /// For `sp`/`so`: the spanning data needed to re-express matrices.
    kdata: Option<(FormData, Vec<SpanElem>)>,
}

impl<F: Field> LieAlg<F> {
    pub fn new(lambda: &Partition, case: EpsilonCase, ctx: F::Ctx) -> Result<Self> {
        match case {
            EpsilonCase::Gl => {
                let basis = enumerate_basis(lambda);
                let dim = basis.len();
                let mats: Vec<Mat<F>> = basis
                    .iter()
                    .map(|&b| imat_to_field(&as_matrix(b, lambda), ctx))
                    .collect();
                let pos: BTreeMap<BasisIndex, usize> =
                    basis.iter().enumerate().map(|(k, b)| (*b, k)).collect();
                let mut sc = vec![vec![vec![]; dim]; dim];
                for (a, &ba) in basis.iter().enumerate() {
                    for (b, &bb) in basis.iter().enumerate() {
                        sc[a][b] = bracket(ba, bb, lambda)
                            .into_iter()
                            .map(|(w, k)| (pos[&w], F::from_i64(ctx, k)))
                            .collect();
                    }
                }
                Ok(LieAlg {
                    lambda: lambda.clone(),
                    case,
                    labels: basis.iter().map(|b| b.to_string()).collect(),
                    dim,
                    ctx,
                    sc,
                    mats,
                    kdata: None,
                })
            }
            EpsilonCase::Sp | EpsilonCase::So => {
                if F::characteristic(ctx) == 2 {
                    return Err(Error::CharacteristicTwo);
                }
                let form = FormData::new(lambda, case)?;
                let zh = zeta_eta_basis(&form);
                let elems = zh.zeta.clone();
                let dim = elems.len();
                let mats: Vec<Mat<F>> = elems
                    .iter()
                    .map(|e| combo_matrix(&e.terms, lambda, ctx))
                    .collect();
                let mut sc = vec![vec![vec![]; dim]; dim];
                for a in 0..dim {
                    for b in 0..dim {
                        let mut xi_combo: BTreeMap<BasisIndex, i64> = BTreeMap::new();
                        for (xa, ca) in &elems[a].terms {
                            for (xb, cb) in &elems[b].terms {
                                for (w, k) in bracket(*xa, *xb, lambda) {
                                    *xi_combo.entry(w).or_insert(0) += ca * cb * k;
                                }
                            }
                        }
                        xi_combo.retain(|_, c| *c != 0);
                        let flat: Vec<(BasisIndex, i64)> = xi_combo.into_iter().collect();
                        sc[a][b] = zh
                            .zeta_coords(&flat)?
                            .into_iter()
                            .map(|(k, c)| (k, F::from_i64(ctx, c)))
                            .collect();
                    }
                }
                Ok(LieAlg {
                    lambda: lambda.clone(),
                    case,
                    labels: elems.iter().map(|e| format!("zeta{}", e.idx)).collect(),
                    dim,
                    ctx,
                    sc,
                    mats,
                    kdata: Some((form, elems)),
                })
            }
        }
    }

    pub fn ctx(&self) -> F::Ctx {
        self.ctx
    }

    /// Structure constants of `[e_a, e_b]`.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, F)] {
        &self.sc[a][b]
    }

    pub fn matrix(&self, k: usize) -> &Mat<F> {
        &self.mats[k]
    }

    fn n_module(&self) -> usize {
        self.lambda.total()
    }

    /// Matrix of a coefficient vector over the basis.
    pub fn matrix_of(&self, combo: &[(usize, F)]) -> Mat<F> {
        let n = self.n_module();
        let mut m = vec![vec![F::zero(self.ctx); n]; n];
        for (k, c) in combo {
            m = mat_axpy(&m, c, &self.mats[*k]);
        }
        m
    }

    /// Express a matrix over the algebra basis; fails when it is not in
    /// the algebra.
    pub fn from_matrix(&self, m: &Mat<F>) -> Result<Vec<(usize, F)>> {
        let lambda = &self.lambda;
        // ξ coordinates read off the images of the block generators w_i
        let mut xi_coords: BTreeMap<BasisIndex, F> = BTreeMap::new();
        for idx in enumerate_basis(lambda) {
            let v = m[crate::centralizer::pos(lambda, idx.j, idx.s)]
                [crate::centralizer::pos(lambda, idx.i, 0)]
            .clone();
            if !v.is_zero() {
                xi_coords.insert(idx, v);
            }
        }
        // reconstruct to confirm the matrix centralises
        let mut recon = vec![vec![F::zero(self.ctx); self.n_module()]; self.n_module()];
        for (idx, c) in &xi_coords {
            recon = mat_axpy(
                &recon,
                c,
                &imat_to_field(&as_matrix(*idx, lambda), self.ctx),
            );
        }
        if &recon != m {
            return Err(Error::NotInAlgebra(
                "matrix does not centralise the nilpotent".into(),
            ));
        }
        match &self.kdata {
            None => {
                let basis = enumerate_basis(lambda);
                let pos: BTreeMap<BasisIndex, usize> =
                    basis.iter().enumerate().map(|(k, b)| (*b, k)).collect();
                Ok(xi_coords
                    .into_iter()
                    .map(|(idx, c)| (pos[&idx], c))
                    .collect())
            }
            Some((_, elems)) => {
                // resolve over the deduplicated spanning set by lead terms
                let mut out = Vec::new();
                let mut recon: BTreeMap<BasisIndex, F> = BTreeMap::new();
                for (k, el) in elems.iter().enumerate() {
                    let (lead, lead_coeff) = (el.terms[0].0, el.terms[0].1);
                    if let Some(c) = xi_coords.get(&lead) {
                        let t = c.mul(
                            &F::from_i64(self.ctx, lead_coeff)
                                .inv()
                                .expect("lead coefficient is 1 or 2"),
                        );
                        if !t.is_zero() {
                            for (b, kk) in &el.terms {
                                let add = t.mul(&F::from_i64(self.ctx, *kk));
                                let slot =
                                    recon.entry(*b).or_insert_with(|| F::zero(self.ctx));
                                *slot = slot.add(&add);
                            }
                            out.push((k, t));
                        }
                    }
                }
                recon.retain(|_, v| !v.is_zero());
                if recon != xi_coords {
                    return Err(Error::NotInAlgebra(
                        "matrix is not fixed by the involution".into(),
                    ));
                }
                Ok(out)
            }
        }
    }

    /// Restricted p-operation: the p-th matrix power, re-expressed over the
    /// basis. Matrix powers of centralising matrices centralise, so failure
    /// to land in the algebra is a hard error.
    pub fn p_power(&self, combo: &[(usize, F)]) -> Result<Vec<(usize, F)>> {
        let p = F::characteristic(self.ctx);
        assert!(p >= 2, "the p-operation needs prime characteristic");
        let m = self.matrix_of(combo);
        let mut acc = m.clone();
        for _ in 1..p {
            acc = mat_mul(&acc, &m, self.ctx);
        }
        self.from_matrix(&acc)
    }

    /// σ at the matrix level, `-J^{-1} X^T J`, for the `sp`/`so` cases.
    fn sigma_matrix(&self, m: &Mat<F>) -> Mat<F> {
        let (form, _) = self.kdata.as_ref().expect("σ needs a form");
        let j = imat_to_field::<F>(&form.gram, self.ctx);
        let minus_eps = F::from_i64(self.ctx, -form.epsilon);
        let jt = mat_mul(
            &mat_mul(&j, &mat_transpose(m, self.ctx), self.ctx),
            &j,
            self.ctx,
        );
        jt.iter()
            .map(|row| row.iter().map(|x| x.mul(&minus_eps)).collect())
            .collect()
    }

    /// Evaluate a PBW word as a product of matrices and project back into
    /// the algebra: for `gl` the product already centralises; for `sp`/`so`
    /// take the `σ`-fixed component. The empty word maps to the identity's
    /// component.
    pub fn pi(&self, word: &[usize]) -> Result<Vec<(usize, F)>> {
        let n = self.n_module();
        let mut m: Mat<F> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if r == c {
                            F::one(self.ctx)
                        } else {
                            F::zero(self.ctx)
                        }
                    })
                    .collect()
            })
            .collect();
        for &k in word {
            m = mat_mul(&m, &self.mats[k], self.ctx);
        }
        let projected = match &self.kdata {
            None => m,
            Some(_) => {
                // (M + σM)/2
                let sm = self.sigma_matrix(&m);
                let half = F::from_i64(self.ctx, 2)
                    .inv()
                    .ok_or(Error::CharacteristicTwo)?;
                mat_axpy(&m, &F::one(self.ctx), &sm)
                    .iter()
                    .map(|row| row.iter().map(|x| x.mul(&half)).collect())
                    .collect()
            }
        };
        self.from_matrix(&projected).map_err(|_| {
            Error::SaturationViolated(format!(
                "projection of a word of length {} left the centraliser",
                word.len()
            ))
        })
    }
}

fn imat_to_field<F: Field>(m: &crate::centralizer::IMat, ctx: F::Ctx) -> Mat<F> {
    m.iter()
        .map(|row| row.iter().map(|&x| F::from_i64(ctx, x)).collect())
        .collect()
}

fn combo_matrix<F: Field>(
    combo: &[(BasisIndex, i64)],
    lambda: &Partition,
    ctx: F::Ctx,
) -> Mat<F> {
    let n = lambda.total();
    let mut m = vec![vec![F::zero(ctx); n]; n];
    for (b, c) in combo {
        m = mat_axpy(
            &m,
            &F::from_i64(ctx, *c),
            &imat_to_field(&as_matrix(*b, lambda), ctx),
        );
    }
    m
}

/// Element of the truncated enveloping algebra in PBW normal form:
/// exponent vectors over the ordered basis, with a hard degree cap.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UElement<F: Field> {
    pub terms: BTreeMap<Vec<u32>, F>,
    pub cap: usize,
}

impl<F: Field> UElement<F> {
    pub fn zero(cap: usize) -> Self {
        UElement {
            terms: BTreeMap::new(),
            cap,
        }
    }

    pub fn one(alg: &LieAlg<F>, cap: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; alg.dim], F::one(alg.ctx));
        UElement { terms, cap }
    }

    pub fn generator(alg: &LieAlg<F>, k: usize, cap: usize) -> Self {
        let mut e = vec![0; alg.dim];
        e[k] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, F::one(alg.ctx));
        UElement { terms, cap }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, k: &F) -> Self {
        let mut out = UElement::zero(self.cap);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.mul(k));
        }
        out
    }

    /// The ascending word of an exponent vector.
    pub fn word_of(e: &[u32]) -> Vec<usize> {
        let mut w = Vec::new();
        for (k, &count) in e.iter().enumerate() {
            w.extend(std::iter::repeat_n(k, count as usize));
        }
        w
    }

    /// The top-degree part as a commutative polynomial.
    pub fn symbol(&self) -> Poly<AVar, F> {
        let d = self.degree();
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() as usize == d {
                let factors: Vec<(AVar, u32)> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x > 0)
                    .map(|(k, &x)| (AVar(k), x))
                    .collect();
                out.add_term(Monomial::from_factors(factors), c.clone());
            }
        }
        out
    }
}

/// How to pick the next out-of-order pair during rewriting. The normal form
/// must not depend on the choice; the seeded variant exists so tests can
/// confirm that.
pub enum RewriteStrategy {
    FirstInversion,
    Random(Box<rand_chacha::ChaCha8Rng>),
}

/// Rewrite a word into PBW normal form using `xy = yx + [x,y]` on adjacent
/// out-of-order letters.
pub fn pbw_normalize<F: Field>(
    alg: &LieAlg<F>,
    word: &[usize],
    cap: usize,
    strategy: &mut RewriteStrategy,
) -> Result<UElement<F>> {
    if word.len() > cap {
        return Err(Error::CapExceeded {
            cap,
            needed: word.len(),
        });
    }
    let mut out = UElement::zero(cap);
    let mut work: Vec<(Vec<usize>, F)> = vec![(word.to_vec(), F::one(alg.ctx))];
    while let Some((w, c)) = work.pop() {
        let inversions: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&k| w[k] > w[k + 1])
            .collect();
        if inversions.is_empty() {
            let mut e = vec![0u32; alg.dim];
            for &k in &w {
                e[k] += 1;
            }
            out.add_term(e, c);
            continue;
        }
        let k = match strategy {
            RewriteStrategy::FirstInversion => inversions[0],
            RewriteStrategy::Random(rng) => inversions[rng.gen_range(0..inversions.len())],
        };
        let mut swapped = w.clone();
        swapped.swap(k, k + 1);
        for (z, cz) in alg.bracket_basis(w[k], w[k + 1]) {
            let mut shorter = w.clone();
            shorter.remove(k + 1);
            shorter[k] = *z;
            work.push((shorter, c.mul(cz)));
        }
        work.push((swapped, c));
    }
    Ok(out)
}

/// Product in the truncated enveloping algebra.
pub fn u_mul<F: Field>(alg: &LieAlg<F>, a: &UElement<F>, b: &UElement<F>) -> Result<UElement<F>> {
    let cap = a.cap.min(b.cap);
    let mut out = UElement::zero(cap);
    for (ea, ca) in &a.terms {
        for (eb, cb) in &b.terms {
            let mut word = UElement::<F>::word_of(ea);
            word.extend(UElement::<F>::word_of(eb));
            if word.len() > cap {
                return Err(Error::CapExceeded {
                    cap,
                    needed: word.len(),
                });
            }
            let nf = pbw_normalize(alg, &word, cap, &mut RewriteStrategy::FirstInversion)?;
            for (e, c) in nf.terms {
                out.add_term(e, ca.mul(cb).mul(&c));
            }
        }
    }
    Ok(out)
}

/// `ad x · u = x u - u x` for a basis letter `x`. The commutator lands back
/// under the cap even though each product overshoots by one.
pub fn ad_u<F: Field>(alg: &LieAlg<F>, x: usize, u: &UElement<F>) -> Result<UElement<F>> {
    let slack = u.cap + 1;
    let mut ux = u.clone();
    ux.cap = slack;
    let gx = UElement::generator(alg, x, slack);
    let left = u_mul(alg, &gx, &ux)?;
    let right = u_mul(alg, &ux, &gx)?;
    let mut diff = left.sub(&right);
    if diff.degree() > u.cap {
        return Err(Error::CapExceeded {
            cap: u.cap,
            needed: diff.degree(),
        });
    }
    diff.cap = u.cap;
    Ok(diff)
}

/// The p-centre generator `v^p - v^{[p]}` for an algebra element `v`.
pub fn p_centre_generator<F: Field>(
    alg: &LieAlg<F>,
    v: &[(usize, F)],
    cap: usize,
) -> Result<UElement<F>> {
    let p = F::characteristic(alg.ctx);
    assert!(p >= 2, "the p-centre needs prime characteristic");
    if cap < p as usize + 1 {
        return Err(Error::CapExceeded {
            cap,
            needed: p as usize + 1,
        });
    }
    let mut lin = UElement::zero(cap);
    for (k, c) in v {
        let mut e = vec![0u32; alg.dim];
        e[*k] = 1;
        lin.add_term(e, c.clone());
    }
    let mut pow = UElement::one(alg, cap);
    for _ in 0..p {
        pow = u_mul(alg, &pow, &lin)?;
    }
    let restricted = alg.p_power(v)?;
    let mut out = pow;
    for (k, c) in restricted {
        let mut e = vec![0u32; alg.dim];
        e[k] = 1;
        out.add_term(e, c.neg());
    }
    Ok(out)
}

/// Check that `u` commutes with every generator; returns the first failing
/// basis index.
pub fn verify_central<F: Field>(alg: &LieAlg<F>, u: &UElement<F>) -> Result<Option<usize>> {
    for y in 0..alg.dim {
        if !ad_u(alg, y, u)?.is_zero() {
            return Ok(Some(y));
        }
    }
    Ok(None)
}

/// Element of the truncated symmetric algebra on the enveloping algebra:
/// multisets of PBW exponent vectors.
pub type SymU<F> = BTreeMap<Vec<Vec<u32>>, F>;

/// All set partitions of `{0, …, m-1}` via restricted growth strings.
pub fn set_partitions(m: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(k: usize, maxv: usize, rgs: &mut Vec<usize>, m: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if k == m {
            let blocks = rgs.iter().copied().max().map_or(0, |x| x + 1);
            let mut part = vec![vec![]; blocks];
            for (i, &b) in rgs.iter().enumerate() {
                part[b].push(i);
            }
            out.push(part);
            return;
        }
        for v in 0..=maxv {
            rgs[k] = v;
            rec(k + 1, maxv.max(v + 1), rgs, m, out);
        }
    }
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; m];
    rec(0, 0, &mut rgs, m, &mut out);
    out
}

/// The symmetrisation map `μ`: a PBW monomial `v_{j1}⋯v_{jm}` goes to the
/// sum over unordered set partitions of the positions, each block
/// contributing the (normalised) subword in its original order.
pub fn milner_mu<F: Field>(alg: &LieAlg<F>, u: &UElement<F>) -> Result<SymU<F>> {
    let mut out: SymU<F> = BTreeMap::new();
    for (e, coeff) in &u.terms {
        let word = UElement::<F>::word_of(e);
        for partition in set_partitions(word.len()) {
            // expand the product of the per-block normal forms
            let mut acc: Vec<(Vec<Vec<u32>>, F)> = vec![(vec![], coeff.clone())];
            for block in &partition {
                let sub: Vec<usize> = block.iter().map(|&pos| word[pos]).collect();
                let nf = pbw_normalize(alg, &sub, u.cap, &mut RewriteStrategy::FirstInversion)?;
                let mut next = Vec::new();
                for (ms, c) in &acc {
                    for (be, bc) in &nf.terms {
                        let mut ms2 = ms.clone();
                        ms2.push(be.clone());
                        next.push((ms2, c.mul(bc)));
                    }
                }
                acc = next;
            }
            for (mut ms, c) in acc {
                ms.sort();
                let slot = out.entry(ms).or_insert_with(|| F::zero(alg.ctx));
                *slot = slot.add(&c);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Number of symmetric factors of a basis multiset.
pub fn sym_factor_count(key: &[Vec<u32>]) -> usize {
    key.len()
}

/// `β = S(π) ∘ μ` applied termwise: every block of every partition is
/// evaluated through `π` and the results multiply in the symmetric algebra
/// of the centraliser.
pub fn beta_map<F: Field>(alg: &LieAlg<F>, u: &UElement<F>) -> Result<Poly<AVar, F>> {
    let mut out = Poly::zero();
    for (e, coeff) in &u.terms {
        let word = UElement::<F>::word_of(e);
        for partition in set_partitions(word.len()) {
            let mut prod = Poly::constant(coeff.clone());
            for block in &partition {
                let sub: Vec<usize> = block.iter().map(|&pos| word[pos]).collect();
                let combo = alg.pi(&sub)?;
                let mut lin = Poly::zero();
                for (k, c) in combo {
                    lin.add_term(Monomial::var(AVar(k)), c);
                }
                prod = prod.mul(&lin);
            }
            out = out.add(&prod);
        }
    }
    Ok(out)
}

/// Outcome of the symmetrisation checks at a given cap.
#[derive(Clone, Debug, Serialize)]
pub struct GrBetaReport {
    pub monomials_checked: usize,
    pub symbol_failures: usize,
    pub equivariance_failures: usize,
    pub pass: bool,
}

/// All exponent vectors of total degree ≤ cap.
pub fn pbw_monomials(dim: usize, cap: usize) -> Vec<Vec<u32>> {
    fn rec(k: usize, rem: usize, cur: &mut Vec<u32>, dim: usize, out: &mut Vec<Vec<u32>>) {
        if k == dim {
            out.push(cur.clone());
            return;
        }
        for e in 0..=rem {
            cur[k] = e as u32;
            rec(k + 1, rem - e, cur, dim, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; dim];
    rec(0, cap, &mut cur, dim, &mut out);
    out.sort();
    out.dedup();
    out
}

/// Check `gr β = id` (the top symbol of `β(u)` equals the symbol of `u`)
/// and the derivation equivariance `β(ad x · u) = ad x · β(u)`, over all
/// PBW monomials of degree ≤ cap.
pub fn verify_gr_beta<F: Field>(alg: &LieAlg<F>, cap: usize) -> Result<GrBetaReport> {
    let mut monomials_checked = 0;
    let mut symbol_failures = 0;
    let mut equivariance_failures = 0;
    for e in pbw_monomials(alg.dim, cap) {
        monomials_checked += 1;
        let mut u = UElement::zero(cap + 1);
        u.add_term(e.clone(), F::one(alg.ctx));
        let b = beta_map(alg, &u)?;
        let d = e.iter().sum::<u32>() as usize;
        if b.homogeneous_component(d) != u.symbol() {
            symbol_failures += 1;
        }
        for x in 0..alg.dim {
            let lhs = beta_map(alg, &ad_u(alg, x, &u)?)?;
            let rhs = b.derivation(
                &|v: &AVar| {
                    let mut out = Poly::zero();
                    for (k, c) in alg.bracket_basis(x, v.0) {
                        out.add_term(Monomial::var(AVar(*k)), c.clone());
                    }
                    out
                },
                alg.ctx,
            );
            if lhs != rhs {
                equivariance_failures += 1;
            }
        }
    }
    Ok(GrBetaReport {
        monomials_checked,
        symbol_failures,
        equivariance_failures,
        pass: symbol_failures == 0 && equivariance_failures == 0,
    })
}

/// Check `π(ad x · u) = [x, π(u)]` over PBW monomials of degree ≤ cap.
pub fn verify_pi_equivariance<F: Field>(alg: &LieAlg<F>, cap: usize) -> Result<bool> {
    for e in pbw_monomials(alg.dim, cap) {
        let mut u = UElement::zero(cap + 1);
        u.add_term(e.clone(), F::one(alg.ctx));
        for x in 0..alg.dim {
            // π extends linearly over the normal form of ad x · u
            let au = ad_u(alg, x, &u)?;
            let mut lhs: BTreeMap<usize, F> = BTreeMap::new();
            for (ee, c) in &au.terms {
                for (k, v) in alg.pi(&UElement::<F>::word_of(ee))? {
                    let slot = lhs.entry(k).or_insert_with(|| F::zero(alg.ctx));
                    *slot = slot.add(&v.mul(c));
                }
            }
            lhs.retain(|_, v| !v.is_zero());
            let pu = alg.pi(&UElement::<F>::word_of(&e))?;
            let mut rhs: BTreeMap<usize, F> = BTreeMap::new();
            for (k, c) in &pu {
                for (z, cz) in alg.bracket_basis(x, *k) {
                    let slot = rhs.entry(*z).or_insert_with(|| F::zero(alg.ctx));
                    *slot = slot.add(&cz.mul(c));
                }
            }
            rhs.retain(|_, v| !v.is_zero());
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Check `μ(v_{j1}⋯v_{jm}) ≡ μ(v_{j1})∘⋯∘μ(v_{jm})` modulo terms with fewer
/// symmetric factors, for all PBW monomials of degree ≤ cap.
pub fn verify_mu_leading_term<F: Field>(alg: &LieAlg<F>, cap: usize) -> Result<bool> {
    for e in pbw_monomials(alg.dim, cap) {
        let m = e.iter().sum::<u32>() as usize;
        if m == 0 {
            continue;
        }
        let mut u = UElement::zero(cap);
        u.add_term(e.clone(), F::one(alg.ctx));
        let mut mu = milner_mu(alg, &u)?;
        // subtract the product of the singleton letters
        let word = UElement::<F>::word_of(&e);
        let mut singleton: Vec<Vec<u32>> = word
            .iter()
            .map(|&k| {
                let mut ee = vec![0u32; alg.dim];
                ee[k] = 1;
                ee
            })
            .collect();
        singleton.sort();
        let slot = mu.entry(singleton).or_insert_with(|| F::zero(alg.ctx));
        *slot = slot.sub(&F::one(alg.ctx));
        mu.retain(|_, v| !v.is_zero());
        if mu.keys().any(|key| sym_factor_count(key) >= m) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Group-level equivariance of the symmetrisation for the full
/// centraliser: `β(g u g^{-1}) = g · β(u)` for the unipotent generators
/// `g = 1 + t ξ` evaluated at the given parameter values. Only the `gl`
/// case has an enumerated generator set.
pub fn verify_beta_group_equivariance<F: Field>(
    alg: &LieAlg<F>,
    cap: usize,
    t_values: &[i64],
) -> Result<bool> {
    assert!(
        alg.case == EpsilonCase::Gl,
        "group generators are enumerated only for the full centraliser"
    );
    let lambda = &alg.lambda;
    let n = lambda.total();
    let ctx = alg.ctx;
    let generators: Vec<usize> = enumerate_basis(lambda)
        .iter()
        .enumerate()
        .filter(|(_, b)| b.i != b.j || b.s > 0)
        .map(|(k, _)| k)
        .collect();
    let identity: Mat<F> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| if r == c { F::one(ctx) } else { F::zero(ctx) })
                .collect()
        })
        .collect();
    for &g_idx in &generators {
        for &t0 in t_values {
            let t = F::from_i64(ctx, t0);
            let g = mat_axpy(&identity, &t, alg.matrix(g_idx));
            // the generator matrix is nilpotent, so the inverse is the
            // finite alternating geometric series
            let mut g_inv = identity.clone();
            let mut power = alg.matrix(g_idx).clone();
            let mut sign_t = t.neg();
            loop {
                if power.iter().all(|row| row.iter().all(|x| x.is_zero())) {
                    break;
                }
                g_inv = mat_axpy(&g_inv, &sign_t, &power);
                power = mat_mul(&power, alg.matrix(g_idx), ctx);
                sign_t = sign_t.mul(&t.neg());
            }
            // images of the basis under conjugation
            let mut images_lin: Vec<Vec<(usize, F)>> = Vec::with_capacity(alg.dim);
            for k in 0..alg.dim {
                let conj = mat_mul(&mat_mul(&g, alg.matrix(k), ctx), &g_inv, ctx);
                images_lin.push(alg.from_matrix(&conj)?);
            }
            for e in pbw_monomials(alg.dim, cap) {
                let mut u = UElement::zero(cap);
                u.add_term(e.clone(), F::one(ctx));
                // transport u through the group element, factor by factor
                let mut moved = UElement::one(alg, cap);
                for &k in &UElement::<F>::word_of(&e) {
                    let mut factor = UElement::zero(cap);
                    for (kk, c) in &images_lin[k] {
                        let mut ee = vec![0u32; alg.dim];
                        ee[*kk] = 1;
                        factor.add_term(ee, c.clone());
                    }
                    moved = u_mul(alg, &moved, &factor)?;
                }
                let lhs = beta_map(alg, &moved)?;
                let subs: std::collections::BTreeMap<AVar, Poly<AVar, F>> = (0..alg.dim)
                    .map(|k| {
                        let mut img = Poly::zero();
                        for (kk, c) in &images_lin[k] {
                            img.add_term(Monomial::var(AVar(*kk)), c.clone());
                        }
                        (AVar(k), img)
                    })
                    .collect();
                let rhs = beta_map(alg, &u)?.substitute(&subs, ctx)?;
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// The dimension bound `p^{(dim - ind)/2}` for the case's algebra, using
/// the computed index. A non-even difference is reported as an error.
pub fn zassenhaus_bound(lambda: &Partition, case: EpsilonCase, p: u64) -> Result<u128> {
    let dim = match case {
        EpsilonCase::Gl => dim_centralizer(lambda),
        EpsilonCase::Sp | EpsilonCase::So => {
            let form = FormData::new(lambda, case)?;
            zeta_eta_basis(&form).dims().0
        }
    };
    let index = crate::coadjoint::index_report(lambda, case)?;
    if (dim - index) % 2 != 0 {
        return Err(Error::NonIntegralExponent { dim, index });
    }
    let exp = ((dim - index) / 2) as u32;
    (p as u128)
        .checked_pow(exp)
        .ok_or_else(|| Error::Overflow(format!("{p}^{exp}")))
}
