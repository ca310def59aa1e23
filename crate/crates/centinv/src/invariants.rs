//! The elementary invariants `x_1, …, x_N` on the dual of the centraliser,
//! their restrictions to the symplectic / orthogonal duals, and the
//! verification suites for invariance, sign parity, vanishing and graded
//! generation over the p-th power subalgebra.

use crate::centralizer::{
    bracket, compose, enumerate_basis, in_range, BasisIndex, FormData, PairIndex, Resolved,
    ZetaEtaBasis,
};
use crate::combinatorics::{
    compositions, degree_sequence, r_selected, Composition, EpsilonCase, Partition,
};
use crate::field::Field;
use crate::linalg;
use crate::polyring::{ad_derivation, monomials_of_degree, Monomial, Poly};
use crate::{Error, Result};
use itertools::Itertools;
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;

/// Sign of a permutation given as images of `0..d`.
pub fn perm_sign(w: &[usize]) -> i64 {
    let mut inversions = 0;
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            if w[a] > w[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The signed monomial `Θ_r(w, μ)`; zero when any factor is out of range.
///
/// The `k`-th factor is `ξ_{i_k}^{i_{wk}, s_k}` with
/// `s_k = λ_{i_{wk}} - λ_{i_k} + μ_{i_k} - 1` on the support `i_1 < … < i_d`
/// of `μ`.
pub fn theta<F: Field>(
    lambda: &Partition,
    w: &[usize],
    mu: &Composition,
    ctx: F::Ctx,
) -> Poly<BasisIndex, F> {
    let supp = mu.support();
    debug_assert_eq!(supp.len(), w.len());
    let mut factors = Vec::with_capacity(supp.len());
    for (k, &ik) in supp.iter().enumerate() {
        let target = supp[w[k]];
        let shift =
            lambda.part(target) as i64 - lambda.part(ik) as i64 + mu.entry(ik) as i64 - 1;
        if shift < 0 {
            return Poly::zero();
        }
        let idx = BasisIndex::new(ik, target, shift as usize);
        if !in_range(idx, lambda) {
            return Poly::zero();
        }
        factors.push((idx, 1u32));
    }
    Poly::term(
        Monomial::from_factors(factors),
        F::from_i64(ctx, perm_sign(w)),
    )
}

/// The elementary invariant `x_r`: the sum of `Θ_r(w, μ)` over all
/// permutations of `d_r` letters and all compositions with `|μ| = r`,
/// `l(μ) = d_r`. Homogeneous of degree `d_r`.
pub fn elementary_invariant<F: Field>(
    lambda: &Partition,
    r: usize,
    ctx: F::Ctx,
) -> Poly<BasisIndex, F> {
    let d = degree_sequence(lambda).degree(r);
    let mut out = Poly::zero();
    for mu in compositions(lambda, r, d) {
        for w in (0..d).permutations(d) {
            out = out.add(&theta(lambda, &w, &mu, ctx));
        }
    }
    debug_assert!(out.is_homogeneous());
    debug_assert!(out.is_zero() || out.degree() == Some(d));
    out
}

/// All of `x_1, …, x_N`.
pub fn all_invariants<F: Field>(lambda: &Partition, ctx: F::Ctx) -> Vec<Poly<BasisIndex, F>> {
    (1..=lambda.total())
        .map(|r| elementary_invariant(lambda, r, ctx))
        .collect()
}

/// Extend `σ` multiplicatively to a polynomial in the `ξ` variables.
pub fn sigma_on_poly<F: Field>(
    form: &FormData,
    f: &Poly<BasisIndex, F>,
    ctx: F::Ctx,
) -> Poly<BasisIndex, F> {
    let mut out = Poly::zero();
    for (m, c) in f.terms() {
        let mut sign = 1i64;
        let mut factors = Vec::with_capacity(m.factors().len());
        for (v, e) in m.factors() {
            let (img, s) = form.sigma_index(*v);
            if *e % 2 == 1 && s == -1 {
                sign = -sign;
            }
            factors.push((img, *e));
        }
        out.add_term(
            Monomial::from_factors(factors),
            c.mul(&F::from_i64(ctx, sign)),
        );
    }
    out
}

/// Variable of a restricted polynomial: a canonical `ζ` or `η` symbol.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub enum RVar {
    Zeta(PairIndex),
    Eta(PairIndex),
}

impl fmt::Display for RVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RVar::Zeta(p) => write!(f, "zeta{p}"),
            RVar::Eta(p) => write!(f, "eta{p}"),
        }
    }
}

/// Which restricted dual a polynomial lives on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum RestrictTarget {
    K,
    P,
}

impl fmt::Display for RestrictTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RestrictTarget::K => write!(f, "k_e*"),
            RestrictTarget::P => write!(f, "p_e*"),
        }
    }
}

/// The substitution implementing restriction: on the `+1` dual each
/// `ξ_i^{j,λ_j-1-s}` becomes `½ ζ_i^{j,s}` (the `η` part vanishes), and
/// symmetrically on the `-1` dual. Requires an invertible 2.
pub fn restriction_images<F: Field>(
    form: &FormData,
    zh: &ZetaEtaBasis,
    target: RestrictTarget,
    ctx: F::Ctx,
) -> Result<BTreeMap<BasisIndex, Poly<RVar, F>>> {
    let two = F::from_i64(ctx, 2);
    let half = two.inv().ok_or(Error::CharacteristicTwo)?;
    let mut images = BTreeMap::new();
    for idx in enumerate_basis(&form.lambda) {
        let s_dual = form.lambda.part(idx.j) - 1 - idx.s;
        let p = PairIndex {
            i: idx.i,
            j: idx.j,
            s: s_dual,
        };
        let (resolved, wrap): (Resolved, fn(PairIndex) -> RVar) = match target {
            RestrictTarget::K => (zh.resolve_zeta(p), RVar::Zeta as fn(PairIndex) -> RVar),
            RestrictTarget::P => (zh.resolve_eta(p), RVar::Eta as fn(PairIndex) -> RVar),
        };
        let img = match resolved {
            Resolved::Zero => Poly::zero(),
            Resolved::Canonical { position, sign } => {
                let canon = match target {
                    RestrictTarget::K => zh.zeta[position].idx,
                    RestrictTarget::P => zh.eta[position].idx,
                };
                Poly::var(wrap(canon), ctx).scale(&half.mul(&F::from_i64(ctx, sign)))
            }
        };
        images.insert(idx, img);
    }
    Ok(images)
}

/// A restricted invariant `x_r|` in canonical `ζ` or `η` coordinates.
#[derive(Clone, Debug)]
pub struct RestrictedInvariant<F: Field> {
    pub r: usize,
    pub target: RestrictTarget,
    pub poly: Poly<RVar, F>,
}

pub fn restrict<F: Field>(
    form: &FormData,
    zh: &ZetaEtaBasis,
    r: usize,
    target: RestrictTarget,
    ctx: F::Ctx,
) -> Result<RestrictedInvariant<F>> {
    let x = elementary_invariant(&form.lambda, r, ctx);
    let images = restriction_images(form, zh, target, ctx)?;
    Ok(RestrictedInvariant {
        r,
        target,
        poly: x.substitute_linear(&images, ctx)?,
    })
}

/// The selected generator labels per case: all `r` for `gl`, even `r` for
/// `sp`, `r + d_r` even for `so`.
pub fn selected_rs(lambda: &Partition, case: EpsilonCase) -> Vec<usize> {
    let d = degree_sequence(lambda);
    (1..=lambda.total())
        .filter(|&r| r_selected(case, r, d.degree(r)))
        .collect()
}

/// Outcome of the invariance suite for one `(λ, field)`.
#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub ad_pairs_checked: usize,
    pub group_pairs_checked: usize,
    pub torus_monomials_checked: usize,
    /// First failing `(ξ, r)` of the derivation check, if any.
    pub ad_failure: Option<(BasisIndex, usize)>,
    pub group_failure: Option<(BasisIndex, usize)>,
    pub torus_failure: Option<usize>,
    pub pass: bool,
}

/// Infinitesimal invariance `ad_derivation(ξ, x_r) = 0`, the symbolic
/// one-parameter group identity, and the torus weight balance, for every
/// basis element and every `r`.
pub fn verify_ad_invariance<F: Field>(lambda: &Partition, ctx: F::Ctx) -> InvarianceReport {
    let basis = enumerate_basis(lambda);
    let xs = all_invariants::<F>(lambda, ctx);
    let mut pairs = 0;
    let mut ad_failure = None;
    'outer: for &b in &basis {
        let x_elem = vec![(b, F::one(ctx))];
        for (r0, x) in xs.iter().enumerate() {
            pairs += 1;
            if !ad_derivation(&x_elem, x, lambda, ctx).is_zero() {
                ad_failure = Some((b, r0 + 1));
                break 'outer;
            }
        }
    }

    let (group_pairs, group_failure) = verify_group_invariance::<F>(lambda, &xs, ctx);
    let (torus_monomials, torus_failure) = verify_torus_balance(lambda, &xs);

    InvarianceReport {
        ad_pairs_checked: pairs,
        group_pairs_checked: group_pairs,
        torus_monomials_checked: torus_monomials,
        ad_failure,
        group_failure,
        torus_failure,
        pass: ad_failure.is_none() && group_failure.is_none() && torus_failure.is_none(),
    }
}

/// Variable for the symbolic one-parameter group check: the parameter `t`
/// or a coordinate `ξ`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum GVar {
    T,
    Xi(BasisIndex),
}

impl fmt::Display for GVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GVar::T => write!(f, "t"),
            GVar::Xi(b) => write!(f, "{b}"),
        }
    }
}

/// `m`-fold composition of a basis symbol with itself; `None` is zero.
fn op_pow(b: BasisIndex, m: usize, lambda: &Partition) -> Option<BasisIndex> {
    debug_assert!(m >= 1);
    let mut acc = b;
    for _ in 1..m {
        acc = compose(acc, b, lambda)?;
    }
    Some(acc)
}

/// The one-parameter subgroups `1 + tξ_i^{j,s}` with `i ≠ j` and
/// `1 + tξ_i^{i,s}` with `s > 0`; together with the block-scaling torus
/// they generate the centraliser group.
pub fn group_generators(lambda: &Partition) -> Vec<BasisIndex> {
    enumerate_basis(lambda)
        .into_iter()
        .filter(|b| b.i != b.j || b.s > 0)
        .collect()
}

/// Conjugation `y ↦ (1 + tξ)^{-1} ∘ y ∘ (1 + tξ)` as a polynomial in `t`
/// with coefficients in the span of the basis symbols.
fn conjugation_image<F: Field>(
    xi: BasisIndex,
    y: BasisIndex,
    lambda: &Partition,
    ctx: F::Ctx,
) -> Poly<GVar, F> {
    // (Σ_m (-t)^m ξ^m) ∘ y ∘ (1 + tξ)
    //   = y + t(y∘ξ) + Σ_{m≥1} (-1)^m [ t^m (ξ^m ∘ y) + t^{m+1} (ξ^m ∘ y ∘ ξ) ]
    let mut out = Poly::var(GVar::Xi(y), ctx);
    let y_xi = compose(y, xi, lambda);
    if let Some(yx) = y_xi {
        out.add_term(
            Monomial::from_factors(vec![(GVar::T, 1), (GVar::Xi(yx), 1)]),
            F::one(ctx),
        );
    }
    let mut m = 1;
    while let Some(xm) = op_pow(xi, m, lambda) {
        let sign = F::from_i64(ctx, if m % 2 == 0 { 1 } else { -1 });
        if let Some(xy) = compose(xm, y, lambda) {
            out.add_term(
                Monomial::from_factors(vec![(GVar::T, m as u32), (GVar::Xi(xy), 1)]),
                sign.clone(),
            );
        }
        if let Some(yx) = y_xi {
            if let Some(xyx) = compose(xm, yx, lambda) {
                out.add_term(
                    Monomial::from_factors(vec![(GVar::T, m as u32 + 1), (GVar::Xi(xyx), 1)]),
                    sign,
                );
            }
        }
        m += 1;
        assert!(m <= lambda.total() + 1, "nilpotency bounds the expansion");
    }
    out
}

/// The group-level identity `x_r(Ad*(1 + tξ) γ) = x_r(γ)` as an exact
/// polynomial identity in `t` and the coordinates of `γ`, checked for every
/// generator and every `r`.
fn verify_group_invariance<F: Field>(
    lambda: &Partition,
    xs: &[Poly<BasisIndex, F>],
    ctx: F::Ctx,
) -> (usize, Option<(BasisIndex, usize)>) {
    let ident: BTreeMap<BasisIndex, Poly<GVar, F>> = enumerate_basis(lambda)
        .into_iter()
        .map(|b| (b, Poly::var(GVar::Xi(b), ctx)))
        .collect();
    let mut pairs = 0;
    for xi in group_generators(lambda) {
        let mut images: BTreeMap<BasisIndex, Poly<GVar, F>> = BTreeMap::new();
        for y in enumerate_basis(lambda) {
            images.insert(y, conjugation_image(xi, y, lambda, ctx));
        }
        for (r0, x) in xs.iter().enumerate() {
            pairs += 1;
            let transported = x.substitute(&images, ctx).expect("all variables mapped");
            let expected = x.substitute(&ident, ctx).expect("identity images");
            if transported != expected {
                return (pairs, Some((xi, r0 + 1)));
            }
        }
    }
    (pairs, None)
}

/// Invariance under the block-scaling torus: in every monomial of every
/// `x_r`, each block occurs as often as a source as it does as a target.
fn verify_torus_balance<F: Field>(
    lambda: &Partition,
    xs: &[Poly<BasisIndex, F>],
) -> (usize, Option<usize>) {
    let mut checked = 0;
    for (r0, x) in xs.iter().enumerate() {
        for (m, _) in x.terms() {
            checked += 1;
            let mut weight = vec![0i64; lambda.len() + 1];
            for (v, e) in m.factors() {
                weight[v.i] -= *e as i64;
                weight[v.j] += *e as i64;
            }
            if weight.iter().any(|&w| w != 0) {
                return (checked, Some(r0 + 1));
            }
        }
    }
    (checked, None)
}

/// Outcome of the parity / vanishing / distinctness suite.
#[derive(Clone, Debug, Serialize)]
pub struct ParityReport {
    /// `(r, σ-parity holds)` per invariant.
    pub parity: Vec<(usize, bool)>,
    /// `(r, target, restriction is zero, zero expected)`.
    pub vanishing: Vec<(usize, RestrictTarget, bool, bool)>,
    /// Surviving restrictions are pairwise distinct and nonzero.
    pub distinct: bool,
    pub pass: bool,
}

/// Check `σ(x_r) = (-1)^r x_r`, the predicted vanishing of restrictions on
/// both targets, and distinctness of the surviving family on the case's own
/// target.
pub fn verify_sigma_parity<F: Field>(
    form: &FormData,
    zh: &ZetaEtaBasis,
    ctx: F::Ctx,
) -> Result<ParityReport> {
    let lambda = &form.lambda;
    let d = degree_sequence(lambda);
    let n_total = lambda.total();
    let mut parity = Vec::new();
    let mut vanishing = Vec::new();
    for r in 1..=n_total {
        let x = elementary_invariant::<F>(lambda, r, ctx);
        let sx = sigma_on_poly(form, &x, ctx);
        let want = if r % 2 == 0 { x.clone() } else { x.neg() };
        parity.push((r, sx == want));
        for target in [RestrictTarget::K, RestrictTarget::P] {
            let expected_zero = match target {
                RestrictTarget::K => r % 2 == 1,
                RestrictTarget::P => (r + d.degree(r)) % 2 == 1,
            };
            let restricted: RestrictedInvariant<F> = restrict(form, zh, r, target, ctx)?;
            vanishing.push((r, target, restricted.poly.is_zero(), expected_zero));
        }
    }
    // distinctness on the case's own dual
    let own_target = match form.case {
        EpsilonCase::Sp => RestrictTarget::K,
        EpsilonCase::So => RestrictTarget::P,
        EpsilonCase::Gl => unreachable!("form data implies sp or so"),
    };
    let survivors: Vec<Poly<RVar, F>> = selected_rs(lambda, form.case)
        .into_iter()
        .map(|r| restrict(form, zh, r, own_target, ctx).map(|ri| ri.poly))
        .collect::<Result<_>>()?;
    let mut distinct = survivors.iter().all(|f| !f.is_zero());
    for a in 0..survivors.len() {
        for b in a + 1..survivors.len() {
            if survivors[a] == survivors[b] {
                distinct = false;
            }
        }
    }
    let pass = parity.iter().all(|(_, ok)| *ok)
        && vanishing.iter().all(|(_, _, z, e)| z == e)
        && distinct;
    Ok(ParityReport {
        parity,
        vanishing,
        distinct,
        pass,
    })
}

/// Per-degree dimensions of the derivation-kernel invariants and of the
/// subalgebra generated by p-th powers of the variables together with the
/// case's invariant generators.
#[derive(Clone, Debug, Serialize)]
pub struct GradedDimensionReport {
    pub rows: Vec<GradedRow>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GradedRow {
    pub degree: usize,
    pub invariant_dim: usize,
    pub generated_dim: usize,
}

/// Upper bound on the number of monomials handled per degree before giving
/// up with [`Error::ResourceCap`].
pub const MONOMIAL_CAP: usize = 200_000;

/// The acting derivations, ambient variables and generator polynomials for
/// one case: the full centraliser on its own symmetric algebra for `gl`,
/// the `σ`-fixed subalgebra on itself for `sp`, and the `σ`-fixed
/// subalgebra acting on the `-1` eigenspace for `so`.
struct GradedSetup<F: Field> {
    vars: Vec<RVar>,
    /// For each acting basis element, the images of every variable.
    actions: Vec<BTreeMap<RVar, Poly<RVar, F>>>,
    generators: Vec<Poly<RVar, F>>,
}

fn graded_setup<F: Field>(
    lambda: &Partition,
    case: EpsilonCase,
    ctx: F::Ctx,
) -> Result<GradedSetup<F>> {
    match case {
        EpsilonCase::Gl => {
            // reuse the RVar type for the plain ξ variables
            let basis = enumerate_basis(lambda);
            let as_rvar = |b: BasisIndex| {
                RVar::Zeta(PairIndex {
                    i: b.i,
                    j: b.j,
                    s: b.s,
                })
            };
            let vars: Vec<RVar> = basis.iter().map(|&b| as_rvar(b)).collect();
            let mut actions = Vec::new();
            for &a in &basis {
                let mut rule = BTreeMap::new();
                for &v in &basis {
                    let mut img = Poly::zero();
                    for (w, k) in bracket(a, v, lambda) {
                        img.add_term(Monomial::var(as_rvar(w)), F::from_i64(ctx, k));
                    }
                    rule.insert(as_rvar(v), img);
                }
                actions.push(rule);
            }
            let remap: BTreeMap<BasisIndex, Poly<RVar, F>> = basis
                .iter()
                .map(|&b| (b, Poly::var(as_rvar(b), ctx)))
                .collect();
            let generators = (1..=lambda.total())
                .map(|r| {
                    elementary_invariant::<F>(lambda, r, ctx)
                        .substitute(&remap, ctx)
                        .expect("total remap")
                })
                .collect();
            Ok(GradedSetup {
                vars,
                actions,
                generators,
            })
        }
        EpsilonCase::Sp | EpsilonCase::So => {
            let form = FormData::new(lambda, case)?;
            let zh = crate::centralizer::zeta_eta_basis(&form);
            let target = match case {
                EpsilonCase::Sp => RestrictTarget::K,
                _ => RestrictTarget::P,
            };
            let (module, wrap): (&[crate::centralizer::SpanElem], fn(PairIndex) -> RVar) =
                match target {
                    RestrictTarget::K => (&zh.zeta, RVar::Zeta as fn(PairIndex) -> RVar),
                    RestrictTarget::P => (&zh.eta, RVar::Eta as fn(PairIndex) -> RVar),
                };
            let vars: Vec<RVar> = module.iter().map(|e| wrap(e.idx)).collect();
            // the σ-fixed subalgebra acts; express [ζ_a, v] over the module
            let mut actions = Vec::new();
            for a in zh.zeta.iter() {
                let mut rule = BTreeMap::new();
                for v in module.iter() {
                    let mut xi_combo: BTreeMap<BasisIndex, i64> = BTreeMap::new();
                    for (xa, ca) in &a.terms {
                        for (xv, cv) in &v.terms {
                            for (w, k) in bracket(*xa, *xv, lambda) {
                                *xi_combo.entry(w).or_insert(0) += ca * cv * k;
                            }
                        }
                    }
                    xi_combo.retain(|_, c| *c != 0);
                    let flat: Vec<(BasisIndex, i64)> = xi_combo.into_iter().collect();
                    let coords = match target {
                        RestrictTarget::K => zh.zeta_coords(&flat)?,
                        RestrictTarget::P => zh.eta_coords(&flat)?,
                    };
                    let mut img = Poly::zero();
                    for (position, c) in coords {
                        img.add_term(
                            Monomial::var(wrap(module[position].idx)),
                            F::from_i64(ctx, c),
                        );
                    }
                    rule.insert(wrap(v.idx), img);
                }
                actions.push(rule);
            }
            let generators = selected_rs(lambda, case)
                .into_iter()
                .map(|r| restrict(&form, &zh, r, target, ctx).map(|ri| ri.poly))
                .collect::<Result<_>>()?;
            Ok(GradedSetup {
                vars,
                actions,
                generators,
            })
        }
    }
}

/// Compare, degree by degree up to `dmax`, the dimension of the space of
/// derivation-invariant homogeneous polynomials against the dimension of
/// the degree component generated by p-th powers of variables and the
/// invariant generators.
pub fn graded_invariant_dims<F: Field>(
    lambda: &Partition,
    case: EpsilonCase,
    ctx: F::Ctx,
    dmax: usize,
) -> Result<GradedDimensionReport> {
    let p = F::characteristic(ctx) as usize;
    if p < 2 {
        return Err(Error::Usage("graded dimensions need a prime field".into()));
    }
    let setup = graded_setup::<F>(lambda, case, ctx)?;
    let gen_degrees: Vec<usize> = setup
        .generators
        .iter()
        .map(|g| g.degree().expect("generators are nonzero"))
        .collect();
    let mut rows = Vec::new();
    for degree in 0..=dmax {
        let monoms = monomials_of_degree(&setup.vars, degree);
        if monoms.len() > MONOMIAL_CAP {
            return Err(Error::ResourceCap {
                degree,
                count: monoms.len(),
            });
        }
        let col_of: BTreeMap<&Monomial<RVar>, usize> =
            monoms.iter().enumerate().map(|(k, m)| (m, k)).collect();
        let n = monoms.len();
        // invariant dimension: kernel of the stacked derivation matrices
        let mut stacked: linalg::Mat<F> = Vec::new();
        for rule in &setup.actions {
            let mut block = vec![vec![F::zero(ctx); n]; n];
            for (src, m) in monoms.iter().enumerate() {
                let image = Poly::term(m.clone(), F::one(ctx))
                    .derivation(&|v: &RVar| rule[v].clone(), ctx);
                for (mm, c) in image.terms() {
                    block[col_of[mm]][src] = c.clone();
                }
            }
            stacked.extend(block);
        }
        let invariant_dim = n - linalg::rank(&stacked);
        // generated dimension: span of m^p · Π g^b over weighted exponents
        let mut rows_gen: linalg::Mat<F> = Vec::new();
        enumerate_products(
            &setup.generators,
            &gen_degrees,
            0,
            degree,
            &Poly::one(ctx),
            ctx,
            p,
            &setup.vars,
            &mut |poly| {
                let mut row = vec![F::zero(ctx); n];
                for (mm, c) in poly.terms() {
                    row[col_of[mm]] = c.clone();
                }
                rows_gen.push(row);
            },
        );
        let generated_dim = linalg::rank(&rows_gen);
        rows.push(GradedRow {
            degree,
            invariant_dim,
            generated_dim,
        });
    }
    let pass = rows.iter().all(|r| r.invariant_dim == r.generated_dim);
    Ok(GradedDimensionReport { rows, pass })
}

/// Recursively multiply out generator powers, then pad with `m^p`.
#[allow(clippy::too_many_arguments)]
fn enumerate_products<F: Field>(
    generators: &[Poly<RVar, F>],
    degrees: &[usize],
    idx: usize,
    remaining: usize,
    acc: &Poly<RVar, F>,
    ctx: F::Ctx,
    p: usize,
    vars: &[RVar],
    emit: &mut dyn FnMut(&Poly<RVar, F>),
) {
    if idx == generators.len() {
        if remaining.is_multiple_of(p) {
            let k = remaining / p;
            for m in monomials_of_degree(vars, k) {
                let factors: Vec<(RVar, u32)> = m
                    .factors()
                    .iter()
                    .map(|(v, e)| (*v, e * p as u32))
                    .collect();
                let pth = Poly::term(Monomial::from_factors(factors), F::one(ctx));
                emit(&acc.mul(&pth));
            }
        }
        return;
    }
    let d = degrees[idx];
    let mut power = acc.clone();
    let mut used = 0;
    loop {
        enumerate_products(
            generators,
            degrees,
            idx + 1,
            remaining - used,
            &power,
            ctx,
            p,
            vars,
            emit,
        );
        used += d;
        if used > remaining {
            break;
        }
        power = power.mul(&generators[idx]);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::zeta_eta_basis;
    use crate::field::{Fp, Rat};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn xi(i: usize, j: usize, s: usize) -> BasisIndex {
        BasisIndex::new(i, j, s)
    }

    #[test]
    fn theta_examples() {
        let lam = p(&[2, 1]);
        // r=1, w=id, μ=(1,0) → ξ_1^{1,0}
        let mu = compositions(&lam, 1, 1)
            .into_iter()
            .find(|m| m.entries() == [1, 0])
            .unwrap();
        let t: Poly<BasisIndex, Rat> = theta(&lam, &[0], &mu, ());
        assert_eq!(t, Poly::var(xi(1, 1, 0), ()));
        // single block: x_r = ξ_1^{1,r-1}
        let lam_n = p(&[4]);
        for r in 1..=4 {
            let mu = compositions(&lam_n, r, 1).pop().unwrap();
            let t: Poly<BasisIndex, Rat> = theta(&lam_n, &[0], &mu, ());
            assert_eq!(t, Poly::var(xi(1, 1, r - 1), ()));
        }
        // r=3, w=(12), μ=(2,1) → -ξ_1^{2,0} ξ_2^{1,1}
        let mu = compositions(&lam, 3, 2).pop().unwrap();
        let t: Poly<BasisIndex, Rat> = theta(&lam, &[1, 0], &mu, ());
        let want = Poly::term(
            Monomial::from_factors(vec![(xi(1, 2, 0), 1), (xi(2, 1, 1), 1)]),
            Rat::from_parts(-1, 1),
        );
        assert_eq!(t, want);
    }

    #[test]
    fn elementary_invariant_examples() {
        // λ=(N): x_r = ξ_1^{1,r-1}
        let lam = p(&[5]);
        for r in 1..=5 {
            let x: Poly<BasisIndex, Rat> = elementary_invariant(&lam, r, ());
            assert_eq!(x, Poly::var(xi(1, 1, r - 1), ()));
        }
        // λ=(2,1): x_3 = ξ_1^{1,1} ξ_2^{2,0} - ξ_1^{2,0} ξ_2^{1,1}
        let lam = p(&[2, 1]);
        let x3: Poly<BasisIndex, Rat> = elementary_invariant(&lam, 3, ());
        let want = Poly::from_terms(vec![
            (
                Monomial::from_factors(vec![(xi(1, 1, 1), 1), (xi(2, 2, 0), 1)]),
                Rat::from_parts(1, 1),
            ),
            (
                Monomial::from_factors(vec![(xi(1, 2, 0), 1), (xi(2, 1, 1), 1)]),
                Rat::from_parts(-1, 1),
            ),
        ]);
        assert_eq!(x3, want);
        // e = 0: x_1 is the trace
        let lam = p(&[1, 1, 1]);
        let x1: Poly<BasisIndex, Rat> = elementary_invariant(&lam, 1, ());
        let want = Poly::from_terms(
            (1..=3)
                .map(|i| (Monomial::var(xi(i, i, 0)), Rat::from_parts(1, 1)))
                .collect(),
        );
        assert_eq!(x1, want);
    }

    #[test]
    fn invariants_homogeneous() {
        for lambda in Partition::enumerate_up_to(6) {
            let d = degree_sequence(&lambda);
            for r in 1..=lambda.total() {
                let x: Poly<BasisIndex, Rat> = elementary_invariant(&lambda, r, ());
                assert!(x.is_homogeneous());
                assert_eq!(x.degree(), Some(d.degree(r)), "λ={lambda} r={r}");
            }
        }
    }

    #[test]
    fn ad_invariance_small_cases() {
        for (parts, prime) in [(vec![3usize], 3u64), (vec![1, 1], 3), (vec![2, 1], 5)] {
            let lambda = Partition::new(parts).unwrap();
            let rep = verify_ad_invariance::<Fp>(&lambda, prime);
            assert!(rep.pass, "λ={lambda} p={prime}: {rep:?}");
        }
    }

    #[test]
    fn sigma_parity_sp2() {
        let lambda = p(&[2]);
        let form = FormData::new(&lambda, EpsilonCase::Sp).unwrap();
        let zh = zeta_eta_basis(&form);
        // σ(x_1) = -x_1 since x_1 = ξ_1^{1,0}
        let x1: Poly<BasisIndex, Rat> = elementary_invariant(&lambda, 1, ());
        assert_eq!(sigma_on_poly(&form, &x1, ()), x1.neg());
        let rep = verify_sigma_parity::<Rat>(&form, &zh, ()).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn restriction_examples() {
        // Sp λ=(2): x_1|_k = 0, x_2|_k = ½ζ_1^{1,0}
        let lambda = p(&[2]);
        let form = FormData::new(&lambda, EpsilonCase::Sp).unwrap();
        let zh = zeta_eta_basis(&form);
        let r1 = restrict::<Rat>(&form, &zh, 1, RestrictTarget::K, ()).unwrap();
        assert!(r1.poly.is_zero());
        let r2 = restrict::<Rat>(&form, &zh, 2, RestrictTarget::K, ()).unwrap();
        let want = Poly::var(RVar::Zeta(PairIndex { i: 1, j: 1, s: 0 }), ())
            .scale(&Rat::from_parts(1, 2));
        assert_eq!(r2.poly, want);
        // So λ=(3): x_1|_p = ½η_1^{1,2}, x_3|_p = ½η_1^{1,0}
        let lambda = p(&[3]);
        let form = FormData::new(&lambda, EpsilonCase::So).unwrap();
        let zh = zeta_eta_basis(&form);
        let r1 = restrict::<Rat>(&form, &zh, 1, RestrictTarget::P, ()).unwrap();
        let want1 = Poly::var(RVar::Eta(PairIndex { i: 1, j: 1, s: 2 }), ())
            .scale(&Rat::from_parts(1, 2));
        assert_eq!(r1.poly, want1);
        let r3 = restrict::<Rat>(&form, &zh, 3, RestrictTarget::P, ()).unwrap();
        let want3 = Poly::var(RVar::Eta(PairIndex { i: 1, j: 1, s: 0 }), ())
            .scale(&Rat::from_parts(1, 2));
        assert_eq!(r3.poly, want3);
    }

    #[test]
    fn graded_dims_single_block() {
        // abelian: every polynomial is invariant, and the generators are all
        // the variables, so the generated side matches in every degree
        let lambda = p(&[3]);
        let rep = graded_invariant_dims::<Fp>(&lambda, EpsilonCase::Gl, 3, 4).unwrap();
        assert!(rep.pass, "{rep:?}");
        for row in &rep.rows {
            let vars: Vec<u32> = vec![0, 1, 2];
            let full = monomials_of_degree(&vars, row.degree).len();
            assert_eq!(row.invariant_dim, full);
        }
    }

    #[test]
    fn graded_dims_sp2_trivial() {
        let lambda = p(&[2]);
        let rep = graded_invariant_dims::<Fp>(&lambda, EpsilonCase::Sp, 3, 4).unwrap();
        assert!(rep.pass, "{rep:?}");
        for row in &rep.rows {
            assert_eq!(row.invariant_dim, 1);
        }
    }

    #[test]
    fn ad_derivation_annihilates_invariants_explicitly() {
        // λ=(2,1), p=5: every basis derivation kills every x_r
        let lambda = p(&[2, 1]);
        let ctx = 5u64;
        for b in enumerate_basis(&lambda) {
            for r in 1..=3 {
                let x: Poly<BasisIndex, Fp> = elementary_invariant(&lambda, r, ctx);
                let d = ad_derivation(&[(b, Fp::one(ctx))], &x, &lambda, ctx);
                assert!(d.is_zero(), "ad({b}) x_{r} ≠ 0");
            }
        }
    }
}
