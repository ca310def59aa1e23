//! The coadjoint action on the dual of the centraliser, the distinguished
//! dual points `α`, `β`, `β̄`, the scaling action `ρ`, generic-stabiliser
//! and index computations, and the Jacobian-rank probes at the
//! distinguished points.

use crate::centralizer::{
    bracket, enumerate_basis, in_range, BasisIndex, FormData, SpanElem,
};
use crate::combinatorics::{degree_sequence, EpsilonCase, Partition};
use crate::field::Field;
use crate::invariants::{all_invariants, restrict, selected_rs, RVar, RestrictTarget};
use crate::linalg;
use crate::polyring::{jacobian_rank, DualPoint, Poly};
use crate::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;

/// A linear combination of basis maps with field coefficients.
pub type Combo<F> = Vec<(BasisIndex, F)>;

/// Bracket of two combinations, coefficientwise.
pub fn bracket_combo<F: Field>(
    a: &[(BasisIndex, F)],
    b: &[(BasisIndex, F)],
    lambda: &Partition,
    ctx: F::Ctx,
) -> Combo<F> {
    let mut acc: BTreeMap<BasisIndex, F> = BTreeMap::new();
    for (xa, ca) in a {
        for (xb, cb) in b {
            for (w, k) in bracket(*xa, *xb, lambda) {
                let add = ca.mul(cb).mul(&F::from_i64(ctx, k));
                let slot = acc.entry(w).or_insert_with(|| F::zero(ctx));
                *slot = slot.add(&add);
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Coadjoint action of a combination on a dual point, by the closed form
/// `ad*(ξ_i^{j,s})(ξ_k^{l,r})* = δ_ik (ξ_j^{l,r-s})* - δ_jl (ξ_k^{i,r-s})*`
/// with out-of-range duals read as zero.
pub fn coad<F: Field>(
    x: &[(BasisIndex, F)],
    gamma: &DualPoint<BasisIndex, F>,
    lambda: &Partition,
    ctx: F::Ctx,
) -> DualPoint<BasisIndex, F> {
    let mut out: BTreeMap<BasisIndex, F> = BTreeMap::new();
    let mut add = |idx: BasisIndex, v: F| {
        if in_range(idx, lambda) && !v.is_zero() {
            let slot = out.entry(idx).or_insert_with(|| F::zero(ctx));
            *slot = slot.add(&v);
        }
    };
    for (xi, c) in x {
        for (k, g) in gamma {
            if k.s < xi.s {
                continue;
            }
            let shift = k.s - xi.s;
            if xi.i == k.i {
                add(BasisIndex::new(xi.j, k.j, shift), c.mul(g));
            }
            if xi.j == k.j {
                add(BasisIndex::new(k.i, xi.i, shift), c.mul(g).neg());
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Independent oracle for [`coad`]: pair against the bracket,
/// `⟨coad(x)γ, y⟩ = γ([y, x])` for every basis `y`.
pub fn coad_pairing_oracle<F: Field>(
    x: &[(BasisIndex, F)],
    gamma: &DualPoint<BasisIndex, F>,
    lambda: &Partition,
    ctx: F::Ctx,
) -> DualPoint<BasisIndex, F> {
    let mut out = BTreeMap::new();
    for y in enumerate_basis(lambda) {
        let mut acc = F::zero(ctx);
        for (xb, c) in x {
            for (w, k) in bracket(y, *xb, lambda) {
                if let Some(g) = gamma.get(&w) {
                    acc = acc.add(&c.mul(g).mul(&F::from_i64(ctx, k)));
                }
            }
        }
        if !acc.is_zero() {
            out.insert(y, acc);
        }
    }
    out
}

/// The displayed closed form of `ad*(ξ_i^{j,s}) α` for diagonal `α`:
/// `a_i (ξ_j^{i,λ_i-1-s})* - a_j (ξ_j^{i,λ_j-1-s})*`.
pub fn coad_alpha_closed_form<F: Field>(
    idx: BasisIndex,
    spec: &AlphaSpec<F>,
    lambda: &Partition,
    ctx: F::Ctx,
) -> DualPoint<BasisIndex, F> {
    let mut out: BTreeMap<BasisIndex, F> = BTreeMap::new();
    let mut add = |target: BasisIndex, v: F| {
        if in_range(target, lambda) && !v.is_zero() {
            let slot = out.entry(target).or_insert_with(|| F::zero(ctx));
            *slot = slot.add(&v);
        }
    };
    let li = lambda.part(idx.i);
    let lj = lambda.part(idx.j);
    if li > idx.s {
        add(
            BasisIndex::new(idx.j, idx.i, li - 1 - idx.s),
            spec.coeff(idx.i).clone(),
        );
    }
    if lj > idx.s {
        add(
            BasisIndex::new(idx.j, idx.i, lj - 1 - idx.s),
            spec.coeff(idx.j).neg(),
        );
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Diagonal coefficients `a_1, …, a_n` for `α`, constrained per case: all
/// distinct (`gl`); additionally `a_i = -a_{i'}` for paired blocks and
/// `l_i a_i` all distinct (`sp`/`so`).
#[derive(Clone, Debug)]
pub struct AlphaSpec<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> AlphaSpec<F> {
    /// Coefficient `a_i`, 1-based.
    pub fn coeff(&self, i: usize) -> &F {
        &self.coeffs[i - 1]
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Greedy deterministic assignment: walk the blocks, give each new
    /// block the smallest admissible positive value and force `-a_i` on its
    /// partner. Fails with [`Error::FieldTooSmall`] when the prime field
    /// has no admissible residue left.
    pub fn build(lambda: &Partition, case: EpsilonCase, ctx: F::Ctx) -> Result<Self> {
        let n = lambda.len();
        let inv = match case {
            EpsilonCase::Gl => None,
            _ => Some(crate::combinatorics::involution(lambda, case)?),
        };
        let p = F::characteristic(ctx);
        // candidate values 1, 2, …; in F_p the stream wraps after p values
        let bound = if p == 0 { 2 * n as i64 + 2 } else { p as i64 };
        let mut coeffs: Vec<Option<F>> = vec![None; n];
        for i in 1..=n {
            if coeffs[i - 1].is_some() {
                continue;
            }
            let partner = inv.as_ref().map(|v| v.of(i)).unwrap_or(i);
            let mut chosen = None;
            'cand: for cand in 1..=bound {
                let a = F::from_i64(ctx, cand);
                let pair: Vec<(usize, F)> = if partner != i {
                    vec![(i, a.clone()), (partner, a.neg())]
                } else {
                    vec![(i, a.clone())]
                };
                let l = |k: usize| -> i64 { inv.as_ref().map(|v| v.l(k) as i64).unwrap_or(1) };
                let mut view: Vec<(usize, F)> = coeffs
                    .iter()
                    .enumerate()
                    .filter_map(|(k, c)| c.clone().map(|c| (k + 1, c)))
                    .collect();
                view.extend(pair.clone());
                for a_pos in 0..view.len() {
                    for b_pos in a_pos + 1..view.len() {
                        let (ia, va) = &view[a_pos];
                        let (ib, vb) = &view[b_pos];
                        if va == vb {
                            continue 'cand;
                        }
                        if inv.is_some() {
                            let la = F::from_i64(ctx, l(*ia)).mul(va);
                            let lb = F::from_i64(ctx, l(*ib)).mul(vb);
                            if la == lb {
                                continue 'cand;
                            }
                        }
                    }
                }
                chosen = Some(pair);
                break;
            }
            match chosen {
                Some(pair) => {
                    for (k, v) in pair {
                        coeffs[k - 1] = Some(v);
                    }
                }
                None => {
                    return Err(Error::FieldTooSmall(format!(
                        "no admissible coefficient for block {i} of λ={lambda} in characteristic {p}"
                    )))
                }
            }
        }
        Ok(AlphaSpec {
            coeffs: coeffs.into_iter().map(|c| c.unwrap()).collect(),
        })
    }
}

/// Which distinguished point to construct.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum PointKind {
    Alpha,
    Beta,
    BetaBar,
}

/// The point `α = Σ a_i (ξ_i^{i,λ_i-1})*`.
pub fn alpha_point<F: Field>(
    lambda: &Partition,
    spec: &AlphaSpec<F>,
) -> DualPoint<BasisIndex, F> {
    let mut out = BTreeMap::new();
    for i in 1..=lambda.len() {
        let c = spec.coeff(i).clone();
        if !c.is_zero() {
            out.insert(BasisIndex::new(i, i, lambda.part(i) - 1), c);
        }
    }
    out
}

/// The point `β = Σ_{i≥2} (ξ_{i-1}^{i,λ_i-1})*`.
pub fn beta_point<F: Field>(lambda: &Partition, ctx: F::Ctx) -> DualPoint<BasisIndex, F> {
    let mut out = BTreeMap::new();
    for i in 2..=lambda.len() {
        out.insert(BasisIndex::new(i - 1, i, lambda.part(i) - 1), F::one(ctx));
    }
    out
}

/// The correction `β' = Σ_{i+1 ≠ i'} ε_{i,i+1,0} (ξ_{(i+1)'}^{i',λ_i-1})*`
/// and the point `β̄ = β + β'` (`sp`) or `β - β'` (`so`).
pub fn beta_bar_point<F: Field>(form: &FormData, ctx: F::Ctx) -> DualPoint<BasisIndex, F> {
    let lambda = &form.lambda;
    let mut out = beta_point::<F>(lambda, ctx);
    let outer_sign = match form.case {
        EpsilonCase::Sp => 1,
        EpsilonCase::So => -1,
        EpsilonCase::Gl => unreachable!("form data implies sp or so"),
    };
    for i in 1..lambda.len() {
        if form.inv.of(i) == i + 1 {
            continue;
        }
        let idx = BasisIndex::new(form.inv.of(i + 1), form.inv.of(i), lambda.part(i) - 1);
        debug_assert!(in_range(idx, lambda));
        let c = F::from_i64(ctx, outer_sign * form.eps(i, i + 1, 0));
        let slot = out.entry(idx).or_insert_with(|| F::zero(ctx));
        *slot = slot.add(&c);
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// A constructed distinguished point.
#[derive(Clone, Debug)]
pub struct SpecialPoint<F: Field> {
    pub kind: PointKind,
    pub point: DualPoint<BasisIndex, F>,
}

/// Construct `α`, `β` or `β̄` for `(λ, case)`, verifying the membership
/// claims: for `sp`, `α` and `β̄` annihilate the `-1` eigenspace; for `so`
/// they annihilate the `σ`-fixed subalgebra.
pub fn make_special_point<F: Field>(
    lambda: &Partition,
    case: EpsilonCase,
    kind: PointKind,
    ctx: F::Ctx,
) -> Result<SpecialPoint<F>> {
    let point = match (case, kind) {
        (EpsilonCase::Gl, PointKind::Alpha) => {
            let spec = AlphaSpec::<F>::build(lambda, case, ctx)?;
            alpha_point(lambda, &spec)
        }
        (EpsilonCase::Gl, PointKind::Beta) => beta_point::<F>(lambda, ctx),
        (EpsilonCase::Gl, PointKind::BetaBar) => {
            return Err(Error::InvalidCase(
                "the corrected point needs sp or so".into(),
            ))
        }
        (_, kind) => {
            let form = FormData::new(lambda, case)?;
            let point = match kind {
                PointKind::Alpha => {
                    let spec = AlphaSpec::<F>::build(lambda, case, ctx)?;
                    alpha_point(lambda, &spec)
                }
                PointKind::Beta => beta_point::<F>(lambda, ctx),
                PointKind::BetaBar => beta_bar_point::<F>(&form, ctx),
            };
            if kind != PointKind::Beta {
                let zh = crate::centralizer::zeta_eta_basis(&form);
                let killed: &[SpanElem] = match case {
                    EpsilonCase::Sp => &zh.eta,
                    _ => &zh.zeta,
                };
                for el in killed {
                    let v = pair_point_with_combo(&point, &el.terms, ctx);
                    if !v.is_zero() {
                        return Err(Error::NotInAlgebra(format!(
                            "{kind:?} does not annihilate the complementary eigenspace at {}",
                            el.idx
                        )));
                    }
                }
            }
            point
        }
    };
    Ok(SpecialPoint { kind, point })
}

/// Pair a dual point against an integer combination of basis maps.
pub fn pair_point_with_combo<F: Field>(
    point: &DualPoint<BasisIndex, F>,
    combo: &[(BasisIndex, i64)],
    ctx: F::Ctx,
) -> F {
    let mut acc = F::zero(ctx);
    for (b, c) in combo {
        if let Some(v) = point.get(b) {
            acc = acc.add(&v.mul(&F::from_i64(ctx, *c)));
        }
    }
    acc
}

/// The scaling action `ρ(t)`: coordinatewise `t^{i-j+1}` on `(ξ_i^{j,s})*`.
pub fn rho_action<F: Field>(
    t: &F,
    gamma: &DualPoint<BasisIndex, F>,
) -> DualPoint<BasisIndex, F> {
    assert!(!t.is_zero(), "the scaling action needs t ≠ 0");
    let t_inv = t.inv().expect("nonzero");
    let mut out = BTreeMap::new();
    for (idx, c) in gamma {
        let w = idx.i as i64 - idx.j as i64 + 1;
        let factor = if w >= 0 {
            t.pow(w as u64)
        } else {
            t_inv.pow((-w) as u64)
        };
        let v = c.mul(&factor);
        if !v.is_zero() {
            out.insert(*idx, v);
        }
    }
    out
}

/// Weight of a monomial under `ρ`: `Σ e (i - j + 1)`.
pub fn rho_weight(m: &crate::polyring::Monomial<BasisIndex>) -> i64 {
    m.factors()
        .iter()
        .map(|(v, e)| (*e as i64) * (v.i as i64 - v.j as i64 + 1))
        .sum()
}

/// Check the covariance `x_r ∘ ρ(t) = t^{d_r} x_r` monomial by monomial:
/// every monomial of `x_r` has `ρ`-weight `d_r`.
pub fn verify_rho_covariance<F: Field>(lambda: &Partition, ctx: F::Ctx) -> bool {
    let d = degree_sequence(lambda);
    for (r0, x) in all_invariants::<F>(lambda, ctx).iter().enumerate() {
        for (m, _) in x.terms() {
            if rho_weight(m) != d.degree(r0 + 1) as i64 {
                return false;
            }
        }
    }
    true
}

/// Which algebra acts, and on which dual space.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ActingAlgebra {
    /// The full centraliser on its own dual.
    GOnG,
    /// The σ-fixed subalgebra on its own dual.
    KOnK,
    /// The σ-fixed subalgebra on the dual of the `-1` eigenspace.
    KOnP,
}

/// Acting basis as combinations of `ξ` maps, with printable labels.
pub fn acting_basis<F: Field>(
    lambda: &Partition,
    acting: ActingAlgebra,
    ctx: F::Ctx,
) -> Result<(Vec<String>, Vec<Combo<F>>)> {
    match acting {
        ActingAlgebra::GOnG => {
            let basis = enumerate_basis(lambda);
            Ok((
                basis.iter().map(|b| b.to_string()).collect(),
                basis.into_iter().map(|b| vec![(b, F::one(ctx))]).collect(),
            ))
        }
        ActingAlgebra::KOnK | ActingAlgebra::KOnP => {
            let case = match acting {
                ActingAlgebra::KOnK => EpsilonCase::Sp,
                _ => EpsilonCase::So,
            };
            let form = FormData::new(lambda, case)?;
            let zh = crate::centralizer::zeta_eta_basis(&form);
            Ok((
                zh.zeta.iter().map(|e| format!("zeta{}", e.idx)).collect(),
                zh.zeta
                    .iter()
                    .map(|e| {
                        e.terms
                            .iter()
                            .map(|(b, c)| (*b, F::from_i64(ctx, *c)))
                            .collect()
                    })
                    .collect(),
            ))
        }
    }
}

/// The stabiliser of a dual point: basis of the kernel of `x ↦ ad*(x) γ`.
#[derive(Clone, Debug)]
pub struct StabiliserReport<F: Field> {
    pub dimension: usize,
    /// Kernel vectors as coefficients on the acting basis.
    pub kernel: Vec<Vec<F>>,
    pub acting_labels: Vec<String>,
}

pub fn stabiliser<F: Field>(
    lambda: &Partition,
    acting: ActingAlgebra,
    gamma: &DualPoint<BasisIndex, F>,
    ctx: F::Ctx,
) -> Result<StabiliserReport<F>> {
    let (labels, combos) = acting_basis::<F>(lambda, acting, ctx)?;
    let cols = enumerate_basis(lambda);
    let col_of: BTreeMap<BasisIndex, usize> =
        cols.iter().enumerate().map(|(k, b)| (*b, k)).collect();
    let mut rows: linalg::Mat<F> = Vec::new();
    for combo in &combos {
        let image = coad(combo, gamma, lambda, ctx);
        let mut row = vec![F::zero(ctx); cols.len()];
        for (idx, v) in image {
            row[col_of[&idx]] = v;
        }
        rows.push(row);
    }
    let kernel = linalg::left_kernel(&rows, ctx);
    Ok(StabiliserReport {
        dimension: kernel.len(),
        kernel,
        acting_labels: labels,
    })
}

/// Closed form of the generic stabiliser dimension per case.
pub fn index_closed_form(lambda: &Partition, case: EpsilonCase) -> usize {
    let n_total = lambda.total();
    match case {
        EpsilonCase::Gl => n_total,
        EpsilonCase::Sp => n_total / 2,
        EpsilonCase::So => (n_total - lambda.odd_count()) / 2,
    }
}

/// The index of the case's action: the stabiliser dimension at `α`, checked
/// against the closed form (`N`, `N/2`, `(N - #odd)/2`). A mismatch is a
/// hard failure.
pub fn index_report(lambda: &Partition, case: EpsilonCase) -> Result<usize> {
    use crate::field::Rat;
    let acting = match case {
        EpsilonCase::Gl => ActingAlgebra::GOnG,
        EpsilonCase::Sp => ActingAlgebra::KOnK,
        EpsilonCase::So => ActingAlgebra::KOnP,
    };
    let alpha = make_special_point::<Rat>(lambda, case, PointKind::Alpha, ())?;
    let rep = stabiliser(lambda, acting, &alpha.point, ())?;
    let expected = index_closed_form(lambda, case);
    if rep.dimension != expected {
        return Err(Error::IndexMismatch {
            computed: rep.dimension,
            expected,
        });
    }
    Ok(rep.dimension)
}

/// Result of the dominance check: the coadjoint images of `α` span the
/// required complement of the diagonal dual.
#[derive(Clone, Debug, Serialize)]
pub struct DominanceReport {
    pub covered: bool,
    pub missing: Vec<String>,
}

/// Check that `span{ad*(x)α}` contains every off-diagonal dual direction of
/// the case's target space.
pub fn dominance_span_check<F: Field>(
    lambda: &Partition,
    case: EpsilonCase,
    ctx: F::Ctx,
) -> Result<DominanceReport> {
    let spec = AlphaSpec::<F>::build(lambda, case, ctx)?;
    let alpha = alpha_point(lambda, &spec);
    let acting = match case {
        EpsilonCase::Gl => ActingAlgebra::GOnG,
        EpsilonCase::Sp => ActingAlgebra::KOnK,
        EpsilonCase::So => ActingAlgebra::KOnP,
    };
    let (_, combos) = acting_basis::<F>(lambda, acting, ctx)?;
    let cols = enumerate_basis(lambda);
    let col_of: BTreeMap<BasisIndex, usize> =
        cols.iter().enumerate().map(|(k, b)| (*b, k)).collect();
    let to_row = |point: &DualPoint<BasisIndex, F>| -> Vec<F> {
        let mut row = vec![F::zero(ctx); cols.len()];
        for (idx, v) in point {
            row[col_of[idx]] = v.clone();
        }
        row
    };
    let rows: linalg::Mat<F> = combos
        .iter()
        .map(|c| to_row(&coad(c, &alpha, lambda, ctx)))
        .collect();

    // off-diagonal dual targets of the relevant space
    let mut targets: Vec<(String, Vec<F>)> = Vec::new();
    match case {
        EpsilonCase::Gl => {
            for idx in &cols {
                if idx.i != idx.j {
                    let mut point = BTreeMap::new();
                    point.insert(*idx, F::one(ctx));
                    targets.push((format!("({idx})*"), to_row(&point)));
                }
            }
        }
        EpsilonCase::Sp | EpsilonCase::So => {
            let form = FormData::new(lambda, case)?;
            let zh = crate::centralizer::zeta_eta_basis(&form);
            let (elems, tag): (&[SpanElem], &str) = match case {
                EpsilonCase::Sp => (&zh.zeta, "zeta"),
                _ => (&zh.eta, "eta"),
            };
            for el in elems {
                if el.idx.i == el.idx.j {
                    continue;
                }
                let mut point = BTreeMap::new();
                for (b, c) in &el.terms {
                    point.insert(*b, F::from_i64(ctx, *c));
                }
                targets.push((format!("({tag}{})*", el.idx), to_row(&point)));
            }
        }
    }
    let span = linalg::RowSpan::new(&rows);
    let mut missing = Vec::new();
    for (label, row) in targets {
        if !span.contains(&row) {
            missing.push(label);
        }
    }
    Ok(DominanceReport {
        covered: missing.is_empty(),
        missing,
    })
}

/// One Jacobian probe result.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeRow {
    pub point: String,
    pub rank: usize,
    pub expected: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct JacobianReport {
    pub rows: Vec<ProbeRow>,
    pub pass: bool,
}

/// Convert a dual point of the full space into coordinates on the
/// restricted dual, by pairing with each canonical spanning element.
pub fn point_to_restricted<F: Field>(
    point: &DualPoint<BasisIndex, F>,
    elems: &[SpanElem],
    wrap: fn(crate::centralizer::PairIndex) -> RVar,
    ctx: F::Ctx,
) -> DualPoint<RVar, F> {
    let mut out = BTreeMap::new();
    for el in elems {
        let v = pair_point_with_combo(point, &el.terms, ctx);
        if !v.is_zero() {
            out.insert(wrap(el.idx), v);
        }
    }
    out
}

fn add_points<F: Field>(
    a: &DualPoint<BasisIndex, F>,
    b: &DualPoint<BasisIndex, F>,
    ctx: F::Ctx,
) -> DualPoint<BasisIndex, F> {
    let mut out = a.clone();
    for (k, v) in b {
        let slot = out.entry(*k).or_insert_with(|| F::zero(ctx));
        *slot = slot.add(v);
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Full-rank probes of the generator differentials at the distinguished
/// points: `β`, `α`, `α+β` for `gl`; `β̄`, `α+β̄` for `sp`/`so`. The rank at
/// zero only sees the degree-one generators, which is the expected conical
/// behaviour, and is reported as its own row.
pub fn jacobian_probe<F: Field>(
    lambda: &Partition,
    case: EpsilonCase,
    ctx: F::Ctx,
) -> Result<JacobianReport> {
    let mut rows = Vec::new();
    match case {
        EpsilonCase::Gl => {
            let xs = all_invariants::<F>(lambda, ctx);
            let m = lambda.total();
            let alpha = make_special_point::<F>(lambda, case, PointKind::Alpha, ctx)?.point;
            let beta = beta_point::<F>(lambda, ctx);
            let ab = add_points(&alpha, &beta, ctx);
            // the coordinates of the maps into the first block
            let u: Vec<BasisIndex> = enumerate_basis(lambda)
                .into_iter()
                .filter(|b| b.j == 1)
                .collect();
            for (label, point, sub, expected) in [
                ("beta", &beta, None, m),
                ("beta|U", &beta, Some(&u[..]), m),
                ("alpha", &alpha, None, m),
                ("alpha+beta", &ab, None, m),
            ] {
                let rank = jacobian_rank(&xs, point, sub, ctx);
                rows.push(ProbeRow {
                    point: label.to_string(),
                    rank,
                    expected,
                    pass: rank == expected,
                });
            }
            let zero = BTreeMap::new();
            let rank0 = jacobian_rank(&xs, &zero, None, ctx);
            let lin = degree_sequence(lambda)
                .values()
                .iter()
                .filter(|&&d| d == 1)
                .count();
            rows.push(ProbeRow {
                point: "zero".into(),
                rank: rank0,
                expected: lin,
                pass: rank0 == lin,
            });
        }
        EpsilonCase::Sp | EpsilonCase::So => {
            let form = FormData::new(lambda, case)?;
            let zh = crate::centralizer::zeta_eta_basis(&form);
            let (target, elems, wrap) = match case {
                EpsilonCase::Sp => (
                    RestrictTarget::K,
                    &zh.zeta,
                    RVar::Zeta as fn(crate::centralizer::PairIndex) -> RVar,
                ),
                _ => (
                    RestrictTarget::P,
                    &zh.eta,
                    RVar::Eta as fn(crate::centralizer::PairIndex) -> RVar,
                ),
            };
            let gens: Vec<Poly<RVar, F>> = selected_rs(lambda, case)
                .into_iter()
                .map(|r| restrict(&form, &zh, r, target, ctx).map(|ri| ri.poly))
                .collect::<Result<_>>()?;
            let m = gens.len();
            let alpha = make_special_point::<F>(lambda, case, PointKind::Alpha, ctx)?.point;
            let bbar = make_special_point::<F>(lambda, case, PointKind::BetaBar, ctx)?.point;
            let abbar = add_points(&alpha, &bbar, ctx);
            for (label, point) in [("betabar", &bbar), ("alpha+betabar", &abbar)] {
                let restricted = point_to_restricted(point, elems, wrap, ctx);
                let rank = jacobian_rank(&gens, &restricted, None, ctx);
                rows.push(ProbeRow {
                    point: label.to_string(),
                    rank,
                    expected: m,
                    pass: rank == m,
                });
            }
        }
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(JacobianReport { rows, pass })
}

/// Oracle agreement: the closed-form coadjoint action equals the pairing
/// against the bracket, on every `(basis, unit dual)` pair.
pub fn verify_coad_oracle(lambda: &Partition) -> bool {
    use crate::field::Rat;
    let basis = enumerate_basis(lambda);
    for &b in &basis {
        for &g in &basis {
            let gamma: DualPoint<BasisIndex, Rat> =
                [(g, Rat::from_parts(1, 1))].into_iter().collect();
            let x = [(b, Rat::from_parts(1, 1))];
            if coad(&x, &gamma, lambda, ()) != coad_pairing_oracle(&x, &gamma, lambda, ()) {
                return false;
            }
        }
    }
    true
}

/// For `so`: every stabiliser element of `α` commutes with the diagonal
/// part of the `-1` eigenspace.
pub fn so_stabiliser_annihilates_diagonal(lambda: &Partition) -> Result<bool> {
    use crate::field::Rat;
    let form = FormData::new(lambda, EpsilonCase::So)?;
    let zh = crate::centralizer::zeta_eta_basis(&form);
    let alpha = make_special_point::<Rat>(lambda, EpsilonCase::So, PointKind::Alpha, ())?;
    let rep = stabiliser(lambda, ActingAlgebra::KOnP, &alpha.point, ())?;
    let (_, combos) = acting_basis::<Rat>(lambda, ActingAlgebra::KOnP, ())?;
    for kv in &rep.kernel {
        let mut elem: BTreeMap<BasisIndex, Rat> = BTreeMap::new();
        for (c, combo) in kv.iter().zip(&combos) {
            for (b, k) in combo {
                let slot = elem.entry(*b).or_insert_with(|| Rat::from_parts(0, 1));
                *slot = slot.add(&c.mul(k));
            }
        }
        let elem: Combo<Rat> = elem.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        for diag in zh.eta.iter().filter(|e| e.idx.i == e.idx.j) {
            let other: Combo<Rat> = diag
                .terms
                .iter()
                .map(|(b, c)| (*b, Rat::from_parts(*c, 1)))
                .collect();
            if !bracket_combo(&elem, &other, lambda, ()).is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rat};

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    fn xi(i: usize, j: usize, s: usize) -> BasisIndex {
        BasisIndex::new(i, j, s)
    }

    fn q(v: i64) -> Rat {
        Rat::from_parts(v, 1)
    }

    #[test]
    fn coad_abelian_is_zero() {
        let lam = p(&[4]);
        let gamma: DualPoint<BasisIndex, Rat> = [(xi(1, 1, 2), q(3))].into_iter().collect();
        for b in enumerate_basis(&lam) {
            assert!(coad(&[(b, q(1))], &gamma, &lam, ()).is_empty());
        }
    }

    #[test]
    fn coad_example_2_1() {
        // coad(ξ_2^{1,1}, α) = -a_1 (ξ_1^{2,0})*
        let lam = p(&[2, 1]);
        let spec = AlphaSpec::<Rat>::build(&lam, EpsilonCase::Gl, ()).unwrap();
        let alpha = alpha_point(&lam, &spec);
        let got = coad(&[(xi(2, 1, 1), q(1))], &alpha, &lam, ());
        let want: DualPoint<BasisIndex, Rat> =
            [(xi(1, 2, 0), spec.coeff(1).neg())].into_iter().collect();
        assert_eq!(got, want);
    }

    #[test]
    fn coad_matches_pairing_oracle() {
        for lambda in Partition::enumerate_up_to(6) {
            let basis = enumerate_basis(&lambda);
            for &b in &basis {
                for &g in &basis {
                    let gamma: DualPoint<BasisIndex, Rat> = [(g, q(1))].into_iter().collect();
                    let fast = coad(&[(b, q(1))], &gamma, &lambda, ());
                    let slow = coad_pairing_oracle(&[(b, q(1))], &gamma, &lambda, ());
                    assert_eq!(fast, slow, "λ={lambda} x={b} γ=({g})*");
                }
            }
        }
    }

    #[test]
    fn coad_is_lie_algebra_action() {
        let lam = p(&[2, 1]);
        let basis = enumerate_basis(&lam);
        for &a in &basis {
            for &b in &basis {
                for &g in &basis {
                    let gamma: DualPoint<BasisIndex, Rat> = [(g, q(1))].into_iter().collect();
                    let br: Combo<Rat> = bracket(a, b, &lam)
                        .into_iter()
                        .map(|(w, k)| (w, q(k)))
                        .collect();
                    let lhs = coad(&br, &gamma, &lam, ());
                    let ab =
                        coad(&[(a, q(1))], &coad(&[(b, q(1))], &gamma, &lam, ()), &lam, ());
                    let ba =
                        coad(&[(b, q(1))], &coad(&[(a, q(1))], &gamma, &lam, ()), &lam, ());
                    let mut rhs = ab;
                    for (k, v) in ba {
                        let slot = rhs.entry(k).or_insert_with(|| q(0));
                        *slot = slot.sub(&v);
                    }
                    rhs.retain(|_, v| !v.is_zero());
                    assert_eq!(lhs, rhs, "action identity at [{a},{b}]");
                }
            }
        }
    }

    #[test]
    fn closed_form_alpha_matches_coad() {
        for lambda in Partition::enumerate_up_to(7) {
            let spec = AlphaSpec::<Rat>::build(&lambda, EpsilonCase::Gl, ()).unwrap();
            let alpha = alpha_point(&lambda, &spec);
            for b in enumerate_basis(&lambda) {
                let fast = coad(&[(b, q(1))], &alpha, &lambda, ());
                let closed = coad_alpha_closed_form(b, &spec, &lambda, ());
                assert_eq!(fast, closed, "λ={lambda} ξ={b}");
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        // λ=(1,1), ξ_1^{2,0}: (a_1 - a_2)(ξ_2^{1,0})*
        let lam = p(&[1, 1]);
        let spec = AlphaSpec::<Rat>::build(&lam, EpsilonCase::Gl, ()).unwrap();
        let got = coad_alpha_closed_form(xi(1, 2, 0), &spec, &lam, ());
        let want: DualPoint<BasisIndex, Rat> =
            [(xi(2, 1, 0), spec.coeff(1).sub(spec.coeff(2)))]
                .into_iter()
                .collect();
        assert_eq!(got, want);
        // diagonal elements stabilise α
        for b in enumerate_basis(&lam).into_iter().filter(|b| b.i == b.j) {
            assert!(coad_alpha_closed_form(b, &spec, &lam, ()).is_empty());
        }
    }

    #[test]
    fn special_point_support_2_1() {
        // α = a_1 (ξ_1^{1,1})* + a_2 (ξ_2^{2,0})*, β = (ξ_1^{2,0})*
        let lam = p(&[2, 1]);
        let spec = AlphaSpec::<Rat>::build(&lam, EpsilonCase::Gl, ()).unwrap();
        let alpha = alpha_point(&lam, &spec);
        let keys: Vec<BasisIndex> = alpha.keys().copied().collect();
        assert_eq!(keys, vec![xi(1, 1, 1), xi(2, 2, 0)]);
        assert_eq!(alpha[&xi(1, 1, 1)], *spec.coeff(1));
        assert_eq!(alpha[&xi(2, 2, 0)], *spec.coeff(2));
        let beta = beta_point::<Rat>(&lam, ());
        let want: DualPoint<BasisIndex, Rat> = [(xi(1, 2, 0), q(1))].into_iter().collect();
        assert_eq!(beta, want);
    }

    #[test]
    fn rho_fixes_beta_and_scales_alpha() {
        let lam = p(&[3, 2]);
        let spec = AlphaSpec::<Rat>::build(&lam, EpsilonCase::Gl, ()).unwrap();
        let alpha = alpha_point(&lam, &spec);
        let beta = beta_point::<Rat>(&lam, ());
        let t = q(7);
        let scaled = rho_action(&t, &alpha);
        let want: DualPoint<BasisIndex, Rat> =
            alpha.iter().map(|(k, v)| (*k, v.mul(&t))).collect();
        assert_eq!(scaled, want);
        assert_eq!(rho_action(&t, &beta), beta);
        assert_eq!(rho_action(&q(1), &beta), beta);
    }

    #[test]
    fn rho_covariance_of_invariants() {
        for lambda in Partition::enumerate_up_to(6) {
            assert!(verify_rho_covariance::<Rat>(&lambda, ()), "λ={lambda}");
        }
    }

    #[test]
    fn stabiliser_of_zero_is_everything() {
        let lam = p(&[2, 1]);
        let rep = stabiliser::<Rat>(&lam, ActingAlgebra::GOnG, &BTreeMap::new(), ()).unwrap();
        assert_eq!(rep.dimension, 5);
    }

    #[test]
    fn stabiliser_at_alpha_is_diagonal() {
        for lambda in Partition::enumerate_up_to(7) {
            let alpha =
                make_special_point::<Rat>(&lambda, EpsilonCase::Gl, PointKind::Alpha, ())
                    .unwrap()
                    .point;
            let rep = stabiliser(&lambda, ActingAlgebra::GOnG, &alpha, ()).unwrap();
            assert_eq!(rep.dimension, lambda.total(), "λ={lambda}");
        }
    }

    #[test]
    fn index_examples() {
        assert_eq!(index_report(&p(&[3, 2]), EpsilonCase::Gl).unwrap(), 5);
        assert_eq!(index_report(&p(&[2, 2]), EpsilonCase::Sp).unwrap(), 2);
        assert_eq!(index_report(&p(&[3, 1]), EpsilonCase::So).unwrap(), 1);
    }

    #[test]
    fn dominance_examples() {
        // λ=(N): the complement of the diagonal dual is empty
        let rep = dominance_span_check::<Rat>(&p(&[4]), EpsilonCase::Gl, ()).unwrap();
        assert!(rep.covered);
        let rep = dominance_span_check::<Rat>(&p(&[1, 1]), EpsilonCase::Gl, ()).unwrap();
        assert!(rep.covered, "{:?}", rep.missing);
        let rep = dominance_span_check::<Rat>(&p(&[2, 2]), EpsilonCase::Sp, ()).unwrap();
        assert!(rep.covered, "{:?}", rep.missing);
    }

    #[test]
    fn special_point_membership() {
        // Sp λ=(3,3): the paired-block correction is absorbed, leaving the
        // bare superdiagonal dual (ξ_1^{2,2})*
        let lam = p(&[3, 3]);
        let bbar = make_special_point::<Rat>(&lam, EpsilonCase::Sp, PointKind::BetaBar, ())
            .unwrap()
            .point;
        let want: DualPoint<BasisIndex, Rat> = [(xi(1, 2, 2), q(1))].into_iter().collect();
        assert_eq!(bbar, want);
        // Sp λ=(2,2): both blocks fixed, so the corrected point carries the
        // mirror coordinate too: (ξ_1^{2,1})* + (ξ_2^{1,1})*
        let lam = p(&[2, 2]);
        let bbar = make_special_point::<Rat>(&lam, EpsilonCase::Sp, PointKind::BetaBar, ())
            .unwrap()
            .point;
        let want: DualPoint<BasisIndex, Rat> =
            [(xi(1, 2, 1), q(1)), (xi(2, 1, 1), q(1))].into_iter().collect();
        assert_eq!(bbar, want);
        // So λ=(3,1): α lies in the annihilator of the σ-fixed subalgebra
        let lam = p(&[3, 1]);
        assert!(make_special_point::<Rat>(&lam, EpsilonCase::So, PointKind::Alpha, ()).is_ok());
    }

    #[test]
    fn jacobian_probe_gl_2_1() {
        let rep = jacobian_probe::<Rat>(&p(&[2, 1]), EpsilonCase::Gl, ()).unwrap();
        assert!(rep.pass, "{rep:?}");
        // and over a prime field with admissible α
        let rep = jacobian_probe::<Fp>(&p(&[2, 1]), EpsilonCase::Gl, 5).unwrap();
        assert!(rep.pass, "{rep:?}");
    }

    #[test]
    fn jacobian_probe_sp2() {
        let rep = jacobian_probe::<Rat>(&p(&[2]), EpsilonCase::Sp, ()).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.rows[0].expected, 1);
    }

    #[test]
    fn alpha_spec_field_too_small() {
        // six distinct residues do not exist mod 3
        let lam = p(&[1, 1, 1, 1, 1, 1]);
        assert!(matches!(
            AlphaSpec::<Fp>::build(&lam, EpsilonCase::Gl, 3),
            Err(Error::FieldTooSmall(_))
        ));
    }

    #[test]
    fn restricted_differentials_at_beta_are_signed_units() {
        // differentials at β restricted to the maps-into-block-1 coordinates
        // are the signed unit forms ξ_d^{1, λ_1-λ_d+t_r-1}
        let lam = p(&[2, 1]);
        let xs = all_invariants::<Rat>(&lam, ());
        let beta = beta_point::<Rat>(&lam, ());
        let d = degree_sequence(&lam);
        for r in 1..=3 {
            let dd = d.degree(r);
            let t_r = r - lam.parts()[..dd - 1].iter().sum::<usize>();
            let shift = lam.part(1) - lam.part(dd) + t_r - 1;
            let diff = xs[r - 1].differential(&beta, ());
            let mut u_part: Vec<(BasisIndex, Rat)> =
                diff.into_iter().filter(|(b, _)| b.j == 1).collect();
            u_part.retain(|(_, c)| !c.is_zero());
            let sign = if dd % 2 == 1 { 1 } else { -1 };
            assert_eq!(u_part, vec![(xi(dd, 1, shift), q(sign))], "r={r}");
        }
    }

    #[test]
    fn evaluation_at_beta_plus_direction() {
        // coordinates of β + v: 1 on the superdiagonal markers, the chosen
        // c-values on maps into the first block, 0 elsewhere
        let lam = p(&[2, 1]);
        let mut point = beta_point::<Rat>(&lam, ());
        let c_values = [(xi(1, 1, 0), 5), (xi(1, 1, 1), 7), (xi(2, 1, 1), 11)];
        for (b, c) in c_values {
            point.insert(b, q(c));
        }
        for b in enumerate_basis(&lam) {
            let f: Poly<BasisIndex, Rat> = Poly::var(b, ());
            let got = f.evaluate(&point, ());
            let want = if b == xi(1, 2, 0) {
                q(1) // the superdiagonal marker: i = j-1 and s = λ_j - 1
            } else if let Some((_, c)) = c_values.iter().find(|(bb, _)| *bb == b) {
                q(*c)
            } else {
                q(0)
            };
            assert_eq!(got, want, "ξ={b}");
        }
        // and the invariants see exactly the coordinates the closed forms say
        let xs = all_invariants::<Rat>(&lam, ());
        assert_eq!(xs[0].evaluate(&point, ()), q(5)); // x_1 ↦ c_{1,0}
        assert_eq!(xs[1].evaluate(&point, ()), q(7)); // x_2 ↦ c_{1,1}
        assert_eq!(xs[2].evaluate(&point, ()), q(-11)); // x_3 ↦ -c_{2,1}
    }

    #[test]
    fn so_stabiliser_annihilation() {
        for parts in [vec![3usize, 1], vec![3, 3], vec![2, 2, 1]] {
            let lam = Partition::new(parts).unwrap();
            if EpsilonCase::So.admits(&lam) {
                assert!(so_stabiliser_annihilates_diagonal(&lam).unwrap(), "λ={lam}");
            }
        }
    }
}
