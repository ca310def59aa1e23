//! Job configuration and the batch runners behind the command-line
//! interface and the C bindings. Every runner produces a [`Report`] whose
//! body is deterministic for a fixed configuration.

use crate::centralizer::{
    dim_centralizer, enumerate_basis, triangular_split, verify_bracket_matrix_oracle,
    verify_sigma_matrix_oracle, zeta_eta_basis, BasisIndex, FormData,
};
use crate::coadjoint::{
    dominance_span_check, index_closed_form, index_report, jacobian_probe,
    so_stabiliser_annihilates_diagonal, verify_coad_oracle, verify_rho_covariance,
};
use crate::combinatorics::{
    degree_sequence, invariant_count, invariant_count_direct, EpsilonCase, Partition,
};
use crate::enveloping::{
    p_centre_generator, verify_central, verify_gr_beta, verify_mu_leading_term,
    verify_pi_equivariance, zassenhaus_bound, LieAlg,
};
use crate::field::{Field, FieldSpec, Fp, Rat};
use crate::invariants::{
    all_invariants, elementary_invariant, graded_invariant_dims, restrict, selected_rs,
    verify_ad_invariance, verify_sigma_parity, GVar, RestrictTarget,
};
use crate::polyring::{ad_derivation, Monomial, Poly, Var};
use crate::report::{Check, JobEcho, Report};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use std::collections::BTreeMap;

/// A validated batch job.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub lambda: Partition,
    pub case: EpsilonCase,
    pub field: FieldSpec,
    pub r: Option<usize>,
    pub degree_cap: Option<usize>,
    pub suite: Option<String>,
    pub seed: Option<u64>,
}

impl JobConfig {
    pub fn new(lambda_text: &str, case_text: &str, field_text: &str) -> Result<Self> {
        let lambda = Partition::parse(lambda_text)?;
        let case = EpsilonCase::parse(case_text)?;
        let field = FieldSpec::parse(field_text)?;
        let cfg = JobConfig {
            lambda,
            case,
            field,
            r: None,
            degree_cap: None,
            suite: None,
            seed: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.case.admits(&self.lambda) {
            return Err(Error::NoValidInvolution(format!(
                "λ={} is not a nilpotent class for case {}",
                self.lambda, self.case
            )));
        }
        if self.case != EpsilonCase::Gl && self.field == FieldSpec::Fp(2) {
            return Err(Error::CharacteristicTwo);
        }
        if let Some(r) = self.r {
            if r < 1 || r > self.lambda.total() {
                return Err(Error::Usage(format!(
                    "r must lie in 1..={}, got {r}",
                    self.lambda.total()
                )));
            }
        }
        Ok(())
    }

    fn echo(&self, command: &str) -> JobEcho {
        JobEcho {
            command: command.into(),
            lambda: self.lambda.to_string(),
            case: self.case.to_string(),
            field: self.field.to_string(),
            r: self.r,
            degree_cap: self.degree_cap,
            suite: self.suite.clone(),
            seed: self.seed,
        }
    }
}

/// Structured JSON for a polynomial: canonical text plus per-term data.
fn poly_json<V: Var, F: Field>(f: &Poly<V, F>) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = f
        .terms()
        .map(|(m, c)| {
            json!({
                "coeff": c.to_string(),
                "factors": m
                    .factors()
                    .iter()
                    .map(|(v, e)| json!({"var": v.to_string(), "exp": e}))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({"text": f.to_string(), "terms": terms})
}

/// The `basis` job: list the basis, the triangular split, the matrices of
/// the nilpotent and of the form, and for `sp`/`so` the deduplicated
/// spanning sets.
pub fn run_basis(cfg: &JobConfig) -> Result<Report> {
    cfg.validate()?;
    let mut report = Report::new(cfg.echo("basis"));
    let basis = enumerate_basis(&cfg.lambda);
    let (lower, diag, upper) = triangular_split(&cfg.lambda);
    let mut payload = json!({
        "dim": basis.len(),
        "basis": basis.iter().map(|b| json!({"i": b.i, "j": b.j, "s": b.s})).collect::<Vec<_>>(),
        "triangular": {"lower": lower.len(), "diagonal": diag.len(), "upper": upper.len()},
        "e_matrix": crate::centralizer::e_matrix(&cfg.lambda),
    });
    report.push(Check::eq(
        "dim",
        "basis count equals the sum of pairwise block minima",
        dim_centralizer(&cfg.lambda),
        basis.len(),
    ));
    report.push(Check::eq(
        "diagonal-dim",
        "the diagonal part has dimension N",
        cfg.lambda.total(),
        diag.len(),
    ));
    if cfg.case != EpsilonCase::Gl {
        let form = FormData::new(&cfg.lambda, cfg.case)?;
        let zh = zeta_eta_basis(&form);
        let (dk, dp) = zh.dims();
        payload["gram"] = json!(form.gram);
        payload["zeta"] = json!(zh
            .zeta
            .iter()
            .map(|e| json!({
                "index": {"i": e.idx.i, "j": e.idx.j, "s": e.idx.s},
                "terms": e.terms.iter().map(|(b, c)| json!({"i": b.i, "j": b.j, "s": b.s, "coeff": c})).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>());
        payload["eta"] = json!(zh
            .eta
            .iter()
            .map(|e| json!({
                "index": {"i": e.idx.i, "j": e.idx.j, "s": e.idx.s},
                "terms": e.terms.iter().map(|(b, c)| json!({"i": b.i, "j": b.j, "s": b.s, "coeff": c})).collect::<Vec<_>>(),
            }))
            .collect::<Vec<_>>());
        report.push(Check::eq(
            "eigenspace-dims",
            "the two eigenspace dimensions add to the full dimension",
            basis.len(),
            dk + dp,
        ));
    }
    report.payload = Some(payload);
    Ok(report)
}

fn run_invariants_generic<F: Field>(cfg: &JobConfig, ctx: F::Ctx) -> Result<Report> {
    let mut report = Report::new(cfg.echo("invariants"));
    let d = degree_sequence(&cfg.lambda);
    let rs: Vec<usize> = match cfg.r {
        Some(r) => vec![r],
        None => (1..=cfg.lambda.total()).collect(),
    };
    let mut items = Vec::new();
    for &r in &rs {
        let x = elementary_invariant::<F>(&cfg.lambda, r, ctx);
        report.push(Check::eq(
            format!("x_{r}-homogeneous"),
            "each invariant is homogeneous of the listed degree",
            d.degree(r),
            x.degree().unwrap_or(d.degree(r)),
        ));
        let mut item = json!({
            "r": r,
            "degree": d.degree(r),
            "poly": poly_json(&x),
        });
        if cfg.case != EpsilonCase::Gl {
            let form = FormData::new(&cfg.lambda, cfg.case)?;
            let zh = zeta_eta_basis(&form);
            let target = match cfg.case {
                EpsilonCase::Sp => RestrictTarget::K,
                _ => RestrictTarget::P,
            };
            let restricted = restrict::<F>(&form, &zh, r, target, ctx)?;
            item["restriction"] = json!({
                "target": target.to_string(),
                "poly": poly_json(&restricted.poly),
            });
        }
        items.push(item);
    }
    report.payload = Some(json!({ "invariants": items }));
    Ok(report)
}

/// The `invariants` job: canonical text and JSON for `x_r` (all `r` or one)
/// plus restrictions for `sp`/`so`.
pub fn run_invariants(cfg: &JobConfig) -> Result<Report> {
    cfg.validate()?;
    match cfg.field {
        FieldSpec::Q => run_invariants_generic::<Rat>(cfg, ()),
        FieldSpec::Fp(p) => run_invariants_generic::<Fp>(cfg, p),
    }
}

/// The `index` job.
pub fn run_index(cfg: &JobConfig) -> Result<Report> {
    cfg.validate()?;
    let mut report = Report::new(cfg.echo("index"));
    let got = index_report(&cfg.lambda, cfg.case)?;
    report.push(Check::eq(
        "index",
        "stabiliser dimension at the diagonal point equals the closed form",
        index_closed_form(&cfg.lambda, cfg.case),
        got,
    ));
    report.payload = Some(json!({ "index": got }));
    Ok(report)
}

fn suite_invariance<F: Field>(cfg: &JobConfig, ctx: F::Ctx, report: &mut Report) {
    let rep = verify_ad_invariance::<F>(&cfg.lambda, ctx);
    report.push(Check::new(
        "ad-invariance",
        format!(
            "every basis derivation kills every invariant ({} pairs)",
            rep.ad_pairs_checked
        ),
        "no failure",
        rep.ad_failure
            .map_or("no failure".into(), |(b, r)| format!("ad({b}) x_{r} ≠ 0")),
        rep.ad_failure.is_none(),
    ));
    report.push(Check::new(
        "group-invariance",
        format!(
            "the one-parameter subgroups fix every invariant symbolically ({} pairs)",
            rep.group_pairs_checked
        ),
        "no failure",
        rep.group_failure
            .map_or("no failure".into(), |(b, r)| format!("1+t{b} moves x_{r}")),
        rep.group_failure.is_none(),
    ));
    report.push(Check::new(
        "torus-invariance",
        format!(
            "block weights balance in every monomial ({} monomials)",
            rep.torus_monomials_checked
        ),
        "no failure",
        rep.torus_failure
            .map_or("no failure".into(), |r| format!("x_{r} unbalanced")),
        rep.torus_failure.is_none(),
    ));
}

fn suite_parity<F: Field>(cfg: &JobConfig, ctx: F::Ctx, report: &mut Report) -> Result<()> {
    let form = FormData::new(&cfg.lambda, cfg.case)?;
    let zh = zeta_eta_basis(&form);
    let rep = verify_sigma_parity::<F>(&form, &zh, ctx)?;
    let parity_bad: Vec<usize> = rep
        .parity
        .iter()
        .filter(|(_, ok)| !ok)
        .map(|(r, _)| *r)
        .collect();
    report.push(Check::new(
        "sigma-parity",
        "σ multiplies each invariant by the sign of its label",
        "no failure",
        if parity_bad.is_empty() {
            "no failure".into()
        } else {
            format!("failing r: {parity_bad:?}")
        },
        parity_bad.is_empty(),
    ));
    let vanish_bad: Vec<String> = rep
        .vanishing
        .iter()
        .filter(|(_, _, z, e)| z != e)
        .map(|(r, t, _, _)| format!("x_{r}|{t}"))
        .collect();
    report.push(Check::new(
        "restriction-vanishing",
        "restrictions vanish exactly for the predicted labels",
        "no failure",
        if vanish_bad.is_empty() {
            "no failure".into()
        } else {
            format!("wrong vanishing: {vanish_bad:?}")
        },
        vanish_bad.is_empty(),
    ));
    report.push(Check::new(
        "restriction-distinct",
        "surviving restrictions are nonzero and pairwise distinct",
        "true",
        rep.distinct,
        rep.distinct,
    ));
    Ok(())
}

fn suite_counting(cfg: &JobConfig, report: &mut Report) {
    report.push(Check::eq(
        "generator-count",
        "closed-form generator count equals the direct enumeration",
        invariant_count(&cfg.lambda, cfg.case),
        invariant_count_direct(&cfg.lambda, cfg.case),
    ));
    let m = invariant_count(&cfg.lambda, cfg.case);
    report.push(Check::eq(
        "selected-labels",
        "the selected labels have the closed-form cardinality",
        m,
        selected_rs(&cfg.lambda, cfg.case).len(),
    ));
}

fn suite_jacobian<F: Field>(cfg: &JobConfig, ctx: F::Ctx, report: &mut Report) -> Result<()> {
    let rep = jacobian_probe::<F>(&cfg.lambda, cfg.case, ctx)?;
    for row in rep.rows {
        report.push(Check::eq(
            format!("rank@{}", row.point),
            "generator differentials have full rank at the probe point",
            row.expected,
            row.rank,
        ));
    }
    Ok(())
}

fn suite_stabiliser(cfg: &JobConfig, report: &mut Report) -> Result<()> {
    let got = index_report(&cfg.lambda, cfg.case)?;
    report.push(Check::eq(
        "stabiliser-dim",
        "stabiliser dimension at the diagonal point equals the closed form",
        index_closed_form(&cfg.lambda, cfg.case),
        got,
    ));
    let dom = dominance_span_check::<Rat>(&cfg.lambda, cfg.case, ())?;
    report.push(Check::new(
        "dominance",
        "coadjoint images of the diagonal point span the off-diagonal dual",
        "covered",
        if dom.covered {
            "covered".into()
        } else {
            format!("missing {:?}", dom.missing)
        },
        dom.covered,
    ));
    if cfg.case == EpsilonCase::So {
        let ok = so_stabiliser_annihilates_diagonal(&cfg.lambda)?;
        report.push(Check::new(
            "stabiliser-annihilates",
            "stabiliser elements commute with the diagonal -1 eigenspace",
            "true",
            ok,
            ok,
        ));
    }
    Ok(())
}

fn suite_oracles(cfg: &JobConfig, report: &mut Report) -> Result<()> {
    let ok = verify_bracket_matrix_oracle(&cfg.lambda);
    report.push(Check::new(
        "bracket-oracle",
        "closed-form bracket equals the matrix commutator on all pairs",
        "true",
        ok,
        ok,
    ));
    let ok = verify_coad_oracle(&cfg.lambda);
    report.push(Check::new(
        "coadjoint-oracle",
        "closed-form coadjoint action equals the bracket pairing",
        "true",
        ok,
        ok,
    ));
    let ok = verify_rho_covariance::<Rat>(&cfg.lambda, ());
    report.push(Check::new(
        "scaling-covariance",
        "every monomial of x_r has scaling weight d_r",
        "true",
        ok,
        ok,
    ));
    if cfg.case != EpsilonCase::Gl {
        let form = FormData::new(&cfg.lambda, cfg.case)?;
        let ok = verify_sigma_matrix_oracle(&form);
        report.push(Check::new(
            "sigma-oracle",
            "sign-table involution equals the matrix-level involution",
            "true",
            ok,
            ok,
        ));
    }
    Ok(())
}

fn suite_graded(cfg: &JobConfig, report: &mut Report) -> Result<()> {
    let p = match cfg.field {
        FieldSpec::Fp(p) => p,
        FieldSpec::Q => {
            return Err(Error::Usage(
                "the graded suite needs a prime field (--field fp:<p>)".into(),
            ))
        }
    };
    let dmax = cfg.degree_cap.unwrap_or_else(|| 6.max(p as usize + 1));
    let rep = graded_invariant_dims::<Fp>(&cfg.lambda, cfg.case, p, dmax)?;
    for row in rep.rows {
        report.push(Check::eq(
            format!("graded-dim@{}", row.degree),
            "derivation-kernel dimension equals the generated dimension",
            row.invariant_dim,
            row.generated_dim,
        ));
    }
    Ok(())
}

/// Randomised structural identities, driven by the echoed seed: Leibniz for
/// the derivation action, compatibility with the bracket, and the
/// finite-difference description of differentials. All over the rationals.
fn suite_properties(cfg: &JobConfig, report: &mut Report) {
    let seed = cfg.seed.unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambda = &cfg.lambda;
    let basis = enumerate_basis(lambda);
    let rand_poly = |rng: &mut ChaCha8Rng| -> Poly<BasisIndex, Rat> {
        let mut f = Poly::zero();
        for _ in 0..rng.gen_range(1..4) {
            let mut factors = Vec::new();
            for _ in 0..rng.gen_range(0..3) {
                factors.push((basis[rng.gen_range(0..basis.len())], 1u32));
            }
            f.add_term(
                Monomial::from_factors(factors),
                Rat::from_parts(rng.gen_range(-3..4), 1),
            );
        }
        f
    };
    let mut leibniz_ok = true;
    let mut jacobi_ok = true;
    let mut diff_ok = true;
    for _ in 0..8 {
        let f = rand_poly(&mut rng);
        let g = rand_poly(&mut rng);
        let x = vec![(basis[rng.gen_range(0..basis.len())], Rat::from_parts(1, 1))];
        let y = vec![(basis[rng.gen_range(0..basis.len())], Rat::from_parts(1, 1))];
        // Leibniz
        let lhs = ad_derivation(&x, &f.mul(&g), lambda, ());
        let rhs = ad_derivation(&x, &f, lambda, ())
            .mul(&g)
            .add(&f.mul(&ad_derivation(&x, &g, lambda, ())));
        leibniz_ok &= lhs == rhs;
        // bracket compatibility
        let br = crate::coadjoint::bracket_combo(&x, &y, lambda, ());
        let lhs = ad_derivation(&br, &f, lambda, ());
        let rhs = ad_derivation(&x, &ad_derivation(&y, &f, lambda, ()), lambda, ()).sub(
            &ad_derivation(&y, &ad_derivation(&x, &f, lambda, ()), lambda, ()),
        );
        jacobi_ok &= lhs == rhs;
        // finite difference along a random direction at a random point
        let mut gamma: crate::polyring::DualPoint<BasisIndex, Rat> = BTreeMap::new();
        let mut dir: crate::polyring::DualPoint<BasisIndex, Rat> = BTreeMap::new();
        for b in &basis {
            if rng.gen_bool(0.5) {
                gamma.insert(*b, Rat::from_parts(rng.gen_range(-2..3), 1));
            }
            if rng.gen_bool(0.5) {
                dir.insert(*b, Rat::from_parts(rng.gen_range(-2..3), 1));
            }
        }
        let d = f.differential(&gamma, ());
        let pairing = d.iter().fold(Rat::from_parts(0, 1), |acc, (v, c)| {
            acc.add(&c.mul(dir.get(v).unwrap_or(&Rat::from_parts(0, 1))))
        });
        let images: BTreeMap<BasisIndex, Poly<GVar, Rat>> = basis
            .iter()
            .map(|b| {
                let g0 = gamma.get(b).cloned().unwrap_or(Rat::from_parts(0, 1));
                let v0 = dir.get(b).cloned().unwrap_or(Rat::from_parts(0, 1));
                (
                    *b,
                    Poly::constant(g0).add(&Poly::var(GVar::T, ()).scale(&v0)),
                )
            })
            .collect();
        let expanded = f.substitute(&images, ()).expect("total image map");
        let coeff_t = expanded
            .terms()
            .filter(|(m, _)| m.degree() == 1 && m.exponent(&GVar::T) == 1)
            .map(|(_, c)| c.clone())
            .next()
            .unwrap_or(Rat::from_parts(0, 1));
        diff_ok &= pairing == coeff_t;
    }
    report.push(Check::new(
        "leibniz",
        "the derivation action satisfies the product rule on samples",
        "true",
        leibniz_ok,
        leibniz_ok,
    ));
    report.push(Check::new(
        "bracket-compat",
        "derivations compose through the bracket on samples",
        "true",
        jacobi_ok,
        jacobi_ok,
    ));
    report.push(Check::new(
        "finite-difference",
        "differentials match the first-order expansion on samples",
        "true",
        diff_ok,
        diff_ok,
    ));
}

fn run_verify_generic<F: Field>(cfg: &JobConfig, ctx: F::Ctx) -> Result<Report> {
    let mut report = Report::new(cfg.echo("verify"));
    let suite = cfg.suite.as_deref().unwrap_or("all");
    let is_k_case = cfg.case != EpsilonCase::Gl;
    match suite {
        "invariance" => suite_invariance::<F>(cfg, ctx, &mut report),
        "parity" => {
            if !is_k_case {
                return Err(Error::Usage("the parity suite needs sp or so".into()));
            }
            suite_parity::<F>(cfg, ctx, &mut report)?;
        }
        "counting" => suite_counting(cfg, &mut report),
        "jacobian" => suite_jacobian::<F>(cfg, ctx, &mut report)?,
        "stabiliser" => suite_stabiliser(cfg, &mut report)?,
        "oracles" => suite_oracles(cfg, &mut report)?,
        "graded" => suite_graded(cfg, &mut report)?,
        "properties" => suite_properties(cfg, &mut report),
        "all" => {
            suite_invariance::<F>(cfg, ctx, &mut report);
            if is_k_case {
                suite_parity::<F>(cfg, ctx, &mut report)?;
            }
            suite_counting(cfg, &mut report);
            suite_jacobian::<F>(cfg, ctx, &mut report)?;
            suite_stabiliser(cfg, &mut report)?;
            suite_oracles(cfg, &mut report)?;
        }
        other => {
            return Err(Error::Usage(format!(
                "unknown suite '{other}'; expected invariance|parity|counting|jacobian|stabiliser|oracles|graded|properties|all"
            )))
        }
    }
    Ok(report)
}

/// The `verify` job: run one named suite (or all core suites).
pub fn run_verify(cfg: &JobConfig) -> Result<Report> {
    cfg.validate()?;
    match cfg.field {
        FieldSpec::Q => run_verify_generic::<Rat>(cfg, ()),
        FieldSpec::Fp(p) => run_verify_generic::<Fp>(cfg, p),
    }
}

fn run_envelope_generic<F: Field>(cfg: &JobConfig, ctx: F::Ctx) -> Result<Report> {
    let mut report = Report::new(cfg.echo("envelope"));
    let check = cfg.suite.as_deref().unwrap_or("grbeta");
    let alg = LieAlg::<F>::new(&cfg.lambda, cfg.case, ctx)?;
    match check {
        "milner" => {
            let cap = cfg.degree_cap.unwrap_or(3);
            let ok = verify_mu_leading_term(&alg, cap)?;
            report.push(Check::new(
                "mu-leading-term",
                format!("the symmetrisation map is triangular up to degree {cap}"),
                "true",
                ok,
                ok,
            ));
        }
        "grbeta" => {
            let cap = cfg.degree_cap.unwrap_or(3);
            let rep = verify_gr_beta(&alg, cap)?;
            report.push(Check::new(
                "gr-beta-identity",
                format!(
                    "the top symbol survives the symmetrisation ({} monomials)",
                    rep.monomials_checked
                ),
                0,
                rep.symbol_failures,
                rep.symbol_failures == 0,
            ));
            report.push(Check::new(
                "beta-equivariance",
                "the symmetrisation intertwines the derivation actions",
                0,
                rep.equivariance_failures,
                rep.equivariance_failures == 0,
            ));
            let ok = verify_pi_equivariance(&alg, cap.min(3))?;
            report.push(Check::new(
                "pi-equivariance",
                "evaluation projection intertwines the adjoint actions",
                "true",
                ok,
                ok,
            ));
        }
        "pcentre" => {
            let p = F::characteristic(ctx);
            if p < 2 {
                return Err(Error::Usage(
                    "the p-centre check needs a prime field (--field fp:<p>)".into(),
                ));
            }
            let cap = cfg.degree_cap.unwrap_or(p as usize + 1);
            let mut first_bad: Option<(usize, usize)> = None;
            for k in 0..alg.dim {
                let u = p_centre_generator(&alg, &[(k, F::one(ctx))], cap)?;
                if let Some(y) = verify_central(&alg, &u)? {
                    first_bad = Some((k, y));
                    break;
                }
            }
            report.push(Check::new(
                "pcentre-central",
                format!("v^p - v^[p] commutes with every generator (dim {})", alg.dim),
                "no failure",
                first_bad.map_or("no failure".into(), |(k, y)| {
                    format!("generator {k} fails against {y}")
                }),
                first_bad.is_none(),
            ));
        }
        "bound" => {
            let p = F::characteristic(ctx);
            if p < 2 {
                return Err(Error::Usage(
                    "the dimension bound needs a prime field (--field fp:<p>)".into(),
                ));
            }
            let bound = zassenhaus_bound(&cfg.lambda, cfg.case, p)?;
            report.push(Check::new(
                "dimension-bound",
                "p^((dim - ind)/2) with an integral exponent",
                bound,
                bound,
                true,
            ));
            report.payload = Some(json!({ "bound": bound.to_string() }));
        }
        other => {
            return Err(Error::Usage(format!(
                "unknown envelope check '{other}'; expected milner|pcentre|grbeta|bound"
            )))
        }
    }
    Ok(report)
}

/// The `envelope` job: symmetrisation, p-centre and bound checks.
pub fn run_envelope(cfg: &JobConfig) -> Result<Report> {
    cfg.validate()?;
    match cfg.field {
        FieldSpec::Q => run_envelope_generic::<Rat>(cfg, ()),
        FieldSpec::Fp(p) => run_envelope_generic::<Fp>(cfg, p),
    }
}

/// Convenience: all invariants as display text, used by golden tests.
pub fn invariant_texts(lambda: &Partition) -> Vec<String> {
    all_invariants::<Rat>(lambda, ())
        .iter()
        .map(|x| x.to_string())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(lambda: &str, case: &str, field: &str) -> JobConfig {
        JobConfig::new(lambda, case, field).unwrap()
    }

    #[test]
    fn basis_job_counts() {
        let report = run_basis(&cfg("3,2", "gl", "q")).unwrap();
        assert!(report.pass);
        let payload = report.payload.unwrap();
        assert_eq!(payload["dim"], 9);
        // λ=(2,1) has the 1/3/1 triangular split
        let report = run_basis(&cfg("2,1", "gl", "q")).unwrap();
        let payload = report.payload.unwrap();
        assert_eq!(payload["triangular"]["lower"], 1);
        assert_eq!(payload["triangular"]["diagonal"], 3);
        assert_eq!(payload["triangular"]["upper"], 1);
    }

    #[test]
    fn verify_all_small() {
        let report = run_verify(&cfg("2,1", "gl", "fp:5")).unwrap();
        assert!(report.pass, "{}", report.to_json());
        let mut c = cfg("2,2", "sp", "fp:5");
        c.suite = Some("parity".into());
        let report = run_verify(&c).unwrap();
        assert!(report.pass, "{}", report.to_json());
    }

    #[test]
    fn index_job() {
        let report = run_index(&cfg("3,1", "so", "q")).unwrap();
        assert!(report.pass);
        assert_eq!(report.payload.unwrap()["index"], 1);
    }

    #[test]
    fn envelope_pcentre_job() {
        let mut c = cfg("2,1", "gl", "fp:3");
        c.suite = Some("pcentre".into());
        let report = run_envelope(&c).unwrap();
        assert!(report.pass, "{}", report.to_json());
    }

    #[test]
    fn report_body_is_deterministic() {
        let mut c = cfg("2,2", "sp", "fp:5");
        c.suite = Some("all".into());
        let a = run_verify(&c).unwrap().body_json();
        let b = run_verify(&c).unwrap().body_json();
        assert_eq!(a, b);
    }

    #[test]
    fn rejects_invalid_configs() {
        assert!(JobConfig::new("3", "sp", "q").is_err()); // bad multiplicity
        assert!(JobConfig::new("2,2", "sp", "fp:2").is_err()); // char 2
        assert!(JobConfig::new("2,x", "gl", "q").is_err());
        assert!(JobConfig::new("2,1", "gl", "fp:4").is_err()); // not prime
        let mut c = cfg("2,1", "gl", "q");
        c.suite = Some("nope".into());
        assert!(matches!(run_verify(&c), Err(Error::Usage(_))));
    }

    #[test]
    fn properties_suite_with_seed() {
        let mut c = cfg("2,1", "gl", "q");
        c.suite = Some("properties".into());
        c.seed = Some(42);
        let report = run_verify(&c).unwrap();
        assert!(report.pass, "{}", report.to_json());
        assert_eq!(report.job.seed, Some(42));
    }

    #[test]
    fn graded_suite_small() {
        let mut c = cfg("2", "sp", "fp:3");
        c.suite = Some("graded".into());
        c.degree_cap = Some(4);
        let report = run_verify(&c).unwrap();
        assert!(report.pass, "{}", report.to_json());
    }
}
