//! Sparse exact multivariate polynomials over a [`Field`], generic in the
//! variable type so the same ring serves the `ξ` coordinates of the full
//! dual space and the `ζ/η` coordinates of the restricted duals.
//!
//! Monomials are kept in a canonical sorted form and compared degree first,
//! then lexicographically, so printed output and iteration order are
//! deterministic.

use crate::centralizer::{bracket, BasisIndex};
use crate::combinatorics::Partition;
use crate::field::Field;
use crate::linalg;
use crate::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Marker trait for polynomial variables.
pub trait Var: Clone + Ord + Eq + fmt::Debug + fmt::Display + 'static {}
impl<T: Clone + Ord + Eq + fmt::Debug + fmt::Display + 'static> Var for T {}

/// A linear functional given by finitely many coordinates; absent
/// coordinates are zero.
pub type DualPoint<V, F> = BTreeMap<V, F>;

/// The linear part of a polynomial at a point, as coordinates.
pub type LinearForm<V, F> = BTreeMap<V, F>;

/// Canonical monomial: sorted variables with positive exponents.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Monomial<V: Var> {
    factors: Vec<(V, u32)>,
}

impl<V: Var> Monomial<V> {
    pub fn one() -> Self {
        Monomial { factors: vec![] }
    }

    pub fn var(v: V) -> Self {
        Monomial {
            factors: vec![(v, 1)],
        }
    }

    pub fn from_factors(mut factors: Vec<(V, u32)>) -> Self {
        factors.retain(|(_, e)| *e > 0);
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(V, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { factors: merged }
    }

    pub fn factors(&self) -> &[(V, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(_, e)| *e as usize).sum()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut f = self.factors.clone();
        f.extend(rhs.factors.iter().cloned());
        Monomial::from_factors(f)
    }

    pub fn exponent(&self, v: &V) -> u32 {
        self.factors
            .iter()
            .find(|(w, _)| w == v)
            .map_or(0, |(_, e)| *e)
    }

    /// Divide by one power of `v`; `None` if `v` does not occur.
    pub fn div_var(&self, v: &V) -> Option<Self> {
        let mut f = self.factors.clone();
        let k = f.iter().position(|(w, _)| w == v)?;
        if f[k].1 == 1 {
            f.remove(k);
        } else {
            f[k].1 -= 1;
        }
        Some(Monomial { factors: f })
    }
}

impl<V: Var> PartialOrd for Monomial<V> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<V: Var> Ord for Monomial<V> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl<V: Var> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(v, e)| {
                if *e == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial: canonical monomial → nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<V: Var, F: Field> {
    terms: BTreeMap<Monomial<V>, F>,
}

impl<V: Var, F: Field> Poly<V, F> {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { terms }
    }

    pub fn one(ctx: F::Ctx) -> Self {
        Poly::constant(F::one(ctx))
    }

    pub fn var(v: V, ctx: F::Ctx) -> Self {
        Poly::term(Monomial::var(v), F::one(ctx))
    }

    pub fn term(m: Monomial<V>, c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn from_terms(list: Vec<(Monomial<V>, F)>) -> Self {
        let mut out = Poly::zero();
        for (m, c) in list {
            out.add_term(m, c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<V>, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial<V>, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in rhs.terms() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.mul(k)))
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Poly::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in rhs.terms() {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }

    pub fn pow(&self, e: u32, ctx: F::Ctx) -> Self {
        let mut acc = Poly::one(ctx);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn homogeneous_component(&self, k: usize) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Variables occurring in the polynomial, sorted.
    pub fn support(&self) -> Vec<V> {
        let mut set = std::collections::BTreeSet::new();
        for m in self.terms.keys() {
            for (v, _) in m.factors() {
                set.insert(v.clone());
            }
        }
        set.into_iter().collect()
    }

    /// Substitute coordinates of `gamma` for the variables; absent
    /// coordinates are zero.
    pub fn evaluate(&self, gamma: &DualPoint<V, F>, ctx: F::Ctx) -> F {
        let mut acc = F::zero(ctx);
        'term: for (m, c) in self.terms() {
            let mut prod = c.clone();
            for (v, e) in m.factors() {
                match gamma.get(v) {
                    None => continue 'term,
                    Some(x) => {
                        if x.is_zero() {
                            continue 'term;
                        }
                        prod = prod.mul(&x.pow(*e as u64));
                    }
                }
            }
            acc = acc.add(&prod);
        }
        acc
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: &V, ctx: F::Ctx) -> Self {
        let mut out = Poly::zero();
        for (m, c) in self.terms() {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let reduced = m.div_var(v).expect("exponent checked");
            out.add_term(reduced, c.mul(&F::from_i64(ctx, e as i64)));
        }
        out
    }

    /// The linear part of `v ↦ f(γ + v)`: all partials evaluated at `γ`.
    pub fn differential(&self, gamma: &DualPoint<V, F>, ctx: F::Ctx) -> LinearForm<V, F> {
        let mut out = BTreeMap::new();
        for v in self.support() {
            let val = self.partial(&v, ctx).evaluate(gamma, ctx);
            if !val.is_zero() {
                out.insert(v, val);
            }
        }
        out
    }

    /// Ring homomorphism determined by `images`; every variable of `self`
    /// must have an image.
    pub fn substitute<W: Var>(
        &self,
        images: &BTreeMap<V, Poly<W, F>>,
        ctx: F::Ctx,
    ) -> Result<Poly<W, F>> {
        let mut out = Poly::zero();
        for (m, c) in self.terms() {
            let mut prod = Poly::constant(c.clone());
            for (v, e) in m.factors() {
                let img = images
                    .get(v)
                    .ok_or_else(|| Error::MissingImage(v.to_string()))?;
                prod = prod.mul(&img.pow(*e, ctx));
            }
            out = out.add(&prod);
        }
        Ok(out)
    }

    /// Linear substitution: every image must have degree at most 1.
    pub fn substitute_linear<W: Var>(
        &self,
        images: &BTreeMap<V, Poly<W, F>>,
        ctx: F::Ctx,
    ) -> Result<Poly<W, F>> {
        for (v, img) in images {
            if img.degree().unwrap_or(0) > 1 {
                return Err(Error::Usage(format!(
                    "image of {v} has degree {} > 1",
                    img.degree().unwrap()
                )));
            }
        }
        self.substitute(images, ctx)
    }

    /// Extend `rule` (an action on variables) to a derivation by Leibniz.
    pub fn derivation(&self, rule: &dyn Fn(&V) -> Poly<V, F>, ctx: F::Ctx) -> Self {
        let mut out = Poly::zero();
        for (m, c) in self.terms() {
            for (v, e) in m.factors() {
                let reduced = m.div_var(v).expect("factor present");
                let coeff = c.mul(&F::from_i64(ctx, *e as i64));
                let piece = Poly::term(reduced, coeff).mul(&rule(v));
                out = out.add(&piece);
            }
        }
        out
    }
}

impl<V: Var, F: Field> fmt::Display for Poly<V, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.degree() == 0 {
                write!(f, "{c}")?;
            } else {
                let cs = c.to_string();
                if cs == "1" {
                    write!(f, "{m}")?;
                } else {
                    write!(f, "{cs}*{m}")?;
                }
            }
        }
        Ok(())
    }
}

/// The derivation of `K[g_e^*]` extending `v ↦ [x, v]` for `x` a linear
/// combination of basis elements.
pub fn ad_derivation<F: Field>(
    x: &[(BasisIndex, F)],
    f: &Poly<BasisIndex, F>,
    lambda: &Partition,
    ctx: F::Ctx,
) -> Poly<BasisIndex, F> {
    f.derivation(
        &|v: &BasisIndex| {
            let mut out = Poly::zero();
            for (b, c) in x {
                for (w, k) in bracket(*b, *v, lambda) {
                    out.add_term(Monomial::var(w), c.mul(&F::from_i64(ctx, k)));
                }
            }
            out
        },
        ctx,
    )
}

/// Exact rank of the matrix of differentials of `fs` at `gamma`, restricted
/// to the given coordinate set (all occurring variables if absent).
pub fn jacobian_rank<V: Var, F: Field>(
    fs: &[Poly<V, F>],
    gamma: &DualPoint<V, F>,
    subspace: Option<&[V]>,
    ctx: F::Ctx,
) -> usize {
    let cols: Vec<V> = match subspace {
        Some(s) => s.to_vec(),
        None => {
            let mut set = std::collections::BTreeSet::new();
            for f in fs {
                set.extend(f.support());
            }
            set.into_iter().collect()
        }
    };
    let mut m = Vec::with_capacity(fs.len());
    for f in fs {
        let d = f.differential(gamma, ctx);
        m.push(
            cols.iter()
                .map(|v| d.get(v).cloned().unwrap_or_else(|| F::zero(ctx)))
                .collect::<Vec<F>>(),
        );
    }
    linalg::rank(&m)
}

/// All monomials of the given total degree over an ordered variable list.
pub fn monomials_of_degree<V: Var>(vars: &[V], degree: usize) -> Vec<Monomial<V>> {
    let mut out = Vec::new();
    let mut cur: Vec<(V, u32)> = Vec::new();
    fn rec<V: Var>(
        vars: &[V],
        idx: usize,
        rem: usize,
        cur: &mut Vec<(V, u32)>,
        out: &mut Vec<Monomial<V>>,
    ) {
        if idx == vars.len() {
            if rem == 0 {
                out.push(Monomial::from_factors(cur.clone()));
            }
            return;
        }
        if idx == vars.len() - 1 {
            cur.push((vars[idx].clone(), rem as u32));
            out.push(Monomial::from_factors(cur.clone()));
            cur.pop();
            return;
        }
        for e in 0..=rem {
            if e > 0 {
                cur.push((vars[idx].clone(), e as u32));
            }
            rec(vars, idx + 1, rem - e, cur, out);
            if e > 0 {
                cur.pop();
            }
        }
    }
    rec(vars, 0, degree, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Fp, Rat};
    use proptest::prelude::*;

    type QP = Poly<u32, Rat>;

    fn qvar(v: u32) -> QP {
        Poly::var(v, ())
    }

    fn qc(n: i64) -> QP {
        Poly::constant(Rat::from_parts(n, 1))
    }

    #[test]
    fn arithmetic_identities() {
        let f = qvar(1).mul(&qvar(2)).add(&qc(3));
        assert_eq!(f.add(&Poly::zero()), f);
        assert_eq!(f.mul(&Poly::one(())), f);
        assert_eq!(f.sub(&f), Poly::zero());
    }

    #[test]
    fn freshman_dream_only_mod_p() {
        // (x+y)^2 over F_3 keeps the cross term
        let p3 = 3u64;
        let x: Poly<u32, Fp> = Poly::var(1, p3);
        let y: Poly<u32, Fp> = Poly::var(2, p3);
        let sq = x.add(&y).pow(2, p3);
        assert_eq!(sq.num_terms(), 3);
        // but (x+y)^3 = x^3 + y^3 over F_3
        let cube = x.add(&y).pow(3, p3);
        assert_eq!(cube.num_terms(), 2);
    }

    #[test]
    fn evaluate_and_differential() {
        // f = x^2 y + 3 x
        let f = qvar(1).pow(2, ()).mul(&qvar(2)).add(&qc(3).mul(&qvar(1)));
        let mut gamma: DualPoint<u32, Rat> = BTreeMap::new();
        gamma.insert(1, Rat::from_parts(2, 1));
        gamma.insert(2, Rat::from_parts(5, 1));
        assert_eq!(f.evaluate(&gamma, ()), Rat::from_parts(26, 1));
        let d = f.differential(&gamma, ());
        // ∂x = 2xy + 3 = 23, ∂y = x^2 = 4
        assert_eq!(d[&1], Rat::from_parts(23, 1));
        assert_eq!(d[&2], Rat::from_parts(4, 1));
    }

    #[test]
    fn differential_at_zero_is_the_linear_part() {
        // f = x^2 y + 3x + 4y + 9
        let f = qvar(1)
            .pow(2, ())
            .mul(&qvar(2))
            .add(&qc(3).mul(&qvar(1)))
            .add(&qc(4).mul(&qvar(2)))
            .add(&qc(9));
        let d = f.differential(&BTreeMap::new(), ());
        assert_eq!(d[&1], Rat::from_parts(3, 1));
        assert_eq!(d[&2], Rat::from_parts(4, 1));
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn differential_of_linear_is_itself() {
        let f = qvar(1).scale(&Rat::from_parts(2, 1)).add(&qvar(2));
        for g in [0i64, 3, -7] {
            let mut gamma = BTreeMap::new();
            gamma.insert(1, Rat::from_parts(g, 1));
            let d = f.differential(&gamma, ());
            assert_eq!(d[&1], Rat::from_parts(2, 1));
            assert_eq!(d[&2], Rat::from_parts(1, 1));
        }
    }

    #[test]
    fn substitute_identity_and_zero() {
        let f = qvar(1).mul(&qvar(2)).add(&qc(5));
        let ident: BTreeMap<u32, QP> = [(1, qvar(1)), (2, qvar(2))].into();
        assert_eq!(f.substitute(&ident, ()).unwrap(), f);
        let zero: BTreeMap<u32, QP> = [(1, Poly::zero()), (2, Poly::zero())].into();
        assert_eq!(f.substitute(&zero, ()).unwrap(), qc(5));
        let missing: BTreeMap<u32, QP> = [(1, qvar(1))].into();
        assert!(f.substitute(&missing, ()).is_err());
    }

    #[test]
    fn substitute_linear_rejects_quadratic_images() {
        let f = qvar(1);
        let img: BTreeMap<u32, QP> = [(1, qvar(2).pow(2, ()))].into();
        assert!(f.substitute_linear(&img, ()).is_err());
    }

    #[test]
    fn jacobian_rank_basics() {
        // constants → 0
        assert_eq!(jacobian_rank(&[qc(4), qc(0)], &BTreeMap::new(), None, ()), 0);
        // the variables themselves → count
        let fs = vec![qvar(1), qvar(2), qvar(3)];
        assert_eq!(jacobian_rank(&fs, &BTreeMap::new(), None, ()), 3);
        // row scaling and permutation do not change the rank
        let fs2 = vec![qvar(3), qvar(1).scale(&Rat::from_parts(7, 1)), qvar(2)];
        assert_eq!(jacobian_rank(&fs2, &BTreeMap::new(), None, ()), 3);
    }

    #[test]
    fn monomial_enumeration_counts() {
        let vars: Vec<u32> = vec![1, 2, 3];
        // #monomials of degree k in 3 vars = C(k+2, 2)
        for (k, want) in [(0, 1), (1, 3), (2, 6), (3, 10), (4, 15)] {
            assert_eq!(monomials_of_degree(&vars, k).len(), want);
        }
    }

    #[test]
    fn display_is_canonical() {
        let f = qvar(2)
            .pow(2, ())
            .add(&qvar(1).scale(&Rat::from_parts(-3, 1)))
            .add(&qc(1));
        assert_eq!(f.to_string(), "2^2 + -3*1 + 1");
    }

    proptest! {
        #[test]
        fn ring_axioms_random(fa in small_poly(), fb in small_poly(), fc in small_poly()) {
            // distributivity and commutativity
            prop_assert_eq!(fa.mul(&fb.add(&fc)), fa.mul(&fb).add(&fa.mul(&fc)));
            prop_assert_eq!(fa.mul(&fb), fb.mul(&fa));
            prop_assert_eq!(fa.add(&fb), fb.add(&fa));
            prop_assert_eq!(fa.mul(&fb).mul(&fc), fa.mul(&fb.mul(&fc)));
        }

        #[test]
        fn finite_difference_oracle(f in small_poly(), g in point(), v in point()) {
            // coefficient of t in f(γ + t·v) equals differential(f, γ)(v)
            let d = f.differential(&g, ());
            let pairing: Rat = d.iter().fold(Rat::from_parts(0,1), |acc, (var, c)| {
                let vv = v.get(var).cloned().unwrap_or(Rat::from_parts(0,1));
                acc.add(&c.mul(&vv))
            });
            // expand f(γ + t v) symbolically in t by substituting per variable
            // with an extra formal variable encoded as u32::MAX
            const T: u32 = u32::MAX;
            let mut images: BTreeMap<u32, QP> = BTreeMap::new();
            for var in f.support() {
                let gv = g.get(&var).cloned().unwrap_or(Rat::from_parts(0,1));
                let vv = v.get(&var).cloned().unwrap_or(Rat::from_parts(0,1));
                images.insert(var, Poly::constant(gv).add(&Poly::var(T, ()).scale(&vv)));
            }
            let expanded = f.substitute(&images, ()).unwrap();
            let coeff_t = expanded
                .terms()
                .filter(|(m, _)| m.exponent(&T) == 1 && m.degree() == 1)
                .map(|(_, c)| c.clone())
                .next()
                .unwrap_or(Rat::from_parts(0, 1));
            prop_assert_eq!(pairing, coeff_t);
        }
    }

    fn small_poly() -> impl Strategy<Value = QP> {
        proptest::collection::vec(
            (0u32..4, proptest::collection::vec(0u32..3, 4), -4i64..5),
            0..6,
        )
        .prop_map(|terms| {
            let mut out = QP::zero();
            for (_, exps, c) in terms {
                let factors: Vec<(u32, u32)> = exps
                    .iter()
                    .enumerate()
                    .map(|(v, e)| (v as u32, *e))
                    .collect();
                out.add_term(Monomial::from_factors(factors), Rat::from_parts(c, 1));
            }
            out
        })
    }

    fn point() -> impl Strategy<Value = DualPoint<u32, Rat>> {
        proptest::collection::btree_map(0u32..4, (-3i64..4).prop_map(|v| Rat::from_parts(v, 1)), 0..4)
    }
}
