//! Bivariate differential operators with factored rational coefficients.
//!
//! The two charts are `(x, y)` and `(u, v)`. Operators are kept in expanded
//! normal form (all derivatives to the right), so a commutator is zero iff
//! its term map is empty.

use crate::poly::{MPoly, Var};
use crate::rat::BigRat;
use crate::ratfn::{DenBase, RatFn};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub enum Chart {
    XY,
    UV,
}

impl Chart {
    pub fn vars(self) -> (Var, Var) {
        match self {
            Chart::XY => (Var::X, Var::Y),
            Chart::UV => (Var::U, Var::V),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WeylError {
    ChartMismatch,
    /// Parity precondition of the even restriction failed; carries the
    /// offending derivative orders.
    ParityViolation(u32, u32),
}

impl fmt::Display for WeylError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeylError::ChartMismatch => write!(f, "operands live in different charts"),
            WeylError::ParityViolation(a, b) => {
                write!(f, "coefficient of d^{}_1 d^{}_2 violates the y-parity rule", a, b)
            }
        }
    }
}

/// A differential operator: map from derivative orders `(a, b)` to a
/// `RatFn` coefficient.
#[derive(Clone, Debug)]
pub struct DiffOp {
    pub chart: Chart,
    terms: BTreeMap<(u32, u32), RatFn>,
}

impl DiffOp {
    pub fn zero(chart: Chart) -> DiffOp {
        DiffOp {
            chart,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(chart: Chart) -> DiffOp {
        DiffOp::from_poly_terms(chart, vec![((0, 0), MPoly::one())])
    }

    pub fn from_terms(chart: Chart, terms: Vec<((u32, u32), RatFn)>) -> DiffOp {
        let mut op = DiffOp::zero(chart);
        for (k, c) in terms {
            op.add_term(k, c);
        }
        op
    }

    pub fn from_poly_terms(chart: Chart, terms: Vec<((u32, u32), MPoly)>) -> DiffOp {
        DiffOp::from_terms(
            chart,
            terms.into_iter().map(|(k, p)| (k, RatFn::from_poly(p))).collect(),
        )
    }

    fn add_term(&mut self, key: (u32, u32), c: RatFn) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &RatFn)> {
        self.terms.iter()
    }

    pub fn coeff(&self, a: u32, b: u32) -> RatFn {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(RatFn::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total differential order.
    pub fn order(&self) -> u32 {
        self.terms.keys().map(|&(a, b)| a + b).max().unwrap_or(0)
    }

    pub fn add(&self, other: &DiffOp) -> Result<DiffOp, WeylError> {
        if self.chart != other.chart {
            return Err(WeylError::ChartMismatch);
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &DiffOp) -> Result<DiffOp, WeylError> {
        self.add(&other.scale(&crate::rat::int(-1)))
    }

    pub fn scale(&self, c: &BigRat) -> DiffOp {
        if c.is_zero() {
            return DiffOp::zero(self.chart);
        }
        DiffOp {
            chart: self.chart,
            terms: self.terms.iter().map(|(k, r)| (*k, r.scale(c))).collect(),
        }
    }

    pub fn scale_poly(&self, p: &MPoly) -> DiffOp {
        let mut out = DiffOp::zero(self.chart);
        for (k, r) in &self.terms {
            out.add_term(*k, r.mul_poly(p));
        }
        out
    }

    pub fn scale_ratfn(&self, r: &RatFn) -> DiffOp {
        let mut out = DiffOp::zero(self.chart);
        for (k, c) in &self.terms {
            out.add_term(*k, c.mul(r));
        }
        out
    }

    /// Operator product `self o other` via the Leibniz rule.
    pub fn compose(&self, other: &DiffOp) -> Result<DiffOp, WeylError> {
        if self.chart != other.chart {
            return Err(WeylError::ChartMismatch);
        }
        let (v1, v2) = self.chart.vars();
        let mut out = DiffOp::zero(self.chart);
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                // d1^a1 d2^b1 (c2 ...) = sum binom(a1,i) binom(b1,j)
                //   (d1^{a1-i} d2^{b1-j} c2) d1^{i+a2} d2^{j+b2}
                let mut da = vec![c2.clone()];
                for _ in 0..a1 {
                    da.push(da.last().unwrap().diff(v1));
                }
                for i in 0..=a1 {
                    let mut dab = vec![da[(a1 - i) as usize].clone()];
                    for _ in 0..b1 {
                        dab.push(dab.last().unwrap().diff(v2));
                    }
                    for j in 0..=b1 {
                        let d = &dab[(b1 - j) as usize];
                        if d.is_zero() {
                            continue;
                        }
                        let coeff = binom(a1, i) * binom(b1, j);
                        let term = c1.mul(d).scale(&crate::rat::int(coeff));
                        out.add_term((i + a2, j + b2), term);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[self, other] = self o other - other o self`.
    pub fn commutator(&self, other: &DiffOp) -> Result<DiffOp, WeylError> {
        self.compose(other)?.sub(&other.compose(self)?)
    }

    /// Apply to a polynomial; the image is a `RatFn` in general.
    pub fn apply(&self, p: &MPoly) -> RatFn {
        let (v1, v2) = self.chart.vars();
        let mut out = RatFn::zero();
        for (&(a, b), c) in &self.terms {
            let mut d = p.clone();
            for _ in 0..a {
                d = d.diff(v1);
            }
            for _ in 0..b {
                d = d.diff(v2);
            }
            if d.is_zero() {
                continue;
            }
            out = out.add(&c.mul_poly(&d));
        }
        out
    }

    /// Apply to a polynomial expecting a polynomial image.
    pub fn apply_poly(&self, p: &MPoly) -> Option<MPoly> {
        self.apply(p).to_poly()
    }

    /// All coefficients polynomial?
    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(|c| c.clone().to_poly().is_some())
    }

    /// `base^{-s} o self o base^{s}` with a symbolic exponent `s` (any
    /// polynomial in the parameters, e.g. `nu/2` or `(nu-lambda)/2`).
    ///
    /// Realized through the covariant substitution
    /// `d_i -> d_i + s (d_i base)/base`, which is an algebra homomorphism.
    pub fn conjugate_by_power(&self, base: DenBase, s: &MPoly) -> DiffOp {
        let (v1, v2) = self.chart.vars();
        let cov = |v: Var| -> DiffOp {
            let db = base.poly().diff(v);
            let mut t = DiffOp::zero(self.chart);
            t.add_term(
                if v == v1 { (1, 0) } else { (0, 1) },
                RatFn::from_poly(MPoly::one()),
            );
            if !db.is_zero() && !s.is_zero() {
                t.add_term((0, 0), RatFn::from_poly(s.mul(&db)).div_base(base));
            }
            t
        };
        let cov1 = cov(v1);
        let cov2 = cov(v2);
        let mut out = DiffOp::zero(self.chart);
        for (&(a, b), c) in &self.terms {
            let mut term = DiffOp::from_terms(self.chart, vec![((0, 0), c.clone())]);
            for _ in 0..a {
                term = term.compose(&cov1).unwrap();
            }
            for _ in 0..b {
                term = term.compose(&cov2).unwrap();
            }
            for (k, cc) in term.terms {
                out.add_term(k, cc);
            }
        }
        out
    }

    /// Check the structural Z2 parity: with `e` the y-parity offset (0 for an
    /// even operator, 1 for an odd one), every coefficient of `d_y^b` must
    /// have y-degree parity `(b + e) mod 2`.
    pub fn y_parity(&self) -> Option<u32> {
        for e in [0u32, 1] {
            let ok = self.terms.iter().all(|(&(_, b), c)| {
                c.num
                    .terms()
                    .all(|(m, _)| (m.exp(Var::Y) as u32 + b + e) % 2 == 0)
                    && c.den_powers().all(|(&bb, &k)| bb != DenBase::Y || k % 2 == 0)
            });
            if ok && !self.is_zero() {
                return Some(e);
            }
        }
        None
    }

    /// The operator induced on Z2-even functions through `u = x, v = y^2`.
    ///
    /// Precondition: the operator is even (`y_parity() == Some(0)`); violations
    /// are reported with the offending term.
    pub fn restrict_to_even(&self) -> Result<DiffOp, WeylError> {
        assert_eq!(self.chart, Chart::XY, "restrict_to_even expects the XY chart");
        let mut out = DiffOp::zero(Chart::UV);
        for (&(a, b), c) in &self.terms {
            let cpoly = c
                .clone()
                .to_poly()
                .ok_or(WeylError::ParityViolation(a, b))?;
            // transported d_y^b = y^(b mod 2) * S_b(v, d_v); build S_b by the
            // two-step recursion, with full Leibniz in v
            let mut s: BTreeMap<u32, MPoly> = BTreeMap::new();
            s.insert(0, MPoly::one());
            let mut parity = 0u32;
            for _ in 0..b {
                let mut next: BTreeMap<u32, MPoly> = BTreeMap::new();
                let mut push = |q: u32, p: MPoly| {
                    if p.is_zero() {
                        return;
                    }
                    let e = next.entry(q).or_insert_with(MPoly::zero);
                    *e = e.add(&p);
                };
                if parity == 0 {
                    // 2 d_v o S
                    for (&q, cs) in &s {
                        push(q + 1, cs.scale(&crate::rat::int(2)));
                        push(q, cs.diff(Var::V).scale(&crate::rat::int(2)));
                    }
                    parity = 1;
                } else {
                    // (2 v d_v + 1) o S
                    let v = MPoly::var(Var::V);
                    for (&q, cs) in &s {
                        push(q + 1, v.mul(cs).scale(&crate::rat::int(2)));
                        push(q, v.mul(&cs.diff(Var::V)).scale(&crate::rat::int(2)).add(cs));
                    }
                    parity = 0;
                }
                s = next;
                s.retain(|_, p| !p.is_zero());
            }
            // coefficient must carry y^parity; strip it and map y^2 -> v
            let stripped = if parity == 1 {
                cpoly
                    .divide_exact(&MPoly::var(Var::Y))
                    .ok_or(WeylError::ParityViolation(a, b))?
            } else {
                cpoly
            };
            let mut ctil = stripped
                .subst_one(Var::X, MPoly::var(Var::U))
                .even_y_to_v()
                .ok_or(WeylError::ParityViolation(a, b))?;
            if parity == 1 {
                // the leftover y * y^1 = v
                ctil = ctil.mul(&MPoly::var(Var::V));
            }
            for (q, cs) in s {
                out.add_term((a, q), RatFn::from_poly(ctil.mul(&cs)));
            }
        }
        Ok(out)
    }

    /// Canonical serialization: ordered `(a, b, coefficient)` triples.
    pub fn to_triples(&self) -> Vec<(u32, u32, String)> {
        self.terms
            .iter()
            .map(|(&(a, b), c)| (a, b, c.to_string()))
            .collect()
    }
}

impl PartialEq for DiffOp {
    fn eq(&self, other: &Self) -> bool {
        self.chart == other.chart && {
            match self.sub(other) {
                Ok(d) => d.is_zero(),
                Err(_) => false,
            }
        }
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (v1, v2) = self.chart.vars();
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            write!(f, "[{}]", c)?;
            if a > 0 {
                write!(f, " d{}^{}", v1.name(), a)?;
            }
            if b > 0 {
                write!(f, " d{}^{}", v2.name(), b)?;
            }
        }
        Ok(())
    }
}

fn binom(n: u32, k: u32) -> i64 {
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) as i64 / (i + 1) as i64;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{p, MPoly, Var};
    use crate::rat::{frac, int};
    use proptest::prelude::*;

    fn dx() -> DiffOp {
        DiffOp::from_poly_terms(Chart::XY, vec![((1, 0), MPoly::one())])
    }

    fn dy() -> DiffOp {
        DiffOp::from_poly_terms(Chart::XY, vec![((0, 1), MPoly::one())])
    }

    fn mul_op(q: &str) -> DiffOp {
        DiffOp::from_poly_terms(Chart::XY, vec![((0, 0), p(q))])
    }

    #[test]
    fn leibniz_degree_one() {
        // dx o x = x dx + 1
        let got = dx().compose(&mul_op("x")).unwrap();
        let want = DiffOp::from_poly_terms(
            Chart::XY,
            vec![((1, 0), p("x")), ((0, 0), p("1"))],
        );
        assert_eq!(got, want);
    }

    #[test]
    fn leibniz_mixed() {
        // dx o (x^2 dy) = x^2 dx dy + 2x dy
        let x2dy = DiffOp::from_poly_terms(Chart::XY, vec![((0, 1), p("x^2"))]);
        let got = dx().compose(&x2dy).unwrap();
        let want = DiffOp::from_poly_terms(
            Chart::XY,
            vec![((1, 1), p("x^2")), ((0, 1), p("2x"))],
        );
        assert_eq!(got, want);
    }

    #[test]
    fn sl2_commutator() {
        // [J1, J3] = [dx, x dx] = dx, by the hand Leibniz expansion:
        // dx o x dx = x dx^2 + dx, and x dx o dx = x dx^2.
        let j1 = dx();
        let j3 = DiffOp::from_poly_terms(Chart::XY, vec![((1, 0), p("x"))]);
        let lhs = j1.compose(&j3).unwrap();
        let want_lhs = DiffOp::from_poly_terms(
            Chart::XY,
            vec![((2, 0), p("x")), ((1, 0), p("1"))],
        );
        assert_eq!(lhs, want_lhs);
        let rhs = j3.compose(&j1).unwrap();
        let want_rhs = DiffOp::from_poly_terms(Chart::XY, vec![((2, 0), p("x"))]);
        assert_eq!(rhs, want_rhs);
        assert_eq!(j1.commutator(&j3).unwrap(), dx());
    }

    #[test]
    fn partials_commute() {
        assert!(dx().commutator(&dy()).unwrap().is_zero());
    }

    #[test]
    fn weight_grading() {
        // [x dx, dx] = -dx
        let j3 = DiffOp::from_poly_terms(Chart::XY, vec![((1, 0), p("x"))]);
        let c = j3.commutator(&dx()).unwrap();
        assert_eq!(c, dx().scale(&int(-1)));
    }

    #[test]
    fn chart_mismatch() {
        let du = DiffOp::from_poly_terms(Chart::UV, vec![((1, 0), MPoly::one())]);
        assert_eq!(dx().compose(&du), Err(WeylError::ChartMismatch));
    }

    #[test]
    fn conjugation_log_derivative() {
        // y^{-s} o dy o y^{s} = dy + s/y (with base y and symbolic s = nu)
        let s = MPoly::var(Var::Nu);
        let got = dy().conjugate_by_power(DenBase::Y, &s);
        let want = DiffOp::from_terms(
            Chart::XY,
            vec![
                ((0, 1), RatFn::from_poly(MPoly::one())),
                ((0, 0), RatFn::with_den(p("nu"), &[(DenBase::Y, 1)])),
            ],
        );
        assert_eq!(got, want);
    }

    #[test]
    fn conjugation_by_d_first_order() {
        // D^{-nu/2} o dx o D^{nu/2} = dx + (nu/2)(dx D)/D
        let s = p("nu").scale(&frac(1, 2));
        let got = dx().conjugate_by_power(DenBase::DXy, &s);
        let dd = DenBase::DXy.poly().diff(Var::X);
        let want = DiffOp::from_terms(
            Chart::XY,
            vec![
                ((1, 0), RatFn::from_poly(MPoly::one())),
                ((0, 0), RatFn::with_den(dd.mul(&s), &[(DenBase::DXy, 1)])),
            ],
        );
        assert_eq!(got, want);
    }

    #[test]
    fn conjugation_zero_exponent() {
        let a = DiffOp::from_poly_terms(
            Chart::XY,
            vec![((2, 0), p("x + y")), ((0, 1), p("tau*y^2"))],
        );
        assert_eq!(a.conjugate_by_power(DenBase::DXy, &MPoly::zero()), a);
    }

    #[test]
    fn conjugation_round_trip() {
        let a = DiffOp::from_poly_terms(
            Chart::XY,
            vec![((1, 1), p("x^2")), ((1, 0), p("y")), ((0, 0), p("x*y"))],
        );
        let s = p("nu + 2lambda");
        let back = a
            .conjugate_by_power(DenBase::Y, &s)
            .conjugate_by_power(DenBase::Y, &s.neg());
        assert_eq!(back, a);
    }

    #[test]
    fn restrict_chain_rule() {
        // y dy -> 2v dv
        let ydy = DiffOp::from_poly_terms(Chart::XY, vec![((0, 1), p("y"))]);
        let got = ydy.restrict_to_even().unwrap();
        let want = DiffOp::from_poly_terms(Chart::UV, vec![((0, 1), p("2v"))]);
        assert_eq!(got, want);
    }

    #[test]
    fn restrict_second_order() {
        // dy^2 -> 2 dv + 4 v dv^2
        let dy2 = DiffOp::from_poly_terms(Chart::XY, vec![((0, 2), MPoly::one())]);
        let got = dy2.restrict_to_even().unwrap();
        let want = DiffOp::from_poly_terms(
            Chart::UV,
            vec![((0, 1), p("2")), ((0, 2), p("4v"))],
        );
        assert_eq!(got, want);
    }

    #[test]
    fn restrict_parity_violation() {
        // coefficient x of dy has even y-degree where odd is required
        let bad = DiffOp::from_poly_terms(Chart::XY, vec![((0, 1), p("x"))]);
        assert_eq!(bad.restrict_to_even(), Err(WeylError::ParityViolation(0, 1)));
        assert_eq!(bad.y_parity(), Some(1)); // it is a valid odd operator though
    }

    fn arb_op() -> impl Strategy<Value = DiffOp> {
        proptest::collection::vec(
            ((0u32..2, 0u32..2), (0u16..3, 0u16..2), -3i64..4),
            1..4,
        )
        .prop_map(|ts| {
            let mut op = DiffOp::zero(Chart::XY);
            for ((a, b), (ex, ey), c) in ts {
                let mut e = [0u16; crate::poly::NVARS];
                e[0] = ex;
                e[1] = ey;
                op.add_term(
                    (a, b),
                    RatFn::from_poly(MPoly::monomial(crate::poly::Mono(e), int(c))),
                );
            }
            op
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn compose_associative((a, b, c) in (arb_op(), arb_op(), arb_op())) {
            let lhs = a.compose(&b).unwrap().compose(&c).unwrap();
            let rhs = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn jacobi_identity((a, b, c) in (arb_op(), arb_op(), arb_op())) {
            let t1 = a.commutator(&b.commutator(&c).unwrap()).unwrap();
            let t2 = b.commutator(&c.commutator(&a).unwrap()).unwrap();
            let t3 = c.commutator(&a.commutator(&b).unwrap()).unwrap();
            prop_assert!(t1.add(&t2).unwrap().add(&t3).unwrap().is_zero());
        }

        #[test]
        fn commutator_order_drop((a, b) in (arb_op(), arb_op())) {
            // order([A,B]) <= order(A) + order(B) - 1; two multiplication
            // operators commute outright, so the nonzero case has order >= 1
            let c = a.commutator(&b).unwrap();
            if !c.is_zero() {
                prop_assert!(a.order() + b.order() >= 1);
                prop_assert!(c.order() <= a.order() + b.order() - 1);
            }
        }
    }
}
