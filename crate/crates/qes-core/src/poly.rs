//! Sparse multivariate polynomials over `BigRat` in the fixed variable
//! universe `{x, y, u, v, tau, mu, nu, lambda}`.
//!
//! Terms are kept in a canonical graded-lex order (total degree first, ties
//! broken by the listed variable order) and zero coefficients are never
//! stored, so structural equality is mathematical equality.

use crate::rat::{self, BigRat};
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const NVARS: usize = 8;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    U,
    V,
    Tau,
    Mu,
    Nu,
    Lambda,
}

pub const VARS: [Var; NVARS] = [
    Var::X,
    Var::Y,
    Var::U,
    Var::V,
    Var::Tau,
    Var::Mu,
    Var::Nu,
    Var::Lambda,
];

impl Var {
    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::U => 2,
            Var::V => 3,
            Var::Tau => 4,
            Var::Mu => 5,
            Var::Nu => 6,
            Var::Lambda => 7,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::U => "u",
            Var::V => "v",
            Var::Tau => "tau",
            Var::Mu => "mu",
            Var::Nu => "nu",
            Var::Lambda => "lambda",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        VARS.iter().copied().find(|v| v.name() == s)
    }
}

/// Exponent vector in the fixed variable order.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Mono(pub [u16; NVARS]);

impl Mono {
    pub fn one() -> Mono {
        Mono([0; NVARS])
    }

    pub fn var(v: Var) -> Mono {
        let mut e = [0; NVARS];
        e[v.index()] = 1;
        Mono(e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i] + other.0[i];
        }
        Mono(e)
    }

    /// Componentwise quotient, if `other` divides `self`.
    pub fn try_div(&self, other: &Mono) -> Option<Mono> {
        let mut e = [0; NVARS];
        for i in 0..NVARS {
            e[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Mono(e))
    }
}

// Graded lexicographic: total degree first, then lex in the listed order.
impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Mono, BigRat>,
}

/// Substitution target: a polynomial or a rational constant.
#[derive(Clone, Debug)]
pub enum Binding {
    Poly(MPoly),
    Rat(BigRat),
}

impl From<MPoly> for Binding {
    fn from(p: MPoly) -> Self {
        Binding::Poly(p)
    }
}

impl From<BigRat> for Binding {
    fn from(r: BigRat) -> Self {
        Binding::Rat(r)
    }
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly::default()
    }

    pub fn one() -> MPoly {
        MPoly::constant(rat::int(1))
    }

    pub fn constant(c: BigRat) -> MPoly {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(Mono::one(), c);
        }
        MPoly { terms: t }
    }

    pub fn int(n: i64) -> MPoly {
        MPoly::constant(rat::int(n))
    }

    pub fn var(v: Var) -> MPoly {
        MPoly::monomial(Mono::var(v), rat::int(1))
    }

    pub fn monomial(m: Mono, c: BigRat) -> MPoly {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(m, c);
        }
        MPoly { terms: t }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.keys().all(|m| *m == Mono::one())
    }

    /// The constant term.
    pub fn constant_term(&self) -> BigRat {
        self.terms.get(&Mono::one()).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn as_constant(&self) -> Option<BigRat> {
        if self.is_constant() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> BigRat {
        self.terms.get(m).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    /// Total degree counting only the given variables.
    pub fn degree_in_vars(&self, vars: &[Var]) -> u32 {
        self.terms
            .keys()
            .map(|m| vars.iter().map(|&v| m.exp(v) as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Mono, &BigRat)> {
        self.terms.iter().next_back()
    }

    fn insert_add(&mut self, m: Mono, c: BigRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_add(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut out = MPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Exact partial derivative.
    pub fn diff(&self, v: Var) -> MPoly {
        let i = v.index();
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut em = *m;
            em.0[i] = e - 1;
            out.insert_add(em, c * rat::int(e as i64));
        }
        out
    }

    /// Exact substitution of the given bindings; unbound variables stay.
    pub fn subst(&self, bindings: &[(Var, Binding)]) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(c.clone());
            let mut rest = *m;
            for (v, b) in bindings {
                let e = rest.0[v.index()];
                if e == 0 {
                    continue;
                }
                rest.0[v.index()] = 0;
                match b {
                    Binding::Rat(r) => {
                        let mut p = BigRat::one();
                        for _ in 0..e {
                            p *= r;
                        }
                        term = term.scale(&p);
                    }
                    Binding::Poly(q) => {
                        term = term.mul(&q.pow(e as u32));
                    }
                }
            }
            out = out.add(&term.mul(&MPoly::monomial(rest, rat::int(1))));
        }
        out
    }

    pub fn subst_one(&self, v: Var, b: impl Into<Binding>) -> MPoly {
        self.subst(&[(v, b.into())])
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn divide_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let (dm, dc) = divisor.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while !rem.is_zero() {
            let (rm, rc) = rem.leading().unwrap();
            let qm = rm.try_div(dm)?;
            let qc = rc / dc;
            let qt = MPoly::monomial(qm, qc);
            rem = rem.sub(&qt.mul(divisor));
            quot = quot.add(&qt);
        }
        Some(quot)
    }

    pub fn eval_f64(&self, vals: &[f64; NVARS]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rat::to_f64(c);
            for i in 0..NVARS {
                for _ in 0..m.0[i] {
                    t *= vals[i];
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_complex(&self, vals: &[Complex64; NVARS]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(rat::to_f64(c), 0.0);
            for i in 0..NVARS {
                for _ in 0..m.0[i] {
                    t *= vals[i];
                }
            }
            acc += t;
        }
        acc
    }

    /// Largest absolute value of a coefficient, as f64.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| rat::to_f64(c).abs())
            .fold(0.0, f64::max)
    }

    /// Group terms by their (x, y, u, v) part; values are polynomials in the
    /// remaining parameters. Used to read off coefficient blocks.
    pub fn collect_by_point_vars(&self) -> BTreeMap<Mono, MPoly> {
        let mut out: BTreeMap<Mono, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut point = [0u16; NVARS];
            let mut param = [0u16; NVARS];
            for i in 0..4 {
                point[i] = m.0[i];
            }
            for i in 4..NVARS {
                param[i] = m.0[i];
            }
            out.entry(Mono(point))
                .or_insert_with(MPoly::zero)
                .insert_add(Mono(param), c.clone());
        }
        out
    }

    /// Canonical string form; see `parse` for the grammar.
    pub fn to_canonical_string(&self) -> String {
        format!("{}", self)
    }

    /// Parse an expression made of integers, rationals `p/q`, the variable
    /// names, `+ - * ^` and parentheses. Unary minus is allowed.
    pub fn parse(src: &str) -> Result<MPoly, String> {
        Parser::new(src).parse_all()
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        // descending graded-lex: leading term first
        for (m, c) in self.terms.iter().rev() {
            let neg = c < &BigRat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || m.total_degree() == 0 {
                parts.push(rat::rat_to_string(&mag));
            }
            for v in VARS {
                let e = m.exp(v);
                if e == 1 {
                    parts.push(v.name().to_string());
                } else if e > 1 {
                    parts.push(format!("{}^{}", v.name(), e));
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        MPoly::add(self, rhs)
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        MPoly::sub(self, rhs)
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        MPoly::mul(self, rhs)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly::neg(self)
    }
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.chars().peekable(),
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(c) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn parse_all(&mut self) -> Result<MPoly, String> {
        let p = self.expr()?;
        self.skip_ws();
        match self.chars.peek() {
            None => Ok(p),
            Some(c) => Err(format!("unexpected character '{}'", c)),
        }
    }

    fn expr(&mut self) -> Result<MPoly, String> {
        self.skip_ws();
        let mut neg = false;
        while let Some(&c) = self.chars.peek() {
            if c == '-' {
                neg = !neg;
                self.chars.next();
                self.skip_ws();
            } else if c == '+' {
                self.chars.next();
                self.skip_ws();
            } else {
                break;
            }
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some('+') => {
                    self.chars.next();
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some('-') => {
                    self.chars.next();
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly, String> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            match self.chars.peek() {
                Some('*') => {
                    self.chars.next();
                    let fct = self.factor()?;
                    acc = acc.mul(&fct);
                }
                Some(&c) if c == '(' || c.is_ascii_lowercase() => {
                    // implicit multiplication: "3x", "2(x+y)", "x y"
                    let fct = self.factor()?;
                    acc = acc.mul(&fct);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly, String> {
        self.skip_ws();
        let mut neg = false;
        while matches!(self.chars.peek(), Some('-')) {
            neg = !neg;
            self.chars.next();
            self.skip_ws();
        }
        let mut base = self.atom()?;
        self.skip_ws();
        if matches!(self.chars.peek(), Some('^')) {
            self.chars.next();
            self.skip_ws();
            let e = self.integer()? as u32;
            base = base.pow(e);
        }
        Ok(if neg { base.neg() } else { base })
    }

    fn atom(&mut self) -> Result<MPoly, String> {
        self.skip_ws();
        match self.chars.peek() {
            Some('(') => {
                self.chars.next();
                let p = self.expr()?;
                self.skip_ws();
                if self.chars.next() != Some(')') {
                    return Err("expected ')'".into());
                }
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                self.skip_ws();
                if matches!(self.chars.peek(), Some('/')) {
                    self.chars.next();
                    let d = self.integer()?;
                    if d == 0 {
                        return Err("zero denominator".into());
                    }
                    Ok(MPoly::constant(rat::frac(n, d)))
                } else {
                    Ok(MPoly::int(n))
                }
            }
            Some(c) if c.is_ascii_lowercase() => {
                let mut name = String::new();
                while matches!(self.chars.peek(), Some(c) if c.is_ascii_lowercase()) {
                    name.push(self.chars.next().unwrap());
                }
                Var::from_name(&name)
                    .map(MPoly::var)
                    .ok_or_else(|| format!("unknown variable '{}'", name))
            }
            other => Err(format!("unexpected token {:?}", other)),
        }
    }

    fn integer(&mut self) -> Result<i64, String> {
        self.skip_ws();
        let mut s = String::new();
        while matches!(self.chars.peek(), Some(c) if c.is_ascii_digit()) {
            s.push(self.chars.next().unwrap());
        }
        s.parse().map_err(|_| "expected integer".to_string())
    }
}

/// Shorthand used throughout tests and the model catalog.
pub fn p(src: &str) -> MPoly {
    MPoly::parse(src).unwrap_or_else(|e| panic!("bad polynomial '{}': {}", src, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};
    use proptest::prelude::*;

    #[test]
    fn difference_of_squares() {
        let a = p("x + y");
        let b = p("x - y");
        assert_eq!(a.mul(&b), p("x^2 - y^2"));
    }

    #[test]
    fn additive_identity() {
        let a = p("4x^3 + 27y^2");
        assert_eq!(a.add(&MPoly::zero()), a);
    }

    #[test]
    fn power_rule_and_independence() {
        assert_eq!(p("4x^3 + 27y^2").diff(Var::X), p("12x^2"));
        assert_eq!(p("x^3").diff(Var::Y), MPoly::zero());
    }

    #[test]
    fn subst_linear_root() {
        // Eq.(16)-style factor (1 + 3 nu) vanishes at nu = -1/3
        let f = p("1 + 3nu");
        assert!(f.subst_one(Var::Nu, frac(-1, 3)).is_zero());
    }

    #[test]
    fn subst_renaming() {
        // v -> y^2 in u + 3 tau u^2, then u -> x
        let f = p("u + 3tau*u^2");
        let g = f.subst(&[(Var::U, MPoly::var(Var::X).into())]);
        assert_eq!(g, p("x + 3tau*x^2"));
        let h = p("v").subst_one(Var::V, p("y^2"));
        assert_eq!(h, p("y^2"));
    }

    #[test]
    fn graded_lex_order() {
        // ascending: 1 < y < x < y^2 < x*y < x^2
        let ms: Vec<Mono> = p("1 + x + y + x^2 + x*y + y^2")
            .terms()
            .map(|(m, _)| *m)
            .collect();
        let names: Vec<String> = ms
            .iter()
            .map(|m| MPoly::monomial(*m, int(1)).to_string())
            .collect();
        assert_eq!(names, ["1", "y", "x", "y^2", "x*y", "x^2"]);
    }

    #[test]
    fn display_canonical() {
        let f = p("y - x^2 + 1/3");
        assert_eq!(f.to_string(), "-x^2 + y + 1/3");
        assert_eq!(MPoly::zero().to_string(), "0");
    }

    #[test]
    fn parse_display_round_trip() {
        let f = p("3/4*x^2*y - 2*tau + nu^3*lambda - 1");
        let g = MPoly::parse(&f.to_string()).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn exact_division() {
        let d = p("x^2 - y");
        let q = p("x^3 + 2x*y + 7");
        let prod = d.mul(&q);
        assert_eq!(prod.divide_exact(&d), Some(q));
        assert_eq!(p("x + 1").divide_exact(&d), None);
    }

    #[test]
    fn eval() {
        let f = p("x^2 + 3y - 1/2");
        let mut vals = [0.0; NVARS];
        vals[Var::X.index()] = 2.0;
        vals[Var::Y.index()] = -1.0;
        assert_eq!(f.eval_f64(&vals), 0.5);
    }

    fn arb_poly() -> impl Strategy<Value = MPoly> {
        // small polynomials in x, y, tau with degree <= 4
        proptest::collection::vec(
            (0u16..3, 0u16..3, 0u16..2, -4i64..5),
            0..6,
        )
        .prop_map(|ts| {
            let mut acc = MPoly::zero();
            for (ex, ey, et, c) in ts {
                let mut e = [0u16; NVARS];
                e[0] = ex;
                e[1] = ey;
                e[4] = et;
                acc = acc.add(&MPoly::monomial(Mono(e), int(c)));
            }
            acc
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms((a, b, c) in (arb_poly(), arb_poly(), arb_poly())) {
            // associativity, commutativity, distributivity
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn subst_composes((a, q) in (arb_poly(), arb_poly())) {
            // subst(subst(p, x->q), tau->2) == subst(p, x->subst(q,tau->2), tau->2)
            let s1 = a.subst_one(Var::X, q.clone()).subst_one(Var::Tau, int(2));
            let q2 = q.subst_one(Var::Tau, int(2));
            let s2 = a.subst(&[(Var::X, q2.into()), (Var::Tau, int(2).into())]);
            prop_assert_eq!(s1, s2);
        }

        #[test]
        fn diff_leibniz((a, b) in (arb_poly(), arb_poly())) {
            let lhs = a.mul(&b).diff(Var::X);
            let rhs = a.diff(Var::X).mul(&b).add(&a.mul(&b.diff(Var::X)));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
