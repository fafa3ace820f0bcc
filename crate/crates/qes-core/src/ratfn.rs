//! Rational functions with declared denominator bases.
//!
//! Every denominator appearing in the models is a power of one of four fixed
//! polynomials: the A2 determinant `D(x,y)`, the same determinant written in
//! `(u, v)`, and the gauge bases `v` and `y`. Keeping denominators factored
//! over this set avoids multivariate gcd entirely: equality is decided by
//! cross-multiplication, and "is polynomial" by exact division.

use crate::poly::{p, MPoly, Var};
use crate::rat::BigRat;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

/// Eq. (10): `12 D(x,y)`.
pub const D12_XY_SRC: &str = "9mu^2*x^4*y^2 + 54tau*mu^2*x^2*y^4 + 27mu^2*(3tau^2 - 4mu)y^6 \
     - 12mu*x^5 - 72tau*mu*x^3*y^2 - 108mu*(tau^2 - 2mu)x*y^4 \
     - 12tau*x^4 - 18(4tau^2 + 5mu)x^2*y^2 - 54tau*(2tau^2 - 3mu)y^4 \
     - 4x^3 - 108tau*x*y^2 - 27y^2";

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum DenBase {
    /// `D(x,y)`, the contravariant-metric determinant in the XY chart.
    DXy,
    /// The same determinant written in `(u, v)` (so `y^2 = v`).
    DUv,
    /// The variable `v`.
    V,
    /// The variable `y`.
    Y,
}

pub const DEN_BASES: [DenBase; 4] = [DenBase::DXy, DenBase::DUv, DenBase::V, DenBase::Y];

impl DenBase {
    /// The base polynomial itself.
    pub fn poly(self) -> &'static MPoly {
        match self {
            DenBase::DXy => {
                static CELL: OnceLock<MPoly> = OnceLock::new();
                CELL.get_or_init(|| p(D12_XY_SRC).scale(&crate::rat::frac(1, 12)))
            }
            DenBase::DUv => {
                static CELL: OnceLock<MPoly> = OnceLock::new();
                CELL.get_or_init(|| {
                    DenBase::DXy
                        .poly()
                        .subst_one(Var::X, MPoly::var(Var::U))
                        .even_y_to_v()
                        .expect("D(x,y) is even in y")
                })
            }
            DenBase::V => {
                static CELL: OnceLock<MPoly> = OnceLock::new();
                CELL.get_or_init(|| MPoly::var(Var::V))
            }
            DenBase::Y => {
                static CELL: OnceLock<MPoly> = OnceLock::new();
                CELL.get_or_init(|| MPoly::var(Var::Y))
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DenBase::DXy => "D",
            DenBase::DUv => "Dt",
            DenBase::V => "v",
            DenBase::Y => "y",
        }
    }
}

impl MPoly {
    /// Rewrite a polynomial even in `y` through `y^2 -> v`; `None` when an
    /// odd power of `y` is present.
    pub fn even_y_to_v(&self) -> Option<MPoly> {
        let mut out = MPoly::zero();
        for (m, c) in self.terms() {
            let ey = m.exp(Var::Y);
            if ey % 2 != 0 {
                return None;
            }
            let mut e = *m;
            e.0[Var::Y.index()] = 0;
            e.0[Var::V.index()] += ey / 2;
            out = out.add(&MPoly::monomial(e, c.clone()));
        }
        Some(out)
    }
}

/// `numerator / prod(base^power)` over the declared bases.
#[derive(Clone, Debug)]
pub struct RatFn {
    pub num: MPoly,
    den: BTreeMap<DenBase, u32>,
}

impl RatFn {
    pub fn zero() -> RatFn {
        RatFn {
            num: MPoly::zero(),
            den: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: MPoly) -> RatFn {
        RatFn {
            num: p,
            den: BTreeMap::new(),
        }
    }

    pub fn with_den(num: MPoly, den: &[(DenBase, u32)]) -> RatFn {
        let mut r = RatFn {
            num,
            den: den.iter().copied().filter(|&(_, k)| k > 0).collect(),
        };
        r.normalize();
        r
    }

    pub fn den_power(&self, b: DenBase) -> u32 {
        self.den.get(&b).copied().unwrap_or(0)
    }

    pub fn den_powers(&self) -> impl Iterator<Item = (&DenBase, &u32)> {
        self.den.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        // cancel base powers that divide the numerator exactly
        for b in DEN_BASES {
            while self.den_power(b) > 0 {
                match self.num.divide_exact(b.poly()) {
                    Some(q) => {
                        self.num = q;
                        let k = self.den.get_mut(&b).unwrap();
                        *k -= 1;
                        if *k == 0 {
                            self.den.remove(&b);
                        }
                    }
                    None => break,
                }
            }
        }
    }

    /// Multiply numerator so both operands share the denominator `max` powers.
    fn raised_to(&self, target: &BTreeMap<DenBase, u32>) -> MPoly {
        let mut n = self.num.clone();
        for (&b, &k) in target {
            let have = self.den_power(b);
            debug_assert!(k >= have);
            for _ in 0..(k - have) {
                n = n.mul(b.poly());
            }
        }
        n
    }

    fn den_union(&self, other: &RatFn) -> BTreeMap<DenBase, u32> {
        let mut out = self.den.clone();
        for (&b, &k) in &other.den {
            let e = out.entry(b).or_insert(0);
            *e = (*e).max(k);
        }
        out
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        let target = self.den_union(other);
        let n = self.raised_to(&target).add(&other.raised_to(&target));
        let mut r = RatFn {
            num: n,
            den: target,
        };
        r.normalize();
        r
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        let mut den = self.den.clone();
        for (&b, &k) in &other.den {
            *den.entry(b).or_insert(0) += k;
        }
        let mut r = RatFn {
            num: self.num.mul(&other.num),
            den,
        };
        r.normalize();
        r
    }

    pub fn mul_poly(&self, p: &MPoly) -> RatFn {
        let mut r = RatFn {
            num: self.num.mul(p),
            den: self.den.clone(),
        };
        r.normalize();
        r
    }

    pub fn scale(&self, c: &BigRat) -> RatFn {
        use num_traits::Zero;
        RatFn {
            num: self.num.scale(c),
            den: if c.is_zero() {
                BTreeMap::new()
            } else {
                self.den.clone()
            },
        }
    }

    /// Divide by one more power of `base`.
    pub fn div_base(&self, base: DenBase) -> RatFn {
        let mut den = self.den.clone();
        *den.entry(base).or_insert(0) += 1;
        let mut r = RatFn {
            num: self.num.clone(),
            den,
        };
        r.normalize();
        r
    }

    /// Equality by cross-multiplication (never by gcd).
    pub fn eq_cross(&self, other: &RatFn) -> bool {
        let target = self.den_union(other);
        self.raised_to(&target) == other.raised_to(&target)
    }

    /// Exact polynomial form, when every denominator power cancels.
    pub fn to_poly(&self) -> Option<MPoly> {
        if self.den.is_empty() {
            Some(self.num.clone())
        } else {
            // normalize() already cancelled what it could
            let mut r = self.clone();
            r.normalize();
            if r.den.is_empty() {
                Some(r.num)
            } else {
                None
            }
        }
    }

    /// Partial derivative via the quotient rule; denominators stay factored.
    pub fn diff(&self, v: Var) -> RatFn {
        // d(N / prod B_i^{k_i}) = dN/prod - sum_i k_i N dB_i / (B_i prod)
        let mut out = RatFn {
            num: self.num.diff(v),
            den: self.den.clone(),
        };
        out.normalize();
        for (&b, &k) in &self.den {
            let db = b.poly().diff(v);
            if db.is_zero() {
                continue;
            }
            let mut den = self.den.clone();
            *den.get_mut(&b).unwrap() += 1;
            let mut term = RatFn {
                num: self
                    .num
                    .mul(&db)
                    .scale(&crate::rat::int(-(k as i64))),
                den,
            };
            term.normalize();
            out = out.add(&term);
        }
        out
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        self.eq_cross(other)
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            write!(f, "{}", self.num)
        } else {
            let den: Vec<String> = self
                .den
                .iter()
                .map(|(b, k)| {
                    if *k == 1 {
                        b.name().to_string()
                    } else {
                        format!("{}^{}", b.name(), k)
                    }
                })
                .collect();
            write!(f, "({}) / ({})", self.num, den.join("*"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::p;
    use crate::rat::{frac, int};
    use proptest::prelude::*;

    #[test]
    fn d12_rational_limit() {
        // 12 D at tau = mu = 0 -> -4x^3 - 27y^2
        let d12 = p(D12_XY_SRC);
        let lim = d12.subst(&[(Var::Tau, int(0).into()), (Var::Mu, int(0).into())]);
        assert_eq!(lim, p("-4x^3 - 27y^2"));
    }

    #[test]
    fn duv_matches_xy() {
        // substituting v = y^2, u = x back recovers D(x,y)
        let duv = DenBase::DUv.poly();
        let back = duv.subst(&[
            (Var::U, MPoly::var(Var::X).into()),
            (Var::V, p("y^2").into()),
        ]);
        assert_eq!(&back, DenBase::DXy.poly());
    }

    #[test]
    fn cancellation() {
        let d = DenBase::DXy.poly().clone();
        let r = RatFn::with_den(d.mul(&p("x + 1")), &[(DenBase::DXy, 1)]);
        assert_eq!(r.to_poly(), Some(p("x + 1")));
    }

    #[test]
    fn quotient_rule() {
        // d/dy (1/y) = -1/y^2
        let r = RatFn::with_den(MPoly::one(), &[(DenBase::Y, 1)]);
        let dr = r.diff(Var::Y);
        let expect = RatFn::with_den(p("-1"), &[(DenBase::Y, 2)]);
        assert!(dr.eq_cross(&expect));
    }

    proptest! {
        #[test]
        fn cross_mult_equality(a in -5i64..6, b in 1i64..4, c in -5i64..6, d in 1i64..4) {
            // a x / y^b == c x / y^d iff a x y^d == c x y^b
            let lhs = RatFn::with_den(p("x").scale(&int(a)), &[(DenBase::Y, b as u32)]);
            let rhs = RatFn::with_den(p("x").scale(&int(c)), &[(DenBase::Y, d as u32)]);
            let expect = p("x").scale(&int(a)).mul(&p("y").pow(d as u32))
                == p("x").scale(&int(c)).mul(&p("y").pow(b as u32));
            prop_assert_eq!(lhs.eq_cross(&rhs), expect);
        }

        #[test]
        fn add_then_subtract(an in -4i64..5, k in 0u32..3) {
            let a = RatFn::with_den(p("x + tau").scale(&int(an)), &[(DenBase::DXy, k)]);
            let b = RatFn::with_den(p("y^2 - 1"), &[(DenBase::Y, 1)]);
            let s = a.add(&b).sub(&b);
            prop_assert!(s.eq_cross(&a));
        }
    }

    #[test]
    fn scale_zero() {
        let a = RatFn::with_den(p("x"), &[(DenBase::DXy, 2)]);
        assert!(a.scale(&frac(0, 1)).is_zero());
    }
}
