//! Constructors for every model operator and scalar, plus the exact
//! identity-verification suite tying them together.
//!
//! The canonical source of truth for each operator is its fully written
//! differential form; generator-algebra forms are verified against it and
//! any differences are reported as discrepancy lists.

use crate::poly::{p, MPoly, Var};
use crate::rat::{frac, int};
use crate::ratfn::{DenBase, RatFn};
use crate::report::{IdentityStatus, TermEntry, VerificationReport};
use crate::weyl::{Chart, DiffOp};

/// Everything `build` can produce.
#[derive(Clone, Debug)]
pub enum Built {
    Op(DiffOp),
    Poly(MPoly),
    Rat(RatFn),
}

impl Built {
    pub fn op(self) -> DiffOp {
        match self {
            Built::Op(op) => op,
            other => panic!("expected an operator, got {:?}", other),
        }
    }

    pub fn poly(self) -> MPoly {
        match self {
            Built::Poly(p) => p,
            other => panic!("expected a polynomial, got {:?}", other),
        }
    }

    pub fn ratfn(self) -> RatFn {
        match self {
            Built::Rat(r) => r,
            other => panic!("expected a rational function, got {:?}", other),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum G2Sym {
    J0t,
    J1,
    J2,
    J3,
    J4,
    R0,
    R1,
    R2,
    T0,
    T1,
    T2,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModelId {
    /// Rational potential V(x,y), Eq.-(9)-style N^2/D form.
    VA2,
    /// The metric determinant D(x,y).
    DetD,
    /// Laplace-Beltrami operator in the XY chart.
    LaplaceBeltrami,
    /// Gauge-rotated algebraic operator h(x,y).
    HAlgXy,
    /// Its even restriction h(u,v).
    HAlgUv,
    /// sl(3) generator J_i, i in 1..=8, with nu symbolic.
    Sl3Gen(u8),
    /// h rebuilt from its sl(3) generator words.
    HFromSl3,
    /// Third-order integral k(x,y) (zero-order sign corrected; see notes).
    KA2Xy,
    /// k rebuilt from its printed sl(3) generator words.
    KFromSl3,
    /// g^(2) generator with n = -3 nu bound symbolically.
    G2Gen(G2Sym),
    /// The G2 addition term h_m(u,v).
    HmUv,
    /// h_G2(u,v) = h(u,v) + lambda h_m(u,v).
    HG2Uv,
    /// Particular integral in the XY chart for the given n.
    IparXy(u32),
    /// Particular integral in the UV chart for the given n.
    IparUv(u32),
    /// Reference energy E0 = 3 nu (3 nu + 1) tau.
    E0Scalar,
    /// Numerator of the G2 Schroedinger-form potential.
    G2PotentialNumerator,
}

// --- Eq. (11): Laplace-Beltrami coefficients ---
const LB_XX: &str = "x + 3tau*x^2 + 3mu*x^3 + 3(mu - tau^2)y^2 - 3mu*tau*x*y^2 - 3mu^2*x^2*y^2";
const LB_XY: &str = "y(3 + 8tau*x + 7mu*x^2 - 3mu*tau*y^2 - 6mu^2*x*y^2)";
const LB_YY: &str = "-1/3*x^2 + 3tau*y^2 + 4mu*x*y^2 - 3mu^2*y^4";
const LB_X: &str = "1 + 4tau*x + 5mu*x^2 - 3mu*tau*y^2 - 6mu^2*x*y^2";
const LB_Y: &str = "2y(2tau + 3mu*x - 3mu^2*y^2)";

// --- Eq. (9): potential numerator ---
const V_NUM: &str = "x + 2tau*x^2 + mu*x^3 - 6(mu - tau^2)y^2 + 3mu*tau*x*y^2";

// --- Eq. (16): h(x,y) ---
const H16_X: &str = "(1 + 3nu)(1 + 4tau*x + 5mu*x^2 - 3mu*tau*y^2 - 6mu^2*x*y^2)";
const H16_Y: &str = "2(1 + 3nu)y(2tau + 3mu*x - 3mu^2*y^2)";
const H16_0: &str = "3nu(1 + 3nu)mu(2x - 3mu*y^2)";

// --- Eq. (17): h(u,v) ---
const H17_UU: &str = "u + 3tau*u^2 + 3mu*u^3 + 3(mu - tau^2)v - 3mu*tau*u*v - 3mu^2*u^2*v";
const H17_UV: &str = "2v(3 + 8tau*u + 7mu*u^2 - 3mu*tau*v - 6mu^2*u*v)";
const H17_VV: &str = "4v(-1/3*u^2 + 3tau*v + 4mu*u*v - 3mu^2*v^2)";
const H17_U: &str = "(1 + 3nu)(1 + 4tau*u + 5mu*u^2 - 3mu*tau*v - 6mu^2*u*v)";
const H17_V: &str = "2(-1/3*u^2 + tau(7 + 12nu)v + 2mu(5 + 9nu)u*v - 9mu^2*(1 + 2nu)v^2)";
const H17_0: &str = "3nu(1 + 3nu)mu(2u - 3mu*v)";

// --- Eq. (24): k(x,y); the zero-order sign is corrected relative to the
// printed form (the printed "-2nu..." fails [h,k]=0 by a first-order
// residual; the flipped sign is the unique graded correction).
const K24_0: &str = "2nu(1 + 3nu)(2 + 3nu)mu*y(2tau + 3mu*x - 3mu^2*y^2)";
const K24_0_PRINTED: &str = "-2nu(1 + 3nu)(2 + 3nu)mu*y(2tau + 3mu*x - 3mu^2*y^2)";
const K24_X: &str = "1/3*(1 + 3nu)(2 + 3nu)y(mu + 8tau^2 + 28mu*tau*x + 21mu^2*x^2 \
                     - 9mu^2*tau*y^2 - 18mu^3*x*y^2)";
const K24_Y: &str = "-2/9*(1 + 3nu)(2 + 3nu)(1 + 4tau*x + 6mu*x^2 - 24mu*tau*y^2 \
                     - 36mu^2*x*y^2 + 27mu^3*y^4)";
const K24_XX: &str = "(2 + 3nu)y(3tau + 4(2tau^2 + mu)x + 17mu*tau*x^2 + 8mu^2*x^3 \
                      + 3mu(tau^2 - 2mu)y^2 - 6mu^2*tau*x*y^2 - 6mu^3*x^2*y^2)";
const K24_XY: &str = "-2/3*(2 + 3nu)(x + 4tau*x^2 + 5mu*x^3 + 3(mu - 4tau^2)y^2 \
                      - 27mu^2*x^2*y^2 - 33mu*tau*x*y^2 + 9mu^2*tau*y^4 + 18mu^3*x*y^4)";
const K24_YY: &str = "-(2 + 3nu)y(1 + 8/3*tau*x + 3mu*x^2 - 7mu*tau*y^2 - 10mu^2*x*y^2 \
                      + 6mu^3*y^4)";
const K24_XXX: &str = "y(1 + 5tau*x + 2(2mu + 3tau^2)x^2 + 3mu(tau^2 - 2mu)x*y^2 + 9mu*tau*x^3 \
                       - tau(3mu - 2tau^2)y^2 + 3mu^2*x^4 - 3mu^2*tau*x^2*y^2 - 2mu^3*x^3*y^2)";
const K24_XXY: &str = "-2/3*x^2 + 2(5tau^2 + mu)x*y^2 - 2tau*x^3 + 3tau*y^2 - 2mu*x^4 \
                       + 3mu(tau^2 - 2mu)y^4 + 19mu*tau*x^2*y^2 - 6mu^3*x^2*y^4 \
                       + 10mu^2*x^3*y^2 - 6mu^2*tau*x*y^4";
const K24_XYY: &str = "-y(x + 10/3*tau*x^2 + 11/3*mu*x^3 - 13mu*tau*x*y^2 + 3(mu - 2tau^2)y^2 \
                       - 11mu^2*x^2*y^2 + 3mu^2*tau*y^4 + 6mu^3*x*y^4)";
const K24_YYY: &str = "-(y^2 + 2/27*x^3 + 2tau*x*y^2 - 3mu*tau*y^4 + 5/3*mu*x^2*y^2 \
                       - 4mu^2*x*y^4 + 2mu^3*y^6)";

// --- Eq. (31): h_m(u,v), the differential form (line 1) ---
const HM_U: &str = "6(1 + 2tau*u + mu*u^2)";
const HM_V: &str = "4(-u^2 + 3tau*v + 3mu*u*v)";
const HM_0: &str = "18nu*mu*u";

// --- G2 Schroedinger-form potential numerator ---
const NG2: &str = "u + 2tau*u^2 + mu*u^3 - 6mu*v + 6tau^2*v + 3mu*tau*u*v";

// --- trigonometric discriminant polynomial (the positive-sign print) ---
pub const D_TRIG_SRC: &str =
    "12tau*x^4 + 4x^3 + 72tau^2*x^2*y^2 + 108tau*x*y^2 + 27y^2 + 108tau^3*y^4";

pub const E0_SRC: &str = "3nu(3nu + 1)tau";

pub fn build(model: ModelId) -> Built {
    match model {
        ModelId::VA2 => {
            let n = p(V_NUM);
            let num = n.mul(&n).mul(&p("nu(nu - 1)")).scale(&frac(3, 4));
            Built::Rat(RatFn::with_den(num, &[(DenBase::DXy, 1)]))
        }
        ModelId::DetD => Built::Poly(DenBase::DXy.poly().clone()),
        ModelId::LaplaceBeltrami => Built::Op(DiffOp::from_poly_terms(
            Chart::XY,
            vec![
                ((2, 0), p(LB_XX)),
                ((1, 1), p(LB_XY)),
                ((0, 2), p(LB_YY)),
                ((1, 0), p(LB_X)),
                ((0, 1), p(LB_Y)),
            ],
        )),
        ModelId::HAlgXy => Built::Op(DiffOp::from_poly_terms(
            Chart::XY,
            vec![
                ((2, 0), p(LB_XX)),
                ((1, 1), p(LB_XY)),
                ((0, 2), p(LB_YY)),
                ((1, 0), p(H16_X)),
                ((0, 1), p(H16_Y)),
                ((0, 0), p(H16_0)),
            ],
        )),
        ModelId::HAlgUv => Built::Op(DiffOp::from_poly_terms(
            Chart::UV,
            vec![
                ((2, 0), p(H17_UU)),
                ((1, 1), p(H17_UV)),
                ((0, 2), p(H17_VV)),
                ((1, 0), p(H17_U)),
                ((0, 1), p(H17_V)),
                ((0, 0), p(H17_0)),
            ],
        )),
        ModelId::Sl3Gen(i) => Built::Op(sl3_generator(i)),
        ModelId::HFromSl3 => Built::Op(expand_generator_form(&h_sl3_words(), Chart::XY)),
        ModelId::KA2Xy => Built::Op(DiffOp::from_poly_terms(
            Chart::XY,
            vec![
                ((0, 0), p(K24_0)),
                ((1, 0), p(K24_X)),
                ((0, 1), p(K24_Y)),
                ((2, 0), p(K24_XX)),
                ((1, 1), p(K24_XY)),
                ((0, 2), p(K24_YY)),
                ((3, 0), p(K24_XXX)),
                ((2, 1), p(K24_XXY)),
                ((1, 2), p(K24_XYY)),
                ((0, 3), p(K24_YYY)),
            ],
        )),
        ModelId::KFromSl3 => Built::Op(expand_generator_form(&k_sl3_words(), Chart::XY)),
        ModelId::G2Gen(sym) => Built::Op(g2_generator(sym, &p("-3nu"))),
        ModelId::HmUv => Built::Op(DiffOp::from_poly_terms(
            Chart::UV,
            vec![((1, 0), p(HM_U)), ((0, 1), p(HM_V)), ((0, 0), p(HM_0))],
        )),
        ModelId::HG2Uv => {
            let h = build(ModelId::HAlgUv).op();
            let hm = build(ModelId::HmUv).op().scale_poly(&MPoly::var(Var::Lambda));
            Built::Op(h.add(&hm).unwrap())
        }
        ModelId::IparXy(n) => Built::Op(ipar(Chart::XY, n)),
        ModelId::IparUv(n) => Built::Op(ipar(Chart::UV, n)),
        ModelId::E0Scalar => Built::Poly(p(E0_SRC)),
        ModelId::G2PotentialNumerator => Built::Poly(p(NG2)),
    }
}

/// Eq. (18): the sl(3) generators in first-order differential operators,
/// with nu symbolic.
pub fn sl3_generator(i: u8) -> DiffOp {
    let one = MPoly::one();
    match i {
        1 => DiffOp::from_poly_terms(Chart::XY, vec![((1, 0), one)]),
        2 => DiffOp::from_poly_terms(Chart::XY, vec![((0, 1), one)]),
        3 => DiffOp::from_poly_terms(Chart::XY, vec![((1, 0), p("x"))]),
        4 => DiffOp::from_poly_terms(Chart::XY, vec![((1, 0), p("y"))]),
        5 => DiffOp::from_poly_terms(Chart::XY, vec![((0, 1), p("x"))]),
        6 => DiffOp::from_poly_terms(Chart::XY, vec![((0, 1), p("y"))]),
        7 => DiffOp::from_poly_terms(
            Chart::XY,
            vec![((1, 0), p("x^2")), ((0, 1), p("x*y")), ((0, 0), p("3nu*x"))],
        ),
        8 => DiffOp::from_poly_terms(
            Chart::XY,
            vec![((1, 0), p("x*y")), ((0, 1), p("y^2")), ((0, 0), p("3nu*y"))],
        ),
        _ => panic!("sl(3) generators are J1..J8, got J{}", i),
    }
}

/// The g^(2) generators in the UV chart; `n` is the representation parameter
/// (an arbitrary polynomial, usually `-3 nu` or an integer).
pub fn g2_generator(sym: G2Sym, n: &MPoly) -> DiffOp {
    let j0t = DiffOp::from_poly_terms(
        Chart::UV,
        vec![((1, 0), p("u")), ((0, 1), p("2v")), ((0, 0), n.neg())],
    );
    match sym {
        G2Sym::J0t => j0t,
        G2Sym::J1 => DiffOp::from_poly_terms(Chart::UV, vec![((1, 0), MPoly::one())]),
        G2Sym::J2 => DiffOp::from_poly_terms(
            Chart::UV,
            vec![((1, 0), p("u")), ((0, 0), n.scale(&frac(-1, 3)))],
        ),
        G2Sym::J3 => DiffOp::from_poly_terms(
            Chart::UV,
            vec![((0, 1), p("2v")), ((0, 0), n.scale(&frac(-1, 3)))],
        ),
        G2Sym::J4 => DiffOp::from_poly_terms(
            Chart::UV,
            vec![
                ((1, 0), p("u^2")),
                ((0, 1), p("2u*v")),
                ((0, 0), n.mul(&p("u")).neg()),
            ],
        ),
        G2Sym::R0 => DiffOp::from_poly_terms(Chart::UV, vec![((0, 1), MPoly::one())]),
        G2Sym::R1 => DiffOp::from_poly_terms(Chart::UV, vec![((0, 1), p("u"))]),
        G2Sym::R2 => DiffOp::from_poly_terms(Chart::UV, vec![((0, 1), p("u^2"))]),
        G2Sym::T0 => DiffOp::from_poly_terms(Chart::UV, vec![((2, 0), p("v"))]),
        G2Sym::T1 => DiffOp::from_poly_terms(Chart::UV, vec![((1, 0), p("v"))])
            .compose(&j0t)
            .unwrap(),
        G2Sym::T2 => {
            let shifted = j0t
                .add(&DiffOp::from_poly_terms(
                    Chart::UV,
                    vec![((0, 0), MPoly::one())],
                ))
                .unwrap();
            DiffOp::from_poly_terms(Chart::UV, vec![((0, 0), p("v"))])
                .compose(&j0t)
                .unwrap()
                .compose(&shifted)
                .unwrap()
        }
    }
}

/// Euler-Cartan generator `J0(n)` of the chart's hidden algebra:
/// `x dx + y dy - n` in XY, `u du + 2 v dv - n` in UV.
pub fn euler_cartan(chart: Chart, n: u32) -> DiffOp {
    match chart {
        Chart::XY => DiffOp::from_poly_terms(
            Chart::XY,
            vec![
                ((1, 0), p("x")),
                ((0, 1), p("y")),
                ((0, 0), MPoly::int(-(n as i64))),
            ],
        ),
        Chart::UV => DiffOp::from_poly_terms(
            Chart::UV,
            vec![
                ((1, 0), p("u")),
                ((0, 1), p("2v")),
                ((0, 0), MPoly::int(-(n as i64))),
            ],
        ),
    }
}

/// Particular integral: the product of the shifted Euler-Cartan factors
/// `prod_{j=0}^{n} (J0(n) + j)`.
pub fn ipar(chart: Chart, n: u32) -> DiffOp {
    let j0 = euler_cartan(chart, n);
    let mut out = DiffOp::identity(chart);
    for j in 0..=n {
        let factor = j0
            .add(&DiffOp::from_poly_terms(
                chart,
                vec![((0, 0), MPoly::int(j as i64))],
            ))
            .unwrap();
        out = out.compose(&factor).unwrap();
    }
    out
}

/// A word in the generator algebra: prefactor times an ordered product.
#[derive(Clone, Debug)]
pub struct GeneratorWord {
    pub prefactor: MPoly,
    pub letters: Vec<DiffOp>,
}

impl GeneratorWord {
    pub fn sl3(prefactor: &str, letters: &[u8]) -> GeneratorWord {
        GeneratorWord {
            prefactor: p(prefactor),
            letters: letters.iter().map(|&i| sl3_generator(i)).collect(),
        }
    }

    pub fn g2(prefactor: &str, letters: &[G2Sym], n: &MPoly) -> GeneratorWord {
        GeneratorWord {
            prefactor: p(prefactor),
            letters: letters.iter().map(|&s| g2_generator(s, n)).collect(),
        }
    }
}

/// Noncommutative expansion of a generator-word list.
pub fn expand_generator_form(words: &[GeneratorWord], chart: Chart) -> DiffOp {
    let mut total = DiffOp::zero(chart);
    for w in words {
        let mut term = DiffOp::identity(chart);
        for letter in &w.letters {
            term = term.compose(letter).expect("chart mismatch in word");
        }
        total = total.add(&term.scale_poly(&w.prefactor)).unwrap();
    }
    total
}

/// Eq. (20): h in sl(3) generator words.
pub fn h_sl3_words() -> Vec<GeneratorWord> {
    let w = GeneratorWord::sl3;
    vec![
        w("1 + 3nu", &[1, 3]),
        w("-3nu", &[3, 1]),
        w("3", &[1, 6]),
        w("3tau", &[3, 3]),
        w("6tau(1 - 4nu)", &[3, 6]),
        w("3(mu - tau^2)", &[4, 4]),
        w("tau(1 + 12nu)", &[4, 5]),
        w("tau(1 + 12nu)", &[5, 4]),
        w("2(1 + 3nu)mu", &[3, 7]),
        w("-3mu*tau", &[4, 8]),
        w("-1/3", &[5, 5]),
        w("3tau", &[6, 6]),
        w("4mu", &[6, 7]),
        w("mu(1 - 6nu)", &[7, 3]),
        w("-3mu^2", &[8, 8]),
    ]
}

/// Eq. (25): k in sl(3) generator words, as printed (the malformed
/// "-mu^2(1+6nu)mu^2)" term is read as -(1+6nu)mu^2).
pub fn k_sl3_words() -> Vec<GeneratorWord> {
    let w = GeneratorWord::sl3;
    vec![
        w("1", &[1, 1, 4]),
        w("3(2 + 3nu)tau", &[1, 3, 4]),
        w("-2/9*(1 + 3nu)(2 + 3nu)", &[1, 3, 5]),
        w("3tau", &[1, 4, 6]),
        w("nu(2 + 3nu)", &[1, 5, 3]),
        w("-3nu", &[1, 6, 5]),
        w("-(1 + 9nu)tau", &[3, 1, 4]),
        w(
            "1/3*(12mu + 12tau^2 - (1 + 3nu)(11mu + 16tau^2) + (1 + 3nu)^2*(mu + 8tau^2))",
            &[3, 3, 4],
        ),
        w("-8/9*(1 + 3nu)(2 + 3nu)tau", &[3, 3, 3, 5]),
        w("4(2 + 3nu)(1 - 3nu)mu*tau", &[3, 3, 8]),
        w(
            "2/3*(3tau^2 + (1 + 3nu)(5mu + 4tau^2) - (1 + 3nu)^2*(mu + 8tau^2))",
            &[3, 4, 3],
        ),
        w("mu + 8tau^2 + 2(1 + 3nu)(mu - 4tau^2)", &[3, 4, 6]),
        w("2/9*(1 + 36nu + 72nu^2)tau", &[3, 5, 3]),
        w("-(1 - 3nu)", &[3, 6, 2]),
        w("-4/3*(1 + 6nu)tau", &[3, 6, 5]),
        w("2(2 + 3nu)mu^2", &[3, 7, 8]),
        w("-4(1 + 3nu)mu*tau", &[3, 8, 6]),
        w("1/3*(1 + 3nu)(2 + 3nu)(mu + 8tau^2)", &[4, 3, 3]),
        w("-(mu(1 + 6nu) - 2(5 + 12nu)tau^2)", &[4, 3, 6]),
        w("-4/3*(1 + 3nu)(2 + 3nu)mu*tau", &[4, 3, 7]),
        w("-tau(3mu - 2tau^2)", &[4, 4, 4]),
        w("-3mu(2mu - tau^2)", &[4, 4, 8]),
        w("-3(mu - 2tau^2)", &[4, 6, 6]),
        w("2(7 + 6nu)mu*tau", &[4, 6, 7]),
        w("-3mu^2*tau", &[4, 8, 8]),
        w("-1/9*(2 + 9nu^2)", &[5, 3, 1]),
        w("-4/9*(1 + 18nu^2)tau", &[5, 3, 3]),
        w("-4/3*(2 + 3nu)mu", &[5, 3, 7]),
        w("-2/27", &[5, 5, 5]),
        w("2/3*(1 + 6nu)mu", &[5, 7, 3]),
        w("-1", &[6, 2, 6]),
        w("-2(1 - 4nu)tau", &[6, 5, 3]),
        w("-2tau", &[6, 5, 6]),
        w("-5/3*mu", &[6, 5, 7]),
        w("-1/3*mu*tau(5 - 72nu^2)", &[7, 3, 4]),
        w("-(1 + 6nu)mu^2", &[7, 3, 8]),
        w("4mu^2", &[7, 8, 6]),
        w("12mu*tau", &[8, 6, 6]),
        w("-9mu*tau", &[6, 8, 6]),
        w("-2mu^3", &[8, 8, 8]),
    ]
}

/// Eq. (31), second line: the printed g^(2) combination for h_m.
pub fn hm_g2_words_printed() -> Vec<GeneratorWord> {
    let n = p("-3nu");
    vec![
        GeneratorWord::g2("6", &[G2Sym::J1], &n),
        GeneratorWord::g2("-4", &[G2Sym::R2], &n),
        GeneratorWord::g2("6tau", &[G2Sym::J2], &n),
        GeneratorWord::g2("6tau", &[G2Sym::J3], &n),
        GeneratorWord::g2("6mu", &[G2Sym::J4], &n),
        GeneratorWord::g2("-12tau*nu", &[], &n),
    ]
}

/// The corrected combination that reproduces h_m exactly.
pub fn hm_g2_words_corrected() -> Vec<GeneratorWord> {
    let n = p("-3nu");
    vec![
        GeneratorWord::g2("6", &[G2Sym::J1], &n),
        GeneratorWord::g2("-4", &[G2Sym::R2], &n),
        GeneratorWord::g2("12tau", &[G2Sym::J2], &n),
        GeneratorWord::g2("6tau", &[G2Sym::J3], &n),
        GeneratorWord::g2("6mu", &[G2Sym::J4], &n),
        GeneratorWord::g2("-18tau*nu", &[], &n),
    ]
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IdentityId {
    GaugeA2,
    Z2Symmetry,
    SqrtDGeneral,
    SqrtDRational,
    SqrtDTrig,
    SelfSimilarity,
    KParity,
    KCommutes,
    KSl3Form,
    KsqUvCommutes,
    G2Gauge,
    G2AddForm,
    HSl3Form,
    HUvRestriction,
    DetIsMetricDeterminant,
}

pub const ALL_IDENTITIES: [IdentityId; 15] = [
    IdentityId::GaugeA2,
    IdentityId::Z2Symmetry,
    IdentityId::SqrtDGeneral,
    IdentityId::SqrtDRational,
    IdentityId::SqrtDTrig,
    IdentityId::SelfSimilarity,
    IdentityId::KParity,
    IdentityId::KCommutes,
    IdentityId::KSl3Form,
    IdentityId::KsqUvCommutes,
    IdentityId::G2Gauge,
    IdentityId::G2AddForm,
    IdentityId::HSl3Form,
    IdentityId::HUvRestriction,
    IdentityId::DetIsMetricDeterminant,
];

impl IdentityId {
    pub fn name(self) -> &'static str {
        match self {
            IdentityId::GaugeA2 => "gauge_a2",
            IdentityId::Z2Symmetry => "z2_symmetry",
            IdentityId::SqrtDGeneral => "sqrtD_general",
            IdentityId::SqrtDRational => "sqrtD_rational",
            IdentityId::SqrtDTrig => "sqrtD_trig",
            IdentityId::SelfSimilarity => "selfsimilarity",
            IdentityId::KParity => "k_parity",
            IdentityId::KCommutes => "k_commutes",
            IdentityId::KSl3Form => "k_sl3_form",
            IdentityId::KsqUvCommutes => "ksq_uv_commutes",
            IdentityId::G2Gauge => "g2_gauge",
            IdentityId::G2AddForm => "g2_add_form",
            IdentityId::HSl3Form => "h_sl3_form",
            IdentityId::HUvRestriction => "h_uv_restriction",
            IdentityId::DetIsMetricDeterminant => "det_is_metric_determinant",
        }
    }

    pub fn from_name(s: &str) -> Option<IdentityId> {
        ALL_IDENTITIES.iter().copied().find(|i| i.name() == s)
    }
}

fn residual_entries(op: &DiffOp) -> Vec<TermEntry> {
    op.terms()
        .map(|(&(a, b), c)| TermEntry {
            d1: a,
            d2: b,
            coeff: c.to_string(),
        })
        .collect()
}

fn report_operator_identity(name: &str, diff: &DiffOp, pass_note: &str) -> VerificationReport {
    if diff.is_zero() {
        VerificationReport::new(name, IdentityStatus::ExactPass).note(pass_note)
    } else {
        let mut r = VerificationReport::new(name, IdentityStatus::ExactFail)
            .note("nonzero residual; see residual_terms");
        r.residual_terms = residual_entries(diff);
        r
    }
}

/// The verified gauge identity:
/// `D^{-nu/2} o Delta_g o D^{nu/2} + V - E0 = h(x,y)`, all parameters
/// symbolic. (The combination `-3V + 3E0` printed in the source text does
/// not close; this one does, exactly.)
pub fn gauge_a2_lhs() -> DiffOp {
    let lb = build(ModelId::LaplaceBeltrami).op();
    let s = p("nu").scale(&frac(1, 2));
    let conj = lb.conjugate_by_power(DenBase::DXy, &s);
    let v = build(ModelId::VA2).ratfn();
    let e0 = build(ModelId::E0Scalar).poly();
    let shift = v.sub(&RatFn::from_poly(e0));
    conj.add(&DiffOp::from_terms(Chart::XY, vec![((0, 0), shift)]))
        .unwrap()
}

pub fn verify_identity(id: IdentityId) -> VerificationReport {
    match id {
        IdentityId::GaugeA2 => {
            let h = build(ModelId::HAlgXy).op();
            let diff = gauge_a2_lhs().sub(&h).unwrap();
            report_operator_identity(
                id.name(),
                &diff,
                "adopted convention: H_A2 = Delta_g + V in the XY chart; \
                 h = D^{-nu/2} (Delta_g + V) D^{nu/2} - E0 with E0 = 3nu(3nu+1)tau",
            )
        }
        IdentityId::Z2Symmetry => {
            let h = build(ModelId::HAlgXy).op();
            match h.y_parity() {
                Some(0) => VerificationReport::new(id.name(), IdentityStatus::ExactPass)
                    .note("h(x,y) = h(x,-y): every d_y^b coefficient has y-parity b mod 2"),
                other => VerificationReport::new(id.name(), IdentityStatus::ExactFail)
                    .note(format!("measured parity {:?}", other)),
            }
        }
        IdentityId::SqrtDGeneral | IdentityId::SqrtDRational | IdentityId::SqrtDTrig => {
            sqrt_d_identity(id)
        }
        IdentityId::SelfSimilarity => self_similarity(),
        IdentityId::KParity => {
            let k = build(ModelId::KA2Xy).op();
            match k.y_parity() {
                Some(1) => VerificationReport::new(id.name(), IdentityStatus::PassWithDiscrepancies)
                    .note(
                        "k is Z2-ODD: k(x,-y) = -k(x,y) (coefficient y-parity is b+1 mod 2); \
                         the source text states k(x,y) = k(x,-y); k^2 is even and restricts \
                         to the UV chart",
                    ),
                Some(0) => VerificationReport::new(id.name(), IdentityStatus::ExactPass),
                other => VerificationReport::new(id.name(), IdentityStatus::ExactFail)
                    .note(format!("no definite parity: {:?}", other)),
            }
        }
        IdentityId::KCommutes => {
            let h = build(ModelId::HAlgXy).op();
            let k = build(ModelId::KA2Xy).op();
            let diff = h.commutator(&k).unwrap();
            report_operator_identity(
                id.name(),
                &diff,
                "[h(x,y), k(x,y)] = 0 with tau, mu, nu symbolic; k's zero-order \
                 coefficient sign is corrected relative to the printed form (the \
                 printed sign leaves a first-order residual ~ mu nu (3nu+1)(3nu+2))",
            )
        }
        IdentityId::KSl3Form => {
            let k = build(ModelId::KA2Xy).op();
            let k25 = build(ModelId::KFromSl3).op();
            let diff = k25.sub(&k).unwrap();
            if diff.is_zero() {
                VerificationReport::new(id.name(), IdentityStatus::ExactPass)
            } else {
                let mut r =
                    VerificationReport::new(id.name(), IdentityStatus::PassWithDiscrepancies)
                        .note(
                            "printed generator form minus the differential form; every \
                             discrepancy term carries the factor tau(1+3nu)(2+3nu)",
                        )
                        .note(
                            "the malformed printed term \"-mu^2(1+6nu)mu^2) J7J3J8\" is \
                             read as -(1+6nu)mu^2 J7J3J8",
                        );
                r.residual_terms = residual_entries(&diff);
                r
            }
        }
        IdentityId::KsqUvCommutes => {
            let h17 = build(ModelId::HAlgUv).op();
            let k = build(ModelId::KA2Xy).op();
            let k2 = k.compose(&k).unwrap();
            let k2uv = k2.restrict_to_even().expect("k^2 is Z2-even");
            let diff = h17.commutator(&k2uv).unwrap();
            report_operator_identity(
                id.name(),
                &diff,
                "[h(u,v), k^2(u,v)] = 0 with tau, mu, nu symbolic",
            )
        }
        IdentityId::G2Gauge => g2_gauge(),
        IdentityId::G2AddForm => {
            let hm = build(ModelId::HmUv).op();
            let printed = expand_generator_form(&hm_g2_words_printed(), Chart::UV);
            let corrected = expand_generator_form(&hm_g2_words_corrected(), Chart::UV);
            let diff = printed.sub(&hm).unwrap();
            if diff.is_zero() {
                VerificationReport::new(id.name(), IdentityStatus::ExactPass)
            } else {
                let mut r =
                    VerificationReport::new(id.name(), IdentityStatus::PassWithDiscrepancies)
                        .note(
                            "printed combination 6J1 - 4R2 + 6tau J2 + 6tau J3 + 6mu J4 \
                             - 12tau nu misses 6 tau u d_u",
                        );
                r.residual_terms = residual_entries(&diff);
                if corrected.sub(&hm).unwrap().is_zero() {
                    r = r.note(
                        "corrected combination verified exactly: 6J1 - 4R2 + 12tau J2 \
                         + 6tau J3 + 6mu J4 - 18tau nu = h_m",
                    );
                }
                r
            }
        }
        IdentityId::HSl3Form => {
            let h = build(ModelId::HAlgXy).op();
            let h20 = build(ModelId::HFromSl3).op();
            let diff = h20.sub(&h).unwrap();
            report_operator_identity(
                id.name(),
                &diff,
                "the sl(3) generator expansion reproduces h(x,y) exactly",
            )
        }
        IdentityId::HUvRestriction => {
            let h17 = build(ModelId::HAlgUv).op();
            let h16 = build(ModelId::HAlgXy).op();
            let restricted = h16.restrict_to_even().expect("h is Z2-even");
            let diff = restricted.sub(&h17).unwrap();
            report_operator_identity(
                id.name(),
                &diff,
                "restrict_to_even(h(x,y)) = h(u,v) exactly",
            )
        }
        IdentityId::DetIsMetricDeterminant => {
            let lb = build(ModelId::LaplaceBeltrami).op();
            let gxx = lb.coeff(2, 0).to_poly().unwrap();
            let gxy = lb.coeff(1, 1).to_poly().unwrap().scale(&frac(1, 2));
            let gyy = lb.coeff(0, 2).to_poly().unwrap();
            let det = gxx.mul(&gyy).sub(&gxy.mul(&gxy));
            let diff = det.sub(DenBase::DXy.poly());
            if diff.is_zero() {
                VerificationReport::new(id.name(), IdentityStatus::ExactPass)
                    .note("det(g^{ij}) from the Laplace-Beltrami symbol equals D(x,y)")
            } else {
                VerificationReport::new(id.name(), IdentityStatus::ExactFail)
                    .note(format!("residual: {}", diff))
            }
        }
    }
}

/// The exact eigencoefficient of D^{1/2}: `Delta_g D^{1/2} = c(x,y) D^{1/2}`.
pub fn sqrt_d_eigencoefficient() -> MPoly {
    let lb = build(ModelId::LaplaceBeltrami).op();
    let half = MPoly::constant(frac(1, 2));
    let conj = lb.conjugate_by_power(DenBase::DXy, &half);
    conj.coeff(0, 0)
        .to_poly()
        .expect("eigencoefficient is polynomial")
}

fn sqrt_d_identity(id: IdentityId) -> VerificationReport {
    let lb = build(ModelId::LaplaceBeltrami).op();
    let half = MPoly::constant(frac(1, 2));
    let conj = lb.conjugate_by_power(DenBase::DXy, &half);
    // Delta_g(D^{1/2}) = c D^{1/2} iff the conjugated zero-order term is the
    // polynomial c and no other denominator survives anywhere
    let c = match conj.coeff(0, 0).to_poly() {
        Some(c) => c,
        None => {
            return VerificationReport::new(id.name(), IdentityStatus::ExactFail)
                .note("conjugated zero-order term is not polynomial")
        }
    };
    let computed = p("12tau + 24mu*x - 36mu^2*y^2");
    let paper = p("-12tau(1 - mu(2x - 3mu*y^2))");
    match id {
        IdentityId::SqrtDGeneral => {
            if c != computed {
                return VerificationReport::new(id.name(), IdentityStatus::ExactFail)
                    .note(format!("eigencoefficient changed: {}", c));
            }
            let mut r = VerificationReport::new(id.name(), IdentityStatus::PassWithDiscrepancies)
                .note(format!(
                    "Delta_g D^{{1/2}} = c D^{{1/2}} holds exactly with c = {} \
                     = 12(tau + mu(2x - 3mu y^2))",
                    c
                ))
                .note(format!(
                    "printed coefficient -12tau(1 - mu(2x - 3mu y^2)) differs; \
                     difference = {}",
                    c.sub(&paper)
                ));
            r.residual_terms = vec![TermEntry {
                d1: 0,
                d2: 0,
                coeff: c.sub(&paper).to_string(),
            }];
            r
        }
        IdentityId::SqrtDRational => {
            let lim = c.subst(&[(Var::Tau, int(0).into()), (Var::Mu, int(0).into())]);
            if lim.is_zero() {
                VerificationReport::new(id.name(), IdentityStatus::ExactPass)
                    .note("rational limit: Delta_g^{rat} D^{1/2} = 0")
            } else {
                VerificationReport::new(id.name(), IdentityStatus::ExactFail)
                    .note(format!("rational limit gives {}", lim))
            }
        }
        IdentityId::SqrtDTrig => {
            let lim = c.subst_one(Var::Mu, int(0));
            if lim == p("12tau") {
                VerificationReport::new(id.name(), IdentityStatus::PassWithDiscrepancies)
                    .note(
                        "trigonometric limit: Delta_g^{trig} D^{1/2} = +12 tau D^{1/2} \
                         (printed sign is -12 tau)",
                    )
            } else {
                VerificationReport::new(id.name(), IdentityStatus::ExactFail)
                    .note(format!("trigonometric limit gives {}", lim))
            }
        }
        _ => unreachable!(),
    }
}

/// Self-similarity data: the conjugation exponent `1/2 - nu` maps h onto
/// itself with a new coupling and a constant shift.
pub struct SelfSimilarity {
    pub nu_prime: MPoly,
    pub shift: MPoly,
}

pub fn self_similarity_data() -> Option<SelfSimilarity> {
    let h = build(ModelId::HAlgXy).op();
    let m = p("1/2 - nu");
    let t = h.conjugate_by_power(DenBase::DXy, &m);
    if !t.is_polynomial() {
        return None;
    }
    // first-order block: d_x coefficient's constant term is 1 + 3 nu'
    let c10 = t.coeff(1, 0).to_poly()?;
    let c0 = c10.subst(&[(Var::X, int(0).into()), (Var::Y, int(0).into())]);
    let nu_prime = c0.sub(&MPoly::one()).scale(&frac(1, 3));
    let h_target: Vec<((u32, u32), MPoly)> = h
        .terms()
        .map(|(&k, c)| {
            (
                k,
                c.clone()
                    .to_poly()
                    .unwrap()
                    .subst_one(Var::Nu, nu_prime.clone()),
            )
        })
        .collect();
    let h_prime = DiffOp::from_poly_terms(Chart::XY, h_target);
    let diff = t.sub(&h_prime).unwrap();
    // the difference must be a pure constant (in x, y)
    let mut shift = MPoly::zero();
    for (&(a, b), c) in diff.terms() {
        let cp = c.clone().to_poly()?;
        if (a, b) != (0, 0) || cp.degree_in(Var::X) > 0 || cp.degree_in(Var::Y) > 0 {
            return None;
        }
        shift = cp;
    }
    Some(SelfSimilarity { nu_prime, shift })
}

fn self_similarity() -> VerificationReport {
    match self_similarity_data() {
        None => VerificationReport::new("selfsimilarity", IdentityStatus::ExactFail)
            .note("conjugation by D^{1/2-nu} did not yield h at any shifted coupling"),
        Some(ss) => {
            let matches_1_minus_nu = ss.nu_prime == p("1 - nu");
            let matches_4_minus_3nu_over_3 = ss.nu_prime == p("4/3 - nu");
            let expected_shift = p("12tau(1 - 2nu)");
            let mut r = VerificationReport::new(
                "selfsimilarity",
                IdentityStatus::PassWithDiscrepancies,
            )
            .note(format!(
                "D^{{-(1/2-nu)}} h_nu D^{{1/2-nu}} = h_{{nu'}} + shift with nu' = {} \
                 and shift = {}",
                ss.nu_prime, ss.shift
            ))
            .note(format!(
                "nu' = 1-nu: {}; nu' = (4-3nu)/3: {}; printed subscript 4-3nu matches \
                 the reading subscript = 1+3nu' since 1+3(1-nu) = 4-3nu",
                matches_1_minus_nu, matches_4_minus_3nu_over_3
            ));
            if ss.shift == expected_shift {
                r = r.note(
                    "shift = +12(1-2nu)tau = E0(1-nu) - E0(nu); the printed statement \
                     carries the opposite sign",
                );
            }
            r
        }
    }
}

/// G2 gauge: `p o (h_G2 + 3nu(3nu+6lambda+1)tau) o p^{-1}` equals the
/// Schroedinger form, with `p = v^{3 lambda/2} Dt^{(nu-lambda)/2}`.
fn g2_gauge() -> VerificationReport {
    let hg2 = build(ModelId::HG2Uv).op();
    let constant = p("3nu(3nu + 6lambda + 1)tau");
    let shifted = hg2
        .add(&DiffOp::from_poly_terms(
            Chart::UV,
            vec![((0, 0), constant)],
        ))
        .unwrap();
    // p o A o p^{-1} = conj by the negated exponents
    let e_d = p("nu - lambda").scale(&frac(-1, 2));
    let e_v = p("lambda").scale(&frac(-3, 2));
    let lhs = shifted
        .conjugate_by_power(DenBase::DUv, &e_d)
        .conjugate_by_power(DenBase::V, &e_v);
    // RHS: restricted Laplace-Beltrami plus the two potential terms
    let lb_uv = build(ModelId::LaplaceBeltrami)
        .op()
        .restrict_to_even()
        .expect("Delta_g is Z2-even");
    let n = build(ModelId::G2PotentialNumerator).poly();
    let pot1 = RatFn::with_den(p("lambda(3lambda - 1)u^2"), &[(DenBase::V, 1)]);
    let pot2 = RatFn::with_den(
        n.mul(&n).mul(&p("(nu - lambda)(nu - lambda - 1)")).scale(&frac(3, 4)),
        &[(DenBase::DUv, 1)],
    );
    let rhs = lb_uv
        .add(&DiffOp::from_terms(
            Chart::UV,
            vec![((0, 0), pot1.add(&pot2))],
        ))
        .unwrap();
    let diff = lhs.sub(&rhs).unwrap();
    report_operator_identity(
        "g2_gauge",
        &diff,
        "p (h_G2 + 3nu(3nu+6lambda+1)tau) p^{-1} = Delta_g(u,v) \
         + lambda(3lambda-1) u^2/v + 9(nu-lambda)(nu-lambda-1) N^2/(12 Dt), \
         symbolic in tau, mu, nu, lambda",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::frac;

    #[test]
    fn build_sl3_j7() {
        // J7 = x(x dx + y dy + 3nu)
        let j7 = build(ModelId::Sl3Gen(7)).op();
        let want = DiffOp::from_poly_terms(
            Chart::XY,
            vec![((1, 0), p("x^2")), ((0, 1), p("x*y")), ((0, 0), p("3nu*x"))],
        );
        assert_eq!(j7, want);
    }

    #[test]
    fn build_e0() {
        let e0 = build(ModelId::E0Scalar).poly();
        assert_eq!(e0, p("3nu(3nu + 1)tau"));
        // at nu = -2/3: E0 = 2 tau
        assert_eq!(e0.subst_one(Var::Nu, frac(-2, 3)), p("2tau"));
    }

    #[test]
    fn det_d_rational_limit() {
        let d = build(ModelId::DetD).poly();
        let lim = d.subst(&[(Var::Tau, int(0).into()), (Var::Mu, int(0).into())]);
        assert_eq!(lim, p("(-4x^3 - 27y^2)").scale(&frac(1, 12)));
    }

    #[test]
    fn d_trig_is_minus_d12() {
        // Eq. (27)'s positive polynomial equals -(12 D)| mu=0
        let d12_mu0 = DenBase::DXy
            .poly()
            .scale(&int(12))
            .subst_one(Var::Mu, int(0));
        assert_eq!(d12_mu0.neg(), p(D_TRIG_SRC));
        // and the tau-derivative oracle value
        assert_eq!(
            p(D_TRIG_SRC).diff(Var::Tau),
            p("12x^4 + 144tau*x^2*y^2 + 108x*y^2 + 324tau^2*y^4")
        );
    }

    #[test]
    fn h_apply_to_one_is_zero_order_term() {
        let h = build(ModelId::HAlgXy).op();
        let img = h.apply(&MPoly::one()).to_poly().unwrap();
        assert_eq!(img, p("3nu(1 + 3nu)mu(2x - 3mu*y^2)"));
    }

    #[test]
    fn lb_apply_to_x_is_first_order_coefficient() {
        let lb = build(ModelId::LaplaceBeltrami).op();
        let img = lb.apply(&p("x")).to_poly().unwrap();
        assert_eq!(img, p("1 + 4tau*x + 5mu*x^2 - 3mu*tau*y^2 - 6mu^2*x*y^2"));
    }

    #[test]
    fn ipar_kills_top_grade() {
        // i_par^{(n)} x^n = 0: the j = 0 factor annihilates grade n
        for n in 0..4u32 {
            let ip = build(ModelId::IparXy(n)).op();
            let img = ip.apply(&p("x").pow(n)).to_poly().unwrap();
            assert!(img.is_zero(), "n = {}", n);
        }
    }

    #[test]
    fn printed_k_zero_order_sign_fails_commutation() {
        // the printed zero-order coefficient leaves a first-order residual
        let h = build(ModelId::HAlgXy).op();
        let mut k_printed = build(ModelId::KA2Xy).op();
        k_printed = k_printed
            .sub(&DiffOp::from_poly_terms(Chart::XY, vec![((0, 0), p(K24_0))]))
            .unwrap()
            .add(&DiffOp::from_poly_terms(
                Chart::XY,
                vec![((0, 0), p(K24_0_PRINTED))],
            ))
            .unwrap();
        let c = h.commutator(&k_printed).unwrap();
        assert!(!c.is_zero());
        assert!(c.order() <= 1);
    }

    #[test]
    fn word_expansion_basics() {
        // J1 J3 = dx o (x dx) = x dx^2 + dx
        let w = GeneratorWord::sl3("1", &[1, 3]);
        let got = expand_generator_form(&[w], Chart::XY);
        let want = DiffOp::from_poly_terms(
            Chart::XY,
            vec![((2, 0), p("x")), ((1, 0), p("1"))],
        );
        assert_eq!(got, want);
    }
}
